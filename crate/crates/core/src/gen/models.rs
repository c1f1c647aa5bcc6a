//! Random signatures, small finite categories and homomorphisms into them.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::semantics::{BackendKind, BaseCat, GraphHom};
use crate::signature::{Edge, Signature, Surface, Tier, Type};

fn edge(name: &str, source: &[&str], target: &str) -> Edge {
    Edge { name: name.into(), source: source.iter().map(|s| Type::base(s)).collect(), target: Type::base(target) }
}

fn surface(name: &str, from: &str, to: &str) -> Surface {
    Surface { name: name.into(), from: from.into(), to: to.into() }
}

/// A fixed signature with parallel edges and surfaces, admissible at `tier`.
pub fn probe_signature(tier: Tier) -> Signature {
    let mut edges = vec![edge("c", &["A"], "A"), edge("d", &["A"], "A"), edge("f", &["A"], "B"), edge("g", &["B"], "A")];
    let mut surfaces = vec![surface("s", "c", "d"), surface("s2", "c", "d"), surface("r", "d", "c"), surface("k", "f", "f")];
    if tier.has_products() {
        edges.push(edge("m", &["A", "A"], "A"));
        edges.push(edge("z", &[], "A"));
        surfaces.push(surface("sm", "m", "m"));
    }
    Signature::build(&["A", "B"], edges, surfaces, tier).expect("probe signature is well formed")
}

/// Finite categories with at most 3 objects and 6 arrows.
pub fn category_library() -> Vec<(String, BaseCat)> {
    let mut out = small_library();
    out.push(("discrete3".into(), BaseCat::discrete(3)));
    out.push(("chain3".into(), BaseCat::preorder(3, |i, j| i <= j)));
    out.push(("span".into(), BaseCat::preorder(3, |i, j| i == 0 || i == j)));
    out.push(("iso2".into(), BaseCat::preorder(2, |_, _| true)));
    out.push(("z3".into(), BaseCat::monoid(3, |a, b| (a + b) % 3)));
    out.push(("parallel".into(), parallel_pair()));
    out
}

/// Categories whose pairwise exponentials stay within the finite-category caps.
pub fn small_library() -> Vec<(String, BaseCat)> {
    vec![
        ("discrete1".into(), BaseCat::discrete(1)),
        ("discrete2".into(), BaseCat::discrete(2)),
        ("chain2".into(), BaseCat::preorder(2, |i, j| i <= j)),
        ("z2".into(), BaseCat::monoid(2, |a, b| a ^ b)),
        ("idem".into(), BaseCat::monoid(2, |a, b| a.max(b))),
    ]
}

/// Two objects with two parallel arrows between them.
fn parallel_pair() -> BaseCat {
    let arrows = vec![("id_0".into(), 0, 0), ("id_1".into(), 1, 1), ("a".into(), 0, 1), ("b".into(), 0, 1)];
    let comp = vec![
        vec![Some(0), None, None, None],
        vec![None, Some(1), Some(2), Some(3)],
        vec![Some(2), None, None, None],
        vec![Some(3), None, None, None],
    ];
    BaseCat { objects: vec!["0".into(), "1".into()], arrows, ids: vec![0, 1], comp }
}

/// A random signature with at most 3 sorts, 5 edges and 3 surfaces.
pub fn random_signature(rng: &mut impl Rng, tier: Tier) -> Signature {
    let sorts: Vec<String> = (0..rng.gen_range(1..=3)).map(|i| format!("S{i}")).collect();
    let names: Vec<&str> = sorts.iter().map(String::as_str).collect();
    let mut edges = Vec::new();
    for i in 0..rng.gen_range(1..=5) {
        let arity = if tier == Tier::Bicat { 1 } else { rng.gen_range(0..=2) };
        let source: Vec<&str> = (0..arity).map(|_| *names.choose(rng).expect("sorts")).collect();
        edges.push(edge(&format!("e{i}"), &source, names.choose(rng).expect("sorts")));
    }
    let mut surfaces = Vec::new();
    for i in 0..rng.gen_range(0..=3) {
        let from = edges.choose(rng).expect("edges");
        let parallel: Vec<&Edge> = edges.iter().filter(|e| e.source == from.source && e.target == from.target).collect();
        let to = parallel.choose(rng).expect("an edge is parallel to itself");
        surfaces.push(surface(&format!("s{i}"), &from.name, &to.name));
    }
    Signature::build(&names, edges, surfaces, tier).expect("random signature is well formed")
}

/// Edges joined by surfaces, as a representative for each edge.
fn components(sig: &Signature) -> BTreeMap<String, String> {
    let mut rep: BTreeMap<String, String> = sig.edges().map(|e| (e.name.clone(), e.name.clone())).collect();
    fn find(rep: &BTreeMap<String, String>, x: &str) -> String {
        let mut x = x.to_string();
        while rep[&x] != x {
            x = rep[&x].clone();
        }
        x
    }
    for s in sig.surfaces() {
        let (a, b) = (find(&rep, &s.from), find(&rep, &s.to));
        rep.insert(a, b);
    }
    rep.keys().map(|k| (k.clone(), find(&rep, k))).collect()
}

/// A random homomorphism from `sig` into finite sets or finite categories.
/// Returns `None` only when some edge has no functor at all.
pub fn random_hom(sig: &Signature, backend: BackendKind, rng: &mut dyn RngCore) -> Option<GraphHom> {
    let library: Vec<(String, BaseCat)> = match (backend, sig.tier) {
        (BackendKind::FinSet, _) => category_library().into_iter().filter(|(_, c)| c.is_discrete()).collect(),
        (BackendKind::FinCat, Tier::Closed) => small_library(),
        (BackendKind::FinCat, _) => category_library(),
    };
    let reps = components(sig);
    for attempt in 0..12 {
        let mut h = GraphHom::new(backend);
        for s in sig.sorts() {
            let (_, c) = library.choose(rng).expect("library is non-empty");
            h.sorts.insert(s.to_string(), Arc::new(c.clone()));
        }
        let engine = h.engine();
        // Late attempts, and finite sets, share one functor per component so
        // that identity transformations exist for every surface.
        let shared = backend == BackendKind::FinSet || attempt >= 8;
        for e in sig.edges() {
            let rep = &reps[&e.name];
            if shared {
                if let Some(f) = h.edges.get(rep).cloned() {
                    h.edges.insert(e.name.clone(), f);
                    continue;
                }
            }
            let dom = Type::Prod(e.source.clone());
            let f = engine.search_functors(&dom, &e.target, 1, Some(&mut *rng)).ok()?.pop()?;
            let f = Arc::new(f);
            h.edges.insert(e.name.clone(), f.clone());
            if shared {
                h.edges.insert(rep.clone(), f);
            }
        }
        let mut complete = true;
        for s in sig.surfaces() {
            let e = sig.edge(&s.from).expect("surface source");
            let dom = Type::Prod(e.source.clone());
            let (src, tgt) = (h.edges[&s.from].clone(), h.edges[&s.to].clone());
            let found = engine.search_nats(&dom, &e.target, &src, &tgt, 8, Some(&mut *rng)).unwrap_or_default();
            let identity = |n: &crate::semantics::NatVal| n.src == n.tgt && found.len() > 1 && n.comps.iter().zip(&n.src.obj).all(|(c, o)| engine.id(&e.target, o).is_ok_and(|i| i == *c));
            let mut proper: Vec<_> = found.iter().filter(|n| !identity(n)).cloned().collect();
            proper.shuffle(rng);
            match proper.pop() {
                Some(n) => {
                    h.surfaces.insert(s.name.clone(), Arc::new(n));
                }
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            return Some(h);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::check_hom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn library_categories_are_valid_and_small() {
        for (name, c) in category_library() {
            c.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(c.num_objects() <= 3 && c.num_arrows() <= 6, "{name}");
        }
    }

    #[test]
    fn small_library_exponentials_fit() {
        let lib = small_library();
        for (_, a) in &lib {
            for (_, b) in &lib {
                let mut h = GraphHom::new(BackendKind::FinCat);
                h.sorts.insert("A".into(), Arc::new(a.clone()));
                h.sorts.insert("B".into(), Arc::new(b.clone()));
                let e = h.engine();
                e.cat(&Type::arrow(Type::base("A"), Type::base("B"))).unwrap();
            }
        }
    }

    #[test]
    fn random_homs_are_homomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for tier in [Tier::Bicat, Tier::Products, Tier::Closed] {
            for backend in [BackendKind::FinSet, BackendKind::FinCat] {
                for _ in 0..10 {
                    let sig = random_signature(&mut rng, tier);
                    let h = random_hom(&sig, backend, &mut rng).expect("hom");
                    let report = check_hom(&h, &sig);
                    assert!(report.passed(), "{:?}", report.violations);
                }
            }
        }
    }
}
