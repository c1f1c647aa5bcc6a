//! Signatures: types over a set of base sorts, and 2-multigraphs of constants
//! (edges) and constant rewrites (surfaces) over those types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Which fragment of the type theory is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    /// Bicategories: unary contexts, no type formers.
    Bicat,
    /// fp-bicategories: n-ary products.
    Products,
    /// Cartesian closed bicategories: products and arrows.
    Closed,
}

impl Tier {
    pub fn has_products(self) -> bool {
        self >= Tier::Products
    }

    pub fn has_arrows(self) -> bool {
        self == Tier::Closed
    }

    pub fn name(self) -> &'static str {
        match self {
            Tier::Bicat => "b",
            Tier::Products => "x",
            Tier::Closed => "xarrow",
        }
    }

    pub fn parse(s: &str) -> Option<Tier> {
        match s {
            "b" => Some(Tier::Bicat),
            "x" => Some(Tier::Products),
            "xarrow" | "x->" | "x→" => Some(Tier::Closed),
            _ => None,
        }
    }

    pub const ALL: [Tier; 3] = [Tier::Bicat, Tier::Products, Tier::Closed];
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Object-level types.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Base(Arc<str>),
    /// `Prod(vec![])` is the unit type.
    Prod(Vec<Type>),
    Arrow(Box<Type>, Box<Type>),
}

impl Type {
    pub fn base(name: &str) -> Type {
        Type::Base(Arc::from(name))
    }

    pub fn prod(components: Vec<Type>) -> Type {
        Type::Prod(components)
    }

    pub fn unit() -> Type {
        Type::Prod(Vec::new())
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Box::new(dom), Box::new(cod))
    }

    /// Nesting depth of type formers; base sorts have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Type::Base(_) => 0,
            Type::Prod(cs) => 1 + cs.iter().map(Type::depth).max().unwrap_or(0),
            Type::Arrow(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn as_prod(&self) -> Option<&[Type]> {
        match self {
            Type::Prod(cs) => Some(cs),
            _ => None,
        }
    }

    pub fn as_arrow(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Immediate subterms.
    pub fn children(&self) -> Vec<&Type> {
        match self {
            Type::Base(_) => Vec::new(),
            Type::Prod(cs) => cs.iter().collect(),
            Type::Arrow(a, b) => vec![a, b],
        }
    }

    pub fn sorts(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Type::Base(s) => {
                out.insert(s.clone());
            }
            Type::Prod(cs) => cs.iter().for_each(|c| c.sorts(out)),
            Type::Arrow(a, b) => {
                a.sorts(out);
                b.sorts(out);
            }
        }
    }

    /// The first type former that `tier` does not admit, if any.
    pub fn tier_violation(&self, tier: Tier) -> Option<&'static str> {
        match self {
            Type::Base(_) => None,
            Type::Prod(_) if !tier.has_products() => Some("product type"),
            Type::Arrow(..) if !tier.has_arrows() => Some("arrow type"),
            _ => self.children().into_iter().find_map(|c| c.tier_violation(tier)),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(s) => f.write_str(s),
            Type::Prod(cs) if cs.is_empty() => f.write_str("1"),
            Type::Prod(cs) => {
                f.write_str("prod(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
            Type::Arrow(a, b) => {
                if matches!(**a, Type::Arrow(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
        }
    }
}

/// A constant term: a multiedge `(A1, ..., An) -> B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: Vec<Type>,
    pub target: Type,
}

/// A constant rewrite between two parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surface {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown sort `{sort}` in `{item}`")]
    UnknownSort { item: String, sort: String },
    #[error("edge `{edge}` has arity {arity}, but tier b admits only unary edges")]
    ArityViolation { edge: String, arity: usize },
    #[error("`{item}` uses a {former}, which tier {tier} does not admit")]
    TierViolation { item: String, former: &'static str, tier: Tier },
    #[error("surface `{surface}` refers to unknown edge `{edge}`")]
    UnknownEdge { surface: String, edge: String },
    #[error("surface `{surface}` joins non-parallel edges `{from}` and `{to}`")]
    NonParallel { surface: String, from: String, to: String },
}

/// A validated 2-multigraph over the types generated by a set of sorts.
///
/// Nodes are represented intensionally: every type over `sorts` admitted by
/// `tier` is a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub tier: Tier,
    sorts: BTreeSet<Arc<str>>,
    edges: BTreeMap<String, Edge>,
    surfaces: BTreeMap<String, Surface>,
    edge_order: Vec<String>,
    surface_order: Vec<String>,
    /// Largest product arity produced by `enumerate_types`.
    pub max_arity: usize,
}

pub const DEFAULT_MAX_ARITY: usize = 3;

impl Signature {
    pub fn build(
        sorts: &[&str],
        edges: Vec<Edge>,
        surfaces: Vec<Surface>,
        tier: Tier,
    ) -> Result<Signature, SignatureError> {
        let mut sig = Signature::empty(tier);
        for s in sorts {
            sig.add_sort(s)?;
        }
        for e in edges {
            sig.add_edge(e)?;
        }
        for s in surfaces {
            sig.add_surface(s)?;
        }
        Ok(sig)
    }

    pub fn empty(tier: Tier) -> Signature {
        Signature {
            tier,
            sorts: BTreeSet::new(),
            edges: BTreeMap::new(),
            surfaces: BTreeMap::new(),
            edge_order: Vec::new(),
            surface_order: Vec::new(),
            max_arity: DEFAULT_MAX_ARITY,
        }
    }

    fn name_taken(&self, name: &str) -> bool {
        self.sorts.contains(name) || self.edges.contains_key(name) || self.surfaces.contains_key(name)
    }

    pub fn add_sort(&mut self, name: &str) -> Result<(), SignatureError> {
        if self.name_taken(name) {
            return Err(SignatureError::DuplicateName(name.to_string()));
        }
        self.sorts.insert(Arc::from(name));
        Ok(())
    }

    /// Checks that `ty` is a node of this signature.
    pub fn check_type(&self, item: &str, ty: &Type) -> Result<(), SignatureError> {
        if let Some(former) = ty.tier_violation(self.tier) {
            return Err(SignatureError::TierViolation { item: item.to_string(), former, tier: self.tier });
        }
        let mut used = BTreeSet::new();
        ty.sorts(&mut used);
        match used.into_iter().find(|s| !self.sorts.contains(s)) {
            Some(s) => Err(SignatureError::UnknownSort { item: item.to_string(), sort: s.to_string() }),
            None => Ok(()),
        }
    }

    pub fn add_edge(&mut self, edge: Edge) -> Result<(), SignatureError> {
        if self.name_taken(&edge.name) {
            return Err(SignatureError::DuplicateName(edge.name));
        }
        if self.tier == Tier::Bicat && edge.source.len() != 1 {
            return Err(SignatureError::ArityViolation { edge: edge.name, arity: edge.source.len() });
        }
        for ty in edge.source.iter().chain(std::iter::once(&edge.target)) {
            self.check_type(&edge.name, ty)?;
        }
        self.edge_order.push(edge.name.clone());
        self.edges.insert(edge.name.clone(), edge);
        Ok(())
    }

    pub fn add_surface(&mut self, surface: Surface) -> Result<(), SignatureError> {
        if self.name_taken(&surface.name) {
            return Err(SignatureError::DuplicateName(surface.name));
        }
        let lookup = |e: &str| {
            self.edges.get(e).ok_or_else(|| SignatureError::UnknownEdge {
                surface: surface.name.clone(),
                edge: e.to_string(),
            })
        };
        let (from, to) = (lookup(&surface.from)?, lookup(&surface.to)?);
        if from.source != to.source || from.target != to.target {
            return Err(SignatureError::NonParallel {
                surface: surface.name,
                from: surface.from,
                to: surface.to,
            });
        }
        self.surface_order.push(surface.name.clone());
        self.surfaces.insert(surface.name.clone(), surface);
        Ok(())
    }

    pub fn sorts(&self) -> impl Iterator<Item = &Arc<str>> {
        self.sorts.iter()
    }

    pub fn has_sort(&self, name: &str) -> bool {
        self.sorts.contains(name)
    }

    pub fn edge(&self, name: &str) -> Option<&Edge> {
        self.edges.get(name)
    }

    pub fn surface(&self, name: &str) -> Option<&Surface> {
        self.surfaces.get(name)
    }

    /// Edges in declaration order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edge_order.iter().map(|n| &self.edges[n])
    }

    /// Surfaces in declaration order.
    pub fn surfaces(&self) -> impl Iterator<Item = &Surface> {
        self.surface_order.iter().map(|n| &self.surfaces[n])
    }

    /// All types of nesting depth at most `depth`, in generation order.
    ///
    /// Products range over arities `0..=max_arity`; arrows appear only at
    /// the closed tier.
    pub fn enumerate_types(&self, depth: usize) -> Vec<Type> {
        let mut layers: Vec<Type> = self.sorts.iter().map(|s| Type::Base(s.clone())).collect();
        let mut seen: BTreeSet<Type> = layers.iter().cloned().collect();
        for _ in 0..depth {
            let prev = layers.clone();
            let mut next = Vec::new();
            if self.tier.has_products() {
                for n in 0..=self.max_arity {
                    for combo in tuples(&prev, n) {
                        next.push(Type::Prod(combo));
                    }
                }
            }
            if self.tier.has_arrows() {
                for a in &prev {
                    for b in &prev {
                        next.push(Type::arrow(a.clone(), b.clone()));
                    }
                }
            }
            for t in next {
                if seen.insert(t.clone()) {
                    layers.push(t);
                }
            }
        }
        layers
    }
}

fn tuples(items: &[Type], n: usize) -> Vec<Vec<Type>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |it| {
                    let mut v = prefix.clone();
                    v.push(it.clone());
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Type {
        Type::base("A")
    }

    #[test]
    fn empty_signature_with_one_sort() {
        let sig = Signature::build(&["A"], vec![], vec![], Tier::Bicat).unwrap();
        assert_eq!(sig.sorts().count(), 1);
        assert_eq!(sig.edges().count(), 0);
    }

    #[test]
    fn binary_edge_is_legal_at_tier_x() {
        let e = Edge { name: "c".into(), source: vec![a(), Type::base("B")], target: a() };
        assert!(Signature::build(&["A", "B"], vec![e], vec![], Tier::Products).is_ok());
    }

    #[test]
    fn binary_edge_rejected_at_tier_b() {
        let e = Edge { name: "c".into(), source: vec![a(), a()], target: a() };
        let err = Signature::build(&["A"], vec![e], vec![], Tier::Bicat).unwrap_err();
        assert_eq!(err, SignatureError::ArityViolation { edge: "c".into(), arity: 2 });
    }

    #[test]
    fn duplicate_and_non_parallel_rejected() {
        let err = Signature::build(&["A", "A"], vec![], vec![], Tier::Bicat).unwrap_err();
        assert_eq!(err, SignatureError::DuplicateName("A".into()));

        let c = Edge { name: "c".into(), source: vec![a()], target: a() };
        let d = Edge { name: "d".into(), source: vec![a()], target: Type::base("B") };
        let s = Surface { name: "s".into(), from: "c".into(), to: "d".into() };
        let err = Signature::build(&["A", "B"], vec![c, d], vec![s], Tier::Bicat).unwrap_err();
        assert!(matches!(err, SignatureError::NonParallel { .. }));
    }

    #[test]
    fn arrow_edge_rejected_below_closed_tier() {
        let e = Edge { name: "c".into(), source: vec![Type::arrow(a(), a())], target: a() };
        let err = Signature::build(&["A"], vec![e], vec![], Tier::Products).unwrap_err();
        assert!(matches!(err, SignatureError::TierViolation { former: "arrow type", .. }));
    }

    #[test]
    fn enumerate_depth_zero_and_tier_b() {
        let sig = Signature::build(&["A"], vec![], vec![], Tier::Bicat).unwrap();
        assert_eq!(sig.enumerate_types(0), vec![a()]);
        assert_eq!(sig.enumerate_types(1), vec![a()]);
    }

    #[test]
    fn enumerate_depth_one_tier_x_starts_with_small_products() {
        let sig = Signature::build(&["A"], vec![], vec![], Tier::Products).unwrap();
        let tys = sig.enumerate_types(1);
        assert_eq!(
            &tys[..4],
            &[a(), Type::unit(), Type::prod(vec![a()]), Type::prod(vec![a(), a()])]
        );
    }

    /// Number of distinct types of depth <= d: s + sum_n T(d-1)^n (+ T(d-1)^2 arrows).
    fn count(sorts: usize, max_arity: u32, arrows: bool, depth: usize) -> usize {
        let mut t = sorts;
        for _ in 0..depth {
            let mut next = sorts;
            for n in 0..=max_arity {
                next += t.pow(n);
            }
            if arrows {
                next += t * t;
            }
            t = next;
        }
        t
    }

    #[test]
    fn enumeration_matches_counting_formula() {
        for (sorts, tier) in [(1, Tier::Products), (2, Tier::Products), (1, Tier::Closed), (2, Tier::Closed)] {
            let names: Vec<String> = (0..sorts).map(|i| format!("S{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut sig = Signature::build(&refs, vec![], vec![], tier).unwrap();
            sig.max_arity = 2;
            for depth in 0..=2 {
                let tys = sig.enumerate_types(depth);
                assert_eq!(tys.len(), count(sorts, 2, tier.has_arrows(), depth), "{sorts} {tier} {depth}");
            }
        }
    }

    #[test]
    fn enumeration_is_duplicate_free_and_subterm_closed() {
        let sig = Signature::build(&["A", "B"], vec![], vec![], Tier::Closed).unwrap();
        let tys = sig.enumerate_types(2);
        let set: BTreeSet<_> = tys.iter().cloned().collect();
        assert_eq!(set.len(), tys.len());
        for t in &tys {
            assert!(t.depth() <= 2);
            for c in t.children() {
                assert!(set.contains(c), "{c} missing");
            }
        }
    }
}
