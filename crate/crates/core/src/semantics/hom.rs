//! Homomorphisms from a signature into a strict backend, and their validation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::engine::{Engine, Limits};
use super::value::{BaseCat, FunctorVal, NatVal};
use crate::signature::{Signature, Type};

/// The strict backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BackendKind {
    /// Finite sets and functions, locally discrete.
    FinSet,
    /// Finite categories, functors and natural transformations.
    FinCat,
}

impl BackendKind {
    pub fn name(self) -> &'static str {
        match self {
            BackendKind::FinSet => "finset",
            BackendKind::FinCat => "fincat",
        }
    }

    pub fn parse(s: &str) -> Option<BackendKind> {
        match s {
            "finset" => Some(BackendKind::FinSet),
            "fincat" => Some(BackendKind::FinCat),
            _ => None,
        }
    }

    pub fn limits(self) -> Limits {
        match self {
            BackendKind::FinSet => Limits::FINSET,
            BackendKind::FinCat => Limits::FINCAT,
        }
    }
}

/// Images of sorts, edges and surfaces. Compound nodes are interpreted
/// compositionally; `nodes` optionally records claimed images of compound
/// types so that the node conditions can be checked.
#[derive(Debug, Clone)]
pub struct GraphHom {
    pub backend: BackendKind,
    pub sorts: BTreeMap<String, Arc<BaseCat>>,
    pub nodes: Vec<(Type, Arc<BaseCat>)>,
    pub edges: BTreeMap<String, Arc<FunctorVal>>,
    pub surfaces: BTreeMap<String, Arc<NatVal>>,
}

impl GraphHom {
    pub fn new(backend: BackendKind) -> GraphHom {
        GraphHom { backend, sorts: BTreeMap::new(), nodes: Vec::new(), edges: BTreeMap::new(), surfaces: BTreeMap::new() }
    }

    pub fn engine(&self) -> Engine {
        self.engine_with(self.backend.limits())
    }

    pub fn engine_with(&self, limits: Limits) -> Engine {
        Engine::new(self.sorts.iter().map(|(k, v)| (Arc::from(k.as_str()), v.clone())).collect(), limits)
    }

    /// Names of base objects and arrows, for printing values.
    pub fn namer(&self, ty: &Type) -> impl Fn(u32, bool) -> String + '_ {
        let base = match ty {
            Type::Base(b) => self.sorts.get(&**b).cloned(),
            _ => None,
        };
        let all: Vec<Arc<BaseCat>> = self.sorts.values().cloned().collect();
        move |i, is_obj| {
            let cat = base.clone().or_else(|| all.first().cloned());
            match cat {
                Some(c) if is_obj => c.objects.get(i as usize).cloned().unwrap_or_else(|| i.to_string()),
                Some(c) => c.arrows.get(i as usize).map(|a| a.0.clone()).unwrap_or_else(|| i.to_string()),
                None => i.to_string(),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomViolation {
    pub item: String,
    pub message: String,
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.item, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub violations: Vec<HomViolation>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, item: impl Into<String>, message: impl Into<String>) {
        self.violations.push(HomViolation { item: item.into(), message: message.into() });
    }
}

/// Checks that `h` preserves sources and targets and satisfies the node conditions.
pub fn check_hom(h: &GraphHom, sig: &Signature) -> HomReport {
    let mut report = HomReport::default();
    for sort in sig.sorts() {
        match h.sorts.get(&**sort) {
            None => report.push(sort.to_string(), "sort is not mapped"),
            Some(c) => {
                if let Err(e) = c.validate() {
                    report.push(sort.to_string(), format!("image is not a category: {e}"));
                } else if h.backend == BackendKind::FinSet && !c.is_discrete() {
                    report.push(sort.to_string(), "image is not a finite set");
                }
            }
        }
    }
    if !report.passed() {
        return report;
    }
    let engine = h.engine();
    for (ty, claimed) in &h.nodes {
        match engine.cat(ty) {
            Err(e) => report.push(ty.to_string(), e.to_string()),
            Ok(c) => {
                let (no, na) = (claimed.num_objects(), claimed.num_arrows());
                if no != c.objs.len() || na != c.arrs.len() {
                    let what = if ty.as_prod().is_some() { "product" } else if ty.as_arrow().is_some() { "exponential" } else { "sort" };
                    let unit = if h.backend == BackendKind::FinSet { "elements".to_string() } else { format!("objects and {} arrows", c.arrs.len()) };
                    report.push(ty.to_string(), format!("{what} image mismatch (expected {} {unit}, found {no})", c.objs.len()));
                }
            }
        }
    }
    for edge in sig.edges() {
        let Some(table) = h.edges.get(&edge.name) else {
            report.push(edge.name.clone(), "constant is not mapped");
            continue;
        };
        let dom_ty = Type::Prod(edge.source.clone());
        let result = engine.cat(&dom_ty).map_err(|e| e.to_string()).and_then(|dom| engine.check_functor(&dom, &dom_ty, &edge.target, table));
        if let Err(e) = result {
            let kind = if e.contains("outside") { "target mismatch" } else { "not a functor" };
            report.push(edge.name.clone(), format!("{kind}: {e}"));
        }
    }
    for surf in sig.surfaces() {
        let Some(nat) = h.surfaces.get(&surf.name) else {
            report.push(surf.name.clone(), "surface is not mapped");
            continue;
        };
        let Some(edge) = sig.edge(&surf.from) else { continue };
        if h.edges.get(&surf.from).map(|f| **f != *nat.src).unwrap_or(true) {
            report.push(surf.name.clone(), format!("source is not the image of {}", surf.from));
        }
        if h.edges.get(&surf.to).map(|f| **f != *nat.tgt).unwrap_or(true) {
            report.push(surf.name.clone(), format!("target is not the image of {}", surf.to));
        }
        let dom_ty = Type::Prod(edge.source.clone());
        let result = engine.cat(&dom_ty).map_err(|e| e.to_string()).and_then(|dom| engine.check_nat(&dom, &dom_ty, &edge.target, nat));
        if let Err(e) = result {
            report.push(surf.name.clone(), format!("not a transformation: {e}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::value::{Arr, Obj};
    use crate::signature::{Edge, Tier};

    fn two() -> Arc<BaseCat> {
        Arc::new(BaseCat::discrete(2))
    }

    #[test]
    fn identity_style_map_passes() {
        let sig = Signature::build(&["A"], vec![], vec![], Tier::Bicat).unwrap();
        let mut h = GraphHom::new(BackendKind::FinSet);
        h.sorts.insert("A".into(), two());
        assert!(check_hom(&h, &sig).passed());
    }

    #[test]
    fn product_image_mismatch() {
        let sig = Signature::build(&["A"], vec![], vec![], Tier::Products).unwrap();
        let mut h = GraphHom::new(BackendKind::FinSet);
        h.sorts.insert("A".into(), two());
        h.nodes.push((Type::prod(vec![Type::base("A"), Type::base("A")]), Arc::new(BaseCat::discrete(3))));
        let r = check_hom(&h, &sig);
        assert_eq!(r.violations.len(), 1);
        assert!(r.violations[0].message.contains("expected 4 elements"), "{}", r.violations[0]);
    }

    #[test]
    fn edge_target_mismatch() {
        let a = Type::base("A");
        let sig = Signature::build(&["A"], vec![Edge { name: "c".into(), source: vec![a.clone()], target: a }], vec![], Tier::Bicat).unwrap();
        let mut h = GraphHom::new(BackendKind::FinSet);
        h.sorts.insert("A".into(), two());
        let f = FunctorVal { obj: vec![Obj::Base(0), Obj::Base(2)], arr: vec![Arr::Base(0), Arr::Base(2)] };
        h.edges.insert("c".into(), Arc::new(f));
        let r = check_hom(&h, &sig);
        assert!(r.violations.iter().any(|v| v.message.starts_with("target mismatch")), "{:?}", r);
    }
}
