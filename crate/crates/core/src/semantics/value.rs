//! Objects, arrows, functors and transformations of finite categories.
//!
//! Values are structural: a product value is a tuple, an exponential object
//! is a functor table and an exponential arrow a natural transformation.
//! Tables are indexed by the enumeration order of the domain category.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obj {
    Base(u32),
    Tuple(Vec<Obj>),
    Fun(Arc<FunctorVal>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arr {
    Base(u32),
    Tuple(Vec<Arr>),
    Nat(Arc<NatVal>),
}

/// A functor given by its action on the enumerated objects and arrows of its domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctorVal {
    pub obj: Vec<Obj>,
    pub arr: Vec<Arr>,
}

/// A natural transformation, with one component per domain object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatVal {
    pub src: Arc<FunctorVal>,
    pub tgt: Arc<FunctorVal>,
    pub comps: Vec<Arr>,
}

/// A finite category presented by generators' closure: every arrow listed, with a composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseCat {
    pub objects: Vec<String>,
    /// `(name, source, target)`; identities are included.
    pub arrows: Vec<(String, usize, usize)>,
    pub ids: Vec<usize>,
    /// `comp[g][f] = g ∘ f` when `target(f) = source(g)`.
    pub comp: Vec<Vec<Option<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatError {
    #[error("arrow `{0}` has an endpoint out of range")]
    Endpoint(String),
    #[error("object `{0}` has no identity")]
    NoIdentity(String),
    #[error("composite of `{g}` after `{f}` is missing or ill-typed")]
    Composite { g: String, f: String },
    #[error("identity law fails at `{0}`")]
    Unit(String),
    #[error("associativity fails at `{h}`, `{g}`, `{f}`")]
    Assoc { h: String, g: String, f: String },
    #[error("duplicate name `{0}`")]
    Duplicate(String),
}

impl BaseCat {
    /// The discrete category on `n` objects named `0..n`.
    pub fn discrete(n: usize) -> BaseCat {
        BaseCat::discrete_named((0..n).map(|i| i.to_string()).collect())
    }

    pub fn discrete_named(objects: Vec<String>) -> BaseCat {
        let n = objects.len();
        let arrows = objects.iter().enumerate().map(|(i, o)| (format!("id_{o}"), i, i)).collect();
        let comp = (0..n).map(|g| (0..n).map(|f| (f == g).then_some(g)).collect()).collect();
        BaseCat { objects, arrows, ids: (0..n).collect(), comp }
    }

    /// The thin category of a preorder given by `le(i, j)` on `n` objects.
    pub fn preorder(n: usize, le: impl Fn(usize, usize) -> bool) -> BaseCat {
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || le(i, j) {
                    index.insert((i, j), arrows.len());
                    let name = if i == j { format!("id_{i}") } else { format!("{i}<{j}") };
                    arrows.push((name, i, j));
                }
            }
        }
        let ids = (0..n).map(|i| index[&(i, i)]).collect();
        let comp = arrows
            .iter()
            .map(|&(_, gs, gt)| arrows.iter().map(|&(_, fs, ft)| if ft == gs { index.get(&(fs, gt)).copied() } else { None }).collect())
            .collect();
        BaseCat { objects: (0..n).map(|i| i.to_string()).collect(), arrows, ids, comp }
    }

    /// A one-object category from a monoid multiplication table on `0..m`, with `0` the unit.
    pub fn monoid(m: usize, mul: impl Fn(usize, usize) -> usize) -> BaseCat {
        let arrows = (0..m).map(|i| (if i == 0 { "id_*".to_string() } else { format!("m{i}") }, 0, 0)).collect();
        let comp = (0..m).map(|g| (0..m).map(|f| Some(mul(g, f))).collect()).collect();
        BaseCat { objects: vec!["*".into()], arrows, ids: vec![0], comp }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.arrows.len() == self.objects.len()
    }

    pub fn object_named(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_named(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.0 == name)
    }

    /// Checks the category axioms.
    pub fn validate(&self) -> Result<(), CatError> {
        let n = self.objects.len();
        let mut seen = std::collections::HashSet::new();
        for name in self.objects.iter().chain(self.arrows.iter().map(|a| &a.0)) {
            if !seen.insert(name.as_str()) {
                return Err(CatError::Duplicate(name.clone()));
            }
        }
        for (name, s, t) in &self.arrows {
            if *s >= n || *t >= n {
                return Err(CatError::Endpoint(name.clone()));
            }
        }
        if self.ids.len() != n {
            return Err(CatError::NoIdentity(self.objects.get(self.ids.len()).cloned().unwrap_or_default()));
        }
        for (o, &i) in self.ids.iter().enumerate() {
            let a = self.arrows.get(i).ok_or_else(|| CatError::NoIdentity(self.objects[o].clone()))?;
            if a.1 != o || a.2 != o {
                return Err(CatError::NoIdentity(self.objects[o].clone()));
            }
        }
        let m = self.arrows.len();
        let name = |i: usize| self.arrows[i].0.clone();
        let comp = |g: usize, f: usize| self.comp.get(g).and_then(|row| row.get(f)).copied().flatten();
        for g in 0..m {
            for f in 0..m {
                let composable = self.arrows[f].2 == self.arrows[g].1;
                match (composable, comp(g, f)) {
                    (true, Some(h)) if h < m && self.arrows[h].1 == self.arrows[f].1 && self.arrows[h].2 == self.arrows[g].2 => {}
                    (false, None) => {}
                    _ => return Err(CatError::Composite { g: name(g), f: name(f) }),
                }
            }
        }
        for f in 0..m {
            let (_, s, t) = self.arrows[f];
            if comp(self.ids[t], f) != Some(f) || comp(f, self.ids[s]) != Some(f) {
                return Err(CatError::Unit(name(f)));
            }
        }
        for h in 0..m {
            for g in 0..m {
                let Some(hg) = comp(h, g) else { continue };
                for f in 0..m {
                    let Some(gf) = comp(g, f) else { continue };
                    if comp(hg, f) != comp(h, gf) {
                        return Err(CatError::Assoc { h: name(h), g: name(g), f: name(f) });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A materialized category: enumerated objects and arrows with their endpoints.
#[derive(Debug, Clone)]
pub struct Cat {
    pub objs: Vec<Obj>,
    pub arrs: Vec<Arr>,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub ids: Vec<usize>,
    obj_ix: HashMap<Obj, usize>,
    arr_ix: HashMap<Arr, usize>,
}

impl Cat {
    pub fn new(objs: Vec<Obj>, arrs: Vec<Arr>, src: Vec<usize>, tgt: Vec<usize>, ids: Vec<usize>) -> Cat {
        let obj_ix = objs.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let arr_ix = arrs.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Cat { objs, arrs, src, tgt, ids, obj_ix, arr_ix }
    }

    pub fn from_base(b: &BaseCat) -> Cat {
        Cat::new(
            (0..b.objects.len()).map(|i| Obj::Base(i as u32)).collect(),
            (0..b.arrows.len()).map(|i| Arr::Base(i as u32)).collect(),
            b.arrows.iter().map(|a| a.1).collect(),
            b.arrows.iter().map(|a| a.2).collect(),
            b.ids.clone(),
        )
    }

    pub fn obj_index(&self, o: &Obj) -> Option<usize> {
        self.obj_ix.get(o).copied()
    }

    pub fn arr_index(&self, a: &Arr) -> Option<usize> {
        self.arr_ix.get(a).copied()
    }

    /// Arrows grouped by endpoints.
    pub fn homs(&self) -> HashMap<(usize, usize), Vec<usize>> {
        let mut out: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for i in 0..self.arrs.len() {
            out.entry((self.src[i], self.tgt[i])).or_default().push(i);
        }
        out
    }
}

/// Renders values using the names of the base categories of a hom.
pub struct Show<'a, T> {
    pub value: &'a T,
    pub names: &'a dyn Fn(u32, bool) -> String,
}

impl fmt::Display for Show<'_, Obj> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Obj::Base(i) => f.write_str(&(self.names)(*i, true)),
            Obj::Tuple(xs) => {
                f.write_str("(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", Show { value: x, names: self.names })?;
                }
                f.write_str(")")
            }
            Obj::Fun(fv) => write!(f, "{}", Show { value: &**fv, names: self.names }),
        }
    }
}

impl fmt::Display for Show<'_, Arr> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Arr::Base(i) => f.write_str(&(self.names)(*i, false)),
            Arr::Tuple(xs) => {
                f.write_str("(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", Show { value: x, names: self.names })?;
                }
                f.write_str(")")
            }
            Arr::Nat(n) => {
                f.write_str("[")?;
                for (i, c) in n.comps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", Show { value: c, names: self.names })?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Functors print as their object map, listed in domain order.
impl fmt::Display for Show<'_, FunctorVal> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, o) in self.value.obj.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", Show { value: o, names: self.names })?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_categories_validate() {
        BaseCat::discrete(3).validate().unwrap();
        BaseCat::preorder(3, |i, j| i <= j).validate().unwrap();
        BaseCat::monoid(2, |a, b| (a + b) % 2).validate().unwrap();
        BaseCat::monoid(2, |a, b| a.max(b)).validate().unwrap();
        assert_eq!(BaseCat::preorder(3, |i, j| i <= j).num_arrows(), 6);
    }

    #[test]
    fn bad_composition_is_rejected() {
        let mut c = BaseCat::preorder(2, |i, j| i <= j);
        c.comp[0][0] = None;
        assert!(c.validate().is_err());
    }
}
