//! The model interface and the strict backends.
//!
//! The strict backend here works on whole functor tables: composition,
//! tupling and currying are computed from the tables of their arguments. The
//! interpreter evaluates judgements pointwise instead, so the two serve as
//! independent checks of each other.

use std::sync::Arc;

use serde::Serialize;

use super::engine::{split_arr, split_obj, tuple_arr, tuple_obj, Engine, Result, SemError};
use super::hom::{BackendKind, GraphHom};
use super::value::{Arr, Cat, FunctorVal, NatVal, Obj};
use crate::signature::Type;

/// The answer to a 2-cell equality query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Distinct,
    Unknown,
}

/// A bicategory with finite products and exponentials.
///
/// Objects, 1-cells and 2-cells are the associated types. Composites are
/// written `g ∘ f` with the later cell first.
pub trait Model {
    type Obj: Clone;
    type One: Clone;
    type Two: Clone;

    fn name(&self) -> &'static str;

    fn id1(&self, a: &Self::Obj) -> Result<Self::One>;
    fn comp1(&self, g: &Self::One, f: &Self::One) -> Result<Self::One>;
    fn id2(&self, f: &Self::One) -> Result<Self::Two>;
    fn vert(&self, later: &Self::Two, first: &Self::Two) -> Result<Self::Two>;
    /// `β ∘ α : g ∘ f ⇒ g' ∘ f'` for `α : f ⇒ f'` and `β : g ⇒ g'`.
    fn horiz(&self, beta: &Self::Two, alpha: &Self::Two) -> Result<Self::Two>;
    /// `a : (h ∘ g) ∘ f ⇒ h ∘ (g ∘ f)`.
    fn assoc(&self, h: &Self::One, g: &Self::One, f: &Self::One) -> Result<Self::Two>;
    /// `l : id ∘ f ⇒ f`.
    fn left_unit(&self, f: &Self::One) -> Result<Self::Two>;
    /// `r : f ∘ id ⇒ f`.
    fn right_unit(&self, f: &Self::One) -> Result<Self::Two>;

    fn product(&self, factors: &[Self::Obj]) -> Result<Self::Obj>;
    fn proj(&self, factors: &[Self::Obj], k: usize) -> Result<Self::One>;
    fn tuple(&self, fs: &[Self::One]) -> Result<Self::One>;
    fn exp(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;
    /// `eval : (a ⇒ b) × a → b`.
    fn eval(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::One>;
    /// The transpose `c → (a ⇒ b)` of `f : c × a → b`, where the domain of
    /// `f` is given as the factors of `c` followed by `a`.
    fn curry(&self, f: &Self::One) -> Result<Self::One>;

    fn eq2(&self, a: &Self::Two, b: &Self::Two) -> Verdict;
}

/// A functor between interpreted types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub dom: Type,
    pub cod: Type,
    pub table: Arc<FunctorVal>,
}

/// A natural transformation between interpreted functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformation {
    pub dom: Type,
    pub cod: Type,
    pub nat: Arc<NatVal>,
}

/// A strict cartesian closed 2-category of finite categories, or of finite
/// sets when every sort is interpreted discretely.
pub struct StrictModel {
    pub hom: GraphHom,
    pub engine: Engine,
}

fn cat_err(what: &str) -> SemError {
    SemError::IllTyped(what.to_string())
}

impl StrictModel {
    pub fn new(hom: GraphHom) -> StrictModel {
        let engine = hom.engine();
        StrictModel { hom, engine }
    }

    pub fn kind(&self) -> BackendKind {
        self.hom.backend
    }

    /// Applies a table to an object of its domain.
    pub fn apply_obj(&self, dom: &Cat, f: &FunctorVal, o: &Obj) -> Result<Obj> {
        let i = dom.obj_index(o).ok_or_else(|| cat_err("object outside the domain"))?;
        Ok(f.obj[i].clone())
    }

    pub fn apply_arr(&self, dom: &Cat, f: &FunctorVal, a: &Arr) -> Result<Arr> {
        let i = dom.arr_index(a).ok_or_else(|| cat_err("arrow outside the domain"))?;
        Ok(f.arr[i].clone())
    }

    fn table(&self, dom: &Type, on_obj: impl Fn(&Obj) -> Result<Obj>, on_arr: impl Fn(&Arr) -> Result<Arr>) -> Result<FunctorVal> {
        let d = self.engine.cat(dom)?;
        Ok(FunctorVal {
            obj: d.objs.iter().map(&on_obj).collect::<Result<_>>()?,
            arr: d.arrs.iter().map(&on_arr).collect::<Result<_>>()?,
        })
    }

    fn functor(&self, dom: &Type, cod: &Type, table: FunctorVal) -> Functor {
        Functor { dom: dom.clone(), cod: cod.clone(), table: Arc::new(table) }
    }

    fn identity_on(&self, f: &Functor) -> Result<Transformation> {
        let d = self.engine.cat(&f.dom)?;
        let comps = d.objs.iter().map(|o| self.engine.id(&f.cod, &self.apply_obj(&d, &f.table, o)?)).collect::<Result<_>>()?;
        Ok(Transformation { dom: f.dom.clone(), cod: f.cod.clone(), nat: Arc::new(NatVal { src: f.table.clone(), tgt: f.table.clone(), comps }) })
    }

    /// The structural cell between two functors that must coincide in a strict backend.
    fn strict_cell(&self, src: &Functor, tgt: &Functor, label: &str) -> Result<Transformation> {
        if src.table != tgt.table {
            return Err(SemError::NonStrict(label.to_string()));
        }
        self.identity_on(src)
    }
}

impl Model for StrictModel {
    type Obj = Type;
    type One = Functor;
    type Two = Transformation;

    fn name(&self) -> &'static str {
        self.hom.backend.name()
    }

    fn id1(&self, a: &Type) -> Result<Functor> {
        let t = self.table(a, |o| Ok(o.clone()), |x| Ok(x.clone()))?;
        Ok(self.functor(a, a, t))
    }

    fn comp1(&self, g: &Functor, f: &Functor) -> Result<Functor> {
        let mid = self.engine.cat(&f.cod)?;
        let d = self.engine.cat(&f.dom)?;
        let t = self.table(
            &f.dom,
            |o| self.apply_obj(&mid, &g.table, &self.apply_obj(&d, &f.table, o)?),
            |x| self.apply_arr(&mid, &g.table, &self.apply_arr(&d, &f.table, x)?),
        )?;
        Ok(self.functor(&f.dom, &g.cod, t))
    }

    fn id2(&self, f: &Functor) -> Result<Transformation> {
        self.identity_on(f)
    }

    fn vert(&self, later: &Transformation, first: &Transformation) -> Result<Transformation> {
        if first.nat.tgt != later.nat.src {
            return Err(cat_err("vertical composite of non-matching transformations"));
        }
        let comps = later.nat.comps.iter().zip(&first.nat.comps).map(|(b, a)| self.engine.comp(&first.cod, b, a)).collect::<Result<_>>()?;
        Ok(Transformation {
            dom: first.dom.clone(),
            cod: first.cod.clone(),
            nat: Arc::new(NatVal { src: first.nat.src.clone(), tgt: later.nat.tgt.clone(), comps }),
        })
    }

    fn horiz(&self, beta: &Transformation, alpha: &Transformation) -> Result<Transformation> {
        let d = self.engine.cat(&alpha.dom)?;
        let mid = self.engine.cat(&alpha.cod)?;
        let mut comps = Vec::with_capacity(d.objs.len());
        for (i, o) in d.objs.iter().enumerate() {
            let fa = self.apply_obj(&d, &alpha.nat.src, o)?;
            let j = mid.obj_index(&fa).ok_or_else(|| cat_err("object outside the middle category"))?;
            let later = self.apply_arr(&mid, &beta.nat.tgt, &alpha.nat.comps[i])?;
            comps.push(self.engine.comp(&beta.cod, &later, &beta.nat.comps[j])?);
        }
        let src = self.comp1(&self.functor(&beta.dom, &beta.cod, (*beta.nat.src).clone()), &self.functor(&alpha.dom, &alpha.cod, (*alpha.nat.src).clone()))?;
        let tgt = self.comp1(&self.functor(&beta.dom, &beta.cod, (*beta.nat.tgt).clone()), &self.functor(&alpha.dom, &alpha.cod, (*alpha.nat.tgt).clone()))?;
        Ok(Transformation { dom: alpha.dom.clone(), cod: beta.cod.clone(), nat: Arc::new(NatVal { src: src.table, tgt: tgt.table, comps }) })
    }

    fn assoc(&self, h: &Functor, g: &Functor, f: &Functor) -> Result<Transformation> {
        let src = self.comp1(&self.comp1(h, g)?, f)?;
        let tgt = self.comp1(h, &self.comp1(g, f)?)?;
        self.strict_cell(&src, &tgt, "a")
    }

    fn left_unit(&self, f: &Functor) -> Result<Transformation> {
        let src = self.comp1(&self.id1(&f.cod)?, f)?;
        self.strict_cell(&src, f, "l")
    }

    fn right_unit(&self, f: &Functor) -> Result<Transformation> {
        let src = self.comp1(f, &self.id1(&f.dom)?)?;
        self.strict_cell(&src, f, "r")
    }

    fn product(&self, factors: &[Type]) -> Result<Type> {
        let ty = Type::prod(factors.to_vec());
        self.engine.cat(&ty)?;
        Ok(ty)
    }

    fn proj(&self, factors: &[Type], k: usize) -> Result<Functor> {
        let n = factors.len();
        if k < 1 || k > n {
            return Err(cat_err("projection index out of range"));
        }
        let dom = Type::prod(factors.to_vec());
        let t = self.table(&dom, |o| Ok(split_obj(n, o)?.swap_remove(k - 1)), |x| Ok(split_arr(n, x)?.swap_remove(k - 1)))?;
        Ok(self.functor(&dom, &factors[k - 1], t))
    }

    fn tuple(&self, fs: &[Functor]) -> Result<Functor> {
        let Some(first) = fs.first() else {
            return Err(cat_err("tupling needs a domain; use `terminal`"));
        };
        let d = self.engine.cat(&first.dom)?;
        let t = self.table(
            &first.dom,
            |o| Ok(tuple_obj(fs.iter().map(|f| self.apply_obj(&d, &f.table, o)).collect::<Result<_>>()?)),
            |x| Ok(tuple_arr(fs.iter().map(|f| self.apply_arr(&d, &f.table, x)).collect::<Result<_>>()?)),
        )?;
        Ok(self.functor(&first.dom, &Type::prod(fs.iter().map(|f| f.cod.clone()).collect()), t))
    }

    fn exp(&self, a: &Type, b: &Type) -> Result<Type> {
        let ty = Type::arrow(a.clone(), b.clone());
        self.engine.cat(&ty)?;
        Ok(ty)
    }

    fn eval(&self, a: &Type, b: &Type) -> Result<Functor> {
        let fun = Type::arrow(a.clone(), b.clone());
        let dom = Type::prod(vec![fun, a.clone()]);
        let ac = self.engine.cat(a)?;
        let t = self.table(
            &dom,
            |o| {
                let [f, x] = <[Obj; 2]>::try_from(split_obj(2, o)?).map_err(|_| cat_err("pair expected"))?;
                let Obj::Fun(f) = f else { return Err(cat_err("functor expected")) };
                self.apply_obj(&ac, &f, &x)
            },
            |x| {
                let [phi, g] = <[Arr; 2]>::try_from(split_arr(2, x)?).map_err(|_| cat_err("pair expected"))?;
                let Arr::Nat(phi) = phi else { return Err(cat_err("transformation expected")) };
                let s = self.engine.src(a, &g)?;
                let si = ac.obj_index(&s).ok_or_else(|| cat_err("object outside the domain"))?;
                self.engine.comp(b, &self.apply_arr(&ac, &phi.tgt, &g)?, &phi.comps[si])
            },
        )?;
        Ok(self.functor(&dom, b, t))
    }

    fn curry(&self, f: &Functor) -> Result<Functor> {
        let factors = f.dom.as_prod().ok_or_else(|| cat_err("currying needs a product domain"))?;
        let Some((a, rest)) = factors.split_last() else { return Err(cat_err("currying needs a non-empty product")) };
        let n = rest.len();
        let c = Type::prod(rest.to_vec());
        let fd = self.engine.cat(&f.dom)?;
        let ac = self.engine.cat(a)?;
        let flat = |xs: Vec<Obj>, y: Obj| {
            let mut v = xs;
            v.push(y);
            tuple_obj(v)
        };
        let flat_arr = |xs: Vec<Arr>, y: Arr| {
            let mut v = xs;
            v.push(y);
            tuple_arr(v)
        };
        let at = |o: &Obj| -> Result<FunctorVal> {
            let xs = split_obj(n, o)?;
            let ids = rest.iter().zip(&xs).map(|(t, x)| self.engine.id(t, x)).collect::<Result<Vec<_>>>()?;
            Ok(FunctorVal {
                obj: ac.objs.iter().map(|y| self.apply_obj(&fd, &f.table, &flat(xs.clone(), y.clone()))).collect::<Result<_>>()?,
                arr: ac.arrs.iter().map(|g| self.apply_arr(&fd, &f.table, &flat_arr(ids.clone(), g.clone()))).collect::<Result<_>>()?,
            })
        };
        let cc = self.engine.cat(&c)?;
        let t = self.table(
            &c,
            |o| Ok(Obj::Fun(Arc::new(at(o)?))),
            |h| {
                let i = cc.arr_index(h).ok_or_else(|| cat_err("arrow outside the domain"))?;
                let src = Arc::new(at(&cc.objs[cc.src[i]])?);
                let tgt = Arc::new(at(&cc.objs[cc.tgt[i]])?);
                let hs = split_arr(n, h)?;
                let comps =
                    ac.ids.iter().map(|&y| self.apply_arr(&fd, &f.table, &flat_arr(hs.clone(), ac.arrs[y].clone()))).collect::<Result<_>>()?;
                Ok(Arr::Nat(Arc::new(NatVal { src, tgt, comps })))
            },
        )?;
        Ok(self.functor(&c, &Type::arrow(a.clone(), f.cod.clone()), t))
    }

    fn eq2(&self, a: &Transformation, b: &Transformation) -> Verdict {
        if a.nat == b.nat {
            Verdict::Equal
        } else {
            Verdict::Distinct
        }
    }
}

impl StrictModel {
    /// The unique 1-cell into the terminal object.
    pub fn terminal(&self, dom: &Type) -> Result<Functor> {
        let unit = Type::unit();
        let t = self.table(dom, |_| Ok(tuple_obj(vec![])), |_| Ok(tuple_arr(vec![])))?;
        Ok(self.functor(dom, &unit, t))
    }

    /// The functor picked out by an edge constant.
    pub fn edge(&self, sig: &crate::signature::Signature, name: &str) -> Result<Functor> {
        let e = sig.edge(name).ok_or_else(|| SemError::UnmappedEdge(name.to_string()))?;
        let table = self.hom.edges.get(name).ok_or_else(|| SemError::UnmappedEdge(name.to_string()))?;
        Ok(Functor { dom: Type::Prod(e.source.clone()), cod: e.target.clone(), table: table.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::value::BaseCat;

    fn model(cat: BaseCat, backend: BackendKind) -> StrictModel {
        let mut h = GraphHom::new(backend);
        h.sorts.insert("A".into(), Arc::new(cat));
        StrictModel::new(h)
    }

    #[test]
    fn curry_then_eval_is_the_original() {
        let m = model(BaseCat::preorder(2, |i, j| i <= j), BackendKind::FinCat);
        let a = Type::base("A");
        let p2 = m.proj(&[a.clone(), a.clone()], 2).unwrap();
        let lam = m.curry(&p2).unwrap();
        let p1 = m.proj(&[a.clone(), a.clone()], 1).unwrap();
        let lam_p1 = m.comp1(&lam, &p1).unwrap();
        let back = m.comp1(&m.eval(&a, &a).unwrap(), &m.tuple(&[lam_p1, p2.clone()]).unwrap()).unwrap();
        assert_eq!(back.table, p2.table);
    }

    #[test]
    fn structural_cells_are_identities() {
        let m = model(BaseCat::monoid(2, |x, y| (x + y) % 2), BackendKind::FinCat);
        let a = Type::base("A");
        let f = m.id1(&a).unwrap();
        let l = m.left_unit(&f).unwrap();
        assert_eq!(m.eq2(&l, &m.id2(&f).unwrap()), Verdict::Equal);
        let asc = m.assoc(&f, &f, &f).unwrap();
        assert!(asc.nat.src == asc.nat.tgt);
    }
}
