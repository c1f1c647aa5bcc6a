//! Type-directed operations on values in the strict 2-category of finite categories.
//!
//! Products are flattened n-ary tuples with the unary product taken to be the
//! factor itself; exponentials are functor categories, enumerated on demand
//! under a size cap.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rand::seq::SliceRandom;
use rand::RngCore;
use thiserror::Error;

use super::value::{Arr, BaseCat, Cat, FunctorVal, NatVal, Obj};
use crate::signature::Type;
use crate::typing::TypeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemError {
    #[error("sort `{0}` is not mapped")]
    UnmappedSort(String),
    #[error("constant `{0}` is not mapped")]
    UnmappedEdge(String),
    #[error("surface `{0}` is not mapped")]
    UnmappedSurface(String),
    #[error("{what} of {ty} exceeds the size cap")]
    TooLarge { ty: String, what: &'static str },
    #[error("ill-typed value: {0}")]
    IllTyped(String),
    #[error("structural rewrite {0} is not an identity")]
    NonStrict(String),
    #[error(transparent)]
    Type(#[from] TypeError),
}

pub type Result<T> = std::result::Result<T, SemError>;

/// Size caps for enumerated exponential categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_objects: usize,
    pub max_arrows: usize,
}

impl Limits {
    pub const FINCAT: Limits = Limits { max_objects: 4, max_arrows: 12 };
    pub const FINSET: Limits = Limits { max_objects: 4096, max_arrows: 4096 };
}

fn ill(msg: impl Into<String>) -> SemError {
    SemError::IllTyped(msg.into())
}

/// Splits an object of a context category into per-variable components.
pub fn split_obj(n: usize, o: &Obj) -> Result<Vec<Obj>> {
    match (n, o) {
        (1, _) => Ok(vec![o.clone()]),
        (_, Obj::Tuple(xs)) if xs.len() == n => Ok(xs.clone()),
        _ => Err(ill(format!("expected a {n}-tuple object"))),
    }
}

pub fn split_arr(n: usize, a: &Arr) -> Result<Vec<Arr>> {
    match (n, a) {
        (1, _) => Ok(vec![a.clone()]),
        (_, Arr::Tuple(xs)) if xs.len() == n => Ok(xs.clone()),
        _ => Err(ill(format!("expected a {n}-tuple arrow"))),
    }
}

pub fn tuple_obj(mut xs: Vec<Obj>) -> Obj {
    if xs.len() == 1 {
        xs.pop().expect("one element")
    } else {
        Obj::Tuple(xs)
    }
}

pub fn tuple_arr(mut xs: Vec<Arr>) -> Arr {
    if xs.len() == 1 {
        xs.pop().expect("one element")
    } else {
        Arr::Tuple(xs)
    }
}

pub struct Engine {
    pub sorts: BTreeMap<Arc<str>, Arc<BaseCat>>,
    pub limits: Limits,
    cache: Mutex<HashMap<Type, Arc<Cat>>>,
}

impl Engine {
    pub fn new(sorts: BTreeMap<Arc<str>, Arc<BaseCat>>, limits: Limits) -> Engine {
        Engine { sorts, limits, cache: Mutex::new(HashMap::new()) }
    }

    fn base(&self, name: &Arc<str>) -> Result<&Arc<BaseCat>> {
        self.sorts.get(name).ok_or_else(|| SemError::UnmappedSort(name.to_string()))
    }

    /// The category interpreting `ty`.
    pub fn cat(&self, ty: &Type) -> Result<Arc<Cat>> {
        if let Some(c) = self.cache.lock().expect("cache lock").get(ty) {
            return Ok(c.clone());
        }
        let c = Arc::new(match ty {
            Type::Base(b) => Cat::from_base(self.base(b)?),
            Type::Prod(tys) if tys.len() == 1 => return self.cat(&tys[0]),
            Type::Prod(tys) => {
                let cats = tys.iter().map(|t| self.cat(t)).collect::<Result<Vec<_>>>()?;
                product_cat(&cats)
            }
            Type::Arrow(a, b) => self.exponential(a, b)?,
        });
        self.cache.lock().expect("cache lock").insert(ty.clone(), c.clone());
        Ok(c)
    }

    pub fn context_cat(&self, tys: &[Type]) -> Result<Arc<Cat>> {
        self.cat(&Type::Prod(tys.to_vec()))
    }

    pub fn id(&self, ty: &Type, o: &Obj) -> Result<Arr> {
        match (ty, o) {
            (Type::Base(b), Obj::Base(i)) => {
                let c = self.base(b)?;
                let id = c.ids.get(*i as usize).ok_or_else(|| ill(format!("object {i} outside {b}")))?;
                Ok(Arr::Base(*id as u32))
            }
            (Type::Prod(tys), _) if tys.len() == 1 => self.id(&tys[0], o),
            (Type::Prod(tys), Obj::Tuple(xs)) if xs.len() == tys.len() => {
                Ok(Arr::Tuple(tys.iter().zip(xs).map(|(t, x)| self.id(t, x)).collect::<Result<_>>()?))
            }
            (Type::Arrow(_, b), Obj::Fun(f)) => {
                let comps = f.obj.iter().map(|x| self.id(b, x)).collect::<Result<_>>()?;
                Ok(Arr::Nat(Arc::new(NatVal { src: f.clone(), tgt: f.clone(), comps })))
            }
            _ => Err(ill(format!("no identity at {ty}"))),
        }
    }

    /// `g ∘ f`.
    pub fn comp(&self, ty: &Type, g: &Arr, f: &Arr) -> Result<Arr> {
        match (ty, g, f) {
            (Type::Base(b), Arr::Base(gi), Arr::Base(fi)) => {
                let c = self.base(b)?;
                let h = c.comp.get(*gi as usize).and_then(|row| row.get(*fi as usize)).copied().flatten();
                h.map(|h| Arr::Base(h as u32)).ok_or_else(|| ill(format!("arrows {gi} and {fi} of {b} do not compose")))
            }
            (Type::Prod(tys), _, _) if tys.len() == 1 => self.comp(&tys[0], g, f),
            (Type::Prod(tys), Arr::Tuple(gs), Arr::Tuple(fs)) if gs.len() == tys.len() && fs.len() == tys.len() => Ok(Arr::Tuple(
                tys.iter().zip(gs.iter().zip(fs)).map(|(t, (g, f))| self.comp(t, g, f)).collect::<Result<_>>()?,
            )),
            (Type::Arrow(_, b), Arr::Nat(gn), Arr::Nat(fn_)) => {
                if gn.src != fn_.tgt {
                    return Err(ill(format!("transformations do not compose at {ty}")));
                }
                let comps = gn.comps.iter().zip(&fn_.comps).map(|(g, f)| self.comp(b, g, f)).collect::<Result<_>>()?;
                Ok(Arr::Nat(Arc::new(NatVal { src: fn_.src.clone(), tgt: gn.tgt.clone(), comps })))
            }
            _ => Err(ill(format!("cannot compose at {ty}"))),
        }
    }

    pub fn src(&self, ty: &Type, a: &Arr) -> Result<Obj> {
        self.endpoint(ty, a, true)
    }

    pub fn tgt(&self, ty: &Type, a: &Arr) -> Result<Obj> {
        self.endpoint(ty, a, false)
    }

    fn endpoint(&self, ty: &Type, a: &Arr, source: bool) -> Result<Obj> {
        match (ty, a) {
            (Type::Base(b), Arr::Base(i)) => {
                let c = self.base(b)?;
                let (_, s, t) = c.arrows.get(*i as usize).ok_or_else(|| ill(format!("arrow {i} outside {b}")))?;
                Ok(Obj::Base(if source { *s } else { *t } as u32))
            }
            (Type::Prod(tys), _) if tys.len() == 1 => self.endpoint(&tys[0], a, source),
            (Type::Prod(tys), Arr::Tuple(xs)) if xs.len() == tys.len() => {
                Ok(Obj::Tuple(tys.iter().zip(xs).map(|(t, x)| self.endpoint(t, x, source)).collect::<Result<_>>()?))
            }
            (Type::Arrow(..), Arr::Nat(n)) => Ok(Obj::Fun(if source { n.src.clone() } else { n.tgt.clone() })),
            _ => Err(ill(format!("no endpoint at {ty}"))),
        }
    }

    /// Whether `o` is an object of the category interpreting `ty`.
    pub fn is_obj(&self, ty: &Type, o: &Obj) -> bool {
        match (ty, o) {
            (Type::Base(b), Obj::Base(i)) => self.sorts.get(b).is_some_and(|c| (*i as usize) < c.num_objects()),
            (Type::Prod(tys), _) if tys.len() == 1 => self.is_obj(&tys[0], o),
            (Type::Prod(tys), Obj::Tuple(xs)) => xs.len() == tys.len() && tys.iter().zip(xs).all(|(t, x)| self.is_obj(t, x)),
            (Type::Arrow(a, b), Obj::Fun(f)) => self.cat(a).is_ok_and(|dom| self.check_functor(&dom, a, b, f).is_ok()),
            _ => false,
        }
    }

    pub fn is_arr(&self, ty: &Type, x: &Arr) -> bool {
        match (ty, x) {
            (Type::Base(b), Arr::Base(i)) => self.sorts.get(b).is_some_and(|c| (*i as usize) < c.num_arrows()),
            (Type::Prod(tys), _) if tys.len() == 1 => self.is_arr(&tys[0], x),
            (Type::Prod(tys), Arr::Tuple(xs)) => xs.len() == tys.len() && tys.iter().zip(xs).all(|(t, x)| self.is_arr(t, x)),
            (Type::Arrow(a, b), Arr::Nat(n)) => self.cat(a).is_ok_and(|dom| self.check_nat(&dom, a, b, n).is_ok()),
            _ => false,
        }
    }

    /// Checks that `f` is a functor from `dom` (interpreting `dom_ty`) into the interpretation of `cod`.
    pub fn check_functor(&self, dom: &Cat, dom_ty: &Type, cod: &Type, f: &FunctorVal) -> std::result::Result<(), String> {
        let _ = dom_ty;
        if f.obj.len() != dom.objs.len() || f.arr.len() != dom.arrs.len() {
            return Err(format!("table has {} objects and {} arrows, expected {} and {}", f.obj.len(), f.arr.len(), dom.objs.len(), dom.arrs.len()));
        }
        for (i, o) in f.obj.iter().enumerate() {
            if !self.is_obj(cod, o) {
                return Err(format!("object {i} is sent outside {cod}"));
            }
        }
        for (i, a) in f.arr.iter().enumerate() {
            if !self.is_arr(cod, a) {
                return Err(format!("arrow {i} is sent outside {cod}"));
            }
            let s = self.src(cod, a).map_err(|e| e.to_string())?;
            let t = self.tgt(cod, a).map_err(|e| e.to_string())?;
            if s != f.obj[dom.src[i]] || t != f.obj[dom.tgt[i]] {
                return Err(format!("arrow {i} is sent to an arrow with the wrong endpoints"));
            }
        }
        for (o, &i) in dom.ids.iter().enumerate() {
            if self.id(cod, &f.obj[o]).ok().as_ref() != Some(&f.arr[i]) {
                return Err(format!("identity at object {o} is not preserved"));
            }
        }
        for (g, f_, h) in self.composable(dom, dom_ty)? {
            let want = self.comp(cod, &f.arr[g], &f.arr[f_]).map_err(|e| e.to_string())?;
            if want != f.arr[h] {
                return Err(format!("composite of arrows {g} and {f_} is not preserved"));
            }
        }
        Ok(())
    }

    pub fn check_nat(&self, dom: &Cat, dom_ty: &Type, cod: &Type, n: &NatVal) -> std::result::Result<(), String> {
        self.check_functor(dom, dom_ty, cod, &n.src)?;
        self.check_functor(dom, dom_ty, cod, &n.tgt)?;
        if n.comps.len() != dom.objs.len() {
            return Err("wrong number of components".into());
        }
        for (i, c) in n.comps.iter().enumerate() {
            let ok = self.is_arr(cod, c)
                && self.src(cod, c).ok().as_ref() == Some(&n.src.obj[i])
                && self.tgt(cod, c).ok().as_ref() == Some(&n.tgt.obj[i]);
            if !ok {
                return Err(format!("component {i} has the wrong endpoints"));
            }
        }
        for a in 0..dom.arrs.len() {
            let (s, t) = (dom.src[a], dom.tgt[a]);
            let left = self.comp(cod, &n.tgt.arr[a], &n.comps[s]).map_err(|e| e.to_string())?;
            let right = self.comp(cod, &n.comps[t], &n.src.arr[a]).map_err(|e| e.to_string())?;
            if left != right {
                return Err(format!("naturality fails at arrow {a}"));
            }
        }
        Ok(())
    }

    /// All triples `(g, f, g ∘ f)` of arrow indices of `dom`.
    pub fn composable(&self, dom: &Cat, dom_ty: &Type) -> std::result::Result<Vec<(usize, usize, usize)>, String> {
        let mut out = Vec::new();
        for f in 0..dom.arrs.len() {
            for g in 0..dom.arrs.len() {
                if dom.tgt[f] != dom.src[g] {
                    continue;
                }
                let h = self.comp(dom_ty, &dom.arrs[g], &dom.arrs[f]).map_err(|e| e.to_string())?;
                let hi = dom.arr_index(&h).ok_or("composite outside the domain")?;
                out.push((g, f, hi));
            }
        }
        Ok(out)
    }

    /// Functors `dom → cod`, at most `limit` of them; randomized order when `rng` is given.
    pub fn search_functors(
        &self,
        dom_ty: &Type,
        cod_ty: &Type,
        limit: usize,
        mut rng: Option<&mut dyn RngCore>,
    ) -> Result<Vec<FunctorVal>> {
        let dom = self.cat(dom_ty)?;
        let cod = self.cat(cod_ty)?;
        let triples = self.composable(&dom, dom_ty).map_err(ill)?;
        let homs = cod.homs();
        let mut out = Vec::new();
        let mut obj_choice: Vec<usize> = Vec::with_capacity(dom.objs.len());
        let mut obj_orders: Vec<Vec<usize>> = Vec::new();
        for _ in 0..dom.objs.len() {
            let mut order: Vec<usize> = (0..cod.objs.len()).collect();
            if let Some(r) = rng.as_deref_mut() {
                order.shuffle(r);
            }
            obj_orders.push(order);
        }
        let search = FunctorSearch { dom: &dom, cod: &cod, cod_ty, engine: self, triples: &triples, homs: &homs };
        search.objects(&obj_orders, &mut obj_choice, &mut rng, limit, &mut out)?;
        Ok(out)
    }

    /// Natural transformations `F ⇒ G` between functors on the interpretation of `dom_ty`.
    pub fn search_nats(
        &self,
        dom_ty: &Type,
        cod_ty: &Type,
        src: &Arc<FunctorVal>,
        tgt: &Arc<FunctorVal>,
        limit: usize,
        mut rng: Option<&mut dyn RngCore>,
    ) -> Result<Vec<NatVal>> {
        let dom = self.cat(dom_ty)?;
        let cod = self.cat(cod_ty)?;
        let homs = cod.homs();
        let idx = |o: &Obj| cod.obj_index(o).ok_or_else(|| ill("functor value outside the codomain"));
        let mut candidates = Vec::with_capacity(dom.objs.len());
        for i in 0..dom.objs.len() {
            let key = (idx(&src.obj[i])?, idx(&tgt.obj[i])?);
            let mut c = homs.get(&key).cloned().unwrap_or_default();
            if let Some(r) = rng.as_deref_mut() {
                c.shuffle(r);
            }
            candidates.push(c);
        }
        let mut out = Vec::new();
        let mut choice = Vec::with_capacity(dom.objs.len());
        self.nat_step(&dom, &cod, cod_ty, src, tgt, &candidates, &mut choice, limit, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn nat_step(
        &self,
        dom: &Cat,
        cod: &Cat,
        cod_ty: &Type,
        src: &Arc<FunctorVal>,
        tgt: &Arc<FunctorVal>,
        candidates: &[Vec<usize>],
        choice: &mut Vec<usize>,
        limit: usize,
        out: &mut Vec<NatVal>,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        let k = choice.len();
        if k == dom.objs.len() {
            out.push(NatVal { src: src.clone(), tgt: tgt.clone(), comps: choice.iter().map(|&i| cod.arrs[i].clone()).collect() });
            return Ok(());
        }
        for &c in &candidates[k] {
            choice.push(c);
            let mut ok = true;
            for a in 0..dom.arrs.len() {
                let (s, t) = (dom.src[a], dom.tgt[a]);
                if s > k || t > k {
                    continue;
                }
                let left = self.comp(cod_ty, &tgt.arr[a], &cod.arrs[choice[s]])?;
                let right = self.comp(cod_ty, &cod.arrs[choice[t]], &src.arr[a])?;
                if left != right {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.nat_step(dom, cod, cod_ty, src, tgt, candidates, choice, limit, out)?;
            }
            choice.pop();
            if out.len() >= limit {
                break;
            }
        }
        Ok(())
    }

    fn exponential(&self, a: &Type, b: &Type) -> Result<Cat> {
        let cap = self.limits;
        let fs = self.search_functors(a, b, cap.max_objects + 1, None)?;
        if fs.len() > cap.max_objects {
            return Err(SemError::TooLarge { ty: Type::arrow(a.clone(), b.clone()).to_string(), what: "functor set" });
        }
        let fs: Vec<Arc<FunctorVal>> = fs.into_iter().map(Arc::new).collect();
        let mut arrs = Vec::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut ids = vec![usize::MAX; fs.len()];
        for (i, f) in fs.iter().enumerate() {
            for (j, g) in fs.iter().enumerate() {
                let remaining = cap.max_arrows + 1 - arrs.len().min(cap.max_arrows + 1);
                for n in self.search_nats(a, b, f, g, remaining, None)? {
                    if i == j && n.comps.iter().zip(&f.obj).all(|(c, o)| self.id(b, o).ok().as_ref() == Some(c)) {
                        ids[i] = arrs.len();
                    }
                    arrs.push(Arr::Nat(Arc::new(n)));
                    src.push(i);
                    tgt.push(j);
                }
                if arrs.len() > cap.max_arrows {
                    return Err(SemError::TooLarge { ty: Type::arrow(a.clone(), b.clone()).to_string(), what: "transformation set" });
                }
            }
        }
        Ok(Cat::new(fs.into_iter().map(Obj::Fun).collect(), arrs, src, tgt, ids))
    }
}

struct FunctorSearch<'a> {
    dom: &'a Cat,
    cod: &'a Cat,
    cod_ty: &'a Type,
    engine: &'a Engine,
    triples: &'a [(usize, usize, usize)],
    homs: &'a HashMap<(usize, usize), Vec<usize>>,
}

impl FunctorSearch<'_> {
    fn objects(
        &self,
        orders: &[Vec<usize>],
        choice: &mut Vec<usize>,
        rng: &mut Option<&mut dyn RngCore>,
        limit: usize,
        out: &mut Vec<FunctorVal>,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        let k = choice.len();
        if k == self.dom.objs.len() {
            let mut candidates = Vec::with_capacity(self.dom.arrs.len());
            for a in 0..self.dom.arrs.len() {
                let key = (choice[self.dom.src[a]], choice[self.dom.tgt[a]]);
                let mut c = if let Some(o) = self.dom.ids.iter().position(|&i| i == a) {
                    vec![self.cod.ids[choice[o]]]
                } else {
                    self.homs.get(&key).cloned().unwrap_or_default()
                };
                if let Some(r) = rng.as_deref_mut() {
                    c.shuffle(r);
                }
                candidates.push(c);
            }
            let mut arr_choice = Vec::with_capacity(self.dom.arrs.len());
            return self.arrows(choice, &candidates, &mut arr_choice, limit, out);
        }
        for &o in &orders[k] {
            choice.push(o);
            self.objects(orders, choice, rng, limit, out)?;
            choice.pop();
            if out.len() >= limit {
                break;
            }
        }
        Ok(())
    }

    fn arrows(&self, objs: &[usize], candidates: &[Vec<usize>], choice: &mut Vec<usize>, limit: usize, out: &mut Vec<FunctorVal>) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        let k = choice.len();
        if k == self.dom.arrs.len() {
            out.push(FunctorVal {
                obj: objs.iter().map(|&i| self.cod.objs[i].clone()).collect(),
                arr: choice.iter().map(|&i| self.cod.arrs[i].clone()).collect(),
            });
            return Ok(());
        }
        for &c in &candidates[k] {
            choice.push(c);
            let mut ok = true;
            for &(g, f, h) in self.triples {
                if g.max(f).max(h) != k {
                    continue;
                }
                let comp = self.engine.comp(self.cod_ty, &self.cod.arrs[choice[g]], &self.cod.arrs[choice[f]])?;
                if comp != self.cod.arrs[choice[h]] {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.arrows(objs, candidates, choice, limit, out)?;
            }
            choice.pop();
            if out.len() >= limit {
                break;
            }
        }
        Ok(())
    }
}

/// The product category with flattened tuples (`n ≠ 1`).
fn product_cat(cats: &[Arc<Cat>]) -> Cat {
    let mut objs = vec![Vec::new()];
    let mut obj_ids: Vec<Vec<usize>> = vec![Vec::new()];
    for c in cats {
        let mut next = Vec::new();
        let mut next_ids = Vec::new();
        for (prefix, ids) in objs.iter().zip(&obj_ids) {
            for (i, o) in c.objs.iter().enumerate() {
                let mut p: Vec<Obj> = prefix.clone();
                p.push(o.clone());
                next.push(p);
                let mut q = ids.clone();
                q.push(i);
                next_ids.push(q);
            }
        }
        objs = next;
        obj_ids = next_ids;
    }
    let mut arrs = vec![Vec::new()];
    let mut arr_ids: Vec<Vec<usize>> = vec![Vec::new()];
    for c in cats {
        let mut next = Vec::new();
        let mut next_ids = Vec::new();
        for (prefix, ids) in arrs.iter().zip(&arr_ids) {
            for (i, a) in c.arrs.iter().enumerate() {
                let mut p: Vec<Arr> = prefix.clone();
                p.push(a.clone());
                next.push(p);
                let mut q = ids.clone();
                q.push(i);
                next_ids.push(q);
            }
        }
        arrs = next;
        arr_ids = next_ids;
    }
    let index: HashMap<Vec<usize>, usize> = obj_ids.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let src = arr_ids.iter().map(|ids| index[&ids.iter().zip(cats).map(|(&a, c)| c.src[a]).collect::<Vec<_>>()]).collect();
    let tgt = arr_ids.iter().map(|ids| index[&ids.iter().zip(cats).map(|(&a, c)| c.tgt[a]).collect::<Vec<_>>()]).collect();
    let arr_index: HashMap<Vec<usize>, usize> = arr_ids.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let ids = obj_ids.iter().map(|ids| arr_index[&ids.iter().zip(cats).map(|(&o, c)| c.ids[o]).collect::<Vec<_>>()]).collect();
    Cat::new(objs.into_iter().map(Obj::Tuple).collect(), arrs.into_iter().map(Arr::Tuple).collect(), src, tgt, ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(a: BaseCat, limits: Limits) -> Engine {
        Engine::new([(Arc::from("A"), Arc::new(a))].into_iter().collect(), limits)
    }

    #[test]
    fn finite_set_cardinalities() {
        let e = engine(BaseCat::discrete(2), Limits::FINSET);
        let a = Type::base("A");
        assert_eq!(e.cat(&Type::prod(vec![a.clone(), a.clone()])).unwrap().objs.len(), 4);
        assert_eq!(e.cat(&Type::arrow(a.clone(), a.clone())).unwrap().objs.len(), 4);
        assert_eq!(e.cat(&Type::unit()).unwrap().objs.len(), 1);
        assert_eq!(e.cat(&Type::arrow(a.clone(), a.clone())).unwrap().arrs.len(), 4);
    }

    #[test]
    fn functor_category_of_an_arrow() {
        let e = engine(BaseCat::preorder(2, |i, j| i <= j), Limits { max_objects: 16, max_arrows: 64 });
        let a = Type::base("A");
        let exp = e.cat(&Type::arrow(a.clone(), a.clone())).unwrap();
        // monotone maps on a two-element chain: const 0, const 1, identity
        assert_eq!(exp.objs.len(), 3);
        // the pointwise order on them: 3 identities and 3 strict comparisons
        assert_eq!(exp.arrs.len(), 6);
        for (i, &id) in exp.ids.iter().enumerate() {
            assert_eq!((exp.src[id], exp.tgt[id]), (i, i));
        }
    }

    #[test]
    fn caps_are_enforced() {
        let e = engine(BaseCat::discrete(3), Limits::FINCAT);
        let a = Type::base("A");
        assert!(matches!(e.cat(&Type::arrow(a.clone(), a)), Err(SemError::TooLarge { .. })));
    }

    #[test]
    fn group_homomorphisms() {
        let e = engine(BaseCat::monoid(2, |x, y| (x + y) % 2), Limits::FINCAT);
        let a = Type::base("A");
        let fs = e.search_functors(&a, &a, 100, None).unwrap();
        assert_eq!(fs.len(), 2);
    }
}
