//! Free variables, the meta-level substitution oracle, and context renamings.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use super::{Binding, Context, Rewrite, Term, Var};
use crate::signature::Type;

pub fn free_vars(t: &Term) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    fv_term(t, &mut out);
    out
}

pub fn free_vars_rewrite(r: &Rewrite) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    fv_rw(r, &mut out);
    out
}

fn remove_binders<T>(set: &mut BTreeSet<Var>, bs: &[Binding<T>]) {
    for b in bs {
        set.remove(&b.var);
    }
}

fn fv_term(t: &Term, out: &mut BTreeSet<Var>) {
    match t {
        Term::Var(x) => {
            out.insert(x.clone());
        }
        Term::Const(_, args) | Term::Pair(args) => args.iter().for_each(|a| fv_term(a, out)),
        Term::Subst(body, bs) => {
            let mut inner = free_vars(body);
            remove_binders(&mut inner, bs);
            out.extend(inner);
            bs.iter().for_each(|b| fv_term(&b.value, out));
        }
        Term::Proj { arg, .. } => fv_term(arg, out),
        Term::Lam { var, body, .. } => {
            let mut inner = free_vars(body);
            inner.remove(var);
            out.extend(inner);
        }
        Term::Eval(f, a) => {
            fv_term(f, out);
            fv_term(a, out);
        }
    }
}

fn fv_rw(r: &Rewrite, out: &mut BTreeSet<Var>) {
    match r {
        Rewrite::Id(t) | Rewrite::SubId { term: t, .. } | Rewrite::UnitProdInv(t) => fv_term(t, out),
        Rewrite::UnitExpInv { source, .. } => fv_term(source, out),
        Rewrite::Vert(a, b) => {
            fv_rw(a, out);
            fv_rw(b, out);
        }
        Rewrite::Subst(body, bs) => {
            let mut inner = free_vars_rewrite(body);
            remove_binders(&mut inner, bs);
            out.extend(inner);
            bs.iter().for_each(|b| fv_rw(&b.value, out));
        }
        Rewrite::ConstCell(_, args)
        | Rewrite::ProjCell { args, .. }
        | Rewrite::CounitProd { terms: args, .. } => args.iter().for_each(|a| fv_term(a, out)),
        Rewrite::Assoc { body, inner, outer, .. } => {
            let mut b = free_vars(body);
            remove_binders(&mut b, inner);
            let mut mid = BTreeSet::new();
            inner.iter().for_each(|x| fv_term(&x.value, &mut mid));
            mid.extend(b);
            remove_binders(&mut mid, outer);
            out.extend(mid);
            outer.iter().for_each(|x| fv_term(&x.value, out));
        }
        Rewrite::TransposeProd { source, alphas } => {
            fv_term(source, out);
            alphas.iter().for_each(|a| fv_rw(a, out));
        }
        Rewrite::CounitExp { var, body, .. } => {
            out.insert(var.clone());
            fv_term(body, out);
        }
        Rewrite::TransposeExp { var, source, alpha, .. } => {
            fv_term(source, out);
            let mut inner = free_vars_rewrite(alpha);
            inner.remove(var);
            out.extend(inner);
        }
    }
}

/// A name based on `base` that is not in `avoid`.
pub fn fresh_var(base: &str, avoid: &BTreeSet<Var>) -> Var {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '_');
    let stem = if stem.is_empty() { "v" } else { stem };
    if !avoid.iter().any(|v| &**v == base) {
        return Arc::from(base);
    }
    (0..)
        .map(|i| format!("{stem}_{i}"))
        .find(|c| !avoid.iter().any(|v| &**v == c.as_str()))
        .map(|c| Arc::from(c.as_str()))
        .expect("unbounded search")
}

/// Capture-avoiding substitution as a meta-operation.
///
/// Explicit substitution nodes inside `t` are traversed into their bindings
/// only: their bodies are closed in the binder context.
pub fn meta_substitute(t: &Term, assignment: &BTreeMap<Var, Term>) -> Term {
    match t {
        Term::Var(x) => assignment.get(x).cloned().unwrap_or_else(|| t.clone()),
        Term::Const(c, args) => Term::Const(c.clone(), args.iter().map(|a| meta_substitute(a, assignment)).collect()),
        Term::Pair(args) => Term::Pair(args.iter().map(|a| meta_substitute(a, assignment)).collect()),
        Term::Subst(body, bs) => Term::Subst(
            body.clone(),
            bs.iter().map(|b| b.map(|v| meta_substitute(v, assignment))).collect(),
        ),
        Term::Proj { k, n, arg } => Term::proj(*k, *n, meta_substitute(arg, assignment)),
        Term::Eval(f, a) => Term::eval(meta_substitute(f, assignment), meta_substitute(a, assignment)),
        Term::Lam { var, ty, body } => {
            let mut inner: BTreeMap<Var, Term> = assignment.clone();
            inner.remove(var);
            let body_fv = free_vars(body);
            inner.retain(|k, _| body_fv.contains(k));
            let range_fv: BTreeSet<Var> = inner.values().flat_map(free_vars).collect();
            if !range_fv.contains(var) {
                return Term::Lam { var: var.clone(), ty: ty.clone(), body: Box::new(meta_substitute(body, &inner)) };
            }
            let mut avoid = range_fv;
            avoid.extend(body_fv);
            avoid.extend(inner.keys().cloned());
            let z = fresh_var(var, &avoid);
            inner.insert(var.clone(), Term::Var(z.clone()));
            Term::Lam { var: z, ty: ty.clone(), body: Box::new(meta_substitute(body, &inner)) }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenameError {
    #[error("unbound free variable `{0}`")]
    Unbound(Var),
    #[error("variable `{0}` of the source context has no image")]
    Unmapped(Var),
    #[error("image `{0}` is not in the target context")]
    MissingTarget(Var),
    #[error("renaming `{var}` changes its type from {from} to {to}")]
    TypeMismatch { var: Var, from: Type, to: Type },
    #[error("contexts do not compose")]
    Incompatible,
}

/// A type-preserving map from the variables of one context to another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Renaming {
    pub source: Context,
    pub target: Context,
    pub map: BTreeMap<Var, Var>,
}

impl Renaming {
    pub fn new(source: Context, target: Context, map: BTreeMap<Var, Var>) -> Result<Renaming, RenameError> {
        for (x, a) in &source.0 {
            let y = map.get(x).ok_or_else(|| RenameError::Unmapped(x.clone()))?;
            let b = target.lookup(y).ok_or_else(|| RenameError::MissingTarget(y.clone()))?;
            if a != b {
                return Err(RenameError::TypeMismatch { var: x.clone(), from: a.clone(), to: b.clone() });
            }
        }
        Ok(Renaming { source, target, map })
    }

    /// The inclusion `gamma -> delta`, for weakening.
    pub fn inclusion(gamma: &Context, delta: &Context) -> Result<Renaming, RenameError> {
        let map = gamma.vars().map(|x| (x.clone(), x.clone())).collect();
        Renaming::new(gamma.clone(), delta.clone(), map)
    }

    pub fn identity(gamma: &Context) -> Renaming {
        Renaming::inclusion(gamma, gamma).expect("identity renaming")
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Renaming) -> Result<Renaming, RenameError> {
        if first.target != self.source {
            return Err(RenameError::Incompatible);
        }
        let map = first.map.iter().map(|(x, y)| (x.clone(), self.map[y].clone())).collect();
        Renaming::new(first.source.clone(), self.target.clone(), map)
    }

    pub fn is_bijective(&self) -> bool {
        let images: BTreeSet<&Var> = self.map.values().collect();
        self.source.len() == self.target.len() && images.len() == self.target.len()
    }

    fn image(&self, x: &Var) -> Var {
        self.map[x].clone()
    }

    fn check_scope(&self, fv: BTreeSet<Var>) -> Result<(), RenameError> {
        match fv.into_iter().find(|x| !self.source.contains(x)) {
            Some(x) => Err(RenameError::Unbound(x)),
            None => Ok(()),
        }
    }
}

/// `t{r}`: the explicit substitution of `t` along the variable images.
pub fn rename(t: &Term, r: &Renaming) -> Result<Term, RenameError> {
    r.check_scope(free_vars(t))?;
    let bindings = r
        .source
        .0
        .iter()
        .map(|(x, a)| Binding::typed(x.clone(), a.clone(), Term::Var(r.image(x))))
        .collect();
    Ok(Term::subst(t.clone(), bindings))
}

/// `τ{r}`: substitution of `τ` along identity rewrites on the images.
pub fn rename_rewrite(t: &Rewrite, r: &Renaming) -> Result<Rewrite, RenameError> {
    r.check_scope(free_vars_rewrite(t))?;
    let bindings = r
        .source
        .0
        .iter()
        .map(|(x, a)| Binding::typed(x.clone(), a.clone(), Rewrite::Id(Term::Var(r.image(x)))))
        .collect();
    Ok(Rewrite::subst(t.clone(), bindings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_eq, var};

    fn a() -> Type {
        Type::base("A")
    }

    fn set(xs: &[&str]) -> BTreeSet<Var> {
        xs.iter().map(|x| var(x)).collect()
    }

    #[test]
    fn free_variable_examples() {
        let t = Term::lam("x", a(), Term::eval(Term::var("f"), Term::var("x")));
        assert_eq!(free_vars(&t), set(&["f"]));
        let s = Term::subst(Term::konst("c", vec![Term::var("x"), Term::var("y")]), vec![Binding::new(var("x"), Term::var("u"))]);
        assert_eq!(free_vars(&s), set(&["u", "y"]));
        assert_eq!(free_vars(&Term::var("x")), set(&["x"]));
    }

    #[test]
    fn meta_substitution_examples() {
        let m: BTreeMap<Var, Term> = [(var("x"), Term::var("u"))].into();
        assert_eq!(meta_substitute(&Term::var("x"), &m), Term::var("u"));

        let m: BTreeMap<Var, Term> = [(var("y"), Term::var("x"))].into();
        let out = meta_substitute(&Term::lam("x", a(), Term::var("y")), &m);
        match &out {
            Term::Lam { var: z, body, .. } => {
                assert_ne!(&**z, "x");
                assert_eq!(**body, Term::var("x"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(alpha_eq(&out, &Term::lam("z", a(), Term::var("x"))));

        let m: BTreeMap<Var, Term> = [(var("x"), Term::var("u")), (var("y"), Term::var("v"))].into();
        let c = Term::konst("c", vec![Term::var("x"), Term::var("y")]);
        assert_eq!(meta_substitute(&c, &m), Term::konst("c", vec![Term::var("u"), Term::var("v")]));
    }

    #[test]
    fn renaming_examples() {
        let src = Context::single("x", a());
        let tgt = Context::single("y", a());
        let r = Renaming::new(src.clone(), tgt, [(var("x"), var("y"))].into()).unwrap();
        let out = rename(&Term::var("x"), &r).unwrap();
        assert_eq!(out, Term::subst(Term::var("x"), vec![Binding::typed(var("x"), a(), Term::var("y"))]));
        assert_eq!(rename(&Term::var("z"), &r), Err(RenameError::Unbound(var("z"))));

        let empty = Renaming::identity(&Context::empty());
        let closed = Term::lam("x", a(), Term::var("x"));
        assert_eq!(rename(&closed, &empty).unwrap(), Term::subst(closed, vec![]));

        let wk = Renaming::inclusion(&src, &src.extend(var("w"), a())).unwrap();
        assert!(!wk.is_bijective());
    }

    #[test]
    fn renaming_rejects_type_change() {
        let r = Renaming::new(Context::single("x", a()), Context::single("y", Type::base("B")), [(var("x"), var("y"))].into());
        assert!(matches!(r, Err(RenameError::TypeMismatch { .. })));
    }

    #[test]
    fn fresh_names() {
        assert_eq!(&*fresh_var("x", &set(&["y"])), "x");
        assert_eq!(&*fresh_var("x", &set(&["x"])), "x_0");
        assert_eq!(&*fresh_var("x", &set(&["x", "x_0"])), "x_1");
    }
}
