//! Terms and rewrites with explicit substitution.
//!
//! Variables are named at the surface; every binder (substitution, `lam`,
//! exponential transpose) is handled up to α-equivalence by [`alpha`].

pub mod alpha;
pub mod print;
pub mod subst;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::signature::{Tier, Type};

pub use alpha::{alpha_eq, alpha_eq_rewrite};
pub use subst::{free_vars, free_vars_rewrite, fresh_var, meta_substitute, rename, rename_rewrite, Renaming, RenameError};

pub type Var = Arc<str>;

pub fn var(name: &str) -> Var {
    Arc::from(name)
}

/// Binder of the `i`-th (1-based) position in structural cells whose binder
/// names are not user-supplied.
pub fn positional_binder(i: usize) -> Var {
    Arc::from(format!("x{i}").as_str())
}

/// Binder used for the product argument of `proj[k/n]{-}`.
pub fn proj_binder() -> Var {
    var("p")
}

/// Binders used for the function and argument of `eval{-, -}`.
pub fn eval_binders() -> (Var, Var) {
    (var("f"), var("a"))
}

/// A variable-and-type list with distinct names.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Context(pub Vec<(Var, Type)>);

impl Context {
    pub fn empty() -> Context {
        Context(Vec::new())
    }

    pub fn new(entries: Vec<(Var, Type)>) -> Context {
        Context(entries)
    }

    pub fn single(x: &str, ty: Type) -> Context {
        Context(vec![(var(x), ty)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lookup(&self, x: &str) -> Option<&Type> {
        self.0.iter().rev().find(|(y, _)| &**y == x).map(|(_, t)| t)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.0.iter().any(|(y, _)| &**y == x)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.iter().map(|(x, _)| x)
    }

    pub fn types(&self) -> impl Iterator<Item = &Type> {
        self.0.iter().map(|(_, t)| t)
    }

    pub fn var_set(&self) -> BTreeSet<Var> {
        self.vars().cloned().collect()
    }

    pub fn extend(&self, x: Var, ty: Type) -> Context {
        let mut out = self.clone();
        out.0.push((x, ty));
        out
    }

    /// Splits `Γ, x:A` into `Γ` and `(x, A)`.
    pub fn split_last(&self) -> Option<(Context, &Var, &Type)> {
        let (last, init) = self.0.split_last()?;
        Some((Context(init.to_vec()), &last.0, &last.1))
    }

    pub fn has_duplicates(&self) -> Option<&Var> {
        let mut seen = BTreeSet::new();
        self.vars().find(|x| !seen.insert((*x).clone()))
    }

    /// The identity substitution `x_i -> x_i` over this context.
    pub fn identity_bindings(&self) -> Vec<Binding<Term>> {
        self.0
            .iter()
            .map(|(x, t)| Binding::typed(x.clone(), t.clone(), Term::Var(x.clone())))
            .collect()
    }

    /// Whether the context is admissible at `tier` (unary at tier b).
    pub fn fits_tier(&self, tier: Tier) -> bool {
        tier != Tier::Bicat || self.len() == 1
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} : {t}")?;
        }
        Ok(())
    }
}

/// One entry `x : A -> value` of an explicit substitution.
///
/// The annotation is optional: the bound type is always determined by the
/// value's type, and is checked against the annotation when present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding<T> {
    pub var: Var,
    pub ty: Option<Type>,
    pub value: T,
}

impl<T> Binding<T> {
    pub fn new(var: Var, value: T) -> Self {
        Binding { var, ty: None, value }
    }

    pub fn typed(var: Var, ty: Type, value: T) -> Self {
        Binding { var, ty: Some(ty), value }
    }

    pub fn map<U>(&self, f: impl FnOnce(&T) -> U) -> Binding<U> {
        Binding { var: self.var.clone(), ty: self.ty.clone(), value: f(&self.value) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(Var),
    /// A constant applied to arguments. Applied to exactly the variables of
    /// its context this is the basic constant term `c(x1, ..., xn)`.
    Const(Arc<str>, Vec<Term>),
    /// Explicit substitution `t{x1 -> u1, ..., xn -> un}`; the body is typed
    /// in the context formed by the binders.
    Subst(Box<Term>, Vec<Binding<Term>>),
    Pair(Vec<Term>),
    /// `proj[k/n](t)`, with `1 <= k <= n`.
    Proj { k: usize, n: usize, arg: Box<Term> },
    Lam { var: Var, ty: Type, body: Box<Term> },
    /// `eval(t, u)`.
    Eval(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(var(x))
    }

    pub fn konst(name: &str, args: Vec<Term>) -> Term {
        Term::Const(Arc::from(name), args)
    }

    pub fn subst(body: Term, bindings: Vec<Binding<Term>>) -> Term {
        Term::Subst(Box::new(body), bindings)
    }

    pub fn lam(x: &str, ty: Type, body: Term) -> Term {
        Term::Lam { var: var(x), ty, body: Box::new(body) }
    }

    pub fn proj(k: usize, n: usize, arg: Term) -> Term {
        Term::Proj { k, n, arg: Box::new(arg) }
    }

    pub fn eval(f: Term, a: Term) -> Term {
        Term::Eval(Box::new(f), Box::new(a))
    }

    /// `c{u1, ..., un}`: the constant in its own context, substituted.
    pub fn const_sub(name: &str, arg_types: &[Type], args: Vec<Term>) -> Term {
        let binders: Vec<Var> = (1..=args.len()).map(positional_binder).collect();
        let body = Term::Const(Arc::from(name), binders.iter().cloned().map(Term::Var).collect());
        let bindings = binders
            .into_iter()
            .zip(arg_types.iter().cloned())
            .zip(args)
            .map(|((x, ty), u)| Binding::typed(x, ty, u))
            .collect();
        Term::subst(body, bindings)
    }

    /// `proj[k/n]{t}` for `t` of product type `prod_ty`.
    pub fn proj_sub(k: usize, prod_ty: &Type, t: Term) -> Term {
        let n = prod_ty.as_prod().map_or(0, <[Type]>::len);
        let p = proj_binder();
        Term::subst(Term::proj(k, n, Term::Var(p.clone())), vec![Binding::typed(p, prod_ty.clone(), t)])
    }

    /// `eval{t, u}` for `t` of arrow type `arrow_ty`.
    pub fn eval_sub(arrow_ty: &Type, t: Term, u: Term) -> Term {
        let (f, a) = eval_binders();
        let dom = arrow_ty.as_arrow().map(|(d, _)| d.clone());
        Term::subst(
            Term::eval(Term::Var(f.clone()), Term::Var(a.clone())),
            vec![
                Binding::typed(f, arrow_ty.clone(), t),
                Binding { var: a, ty: dom, value: u },
            ],
        )
    }

    /// Weakening `t{inc}` of a term typed in `gamma` into any extension of `gamma`.
    pub fn weaken(t: Term, gamma: &Context) -> Term {
        Term::subst(t, gamma.identity_bindings())
    }

    /// `eval{↑u↑x, x}` in context `gamma, x : A` for `u : A -> B` in `gamma`.
    pub fn eval_weakened(arrow_ty: &Type, u: Term, gamma: &Context, x: &Var) -> Term {
        Term::eval_sub(arrow_ty, Term::weaken(u, gamma), Term::Var(x.clone()))
    }

    pub fn as_subst(&self) -> Option<(&Term, &[Binding<Term>])> {
        match self {
            Term::Subst(b, bs) => Some((b, bs)),
            _ => None,
        }
    }

    /// Number of constructors.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Const(_, args) | Term::Pair(args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Term::Subst(b, bs) => 1 + b.size() + bs.iter().map(|b| b.value.size()).sum::<usize>(),
            Term::Proj { arg, .. } => 1 + arg.size(),
            Term::Lam { body, .. } => 1 + body.size(),
            Term::Eval(f, a) => 1 + f.size() + a.size(),
        }
    }
}

/// Rewrites (2-cells between terms).
///
/// Structural cells carry an `inv` flag selecting the explicit inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rewrite {
    Id(Term),
    /// `later | first`.
    Vert(Box<Rewrite>, Box<Rewrite>),
    /// `τ{x1 -> σ1, ..., xn -> σn}`; the body is typed in the binder context.
    Subst(Box<Rewrite>, Vec<Binding<Rewrite>>),
    /// A constant surface applied to arguments.
    ConstCell(Arc<str>, Vec<Term>),
    /// `assoc : t{y -> v}{x -> u} => t{y -> v{x -> u}}`.
    Assoc { body: Term, inner: Vec<Binding<Term>>, outer: Vec<Binding<Term>>, inv: bool },
    /// `subid : t => t{x_i -> x_i}` over the ambient context.
    SubId { term: Term, inv: bool },
    /// `projc[k](u1..un) : x_k{x_i -> u_i} => u_k`.
    ProjCell { k: usize, args: Vec<Term>, inv: bool },
    /// Product counit `counitx[k](t1..tn) : proj[k/n]{pair(t)} => t_k`.
    CounitProd { k: usize, terms: Vec<Term>, inv: bool },
    /// Product transpose `transx[u](α1..αn) : u => pair(t1..tn)`.
    TransposeProd { source: Term, alphas: Vec<Rewrite> },
    /// Inverse of the product unit: `pair(proj[i]{t}) => t`.
    UnitProdInv(Term),
    /// Exponential counit `counite(x. t) : eval{↑(lam x.t)↑x, x} => t`, in a
    /// context ending with `x`.
    CounitExp { var: Var, body: Term, inv: bool },
    /// Exponential transpose `transe[u](x : A. α) : u => lam x:A. t`; binds `x` in `α`.
    TransposeExp { var: Var, ty: Type, source: Term, alpha: Box<Rewrite> },
    /// Inverse of the exponential unit: `lam x. eval{↑u↑x, x} => u`.
    UnitExpInv { var: Var, source: Term },
}

impl Rewrite {
    pub fn id(t: Term) -> Rewrite {
        Rewrite::Id(t)
    }

    pub fn vert(later: Rewrite, first: Rewrite) -> Rewrite {
        Rewrite::Vert(Box::new(later), Box::new(first))
    }

    pub fn subst(body: Rewrite, bindings: Vec<Binding<Rewrite>>) -> Rewrite {
        Rewrite::Subst(Box::new(body), bindings)
    }

    /// Vertical composite of a non-empty chain given in diagrammatic order
    /// (first rewrite first), bracketed to the left: `(r3 | r2) | r1`.
    pub fn chain(first_to_last: Vec<Rewrite>) -> Option<Rewrite> {
        let mut it = first_to_last.into_iter();
        let mut acc = it.next()?;
        for r in it {
            acc = Rewrite::vert(r, acc);
        }
        Some(acc)
    }

    /// `proj[k/n]{γ}`: the identity on `proj[k/n](p)` substituted with `γ`.
    pub fn proj_sub(k: usize, prod_ty: &Type, gamma: Rewrite) -> Rewrite {
        let n = prod_ty.as_prod().map_or(0, <[Type]>::len);
        let p = proj_binder();
        Rewrite::subst(
            Rewrite::Id(Term::proj(k, n, Term::Var(p.clone()))),
            vec![Binding::typed(p, prod_ty.clone(), gamma)],
        )
    }

    /// `eval{↑γ↑x, x}` for `γ` between terms of type `arrow_ty` in `gamma`.
    pub fn eval_weakened(arrow_ty: &Type, gamma_rw: Rewrite, gamma: &Context, x: &Var) -> Rewrite {
        let (f, a) = eval_binders();
        let dom = arrow_ty.as_arrow().map(|(d, _)| d.clone());
        let weakened = Rewrite::subst(
            gamma_rw,
            gamma
                .0
                .iter()
                .map(|(y, t)| Binding::typed(y.clone(), t.clone(), Rewrite::Id(Term::Var(y.clone()))))
                .collect(),
        );
        Rewrite::subst(
            Rewrite::Id(Term::eval(Term::Var(f.clone()), Term::Var(a.clone()))),
            vec![
                Binding::typed(f, arrow_ty.clone(), weakened),
                Binding { var: a, ty: dom, value: Rewrite::Id(Term::Var(x.clone())) },
            ],
        )
    }

    /// Whether this rewrite uses an explicit inverse of a unit or counit.
    pub fn uses_universal_inverse(&self) -> bool {
        match self {
            Rewrite::CounitProd { inv: true, .. }
            | Rewrite::CounitExp { inv: true, .. }
            | Rewrite::UnitProdInv(_)
            | Rewrite::UnitExpInv { .. } => true,
            Rewrite::Vert(a, b) => a.uses_universal_inverse() || b.uses_universal_inverse(),
            Rewrite::Subst(b, bs) => b.uses_universal_inverse() || bs.iter().any(|b| b.value.uses_universal_inverse()),
            Rewrite::TransposeProd { alphas, .. } => alphas.iter().any(Rewrite::uses_universal_inverse),
            Rewrite::TransposeExp { alpha, .. } => alpha.uses_universal_inverse(),
            _ => false,
        }
    }

    /// Number of constructors, counting embedded terms as one.
    pub fn size(&self) -> usize {
        match self {
            Rewrite::Vert(a, b) => 1 + a.size() + b.size(),
            Rewrite::Subst(b, bs) => 1 + b.size() + bs.iter().map(|b| b.value.size()).sum::<usize>(),
            Rewrite::TransposeProd { alphas, .. } => 1 + alphas.iter().map(Rewrite::size).sum::<usize>(),
            Rewrite::TransposeExp { alpha, .. } => 1 + alpha.size(),
            _ => 1,
        }
    }
}
