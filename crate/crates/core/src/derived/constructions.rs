//! Derived rewrites built from the primitive transposes.

use thiserror::Error;

use crate::signature::Type;
use crate::syntax::{fresh_var, Binding, Context, Rewrite, Term, Var};
use crate::typing::{Checker, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("expected a product type, found {0}")]
    NotProduct(Type),
    #[error("expected an arrow type, found {0}")]
    NotArrow(Type),
    #[error("expected a term of type {expected}, found {found}")]
    Mismatch { expected: Type, found: Type },
    #[error("the context is empty")]
    EmptyContext,
    #[error("expected a target of the form {0}")]
    Shape(&'static str),
}

pub type Result<T> = std::result::Result<T, ConstructError>;

/// `⟨τ1, ..., τn⟩ := transx[pair(t)](τ1 | counitx[1](t), ..., τn | counitx[n](t))`.
pub fn pair_rewrites(c: &Checker, ctx: &Context, taus: &[Rewrite]) -> Result<Rewrite> {
    let mut sources = Vec::with_capacity(taus.len());
    for tau in taus {
        sources.push(c.check_rewrite(ctx, tau)?.source);
    }
    let alphas = taus
        .iter()
        .enumerate()
        .map(|(i, tau)| Rewrite::vert(tau.clone(), Rewrite::CounitProd { k: i + 1, terms: sources.clone(), inv: false }))
        .collect();
    Ok(Rewrite::TransposeProd { source: Term::Pair(sources), alphas })
}

/// `η×_t := transx[t](id(proj[1]{t}), ..., id(proj[n]{t}))`.
pub fn eta_times(c: &Checker, ctx: &Context, t: &Term) -> Result<Rewrite> {
    let ty = c.check_term(ctx, t)?;
    let n = ty.as_prod().ok_or_else(|| ConstructError::NotProduct(ty.clone()))?.len();
    Ok(eta_times_typed(t, &ty, n))
}

pub(crate) fn eta_times_typed(t: &Term, ty: &Type, n: usize) -> Rewrite {
    Rewrite::TransposeProd {
        source: t.clone(),
        alphas: (1..=n).map(|i| Rewrite::Id(Term::proj_sub(i, ty, t.clone()))).collect(),
    }
}

/// `λx.τ := transe[lam x.t](x. τ | counite(x. t))` for `τ` in `ctx = Γ, x : A`.
pub fn lam_rewrite(c: &Checker, ctx: &Context, tau: &Rewrite) -> Result<Rewrite> {
    let (_, x, a) = ctx.split_last().ok_or(ConstructError::EmptyContext)?;
    let rt = c.check_rewrite(ctx, tau)?;
    Ok(lam_rewrite_typed(x, a, tau, &rt.source))
}

pub(crate) fn lam_rewrite_typed(x: &Var, a: &Type, tau: &Rewrite, t: &Term) -> Rewrite {
    let lam = Term::Lam { var: x.clone(), ty: a.clone(), body: Box::new(t.clone()) };
    Rewrite::TransposeExp {
        var: x.clone(),
        ty: a.clone(),
        source: lam,
        alpha: Box::new(Rewrite::vert(tau.clone(), Rewrite::CounitExp { var: x.clone(), body: t.clone(), inv: false })),
    }
}

/// A binder name for an extension of `ctx` that avoids every variable of it.
pub fn fresh_for(ctx: &Context, base: &str) -> Var {
    fresh_var(base, &ctx.var_set())
}

/// `η→_u := transe[u](x. id(eval{↑u↑x, x}))`, with `x` fresh for `ctx`.
pub fn eta_exp(c: &Checker, ctx: &Context, u: &Term) -> Result<Rewrite> {
    let ty = c.check_term(ctx, u)?;
    let x = fresh_for(ctx, "x");
    eta_exp_with(ctx, u, &ty, &x)
}

pub fn eta_exp_with(ctx: &Context, u: &Term, ty: &Type, x: &Var) -> Result<Rewrite> {
    let (a, _) = ty.as_arrow().ok_or_else(|| ConstructError::NotArrow(ty.clone()))?;
    Ok(Rewrite::TransposeExp {
        var: x.clone(),
        ty: a.clone(),
        source: u.clone(),
        alpha: Box::new(Rewrite::Id(Term::eval_weakened(ty, u.clone(), ctx, x))),
    })
}

/// Derived application `eval{t, u}`.
pub fn apply_term(c: &Checker, ctx: &Context, t: &Term, u: &Term) -> Result<Term> {
    let ty = c.check_term(ctx, t)?;
    let (a, _) = ty.as_arrow().ok_or_else(|| ConstructError::NotArrow(ty.clone()))?;
    let uty = c.check_term(ctx, u)?;
    if uty != *a {
        return Err(ConstructError::Mismatch { expected: a.clone(), found: uty });
    }
    Ok(Term::eval_sub(&ty, t.clone(), u.clone()))
}

/// The general β-rewrite and its structural part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralBeta {
    /// `ε̂ = counite(x. t){id_Γ, x -> u} | τ0`.
    pub rewrite: Rewrite,
    /// `τ0 : eval{lam x.t, u} => eval{↑(lam x.t)↑x, x}{id_Γ, x -> u}`.
    pub structural: Rewrite,
    /// `eval{lam x.t, u}`.
    pub source: Term,
    /// `t{id_Γ, x -> u}`.
    pub target: Term,
}

/// `ε̂(x.t, u) : eval{lam x.t, u} => t{id_Γ, x -> u}` for `Γ, x : A ⊢ t` and `Γ ⊢ u : A`.
///
/// `τ0` is one inverse associator on the `eval` substitution preceded by
/// pointwise adjustments of its two bindings: the function argument is
/// moved under the weakening by `subid`, inverse projections and an inverse
/// associator, and the value argument by an inverse projection.
pub fn general_beta(c: &Checker, ctx: &Context, t: &Term, u: &Term) -> Result<GeneralBeta> {
    let (gamma, x, a) = ctx.split_last().ok_or(ConstructError::EmptyContext)?;
    let b = c.check_term(ctx, t)?;
    let uty = c.check_term(&gamma, u)?;
    if uty != *a {
        return Err(ConstructError::Mismatch { expected: a.clone(), found: uty });
    }
    let arrow = Type::arrow(a.clone(), b);
    let lam = Term::Lam { var: x.clone(), ty: a.clone(), body: Box::new(t.clone()) };
    let n = gamma.len();

    // σ = (id_Γ, x -> u) over the binder context Γ, x : A.
    let sigma: Vec<Binding<Term>> = gamma
        .0
        .iter()
        .map(|(y, ty)| Binding::typed(y.clone(), ty.clone(), Term::Var(y.clone())))
        .chain(std::iter::once(Binding::typed(x.clone(), a.clone(), u.clone())))
        .collect();
    let sigma_args: Vec<Term> = sigma.iter().map(|b| b.value.clone()).collect();
    let proj_inv = |k: usize| Rewrite::ProjCell { k, args: sigma_args.clone(), inv: true };

    let weak_ids: Vec<Binding<Term>> = gamma.identity_bindings();
    let rho_f = Rewrite::chain(vec![
        Rewrite::SubId { term: lam.clone(), inv: false },
        Rewrite::subst(
            Rewrite::Id(lam.clone()),
            gamma
                .0
                .iter()
                .enumerate()
                .map(|(i, (y, ty))| Binding::typed(y.clone(), ty.clone(), proj_inv(i + 1)))
                .collect(),
        ),
        Rewrite::Assoc { body: lam.clone(), inner: weak_ids.clone(), outer: sigma.clone(), inv: true },
    ])
    .expect("non-empty chain");
    let rho_a = proj_inv(n + 1);

    let (f, av) = crate::syntax::eval_binders();
    let eval_body = Term::eval(Term::Var(f.clone()), Term::Var(av.clone()));
    let adjust = Rewrite::subst(
        Rewrite::Id(eval_body.clone()),
        vec![Binding::typed(f.clone(), arrow.clone(), rho_f), Binding::typed(av.clone(), a.clone(), rho_a)],
    );
    let inner = vec![
        Binding::typed(f, arrow.clone(), Term::weaken(lam.clone(), &gamma)),
        Binding::typed(av, a.clone(), Term::Var(x.clone())),
    ];
    let reassoc = Rewrite::Assoc { body: eval_body, inner, outer: sigma.clone(), inv: true };
    let structural = Rewrite::vert(reassoc, adjust);

    let counit = Rewrite::subst(
        Rewrite::CounitExp { var: x.clone(), body: t.clone(), inv: false },
        sigma.iter().map(|b| b.map(|v| Rewrite::Id(v.clone()))).collect(),
    );
    let rewrite = Rewrite::vert(counit, structural.clone());
    Ok(GeneralBeta {
        rewrite,
        structural,
        source: Term::eval_sub(&arrow, lam, u.clone()),
        target: Term::subst(t.clone(), sigma),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{Signature, Tier};
    use crate::syntax::{alpha_eq, var};

    fn a() -> Type {
        Type::base("A")
    }

    fn sig() -> Signature {
        Signature::build(&["A"], vec![], vec![], Tier::Closed).unwrap()
    }

    #[test]
    fn pair_of_nothing_targets_empty_pair() {
        let s = sig();
        let c = Checker::new(&s, Tier::Closed);
        let r = pair_rewrites(&c, &Context::empty(), &[]).unwrap();
        let rt = c.check_rewrite(&Context::empty(), &r).unwrap();
        assert_eq!(rt.target, Term::Pair(vec![]));
        assert_eq!(rt.ty, Type::unit());
    }

    #[test]
    fn eta_times_target() {
        let s = sig();
        let c = Checker::new(&s, Tier::Closed);
        let ctx = Context::new(vec![(var("x"), a()), (var("y"), a())]);
        let t = Term::Pair(vec![Term::var("x"), Term::var("y")]);
        let rt = c.check_rewrite(&ctx, &eta_times(&c, &ctx, &t).unwrap()).unwrap();
        assert_eq!(rt.target.to_string(), "pair(proj[1/2]{pair(x, y)}, proj[2/2]{pair(x, y)})");
        let unary = Context::single("p", Type::prod(vec![a()]));
        assert!(c.check_rewrite(&unary, &eta_times(&c, &unary, &Term::var("p")).unwrap()).is_ok());
    }

    #[test]
    fn lam_rewrite_endpoints() {
        let s = sig();
        let c = Checker::new(&s, Tier::Closed);
        let ctx = Context::new(vec![(var("y"), a()), (var("x"), a())]);
        let r = lam_rewrite(&c, &ctx, &Rewrite::Id(Term::var("y"))).unwrap();
        let rt = c.check_rewrite(&Context::single("y", a()), &r).unwrap();
        assert!(alpha_eq(&rt.source, &Term::lam("x", a(), Term::var("y"))));
        assert_eq!(rt.source, rt.target);
        assert_eq!(rt.ty, Type::arrow(a(), a()));
    }

    #[test]
    fn eta_exp_target() {
        let s = sig();
        let c = Checker::new(&s, Tier::Closed);
        let ctx = Context::single("g", Type::arrow(a(), a()));
        let rt = c.check_rewrite(&ctx, &eta_exp(&c, &ctx, &Term::var("g")).unwrap()).unwrap();
        assert_eq!(rt.target.to_string(), "lam x : A. eval{g{g : (A -> A) -> g}, x}");
    }

    #[test]
    fn application() {
        let s = sig();
        let c = Checker::new(&s, Tier::Closed);
        let ctx = Context::single("y", a());
        let id = Term::lam("x", a(), Term::var("x"));
        let t = apply_term(&c, &ctx, &id, &Term::var("y")).unwrap();
        assert_eq!(t.to_string(), "eval{lam x : A. x, y}");
        assert_eq!(c.check_term(&ctx, &t), Ok(a()));
        assert!(matches!(apply_term(&c, &ctx, &Term::var("y"), &Term::var("y")), Err(ConstructError::NotArrow(_))));
    }

    #[test]
    fn general_beta_endpoints() {
        let s = sig();
        let c = Checker::new(&s, Tier::Closed);
        for gamma in [Context::empty(), Context::new(vec![(var("y"), a()), (var("z"), a())])] {
            let ctx = gamma.extend(var("x"), a());
            let u = gamma.0.first().map_or(Term::lam("w", a(), Term::var("w")), |(y, _)| Term::Var(y.clone()));
            let (ctx, u) = if gamma.is_empty() {
                let arr = Type::arrow(a(), a());
                (Context::single("x", arr), u)
            } else {
                (ctx, u)
            };
            let beta = general_beta(&c, &ctx, &Term::var("x"), &u).unwrap();
            let (g, _, _) = ctx.split_last().unwrap();
            let rt = c.check_rewrite(&g, &beta.rewrite).unwrap();
            assert!(alpha_eq(&rt.source, &beta.source));
            assert!(alpha_eq(&rt.target, &beta.target));
        }
    }
}
