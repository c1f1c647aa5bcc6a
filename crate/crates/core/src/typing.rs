//! The judgements `Γ ⊢ t : A` and `Γ ⊢ τ : t ⇒ t' : A` for all tiers.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::signature::{Signature, SignatureError, Tier, Type};
use crate::syntax::{alpha_eq, positional_binder, Binding, Context, Rewrite, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    Unbound(Var),
    #[error("unknown constant `{0}`")]
    UnknownConst(String),
    #[error("unknown surface `{0}`")]
    UnknownSurface(String),
    #[error("`{name}` expects {expected} argument(s), found {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("argument {index} of `{name}`: expected {expected}, found {found}")]
    ArgType { name: String, index: usize, expected: Type, found: Type },
    #[error("{construct} is not available at tier {tier}")]
    Tier { construct: &'static str, tier: Tier },
    #[error("context of length {0} at tier b (must be unary)")]
    NonUnary(usize),
    #[error("expected a product type, found {0}")]
    NotProduct(Type),
    #[error("expected an arrow type, found {0}")]
    NotArrow(Type),
    #[error("projection index {k} out of range 1..={n}")]
    ProjRange { k: usize, n: usize },
    #[error("binder `{var}` annotated {annotated} but bound to a term of type {found}")]
    Annotation { var: Var, annotated: Type, found: Type },
    #[error("binder `{0}` occurs twice")]
    DuplicateBinder(Var),
    #[error("binder `{0}` clashes with a context variable")]
    BinderClash(Var),
    #[error("endpoint mismatch: expected {expected}, found {found}")]
    EndpointMismatch { expected: Term, found: Term },
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: Type, found: Type },
    #[error("`{0}` must be the last variable of the context")]
    NotLast(Var),
    #[error("{0} is excluded in lax mode")]
    Lax(&'static str),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

pub type Result<T> = std::result::Result<T, TypeError>;

/// Endpoints and type of a rewrite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteType {
    pub source: Term,
    pub target: Term,
    pub ty: Type,
}

#[derive(Debug, Clone, Copy)]
pub struct Checker<'a> {
    pub sig: &'a Signature,
    pub tier: Tier,
    pub lax: bool,
}

/// Checks the context, then the term.
pub fn check_term(sig: &Signature, tier: Tier, ctx: &Context, t: &Term) -> Result<Type> {
    let c = Checker::new(sig, tier);
    c.check_context(ctx)?;
    c.check_term(ctx, t)
}

/// Checks the context, then the rewrite.
pub fn check_rewrite(sig: &Signature, tier: Tier, ctx: &Context, r: &Rewrite) -> Result<RewriteType> {
    let c = Checker::new(sig, tier);
    c.check_context(ctx)?;
    c.check_rewrite(ctx, r)
}

fn distinct_binders<T>(bs: &[Binding<T>]) -> Result<()> {
    let mut seen = BTreeSet::new();
    match bs.iter().find(|b| !seen.insert(b.var.clone())) {
        Some(b) => Err(TypeError::DuplicateBinder(b.var.clone())),
        None => Ok(()),
    }
}

impl<'a> Checker<'a> {
    pub fn new(sig: &'a Signature, tier: Tier) -> Checker<'a> {
        Checker { sig, tier, lax: false }
    }

    pub fn lax(mut self, lax: bool) -> Self {
        self.lax = lax;
        self
    }

    fn need_products(&self, construct: &'static str) -> Result<()> {
        if self.tier.has_products() {
            Ok(())
        } else {
            Err(TypeError::Tier { construct, tier: self.tier })
        }
    }

    fn need_arrows(&self, construct: &'static str) -> Result<()> {
        if self.tier.has_arrows() {
            Ok(())
        } else {
            Err(TypeError::Tier { construct, tier: self.tier })
        }
    }

    fn need_pseudo(&self, construct: &'static str) -> Result<()> {
        if self.lax {
            Err(TypeError::Lax(construct))
        } else {
            Ok(())
        }
    }

    fn unary(&self, n: usize) -> Result<()> {
        if self.tier == Tier::Bicat && n != 1 {
            Err(TypeError::NonUnary(n))
        } else {
            Ok(())
        }
    }

    pub fn check_type(&self, ty: &Type) -> Result<()> {
        Ok(self.sig.check_type("annotation", ty)?)
    }

    /// Distinct names, known sorts, tier-admissible types and length.
    pub fn check_context(&self, ctx: &Context) -> Result<()> {
        if let Some(x) = ctx.has_duplicates() {
            return Err(TypeError::DuplicateBinder(x.clone()));
        }
        self.unary(ctx.len())?;
        ctx.types().try_for_each(|t| self.check_type(t))
    }

    fn fresh_binder(&self, ctx: &Context, x: &Var) -> Result<()> {
        if ctx.contains(x) {
            Err(TypeError::BinderClash(x.clone()))
        } else {
            Ok(())
        }
    }

    /// Types of the bound values, checked against annotations.
    fn binding_context<T>(&self, bs: &[Binding<T>], tys: Vec<Type>) -> Result<Context> {
        distinct_binders(bs)?;
        self.unary(bs.len())?;
        let mut out = Vec::with_capacity(bs.len());
        for (b, ty) in bs.iter().zip(tys) {
            if let Some(ann) = &b.ty {
                self.check_type(ann)?;
                if *ann != ty {
                    return Err(TypeError::Annotation { var: b.var.clone(), annotated: ann.clone(), found: ty });
                }
            }
            out.push((b.var.clone(), ty));
        }
        Ok(Context(out))
    }

    fn term_types(&self, ctx: &Context, ts: &[Term]) -> Result<Vec<Type>> {
        ts.iter().map(|t| self.check_term(ctx, t)).collect()
    }

    pub fn check_term(&self, ctx: &Context, t: &Term) -> Result<Type> {
        match t {
            Term::Var(x) => ctx.lookup(x).cloned().ok_or_else(|| TypeError::Unbound(x.clone())),
            Term::Const(c, args) => {
                let edge = self.sig.edge(c).ok_or_else(|| TypeError::UnknownConst(c.to_string()))?;
                let tys = self.term_types(ctx, args)?;
                self.match_args(c, &edge.source, &tys)?;
                Ok(edge.target.clone())
            }
            Term::Subst(body, bs) => {
                let tys = bs.iter().map(|b| self.check_term(ctx, &b.value)).collect::<Result<Vec<_>>>()?;
                let inner = self.binding_context(bs, tys)?;
                self.check_term(&inner, body)
            }
            Term::Pair(args) => {
                self.need_products("pairing")?;
                Ok(Type::prod(self.term_types(ctx, args)?))
            }
            Term::Proj { k, n, arg } => {
                self.need_products("projection")?;
                if *k < 1 || k > n {
                    return Err(TypeError::ProjRange { k: *k, n: *n });
                }
                let ty = self.check_term(ctx, arg)?;
                match ty.as_prod() {
                    Some(cs) if cs.len() == *n => Ok(cs[k - 1].clone()),
                    _ => Err(TypeError::NotProduct(ty)),
                }
            }
            Term::Lam { var, ty, body } => {
                self.need_arrows("lambda")?;
                self.check_type(ty)?;
                self.fresh_binder(ctx, var)?;
                let cod = self.check_term(&ctx.extend(var.clone(), ty.clone()), body)?;
                Ok(Type::arrow(ty.clone(), cod))
            }
            Term::Eval(f, a) => {
                self.need_arrows("evaluation")?;
                let fty = self.check_term(ctx, f)?;
                let aty = self.check_term(ctx, a)?;
                let (dom, cod) = fty.as_arrow().ok_or_else(|| TypeError::NotArrow(fty.clone()))?;
                if *dom != aty {
                    return Err(TypeError::TypeMismatch { expected: dom.clone(), found: aty });
                }
                Ok(cod.clone())
            }
        }
    }

    fn match_args(&self, name: &str, expected: &[Type], found: &[Type]) -> Result<()> {
        if expected.len() != found.len() {
            return Err(TypeError::Arity { name: name.to_string(), expected: expected.len(), found: found.len() });
        }
        for (i, (e, f)) in expected.iter().zip(found).enumerate() {
            if e != f {
                return Err(TypeError::ArgType { name: name.to_string(), index: i + 1, expected: e.clone(), found: f.clone() });
            }
        }
        Ok(())
    }

    fn same_type(expected: &Type, found: &Type) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(TypeError::TypeMismatch { expected: expected.clone(), found: found.clone() })
        }
    }

    fn same_term(expected: &Term, found: &Term) -> Result<()> {
        if alpha_eq(expected, found) {
            Ok(())
        } else {
            Err(TypeError::EndpointMismatch { expected: expected.clone(), found: found.clone() })
        }
    }

    pub fn check_rewrite(&self, ctx: &Context, r: &Rewrite) -> Result<RewriteType> {
        let out = |source: Term, target: Term, ty: Type| RewriteType { source, target, ty };
        let flip = |inv: bool, rt: RewriteType| if inv { out(rt.target, rt.source, rt.ty) } else { rt };
        match r {
            Rewrite::Id(t) => {
                let ty = self.check_term(ctx, t)?;
                Ok(out(t.clone(), t.clone(), ty))
            }
            Rewrite::Vert(later, first) => {
                let a = self.check_rewrite(ctx, first)?;
                let b = self.check_rewrite(ctx, later)?;
                Self::same_term(&a.target, &b.source)?;
                Self::same_type(&a.ty, &b.ty)?;
                Ok(out(a.source, b.target, a.ty))
            }
            Rewrite::Subst(body, bs) => {
                let mut rts = Vec::with_capacity(bs.len());
                for b in bs {
                    rts.push(self.check_rewrite(ctx, &b.value)?);
                }
                let inner = self.binding_context(bs, rts.iter().map(|r| r.ty.clone()).collect())?;
                let rb = self.check_rewrite(&inner, body)?;
                let side = |pick: fn(&RewriteType) -> &Term| -> Vec<Binding<Term>> {
                    inner.0.iter().zip(&rts).map(|((x, ty), r)| Binding::typed(x.clone(), ty.clone(), pick(r).clone())).collect()
                };
                Ok(out(
                    Term::subst(rb.source, side(|r| &r.source)),
                    Term::subst(rb.target, side(|r| &r.target)),
                    rb.ty,
                ))
            }
            Rewrite::ConstCell(s, args) => {
                let surf = self.sig.surface(s).ok_or_else(|| TypeError::UnknownSurface(s.to_string()))?;
                let from = self.sig.edge(&surf.from).ok_or_else(|| TypeError::UnknownConst(surf.from.to_string()))?;
                let tys = self.term_types(ctx, args)?;
                self.match_args(s, &from.source, &tys)?;
                Ok(out(
                    Term::Const(surf.from.as_str().into(), args.clone()),
                    Term::Const(surf.to.as_str().into(), args.clone()),
                    from.target.clone(),
                ))
            }
            Rewrite::Assoc { body, inner, outer, inv } => {
                let outer_tys = outer.iter().map(|b| self.check_term(ctx, &b.value)).collect::<Result<Vec<_>>>()?;
                let xs = self.binding_context(outer, outer_tys)?;
                let inner_tys = inner.iter().map(|b| self.check_term(&xs, &b.value)).collect::<Result<Vec<_>>>()?;
                let ys = self.binding_context(inner, inner_tys)?;
                let ty = self.check_term(&ys, body)?;
                let typed = |bs: &[Binding<Term>], c: &Context| -> Vec<Binding<Term>> {
                    bs.iter().zip(&c.0).map(|(b, (_, t))| Binding::typed(b.var.clone(), t.clone(), b.value.clone())).collect()
                };
                let (inner_t, outer_t) = (typed(inner, &ys), typed(outer, &xs));
                let source = Term::subst(Term::subst(body.clone(), inner_t.clone()), outer_t.clone());
                let pushed = inner_t.iter().map(|b| b.map(|v| Term::subst(v.clone(), outer_t.clone()))).collect();
                let target = Term::subst(body.clone(), pushed);
                Ok(flip(*inv, out(source, target, ty)))
            }
            Rewrite::SubId { term, inv } => {
                let ty = self.check_term(ctx, term)?;
                Ok(flip(*inv, out(term.clone(), Term::weaken(term.clone(), ctx), ty)))
            }
            Rewrite::ProjCell { k, args, inv } => {
                let n = args.len();
                self.unary(n)?;
                if *k < 1 || *k > n {
                    return Err(TypeError::ProjRange { k: *k, n });
                }
                let tys = self.term_types(ctx, args)?;
                let bs = args
                    .iter()
                    .zip(&tys)
                    .enumerate()
                    .map(|(i, (u, t))| Binding::typed(positional_binder(i + 1), t.clone(), u.clone()))
                    .collect();
                let source = Term::subst(Term::Var(positional_binder(*k)), bs);
                Ok(flip(*inv, out(source, args[k - 1].clone(), tys[k - 1].clone())))
            }
            Rewrite::CounitProd { k, terms, inv } => {
                self.need_products("product counit")?;
                if *inv {
                    self.need_pseudo("inverse product counit")?;
                }
                let n = terms.len();
                if *k < 1 || *k > n {
                    return Err(TypeError::ProjRange { k: *k, n });
                }
                let tys = self.term_types(ctx, terms)?;
                let prod = Type::prod(tys.clone());
                let source = Term::proj_sub(*k, &prod, Term::Pair(terms.clone()));
                Ok(flip(*inv, out(source, terms[k - 1].clone(), tys[k - 1].clone())))
            }
            Rewrite::TransposeProd { source, alphas } => {
                self.need_products("product transpose")?;
                let uty = self.check_term(ctx, source)?;
                let comps = match uty.as_prod() {
                    Some(cs) if cs.len() == alphas.len() => cs.to_vec(),
                    _ => return Err(TypeError::NotProduct(uty)),
                };
                let mut targets = Vec::with_capacity(alphas.len());
                for (i, (a, cty)) in alphas.iter().zip(&comps).enumerate() {
                    let rt = self.check_rewrite(ctx, a)?;
                    Self::same_term(&Term::proj_sub(i + 1, &uty, source.clone()), &rt.source)?;
                    Self::same_type(cty, &rt.ty)?;
                    targets.push(rt.target);
                }
                Ok(out(source.clone(), Term::Pair(targets), uty))
            }
            Rewrite::UnitProdInv(t) => {
                self.need_products("inverse product unit")?;
                self.need_pseudo("inverse product unit")?;
                let ty = self.check_term(ctx, t)?;
                let n = ty.as_prod().ok_or_else(|| TypeError::NotProduct(ty.clone()))?.len();
                let source = Term::Pair((1..=n).map(|i| Term::proj_sub(i, &ty, t.clone())).collect());
                Ok(out(source, t.clone(), ty))
            }
            Rewrite::CounitExp { var, body, inv } => {
                self.need_arrows("exponential counit")?;
                if *inv {
                    self.need_pseudo("inverse exponential counit")?;
                }
                let (gamma, last, dom) = ctx.split_last().ok_or_else(|| TypeError::NotLast(var.clone()))?;
                if last != var {
                    return Err(TypeError::NotLast(var.clone()));
                }
                let cod = self.check_term(ctx, body)?;
                let arrow = Type::arrow(dom.clone(), cod.clone());
                let lam = Term::Lam { var: var.clone(), ty: dom.clone(), body: Box::new(body.clone()) };
                let source = Term::eval_weakened(&arrow, lam, &gamma, var);
                Ok(flip(*inv, out(source, body.clone(), cod)))
            }
            Rewrite::TransposeExp { var, ty, source, alpha } => {
                self.need_arrows("exponential transpose")?;
                self.check_type(ty)?;
                self.fresh_binder(ctx, var)?;
                let uty = self.check_term(ctx, source)?;
                let (dom, cod) = uty.as_arrow().ok_or_else(|| TypeError::NotArrow(uty.clone()))?;
                Self::same_type(dom, ty)?;
                let ext = ctx.extend(var.clone(), ty.clone());
                let rt = self.check_rewrite(&ext, alpha)?;
                Self::same_term(&Term::eval_weakened(&uty, source.clone(), ctx, var), &rt.source)?;
                Self::same_type(cod, &rt.ty)?;
                let target = Term::Lam { var: var.clone(), ty: ty.clone(), body: Box::new(rt.target) };
                Ok(out(source.clone(), target, uty.clone()))
            }
            Rewrite::UnitExpInv { var, source } => {
                self.need_arrows("inverse exponential unit")?;
                self.need_pseudo("inverse exponential unit")?;
                self.fresh_binder(ctx, var)?;
                let uty = self.check_term(ctx, source)?;
                let (dom, _) = uty.as_arrow().ok_or_else(|| TypeError::NotArrow(uty.clone()))?;
                let body = Term::eval_weakened(&uty, source.clone(), ctx, var);
                let lam = Term::Lam { var: var.clone(), ty: dom.clone(), body: Box::new(body) };
                Ok(out(lam, source.clone(), uty.clone()))
            }
        }
    }

    /// Checks a rewrite against expected endpoints.
    pub fn check_rewrite_between(&self, ctx: &Context, r: &Rewrite, source: &Term, target: &Term) -> Result<Type> {
        let rt = self.check_rewrite(ctx, r)?;
        Self::same_term(source, &rt.source)?;
        Self::same_term(target, &rt.target)?;
        Ok(rt.ty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{Edge, Surface};
    use crate::syntax::var;

    fn a() -> Type {
        Type::base("A")
    }

    fn sig(tier: Tier) -> Signature {
        let edges = vec![
            Edge { name: "c".into(), source: vec![a()], target: a() },
            Edge { name: "d".into(), source: vec![a()], target: a() },
        ];
        let surfaces = vec![Surface { name: "s".into(), from: "c".into(), to: "d".into() }];
        Signature::build(&["A", "B"], edges, surfaces, tier).unwrap()
    }

    #[test]
    fn variable_and_projection() {
        let s = sig(Tier::Closed);
        let x = Context::single("x", a());
        assert_eq!(check_term(&s, Tier::Closed, &x, &Term::var("x")), Ok(a()));
        assert_eq!(check_term(&s, Tier::Closed, &x, &Term::var("y")), Err(TypeError::Unbound(var("y"))));
        let p = Context::single("p", Type::prod(vec![a(), Type::base("B")]));
        assert_eq!(check_term(&s, Tier::Closed, &p, &Term::proj(1, 2, Term::var("p"))), Ok(a()));
        assert_eq!(
            check_term(&s, Tier::Closed, &p, &Term::proj(3, 2, Term::var("p"))),
            Err(TypeError::ProjRange { k: 3, n: 2 })
        );
    }

    #[test]
    fn closed_identity_lambda() {
        let s = sig(Tier::Closed);
        let t = Term::lam("x", a(), Term::var("x"));
        assert_eq!(check_term(&s, Tier::Closed, &Context::empty(), &t), Ok(Type::arrow(a(), a())));
        assert!(matches!(check_term(&s, Tier::Products, &Context::empty(), &t), Err(TypeError::Tier { .. })));
    }

    #[test]
    fn tier_b_rejects_products_and_wide_contexts() {
        let s = sig(Tier::Bicat);
        let x = Context::single("x", a());
        let pair = Term::Pair(vec![Term::var("x")]);
        assert!(matches!(check_term(&s, Tier::Bicat, &x, &pair), Err(TypeError::Tier { .. })));
        let two = Context::new(vec![(var("x"), a()), (var("y"), a())]);
        assert_eq!(check_term(&s, Tier::Bicat, &two, &Term::var("x")), Err(TypeError::NonUnary(2)));
    }

    #[test]
    fn product_counit_endpoints() {
        let s = sig(Tier::Products);
        let x = Context::single("x", a());
        let r = Rewrite::CounitProd { k: 1, terms: vec![Term::var("x"), Term::var("x")], inv: false };
        let rt = check_rewrite(&s, Tier::Products, &x, &r).unwrap();
        assert_eq!(rt.source.to_string(), "proj[1/2]{pair(x, x)}");
        assert_eq!(rt.target, Term::var("x"));
        assert_eq!(rt.ty, a());
    }

    #[test]
    fn exponential_counit_endpoints() {
        let s = sig(Tier::Closed);
        let ctx = Context::new(vec![(var("g"), a()), (var("x"), a())]);
        let body = Term::konst("c", vec![Term::var("x")]);
        let r = Rewrite::CounitExp { var: var("x"), body: body.clone(), inv: false };
        let rt = check_rewrite(&s, Tier::Closed, &ctx, &r).unwrap();
        assert_eq!(rt.source.to_string(), "eval{(lam x : A. c(x)){g : A -> g}, x}");
        assert_eq!(rt.target, body);
        let wrong = Rewrite::CounitExp { var: var("g"), body: Term::var("g"), inv: false };
        assert!(matches!(check_rewrite(&s, Tier::Closed, &ctx, &wrong), Err(TypeError::NotLast(_))));
    }

    #[test]
    fn vertical_seam_must_be_alpha_equal() {
        let s = sig(Tier::Bicat);
        let x = Context::single("x", a());
        let c = Rewrite::ConstCell("s".into(), vec![Term::var("x")]);
        let ok = Rewrite::vert(Rewrite::Id(Term::konst("d", vec![Term::var("x")])), c.clone());
        let rt = check_rewrite(&s, Tier::Bicat, &x, &ok).unwrap();
        assert_eq!(rt.source, Term::konst("c", vec![Term::var("x")]));
        let bad = Rewrite::vert(c.clone(), c);
        assert!(matches!(check_rewrite(&s, Tier::Bicat, &x, &bad), Err(TypeError::EndpointMismatch { .. })));
    }

    #[test]
    fn lax_mode_rejects_universal_inverses() {
        let s = sig(Tier::Products);
        let x = Context::single("x", a());
        let r = Rewrite::CounitProd { k: 1, terms: vec![Term::var("x")], inv: true };
        let c = Checker::new(&s, Tier::Products);
        assert!(c.check_rewrite(&x, &r).is_ok());
        assert!(matches!(c.lax(true).check_rewrite(&x, &r), Err(TypeError::Lax(_))));
    }

    #[test]
    fn identity_endpoints() {
        let s = sig(Tier::Bicat);
        let x = Context::single("x", a());
        let t = Term::konst("c", vec![Term::var("x")]);
        let rt = check_rewrite(&s, Tier::Bicat, &x, &Rewrite::Id(t.clone())).unwrap();
        assert_eq!((rt.source, rt.target, rt.ty), (t.clone(), t, a()));
    }
}
