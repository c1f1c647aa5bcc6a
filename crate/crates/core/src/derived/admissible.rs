//! Synthesized derivations for the admissible rules of the product and
//! exponential fragments, and for uniqueness of transposes.
//!
//! Each rule has a fixed template: either a single universal-property
//! instance, or an expansion of both sides by U2 followed by the
//! deterministic normalization of [`super::tactics`] on the components.

use std::fmt;

use thiserror::Error;

use super::constructions::{eta_exp_with, eta_times_typed, lam_rewrite_typed, pair_rewrites, ConstructError};
use super::tactics::{ax, Calc};
use crate::equational::{check_equation, ArgKind, AxiomId, Derivation, Diagnostic, MetaArg};
use crate::signature::{Tier, Type};
use crate::syntax::{Context, Rewrite, Term, Var};
use crate::typing::{Checker, RewriteType, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("expected {expected} arguments, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("argument {0} has the wrong kind")]
    Kind(usize),
    #[error("rule {rule} needs tier {needed}")]
    Tier { rule: &'static str, needed: &'static str },
    #[error("ill-typed instance: {0}")]
    Type(#[from] TypeError),
    #[error("ill-formed instance: {0}")]
    Construct(#[from] ConstructError),
    #[error("bad instance: {0}")]
    Instance(String),
    #[error("template stuck: normal forms differ: {left} versus {right}")]
    Stuck { left: String, right: String },
    #[error("normalization did not terminate at {0}")]
    Diverged(String),
    #[error("synthesized derivation rejected: {0}")]
    Check(Diagnostic),
}

pub type Result<T> = std::result::Result<T, SynthError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DerivedRuleId {
    PairId,
    PairComp,
    EtaProdNat,
    CounitProdNat,
    ProdTriangle1,
    ProdTriangle2,
    LamId,
    LamComp,
    EtaExpNat,
    CounitExpNat,
    ExpTriangle1,
    ExpTriangle2,
}

impl DerivedRuleId {
    pub const ALL: [DerivedRuleId; 12] = [
        DerivedRuleId::PairId,
        DerivedRuleId::PairComp,
        DerivedRuleId::EtaProdNat,
        DerivedRuleId::CounitProdNat,
        DerivedRuleId::ProdTriangle1,
        DerivedRuleId::ProdTriangle2,
        DerivedRuleId::LamId,
        DerivedRuleId::LamComp,
        DerivedRuleId::EtaExpNat,
        DerivedRuleId::CounitExpNat,
        DerivedRuleId::ExpTriangle1,
        DerivedRuleId::ExpTriangle2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DerivedRuleId::PairId => "pair-id",
            DerivedRuleId::PairComp => "pair-comp",
            DerivedRuleId::EtaProdNat => "etaX-nat",
            DerivedRuleId::CounitProdNat => "counitX-nat",
            DerivedRuleId::ProdTriangle1 => "triangle-law-1",
            DerivedRuleId::ProdTriangle2 => "triangle-law-2",
            DerivedRuleId::LamId => "lam-id",
            DerivedRuleId::LamComp => "lam-comp",
            DerivedRuleId::EtaExpNat => "etaE-nat",
            DerivedRuleId::CounitExpNat => "counitE-nat",
            DerivedRuleId::ExpTriangle1 => "exp-triangle-law-1",
            DerivedRuleId::ExpTriangle2 => "exp-triangle-law-2",
        }
    }

    pub fn parse(s: &str) -> Option<DerivedRuleId> {
        DerivedRuleId::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn is_exponential(self) -> bool {
        matches!(
            self,
            DerivedRuleId::LamId
                | DerivedRuleId::LamComp
                | DerivedRuleId::EtaExpNat
                | DerivedRuleId::CounitExpNat
                | DerivedRuleId::ExpTriangle1
                | DerivedRuleId::ExpTriangle2
        )
    }

    pub fn min_tier(self) -> Tier {
        if self.is_exponential() {
            Tier::Closed
        } else {
            Tier::Products
        }
    }

    /// Argument kinds. Rules marked in [`DerivedRuleId::binds_last`] read the
    /// last context variable as the λ-binder and state their equation in the
    /// context without it.
    pub fn schema(self) -> &'static [ArgKind] {
        use ArgKind::*;
        match self {
            DerivedRuleId::PairId | DerivedRuleId::ProdTriangle1 => &[Terms],
            DerivedRuleId::PairComp => &[Rewrites, Rewrites],
            DerivedRuleId::ProdTriangle2 => &[Index, Term],
            DerivedRuleId::CounitProdNat => &[Index, Rewrites],
            DerivedRuleId::LamId | DerivedRuleId::ExpTriangle1 => &[Term],
            DerivedRuleId::LamComp => &[Rewrite, Rewrite],
            DerivedRuleId::EtaExpNat => &[Binder, Rewrite],
            DerivedRuleId::CounitExpNat => &[Rewrite],
            DerivedRuleId::ExpTriangle2 => &[Term],
            DerivedRuleId::EtaProdNat => &[Rewrite],
        }
    }

    /// Whether the equation lives in the context minus its last variable.
    pub fn binds_last(self) -> bool {
        matches!(self, DerivedRuleId::LamId | DerivedRuleId::LamComp | DerivedRuleId::ExpTriangle1)
    }
}

impl fmt::Display for DerivedRuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rule instance with its two sides and a derivation between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synthesized {
    /// The context the equation is stated and derived in.
    pub ctx: Context,
    pub lhs: Rewrite,
    pub rhs: Rewrite,
    pub derivation: Derivation,
    pub judgement: RewriteType,
}

struct Args<'a>(&'a [MetaArg]);

impl<'a> Args<'a> {
    fn index(&self, i: usize) -> Result<usize> {
        match &self.0[i] {
            MetaArg::Index(k) => Ok(*k),
            _ => Err(SynthError::Kind(i)),
        }
    }
    fn term(&self, i: usize) -> Result<&'a Term> {
        match &self.0[i] {
            MetaArg::Term(t) => Ok(t),
            _ => Err(SynthError::Kind(i)),
        }
    }
    fn terms(&self, i: usize) -> Result<&'a [Term]> {
        match &self.0[i] {
            MetaArg::Terms(t) => Ok(t),
            _ => Err(SynthError::Kind(i)),
        }
    }
    fn rewrite(&self, i: usize) -> Result<&'a Rewrite> {
        match &self.0[i] {
            MetaArg::Rewrite(r) => Ok(r),
            _ => Err(SynthError::Kind(i)),
        }
    }
    fn rewrites(&self, i: usize) -> Result<&'a [Rewrite]> {
        match &self.0[i] {
            MetaArg::Rewrites(r) => Ok(r),
            _ => Err(SynthError::Kind(i)),
        }
    }
    fn binder(&self, i: usize) -> Result<&'a Var> {
        match &self.0[i] {
            MetaArg::Binder(x) => Ok(x),
            _ => Err(SynthError::Kind(i)),
        }
    }
}

fn split_last(ctx: &Context) -> Result<(Context, Var, Type)> {
    let (gamma, x, a) = ctx.split_last().ok_or(ConstructError::EmptyContext)?;
    Ok((gamma, x.clone(), a.clone()))
}

fn product_of(c: &Checker, ctx: &Context, t: &Term) -> Result<(Type, usize)> {
    let ty = c.check_term(ctx, t)?;
    let n = ty.as_prod().ok_or_else(|| ConstructError::NotProduct(ty.clone()))?.len();
    Ok((ty, n))
}

fn counit_prod(k: usize, terms: Vec<Term>) -> Rewrite {
    Rewrite::CounitProd { k, terms, inv: false }
}

fn counit_exp(x: &Var, t: Term) -> Rewrite {
    Rewrite::CounitExp { var: x.clone(), body: t, inv: false }
}

fn rewrite_types(c: &Checker, ctx: &Context, rs: &[Rewrite]) -> Result<Vec<RewriteType>> {
    rs.iter().map(|r| c.check_rewrite(ctx, r).map_err(SynthError::from)).collect()
}

fn check_index(k: usize, n: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(TypeError::ProjRange { k, n }.into());
    }
    Ok(())
}

/// Normalizes one side, first expanding it by U2 when `expand` and it is not already a transpose.
fn normal_side(c: &Checker, ctx: &Context, side: &Rewrite, expand: bool) -> Result<(Derivation, Rewrite)> {
    let mut calc = Calc::new(c, ctx, side.clone());
    if expand && !matches!(side, Rewrite::TransposeProd { .. } | Rewrite::TransposeExp { .. }) {
        let target = c.check_rewrite(ctx, side)?.target;
        let u2 = match target {
            Term::Pair(_) => AxiomId::ProdU2,
            Term::Lam { .. } => AxiomId::ExpU2,
            _ => return Err(SynthError::Instance(format!("target {target} is neither a pair nor a λ-abstraction"))),
        };
        calc.apply(ax(u2, vec![MetaArg::Rewrite(side.clone())]))?;
    }
    calc.normalize()?;
    Ok(calc.finish())
}

/// Derives `lhs ≡ rhs` by normalizing both sides and meeting in the middle.
fn meet(c: &Checker, ctx: &Context, lhs: &Rewrite, rhs: &Rewrite, expand: bool) -> Result<Derivation> {
    let (dl, nl) = normal_side(c, ctx, lhs, expand)?;
    let (dr, nr) = normal_side(c, ctx, rhs, expand)?;
    if !crate::syntax::alpha_eq_rewrite(&nl, &nr) {
        return Err(SynthError::Stuck { left: nl.to_string(), right: nr.to_string() });
    }
    Ok(Derivation::trans(dl, Derivation::symm(dr)))
}

/// Builds the two sides of `rule` at the instance and a derivation between them, then checks it.
pub fn synth_admissible(c: &Checker, ctx: &Context, rule: DerivedRuleId, args: &[MetaArg]) -> Result<Synthesized> {
    if c.tier < rule.min_tier() {
        return Err(SynthError::Tier { rule: rule.name(), needed: rule.min_tier().name() });
    }
    let schema = rule.schema();
    if schema.len() != args.len() {
        return Err(SynthError::Arity { expected: schema.len(), found: args.len() });
    }
    let a = Args(args);
    let (eq_ctx, lhs, rhs, derivation) = match rule {
        DerivedRuleId::PairId => {
            let ts = a.terms(0)?;
            let ids: Vec<Rewrite> = ts.iter().cloned().map(Rewrite::Id).collect();
            let lhs = pair_rewrites(c, ctx, &ids)?;
            let rhs = Rewrite::Id(Term::Pair(ts.to_vec()));
            let d = meet(c, ctx, &lhs, &rhs, true)?;
            (ctx.clone(), lhs, rhs, d)
        }
        DerivedRuleId::PairComp => {
            let (later, first) = (a.rewrites(0)?, a.rewrites(1)?);
            if later.len() != first.len() {
                return Err(SynthError::Instance("pair-comp needs families of equal length".into()));
            }
            let comps: Vec<Rewrite> = later.iter().zip(first).map(|(l, f)| Rewrite::vert(l.clone(), f.clone())).collect();
            let lhs = pair_rewrites(c, ctx, &comps)?;
            let rhs = Rewrite::vert(pair_rewrites(c, ctx, later)?, pair_rewrites(c, ctx, first)?);
            let d = meet(c, ctx, &lhs, &rhs, true)?;
            (ctx.clone(), lhs, rhs, d)
        }
        DerivedRuleId::EtaProdNat => {
            let sigma = a.rewrite(0)?;
            let rt = c.check_rewrite(ctx, sigma)?;
            let n = rt.ty.as_prod().ok_or_else(|| ConstructError::NotProduct(rt.ty.clone()))?.len();
            let lhs = Rewrite::vert(eta_times_typed(&rt.target, &rt.ty, n), sigma.clone());
            let projected: Vec<Rewrite> = (1..=n).map(|i| Rewrite::proj_sub(i, &rt.ty, sigma.clone())).collect();
            let rhs = Rewrite::vert(pair_rewrites(c, ctx, &projected)?, eta_times_typed(&rt.source, &rt.ty, n));
            let d = meet(c, ctx, &lhs, &rhs, true)?;
            (ctx.clone(), lhs, rhs, d)
        }
        DerivedRuleId::CounitProdNat => {
            let k = a.index(0)?;
            let taus = a.rewrites(1)?;
            check_index(k, taus.len())?;
            let rts = rewrite_types(c, ctx, taus)?;
            let src: Vec<Term> = rts.iter().map(|r| r.source.clone()).collect();
            let tgt: Vec<Term> = rts.iter().map(|r| r.target.clone()).collect();
            let ty = Type::prod(rts.iter().map(|r| r.ty.clone()).collect());
            let p = pair_rewrites(c, ctx, taus)?;
            let Rewrite::TransposeProd { alphas, .. } = &p else { unreachable!("pair_rewrites builds a transpose") };
            let lhs = Rewrite::vert(counit_prod(k, tgt), Rewrite::proj_sub(k, &ty, p.clone()));
            let rhs = Rewrite::vert(taus[k - 1].clone(), counit_prod(k, src.clone()));
            let u1 = ax(AxiomId::ProdU1, vec![MetaArg::Index(k), MetaArg::Term(Term::Pair(src)), MetaArg::Rewrites(alphas.clone())]);
            (ctx.clone(), lhs, rhs, Derivation::symm(u1))
        }
        DerivedRuleId::ProdTriangle1 => {
            let ts = a.terms(0)?;
            let pair = Term::Pair(ts.to_vec());
            let (ty, n) = product_of(c, ctx, &pair)?;
            let projected: Vec<Term> = (1..=n).map(|i| Term::proj_sub(i, &ty, pair.clone())).collect();
            let counits: Vec<Rewrite> = (1..=n).map(|i| counit_prod(i, ts.to_vec())).collect();
            let p = pair_rewrites(c, ctx, &counits)?;
            debug_assert!(matches!(&p, Rewrite::TransposeProd { source: Term::Pair(s), .. } if *s == projected));
            let lhs = Rewrite::vert(p, eta_times_typed(&pair, &ty, n));
            let rhs = Rewrite::Id(pair);
            let d = meet(c, ctx, &lhs, &rhs, true)?;
            (ctx.clone(), lhs, rhs, d)
        }
        DerivedRuleId::ProdTriangle2 => {
            let k = a.index(0)?;
            let u = a.term(1)?;
            let (ty, n) = product_of(c, ctx, u)?;
            check_index(k, n)?;
            let eta = eta_times_typed(u, &ty, n);
            let Rewrite::TransposeProd { alphas, .. } = &eta else { unreachable!("η× is a transpose") };
            let projected: Vec<Term> = (1..=n).map(|i| Term::proj_sub(i, &ty, u.clone())).collect();
            let lhs = Rewrite::vert(counit_prod(k, projected.clone()), Rewrite::proj_sub(k, &ty, eta.clone()));
            let rhs = Rewrite::Id(projected[k - 1].clone());
            let u1 = ax(AxiomId::ProdU1, vec![MetaArg::Index(k), MetaArg::Term(u.clone()), MetaArg::Rewrites(alphas.clone())]);
            (ctx.clone(), lhs, rhs, Derivation::symm(u1))
        }
        DerivedRuleId::LamId => {
            let t = a.term(0)?;
            let (gamma, x, dom) = split_last(ctx)?;
            c.check_term(ctx, t)?;
            let lam = Term::Lam { var: x.clone(), ty: dom.clone(), body: Box::new(t.clone()) };
            let lhs = lam_rewrite_typed(&x, &dom, &Rewrite::Id(t.clone()), t);
            let rhs = Rewrite::Id(lam);
            let d = meet(c, &gamma, &lhs, &rhs, true)?;
            (gamma, lhs, rhs, d)
        }
        DerivedRuleId::LamComp => {
            let (later, first) = (a.rewrite(0)?, a.rewrite(1)?);
            let (gamma, x, dom) = split_last(ctx)?;
            let rl = c.check_rewrite(ctx, later)?;
            let rf = c.check_rewrite(ctx, first)?;
            let lhs = lam_rewrite_typed(&x, &dom, &Rewrite::vert(later.clone(), first.clone()), &rf.source);
            let rhs = Rewrite::vert(lam_rewrite_typed(&x, &dom, later, &rl.source), lam_rewrite_typed(&x, &dom, first, &rf.source));
            let d = meet(c, &gamma, &lhs, &rhs, true)?;
            (gamma, lhs, rhs, d)
        }
        DerivedRuleId::EtaExpNat => {
            let x = a.binder(0)?;
            let sigma = a.rewrite(1)?;
            if ctx.contains(x) {
                return Err(TypeError::BinderClash(x.clone()).into());
            }
            let rt = c.check_rewrite(ctx, sigma)?;
            let (dom, _) = rt.ty.as_arrow().ok_or_else(|| ConstructError::NotArrow(rt.ty.clone()))?;
            let dom = dom.clone();
            let inner = Rewrite::eval_weakened(&rt.ty, sigma.clone(), ctx, x);
            let ev_src = Term::eval_weakened(&rt.ty, rt.source.clone(), ctx, x);
            let lhs = Rewrite::vert(eta_exp_with(ctx, &rt.target, &rt.ty, x)?, sigma.clone());
            let rhs = Rewrite::vert(lam_rewrite_typed(x, &dom, &inner, &ev_src), eta_exp_with(ctx, &rt.source, &rt.ty, x)?);
            let d = meet(c, ctx, &lhs, &rhs, true)?;
            (ctx.clone(), lhs, rhs, d)
        }
        DerivedRuleId::CounitExpNat => {
            let tau = a.rewrite(0)?;
            let (gamma, x, dom) = split_last(ctx)?;
            let rt = c.check_rewrite(ctx, tau)?;
            let arrow = Type::arrow(dom.clone(), rt.ty.clone());
            let lam = Term::Lam { var: x.clone(), ty: dom.clone(), body: Box::new(rt.source.clone()) };
            let alpha = Rewrite::vert(tau.clone(), counit_exp(&x, rt.source.clone()));
            let lhs = alpha.clone();
            let rhs = Rewrite::vert(
                counit_exp(&x, rt.target.clone()),
                Rewrite::eval_weakened(&arrow, lam_rewrite_typed(&x, &dom, tau, &rt.source), &gamma, &x),
            );
            let u1 = ax(AxiomId::ExpU1, vec![MetaArg::Term(lam), MetaArg::Rewrite(alpha)]);
            (ctx.clone(), lhs, rhs, u1)
        }
        DerivedRuleId::ExpTriangle1 => {
            let t = a.term(0)?;
            let (gamma, x, dom) = split_last(ctx)?;
            let cod = c.check_term(ctx, t)?;
            let arrow = Type::arrow(dom.clone(), cod);
            let lam = Term::Lam { var: x.clone(), ty: dom.clone(), body: Box::new(t.clone()) };
            let ev = Term::eval_weakened(&arrow, lam.clone(), &gamma, &x);
            let lhs = Rewrite::vert(lam_rewrite_typed(&x, &dom, &counit_exp(&x, t.clone()), &ev), eta_exp_with(&gamma, &lam, &arrow, &x)?);
            let rhs = Rewrite::Id(lam);
            let d = meet(c, &gamma, &lhs, &rhs, true)?;
            (gamma, lhs, rhs, d)
        }
        DerivedRuleId::ExpTriangle2 => {
            let u = a.term(0)?;
            let (gamma, x, _) = split_last(ctx)?;
            let ty = c.check_term(&gamma, u)?;
            let eta = eta_exp_with(&gamma, u, &ty, &x)?;
            let ev = Term::eval_weakened(&ty, u.clone(), &gamma, &x);
            let lhs = Rewrite::vert(counit_exp(&x, ev.clone()), Rewrite::eval_weakened(&ty, eta, &gamma, &x));
            let rhs = Rewrite::Id(ev.clone());
            let u1 = ax(AxiomId::ExpU1, vec![MetaArg::Term(u.clone()), MetaArg::Rewrite(Rewrite::Id(ev))]);
            (ctx.clone(), lhs, rhs, Derivation::symm(u1))
        }
    };
    let concl = check_equation(c, &eq_ctx, &lhs, &rhs, &derivation).map_err(SynthError::Check)?;
    Ok(Synthesized { ctx: eq_ctx, lhs, rhs, derivation, judgement: concl.judgement })
}

/// The U2 factorization of `γ`, with its components normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransposeFactorization {
    /// `γ ≡ factor`.
    pub derivation: Derivation,
    /// A transpose (`transx` or `transe`) equal to `γ`.
    pub factor: Rewrite,
    pub judgement: RewriteType,
}

/// Derives `γ ≡ transx[u](counitx[i] | proj[i]{γ}, ...)` (or the λ analogue)
/// and normalizes the components.
pub fn transpose_unique(c: &Checker, ctx: &Context, gamma: &Rewrite) -> Result<TransposeFactorization> {
    let rt = c.check_rewrite(ctx, gamma)?;
    let u2 = match &rt.target {
        Term::Pair(_) => AxiomId::ProdU2,
        Term::Lam { .. } => AxiomId::ExpU2,
        other => return Err(SynthError::Instance(format!("target {other} is neither a pair nor a λ-abstraction"))),
    };
    let mut calc = Calc::new(c, ctx, gamma.clone());
    calc.apply(ax(u2, vec![MetaArg::Rewrite(gamma.clone())]))?;
    calc.normalize()?;
    let (derivation, factor) = calc.finish();
    let concl = check_equation(c, ctx, gamma, &factor, &derivation).map_err(SynthError::Check)?;
    Ok(TransposeFactorization { derivation, factor, judgement: concl.judgement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{Edge, Signature, Surface};
    use crate::syntax::var;

    fn a() -> Type {
        Type::base("A")
    }

    fn sig() -> Signature {
        let edges = vec![
            Edge { name: "c".into(), source: vec![a()], target: a() },
            Edge { name: "d".into(), source: vec![a()], target: a() },
            Edge { name: "e".into(), source: vec![a()], target: a() },
        ];
        let surfaces = vec![
            Surface { name: "s".into(), from: "c".into(), to: "d".into() },
            Surface { name: "s2".into(), from: "d".into(), to: "e".into() },
        ];
        Signature::build(&["A"], edges, surfaces, Tier::Closed).unwrap()
    }

    fn cx(f: &str, x: &str) -> Term {
        Term::konst(f, vec![Term::var(x)])
    }

    fn cell(s: &str, x: &str) -> Rewrite {
        Rewrite::ConstCell(s.into(), vec![Term::var(x)])
    }

    fn ctx_n(n: usize) -> Context {
        Context((1..=n).map(|i| (var(&format!("y{i}")), a())).collect())
    }

    fn run(tier: Tier, ctx: &Context, rule: DerivedRuleId, args: Vec<MetaArg>) -> Synthesized {
        let s = sig();
        let c = Checker::new(&s, tier);
        match synth_admissible(&c, ctx, rule, &args) {
            Ok(out) => out,
            Err(e) => panic!("{rule}: {e}"),
        }
    }

    #[test]
    fn product_rules_for_small_arities() {
        let ctx = Context::single("y", a());
        for n in 0..=3 {
            let ts: Vec<Term> = (0..n).map(|_| cx("c", "y")).collect();
            let taus: Vec<Rewrite> = (0..n).map(|_| cell("s", "y")).collect();
            let taus2: Vec<Rewrite> = (0..n).map(|_| cell("s2", "y")).collect();
            run(Tier::Products, &ctx, DerivedRuleId::PairId, vec![MetaArg::Terms(ts.clone())]);
            run(Tier::Products, &ctx, DerivedRuleId::PairComp, vec![MetaArg::Rewrites(taus2), MetaArg::Rewrites(taus.clone())]);
            run(Tier::Products, &ctx, DerivedRuleId::ProdTriangle1, vec![MetaArg::Terms(ts.clone())]);
            let sigma = pair_rewrites(&Checker::new(&sig(), Tier::Products), &ctx, &taus).unwrap();
            run(Tier::Products, &ctx, DerivedRuleId::EtaProdNat, vec![MetaArg::Rewrite(sigma)]);
            for k in 1..=n {
                run(Tier::Products, &ctx, DerivedRuleId::CounitProdNat, vec![MetaArg::Index(k), MetaArg::Rewrites(taus.clone())]);
                run(Tier::Products, &ctx, DerivedRuleId::ProdTriangle2, vec![MetaArg::Index(k), MetaArg::Term(Term::Pair(ts.clone()))]);
            }
        }
    }

    #[test]
    fn eta_prod_nat_on_a_variable() {
        let pty = Type::prod(vec![a(), a()]);
        let ctx = Context::single("p", pty.clone());
        let s = sig();
        let c = Checker::new(&s, Tier::Products);
        let sigma = eta_times_typed(&Term::var("p"), &pty, 2);
        synth_admissible(&c, &ctx, DerivedRuleId::EtaProdNat, &[MetaArg::Rewrite(sigma)]).unwrap();
    }

    #[test]
    fn exponential_rules_for_small_contexts() {
        for n in 0..=3 {
            let gamma = ctx_n(n);
            let ext = gamma.extend(var("x"), a());
            let t = cx("c", "x");
            run(Tier::Closed, &ext, DerivedRuleId::LamId, vec![MetaArg::Term(t.clone())]);
            run(Tier::Closed, &ext, DerivedRuleId::LamComp, vec![MetaArg::Rewrite(cell("s2", "x")), MetaArg::Rewrite(cell("s", "x"))]);
            run(Tier::Closed, &ext, DerivedRuleId::CounitExpNat, vec![MetaArg::Rewrite(cell("s", "x"))]);
            run(Tier::Closed, &ext, DerivedRuleId::ExpTriangle1, vec![MetaArg::Term(t.clone())]);
            let lam = Term::lam("x", a(), t.clone());
            run(Tier::Closed, &ext, DerivedRuleId::ExpTriangle2, vec![MetaArg::Term(lam.clone())]);
            let s = sig();
            let c = Checker::new(&s, Tier::Closed);
            let sigma = crate::derived::lam_rewrite(&c, &ext, &cell("s", "x")).unwrap();
            run(Tier::Closed, &gamma, DerivedRuleId::EtaExpNat, vec![MetaArg::Binder(var("z")), MetaArg::Rewrite(sigma)]);
        }
    }

    #[test]
    fn transposes_factor_uniquely() {
        let s = sig();
        let c = Checker::new(&s, Tier::Closed);
        let ctx = Context::single("y", a());
        let pair = Term::Pair(vec![cx("c", "y"), Term::var("y")]);
        let out = transpose_unique(&c, &ctx, &Rewrite::Id(pair.clone())).unwrap();
        let Rewrite::TransposeProd { alphas, .. } = &out.factor else { panic!("not a transpose: {}", out.factor) };
        assert!(matches!(alphas[0], Rewrite::CounitProd { k: 1, .. }));
        assert!(matches!(alphas[1], Rewrite::CounitProd { k: 2, .. }));

        let lam = Term::lam("x", a(), cx("c", "x"));
        let out = transpose_unique(&c, &ctx, &Rewrite::Id(lam)).unwrap();
        assert!(matches!(out.factor, Rewrite::TransposeExp { .. }));

        let ext = ctx.extend(var("x"), a());
        let g = crate::derived::lam_rewrite(&c, &ext, &cell("s", "x")).unwrap();
        let out = transpose_unique(&c, &ctx, &g).unwrap();
        assert!(crate::syntax::alpha_eq_rewrite(&out.factor, &g) || matches!(out.factor, Rewrite::TransposeExp { .. }));

        assert!(transpose_unique(&c, &ctx, &cell("s", "y")).is_err());
    }

    #[test]
    fn names_round_trip_and_tiers_gate() {
        for r in DerivedRuleId::ALL {
            assert_eq!(DerivedRuleId::parse(r.name()), Some(r));
        }
        let s = sig();
        let c = Checker::new(&s, Tier::Products);
        let err = synth_admissible(&c, &Context::single("x", a()), DerivedRuleId::LamId, &[MetaArg::Term(Term::var("x"))]);
        assert!(matches!(err, Err(SynthError::Tier { .. })));
    }
}
