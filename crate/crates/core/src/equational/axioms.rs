//! Axiom schemas of the ≡-theory and their instantiation.

use std::fmt;

use thiserror::Error;

use crate::derived::constructions::{eta_exp_with, eta_times_typed};
use crate::signature::{Tier, Type};
use crate::syntax::{positional_binder, Binding, Context, Rewrite, Term, Var};
use crate::typing::{Checker, RewriteType, TypeError};

/// The invertible structural constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invertible {
    Assoc,
    SubId,
    Proj,
    CounitProd,
    UnitProd,
    CounitExp,
    UnitExp,
}

impl Invertible {
    pub const ALL: [Invertible; 7] = [
        Invertible::Assoc,
        Invertible::SubId,
        Invertible::Proj,
        Invertible::CounitProd,
        Invertible::UnitProd,
        Invertible::CounitExp,
        Invertible::UnitExp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invertible::Assoc => "assoc",
            Invertible::SubId => "subid",
            Invertible::Proj => "proj",
            Invertible::CounitProd => "counitx",
            Invertible::UnitProd => "unitx",
            Invertible::CounitExp => "counite",
            Invertible::UnitExp => "unite",
        }
    }

    /// Whether the inverse belongs to the pseudo (not lax) universal structure.
    pub fn is_universal(self) -> bool {
        !matches!(self, Invertible::Assoc | Invertible::SubId | Invertible::Proj)
    }

    fn min_tier(self) -> Tier {
        match self {
            Invertible::Assoc | Invertible::SubId | Invertible::Proj => Tier::Bicat,
            Invertible::CounitProd | Invertible::UnitProd => Tier::Products,
            Invertible::CounitExp | Invertible::UnitExp => Tier::Closed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    VertLeftUnit,
    VertRightUnit,
    VertAssoc,
    IdPreservation,
    Interchange,
    NatProj,
    NatSubId,
    NatAssoc,
    BicloneCompat1,
    BicloneCompat2,
    ProdU1,
    ProdU2,
    ExpU1,
    ExpU2,
    /// `φ⁻¹ | φ ≡ id`.
    InvLeft(Invertible),
    /// `φ | φ⁻¹ ≡ id`.
    InvRight(Invertible),
}

/// Shape of one schema argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgKind {
    Index,
    Term,
    Terms,
    Rewrite,
    Rewrites,
    TermBindings,
    RewriteBindings,
    Binder,
}

/// A schema argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetaArg {
    Index(usize),
    Term(Term),
    Terms(Vec<Term>),
    Rewrite(Rewrite),
    Rewrites(Vec<Rewrite>),
    TermBindings(Vec<Binding<Term>>),
    RewriteBindings(Vec<Binding<Rewrite>>),
    Binder(Var),
}

impl MetaArg {
    pub fn kind(&self) -> ArgKind {
        match self {
            MetaArg::Index(_) => ArgKind::Index,
            MetaArg::Term(_) => ArgKind::Term,
            MetaArg::Terms(_) => ArgKind::Terms,
            MetaArg::Rewrite(_) => ArgKind::Rewrite,
            MetaArg::Rewrites(_) => ArgKind::Rewrites,
            MetaArg::TermBindings(_) => ArgKind::TermBindings,
            MetaArg::RewriteBindings(_) => ArgKind::RewriteBindings,
            MetaArg::Binder(_) => ArgKind::Binder,
        }
    }
}

impl AxiomId {
    pub const BASE: [AxiomId; 10] = [
        AxiomId::VertLeftUnit,
        AxiomId::VertRightUnit,
        AxiomId::VertAssoc,
        AxiomId::IdPreservation,
        AxiomId::Interchange,
        AxiomId::NatProj,
        AxiomId::NatSubId,
        AxiomId::NatAssoc,
        AxiomId::BicloneCompat1,
        AxiomId::BicloneCompat2,
    ];

    pub fn name(self) -> String {
        match self {
            AxiomId::VertLeftUnit => "vert-left-unit".into(),
            AxiomId::VertRightUnit => "vert-right-unit".into(),
            AxiomId::VertAssoc => "vert-assoc".into(),
            AxiomId::IdPreservation => "id-preservation".into(),
            AxiomId::Interchange => "interchange".into(),
            AxiomId::NatProj => "nat-proj".into(),
            AxiomId::NatSubId => "nat-subid".into(),
            AxiomId::NatAssoc => "nat-assoc".into(),
            AxiomId::BicloneCompat1 => "biclone-compat-1".into(),
            AxiomId::BicloneCompat2 => "biclone-compat-2".into(),
            AxiomId::ProdU1 => "prod-U1".into(),
            AxiomId::ProdU2 => "prod-U2".into(),
            AxiomId::ExpU1 => "exp-U1".into(),
            AxiomId::ExpU2 => "exp-U2".into(),
            AxiomId::InvLeft(k) => format!("inv-{}-left", k.name()),
            AxiomId::InvRight(k) => format!("inv-{}-right", k.name()),
        }
    }

    pub fn parse(name: &str) -> Option<AxiomId> {
        all_axioms().into_iter().find(|a| a.name() == name)
    }

    pub fn min_tier(self) -> Tier {
        match self {
            AxiomId::ProdU1 | AxiomId::ProdU2 => Tier::Products,
            AxiomId::ExpU1 | AxiomId::ExpU2 => Tier::Closed,
            AxiomId::InvLeft(k) | AxiomId::InvRight(k) => k.min_tier(),
            _ => Tier::Bicat,
        }
    }

    /// Argument kinds, in order.
    pub fn schema(self) -> &'static [ArgKind] {
        use ArgKind::*;
        match self {
            AxiomId::VertLeftUnit | AxiomId::VertRightUnit | AxiomId::NatSubId => &[Rewrite],
            AxiomId::VertAssoc => &[Rewrite, Rewrite, Rewrite],
            AxiomId::IdPreservation | AxiomId::BicloneCompat1 => &[Term, TermBindings],
            AxiomId::Interchange => &[Rewrite, Rewrite, RewriteBindings, Rewrites],
            AxiomId::NatProj => &[Index, Rewrites],
            AxiomId::NatAssoc => &[Rewrite, RewriteBindings, RewriteBindings],
            AxiomId::BicloneCompat2 => &[Term, TermBindings, TermBindings, TermBindings],
            AxiomId::ProdU1 => &[Index, Term, Rewrites],
            AxiomId::ProdU2 => &[Rewrite],
            AxiomId::ExpU1 => &[Term, Rewrite],
            AxiomId::ExpU2 => &[Rewrite],
            AxiomId::InvLeft(k) | AxiomId::InvRight(k) => match k {
                Invertible::Assoc => &[Term, TermBindings, TermBindings],
                Invertible::SubId => &[Term],
                Invertible::Proj | Invertible::CounitProd => &[Index, Terms],
                Invertible::UnitProd => &[Term],
                Invertible::CounitExp => &[Term],
                Invertible::UnitExp => &[Binder, Term],
            },
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Every axiom schema of the richest tier.
pub fn all_axioms() -> Vec<AxiomId> {
    let mut out = AxiomId::BASE.to_vec();
    out.extend([AxiomId::ProdU1, AxiomId::ProdU2, AxiomId::ExpU1, AxiomId::ExpU2]);
    for k in Invertible::ALL {
        out.push(AxiomId::InvLeft(k));
        out.push(AxiomId::InvRight(k));
    }
    out
}

/// Congruence rules: one per rewrite constructor with rewrite arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CongRule {
    Vert,
    Subst,
    TransposeProd,
    TransposeExp,
}

impl CongRule {
    pub const ALL: [CongRule; 4] = [CongRule::Vert, CongRule::Subst, CongRule::TransposeProd, CongRule::TransposeExp];

    pub fn name(self) -> &'static str {
        match self {
            CongRule::Vert => "cong-vert",
            CongRule::Subst => "cong-subst",
            CongRule::TransposeProd => "cong-transx",
            CongRule::TransposeExp => "cong-transe",
        }
    }

    pub fn min_tier(self) -> Tier {
        match self {
            CongRule::Vert | CongRule::Subst => Tier::Bicat,
            CongRule::TransposeProd => Tier::Products,
            CongRule::TransposeExp => Tier::Closed,
        }
    }
}

/// An entry of the rule catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Axiom(AxiomId),
    Cong(CongRule),
}

impl RuleId {
    pub fn name(self) -> String {
        match self {
            RuleId::Axiom(a) => a.name(),
            RuleId::Cong(c) => c.name().to_string(),
        }
    }

    /// Number of schema arguments (sub-derivation positions for congruences).
    pub fn arity(self) -> usize {
        match self {
            RuleId::Axiom(a) => a.schema().len(),
            RuleId::Cong(CongRule::Vert) => 2,
            RuleId::Cong(_) => 1,
        }
    }
}

fn tier_rank(t: Tier) -> usize {
    match t {
        Tier::Bicat => 0,
        Tier::Products => 1,
        Tier::Closed => 2,
    }
}

pub fn axiom_available(a: AxiomId, tier: Tier, lax: bool) -> bool {
    let pseudo_ok = match a {
        AxiomId::InvLeft(k) | AxiomId::InvRight(k) => !(lax && k.is_universal()),
        _ => true,
    };
    pseudo_ok && tier_rank(a.min_tier()) <= tier_rank(tier)
}

/// The fixed rule list of a tier.
pub fn axiom_catalog(tier: Tier, lax: bool) -> Vec<RuleId> {
    let mut out: Vec<RuleId> =
        all_axioms().into_iter().filter(|a| axiom_available(*a, tier, lax)).map(RuleId::Axiom).collect();
    out.extend(CongRule::ALL.into_iter().filter(|c| tier_rank(c.min_tier()) <= tier_rank(tier)).map(RuleId::Cong));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstantiateError {
    #[error("`{axiom}` expects {expected} argument(s), found {found}")]
    Arity { axiom: String, expected: usize, found: usize },
    #[error("argument {index} of `{axiom}` has the wrong kind: expected {expected:?}")]
    Kind { axiom: String, index: usize, expected: ArgKind },
    #[error("`{0}` is not available at this tier or mode")]
    Unavailable(String),
    #[error("ill-typed binding: {0}")]
    Type(#[from] TypeError),
    #[error("schema premise violated: {0}")]
    Premise(String),
}

type Result<T> = std::result::Result<T, InstantiateError>;

fn premise<T>(msg: impl Into<String>) -> Result<T> {
    Err(InstantiateError::Premise(msg.into()))
}

/// An axiom together with its arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomInstance {
    pub axiom: AxiomId,
    pub args: Vec<MetaArg>,
}

impl AxiomInstance {
    pub fn new(axiom: AxiomId, args: Vec<MetaArg>) -> Self {
        AxiomInstance { axiom, args }
    }
}

struct Args<'a> {
    axiom: AxiomId,
    args: &'a [MetaArg],
}

impl<'a> Args<'a> {
    fn kind_err<T>(&self, i: usize) -> Result<T> {
        Err(InstantiateError::Kind { axiom: self.axiom.name(), index: i + 1, expected: self.axiom.schema()[i] })
    }
    fn index(&self, i: usize) -> Result<usize> {
        match &self.args[i] {
            MetaArg::Index(k) => Ok(*k),
            _ => self.kind_err(i),
        }
    }
    fn term(&self, i: usize) -> Result<&'a Term> {
        match &self.args[i] {
            MetaArg::Term(t) => Ok(t),
            _ => self.kind_err(i),
        }
    }
    fn terms(&self, i: usize) -> Result<&'a [Term]> {
        match &self.args[i] {
            MetaArg::Terms(t) => Ok(t),
            _ => self.kind_err(i),
        }
    }
    fn rewrite(&self, i: usize) -> Result<&'a Rewrite> {
        match &self.args[i] {
            MetaArg::Rewrite(r) => Ok(r),
            _ => self.kind_err(i),
        }
    }
    fn rewrites(&self, i: usize) -> Result<&'a [Rewrite]> {
        match &self.args[i] {
            MetaArg::Rewrites(r) => Ok(r),
            _ => self.kind_err(i),
        }
    }
    fn term_bindings(&self, i: usize) -> Result<&'a [Binding<Term>]> {
        match &self.args[i] {
            MetaArg::TermBindings(r) => Ok(r),
            _ => self.kind_err(i),
        }
    }
    fn rewrite_bindings(&self, i: usize) -> Result<&'a [Binding<Rewrite>]> {
        match &self.args[i] {
            MetaArg::RewriteBindings(r) => Ok(r),
            _ => self.kind_err(i),
        }
    }
    fn binder(&self, i: usize) -> Result<&'a Var> {
        match &self.args[i] {
            MetaArg::Binder(x) => Ok(x),
            _ => self.kind_err(i),
        }
    }
}

/// Annotates term bindings with the types of their values in `ctx`.
fn typed_term_bindings(c: &Checker, ctx: &Context, bs: &[Binding<Term>]) -> Result<(Vec<Binding<Term>>, Context)> {
    let mut out = Vec::with_capacity(bs.len());
    let mut inner = Vec::with_capacity(bs.len());
    for b in bs {
        let ty = c.check_term(ctx, &b.value)?;
        if let Some(ann) = &b.ty {
            if *ann != ty {
                return Err(TypeError::Annotation { var: b.var.clone(), annotated: ann.clone(), found: ty }.into());
            }
        }
        out.push(Binding::typed(b.var.clone(), ty.clone(), b.value.clone()));
        inner.push((b.var.clone(), ty));
    }
    let inner = Context(inner);
    c.check_context(&inner)?;
    Ok((out, inner))
}

/// Typed rewrite bindings: the annotated bindings with their judgements and binder context.
fn typed_rewrite_bindings(
    c: &Checker,
    ctx: &Context,
    bs: &[Binding<Rewrite>],
) -> Result<(Vec<Binding<Rewrite>>, Vec<RewriteType>, Context)> {
    let mut out = Vec::with_capacity(bs.len());
    let mut rts = Vec::with_capacity(bs.len());
    let mut inner = Vec::with_capacity(bs.len());
    for b in bs {
        let rt = c.check_rewrite(ctx, &b.value)?;
        if let Some(ann) = &b.ty {
            if *ann != rt.ty {
                return Err(TypeError::Annotation { var: b.var.clone(), annotated: ann.clone(), found: rt.ty }.into());
            }
        }
        out.push(Binding::typed(b.var.clone(), rt.ty.clone(), b.value.clone()));
        inner.push((b.var.clone(), rt.ty.clone()));
        rts.push(rt);
    }
    let inner = Context(inner);
    c.check_context(&inner)?;
    Ok((out, rts, inner))
}

fn id_bindings(bs: &[Binding<Term>]) -> Vec<Binding<Rewrite>> {
    bs.iter().map(|b| b.map(|t| Rewrite::Id(t.clone()))).collect()
}

fn side_bindings(bs: &[Binding<Rewrite>], rts: &[RewriteType], source: bool) -> Vec<Binding<Term>> {
    bs.iter()
        .zip(rts)
        .map(|(b, rt)| Binding { var: b.var.clone(), ty: b.ty.clone(), value: if source { rt.source.clone() } else { rt.target.clone() } })
        .collect()
}

/// Instantiates a schema in context `ctx`, returning `(lhs, rhs)`.
///
/// Premises are checked by typing the arguments; the sides are returned
/// without re-checking their parallelism (see [`check_instance`]).
pub fn instantiate_axiom(c: &Checker, ctx: &Context, inst: &AxiomInstance) -> Result<(Rewrite, Rewrite)> {
    let ax = inst.axiom;
    if !axiom_available(ax, c.tier, c.lax) {
        return Err(InstantiateError::Unavailable(ax.name()));
    }
    let schema = ax.schema();
    if schema.len() != inst.args.len() {
        return Err(InstantiateError::Arity { axiom: ax.name(), expected: schema.len(), found: inst.args.len() });
    }
    let a = Args { axiom: ax, args: &inst.args };
    let v = Rewrite::vert;
    match ax {
        AxiomId::VertLeftUnit => {
            let tau = a.rewrite(0)?;
            let rt = c.check_rewrite(ctx, tau)?;
            Ok((tau.clone(), v(Rewrite::Id(rt.target), tau.clone())))
        }
        AxiomId::VertRightUnit => {
            let tau = a.rewrite(0)?;
            let rt = c.check_rewrite(ctx, tau)?;
            Ok((v(tau.clone(), Rewrite::Id(rt.source)), tau.clone()))
        }
        AxiomId::VertAssoc => {
            let (t2, t1, t0) = (a.rewrite(0)?.clone(), a.rewrite(1)?.clone(), a.rewrite(2)?.clone());
            Ok((v(v(t2.clone(), t1.clone()), t0.clone()), v(t2, v(t1, t0))))
        }
        AxiomId::IdPreservation => {
            let t = a.term(0)?;
            let (bs, inner) = typed_term_bindings(c, ctx, a.term_bindings(1)?)?;
            c.check_term(&inner, t)?;
            Ok((Rewrite::subst(Rewrite::Id(t.clone()), id_bindings(&bs)), Rewrite::Id(Term::subst(t.clone(), bs))))
        }
        AxiomId::Interchange => {
            let (tau2, tau1) = (a.rewrite(0)?, a.rewrite(1)?);
            let (s1, _, inner) = typed_rewrite_bindings(c, ctx, a.rewrite_bindings(2)?)?;
            let s2v = a.rewrites(3)?;
            if s2v.len() != s1.len() {
                return premise("interchange needs as many second-stage bindings as first-stage ones");
            }
            c.check_rewrite(&inner, tau1)?;
            let s2: Vec<Binding<Rewrite>> =
                s1.iter().zip(s2v).map(|(b, r)| Binding { var: b.var.clone(), ty: b.ty.clone(), value: r.clone() }).collect();
            let composed: Vec<Binding<Rewrite>> = s1
                .iter()
                .zip(s2v)
                .map(|(b, r)| Binding { var: b.var.clone(), ty: b.ty.clone(), value: v(r.clone(), b.value.clone()) })
                .collect();
            Ok((
                v(Rewrite::subst(tau2.clone(), s2), Rewrite::subst(tau1.clone(), s1)),
                Rewrite::subst(v(tau2.clone(), tau1.clone()), composed),
            ))
        }
        AxiomId::NatProj => {
            let k = a.index(0)?;
            let sigmas = a.rewrites(1)?;
            if k < 1 || k > sigmas.len() {
                return Err(TypeError::ProjRange { k, n: sigmas.len() }.into());
            }
            let rts = sigmas.iter().map(|s| c.check_rewrite(ctx, s)).collect::<std::result::Result<Vec<_>, _>>()?;
            let tys: Vec<Type> = rts.iter().map(|r| r.ty.clone()).collect();
            let src: Vec<Term> = rts.iter().map(|r| r.source.clone()).collect();
            let tgt: Vec<Term> = rts.iter().map(|r| r.target.clone()).collect();
            let whisker = Rewrite::subst(
                Rewrite::Id(Term::Var(positional_binder(k))),
                sigmas
                    .iter()
                    .zip(&tys)
                    .enumerate()
                    .map(|(i, (s, t))| Binding::typed(positional_binder(i + 1), t.clone(), s.clone()))
                    .collect(),
            );
            Ok((
                v(Rewrite::ProjCell { k, args: tgt, inv: false }, whisker),
                v(sigmas[k - 1].clone(), Rewrite::ProjCell { k, args: src, inv: false }),
            ))
        }
        AxiomId::NatSubId => {
            let tau = a.rewrite(0)?;
            let rt = c.check_rewrite(ctx, tau)?;
            let ids: Vec<Binding<Rewrite>> = id_bindings(&ctx.identity_bindings());
            Ok((
                v(Rewrite::SubId { term: rt.target, inv: false }, tau.clone()),
                v(Rewrite::subst(tau.clone(), ids), Rewrite::SubId { term: rt.source, inv: false }),
            ))
        }
        AxiomId::NatAssoc => {
            let tau = a.rewrite(0)?;
            let (mus, mu_rts, xs) = typed_rewrite_bindings(c, ctx, a.rewrite_bindings(2)?)?;
            let (sigmas, sigma_rts, ys) = typed_rewrite_bindings(c, &xs, a.rewrite_bindings(1)?)?;
            let rt = c.check_rewrite(&ys, tau)?;
            let lhs = v(
                Rewrite::Assoc {
                    body: rt.target.clone(),
                    inner: side_bindings(&sigmas, &sigma_rts, false),
                    outer: side_bindings(&mus, &mu_rts, false),
                    inv: false,
                },
                Rewrite::subst(Rewrite::subst(tau.clone(), sigmas.clone()), mus.clone()),
            );
            let pushed = sigmas.iter().map(|b| b.map(|s| Rewrite::subst(s.clone(), mus.clone()))).collect();
            let rhs = v(
                Rewrite::subst(tau.clone(), pushed),
                Rewrite::Assoc {
                    body: rt.source,
                    inner: side_bindings(&sigmas, &sigma_rts, true),
                    outer: side_bindings(&mus, &mu_rts, true),
                    inv: false,
                },
            );
            Ok((lhs, rhs))
        }
        AxiomId::BicloneCompat1 => {
            let t = a.term(0)?;
            let (us, xs) = typed_term_bindings(c, ctx, a.term_bindings(1)?)?;
            c.check_term(&xs, t)?;
            let args: Vec<Term> = us.iter().map(|b| b.value.clone()).collect();
            let subid = Rewrite::subst(Rewrite::SubId { term: t.clone(), inv: false }, id_bindings(&us));
            let assoc = Rewrite::Assoc { body: t.clone(), inner: xs.identity_bindings(), outer: us.clone(), inv: false };
            let projs = Rewrite::subst(
                Rewrite::Id(t.clone()),
                us.iter()
                    .enumerate()
                    .map(|(i, b)| Binding { var: b.var.clone(), ty: b.ty.clone(), value: Rewrite::ProjCell { k: i + 1, args: args.clone(), inv: false } })
                    .collect(),
            );
            Ok((v(v(projs, assoc), subid), Rewrite::Id(Term::subst(t.clone(), us))))
        }
        AxiomId::BicloneCompat2 => {
            let t = a.term(0)?;
            let (us, xs) = typed_term_bindings(c, ctx, a.term_bindings(3)?)?;
            let (vs, ys) = typed_term_bindings(c, &xs, a.term_bindings(2)?)?;
            let (ws, zs) = typed_term_bindings(c, &ys, a.term_bindings(1)?)?;
            c.check_term(&zs, t)?;
            let wv: Vec<Binding<Term>> = ws.iter().map(|b| b.map(|w| Term::subst(w.clone(), vs.clone()))).collect();
            let vu: Vec<Binding<Term>> = vs.iter().map(|b| b.map(|x| Term::subst(x.clone(), us.clone()))).collect();
            let third = Rewrite::subst(
                Rewrite::Assoc { body: t.clone(), inner: ws.clone(), outer: vs.clone(), inv: false },
                id_bindings(&us),
            );
            let second = Rewrite::Assoc { body: t.clone(), inner: wv, outer: us.clone(), inv: false };
            let first = Rewrite::subst(
                Rewrite::Id(t.clone()),
                ws.iter()
                    .map(|b| b.map(|w| Rewrite::Assoc { body: w.clone(), inner: vs.clone(), outer: us.clone(), inv: false }))
                    .collect(),
            );
            let rhs = v(
                Rewrite::Assoc { body: t.clone(), inner: ws.clone(), outer: vu, inv: false },
                Rewrite::Assoc { body: Term::subst(t.clone(), ws.clone()), inner: vs.clone(), outer: us.clone(), inv: false },
            );
            Ok((v(v(first, second), third), rhs))
        }
        AxiomId::ProdU1 => {
            let k = a.index(0)?;
            let u = a.term(1)?;
            let alphas = a.rewrites(2)?;
            if k < 1 || k > alphas.len() {
                return Err(TypeError::ProjRange { k, n: alphas.len() }.into());
            }
            let trans = Rewrite::TransposeProd { source: u.clone(), alphas: alphas.to_vec() };
            let rt = c.check_rewrite(ctx, &trans)?;
            let Term::Pair(ts) = rt.target else { return premise("transpose target is not a pair") };
            let rhs = v(Rewrite::CounitProd { k, terms: ts, inv: false }, Rewrite::proj_sub(k, &rt.ty, trans));
            Ok((alphas[k - 1].clone(), rhs))
        }
        AxiomId::ProdU2 => {
            let gamma = a.rewrite(0)?;
            let rt = c.check_rewrite(ctx, gamma)?;
            let Term::Pair(ts) = &rt.target else { return premise("U2 needs a rewrite into a pair") };
            let alphas = (1..=ts.len())
                .map(|i| v(Rewrite::CounitProd { k: i, terms: ts.clone(), inv: false }, Rewrite::proj_sub(i, &rt.ty, gamma.clone())))
                .collect();
            Ok((gamma.clone(), Rewrite::TransposeProd { source: rt.source, alphas }))
        }
        AxiomId::ExpU1 => {
            let u = a.term(0)?;
            let alpha = a.rewrite(1)?;
            let Some((gamma, x, dom)) = ctx.split_last() else { return premise("U1 needs a context ending in the bound variable") };
            let rt = c.check_rewrite(ctx, alpha)?;
            let uty = c.check_term(&gamma, u)?;
            let trans = Rewrite::TransposeExp { var: x.clone(), ty: dom.clone(), source: u.clone(), alpha: Box::new(alpha.clone()) };
            let rhs = v(
                Rewrite::CounitExp { var: x.clone(), body: rt.target, inv: false },
                Rewrite::eval_weakened(&uty, trans, &gamma, x),
            );
            Ok((alpha.clone(), rhs))
        }
        AxiomId::ExpU2 => {
            let gamma_rw = a.rewrite(0)?;
            let rt = c.check_rewrite(ctx, gamma_rw)?;
            let Term::Lam { var: x, ty: dom, body: t } = &rt.target else { return premise("U2 needs a rewrite into a lambda") };
            let inner = v(
                Rewrite::CounitExp { var: x.clone(), body: (**t).clone(), inv: false },
                Rewrite::eval_weakened(&rt.ty, gamma_rw.clone(), ctx, x),
            );
            let rhs = Rewrite::TransposeExp { var: x.clone(), ty: dom.clone(), source: rt.source, alpha: Box::new(inner) };
            Ok((gamma_rw.clone(), rhs))
        }
        AxiomId::InvLeft(k) | AxiomId::InvRight(k) => {
            let (phi, inv) = invertible_pair(c, ctx, k, &a)?;
            let rt = c.check_rewrite(ctx, &phi)?;
            if matches!(ax, AxiomId::InvLeft(_)) {
                Ok((v(inv, phi), Rewrite::Id(rt.source)))
            } else {
                Ok((v(phi, inv), Rewrite::Id(rt.target)))
            }
        }
    }
}

/// The forward cell and its inverse for an inverse-law instance.
fn invertible_pair(c: &Checker, ctx: &Context, k: Invertible, a: &Args) -> Result<(Rewrite, Rewrite)> {
    Ok(match k {
        Invertible::Assoc => {
            let (body, inner, outer) = (a.term(0)?.clone(), a.term_bindings(1)?.to_vec(), a.term_bindings(2)?.to_vec());
            (
                Rewrite::Assoc { body: body.clone(), inner: inner.clone(), outer: outer.clone(), inv: false },
                Rewrite::Assoc { body, inner, outer, inv: true },
            )
        }
        Invertible::SubId => {
            let t = a.term(0)?.clone();
            (Rewrite::SubId { term: t.clone(), inv: false }, Rewrite::SubId { term: t, inv: true })
        }
        Invertible::Proj | Invertible::CounitProd => {
            let idx = a.index(0)?;
            let terms = a.terms(1)?.to_vec();
            if k == Invertible::Proj {
                (Rewrite::ProjCell { k: idx, args: terms.clone(), inv: false }, Rewrite::ProjCell { k: idx, args: terms, inv: true })
            } else {
                (Rewrite::CounitProd { k: idx, terms: terms.clone(), inv: false }, Rewrite::CounitProd { k: idx, terms, inv: true })
            }
        }
        Invertible::UnitProd => {
            let t = a.term(0)?;
            let ty = c.check_term(ctx, t)?;
            let n = ty.as_prod().ok_or_else(|| TypeError::NotProduct(ty.clone()))?.len();
            (eta_times_typed(t, &ty, n), Rewrite::UnitProdInv(t.clone()))
        }
        Invertible::CounitExp => {
            let t = a.term(0)?.clone();
            let Some((_, x, _)) = ctx.split_last() else { return premise("counit needs a non-empty context") };
            (Rewrite::CounitExp { var: x.clone(), body: t.clone(), inv: false }, Rewrite::CounitExp { var: x.clone(), body: t, inv: true })
        }
        Invertible::UnitExp => {
            let x = a.binder(0)?;
            let u = a.term(1)?;
            let ty = c.check_term(ctx, u)?;
            let eta = eta_exp_with(ctx, u, &ty, x).map_err(|e| InstantiateError::Premise(e.to_string()))?;
            (eta, Rewrite::UnitExpInv { var: x.clone(), source: u.clone() })
        }
    })
}

/// Instantiates and checks that both sides are parallel.
pub fn check_instance(c: &Checker, ctx: &Context, inst: &AxiomInstance) -> Result<(Rewrite, Rewrite, RewriteType)> {
    let (l, r) = instantiate_axiom(c, ctx, inst)?;
    let lt = c.check_rewrite(ctx, &l)?;
    let rt = c.check_rewrite(ctx, &r)?;
    if !crate::syntax::alpha_eq(&lt.source, &rt.source) || !crate::syntax::alpha_eq(&lt.target, &rt.target) || lt.ty != rt.ty {
        return premise(format!("sides are not parallel: {} => {} versus {} => {}", lt.source, lt.target, rt.source, rt.target));
    }
    Ok((l, r, lt))
}
