//! Deterministic rewriting of rewrites by `≡`-steps, recorded as derivations.
//!
//! A [`Calc`] tracks a current rewrite together with a derivation of
//! `start ≡ current`. Local steps are found in post-order and lifted to the
//! whole rewrite by the congruence forms.

use crate::equational::{check_derivation, AxiomId, AxiomInstance, Derivation, MetaArg};
use crate::syntax::{alpha_eq_rewrite, Binding, Context, Rewrite, Term};
use crate::typing::Checker;

use super::admissible::SynthError;

const STEP_LIMIT: usize = 20_000;

pub(crate) fn ax(axiom: AxiomId, args: Vec<MetaArg>) -> Derivation {
    Derivation::Axiom(AxiomInstance::new(axiom, args))
}

/// A local step proposer: returns a derivation whose left side is `r`.
pub(crate) type Rule = fn(&Context, &Rewrite) -> Option<Derivation>;

pub(crate) struct Calc<'a, 'c> {
    c: &'a Checker<'c>,
    ctx: Context,
    pub cur: Rewrite,
    proof: Option<Derivation>,
    steps: usize,
}

impl<'a, 'c> Calc<'a, 'c> {
    pub fn new(c: &'a Checker<'c>, ctx: &Context, start: Rewrite) -> Self {
        Calc { c, ctx: ctx.clone(), cur: start, proof: None, steps: 0 }
    }

    fn push(&mut self, d: Derivation, rhs: Rewrite) {
        self.proof = Some(match self.proof.take() {
            None => d,
            Some(p) => Derivation::trans(p, d),
        });
        self.cur = rhs;
        self.steps += 1;
    }

    /// Applies `d` at the root; its left side must be the current rewrite.
    pub fn apply(&mut self, d: Derivation) -> Result<(), SynthError> {
        let concl = check_derivation(self.c, &self.ctx, &d).map_err(SynthError::Check)?;
        if !alpha_eq_rewrite(&concl.lhs, &self.cur) {
            return Err(SynthError::Stuck { left: self.cur.to_string(), right: concl.lhs.to_string() });
        }
        self.push(d, concl.rhs);
        Ok(())
    }

    /// Applies `rule` at the first position (post-order) where it fires.
    pub fn rewrite_first(&mut self, rule: Rule) -> bool {
        match find(self.c, &self.ctx, &self.cur, rule) {
            Some((d, rhs)) => {
                self.push(d, rhs);
                true
            }
            None => false,
        }
    }

    /// Rewrites to normal form under the cleanup, splitting, folding and
    /// reassociation steps, tried in that order of priority.
    pub fn normalize(&mut self) -> Result<(), SynthError> {
        const RULES: [Rule; 7] = [id_pres, right_unit, left_unit, fold_counit, fold_counit_chain, split_whisker, reassoc];
        loop {
            if self.steps > STEP_LIMIT {
                return Err(SynthError::Diverged(self.cur.to_string()));
            }
            if !RULES.iter().any(|r| self.rewrite_first(*r)) {
                return Ok(());
            }
        }
    }

    pub fn finish(self) -> (Derivation, Rewrite) {
        let proof = self.proof.unwrap_or_else(|| Derivation::Refl(self.cur.clone()));
        (proof, self.cur)
    }
}

fn find(c: &Checker, ctx: &Context, r: &Rewrite, rule: Rule) -> Option<(Derivation, Rewrite)> {
    let refl = |x: &Rewrite| Derivation::Refl(x.clone());
    match r {
        Rewrite::Vert(later, first) => {
            if let Some((d, l)) = find(c, ctx, later, rule) {
                return Some((Derivation::cong_vert(d, refl(first)), Rewrite::vert(l, (**first).clone())));
            }
            if let Some((d, f)) = find(c, ctx, first, rule) {
                return Some((Derivation::cong_vert(refl(later), d), Rewrite::vert((**later).clone(), f)));
            }
        }
        Rewrite::Subst(body, bs) => {
            let binders: Vec<_> = bs.iter().map(|b| b.var.clone()).collect();
            let args = || bs.iter().map(|b| refl(&b.value)).collect::<Vec<_>>();
            for (i, b) in bs.iter().enumerate() {
                if let Some((d, v)) = find(c, ctx, &b.value, rule) {
                    let mut ds = args();
                    ds[i] = d;
                    let mut nbs = bs.clone();
                    nbs[i].value = v;
                    let cong = Derivation::CongSubst { binders, body: Box::new(refl(body)), args: ds };
                    return Some((cong, Rewrite::Subst(body.clone(), nbs)));
                }
            }
            let mut inner = Vec::with_capacity(bs.len());
            for b in bs {
                inner.push((b.var.clone(), c.check_rewrite(ctx, &b.value).ok()?.ty));
            }
            if let Some((d, nb)) = find(c, &Context(inner), body, rule) {
                let cong = Derivation::CongSubst { binders, body: Box::new(d), args: args() };
                return Some((cong, Rewrite::Subst(Box::new(nb), bs.clone())));
            }
        }
        Rewrite::TransposeProd { source, alphas } => {
            for (i, a) in alphas.iter().enumerate() {
                if let Some((d, na)) = find(c, ctx, a, rule) {
                    let mut comps: Vec<_> = alphas.iter().map(refl).collect();
                    comps[i] = d;
                    let mut nalphas = alphas.clone();
                    nalphas[i] = na;
                    let cong = Derivation::CongTransposeProd { source: source.clone(), comps };
                    return Some((cong, Rewrite::TransposeProd { source: source.clone(), alphas: nalphas }));
                }
            }
        }
        Rewrite::TransposeExp { var, ty, source, alpha } => {
            if let Some((d, na)) = find(c, &ctx.extend(var.clone(), ty.clone()), alpha, rule) {
                let cong = Derivation::CongTransposeExp { var: var.clone(), ty: ty.clone(), source: source.clone(), body: Box::new(d) };
                return Some((
                    cong,
                    Rewrite::TransposeExp { var: var.clone(), ty: ty.clone(), source: source.clone(), alpha: Box::new(na) },
                ));
            }
        }
        _ => {}
    }
    let d = rule(ctx, r)?;
    let concl = check_derivation(c, ctx, &d).ok()?;
    alpha_eq_rewrite(&concl.lhs, r).then_some((d, concl.rhs))
}

fn as_id(r: &Rewrite) -> Option<&Term> {
    match r {
        Rewrite::Id(t) => Some(t),
        _ => None,
    }
}

/// `t-whiskered identities collapse: id(t){x -> id(u)} ≡ id(t{x -> u})`.
pub(crate) fn id_pres(_: &Context, r: &Rewrite) -> Option<Derivation> {
    let Rewrite::Subst(body, bs) = r else { return None };
    let t = as_id(body)?;
    let tbs = bs.iter().map(|b| Some(Binding { var: b.var.clone(), ty: b.ty.clone(), value: as_id(&b.value)?.clone() })).collect::<Option<Vec<_>>>()?;
    Some(ax(AxiomId::IdPreservation, vec![MetaArg::Term(t.clone()), MetaArg::TermBindings(tbs)]))
}

pub(crate) fn right_unit(_: &Context, r: &Rewrite) -> Option<Derivation> {
    let Rewrite::Vert(later, first) = r else { return None };
    as_id(first)?;
    Some(ax(AxiomId::VertRightUnit, vec![MetaArg::Rewrite((**later).clone())]))
}

pub(crate) fn left_unit(_: &Context, r: &Rewrite) -> Option<Derivation> {
    let Rewrite::Vert(later, first) = r else { return None };
    as_id(later)?;
    Some(Derivation::symm(ax(AxiomId::VertLeftUnit, vec![MetaArg::Rewrite((**first).clone())])))
}

pub(crate) fn reassoc(_: &Context, r: &Rewrite) -> Option<Derivation> {
    let Rewrite::Vert(later, first) = r else { return None };
    let Rewrite::Vert(a, b) = &**later else { return None };
    Some(ax(AxiomId::VertAssoc, vec![MetaArg::Rewrite((**a).clone()), MetaArg::Rewrite((**b).clone()), MetaArg::Rewrite((**first).clone())]))
}

/// `id(s) ≡ id(s) | id(s)`.
fn duplicate_id(r: &Rewrite) -> Derivation {
    Derivation::symm(ax(AxiomId::VertRightUnit, vec![MetaArg::Rewrite(r.clone())]))
}

/// Splits a whisker of composites into a composite of whiskers by interchange,
/// padding identity components with `id | id`.
pub(crate) fn split_whisker(_: &Context, r: &Rewrite) -> Option<Derivation> {
    let Rewrite::Subst(body, bs) = r else { return None };
    let is_vert = |x: &Rewrite| matches!(x, Rewrite::Vert(..));
    let ok = |x: &Rewrite| is_vert(x) || as_id(x).is_some();
    if !ok(body) || !bs.iter().all(|b| ok(&b.value)) || !(is_vert(body) || bs.iter().any(|b| is_vert(&b.value))) {
        return None;
    }
    let halves = |x: &Rewrite| match x {
        Rewrite::Vert(l, f) => ((**l).clone(), (**f).clone()),
        _ => (x.clone(), x.clone()),
    };
    let pad = |x: &Rewrite| if is_vert(x) { Derivation::Refl(x.clone()) } else { duplicate_id(x) };
    let padded = Derivation::CongSubst {
        binders: bs.iter().map(|b| b.var.clone()).collect(),
        body: Box::new(pad(body)),
        args: bs.iter().map(|b| pad(&b.value)).collect(),
    };
    let (tau2, tau1) = halves(body);
    let s1 = bs.iter().map(|b| Binding { var: b.var.clone(), ty: b.ty.clone(), value: halves(&b.value).1 }).collect();
    let s2 = bs.iter().map(|b| halves(&b.value).0).collect();
    let inter = ax(
        AxiomId::Interchange,
        vec![MetaArg::Rewrite(tau2), MetaArg::Rewrite(tau1), MetaArg::RewriteBindings(s1), MetaArg::Rewrites(s2)],
    );
    Some(Derivation::trans(padded, Derivation::symm(inter)))
}

/// Folds `counit | whisker(transpose)` back to the transposed component (U1 read right to left).
pub(crate) fn fold_counit(_: &Context, r: &Rewrite) -> Option<Derivation> {
    let Rewrite::Vert(later, first) = r else { return None };
    let Rewrite::Subst(_, bs) = &**first else { return None };
    match &**later {
        Rewrite::CounitProd { k, inv: false, .. } => {
            let [b] = bs.as_slice() else { return None };
            let Rewrite::TransposeProd { source, alphas } = &b.value else { return None };
            Some(Derivation::symm(ax(
                AxiomId::ProdU1,
                vec![MetaArg::Index(*k), MetaArg::Term(source.clone()), MetaArg::Rewrites(alphas.clone())],
            )))
        }
        Rewrite::CounitExp { var, inv: false, .. } => {
            let [f, _] = bs.as_slice() else { return None };
            let Rewrite::Subst(inner, _) = &f.value else { return None };
            let Rewrite::TransposeExp { var: y, source, alpha, .. } = &**inner else { return None };
            if y != var {
                return None;
            }
            Some(Derivation::symm(ax(AxiomId::ExpU1, vec![MetaArg::Term(source.clone()), MetaArg::Rewrite((**alpha).clone())])))
        }
        _ => None,
    }
}

/// `counit | (whisker | rest)`: regroup to the left and fold.
pub(crate) fn fold_counit_chain(ctx: &Context, r: &Rewrite) -> Option<Derivation> {
    let Rewrite::Vert(c, tail) = r else { return None };
    let Rewrite::Vert(w, rest) = &**tail else { return None };
    let head = Rewrite::vert((**c).clone(), (**w).clone());
    let fold = fold_counit(ctx, &head)?;
    let regroup = Derivation::symm(ax(
        AxiomId::VertAssoc,
        vec![MetaArg::Rewrite((**c).clone()), MetaArg::Rewrite((**w).clone()), MetaArg::Rewrite((**rest).clone())],
    ));
    Some(Derivation::trans(regroup, Derivation::cong_vert(fold, Derivation::Refl((**rest).clone()))))
}
