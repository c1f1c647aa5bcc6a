//! Random instances of the axiom schemas and of the congruence rules.

use rand::Rng;

use super::Gen;
use crate::equational::{check_derivation, AxiomId, AxiomInstance, CongRule, Derivation, Invertible, MetaArg};
use crate::signature::{Tier, Type};
use crate::syntax::{Binding, Context, Rewrite, Term};

/// A context together with a derivation to be checked and probed in it.
#[derive(Debug, Clone)]
pub struct ProbeCase {
    pub ctx: Context,
    pub derivation: Derivation,
}

impl Gen<'_> {
    fn width(&mut self, min: usize) -> usize {
        if self.tier() == Tier::Bicat {
            1
        } else {
            self.rng.gen_range(min..=2)
        }
    }

    /// Term bindings for fresh binders of random types, with the binder context.
    pub fn term_bindings(&mut self, ctx: &Context) -> Option<(Vec<Binding<Term>>, Context)> {
        let n = self.width(0);
        let mut bs = Vec::with_capacity(n);
        let mut inner = Vec::with_capacity(n);
        for _ in 0..n {
            let ty = self.ty();
            let v = self.term_of(ctx, &ty)?;
            let x = self.fresh();
            bs.push(Binding::typed(x.clone(), ty.clone(), v));
            inner.push((x, ty));
        }
        Some((bs, Context(inner)))
    }

    /// Rewrite bindings for fresh binders of random types, with the binder context.
    pub fn rewrite_bindings(&mut self, ctx: &Context) -> Option<(Vec<Binding<Rewrite>>, Context)> {
        let n = self.width(0);
        let mut bs = Vec::with_capacity(n);
        let mut inner = Vec::with_capacity(n);
        for _ in 0..n {
            let ty = self.ty();
            let (r, _) = self.rewrite_of(ctx, &ty)?;
            let x = self.fresh();
            bs.push(Binding::typed(x.clone(), ty.clone(), r));
            inner.push((x, ty));
        }
        Some((bs, Context(inner)))
    }

    fn product_ty(&mut self, min: usize) -> Type {
        let n = self.rng.gen_range(min..=3);
        Type::prod((0..n).map(|_| self.base_ty()).collect())
    }

    fn arrow_ty(&mut self) -> Type {
        let (a, b) = (self.base_ty(), self.base_ty());
        Type::arrow(a, b)
    }

    /// A context whose last variable has a base type, for the exponential schemas.
    fn binding_context(&mut self) -> Context {
        let n = if self.tier() == Tier::Bicat { 0 } else { self.rng.gen_range(0..self.bounds.ctx.max(1)) };
        let mut ctx = self.context_of(n);
        let a = self.base_ty();
        ctx.0.push((self.fresh(), a));
        ctx
    }

    fn context_for(&mut self, axiom: AxiomId) -> Context {
        match axiom {
            AxiomId::ExpU1 | AxiomId::InvLeft(Invertible::CounitExp) | AxiomId::InvRight(Invertible::CounitExp) => self.binding_context(),
            _ => self.context(),
        }
    }

    /// Arguments of `axiom` in `ctx`, or `None` when this attempt dead-ends.
    pub fn axiom_args(&mut self, axiom: AxiomId, ctx: &Context) -> Option<Vec<MetaArg>> {
        use MetaArg as M;
        Some(match axiom {
            AxiomId::VertLeftUnit | AxiomId::VertRightUnit | AxiomId::NatSubId => vec![M::Rewrite(self.rewrite(ctx).0)],
            AxiomId::VertAssoc => {
                let (r0, rt0) = self.rewrite(ctx);
                let r1 = self.rewrite_from(ctx, &rt0.target, 1);
                let t1 = self.checker.check_rewrite(ctx, &r1).ok()?.target;
                let r2 = self.rewrite_from(ctx, &t1, 1);
                vec![M::Rewrite(r2), M::Rewrite(r1), M::Rewrite(r0)]
            }
            AxiomId::IdPreservation | AxiomId::BicloneCompat1 => {
                let (bs, inner) = self.term_bindings(ctx)?;
                vec![M::Term(self.any_term(&inner).0), M::TermBindings(bs)]
            }
            AxiomId::Interchange => {
                let (s1, inner) = self.rewrite_bindings(ctx)?;
                let (tau1, rt1) = self.rewrite(&inner);
                let tau2 = self.rewrite_from(&inner, &rt1.target, 1);
                let mut s2 = Vec::with_capacity(s1.len());
                for b in &s1 {
                    let tgt = self.checker.check_rewrite(ctx, &b.value).ok()?.target;
                    s2.push(self.rewrite_from(ctx, &tgt, 1));
                }
                vec![M::Rewrite(tau2), M::Rewrite(tau1), M::RewriteBindings(s1), M::Rewrites(s2)]
            }
            AxiomId::NatProj => {
                let n = self.width(1);
                let k = self.rng.gen_range(1..=n);
                let sigmas = (0..n).map(|_| self.rewrite(ctx).0).collect();
                vec![M::Index(k), M::Rewrites(sigmas)]
            }
            AxiomId::NatAssoc => {
                let (mus, xs) = self.rewrite_bindings(ctx)?;
                let (sigmas, ys) = self.rewrite_bindings(&xs)?;
                vec![M::Rewrite(self.rewrite(&ys).0), M::RewriteBindings(sigmas), M::RewriteBindings(mus)]
            }
            AxiomId::BicloneCompat2 => {
                let (us, xs) = self.term_bindings(ctx)?;
                let (vs, ys) = self.term_bindings(&xs)?;
                let (ws, zs) = self.term_bindings(&ys)?;
                vec![M::Term(self.any_term(&zs).0), M::TermBindings(ws), M::TermBindings(vs), M::TermBindings(us)]
            }
            AxiomId::ProdU1 => {
                let ty = self.product_ty(1);
                let n = ty.as_prod().map_or(0, <[Type]>::len);
                let u = self.term_of(ctx, &ty)?;
                let alphas = (1..=n).map(|i| self.rewrite_from(ctx, &Term::proj_sub(i, &ty, u.clone()), 2)).collect();
                vec![M::Index(self.rng.gen_range(1..=n)), M::Term(u), M::Rewrites(alphas)]
            }
            AxiomId::ProdU2 => vec![M::Rewrite(self.into_pair(ctx)?)],
            AxiomId::ExpU1 => {
                let (gamma, x, a) = ctx.split_last()?;
                let b = self.base_ty();
                let fty = Type::arrow(a.clone(), b);
                let u = self.term_of(&gamma, &fty)?;
                let alpha = self.rewrite_from(ctx, &Term::eval_weakened(&fty, u.clone(), &gamma, x), 2);
                vec![M::Term(u), M::Rewrite(alpha)]
            }
            AxiomId::ExpU2 => vec![M::Rewrite(self.into_lambda(ctx)?)],
            AxiomId::InvLeft(k) | AxiomId::InvRight(k) => match k {
                Invertible::Assoc => {
                    let (outer, xs) = self.term_bindings(ctx)?;
                    let (inner, ys) = self.term_bindings(&xs)?;
                    vec![M::Term(self.any_term(&ys).0), M::TermBindings(inner), M::TermBindings(outer)]
                }
                Invertible::SubId => vec![M::Term(self.any_term(ctx).0)],
                Invertible::Proj | Invertible::CounitProd => {
                    let n = if k == Invertible::Proj { self.width(1) } else { self.rng.gen_range(1..=3) };
                    let idx = self.rng.gen_range(1..=n);
                    vec![M::Index(idx), M::Terms((0..n).map(|_| self.any_term(ctx).0).collect())]
                }
                Invertible::UnitProd => {
                    let ty = self.product_ty(0);
                    vec![M::Term(self.term_of(ctx, &ty)?)]
                }
                Invertible::CounitExp => vec![M::Term(self.any_term(ctx).0)],
                Invertible::UnitExp => {
                    let ty = self.arrow_ty();
                    let u = self.term_of(ctx, &ty)?;
                    vec![M::Binder(self.fresh()), M::Term(u)]
                }
            },
        })
    }

    /// A rewrite whose target is a pair: some rewrite followed by a product transpose.
    pub fn into_pair(&mut self, ctx: &Context) -> Option<Rewrite> {
        let ty = self.product_ty(0);
        let s = self.term_of(ctx, &ty)?;
        let r = self.rewrite_from(ctx, &s, 1);
        let u = self.checker.check_rewrite(ctx, &r).ok()?.target;
        if self.chance(0.2) {
            if let Term::Pair(_) = u {
                return Some(r);
            }
        }
        let n = ty.as_prod().map_or(0, <[Type]>::len);
        let alphas = (1..=n).map(|i| self.rewrite_from(ctx, &Term::proj_sub(i, &ty, u.clone()), 2)).collect();
        Some(Rewrite::vert(Rewrite::TransposeProd { source: u, alphas }, r))
    }

    /// A rewrite whose target is a lambda: some rewrite followed by an exponential transpose.
    pub fn into_lambda(&mut self, ctx: &Context) -> Option<Rewrite> {
        let ty = self.arrow_ty();
        let s = self.term_of(ctx, &ty)?;
        let r = self.rewrite_from(ctx, &s, 1);
        let u = self.checker.check_rewrite(ctx, &r).ok()?.target;
        let (a, _) = ty.as_arrow()?;
        let x = self.fresh();
        let ext = ctx.extend(x.clone(), a.clone());
        let alpha = self.rewrite_from(&ext, &Term::eval_weakened(&ty, u.clone(), ctx, &x), 2);
        Some(Rewrite::vert(Rewrite::TransposeExp { var: x, ty: a.clone(), source: u, alpha: Box::new(alpha) }, r))
    }

    /// A checked derivation of one of the unit laws on `r`.
    fn unit_law(&mut self, r: Rewrite) -> Derivation {
        let axiom = match self.below(4) {
            0 => AxiomId::VertLeftUnit,
            1 => AxiomId::VertRightUnit,
            2 => AxiomId::NatSubId,
            _ => return Derivation::Refl(r),
        };
        let d = Derivation::Axiom(AxiomInstance::new(axiom, vec![MetaArg::Rewrite(r)]));
        if self.chance(0.5) {
            Derivation::symm(d)
        } else {
            d
        }
    }

    fn derivation_of(&mut self, ctx: &Context, ty: &Type) -> Option<Derivation> {
        let (r, _) = self.rewrite_of(ctx, ty)?;
        Some(self.unit_law(r))
    }

    fn derivation_from(&mut self, ctx: &Context, t: &Term) -> Derivation {
        let r = self.rewrite_from(ctx, t, 2);
        self.unit_law(r)
    }
}

/// A random instance of `axiom`, retrying until the arguments check.
pub fn random_instance(g: &mut Gen, axiom: AxiomId) -> Option<ProbeCase> {
    for _ in 0..64 {
        let ctx = g.context_for(axiom);
        let Some(args) = g.axiom_args(axiom, &ctx) else { continue };
        let derivation = Derivation::Axiom(AxiomInstance::new(axiom, args));
        if check_derivation(&g.checker, &ctx, &derivation).is_ok() {
            return Some(ProbeCase { ctx, derivation });
        }
    }
    None
}

/// A random use of a congruence rule over unit-law sub-derivations.
pub fn random_cong(g: &mut Gen, rule: CongRule) -> Option<ProbeCase> {
    for _ in 0..64 {
        let ctx = g.context();
        let d = match rule {
            CongRule::Vert => {
                let (first, rt) = g.rewrite(&ctx);
                let later = g.rewrite_from(&ctx, &rt.target, 1);
                let (df, dl) = (g.unit_law(first), g.unit_law(later));
                Derivation::cong_vert(dl, df)
            }
            CongRule::Subst => {
                let n = g.width(0);
                let mut binders = Vec::with_capacity(n);
                let mut inner = Vec::with_capacity(n);
                let mut args = Vec::with_capacity(n);
                for _ in 0..n {
                    let ty = g.ty();
                    let Some(d) = g.derivation_of(&ctx, &ty) else { break };
                    let x = g.fresh();
                    binders.push(x.clone());
                    inner.push((x, ty));
                    args.push(d);
                }
                if args.len() != n {
                    continue;
                }
                let (body, _) = g.rewrite(&Context(inner));
                Derivation::CongSubst { binders, body: Box::new(g.unit_law(body)), args }
            }
            CongRule::TransposeProd => {
                let ty = g.product_ty(0);
                let Some(u) = g.term_of(&ctx, &ty) else { continue };
                let n = ty.as_prod().map_or(0, <[Type]>::len);
                let comps = (1..=n).map(|i| g.derivation_from(&ctx, &Term::proj_sub(i, &ty, u.clone()))).collect();
                Derivation::CongTransposeProd { source: u, comps }
            }
            CongRule::TransposeExp => {
                let ty = g.arrow_ty();
                let Some(u) = g.term_of(&ctx, &ty) else { continue };
                let (a, _) = ty.as_arrow().expect("arrow type");
                let a = a.clone();
                let x = g.fresh();
                let ext = ctx.extend(x.clone(), a.clone());
                let body = g.derivation_from(&ext, &Term::eval_weakened(&ty, u.clone(), &ctx, &x));
                Derivation::CongTransposeExp { var: x, ty: a, source: u, body: Box::new(body) }
            }
        };
        if check_derivation(&g.checker, &ctx, &d).is_ok() {
            return Some(ProbeCase { ctx, derivation: d });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::probe_signature;
    use super::*;
    use crate::equational::{axiom_catalog, RuleId};

    #[test]
    fn every_rule_has_instances() {
        for tier in [Tier::Bicat, Tier::Products, Tier::Closed] {
            let sig = probe_signature(tier);
            let mut g = Gen::new(&sig, tier, 5);
            for rule in axiom_catalog(tier, false) {
                for _ in 0..5 {
                    let case = match rule {
                        RuleId::Axiom(a) => random_instance(&mut g, a),
                        RuleId::Cong(c) => random_cong(&mut g, c),
                    };
                    assert!(case.is_some(), "no instance of {} at {tier:?}", rule.name());
                }
            }
        }
    }
}
