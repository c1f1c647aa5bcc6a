//! Random arguments for the admissible rules.

use super::Gen;
use crate::derived::DerivedRuleId;
use crate::equational::MetaArg;
use crate::signature::Type;
use crate::syntax::Context;

impl Gen<'_> {
    fn prod_of(&mut self, n: usize) -> Type {
        Type::prod((0..n).map(|_| self.base_ty()).collect())
    }

    /// A context of `n` variables followed by a binder of base type.
    fn binding_ctx(&mut self, n: usize) -> Context {
        let mut ctx = self.context_of(n);
        let a = self.base_ty();
        ctx.0.push((self.fresh(), a));
        ctx
    }

    /// Arguments for `rule` where `n` is the product arity for the product
    /// rules and the context length before the binder for the exponential
    /// ones. `None` when no instance of that size exists or the attempt fails.
    pub fn derived_args(&mut self, rule: DerivedRuleId, n: usize) -> Option<(Context, Vec<MetaArg>)> {
        use DerivedRuleId as D;
        use MetaArg as M;
        let needs_index = matches!(rule, D::CounitProdNat | D::ProdTriangle2);
        if needs_index && n == 0 {
            return None;
        }
        let k = if n > 0 { 1 + self.below(n) } else { 0 };
        Some(match rule {
            D::PairId | D::ProdTriangle1 => {
                let ctx = self.context();
                let ts = (0..n).map(|_| self.any_term(&ctx).0).collect();
                (ctx, vec![M::Terms(ts)])
            }
            D::PairComp => {
                let ctx = self.context();
                let (mut later, mut first) = (Vec::with_capacity(n), Vec::with_capacity(n));
                for _ in 0..n {
                    let (r, rt) = self.rewrite(&ctx);
                    later.push(self.rewrite_from(&ctx, &rt.target, 1));
                    first.push(r);
                }
                (ctx, vec![M::Rewrites(later), M::Rewrites(first)])
            }
            D::EtaProdNat => {
                let ctx = self.context();
                let ty = self.prod_of(n);
                let (r, _) = self.rewrite_of(&ctx, &ty)?;
                (ctx, vec![M::Rewrite(r)])
            }
            D::CounitProdNat => {
                let ctx = self.context();
                let taus = (0..n).map(|_| self.rewrite(&ctx).0).collect();
                (ctx, vec![M::Index(k), M::Rewrites(taus)])
            }
            D::ProdTriangle2 => {
                let ctx = self.context();
                let ty = self.prod_of(n);
                let u = self.term_of(&ctx, &ty)?;
                (ctx, vec![M::Index(k), M::Term(u)])
            }
            D::LamId | D::ExpTriangle1 => {
                let ctx = self.binding_ctx(n);
                let t = self.any_term(&ctx).0;
                (ctx, vec![M::Term(t)])
            }
            D::LamComp => {
                let ctx = self.binding_ctx(n);
                let (first, rt) = self.rewrite(&ctx);
                let later = self.rewrite_from(&ctx, &rt.target, 1);
                (ctx, vec![M::Rewrite(later), M::Rewrite(first)])
            }
            D::EtaExpNat => {
                let ctx = self.context_of(n);
                let ty = Type::arrow(self.base_ty(), self.base_ty());
                let (r, _) = self.rewrite_of(&ctx, &ty)?;
                (ctx, vec![M::Binder(self.fresh()), M::Rewrite(r)])
            }
            D::CounitExpNat => {
                let ctx = self.binding_ctx(n);
                let (r, _) = self.rewrite(&ctx);
                (ctx, vec![M::Rewrite(r)])
            }
            D::ExpTriangle2 => {
                let ctx = self.binding_ctx(n);
                let (gamma, _, a) = ctx.split_last()?;
                let ty = Type::arrow(a.clone(), self.base_ty());
                let u = self.term_of(&gamma, &ty)?;
                (ctx, vec![M::Term(u)])
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::probe_signature;
    use super::*;
    use crate::derived::synth_admissible;
    use crate::signature::Tier;

    #[test]
    fn random_derived_instances_synthesize() {
        let sig = probe_signature(Tier::Closed);
        let mut g = Gen::new(&sig, Tier::Closed, 2);
        for rule in DerivedRuleId::ALL {
            for n in 0..=3 {
                for _ in 0..3 {
                    let Some((ctx, args)) = g.derived_args(rule, n) else { continue };
                    if let Err(e) = synth_admissible(&g.checker, &ctx, rule, &args) {
                        panic!("{rule} n={n}: {e}");
                    }
                }
            }
        }
    }
}
