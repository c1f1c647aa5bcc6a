//! Random rewrites, built outwards from a given source term.

use rand::seq::SliceRandom;
use rand::Rng;

use super::Gen;
use crate::signature::Type;
use crate::syntax::{alpha_eq, Binding, Context, Rewrite, Term};
use crate::typing::RewriteType;

/// `(k, n, ts)` when `t` is `proj[k/n]{pair(ts)}`.
fn counit_prod_shape(t: &Term) -> Option<(usize, Vec<Term>)> {
    let (body, bs) = t.as_subst()?;
    let Term::Proj { k, arg, .. } = body else { return None };
    let [b] = bs else { return None };
    match (&**arg, &b.value) {
        (Term::Var(p), Term::Pair(ts)) if *p == b.var => Some((*k, ts.clone())),
        _ => None,
    }
}

/// `u` when `t` is `pair(proj[1]{u}, ..., proj[n]{u})`.
fn unit_prod_shape(t: &Term) -> Option<Term> {
    let Term::Pair(ts) = t else { return None };
    let first = ts.first()?.as_subst()?.1.first()?.value.clone();
    Some(first)
}

/// `u` when `t` is `eval{↑u↑x, x}` with the weakening an explicit substitution.
fn eval_weakened_fun(t: &Term) -> Option<Term> {
    let (body, bs) = t.as_subst()?;
    if !matches!(body, Term::Eval(..)) {
        return None;
    }
    let (u, _) = bs.first()?.value.as_subst()?;
    Some(u.clone())
}

impl Gen<'_> {
    fn accepts(&self, ctx: &Context, r: &Rewrite, src: &Term) -> Option<RewriteType> {
        let rt = self.checker.check_rewrite(ctx, r).ok()?;
        alpha_eq(&rt.source, src).then_some(rt)
    }

    fn pseudo(&self) -> bool {
        !self.checker.lax
    }

    /// A rewrite whose source is `t`; falls back to the identity.
    pub fn rewrite_from(&mut self, ctx: &Context, t: &Term, depth: usize) -> Rewrite {
        let Ok(ty) = self.checker.check_term(ctx, t) else { return Rewrite::Id(t.clone()) };
        let mut options: Vec<u8> = vec![0, 1, 2, 3, 5, 6, 8, 9, 12, 13, 14, 15, 16, 17, 17];
        if depth > 0 {
            options.extend([4, 4, 7, 10, 11, 11, 18, 18]);
        }
        options.shuffle(&mut self.rng);
        for o in options {
            let Some(r) = self.rewrite_option(o, ctx, t, &ty, depth) else { continue };
            if self.accepts(ctx, &r, t).is_some() {
                return r;
            }
        }
        Rewrite::Id(t.clone())
    }

    fn rewrite_option(&mut self, o: u8, ctx: &Context, t: &Term, ty: &Type, depth: usize) -> Option<Rewrite> {
        let d = depth.saturating_sub(1);
        let tier = self.tier();
        Some(match o {
            0 => Rewrite::Id(t.clone()),
            1 => Rewrite::SubId { term: t.clone(), inv: false },
            2 => {
                let (mid, outer) = t.as_subst()?;
                let (body, inner) = mid.as_subst()?;
                Rewrite::Assoc { body: body.clone(), inner: inner.to_vec(), outer: outer.to_vec(), inv: false }
            }
            3 => {
                let (body, bs) = t.as_subst()?;
                let Term::Var(y) = body else { return None };
                let k = bs.iter().position(|b| &b.var == y)?;
                if bs.iter().enumerate().any(|(i, b)| i != k && b.var == *y) {
                    return None;
                }
                Rewrite::ProjCell { k: k + 1, args: bs.iter().map(|b| b.value.clone()).collect(), inv: false }
            }
            4 => {
                let (body, bs) = t.as_subst()?;
                let mut inner = Vec::with_capacity(bs.len());
                let mut rs = Vec::with_capacity(bs.len());
                for b in bs {
                    let bty = self.checker.check_term(ctx, &b.value).ok()?;
                    inner.push((b.var.clone(), bty.clone()));
                    rs.push(Binding { var: b.var.clone(), ty: b.ty.clone(), value: self.rewrite_from(ctx, &b.value, d) });
                }
                let body_rw = self.rewrite_from(&Context(inner), body, d);
                Rewrite::subst(body_rw, rs)
            }
            5 => {
                let Term::Const(c, args) = t else { return None };
                let surfaces: Vec<String> = self.sig().surfaces().filter(|s| s.from == **c).map(|s| s.name.clone()).collect();
                let s = self.pick(&surfaces)?;
                Rewrite::ConstCell(s.as_str().into(), args.clone())
            }
            6 => {
                let (body, bs) = t.as_subst()?;
                let ids = ctx.identity_bindings();
                if bs.len() != ids.len() || !bs.iter().zip(&ids).all(|(a, b)| a.var == b.var && a.value == b.value) {
                    return None;
                }
                Rewrite::SubId { term: body.clone(), inv: true }
            }
            7 => {
                let n = ty.as_prod()?.len();
                let alphas = (1..=n).map(|i| self.rewrite_from(ctx, &Term::proj_sub(i, ty, t.clone()), d)).collect();
                Rewrite::TransposeProd { source: t.clone(), alphas }
            }
            8 => {
                let (k, ts) = counit_prod_shape(t)?;
                Rewrite::CounitProd { k, terms: ts, inv: false }
            }
            9 if self.pseudo() => Rewrite::UnitProdInv(unit_prod_shape(t)?),
            10 => {
                let (a, _) = ty.as_arrow()?;
                let a = a.clone();
                let x = self.fresh();
                let ext = ctx.extend(x.clone(), a.clone());
                let src = Term::eval_weakened(ty, t.clone(), ctx, &x);
                let alpha = self.rewrite_from(&ext, &src, d);
                Rewrite::TransposeExp { var: x, ty: a, source: t.clone(), alpha: Box::new(alpha) }
            }
            11 => {
                let first = self.rewrite_from(ctx, t, d);
                let mid = self.checker.check_rewrite(ctx, &first).ok()?.target;
                let later = self.rewrite_from(ctx, &mid, d);
                Rewrite::vert(later, first)
            }
            12 if tier.has_products() && self.pseudo() => {
                let n = self.rng.gen_range(1..3);
                let k = self.rng.gen_range(1..=n);
                let mut ts = Vec::with_capacity(n);
                for i in 1..=n {
                    ts.push(if i == k { t.clone() } else { self.any_term_at(ctx, 1).0 });
                }
                Rewrite::CounitProd { k, terms: ts, inv: true }
            }
            13 => {
                let n = if tier.has_products() { self.rng.gen_range(1..3) } else { 1 };
                let k = self.rng.gen_range(1..=n);
                let mut ts = Vec::with_capacity(n);
                for i in 1..=n {
                    ts.push(if i == k { t.clone() } else { self.any_term_at(ctx, 1).0 });
                }
                Rewrite::ProjCell { k, args: ts, inv: true }
            }
            14 if tier.has_arrows() && self.pseudo() => {
                let (_, x, _) = ctx.split_last()?;
                Rewrite::CounitExp { var: x.clone(), body: t.clone(), inv: true }
            }
            15 if tier.has_arrows() => {
                let (_, x, _) = ctx.split_last()?;
                let u = eval_weakened_fun(t)?;
                let Term::Lam { var, body, .. } = u else { return None };
                if var != *x {
                    return None;
                }
                Rewrite::CounitExp { var, body: *body, inv: false }
            }
            17 => self.cell_on(ctx, t)?,
            18 => {
                let first = self.rewrite_from(ctx, t, d);
                let mid = self.checker.check_rewrite(ctx, &first).ok()?.target;
                Rewrite::vert(self.cell_on(ctx, &mid)?, first)
            }
            16 if tier.has_arrows() && self.pseudo() => {
                let Term::Lam { var, body, .. } = t else { return None };
                let u = eval_weakened_fun(body)?;
                Rewrite::UnitExpInv { var: var.clone(), source: u }
            }
            _ => return None,
        })
    }

    /// A rewrite that applies a surface somewhere inside `t`, reaching
    /// through substitutions, pairs and abstractions.
    fn cell_on(&mut self, ctx: &Context, t: &Term) -> Option<Rewrite> {
        match t {
            Term::Const(c, args) => {
                let surfaces: Vec<String> = self.sig().surfaces().filter(|s| s.from == **c).map(|s| s.name.clone()).collect();
                let s = self.pick(&surfaces)?;
                Some(Rewrite::ConstCell(s.as_str().into(), args.clone()))
            }
            Term::Subst(body, bs) => {
                let mut inner = Vec::with_capacity(bs.len());
                for b in bs {
                    inner.push((b.var.clone(), self.checker.check_term(ctx, &b.value).ok()?));
                }
                let ids = |bs: &[Binding<Term>]| bs.iter().map(|b| b.map(|v| Rewrite::Id(v.clone()))).collect::<Vec<_>>();
                if self.chance(0.5) {
                    if let Some(r) = self.cell_on(&Context(inner), body) {
                        return Some(Rewrite::subst(r, ids(bs)));
                    }
                }
                let i = self.below(bs.len());
                let r = self.cell_on(ctx, &bs.get(i)?.value)?;
                let mut rs = ids(bs);
                rs[i].value = r;
                Some(Rewrite::subst(Rewrite::Id((**body).clone()), rs))
            }
            Term::Pair(ts) => {
                let i = self.below(ts.len());
                let mut alphas = Vec::with_capacity(ts.len());
                for (j, tj) in ts.iter().enumerate() {
                    let counit = Rewrite::CounitProd { k: j + 1, terms: ts.clone(), inv: false };
                    alphas.push(if j == i { Rewrite::vert(self.cell_on(ctx, tj)?, counit) } else { counit });
                }
                Some(Rewrite::TransposeProd { source: t.clone(), alphas })
            }
            Term::Lam { var, ty, body } => {
                let ext = ctx.extend(var.clone(), ty.clone());
                let cell = self.cell_on(&ext, body)?;
                let counit = Rewrite::CounitExp { var: var.clone(), body: (**body).clone(), inv: false };
                Some(Rewrite::TransposeExp { var: var.clone(), ty: ty.clone(), source: t.clone(), alpha: Box::new(Rewrite::vert(cell, counit)) })
            }
            _ => None,
        }
    }

    /// A rewrite with a structural seed whose source has a special shape.
    fn seeded(&mut self, ctx: &Context) -> Option<Rewrite> {
        let tier = self.tier();
        let pseudo = self.pseudo();
        match self.below(4) {
            0 if tier.has_arrows() && !ctx.is_empty() => {
                let (_, x, _) = ctx.split_last()?;
                let x = x.clone();
                let body = self.any_term_at(ctx, 2).0;
                Some(Rewrite::CounitExp { var: x, body, inv: false })
            }
            1 if tier.has_arrows() && pseudo => {
                let a = self.base_ty();
                let b = self.base_ty();
                let u = self.term_of(ctx, &Type::arrow(a, b))?;
                Some(Rewrite::UnitExpInv { var: self.fresh(), source: u })
            }
            2 if tier.has_products() && pseudo => {
                let n = self.below(3);
                let ty = Type::prod((0..n).map(|_| self.base_ty()).collect());
                Some(Rewrite::UnitProdInv(self.term_of(ctx, &ty)?))
            }
            3 => {
                let (t, _) = self.any_term_at(ctx, 2);
                let (body, bs) = match t.as_subst() {
                    Some((b, bs)) => (b.clone(), bs.to_vec()),
                    None => return None,
                };
                // The same substitution pushed once more under a fresh outer one.
                let outer: Vec<Binding<Term>> = ctx.identity_bindings();
                Some(Rewrite::Assoc { body, inner: bs, outer, inv: true })
            }
            _ => None,
        }
    }

    /// A surface cell on random arguments, either applied directly or
    /// whiskered by rewrites of its arguments.
    fn cell_seed(&mut self, ctx: &Context) -> Option<Rewrite> {
        let surfaces: Vec<(String, String)> = self.sig().surfaces().map(|s| (s.name.clone(), s.from.clone())).collect();
        let (s, from) = self.pick(&surfaces)?;
        let source = self.sig().edge(&from)?.source.clone();
        let args = source.iter().map(|ty| self.term_of(ctx, ty)).collect::<Option<Vec<_>>>()?;
        if self.chance(0.5) {
            return Some(Rewrite::ConstCell(s.as_str().into(), args));
        }
        let binders: Vec<_> = source.iter().map(|_| self.fresh()).collect();
        let body = Rewrite::ConstCell(s.as_str().into(), binders.iter().map(|y| Term::Var(y.clone())).collect());
        let bs = binders
            .into_iter()
            .zip(source)
            .zip(args)
            .map(|((y, ty), a)| Binding::typed(y, ty, self.rewrite_from(ctx, &a, 1)))
            .collect();
        Some(Rewrite::subst(body, bs))
    }

    /// A random derivable rewrite in `ctx`.
    pub fn rewrite(&mut self, ctx: &Context) -> (Rewrite, RewriteType) {
        let depth = self.bounds.depth.min(2);
        let roll = self.below(100);
        if roll < 35 {
            if let Some(seed) = self.cell_seed(ctx) {
                if let Ok(rt) = self.checker.check_rewrite(ctx, &seed) {
                    let later = self.rewrite_from(ctx, &rt.target, 1);
                    let r = Rewrite::vert(later, seed);
                    if let Ok(rt) = self.checker.check_rewrite(ctx, &r) {
                        return (r, rt);
                    }
                }
            }
        }
        if roll >= 75 {
            if let Some(seed) = self.seeded(ctx) {
                if let Ok(rt) = self.checker.check_rewrite(ctx, &seed) {
                    let later = self.rewrite_from(ctx, &rt.target, 1);
                    let r = Rewrite::vert(later, seed);
                    if let Ok(rt) = self.checker.check_rewrite(ctx, &r) {
                        return (r, rt);
                    }
                }
            }
        }
        let (t, _) = self.any_term_at(ctx, 2);
        let r = self.rewrite_from(ctx, &t, depth);
        let rt = self.checker.check_rewrite(ctx, &r).expect("rewrite_from yields derivable rewrites");
        (r, rt)
    }

    /// A rewrite of type `ty`, or `None` when no term of that type is found.
    pub fn rewrite_of(&mut self, ctx: &Context, ty: &Type) -> Option<(Rewrite, RewriteType)> {
        let t = self.term_of(ctx, ty)?;
        let depth = self.bounds.depth.min(2);
        let r = self.rewrite_from(ctx, &t, depth);
        let rt = self.checker.check_rewrite(ctx, &r).ok()?;
        Some((r, rt))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{probe_signature, Gen};
    use crate::signature::Tier;

    #[test]
    fn generated_rewrites_type_check() {
        for tier in [Tier::Bicat, Tier::Products, Tier::Closed] {
            let sig = probe_signature(tier);
            let mut g = Gen::new(&sig, tier, 11);
            let mut non_identity = 0;
            for _ in 0..200 {
                let ctx = g.context();
                let (r, _) = g.rewrite(&ctx);
                if !matches!(r, crate::syntax::Rewrite::Id(_)) {
                    non_identity += 1;
                }
            }
            assert!(non_identity > 100, "{tier:?}: {non_identity}");
        }
    }
}
