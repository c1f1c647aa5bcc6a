//! Seeded random generation of well-typed syntax, axiom instances,
//! signatures, finite categories and homomorphisms.

mod derived;
mod instance;
mod models;
mod rewrite;

pub use instance::{random_cong, random_instance, ProbeCase};
pub use models::{category_library, probe_signature, random_hom, random_signature, small_library};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::signature::{Signature, Tier, Type};
use crate::syntax::{Binding, Context, Term, Var};
use crate::typing::Checker;

/// Size bounds for generated syntax.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub depth: usize,
    pub ctx: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { depth: 3, ctx: 3 }
    }
}

/// A random source of syntax over a fixed signature and tier.
pub struct Gen<'a> {
    pub checker: Checker<'a>,
    pub rng: ChaCha8Rng,
    pub bounds: Bounds,
    /// Types that may occur in contexts and as intermediate types.
    pub types: Vec<Type>,
    fresh: usize,
}

impl<'a> Gen<'a> {
    pub fn new(sig: &'a Signature, tier: Tier, seed: u64) -> Gen<'a> {
        let checker = Checker::new(sig, tier);
        let types = default_types(sig, tier);
        Gen { checker, rng: ChaCha8Rng::seed_from_u64(seed), bounds: Bounds::default(), types, fresh: 0 }
    }

    pub fn lax(mut self, lax: bool) -> Self {
        self.checker = self.checker.lax(lax);
        self
    }

    pub fn tier(&self) -> Tier {
        self.checker.tier
    }

    pub fn sig(&self) -> &'a Signature {
        self.checker.sig
    }

    /// A variable name not produced before by this generator.
    pub fn fresh(&mut self) -> Var {
        self.fresh += 1;
        Var::from(format!("v{}", self.fresh).as_str())
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n.max(1))
    }

    pub fn pick<T: Clone>(&mut self, xs: &[T]) -> Option<T> {
        xs.choose(&mut self.rng).cloned()
    }

    /// A type from the pool, biased towards base types.
    pub fn ty(&mut self) -> Type {
        let bases: Vec<Type> = self.types.iter().filter(|t| matches!(t, Type::Base(_))).cloned().collect();
        if !bases.is_empty() && self.chance(0.6) {
            return self.pick(&bases).expect("non-empty");
        }
        self.pick(&self.types.clone()).expect("type pool is non-empty")
    }

    pub fn base_ty(&mut self) -> Type {
        let bases: Vec<Type> = self.types.iter().filter(|t| matches!(t, Type::Base(_))).cloned().collect();
        self.pick(&bases).expect("at least one sort")
    }

    /// A context of fresh variables: unary at tier b, otherwise up to the bound.
    pub fn context(&mut self) -> Context {
        let n = if self.tier() == Tier::Bicat { 1 } else { self.rng.gen_range(0..=self.bounds.ctx) };
        self.context_of(n)
    }

    pub fn nonempty_context(&mut self) -> Context {
        let n = if self.tier() == Tier::Bicat { 1 } else { self.rng.gen_range(1..=self.bounds.ctx.max(1)) };
        self.context_of(n)
    }

    pub fn context_of(&mut self, n: usize) -> Context {
        Context((0..n).map(|_| (self.fresh(), self.ty())).collect())
    }

    /// Width of a binder list for an explicit substitution.
    fn binder_width(&mut self) -> usize {
        if self.tier() == Tier::Bicat {
            1
        } else {
            self.rng.gen_range(0..=2)
        }
    }

    /// A term of type `ty` in `ctx`, or `None` if the attempt dead-ends.
    pub fn term(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        let mut options: Vec<u8> = vec![0, 1];
        if depth > 0 {
            options.extend([2, 2, 1]);
            if self.tier().has_products() {
                options.push(4);
            }
            if self.tier().has_arrows() {
                options.push(6);
            }
        }
        if ty.as_prod().is_some() {
            options.extend([3, 3]);
        }
        if ty.as_arrow().is_some() {
            options.extend([5, 5]);
        }
        options.shuffle(&mut self.rng);
        for o in options {
            let t = match o {
                0 => self.var_of(ctx, ty),
                1 => self.constant(ctx, ty, depth),
                2 => self.substitution(ctx, ty, depth),
                3 => self.pair(ctx, ty, depth),
                4 => self.projection(ctx, ty, depth),
                5 => self.lambda(ctx, ty, depth),
                _ => self.application(ctx, ty, depth),
            };
            if t.is_some() {
                return t;
            }
        }
        None
    }

    /// A term of some type in `ctx`, retrying until one is found.
    pub fn any_term(&mut self, ctx: &Context) -> (Term, Type) {
        let depth = self.bounds.depth;
        self.any_term_at(ctx, depth)
    }

    pub fn any_term_at(&mut self, ctx: &Context, depth: usize) -> (Term, Type) {
        for _ in 0..64 {
            let ty = if !ctx.is_empty() && self.chance(0.5) { ctx.0[self.below(ctx.len())].1.clone() } else { self.ty() };
            let d = self.rng.gen_range(0..=depth);
            if let Some(t) = self.term(ctx, &ty, d) {
                if self.checker.check_term(ctx, &t).is_ok() {
                    return (t, ty);
                }
            }
        }
        self.fallback(ctx)
    }

    /// Some term of the given type, retrying.
    pub fn term_of(&mut self, ctx: &Context, ty: &Type) -> Option<Term> {
        for _ in 0..32 {
            let d = self.rng.gen_range(0..=self.bounds.depth);
            if let Some(t) = self.term(ctx, ty, d) {
                if self.checker.check_term(ctx, &t).is_ok() {
                    return Some(t);
                }
            }
        }
        None
    }

    /// A variable of the context, or the empty pair, or a closed constant.
    fn fallback(&mut self, ctx: &Context) -> (Term, Type) {
        if let Some((x, ty)) = ctx.0.first() {
            return (Term::Var(x.clone()), ty.clone());
        }
        if self.tier().has_products() {
            return (Term::Pair(vec![]), Type::unit());
        }
        let x = self.fresh();
        let a = self.base_ty();
        let body = Term::Var(x.clone());
        (Term::lam(&x, a.clone(), body), Type::arrow(a.clone(), a))
    }

    fn var_of(&mut self, ctx: &Context, ty: &Type) -> Option<Term> {
        let vs: Vec<Var> = ctx.0.iter().filter(|(_, t)| t == ty).map(|(x, _)| x.clone()).collect();
        self.pick(&vs).map(Term::Var)
    }

    fn constant(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        let edges: Vec<(String, Vec<Type>)> =
            self.sig().edges().filter(|e| &e.target == ty).map(|e| (e.name.clone(), e.source.clone())).collect();
        let (name, source) = self.pick(&edges)?;
        if depth == 0 && !source.is_empty() {
            return None;
        }
        let d = depth.saturating_sub(1);
        let args = source.iter().map(|s| self.term(ctx, s, d)).collect::<Option<Vec<_>>>()?;
        Some(Term::konst(&name, args))
    }

    fn substitution(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        let n = self.binder_width();
        let inner = self.context_of(n);
        let body = self.term(&inner, ty, depth - 1)?;
        let mut bs = Vec::with_capacity(n);
        for (x, xty) in &inner.0 {
            let v = self.term(ctx, xty, depth - 1)?;
            bs.push(if self.chance(0.5) { Binding::typed(x.clone(), xty.clone(), v) } else { Binding::new(x.clone(), v) });
        }
        Some(Term::subst(body, bs))
    }

    fn pair(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        let tys = ty.as_prod()?.to_vec();
        let d = depth.saturating_sub(1);
        Some(Term::Pair(tys.iter().map(|t| self.term(ctx, t, d)).collect::<Option<Vec<_>>>()?))
    }

    fn projection(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        let n = self.rng.gen_range(1..=2);
        let k = self.rng.gen_range(1..=n);
        let tys: Vec<Type> = (1..=n).map(|i| if i == k { ty.clone() } else { self.base_ty() }).collect();
        let arg = self.term(ctx, &Type::prod(tys), depth - 1)?;
        Some(Term::proj(k, n, arg))
    }

    fn lambda(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        let (a, b) = ty.as_arrow()?;
        let (a, b) = (a.clone(), b.clone());
        let x = self.fresh();
        let body = self.term(&ctx.extend(x.clone(), a.clone()), &b, depth.saturating_sub(1))?;
        Some(Term::lam(&x, a, body))
    }

    fn application(&mut self, ctx: &Context, ty: &Type, depth: usize) -> Option<Term> {
        let doms: Vec<Type> =
            self.types.iter().filter_map(|t| t.as_arrow().filter(|(_, c)| *c == ty).map(|(d, _)| d.clone())).collect();
        let a = self.pick(&doms)?;
        let f = self.term(ctx, &Type::arrow(a.clone(), ty.clone()), depth - 1)?;
        let x = self.term(ctx, &a, depth - 1)?;
        Some(Term::eval(f, x))
    }
}

/// Base sorts; at tier x the unit and binary products of sorts; at the closed
/// tier also arrows between sorts. Larger types have exponentials beyond the
/// caps of the finite-category backend.
pub fn default_types(sig: &Signature, tier: Tier) -> Vec<Type> {
    let bases: Vec<Type> = sig.sorts().map(|s| Type::Base(s.clone())).collect();
    let mut out = bases.clone();
    if tier.has_products() {
        out.push(Type::unit());
        for a in &bases {
            for b in &bases {
                out.push(Type::prod(vec![a.clone(), b.clone()]));
            }
        }
    }
    if tier.has_arrows() {
        for a in &bases {
            for b in &bases {
                out.push(Type::arrow(a.clone(), b.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_terms_type_check() {
        for tier in [Tier::Bicat, Tier::Products, Tier::Closed] {
            let sig = probe_signature(tier);
            let mut g = Gen::new(&sig, tier, 7);
            for _ in 0..200 {
                let ctx = g.context();
                let (t, ty) = g.any_term(&ctx);
                assert_eq!(g.checker.check_term(&ctx, &t).unwrap(), ty, "{t}");
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let sig = probe_signature(Tier::Closed);
        let run = |seed| {
            let mut g = Gen::new(&sig, Tier::Closed, seed);
            let ctx = g.context();
            g.any_term(&ctx).0.to_string()
        };
        assert_eq!(run(3), run(3));
    }
}
