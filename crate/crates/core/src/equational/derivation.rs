//! Proof objects for `≡` and their checker.

use serde::Serialize;

use super::axioms::{check_instance, AxiomInstance};
use crate::signature::Type;
use crate::syntax::{alpha_eq_rewrite, Binding, Context, Rewrite, Term, Var};
use crate::typing::{Checker, RewriteType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    Refl(Rewrite),
    Axiom(AxiomInstance),
    Symm(Box<Derivation>),
    Trans(Box<Derivation>, Box<Derivation>),
    /// Congruence for `later | first`.
    CongVert(Box<Derivation>, Box<Derivation>),
    /// Congruence for `τ{x_i -> σ_i}`; the body is checked in the binder context.
    CongSubst { binders: Vec<Var>, body: Box<Derivation>, args: Vec<Derivation> },
    CongTransposeProd { source: Term, comps: Vec<Derivation> },
    CongTransposeExp { var: Var, ty: Type, source: Term, body: Box<Derivation> },
}

impl Derivation {
    pub fn symm(d: Derivation) -> Derivation {
        Derivation::Symm(Box::new(d))
    }

    pub fn trans(a: Derivation, b: Derivation) -> Derivation {
        Derivation::Trans(Box::new(a), Box::new(b))
    }

    /// Left-nested transitive chain; `None` on an empty list.
    pub fn chain(steps: Vec<Derivation>) -> Option<Derivation> {
        let mut it = steps.into_iter();
        let first = it.next()?;
        Some(it.fold(first, Derivation::trans))
    }

    pub fn cong_vert(later: Derivation, first: Derivation) -> Derivation {
        Derivation::CongVert(Box::new(later), Box::new(first))
    }

    /// Number of steps (nodes).
    pub fn size(&self) -> usize {
        match self {
            Derivation::Refl(_) | Derivation::Axiom(_) => 1,
            Derivation::Symm(d) => 1 + d.size(),
            Derivation::Trans(a, b) | Derivation::CongVert(a, b) => 1 + a.size() + b.size(),
            Derivation::CongSubst { body, args, .. } => 1 + body.size() + args.iter().map(Derivation::size).sum::<usize>(),
            Derivation::CongTransposeProd { comps, .. } => 1 + comps.iter().map(Derivation::size).sum::<usize>(),
            Derivation::CongTransposeExp { body, .. } => 1 + body.size(),
        }
    }

    fn rule(&self) -> String {
        match self {
            Derivation::Refl(_) => "refl".into(),
            Derivation::Axiom(i) => i.axiom.name(),
            Derivation::Symm(_) => "symm".into(),
            Derivation::Trans(..) => "trans".into(),
            Derivation::CongVert(..) => "cong-vert".into(),
            Derivation::CongSubst { .. } => "cong-subst".into(),
            Derivation::CongTransposeProd { .. } => "cong-transx".into(),
            Derivation::CongTransposeExp { .. } => "cong-transe".into(),
        }
    }
}

/// The conclusion `lhs ≡ rhs : source => target : ty`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conclusion {
    pub lhs: Rewrite,
    pub rhs: Rewrite,
    pub judgement: RewriteType,
}

/// A failed step: its pre-order index, rule, and the mismatch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub step: usize,
    pub rule: String,
    pub message: String,
    pub expected: Option<String>,
    pub found: Option<String>,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "step {} ({}): {}", self.step, self.rule, self.message)?;
        if let (Some(e), Some(x)) = (&self.expected, &self.found) {
            write!(f, "; expected {e}, found {x}")?;
        }
        Ok(())
    }
}

type Result<T> = std::result::Result<T, Diagnostic>;

struct Walker<'a, 'c> {
    c: &'a Checker<'c>,
    next: usize,
}

impl Walker<'_, '_> {
    fn fail<T>(&self, step: usize, d: &Derivation, message: impl Into<String>, expected: Option<String>, found: Option<String>) -> Result<T> {
        Err(Diagnostic { step, rule: d.rule(), message: message.into(), expected, found })
    }

    fn typed(&self, step: usize, d: &Derivation, ctx: &Context, r: &Rewrite) -> Result<RewriteType> {
        self.c.check_rewrite(ctx, r).or_else(|e| self.fail(step, d, format!("ill-typed rewrite {r}: {e}"), None, None))
    }

    fn conclude(&self, step: usize, d: &Derivation, ctx: &Context, lhs: Rewrite, rhs: Rewrite) -> Result<Conclusion> {
        let lt = self.typed(step, d, ctx, &lhs)?;
        let rt = self.typed(step, d, ctx, &rhs)?;
        if !crate::syntax::alpha_eq(&lt.source, &rt.source) || !crate::syntax::alpha_eq(&lt.target, &rt.target) || lt.ty != rt.ty {
            return self.fail(
                step,
                d,
                "sides are not parallel",
                Some(format!("{} => {}", lt.source, lt.target)),
                Some(format!("{} => {}", rt.source, rt.target)),
            );
        }
        Ok(Conclusion { lhs, rhs, judgement: lt })
    }

    fn walk(&mut self, ctx: &Context, d: &Derivation) -> Result<Conclusion> {
        let step = self.next;
        self.next += 1;
        match d {
            Derivation::Refl(r) => {
                let rt = self.typed(step, d, ctx, r)?;
                Ok(Conclusion { lhs: r.clone(), rhs: r.clone(), judgement: rt })
            }
            Derivation::Axiom(inst) => match check_instance(self.c, ctx, inst) {
                Ok((lhs, rhs, judgement)) => Ok(Conclusion { lhs, rhs, judgement }),
                Err(e) => self.fail(step, d, e.to_string(), None, None),
            },
            Derivation::Symm(inner) => {
                let c = self.walk(ctx, inner)?;
                Ok(Conclusion { lhs: c.rhs, rhs: c.lhs, judgement: c.judgement })
            }
            Derivation::Trans(a, b) => {
                let ca = self.walk(ctx, a)?;
                let cb = self.walk(ctx, b)?;
                if !alpha_eq_rewrite(&ca.rhs, &cb.lhs) {
                    return self.fail(step, d, "middle rewrites differ", Some(ca.rhs.to_string()), Some(cb.lhs.to_string()));
                }
                Ok(Conclusion { lhs: ca.lhs, rhs: cb.rhs, judgement: ca.judgement })
            }
            Derivation::CongVert(later, first) => {
                let cl = self.walk(ctx, later)?;
                let cf = self.walk(ctx, first)?;
                self.conclude(step, d, ctx, Rewrite::vert(cl.lhs, cf.lhs), Rewrite::vert(cl.rhs, cf.rhs))
            }
            Derivation::CongSubst { binders, body, args } => {
                if binders.len() != args.len() {
                    return self.fail(step, d, "binder and argument counts differ", Some(binders.len().to_string()), Some(args.len().to_string()));
                }
                let mut cargs = Vec::with_capacity(args.len());
                for a in args {
                    cargs.push(self.walk(ctx, a)?);
                }
                let inner = Context(binders.iter().cloned().zip(cargs.iter().map(|c| c.judgement.ty.clone())).collect());
                let cb = self.walk(&inner, body)?;
                let side = |left: bool| -> Vec<Binding<Rewrite>> {
                    binders
                        .iter()
                        .zip(&cargs)
                        .map(|(x, c)| Binding::typed(x.clone(), c.judgement.ty.clone(), if left { c.lhs.clone() } else { c.rhs.clone() }))
                        .collect()
                };
                self.conclude(step, d, ctx, Rewrite::subst(cb.lhs, side(true)), Rewrite::subst(cb.rhs, side(false)))
            }
            Derivation::CongTransposeProd { source, comps } => {
                let mut cs = Vec::with_capacity(comps.len());
                for c in comps {
                    cs.push(self.walk(ctx, c)?);
                }
                let (l, r): (Vec<_>, Vec<_>) = cs.into_iter().map(|c| (c.lhs, c.rhs)).unzip();
                self.conclude(
                    step,
                    d,
                    ctx,
                    Rewrite::TransposeProd { source: source.clone(), alphas: l },
                    Rewrite::TransposeProd { source: source.clone(), alphas: r },
                )
            }
            Derivation::CongTransposeExp { var, ty, source, body } => {
                if ctx.contains(var) {
                    return self.fail(step, d, format!("binder `{var}` clashes with the context"), None, None);
                }
                let cb = self.walk(&ctx.extend(var.clone(), ty.clone()), body)?;
                let mk = |alpha: Rewrite| Rewrite::TransposeExp { var: var.clone(), ty: ty.clone(), source: source.clone(), alpha: Box::new(alpha) };
                self.conclude(step, d, ctx, mk(cb.lhs), mk(cb.rhs))
            }
        }
    }
}

/// Checks a derivation in `ctx` and returns its conclusion.
pub fn check_derivation(c: &Checker, ctx: &Context, d: &Derivation) -> Result<Conclusion> {
    Walker { c, next: 0 }.walk(ctx, d)
}

/// Checks that `d` derives exactly `lhs ≡ rhs` (up to α).
pub fn check_equation(c: &Checker, ctx: &Context, lhs: &Rewrite, rhs: &Rewrite, d: &Derivation) -> Result<Conclusion> {
    let concl = check_derivation(c, ctx, d)?;
    for (want, got, side) in [(lhs, &concl.lhs, "left"), (rhs, &concl.rhs, "right")] {
        if !alpha_eq_rewrite(want, got) {
            return Err(Diagnostic {
                step: 0,
                rule: d.rule(),
                message: format!("conclusion does not match the declared {side} side"),
                expected: Some(want.to_string()),
                found: Some(got.to_string()),
            });
        }
    }
    Ok(concl)
}
