//! Soundness and freeness probes, and the coherence law harness.

use serde::Serialize;

use super::engine::{Result, SemError};
use super::interp::Interpreter;
use super::model::{Functor, Model, StrictModel, Verdict};
use crate::signature::{Signature, Type};
use crate::syntax::{positional_binder, Context, Rewrite, Term};
use crate::typing::Checker;

impl StrictModel {
    pub fn interpreter<'a>(&'a self, checker: &'a Checker<'a>) -> Interpreter<'a> {
        Interpreter::new(&self.engine, &self.hom, checker)
    }
}

/// True iff the two rewrites interpret to the same 2-cell.
pub fn soundness_probe(model: &StrictModel, checker: &Checker, ctx: &Context, lhs: &Rewrite, rhs: &Rewrite) -> Result<bool> {
    let i = model.interpreter(checker);
    Ok(i.interpret_rewrite(ctx, lhs)? == i.interpret_rewrite(ctx, rhs)?)
}

/// The image of a term computed from the model's own structure: projections,
/// tupling, composition, evaluation and currying of whole tables.
pub fn structural_image(model: &StrictModel, sig: &Signature, ctx: &Context, t: &Term) -> Result<Functor> {
    let tys: Vec<Type> = ctx.types().cloned().collect();
    let tuple = |fs: Vec<Functor>| if fs.is_empty() { model.terminal(&Type::prod(tys.clone())) } else { model.tuple(&fs) };
    match t {
        Term::Var(x) => {
            let k = ctx.0.iter().rposition(|(y, _)| y == x).ok_or_else(|| SemError::IllTyped(format!("unbound variable {x}")))?;
            model.proj(&tys, k + 1)
        }
        Term::Const(c, args) => {
            let args = args.iter().map(|a| structural_image(model, sig, ctx, a)).collect::<Result<Vec<_>>>()?;
            model.comp1(&model.edge(sig, c)?, &tuple(args)?)
        }
        Term::Subst(body, bs) => {
            let images = bs.iter().map(|b| structural_image(model, sig, ctx, &b.value)).collect::<Result<Vec<_>>>()?;
            let inner = Context(bs.iter().zip(&images).map(|(b, f)| (b.var.clone(), f.cod.clone())).collect());
            model.comp1(&structural_image(model, sig, &inner, body)?, &tuple(images)?)
        }
        Term::Pair(ts) => tuple(ts.iter().map(|a| structural_image(model, sig, ctx, a)).collect::<Result<_>>()?),
        Term::Proj { k, arg, .. } => {
            let f = structural_image(model, sig, ctx, arg)?;
            let factors = f.cod.as_prod().ok_or_else(|| SemError::IllTyped(format!("{arg} is not a tuple")))?.to_vec();
            model.comp1(&model.proj(&factors, *k)?, &f)
        }
        Term::Lam { var, ty, body } => model.curry(&structural_image(model, sig, &ctx.extend(var.clone(), ty.clone()), body)?),
        Term::Eval(f, a) => {
            let (f, a) = (structural_image(model, sig, ctx, f)?, structural_image(model, sig, ctx, a)?);
            let (dom, cod) = f.cod.as_arrow().map(|(d, c)| (d.clone(), c.clone())).ok_or_else(|| SemError::IllTyped("applying a non-function".into()))?;
            model.comp1(&model.eval(&dom, &cod)?, &model.tuple(&[f, a])?)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub generators_checked: usize,
    pub composites_checked: usize,
    pub failures: Vec<String>,
}

impl FreenessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the interpretation restricts to `h` on generators and is
/// strict on the sampled composites.
pub fn freeness_check(model: &StrictModel, checker: &Checker, samples: &[(Context, Term)]) -> FreenessReport {
    let sig = checker.sig;
    let interp = model.interpreter(checker);
    let mut report = FreenessReport::default();
    for e in sig.edges() {
        report.generators_checked += 1;
        let ctx = Context((1..=e.source.len()).map(positional_binder).zip(e.source.iter().cloned()).collect());
        let t = Term::Const(e.name.as_str().into(), ctx.vars().map(|x| Term::Var(x.clone())).collect());
        match (interp.interpret_term(&ctx, &t), model.hom.edges.get(&e.name)) {
            (Ok(v), Some(h)) if v == **h => {}
            (Ok(_), _) => report.failures.push(format!("generator {}: image differs from h", e.name)),
            (Err(err), _) => report.failures.push(format!("generator {}: {err}", e.name)),
        }
    }
    for s in sig.surfaces() {
        report.generators_checked += 1;
        let Some(e) = sig.edge(&s.from) else { continue };
        let ctx = Context((1..=e.source.len()).map(positional_binder).zip(e.source.iter().cloned()).collect());
        let r = Rewrite::ConstCell(s.name.as_str().into(), ctx.vars().map(|x| Term::Var(x.clone())).collect());
        match (interp.interpret_rewrite(&ctx, &r), model.hom.surfaces.get(&s.name)) {
            (Ok(v), Some(h)) if v == **h => {}
            (Ok(_), _) => report.failures.push(format!("generator {}: image differs from h", s.name)),
            (Err(err), _) => report.failures.push(format!("generator {}: {err}", s.name)),
        }
    }
    for (ctx, t) in samples {
        report.composites_checked += 1;
        match (interp.interpret_term(ctx, t), structural_image(model, sig, ctx, t)) {
            (Ok(a), Ok(b)) if a == *b.table => {}
            (Ok(_), Ok(_)) => report.failures.push(format!("composite {t}: not strict")),
            (Err(e), _) | (_, Err(e)) => report.failures.push(format!("composite {t}: {e}")),
        }
    }
    report
}

/// The triangle and pentagon equations on the given 1-cells, which must be composable as
/// `k ∘ h ∘ g ∘ f`.
pub fn coherence_laws<M: Model>(m: &M, k: &M::One, h: &M::One, g: &M::One, f: &M::One, mid: &M::Obj) -> Result<(Verdict, Verdict)> {
    let id = m.id1(mid)?;
    let tri_l = m.vert(&m.horiz(&m.id2(g)?, &m.left_unit(f)?)?, &m.assoc(g, &id, f)?)?;
    let tri_r = m.horiz(&m.right_unit(g)?, &m.id2(f)?)?;
    let pen_l = m.vert(
        &m.vert(&m.horiz(&m.id2(k)?, &m.assoc(h, g, f)?)?, &m.assoc(k, &m.comp1(h, g)?, f)?)?,
        &m.horiz(&m.assoc(k, h, g)?, &m.id2(f)?)?,
    )?;
    let pen_r = m.vert(&m.assoc(k, h, &m.comp1(g, f)?)?, &m.assoc(&m.comp1(k, h)?, g, f)?)?;
    Ok((m.eq2(&tri_l, &tri_r), m.eq2(&pen_l, &pen_r)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::semantics::hom::{BackendKind, GraphHom};
    use crate::semantics::value::{Arr, BaseCat, FunctorVal, NatVal, Obj};
    use crate::signature::{Edge, Surface, Tier};
    use crate::syntax::var;

    fn arrow_sig() -> Signature {
        let a = Type::base("A");
        let e = |n: &str| Edge { name: n.into(), source: vec![a.clone()], target: a.clone() };
        let s = |n: &str| Surface { name: n.into(), from: "c".into(), to: "d".into() };
        Signature::build(&["A"], vec![e("c"), e("d")], vec![s("s"), s("s2")], Tier::Closed).unwrap()
    }

    /// `A` is the arrow category `0 → 1`; `c` is constantly 0, `d` constantly 1,
    /// `s` and `s2` are both the unique transformation between them.
    fn arrow_hom() -> GraphHom {
        let mut h = GraphHom::new(BackendKind::FinCat);
        let cat = BaseCat::preorder(2, |i, j| i <= j);
        let up = cat.arrow_named("0<1").unwrap() as u32;
        let (id0, id1) = (cat.ids[0] as u32, cat.ids[1] as u32);
        h.sorts.insert("A".into(), Arc::new(cat));
        let c = Arc::new(FunctorVal { obj: vec![Obj::Base(0), Obj::Base(0)], arr: vec![Arr::Base(id0); 3] });
        let d = Arc::new(FunctorVal { obj: vec![Obj::Base(1), Obj::Base(1)], arr: vec![Arr::Base(id1); 3] });
        h.edges.insert("c".into(), c.clone());
        h.edges.insert("d".into(), d.clone());
        h.surfaces.insert("s".into(), Arc::new(NatVal { src: c.clone(), tgt: d.clone(), comps: vec![Arr::Base(up); 2] }));
        h.surfaces.insert("s2".into(), Arc::new(NatVal { src: c, tgt: d, comps: vec![Arr::Base(up); 2] }));
        h
    }

    #[test]
    fn lambda_identity_in_finite_sets() {
        let sig = Signature::build(&["A"], vec![], vec![], Tier::Closed).unwrap();
        let mut h = GraphHom::new(BackendKind::FinSet);
        h.sorts.insert("A".into(), Arc::new(BaseCat::discrete(2)));
        let m = StrictModel::new(h);
        let c = Checker::new(&sig, Tier::Closed);
        let a = Type::base("A");
        let v = m.interpreter(&c).interpret_term(&Context::empty(), &Term::lam("x", a.clone(), Term::var("x"))).unwrap();
        let exp = m.engine.cat(&Type::arrow(a.clone(), a)).unwrap();
        assert_eq!(exp.objs.len(), 4);
        let Obj::Fun(f) = &v.obj[0] else { panic!("expected a function") };
        assert_eq!(f.obj, vec![Obj::Base(0), Obj::Base(1)]);
    }

    #[test]
    fn structural_rewrites_are_identities() {
        let sig = arrow_sig();
        let m = StrictModel::new(arrow_hom());
        let c = Checker::new(&sig, Tier::Closed);
        let x = Context::single("x", Type::base("A"));
        let t = Term::konst("c", vec![Term::var("x")]);
        let r = Rewrite::SubId { term: t.clone(), inv: false };
        let n = m.interpreter(&c).interpret_rewrite(&x, &r).unwrap();
        assert_eq!(n.src, n.tgt);
        assert!(soundness_probe(&m, &c, &x, &r, &Rewrite::SubId { term: t, inv: false }).unwrap());
    }

    #[test]
    fn constant_surfaces_are_their_images() {
        let sig = arrow_sig();
        let mut h = arrow_hom();
        let m = StrictModel::new(h.clone());
        let c = Checker::new(&sig, Tier::Closed);
        let x = Context::single("x", Type::base("A"));
        let s = Rewrite::ConstCell("s".into(), vec![Term::var("x")]);
        let s2 = Rewrite::ConstCell("s2".into(), vec![Term::var("x")]);
        let n = m.interpreter(&c).interpret_rewrite(&x, &s).unwrap();
        assert_eq!(&n, &*m.hom.surfaces["s"]);
        assert!(soundness_probe(&m, &c, &x, &s, &s2).unwrap());

        // `c` and `d` become the identity, with `s2` the identity transformation.
        let cat = h.sorts["A"].clone();
        let id = Arc::new(FunctorVal { obj: vec![Obj::Base(0), Obj::Base(1)], arr: (0..3).map(Arr::Base).collect() });
        let comps: Vec<Arr> = cat.ids.iter().map(|&i| Arr::Base(i as u32)).collect();
        h.edges.insert("c".into(), id.clone());
        h.edges.insert("d".into(), id.clone());
        h.surfaces.insert("s".into(), Arc::new(NatVal { src: id.clone(), tgt: id.clone(), comps: comps.clone() }));
        h.surfaces.insert("s2".into(), Arc::new(NatVal { src: id.clone(), tgt: id, comps }));
        let m = StrictModel::new(h);
        assert!(soundness_probe(&m, &c, &x, &s, &s2).unwrap());
    }

    #[test]
    fn distinct_surfaces_are_refuted() {
        let a = Type::base("A");
        let sig = Signature::build(
            &["A"],
            vec![Edge { name: "c".into(), source: vec![a.clone()], target: a.clone() }],
            vec![Surface { name: "s".into(), from: "c".into(), to: "c".into() }, Surface { name: "t".into(), from: "c".into(), to: "c".into() }],
            Tier::Bicat,
        )
        .unwrap();
        let mut h = GraphHom::new(BackendKind::FinCat);
        h.sorts.insert("A".into(), Arc::new(BaseCat::monoid(2, |x, y| (x + y) % 2)));
        let id = Arc::new(FunctorVal { obj: vec![Obj::Base(0)], arr: vec![Arr::Base(0), Arr::Base(1)] });
        h.edges.insert("c".into(), id.clone());
        h.surfaces.insert("s".into(), Arc::new(NatVal { src: id.clone(), tgt: id.clone(), comps: vec![Arr::Base(0)] }));
        h.surfaces.insert("t".into(), Arc::new(NatVal { src: id.clone(), tgt: id, comps: vec![Arr::Base(1)] }));
        let m = StrictModel::new(h);
        let c = Checker::new(&sig, Tier::Bicat);
        let x = Context::single("x", a);
        let s = Rewrite::ConstCell("s".into(), vec![Term::var("x")]);
        let t = Rewrite::ConstCell("t".into(), vec![Term::var("x")]);
        assert!(!soundness_probe(&m, &c, &x, &s, &t).unwrap());
    }

    #[test]
    fn freeness_on_an_arrow_category() {
        let sig = arrow_sig();
        let m = StrictModel::new(arrow_hom());
        let c = Checker::new(&sig, Tier::Closed);
        let a = Type::base("A");
        let ctx = Context::new(vec![(var("x"), a.clone()), (var("y"), a.clone())]);
        let samples = vec![
            (ctx.clone(), Term::konst("c", vec![Term::var("y")])),
            (ctx.clone(), Term::proj(2, 2, Term::Pair(vec![Term::var("x"), Term::konst("d", vec![Term::var("x")])]))),
            (ctx.clone(), Term::eval(Term::lam("z", a.clone(), Term::konst("c", vec![Term::var("z")])), Term::var("x"))),
            (ctx.clone(), Term::subst(Term::konst("d", vec![Term::var("w")]), vec![crate::syntax::Binding::new(var("w"), Term::var("x"))])),
            (ctx, Term::lam("z", a, Term::Pair(vec![Term::var("z"), Term::var("y")]))),
        ];
        let r = freeness_check(&m, &c, &samples);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!((r.generators_checked, r.composites_checked), (4, 5));
    }

    #[test]
    fn strict_coherence() {
        let sig = arrow_sig();
        let m = StrictModel::new(arrow_hom());
        let a = Type::base("A");
        let f = m.edge(&sig, "c").unwrap();
        let g = m.edge(&sig, "d").unwrap();
        let (tri, pen) = coherence_laws(&m, &f, &g, &f, &g, &Type::prod(vec![a])).unwrap();
        assert_eq!((tri, pen), (Verdict::Equal, Verdict::Equal));
    }
}
