//! The `≡`-relation on rewrites: axiom catalog, instantiation and proof checking.
//!
//! Invertibility is stated as two laws per invertible constructor and
//! congruence as one derivation form per constructor with rewrite arguments.

pub mod axioms;
pub mod derivation;

pub use axioms::{
    all_axioms, axiom_available, axiom_catalog, check_instance, instantiate_axiom, ArgKind, AxiomId, AxiomInstance, CongRule,
    InstantiateError, Invertible, MetaArg, RuleId,
};
pub use derivation::{check_derivation, check_equation, Conclusion, Derivation, Diagnostic};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{Edge, Signature, Surface, Tier, Type};
    use crate::syntax::{alpha_eq_rewrite, var, Binding, Context, Rewrite, Term};
    use crate::typing::Checker;

    fn a() -> Type {
        Type::base("A")
    }

    fn sig() -> Signature {
        let edges = vec![
            Edge { name: "c".into(), source: vec![a()], target: a() },
            Edge { name: "d".into(), source: vec![a()], target: a() },
        ];
        let surfaces = vec![Surface { name: "s".into(), from: "c".into(), to: "d".into() }];
        Signature::build(&["A"], edges, surfaces, Tier::Closed).unwrap()
    }

    fn sigma() -> Rewrite {
        Rewrite::ConstCell("s".into(), vec![Term::var("x")])
    }

    #[test]
    fn left_unit_instance() {
        let s = sig();
        let c = Checker::new(&s, Tier::Bicat);
        let ctx = Context::single("x", a());
        let inst = AxiomInstance::new(AxiomId::VertLeftUnit, vec![MetaArg::Rewrite(sigma())]);
        let (l, r) = instantiate_axiom(&c, &ctx, &inst).unwrap();
        assert_eq!(l, sigma());
        assert_eq!(r, Rewrite::vert(Rewrite::Id(Term::konst("d", vec![Term::var("x")])), sigma()));
        assert!(check_instance(&c, &ctx, &inst).is_ok());
    }

    #[test]
    fn prod_u1_instance() {
        let s = sig();
        let c = Checker::new(&s, Tier::Products);
        let ctx = Context::single("p", Type::prod(vec![a(), a()]));
        let p = Term::var("p");
        let pty = Type::prod(vec![a(), a()]);
        let alphas = vec![Rewrite::Id(Term::proj_sub(1, &pty, p.clone())), Rewrite::Id(Term::proj_sub(2, &pty, p.clone()))];
        let inst = AxiomInstance::new(AxiomId::ProdU1, vec![MetaArg::Index(2), MetaArg::Term(p.clone()), MetaArg::Rewrites(alphas.clone())]);
        let (l, r, _) = check_instance(&c, &ctx, &inst).unwrap();
        assert_eq!(l, alphas[1]);
        assert!(r.to_string().starts_with("counitx[2]("));
    }

    #[test]
    fn interchange_instance() {
        let s = sig();
        let c = Checker::new(&s, Tier::Bicat);
        let ctx = Context::single("y", a());
        let cx = Term::konst("c", vec![Term::var("x")]);
        let tau = Rewrite::ConstCell("s".into(), vec![Term::var("x")]);
        let tau2 = Rewrite::Id(Term::konst("d", vec![Term::var("x")]));
        let s1 = vec![Binding::new(var("x"), Rewrite::ConstCell("s".into(), vec![Term::var("y")]))];
        let s2 = vec![Rewrite::Id(Term::konst("d", vec![Term::var("y")]))];
        let inst = AxiomInstance::new(
            AxiomId::Interchange,
            vec![MetaArg::Rewrite(tau2), MetaArg::Rewrite(tau), MetaArg::RewriteBindings(s1), MetaArg::Rewrites(s2)],
        );
        let (_, _, j) = check_instance(&c, &ctx, &inst).unwrap();
        assert_eq!(j.source.to_string(), format!("{}", Term::subst(cx, vec![Binding::typed(var("x"), a(), Term::konst("c", vec![Term::var("y")]))])));
    }

    #[test]
    fn catalog_per_tier() {
        let b = axiom_catalog(Tier::Bicat, false);
        assert!(b.iter().all(|r| !matches!(r, RuleId::Axiom(AxiomId::ProdU1 | AxiomId::ExpU1))));
        assert!(b.contains(&RuleId::Axiom(AxiomId::BicloneCompat2)));
        assert!(b.contains(&RuleId::Axiom(AxiomId::InvLeft(Invertible::Assoc))));
        let x = axiom_catalog(Tier::Products, false);
        assert!(b.iter().all(|r| x.contains(r)));
        assert!(x.contains(&RuleId::Axiom(AxiomId::ProdU2)));
        assert!(x.contains(&RuleId::Axiom(AxiomId::InvRight(Invertible::UnitProd))));
        assert!(!x.contains(&RuleId::Axiom(AxiomId::ExpU1)));
        let e = axiom_catalog(Tier::Closed, false);
        assert!(x.iter().all(|r| e.contains(r)));
        assert!(e.contains(&RuleId::Axiom(AxiomId::InvLeft(Invertible::UnitExp))));
        let lax = axiom_catalog(Tier::Closed, true);
        assert!(!lax.contains(&RuleId::Axiom(AxiomId::InvLeft(Invertible::CounitProd))));
        assert!(lax.contains(&RuleId::Axiom(AxiomId::InvLeft(Invertible::SubId))));
        for a in all_axioms() {
            assert_eq!(AxiomId::parse(&a.name()), Some(a));
        }
    }

    #[test]
    fn derivation_forms() {
        let s = sig();
        let c = Checker::new(&s, Tier::Bicat);
        let ctx = Context::single("x", a());
        let refl = Derivation::Refl(sigma());
        let concl = check_derivation(&c, &ctx, &refl).unwrap();
        assert!(alpha_eq_rewrite(&concl.lhs, &concl.rhs));

        let lu = Derivation::Axiom(AxiomInstance::new(AxiomId::VertLeftUnit, vec![MetaArg::Rewrite(sigma())]));
        let back = Derivation::trans(lu.clone(), Derivation::symm(lu.clone()));
        let concl = check_derivation(&c, &ctx, &back).unwrap();
        assert_eq!(concl.lhs, sigma());
        assert_eq!(concl.rhs, sigma());

        let bad = Derivation::trans(lu.clone(), lu);
        let err = check_derivation(&c, &ctx, &bad).unwrap_err();
        assert_eq!(err.step, 0);
        assert_eq!(err.rule, "trans");
    }

    #[test]
    fn congruence_under_vertical_composition() {
        let s = sig();
        let c = Checker::new(&s, Tier::Bicat);
        let ctx = Context::single("x", a());
        let lu = Derivation::Axiom(AxiomInstance::new(AxiomId::VertLeftUnit, vec![MetaArg::Rewrite(sigma())]));
        let d = Derivation::cong_vert(Derivation::Refl(Rewrite::Id(Term::konst("d", vec![Term::var("x")]))), lu);
        let concl = check_derivation(&c, &ctx, &d).unwrap();
        assert_eq!(concl.judgement.source, Term::konst("c", vec![Term::var("x")]));
    }
}
