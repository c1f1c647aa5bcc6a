//! Property tests over generated syntax.

use ccbicat::cli::{parse_derivation, parse_rewrite, parse_term, ShowDerivation};
use ccbicat::equational::{all_axioms, axiom_available, check_derivation};
use ccbicat::gen::{probe_signature, random_instance, Gen};
use ccbicat::signature::Tier;
use ccbicat::syntax::{alpha_eq, alpha_eq_rewrite, free_vars, rename, Renaming};
use proptest::prelude::*;

fn tier() -> impl Strategy<Value = Tier> {
    prop_oneof![Just(Tier::Bicat), Just(Tier::Products), Just(Tier::Closed)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_terms_check_and_reparse(tier in tier(), seed in any::<u64>()) {
        let sig = probe_signature(tier);
        let mut g = Gen::new(&sig, tier, seed);
        let ctx = g.context();
        let (t, ty) = g.any_term(&ctx);
        prop_assert_eq!(g.checker.check_term(&ctx, &t).unwrap(), ty.clone());
        prop_assert!(free_vars(&t).iter().all(|x| ctx.contains(x)));
        let back = parse_term(&t.to_string()).unwrap();
        prop_assert!(alpha_eq(&t, &back));
        prop_assert_eq!(g.checker.check_term(&ctx, &back).unwrap(), ty);
    }

    #[test]
    fn identity_renaming_preserves_type(tier in tier(), seed in any::<u64>()) {
        let sig = probe_signature(tier);
        let mut g = Gen::new(&sig, tier, seed);
        let ctx = g.context();
        let (t, ty) = g.any_term(&ctx);
        let r = rename(&t, &Renaming::identity(&ctx)).unwrap();
        prop_assert_eq!(g.checker.check_term(&ctx, &r).unwrap(), ty);
    }

    #[test]
    fn generated_rewrites_keep_their_ends(tier in tier(), seed in any::<u64>()) {
        let sig = probe_signature(tier);
        let mut g = Gen::new(&sig, tier, seed);
        let ctx = g.context();
        let (r, rt) = g.rewrite(&ctx);
        let back = parse_rewrite(&r.to_string()).unwrap();
        prop_assert!(alpha_eq_rewrite(&r, &back));
        let bt = g.checker.check_rewrite(&ctx, &back).unwrap();
        prop_assert!(alpha_eq(&bt.source, &rt.source) && alpha_eq(&bt.target, &rt.target));
        prop_assert_eq!(bt.ty, rt.ty);
    }

    #[test]
    fn axiom_instances_check_after_reparse(tier in tier(), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let axioms: Vec<_> = all_axioms().into_iter().filter(|a| axiom_available(*a, tier, false)).collect();
        let a = axioms[pick.index(axioms.len())];
        let sig = probe_signature(tier);
        let mut g = Gen::new(&sig, tier, seed);
        if let Some(case) = random_instance(&mut g, a) {
            let printed = ShowDerivation(&case.derivation).to_string();
            let back = parse_derivation(&printed).unwrap();
            let before = check_derivation(&g.checker, &case.ctx, &case.derivation).unwrap();
            let after = check_derivation(&g.checker, &case.ctx, &back).unwrap();
            prop_assert!(alpha_eq_rewrite(&before.lhs, &after.lhs) && alpha_eq_rewrite(&before.rhs, &after.rhs));
        }
    }
}
