//! The `synth`, `probe` and `free` commands.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ast::{Item, SourceFile};
use super::commands::{strict_backend, strict_model};
use super::workspace::Workspace;
use super::{items::parse_source, Diag, Options, Report};
use crate::derived::{synth_admissible, DerivedRuleId};
use crate::equational::{axiom_catalog, check_derivation, check_equation, AxiomId, RuleId};
use crate::gen::{random_cong, random_instance, Gen};
use crate::semantics::{freeness_check, soundness_probe};
use crate::signature::Signature;

/// The signature as declaration items.
fn signature_items(sig: &Signature) -> Vec<Item> {
    let mut out = vec![Item::Tier(sig.tier)];
    out.extend(sig.sorts().map(|s| Item::Sort(s.to_string())));
    out.extend(sig.edges().map(|e| Item::Const { name: e.name.clone(), source: e.source.clone(), target: e.target.clone() }));
    out.extend(sig.surfaces().map(|s| Item::Cell { name: s.name.clone(), from: s.from.clone(), to: s.to.clone() }));
    out
}

pub fn synth(mut report: Report, ws: &Workspace, opts: &Options) -> Report {
    let rules: Vec<DerivedRuleId> = match &opts.rule {
        Some(r) => match DerivedRuleId::parse(r) {
            Some(rule) if rule.min_tier() <= ws.tier => vec![rule],
            Some(rule) => return report.error(Diag::plain(format!("{rule} needs tier {}", rule.min_tier().name()))),
            None => return report.error(Diag::plain(format!("unknown derived rule `{r}`"))),
        },
        None => DerivedRuleId::ALL.into_iter().filter(|r| r.min_tier() <= ws.tier).collect(),
    };
    if rules.is_empty() {
        return report.error(Diag::plain(format!("no derived rules exist at tier {}", ws.tier.name())));
    }
    for d in &ws.failures {
        report.fail(d.clone());
    }
    let count = opts.n.unwrap_or(1);
    let mut g = Gen::new(&ws.sig, ws.tier, opts.seed).lax(ws.lax);
    let mut file = SourceFile::new(signature_items(&ws.sig));
    for rule in rules {
        for i in 0..count {
            let found = (0..60).find_map(|attempt| {
                let (ctx, args) = g.derived_args(rule, 1 + attempt % 3)?;
                synth_admissible(&g.checker, &ctx, rule, &args).ok()
            });
            match found {
                Some(s) => file.items.push(Item::Eq { name: format!("{}-{}", rule.name(), i + 1), ctx: s.ctx, lhs: s.lhs, rhs: s.rhs, proof: s.derivation }),
                None => report.fail(Diag::plain(format!("{rule}: no instance found over this signature"))),
            }
        }
    }
    let text = file.to_string();
    // The output must itself check.
    match parse_source(&text) {
        Ok(back) => {
            for item in &back.items {
                if let Item::Eq { name, ctx, lhs, rhs, proof } = item {
                    if let Err(d) = check_equation(&g.checker, ctx, lhs, rhs, proof) {
                        report.fail(Diag::plain(format!("{name}: printed derivation does not check: {d}")));
                    }
                }
            }
        }
        Err(e) => report.fail(Diag::plain(format!("printed output does not parse: {e}"))),
    }
    report.payload.extend(text.lines().map(str::to_string));
    report
}

fn select_rules(ws: &Workspace, opts: &Options) -> Result<Vec<RuleId>, Diag> {
    let catalog = axiom_catalog(ws.tier, ws.lax);
    match &opts.axiom {
        None => Ok(catalog),
        Some(name) => match catalog.iter().find(|r| r.name() == *name) {
            Some(r) => Ok(vec![*r]),
            None if AxiomId::parse(name).is_some() => Err(Diag::plain(format!("axiom `{name}` is not available at tier {}{}", ws.tier.name(), if ws.lax { " with --lax" } else { "" }))),
            None => Err(Diag::plain(format!("unknown axiom `{name}`"))),
        },
    }
}

pub fn probe(mut report: Report, ws: &Workspace, opts: &Options) -> Report {
    let rules = match select_rules(ws, opts) {
        Ok(r) => r,
        Err(d) => return report.error(d),
    };
    for d in &ws.failures {
        report.fail(d.clone());
    }
    let n = opts.n.unwrap_or(100);
    let backend = strict_backend(ws, opts);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fixed = match (&opts.hom, backend) {
        (Some(_), Some(b)) => match strict_model(ws, opts, b, &mut rng) {
            Ok(m) => Some(m),
            Err((true, d)) => return report.error(d),
            Err((false, d)) => {
                report.fail(d);
                return report;
            }
        },
        _ => None,
    };
    let mut g = Gen::new(&ws.sig, ws.tier, opts.seed).lax(ws.lax);
    for rule in rules {
        let (mut equal, mut tried) = (0, 0);
        for _ in 0..n {
            let case = match rule {
                RuleId::Axiom(a) => random_instance(&mut g, a),
                RuleId::Cong(c) => random_cong(&mut g, c),
            };
            let Some(case) = case else { break };
            tried += 1;
            let concl = match check_derivation(&g.checker, &case.ctx, &case.derivation) {
                Ok(c) => c,
                Err(d) => {
                    report.fail(Diag::plain(format!("{}: generated instance does not check: {d}", rule.name())));
                    continue;
                }
            };
            let Some(b) = backend else {
                equal += 1;
                continue;
            };
            let random;
            let model = match &fixed {
                Some(m) => m,
                None => match strict_model(ws, opts, b, &mut rng) {
                    Ok(m) => {
                        random = m;
                        &random
                    }
                    Err((_, d)) => {
                        report.fail(d);
                        return report;
                    }
                },
            };
            match soundness_probe(model, &g.checker, &case.ctx, &concl.lhs, &concl.rhs) {
                Ok(true) => equal += 1,
                Ok(false) => report.fail(Diag::plain(format!("{}: sides differ for {} == {}", rule.name(), concl.lhs, concl.rhs))),
                Err(e) => report.fail(Diag::plain(format!("{}: {e}", rule.name()))),
            }
        }
        if tried < n {
            report.fail(Diag::plain(format!("{}: only {tried} of {n} instances could be generated over this signature", rule.name())));
        }
        report.say(format!("{}: {equal}/{n} equal", rule.name()));
    }
    report
}

pub fn free(mut report: Report, ws: &Workspace, opts: &Options) -> Report {
    let Some(backend) = strict_backend(ws, opts) else {
        return report.error(Diag::plain("free needs a strict backend (finset or fincat)"));
    };
    for d in &ws.failures {
        report.fail(d.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let model = match strict_model(ws, opts, backend, &mut rng) {
        Ok(m) => m,
        Err((true, d)) => return report.error(d),
        Err((false, d)) => {
            report.fail(d);
            return report;
        }
    };
    let mut g = Gen::new(&ws.sig, ws.tier, opts.seed).lax(ws.lax);
    let samples: Vec<_> = (0..opts.n.unwrap_or(100))
        .map(|_| {
            let ctx = g.context();
            let t = g.any_term(&ctx).0;
            (ctx, t)
        })
        .collect();
    let fr = freeness_check(&model, &g.checker, &samples);
    for f in &fr.failures {
        report.fail(Diag::plain(f.clone()));
    }
    report.say(format!("{} generators and {} composites agree with the structural image", fr.generators_checked, fr.composites_checked));
    report
}
