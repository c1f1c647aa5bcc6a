//! Fixture-based criteria: typing endpoints and the command-line interface.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use ccbicat::cli::{parse_derivation, parse_rewrite, parse_source, parse_term, run_sources, CommandKind, Item, Options, ShowDerivation, Status};
use ccbicat::equational::{all_axioms, axiom_available};
use ccbicat::gen::{probe_signature, random_instance, Gen};
use ccbicat::signature::Tier;
use ccbicat::syntax::{alpha_eq, alpha_eq_rewrite};

pub fn manifest_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn read(rel: &str) -> Result<String, String> {
    std::fs::read_to_string(manifest_path(rel)).map_err(|e| format!("{rel}: {e}"))
}

/// One fixture item per typing rule.
const RULE_ITEMS: [(&str, &str); 26] = [
    ("var", "var"),
    ("const", "const"),
    ("horiz-comp", "horizontal composition of terms"),
    ("n-pair", "n-ary pairing"),
    ("empty-pair", "nullary pairing"),
    ("k-proj", "k-th projection"),
    ("lam", "lam"),
    ("eval", "eval"),
    ("assoc", "associator"),
    ("assoc-inv", "inverse associator"),
    ("subid", "substitution unit"),
    ("subid-inv", "inverse substitution unit"),
    ("projc", "projection cell"),
    ("projc-inv", "inverse projection cell"),
    ("id-intro", "identity rewrite"),
    ("two-const", "rewrite constant"),
    ("vert-comp", "vertical composition"),
    ("horiz-comp-2", "horizontal composition of rewrites"),
    ("counitx-intro", "product counit"),
    ("counitx-inv", "inverse product counit"),
    ("transx-intro", "product transpose"),
    ("unitx-inv", "inverse product unit"),
    ("counite-intro", "exponential counit"),
    ("counite-inv", "inverse exponential counit"),
    ("transe-intro", "exponential transpose"),
    ("unite-inv", "inverse exponential unit"),
];

pub fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    let src = read("tests/fixtures/rules.bl")?;
    let sources = vec![("rules.bl".to_string(), src.clone())];
    let report = run_sources(CommandKind::Check, &sources, &Options::default());
    if report.status != Status::Pass {
        return Err(report.diagnostics.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "));
    }
    let file = parse_source(&src).map_err(|e| e.to_string())?;
    for (name, what) in RULE_ITEMS {
        if file.find(name).is_none() {
            return Err(format!("no fixture for {what}"));
        }
    }
    // Exactness: each declared judgement with its endpoints swapped, or its
    // type replaced, must be rejected.
    let mut mutated = 0;
    for (i, item) in file.items.iter().enumerate() {
        let replacement = match item {
            Item::Rewrite { name, ctx, ends: Some((s, t)), body } if !alpha_eq(s, t) => {
                Item::Rewrite { name: name.clone(), ctx: ctx.clone(), ends: Some((t.clone(), s.clone())), body: body.clone() }
            }
            Item::Term { name, ctx, ty: Some(ty), body } => {
                let other = ccbicat::signature::Type::Prod(vec![ty.clone(), ty.clone()]);
                Item::Term { name: name.clone(), ctx: ctx.clone(), ty: Some(other), body: body.clone() }
            }
            _ => continue,
        };
        let mut copy = file.clone();
        copy.items[i] = replacement;
        let r = run_sources(CommandKind::Check, &[("mutated.bl".to_string(), copy.to_string())], &Options::default());
        if r.status != Status::Fail {
            return Err(format!("a wrong judgement for {} was accepted", item.name().unwrap_or("?")));
        }
        mutated += 1;
    }
    let ms = start.elapsed().as_millis();
    if ms >= 5000 {
        return Err(format!("took {ms} ms"));
    }
    Ok(format!("{} rule fixtures check with exact endpoints, {mutated} altered judgements rejected, {ms} ms", RULE_ITEMS.len()))
}

/// Printing then parsing returns an alpha-equivalent tree.
fn round_trips() -> Result<usize, String> {
    let mut count = 0;
    for tier in [Tier::Bicat, Tier::Products, Tier::Closed] {
        let sig = probe_signature(tier);
        let mut g = Gen::new(&sig, tier, 90 + tier as u64);
        for _ in 0..200 {
            let ctx = g.context();
            let (t, _) = g.any_term(&ctx);
            let back = parse_term(&t.to_string()).map_err(|e| format!("{t}: {e}"))?;
            if !alpha_eq(&t, &back) {
                return Err(format!("term {t} reparsed as {back}"));
            }
            let (r, _) = g.rewrite(&ctx);
            let back = parse_rewrite(&r.to_string()).map_err(|e| format!("{r}: {e}"))?;
            if !alpha_eq_rewrite(&r, &back) {
                return Err(format!("rewrite {r} reparsed as {back}"));
            }
            count += 2;
        }
        for a in all_axioms().into_iter().filter(|a| axiom_available(*a, tier, false)) {
            for _ in 0..4 {
                let Some(case) = random_instance(&mut g, a) else { continue };
                let printed = ShowDerivation(&case.derivation).to_string();
                let back = parse_derivation(&printed).map_err(|e| format!("{printed}: {e}"))?;
                if ShowDerivation(&back).to_string() != printed {
                    return Err(format!("derivation {printed} does not reprint"));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn binary(args: &[&str]) -> Result<Run, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ccbicat"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .map_err(|e| format!("cannot run the binary: {e}"))?;
    Ok(Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    })
}

/// `(arguments, expected exit code, text expected on stdout or stderr)`.
const MATRIX: [(&[&str], i32, &str); 12] = [
    (&["check", "examples/stlc.bl", "--tier", "xarrow"], 0, "failed at tier xarrow"),
    (&["check", "examples/triangle.bl"], 0, "4 items passed"),
    (&["check", "examples/interchange.bl"], 0, "hom hx is a homomorphism"),
    (&["check", "tests/fixtures/bad_typing.bl"], 1, "projection index 3"),
    (&["check", "tests/fixtures/bad_derivation.bl"], 1, "vert-right-unit"),
    (&["check", "tests/fixtures/unknown_name.bl"], 1, "unknown constant `missing`"),
    (&["check", "tests/fixtures/bad_parse.bl"], 2, "bad_parse.bl:3:24"),
    (&["check", "tests/fixtures/inverse.bl", "--lax"], 2, "--lax conflicts"),
    (&["check", "examples/stlc.bl", "--tier", "b"], 2, "conflicts with the declared tier"),
    (&["probe", "--axiom", "interchange", "--backend", "fincat", "--n", "200"], 0, "interchange: 200/200 equal"),
    (&["interp", "examples/stlc.bl", "--judgement", "i", "--backend", "finset", "--hom", "h"], 0, "i = {tt => tt, ff => ff}"),
    (&["probe", "--axiom", "no-such-axiom"], 2, "unknown axiom"),
];

fn exit_matrix() -> Result<usize, String> {
    for (args, code, text) in MATRIX {
        let r = binary(args)?;
        if r.code != code || !(r.stdout.contains(text) || r.stderr.contains(text)) {
            return Err(format!("`{}` exited {} (expected {code}) with {}{}", args.join(" "), r.code, r.stdout, r.stderr));
        }
    }
    let r = binary(&["check", "tests/fixtures/bad_parse.bl", "--json"])?;
    let v: serde_json::Value = serde_json::from_str(&r.stdout).map_err(|e| format!("json report: {e}"))?;
    if v["status"] != "error" || v["diagnostics"][0]["line"] != 3 || v["diagnostics"][0]["col"] != 24 {
        return Err(format!("json report {v}"));
    }
    // Synthesized output is itself a checkable source file.
    let r = binary(&["synth", "--seed", "5"])?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("synth.bl");
    std::fs::write(&path, &r.stdout).map_err(|e| e.to_string())?;
    let c = binary(&["check", path.to_str().expect("utf-8 path")])?;
    if r.code != 0 || c.code != 0 {
        return Err(format!("synth exited {}, its output checked with {}: {}", r.code, c.code, c.stderr));
    }
    Ok(MATRIX.len() + 2)
}

pub fn criterion_9() -> Result<String, String> {
    let n = round_trips()?;
    if n < 1000 {
        return Err(format!("only {n} round trips"));
    }
    let cases = exit_matrix()?;
    Ok(format!("{n} generated trees round-trip; {cases} command cases give the expected exit codes"))
}
