//! The command layer over in-memory sources.

use ccbicat::cli::{parse_source, run_sources, Backend, CommandKind, Options, Status};

fn run(command: CommandKind, src: &str, opts: &Options) -> ccbicat::cli::Report {
    run_sources(command, &[("t.bl".to_string(), src.to_string())], opts)
}

const SMALL: &str = "tier b;\nsort A;\nconst c(A) : A;\nconst d(A) : A;\ncell s : c => d;\n";

#[test]
fn check_reports_each_item() {
    let src = format!("{SMALL}term t(x : A) : A := c(c(x));\nrewrite r(x : A) : c(x) => d(x) := s(x);\n");
    let r = run(CommandKind::Check, &src, &Options::default());
    assert_eq!(r.status, Status::Pass, "{:?}", r.diagnostics);
    assert!(r.payload.iter().any(|l| l == "term t : A"));
    assert!(r.payload.iter().any(|l| l.starts_with("rewrite r : c(x) => d(x)")));
}

#[test]
fn wrong_endpoint_is_a_failure_with_position() {
    let src = format!("{SMALL}rewrite r(x : A) : d(x) => c(x) := s(x);\n");
    let r = run(CommandKind::Check, &src, &Options::default());
    assert_eq!(r.exit_code(), 1);
    let d = &r.diagnostics[0];
    assert_eq!((d.line, d.item.as_deref()), (6, Some("r")));
}

#[test]
fn parse_error_exits_two() {
    let r = run(CommandKind::Check, "tier b;\nsort A\n", &Options::default());
    assert_eq!(r.exit_code(), 2);
    assert_eq!(r.diagnostics[0].line, 3);
}

#[test]
fn tier_flag_must_agree() {
    let opts = Options { tier: Some(ccbicat::signature::Tier::Closed), ..Options::default() };
    assert_eq!(run(CommandKind::Check, SMALL, &opts).exit_code(), 2);
}

#[test]
fn check_needs_files() {
    assert_eq!(run_sources(CommandKind::Check, &[], &Options::default()).exit_code(), 2);
}

#[test]
fn interp_in_a_table_model() {
    let src = format!(
        "{SMALL}term t(x : A) : A := c(x);\nmodel two = set(p, q);\nhom h : finset {{ sort A = two; const c {{ p => q; q => p; }} const d {{ p => q; q => p; }} cell s {{ }} }}\n"
    );
    let opts = Options { judgement: Some("t".into()), hom: Some("h".into()), ..Options::default() };
    let r = run(CommandKind::Interp, &src, &opts);
    assert_eq!(r.status, Status::Pass, "{:?}", r.diagnostics);
    assert!(r.payload.iter().any(|l| l == "t at (p) = q" || l == "t at p = q"), "{:?}", r.payload);
}

#[test]
fn synth_output_parses_and_checks() {
    let opts = Options { tier: Some(ccbicat::signature::Tier::Products), n: Some(2), ..Options::default() };
    let r = run_sources(CommandKind::Synth, &[], &opts);
    assert_eq!(r.status, Status::Pass, "{:?}", r.diagnostics);
    let text = r.payload.join("\n");
    assert!(parse_source(&text).is_ok());
    assert_eq!(run(CommandKind::Check, &text, &Options::default()).status, Status::Pass);
}

#[test]
fn probe_all_rules_syntactically() {
    let opts = Options { tier: Some(ccbicat::signature::Tier::Bicat), backend: Some(Backend::Syntactic), n: Some(5), ..Options::default() };
    let r = run_sources(CommandKind::Probe, &[], &opts);
    assert_eq!(r.status, Status::Pass, "{:?}", r.diagnostics);
    assert!(r.payload.iter().all(|l| l.ends_with("5/5 equal")));
}

#[test]
fn free_rejects_the_syntactic_backend() {
    let opts = Options { backend: Some(Backend::Syntactic), ..Options::default() };
    assert_eq!(run_sources(CommandKind::Free, &[], &opts).exit_code(), 2);
}

#[test]
fn free_passes_in_fincat() {
    let opts = Options { n: Some(20), ..Options::default() };
    let r = run_sources(CommandKind::Free, &[], &opts);
    assert_eq!(r.status, Status::Pass, "{:?}", r.diagnostics);
}
