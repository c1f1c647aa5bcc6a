use std::process::ExitCode;

use clap::Parser;

use ccbicat::cli::{run, Backend, CommandKind, Options};
use ccbicat::signature::Tier;

fn parse_tier(s: &str) -> Result<Tier, String> {
    Tier::parse(s).ok_or_else(|| format!("unknown tier `{s}` (expected b, x or xarrow)"))
}

/// Checker, derivation synthesizer and semantic prober for a 2-dimensional
/// type theory of cartesian closed bicategories.
#[derive(Parser)]
#[command(name = "ccbicat", version)]
struct Args {
    command: CommandKind,
    /// Source files.
    files: Vec<String>,
    /// Fragment: b (bicategories), x (products) or xarrow (products and arrows).
    #[arg(long, value_parser = parse_tier)]
    tier: Option<Tier>,
    /// Reject inverse units and counits.
    #[arg(long)]
    lax: bool,
    #[arg(long, value_enum)]
    backend: Option<Backend>,
    /// A hom file, or the name of a hom in the sources.
    #[arg(long)]
    hom: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Number of instances or samples.
    #[arg(long)]
    n: Option<usize>,
    /// Axiom or congruence rule to probe.
    #[arg(long)]
    axiom: Option<String>,
    /// Derived rule to synthesize.
    #[arg(long)]
    rule: Option<String>,
    /// Term or rewrite to interpret.
    #[arg(long)]
    judgement: Option<String>,
}

fn main() -> ExitCode {
    let a = Args::parse();
    let opts = Options {
        tier: a.tier,
        lax: a.lax,
        backend: a.backend,
        hom: a.hom,
        seed: a.seed,
        json: a.json,
        n: a.n,
        axiom: a.axiom,
        rule: a.rule,
        judgement: a.judgement,
    };
    let report = run(a.command, &a.files, &opts);
    if opts.json {
        println!("{}", report.json());
    } else {
        let (out, err) = report.text();
        print!("{out}");
        eprint!("{err}");
    }
    ExitCode::from(report.exit_code() as u8)
}
