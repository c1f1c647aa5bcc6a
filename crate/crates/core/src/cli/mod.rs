//! Command-line front end: source files, commands and reports.

pub mod ast;
mod commands;
pub mod convert;
mod experiments;
pub mod items;
pub mod lexer;
pub mod parser;
pub mod print;
mod workspace;

use std::fmt::Write;

use serde::Serialize;

pub use ast::{Entry, HomDef, Item, ModelDef, SourceFile};
pub use items::parse_source;
pub use lexer::{Span, SyntaxError};
pub use parser::{parse_derivation, parse_rewrite, parse_term, parse_type, Parser};
pub use print::ShowDerivation;

use crate::signature::Tier;

/// Interpretation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Finset,
    Fincat,
    Syntactic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CommandKind {
    /// Type-check every item of the given files.
    Check,
    /// Check the derivations of `eq` items.
    Eq,
    /// Interpret a term or rewrite in a model.
    Interp,
    /// Synthesize derivations of the admissible rules, printed as a source file.
    Synth,
    /// Test axiom instances against random or given models.
    Probe,
    /// Compare interpretations of terms with the model's own structure.
    Free,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Check => "check",
            CommandKind::Eq => "eq",
            CommandKind::Interp => "interp",
            CommandKind::Synth => "synth",
            CommandKind::Probe => "probe",
            CommandKind::Free => "free",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub tier: Option<Tier>,
    pub lax: bool,
    /// Defaults to the backend of `--hom`, else `fincat`.
    pub backend: Option<Backend>,
    /// A hom file, or the name of a hom item in the loaded sources.
    pub hom: Option<String>,
    pub seed: u64,
    pub json: bool,
    /// Number of instances for `probe`, `synth` and `free`.
    pub n: Option<usize>,
    pub axiom: Option<String>,
    pub rule: Option<String>,
    pub judgement: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diag {
    pub file: Option<String>,
    pub line: usize,
    pub col: usize,
    pub item: Option<String>,
    pub message: String,
}

impl Diag {
    pub fn plain(message: impl Into<String>) -> Diag {
        Diag { file: None, line: 0, col: 0, item: None, message: message.into() }
    }

    pub fn at(file: &str, span: Span, item: Option<&str>, message: impl Into<String>) -> Diag {
        Diag { file: Some(file.to_string()), line: span.line, col: span.col, item: item.map(str::to_string), message: message.into() }
    }
}

impl std::fmt::Display for Diag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:{}:{}: ", self.line, self.col)?;
        }
        if let Some(item) = &self.item {
            write!(f, "{item}: ")?;
        }
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub diagnostics: Vec<Diag>,
    pub payload: Vec<String>,
}

impl Report {
    pub fn new(command: CommandKind) -> Report {
        Report { command: command.name().to_string(), status: Status::Pass, diagnostics: Vec::new(), payload: Vec::new() }
    }

    /// A usage or parse error.
    pub fn error(mut self, d: Diag) -> Report {
        self.status = Status::Error;
        self.diagnostics.push(d);
        self
    }

    /// Records a check failure, unless an error is already recorded.
    pub fn fail(&mut self, d: Diag) {
        if self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self.diagnostics.push(d);
    }

    pub fn say(&mut self, line: impl Into<String>) {
        self.payload.push(line.into());
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    /// Standard output and standard error for the text format.
    pub fn text(&self) -> (String, String) {
        let mut out = String::new();
        for line in &self.payload {
            let _ = writeln!(out, "{line}");
        }
        let mut err = String::new();
        for d in &self.diagnostics {
            let _ = writeln!(err, "{}: {d}", if self.status == Status::Error { "error" } else { "failure" });
        }
        (out, err)
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs `command` over the source `files`.
pub fn run(command: CommandKind, files: &[String], opts: &Options) -> Report {
    commands::run(command, files, opts)
}

/// Runs over in-memory sources, named for diagnostics.
pub fn run_sources(command: CommandKind, sources: &[(String, String)], opts: &Options) -> Report {
    commands::run_sources(command, sources, opts)
}
