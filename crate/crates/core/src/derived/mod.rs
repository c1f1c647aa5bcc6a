//! Derived rewrites and synthesized derivations of the admissible rules.

pub mod admissible;
pub mod constructions;
mod tactics;

pub use admissible::{synth_admissible, transpose_unique, DerivedRuleId, SynthError, Synthesized, TransposeFactorization};
pub use constructions::{apply_term, eta_exp, eta_times, general_beta, lam_rewrite, pair_rewrites, ConstructError, GeneralBeta};
