//! A checker, derivation synthesizer and semantic prober for a
//! 2-dimensional type theory of bicategories, fp-bicategories and
//! cartesian closed bicategories with explicit substitution.

pub mod signature;
pub mod syntax;
pub mod typing;
pub mod derived;
pub mod equational;
pub mod gen;
pub mod semantics;
pub mod cli;
