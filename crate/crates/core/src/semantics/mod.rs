//! Interpretation in strict backends and in the syntactic model.

pub mod engine;
pub mod hom;
pub mod interp;
pub mod model;
pub mod probes;
pub mod syntactic;
pub mod value;

pub use engine::{Engine, Limits, SemError};
pub use hom::{check_hom, BackendKind, GraphHom, HomReport, HomViolation};
pub use interp::Interpreter;
pub use model::{Functor, Model, StrictModel, Transformation, Verdict};
pub use probes::{coherence_laws, freeness_check, soundness_probe, structural_image, FreenessReport};
pub use syntactic::{context_product_equiv, ContextProduct, SynOne, SynTwo, SyntacticModel};
pub use value::{Arr, BaseCat, Cat, CatError, FunctorVal, NatVal, Obj, Show};
