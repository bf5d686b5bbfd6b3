//! Homological bounds as certificate-producing pipelines.

mod chain;
mod endo;
mod report;
mod tower;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::modules::ModuleError;

pub use chain::{ChainTerm, ChainVerdict, Claim, ClaimChecker, ExactChainCertificate};
pub use endo::{
    end_algebra, evaluation_map, tensor_p, transport_witness, unit_map, compare_syzygies, EndoTransportPackage, HomModule,
    SyzygyComparison, TensorModule, TransportChecker,
};
pub use report::{
    bound_report, BoundIngredients, BoundReport, DerivedBound, Invariant, MissingIngredient, Source, Tagged,
};
pub use tower::{it_from_tower, tower_witness, verify_it_witness, ITWitness, TestVerdict, WitnessReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("syzygy is not stable under level {level} ({algebra}): {detail}")]
    StabilityViolation { level: usize, algebra: String, detail: String },
    #[error("a tower needs at least two levels")]
    TowerTooShort,
    #[error("module has no ambient coordinates")]
    MissingAmbient,
    #[error("module is not projective: {0}")]
    NotProjective(String),
    #[error("projective must have pairwise non-isomorphic indecomposable summands: {0}")]
    NotBasic(String),
    #[error("transport is only available for syzygy degrees 0, 1 and 2, got {0}; larger degrees are an open question")]
    UnsupportedDegree(usize),
    #[error("comparison map is not invertible: {0}")]
    ComparisonFailed(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
