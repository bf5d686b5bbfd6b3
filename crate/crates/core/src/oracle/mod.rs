//! Brute-force ground truth at small scale.

mod census;
mod membership;
mod nakayama;
mod wresol;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::bounds::BoundsError;
use crate::modules::ModuleError;

pub use census::{census, CensusConfig, CensusReport};
pub use membership::{
    build_extdim_witness, membership_search, verify_extdim_witness, ExtDimReport, ExtDimWitness, MembershipCertificate,
    MembershipConfig, MembershipResult,
};
pub use nakayama::{
    cyclic_submodule_count, enumerate_indecomposables_nakayama, is_nakayama, IndecProvenance, IndecSet, NakayamaVerdict,
};
pub use wresol::{resolution_item, verify_wresol_witness, WresolItem, WresolItemVerdict, WresolReport};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("algebra is not Nakayama: {0}")]
    NotNakayama(String),
    #[error("brute force needs a prime field")]
    NeedsPrimeField,
    #[error("search space too large for a module of dimension {0}")]
    TooLarge(usize),
}

#[cfg(test)]
mod tests;
