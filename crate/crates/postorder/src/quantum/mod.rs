//! Finite-dimensional quantum measurements and channels: POVMs over exact
//! Gaussian rationals, post-processing comparison by rational LP, guessing
//! probabilities, binary state discrimination, measure-and-prepare
//! channels, and the explicit unital-CP factorization pipeline driven by
//! maximally entangled bases.
//!
//! Two numeric regimes coexist deliberately: decision problems (comparison,
//! guessing probabilities, positivity of rational data) use exact
//! arithmetic; the channel pipeline uses complex doubles because the phases
//! e^(2πi/d) are irrational for d ≥ 3. Every operation documents which
//! regime it lives in.

mod channels;
mod phi;
mod qcompare;

pub use channels::{
    dephasing, depolarizing, helstrom_binary, markov_channel, max_abs_diff, mixed_unitary,
    qc_channel, verify_factorization, FactorizationReport, Superoperator, FLOAT_PSD_TOL,
};
pub use phi::{entangled_basis, phi_from_blocks, FloatPovm};
pub use qcompare::{
    apply_markov, markov_certifies, qcompare, qpg, quantum_separating_ensemble, QuantumVerdict,
};

use crate::exact::{psd_exact, ExactError, GaussianMatrix, GaussianRational, Rational};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Postproc(#[from] crate::postproc::PostprocError),
    #[error("POVM must have at least one effect")]
    EmptyPovm,
    #[error("effect {index} is {rows}×{cols}, expected {dim}×{dim}")]
    EffectShape {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("effect {index}: {source}")]
    EffectInvalid { index: usize, source: ExactError },
    #[error("effect {index} is not positive semidefinite")]
    EffectNotPsd { index: usize },
    #[error("effects do not sum to the identity (first offending entry ({row}, {col}))")]
    NotComplete { row: usize, col: usize },
    #[error("ensemble must have at least one member")]
    EmptyEnsemble,
    #[error("ensemble member {index} is {rows}×{cols}, expected {dim}×{dim}")]
    MemberShape {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("ensemble member {index}: {source}")]
    MemberInvalid { index: usize, source: ExactError },
    #[error("ensemble member {index} is not positive semidefinite")]
    MemberNotPsd { index: usize },
    #[error("ensemble traces sum to {total}, expected 1")]
    EnsembleMass { total: String },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("expected exactly 2 ensemble members, got {found}")]
    NotBinary { found: usize },
    #[error("superoperator matrix is {rows}×{cols}, expected {expected_rows}×{expected_cols}")]
    SuperoperatorShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("map does not preserve Hermiticity (deviation {deviation:.3e} on a basis element)")]
    NotHermiticityPreserving { deviation: f64 },
    #[error("composition mismatch: inner output dimension {inner_out} vs outer input dimension {outer_in}")]
    CompositionMismatch { inner_out: usize, outer_in: usize },
    #[error("operator is {rows}×{cols}, expected {dim}×{dim}")]
    OperatorShape {
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("float effect {index} deviates from Hermitian by {deviation:.3e} (tolerance {tol:.3e})")]
    FloatEffectNotHermitian {
        index: usize,
        deviation: f64,
        tol: f64,
    },
    #[error("float effect {index} has eigenvalue {eigenvalue:.3e} below -{tol:.3e}")]
    FloatEffectNotPsd {
        index: usize,
        eigenvalue: f64,
        tol: f64,
    },
    #[error("float effects deviate from completeness by {deviation:.3e} (tolerance {tol:.3e})")]
    FloatNotComplete { deviation: f64, tol: f64 },
    #[error("bipartite dimension {dim} is not a multiple of the factor dimension {factor}")]
    NotBipartite { dim: usize, factor: usize },
    #[error("measurements are comparable ({0}); no separating ensemble exists")]
    Comparable(&'static str),
    #[error("block pipeline needs {expected} outcomes (one per basis vector), got {found}")]
    WrongOutcomeCount { expected: usize, found: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

/// A POVM with exact Gaussian-rational effects: each effect Hermitian and
/// positive semidefinite (decided exactly), summing to the identity exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumEvm {
    dim: usize,
    effects: Vec<GaussianMatrix>,
}

impl QuantumEvm {
    pub fn new(dim: usize, effects: Vec<GaussianMatrix>) -> Result<Self, QuantumError> {
        if effects.is_empty() {
            return Err(QuantumError::EmptyPovm);
        }
        for (index, effect) in effects.iter().enumerate() {
            if effect.rows() != dim || effect.cols() != dim {
                return Err(QuantumError::EffectShape {
                    index,
                    rows: effect.rows(),
                    cols: effect.cols(),
                    dim,
                });
            }
            effect
                .check_hermitian()
                .map_err(|source| QuantumError::EffectInvalid { index, source })?;
            if !psd_exact(effect).map_err(|source| QuantumError::EffectInvalid { index, source })?
            {
                return Err(QuantumError::EffectNotPsd { index });
            }
        }
        let mut sum = GaussianMatrix::zeros(dim, dim);
        for effect in &effects {
            sum = sum.add(effect).expect("summands share the POVM shape");
        }
        let identity = GaussianMatrix::identity(dim);
        for row in 0..dim {
            for col in 0..dim {
                if sum.get(row, col) != identity.get(row, col) {
                    return Err(QuantumError::NotComplete { row, col });
                }
            }
        }
        Ok(QuantumEvm { dim, effects })
    }

    /// The measurement in the standard basis: effects |e_j⟩⟨e_j|.
    pub fn standard_basis(dim: usize) -> Result<Self, QuantumError> {
        let mut effects = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut e = GaussianMatrix::zeros(dim, dim);
            *e.get_mut(j, j) = GaussianRational::one();
            effects.push(e);
        }
        QuantumEvm::new(dim, effects)
    }

    /// A trivial POVM: effects λᵢ·𝟙 with Σλᵢ = 1. Below every POVM in the
    /// post-processing order.
    pub fn trivial(dim: usize, weights: &[Rational]) -> Result<Self, QuantumError> {
        let effects = weights
            .iter()
            .map(|w| GaussianMatrix::identity(dim).scale(w))
            .collect();
        QuantumEvm::new(dim, effects)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn effects(&self) -> &[GaussianMatrix] {
        &self.effects
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }
}

/// A finite ensemble of exact Gaussian-rational states: each member
/// Hermitian PSD, with traces summing to one (members carry their
/// probability weight; tr ρ_k is the probability of label k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumEnsemble {
    dim: usize,
    members: Vec<GaussianMatrix>,
}

impl QuantumEnsemble {
    pub fn new(dim: usize, members: Vec<GaussianMatrix>) -> Result<Self, QuantumError> {
        if members.is_empty() {
            return Err(QuantumError::EmptyEnsemble);
        }
        let mut total = Rational::zero();
        for (index, member) in members.iter().enumerate() {
            if member.rows() != dim || member.cols() != dim {
                return Err(QuantumError::MemberShape {
                    index,
                    rows: member.rows(),
                    cols: member.cols(),
                    dim,
                });
            }
            member
                .check_hermitian()
                .map_err(|source| QuantumError::MemberInvalid { index, source })?;
            if !psd_exact(member).map_err(|source| QuantumError::MemberInvalid { index, source })?
            {
                return Err(QuantumError::MemberNotPsd { index });
            }
            let trace = member
                .trace()
                .map_err(|source| QuantumError::MemberInvalid { index, source })?;
            total += trace.re;
        }
        if total != Rational::one() {
            return Err(QuantumError::EnsembleMass {
                total: crate::exact::format_rational(&total),
            });
        }
        Ok(QuantumEnsemble { dim, members })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[GaussianMatrix] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
