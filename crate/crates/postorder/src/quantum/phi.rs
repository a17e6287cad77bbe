//! Reconstruction of a channel from the bipartite POVM it induces on a
//! maximally entangled basis.
//!
//! `entangled_basis(d)` produces the d² shift-and-phase vectors
//! η_{k,m} = (1/√d) Σ_j e^{2πijm/d} |j⟩ ⊗ |(j+k) mod d⟩, an orthonormal
//! basis of ℂ^d ⊗ ℂ^d. A channel Ψ: B(ℂ^d) → B(ℂ^{d_J}) applied to the
//! first factor of the rank-one projectors |η_{k,m}⟩⟨η_{k,m}| yields a
//! POVM on ℂ^{d_J} ⊗ ℂ^d, and `phi_from_blocks` inverts that construction:
//! from any POVM of the right shape it assembles a Hermiticity-preserving
//! map Φ, which equals Ψ exactly when the POVM has the tensor form above
//! (the phases cancel termwise), and is unital and completely positive for
//! every valid input POVM.
//!
//! Everything here is in the float regime — the phases e^{2πi/d} are
//! irrational for d ≥ 3 — with explicit tolerances on all validation.

use super::{QuantumError, Superoperator};
use crate::exact::symmetrize_checked;
use crate::exact::ExactError;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// The shift-and-phase orthonormal basis of ℂ^d ⊗ ℂ^d, indexed t = k·d + m:
/// η_{k,m}[j·d + ((j+k) mod d)] = e^{2πijm/d}/√d (first-factor-major).
pub fn entangled_basis(d: usize) -> Vec<DVector<Complex64>> {
    let scale = 1.0 / (d as f64).sqrt();
    let mut basis = Vec::with_capacity(d * d);
    for k in 0..d {
        for m in 0..d {
            let mut eta = DVector::zeros(d * d);
            for j in 0..d {
                let angle = TAU * (j as f64) * (m as f64) / d as f64;
                eta[j * d + (j + k) % d] = Complex64::from_polar(scale, angle);
            }
            basis.push(eta);
        }
    }
    basis
}

/// A POVM with float effects, validated within an explicit tolerance:
/// each effect Hermitian (deviation ≤ tol), positive semidefinite
/// (smallest eigenvalue ≥ −tol), with the sum within tol of the identity
/// entrywise. Effects are stored symmetrized ((E + E†)/2) so downstream
/// algebra sees exactly Hermitian matrices.
#[derive(Clone, Debug)]
pub struct FloatPovm {
    dim: usize,
    effects: Vec<DMatrix<Complex64>>,
}

impl FloatPovm {
    pub fn new(
        dim: usize,
        effects: Vec<DMatrix<Complex64>>,
        tol: f64,
    ) -> Result<Self, QuantumError> {
        if effects.is_empty() {
            return Err(QuantumError::EmptyPovm);
        }
        let mut symmetrized = Vec::with_capacity(effects.len());
        for (index, effect) in effects.iter().enumerate() {
            if effect.nrows() != dim || effect.ncols() != dim {
                return Err(QuantumError::EffectShape {
                    index,
                    rows: effect.nrows(),
                    cols: effect.ncols(),
                    dim,
                });
            }
            let sym = symmetrize_checked(effect, tol).map_err(|e| match e {
                ExactError::NotHermitianFloat { deviation, .. } => {
                    QuantumError::FloatEffectNotHermitian {
                        index,
                        deviation,
                        tol,
                    }
                }
                other => QuantumError::Exact(other),
            })?;
            let eigenvalues = sym.clone().symmetric_eigen().eigenvalues;
            let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
            if min < -tol {
                return Err(QuantumError::FloatEffectNotPsd {
                    index,
                    eigenvalue: min,
                    tol,
                });
            }
            symmetrized.push(sym);
        }
        let mut sum = DMatrix::zeros(dim, dim);
        for effect in &symmetrized {
            sum += effect;
        }
        let deviation = super::channels::max_abs_diff(&sum, &DMatrix::identity(dim, dim));
        if deviation > tol {
            return Err(QuantumError::FloatNotComplete { deviation, tol });
        }
        Ok(FloatPovm {
            dim,
            effects: symmetrized,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn effects(&self) -> &[DMatrix<Complex64>] {
        &self.effects
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }
}

/// Assembles the map Φ: B(ℂ^d) → B(ℂ^{d_J}) from a POVM on ℂ^{d_J} ⊗ ℂ^d
/// with d² outcomes indexed (k, m) lexicographically (first-factor-major
/// bipartite indexing (α, s) ↦ α·d + s):
///
///   Φ(E_{jj'}) = (1/d) Σ_{k,m} e^{2πi(j'−j)m/d} B^{(k,m)}_{(j+k)%d, (j'+k)%d},
///
/// where B^{(k,m)}_{s,s'} is the d_J × d_J block of effect (k, m) at
/// second-factor positions (s, s'). When the POVM arises as
/// (Ψ ⊗ id)(|η_{k,m}⟩⟨η_{k,m}|) for a channel Ψ, the phases collapse and
/// Φ = Ψ; for an arbitrary POVM, Φ is still unital and completely positive
/// (up to the POVM's own tolerance), which callers can confirm with
/// `is_unital`/`is_cp`.
pub fn phi_from_blocks(mt: &FloatPovm, d: usize) -> Result<Superoperator, QuantumError> {
    if d == 0 || mt.dim() % d != 0 {
        return Err(QuantumError::NotBipartite {
            dim: mt.dim(),
            factor: d,
        });
    }
    let expected = d * d;
    if mt.outcomes() != expected {
        return Err(QuantumError::WrongOutcomeCount {
            expected,
            found: mt.outcomes(),
        });
    }
    let dj = mt.dim() / d;
    let inv_d = Complex64::new(1.0 / d as f64, 0.0);
    let mut mat = DMatrix::zeros(dj * dj, d * d);
    for jp in 0..d {
        for j in 0..d {
            let mut image: DMatrix<Complex64> = DMatrix::zeros(dj, dj);
            for k in 0..d {
                for m in 0..d {
                    let angle = TAU * ((jp as f64 - j as f64) * m as f64) / d as f64;
                    let phase = Complex64::from_polar(1.0, angle);
                    let effect = &mt.effects()[k * d + m];
                    let s = (j + k) % d;
                    let sp = (jp + k) % d;
                    for alpha in 0..dj {
                        for beta in 0..dj {
                            image[(alpha, beta)] +=
                                phase * effect[(alpha * d + s, beta * d + sp)];
                        }
                    }
                }
            }
            image *= inv_d;
            // vec(E_{j,j'}) lives in column j'·d + j (column-major).
            mat.set_column(jp * d + j, &DVector::from_column_slice(image.as_slice()));
        }
    }
    Superoperator::new(d, dj, mat)
}

#[cfg(test)]
mod tests {
    use super::super::channels::{dephasing, max_abs_diff, mixed_unitary};
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn projector_povm(d: usize) -> FloatPovm {
        let effects: Vec<DMatrix<Complex64>> = entangled_basis(d)
            .iter()
            .map(|eta| eta * eta.adjoint())
            .collect();
        FloatPovm::new(d * d, effects, 1e-12).unwrap()
    }

    #[test]
    fn entangled_basis_is_orthonormal() {
        for d in [1usize, 2, 3, 4] {
            let basis = entangled_basis(d);
            assert_eq!(basis.len(), d * d);
            for (s, u) in basis.iter().enumerate() {
                for (t, v) in basis.iter().enumerate() {
                    let inner = u.dotc(v);
                    let expected = if s == t { 1.0 } else { 0.0 };
                    assert!(
                        (inner - cx(expected, 0.0)).norm() < 1e-12,
                        "⟨η_{s}, η_{t}⟩ = {inner} at d = {d}"
                    );
                }
            }
        }
    }

    #[test]
    fn first_basis_vector_is_the_uniform_diagonal() {
        // η_{0,0} = (|00⟩ + |11⟩)/√2 at d = 2.
        let basis = entangled_basis(2);
        let r = 1.0 / 2f64.sqrt();
        let expected = [cx(r, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(r, 0.0)];
        for (entry, want) in basis[0].iter().zip(expected) {
            assert!((entry - want).norm() < 1e-15);
        }
        // d = 1 degenerates to the single unit vector.
        let tiny = entangled_basis(1);
        assert_eq!(tiny.len(), 1);
        assert!((tiny[0][0] - cx(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn projector_povm_reconstructs_the_identity_map() {
        for d in [2usize, 3] {
            let phi = phi_from_blocks(&projector_povm(d), d).unwrap();
            assert_eq!(phi.dim_in(), d);
            assert_eq!(phi.dim_out(), d);
            let id = Superoperator::identity(d);
            assert!(max_abs_diff(phi.matrix(), id.matrix()) < 1e-12);
            assert!(phi.is_cp().unwrap());
            assert!(phi.is_unital().unwrap());
        }
    }

    #[test]
    fn tensor_form_recovers_the_channel() {
        // Ψ with complex structure: mix of identity and the phase gate
        // diag(1, i), plus the dephasing map as a second subject.
        let s_gate = DMatrix::from_row_slice(
            2,
            2,
            &[cx(1., 0.), cx(0., 0.), cx(0., 0.), cx(0., 1.)],
        );
        let subjects = [
            mixed_unitary(2, &[(0.5, DMatrix::identity(2, 2)), (0.5, s_gate)]).unwrap(),
            dephasing(2).unwrap(),
        ];
        for psi in subjects {
            let lifted = psi.tensor_with_identity(2);
            let effects: Vec<DMatrix<Complex64>> = entangled_basis(2)
                .iter()
                .map(|eta| lifted.apply(&(eta * eta.adjoint())).unwrap())
                .collect();
            let mt = FloatPovm::new(4, effects, 1e-9).unwrap();
            let phi = phi_from_blocks(&mt, 2).unwrap();
            assert!(max_abs_diff(phi.matrix(), psi.matrix()) < 1e-12);
        }
    }

    #[test]
    fn float_povm_validation_catches_each_defect() {
        let id2: DMatrix<Complex64> = DMatrix::identity(2, 2);

        let short = FloatPovm::new(2, vec![id2.clone() * cx(0.5, 0.0)], 1e-9);
        assert!(matches!(short, Err(QuantumError::FloatNotComplete { .. })));

        let mut skew = id2.clone() * cx(0.5, 0.0);
        skew[(0, 1)] = cx(0.0, 1e-3);
        let crooked = FloatPovm::new(2, vec![skew, id2.clone() * cx(0.5, 0.0)], 1e-9);
        assert!(matches!(
            crooked,
            Err(QuantumError::FloatEffectNotHermitian { index: 0, .. })
        ));

        let negative = FloatPovm::new(
            2,
            vec![id2.clone() * cx(1.5, 0.0), id2.clone() * cx(-0.5, 0.0)],
            1e-9,
        );
        assert!(matches!(
            negative,
            Err(QuantumError::FloatEffectNotPsd { index: 1, .. })
        ));

        assert!(matches!(
            FloatPovm::new(2, vec![], 1e-9),
            Err(QuantumError::EmptyPovm)
        ));
    }

    #[test]
    fn block_pipeline_guards_shape() {
        let povm = projector_povm(2);
        assert!(matches!(
            phi_from_blocks(&povm, 3),
            Err(QuantumError::NotBipartite { dim: 4, factor: 3 })
        ));
        assert!(matches!(
            phi_from_blocks(&povm, 0),
            Err(QuantumError::NotBipartite { .. })
        ));
        // d = 1 divides 4 but needs exactly 1 outcome, not 4.
        assert!(matches!(
            phi_from_blocks(&povm, 1),
            Err(QuantumError::WrongOutcomeCount {
                expected: 1,
                found: 4
            })
        ));
    }
}
