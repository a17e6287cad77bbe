//! Floating-point trace norm for Hermitian complex matrices.
//!
//! Exact spectra are unavailable beyond tiny dimensions, so the quantum
//! float path (Helstrom values, Choi positivity) runs on f64. The
//! eigensolver is nalgebra's `SymmetricEigen` — Householder
//! tridiagonalization followed by implicit QL sweeps, a fixed pure-Rust
//! iteration with no data-dependent randomness — so identical input bits
//! always produce identical output bits, and we only ever consume
//! permutation-invariant functions of the spectrum (sums, minima).

use super::ExactError;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Tolerance used for the Hermiticity precondition on float matrices.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Symmetrizes `(h + h†)/2` after checking `h` is Hermitian within `tol`,
/// returning the max deviation alongside the symmetrized matrix.
pub(crate) fn symmetrize_checked(
    h: &DMatrix<Complex64>,
    tol: f64,
) -> Result<DMatrix<Complex64>, ExactError> {
    if !h.is_square() {
        return Err(ExactError::NotSquare {
            rows: h.nrows(),
            cols: h.ncols(),
        });
    }
    let adj = h.adjoint();
    let mut deviation = 0.0f64;
    for r in 0..h.nrows() {
        for c in 0..h.ncols() {
            deviation = deviation.max((h[(r, c)] - adj[(r, c)]).norm());
        }
    }
    if deviation > tol {
        return Err(ExactError::NotHermitianFloat { tol, deviation });
    }
    Ok((h + adj) * Complex64::new(0.5, 0.0))
}

/// Real eigenvalues of a Hermitian matrix (checked within `HERMITIAN_TOL`),
/// in the deterministic order the QL iteration produces.
pub(crate) fn hermitian_eigenvalues(h: &DMatrix<Complex64>) -> Result<Vec<f64>, ExactError> {
    let sym = symmetrize_checked(h, HERMITIAN_TOL)?;
    Ok(sym.symmetric_eigen().eigenvalues.iter().copied().collect())
}

/// Trace norm ‖h‖₁ = Σ|λᵢ| of a Hermitian matrix.
pub fn trace_norm_float(h: &DMatrix<Complex64>) -> Result<f64, ExactError> {
    Ok(hermitian_eigenvalues(h)?.iter().map(|l| l.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_examples() {
        let d = dmatrix![c(1.0, 0.0), c(0.0, 0.0); c(0.0, 0.0), c(-1.0, 0.0)];
        assert!((trace_norm_float(&d).unwrap() - 2.0).abs() < 1e-12);
        let half = dmatrix![c(0.5, 0.0), c(0.0, 0.0); c(0.0, 0.0), c(0.5, 0.0)];
        assert!((trace_norm_float(&half).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projector_difference_has_norm_sqrt_two() {
        // |0><0| - |+><+| = [[1/2, -1/2], [-1/2, -1/2]], eigenvalues ±1/√2.
        let m = dmatrix![c(0.5, 0.0), c(-0.5, 0.0); c(-0.5, 0.0), c(-0.5, 0.0)];
        assert!((trace_norm_float(&m).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn pauli_y_has_norm_two() {
        let y = dmatrix![c(0.0, 0.0), c(0.0, -1.0); c(0.0, 1.0), c(0.0, 0.0)];
        assert!((trace_norm_float(&y).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = dmatrix![c(0.0, 0.0), c(1.0, 0.0); c(0.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            trace_norm_float(&m),
            Err(ExactError::NotHermitianFloat { .. })
        ));
    }

    #[test]
    fn tiny_asymmetry_within_tolerance_is_accepted() {
        let m = dmatrix![c(1.0, 0.0), c(0.5, 1e-12); c(0.5, -1e-12 + 1e-13), c(1.0, 0.0)];
        assert!(trace_norm_float(&m).is_ok());
    }
}
