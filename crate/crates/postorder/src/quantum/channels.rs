//! Superoperators on vectorized operators and channel-level checks.
//!
//! A map Γ: B(ℂ^din) → B(ℂ^dout) in the Heisenberg picture is stored as the
//! (dout²)×(din²) complex matrix acting on column-vectorized operators
//! (entry (r,c) of X sits at position c·rows + r). Construction checks
//! Hermiticity preservation on a Hermitian basis; complete positivity and
//! unitality are decided on the Choi matrix and the image of the identity.
//! The predual (the Schrödinger-picture action on states) is the adjoint
//! matrix with respect to the Hilbert–Schmidt pairing.
//!
//! This is the float regime: tolerances are explicit constants or
//! parameters, never hidden.

use super::{QuantumEnsemble, QuantumError, QuantumEvm};
use crate::exact::{
    hermitian_eigenvalues, rational_to_f64, trace_norm_float, HERMITIAN_TOL,
};
use crate::postproc::MarkovMatrix;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Float positivity slack: a Choi matrix counts as PSD when its smallest
/// eigenvalue is ≥ −FLOAT_PSD_TOL, and unitality/factorization deviations
/// compare against the same scale by default.
pub const FLOAT_PSD_TOL: f64 = 1e-9;

fn vec_of(x: &DMatrix<Complex64>) -> DVector<Complex64> {
    DVector::from_column_slice(x.as_slice())
}

fn mat_of(v: &DVector<Complex64>, rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_column_slice(rows, cols, v.as_slice())
}

fn hermitian_deviation(x: &DMatrix<Complex64>) -> f64 {
    let adj = x.adjoint();
    let mut deviation = 0.0f64;
    for r in 0..x.nrows() {
        for c in 0..x.ncols() {
            deviation = deviation.max((x[(r, c)] - adj[(r, c)]).norm());
        }
    }
    deviation
}

/// Max-abs entrywise distance between two equal-shaped complex matrices.
pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    let mut worst = 0.0f64;
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            worst = worst.max((a[(r, c)] - b[(r, c)]).norm());
        }
    }
    worst
}

/// A linear map B(ℂ^din) → B(ℂ^dout) (Heisenberg picture), validated to
/// preserve Hermiticity on a basis within 1e-9.
#[derive(Clone, Debug)]
pub struct Superoperator {
    dim_in: usize,
    dim_out: usize,
    mat: DMatrix<Complex64>,
}

impl Superoperator {
    pub fn new(
        dim_in: usize,
        dim_out: usize,
        mat: DMatrix<Complex64>,
    ) -> Result<Self, QuantumError> {
        let expected_rows = dim_out * dim_out;
        let expected_cols = dim_in * dim_in;
        if mat.nrows() != expected_rows || mat.ncols() != expected_cols {
            return Err(QuantumError::SuperoperatorShape {
                rows: mat.nrows(),
                cols: mat.ncols(),
                expected_rows,
                expected_cols,
            });
        }
        let s = Superoperator {
            dim_in,
            dim_out,
            mat,
        };
        // Hermiticity preservation on the standard Hermitian basis:
        // E_rr, E_rc + E_cr, i(E_rc − E_cr).
        let mut deviation = 0.0f64;
        for r in 0..dim_in {
            for c in r..dim_in {
                let mut re_elt = DMatrix::zeros(dim_in, dim_in);
                re_elt[(r, c)] += Complex64::new(1.0, 0.0);
                re_elt[(c, r)] += Complex64::new(1.0, 0.0);
                deviation = deviation.max(hermitian_deviation(&s.apply_unchecked(&re_elt)));
                if r != c {
                    let mut im_elt = DMatrix::zeros(dim_in, dim_in);
                    im_elt[(r, c)] = Complex64::new(0.0, 1.0);
                    im_elt[(c, r)] = Complex64::new(0.0, -1.0);
                    deviation = deviation.max(hermitian_deviation(&s.apply_unchecked(&im_elt)));
                }
            }
        }
        if deviation > HERMITIAN_TOL {
            return Err(QuantumError::NotHermiticityPreserving { deviation });
        }
        Ok(s)
    }

    /// For maps derived from already-validated ones (composition, tensor
    /// lifting, identity), where re-checking would only accumulate
    /// tolerance.
    fn raw(dim_in: usize, dim_out: usize, mat: DMatrix<Complex64>) -> Self {
        Superoperator {
            dim_in,
            dim_out,
            mat,
        }
    }

    /// Builds the matrix by applying `f` to every standard basis operator
    /// E_rc, then validates.
    pub fn from_map<F>(dim_in: usize, dim_out: usize, f: F) -> Result<Self, QuantumError>
    where
        F: Fn(&DMatrix<Complex64>) -> DMatrix<Complex64>,
    {
        let mut mat = DMatrix::zeros(dim_out * dim_out, dim_in * dim_in);
        for c in 0..dim_in {
            for r in 0..dim_in {
                let mut basis = DMatrix::zeros(dim_in, dim_in);
                basis[(r, c)] = Complex64::new(1.0, 0.0);
                let image = f(&basis);
                assert_eq!(
                    image.shape(),
                    (dim_out, dim_out),
                    "map image must be dim_out × dim_out"
                );
                mat.set_column(c * dim_in + r, &vec_of(&image));
            }
        }
        Superoperator::new(dim_in, dim_out, mat)
    }

    pub fn identity(dim: usize) -> Self {
        Superoperator::raw(dim, dim, DMatrix::identity(dim * dim, dim * dim))
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    fn apply_unchecked(&self, x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        mat_of(&(&self.mat * vec_of(x)), self.dim_out, self.dim_out)
    }

    /// Applies the map to an operator on the input space.
    pub fn apply(&self, x: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>, QuantumError> {
        if x.nrows() != self.dim_in || x.ncols() != self.dim_in {
            return Err(QuantumError::OperatorShape {
                rows: x.nrows(),
                cols: x.ncols(),
                dim: self.dim_in,
            });
        }
        Ok(self.apply_unchecked(x))
    }

    /// Applies the predual (Schrödinger picture) to a state on the output
    /// space: the adjoint matrix under the Hilbert–Schmidt pairing.
    pub fn apply_predual(
        &self,
        state: &DMatrix<Complex64>,
    ) -> Result<DMatrix<Complex64>, QuantumError> {
        if state.nrows() != self.dim_out || state.ncols() != self.dim_out {
            return Err(QuantumError::OperatorShape {
                rows: state.nrows(),
                cols: state.ncols(),
                dim: self.dim_out,
            });
        }
        Ok(mat_of(
            &(self.mat.adjoint() * vec_of(state)),
            self.dim_in,
            self.dim_in,
        ))
    }

    /// outer ∘ inner (apply inner first).
    pub fn compose(outer: &Superoperator, inner: &Superoperator) -> Result<Self, QuantumError> {
        if inner.dim_out != outer.dim_in {
            return Err(QuantumError::CompositionMismatch {
                inner_out: inner.dim_out,
                outer_in: outer.dim_in,
            });
        }
        Ok(Superoperator::raw(
            inner.dim_in,
            outer.dim_out,
            &outer.mat * &inner.mat,
        ))
    }

    /// Lifts the map to act on the first tensor factor of B(ℂ^din ⊗ ℂⁿ):
    /// A ⊗ B ↦ S(A) ⊗ B, with first-factor-major indexing (a, i) ↦ a·n + i.
    pub fn tensor_with_identity(&self, n: usize) -> Superoperator {
        let din = self.dim_in;
        let dout = self.dim_out;
        let big_in = din * n;
        let big_out = dout * n;
        let mut mat = DMatrix::zeros(big_out * big_out, big_in * big_in);
        for c1 in 0..din {
            for r1 in 0..din {
                let col = c1 * din + r1;
                for x1 in 0..dout {
                    for y1 in 0..dout {
                        let coeff = self.mat[(y1 * dout + x1, col)];
                        if coeff.norm() == 0.0 {
                            continue;
                        }
                        // S(E_{r1 c1}) ⊗ E_{r2 c2} places the coefficient at
                        // output entry ((x1, r2), (y1, c2)) for every r2 = c2
                        // block position.
                        for r2 in 0..n {
                            for c2 in 0..n {
                                let out_row = x1 * n + r2;
                                let out_col = y1 * n + c2;
                                let in_row = r1 * n + r2;
                                let in_col = c1 * n + c2;
                                mat[(out_col * big_out + out_row, in_col * big_in + in_row)] =
                                    coeff;
                            }
                        }
                    }
                }
            }
        }
        Superoperator::raw(big_in, big_out, mat)
    }

    /// The Choi matrix Σ_{r,c} E_rc ⊗ S(E_rc) on ℂ^din ⊗ ℂ^dout,
    /// first-factor-major indexing.
    pub fn choi(&self) -> DMatrix<Complex64> {
        let din = self.dim_in;
        let dout = self.dim_out;
        let total = din * dout;
        DMatrix::from_fn(total, total, |row, col| {
            let (r, x) = (row / dout, row % dout);
            let (c, y) = (col / dout, col % dout);
            self.mat[(y * dout + x, c * din + r)]
        })
    }

    /// Complete positivity: the Choi matrix is PSD within FLOAT_PSD_TOL.
    pub fn is_cp(&self) -> Result<bool, QuantumError> {
        let eigenvalues = hermitian_eigenvalues(&self.choi())?;
        let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(min >= -FLOAT_PSD_TOL)
    }

    /// Unitality: S(𝟙) = 𝟙 within FLOAT_PSD_TOL entrywise.
    pub fn is_unital(&self) -> Result<bool, QuantumError> {
        let image = self.apply(&DMatrix::identity(self.dim_in, self.dim_in))?;
        Ok(max_abs_diff(&image, &DMatrix::identity(self.dim_out, self.dim_out)) <= FLOAT_PSD_TOL)
    }
}

/// The measure-and-prepare (quantum-classical) channel of a POVM in the
/// Heisenberg picture: Γ(a) = Σ_j a[j,j]·M(j), mapping B(ℂ^outcomes) to
/// B(ℂ^dim). Always unital and CP; both are re-checked.
pub fn qc_channel(m: &QuantumEvm) -> Result<Superoperator, QuantumError> {
    let effects: Vec<DMatrix<Complex64>> = m
        .effects()
        .iter()
        .map(|e| e.to_complex_float())
        .collect();
    let outcomes = m.outcomes();
    let dim = m.dim();
    let s = Superoperator::from_map(outcomes, dim, |a| {
        let mut out = DMatrix::zeros(dim, dim);
        for (j, effect) in effects.iter().enumerate() {
            out += effect * a[(j, j)];
        }
        out
    })?;
    if !s.is_cp()? || !s.is_unital()? {
        return Err(QuantumError::Internal(
            "measurement channel must be CP and unital".into(),
        ));
    }
    Ok(s)
}

/// The classical-relabeling channel of a Markov matrix, in the Heisenberg
/// picture: Φ(a) = Σ_k (Σ_j p(j|k)·a[j,j])·E_kk, mapping B(ℂ^rows) to
/// B(ℂ^cols). If p certifies target = p·source, then
/// qc_channel(target) = qc_channel(source) ∘ Φ.
pub fn markov_channel(p: &MarkovMatrix) -> Result<Superoperator, QuantumError> {
    let rows = p.rows();
    let cols = p.cols();
    let entries: Vec<Vec<f64>> = (0..rows)
        .map(|j| (0..cols).map(|k| rational_to_f64(p.get(j, k))).collect())
        .collect();
    Superoperator::from_map(rows, cols, |a| {
        let mut out = DMatrix::zeros(cols, cols);
        for k in 0..cols {
            let mut total = Complex64::new(0.0, 0.0);
            for (j, row) in entries.iter().enumerate() {
                total += a[(j, j)] * row[k];
            }
            out[(k, k)] = total;
        }
        out
    })
}

/// Optimal binary discrimination probability (tr ρ₀ + tr ρ₁ + ‖ρ₀−ρ₁‖₁)/2,
/// the supremum of the guessing probability over all POVMs. With a channel
/// supplied, the ensemble is first pushed through its predual, yielding
/// the best guessing probability achievable after the channel. Float
/// regime: accurate to the eigensolver's precision (≈1e-12 at desk sizes).
pub fn helstrom_binary(
    e: &QuantumEnsemble,
    gamma: Option<&Superoperator>,
) -> Result<f64, QuantumError> {
    if e.len() != 2 {
        return Err(QuantumError::NotBinary { found: e.len() });
    }
    let mut rho0 = e.members()[0].to_complex_float();
    let mut rho1 = e.members()[1].to_complex_float();
    if let Some(gamma) = gamma {
        if gamma.dim_out() != e.dim() {
            return Err(QuantumError::DimMismatch {
                left: gamma.dim_out(),
                right: e.dim(),
            });
        }
        rho0 = gamma.apply_predual(&rho0)?;
        rho1 = gamma.apply_predual(&rho1)?;
    }
    let traces = (rho0.trace() + rho1.trace()).re;
    let norm = trace_norm_float(&(rho0 - rho1))?;
    Ok((traces + norm) / 2.0)
}

/// Outcome of checking Γ ≈ Λ∘Φ with Φ required to be a channel.
#[derive(Clone, Copy, Debug)]
pub struct FactorizationReport {
    /// Φ is completely positive (Choi PSD within FLOAT_PSD_TOL).
    pub phi_cp: bool,
    /// Φ is unital within FLOAT_PSD_TOL.
    pub phi_unital: bool,
    /// Max-abs entrywise deviation between Λ∘Φ and Γ.
    pub deviation: f64,
    /// The tolerance the deviation was compared against.
    pub tol: f64,
}

impl FactorizationReport {
    pub fn holds(&self) -> bool {
        self.phi_cp && self.phi_unital && self.deviation <= self.tol
    }
}

/// Verifies a claimed factorization Γ = Λ∘Φ through an intermediate
/// channel Φ: dimension chains must match; Φ must be CP and unital; the
/// superoperator matrices of Λ∘Φ and Γ must agree within `tol` entrywise.
pub fn verify_factorization(
    gamma: &Superoperator,
    lambda: &Superoperator,
    phi: &Superoperator,
    tol: f64,
) -> Result<FactorizationReport, QuantumError> {
    if gamma.dim_in() != phi.dim_in() {
        return Err(QuantumError::DimMismatch {
            left: gamma.dim_in(),
            right: phi.dim_in(),
        });
    }
    if gamma.dim_out() != lambda.dim_out() {
        return Err(QuantumError::DimMismatch {
            left: gamma.dim_out(),
            right: lambda.dim_out(),
        });
    }
    let composed = Superoperator::compose(lambda, phi)?;
    Ok(FactorizationReport {
        phi_cp: phi.is_cp()?,
        phi_unital: phi.is_unital()?,
        deviation: max_abs_diff(composed.matrix(), gamma.matrix()),
        tol,
    })
}

/// Heisenberg-picture depolarizing map a ↦ λ·a + (1−λ)·tr(a)/d·𝟙.
/// A channel (CP) for λ ∈ [−1/(d²−1), 1]; λ = 0 is the completely
/// mixing (constant-on-states) channel.
pub fn depolarizing(dim: usize, lambda: f64) -> Result<Superoperator, QuantumError> {
    Superoperator::from_map(dim, dim, |a| {
        let mixed = DMatrix::identity(dim, dim) * (a.trace() * ((1.0 - lambda) / dim as f64));
        a * Complex64::new(lambda, 0.0) + mixed
    })
}

/// Heisenberg-picture completely dephasing map a ↦ diag(a).
pub fn dephasing(dim: usize) -> Result<Superoperator, QuantumError> {
    Superoperator::from_map(dim, dim, |a| {
        DMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                a[(r, r)]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    })
}

/// Heisenberg-picture mixed-unitary channel a ↦ Σ wᵢ·Uᵢ†·a·Uᵢ for convex
/// weights w; unital and CP by construction.
pub fn mixed_unitary(
    dim: usize,
    parts: &[(f64, DMatrix<Complex64>)],
) -> Result<Superoperator, QuantumError> {
    for (_, u) in parts {
        if u.nrows() != dim || u.ncols() != dim {
            return Err(QuantumError::OperatorShape {
                rows: u.nrows(),
                cols: u.ncols(),
                dim,
            });
        }
    }
    Superoperator::from_map(dim, dim, |a| {
        let mut out = DMatrix::zeros(dim, dim);
        for (w, u) in parts {
            out += (u.adjoint() * a * u) * Complex64::new(*w, 0.0);
        }
        out
    })
}
