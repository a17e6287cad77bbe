//! Exact positive-semidefiniteness for Hermitian Gaussian-rational matrices.
//!
//! The characteristic polynomial det(λI − h) = λⁿ − c₁λⁿ⁻¹ + c₂λⁿ⁻² − …
//! has cₖ equal to the k-th elementary symmetric polynomial of the
//! eigenvalues. A Hermitian matrix has a real spectrum, and a real-rooted
//! polynomial has all roots ≥ 0 exactly when all elementary symmetric
//! functions are ≥ 0 — so PSD reduces to exact sign checks on the cₖ,
//! computed by the Faddeev–LeVerrier recurrence without any root finding.

use super::{ExactError, GaussianMatrix, GaussianRational, Rational};
use num_traits::Signed;

/// Coefficients [c₁, …, cₙ] with det(λI − h) = λⁿ − c₁λⁿ⁻¹ + c₂λⁿ⁻² − …,
/// i.e. cₖ is the k-th elementary symmetric polynomial of the eigenvalues.
/// Defined for any square matrix; entries are Gaussian rationals in general.
pub fn char_poly_coeffs(h: &GaussianMatrix) -> Result<Vec<GaussianRational>, ExactError> {
    if !h.is_square() {
        return Err(ExactError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let n = h.rows();
    // Faddeev–LeVerrier: M₁ = I, bₖ = -tr(h·Mₖ)/k, Mₖ₊₁ = h·Mₖ + bₖI,
    // where det(λI − h) = λⁿ + b₁λⁿ⁻¹ + … + bₙ; then cₖ = (-1)ᵏ bₖ.
    let mut coeffs = Vec::with_capacity(n);
    let mut m = GaussianMatrix::identity(n);
    let mut sign_flip = true; // (-1)^k for k = 1 is -1, so flip b₁.
    for k in 1..=n {
        let hm = h.mul(&m)?;
        let b = (-hm.trace()?).scale(&Rational::new(1.into(), (k as i64).into()));
        coeffs.push(if sign_flip { -&b } else { b.clone() });
        sign_flip = !sign_flip;
        if k < n {
            let mut next = hm;
            for i in 0..n {
                *next.get_mut(i, i) = &*next.get(i, i) + &b;
            }
            m = next;
        }
    }
    Ok(coeffs)
}

/// Exact PSD test for a Hermitian matrix. Errors if the input is not
/// Hermitian (checked exactly).
pub fn psd_exact(h: &GaussianMatrix) -> Result<bool, ExactError> {
    h.check_hermitian()?;
    let coeffs = char_poly_coeffs(h)?;
    let mut all_nonneg = true;
    for c in &coeffs {
        if !c.is_real() {
            // Hermitian input forces a real characteristic polynomial.
            return Err(ExactError::Internal(
                "characteristic polynomial of a Hermitian matrix came out non-real".into(),
            ));
        }
        if c.re.is_negative() {
            all_nonneg = false;
        }
    }
    Ok(all_nonneg)
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    fn real_matrix(rows: &[&[(i64, i64)]]) -> GaussianMatrix {
        let entries: Vec<Vec<GaussianRational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(n, d)| GaussianRational::from_rational(rat(n, d)))
                    .collect()
            })
            .collect();
        GaussianMatrix::from_entries(&entries).unwrap()
    }

    #[test]
    fn classic_two_by_two_examples() {
        // [[2,1],[1,1]]: trace 3, det 1 -> PSD.
        assert!(psd_exact(&real_matrix(&[&[(2, 1), (1, 1)], &[(1, 1), (1, 1)]])).unwrap());
        // [[1,2],[2,1]]: det -3 -> not PSD.
        assert!(!psd_exact(&real_matrix(&[&[(1, 1), (2, 1)], &[(2, 1), (1, 1)]])).unwrap());
    }

    #[test]
    fn zero_and_identity_are_psd() {
        assert!(psd_exact(&GaussianMatrix::zeros(3, 3)).unwrap());
        assert!(psd_exact(&GaussianMatrix::identity(3)).unwrap());
    }

    #[test]
    fn char_poly_matches_trace_and_determinant() {
        let m = real_matrix(&[&[(2, 1), (1, 1)], &[(1, 1), (1, 1)]]);
        let c = char_poly_coeffs(&m).unwrap();
        assert_eq!(c[0], GaussianRational::from_rational(rat_int(3)));
        assert_eq!(c[1], GaussianRational::from_rational(rat_int(1)));
    }

    #[test]
    fn complex_hermitian_psd() {
        // [[1, -i],[i, 1]] has eigenvalues {0, 2}: PSD but singular.
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        let h = GaussianMatrix::from_entries(&[
            vec![one.clone(), -&i],
            vec![i.clone(), one.clone()],
        ])
        .unwrap();
        assert!(psd_exact(&h).unwrap());
        // Scale the off-diagonal past 1 and it stops being PSD.
        let two_i = &i + &i;
        let h2 = GaussianMatrix::from_entries(&[
            vec![one.clone(), -&two_i],
            vec![two_i.clone(), one],
        ])
        .unwrap();
        assert!(!psd_exact(&h2).unwrap());
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = real_matrix(&[&[(1, 1), (2, 1)], &[(3, 1), (1, 1)]]);
        assert!(matches!(
            psd_exact(&m),
            Err(ExactError::NotHermitian { row: 0, col: 1 })
        ));
    }

    #[test]
    fn rank_one_projector_is_psd() {
        // (1/2)[[1,1],[1,1]] has eigenvalues {0,1}.
        assert!(psd_exact(&real_matrix(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]])).unwrap());
    }
}
