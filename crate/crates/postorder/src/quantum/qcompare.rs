//! Exact post-processing comparison of POVMs.
//!
//! M ⪯ N means M(j) = Σ_k p(j|k)·N(k) for a Markov matrix p. With
//! Gaussian-rational effects this is a rational LP: the Hermitian equality
//! per target effect splits into d² real equalities (real parts on the
//! upper triangle including the diagonal, then imaginary parts above the
//! diagonal), followed by one column-sum row per source outcome. A feasible
//! point is a verified Markov witness; a Farkas certificate is converted
//! into a separating ensemble witnessing a strict guessing-probability gap,
//! so every verdict carries an independently checkable proof.

use super::{QuantumEnsemble, QuantumError, QuantumEvm};
use crate::exact::{
    lp_feasible, rational_abs, FarkasCertificate, GaussianMatrix, GaussianRational, LpOutcome,
    LpProblem, Rational, RationalMatrix,
};
use crate::postproc::MarkovMatrix;
use num_traits::{One, Zero};

/// Outcome of an exact POVM comparison; every variant carries verified
/// certificates.
#[derive(Clone, Debug)]
pub enum QuantumVerdict {
    /// m ⪯ n with a Markov witness reproducing m from n.
    LessEq { witness: MarkovMatrix },
    /// n ⪯ m with a Markov witness reproducing n from m.
    GreaterEq { witness: MarkovMatrix },
    /// Both directions hold.
    Equivalent {
        forward: MarkovMatrix,
        backward: MarkovMatrix,
    },
    /// Neither direction holds; each ensemble exhibits a strict
    /// guessing-probability gap against the claimed direction.
    Incomparable {
        /// qpg(·; m) > qpg(·; n), refuting m ⪯ n.
        forward_gap: QuantumEnsemble,
        /// qpg(·; n) > qpg(·; m), refuting n ⪯ m.
        backward_gap: QuantumEnsemble,
    },
}

impl QuantumVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            QuantumVerdict::LessEq { .. } => "less",
            QuantumVerdict::GreaterEq { .. } => "greater",
            QuantumVerdict::Equivalent { .. } => "equivalent",
            QuantumVerdict::Incomparable { .. } => "incomparable",
        }
    }

    /// (m ⪯ n, n ⪯ m).
    pub fn directions(&self) -> (bool, bool) {
        match self {
            QuantumVerdict::LessEq { .. } => (true, false),
            QuantumVerdict::GreaterEq { .. } => (false, true),
            QuantumVerdict::Equivalent { .. } => (true, true),
            QuantumVerdict::Incomparable { .. } => (false, false),
        }
    }
}

/// Applies a Markov matrix to a POVM: target effect j is Σ_k p(j|k)·N(k).
/// Exact; the result is a list of matrices, not yet a validated POVM.
pub fn apply_markov(
    p: &MarkovMatrix,
    source: &QuantumEvm,
) -> Result<Vec<GaussianMatrix>, QuantumError> {
    if p.cols() != source.outcomes() {
        return Err(QuantumError::DimMismatch {
            left: p.cols(),
            right: source.outcomes(),
        });
    }
    let d = source.dim();
    let mut out = Vec::with_capacity(p.rows());
    for j in 0..p.rows() {
        let mut effect = GaussianMatrix::zeros(d, d);
        for (k, source_effect) in source.effects().iter().enumerate() {
            let scaled = source_effect.scale(p.get(j, k));
            effect = effect.add(&scaled).expect("effects share the POVM shape");
        }
        out.push(effect);
    }
    Ok(out)
}

/// Pure check: does `p` reproduce `target` from `source` exactly?
pub fn markov_certifies(p: &MarkovMatrix, target: &QuantumEvm, source: &QuantumEvm) -> bool {
    if target.dim() != source.dim()
        || p.rows() != target.outcomes()
        || p.cols() != source.outcomes()
    {
        return false;
    }
    match apply_markov(p, source) {
        Ok(effects) => effects
            .iter()
            .zip(target.effects())
            .all(|(computed, expected)| computed == expected),
        Err(_) => false,
    }
}

/// Exact guessing probability Σ_j max_k tr(M(j)·ρ_k) for an ensemble of
/// Gaussian-rational states.
pub fn qpg(e: &QuantumEnsemble, m: &QuantumEvm) -> Result<Rational, QuantumError> {
    if e.dim() != m.dim() {
        return Err(QuantumError::DimMismatch {
            left: e.dim(),
            right: m.dim(),
        });
    }
    let mut total = Rational::zero();
    for effect in m.effects() {
        let mut best: Option<Rational> = None;
        for member in e.members() {
            let value = effect.mul(member)?.trace()?;
            if !value.im.is_zero() {
                return Err(QuantumError::Internal(
                    "trace of a product of Hermitian matrices must be real".into(),
                ));
            }
            if best.as_ref().map_or(true, |b| value.re > *b) {
                best = Some(value.re);
            }
        }
        total += best.expect("ensembles are nonempty");
    }
    Ok(total)
}

enum Direction {
    Witness(MarkovMatrix),
    Refuted(FarkasCertificate),
}

/// Builds and solves the exact feasibility LP for "target ⪯ source".
fn direction(target: &QuantumEvm, source: &QuantumEvm) -> Result<Direction, QuantumError> {
    let d = target.dim();
    let m_out = target.outcomes();
    let n_out = source.outcomes();
    let vars = m_out * n_out;
    let rows = m_out * d * d + n_out;

    let mut a = RationalMatrix::zeros(rows, vars);
    let mut b = vec![Rational::zero(); rows];
    // Per target effect j: real parts for r ≤ c, then imaginary parts for
    // r < c — d² real equalities. The dual-extraction below depends on this
    // exact row order.
    let mut row = 0;
    for (j, target_effect) in target.effects().iter().enumerate() {
        for r in 0..d {
            for c in r..d {
                for (k, source_effect) in source.effects().iter().enumerate() {
                    *a.get_mut(row, j * n_out + k) = source_effect.get(r, c).re.clone();
                }
                b[row] = target_effect.get(r, c).re.clone();
                row += 1;
            }
        }
        for r in 0..d {
            for c in (r + 1)..d {
                for (k, source_effect) in source.effects().iter().enumerate() {
                    *a.get_mut(row, j * n_out + k) = source_effect.get(r, c).im.clone();
                }
                b[row] = target_effect.get(r, c).im.clone();
                row += 1;
            }
        }
    }
    for k in 0..n_out {
        for j in 0..m_out {
            *a.get_mut(row, j * n_out + k) = Rational::one();
        }
        b[row] = Rational::one();
        row += 1;
    }
    debug_assert_eq!(row, rows);

    match lp_feasible(&LpProblem::new(a, b)?)? {
        LpOutcome::Feasible(x) => {
            let witness = MarkovMatrix::new(m_out, n_out, x)?;
            if !markov_certifies(&witness, target, source) {
                return Err(QuantumError::Internal(
                    "feasible point does not reproduce the target POVM".into(),
                ));
            }
            Ok(Direction::Witness(witness))
        }
        LpOutcome::Infeasible(cert) => Ok(Direction::Refuted(cert)),
    }
}

/// Converts a Farkas certificate for the infeasibility of "target ⪯ source"
/// into an ensemble with a strict guessing-probability gap.
///
/// The first m_out·d² dual coordinates reassemble into Hermitian matrices
/// Y_j (diagonal Y_rr = y_re(r,r); off-diagonal Y_rc = y_re/2 + i·y_im/2
/// for r < c), the rest are column-sum duals z_k. The certificate
/// inequalities read tr(Y_j N(k)) + z_k ≤ 0 for all j,k and
/// Σ_j tr(Y_j M(j)) + Σ_k z_k > 0. Shifting every Y_j by c·𝟙 with the
/// Gershgorin bound c = max(0, max_{j,r} Σ_c(|Re Y_j[r,c]| + |Im Y_j[r,c]|))
/// makes all members PSD while the shift contributes the same c·d to both
/// sides (any POVM's effects trace-sum to d), so after normalizing by the
/// total mass Z the strict gap qpg(ℰ; target) > qpg(ℰ; source) survives.
fn separating_from_dual(
    target: &QuantumEvm,
    source: &QuantumEvm,
    cert: &FarkasCertificate,
) -> Result<QuantumEnsemble, QuantumError> {
    let d = target.dim();
    let m_out = target.outcomes();
    let y = &cert.y;

    let mut members_raw = Vec::with_capacity(m_out);
    for j in 0..m_out {
        let block = &y[j * d * d..(j + 1) * d * d];
        let mut matrix = GaussianMatrix::zeros(d, d);
        let mut re_cursor = 0;
        for r in 0..d {
            for c in r..d {
                if r == c {
                    *matrix.get_mut(r, r) =
                        GaussianRational::from_rational(block[re_cursor].clone());
                } else {
                    let re = &block[re_cursor] / Rational::from_integer(2.into());
                    *matrix.get_mut(r, c) = GaussianRational::new(re.clone(), Rational::zero());
                    *matrix.get_mut(c, r) = GaussianRational::new(re, Rational::zero());
                }
                re_cursor += 1;
            }
        }
        let mut im_cursor = d * (d + 1) / 2;
        for r in 0..d {
            for c in (r + 1)..d {
                let im = &block[im_cursor] / Rational::from_integer(2.into());
                matrix.get_mut(r, c).im = im.clone();
                matrix.get_mut(c, r).im = -im;
                im_cursor += 1;
            }
        }
        members_raw.push(matrix);
    }

    // Rational lower bound on the spectrum via Gershgorin discs.
    let mut shift = Rational::zero();
    for matrix in &members_raw {
        for r in 0..d {
            let mut row_sum = Rational::zero();
            for c in 0..d {
                let entry = matrix.get(r, c);
                row_sum += rational_abs(&entry.re) + rational_abs(&entry.im);
            }
            if row_sum > shift {
                shift = row_sum;
            }
        }
    }

    let mut mass = Rational::zero();
    for matrix in &members_raw {
        mass += matrix.trace()?.re;
    }
    mass += Rational::from_integer(((m_out * d) as i64).into()) * &shift;
    if mass <= Rational::zero() {
        return Err(QuantumError::Internal(
            "separating dual produced a nonpositive total mass".into(),
        ));
    }

    let inv_mass = Rational::one() / &mass;
    let members: Vec<GaussianMatrix> = members_raw
        .into_iter()
        .map(|matrix| {
            let shifted = matrix
                .add(&GaussianMatrix::identity(d).scale(&shift))
                .expect("shift shares the member shape");
            shifted.scale(&inv_mass)
        })
        .collect();

    // Full validation (Hermitian, PSD, unit mass) plus the strict gap.
    let ensemble = QuantumEnsemble::new(d, members)?;
    let target_pg = qpg(&ensemble, target)?;
    let source_pg = qpg(&ensemble, source)?;
    if target_pg <= source_pg {
        return Err(QuantumError::Internal(
            "separating ensemble fails to produce a strict guessing gap".into(),
        ));
    }
    Ok(ensemble)
}

/// An ensemble strictly separating target from source (possible exactly
/// when "target ⪯ source" fails); errors if the pair is comparable in that
/// direction.
pub fn quantum_separating_ensemble(
    target: &QuantumEvm,
    source: &QuantumEvm,
) -> Result<QuantumEnsemble, QuantumError> {
    check_same_dim(target, source)?;
    match direction(target, source)? {
        Direction::Witness(_) => Err(QuantumError::Comparable(
            "target is a post-processing of source",
        )),
        Direction::Refuted(cert) => separating_from_dual(target, source, &cert),
    }
}

fn check_same_dim(m: &QuantumEvm, n: &QuantumEvm) -> Result<(), QuantumError> {
    if m.dim() != n.dim() {
        return Err(QuantumError::DimMismatch {
            left: m.dim(),
            right: n.dim(),
        });
    }
    Ok(())
}

/// Decides the post-processing relation between two POVMs exactly, in both
/// directions, with verified certificates attached to the verdict.
pub fn qcompare(m: &QuantumEvm, n: &QuantumEvm) -> Result<QuantumVerdict, QuantumError> {
    check_same_dim(m, n)?;
    let forward = direction(m, n)?;
    let backward = direction(n, m)?;
    Ok(match (forward, backward) {
        (Direction::Witness(forward), Direction::Witness(backward)) => {
            QuantumVerdict::Equivalent { forward, backward }
        }
        (Direction::Witness(witness), Direction::Refuted(_)) => QuantumVerdict::LessEq { witness },
        (Direction::Refuted(_), Direction::Witness(witness)) => {
            QuantumVerdict::GreaterEq { witness }
        }
        (Direction::Refuted(cf), Direction::Refuted(cb)) => QuantumVerdict::Incomparable {
            forward_gap: separating_from_dual(m, n, &cf)?,
            backward_gap: separating_from_dual(n, m, &cb)?,
        },
    })
}
