//! The post-processing order on classical measurements, decided exactly.
//!
//! M is a post-processing of N (written M ⪯ N) when a Markov matrix
//! p(j|k) ≥ 0 with unit column sums recombines N's effects into M's:
//! M(j) = Σₖ p(j|k)·N(k). Deciding M ⪯ N is a rational feasibility LP; its
//! Farkas dual, suitably shifted and normalized, is a state ensemble on
//! which M strictly beats N at the state-discrimination game — so every
//! "no" answer ships a checkable counterexample, and every "yes" ships the
//! Markov witness itself.

use crate::exact::{
    dot, lp_feasible, ExactError, FarkasCertificate, LpOutcome, LpProblem, Rational,
    RationalMatrix,
};
use crate::gpt::{ClassicalSpace, Ensemble, Evm, GptError};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PostprocError {
    #[error(transparent)]
    Gpt(#[from] GptError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("measurements live on different spaces ({left} vs {right})")]
    SpaceMismatch { left: usize, right: usize },
    #[error("markov entry ({row},{col}) is negative")]
    MarkovNegative { row: usize, col: usize },
    #[error("markov column {col} sums to {found}, expected 1")]
    MarkovColumnSum { col: usize, found: String },
    #[error("markov matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MarkovShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("the pair is comparable ({0}), so no separating ensemble exists")]
    ComparablePair(&'static str),
    #[error("ensemble enumeration requires max_members ≥ 1")]
    ZeroMaxMembers,
    #[error("ensemble enumeration requires max_denominator ≥ 1")]
    ZeroMaxDenominator,
}

/// A column-stochastic matrix p(j|k): `rows` target outcomes j, `cols`
/// source outcomes k, entries ≥ 0, every column summing to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl MarkovMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, PostprocError> {
        if entries.len() != rows * cols {
            return Err(PostprocError::Exact(ExactError::DataLength {
                rows,
                cols,
                expected: rows * cols,
                found: entries.len(),
            }));
        }
        for row in 0..rows {
            for col in 0..cols {
                if entries[row * cols + col].is_negative() {
                    return Err(PostprocError::MarkovNegative { row, col });
                }
            }
        }
        for col in 0..cols {
            let sum: Rational = (0..rows).map(|row| entries[row * cols + col].clone()).sum();
            if !sum.is_one() {
                return Err(PostprocError::MarkovColumnSum {
                    col,
                    found: crate::exact::format_rational(&sum),
                });
            }
        }
        Ok(MarkovMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    /// Recombines a source measurement: returns the effect vectors
    /// Σₖ p(j|k)·N(k) for each target outcome j.
    pub fn apply(&self, source: &Evm) -> Result<Vec<Vec<Rational>>, PostprocError> {
        if source.outcomes() != self.cols {
            return Err(PostprocError::MarkovShape {
                rows: self.rows,
                cols: self.cols,
                expected_rows: self.rows,
                expected_cols: source.outcomes(),
            });
        }
        let d = source.space().dim();
        let mut out = vec![vec![Rational::zero(); d]; self.rows];
        for (k, effect) in source.effects().iter().enumerate() {
            for j in 0..self.rows {
                let p = self.get(j, k);
                if p.is_zero() {
                    continue;
                }
                for (x, v) in effect.values().iter().enumerate() {
                    out[j][x] += p * v;
                }
            }
        }
        Ok(out)
    }

    /// Exact check that applying this matrix to `source` reproduces
    /// `target`. Pure check, no solving.
    pub fn certifies(&self, target: &Evm, source: &Evm) -> bool {
        if self.rows != target.outcomes() || self.cols != source.outcomes() {
            return false;
        }
        match self.apply(source) {
            Ok(effects) => effects
                .iter()
                .zip(target.effects())
                .all(|(got, want)| got == want.values()),
            Err(_) => false,
        }
    }
}

/// Verdict of an exact comparison in the post-processing order, carrying
/// re-verified certificates: Markov witnesses for each direction that
/// holds, strict-gap ensembles for each direction that fails.
#[derive(Clone, Debug)]
pub enum CompareVerdict {
    /// M ⪯ N strictly: `witness` recombines N into M, no reverse witness.
    LessEq { witness: MarkovMatrix },
    /// N ⪯ M strictly: `witness` recombines M into N.
    GreaterEq { witness: MarkovMatrix },
    /// Both directions hold.
    Equivalent {
        forward: MarkovMatrix,
        backward: MarkovMatrix,
    },
    /// Neither direction holds. `forward_gap` is an ensemble with
    /// pg(·, M) > pg(·, N) (refuting M ⪯ N); `backward_gap` the reverse.
    Incomparable {
        forward_gap: Ensemble,
        backward_gap: Ensemble,
    },
}

impl CompareVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            CompareVerdict::LessEq { .. } => "less",
            CompareVerdict::GreaterEq { .. } => "greater",
            CompareVerdict::Equivalent { .. } => "equivalent",
            CompareVerdict::Incomparable { .. } => "incomparable",
        }
    }

    /// (M ⪯ N, N ⪯ M) as booleans.
    pub fn directions(&self) -> (bool, bool) {
        match self {
            CompareVerdict::LessEq { .. } => (true, false),
            CompareVerdict::GreaterEq { .. } => (false, true),
            CompareVerdict::Equivalent { .. } => (true, true),
            CompareVerdict::Incomparable { .. } => (false, false),
        }
    }
}

/// Optimal state-discrimination ("guessing") probability of a measurement
/// on an ensemble: pg(ℰ, M) = Σⱼ maxₖ ⟨M(j), ρₖ⟩, exact.
pub fn pg(e: &Ensemble, m: &Evm) -> Result<Rational, PostprocError> {
    if e.space() != m.space() {
        return Err(PostprocError::SpaceMismatch {
            left: e.space().dim(),
            right: m.space().dim(),
        });
    }
    let mut total = Rational::zero();
    for effect in m.effects() {
        let best = e
            .members()
            .iter()
            .map(|rho| dot(effect.values(), rho))
            .max()
            .expect("ensembles are nonempty");
        total += best;
    }
    Ok(total)
}

/// Outcome of the one-directional feasibility question "is M a
/// post-processing of N?".
enum Direction {
    Witness(MarkovMatrix),
    Refuted(FarkasCertificate),
}

/// Builds and solves the feasibility LP for M ⪯ N. Variable x_{j,k} is the
/// Markov entry p(j|k) at flat index j·n_out + k; rows are the d·m_out
/// effect-coordinate equalities followed by the n_out column-sum
/// equalities (this row order is what `separating_ensemble_from_dual`
/// assumes when it reads the Farkas vector back).
fn direction(m: &Evm, n: &Evm) -> Result<Direction, PostprocError> {
    let d = m.space().dim();
    let m_out = m.outcomes();
    let n_out = n.outcomes();
    let vars = m_out * n_out;
    let rows = m_out * d + n_out;
    let mut a = RationalMatrix::zeros(rows, vars);
    let mut b = Vec::with_capacity(rows);
    for j in 0..m_out {
        for x in 0..d {
            let r = j * d + x;
            for k in 0..n_out {
                *a.get_mut(r, j * n_out + k) = n.effect(k).values()[x].clone();
            }
            b.push(m.effect(j).values()[x].clone());
        }
    }
    for k in 0..n_out {
        let r = m_out * d + k;
        for j in 0..m_out {
            *a.get_mut(r, j * n_out + k) = Rational::one();
        }
        b.push(Rational::one());
    }
    let problem = LpProblem::new(a, b)?;
    match lp_feasible(&problem)? {
        LpOutcome::Feasible(x) => {
            let witness = MarkovMatrix::new(m_out, n_out, x)?;
            if !witness.certifies(m, n) {
                return Err(PostprocError::Exact(ExactError::Internal(
                    "feasible point does not recombine the source into the target".into(),
                )));
            }
            Ok(Direction::Witness(witness))
        }
        LpOutcome::Infeasible(cert) => Ok(Direction::Refuted(cert)),
    }
}

/// Turns the Farkas dual of a failed "M ⪯ N" LP into an ensemble on which
/// M strictly outperforms N.
///
/// The dual provides per-outcome vectors yⱼ (from the effect-coordinate
/// rows) and scalars zₖ (from the column-sum rows) with ⟨yⱼ, N(k)⟩ ≤ −zₖ
/// and Σⱼ⟨yⱼ, M(j)⟩ + Σₖ zₖ > 0. Shifting every yⱼ by c·u (c kills the
/// most negative coordinate) and normalizing by the total mass Z preserves
/// the strict gap, because Σⱼ⟨u, M(j)·u-pairing⟩ contributes the same c·d
/// to both sides: pg(ℰ, M) ≥ Σⱼ⟨M(j), ρⱼ⟩ > Σₖ maxⱼ⟨N(k), ρⱼ⟩ = pg(ℰ, N).
fn separating_ensemble_from_dual(
    m: &Evm,
    n: &Evm,
    cert: &FarkasCertificate,
) -> Result<Ensemble, PostprocError> {
    let d = m.space().dim();
    let m_out = m.outcomes();
    let y = &cert.y[..m_out * d];
    let shift = y
        .iter()
        .filter(|v| v.is_negative())
        .cloned()
        .min()
        .map(|v| -v)
        .unwrap_or_else(Rational::zero);
    let mass: Rational = y.iter().map(|v| v + &shift).sum();
    if !mass.is_positive() {
        return Err(PostprocError::Exact(ExactError::Internal(
            "separating ensemble has nonpositive total mass".into(),
        )));
    }
    let members: Vec<Vec<Rational>> = (0..m_out)
        .map(|j| {
            (0..d)
                .map(|x| (&y[j * d + x] + &shift) / &mass)
                .collect()
        })
        .collect();
    let ensemble = Ensemble::new(m.space(), members)?;
    // The gap must come out strict; anything else means the dual reading
    // above is wrong, and we fail loudly rather than return a bad witness.
    if pg(&ensemble, m)? <= pg(&ensemble, n)? {
        return Err(PostprocError::Exact(ExactError::Internal(
            "separating ensemble failed the strict-gap re-verification".into(),
        )));
    }
    Ok(ensemble)
}

/// Decides whether M ⪯ N, returning the Markov witness when it holds.
pub fn post_processing_witness(
    m: &Evm,
    n: &Evm,
) -> Result<Option<MarkovMatrix>, PostprocError> {
    check_spaces(m, n)?;
    match direction(m, n)? {
        Direction::Witness(w) => Ok(Some(w)),
        Direction::Refuted(_) => Ok(None),
    }
}

/// An ensemble with pg(·, M) > pg(·, N), certifying ¬(M ⪯ N). Errors with
/// `ComparablePair` when M ⪯ N does hold.
pub fn separating_ensemble(m: &Evm, n: &Evm) -> Result<Ensemble, PostprocError> {
    check_spaces(m, n)?;
    match direction(m, n)? {
        Direction::Witness(_) => Err(PostprocError::ComparablePair(
            "the first measurement is a post-processing of the second",
        )),
        Direction::Refuted(cert) => separating_ensemble_from_dual(m, n, &cert),
    }
}

fn check_spaces(m: &Evm, n: &Evm) -> Result<(), PostprocError> {
    if m.space() != n.space() {
        return Err(PostprocError::SpaceMismatch {
            left: m.space().dim(),
            right: n.space().dim(),
        });
    }
    Ok(())
}

/// Full two-sided comparison with certificates for every case.
pub fn compare(m: &Evm, n: &Evm) -> Result<CompareVerdict, PostprocError> {
    check_spaces(m, n)?;
    let forward = direction(m, n)?;
    let backward = direction(n, m)?;
    Ok(match (forward, backward) {
        (Direction::Witness(f), Direction::Witness(b)) => CompareVerdict::Equivalent {
            forward: f,
            backward: b,
        },
        (Direction::Witness(f), Direction::Refuted(_)) => CompareVerdict::LessEq { witness: f },
        (Direction::Refuted(_), Direction::Witness(b)) => {
            CompareVerdict::GreaterEq { witness: b }
        }
        (Direction::Refuted(cf), Direction::Refuted(cb)) => CompareVerdict::Incomparable {
            forward_gap: separating_ensemble_from_dual(m, n, &cf)?,
            backward_gap: separating_ensemble_from_dual(n, m, &cb)?,
        },
    })
}

/// Groups measurements into post-processing equivalence classes. Classes
/// are listed by their smallest member index, members ascending. Pairwise
/// comparisons are independent and run under the `POSTORDER_THREADS` cap.
pub fn quotient(ms: &[Evm]) -> Result<Vec<Vec<usize>>, PostprocError> {
    let n = ms.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let equivalent: Vec<Result<bool, PostprocError>> =
        crate::parallel::map_indexed(pairs.len(), |idx| {
            let (i, j) = pairs[idx];
            Ok(matches!(
                compare(&ms[i], &ms[j])?,
                CompareVerdict::Equivalent { .. }
            ))
        });
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut eq = vec![vec![false; n]; n];
    for (idx, result) in equivalent.into_iter().enumerate() {
        let (i, j) = pairs[idx];
        if result? {
            eq[i][j] = true;
        }
    }
    for i in 0..n {
        if class_of[i].is_some() {
            continue;
        }
        let mut class = vec![i];
        class_of[i] = Some(classes.len());
        for j in (i + 1)..n {
            if class_of[j].is_none() && eq[i][j] {
                class_of[j] = Some(classes.len());
                class.push(j);
            }
        }
        classes.push(class);
    }
    Ok(classes)
}

/// Enumerates every ensemble on `space` with at most `max_members` members
/// whose coordinates all have denominator dividing `max_denominator`.
/// Deterministic order: member count ascending, then ascending
/// lexicographic order of the flattened numerator tuple. No duplicates:
/// distinct tuples give distinct ensembles, and distinct member counts
/// never collide.
pub fn enumerate_ensembles(
    space: ClassicalSpace,
    max_members: usize,
    max_denominator: u64,
) -> Result<Vec<Ensemble>, PostprocError> {
    let mut out = Vec::new();
    for_each_ensemble(space, max_members, max_denominator, |e| {
        out.push(e);
        true
    })?;
    Ok(out)
}

/// Streaming form of `enumerate_ensembles`, in the same order; the visitor
/// returns false to stop early. Used when scanning for a separating
/// ensemble without materializing the whole list.
pub fn for_each_ensemble<F>(
    space: ClassicalSpace,
    max_members: usize,
    max_denominator: u64,
    mut visit: F,
) -> Result<(), PostprocError>
where
    F: FnMut(Ensemble) -> bool,
{
    if max_members == 0 {
        return Err(PostprocError::ZeroMaxMembers);
    }
    if max_denominator == 0 {
        return Err(PostprocError::ZeroMaxDenominator);
    }
    let d = space.dim();
    let den = Rational::from_integer(max_denominator.into());
    for members in 1..=max_members {
        let slots = members * d;
        let mut numerators = vec![0u64; slots];
        numerators[slots - 1] = max_denominator;
        loop {
            let member_vecs: Vec<Vec<Rational>> = numerators
                .chunks(d)
                .map(|chunk| {
                    chunk
                        .iter()
                        .map(|&v| Rational::from_integer(v.into()) / &den)
                        .collect()
                })
                .collect();
            let ensemble = Ensemble::new(space, member_vecs)?;
            if !visit(ensemble) {
                return Ok(());
            }
            if !next_composition(&mut numerators) {
                break;
            }
        }
    }
    Ok(())
}

/// Advances a composition (fixed-sum tuple) to its lexicographic successor.
/// Returns false at the last composition (all mass in slot 0).
fn next_composition(t: &mut [u64]) -> bool {
    let n = t.len();
    // Find the rightmost position before the last whose suffix still holds
    // mass; move one unit onto it and push the rest to the very end.
    for i in (0..n - 1).rev() {
        if t[i + 1..].iter().any(|&v| v > 0) {
            t[i] += 1;
            let moved: u64 = t[i + 1..].iter().sum();
            for v in &mut t[i + 1..] {
                *v = 0;
            }
            t[n - 1] = moved - 1;
            return true;
        }
    }
    false
}
