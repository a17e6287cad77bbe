//! Exact feasibility solver for systems `A·x = b, x ≥ 0` over the
//! rationals, returning either a feasible point or a Farkas certificate of
//! infeasibility (a vector y with yᵀA ≤ 0 componentwise and yᵀb > 0 — by
//! Farkas' lemma exactly one of the two exists).
//!
//! The solver is a dense Phase-I simplex with artificial variables and
//! Bland's anti-cycling rule; every pivot is an exact rational operation, so
//! termination is guaranteed and the answer is never approximate. Both kinds
//! of result are re-verified against the original system before they are
//! returned; a verification failure is reported as an internal error rather
//! than silently trusted.

use super::{rational_one, ExactError, Rational, RationalMatrix};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct LpProblem {
    /// Constraint matrix, one row per equality.
    pub a: RationalMatrix,
    /// Right-hand side, one entry per row.
    pub b: Vec<Rational>,
}

impl LpProblem {
    pub fn new(a: RationalMatrix, b: Vec<Rational>) -> Result<Self, ExactError> {
        if b.len() != a.rows() {
            return Err(ExactError::RhsLength {
                rows: a.rows(),
                rhs: b.len(),
            });
        }
        Ok(LpProblem { a, b })
    }

    /// Checks `A·x = b` and `x ≥ 0` exactly. Pure check, no solving.
    pub fn is_solution(&self, x: &[Rational]) -> bool {
        if x.len() != self.a.cols() || x.iter().any(|v| v.is_negative()) {
            return false;
        }
        match self.a.mul_vec(x) {
            Ok(ax) => ax == self.b,
            Err(_) => false,
        }
    }
}

/// Infeasibility witness: yᵀA ≤ 0 componentwise while yᵀb > 0, which rules
/// out any x ≥ 0 with A·x = b (it would force 0 < yᵀb = yᵀA·x ≤ 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub y: Vec<Rational>,
}

impl FarkasCertificate {
    /// Checks the certificate against a problem exactly. Pure check.
    pub fn verify(&self, p: &LpProblem) -> bool {
        if self.y.len() != p.a.rows() {
            return false;
        }
        let Ok(yta) = p.a.vec_mul(&self.y) else {
            return false;
        };
        yta.iter().all(|v| !v.is_positive()) && super::dot(&self.y, &p.b).is_positive()
    }
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Feasible(Vec<Rational>),
    Infeasible(FarkasCertificate),
}

/// Decides feasibility of `A·x = b, x ≥ 0` exactly.
pub fn lp_feasible(p: &LpProblem) -> Result<LpOutcome, ExactError> {
    if p.b.len() != p.a.rows() {
        return Err(ExactError::RhsLength {
            rows: p.a.rows(),
            rhs: p.b.len(),
        });
    }
    let m = p.a.rows();
    let n = p.a.cols();

    // Tableau layout: n original columns, m artificial columns, rhs.
    // Rows with negative rhs are sign-flipped so the artificial basis is
    // feasible; `flipped` remembers which, to map the dual vector back.
    let cols = n + m + 1;
    let rhs_col = n + m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut flipped = vec![false; m];
    for r in 0..m {
        let mut row: Vec<Rational> = Vec::with_capacity(cols);
        row.extend(p.a.row(r).iter().cloned());
        row.extend(std::iter::repeat(Rational::zero()).take(m));
        row.push(p.b[r].clone());
        if row[rhs_col].is_negative() {
            flipped[r] = true;
            for v in row.iter_mut() {
                *v = -std::mem::take(v);
            }
        }
        row[n + r] = rational_one();
        t.push(row);
    }

    // Phase-I objective: minimize the sum of artificials. The cost row
    // holds reduced costs; canonicalizing against the artificial basis
    // (cost 1 each) turns column j into -Σ_r t[r][j] and the rhs cell into
    // -Σ_r rhs[r] = -(objective value).
    let mut cost = vec![Rational::zero(); cols];
    for j in 0..cols {
        let mut s = Rational::zero();
        for row in &t {
            s += &row[j];
        }
        cost[j] = if (n..n + m).contains(&j) {
            rational_one() - s
        } else {
            -s
        };
    }

    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        // Ratio test; ties broken by smallest basis variable (Bland).
        let mut pivot_row: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][rhs_col] / &t[r][enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[r] < basis[pivot_row.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    pivot_row = Some(r);
                }
            }
        }
        let Some(pr) = pivot_row else {
            // Phase-I objective is bounded below by 0, so an unbounded
            // improving direction cannot occur.
            return Err(ExactError::Internal(
                "phase-I simplex found an unbounded direction".into(),
            ));
        };

        // Pivot on (pr, enter).
        let piv = t[pr][enter].clone();
        for v in t[pr].iter_mut() {
            *v = std::mem::take(v) / &piv;
        }
        for r in 0..m {
            if r != pr && !t[r][enter].is_zero() {
                let f = t[r][enter].clone();
                for j in 0..cols {
                    let delta = &f * &t[pr][j];
                    t[r][j] -= delta;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..cols {
                let delta = &f * &t[pr][j];
                cost[j] -= delta;
            }
        }
        basis[pr] = enter;
    }

    let objective = -cost[rhs_col].clone();
    if objective.is_zero() {
        // Every artificial sits at zero, so the basic original variables
        // already solve the system.
        let mut x = vec![Rational::zero(); n];
        for (r, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = t[r][rhs_col].clone();
            }
        }
        if !p.is_solution(&x) {
            return Err(ExactError::Internal(
                "simplex returned a point that fails A·x = b, x ≥ 0".into(),
            ));
        }
        Ok(LpOutcome::Feasible(x))
    } else {
        // Optimal cost row gives the dual: under artificial column r the
        // reduced cost is 1 - ŷ_r, where ŷ is the Farkas vector for the
        // sign-flipped system; undo the flips to address the original rows.
        let mut y = Vec::with_capacity(m);
        for r in 0..m {
            let yr = rational_one() - &cost[n + r];
            y.push(if flipped[r] { -yr } else { yr });
        }
        let cert = FarkasCertificate { y };
        if !cert.verify(p) {
            return Err(ExactError::Internal(
                "simplex produced a Farkas vector that fails verification".into(),
            ));
        }
        Ok(LpOutcome::Infeasible(cert))
    }
}
