//! Measurement families realizing the standard example.
//!
//! For every n ≥ 3 there are 2n measurements on the classical bit space
//! whose exact post-processing comparisons reproduce the standard example
//! Sₙ: with scales sⱼ = 3^(j−n),
//!
//!   A⁽ʲ⁾ = (1/n)·A_{sⱼ,sⱼ²} ⊕ ((n−1)/n)·U,
//!   B⁽ʲ⁾ = (1/n)·U ⊕ ⨁_{k≠j} (1/n)·A_{s_k,s_k²},
//!
//! where U is the one-outcome trivial measurement and A_{s,t} the binary
//! measurement with first effect (s, t). Mapping aⱼ ↦ A⁽ʲ⁾, bⱼ ↦ B⁽ʲ⁾ is an
//! order embedding, so the comparison poset has order dimension n — a
//! finite witness that no fixed number of monotones captures the order.

use super::{
    order_dimension, standard_example, DimensionResult, FinitePoset, PosetError, Realizer,
};
use crate::exact::{rat, Rational};
use crate::gpt::{a_family, direct_mixture, ClassicalSpace, Evm};
use crate::parallel;
use crate::postproc::{compare, CompareVerdict};
use num_bigint::BigInt;
use num_traits::One;

/// Builds the 2n measurements (A⁽⁰⁾…A⁽ⁿ⁻¹⁾ then B⁽⁰⁾…B⁽ⁿ⁻¹⁾) together with
/// the poset their comparisons are expected to realize (the standard
/// example, elements in the same index order). Exact rationals throughout.
pub fn main1_embedding(n: usize) -> Result<(Vec<Evm>, FinitePoset), PosetError> {
    if n < 3 {
        return Err(PosetError::FamilyTooSmall { n });
    }
    let trivial = Evm::trivial(ClassicalSpace::bit(), &[Rational::one()])?;
    // sⱼ = 3^(j−n); the parabola point (sⱼ, sⱼ²) of one scale lies outside
    // every parallelogram spanned by another scale's point, which keeps the
    // binary measurements pairwise incomparable.
    let binaries: Vec<Evm> = (0..n)
        .map(|j| {
            let s = Rational::new(BigInt::one(), BigInt::from(3u8).pow((n - j) as u32));
            let t = &s * &s;
            a_family(&s, &t)
        })
        .collect::<Result<_, _>>()?;

    let weight = rat(1, n as i64);
    let mut items = Vec::with_capacity(2 * n);
    for j in 0..n {
        items.push(direct_mixture(&[
            (weight.clone(), binaries[j].clone()),
            (rat((n as i64) - 1, n as i64), trivial.clone()),
        ])?);
    }
    for j in 0..n {
        let mut parts = vec![(weight.clone(), trivial.clone())];
        for (k, binary) in binaries.iter().enumerate() {
            if k != j {
                parts.push((weight.clone(), binary.clone()));
            }
        }
        items.push(direct_mixture(&parts)?);
    }

    let expected = standard_example(n)?;
    Ok((items, expected))
}

/// The fully verified outcome of the family pipeline at one n.
#[derive(Clone, Debug)]
pub struct Main1Report {
    pub n: usize,
    pub items: Vec<Evm>,
    /// The comparison poset (verified equal to the standard example).
    pub poset: FinitePoset,
    pub dimension: usize,
    pub realizer: Realizer,
    /// Number of unordered pairs compared exactly.
    pub comparisons: usize,
    /// The five assertion patterns behind the embedding, with how many
    /// pair comparisons certified each.
    pub patterns: Vec<(&'static str, usize)>,
}

/// Runs the whole pipeline at one n: builds the 2n measurements, decides
/// every unordered pair exactly, checks the induced relation is exactly the
/// standard example (no equivalent pairs allowed), and computes the order
/// dimension, which must equal n. Pair comparisons run under the process
/// thread cap.
pub fn verify_main1(n: usize) -> Result<Main1Report, PosetError> {
    let (items, expected) = main1_embedding(n)?;
    let count = items.len();
    let pairs: Vec<(usize, usize)> = (0..count)
        .flat_map(|i| ((i + 1)..count).map(move |j| (i, j)))
        .collect();
    let verdicts: Vec<_> = parallel::map_indexed(pairs.len(), |t| {
        let (i, j) = pairs[t];
        compare(&items[i], &items[j])
    })
    .into_iter()
    .collect::<Result<_, _>>()?;

    let mut leq = vec![vec![false; count]; count];
    for i in 0..count {
        leq[i][i] = true;
    }
    for (&(i, j), verdict) in pairs.iter().zip(&verdicts) {
        if matches!(verdict, CompareVerdict::Equivalent { .. }) {
            return Err(PosetError::UnexpectedEquivalence { left: i, right: j });
        }
        let (forward, backward) = verdict.directions();
        leq[i][j] = forward;
        leq[j][i] = backward;
    }
    for x in 0..count {
        for y in 0..count {
            if leq[x][y] != expected.leq(x, y) {
                return Err(PosetError::WrongComparison { left: x, right: y });
            }
        }
    }

    // Classify the verified verdicts into the five assertion patterns.
    let mut a_a = 0;
    let mut b_b = 0;
    let mut a_below_b = 0;
    let mut b_not_below_a = 0;
    let mut a_b_same = 0;
    for (&(i, j), verdict) in pairs.iter().zip(&verdicts) {
        match (i < n, j < n, verdict) {
            (true, true, CompareVerdict::Incomparable { .. }) => a_a += 1,
            (false, false, CompareVerdict::Incomparable { .. }) => b_b += 1,
            (true, false, CompareVerdict::Incomparable { .. }) if j - n == i => a_b_same += 1,
            (true, false, CompareVerdict::LessEq { .. }) if j - n != i => {
                // One verdict certifies both A⁽ʲ⁾ ⪯ B⁽ᵏ⁾ and ¬(B⁽ᵏ⁾ ⪯ A⁽ʲ⁾).
                a_below_b += 1;
                b_not_below_a += 1;
            }
            _ => {
                return Err(PosetError::WrongComparison { left: i, right: j });
            }
        }
    }
    let patterns = vec![
        ("a-a-incomparable", a_a),
        ("b-b-incomparable", b_b),
        ("a-below-b", a_below_b),
        ("b-not-below-a", b_not_below_a),
        ("a-b-same-index-incomparable", a_b_same),
    ];

    let (dimension, realizer) = match order_dimension(&expected, n)? {
        DimensionResult::Computed {
            dimension,
            realizer,
        } => (dimension, realizer),
        DimensionResult::ExceedsBound { max_k } => {
            return Err(PosetError::DimensionExceedsBound { max_k });
        }
    };
    if dimension != n {
        return Err(PosetError::WrongDimension {
            expected: n,
            found: dimension,
        });
    }

    Ok(Main1Report {
        n,
        items,
        poset: expected,
        dimension,
        realizer,
        comparisons: pairs.len(),
        patterns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn construction_requires_n_at_least_three() {
        assert!(matches!(
            main1_embedding(2),
            Err(PosetError::FamilyTooSmall { n: 2 })
        ));
    }

    #[test]
    fn first_family_member_at_n_three() {
        let (items, expected) = main1_embedding(3).unwrap();
        assert_eq!(items.len(), 6);
        assert_eq!(expected.len(), 6);
        // A⁽⁰⁾ = (1/3)·A_{1/27,1/729} ⊕ (2/3)·U.
        let a0 = &items[0];
        assert_eq!(a0.effects().len(), 3);
        assert_eq!(a0.effects()[0].values(), &[rat(1, 81), rat(1, 2187)]);
        assert_eq!(a0.effects()[1].values(), &[rat(26, 81), rat(728, 2187)]);
        assert_eq!(a0.effects()[2].values(), &[rat(2, 3), rat(2, 3)]);
    }

    #[test]
    fn second_block_mixes_all_other_scales() {
        let (items, _) = main1_embedding(3).unwrap();
        // B⁽⁰⁾ = (1/3)·U ⊕ (1/3)·A_{1/9,1/81} ⊕ (1/3)·A_{1/3,1/9}: 5 effects.
        let b0 = &items[3];
        assert_eq!(b0.effects().len(), 5);
        assert_eq!(b0.effects()[0].values(), &[rat(1, 3), rat(1, 3)]);
        assert_eq!(b0.effects()[1].values(), &[rat(1, 27), rat(1, 243)]);
        assert_eq!(b0.effects()[2].values(), &[rat(8, 27), rat(80, 243)]);
        assert_eq!(b0.effects()[3].values(), &[rat(1, 9), rat(1, 27)]);
        assert_eq!(b0.effects()[4].values(), &[rat(2, 9), rat(8, 27)]);
    }

    #[test]
    fn pipeline_realizes_the_three_dimensional_example() {
        let report = verify_main1(3).unwrap();
        assert_eq!(report.comparisons, 15);
        assert_eq!(report.dimension, 3);
        assert_eq!(report.poset.len(), 6);
        assert_eq!(
            report.patterns,
            vec![
                ("a-a-incomparable", 3),
                ("b-b-incomparable", 3),
                ("a-below-b", 6),
                ("b-not-below-a", 6),
                ("a-b-same-index-incomparable", 3),
            ]
        );
    }
}
