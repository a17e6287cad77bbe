//! Exact order-dimension search.
//!
//! The dimension of a finite poset is the least number of linear extensions
//! whose intersection is the order. The search assigns every ordered
//! incomparable pair (x, y) to one of k "slots"; slot s collects the
//! reversal edges y → x of its pairs, and an assignment is consistent
//! exactly when each slot's digraph (strict order plus its reversals)
//! stays acyclic — each slot then linearizes to an extension that reverses
//! its pairs, and together the extensions realize the order. Minimality
//! comes from iterative deepening on k; every returned realizer is
//! re-verified against the definition before it leaves this module.

use self::DimensionResult::{Computed, ExceedsBound};
use super::{
    characterizes, realizer_to_monotones, FinitePoset, LinearExtension, MonotoneFamily,
    PosetError, Realizer,
};

/// Hard cap on the element count for the dimension search; the
/// backtracking assignment is exponential in the worst case.
pub const MAX_SEARCH_ELEMENTS: usize = 12;

/// Outcome of the dimension search.
#[derive(Clone, Debug)]
pub enum DimensionResult {
    /// Minimal k together with a verified witness realizer of that size.
    Computed { dimension: usize, realizer: Realizer },
    /// Every k up to the bound is infeasible (the dimension is larger).
    ExceedsBound { max_k: usize },
}

/// Computes the exact order dimension with a verified realizer, trying
/// k = 1, 2, … up to `max_k`. Deterministic: a given poset always yields
/// the same realizer.
pub fn order_dimension(
    p: &FinitePoset,
    max_k: usize,
) -> Result<DimensionResult, PosetError> {
    let n = p.len();
    if n > MAX_SEARCH_ELEMENTS {
        return Err(PosetError::TooLarge {
            elements: n,
            max: MAX_SEARCH_ELEMENTS,
        });
    }
    if max_k == 0 {
        return Err(PosetError::ZeroMaxK);
    }

    let strict_adj: Vec<u16> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| p.strictly_less(i, j))
                .fold(0u16, |mask, j| mask | (1 << j))
        })
        .collect();

    // Ordered incomparable pairs; (x, y) demands an extension with y < x.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.incomparable(x, y) {
                pairs.push((x, y));
            }
        }
    }

    if pairs.is_empty() {
        // Total order: the single extension {⪯} realizes it.
        let order = lex_min_topological_order(&strict_adj, n).ok_or_else(|| {
            PosetError::Internal("total order admits no topological sort".into())
        })?;
        let realizer = Realizer::new(p, vec![LinearExtension::new(order, n)?])?;
        return Ok(Computed {
            dimension: 1,
            realizer,
        });
    }

    // Two pairs conflict when no single extension can reverse both: the
    // strict order plus both reversal edges closes a cycle, which for
    // incomparable pairs (x₁,y₁), (x₂,y₂) happens exactly when x₁ ⪯ y₂ and
    // x₂ ⪯ y₁. Processing high-conflict pairs first keeps the search tree
    // shallow, and the matrix doubles as a cheap pre-filter per slot.
    let degree: Vec<usize> = pairs
        .iter()
        .map(|&(x1, y1)| {
            pairs
                .iter()
                .filter(|&&(x2, y2)| (x1, y1) != (x2, y2) && p.leq(x1, y2) && p.leq(x2, y1))
                .count()
        })
        .collect();
    let mut by_degree: Vec<usize> = (0..pairs.len()).collect();
    by_degree.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(pairs[a].cmp(&pairs[b])));
    let pairs: Vec<(usize, usize)> = by_degree.into_iter().map(|i| pairs[i]).collect();
    let conflict: Vec<Vec<bool>> = pairs
        .iter()
        .map(|&(x1, y1)| {
            pairs
                .iter()
                .map(|&(x2, y2)| (x1, y1) != (x2, y2) && p.leq(x1, y2) && p.leq(x2, y1))
                .collect()
        })
        .collect();

    // A non-total order needs at least two extensions.
    for k in 2..=max_k {
        let mut search = SlotSearch {
            pairs: &pairs,
            conflict: &conflict,
            k,
            slot_adj: vec![strict_adj.clone(); k],
            slot_members: vec![Vec::new(); k],
            used: 0,
        };
        if search.assign(0) {
            let mut extensions = Vec::with_capacity(k);
            for adj in &search.slot_adj {
                // Unused trailing slots hold just the strict order; their
                // extensions are harmless (they only re-intersect ⪯).
                let order = lex_min_topological_order(adj, n).ok_or_else(|| {
                    PosetError::Internal("consistent slot admits no topological sort".into())
                })?;
                extensions.push(LinearExtension::new(order, n)?);
            }
            // Never trust search state: re-verify the definition.
            let realizer = Realizer::new(p, extensions)?;
            return Ok(Computed {
                dimension: k,
                realizer,
            });
        }
    }
    Ok(ExceedsBound { max_k })
}

/// Computes the order-monotone dimension: for finite posets it equals the
/// order dimension, witnessed by the rank functions of a minimal realizer.
/// The returned family is verified to characterize the order.
pub fn order_monotone_dimension(
    p: &FinitePoset,
    max_k: usize,
) -> Result<(usize, MonotoneFamily), PosetError> {
    match order_dimension(p, max_k)? {
        Computed {
            dimension,
            realizer,
        } => {
            let family = realizer_to_monotones(p, &realizer);
            if !characterizes(p, &family) {
                return Err(PosetError::Internal(
                    "rank functions of a verified realizer must characterize the order".into(),
                ));
            }
            Ok((dimension, family))
        }
        ExceedsBound { max_k } => Err(PosetError::DimensionExceedsBound { max_k }),
    }
}

struct SlotSearch<'a> {
    pairs: &'a [(usize, usize)],
    conflict: &'a [Vec<bool>],
    k: usize,
    /// Per slot: strict edges plus the reversals assigned so far.
    slot_adj: Vec<Vec<u16>>,
    /// Per slot: indices (into `pairs`) of the assigned pairs.
    slot_members: Vec<Vec<usize>>,
    /// Number of non-empty slots; they always form a prefix.
    used: usize,
}

impl SlotSearch<'_> {
    fn assign(&mut self, depth: usize) -> bool {
        if depth == self.pairs.len() {
            return true;
        }
        let (x, y) = self.pairs[depth];
        // Slot-symmetry breaking: empty slots are interchangeable, so only
        // the first one is ever opened.
        let limit = (self.used + 1).min(self.k);
        for s in 0..limit {
            if self.slot_members[s]
                .iter()
                .any(|&q| self.conflict[depth][q])
            {
                continue;
            }
            // Adding the reversal y → x closes a cycle iff x already
            // reaches y inside this slot.
            if reaches(&self.slot_adj[s], x, y) {
                continue;
            }
            let was_empty = self.slot_members[s].is_empty();
            self.slot_adj[s][y] |= 1 << x;
            self.slot_members[s].push(depth);
            if was_empty {
                self.used += 1;
            }
            if self.assign(depth + 1) {
                return true;
            }
            self.slot_members[s].pop();
            self.slot_adj[s][y] &= !(1 << x);
            if was_empty {
                self.used -= 1;
            }
        }
        false
    }
}

/// Bitmask BFS: does `from` reach `to` (including from == to)?
fn reaches(adj: &[u16], from: usize, to: usize) -> bool {
    let target = 1u16 << to;
    let mut visited = 1u16 << from;
    let mut frontier = visited;
    loop {
        if visited & target != 0 {
            return true;
        }
        let mut next = 0u16;
        let mut scan = frontier;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            next |= adj[v];
        }
        frontier = next & !visited;
        if frontier == 0 {
            return false;
        }
        visited |= frontier;
    }
}

/// Kahn's algorithm taking the smallest available vertex each step: the
/// lexicographically least topological order, or None on a cycle.
fn lex_min_topological_order(adj: &[u16], n: usize) -> Option<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    for v in 0..n {
        let mut mask = adj[v];
        while mask != 0 {
            let u = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            indegree[u] += 1;
        }
    }
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n).find(|&v| !placed[v] && indegree[v] == 0)?;
        placed[next] = true;
        order.push(next);
        let mut mask = adj[next];
        while mask != 0 {
            let u = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            indegree[u] -= 1;
        }
    }
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::super::{realizes, standard_example, FinitePoset};
    use super::DimensionResult::{Computed, ExceedsBound};
    use super::*;

    fn chain(n: usize) -> FinitePoset {
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((i, j));
            }
        }
        FinitePoset::new(labels, &pairs).unwrap()
    }

    fn antichain(n: usize) -> FinitePoset {
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        FinitePoset::new(labels, &[]).unwrap()
    }

    fn dimension_of(p: &FinitePoset) -> usize {
        match order_dimension(p, p.len()).unwrap() {
            Computed {
                dimension,
                realizer,
            } => {
                assert!(realizes(p, realizer.extensions()));
                assert_eq!(realizer.size(), dimension);
                dimension
            }
            ExceedsBound { max_k } => panic!("unexpectedly exceeded bound {max_k}"),
        }
    }

    #[test]
    fn chains_have_dimension_one() {
        assert_eq!(dimension_of(&chain(1)), 1);
        assert_eq!(dimension_of(&chain(2)), 1);
        assert_eq!(dimension_of(&chain(5)), 1);
    }

    #[test]
    fn antichains_have_dimension_two() {
        assert_eq!(dimension_of(&antichain(2)), 2);
        assert_eq!(dimension_of(&antichain(3)), 2);
        assert_eq!(dimension_of(&antichain(6)), 2);
    }

    #[test]
    fn diamond_has_dimension_two() {
        let p = FinitePoset::from_label_pairs(
            &["bot", "l", "r", "top"],
            &[
                ("bot", "l"),
                ("bot", "r"),
                ("bot", "top"),
                ("l", "top"),
                ("r", "top"),
            ],
        )
        .unwrap();
        assert_eq!(dimension_of(&p), 2);
    }

    #[test]
    fn standard_examples_have_dimension_n() {
        assert_eq!(dimension_of(&standard_example(2).unwrap()), 2);
        assert_eq!(dimension_of(&standard_example(3).unwrap()), 3);
    }

    #[test]
    fn boolean_lattice_on_three_atoms_has_dimension_three() {
        // Subsets of {0,1,2} ordered by inclusion.
        let labels: Vec<String> = (0u8..8).map(|s| format!("s{s}")).collect();
        let mut pairs = Vec::new();
        for s in 0u8..8 {
            for t in 0u8..8 {
                if s != t && s & t == s {
                    pairs.push((s as usize, t as usize));
                }
            }
        }
        let p = FinitePoset::new(labels, &pairs).unwrap();
        assert_eq!(dimension_of(&p), 3);
    }

    #[test]
    fn bound_exhaustion_is_reported() {
        let s3 = standard_example(3).unwrap();
        match order_dimension(&s3, 2).unwrap() {
            ExceedsBound { max_k } => assert_eq!(max_k, 2),
            Computed { dimension, .. } => panic!("S₃ cannot have dimension {dimension} ≤ 2"),
        }
    }

    #[test]
    fn guards_reject_oversized_posets_and_zero_bounds() {
        let big = antichain(13);
        assert!(matches!(
            order_dimension(&big, 2),
            Err(PosetError::TooLarge {
                elements: 13,
                max: MAX_SEARCH_ELEMENTS
            })
        ));
        let small = antichain(2);
        assert!(matches!(
            order_dimension(&small, 0),
            Err(PosetError::ZeroMaxK)
        ));
    }

    #[test]
    fn search_is_deterministic() {
        let s3 = standard_example(3).unwrap();
        let first = order_dimension(&s3, 6).unwrap();
        let second = order_dimension(&s3, 6).unwrap();
        match (first, second) {
            (
                Computed {
                    dimension: d1,
                    realizer: r1,
                },
                Computed {
                    dimension: d2,
                    realizer: r2,
                },
            ) => {
                assert_eq!(d1, d2);
                assert_eq!(r1.extensions(), r2.extensions());
            }
            _ => panic!("both runs must compute a dimension"),
        }
    }

    #[test]
    fn monotone_dimension_matches_and_characterizes() {
        let s2 = standard_example(2).unwrap();
        let (k, family) = order_monotone_dimension(&s2, 4).unwrap();
        assert_eq!(k, 2);
        assert_eq!(family.len(), 2);
        assert!(characterizes(&s2, &family));

        let chain4 = chain(4);
        let (k, family) = order_monotone_dimension(&chain4, 4).unwrap();
        assert_eq!(k, 1);
        assert!(characterizes(&chain4, &family));

        let s3 = standard_example(3).unwrap();
        assert!(matches!(
            order_monotone_dimension(&s3, 2),
            Err(PosetError::DimensionExceedsBound { max_k: 2 })
        ));
    }
}
