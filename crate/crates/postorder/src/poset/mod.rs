//! Finite posets and their order-theoretic toolbox: validated construction,
//! linear extensions, realizers, monotone families, restriction, pullbacks,
//! posets induced by a comparison oracle, and Hasse-diagram DOT output.
//!
//! The dimension search lives in `dimension`; the measurement families
//! whose comparison poset realizes the standard example live in `families`.

mod dimension;
mod families;

pub use dimension::{
    order_dimension, order_monotone_dimension, DimensionResult, MAX_SEARCH_ELEMENTS,
};
pub use families::{main1_embedding, verify_main1, Main1Report};

use crate::exact::Rational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("poset must have at least one element")]
    Empty,
    #[error("duplicate label {label:?}")]
    DuplicateLabel { label: String },
    #[error("pair references element {index}, but there are only {count} elements")]
    PairOutOfRange { index: usize, count: usize },
    #[error("unknown element {label:?}")]
    UnknownLabel { label: String },
    #[error("relation is not reflexive at {element:?}")]
    NotReflexive { element: String },
    #[error("relation is not antisymmetric: both {left:?} ⪯ {right:?} and {right:?} ⪯ {left:?}")]
    NotAntisymmetric { left: String, right: String },
    #[error(
        "relation is not transitive: {first:?} ⪯ {second:?} ⪯ {third:?} but not {first:?} ⪯ {third:?}"
    )]
    NotTransitive {
        first: String,
        second: String,
        third: String,
    },
    #[error("sequence of length {found} is not a permutation of the {expected} elements")]
    NotPermutation { expected: usize, found: usize },
    #[error("extension {index} is not a linear extension of the poset")]
    NotLinearExtension { index: usize },
    #[error("extensions do not realize the order at pair ({left:?}, {right:?})")]
    DoesNotRealize { left: String, right: String },
    #[error("realizer must contain at least one extension")]
    EmptyRealizer,
    #[error("poset has {elements} elements; dimension search is limited to {max}")]
    TooLarge { elements: usize, max: usize },
    #[error("search bound max_k must be at least 1")]
    ZeroMaxK,
    #[error("element index {index} out of range ({count} elements)")]
    ElementOutOfRange { index: usize, count: usize },
    #[error("subset repeats element {index}")]
    SubsetDuplicate { index: usize },
    #[error("map is not injective: indices {left} and {right} collide")]
    NotInjective { left: usize, right: usize },
    #[error("monotone function has {found} values, expected {expected}")]
    FunctionLength { expected: usize, found: usize },
    #[error("standard example requires n ≥ 2, got {n}")]
    StandardExampleTooSmall { n: usize },
    #[error("family construction requires n ≥ 3, got {n}")]
    FamilyTooSmall { n: usize },
    #[error(transparent)]
    Gpt(#[from] crate::gpt::GptError),
    #[error(transparent)]
    Postproc(#[from] crate::postproc::PostprocError),
    #[error("induced relation is intransitive: items {i} ⪯ {j} ⪯ {k} but not {i} ⪯ {k}")]
    InducedIntransitive { i: usize, j: usize, k: usize },
    #[error("expected every comparison class to be a singleton, but items {left} and {right} are equivalent")]
    UnexpectedEquivalence { left: usize, right: usize },
    #[error("comparison poset differs from the expected order at pair ({left}, {right})")]
    WrongComparison { left: usize, right: usize },
    #[error("computed dimension {found}, expected {expected}")]
    WrongDimension { expected: usize, found: usize },
    #[error("dimension search exceeded the bound {max_k}")]
    DimensionExceedsBound { max_k: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

/// A finite partial order on labeled elements, stored as the full
/// reflexive ⪯ matrix. Construction validates the partial-order axioms and
/// names a witnessing pair/triple on failure; it never takes closures — the
/// input relation must already be transitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds from strict pairs (left ≺ right, given as element indices);
    /// reflexive pairs are implied. Fails on antisymmetry or transitivity
    /// violations.
    pub fn new(labels: Vec<String>, strict_pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(PosetError::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for &(a, b) in strict_pairs {
            for index in [a, b] {
                if index >= n {
                    return Err(PosetError::PairOutOfRange { index, count: n });
                }
            }
            leq[a][b] = true;
        }
        let poset = FinitePoset { labels, leq };
        poset.check_axioms()?;
        Ok(poset)
    }

    /// Builds from label pairs; mostly a convenience for tests and parsing.
    pub fn from_label_pairs(
        labels: &[&str],
        strict_pairs: &[(&str, &str)],
    ) -> Result<Self, PosetError> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let index_of = |label: &str| {
            labels
                .iter()
                .position(|l| *l == label)
                .ok_or_else(|| PosetError::UnknownLabel {
                    label: label.to_string(),
                })
        };
        let pairs: Vec<(usize, usize)> = strict_pairs
            .iter()
            .map(|&(a, b)| Ok((index_of(a)?, index_of(b)?)))
            .collect::<Result<_, PosetError>>()?;
        Self::new(owned, &pairs)
    }

    /// Validates an explicit ⪯ matrix (used by the induced-poset path).
    fn from_leq(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, PosetError> {
        let poset = FinitePoset { labels, leq };
        if poset.labels.is_empty() {
            return Err(PosetError::Empty);
        }
        poset.check_axioms()?;
        Ok(poset)
    }

    fn check_axioms(&self) -> Result<(), PosetError> {
        let n = self.len();
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(PosetError::NotReflexive {
                    element: self.labels[i].clone(),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(PosetError::NotAntisymmetric {
                        left: self.labels[i].clone(),
                        right: self.labels[j].clone(),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if self.leq[j][k] && !self.leq[i][k] {
                        return Err(PosetError::NotTransitive {
                            first: self.labels[i].clone(),
                            second: self.labels[j].clone(),
                            third: self.labels[k].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, PosetError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| PosetError::UnknownLabel {
                label: label.to_string(),
            })
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn strictly_less(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        i != j && !self.leq[i][j] && !self.leq[j][i]
    }

    /// All strict pairs (i ≺ j), ascending by (i, j).
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.strictly_less(i, j))
            .collect()
    }

    /// True when every pair of elements is comparable.
    pub fn is_total(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.leq[i][j] || self.leq[j][i]))
    }

    /// Cover relations: i ≺ j with nothing strictly between — the edges of
    /// the Hasse diagram (the transitive reduction).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| {
                !(0..self.len()).any(|z| self.strictly_less(i, z) && self.strictly_less(z, j))
            })
            .collect()
    }

    /// Induced suborder on a duplicate-free list of element indices; the
    /// result keeps the given element order and the original labels.
    pub fn restrict(&self, subset: &[usize]) -> Result<FinitePoset, PosetError> {
        if subset.is_empty() {
            return Err(PosetError::Empty);
        }
        for (pos, &index) in subset.iter().enumerate() {
            if index >= self.len() {
                return Err(PosetError::ElementOutOfRange {
                    index,
                    count: self.len(),
                });
            }
            if subset[..pos].contains(&index) {
                return Err(PosetError::SubsetDuplicate { index });
            }
        }
        let labels = subset.iter().map(|&i| self.labels[i].clone()).collect();
        let leq = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.leq[i][j]).collect())
            .collect();
        FinitePoset::from_leq(labels, leq)
    }

    /// Hasse diagram in DOT format: transitive reduction, nodes and edges
    /// in lexicographic label order, drawn bottom-up. Deterministic.
    pub fn to_dot(&self) -> String {
        let mut nodes: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        nodes.sort_unstable();
        let mut edges: Vec<(&str, &str)> = self
            .covers()
            .into_iter()
            .map(|(i, j)| (self.label(i), self.label(j)))
            .collect();
        edges.sort_unstable();
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        for node in nodes {
            out.push_str(&format!("  {node:?};\n"));
        }
        for (a, b) in edges {
            out.push_str(&format!("  {a:?} -> {b:?};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// The standard example Sₙ: elements a₀…aₙ₋₁, b₀…bₙ₋₁ with aⱼ ≺ bₖ exactly
/// when j ≠ k. Its order dimension is n, which makes the family a
/// dimension witness at every size.
pub fn standard_example(n: usize) -> Result<FinitePoset, PosetError> {
    if n < 2 {
        return Err(PosetError::StandardExampleTooSmall { n });
    }
    let mut labels = Vec::with_capacity(2 * n);
    for j in 0..n {
        labels.push(format!("a{j}"));
    }
    for j in 0..n {
        labels.push(format!("b{j}"));
    }
    let mut pairs = Vec::new();
    for j in 0..n {
        for k in 0..n {
            if j != k {
                pairs.push((j, n + k));
            }
        }
    }
    FinitePoset::new(labels, &pairs)
}

/// A total order on the elements, written bottom-to-top: `order[r]` is the
/// element at rank r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearExtension {
    order: Vec<usize>,
}

impl LinearExtension {
    /// Validates that `order` is a permutation of 0..count.
    pub fn new(order: Vec<usize>, count: usize) -> Result<Self, PosetError> {
        if order.len() != count {
            return Err(PosetError::NotPermutation {
                expected: count,
                found: order.len(),
            });
        }
        let mut seen = vec![false; count];
        for &x in &order {
            if x >= count || seen[x] {
                return Err(PosetError::NotPermutation {
                    expected: count,
                    found: order.len(),
                });
            }
            seen[x] = true;
        }
        Ok(LinearExtension { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// rank(x): position of element x, bottom = 0.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.order.len()];
        for (rank, &x) in self.order.iter().enumerate() {
            ranks[x] = rank;
        }
        ranks
    }
}

/// True iff the total order respects the poset: i ⪯ j implies
/// rank(i) ≤ rank(j). Pure check.
pub fn is_linear_extension(p: &FinitePoset, ext: &LinearExtension) -> bool {
    if ext.order.len() != p.len() {
        return false;
    }
    let ranks = ext.ranks();
    (0..p.len()).all(|i| (0..p.len()).all(|j| !p.leq(i, j) || ranks[i] <= ranks[j]))
}

/// True iff the extensions' intersection is exactly the order: i ⪯ j holds
/// precisely when every extension ranks i at or below j. Pure check.
pub fn realizes(p: &FinitePoset, extensions: &[LinearExtension]) -> bool {
    if extensions.is_empty() || !extensions.iter().all(|e| is_linear_extension(p, e)) {
        return false;
    }
    let all_ranks: Vec<Vec<usize>> = extensions.iter().map(LinearExtension::ranks).collect();
    (0..p.len()).all(|i| {
        (0..p.len()).all(|j| {
            let in_all = all_ranks.iter().all(|r| r[i] <= r[j]);
            in_all == p.leq(i, j)
        })
    })
}

/// A verified family of linear extensions whose intersection is the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realizer {
    extensions: Vec<LinearExtension>,
}

impl Realizer {
    pub fn new(p: &FinitePoset, extensions: Vec<LinearExtension>) -> Result<Self, PosetError> {
        if extensions.is_empty() {
            return Err(PosetError::EmptyRealizer);
        }
        for (index, ext) in extensions.iter().enumerate() {
            if !is_linear_extension(p, ext) {
                return Err(PosetError::NotLinearExtension { index });
            }
        }
        if !realizes(p, &extensions) {
            // Name the first pair where the intersection disagrees.
            let all_ranks: Vec<Vec<usize>> =
                extensions.iter().map(LinearExtension::ranks).collect();
            for i in 0..p.len() {
                for j in 0..p.len() {
                    let in_all = all_ranks.iter().all(|r| r[i] <= r[j]);
                    if in_all != p.leq(i, j) {
                        return Err(PosetError::DoesNotRealize {
                            left: p.label(i).to_string(),
                            right: p.label(j).to_string(),
                        });
                    }
                }
            }
        }
        Ok(Realizer { extensions })
    }

    pub fn extensions(&self) -> &[LinearExtension] {
        &self.extensions
    }

    pub fn size(&self) -> usize {
        self.extensions.len()
    }
}

/// A finite family of real-valued (here rational-valued) functions on the
/// elements, used as joint order monotones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneFamily {
    functions: Vec<Vec<Rational>>,
}

impl MonotoneFamily {
    pub fn new(p: &FinitePoset, functions: Vec<Vec<Rational>>) -> Result<Self, PosetError> {
        for f in &functions {
            if f.len() != p.len() {
                return Err(PosetError::FunctionLength {
                    expected: p.len(),
                    found: f.len(),
                });
            }
        }
        Ok(MonotoneFamily { functions })
    }

    pub fn functions(&self) -> &[Vec<Rational>] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}

/// f is monotone when i ⪯ j implies f(i) ≤ f(j).
pub fn is_monotone(p: &FinitePoset, f: &[Rational]) -> bool {
    f.len() == p.len()
        && (0..p.len())
            .all(|i| (0..p.len()).all(|j| !p.leq(i, j) || f[i] <= f[j]))
}

/// The family characterizes the order when i ⪯ j holds exactly when every
/// member satisfies f(i) ≤ f(j). (Each member is then in particular
/// monotone.) An empty family characterizes nothing.
pub fn characterizes(p: &FinitePoset, family: &MonotoneFamily) -> bool {
    if family.is_empty() {
        return false;
    }
    (0..p.len()).all(|i| {
        (0..p.len()).all(|j| {
            let dominated = family.functions.iter().all(|f| f[i] <= f[j]);
            dominated == p.leq(i, j)
        })
    })
}

/// Rank functions of a realizer: fᵢ(x) := rank of x in the i-th extension,
/// as rationals. Their joint dominance order is exactly ⪯, so the family
/// characterizes the poset with `realizer.size()` functions.
pub fn realizer_to_monotones(p: &FinitePoset, r: &Realizer) -> MonotoneFamily {
    let functions = r
        .extensions
        .iter()
        .map(|ext| {
            ext.ranks()
                .into_iter()
                .map(|rank| Rational::from_integer((rank as i64).into()))
                .collect()
        })
        .collect();
    MonotoneFamily::new(p, functions).expect("rank functions have one value per element")
}

/// The indicator monotone of element a: x ↦ 1 if a ⪯ x else 0.
pub fn indicator_monotone(p: &FinitePoset, a: usize) -> Result<Vec<Rational>, PosetError> {
    if a >= p.len() {
        return Err(PosetError::ElementOutOfRange {
            index: a,
            count: p.len(),
        });
    }
    Ok((0..p.len())
        .map(|x| {
            if p.leq(a, x) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect())
}

/// The full indicator family {x ↦ [a ⪯ x]}ₐ; it characterizes every finite
/// poset (with one function per element).
pub fn indicator_family(p: &FinitePoset) -> MonotoneFamily {
    MonotoneFamily {
        functions: (0..p.len())
            .map(|a| indicator_monotone(p, a).expect("indices in range"))
            .collect(),
    }
}

/// Pulls a linear extension back through an injective map g: S → T,
/// ordering S by the ranks of the images. The result is a total order on S;
/// when g is an order embedding it is a linear extension of S's order.
pub fn pullback_extension(
    g: &[usize],
    target: &LinearExtension,
) -> Result<LinearExtension, PosetError> {
    let count = target.order().len();
    for (pos, &image) in g.iter().enumerate() {
        if image >= count {
            return Err(PosetError::ElementOutOfRange {
                index: image,
                count,
            });
        }
        if let Some(prev) = g[..pos].iter().position(|&other| other == image) {
            return Err(PosetError::NotInjective {
                left: prev,
                right: pos,
            });
        }
    }
    let ranks = target.ranks();
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by_key(|&x| ranks[g[x]]);
    LinearExtension::new(order, g.len())
}

/// Builds the poset induced by a reflexive comparison oracle on `count`
/// items: items are identified when they compare both ways, classes are
/// ordered by the oracle, and the result is validated as a partial order.
/// Classes are labeled c0, c1, … in order of their smallest member;
/// returns the poset together with the item → class map.
///
/// The oracle is asked for every ordered pair (i, j), i ≠ j, and must be
/// consistent: an intransitive answer set is reported as an error naming
/// the witnessing triple.
pub fn induced_poset<E, F>(
    count: usize,
    mut leq: F,
) -> Result<(FinitePoset, Vec<usize>), InducedPosetError<E>>
where
    F: FnMut(usize, usize) -> Result<bool, E>,
{
    if count == 0 {
        return Err(InducedPosetError::Empty);
    }
    let mut rel = vec![vec![false; count]; count];
    for i in 0..count {
        rel[i][i] = true;
        for j in 0..count {
            if i != j {
                rel[i][j] = leq(i, j).map_err(InducedPosetError::Oracle)?;
            }
        }
    }
    for i in 0..count {
        for j in 0..count {
            if !rel[i][j] {
                continue;
            }
            for k in 0..count {
                if rel[j][k] && !rel[i][k] {
                    return Err(InducedPosetError::Intransitive { i, j, k });
                }
            }
        }
    }
    // Quotient by mutual comparability.
    let mut class_of = vec![usize::MAX; count];
    let mut representatives = Vec::new();
    for i in 0..count {
        if class_of[i] != usize::MAX {
            continue;
        }
        let class = representatives.len();
        class_of[i] = class;
        representatives.push(i);
        for j in (i + 1)..count {
            if class_of[j] == usize::MAX && rel[i][j] && rel[j][i] {
                class_of[j] = class;
            }
        }
    }
    let labels: Vec<String> = (0..representatives.len())
        .map(|c| format!("c{c}"))
        .collect();
    let leq_classes: Vec<Vec<bool>> = representatives
        .iter()
        .map(|&ri| representatives.iter().map(|&rj| rel[ri][rj]).collect())
        .collect();
    let poset =
        FinitePoset::from_leq(labels, leq_classes).map_err(InducedPosetError::Structure)?;
    Ok((poset, class_of))
}

/// Checks that element x ↦ item f[x] is an order embedding: the item
/// oracle agrees with the poset on every ordered pair (self-pairs
/// included, guarding against a non-reflexive oracle). Returns the first
/// disagreeing element pair, or None when the embedding is exact.
///
/// Panics if `f` does not assign an item to every element.
pub fn check_embedding<E, F>(
    p: &FinitePoset,
    f: &[usize],
    mut item_leq: F,
) -> Result<Option<(usize, usize)>, E>
where
    F: FnMut(usize, usize) -> Result<bool, E>,
{
    assert_eq!(
        f.len(),
        p.len(),
        "embedding map must assign an item to every element"
    );
    for x in 0..p.len() {
        for y in 0..p.len() {
            if item_leq(f[x], f[y])? != p.leq(x, y) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// Errors from `induced_poset`, generic over the oracle's error type.
#[derive(Debug)]
pub enum InducedPosetError<E> {
    Empty,
    Oracle(E),
    Intransitive { i: usize, j: usize, k: usize },
    Structure(PosetError),
}

impl<E: std::fmt::Display> std::fmt::Display for InducedPosetError<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InducedPosetError::Empty => write!(f, "cannot induce a poset on zero items"),
            InducedPosetError::Oracle(e) => write!(f, "comparison oracle failed: {e}"),
            InducedPosetError::Intransitive { i, j, k } => write!(
                f,
                "induced relation is intransitive: items {i} ⪯ {j} ⪯ {k} but not {i} ⪯ {k}"
            ),
            InducedPosetError::Structure(e) => write!(f, "induced relation is not a poset: {e}"),
        }
    }
}

impl<E: std::fmt::Display + std::fmt::Debug> std::error::Error for InducedPosetError<E> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn chain3() -> FinitePoset {
        FinitePoset::from_label_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
            .unwrap()
    }

    #[test]
    fn chain_with_closure_pairs_is_valid() {
        let p = chain3();
        assert!(p.leq(0, 2));
        assert!(p.is_total());
    }

    #[test]
    fn missing_transitive_pair_is_rejected_with_witness() {
        let err = FinitePoset::from_label_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
            .unwrap_err();
        match err {
            PosetError::NotTransitive {
                first,
                second,
                third,
            } => {
                assert_eq!((first.as_str(), second.as_str(), third.as_str()), ("a", "b", "c"));
            }
            other => panic!("expected NotTransitive, got {other}"),
        }
    }

    #[test]
    fn antisymmetry_violation_names_the_pair() {
        let err =
            FinitePoset::from_label_pairs(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::NotAntisymmetric { .. }));
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        assert!(matches!(
            FinitePoset::from_label_pairs(&["a", "a"], &[]),
            Err(PosetError::DuplicateLabel { .. })
        ));
    }

    #[test]
    fn standard_example_relations() {
        let s2 = standard_example(2).unwrap();
        assert_eq!(s2.labels(), &["a0", "a1", "b0", "b1"]);
        // aⱼ ⪯ bₖ iff j ≠ k; a's and b's mutually incomparable.
        assert!(s2.strictly_less(0, 3));
        assert!(s2.strictly_less(1, 2));
        assert!(s2.incomparable(0, 2));
        assert!(s2.incomparable(1, 3));
        assert!(s2.incomparable(0, 1));
        assert!(s2.incomparable(2, 3));
        assert!(standard_example(1).is_err());
    }

    #[test]
    fn linear_extension_checks() {
        let s2 = standard_example(2).unwrap();
        // a0 < a1 < b0 < b1 respects a0 ≺ b1 and a1 ≺ b0.
        let ext = LinearExtension::new(vec![0, 1, 2, 3], 4).unwrap();
        assert!(is_linear_extension(&s2, &ext));
        // …but its singleton family adds a0 ≤ b0, so it does not realize.
        assert!(!realizes(&s2, &[ext]));
        // b0 before a1 breaks a1 ≺ b0.
        let bad = LinearExtension::new(vec![0, 2, 1, 3], 4).unwrap();
        assert!(!is_linear_extension(&s2, &bad));
    }

    #[test]
    fn realizer_of_the_four_crown() {
        let s2 = standard_example(2).unwrap();
        // Classic two-extension realizer of S₂.
        let l1 = LinearExtension::new(vec![0, 3, 1, 2], 4).unwrap();
        let l2 = LinearExtension::new(vec![1, 2, 0, 3], 4).unwrap();
        assert!(realizes(&s2, &[l1.clone(), l2.clone()]));
        let realizer = Realizer::new(&s2, vec![l1, l2]).unwrap();
        assert_eq!(realizer.size(), 2);
    }

    #[test]
    fn realizer_validation_reports_failures() {
        let s2 = standard_example(2).unwrap();
        assert!(matches!(
            Realizer::new(&s2, vec![]),
            Err(PosetError::EmptyRealizer)
        ));
        let ext = LinearExtension::new(vec![0, 1, 2, 3], 4).unwrap();
        assert!(matches!(
            Realizer::new(&s2, vec![ext]),
            Err(PosetError::DoesNotRealize { .. })
        ));
    }

    #[test]
    fn rank_monotones_characterize_what_they_realize() {
        let s2 = standard_example(2).unwrap();
        let l1 = LinearExtension::new(vec![0, 3, 1, 2], 4).unwrap();
        let l2 = LinearExtension::new(vec![1, 2, 0, 3], 4).unwrap();
        let realizer = Realizer::new(&s2, vec![l1, l2]).unwrap();
        let family = realizer_to_monotones(&s2, &realizer);
        assert!(family.functions().iter().all(|f| is_monotone(&s2, f)));
        assert!(characterizes(&s2, &family));
    }

    #[test]
    fn constant_functions_are_monotone_but_do_not_characterize() {
        let s2 = standard_example(2).unwrap();
        let constant = vec![rat_int(1); 4];
        assert!(is_monotone(&s2, &constant));
        let family = MonotoneFamily::new(&s2, vec![constant]).unwrap();
        assert!(!characterizes(&s2, &family));
    }

    #[test]
    fn indicator_monotones_on_a_chain() {
        let p = FinitePoset::from_label_pairs(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(
            indicator_monotone(&p, 0).unwrap(),
            vec![rat_int(1), rat_int(1)]
        );
        assert_eq!(
            indicator_monotone(&p, 1).unwrap(),
            vec![rat_int(0), rat_int(1)]
        );
        assert!(characterizes(&p, &indicator_family(&p)));
    }

    #[test]
    fn indicator_family_characterizes_standard_examples() {
        for n in 2..=4 {
            let s = standard_example(n).unwrap();
            assert!(characterizes(&s, &indicator_family(&s)));
        }
    }

    #[test]
    fn restriction_to_the_a_side_is_an_antichain() {
        let s3 = standard_example(3).unwrap();
        let sub = s3.restrict(&[0, 1]).unwrap();
        assert_eq!(sub.labels(), &["a0", "a1"]);
        assert!(sub.incomparable(0, 1));
    }

    #[test]
    fn restriction_validates_indices() {
        let s2 = standard_example(2).unwrap();
        assert!(matches!(
            s2.restrict(&[0, 9]),
            Err(PosetError::ElementOutOfRange { index: 9, .. })
        ));
        assert!(matches!(
            s2.restrict(&[0, 0]),
            Err(PosetError::SubsetDuplicate { index: 0 })
        ));
    }

    #[test]
    fn pullback_orders_by_image_rank() {
        let ext = LinearExtension::new(vec![2, 0, 1, 3], 4).unwrap();
        // g maps S = {0,1} to T elements 1 and 2; ranks: g(0)=1 has rank 2,
        // g(1)=2 has rank 0, so the pullback puts 1 first.
        let pulled = pullback_extension(&[1, 2], &ext).unwrap();
        assert_eq!(pulled.order(), &[1, 0]);
        assert!(matches!(
            pullback_extension(&[1, 1], &ext),
            Err(PosetError::NotInjective { left: 0, right: 1 })
        ));
    }

    #[test]
    fn pullback_of_a_realizer_realizes_the_restriction() {
        let s3 = standard_example(3).unwrap();
        let result = order_dimension(&s3, s3.len()).unwrap();
        let DimensionResult::Computed { realizer, .. } = result else {
            panic!("dimension search failed on S₃");
        };
        let subset = [0, 2, 3, 5];
        let sub = s3.restrict(&subset).unwrap();
        let pulled: Vec<LinearExtension> = realizer
            .extensions()
            .iter()
            .map(|ext| pullback_extension(&subset, ext).unwrap())
            .collect();
        assert!(realizes(&sub, &pulled));
    }

    #[test]
    fn induced_poset_quotients_equivalent_items() {
        // Numbers compared by absolute value: |−1| = |1| merge.
        let items = [-1i64, 1, 2];
        let (poset, classes) =
            induced_poset(3, |i, j| Ok::<bool, std::convert::Infallible>(items[i].abs() <= items[j].abs()))
                .unwrap();
        assert_eq!(classes, vec![0, 0, 1]);
        assert_eq!(poset.len(), 2);
        assert!(poset.strictly_less(0, 1));
    }

    #[test]
    fn induced_poset_detects_intransitive_oracles() {
        // i ⪯ j iff j = i+1 (mod 3): cyclic, not transitive.
        let err = induced_poset(3, |i, j| {
            Ok::<bool, std::convert::Infallible>(j == (i + 1) % 3)
        })
        .unwrap_err();
        assert!(matches!(err, InducedPosetError::Intransitive { .. }));
    }

    #[test]
    fn check_embedding_reports_the_first_mismatch() {
        let chain = chain3();
        let identity = [0, 1, 2];
        let ok = check_embedding(&chain, &identity, |i, j| {
            Ok::<bool, std::convert::Infallible>(i <= j)
        })
        .unwrap();
        assert_eq!(ok, None);
        // Swapping two images breaks the embedding.
        let swapped = [1, 0, 2];
        let bad = check_embedding(&chain, &swapped, |i, j| {
            Ok::<bool, std::convert::Infallible>(i <= j)
        })
        .unwrap();
        assert_eq!(bad, Some((0, 1)));
    }

    #[test]
    fn dot_output_is_the_transitive_reduction() {
        let p = chain3();
        assert_eq!(
            p.to_dot(),
            "digraph poset {\n  rankdir=BT;\n  \"a\";\n  \"b\";\n  \"c\";\n  \"a\" -> \"b\";\n  \"b\" -> \"c\";\n}\n"
        );
    }

    #[test]
    fn covers_of_the_standard_example_are_all_strict_pairs() {
        // Sₙ has height 2, so nothing sits between any comparable pair.
        let s3 = standard_example(3).unwrap();
        assert_eq!(s3.covers(), s3.strict_pairs());
        assert_eq!(s3.covers().len(), 6);
    }
}
