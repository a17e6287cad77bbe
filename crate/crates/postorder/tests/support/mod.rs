//! Shared helpers for the integration suites: seeded generators for random
//! measurements, ensembles, POVMs, channels, and posets, plus a brute-force
//! order-dimension oracle used to cross-check the search engine.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use postorder::exact::{rat, rational_abs, GaussianMatrix, GaussianRational, Rational};
use postorder::gpt::{ClassicalSpace, Ensemble, Evm};
use postorder::poset::FinitePoset;
use postorder::quantum::{
    entangled_basis, mixed_unitary, FloatPovm, QuantumEnsemble, QuantumEvm, Superoperator,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// Deterministic RNG; every suite fixes its own seed so failures reproduce.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform composition: splits `total` into `parts` nonnegative summands.
pub fn random_composition(rng: &mut ChaCha8Rng, total: u64, parts: usize) -> Vec<u64> {
    assert!(parts >= 1, "a composition needs at least one part");
    let mut cuts: Vec<u64> = (0..parts - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for cut in cuts {
        out.push(cut - prev);
        prev = cut;
    }
    out.push(total - prev);
    out
}

/// Random measurement on a classical space: for every coordinate the effect
/// values are a composition of 1 with the given denominator, so the effects
/// sum to the unit exactly.
pub fn random_evm(
    rng: &mut ChaCha8Rng,
    space: ClassicalSpace,
    outcomes: usize,
    denominator: u64,
) -> Evm {
    let d = space.dim();
    let mut effects = vec![vec![rat(0, 1); d]; outcomes];
    for i in 0..d {
        let parts = random_composition(rng, denominator, outcomes);
        for (j, p) in parts.into_iter().enumerate() {
            effects[j][i] = rat(p as i64, denominator as i64);
        }
    }
    Evm::new(space, effects).expect("effect columns sum to one by construction")
}

/// Random ensemble with exact unit total mass.
pub fn random_ensemble(
    rng: &mut ChaCha8Rng,
    space: ClassicalSpace,
    members: usize,
    denominator: u64,
) -> Ensemble {
    let d = space.dim();
    let flat = random_composition(rng, denominator, members * d);
    let member_vecs: Vec<Vec<Rational>> = flat
        .chunks(d)
        .map(|chunk| {
            chunk
                .iter()
                .map(|&v| rat(v as i64, denominator as i64))
                .collect()
        })
        .collect();
    Ensemble::new(space, member_vecs).expect("total mass is one by construction")
}

/// Random direction vector for the bit embedding: rational coordinates, not
/// all equal (a constant vector spans no direction).
pub fn random_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..dim)
            .map(|_| {
                let q = rng.gen_range(1..=4i64);
                rat(rng.gen_range(-q..=q), q)
            })
            .collect();
        if v.windows(2).any(|w| w[0] != w[1]) {
            return v;
        }
    }
}

/// Random Gaussian-rational matrix with small entries.
pub fn random_gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> GaussianMatrix {
    let entries: Vec<Vec<GaussianRational>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    let q = rng.gen_range(1..=2i64);
                    GaussianRational::new(rat(rng.gen_range(-2..=2), q), rat(rng.gen_range(-2..=2), q))
                })
                .collect()
        })
        .collect();
    GaussianMatrix::from_entries(&entries).expect("rows share a length by construction")
}

/// Random Hermitian Gaussian-rational matrix (indefinite in general).
pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> GaussianMatrix {
    let g = random_gaussian_matrix(rng, dim, dim);
    g.add(&g.adjoint())
        .expect("same shape")
        .scale(&rat(1, 2))
}

/// Random exact POVM: Gram matrices G†G scaled under the identity by a
/// row-sum spectral bound, completed with 𝟙 − Σ (positive by the bound).
pub fn random_rational_povm(rng: &mut ChaCha8Rng, dim: usize, outcomes: usize) -> QuantumEvm {
    assert!(outcomes >= 1);
    if outcomes == 1 {
        return QuantumEvm::new(dim, vec![GaussianMatrix::identity(dim)])
            .expect("the identity alone is a POVM");
    }
    loop {
        let parts: Vec<GaussianMatrix> = (0..outcomes - 1)
            .map(|_| {
                let g = random_gaussian_matrix(rng, dim, dim);
                g.adjoint().mul(&g).expect("square factors")
            })
            .collect();
        let mut sum = GaussianMatrix::zeros(dim, dim);
        for p in &parts {
            sum = sum.add(p).expect("same shape");
        }
        // λ_max(S) ≤ max_r Σ_c |S_rc| ≤ max_r Σ_c (|re| + |im|), exactly rational.
        let mut bound = rat(0, 1);
        for r in 0..dim {
            let mut row_sum = rat(0, 1);
            for c in 0..dim {
                let e = sum.get(r, c);
                row_sum += rational_abs(&e.re) + rational_abs(&e.im);
            }
            if row_sum > bound {
                bound = row_sum;
            }
        }
        if bound == rat(0, 1) {
            continue; // all parts drew zero; try again
        }
        let scale = rat(1, 1) / bound;
        let mut effects: Vec<GaussianMatrix> = parts.iter().map(|p| p.scale(&scale)).collect();
        let mut total = GaussianMatrix::zeros(dim, dim);
        for e in &effects {
            total = total.add(e).expect("same shape");
        }
        effects.push(
            GaussianMatrix::identity(dim)
                .sub(&total)
                .expect("same shape"),
        );
        match QuantumEvm::new(dim, effects) {
            Ok(m) => return m,
            Err(_) => continue,
        }
    }
}

/// Random exact quantum ensemble: Gram members normalized to unit total trace.
pub fn random_quantum_ensemble(
    rng: &mut ChaCha8Rng,
    dim: usize,
    members: usize,
) -> QuantumEnsemble {
    loop {
        let parts: Vec<GaussianMatrix> = (0..members)
            .map(|_| {
                let g = random_gaussian_matrix(rng, dim, dim);
                g.adjoint().mul(&g).expect("square factors")
            })
            .collect();
        let mut total = rat(0, 1);
        for p in &parts {
            total += p.trace().expect("square").re;
        }
        if total == rat(0, 1) {
            continue;
        }
        let scale = rat(1, 1) / total;
        let scaled: Vec<GaussianMatrix> = parts.iter().map(|p| p.scale(&scale)).collect();
        return QuantumEnsemble::new(dim, scaled)
            .expect("Gram members with unit total trace form an ensemble");
    }
}

/// Random unitary via Householder QR of a complex matrix with uniform entries.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    m.qr().q()
}

/// Random unital CP channel: a convex mixture of unitary conjugations.
pub fn random_mixed_unitary(rng: &mut ChaCha8Rng, dim: usize, terms: usize) -> Superoperator {
    let raw: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let parts: Vec<(f64, DMatrix<Complex64>)> = raw
        .iter()
        .map(|w| (w / total, random_unitary(rng, dim)))
        .collect();
    mixed_unitary(dim, &parts).expect("convex unitary mixture is a channel")
}

/// The measurement whose effects are the channel images of the maximally
/// entangled basis projectors on the doubled space: effect t is
/// (Ψ ⊗ id)(|η_t⟩⟨η_t|). A POVM because Ψ is unital.
pub fn entangled_measurement(psi: &Superoperator, d: usize) -> FloatPovm {
    let lifted = psi.tensor_with_identity(d);
    let effects: Vec<DMatrix<Complex64>> = entangled_basis(d)
        .iter()
        .map(|eta| {
            let proj = eta * eta.adjoint();
            lifted.apply(&proj).expect("projector has the lifted shape")
        })
        .collect();
    FloatPovm::new(d * d, effects, 1e-9).expect("channel images of a basis form a POVM")
}

/// Random float POVM with `dim` rank-one-mixture effects: a convex blend of
/// two random orthonormal bases, so the sum is exactly the identity.
pub fn random_float_povm(rng: &mut ChaCha8Rng, dim: usize) -> FloatPovm {
    let u = random_unitary(rng, dim);
    let v = random_unitary(rng, dim);
    let w = rng.gen_range(0.2..0.8);
    let effects: Vec<DMatrix<Complex64>> = (0..dim)
        .map(|i| {
            let p = u.column(i) * u.column(i).adjoint();
            let q = v.column(i) * v.column(i).adjoint();
            p * Complex64::new(w, 0.0) + q * Complex64::new(1.0 - w, 0.0)
        })
        .collect();
    FloatPovm::new(dim, effects, 1e-9).expect("basis blend is a POVM")
}

/// Random poset on n elements: a random DAG oriented along the index order,
/// then closed transitively.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, edge_prob: f64) -> FinitePoset {
    assert!(n >= 1);
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(edge_prob) {
                leq[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for (j, &below) in leq[i].iter().enumerate() {
            if below {
                pairs.push((i, j));
            }
        }
    }
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    FinitePoset::new(labels, &pairs).expect("transitive closure of a DAG is a partial order")
}

/// Every linear extension of the poset, as element orders, found by
/// backtracking over minimal elements.
pub fn all_linear_extensions(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn extend(
        p: &FinitePoset,
        prefix: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if prefix.len() == p.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..p.len() {
            if used[x] {
                continue;
            }
            // x is placeable when every strictly smaller element is placed.
            let ready = (0..p.len()).all(|y| used[y] || !p.strictly_less(y, x));
            if ready {
                used[x] = true;
                prefix.push(x);
                extend(p, prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    extend(p, &mut prefix, &mut used, &mut out);
    out
}

/// Calls `f` on every k-combination of 0..n until it returns true; reports
/// whether any call did.
fn any_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        // advance to the lexicographic successor
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Brute-force order dimension: the least k such that some k of the linear
/// extensions intersect to the order. Exponential; for cross-checks only.
pub fn naive_order_dimension(p: &FinitePoset) -> usize {
    let extensions = all_linear_extensions(p);
    let n = p.len();
    let ranks: Vec<Vec<usize>> = extensions
        .iter()
        .map(|order| {
            let mut rank = vec![0usize; n];
            for (pos, &x) in order.iter().enumerate() {
                rank[x] = pos;
            }
            rank
        })
        .collect();
    for k in 1..=extensions.len() {
        let found = any_combination(extensions.len(), k, |combo| {
            for x in 0..n {
                for y in 0..n {
                    if x == y {
                        continue;
                    }
                    let below_all = combo.iter().all(|&e| ranks[e][x] < ranks[e][y]);
                    if below_all != p.leq(x, y) {
                        return false;
                    }
                }
            }
            true
        });
        if found {
            return k;
        }
    }
    unreachable!("the family of all linear extensions realizes the order");
}

/// All posets on n labeled elements, deduplicated up to isomorphism by a
/// minimum-over-permutations canonical form of the strict relation.
pub fn all_posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    assert!((1..=4).contains(&n), "exhaustive enumeration is for tiny n");
    let ordered: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let pair_count = ordered.len();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    'masks: for mask in 0u32..(1 << pair_count) {
        let mut strict = vec![vec![false; n]; n];
        for (bit, &(i, j)) in ordered.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                strict[i][j] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if strict[i][j] && strict[j][i] {
                    continue 'masks; // not antisymmetric
                }
                if strict[i][j] {
                    for k in 0..n {
                        if strict[j][k] && !strict[i][k] {
                            continue 'masks; // not transitive
                        }
                    }
                }
            }
        }
        let canon = perms
            .iter()
            .map(|perm| {
                let mut packed = 0u32;
                for (bit, &(i, j)) in ordered.iter().enumerate() {
                    if strict[perm[i]][perm[j]] {
                        packed |= 1 << bit;
                    }
                }
                packed
            })
            .min()
            .expect("at least the identity permutation");
        if seen.insert(canon) {
            let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            let pairs: Vec<(usize, usize)> = ordered
                .iter()
                .copied()
                .filter(|&(i, j)| strict[i][j])
                .collect();
            out.push(FinitePoset::new(labels, &pairs).expect("checked partial order"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn heap(k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(current.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, current, out);
            if k % 2 == 0 {
                current.swap(i, k - 1);
            } else {
                current.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut current, &mut out);
    out
}

/// Two posets are isomorphic when some bijection matches their order
/// relations exactly. Exponential; for tiny cross-checks only.
pub fn isomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    if p.len() != q.len() {
        return false;
    }
    permutations(p.len()).iter().any(|perm| {
        (0..p.len()).all(|i| (0..p.len()).all(|j| p.leq(i, j) == q.leq(perm[i], perm[j])))
    })
}
