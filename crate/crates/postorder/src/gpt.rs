//! Finite classical state spaces and the objects living on them: effects,
//! effect-valued measurements (EVMs), states, ensembles, direct mixtures,
//! the two-outcome `A`-family on the bit space, parallelogram membership
//! (the exact comparison criterion inside that family), and unital positive
//! embeddings of the bit space into larger classical spaces.
//!
//! A classical space of dimension d is represented functionally: states are
//! probability vectors in ℚᵈ, effects are vectors with coordinates in
//! [0, 1], the order unit u is the all-ones vector, and ⟨a, ρ⟩ = Σₓ a(x)ρ(x).

use crate::exact::{rational_abs, Rational};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GptError {
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
    #[error("classical space dimension must be at least 1")]
    ZeroDimension,
    #[error("effect has {found} coordinates, expected {expected}")]
    EffectLength { expected: usize, found: usize },
    #[error("effect coordinate {coordinate} of outcome {outcome} is outside [0, 1]")]
    EffectOutOfRange { outcome: usize, coordinate: usize },
    #[error("measurement must have at least one outcome")]
    NoOutcomes,
    #[error("effects do not sum to the unit at coordinate {coordinate}")]
    EffectSum { coordinate: usize },
    #[error("operands live on different spaces ({left} vs {right})")]
    SpaceMismatch { left: usize, right: usize },
    #[error("state coordinate {coordinate} is negative")]
    StateNegative { coordinate: usize },
    #[error("state coordinates sum to {found}, expected 1")]
    StateMass { found: String },
    #[error("ensemble member {member} has a negative coordinate {coordinate}")]
    EnsembleNegative { member: usize, coordinate: usize },
    #[error("ensemble total mass is {found}, expected 1")]
    EnsembleMass { found: String },
    #[error("ensemble member {member} has {found} coordinates, expected {expected}")]
    EnsembleMemberLength {
        member: usize,
        expected: usize,
        found: usize,
    },
    #[error("ensemble must have at least one member")]
    EmptyEnsemble,
    #[error("mixture weight {index} is negative")]
    NegativeWeight { index: usize },
    #[error("mixture weights sum to {found}, expected 1")]
    WeightSum { found: String },
    #[error("mixture needs at least one part")]
    EmptyMixture,
    #[error("parameter {name} = {value} is outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: String },
    #[error("direction is proportional to the unit, so it spans no bit embedding")]
    DegenerateDirection,
    #[error("operation requires the bit space (dimension 2), got dimension {found}")]
    NotBitSpace { found: usize },
    #[error("embedding components must sum to the unit at coordinate {coordinate}")]
    EmbeddingSum { coordinate: usize },
    #[error("embedding components are linearly dependent")]
    EmbeddingDependent,
}

/// A finite classical state space, identified by its dimension d ≥ 1
/// (number of configurations).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassicalSpace {
    dim: usize,
}

impl ClassicalSpace {
    pub fn new(dim: usize) -> Result<Self, GptError> {
        if dim == 0 {
            return Err(GptError::ZeroDimension);
        }
        Ok(ClassicalSpace { dim })
    }

    /// The bit space (d = 2).
    pub fn bit() -> Self {
        ClassicalSpace { dim: 2 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The order unit u: the all-ones vector.
    pub fn unit(&self) -> Vec<Rational> {
        vec![Rational::one(); self.dim]
    }

    fn check_same(&self, other: &Self) -> Result<(), GptError> {
        if self.dim != other.dim {
            return Err(GptError::SpaceMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

/// An effect: a vector with all coordinates in [0, 1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Effect {
    space: ClassicalSpace,
    values: Vec<Rational>,
}

impl Effect {
    pub fn new(space: ClassicalSpace, values: Vec<Rational>) -> Result<Self, GptError> {
        Self::validated(space, values, 0)
    }

    fn validated(
        space: ClassicalSpace,
        values: Vec<Rational>,
        outcome: usize,
    ) -> Result<Self, GptError> {
        if values.len() != space.dim() {
            return Err(GptError::EffectLength {
                expected: space.dim(),
                found: values.len(),
            });
        }
        for (coordinate, v) in values.iter().enumerate() {
            if v.is_negative() || *v > Rational::one() {
                return Err(GptError::EffectOutOfRange {
                    outcome,
                    coordinate,
                });
            }
        }
        Ok(Effect { space, values })
    }

    pub fn space(&self) -> ClassicalSpace {
        self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// ⟨a, ρ⟩ for an arbitrary vector ρ of matching length.
    pub fn pair(&self, rho: &[Rational]) -> Rational {
        crate::exact::dot(&self.values, rho)
    }

    /// True when the effect is a multiple of the unit (all coordinates equal).
    pub fn is_unit_multiple(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// An effect-valued measurement: finitely many effects summing to the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evm {
    space: ClassicalSpace,
    effects: Vec<Effect>,
}

impl Evm {
    pub fn new(space: ClassicalSpace, effects: Vec<Vec<Rational>>) -> Result<Self, GptError> {
        if effects.is_empty() {
            return Err(GptError::NoOutcomes);
        }
        let effects: Vec<Effect> = effects
            .into_iter()
            .enumerate()
            .map(|(j, values)| Effect::validated(space, values, j))
            .collect::<Result<_, _>>()?;
        for coordinate in 0..space.dim() {
            let total: Rational = effects.iter().map(|e| e.values[coordinate].clone()).sum();
            if !total.is_one() {
                return Err(GptError::EffectSum { coordinate });
            }
        }
        Ok(Evm { space, effects })
    }

    /// The trivial measurement with the given outcome weights: effect j is
    /// weight(j)·u. Trivial measurements are post-processing-minimal.
    pub fn trivial(space: ClassicalSpace, weights: &[Rational]) -> Result<Self, GptError> {
        check_distribution(weights)?;
        Ok(Evm {
            space,
            effects: weights
                .iter()
                .map(|w| Effect {
                    space,
                    values: vec![w.clone(); space.dim()],
                })
                .collect(),
        })
    }

    /// The identity observable: outcome x has effect δₓ (reads out the
    /// configuration exactly). Post-processing-maximal.
    pub fn identity_observable(space: ClassicalSpace) -> Self {
        let d = space.dim();
        let effects = (0..d)
            .map(|j| {
                let mut v = vec![Rational::zero(); d];
                v[j] = Rational::one();
                Effect { space, values: v }
            })
            .collect();
        Evm { space, effects }
    }

    pub fn space(&self) -> ClassicalSpace {
        self.space
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }

    pub fn effect(&self, j: usize) -> &Effect {
        &self.effects[j]
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    /// True when every effect is a multiple of the unit; such a measurement
    /// carries no information about the state.
    pub fn is_trivial(&self) -> bool {
        self.effects.iter().all(Effect::is_unit_multiple)
    }

    /// Outcome probabilities ⟨M(j), ρ⟩ on a state.
    pub fn outcome_distribution(&self, state: &State) -> Result<Vec<Rational>, GptError> {
        self.space.check_same(&state.space)?;
        Ok(self
            .effects
            .iter()
            .map(|e| e.pair(state.values()))
            .collect())
    }
}

/// A state: a probability vector on the space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    space: ClassicalSpace,
    values: Vec<Rational>,
}

impl State {
    pub fn new(space: ClassicalSpace, values: Vec<Rational>) -> Result<Self, GptError> {
        if values.len() != space.dim() {
            return Err(GptError::EffectLength {
                expected: space.dim(),
                found: values.len(),
            });
        }
        for (coordinate, v) in values.iter().enumerate() {
            if v.is_negative() {
                return Err(GptError::StateNegative { coordinate });
            }
        }
        let mass: Rational = values.iter().cloned().sum();
        if !mass.is_one() {
            return Err(GptError::StateMass {
                found: crate::exact::format_rational(&mass),
            });
        }
        Ok(State { space, values })
    }

    pub fn space(&self) -> ClassicalSpace {
        self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// An ensemble: finitely many subnormalized states (nonnegative vectors)
/// with total mass Σₖ⟨u, ρₖ⟩ = 1. Member k carries both the prior
/// probability (its mass) and the conditional state (its direction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ensemble {
    space: ClassicalSpace,
    members: Vec<Vec<Rational>>,
}

impl Ensemble {
    pub fn new(space: ClassicalSpace, members: Vec<Vec<Rational>>) -> Result<Self, GptError> {
        if members.is_empty() {
            return Err(GptError::EmptyEnsemble);
        }
        let mut mass = Rational::zero();
        for (k, member) in members.iter().enumerate() {
            if member.len() != space.dim() {
                return Err(GptError::EnsembleMemberLength {
                    member: k,
                    expected: space.dim(),
                    found: member.len(),
                });
            }
            for (coordinate, v) in member.iter().enumerate() {
                if v.is_negative() {
                    return Err(GptError::EnsembleNegative {
                        member: k,
                        coordinate,
                    });
                }
                mass += v;
            }
        }
        if !mass.is_one() {
            return Err(GptError::EnsembleMass {
                found: crate::exact::format_rational(&mass),
            });
        }
        Ok(Ensemble { space, members })
    }

    pub fn space(&self) -> ClassicalSpace {
        self.space
    }

    pub fn members(&self) -> &[Vec<Rational>] {
        &self.members
    }
}

fn check_distribution(weights: &[Rational]) -> Result<(), GptError> {
    if weights.is_empty() {
        return Err(GptError::EmptyMixture);
    }
    for (index, w) in weights.iter().enumerate() {
        if w.is_negative() {
            return Err(GptError::NegativeWeight { index });
        }
    }
    let total: Rational = weights.iter().cloned().sum();
    if !total.is_one() {
        return Err(GptError::WeightSum {
            found: crate::exact::format_rational(&total),
        });
    }
    Ok(())
}

/// Direct mixture ⊕ⱼ wⱼ·Mⱼ: the measurement whose outcome set is the
/// disjoint union of the parts' outcome sets, block j scaled by wⱼ, blocks
/// concatenated in argument order. Zero-weight parts keep their (all-zero)
/// blocks, so the outcome count is always Σⱼ outcomes(Mⱼ).
pub fn direct_mixture(parts: &[(Rational, Evm)]) -> Result<Evm, GptError> {
    if parts.is_empty() {
        return Err(GptError::EmptyMixture);
    }
    let weights: Vec<Rational> = parts.iter().map(|(w, _)| w.clone()).collect();
    check_distribution(&weights)?;
    let space = parts[0].1.space();
    let mut effects = Vec::new();
    for (w, m) in parts {
        space.check_same(&m.space())?;
        for e in m.effects() {
            effects.push(e.values().iter().map(|v| v * w).collect());
        }
    }
    Evm::new(space, effects)
}

/// The two-outcome family A on the bit space: effects
/// ((s₀, s₁), (1−s₀, 1−s₁)) with s₀, s₁ ∈ [0, 1].
pub fn a_family(s0: &Rational, s1: &Rational) -> Result<Evm, GptError> {
    for (name, v) in [("s0", s0), ("s1", s1)] {
        if v.is_negative() || *v > Rational::one() {
            return Err(GptError::ParameterOutOfRange {
                name,
                value: crate::exact::format_rational(v),
            });
        }
    }
    Evm::new(
        ClassicalSpace::bit(),
        vec![
            vec![s0.clone(), s1.clone()],
            vec![Rational::one() - s0, Rational::one() - s1],
        ],
    )
}

/// Whether (s₀, s₁) lies in the parallelogram spanned by t and 1−t, i.e.
/// whether s = p·t + q·(1−t) for some p, q ∈ [0, 1]. This is exactly the
/// condition for A_s to be a post-processing of A_t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParallelogramMembership {
    Inside { p: Rational, q: Rational },
    Outside,
}

/// Decides parallelogram membership exactly and returns a verified witness
/// when inside. For nondegenerate t (t₀ ≠ t₁) the witness is the unique
/// solution of the 2×2 system; in the degenerate case t₀ = t₁ the
/// parallelogram collapses to the diagonal segment, so membership means
/// s₀ = s₁, with p = q = s₀ as a witness.
pub fn parallelogram_member(
    s: (&Rational, &Rational),
    t: (&Rational, &Rational),
) -> Result<ParallelogramMembership, GptError> {
    for (name, v) in [("s0", s.0), ("s1", s.1), ("t0", t.0), ("t1", t.1)] {
        if v.is_negative() || *v > Rational::one() {
            return Err(GptError::ParameterOutOfRange {
                name,
                value: crate::exact::format_rational(v),
            });
        }
    }
    let det = t.0 - t.1;
    let membership = if det.is_zero() {
        if s.0 == s.1 {
            ParallelogramMembership::Inside {
                p: s.0.clone(),
                q: s.0.clone(),
            }
        } else {
            ParallelogramMembership::Outside
        }
    } else {
        // Solve (t₀ p + (1−t₀) q, t₁ p + (1−t₁) q) = (s₀, s₁).
        let p = (s.0 * (Rational::one() - t.1) - s.1 * (Rational::one() - t.0)) / &det;
        let q = (t.0 * s.1 - t.1 * s.0) / &det;
        let in_unit = |v: &Rational| !v.is_negative() && *v <= Rational::one();
        if in_unit(&p) && in_unit(&q) {
            ParallelogramMembership::Inside { p, q }
        } else {
            ParallelogramMembership::Outside
        }
    };
    if let ParallelogramMembership::Inside { p, q } = &membership {
        // Re-verify the witness before handing it out.
        let r0 = p * t.0 + q * (Rational::one() - t.0);
        let r1 = p * t.1 + q * (Rational::one() - t.1);
        if r0 != *s.0 || r1 != *s.1 {
            // Unreachable: the witness is the exact solution by construction.
            unreachable!("parallelogram witness failed re-verification");
        }
    }
    Ok(membership)
}

/// A unital positive linear map from the bit space into a target classical
/// space, determined by the images (a, a′) of the two basis effects with
/// a + a′ = u and (a, a′) linearly independent. Such a map is an order
/// embedding for the post-processing order: measurements compare on the bit
/// space exactly as their images compare on the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalPositiveMap {
    a: Effect,
    a_prime: Effect,
}

impl UnitalPositiveMap {
    pub fn new(a: Effect, a_prime: Effect) -> Result<Self, GptError> {
        a.space().check_same(&a_prime.space())?;
        for (coordinate, (x, y)) in a.values().iter().zip(a_prime.values()).enumerate() {
            if !(x + y).is_one() {
                return Err(GptError::EmbeddingSum { coordinate });
            }
        }
        // Independence of (a, a′) with a + a′ = u is equivalent to a not
        // being a multiple of u.
        if a.is_unit_multiple() {
            return Err(GptError::EmbeddingDependent);
        }
        Ok(UnitalPositiveMap { a, a_prime })
    }

    pub fn target(&self) -> ClassicalSpace {
        self.a.space()
    }

    pub fn a(&self) -> &Effect {
        &self.a
    }

    pub fn a_prime(&self) -> &Effect {
        &self.a_prime
    }

    /// Image of a bit-space vector: (α₀, α₁) ↦ α₀·a + α₁·a′.
    pub fn apply_vector(&self, alpha: &[Rational]) -> Result<Vec<Rational>, GptError> {
        if alpha.len() != 2 {
            return Err(GptError::NotBitSpace {
                found: alpha.len(),
            });
        }
        Ok(self
            .a
            .values()
            .iter()
            .zip(self.a_prime.values())
            .map(|(x, y)| &alpha[0] * x + &alpha[1] * y)
            .collect())
    }

    /// Image of a bit-space measurement, effect by effect.
    pub fn apply(&self, m: &Evm) -> Result<Evm, GptError> {
        if m.space().dim() != 2 {
            return Err(GptError::NotBitSpace {
                found: m.space().dim(),
            });
        }
        let effects = m
            .effects()
            .iter()
            .map(|e| self.apply_vector(e.values()))
            .collect::<Result<Vec<_>, _>>()?;
        Evm::new(self.target(), effects)
    }
}

/// Builds the canonical bit embedding in the direction a₀: with
/// n = ‖a₀‖∞, the pair a := (a₀ + n·u) / ‖a₀ + n·u‖∞ and a′ := u − a
/// spans a unital positive order embedding of the bit space. Fails when a₀
/// is proportional to u (no direction to embed along).
pub fn cbit_embedding(a0: &[Rational]) -> Result<UnitalPositiveMap, GptError> {
    let space = ClassicalSpace::new(a0.len())?;
    if a0.windows(2).all(|w| w[0] == w[1]) {
        return Err(GptError::DegenerateDirection);
    }
    let sup = a0
        .iter()
        .map(rational_abs)
        .max()
        .expect("nonconstant vector is nonempty");
    let shifted: Vec<Rational> = a0.iter().map(|v| v + &sup).collect();
    let scale = shifted
        .iter()
        .cloned()
        .max()
        .expect("nonconstant vector is nonempty");
    let a_values: Vec<Rational> = shifted.into_iter().map(|v| v / &scale).collect();
    let a_prime_values: Vec<Rational> = a_values.iter().map(|v| Rational::one() - v).collect();
    let a = Effect::new(space, a_values)?;
    let a_prime = Effect::new(space, a_prime_values)?;
    UnitalPositiveMap::new(a, a_prime)
}

/// Convenience: rational from integers, re-exported for call sites building
/// parameter grids.
pub fn ratio(n: i64, d: i64) -> Rational {
    crate::exact::rat(n, d)
}
