//! Exact decision procedures for the post-processing (coarse-graining)
//! order of measurements on finite classical and quantum state spaces,
//! state-discrimination monotones, and order-dimension computations for
//! finite posets — including the measurement families whose comparison
//! poset realizes the standard example Sₙ for every n.

pub mod exact;
pub mod gpt;
pub(crate) mod parallel;
pub mod poset;
pub mod postproc;
pub mod json;
pub mod quantum;
