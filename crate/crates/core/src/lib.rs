//! Exact auditing of finite signal structures for statistical
//! discrimination.
//!
//! A firm observes a signal `s` (a posterior over skill states) about a
//! worker and picks the best action from a finite menu `A`, earning
//! `v_A(s) = max_a a . s`. Two populations whose signal distributions `pi`,
//! `pi'` induce the same skill distribution can still be paid differently
//! on average. This crate decides, with exact rational arithmetic, whether a
//! finite signal set allows that, builds explicit witnesses when it does,
//! computes fair valuations and the Bayesian-persuasion value `W_A`, and
//! certifies the LP dualities connecting them.
//!
//! All core types are generic over an exact [`Scalar`]; the default
//! parameter is [`Rational`] (an arbitrary-precision fraction).

pub mod audit;
pub mod discrimination;
pub mod error;
pub mod fair;
pub mod fixtures;
pub mod geometry;
pub mod lp;
pub mod model;
pub mod persuasion;
pub mod scalar;

#[cfg(test)]
mod test_util;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use discrimination::{
    find_discrimination_witness, is_identified, proof_witness_actions, wage_shift,
    DiscriminationWitness,
};
pub use fair::{dominating_lp, fair_valuation, DominatingOutcome, FairValuation};
pub use geometry::{
    convex_decomposition, extreme_points, strict_separation, ConvexDecomposition, Membership,
    SeparatingHyperplane, Separation,
};
pub use model::{
    expected_payoff, induced_skill, shift_action_set, value_function, Action, ActionSet,
    InfoStructure, Signal, SignalSet, StateSpace, Valuation,
};
pub use persuasion::{
    blackwell_more_informative, concavify, envelope_gaps, is_affine_persuasion_value,
    verify_concave_envelope_duality, Affinity, Concavification, ConcavityWitness, EnvelopeGap,
    PersuasionSolution,
};

/// Arbitrary-precision exact fraction; the default scalar everywhere.
pub type Rational = num_rational::BigRational;

/// Fixed-width fraction. Faster, but panics on overflow; only suitable for
/// small, well-conditioned inputs.
pub type SmallRational = num_rational::Ratio<i64>;
