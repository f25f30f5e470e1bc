//! The three-state Phelpsian example: two populations with identical skill
//! distributions whose signals carry different information.

use crate::model::{ActionSet, InfoStructure, SignalSet};
use crate::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `{(1,0,0), (1/2,1/2,0), (0,1/2,1/2), (0,0,1)}`.
pub fn phelps_signals() -> SignalSet {
    SignalSet::from_vectors(vec![
        vec![q(1, 1), q(0, 1), q(0, 1)],
        vec![q(1, 2), q(1, 2), q(0, 1)],
        vec![q(0, 1), q(1, 2), q(1, 2)],
        vec![q(0, 1), q(0, 1), q(1, 1)],
    ])
    .expect("valid signals")
}

/// `{(1,0,0), (0,1/2,3)}`.
pub fn phelps_actions() -> ActionSet {
    ActionSet::from_vectors(vec![
        vec![q(1, 1), q(0, 1), q(0, 1)],
        vec![q(0, 1), q(1, 2), q(3, 1)],
    ])
    .expect("valid actions")
}

/// Population A: `(1/3, 0, 2/3, 0)`.
pub fn phelps_pi() -> InfoStructure {
    InfoStructure::new(vec![q(1, 3), q(0, 1), q(2, 3), q(0, 1)]).expect("valid weights")
}

/// Population B: `(0, 2/3, 0, 1/3)`.
pub fn phelps_pi_prime() -> InfoStructure {
    InfoStructure::new(vec![q(0, 1), q(2, 3), q(0, 1), q(1, 3)]).expect("valid weights")
}

/// The bundled JSON instance for the example.
pub const PHELPS_JSON: &str = include_str!("../fixtures/phelps.json");
