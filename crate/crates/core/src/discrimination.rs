//! Identification and discrimination witnesses.
//!
//! For a finite signal set, the mean map `pi -> p_pi` is injective exactly
//! when the signals are affinely independent, so identification reduces to
//! an exact rank computation. When it fails, an affine dependence splits
//! into two information structures with a common mean, and a strict
//! separation of one support vertex yields a two-action menu that pays them
//! differently.

use crate::error::{Error, Result};
use crate::geometry::{is_extreme_among, strict_separation, Separation};
use crate::lp::{affine_dependence, AffineDependence};
use crate::model::{
    expected_payoff, induced_skill, Action, ActionSet, InfoStructure, Signal, SignalSet,
};
use crate::scalar::{dot, sum, Scalar};
use crate::Rational;

/// Two information structures with the same induced skill distribution that
/// a binary action menu pays differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminationWitness<T = Rational> {
    pub pi: InfoStructure<T>,
    pub pi_prime: InfoStructure<T>,
    pub action_set: ActionSet<T>,
    pub payoff: T,
    pub payoff_prime: T,
}

impl<T: Scalar> DiscriminationWitness<T> {
    /// Evaluates both payoffs and checks that the triple really is a
    /// violation of non-discrimination for binary menus.
    pub fn new(
        set: &SignalSet<T>,
        action_set: ActionSet<T>,
        pi: InfoStructure<T>,
        pi_prime: InfoStructure<T>,
    ) -> Result<Self> {
        let payoff = expected_payoff(set, &action_set, &pi)?;
        let payoff_prime = expected_payoff(set, &action_set, &pi_prime)?;
        let witness = DiscriminationWitness {
            pi,
            pi_prime,
            action_set,
            payoff,
            payoff_prime,
        };
        witness
            .verify(set)
            .map_err(|e| Error::Precondition(e.to_string()))?;
        Ok(witness)
    }

    pub fn verify(&self, set: &SignalSet<T>) -> Result<()> {
        if !self.action_set.is_binary() {
            return Err(Error::Invariant(format!(
                "witness menu has {} actions",
                self.action_set.len()
            )));
        }
        if induced_skill(set, &self.pi)? != induced_skill(set, &self.pi_prime)? {
            return Err(Error::Invariant("induced skills differ".into()));
        }
        if expected_payoff(set, &self.action_set, &self.pi)? != self.payoff
            || expected_payoff(set, &self.action_set, &self.pi_prime)? != self.payoff_prime
        {
            return Err(Error::Invariant("recorded payoffs are stale".into()));
        }
        if self.payoff == self.payoff_prime {
            return Err(Error::Invariant("payoffs are equal".into()));
        }
        Ok(())
    }
}

/// Whether distinct information structures over `set` always induce
/// distinct skill distributions.
pub fn is_identified<T: Scalar>(set: &SignalSet<T>) -> bool {
    matches!(
        affine_dependence(set.signals())
            .expect("signal sets hold distinct points of one dimension"),
        AffineDependence::Independent
    )
}

/// Builds an explicit discrimination witness, or `None` when `set` is
/// identified (and hence non-discriminatory).
///
/// Returns `Error::Invariant` only if the constructed witness fails its own
/// exact check, which would indicate a bug.
pub fn find_discrimination_witness<T: Scalar>(
    set: &SignalSet<T>,
) -> Result<Option<DiscriminationWitness<T>>> {
    let AffineDependence::Dependence(c) = affine_dependence(set.signals())? else {
        return Ok(None);
    };
    let positive: Vec<T> = c.iter().map(|x| x.clone().max(T::zero())).collect();
    let negative: Vec<T> = c.iter().map(|x| (-x.clone()).max(T::zero())).collect();
    // sum c = 0, so both halves carry the same mass.
    let mass = sum(&positive);
    let normalize = |v: Vec<T>| -> Result<InfoStructure<T>> {
        InfoStructure::new(v.into_iter().map(|x| x / mass.clone()).collect())
    };
    let pi = normalize(positive)?;
    let pi_prime = normalize(negative)?;

    let support: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
    let points: Vec<&Signal<T>> = support.iter().map(|&i| &set.signals()[i]).collect();
    let pos = (0..support.len())
        .find(|&k| is_extreme_among(&points, k))
        .ok_or_else(|| Error::Invariant("dependence support has no extreme point".into()))?;
    let apex = support[pos];
    let Separation::Separated(h) = strict_separation(set, apex, &support)? else {
        return Err(Error::Invariant(format!(
            "extreme signal {apex} could not be separated"
        )));
    };
    // On the simplex, normal . s + offset = (normal + offset * 1) . s.
    let lifted = h
        .normal
        .add(&Action::constant(set.dim(), h.offset.clone()))?;
    let menu = ActionSet::new(vec![lifted, Action::zeros(set.dim())])?;
    DiscriminationWitness::new(set, menu, pi, pi_prime)
        .map(Some)
        .map_err(|e| Error::Invariant(format!("constructed witness rejected: {e}")))
}

/// The two-action menu `{f, -f}` with `f = (s* - t) + (t.s* - s*.s*) 1`,
/// for `s* = gamma t + (1 - gamma) t'`.
///
/// It values `s*` at zero while paying strictly positive amounts at both
/// `t` and `t'`: `f . s* = 0`, `g . t = |t - s*|^2`, and
/// `f . t' = gamma (1 - gamma) |t' - t|^2`.
pub fn proof_witness_actions<T: Scalar>(
    s_star: &Signal<T>,
    t: &Signal<T>,
    t_prime: &Signal<T>,
    gamma: &T,
) -> Result<(Action<T>, Action<T>)> {
    let n = s_star.dim();
    for s in [t, t_prime] {
        if s.dim() != n {
            return Err(Error::dim("proof witness signal", n, s.dim()));
        }
    }
    if !gamma.is_positive() || *gamma >= T::one() {
        return Err(Error::Precondition(format!(
            "mixing weight {gamma} must lie strictly between 0 and 1"
        )));
    }
    if t == t_prime {
        return Err(Error::Precondition("t and t' must differ".into()));
    }
    if t.mix(gamma, t_prime)? != *s_star {
        return Err(Error::Precondition(
            "s* is not the stated mixture of t and t'".into(),
        ));
    }
    let shift = dot(t.probs(), s_star.probs()) - dot(s_star.probs(), s_star.probs());
    let f = Action::new(
        s_star
            .probs()
            .iter()
            .zip(t.probs())
            .map(|(a, b)| a.clone() - b.clone() + shift.clone())
            .collect(),
    );
    let g = f.neg();
    Ok((f, g))
}

/// A shift `k` such that the menu `A + k` pays `pi` and `pi'` differently,
/// given that their induced skills differ.
///
/// Uses `k = alpha e_j` for the first state `j` where the skills differ,
/// with `alpha = (E_pi'[v_A] - E_pi[v_A]) / (p_pi(j) - p_pi'(j)) + 1`; the
/// shifted payoff gap is then exactly `p_pi(j) - p_pi'(j)`.
pub fn wage_shift<T: Scalar>(
    set: &SignalSet<T>,
    actions: &ActionSet<T>,
    pi: &InfoStructure<T>,
    pi_prime: &InfoStructure<T>,
) -> Result<Action<T>> {
    let p = induced_skill(set, pi)?;
    let p_prime = induced_skill(set, pi_prime)?;
    let Some(j) = (0..p.dim()).find(|&j| p.probs()[j] != p_prime.probs()[j]) else {
        return Err(Error::Precondition(
            "induced skills are equal; no wage shift can separate them".into(),
        ));
    };
    let gap = expected_payoff(set, actions, pi_prime)? - expected_payoff(set, actions, pi)?;
    let diff = p.probs()[j].clone() - p_prime.probs()[j].clone();
    let alpha = gap / diff + T::one();
    let mut k = vec![T::zero(); p.dim()];
    k[j] = alpha;
    Ok(Action::new(k))
}
