//! States, signals, actions and information structures, with the primitive
//! formulas built on them: the value function `v_A`, the induced skill
//! distribution `p_pi`, expected payoffs, and action-set shifts.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{dot, sum, Scalar};
use crate::Rational;

/// Ordered, distinct state labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    labels: Vec<String>,
}

impl StateSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Empty("state space"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Precondition(format!("duplicate state label `{l}`")));
            }
        }
        Ok(StateSpace { labels })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

fn check_probability_vector<T: Scalar>(v: &[T]) -> std::result::Result<(), String> {
    if v.is_empty() {
        return Err("empty probability vector".into());
    }
    if let Some((i, x)) = v.iter().enumerate().find(|(_, x)| x.is_negative()) {
        return Err(format!("entry {i} is negative ({x})"));
    }
    let total = sum(v);
    if !total.is_one() {
        return Err(format!("entries sum to {total}, expected exactly 1"));
    }
    Ok(())
}

/// A posterior over states: a point of the probability simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signal<T = Rational> {
    probs: Vec<T>,
}

impl<T: Scalar> Signal<T> {
    pub fn new(probs: Vec<T>) -> Result<Self> {
        check_probability_vector(&probs).map_err(Error::InvalidSignal)?;
        Ok(Signal { probs })
    }

    /// The point mass on state `i` of an `n`-state space.
    pub fn vertex(n: usize, i: usize) -> Self {
        assert!(i < n, "vertex {i} out of range for {n} states");
        let mut probs = vec![T::zero(); n];
        probs[i] = T::one();
        Signal { probs }
    }

    /// Assumes `probs` is already a probability vector.
    pub(crate) fn new_unchecked(probs: Vec<T>) -> Self {
        debug_assert!(check_probability_vector(&probs).is_ok());
        Signal { probs }
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    /// `gamma * self + (1 - gamma) * other`.
    pub fn mix(&self, gamma: &T, other: &Signal<T>) -> Result<Signal<T>> {
        if other.dim() != self.dim() {
            return Err(Error::dim("signal mixture", self.dim(), other.dim()));
        }
        if gamma.is_negative() || *gamma > T::one() {
            return Err(Error::Precondition(format!(
                "mixture weight {gamma} outside [0, 1]"
            )));
        }
        let rest = T::one() - gamma.clone();
        Ok(Signal::new_unchecked(
            self.probs
                .iter()
                .zip(&other.probs)
                .map(|(a, b)| gamma.clone() * a.clone() + rest.clone() * b.clone())
                .collect(),
        ))
    }
}

impl<T> AsRef<[T]> for Signal<T> {
    fn as_ref(&self) -> &[T] {
        &self.probs
    }
}

impl<T: fmt::Display> fmt::Display for Signal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vector(f, &self.probs)
    }
}

fn write_vector<T: fmt::Display>(f: &mut fmt::Formatter<'_>, v: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// A finite, nonempty list of pairwise distinct signals of equal dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalSet<T = Rational> {
    signals: Vec<Signal<T>>,
}

impl<T: Scalar> SignalSet<T> {
    /// Rejects duplicates instead of merging them, so indices stay
    /// meaningful to the caller.
    pub fn new(signals: Vec<Signal<T>>) -> Result<Self> {
        let first = signals.first().ok_or(Error::Empty("signal set"))?;
        let n = first.dim();
        for (j, s) in signals.iter().enumerate() {
            if s.dim() != n {
                return Err(Error::dim("signal set member", n, s.dim()));
            }
            if let Some(i) = signals[..j].iter().position(|t| t == s) {
                return Err(Error::DuplicateSignal {
                    first: i,
                    second: j,
                });
            }
        }
        Ok(SignalSet { signals })
    }

    pub fn from_vectors(vectors: Vec<Vec<T>>) -> Result<Self> {
        Self::new(
            vectors
                .into_iter()
                .map(Signal::new)
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn signals(&self) -> &[Signal<T>] {
        &self.signals
    }

    pub fn get(&self, i: usize) -> Result<&Signal<T>> {
        self.signals.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.signals.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.signals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signals.is_empty()
    }

    /// Number of states.
    pub fn dim(&self) -> usize {
        self.signals[0].dim()
    }

    pub fn subset(&self, indices: &[usize]) -> Result<SignalSet<T>> {
        let signals = indices
            .iter()
            .map(|&i| self.get(i).cloned())
            .collect::<Result<Vec<_>>>()?;
        SignalSet::new(signals)
    }

    pub(crate) fn check_signal(&self, s: &Signal<T>) -> Result<()> {
        if s.dim() != self.dim() {
            return Err(Error::dim("signal", self.dim(), s.dim()));
        }
        Ok(())
    }
}

/// A state-contingent payoff vector. Also used for linear functionals on the
/// simplex (fair valuations, separating normals, wage shifts).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Action<T = Rational> {
    payoffs: Vec<T>,
}

impl<T: Scalar> Action<T> {
    pub fn new(payoffs: Vec<T>) -> Self {
        Action { payoffs }
    }

    pub fn zeros(n: usize) -> Self {
        Action::new(vec![T::zero(); n])
    }

    /// The constant vector `c * 1`.
    pub fn constant(n: usize, c: T) -> Self {
        Action::new(vec![c; n])
    }

    pub fn payoffs(&self) -> &[T] {
        &self.payoffs
    }

    pub fn dim(&self) -> usize {
        self.payoffs.len()
    }

    /// Expected payoff `a . s`.
    pub fn eval(&self, s: &Signal<T>) -> Result<T> {
        if s.dim() != self.dim() {
            return Err(Error::dim("action payoff", self.dim(), s.dim()));
        }
        Ok(dot(&self.payoffs, s.probs()))
    }

    pub fn add(&self, other: &Action<T>) -> Result<Action<T>> {
        if other.dim() != self.dim() {
            return Err(Error::dim("action sum", self.dim(), other.dim()));
        }
        Ok(Action::new(
            self.payoffs
                .iter()
                .zip(&other.payoffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        ))
    }

    pub fn scale(&self, c: &T) -> Action<T> {
        Action::new(self.payoffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn neg(&self) -> Action<T> {
        Action::new(self.payoffs.iter().map(|a| -a.clone()).collect())
    }
}

impl<T> AsRef<[T]> for Action<T> {
    fn as_ref(&self) -> &[T] {
        &self.payoffs
    }
}

impl<T: fmt::Display> fmt::Display for Action<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vector(f, &self.payoffs)
    }
}

/// A finite nonempty set of actions of equal dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSet<T = Rational> {
    actions: Vec<Action<T>>,
}

/// `v_A(s)` together with the lowest-index maximizing action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation<T = Rational> {
    pub value: T,
    pub argmax: usize,
}

impl<T: Scalar> ActionSet<T> {
    pub fn new(actions: Vec<Action<T>>) -> Result<Self> {
        let first = actions.first().ok_or(Error::Empty("action set"))?;
        let n = first.dim();
        if let Some(a) = actions.iter().find(|a| a.dim() != n) {
            return Err(Error::dim("action set member", n, a.dim()));
        }
        Ok(ActionSet { actions })
    }

    pub fn from_vectors(vectors: Vec<Vec<T>>) -> Result<Self> {
        Self::new(vectors.into_iter().map(Action::new).collect())
    }

    pub fn actions(&self) -> &[Action<T>] {
        &self.actions
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.actions[0].dim()
    }

    /// At most two actions.
    pub fn is_binary(&self) -> bool {
        self.actions.len() <= 2
    }

    pub fn value(&self, s: &Signal<T>) -> Result<T> {
        value_function(self, s).map(|v| v.value)
    }
}

/// Mixing weights over the members of a [`SignalSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InfoStructure<T = Rational> {
    weights: Vec<T>,
}

impl<T: Scalar> InfoStructure<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        check_probability_vector(&weights).map_err(Error::InvalidInfoStructure)?;
        Ok(InfoStructure { weights })
    }

    pub fn point_mass(len: usize, i: usize) -> Self {
        assert!(i < len, "point mass {i} out of range for {len} signals");
        let mut weights = vec![T::zero(); len];
        weights[i] = T::one();
        InfoStructure { weights }
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Indices carrying positive weight.
    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| self.weights[i].is_positive())
            .collect()
    }

    /// `gamma * self + (1 - gamma) * other`.
    pub fn mix(&self, gamma: &T, other: &InfoStructure<T>) -> Result<InfoStructure<T>> {
        if other.len() != self.len() {
            return Err(Error::dim(
                "information structure mixture",
                self.len(),
                other.len(),
            ));
        }
        let rest = T::one() - gamma.clone();
        InfoStructure::new(
            self.weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| gamma.clone() * a.clone() + rest.clone() * b.clone())
                .collect(),
        )
    }

    fn check_against(&self, set: &SignalSet<T>) -> Result<()> {
        if self.len() != set.len() {
            return Err(Error::dim("information structure", set.len(), self.len()));
        }
        Ok(())
    }
}

/// `v_A(s) = max_a a . s`, ties resolved to the lowest action index.
pub fn value_function<T: Scalar>(actions: &ActionSet<T>, s: &Signal<T>) -> Result<Valuation<T>> {
    let mut best: Option<Valuation<T>> = None;
    for (i, a) in actions.actions().iter().enumerate() {
        let v = a.eval(s)?;
        if best.as_ref().is_none_or(|b| v > b.value) {
            best = Some(Valuation {
                value: v,
                argmax: i,
            });
        }
    }
    // ActionSet is nonempty by construction.
    Ok(best.expect("nonempty action set"))
}

/// `p_pi = sum_t pi(t) t`.
pub fn induced_skill<T: Scalar>(set: &SignalSet<T>, pi: &InfoStructure<T>) -> Result<Signal<T>> {
    pi.check_against(set)?;
    let mut p = vec![T::zero(); set.dim()];
    for (w, s) in pi.weights().iter().zip(set.signals()) {
        if w.is_zero() {
            continue;
        }
        for (acc, x) in p.iter_mut().zip(s.probs()) {
            *acc = acc.clone() + w.clone() * x.clone();
        }
    }
    Ok(Signal::new_unchecked(p))
}

/// `sum_t pi(t) v_A(t)`.
pub fn expected_payoff<T: Scalar>(
    set: &SignalSet<T>,
    actions: &ActionSet<T>,
    pi: &InfoStructure<T>,
) -> Result<T> {
    pi.check_against(set)?;
    let mut total = T::zero();
    for (w, s) in pi.weights().iter().zip(set.signals()) {
        let v = actions.value(s)?;
        if !w.is_zero() {
            total = total + w.clone() * v;
        }
    }
    Ok(total)
}

/// `A + k = {a + k : a in A}`.
pub fn shift_action_set<T: Scalar>(actions: &ActionSet<T>, k: &Action<T>) -> Result<ActionSet<T>> {
    ActionSet::new(
        actions
            .actions()
            .iter()
            .map(|a| a.add(k))
            .collect::<Result<Vec<_>>>()?,
    )
}
