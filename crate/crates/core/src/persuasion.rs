//! The persuasion value `W_A(s)`: the best expected `v_A` over information
//! structures on the signal set whose mean is `s`. It is the concave
//! envelope of `v_A` over the hull, and its value at each point is a pair of
//! dual LPs (the other side is [`dominating_lp`](crate::fair::dominating_lp)).

use crate::error::{Error, Result};
use crate::fair::{dominating_lp, DominatingOutcome};
use crate::geometry::extreme_points;
use crate::lp::{lp_solve, LinearProgram, LpOutcome};
use crate::model::{induced_skill, Action, ActionSet, InfoStructure, Signal, SignalSet};
use crate::scalar::{sum, Scalar};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersuasionSolution<T = Rational> {
    pub value: T,
    pub optimal_pi: InfoStructure<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Concavification<T = Rational> {
    Outside,
    Solved(PersuasionSolution<T>),
}

impl<T: Scalar> Concavification<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Concavification::Solved(sol) => Some(&sol.value),
            Concavification::Outside => None,
        }
    }
}

/// `W_A(s)`: maximize `sum_t pi(t) v_A(t)` subject to `p_pi = s`.
pub fn concavify<T: Scalar>(
    set: &SignalSet<T>,
    actions: &ActionSet<T>,
    s: &Signal<T>,
) -> Result<Concavification<T>> {
    set.check_signal(s)?;
    let values = set
        .signals()
        .iter()
        .map(|t| actions.value(t))
        .collect::<Result<Vec<_>>>()?;
    let mut lp = LinearProgram::maximize(values);
    for theta in 0..set.dim() {
        let row = set
            .signals()
            .iter()
            .map(|t| t.probs()[theta].clone())
            .collect();
        lp.add_eq(row, s.probs()[theta].clone());
    }
    lp.add_eq(vec![T::one(); set.len()], T::one());
    Ok(match lp_solve(&lp)? {
        LpOutcome::Optimal { value, point, .. } => Concavification::Solved(PersuasionSolution {
            value,
            optimal_pi: InfoStructure::new(point)?,
        }),
        LpOutcome::Infeasible { .. } => Concavification::Outside,
        LpOutcome::Unbounded => unreachable!("weights live in a simplex"),
    })
}

/// A point where `W_A` lies strictly above a mixture of its own values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcavityWitness<T = Rational> {
    pub point: Signal<T>,
    /// Weights over the signal set with mean `point`.
    pub mixture: InfoStructure<T>,
    /// `sum_t mixture(t) W_A(t)`.
    pub mixture_value: T,
    /// `W_A(point)`, strictly larger than `mixture_value`.
    pub envelope_value: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Affinity<T = Rational> {
    /// `W_A(s) = alpha . s` on the whole hull.
    Affine(Action<T>),
    NotAffine(ConcavityWitness<T>),
}

/// Decides whether `W_A` is affine on the hull of `set`.
///
/// `W_A` is affine iff some `alpha` dominates `v_A` on every signal and
/// matches it on the extreme points. When the feasibility LP fails, its
/// Farkas certificate is an affine dependence among the signals whose
/// positive side lives on extreme points and pays strictly less than the
/// negative side; that side is returned as the concavity witness.
pub fn is_affine_persuasion_value<T: Scalar>(
    set: &SignalSet<T>,
    actions: &ActionSet<T>,
) -> Result<Affinity<T>> {
    let n = set.dim();
    let extreme = extreme_points(set);
    let interior: Vec<usize> = (0..set.len()).filter(|i| !extreme.contains(i)).collect();
    let values = set
        .signals()
        .iter()
        .map(|t| actions.value(t))
        .collect::<Result<Vec<_>>>()?;

    let mut lp = LinearProgram::feasibility(n);
    for j in 0..n {
        lp.set_free(j);
    }
    for &e in &extreme {
        lp.add_eq(set.signals()[e].probs().to_vec(), values[e].clone());
    }
    for &i in &interior {
        lp.add_ge(set.signals()[i].probs().to_vec(), values[i].clone());
    }
    let farkas = match lp_solve(&lp)? {
        LpOutcome::Optimal { point, .. } => return Ok(Affinity::Affine(Action::new(point))),
        LpOutcome::Infeasible { farkas } => farkas,
        LpOutcome::Unbounded => unreachable!("feasibility LP has a zero objective"),
    };

    // Coefficients per signal: sum c_i t_i = 0 and sum c_i v(t_i) < 0.
    let mut c = vec![T::zero(); set.len()];
    for (k, &e) in extreme.iter().enumerate() {
        c[e] = farkas[k].clone();
    }
    for (k, &i) in interior.iter().enumerate() {
        // Rows for interior signals were stored negated.
        c[i] = -farkas[extreme.len() + k].clone();
    }
    let positive: Vec<T> = c.iter().map(|x| x.clone().max(T::zero())).collect();
    let mass = sum(&positive);
    if !mass.is_positive() {
        return Err(Error::Invariant("empty Farkas certificate".into()));
    }
    let mixture = InfoStructure::new(positive.into_iter().map(|x| x / mass.clone()).collect())?;
    let point = induced_skill(set, &mixture)?;
    let mut mixture_value = T::zero();
    for i in mixture.support() {
        let w = concavify(set, actions, &set.signals()[i])?
            .value()
            .cloned()
            .ok_or_else(|| Error::Invariant("member signal outside its own hull".into()))?;
        mixture_value = mixture_value + mixture.weights()[i].clone() * w;
    }
    let envelope_value = concavify(set, actions, &point)?
        .value()
        .cloned()
        .ok_or_else(|| Error::Invariant("mixture mean outside the hull".into()))?;
    if mixture_value >= envelope_value {
        return Err(Error::Invariant(format!(
            "concavity witness has no gap ({mixture_value} vs {envelope_value})"
        )));
    }
    Ok(Affinity::NotAffine(ConcavityWitness {
        point,
        mixture,
        mixture_value,
        envelope_value,
    }))
}

/// A signal where the persuasion value strictly exceeds `v_A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeGap<T = Rational> {
    pub index: usize,
    pub value: T,
    pub envelope: T,
}

/// Signals `t` with `W_A(t) > v_A(t)`. Only non-extreme signals can appear;
/// the list is empty for every menu exactly when all signals are extreme.
pub fn envelope_gaps<T: Scalar>(
    set: &SignalSet<T>,
    actions: &ActionSet<T>,
) -> Result<Vec<EnvelopeGap<T>>> {
    let mut gaps = Vec::new();
    for (index, t) in set.signals().iter().enumerate() {
        let value = actions.value(t)?;
        let envelope = concavify(set, actions, t)?
            .value()
            .cloned()
            .ok_or_else(|| Error::Invariant("member signal outside its own hull".into()))?;
        if envelope > value {
            gaps.push(EnvelopeGap {
                index,
                value,
                envelope,
            });
        }
    }
    Ok(gaps)
}

/// Whether the persuasion LP and the dominating-functional LP agree at `s`.
pub fn verify_concave_envelope_duality<T: Scalar>(
    set: &SignalSet<T>,
    actions: &ActionSet<T>,
    s: &Signal<T>,
) -> Result<bool> {
    let Concavification::Solved(primal) = concavify(set, actions, s)? else {
        return Err(Error::Precondition(format!(
            "query point {s} lies outside the hull of the signals"
        )));
    };
    Ok(match dominating_lp(set, actions, s)? {
        DominatingOutcome::Optimal { value, .. } => value == primal.value,
        DominatingOutcome::Unbounded => false,
    })
}

/// Whether `pi` is a mean-preserving spread of `pi'`: some stochastic
/// kernel `M` on the signal set has `pi = pi' M` and maps every signal in
/// the support of `pi'` to a distribution with that signal as mean.
pub fn blackwell_more_informative<T: Scalar>(
    set: &SignalSet<T>,
    pi: &InfoStructure<T>,
    pi_prime: &InfoStructure<T>,
) -> Result<bool> {
    for w in [pi, pi_prime] {
        if w.len() != set.len() {
            return Err(Error::dim("information structure", set.len(), w.len()));
        }
    }
    let m = set.len();
    let n = set.dim();
    let sources = pi_prime.support();
    let var = |a: usize, t: usize| a * m + t;
    let mut lp = LinearProgram::feasibility(sources.len() * m);
    let zero_row = || vec![T::zero(); sources.len() * m];
    for (a, &s) in sources.iter().enumerate() {
        let mut row = zero_row();
        for t in 0..m {
            row[var(a, t)] = T::one();
        }
        lp.add_eq(row, T::one());
        for theta in 0..n {
            let mut row = zero_row();
            for t in 0..m {
                row[var(a, t)] = set.signals()[t].probs()[theta].clone();
            }
            lp.add_eq(row, set.signals()[s].probs()[theta].clone());
        }
    }
    for t in 0..m {
        let mut row = zero_row();
        for (a, &s) in sources.iter().enumerate() {
            row[var(a, t)] = pi_prime.weights()[s].clone();
        }
        lp.add_eq(row, pi.weights()[t].clone());
    }
    Ok(matches!(lp_solve(&lp)?, LpOutcome::Optimal { .. }))
}
