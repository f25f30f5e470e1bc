//! Convex geometry on the probability simplex: membership in the hull of a
//! finite signal set, extreme points, and strict separation. Everything is
//! decided by exact LP feasibility.

use crate::error::{Error, Result};
use crate::lp::{lp_solve, LinearProgram, LpOutcome};
use crate::model::{Action, Signal, SignalSet};
use crate::scalar::{sum, Scalar};
use crate::Rational;

/// `target = sum weight * signal` over a support of positive weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexDecomposition<T = Rational> {
    pub target: Signal<T>,
    /// `(signal index, weight)`, indices ascending.
    pub support: Vec<(usize, T)>,
}

impl<T: Scalar> ConvexDecomposition<T> {
    /// Weights positive and summing to one, exact reconstruction, and the
    /// Caratheodory bound `|support| <= n + 1`.
    pub fn verify(&self, set: &SignalSet<T>) -> Result<()> {
        let n = set.dim();
        if self.support.len() > n + 1 {
            return Err(Error::Invariant(format!(
                "support of size {} exceeds {}",
                self.support.len(),
                n + 1
            )));
        }
        if self.support.iter().any(|(_, w)| !w.is_positive()) {
            return Err(Error::Invariant("non-positive decomposition weight".into()));
        }
        if !sum(self.support.iter().map(|(_, w)| w)).is_one() {
            return Err(Error::Invariant(
                "decomposition weights do not sum to 1".into(),
            ));
        }
        let mut acc = vec![T::zero(); n];
        for (i, w) in &self.support {
            for (a, x) in acc.iter_mut().zip(set.get(*i)?.probs()) {
                *a = a.clone() + w.clone() * x.clone();
            }
        }
        if acc != self.target.probs() {
            return Err(Error::Invariant(
                "decomposition does not reproduce its target".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership<T = Rational> {
    Outside,
    Inside(ConvexDecomposition<T>),
}

/// Weights `lambda >= 0`, `sum lambda = 1`, `sum lambda_i p_i = target`
/// from a basic feasible solution, or `None` when the target is outside the
/// hull (always for an empty point list).
pub(crate) fn hull_weights<T: Scalar>(points: &[&Signal<T>], target: &Signal<T>) -> Option<Vec<T>> {
    if points.is_empty() {
        return None;
    }
    let n = target.dim();
    let mut lp = LinearProgram::feasibility(points.len());
    for theta in 0..n {
        let row = points.iter().map(|p| p.probs()[theta].clone()).collect();
        lp.add_eq(row, target.probs()[theta].clone());
    }
    lp.add_eq(vec![T::one(); points.len()], T::one());
    match lp_solve(&lp).expect("well-formed hull LP") {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}

/// Decides whether `target` lies in the convex hull of `set`, returning an
/// exact decomposition with at most `n + 1` signals when it does.
pub fn convex_decomposition<T: Scalar>(
    set: &SignalSet<T>,
    target: &Signal<T>,
) -> Result<Membership<T>> {
    set.check_signal(target)?;
    let points: Vec<&Signal<T>> = set.signals().iter().collect();
    Ok(match hull_weights(&points, target) {
        None => Membership::Outside,
        Some(weights) => Membership::Inside(ConvexDecomposition {
            target: target.clone(),
            support: weights
                .into_iter()
                .enumerate()
                .filter(|(_, w)| w.is_positive())
                .collect(),
        }),
    })
}

/// Whether `points[i]` is a convex combination of the other points.
pub(crate) fn is_extreme_among<T: Scalar>(points: &[&Signal<T>], i: usize) -> bool {
    let others: Vec<&Signal<T>> = points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, p)| *p)
        .collect();
    hull_weights(&others, points[i]).is_none()
}

/// Indices of the signals that are not convex combinations of the others,
/// ascending.
pub fn extreme_points<T: Scalar>(set: &SignalSet<T>) -> Vec<usize> {
    let points: Vec<&Signal<T>> = set.signals().iter().collect();
    (0..points.len())
        .filter(|&i| is_extreme_among(&points, i))
        .collect()
}

/// Affine functional `s -> normal . s + offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingHyperplane<T = Rational> {
    pub normal: Action<T>,
    pub offset: T,
}

impl<T: Scalar> SeparatingHyperplane<T> {
    pub fn eval(&self, s: &Signal<T>) -> Result<T> {
        Ok(self.normal.eval(s)? + self.offset.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation<T = Rational> {
    NotSeparable,
    Separated(SeparatingHyperplane<T>),
}

/// Strictly separates signal `i` from the other signals indexed by
/// `group`, with margins normalized to `>= 1` at signal `i` and `<= -1` at
/// the rest.
pub fn strict_separation<T: Scalar>(
    set: &SignalSet<T>,
    i: usize,
    group: &[usize],
) -> Result<Separation<T>> {
    set.get(i)?;
    for &j in group {
        set.get(j)?;
    }
    if !group.contains(&i) {
        return Err(Error::Precondition(format!(
            "separated index {i} is not in the index set"
        )));
    }
    let n = set.dim();
    // Variables: normal (n, free) then offset (free).
    let mut lp = LinearProgram::feasibility(n + 1);
    for v in 0..=n {
        lp.set_free(v);
    }
    let row = |s: &Signal<T>| -> Vec<T> {
        s.probs()
            .iter()
            .cloned()
            .chain(std::iter::once(T::one()))
            .collect()
    };
    lp.add_ge(row(&set.signals()[i]), T::one());
    let mut seen = vec![false; set.len()];
    for &j in group {
        if j == i || seen[j] {
            continue;
        }
        seen[j] = true;
        lp.add_le(row(&set.signals()[j]), -T::one());
    }
    Ok(match lp_solve(&lp)? {
        LpOutcome::Optimal { mut point, .. } => {
            let offset = point.pop().expect("offset variable");
            Separation::Separated(SeparatingHyperplane {
                normal: Action::new(point),
                offset,
            })
        }
        _ => Separation::NotSeparable,
    })
}
