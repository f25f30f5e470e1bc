//! Fair valuations: state-wise payoffs `alpha` whose expectation under every
//! signal equals `v_A`, and the dominating-functional LP whose value they
//! attain.

use crate::error::Result;
use crate::lp::{linear_solve, lp_solve, LinearProgram, LinearSolution, LpOutcome, Matrix};
use crate::model::{Action, ActionSet, Signal, SignalSet};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairValuation<T = Rational> {
    pub alpha: Action<T>,
    pub action_set: ActionSet<T>,
}

impl<T: Scalar> FairValuation<T> {
    /// Whether `alpha . t = v_A(t)` on every signal of `set`.
    pub fn holds_on(&self, set: &SignalSet<T>) -> Result<bool> {
        for s in set.signals() {
            if self.alpha.eval(s)? != self.action_set.value(s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Solves `alpha . t = v_A(t)` for all `t` in `set`.
///
/// When the system is underdetermined the components not pinned down by
/// the signals are set to zero.
pub fn fair_valuation<T: Scalar>(
    set: &SignalSet<T>,
    actions: &ActionSet<T>,
) -> Result<Option<FairValuation<T>>> {
    let n = set.dim();
    let rows = set.signals().iter().map(|s| s.probs().to_vec()).collect();
    let system = Matrix::from_rows(n, rows)?;
    let rhs = set
        .signals()
        .iter()
        .map(|s| actions.value(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(match linear_solve(&system, &rhs)? {
        LinearSolution::NoSolution => None,
        LinearSolution::Solution { point, .. } => Some(FairValuation {
            alpha: Action::new(point),
            action_set: actions.clone(),
        }),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DominatingOutcome<T = Rational> {
    Optimal {
        value: T,
        y: Action<T>,
    },
    /// Only possible when the query point is outside the hull.
    Unbounded,
}

impl<T: Scalar> DominatingOutcome<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            DominatingOutcome::Optimal { value, .. } => Some(value),
            DominatingOutcome::Unbounded => None,
        }
    }
}

/// `inf { y . s* : y . s >= v_A(s) for all s in set }`: the cheapest linear
/// payment scheme that weakly dominates `v_A` on every signal, evaluated
/// at `s*`.
pub fn dominating_lp<T: Scalar>(
    set: &SignalSet<T>,
    actions: &ActionSet<T>,
    s_star: &Signal<T>,
) -> Result<DominatingOutcome<T>> {
    set.check_signal(s_star)?;
    let n = set.dim();
    let mut lp = LinearProgram::minimize(s_star.probs().to_vec());
    for j in 0..n {
        lp.set_free(j);
    }
    for s in set.signals() {
        lp.add_ge(s.probs().to_vec(), actions.value(s)?);
    }
    Ok(match lp_solve(&lp)? {
        LpOutcome::Optimal { value, point, .. } => DominatingOutcome::Optimal {
            value,
            y: Action::new(point),
        },
        LpOutcome::Unbounded => DominatingOutcome::Unbounded,
        // y = max_s v_A(s) * 1 is always feasible.
        LpOutcome::Infeasible { .. } => unreachable!("dominating LP is always feasible"),
    })
}
