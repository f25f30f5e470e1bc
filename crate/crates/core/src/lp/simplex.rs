//! Dense two-phase primal simplex with Bland's rule.
//!
//! Every program is brought into the standard form `min c'x, A'x = b',
//! x >= 0, b' >= 0`: free variables are split into a difference of two
//! nonnegative columns, `<=` rows get a slack column, and rows with a
//! negative right-hand side are negated. One artificial column per row gives
//! the phase-one basis. Artificial columns stay in the tableau for the whole
//! solve, which makes the current basis inverse (and hence the dual
//! multipliers) readable from their reduced costs.

use crate::error::{Error, Result};
use crate::scalar::{dot, Scalar};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarDomain {
    NonNegative,
    Free,
}

/// One row `coeffs . x (= or <=) rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub rhs: T,
}

/// A linear program over exact scalars.
///
/// Rows are kept in insertion order: first the equalities, then the `<=`
/// inequalities. Dual vectors in [`LpOutcome`] are indexed the same way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram<T = Rational> {
    pub sense: Sense,
    pub objective: Vec<T>,
    pub eq_constraints: Vec<Constraint<T>>,
    pub ineq_constraints: Vec<Constraint<T>>,
    pub var_domains: Vec<VarDomain>,
}

impl<T: Scalar> LinearProgram<T> {
    /// A program with all variables nonnegative and no constraints.
    pub fn new(sense: Sense, objective: Vec<T>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            eq_constraints: Vec::new(),
            ineq_constraints: Vec::new(),
            var_domains: vec![VarDomain::NonNegative; n],
        }
    }

    pub fn maximize(objective: Vec<T>) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn minimize(objective: Vec<T>) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    /// Pure feasibility problem over `n` variables (minimize 0).
    pub fn feasibility(n: usize) -> Self {
        Self::minimize(vec![T::zero(); n])
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.eq_constraints.len() + self.ineq_constraints.len()
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.var_domains[var] = VarDomain::Free;
        self
    }

    pub fn add_eq(&mut self, coeffs: Vec<T>, rhs: T) -> &mut Self {
        self.eq_constraints.push(Constraint { coeffs, rhs });
        self
    }

    pub fn add_le(&mut self, coeffs: Vec<T>, rhs: T) -> &mut Self {
        self.ineq_constraints.push(Constraint { coeffs, rhs });
        self
    }

    /// Stored as the negated `<=` row.
    pub fn add_ge(&mut self, coeffs: Vec<T>, rhs: T) -> &mut Self {
        let coeffs = coeffs.into_iter().map(|c| -c).collect();
        self.add_le(coeffs, -rhs)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 {
            return Err(Error::Empty("linear program variable list"));
        }
        if self.var_domains.len() != n {
            return Err(Error::dim("variable domains", n, self.var_domains.len()));
        }
        for row in self.rows() {
            if row.coeffs.len() != n {
                return Err(Error::dim("constraint row", n, row.coeffs.len()));
            }
        }
        Ok(())
    }

    fn rows(&self) -> impl Iterator<Item = &Constraint<T>> {
        self.eq_constraints.iter().chain(&self.ineq_constraints)
    }

    pub fn objective_at(&self, x: &[T]) -> T {
        dot(&self.objective, x)
    }

    pub fn is_feasible(&self, x: &[T]) -> bool {
        x.len() == self.num_vars()
            && x.iter()
                .zip(&self.var_domains)
                .all(|(v, d)| *d == VarDomain::Free || !v.is_negative())
            && self
                .eq_constraints
                .iter()
                .all(|r| dot(&r.coeffs, x) == r.rhs)
            && self
                .ineq_constraints
                .iter()
                .all(|r| dot(&r.coeffs, x) <= r.rhs)
    }

    /// `sum_i y_i a_ij` for every variable `j`.
    fn transpose_mul(&self, y: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.num_vars()];
        for (row, yi) in self.rows().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(&row.coeffs) {
                *o = o.clone() + yi.clone() * a.clone();
            }
        }
        out
    }

    fn dual_objective(&self, y: &[T]) -> T {
        self.rows().zip(y).fold(T::zero(), |acc, (row, yi)| {
            acc + row.rhs.clone() * yi.clone()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Exact result of [`lp_solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome<T = Rational> {
    /// `duals` has one entry per row (equalities first). Its dual objective
    /// `duals . rhs` equals `value`. For minimization the inequality
    /// multipliers are `<= 0` and the reduced costs `c - A^T y` are `>= 0` on
    /// nonnegative variables; for maximization both signs flip. Reduced costs
    /// of free variables are zero.
    Optimal {
        value: T,
        point: Vec<T>,
        duals: Vec<T>,
    },
    /// Farkas certificate `y`: inequality multipliers `>= 0`, `A^T y >= 0` on
    /// nonnegative variables, `= 0` on free ones, and `y . rhs < 0`.
    Infeasible {
        farkas: Vec<T>,
    },
    Unbounded,
}

impl<T: Scalar> LpOutcome<T> {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Infeasible { .. } => LpStatus::Infeasible,
            LpOutcome::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[T]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    /// Checks the outcome's certificate against `lp` exactly.
    pub fn verify(&self, lp: &LinearProgram<T>) -> std::result::Result<(), String> {
        let rows = lp.num_rows();
        let n_eq = lp.eq_constraints.len();
        match self {
            LpOutcome::Optimal {
                value,
                point,
                duals,
            } => {
                if !lp.is_feasible(point) {
                    return Err("optimal point violates a constraint".into());
                }
                if lp.objective_at(point) != *value {
                    return Err("objective at point differs from reported value".into());
                }
                if duals.len() != rows {
                    return Err(format!("expected {rows} duals, got {}", duals.len()));
                }
                let sign_ok = |v: &T| match lp.sense {
                    Sense::Minimize => !v.is_positive(),
                    Sense::Maximize => !v.is_negative(),
                };
                if !duals[n_eq..].iter().all(sign_ok) {
                    return Err("inequality multiplier has the wrong sign".into());
                }
                let aty = lp.transpose_mul(duals);
                for (j, (c, g)) in lp.objective.iter().zip(&aty).enumerate() {
                    let reduced = c.clone() - g.clone();
                    let ok = match (lp.var_domains[j], lp.sense) {
                        (VarDomain::Free, _) => reduced.is_zero(),
                        (VarDomain::NonNegative, Sense::Minimize) => !reduced.is_negative(),
                        (VarDomain::NonNegative, Sense::Maximize) => !reduced.is_positive(),
                    };
                    if !ok {
                        return Err(format!("reduced cost of variable {j} is not dual feasible"));
                    }
                    if !(reduced * point[j].clone()).is_zero() {
                        return Err(format!("complementary slackness fails at variable {j}"));
                    }
                }
                for (row, y) in lp.ineq_constraints.iter().zip(&duals[n_eq..]) {
                    let slack = row.rhs.clone() - dot(&row.coeffs, point);
                    if !(slack * y.clone()).is_zero() {
                        return Err("complementary slackness fails on an inequality".into());
                    }
                }
                if lp.dual_objective(duals) != *value {
                    return Err("dual objective differs from primal value".into());
                }
                Ok(())
            }
            LpOutcome::Infeasible { farkas } => {
                if farkas.len() != rows {
                    return Err(format!("expected {rows} multipliers, got {}", farkas.len()));
                }
                if farkas[n_eq..].iter().any(|y| y.is_negative()) {
                    return Err("negative multiplier on an inequality".into());
                }
                let aty = lp.transpose_mul(farkas);
                for (g, d) in aty.iter().zip(&lp.var_domains) {
                    let ok = match d {
                        VarDomain::Free => g.is_zero(),
                        VarDomain::NonNegative => !g.is_negative(),
                    };
                    if !ok {
                        return Err("Farkas combination has the wrong sign on a column".into());
                    }
                }
                if !lp.dual_objective(farkas).is_negative() {
                    return Err("Farkas combination of right-hand sides is not negative".into());
                }
                Ok(())
            }
            LpOutcome::Unbounded => Ok(()),
        }
    }
}

/// Where an original variable lives in the standard form.
struct ColumnMap {
    plus: usize,
    minus: Option<usize>,
}

struct Tableau<T> {
    /// `m` rows of width `ncols + 1`; the last entry is the right-hand side.
    rows: Vec<Vec<T>>,
    /// Reduced costs, with the negated objective value in the last slot.
    obj: Vec<T>,
    basis: Vec<usize>,
    n_struct: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self) -> usize {
        self.n_struct + self.rows.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = T::one() / self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<T>| {
            let factor = row[c].clone();
            if factor.is_zero() {
                return;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Bland's rule: lowest-index improving column, and among rows tied in
    /// the ratio test the one whose basic variable has the lowest index.
    /// Only structural columns may enter.
    fn optimize(&mut self) -> Phase {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..self.n_struct).find(|&j| self.obj[j].is_negative()) else {
                return Phase::Optimal;
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = row[rhs].clone() / row[c].clone();
                let better = match &best {
                    None => true,
                    Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Phase::Unbounded,
            }
        }
    }

    /// Installs `costs` (structural part; artificials cost zero) as the
    /// objective, priced out against the current basis.
    fn set_costs(&mut self, costs: &[T]) {
        let width = self.rhs() + 1;
        let mut obj = vec![T::zero(); width];
        obj[..self.n_struct].clone_from_slice(costs);
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b >= self.n_struct || costs[b].is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(row) {
                *o = o.clone() - costs[b].clone() * x.clone();
            }
        }
        self.obj = obj;
    }

    /// Simplex multipliers `c_B B^{-1}` for artificial costs `art_cost`.
    fn multipliers(&self, art_cost: &T) -> Vec<T> {
        (0..self.rows.len())
            .map(|i| art_cost.clone() - self.obj[self.n_struct + i].clone())
            .collect()
    }
}

/// Solves `lp` exactly.
pub fn lp_solve<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpOutcome<T>> {
    lp.validate()?;
    let outcome = solve_validated(lp);
    debug_assert!(
        outcome.verify(lp).is_ok(),
        "certificate check failed: {:?}",
        outcome.verify(lp)
    );
    Ok(outcome)
}

fn solve_validated<T: Scalar>(lp: &LinearProgram<T>) -> LpOutcome<T> {
    let n = lp.num_vars();
    let n_eq = lp.eq_constraints.len();
    let m = lp.num_rows();

    let mut map = Vec::with_capacity(n);
    let mut next = 0;
    for d in &lp.var_domains {
        let plus = next;
        next += 1;
        let minus = match d {
            VarDomain::Free => {
                next += 1;
                Some(next - 1)
            }
            VarDomain::NonNegative => None,
        };
        map.push(ColumnMap { plus, minus });
    }
    let first_slack = next;
    let n_struct = first_slack + lp.ineq_constraints.len();
    let width = n_struct + m + 1;

    // Row signs: -1 where the row was negated to make its rhs nonnegative.
    let mut signs = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    for (i, row) in lp
        .eq_constraints
        .iter()
        .chain(&lp.ineq_constraints)
        .enumerate()
    {
        let mut t = vec![T::zero(); width];
        for (j, a) in row.coeffs.iter().enumerate() {
            t[map[j].plus] = a.clone();
            if let Some(minus) = map[j].minus {
                t[minus] = -a.clone();
            }
        }
        if i >= n_eq {
            t[first_slack + i - n_eq] = T::one();
        }
        t[width - 1] = row.rhs.clone();
        let negate = row.rhs.is_negative();
        if negate {
            for x in t.iter_mut() {
                *x = -x.clone();
            }
        }
        t[n_struct + i] = T::one();
        signs.push(negate);
        rows.push(t);
    }

    let mut tab = Tableau {
        rows,
        obj: Vec::new(),
        basis: (n_struct..n_struct + m).collect(),
        n_struct,
    };

    // Phase one: minimize the sum of artificials.
    let mut obj = vec![T::zero(); width];
    for row in &tab.rows {
        for j in (0..n_struct).chain(std::iter::once(width - 1)) {
            obj[j] = obj[j].clone() - row[j].clone();
        }
    }
    tab.obj = obj;
    // Bounded below by zero, so phase one always ends optimal.
    let _ = tab.optimize();
    let infeasibility = -tab.obj[width - 1].clone();
    let to_original = |y: Vec<T>| -> Vec<T> {
        y.into_iter()
            .zip(&signs)
            .map(|(v, &neg)| if neg { -v } else { v })
            .collect()
    };
    if infeasibility.is_positive() {
        let z = tab.multipliers(&T::one()).into_iter().map(|v| -v).collect();
        return LpOutcome::Infeasible {
            farkas: to_original(z),
        };
    }

    // Drive zero-level artificials out of the basis where possible; the
    // ones that remain sit on redundant rows.
    for i in 0..m {
        if tab.basis[i] < n_struct {
            continue;
        }
        if let Some(j) = (0..n_struct).find(|&j| !tab.rows[i][j].is_zero()) {
            tab.pivot(i, j);
        }
    }

    // Phase two on min c'x.
    let mut costs = vec![T::zero(); n_struct];
    for (j, c) in lp.objective.iter().enumerate() {
        let c = match lp.sense {
            Sense::Minimize => c.clone(),
            Sense::Maximize => -c.clone(),
        };
        if let Some(minus) = map[j].minus {
            costs[minus] = -c.clone();
        }
        costs[map[j].plus] = c;
    }
    tab.set_costs(&costs);
    if let Phase::Unbounded = tab.optimize() {
        return LpOutcome::Unbounded;
    }

    let mut standard = vec![T::zero(); n_struct + m];
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        standard[b] = row[width - 1].clone();
    }
    let point: Vec<T> = map
        .iter()
        .map(|c| match c.minus {
            Some(minus) => standard[c.plus].clone() - standard[minus].clone(),
            None => standard[c.plus].clone(),
        })
        .collect();
    let mut duals = to_original(tab.multipliers(&T::zero()));
    if lp.sense == Sense::Maximize {
        duals = duals.into_iter().map(|v| -v).collect();
    }
    LpOutcome::Optimal {
        value: lp.objective_at(&point),
        point,
        duals,
    }
}
