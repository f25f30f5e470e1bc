//! Exhaustive LP oracle: enumerates basic feasible solutions and extreme
//! rays of the recession cone. Exponential, so only for tiny programs.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sigaudit::lp::{LinearProgram, Sense, VarDomain};
use sigaudit::Rational;

use super::{dot, kernel, q, rank_of, subsets, unique_solution, z};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

/// Improves the objective along `r`?
fn improving(sense: Sense, c: &[Rational], r: &[Rational]) -> bool {
    let slope = dot(c, r);
    match sense {
        Sense::Maximize => slope.is_positive(),
        Sense::Minimize => slope.is_negative(),
    }
}

fn better(sense: Sense, a: &Rational, b: &Rational) -> bool {
    match sense {
        Sense::Maximize => a > b,
        Sense::Minimize => a < b,
    }
}

pub fn brute_force(lp: &LinearProgram) -> OracleOutcome {
    let n = lp.var_domains.len();
    let c = &lp.objective;

    let mut eq_rows: Vec<Vec<Rational>> =
        lp.eq_constraints.iter().map(|r| r.coeffs.clone()).collect();
    let mut eq_rhs: Vec<Rational> = lp.eq_constraints.iter().map(|r| r.rhs.clone()).collect();
    // All inequalities as `row . x <= rhs`, sign bounds included.
    let mut le_rows: Vec<Vec<Rational>> = lp
        .ineq_constraints
        .iter()
        .map(|r| r.coeffs.clone())
        .collect();
    let mut le_rhs: Vec<Rational> = lp.ineq_constraints.iter().map(|r| r.rhs.clone()).collect();
    for (j, d) in lp.var_domains.iter().enumerate() {
        if *d == VarDomain::NonNegative {
            let mut row = vec![Rational::zero(); n];
            row[j] = z(-1);
            le_rows.push(row);
            le_rhs.push(Rational::zero());
        }
    }

    // Directions along which every constraint is constant. Restricting to
    // their orthogonal complement makes the polyhedron pointed.
    let all_rows: Vec<Vec<Rational>> = eq_rows.iter().chain(&le_rows).cloned().collect();
    let lineality = kernel(&all_rows, n);
    let unbounded_line = lineality.iter().any(|l| !dot(c, l).is_zero());
    for l in lineality {
        eq_rows.push(l);
        eq_rhs.push(Rational::zero());
    }

    let feasible = |x: &[Rational]| {
        eq_rows.iter().zip(&eq_rhs).all(|(r, b)| &dot(r, x) == b)
            && le_rows.iter().zip(&le_rhs).all(|(r, b)| &dot(r, x) <= b)
    };

    let eq_rank = rank_of(&eq_rows);
    let tight = n - eq_rank;
    let mut best: Option<Rational> = None;
    for s in subsets(le_rows.len(), tight) {
        let rows: Vec<Vec<Rational>> = eq_rows
            .iter()
            .cloned()
            .chain(s.iter().map(|&i| le_rows[i].clone()))
            .collect();
        let rhs: Vec<Rational> = eq_rhs
            .iter()
            .cloned()
            .chain(s.iter().map(|&i| le_rhs[i].clone()))
            .collect();
        let Some(x) = unique_solution(&rows, &rhs, n) else {
            continue;
        };
        if !feasible(&x) {
            continue;
        }
        let v = dot(c, &x);
        if best.as_ref().is_none_or(|b| better(lp.sense, &v, b)) {
            best = Some(v);
        }
    }
    let Some(best) = best else {
        return OracleOutcome::Infeasible;
    };
    if unbounded_line {
        return OracleOutcome::Unbounded;
    }

    // Extreme rays: one fewer tight inequality leaves a line through the
    // origin; keep the half that stays in the recession cone.
    if tight >= 1 {
        for s in subsets(le_rows.len(), tight - 1) {
            let rows: Vec<Vec<Rational>> = eq_rows
                .iter()
                .cloned()
                .chain(s.iter().map(|&i| le_rows[i].clone()))
                .collect();
            let k = kernel(&rows, n);
            if k.len() != 1 {
                continue;
            }
            for sign in [1, -1] {
                let r: Vec<Rational> = k[0].iter().map(|x| x * z(sign)).collect();
                let in_cone = le_rows.iter().all(|row| !dot(row, &r).is_positive());
                if in_cone && improving(lp.sense, c, &r) {
                    return OracleOutcome::Unbounded;
                }
            }
        }
    }
    OracleOutcome::Optimal(best)
}

/// A random LP with at most `max_vars` variables and `max_rows` rows, small
/// integer or half-integer data and a bias toward degenerate right-hand
/// sides.
pub fn random_lp(rng: &mut ChaCha8Rng, max_vars: usize, max_rows: usize) -> LinearProgram {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(1..=max_rows);
    let coeff = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.3) {
            Rational::zero()
        } else {
            q(rng.gen_range(-4..=4), rng.gen_range(1..=2))
        }
    };
    let objective = (0..n).map(|_| coeff(rng)).collect();
    let mut lp = if rng.gen_bool(0.5) {
        LinearProgram::maximize(objective)
    } else {
        LinearProgram::minimize(objective)
    };
    for j in 0..n {
        if rng.gen_bool(0.25) {
            lp.set_free(j);
        }
    }
    for _ in 0..m {
        let row: Vec<Rational> = (0..n).map(|_| coeff(rng)).collect();
        let rhs = if rng.gen_bool(0.3) {
            Rational::zero()
        } else {
            z(rng.gen_range(-3..=8))
        };
        match rng.gen_range(0..5) {
            0 => lp.add_eq(row, rhs),
            1 | 2 => lp.add_le(row, rhs),
            _ => lp.add_ge(row, rhs),
        };
    }
    lp
}
