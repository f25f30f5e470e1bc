//! Random instance generators and independent brute-force oracles shared by
//! the integration suites. Nothing here calls the library's solvers.

#![allow(dead_code)]

pub mod lp_oracle;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sigaudit::{Action, ActionSet, InfoStructure, Rational, Signal, SignalSet};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn z(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Random point of the simplex with common denominator `d`.
pub fn random_simplex_point(rng: &mut ChaCha8Rng, n: usize, d: i64) -> Vec<Rational> {
    let mut counts = vec![0i64; n];
    for _ in 0..d {
        counts[rng.gen_range(0..n)] += 1;
    }
    counts.into_iter().map(|c| q(c, d)).collect()
}

/// A random signal set on `n` states with at most `max_signals` signals and
/// denominators at most 12. A quarter of the time one signal is the midpoint
/// of two others, so small dependent sets are well represented.
pub fn random_signal_set(rng: &mut ChaCha8Rng, n: usize, max_signals: usize) -> SignalSet {
    let size = rng.gen_range(1..=max_signals);
    let midpoint = size >= 3 && rng.gen_bool(0.25);
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    let base = if midpoint { size - 1 } else { size };
    while pts.len() < base {
        let d = if midpoint {
            rng.gen_range(1..=6)
        } else {
            rng.gen_range(1..=12)
        };
        let p = random_simplex_point(rng, n, d);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    if midpoint {
        // Denominators <= 6 keep the midpoint within 12.
        let mut tries = 0;
        loop {
            let i = rng.gen_range(0..pts.len());
            let j = rng.gen_range(0..pts.len());
            let m: Vec<Rational> = pts[i]
                .iter()
                .zip(&pts[j])
                .map(|(a, b)| (a + b) / z(2))
                .collect();
            if i != j && !pts.contains(&m) {
                let at = rng.gen_range(0..=pts.len());
                pts.insert(at, m);
                break;
            }
            tries += 1;
            if tries > 20 {
                // All pairs collapse; fall back to a fresh point.
                let p = random_simplex_point(rng, n, 12);
                if !pts.contains(&p) {
                    pts.push(p);
                    break;
                }
            }
        }
    }
    SignalSet::from_vectors(pts).expect("distinct simplex points")
}

pub fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    q(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn random_action(rng: &mut ChaCha8Rng, n: usize) -> Action {
    Action::new((0..n).map(|_| random_rational(rng, 6, 4)).collect())
}

pub fn random_action_set(rng: &mut ChaCha8Rng, n: usize, size: usize) -> ActionSet {
    ActionSet::new((0..size).map(|_| random_action(rng, n)).collect()).unwrap()
}

/// Random full-support-or-not information structure over `len` signals.
pub fn random_info(rng: &mut ChaCha8Rng, len: usize) -> InfoStructure {
    let d = rng.gen_range(1..=12);
    let mut counts = vec![0i64; len];
    for _ in 0..d {
        counts[rng.gen_range(0..len)] += 1;
    }
    InfoStructure::new(counts.into_iter().map(|c| q(c, d)).collect()).unwrap()
}

/// Random point of `conv(set)` together with the weights that produced it.
pub fn random_hull_point(rng: &mut ChaCha8Rng, set: &SignalSet) -> Signal {
    let pi = random_info(rng, set.len());
    mean(set, pi.weights())
}

pub fn mean(set: &SignalSet, w: &[Rational]) -> Signal {
    let n = set.dim();
    let mut out = vec![Rational::zero(); n];
    for (s, wi) in set.signals().iter().zip(w) {
        for (o, x) in out.iter_mut().zip(s.probs()) {
            *o += wi * x;
        }
    }
    Signal::new(out).unwrap()
}

/// `max_a a . s`, computed directly.
pub fn value_at(actions: &ActionSet, s: &[Rational]) -> Rational {
    actions
        .actions()
        .iter()
        .map(|a| dot(a.payoffs(), s))
        .max()
        .unwrap()
}

pub fn payoff(set: &SignalSet, actions: &ActionSet, w: &[Rational]) -> Rational {
    set.signals()
        .iter()
        .zip(w)
        .map(|(s, wi)| wi * value_at(actions, s.probs()))
        .sum()
}

/// Binary menus `{d - c 1, 0}` that switch on exactly the signals whose
/// `d`-score lies above `c`, for every gap between consecutive distinct
/// scores and for random integer directions `d`. If the set has an affine
/// dependence `c`, then for a direction with a unique top point on
/// `supp(c)` the threshold just below that point prices `v_A` nonlinearly,
/// so these menus expose every dependent set with high probability.
pub fn threshold_menus(rng: &mut ChaCha8Rng, set: &SignalSet, want: usize) -> Vec<ActionSet> {
    let n = set.dim();
    let mut menus = Vec::new();
    let mut directions = 0;
    while menus.len() < want && directions < 4 * want {
        directions += 1;
        let d: Vec<Rational> = (0..n).map(|_| z(rng.gen_range(-12..=12))).collect();
        let mut scores: Vec<Rational> = set.signals().iter().map(|s| dot(&d, s.probs())).collect();
        scores.sort();
        scores.dedup();
        for w in scores.windows(2) {
            let c = (&w[0] + &w[1]) / z(2);
            let a: Vec<Rational> = d.iter().map(|x| x - &c).collect();
            menus.push(ActionSet::from_vectors(vec![a, vec![Rational::zero(); n]]).unwrap());
        }
    }
    menus
}

/// Pads a menu with actions that are negative everywhere on the simplex.
/// This leaves `v_A` unchanged when the menu contains the zero action, as
/// the threshold menus do.
pub fn pad_with_dominated(rng: &mut ChaCha8Rng, menu: &ActionSet, extra: usize) -> ActionSet {
    let n = menu.dim();
    let mut actions = menu.actions().to_vec();
    for _ in 0..extra {
        let a = random_action(rng, n);
        let top = a.payoffs().iter().max().unwrap().clone();
        let shifted: Vec<Rational> = a.payoffs().iter().map(|x| x - &top - z(1)).collect();
        actions.push(Action::new(shifted));
    }
    actions.shuffle(rng);
    ActionSet::new(actions).unwrap()
}

// ---------------------------------------------------------------------------
// Exact Gaussian elimination used by the oracles.

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_of(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : rows . x = 0}`.
pub fn kernel(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// The unique solution of `rows . x = rhs`, if there is exactly one.
pub fn unique_solution(
    rows: &[Vec<Rational>],
    rhs: &[Rational],
    cols: usize,
) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&cols) || pivots.len() != cols {
        return None;
    }
    Some((0..cols).map(|i| m[i][cols].clone()).collect())
}

/// Affine independence by rank of the lifted points `(t, 1)`.
pub fn affinely_independent(set: &SignalSet) -> bool {
    // Rank of the lifted points, one per row.
    let rows: Vec<Vec<Rational>> = set
        .signals()
        .iter()
        .map(|s| {
            let mut r = s.probs().to_vec();
            r.push(Rational::one());
            r
        })
        .collect();
    rank_of(&rows) == set.len()
}

/// `sup` of `sum_i w_i v(t_i)` over convex decompositions of `target` using
/// at most `max_support` signals, by enumerating supports and solving for
/// the weights. `None` when no decomposition exists.
pub fn brute_force_envelope(
    set: &SignalSet,
    actions: &ActionSet,
    target: &[Rational],
    max_support: usize,
) -> Option<Rational> {
    let k = set.len();
    let mut best: Option<Rational> = None;
    for mask in 1u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        if idx.len() > max_support {
            continue;
        }
        // Unknowns: weights on idx. Equations: sum w t = target, sum w = 1.
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (j, x) in target.iter().enumerate() {
            rows.push(
                idx.iter()
                    .map(|&i| set.signals()[i].probs()[j].clone())
                    .collect(),
            );
            rhs.push(x.clone());
        }
        rows.push(vec![Rational::one(); idx.len()]);
        rhs.push(Rational::one());
        let Some(w) = unique_solution(&rows, &rhs, idx.len()) else {
            continue;
        };
        if w.iter().any(|x| x.is_negative()) {
            continue;
        }
        let val: Rational = idx
            .iter()
            .zip(&w)
            .map(|(&i, wi)| wi * value_at(actions, set.signals()[i].probs()))
            .sum();
        if best.as_ref().is_none_or(|b| &val > b) {
            best = Some(val);
        }
    }
    best
}

/// Subsets of `0..n` of size exactly `k`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
