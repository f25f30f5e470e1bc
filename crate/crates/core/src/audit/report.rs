//! Audit reports.
//!
//! Every report is assembled from independent computations (rank, witness
//! construction, linear solves, persuasion LPs) and then cross-checked: any
//! disagreement aborts with [`Error::Invariant`].

use indexmap::IndexMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::instance::ProblemInstance;
use crate::discrimination::{find_discrimination_witness, wage_shift, DiscriminationWitness};
use crate::error::{Error, Result};
use crate::fair::{dominating_lp, fair_valuation, DominatingOutcome};
use crate::geometry::extreme_points;
use crate::lp::{affine_dependence, AffineDependence};
use crate::model::{
    expected_payoff, induced_skill, shift_action_set, Action, ActionSet, InfoStructure, Signal,
};
use crate::persuasion::{
    blackwell_more_informative, concavify, envelope_gaps, is_affine_persuasion_value, Affinity,
    Concavification,
};
use crate::Rational;

/// Canonical text for a rational: `p/q` in lowest terms, or `n`.
pub fn fmt_q(x: &Rational) -> String {
    x.to_string()
}

pub fn fmt_vec<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Vec<String> {
    xs.into_iter().map(fmt_q).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditOptions {
    pub seed: u64,
    /// Number of sampled binary menus; half as many larger menus are drawn.
    pub samples: usize,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            seed: 0,
            samples: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub pi: IndexMap<String, String>,
    pub pi_prime: IndexMap<String, String>,
    pub skill: Vec<String>,
    pub actions: Vec<Vec<String>>,
    pub payoff: String,
    pub payoff_prime: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FairValuationReport {
    pub action_set: String,
    pub alpha: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcavityReport {
    pub point: Vec<String>,
    pub mixture: IndexMap<String, String>,
    pub mixture_value: String,
    pub envelope_value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub signal: String,
    pub value: String,
    pub envelope: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffinityReport {
    pub action_set: String,
    pub affine: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ConcavityReport>,
    /// Signals where the persuasion value exceeds `v_A`.
    pub envelope_gaps: Vec<GapReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryReport {
    pub query: Vec<String>,
    pub inside_hull: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal_pi: Option<IndexMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominating_value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality_holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PersuasionReport {
    pub action_set: String,
    pub queries: Vec<QueryReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PopulationReport {
    pub name: String,
    pub skill: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WageShiftReport {
    pub k: Vec<String>,
    pub shifted_payoff_pi: String,
    pub shifted_payoff_pi_prime: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairPayoffReport {
    pub action_set: String,
    pub payoff_pi: String,
    pub payoff_pi_prime: String,
    pub discriminates: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wage_shift: Option<WageShiftReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub pi: String,
    pub pi_prime: String,
    pub same_skill: bool,
    pub pi_more_informative: bool,
    pub pi_prime_more_informative: bool,
    pub payoffs: Vec<PairPayoffReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorroborationReport {
    pub seed: u64,
    pub binary_menus: usize,
    pub larger_menus: usize,
    pub with_fair_valuation: usize,
    pub affine_without_gaps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub states: Vec<String>,
    pub signals: Vec<String>,
    pub identified: bool,
    pub extreme_points: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine_dependence: Option<IndexMap<String, String>>,
    pub witness: Option<WitnessReport>,
    pub fair_valuations: Vec<FairValuationReport>,
    pub affinity: Vec<AffinityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub persuasion: Option<Vec<PersuasionReport>>,
    pub populations: Vec<PopulationReport>,
    pub comparisons: Vec<ComparisonReport>,
    pub corroboration: CorroborationReport,
}

fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}

impl ProblemInstance {
    /// Nonzero weights keyed by signal name.
    pub fn named_weights(&self, pi: &InfoStructure) -> IndexMap<String, String> {
        self.signal_names
            .iter()
            .zip(pi.weights())
            .filter(|(_, w)| !num_traits::Zero::is_zero(*w))
            .map(|(n, w)| (n.clone(), fmt_q(w)))
            .collect()
    }

    pub fn witness_report(&self, w: &DiscriminationWitness) -> Result<WitnessReport> {
        Ok(WitnessReport {
            pi: self.named_weights(&w.pi),
            pi_prime: self.named_weights(&w.pi_prime),
            skill: fmt_vec(induced_skill(&self.signals, &w.pi)?.probs()),
            actions: w
                .action_set
                .actions()
                .iter()
                .map(|a| fmt_vec(a.payoffs()))
                .collect(),
            payoff: fmt_q(&w.payoff),
            payoff_prime: fmt_q(&w.payoff_prime),
        })
    }

    pub fn fair_valuation_report(
        &self,
        name: &str,
        actions: &ActionSet,
    ) -> Result<FairValuationReport> {
        let fv = fair_valuation(&self.signals, actions)?;
        if let Some(fv) = &fv {
            if !fv.holds_on(&self.signals)? {
                return Err(invariant(format!(
                    "fair valuation for `{name}` does not reproduce v_A"
                )));
            }
        }
        Ok(FairValuationReport {
            action_set: name.to_string(),
            alpha: fv.map(|fv| fmt_vec(fv.alpha.payoffs())),
        })
    }

    pub fn affinity_report(&self, name: &str, actions: &ActionSet) -> Result<AffinityReport> {
        let affinity = is_affine_persuasion_value(&self.signals, actions)?;
        let gaps = envelope_gaps(&self.signals, actions)?
            .into_iter()
            .map(|g| GapReport {
                signal: self.signal_names[g.index].clone(),
                value: fmt_q(&g.value),
                envelope: fmt_q(&g.envelope),
            })
            .collect();
        Ok(match affinity {
            Affinity::Affine(alpha) => AffinityReport {
                action_set: name.to_string(),
                affine: true,
                alpha: Some(fmt_vec(alpha.payoffs())),
                witness: None,
                envelope_gaps: gaps,
            },
            Affinity::NotAffine(w) => AffinityReport {
                action_set: name.to_string(),
                affine: false,
                alpha: None,
                witness: Some(ConcavityReport {
                    point: fmt_vec(w.point.probs()),
                    mixture: self.named_weights(&w.mixture),
                    mixture_value: fmt_q(&w.mixture_value),
                    envelope_value: fmt_q(&w.envelope_value),
                }),
                envelope_gaps: gaps,
            },
        })
    }

    pub fn query_report(&self, actions: &ActionSet, query: &Signal) -> Result<QueryReport> {
        let mut report = QueryReport {
            query: fmt_vec(query.probs()),
            inside_hull: false,
            value: None,
            optimal_pi: None,
            dominating_value: None,
            duality_holds: None,
        };
        let dual = dominating_lp(&self.signals, actions, query)?;
        if let DominatingOutcome::Optimal { value, .. } = &dual {
            report.dominating_value = Some(fmt_q(value));
        }
        if let Concavification::Solved(sol) = concavify(&self.signals, actions, query)? {
            let holds = dual.value() == Some(&sol.value);
            if !holds {
                return Err(invariant(format!(
                    "persuasion value {} and dominating LP value differ at {query}",
                    sol.value
                )));
            }
            report.inside_hull = true;
            report.value = Some(fmt_q(&sol.value));
            report.optimal_pi = Some(self.named_weights(&sol.optimal_pi));
            report.duality_holds = Some(holds);
        }
        Ok(report)
    }

    pub fn comparison_report(&self, pi_name: &str, prime_name: &str) -> Result<ComparisonReport> {
        let set = &self.signals;
        let pi = &self.info_structures[pi_name];
        let pi_prime = &self.info_structures[prime_name];
        let same_skill = induced_skill(set, pi)? == induced_skill(set, pi_prime)?;
        let forward = blackwell_more_informative(set, pi, pi_prime)?;
        let backward = blackwell_more_informative(set, pi_prime, pi)?;
        if (forward || backward) && !same_skill {
            return Err(invariant("mean-preserving spread changed the mean"));
        }
        let mut payoffs = Vec::new();
        for (name, actions) in &self.action_sets {
            payoffs.push(self.pair_payoff_report(name, actions, pi, pi_prime, same_skill)?);
            let (p, pp) = (
                expected_payoff(set, actions, pi)?,
                expected_payoff(set, actions, pi_prime)?,
            );
            if (forward && p < pp) || (backward && pp < p) {
                return Err(invariant(format!(
                    "more informative structure earns less under `{name}`"
                )));
            }
        }
        Ok(ComparisonReport {
            pi: pi_name.to_string(),
            pi_prime: prime_name.to_string(),
            same_skill,
            pi_more_informative: forward,
            pi_prime_more_informative: backward,
            payoffs,
        })
    }

    pub fn pair_payoff_report(
        &self,
        name: &str,
        actions: &ActionSet,
        pi: &InfoStructure,
        pi_prime: &InfoStructure,
        same_skill: bool,
    ) -> Result<PairPayoffReport> {
        let set = &self.signals;
        let payoff = expected_payoff(set, actions, pi)?;
        let payoff_prime = expected_payoff(set, actions, pi_prime)?;
        let discriminates = same_skill && payoff != payoff_prime;
        if discriminates && fair_valuation(set, actions)?.is_some() {
            return Err(invariant(format!(
                "`{name}` discriminates although it admits a fair valuation"
            )));
        }
        let wage_shift = if same_skill {
            None
        } else {
            let k = wage_shift(set, actions, pi, pi_prime)?;
            let shifted = shift_action_set(actions, &k)?;
            let sp = expected_payoff(set, &shifted, pi)?;
            let spp = expected_payoff(set, &shifted, pi_prime)?;
            if sp == spp {
                return Err(invariant("wage shift left payoffs equal"));
            }
            Some(WageShiftReport {
                k: fmt_vec(k.payoffs()),
                shifted_payoff_pi: fmt_q(&sp),
                shifted_payoff_pi_prime: fmt_q(&spp),
            })
        };
        Ok(PairPayoffReport {
            action_set: name.to_string(),
            payoff_pi: fmt_q(&payoff),
            payoff_pi_prime: fmt_q(&payoff_prime),
            discriminates,
            wage_shift,
        })
    }
}

/// A random payoff vector with entries `p/q`, `|p| <= 6`, `1 <= q <= 4`.
fn random_action(rng: &mut ChaCha8Rng, n: usize) -> Action {
    Action::new(
        (0..n)
            .map(|_| {
                Rational::new(
                    rng.gen_range(-6i64..=6).into(),
                    rng.gen_range(1i64..=4).into(),
                )
            })
            .collect(),
    )
}

/// Sampled menus used to corroborate the identification verdict. When a
/// witness exists its menu leads the binary list, and a copy padded with a
/// never-chosen action leads the larger list.
fn sample_menus(
    n: usize,
    witness: Option<&DiscriminationWitness>,
    options: AuditOptions,
) -> Result<(Vec<ActionSet>, Vec<ActionSet>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut binary = Vec::new();
    let mut larger = Vec::new();
    if let Some(w) = witness {
        binary.push(w.action_set.clone());
        // Strictly below the zero action, hence below v_A, on the simplex.
        let low = random_action(&mut rng, n);
        let top = low.payoffs().iter().max().cloned().expect("n >= 1");
        let dominated = low.add(&Action::constant(
            n,
            -top - Rational::from_integer(1.into()),
        ))?;
        let mut padded = w.action_set.actions().to_vec();
        padded.push(dominated);
        larger.push(ActionSet::new(padded)?);
    }
    while binary.len() < options.samples {
        binary.push(ActionSet::new(vec![
            random_action(&mut rng, n),
            random_action(&mut rng, n),
        ])?);
    }
    let larger_count = options.samples.div_ceil(2);
    while larger.len() < larger_count {
        let size = rng.gen_range(3..=4);
        larger.push(ActionSet::new(
            (0..size).map(|_| random_action(&mut rng, n)).collect(),
        )?);
    }
    Ok((binary, larger))
}

/// Runs every check on `instance` and cross-validates the results.
pub fn run_audit(instance: &ProblemInstance, options: AuditOptions) -> Result<AuditReport> {
    let set = &instance.signals;
    let names = &instance.signal_names;
    let n = set.dim();

    let dependence = affine_dependence(set.signals())?;
    let identified = matches!(dependence, AffineDependence::Independent);
    let witness = find_discrimination_witness(set)?;
    if identified != witness.is_none() {
        return Err(invariant(
            "identification verdict and witness search disagree",
        ));
    }
    if let Some(w) = &witness {
        w.verify(set)?;
    }

    let mut fair_valuations = Vec::new();
    let mut affinity = Vec::new();
    for (name, actions) in &instance.action_sets {
        let fv = instance.fair_valuation_report(name, actions)?;
        let aff = instance.affinity_report(name, actions)?;
        if identified && fv.alpha.is_none() {
            return Err(invariant(format!(
                "identified signal set has no fair valuation for `{name}`"
            )));
        }
        if fv.alpha.is_some() != (aff.affine && aff.envelope_gaps.is_empty()) {
            return Err(invariant(format!(
                "fair valuation and persuasion affinity disagree for `{name}`"
            )));
        }
        fair_valuations.push(fv);
        affinity.push(aff);
    }

    let persuasion = if instance.queries.is_empty() {
        None
    } else {
        let mut out = Vec::new();
        for (name, actions) in &instance.action_sets {
            let queries = instance
                .queries
                .iter()
                .map(|q| instance.query_report(actions, q))
                .collect::<Result<Vec<_>>>()?;
            out.push(PersuasionReport {
                action_set: name.clone(),
                queries,
            });
        }
        Some(out)
    };

    let mut populations = Vec::new();
    for (name, pi) in &instance.info_structures {
        populations.push(PopulationReport {
            name: name.clone(),
            skill: fmt_vec(induced_skill(set, pi)?.probs()),
        });
    }
    let mut comparisons = Vec::new();
    let pop_names: Vec<&String> = instance.info_structures.keys().collect();
    for (i, a) in pop_names.iter().enumerate() {
        for b in &pop_names[i + 1..] {
            comparisons.push(instance.comparison_report(a, b)?);
        }
    }

    let (binary, larger) = sample_menus(n, witness.as_ref(), options)?;
    let mut with_fair_valuation = 0;
    let mut affine_without_gaps = 0;
    for menu in binary.iter().chain(&larger) {
        let fair = fair_valuation(set, menu)?.is_some();
        let tight = matches!(is_affine_persuasion_value(set, menu)?, Affinity::Affine(_))
            && envelope_gaps(set, menu)?.is_empty();
        if fair != tight {
            return Err(invariant(
                "sampled menu: fair valuation and affinity disagree",
            ));
        }
        with_fair_valuation += usize::from(fair);
        affine_without_gaps += usize::from(tight);
    }
    let total = binary.len() + larger.len();
    if identified != (with_fair_valuation == total) {
        return Err(invariant(
            "sampled fair valuations disagree with the identification verdict",
        ));
    }

    Ok(AuditReport {
        states: instance.states.labels().to_vec(),
        signals: names.clone(),
        identified,
        extreme_points: extreme_points(set)
            .into_iter()
            .map(|i| names[i].clone())
            .collect(),
        affine_dependence: match dependence {
            AffineDependence::Independent => None,
            AffineDependence::Dependence(c) => Some(
                names
                    .iter()
                    .zip(&c)
                    .map(|(n, x)| (n.clone(), fmt_q(x)))
                    .collect(),
            ),
        },
        witness: witness
            .as_ref()
            .map(|w| instance.witness_report(w))
            .transpose()?,
        fair_valuations,
        affinity,
        persuasion,
        populations,
        comparisons,
        corroboration: CorroborationReport {
            seed: options.seed,
            binary_menus: binary.len(),
            larger_menus: larger.len(),
            with_fair_valuation,
            affine_without_gaps,
        },
    })
}

/// `W_A` along the segment from `from` (t = 0) to `to` (t = 1), sampled at
/// `steps + 1` evenly spaced points, as CSV with header `t,W`. Points
/// outside the hull get an empty `W`.
pub fn envelope_csv(
    instance: &ProblemInstance,
    actions: &ActionSet,
    from: &Signal,
    to: &Signal,
    steps: usize,
) -> Result<String> {
    if steps == 0 {
        return Err(Error::Precondition(
            "envelope needs at least one step".into(),
        ));
    }
    let mut out = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| invariant(format!("CSV output failed: {e}"));
    out.write_record(["t", "W"]).map_err(csv_err)?;
    for i in 0..=steps {
        let t = Rational::new((i as i64).into(), (steps as i64).into());
        let point = to.mix(&t, from)?;
        let w = match concavify(&instance.signals, actions, &point)? {
            Concavification::Solved(sol) => fmt_q(&sol.value),
            Concavification::Outside => String::new(),
        };
        out.write_record([fmt_q(&t), w]).map_err(csv_err)?;
    }
    let bytes = out
        .into_inner()
        .map_err(|e| invariant(format!("CSV output failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| invariant(e.to_string()))
}
