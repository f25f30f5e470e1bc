use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use sigaudit::audit::report::{FairValuationReport, QueryReport};
use sigaudit::audit::{
    envelope_csv, parse_instance, render_report, run_audit, AuditOptions, InputError,
    ProblemInstance,
};
use sigaudit::audit::{render_affinity, render_comparison, render_query, render_witness};
use sigaudit::find_discrimination_witness;

#[derive(Parser)]
#[command(
    name = "sigaudit",
    version,
    about = "Audit finite signal structures for statistical discrimination"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArg {
    /// Problem instance (JSON).
    instance: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: identification, witness, fair valuations, persuasion values.
    Audit {
        #[command(flatten)]
        input: InstanceArg,
        /// Seed for the sampled corroborating action sets.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled binary action sets.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Constructs a discrimination witness if the signals are not identified.
    Witness {
        #[command(flatten)]
        input: InstanceArg,
    },
    /// Solves for fair valuations.
    Fairval {
        #[command(flatten)]
        input: InstanceArg,
        /// Only this action set (default: all).
        #[arg(long)]
        actions: Option<String>,
    },
    /// Evaluates the persuasion value W_A.
    Concavify {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        actions: Option<String>,
        /// Query point `p/q,p/q,...`; defaults to the instance's queries.
        #[arg(long = "query")]
        queries: Vec<String>,
        /// Write W_A sampled along the segment from --from to --to as CSV.
        #[arg(long, requires_all = ["from", "to"])]
        envelope_csv: Option<PathBuf>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Finds a payoff shift k that separates two populations.
    WageShift {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        actions: Option<String>,
        #[arg(long)]
        pi: String,
        #[arg(long)]
        pi_prime: String,
    },
    /// Compares two information structures.
    CompareInfo {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        pi: String,
        #[arg(long)]
        pi_prime: String,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<sigaudit::Error> for Failure {
    fn from(e: sigaudit::Error) -> Self {
        match e {
            sigaudit::Error::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn load(input: &InstanceArg) -> Result<ProblemInstance, Failure> {
    let bytes = std::fs::read(&input.instance)
        .map_err(|e| Failure::Input(format!("{}: {e}", input.instance.display())))?;
    parse_instance(&bytes).map_err(|e| Failure::Input(format!("{}: {e}", input.instance.display())))
}

fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<String, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Audit {
            input,
            seed,
            samples,
        } => {
            let inst = load(&input)?;
            let report = run_audit(&inst, AuditOptions { seed, samples })?;
            Ok(if json {
                to_json(&report)
            } else {
                render_report(&report)
            })
        }
        Command::Witness { input } => {
            let inst = load(&input)?;
            let witness = find_discrimination_witness(&inst.signals)?;
            if let Some(w) = &witness {
                w.verify(&inst.signals)?;
            }
            let report = witness.map(|w| inst.witness_report(&w)).transpose()?;
            if json {
                return Ok(to_json(&json!({
                    "identified": report.is_none(),
                    "witness": report,
                })));
            }
            let mut out = String::new();
            match &report {
                None => out.push_str("identified: no discrimination witness exists\n"),
                Some(w) => {
                    out.push_str("not identified; witness:\n");
                    render_witness(&mut out, w);
                }
            }
            Ok(out)
        }
        Command::Fairval { input, actions } => {
            let inst = load(&input)?;
            let names: Vec<String> = match actions {
                Some(name) => vec![inst.pick_action_set(Some(&name))?.0.to_string()],
                None => inst.action_sets.keys().cloned().collect(),
            };
            let reports = names
                .iter()
                .map(|n| inst.fair_valuation_report(n, &inst.action_sets[n]))
                .collect::<Result<Vec<FairValuationReport>, _>>()?;
            if json {
                return Ok(to_json(&reports));
            }
            let mut out = String::new();
            for r in &reports {
                match &r.alpha {
                    Some(a) => out.push_str(&format!("{}: ({})\n", r.action_set, a.join(", "))),
                    None => out.push_str(&format!("{}: none\n", r.action_set)),
                }
            }
            Ok(out)
        }
        Command::Concavify {
            input,
            actions,
            queries,
            envelope_csv: csv_path,
            from,
            to,
            steps,
        } => {
            let inst = load(&input)?;
            let (name, set) = inst.pick_action_set(actions.as_deref())?;
            let points = if queries.is_empty() {
                inst.queries.clone()
            } else {
                queries
                    .iter()
                    .enumerate()
                    .map(|(i, q)| inst.parse_point(&format!("--query[{i}]"), q))
                    .collect::<Result<Vec<_>, _>>()?
            };
            if let Some(path) = csv_path {
                let from = inst.parse_point("--from", from.as_deref().unwrap_or_default())?;
                let to = inst.parse_point("--to", to.as_deref().unwrap_or_default())?;
                let csv = envelope_csv(&inst, set, &from, &to, steps)?;
                std::fs::write(&path, csv)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            let affinity = inst.affinity_report(name, set)?;
            let results = points
                .iter()
                .map(|p| inst.query_report(set, p))
                .collect::<Result<Vec<QueryReport>, _>>()?;
            if json {
                return Ok(to_json(&json!({
                    "action_set": name,
                    "affinity": affinity,
                    "queries": results,
                })));
            }
            let mut out = String::new();
            render_affinity(&mut out, &affinity);
            for r in &results {
                render_query(&mut out, r);
            }
            Ok(out)
        }
        Command::WageShift {
            input,
            actions,
            pi,
            pi_prime,
        } => {
            let inst = load(&input)?;
            let (name, set) = inst.pick_action_set(actions.as_deref())?;
            let (p, pp) = (inst.info_structure(&pi)?, inst.info_structure(&pi_prime)?);
            let skill = sigaudit::induced_skill(&inst.signals, p)?;
            let same = skill == sigaudit::induced_skill(&inst.signals, pp)?;
            if same {
                return Err(Failure::Input(format!(
                    "`{pi}` and `{pi_prime}` induce the same skill distribution; no wage shift separates them"
                )));
            }
            let report = inst.pair_payoff_report(name, set, p, pp, same)?;
            if json {
                return Ok(to_json(&report));
            }
            let w = report.wage_shift.as_ref().expect("skills differ");
            Ok(format!(
                "{name}: {} vs {}\nk = ({})\nshifted: {} vs {}\n",
                report.payoff_pi,
                report.payoff_pi_prime,
                w.k.join(", "),
                w.shifted_payoff_pi,
                w.shifted_payoff_pi_prime
            ))
        }
        Command::CompareInfo {
            input,
            pi,
            pi_prime,
        } => {
            let inst = load(&input)?;
            inst.info_structure(&pi)?;
            inst.info_structure(&pi_prime)?;
            let report = inst.comparison_report(&pi, &pi_prime)?;
            if json {
                return Ok(to_json(&report));
            }
            let mut out = String::new();
            render_comparison(&mut out, &report);
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
