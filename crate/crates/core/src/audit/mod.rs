//! Problem-instance parsing, full audits and report rendering for the
//! `sigaudit` binary.

pub mod instance;
pub mod report;

pub use instance::{parse_instance, parse_rational, InputError, ProblemInstance, DECIMAL_REJECTED};
pub use report::{envelope_csv, fmt_q, run_audit, AuditOptions, AuditReport};

use std::fmt::Write;

use indexmap::IndexMap;

use report::{AffinityReport, ComparisonReport, QueryReport, WitnessReport};

fn weights(map: &IndexMap<String, String>) -> String {
    let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn vector(xs: &[String]) -> String {
    format!("({})", xs.join(", "))
}

pub fn render_witness(out: &mut String, w: &WitnessReport) {
    let _ = writeln!(out, "  pi        {}", weights(&w.pi));
    let _ = writeln!(out, "  pi'       {}", weights(&w.pi_prime));
    let _ = writeln!(out, "  skill     {}", vector(&w.skill));
    let actions: Vec<String> = w.actions.iter().map(|a| vector(a)).collect();
    let _ = writeln!(out, "  actions   {}", actions.join(", "));
    let _ = writeln!(out, "  payoffs   {} vs {}", w.payoff, w.payoff_prime);
}

pub fn render_affinity(out: &mut String, a: &AffinityReport) {
    match (&a.alpha, &a.witness) {
        (Some(alpha), _) => {
            let _ = writeln!(out, "  {}: affine, alpha = {}", a.action_set, vector(alpha));
        }
        (None, Some(w)) => {
            let _ = writeln!(
                out,
                "  {}: not affine at {}; mixture {} earns {} < {}",
                a.action_set,
                vector(&w.point),
                weights(&w.mixture),
                w.mixture_value,
                w.envelope_value
            );
        }
        (None, None) => {}
    }
    for g in &a.envelope_gaps {
        let _ = writeln!(
            out,
            "    gap at {}: v = {}, W = {}",
            g.signal, g.value, g.envelope
        );
    }
}

pub fn render_query(out: &mut String, q: &QueryReport) {
    match (&q.value, &q.optimal_pi) {
        (Some(v), Some(pi)) => {
            let _ = writeln!(
                out,
                "    W{} = {} via {}; dominating LP {}",
                vector(&q.query),
                v,
                weights(pi),
                q.dominating_value.as_deref().unwrap_or("-")
            );
        }
        _ => {
            let _ = writeln!(out, "    {} is outside the hull", vector(&q.query));
        }
    }
}

pub fn render_comparison(out: &mut String, c: &ComparisonReport) {
    let _ = writeln!(
        out,
        "  {} vs {}: {}",
        c.pi,
        c.pi_prime,
        if c.same_skill {
            "same skill distribution"
        } else {
            "different skill distributions"
        }
    );
    if c.pi_more_informative {
        let _ = writeln!(out, "    {} is Blackwell more informative", c.pi);
    }
    if c.pi_prime_more_informative {
        let _ = writeln!(out, "    {} is Blackwell more informative", c.pi_prime);
    }
    for p in &c.payoffs {
        let _ = writeln!(
            out,
            "    {}: {} vs {}{}",
            p.action_set,
            p.payoff_pi,
            p.payoff_pi_prime,
            if p.discriminates {
                " (discriminates)"
            } else {
                ""
            }
        );
        if let Some(w) = &p.wage_shift {
            let _ = writeln!(
                out,
                "      wage shift k = {}: {} vs {}",
                vector(&w.k),
                w.shifted_payoff_pi,
                w.shifted_payoff_pi_prime
            );
        }
    }
}

/// Human-readable rendering of a full audit.
pub fn render_report(r: &AuditReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", r.states.join(", "));
    let _ = writeln!(out, "signals: {}", r.signals.join(", "));
    let _ = writeln!(out, "extreme points: {}", r.extreme_points.join(", "));
    let _ = writeln!(
        out,
        "identified: {}",
        if r.identified { "yes" } else { "no" }
    );
    if let Some(dep) = &r.affine_dependence {
        let _ = writeln!(out, "affine dependence: {}", weights(dep));
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "\ndiscrimination witness:");
        render_witness(&mut out, w);
    }
    let _ = writeln!(out, "\nfair valuations:");
    for f in &r.fair_valuations {
        match &f.alpha {
            Some(alpha) => {
                let _ = writeln!(out, "  {}: {}", f.action_set, vector(alpha));
            }
            None => {
                let _ = writeln!(out, "  {}: none", f.action_set);
            }
        }
    }
    let _ = writeln!(out, "\npersuasion value:");
    for a in &r.affinity {
        render_affinity(&mut out, a);
    }
    if let Some(p) = &r.persuasion {
        let _ = writeln!(out, "\nqueries:");
        for set in p {
            let _ = writeln!(out, "  {}:", set.action_set);
            for q in &set.queries {
                render_query(&mut out, q);
            }
        }
    }
    if !r.populations.is_empty() {
        let _ = writeln!(out, "\npopulations:");
        for p in &r.populations {
            let _ = writeln!(out, "  {}: skill {}", p.name, vector(&p.skill));
        }
    }
    if !r.comparisons.is_empty() {
        let _ = writeln!(out, "\ncomparisons:");
        for c in &r.comparisons {
            render_comparison(&mut out, c);
        }
    }
    let c = &r.corroboration;
    let _ = writeln!(
        out,
        "\nsampled menus (seed {}): {} binary, {} larger; {} with fair valuation, {} affine without gaps",
        c.seed, c.binary_menus, c.larger_menus, c.with_fair_valuation, c.affine_without_gaps
    );
    out
}
