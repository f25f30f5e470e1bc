//! JSON problem instances.
//!
//! ```json
//! {
//!   "states": ["theta1", "theta2"],
//!   "signals": { "t1": ["1", "0"], "t2": ["1/2", "1/2"] },
//!   "actions": { "A": [["1", "0"], ["0", "2"]] },
//!   "info_structures": { "pi": { "t1": "1/3", "t2": "2/3" } },
//!   "queries": [["2/3", "1/3"]]
//! }
//! ```
//!
//! Numbers are exact: either JSON integers or strings `"p/q"` / `"n"`.
//! Decimal literals are rejected outright. Signal weights missing from an
//! information structure are zero.

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserialize, Deserializer, MapAccess, Visitor};
use thiserror::Error;

use crate::model::{ActionSet, InfoStructure, Signal, SignalSet, StateSpace};
use crate::Rational;

pub const DECIMAL_REJECTED: &str = "decimal literals not accepted; use p/q";

/// Input problems, each pointing at the offending location.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

impl InputError {
    pub fn field(field: impl Into<String>, message: impl fmt::Display) -> Self {
        InputError::Field {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line X column Y"; keep only the message.
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        InputError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

/// Parses `"p/q"`, `"n"`, or `"-p/q"` into a canonical rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    if text.contains(['.', 'e', 'E']) {
        return Err(DECIMAL_REJECTED.to_string());
    }
    let bad = || format!("`{text}` is not a rational; expected p/q or an integer");
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(format!("`{text}` has a zero denominator"));
    }
    if den.is_negative() {
        return Err(format!("`{text}` has a negative denominator"));
    }
    Ok(Rational::new(num, den))
}

/// A rational read from either a JSON integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RawRational(Rational);

impl<'de> Deserialize<'de> for RawRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = RawRational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RawRational, E> {
                Ok(RawRational(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RawRational, E> {
                Ok(RawRational(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, _: f64) -> Result<RawRational, E> {
                Err(E::custom(DECIMAL_REJECTED))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<RawRational, E> {
                parse_rational(v).map(RawRational).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

/// An ordered JSON object that rejects repeated keys.
#[derive(Debug)]
struct UniqueMap<V>(IndexMap<String, V>);

impl<V> Default for UniqueMap<V> {
    fn default() -> Self {
        UniqueMap(IndexMap::new())
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct MapVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for MapVisitor<V> {
            type Value = UniqueMap<V>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with distinct names")
            }

            fn visit_map<M: MapAccess<'de>>(self, mut access: M) -> Result<Self::Value, M::Error> {
                let mut map = IndexMap::new();
                while let Some(key) = access.next_key::<String>()? {
                    if map.contains_key(&key) {
                        return Err(de::Error::custom(format!("duplicate name `{key}`")));
                    }
                    let value = access.next_value()?;
                    map.insert(key, value);
                }
                Ok(UniqueMap(map))
            }
        }

        deserializer.deserialize_map(MapVisitor(PhantomData))
    }
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    states: Vec<String>,
    signals: UniqueMap<Vec<RawRational>>,
    #[serde(default)]
    actions: UniqueMap<Vec<Vec<RawRational>>>,
    #[serde(default)]
    info_structures: UniqueMap<UniqueMap<RawRational>>,
    #[serde(default)]
    queries: Vec<Vec<RawRational>>,
}

/// A validated audit input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub states: StateSpace,
    pub signal_names: Vec<String>,
    pub signals: SignalSet,
    pub action_sets: IndexMap<String, ActionSet>,
    pub info_structures: IndexMap<String, InfoStructure>,
    pub queries: Vec<Signal>,
}

impl ProblemInstance {
    pub fn action_set(&self, name: &str) -> Result<&ActionSet, InputError> {
        self.action_sets
            .get(name)
            .ok_or_else(|| InputError::field("actions", format!("no action set named `{name}`")))
    }

    pub fn info_structure(&self, name: &str) -> Result<&InfoStructure, InputError> {
        self.info_structures.get(name).ok_or_else(|| {
            InputError::field(
                "info_structures",
                format!("no information structure named `{name}`"),
            )
        })
    }

    /// The named action set, or the only one when `name` is `None`.
    pub fn pick_action_set(&self, name: Option<&str>) -> Result<(&str, &ActionSet), InputError> {
        match name {
            Some(name) => Ok((
                self.action_sets
                    .get_key_value(name)
                    .map(|(k, _)| k.as_str())
                    .ok_or_else(|| {
                        InputError::field("actions", format!("no action set named `{name}`"))
                    })?,
                self.action_set(name)?,
            )),
            None if self.action_sets.len() == 1 => {
                let (k, v) = self.action_sets.first().expect("one action set");
                Ok((k.as_str(), v))
            }
            None => Err(InputError::field(
                "actions",
                format!(
                    "{} action sets defined; choose one with --actions",
                    self.action_sets.len()
                ),
            )),
        }
    }

    /// Parses a point given on the command line as `p/q,p/q,...`.
    pub fn parse_point(&self, field: &str, text: &str) -> Result<Signal, InputError> {
        let entries = text
            .split(',')
            .map(|x| parse_rational(x.trim()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| InputError::field(field, e))?;
        probability_vector(field, entries, self.states.len())
    }
}

fn probability_vector(field: &str, entries: Vec<Rational>, n: usize) -> Result<Signal, InputError> {
    if entries.len() != n {
        return Err(InputError::field(
            field,
            format!(
                "expected {n} entries (one per state), found {}",
                entries.len()
            ),
        ));
    }
    Signal::new(entries).map_err(|e| InputError::field(field, e))
}

fn unwrap_all(raw: Vec<RawRational>) -> Vec<Rational> {
    raw.into_iter().map(|r| r.0).collect()
}

/// Parses and validates a UTF-8 JSON instance.
pub fn parse_instance(text: &[u8]) -> Result<ProblemInstance, InputError> {
    let raw: RawInstance = serde_json::from_slice(text)?;
    let states = StateSpace::new(raw.states).map_err(|e| InputError::field("states", e))?;
    let n = states.len();

    if raw.signals.0.is_empty() {
        return Err(InputError::field(
            "signals",
            "at least one signal is required",
        ));
    }
    let mut signal_names = Vec::new();
    let mut signals: Vec<Signal> = Vec::new();
    for (name, entries) in raw.signals.0 {
        let field = format!("signals.{name}");
        let s = probability_vector(&field, unwrap_all(entries), n)?;
        if let Some(i) = signals.iter().position(|t| *t == s) {
            return Err(InputError::field(
                field,
                format!("identical to signals.{}", signal_names[i]),
            ));
        }
        signal_names.push(name);
        signals.push(s);
    }
    let signal_set = SignalSet::new(signals).map_err(|e| InputError::field("signals", e))?;

    let mut action_sets = IndexMap::new();
    for (name, actions) in raw.actions.0 {
        let field = format!("actions.{name}");
        if actions.is_empty() {
            return Err(InputError::field(
                field,
                "an action set needs at least one action",
            ));
        }
        let mut rows = Vec::new();
        for (i, a) in actions.into_iter().enumerate() {
            if a.len() != n {
                return Err(InputError::field(
                    format!("{field}[{i}]"),
                    format!("expected {n} payoffs (one per state), found {}", a.len()),
                ));
            }
            rows.push(unwrap_all(a));
        }
        let set = ActionSet::from_vectors(rows).map_err(|e| InputError::field(&field, e))?;
        action_sets.insert(name, set);
    }

    let mut info_structures = IndexMap::new();
    for (name, weights) in raw.info_structures.0 {
        let field = format!("info_structures.{name}");
        let mut w = vec![Rational::zero(); signal_names.len()];
        for (signal, weight) in weights.0 {
            let i = signal_names
                .iter()
                .position(|s| *s == signal)
                .ok_or_else(|| {
                    InputError::field(format!("{field}.{signal}"), "unknown signal name")
                })?;
            w[i] = weight.0;
        }
        let pi = InfoStructure::new(w).map_err(|e| InputError::field(&field, e))?;
        info_structures.insert(name, pi);
    }

    let queries = raw
        .queries
        .into_iter()
        .enumerate()
        .map(|(i, q)| probability_vector(&format!("queries[{i}]"), unwrap_all(q), n))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(ProblemInstance {
        states,
        signal_names,
        signals: signal_set,
        action_sets,
        info_structures,
        queries,
    })
}
