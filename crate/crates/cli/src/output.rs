//! Turning reports into named text and JSON.

use std::fmt::Display;

use serde_json::{json, Map, Value};
use tensym::report::Report;
use tensym::space::SpaceCondition;
use tensym::{upset_family, Congruence, Poset};

/// One checked condition with its witness spelled out as `variable=name`.
pub struct Row {
    pub condition: String,
    pub witness: Option<Vec<(String, String)>>,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    fn witness_text(&self) -> String {
        self.witness
            .iter()
            .flatten()
            .map(|(var, value)| format!("{var}={value}"))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn text(&self) -> String {
        match self.witness {
            None => format!("  pass  {}", self.condition),
            Some(_) => format!(
                "  FAIL  {}  witness {}",
                self.condition,
                self.witness_text()
            ),
        }
    }

    pub fn json(&self) -> Value {
        let witness = self.witness.as_ref().map(|w| {
            let map: Map<String, Value> = w.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
            Value::Object(map)
        });
        json!({
            "condition": self.condition,
            "passed": self.passed(),
            "witness": witness,
        })
    }
}

const GENERIC: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

/// Pairs witness entries with variable labels. Indices past the carrier
/// (for example size mismatches) are printed as numbers.
pub fn label(names: &[String], vars: &[&str], witness: &[usize]) -> Vec<(String, String)> {
    witness
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let var = vars
                .get(i)
                .map_or_else(|| format!("#{i}"), |v| v.to_string());
            let value = names.get(w).cloned().unwrap_or_else(|| w.to_string());
            (var, value)
        })
        .collect()
}

pub fn rows<K: Copy + PartialEq + Display>(
    report: &Report<K>,
    witness: impl Fn(K, &[usize]) -> Vec<(String, String)>,
) -> Vec<Row> {
    report
        .checks
        .iter()
        .map(|c| Row {
            condition: c.kind.to_string(),
            witness: c.witness.as_deref().map(|w| witness(c.kind, w)),
        })
        .collect()
}

pub fn generic_rows<K: Copy + PartialEq + Display>(
    report: &Report<K>,
    names: &[String],
) -> Vec<Row> {
    rows(report, |_, w| label(names, &GENERIC, w))
}

pub fn space_rows(report: &Report<SpaceCondition>, names: &[String], poset: &Poset) -> Vec<Row> {
    rows(report, |kind, w| match kind {
        SpaceCondition::FutureMonotone | SpaceCondition::PastMonotone => {
            label(names, &["x", "y", "x'", "y'"], w)
        }
        SpaceCondition::FutureNecessityUpset | SpaceCondition::PastNecessityUpset => {
            let upsets = upset_family(poset);
            let mut out = vec![("U".to_string(), set_text(names, upsets[w[0]].members()))];
            out.extend(label(names, &["y", "y'"], &w[1..]));
            out
        }
        _ => label(names, &GENERIC, w),
    })
}

pub fn set_text(names: &[String], members: impl Iterator<Item = usize>) -> String {
    let inner: Vec<&str> = members.map(|i| names[i].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn congruence_text(names: &[String], theta: &Congruence) -> String {
    theta
        .blocks()
        .into_iter()
        .map(|b| set_text(names, b.into_iter()))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn congruence_json(names: &[String], theta: &Congruence) -> Value {
    theta
        .blocks()
        .into_iter()
        .map(|b| b.into_iter().map(|i| names[i].clone()).collect::<Vec<_>>())
        .collect()
}
