//! Output documents.
//!
//! Each subcommand produces one [`Document`]. The structured format is its
//! JSON serialization; the human format is a flattened `key: value` listing
//! of the same document, so both carry the same numbers.

use catshrink_core::association::AssociationReport;
use catshrink_core::bootstrap::BootstrapReport;
use catshrink_core::estimators::ModeKind;
use catshrink_core::tests::TestReport;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Mle,
    /// Posterior mean under Beta(a, b).
    Beta,
    /// Bayes–Laplace, Beta(1, 1).
    Bl,
    /// Jeffreys, Beta(1/2, 1/2).
    Jeffreys,
    /// Posterior mode under Beta(a, b).
    Map,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    Sign,
    Homogeneity,
    Mcnemar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum BootstrapKind {
    Homogeneity,
    Mcnemar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MiBase {
    #[default]
    Nats,
    Bits,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateDoc {
    pub estimator: Estimator,
    pub x: u64,
    pub n: u64,
    pub prior_a: f64,
    pub prior_b: f64,
    pub estimate: f64,
    /// Shrinkage weight on the MLE (absent for MAP and for n = 0).
    pub lambda: Option<f64>,
    pub target: Option<f64>,
    pub mode_kind: Option<ModeKind>,
    /// A prior shape parameter is below one.
    pub prior_advisory: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestDoc {
    pub kind: TestKind,
    pub counts: Option<Vec<Vec<u64>>>,
    pub x: Option<u64>,
    pub n: Option<u64>,
    pub pi0: Option<f64>,
    pub tau: Option<f64>,
    pub report: TestReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssocDoc {
    pub counts: Vec<Vec<u64>>,
    pub report: AssociationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MiDoc {
    pub counts: Vec<Vec<u64>>,
    pub lambda: f64,
    pub value_nats: f64,
    pub value_bits: f64,
    pub base: MiBase,
    /// The value in the requested base.
    pub value: f64,
    pub cells_elided: usize,
    pub targets: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapDoc {
    pub kind: BootstrapKind,
    pub counts: Vec<Vec<u64>>,
    pub tau: Option<f64>,
    pub report: BootstrapReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Document {
    Estimate(EstimateDoc),
    Test(TestDoc),
    Assoc(AssocDoc),
    Mi(MiDoc),
    Bootstrap(BootstrapDoc),
}

impl Document {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents hold only finite numbers")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// `key: value` lines, nested keys joined with dots.
    pub fn to_human(&self) -> String {
        let value = serde_json::to_value(self).expect("documents hold only finite numbers");
        let mut out = String::new();
        flatten(&value, "", &mut out);
        out
    }
}

fn flatten(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::Null => {}
        Value::String(s) => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(s);
            out.push('\n');
        }
        other => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
}
