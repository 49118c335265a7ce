//! Serializable verification and probe records.

use serde::{Deserialize, Serialize};

use crate::format::fmt_sig;
use crate::suite::probe::Direction;

/// An input that violated a relation, kept for diagnosis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Offending {
    /// Sample index; with the seed it reproduces the input exactly.
    pub sample: u64,
    pub domain: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_domain: Option<String>,
    pub relation: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    #[default]
    Case,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    #[default]
    Probe,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub kind: CaseKind,
    pub case_id: String,
    pub paper_ref: String,
    pub samples: u64,
    pub violations: u64,
    pub offending: Vec<Offending>,
    /// Largest `lhs - rhs` over all checked relations (`|lhs - rhs|` for
    /// equalities); negative means every sample had room to spare.
    pub max_slack: Option<f64>,
    pub seed: u64,
    pub slack: f64,
    pub pass: bool,
    /// Relation evaluations skipped because their guard did not hold.
    pub guarded_skips: u64,
    /// Samples on which the Apollonian term was only a pseudo-metric.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pseudo_metric_samples: Option<u64>,
    pub sup_scan_samples: usize,
    pub sup_tolerance: f64,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub kind: ProbeKind,
    pub case_id: String,
    pub paper_ref: String,
    pub series: String,
    pub direction: Direction,
    pub schedule: Vec<f64>,
    pub estimates: Vec<f64>,
    pub deviations: Vec<f64>,
    pub expected_limit: f64,
    pub tolerance: f64,
    pub final_estimate: f64,
    pub final_deviation: f64,
    pub monotone: bool,
    pub pass: bool,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Record {
    Case(CaseReport),
    Probe(ProbeReport),
}

impl Record {
    pub fn pass(&self) -> bool {
        match self {
            Record::Case(c) => c.pass,
            Record::Probe(p) => p.pass,
        }
    }

    pub fn id(&self) -> &str {
        match self {
            Record::Case(c) => &c.case_id,
            Record::Probe(p) => &p.case_id,
        }
    }

    /// Zeroes the timing field, leaving only deterministic content.
    pub fn without_wall_time(mut self) -> Self {
        match &mut self {
            Record::Case(c) => c.wall_time_ms = 0,
            Record::Probe(p) => p.wall_time_ms = 0,
        }
        self
    }
}

pub fn to_json(records: &[Record]) -> serde_json::Result<String> {
    serde_json::to_string_pretty(records)
}

pub fn from_json(text: &str) -> serde_json::Result<Vec<Record>> {
    serde_json::from_str(text)
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_sig).unwrap_or_default()
}

/// One CSV row per record.
pub fn to_csv(records: &[Record]) -> String {
    let mut out = String::from(
        "kind,case_id,series,samples,violations,max_slack,final_estimate,expected_limit,final_deviation,monotone,pass,seed\n",
    );
    for r in records {
        let row = match r {
            Record::Case(c) => format!(
                "case,{},,{},{},{},,,,,{},{}",
                c.case_id,
                c.samples,
                c.violations,
                opt(c.max_slack),
                c.pass,
                c.seed
            ),
            Record::Probe(p) => format!(
                "probe,{},\"{}\",,,,{},{},{},{},{},",
                p.case_id,
                p.series,
                fmt_sig(p.final_estimate),
                fmt_sig(p.expected_limit),
                fmt_sig(p.final_deviation),
                p.monotone,
                p.pass
            ),
        };
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Human-readable summary, one line per record.
pub fn to_text(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        let status = if r.pass() { "PASS" } else { "FAIL" };
        let line = match r {
            Record::Case(c) => format!(
                "[{status}] {:<15} samples={} violations={} max_slack={} ({} ms)",
                c.case_id,
                c.samples,
                c.violations,
                c.max_slack.map(fmt_sig).unwrap_or_else(|| "n/a".into()),
                c.wall_time_ms
            ),
            Record::Probe(p) => format!(
                "[{status}] {:<4} {:<26} final={} expected={} deviation={} tol={} monotone={}",
                p.case_id,
                p.series,
                fmt_sig(p.final_estimate),
                fmt_sig(p.expected_limit),
                fmt_sig(p.final_deviation),
                fmt_sig(p.tolerance),
                p.monotone
            ),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Convergence table of a probe series: `t, functional_value,
/// deviation_from_expected`.
pub fn probe_table(p: &ProbeReport) -> String {
    let mut out = String::from("t,functional_value,deviation_from_expected\n");
    for ((t, v), d) in p.schedule.iter().zip(&p.estimates).zip(&p.deviations) {
        out.push_str(&format!("{},{},{}\n", fmt_sig(*t), fmt_sig(*v), fmt_sig(*d)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let case = Record::Case(CaseReport {
            kind: CaseKind::Case,
            case_id: "T-JG".into(),
            paper_ref: "u <= 3 j_tilde".into(),
            samples: 10,
            violations: 1,
            offending: vec![Offending {
                sample: 3,
                domain: "B^2".into(),
                x: vec![0.1, 0.2],
                y: vec![-0.3, 0.0],
                z: None,
                image_domain: None,
                relation: "u <= 3 j_tilde".into(),
                lhs: Some(1.25),
                rhs: None,
                error: Some("boom".into()),
            }],
            max_slack: Some(-0.123456789012),
            seed: 42,
            slack: 1e-9,
            pass: false,
            guarded_skips: 0,
            pseudo_metric_samples: Some(2),
            sup_scan_samples: 1024,
            sup_tolerance: 1e-12,
            wall_time_ms: 5,
        });
        let probe = Record::Probe(ProbeReport {
            kind: ProbeKind::Probe,
            case_id: "P3".into(),
            paper_ref: "x".into(),
            series: "u / j".into(),
            direction: Direction::ToZero,
            schedule: vec![0.1, 0.01, 0.001, 0.0001],
            estimates: vec![2.5, 2.9, 2.99, 2.999],
            deviations: vec![0.5, 0.1, 0.01, 0.001],
            expected_limit: 3.0,
            tolerance: 1e-3,
            final_estimate: 2.999,
            final_deviation: 0.001,
            monotone: true,
            pass: true,
            wall_time_ms: 0,
        });
        let records = vec![case, probe];
        let text = to_json(&records).unwrap();
        let back = from_json(&text).unwrap();
        assert_eq!(back, records);
        assert_eq!(to_json(&back).unwrap(), text);
    }
}
