use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// How an outcome's two sides are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs ≤ rhs` up to the tolerance.
    Le,
    /// `lhs < rhs` with a positive margin; the tolerance does not relax it.
    Lt,
    /// `|lhs − rhs| ≤ tolerance`.
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// A named input parameter of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Real(f64),
    List(Vec<f64>),
    Text(String),
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Real(v)
    }
}

impl From<&[f64]> for Param {
    fn from(v: &[f64]) -> Self {
        Param::List(v.to_vec())
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_owned())
    }
}

/// One inequality evaluated at one input point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub label: String,
    pub point: BTreeMap<String, f64>,
    pub relation: Relation,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    /// `rhs − lhs` for inequalities, `−|lhs − rhs|` for equalities; positive is slack.
    pub margin: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Outcome {
    pub fn compare(label: &str, point: &[(&str, f64)], relation: Relation, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let margin = match relation {
            Relation::Le | Relation::Lt => rhs - lhs,
            Relation::Eq => -(lhs - rhs).abs(),
        };
        let ok = match relation {
            Relation::Le | Relation::Eq => margin >= -tolerance,
            Relation::Lt => margin > 0.0,
        };
        Self {
            label: label.to_owned(),
            point: to_point(point),
            relation,
            lhs: Some(lhs),
            rhs: Some(rhs),
            margin: Some(margin),
            tolerance,
            status: if ok { Status::Pass } else { Status::Fail },
            note: None,
        }
    }

    /// A boolean property with no numeric sides.
    pub fn flag(label: &str, point: &[(&str, f64)], ok: bool, note: impl Into<String>) -> Self {
        Self {
            label: label.to_owned(),
            point: to_point(point),
            relation: Relation::Eq,
            lhs: None,
            rhs: None,
            margin: None,
            tolerance: 0.0,
            status: if ok { Status::Pass } else { Status::Fail },
            note: Some(note.into()),
        }
    }

    pub fn skipped(label: &str, point: &[(&str, f64)], note: impl Into<String>) -> Self {
        Self {
            label: label.to_owned(),
            point: to_point(point),
            relation: Relation::Le,
            lhs: None,
            rhs: None,
            margin: None,
            tolerance: 0.0,
            status: Status::Skipped,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

fn to_point(point: &[(&str, f64)]) -> BTreeMap<String, f64> {
    point.iter().map(|&(k, v)| (k.to_owned(), v)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub inputs: BTreeMap<String, Param>,
    pub tolerance: f64,
    pub outcomes: Vec<Outcome>,
    pub pass: bool,
    /// Smallest margin over evaluated outcomes.
    pub worst_margin: Option<f64>,
    /// Label of the first failing outcome in enumeration order.
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check_name: &str, tolerance: f64) -> Self {
        Self {
            check_name: check_name.to_owned(),
            inputs: BTreeMap::new(),
            tolerance,
            outcomes: Vec::new(),
            pass: true,
            worst_margin: None,
            first_failure: None,
            notes: Vec::new(),
        }
    }

    pub fn input(mut self, name: &str, value: impl Into<Param>) -> Self {
        self.inputs.insert(name.to_owned(), value.into());
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn push(&mut self, outcome: Outcome) {
        self.outcomes.push(outcome);
    }

    pub fn extend(&mut self, outcomes: impl IntoIterator<Item = Outcome>) {
        self.outcomes.extend(outcomes);
    }

    /// Recomputes the summary fields from the outcomes.
    pub fn finish(mut self) -> Self {
        self.pass = !self.outcomes.iter().any(Outcome::failed);
        self.worst_margin = self
            .outcomes
            .iter()
            .filter_map(|o| o.margin)
            .fold(None, |acc: Option<f64>, m| Some(acc.map_or(m, |a| a.min(m))));
        self.first_failure = self.outcomes.iter().find(|o| o.failed()).map(|o| o.label.clone());
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| o.failed())
    }
}
