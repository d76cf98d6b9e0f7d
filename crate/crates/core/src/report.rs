//! Run reports and number formatting shared by the CLI and file writers.

use serde::Serialize;

use crate::llt::ConstructionPlan;
use crate::tree::TreeMetrics;

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Shortest decimal text for `x` after rounding to 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    let r = round12(x);
    if r == r.trunc() && r.abs() < 1e15 {
        format!("{}", r as i64)
    } else {
        format!("{r}")
    }
}

/// One evaluated inequality: `lhs <= rhs` unless the name says otherwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl BoundCheck {
    /// `lhs <= rhs` with relative slack `tol`.
    pub fn at_most(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        BoundCheck {
            name: name.into(),
            lhs,
            rhs,
            holds: lhs <= rhs + tol * rhs.abs().max(1.0),
        }
    }

    pub fn exact(name: impl Into<String>, lhs: f64, rhs: f64, holds: bool) -> Self {
        BoundCheck { name: name.into(), lhs, rhs, holds }
    }

    pub(crate) fn rounded(mut self) -> Self {
        self.lhs = round12(self.lhs);
        self.rhs = round12(self.rhs);
        self
    }
}

/// The JSON document written by every CLI command.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Inputs,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<ConstructionPlan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<TreeMetrics>,
    pub bound_checks: Vec<BoundCheck>,
    /// Only filled in on request, so that repeated runs stay byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<f64>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs: Vec<(String, String)>) -> Self {
        RunReport {
            schema: SCHEMA_VERSION,
            command: command.into(),
            inputs: Inputs(inputs),
            plan: None,
            metrics: None,
            bound_checks: Vec::new(),
            timing: None,
        }
    }

    pub fn with_metrics(mut self, metrics: TreeMetrics) -> Self {
        self.metrics = Some(round_metrics(metrics));
        self
    }

    pub fn push_checks(&mut self, checks: impl IntoIterator<Item = BoundCheck>) {
        self.bound_checks.extend(checks.into_iter().map(BoundCheck::rounded));
    }

    pub fn all_hold(&self) -> bool {
        self.bound_checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.bound_checks.iter().filter(|c| !c.holds)
    }
}

pub fn round_metrics(mut m: TreeMetrics) -> TreeMetrics {
    m.weight = round12(m.weight);
    m.mst_weight = round12(m.mst_weight);
    m.lightness = round12(m.lightness);
    m
}

/// Ordered string map; keeps argument order stable in reports.
#[derive(Debug, Clone, Default)]
pub struct Inputs(pub Vec<(String, String)>);

impl Serialize for Inputs {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(6.0), "6");
        assert_eq!(fmt_num(2.0_f64.sqrt() * 1e6), "1414213.56237");
        assert_eq!(round12(0.1 + 0.2), 0.3);
    }

    #[test]
    fn check_tolerance() {
        assert!(BoundCheck::at_most("x", 1.0 + 1e-12, 1.0, 1e-9).holds);
        assert!(!BoundCheck::at_most("x", 1.01, 1.0, 1e-9).holds);
    }
}
