//! Analytic lower bounds, evaluated exactly where they are integer
//! formulas and paired with exact minima where those are computable.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::llt::{floor_log2, low_tree_size};
use crate::oracle::binomial::binomial;
use crate::oracle::enumerate::{exhaustive_min, star_min_covering, Stat};
use crate::oracle::shapes::min_cost;
use crate::oracle::Caps;
use crate::par::Exec;

/// Slack applied to bounds involving real powers.
pub const FLOAT_SLACK: f64 = 1e-9;

/// Largest `n` for which the cost recurrence is evaluated.
const COST_TABLE_LIMIT: usize = 256;

/// `f(h)`: the least `f` with `C(h+1, f) > (2/3) n`. Defined for
/// `h > 2 floor(log2 n)`.
pub fn f_of_h(n: u64, h: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidSize("n must be positive".into()));
    }
    let lg = floor_log2(n as usize) as u64;
    if h <= 2 * lg {
        return Err(Error::Domain(format!("f(h) needs h > 2 floor(log2 n) = {}, got {h}", 2 * lg)));
    }
    let target = BigUint::from(2 * n);
    (0..=h + 1)
        .find(|&f| binomial(h + 1, f) * 3u32 > target)
        .ok_or_else(|| Error::Domain(format!("no f for n = {n}, h = {h}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    /// `R(n,h) >= (2/3) n floor(log2(n) / 8)` for `log2 n <= h <= 2 floor(log2 n)`.
    #[serde(rename = "majort-part1")]
    CostLogFloor,
    /// `R(n,h) > (2/3) n (f(h) - 2)` for `2 floor(log2 n) < h <= n - 1`.
    #[serde(rename = "majort-part2")]
    CostBinomial,
    /// `chi > h n^(1/h) / 20` for `h <= log2(n) / 5`.
    #[serde(rename = "work-covering")]
    WorkCovering,
    /// `chi >= (deg - 2) / 2`, with the degree forced by the depth budget.
    #[serde(rename = "degree")]
    Degree,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub h: usize,
    pub bound_kind: BoundKind,
    pub analytic_bound: f64,
    /// Whether `(n, h)` lies in the range the bound is stated for.
    pub applicable: bool,
    /// The bound is `>` rather than `>=`.
    pub strict: bool,
    pub vacuous: bool,
    pub exhaustive_value: Option<u64>,
}

impl BoundReport {
    /// `None` when there is nothing to compare.
    pub fn holds(&self) -> Option<bool> {
        let v = self.exhaustive_value? as f64;
        Some(if self.strict {
            v > self.analytic_bound - FLOAT_SLACK
        } else {
            v >= self.analytic_bound - FLOAT_SLACK
        })
    }
}

fn report(n: usize, h: usize, kind: BoundKind, bound: f64, applicable: bool, strict: bool, value: Option<u64>) -> BoundReport {
    BoundReport {
        n,
        h,
        bound_kind: kind,
        analytic_bound: bound,
        applicable,
        strict,
        vacuous: bound <= 0.0,
        exhaustive_value: value,
    }
}

/// Smallest arity `k` such that a depth-`h` tree of arity `k` can hold
/// `n` vertices.
fn forced_arity(n: usize, h: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    let mut k = 1;
    while low_tree_size(k, h).is_ok_and(|s| s < n as u64) {
        k += 1;
    }
    k
}

/// Every bound evaluated at `(n, h)`, with exact minima attached where the
/// caps allow.
pub fn analytic_bounds(n: usize, h: usize, caps: &Caps, exec: Exec) -> Result<Vec<BoundReport>> {
    check(n, h)?;
    let cost = if n <= COST_TABLE_LIMIT { min_cost(n, h).ok() } else { None };
    let covering = if h == 1 {
        Some(u64::from(star_min_covering(n)))
    } else if n <= caps.line {
        Some(exhaustive_min(n, h, Stat::Covering, caps, exec)?)
    } else {
        None
    };
    evaluate_bounds(n, h, covering, cost)
}

fn check(n: usize, h: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidSize("n must be positive".into()));
    }
    if h == 0 && n > 1 {
        return Err(Error::Domain(format!("depth 0 cannot span {n} vertices")));
    }
    Ok(())
}

/// Every bound at `(n, h)` against caller-supplied exact values: the
/// minimum covering `chi(n, h)` and the minimum cost `R(n, h)`.
pub fn evaluate_bounds(n: usize, h: usize, covering: Option<u64>, cost: Option<u64>) -> Result<Vec<BoundReport>> {
    check(n, h)?;
    let nf = n as f64;
    let lg = floor_log2(n);
    let log_n = nf.log2();

    let mut out = Vec::new();
    let part1 = 2.0 / 3.0 * nf * (lg / 8) as f64;
    out.push(report(n, h, BoundKind::CostLogFloor, part1, log_n <= h as f64 && h <= 2 * lg, false, cost));

    let applicable = h > 2 * lg && h < n;
    let part2 = if h > 2 * lg {
        let f = f_of_h(n as u64, h as u64)?;
        2.0 / 3.0 * nf * (f as f64 - 2.0)
    } else {
        0.0
    };
    out.push(report(n, h, BoundKind::CostBinomial, part2, applicable, true, cost));

    let work = h as f64 * nf.powf(1.0 / h.max(1) as f64) / 20.0;
    out.push(report(n, h, BoundKind::WorkCovering, work, h as f64 <= log_n / 5.0, true, covering));

    let degree = (forced_arity(n, h) as f64 - 2.0) / 2.0;
    out.push(report(n, h, BoundKind::Degree, degree, true, false, covering));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_values() {
        assert_eq!(f_of_h(20, 10).unwrap(), 2);
        assert_eq!(f_of_h(3, 4).unwrap(), 1);
        assert!(f_of_h(20, 8).is_err());
    }

    #[test]
    fn work_at_32_1() {
        let r = analytic_bounds(32, 1, &Caps::default(), Exec::Sequential).unwrap();
        let work = r.iter().find(|b| b.bound_kind == BoundKind::WorkCovering).unwrap();
        assert!((work.analytic_bound - 1.6).abs() < 1e-12);
        assert!(work.applicable);
        assert_eq!(work.exhaustive_value, Some(15));
        assert_eq!(work.holds(), Some(true));
        let degree = r.iter().find(|b| b.bound_kind == BoundKind::Degree).unwrap();
        assert_eq!(degree.analytic_bound, 14.5);
        assert_eq!(degree.holds(), Some(true));
    }

    #[test]
    fn log_floor_bound_is_vacuous_at_20() {
        let r = analytic_bounds(20, 5, &Caps::default(), Exec::Sequential).unwrap();
        let p1 = r.iter().find(|b| b.bound_kind == BoundKind::CostLogFloor).unwrap();
        assert!(p1.applicable);
        assert!(p1.vacuous);
        assert_eq!(p1.holds(), Some(true));
    }

    #[test]
    fn forced_arities() {
        assert_eq!(forced_arity(32, 1), 31);
        assert_eq!(forced_arity(7, 2), 2);
        assert_eq!(forced_arity(8, 2), 3);
        assert_eq!(forced_arity(5, 4), 1);
    }
}
