use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{EmpiricalReport, ScanMode};
use crate::analytic::Enclosure;

/// Standard errors of slack granted to Monte Carlo estimates.
pub const SE_MULTIPLIER: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RowStatus {
    Pass,
    Fail,
    /// Undefined on both sides, e.g. restricted quantities with an empty target.
    Undefined,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub quantity: String,
    pub empirical: Option<f64>,
    pub standard_error: Option<f64>,
    pub analytic_lo: Option<f64>,
    pub analytic_hi: Option<f64>,
    /// |empirical - midpoint|.
    pub delta: Option<f64>,
    /// tolerance + half-width (+ 4 SE when sampled).
    pub allowed: Option<f64>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonVerdict {
    pub tolerance: f64,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonVerdict {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Fail)
    }
}

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Matches analytic enclosures to empirical quantities by name.
///
/// Quantities present on only one side are skipped; a quantity defined on one
/// side and undefined on the other fails.
pub fn compare(
    analytic: &[(String, Option<Enclosure<BigRational>>)],
    empirical: &EmpiricalReport,
    tolerance: f64,
) -> ComparisonVerdict {
    let sampled = matches!(empirical.mode, ScanMode::MonteCarlo { .. });
    let emp = empirical.quantities();
    let tol = BigRational::from_float(tolerance.max(0.0)).unwrap_or_else(BigRational::zero);
    let mut rows = Vec::new();
    for (name, enc) in analytic {
        let Some(q) = emp.iter().find(|q| &q.name == name) else {
            continue;
        };
        let mut row = ComparisonRow {
            quantity: name.clone(),
            empirical: q.value.as_ref().map(f),
            standard_error: q.standard_error,
            analytic_lo: enc.as_ref().map(|e| f(&e.lo)),
            analytic_hi: enc.as_ref().map(|e| f(&e.hi)),
            delta: None,
            allowed: None,
            status: RowStatus::Fail,
        };
        match (enc, &q.value) {
            (None, None) => row.status = RowStatus::Undefined,
            (Some(e), Some(v)) => {
                let mid = e.midpoint();
                let delta = (v - &mid).abs();
                let half = e.width() / BigRational::from_integer(2.into());
                let mut allowed = &tol + half;
                if sampled {
                    let se = q.standard_error.unwrap_or(0.0);
                    // A non-finite standard error leaves the row failing.
                    match BigRational::from_float(SE_MULTIPLIER * se) {
                        Some(s) => allowed += s,
                        None => allowed = -BigRational::from_integer(1.into()),
                    }
                }
                if delta <= allowed {
                    row.status = RowStatus::Pass;
                }
                row.delta = Some(f(&delta));
                row.allowed = Some(f(&allowed));
            }
            _ => {}
        }
        rows.push(row);
    }
    ComparisonVerdict { tolerance, rows }
}
