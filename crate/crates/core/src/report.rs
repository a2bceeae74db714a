//! Serializable reports shared by the analytic engine, the lab and the CLI.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::analytic::{restricted_moment, DensityValue, Enclosure, LocalDensitySystem};
use crate::eisenstein::Flavor;
use crate::error::{Error, Result};
use crate::lab::{ComparisonVerdict, EmpiricalReport, ScanMode};

/// Fractional digits in decimal renderings.
pub const DECIMAL_PLACES: usize = 24;

/// Fixed-point decimal rounded toward -inf (`up = false`) or +inf.
pub fn format_decimal(x: &BigRational, places: usize, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = x.numer() * &scale;
    let (q, r) = scaled.div_mod_floor(x.denom());
    let q = if up && !r.is_zero() { q + 1 } else { q };
    let neg = q.is_negative();
    let digits = q.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

pub fn format_exact(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Analytic,
    Empirical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuantityStatus {
    Ok,
    /// The quantity is infinite or its limit degenerates; see the note.
    Divergent,
    Undefined,
}

/// One reported quantity. Decimal ends round outward; exact ends are p/q strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantityRow {
    pub quantity: String,
    pub status: QuantityStatus,
    pub lo: Option<String>,
    pub hi: Option<String>,
    pub width: Option<String>,
    pub lo_exact: Option<String>,
    pub hi_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub standard_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl QuantityRow {
    pub fn enclosed(name: &str, e: &Enclosure<BigRational>) -> Self {
        QuantityRow {
            quantity: name.into(),
            status: QuantityStatus::Ok,
            lo: Some(format_decimal(&e.lo, DECIMAL_PLACES, false)),
            hi: Some(format_decimal(&e.hi, DECIMAL_PLACES, true)),
            width: Some(format_decimal(&e.width(), DECIMAL_PLACES, true)),
            lo_exact: Some(format_exact(&e.lo)),
            hi_exact: Some(format_exact(&e.hi)),
            standard_error: None,
            note: None,
        }
    }

    pub fn undefined(name: &str, note: impl Into<String>) -> Self {
        QuantityRow {
            quantity: name.into(),
            status: QuantityStatus::Undefined,
            lo: None,
            hi: None,
            width: None,
            lo_exact: None,
            hi_exact: None,
            standard_error: None,
            note: Some(note.into()),
        }
    }

    /// The enclosure back as rationals, when defined.
    pub fn enclosure(&self) -> Option<Enclosure<BigRational>> {
        let parse = |s: &str| s.parse::<BigRational>().ok();
        Some(Enclosure::new(parse(self.lo_exact.as_deref()?)?, parse(self.hi_exact.as_deref()?)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: ReportKind,
    pub field: String,
    pub d: usize,
    pub flavor: Flavor,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none", default)]
    pub cutoff: Option<u64>,
    #[serde(rename = "H", skip_serializing_if = "Option::is_none", default)]
    pub h: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// Tuples scanned and tuples with at least one witness, as decimal strings.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub in_target: Option<String>,
    pub quantities: Vec<QuantityRow>,
}

impl Report {
    pub fn quantity(&self, name: &str) -> Option<&QuantityRow> {
        self.quantities.iter().find(|q| q.quantity == name)
    }

    /// Enclosures by name in report order; `None` where undefined.
    pub fn enclosures(&self) -> Vec<(String, Option<Enclosure<BigRational>>)> {
        self.quantities
            .iter()
            .map(|q| (q.quantity.clone(), q.enclosure()))
            .collect()
    }
}

fn defined_or_undefined(name: &str, r: Result<Enclosure<BigRational>>) -> Result<QuantityRow> {
    match r {
        Ok(e) => Ok(QuantityRow::enclosed(name, &e)),
        Err(Error::DensityZero) => Ok(QuantityRow::undefined(
            name,
            "density lower bound is 0 at this cutoff; conditioning on the target is undefined",
        )),
        Err(e) => Err(e),
    }
}

/// density, mean, restricted_mean, moment_2..moment_order, variance,
/// restricted_variance. With `order == 0` only the density is reported, which
/// is the one quantity still defined when the local densities are not summable.
pub fn analytic_report(sys: &LocalDensitySystem<BigRational>, order: usize) -> Result<Report> {
    let prec = sys.precision();
    let mut rows = Vec::new();
    let rho = match sys.density() {
        DensityValue::Enclosed(e) => {
            rows.push(QuantityRow::enclosed("density", &e));
            e
        }
        DensityValue::Divergent { partial } => {
            let mut row = QuantityRow::enclosed("density", &Enclosure::point(BigRational::from_integer(1.into())));
            row.status = QuantityStatus::Divergent;
            row.note = Some(format!(
                "sum of local densities diverges, so the density is exactly 1; partial value 1 - prod(1 - s) up to M lies in [{}, {}]",
                format_decimal(&partial.lo, DECIMAL_PLACES, false),
                format_decimal(&partial.hi, DECIMAL_PLACES, true),
            ));
            rows.push(row);
            partial
        }
    };
    if order > 0 {
        let mu = sys.mean()?;
        rows.push(QuantityRow::enclosed("mean", &mu));
        let mu_t = restricted_moment(&mu, &rho, prec);
        rows.push(defined_or_undefined("restricted_mean", mu_t.clone())?);
        for j in 2..=order {
            rows.push(QuantityRow::enclosed(&format!("moment_{j}"), &sys.nth_moment(j)?));
        }
        rows.push(QuantityRow::enclosed("variance", &sys.variance()?));
        let rv = mu_t.and_then(|t| sys.restricted_variance(&rho, &mu, &t));
        rows.push(defined_or_undefined("restricted_variance", rv)?);
    }
    Ok(Report {
        kind: ReportKind::Analytic,
        field: sys.label().to_string(),
        d: sys.d(),
        flavor: sys.flavor(),
        cutoff: Some(sys.cutoff()),
        h: None,
        mode: None,
        samples: None,
        seed: None,
        total: None,
        in_target: None,
        quantities: rows,
    })
}

pub fn empirical_report(r: &EmpiricalReport) -> Report {
    let rows = r
        .quantities()
        .into_iter()
        .map(|q| match &q.value {
            Some(v) => {
                let mut row = QuantityRow::enclosed(&q.name, &Enclosure::point(v.clone()));
                row.standard_error = q.standard_error;
                row
            }
            None => QuantityRow::undefined(&q.name, "no tuple in the box has a witness"),
        })
        .collect();
    let (mode, samples, seed) = match r.mode {
        ScanMode::Exhaustive => ("exhaustive", None, None),
        ScanMode::MonteCarlo { samples, seed } => ("montecarlo", Some(samples), Some(seed)),
    };
    Report {
        kind: ReportKind::Empirical,
        field: r.field.clone(),
        d: r.d,
        flavor: r.flavor,
        cutoff: None,
        h: Some(r.h),
        mode: Some(mode.into()),
        samples,
        seed,
        total: Some(r.total().to_string()),
        in_target: Some(r.in_target().to_string()),
        quantities: rows,
    }
}

/// Both reports side by side with the per-quantity verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub kind: &'static str,
    pub passed: bool,
    pub tolerance: f64,
    pub analytic: Report,
    pub empirical: Report,
    pub rows: Vec<crate::lab::ComparisonRow>,
}

pub fn comparison_report(analytic: Report, empirical: Report, verdict: ComparisonVerdict) -> ComparisonReport {
    ComparisonReport {
        kind: "comparison",
        passed: verdict.passed(),
        tolerance: verdict.tolerance,
        analytic,
        empirical,
        rows: verdict.rows,
    }
}

/// Midpoint of a row as f64, for display.
pub fn row_midpoint(row: &QuantityRow) -> Option<f64> {
    row.enclosure().and_then(|e| e.midpoint().to_f64())
}
