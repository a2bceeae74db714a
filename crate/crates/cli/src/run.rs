use std::fmt;

use eisen_core::analytic::build_system_with;
use eisen_core::lab::{compare, exhaustive_scan, monte_carlo_scan, BoxSpec, EmpiricalReport, ScanConfig};
use eisen_core::report::{analytic_report, comparison_report, empirical_report, Report};
use eisen_core::{Error, Flavor, NumberField, Precision};
use num_rational::BigRational;
use serde::Serialize;

use crate::args::{
    AnalyticArgs, Command, CompareArgs, CutoffArgs, EmpiricalArgs, FieldArgs, ModeArg, PolyArgs, ScanArgs, SplitArgs,
};
use crate::render;

pub const EXIT_OK: i32 = 0;
/// A comparison ran to completion and some quantity disagreed.
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_FIELD: i32 = 2;
pub const EXIT_DIVERGENT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_FACTORING: i32 = 5;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) => match e {
                Error::NotMaximalAtP { .. } | Error::InvalidField(_) => EXIT_FIELD,
                Error::TailDiverges { .. } | Error::DensityZero => EXIT_DIVERGENT,
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                Error::FactorTooHard { .. } | Error::ResidueFieldTooLarge { .. } => EXIT_FACTORING,
                Error::Parse(_)
                | Error::InvalidArgument(_)
                | Error::LeadingCoefficientZero
                | Error::RankDeficient => EXIT_USAGE,
            },
        }
    }
}

/// Rendered output and the exit code it should end with.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Split(a) => split(a),
        Command::Analytic(a) => analytic(a),
        Command::Empirical(a) => empirical(a),
        Command::Compare(a) => compare_cmd(a),
    }
}

fn load_field(a: &FieldArgs) -> Result<NumberField, CliError> {
    match (&a.field, &a.field_file) {
        (Some(src), None) => Ok(NumberField::from_str_poly(src)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(NumberField::from_descriptor(&text)?)
        }
        _ => Err(CliError::Usage("give exactly one of --field and --field-file".into())),
    }
}

#[derive(Serialize)]
pub struct SplitRow {
    pub p: u64,
    pub ideal: String,
    pub generator: String,
    pub ramification: u32,
    pub residue_degree: usize,
    pub norm: String,
}

#[derive(Serialize)]
pub struct SplitReport {
    pub kind: &'static str,
    pub field: String,
    #[serde(rename = "M")]
    pub cutoff: u64,
    pub primes: Vec<SplitRow>,
}

fn split(a: &SplitArgs) -> Result<Outcome, CliError> {
    let field = load_field(&a.field)?;
    let primes = field.primes_up_to(a.cutoff)?;
    let report = SplitReport {
        kind: "split",
        field: field.label(),
        cutoff: a.cutoff,
        primes: primes
            .iter()
            .map(|p| SplitRow {
                p: p.p(),
                ideal: p.label(),
                generator: p.generator().to_string(),
                ramification: p.ramification_index(),
                residue_degree: p.residue_degree(),
                norm: p.norm().to_string(),
            })
            .collect(),
    };
    Ok(Outcome {
        stdout: render::split(&report, a.output.format),
        code: EXIT_OK,
    })
}

fn precision(c: &CutoffArgs) -> Precision {
    match c.precision_bits {
        0 => Precision::Exact,
        b => Precision::Bits(b),
    }
}

fn analytic_of(field: &NumberField, poly: &PolyArgs, c: &CutoffArgs) -> Result<Report, CliError> {
    let flavor: Flavor = poly.flavor.into();
    let sys = build_system_with::<BigRational>(field, poly.degree as usize, flavor, c.cutoff, precision(c))?;
    let order = match poly.order {
        Some(n) => n as usize,
        None if sys.diverges() => 0,
        None => 2,
    };
    Ok(analytic_report(&sys, order)?)
}

fn analytic(a: &AnalyticArgs) -> Result<Outcome, CliError> {
    let field = load_field(&a.field)?;
    let report = analytic_of(&field, &a.poly, &a.cutoff)?;
    Ok(Outcome {
        stdout: render::report(&report, a.output.format),
        code: EXIT_OK,
    })
}

fn scan(field: &NumberField, flavor: Flavor, poly: &PolyArgs, s: &ScanArgs) -> Result<EmpiricalReport, CliError> {
    let b = BoxSpec::new(field, s.height, poly.degree as usize)?;
    let cfg = ScanConfig {
        threads: s.threads.map(|t| t as usize),
        budget: s.budget,
    };
    let order = poly.order.unwrap_or(2) as usize;
    Ok(match s.mode {
        ModeArg::Exhaustive => exhaustive_scan(&b, flavor, order, &cfg)?,
        ModeArg::Montecarlo => monte_carlo_scan(&b, flavor, s.samples, s.seed, order, &cfg)?,
    })
}

fn empirical(a: &EmpiricalArgs) -> Result<Outcome, CliError> {
    let field = load_field(&a.field)?;
    let r = scan(&field, a.poly.flavor.into(), &a.poly, &a.scan)?;
    Ok(Outcome {
        stdout: render::report(&empirical_report(&r), a.output.format),
        code: EXIT_OK,
    })
}

fn compare_cmd(a: &CompareArgs) -> Result<Outcome, CliError> {
    if let Some(ef) = a.empirical_flavor {
        if ef != a.poly.flavor {
            return Err(CliError::Usage(format!(
                "flavor mismatch: analytic side is {}, empirical side is {}",
                Flavor::from(a.poly.flavor),
                Flavor::from(ef)
            )));
        }
    }
    if !(a.tolerance >= 0.0 && a.tolerance.is_finite()) {
        return Err(CliError::Usage(format!("tolerance {} must be a finite nonnegative number", a.tolerance)));
    }
    let field = load_field(&a.field)?;
    let analytic = analytic_of(&field, &a.poly, &a.cutoff)?;
    let emp = scan(&field, a.poly.flavor.into(), &a.poly, &a.scan)?;
    let verdict = compare(&analytic.enclosures(), &emp, a.tolerance);
    let doc = comparison_report(analytic, empirical_report(&emp), verdict);
    Ok(Outcome {
        stdout: render::comparison(&doc, a.output.format),
        code: if doc.passed { EXIT_OK } else { EXIT_MISMATCH },
    })
}
