//! Densities and moments of Eisenstein and shifted Eisenstein polynomials over
//! monogenic number fields, computed exactly and measured empirically.

pub mod analytic;
pub mod eisenstein;
pub mod error;
pub mod field;
pub mod integer;
pub mod lab;
pub mod report;
pub mod scalar;

use num_rational::BigRational;

pub use analytic::{DensityValue, Enclosure, LocalDensitySystem};
pub use eisenstein::{CoefficientTuple, EisensteinWitness, Flavor};
pub use error::{Error, Result};
pub use field::{AlgebraicInteger, NumberField, PrimeIdeal};
pub use lab::{compare, exhaustive_scan, monte_carlo_scan, BoxSpec, ComparisonVerdict, EmpiricalReport, ScanConfig};
pub use report::{analytic_report, empirical_report, Report};
pub use scalar::{Precision, Scalar};

/// System over exact rationals with outward-rounded enclosures.
pub type ExactSystem = LocalDensitySystem<BigRational>;
/// Fast approximate system in double precision.
pub type F64System = LocalDensitySystem<f64>;
/// Rational interval containing an exact value.
pub type EnclosedValue = Enclosure<BigRational>;
