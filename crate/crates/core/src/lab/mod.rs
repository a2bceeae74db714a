//! Ground truth from coefficient boxes: exhaustive enumeration and seeded
//! Monte Carlo sampling of witness counts.

mod compare;
mod scan;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::eisenstein::{
    candidate_primes_eisenstein_cached, candidate_primes_shifted_cached, is_p_eisenstein, shifted_witness,
    CoefficientTuple, EisensteinWitness, Flavor,
};
use crate::error::{Error, Result};
use crate::field::{NumberField, SplitCache};

pub use compare::{compare, ComparisonRow, ComparisonVerdict, RowStatus, SE_MULTIPLIER};
pub use scan::{exhaustive_scan, monte_carlo_scan, ScanConfig, DEFAULT_BUDGET, MC_CHUNK};

/// Coefficient box: every coordinate of every a_i ranges over [-H, H).
#[derive(Clone, Copy)]
pub struct BoxSpec<'a> {
    field: &'a NumberField,
    h: u64,
    d: usize,
}

impl fmt::Debug for BoxSpec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoxSpec({}, H={}, d={})", self.field.label(), self.h, self.d)
    }
}

impl<'a> BoxSpec<'a> {
    pub fn new(field: &'a NumberField, h: u64, d: usize) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidArgument("box half-width H must be at least 1".into()));
        }
        if d < 2 {
            return Err(Error::InvalidArgument(format!("degree d = {d} must be at least 2")));
        }
        if h > i64::MAX as u64 / 4 {
            return Err(Error::InvalidArgument(format!("H = {h} is too large")));
        }
        Ok(BoxSpec { field, h, d })
    }

    pub fn field(&self) -> &'a NumberField {
        self.field
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of choices for one coefficient, (2H)^k; `None` on overflow.
    pub fn elements(&self) -> Option<u128> {
        (2 * self.h as u128).checked_pow(self.field.degree() as u32)
    }

    /// Number of tuples, (2H)^(k(d+1)); `None` on overflow.
    pub fn total(&self) -> Option<u128> {
        self.elements()?.checked_pow(self.d as u32 + 1)
    }

    /// Coordinates of the element with the given index; coordinate 0 varies slowest.
    pub fn element(&self, mut index: u128) -> Vec<i64> {
        let k = self.field.degree();
        let side = 2 * self.h as u128;
        let mut out = vec![0i64; k];
        for j in (0..k).rev() {
            out[j] = (index % side) as i64 - self.h as i64;
            index /= side;
        }
        out
    }

    pub fn tuple(&self, elems: &[Vec<i64>]) -> CoefficientTuple {
        let flat: Vec<i64> = elems.iter().flatten().copied().collect();
        CoefficientTuple::from_coords(self.field, &flat).expect("box tuple has d+1 coefficients")
    }
}

/// Number of primes at which f satisfies the flavor's condition, with witnesses.
pub fn witness_count(
    cache: &mut SplitCache<'_>,
    f: &CoefficientTuple,
    flavor: Flavor,
) -> Result<(u32, Vec<EisensteinWitness>)> {
    let mut witnesses = Vec::new();
    match flavor {
        Flavor::Plain => {
            for p in candidate_primes_eisenstein_cached(cache, f)? {
                if is_p_eisenstein(f, &p) {
                    witnesses.push(EisensteinWitness { prime: p, shift: None });
                }
            }
        }
        Flavor::Shifted => {
            let field = cache.field();
            for p in candidate_primes_shifted_cached(cache, f)? {
                if let Some(w) = shifted_witness(field, f, &p) {
                    witnesses.push(w);
                }
            }
        }
    }
    Ok((witnesses.len() as u32, witnesses))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScanMode {
    Exhaustive,
    #[serde(rename = "montecarlo")]
    MonteCarlo { samples: u64, seed: u64 },
}

/// Histogram of witness counts over the scanned tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessHistogram {
    /// `counts[w]` tuples had exactly w witnesses.
    pub counts: Vec<u128>,
}

impl WitnessHistogram {
    pub fn new() -> Self {
        WitnessHistogram { counts: vec![0] }
    }

    pub fn add(&mut self, w: usize, n: u128) {
        if self.counts.len() <= w {
            self.counts.resize(w + 1, 0);
        }
        self.counts[w] += n;
    }

    pub fn merge(&mut self, other: &WitnessHistogram) {
        for (w, &n) in other.counts.iter().enumerate() {
            self.add(w, n);
        }
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    pub fn in_target(&self) -> u128 {
        self.total() - self.counts[0]
    }

    /// sum over tuples of w^j.
    pub fn power_sum(&self, j: u32) -> BigInt {
        self.counts
            .iter()
            .enumerate()
            .map(|(w, &n)| BigInt::from(w).pow(j) * BigInt::from(n))
            .sum()
    }
}

impl Default for WitnessHistogram {
    fn default() -> Self {
        Self::new()
    }
}

/// One derived empirical quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalQuantity {
    pub name: String,
    /// Exact ratio of box counts; `None` when the quantity is undefined.
    pub value: Option<BigRational>,
    /// Present for Monte Carlo runs.
    pub standard_error: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct EmpiricalReport {
    pub field: String,
    pub d: usize,
    pub flavor: Flavor,
    pub h: u64,
    pub mode: ScanMode,
    pub order: usize,
    pub histogram: WitnessHistogram,
}

fn ratio(a: BigInt, b: u128) -> BigRational {
    BigRational::new(a, BigInt::from(b))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl EmpiricalReport {
    pub fn total(&self) -> u128 {
        self.histogram.total()
    }

    pub fn in_target(&self) -> u128 {
        self.histogram.in_target()
    }

    fn is_sampled(&self) -> bool {
        matches!(self.mode, ScanMode::MonteCarlo { .. })
    }

    /// Raw moments E[w^j] for j = 0..=upto over `n` tuples.
    fn moments(&self, n: u128, upto: u32) -> Vec<BigRational> {
        (0..=upto).map(|j| ratio(self.histogram.power_sum(j), n)).collect()
    }

    /// density, mean, restricted_mean, moment_j, restricted_moment_j (2 <= j <= order),
    /// variance, restricted_variance.
    pub fn quantities(&self) -> Vec<EmpiricalQuantity> {
        let n = self.total();
        let hits = self.in_target();
        let order = self.order.max(1) as u32;
        let upto = (2 * order).max(4);
        let sampled = self.is_sampled();
        let all = self.moments(n, upto);
        let cond = (hits > 0).then(|| self.moments(hits, upto));
        let se = |var: f64, count: u128| sampled.then(|| (var.max(0.0) / count as f64).sqrt());
        let mut out = Vec::new();

        let density = ratio(BigInt::from(hits), n);
        let p = to_f64(&density);
        out.push(EmpiricalQuantity {
            name: "density".into(),
            standard_error: se(p * (1.0 - p), n),
            value: Some(density),
        });

        let raw = |m: &[BigRational], j: usize, count: u128| {
            let var = to_f64(&m[2 * j]) - to_f64(&m[j]).powi(2);
            (m[j].clone(), se(var, count))
        };
        let (v, e) = raw(&all, 1, n);
        out.push(EmpiricalQuantity { name: "mean".into(), value: Some(v), standard_error: e });
        match &cond {
            Some(c) => {
                let (v, e) = raw(c, 1, hits);
                out.push(EmpiricalQuantity { name: "restricted_mean".into(), value: Some(v), standard_error: e });
            }
            None => out.push(EmpiricalQuantity { name: "restricted_mean".into(), value: None, standard_error: None }),
        }
        for j in 2..=order as usize {
            let (v, e) = raw(&all, j, n);
            out.push(EmpiricalQuantity { name: format!("moment_{j}"), value: Some(v), standard_error: e });
            let (v, e) = match &cond {
                Some(c) => {
                    let (v, e) = raw(c, j, hits);
                    (Some(v), e)
                }
                None => (None, None),
            };
            out.push(EmpiricalQuantity { name: format!("restricted_moment_{j}"), value: v, standard_error: e });
        }

        // Variance of the sample variance by the delta method: (m4 - m2^2)/N with central moments.
        let central = |m: &[BigRational], count: u128| {
            let mu = &m[1];
            let var = &m[2] - mu * mu;
            let three = BigRational::from_integer(3.into());
            let six = BigRational::from_integer(6.into());
            let four = BigRational::from_integer(4.into());
            let m4 = &m[4] - &four * mu * &m[3] + &six * mu * mu * &m[2] - &three * mu * mu * mu * mu;
            let v = to_f64(&var);
            (var, se(to_f64(&m4) - v * v, count))
        };
        let (v, e) = central(&all, n);
        out.push(EmpiricalQuantity { name: "variance".into(), value: Some(v), standard_error: e });
        match &cond {
            Some(c) => {
                let (v, e) = central(c, hits);
                out.push(EmpiricalQuantity { name: "restricted_variance".into(), value: Some(v), standard_error: e });
            }
            None => out.push(EmpiricalQuantity { name: "restricted_variance".into(), value: None, standard_error: None }),
        }
        out
    }

    pub fn quantity(&self, name: &str) -> Option<EmpiricalQuantity> {
        self.quantities().into_iter().find(|q| q.name == name)
    }
}

#[cfg(test)]
mod tests;
