//! Monogenic number fields: arithmetic in Z[theta], prime splitting and ideal lattices.

mod element;
mod ideal;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::integer::{factor_integer, FactorConfig, FpPoly, IntMatrix};

pub use element::AlgebraicInteger;
pub use ideal::{IdealLattice, PrimeIdeal, PrimeIdealData, SplitCache, Valuation, POWER_CACHE};
pub use parse::{format_polynomial, parse_descriptor, parse_polynomial};

/// Outcome of the irreducibility screen run at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Proven,
    /// No factor was found but the degree-pattern screen was inconclusive.
    Unverified,
}

/// K = Q(theta) with theta a root of a monic irreducible integer polynomial,
/// working in the order Z[theta] with power basis 1, theta, ..., theta^(k-1).
pub struct NumberField {
    poly: Vec<BigInt>,
    disc: BigInt,
    irreducibility: Irreducibility,
    /// theta^i in the power basis for 0 <= i < 2k - 1.
    theta_powers: Vec<Vec<BigInt>>,
    factor_config: FactorConfig,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.label())
    }
}

/// Discriminant of an integer polynomial via the Sylvester matrix of f and f'.
pub(crate) fn integer_poly_discriminant(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    if n == 0 {
        return BigInt::zero();
    }
    if n == 1 {
        return BigInt::one();
    }
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
    let m = n - 1;
    let size = n + m;
    let mut syl = IntMatrix::zeros(size, size);
    for i in 0..m {
        for (j, c) in f.iter().rev().enumerate() {
            syl[(i, i + j)] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in df.iter().rev().enumerate() {
            syl[(m + i, i + j)] = c.clone();
        }
    }
    let res = syl.determinant();
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let lead = f.last().unwrap();
    let (q, r) = (sign * res).div_rem(lead);
    assert!(r.is_zero(), "resultant not divisible by the leading coefficient");
    q
}

fn divisors(n: &BigInt, cfg: &FactorConfig) -> Result<Vec<BigInt>> {
    let mut out = vec![BigInt::one()];
    for (p, e) in factor_integer(n, cfg)? {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    Ok(out)
}

fn eval_int(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

const SCREEN_PRIMES: usize = 40;
const MAX_DIVISORS: usize = 1 << 16;

impl NumberField {
    /// Builds the field from integer coefficients, constant term first.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let mut poly = coeffs;
        while poly.last().is_some_and(|c| c.is_zero()) {
            poly.pop();
        }
        if poly.len() < 2 {
            return Err(Error::Parse("defining polynomial must have degree at least 1".into()));
        }
        if !poly.last().unwrap().is_one() {
            return Err(Error::InvalidField(format!(
                "{} is not monic",
                format_polynomial(&poly)
            )));
        }
        let k = poly.len() - 1;
        let disc = integer_poly_discriminant(&poly);
        if disc.is_zero() {
            return Err(Error::InvalidField(format!(
                "{} has a repeated factor",
                format_polynomial(&poly)
            )));
        }
        let mut theta_powers: Vec<Vec<BigInt>> = Vec::with_capacity(2 * k - 1);
        let mut cur = vec![BigInt::zero(); k];
        cur[0] = BigInt::one();
        for _ in 0..(2 * k - 1) {
            theta_powers.push(cur.clone());
            // Multiply by theta and reduce with theta^k = -(c_0 + ... + c_{k-1} theta^{k-1}).
            let top = cur[k - 1].clone();
            for j in (1..k).rev() {
                cur[j] = cur[j - 1].clone() - &top * &poly[j];
            }
            cur[0] = -&top * &poly[0];
        }
        let mut field = NumberField {
            poly,
            disc,
            irreducibility: Irreducibility::Proven,
            theta_powers,
            factor_config: FactorConfig::default(),
        };
        field.irreducibility = field.screen_irreducibility()?;
        Ok(field)
    }

    /// Parses `x^2+1` style text.
    pub fn from_str_poly(src: &str) -> Result<Self> {
        NumberField::new(parse_polynomial(src)?)
    }

    /// Parses a descriptor file body (`f = <poly>`).
    pub fn from_descriptor(text: &str) -> Result<Self> {
        NumberField::new(parse_descriptor(text)?)
    }

    pub fn with_factor_config(mut self, cfg: FactorConfig) -> Self {
        self.factor_config = cfg;
        self
    }

    /// Rational-root test plus degree patterns modulo primes not dividing the
    /// discriminant; a reducible monic f factors with matching degrees mod every p.
    fn screen_irreducibility(&self) -> Result<Irreducibility> {
        let k = self.degree();
        if k == 1 {
            return Ok(Irreducibility::Proven);
        }
        let c0 = &self.poly[0];
        if c0.is_zero() {
            return Err(Error::InvalidField(format!("{} has the root 0", self.label())));
        }
        if let Ok(divs) = divisors(c0, &self.factor_config) {
            if divs.len() <= MAX_DIVISORS {
                for d in divs {
                    for r in [d.clone(), -d] {
                        if eval_int(&self.poly, &r).is_zero() {
                            return Err(Error::InvalidField(format!(
                                "{} has the rational root {r}",
                                self.label()
                            )));
                        }
                    }
                }
            }
        }
        let mut possible: BTreeSet<usize> = (0..=k).collect();
        let mut used = 0;
        let mut p = 2u64;
        while used < SCREEN_PRIMES && possible.len() > 2 {
            if crate::integer::is_prime_u64(p) && !(&self.disc % p).is_zero() {
                used += 1;
                let mut sums = BTreeSet::from([0usize]);
                for (g, m) in self.reduce_mod_p(p).factor() {
                    for _ in 0..m {
                        let deg = g.degree().unwrap();
                        sums = sums.iter().flat_map(|&s| [s, s + deg]).collect();
                    }
                }
                possible = possible.intersection(&sums).copied().collect();
            }
            p += 1;
        }
        Ok(if possible.len() <= 2 {
            Irreducibility::Proven
        } else {
            Irreducibility::Unverified
        })
    }

    /// Field degree k.
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    /// Defining polynomial, constant term first.
    pub fn defining_poly(&self) -> &[BigInt] {
        &self.poly
    }

    /// Discriminant of the defining polynomial.
    pub fn poly_discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    pub fn factor_config(&self) -> &FactorConfig {
        &self.factor_config
    }

    /// Defining polynomial rendered as text, e.g. `x^2+1`.
    pub fn label(&self) -> String {
        format_polynomial(&self.poly)
    }

    /// f reduced modulo p.
    pub fn reduce_mod_p(&self, p: u64) -> FpPoly {
        let m = BigInt::from(p);
        FpPoly::new(
            p,
            self.poly
                .iter()
                .map(|c| c.mod_floor(&m).to_u64().unwrap())
                .collect(),
        )
    }

    pub(crate) fn theta_power(&self, i: usize) -> &[BigInt] {
        &self.theta_powers[i]
    }

    /// Candidate check used by tests: is `|n|` divisible by a prime where Z[theta] may fail to be maximal.
    pub fn may_be_non_maximal_at(&self, p: u64) -> bool {
        let p2 = BigInt::from(p) * p;
        (&self.disc % p2).is_zero()
    }

    pub fn abs_disc(&self) -> BigInt {
        self.disc.abs()
    }
}
