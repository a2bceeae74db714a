//! Local densities of the Eisenstein conditions and the moments of their
//! local-to-global systems, with rigorous truncation enclosures.

mod interval;
mod partitions;
mod tail;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::eisenstein::Flavor;
use crate::error::{Error, Result};
use crate::field::{NumberField, PrimeIdeal, PrimeIdealData};
use crate::integer::primes_up_to;
use crate::scalar::{Precision, Scalar};

pub use interval::Enclosure;
pub use partitions::{partition_shapes, PartitionShape, MAX_ORDER};
pub use tail::prime_tail_bound;

/// (N - 1)^2 / N^(d+2) for plain, (N - 1)^2 / N^(d+1) for shifted.
pub fn local_density_for_norm(norm: &BigInt, d: usize, flavor: Flavor) -> BigRational {
    let extra = match flavor {
        Flavor::Plain => 2,
        Flavor::Shifted => 1,
    };
    let m1 = norm - 1;
    BigRational::new(&m1 * &m1, norm.pow((d + extra) as u32))
}

pub fn local_density(prime: &PrimeIdealData, d: usize, flavor: Flavor) -> BigRational {
    local_density_for_norm(prime.norm(), d, flavor)
}

/// Exponent t with s_P <= N(P)^-t.
pub fn tail_exponent(d: usize, flavor: Flavor) -> u32 {
    match flavor {
        Flavor::Plain => d as u32,
        Flavor::Shifted => d as u32 - 1,
    }
}

#[derive(Debug, Clone)]
pub struct DensityEntry<T> {
    /// Absent for hand-built systems.
    pub prime: Option<PrimeIdeal>,
    pub value: T,
}

/// Local densities for every prime up to a cutoff, plus what is needed to
/// bound the primes beyond it.
#[derive(Debug, Clone)]
pub struct LocalDensitySystem<T> {
    label: String,
    field_degree: usize,
    d: usize,
    flavor: Flavor,
    cutoff: u64,
    prime_count: u64,
    entries: Vec<DensityEntry<T>>,
    tail_exponent: u32,
    tail_enabled: bool,
    precision: Precision,
}

/// Density of a system: an enclosure, or exactly 1 when the local densities
/// are not summable (shifted, d = 2).
#[derive(Debug, Clone, PartialEq)]
pub enum DensityValue<T> {
    Enclosed(Enclosure<T>),
    /// `partial` encloses 1 - prod(1 - s) over the primes up to the cutoff.
    Divergent { partial: Enclosure<T> },
}

impl<T: Scalar> DensityValue<T> {
    pub fn enclosure(&self) -> Enclosure<T> {
        match self {
            DensityValue::Enclosed(e) => e.clone(),
            DensityValue::Divergent { .. } => Enclosure::point(T::one()),
        }
    }
}

/// Builds the exact-rational system with the default precision.
pub fn build_system(field: &NumberField, d: usize, flavor: Flavor, cutoff: u64) -> Result<LocalDensitySystem<BigRational>> {
    build_system_with(field, d, flavor, cutoff, Precision::default())
}

pub fn build_system_with<T: Scalar>(
    field: &NumberField,
    d: usize,
    flavor: Flavor,
    cutoff: u64,
    precision: Precision,
) -> Result<LocalDensitySystem<T>> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("degree d = {d} must be at least 2")));
    }
    if cutoff < 1 {
        return Err(Error::InvalidArgument("cutoff M must be at least 1".into()));
    }
    let entries = field
        .primes_up_to(cutoff)?
        .into_iter()
        .map(|p| DensityEntry {
            value: T::from_rational(&local_density(&p, d, flavor)),
            prime: Some(p),
        })
        .collect();
    Ok(LocalDensitySystem {
        label: field.label(),
        field_degree: field.degree(),
        d,
        flavor,
        cutoff,
        prime_count: primes_up_to(cutoff).len() as u64,
        entries,
        tail_exponent: tail_exponent(d, flavor),
        tail_enabled: true,
        precision,
    })
}

fn shifted_d2_reason() -> String {
    "shifted Eisenstein densities (N-1)^2/N^3 are not summable for d = 2; the density is 1 and no moment exists".into()
}

impl<T: Scalar> LocalDensitySystem<T> {
    /// A finite system of the given values with no tail.
    pub fn from_values(values: Vec<T>, precision: Precision) -> Self {
        LocalDensitySystem {
            label: "custom".into(),
            field_degree: 1,
            d: 2,
            flavor: Flavor::Plain,
            cutoff: 0,
            prime_count: 0,
            entries: values.into_iter().map(|value| DensityEntry { prime: None, value }).collect(),
            tail_exponent: 2,
            tail_enabled: false,
            precision,
        }
    }

    /// Same entries, treating the system as complete (no primes beyond the cutoff).
    pub fn without_tail(mut self) -> Self {
        self.tail_enabled = false;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn entries(&self) -> &[DensityEntry<T>] {
        &self.entries
    }

    pub fn tail_exponent(&self) -> u32 {
        self.tail_exponent
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn diverges(&self) -> bool {
        self.tail_enabled && self.tail_exponent <= 1
    }

    fn check_summable(&self, quantity: &'static str) -> Result<()> {
        if self.diverges() {
            return Err(Error::TailDiverges {
                quantity,
                reason: shifted_d2_reason(),
            });
        }
        Ok(())
    }

    /// Upper bound for the sum of s^j over the primes beyond the cutoff.
    pub fn tail_bound(&self, j: u32) -> T {
        if !self.tail_enabled {
            return T::zero();
        }
        let t = self.tail_exponent * j;
        let b = prime_tail_bound(self.cutoff, t, self.prime_count) * BigInt::from(self.field_degree);
        T::from_rational(&b).round_up(self.precision)
    }

    fn one_minus_product(&self) -> Enclosure<T> {
        let prec = self.precision;
        let (mut lo, mut hi) = (T::one(), T::one());
        for e in &self.entries {
            let c = T::one() - e.value.clone();
            lo = (lo * c.clone()).round_down(prec);
            hi = (hi * c).round_up(prec);
        }
        Enclosure::new(T::one() - hi, T::one() - lo)
    }

    pub fn density(&self) -> DensityValue<T> {
        let partial = self.one_minus_product();
        if self.diverges() {
            return DensityValue::Divergent { partial };
        }
        let tail = self.tail_bound(1);
        let prod_lo = T::one() - partial.hi.clone();
        let hi = if tail >= T::one() {
            T::one()
        } else {
            (T::one() - (prod_lo * (T::one() - tail)).round_down(self.precision)).round_up(self.precision)
        };
        let hi = if hi > T::one() { T::one() } else { hi };
        DensityValue::Enclosed(Enclosure::new(partial.lo, hi))
    }

    /// sum of s^j over the entries, for j = 1..=n.
    pub fn power_sums(&self, n: usize) -> Vec<Enclosure<T>> {
        let prec = self.precision;
        let mut lo = vec![T::zero(); n];
        let mut hi = vec![T::zero(); n];
        for e in &self.entries {
            let (mut plo, mut phi) = (T::one(), T::one());
            for j in 0..n {
                plo = (plo * e.value.clone()).round_down(prec);
                phi = (phi * e.value.clone()).round_up(prec);
                lo[j] = (lo[j].clone() + plo.clone()).round_down(prec);
                hi[j] = (hi[j].clone() + phi.clone()).round_up(prec);
            }
        }
        lo.into_iter().zip(hi).map(|(l, h)| Enclosure::new(l, h)).collect()
    }

    pub fn mean(&self) -> Result<Enclosure<T>> {
        self.check_summable("mean")?;
        let s1 = self.power_sums(1).remove(0);
        let hi = (s1.hi + self.tail_bound(1)).round_up(self.precision);
        Ok(Enclosure::new(s1.lo, hi))
    }

    /// e_1..e_n of the entry values from power sums by Newton's identities.
    pub fn elementary_symmetric(&self, n: usize) -> Vec<Enclosure<T>> {
        let prec = self.precision;
        let p = self.power_sums(n);
        let mut e = vec![Enclosure::point(T::one())];
        for l in 1..=n {
            let mut acc = Enclosure::zero();
            for i in 1..=l {
                let term = e[l - i].mul(&p[i - 1], prec);
                acc = if i % 2 == 1 { acc.add(&term, prec) } else { acc.sub(&term, prec) };
            }
            let inv = Enclosure::point(T::one() / T::from_u64(l as u64));
            e.push(acc.mul(&inv, prec));
        }
        e
    }

    /// E[X^n] for X the number of primes whose condition holds.
    pub fn nth_moment(&self, n: usize) -> Result<Enclosure<T>> {
        self.check_summable("moment")?;
        let prec = self.precision;
        let shapes = partition_shapes(n)?;
        let e = self.elementary_symmetric(n);
        let tail = self.tail_bound(1);
        let s_hi = (self.power_sums(1)[0].hi.clone() + tail.clone()).round_up(prec);
        let mut total = Enclosure::zero();
        let mut tail_total = T::zero();
        for shape in shapes {
            let l = shape.length;
            let weight = shape.multiplicity * factorial(l);
            let w = Enclosure::point(T::from_ratio(&weight, &BigInt::one()));
            total = total.add(&w.mul(&e[l], prec), prec);
            if tail > T::zero() {
                let mut t = (w.hi.clone() * tail.clone()).round_up(prec);
                for _ in 1..l {
                    t = (t * s_hi.clone()).round_up(prec);
                }
                tail_total = (tail_total + t).round_up(prec);
            }
        }
        let lo = if total.lo < T::zero() { T::zero() } else { total.lo };
        Ok(Enclosure::new(lo, (total.hi + tail_total).round_up(prec)))
    }

    /// sum s - sum s^2.
    pub fn variance(&self) -> Result<Enclosure<T>> {
        self.check_summable("variance")?;
        let prec = self.precision;
        let p = self.power_sums(2);
        let lo = (p[0].lo.clone() - p[1].hi.clone()).round_down(prec);
        let hi = (p[0].hi.clone() + self.tail_bound(1) - p[1].lo.clone()).round_up(prec);
        Ok(Enclosure::new(lo, hi))
    }

    /// rho^-1 (mu^2 - sum s^2 + mu) - 2 mu_T mu / rho + mu_T^2.
    pub fn restricted_variance(
        &self,
        rho: &Enclosure<T>,
        mu: &Enclosure<T>,
        mu_t: &Enclosure<T>,
    ) -> Result<Enclosure<T>> {
        self.check_summable("restricted variance")?;
        let prec = self.precision;
        if rho.lo <= T::zero() {
            return Err(Error::DensityZero);
        }
        let s2 = self.power_sums(2).remove(1);
        let s2 = Enclosure::new(s2.lo, (s2.hi + self.tail_bound(2)).round_up(prec));
        let second = mu.mul(mu, prec).sub(&s2, prec).add(mu, prec);
        let cross = mu_t.mul(mu, prec).div(rho, prec)?.scale(2, prec);
        let v = second
            .div(rho, prec)?
            .sub(&cross, prec)
            .add(&mu_t.mul(mu_t, prec), prec);
        let lo = if v.lo < T::zero() { T::zero() } else { v.lo.clone() };
        let hi = if v.hi < lo.clone() { lo.clone() } else { v.hi };
        Ok(Enclosure::new(lo, hi))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * i)
}

/// mu_n / rho.
pub fn restricted_moment<T: Scalar>(mu_n: &Enclosure<T>, rho: &Enclosure<T>, precision: Precision) -> Result<Enclosure<T>> {
    mu_n.div(rho, precision)
}

/// n-th central moment from raw moments m_1..m_n by binomial expansion.
pub fn central_moment<T: Scalar>(raw: &[Enclosure<T>], n: usize, precision: Precision) -> Enclosure<T> {
    assert!(n <= raw.len(), "need raw moments up to order {n}");
    let neg_mean = Enclosure::zero().sub(&raw[0], precision);
    let mut total = Enclosure::zero();
    let mut binom = BigInt::one();
    for i in 0..=n {
        let m_i = if i == 0 { Enclosure::point(T::one()) } else { raw[i - 1].clone() };
        let mut term = m_i.mul(&Enclosure::point(T::from_ratio(&binom, &BigInt::one())), precision);
        for _ in i..n {
            term = term.mul(&neg_mean, precision);
        }
        total = total.add(&term, precision);
        binom = binom * (n - i) / (i + 1);
    }
    total
}
