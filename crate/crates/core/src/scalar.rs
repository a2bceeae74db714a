//! Scalar types the analytic engine can run on.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

/// How far exact rationals may grow before being rounded to a dyadic grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Exact,
    /// Round to multiples of 2^-bits once denominators exceed 2^bits.
    Bits(u32),
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Bits(256)
    }
}

/// Ordered field elements with directed rounding.
///
/// For floats the directed roundings are the identity, so float enclosures are
/// approximate; rationals round outward and stay rigorous.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static {
    const EXACT: bool;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;

    fn from_rational(x: &BigRational) -> Self {
        Self::from_ratio(x.numer(), x.denom())
    }

    fn from_u64(n: u64) -> Self {
        Self::from_ratio(&BigInt::from(n), &BigInt::one())
    }

    fn as_f64(&self) -> f64;

    /// Exact rational value, when the type can express one.
    fn to_rational(&self) -> Option<BigRational>;

    fn round_down(self, prec: Precision) -> Self;

    fn round_up(self, prec: Precision) -> Self;
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
                ToPrimitive::to_f64(&BigRational::new(num.clone(), den.clone())).unwrap_or(f64::NAN) as $t
            }

            fn as_f64(&self) -> f64 {
                *self as f64
            }

            fn to_rational(&self) -> Option<BigRational> {
                BigRational::from_float(*self)
            }

            fn round_down(self, _: Precision) -> Self {
                self
            }

            fn round_up(self, _: Precision) -> Self {
                self
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

fn round_dyadic(x: BigRational, bits: u32, up: bool) -> BigRational {
    if x.denom().bits() <= bits as u64 {
        return x;
    }
    let scaled: BigInt = x.numer() << bits;
    let (q, r) = scaled.div_mod_floor(x.denom());
    let q = if up && !r.is_zero() { q + 1 } else { q };
    BigRational::new(q, BigInt::one() << bits)
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn round_down(self, prec: Precision) -> Self {
        match prec {
            Precision::Exact => self,
            Precision::Bits(b) => round_dyadic(self, b, false),
        }
    }

    fn round_up(self, prec: Precision) -> Self {
        match prec {
            Precision::Exact => self,
            Precision::Bits(b) => round_dyadic(self, b, true),
        }
    }
}
