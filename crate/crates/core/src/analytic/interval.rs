use crate::error::{Error, Result};
use crate::scalar::{Precision, Scalar};

/// Closed interval [lo, hi] known to contain an exact value.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure<T> {
    pub lo: T,
    pub hi: T,
}

fn min2<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

fn max2<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

impl<T: Scalar> Enclosure<T> {
    pub fn new(lo: T, hi: T) -> Self {
        debug_assert!(lo <= hi, "empty enclosure {lo:?} > {hi:?}");
        Enclosure { lo, hi }
    }

    pub fn point(x: T) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Enclosure::point(T::zero())
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / (T::one() + T::one())
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, o: &Self, prec: Precision) -> Self {
        Enclosure::new(
            (self.lo.clone() + o.lo.clone()).round_down(prec),
            (self.hi.clone() + o.hi.clone()).round_up(prec),
        )
    }

    pub fn sub(&self, o: &Self, prec: Precision) -> Self {
        Enclosure::new(
            (self.lo.clone() - o.hi.clone()).round_down(prec),
            (self.hi.clone() - o.lo.clone()).round_up(prec),
        )
    }

    pub fn mul(&self, o: &Self, prec: Precision) -> Self {
        let c = [
            self.lo.clone() * o.lo.clone(),
            self.lo.clone() * o.hi.clone(),
            self.hi.clone() * o.lo.clone(),
            self.hi.clone() * o.hi.clone(),
        ];
        let lo = c.iter().cloned().reduce(min2).unwrap();
        let hi = c.into_iter().reduce(max2).unwrap();
        Enclosure::new(lo.round_down(prec), hi.round_up(prec))
    }

    /// Multiplication by a nonnegative integer.
    pub fn scale(&self, c: u64, prec: Precision) -> Self {
        let c = T::from_u64(c);
        Enclosure::new(
            (self.lo.clone() * c.clone()).round_down(prec),
            (self.hi.clone() * c).round_up(prec),
        )
    }

    /// Quotient by an interval with strictly positive lower end.
    pub fn div(&self, o: &Self, prec: Precision) -> Result<Self> {
        if o.lo <= T::zero() {
            return Err(Error::DensityZero);
        }
        let c = [
            self.lo.clone() / o.lo.clone(),
            self.lo.clone() / o.hi.clone(),
            self.hi.clone() / o.lo.clone(),
            self.hi.clone() / o.hi.clone(),
        ];
        let lo = c.iter().cloned().reduce(min2).unwrap();
        let hi = c.into_iter().reduce(max2).unwrap();
        Ok(Enclosure::new(lo.round_down(prec), hi.round_up(prec)))
    }

    /// Clamps both ends into [lo_bound, hi_bound].
    pub fn clamp(&self, lo_bound: &T, hi_bound: &T) -> Self {
        let lo = min2(max2(self.lo.clone(), lo_bound.clone()), hi_bound.clone());
        let hi = min2(max2(self.hi.clone(), lo_bound.clone()), hi_bound.clone());
        Enclosure::new(lo, hi)
    }
}
