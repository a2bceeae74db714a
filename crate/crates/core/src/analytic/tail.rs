//! Upper bounds for sum over rational primes p > M of k p^-t.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dusart's bound pi(x) <= x/ln x (1 + 1.2762/ln x), valid for x > 1.
const DUSART: (i64, i64) = (12762, 10000);

/// Rational lower bound for ln m.
fn ln_lower(m: u64) -> BigRational {
    let l = (m as f64).ln();
    // f64 ln is within a few ulps; a relative margin of 1e-12 is far beyond that.
    let shaded = l * (1.0 - 1e-12) - 1e-300;
    BigRational::from_float(shaded.max(0.0)).unwrap_or_else(BigRational::zero)
}

fn pow_neg(m: u64, e: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(m).pow(e))
}

/// Upper bound for sum_{p > m} p^-t; `prime_count` is pi(m). Requires t >= 2.
pub fn prime_tail_bound(m: u64, t: u32, prime_count: u64) -> BigRational {
    assert!(t >= 2, "tail exponent must exceed 1");
    let m = m.max(1);
    let tm1 = BigRational::from_integer(BigInt::from(t - 1));
    // Integer sum: sum_{n > m} n^-t <= m^(1-t)/(t-1).
    let integral = pow_neg(m, t - 1) / &tm1;
    if m < 3 {
        return integral;
    }
    let ln = ln_lower(m);
    if ln.is_zero() {
        return integral;
    }
    // Stieltjes integration by parts against pi(x):
    // sum_{p>m} p^-t = -pi(m) m^-t + t int_m^inf pi(x) x^(-t-1) dx,
    // and x/ln x (1 + c/ln x) <= x/ln m (1 + c/ln m) on x >= m.
    let c = BigRational::new(DUSART.0.into(), DUSART.1.into());
    let factor = BigRational::from_integer(BigInt::from(t)) / &ln * (BigRational::one() + c / &ln);
    let dusart = factor * &integral - BigRational::from_integer(BigInt::from(prime_count)) * pow_neg(m, t);
    if dusart < integral {
        dusart
    } else {
        integral
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integer::primes_up_to;
    use num_traits::ToPrimitive;

    #[test]
    fn bounds_exceed_partial_sums() {
        let primes = primes_up_to(200_000);
        for &m in &[1u64, 2, 3, 10, 100, 1000, 10_000, 50_000] {
            let count = primes.iter().filter(|&&p| p <= m).count() as u64;
            for t in 2..=5u32 {
                let bound = prime_tail_bound(m, t, count).to_f64().unwrap();
                // Partial sum over (m, 2e5] is a lower bound of the true tail.
                let partial: f64 = primes.iter().filter(|&&p| p > m).map(|&p| (p as f64).powi(-(t as i32))).sum();
                assert!(bound >= partial, "m={m} t={t}: {bound} < {partial}");
            }
        }
    }

    #[test]
    fn width_at_large_cutoff() {
        let count = primes_up_to(100_000).len() as u64;
        let b = prime_tail_bound(100_000, 2, count).to_f64().unwrap();
        assert!(b < 1e-6, "{b}");
        assert!(b > 5e-7);
        let b3 = prime_tail_bound(10_000, 3, 1229).to_f64().unwrap();
        assert!(b3 < 1e-9);
    }
}
