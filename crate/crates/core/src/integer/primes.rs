//! Primality testing, sieving and integer factorization.
//!
//! Machine-word inputs take a `u64` fast path: Miller-Rabin with the first
//! twelve prime bases is deterministic below 2^64. Larger inputs run 64
//! rounds with fixed prime bases.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const BIG_ROUNDS: usize = 64;
const TRIAL_LIMIT: u64 = 1 << 12;

/// Budget knobs for [`factor_integer`].
#[derive(Debug, Clone)]
pub struct FactorConfig {
    /// Pollard-rho iterations spent on one cofactor before giving up.
    pub rho_budget: u64,
    /// Composite cofactors at or below this bound are retried until split.
    pub cofactor_bound: BigUint,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            rho_budget: 1 << 20,
            cofactor_bound: BigUint::one() << 96u32,
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for machine words.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &DETERMINISTIC_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 2u64;
    while out.len() < count {
        if is_prime_u64(c) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for a in first_primes(BIG_ROUNDS) {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality of a non-negative integer. Negative inputs are never prime.
pub fn is_prime(n: &BigInt) -> bool {
    match n.sign() {
        Sign::Minus | Sign::NoSign => false,
        Sign::Plus => is_prime_big(n.magnitude()),
    }
}

/// Sieve of Eratosthenes: all primes `<= limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Brent's variant of Pollard rho on a word-sized odd composite.
fn rho_u64(n: u64, c: u64, budget: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut y = 2 % n;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    let mut spent = 0u64;
    const BATCH: u64 = 64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += BATCH;
        }
        spent += r;
        if spent > budget {
            return None;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Brent's variant on a multiword composite, products batched between gcds.
fn rho_big(n: &BigUint, c: u64, budget: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;
    let mut spent = 0u64;
    const BATCH: u64 = 128;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        spent += r;
        if spent > budget {
            return None;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

/// Splits a composite into a nontrivial factor, or `None` when the budget ran out.
fn split_composite(n: &BigUint, cfg: &FactorConfig) -> Option<BigUint> {
    // rho is hopeless on q^e with q large, so peel perfect powers first.
    for e in 2..=n.bits() as u32 {
        let r = n.nth_root(e);
        if r.bits() < 2 {
            break;
        }
        if r.pow(e) == *n {
            return Some(r);
        }
    }
    let unlimited = *n <= cfg.cofactor_bound;
    let mut c = 1u64;
    loop {
        let found = match n.to_u64() {
            Some(small) => rho_u64(small, c, cfg.rho_budget).map(BigUint::from),
            None => rho_big(n, c, cfg.rho_budget),
        };
        if found.is_some() {
            return found;
        }
        c += 1;
        if !unlimited && c > 8 {
            return None;
        }
    }
}

/// Factors `|n|` into primes; output sorted by prime.
pub fn factor_integer(n: &BigInt, cfg: &FactorConfig) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let mut rest = n.magnitude().clone();
    let mut found: Vec<BigUint> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            found.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if !rest.is_one() {
        stack.push(rest);
    }
    while let Some(m) = stack.pop() {
        if is_prime_big(&m) {
            found.push(m);
            continue;
        }
        match split_composite(&m, cfg) {
            Some(f) => {
                let other = &m / &f;
                stack.push(f);
                stack.push(other);
            }
            None => {
                return Err(Error::FactorTooHard {
                    n: n.clone(),
                    cofactor: BigInt::from(m),
                })
            }
        }
    }
    found.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in found {
        let q = BigInt::from(q);
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

/// Distinct prime divisors of a nonzero machine word, ascending.
pub fn prime_divisors_u64(mut n: u64) -> Vec<u64> {
    assert!(n != 0);
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n && p <= TRIAL_LIMIT {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        let cfg = FactorConfig::default();
        for (q, _) in factor_integer(&BigInt::from(n), &cfg).expect("word-sized factoring cannot fail") {
            out.push(q.to_u64().unwrap());
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&big(2)));
        assert!(!is_prime(&big(561)));
        assert!(is_prime(&big(2147483647)));
        assert!(!is_prime(&big(0)));
        assert!(!is_prime(&big(1)));
        assert!(!is_prime(&big(-7)));
    }

    #[test]
    fn primality_beyond_u64() {
        // 2^89 - 1 is a Mersenne prime, 2^67 - 1 is not.
        let m89 = (BigInt::one() << 89u32) - 1;
        let m67 = (BigInt::one() << 67u32) - 1;
        assert!(is_prime(&m89));
        assert!(!is_prime(&m67));
    }

    #[test]
    fn primality_matches_sieve() {
        let sieve = primes_up_to(1_000_000);
        let mut flags = vec![false; 1_000_001];
        for &p in &sieve {
            flags[p as usize] = true;
        }
        for n in 0..=1_000_000u64 {
            assert_eq!(is_prime_u64(n), flags[n as usize], "n = {n}");
        }
    }

    #[test]
    fn factor_examples() {
        let cfg = FactorConfig::default();
        assert_eq!(factor_integer(&big(12), &cfg).unwrap(), vec![(big(2), 2), (big(3), 1)]);
        assert_eq!(factor_integer(&big(1), &cfg).unwrap(), vec![]);
        assert_eq!(factor_integer(&big(1000003), &cfg).unwrap(), vec![(big(1000003), 1)]);
        assert_eq!(factor_integer(&big(-90), &cfg).unwrap(), vec![(big(2), 1), (big(3), 2), (big(5), 1)]);
        assert!(factor_integer(&big(0), &cfg).is_err());
    }

    #[test]
    fn factor_semiprimes() {
        let cfg = FactorConfig::default();
        let p = BigInt::from(4294967291u64);
        let q = BigInt::from(4294967279u64);
        let n = &p * &q;
        assert_eq!(factor_integer(&n, &cfg).unwrap(), vec![(q.clone(), 1), (p.clone(), 1)]);
        let r = (BigInt::one() << 61u32) - 1;
        let n = &p * &r * &r;
        assert_eq!(factor_integer(&n, &cfg).unwrap(), vec![(p, 1), (r, 2)]);
    }

    #[test]
    fn factor_multiword_semiprime() {
        let p = BigInt::from(47613309183281u64);
        let q = BigInt::from(14024237511930959u64);
        let n = &p * &q * BigInt::from(25);
        let got = factor_integer(&n, &FactorConfig::default()).unwrap();
        assert_eq!(got, vec![(big(5), 2), (p, 1), (q, 1)]);
    }

    #[test]
    fn factor_budget_exhaustion_is_reported() {
        let cfg = FactorConfig {
            rho_budget: 16,
            cofactor_bound: BigUint::from(1000u32),
        };
        let p = (BigInt::one() << 61u32) - 1;
        let q = (BigInt::one() << 89u32) - 1;
        let n = &p * &q;
        assert!(matches!(factor_integer(&n, &cfg), Err(Error::FactorTooHard { .. })));
    }

    #[test]
    fn prime_divisors_words() {
        assert_eq!(prime_divisors_u64(1), Vec::<u64>::new());
        assert_eq!(prime_divisors_u64(360), vec![2, 3, 5]);
        assert_eq!(prime_divisors_u64(4294967291 * 3), vec![3, 4294967291]);
    }
}
