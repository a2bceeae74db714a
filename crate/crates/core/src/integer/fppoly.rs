//! Dense univariate polynomials over a prime field F_p and their factorization
//! (square-free split, distinct-degree split, Cantor-Zassenhaus equal-degree split).

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for the equal-degree splitter; fixed so factorizations are bit-stable.
const EDF_SEED: u64 = 0x5eed_e15e_0000_0001;

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// A polynomial over F_p, coefficients stored constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.p)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Ord for FpPoly {
    /// Degree first, then coefficients from the constant term upward.
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FpPoly {
    /// Builds from unreduced coefficients (constant term first).
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        assert!(p >= 2, "modulus must be a prime");
        let mut poly = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    /// Reduces signed integer coefficients modulo `p`.
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let m = p as i128;
        FpPoly::new(p, coeffs.iter().map(|&c| (c as i128).rem_euclid(m) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| add_mod(self.coeff(i), other.coeff(i), self.p)).collect();
        FpPoly::new(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p)).collect();
        FpPoly::new(self.p, coeffs)
    }

    pub fn scale(&self, c: u64) -> Self {
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        FpPoly::new(p, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        if self.coeffs.len() < divisor.coeffs.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv_lead = inv_mod(divisor.leading(), p);
        let dd = divisor.deg();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], inv_lead, p);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(c, b, p), p);
            }
        }
        rem.truncate(dd);
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
            .collect();
        FpPoly::new(p, coeffs)
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::one(self.p).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// Inverse modulo `modulus`, when it exists.
    pub fn inv_mod(&self, modulus: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(modulus).ext_gcd(modulus);
        g.is_one().then(|| s.rem(modulus))
    }

    /// For a polynomial in x^p, the polynomial whose p-th power it is.
    fn pth_root(&self) -> Self {
        let p = self.p;
        let step = p as usize;
        let coeffs = self.coeffs.iter().step_by(step).copied().collect();
        // Coefficients live in F_p, where Frobenius is the identity.
        FpPoly::new(p, coeffs)
    }

    /// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
    /// `self = prod g^m`, each `g` square-free, monic, pairwise coprime.
    fn square_free(&self) -> Vec<(FpPoly, u32)> {
        let p = self.p;
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            for (g, m) in self.pth_root().square_free() {
                out.push((g, m * p as u32));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_rem(&c).0;
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.deg() > 0 {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if !c.is_one() {
            for (g, m) in c.monic().pth_root().square_free() {
                out.push((g, m * p as u32));
            }
        }
        out
    }

    /// Distinct-degree split of a square-free monic polynomial.
    fn distinct_degree(&self) -> Vec<(usize, FpPoly)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut rest = self.clone();
        let x = FpPoly::x(p);
        let mut frob = x.clone();
        let mut deg = 0;
        while rest.deg() >= 2 * (deg + 1) {
            deg += 1;
            frob = frob.pow_mod(p, &rest);
            let g = rest.gcd(&frob.sub(&x));
            if !g.is_one() {
                rest = rest.div_rem(&g).0;
                frob = frob.rem(&rest);
                out.push((deg, g));
            }
        }
        if rest.deg() > 0 {
            out.push((rest.deg(), rest));
        }
        out
    }

    /// Equal-degree split (Cantor-Zassenhaus) of a product of distinct irreducibles of degree `deg`.
    fn equal_degree(&self, deg: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = self.deg();
        if n == deg {
            return vec![self.monic()];
        }
        let p = self.p;
        loop {
            let coeffs: Vec<u64> = (0..n).map(|_| rng.random_range(0..p)).collect();
            let a = FpPoly::new(p, coeffs);
            if a.deg() == 0 {
                continue;
            }
            let candidate = if p == 2 {
                // Trace map a + a^2 + ... + a^(2^(deg-1)).
                let mut term = a.rem(self);
                let mut trace = term.clone();
                for _ in 1..deg {
                    term = term.mul(&term).rem(self);
                    trace = trace.add(&term);
                }
                trace
            } else {
                // a^((p^deg - 1)/2) = (a^(1 + p + ... + p^(deg-1)))^((p-1)/2).
                let mut frob = a.rem(self);
                let mut norm = frob.clone();
                for _ in 1..deg {
                    frob = frob.pow_mod(p, self);
                    norm = norm.mul(&frob).rem(self);
                }
                norm.pow_mod((p - 1) / 2, self).sub(&FpPoly::one(p))
            };
            let g = self.gcd(&candidate);
            if g.deg() > 0 && g.deg() < n {
                let h = self.div_rem(&g).0;
                let mut out = g.equal_degree(deg, rng);
                out.extend(h.equal_degree(deg, rng));
                return out;
            }
        }
    }

    /// Factorization into monic irreducibles with multiplicities, sorted.
    ///
    /// The product of the factors equals `self` up to its leading coefficient.
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        assert!(!self.is_zero(), "cannot factor the zero polynomial");
        let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
        let mut out = Vec::new();
        for (part, mult) in self.monic().square_free() {
            for (deg, block) in part.distinct_degree() {
                for g in block.equal_degree(deg, &mut rng) {
                    out.push((g, mult));
                }
            }
        }
        out.sort();
        out
    }

    /// True when the polynomial is irreducible (degree at least one).
    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }
}

/// Factor a polynomial over F_p. See [`FpPoly::factor`].
pub fn factor_poly_mod_p(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    f.factor()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn factor_examples() {
        assert_eq!(
            factor_poly_mod_p(&poly(5, &[1, 0, 1])),
            vec![(poly(5, &[2, 1]), 1), (poly(5, &[3, 1]), 1)]
        );
        assert_eq!(factor_poly_mod_p(&poly(3, &[1, 0, 1])), vec![(poly(3, &[1, 0, 1]), 1)]);
        assert_eq!(factor_poly_mod_p(&poly(7, &[0, 0, 1])), vec![(poly(7, &[0, 1]), 2)]);
    }

    #[test]
    fn factor_inseparable_parts() {
        // (x+1)^2 over F_2 and x^4 + x^2 + 1 = (x^2+x+1)^2 over F_2.
        assert_eq!(factor_poly_mod_p(&poly(2, &[1, 0, 1])), vec![(poly(2, &[1, 1]), 2)]);
        assert_eq!(factor_poly_mod_p(&poly(2, &[1, 0, 1, 0, 1])), vec![(poly(2, &[1, 1, 1]), 2)]);
        // x^3 - 2 over F_3 is (x+1)^3.
        assert_eq!(factor_poly_mod_p(&FpPoly::from_i64(3, &[-2, 0, 0, 1])), vec![(poly(3, &[1, 1]), 3)]);
    }

    #[test]
    fn non_monic_input_is_normalized() {
        // 2x^2 + 2 mod 5 = 2 (x+2)(x+3).
        assert_eq!(
            factor_poly_mod_p(&poly(5, &[2, 0, 2])),
            vec![(poly(5, &[2, 1]), 1), (poly(5, &[3, 1]), 1)]
        );
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = poly(7, &[1, 2, 3, 4]);
        let b = poly(7, &[5, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.is_one());
        let inv = b.inv_mod(&a).unwrap();
        assert!(inv.mul(&b).rem(&a).is_one());
    }

    fn count_roots(f: &FpPoly) -> usize {
        (0..f.modulus()).filter(|&x| f.eval(x) == 0).count()
    }

    const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 31, 53, 89, 97];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn factorization_recombines(pi in 0usize..PRIMES.len(), raw in prop::collection::vec(any::<u64>(), 2..=9)) {
            let p = PRIMES[pi];
            let f = FpPoly::new(p, raw);
            prop_assume!(f.degree().unwrap_or(0) >= 1);
            let factors = factor_poly_mod_p(&f);
            let mut prod = FpPoly::constant(p, f.leading());
            for (g, m) in &factors {
                prop_assert_eq!(g.leading(), 1);
                prop_assert!(g.degree().unwrap() >= 1);
                for _ in 0..*m {
                    prod = prod.mul(g);
                }
            }
            prop_assert_eq!(&prod, &f);
            let linear_roots = factors.iter().filter(|(g, _)| g.degree() == Some(1)).count();
            prop_assert_eq!(linear_roots, count_roots(&f));
        }
    }

    #[test]
    fn irreducible_factors_have_no_proper_divisors() {
        // Every degree-2 or degree-3 factor must have no roots.
        for &p in &[2u64, 3, 5, 7] {
            let f = FpPoly::new(p, vec![1, 1, 0, 1, 1, 0, 1, 1]);
            for (g, _) in f.factor() {
                let d = g.degree().unwrap();
                if (2..=3).contains(&d) {
                    assert_eq!(count_roots(&g), 0, "{g:?}");
                }
            }
        }
    }
}
