//! Eisenstein and shifted Eisenstein predicates over Z[theta].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{AlgebraicInteger, NumberField, PrimeIdeal, PrimeIdealData, SplitCache};
use crate::integer::{factor_integer, FpPoly};

/// Largest residue field the shifted scan will enumerate.
pub const RESIDUE_SCAN_BOUND: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Plain,
    Shifted,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Plain => "plain",
            Flavor::Shifted => "shifted",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Flavor::Plain),
            "shifted" => Ok(Flavor::Shifted),
            _ => Err(Error::InvalidArgument(format!("unknown flavor {s:?}"))),
        }
    }
}

/// Coefficients (a_0, ..., a_d) of a polynomial over Z[theta], constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoefficientTuple {
    coeffs: Vec<AlgebraicInteger>,
}

impl CoefficientTuple {
    pub fn new(coeffs: Vec<AlgebraicInteger>) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::InvalidArgument("polynomial degree must be at least 2".into()));
        }
        Ok(CoefficientTuple { coeffs })
    }

    /// From flat coordinates: k integers per coefficient, a_0 first.
    pub fn from_coords(field: &NumberField, flat: &[i64]) -> Result<Self> {
        let k = field.degree();
        if !flat.len().is_multiple_of(k) {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates do not split into coefficients of {k}",
                flat.len()
            )));
        }
        CoefficientTuple::new(flat.chunks(k).map(AlgebraicInteger::from_i64).collect())
    }

    /// Over Q: one integer per coefficient.
    pub fn rational(coeffs: &[i64]) -> Self {
        CoefficientTuple::new(coeffs.iter().map(|&c| AlgebraicInteger::from_i64(&[c])).collect())
            .expect("degree at least 2")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[AlgebraicInteger] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &AlgebraicInteger {
        &self.coeffs[i]
    }

    pub fn constant(&self) -> &AlgebraicInteger {
        &self.coeffs[0]
    }

    pub fn leading(&self) -> &AlgebraicInteger {
        &self.coeffs[self.degree()]
    }
}

impl fmt::Display for CoefficientTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A prime at which the predicate holds, plus the shift for the shifted flavor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisensteinWitness {
    pub prime: PrimeIdeal,
    pub shift: Option<AlgebraicInteger>,
}

/// a_d not in P, a_i in P for i < d, a_0 not in P^2.
pub fn is_p_eisenstein(f: &CoefficientTuple, prime: &PrimeIdealData) -> bool {
    let d = f.degree();
    if prime.contains(f.leading()) {
        return false;
    }
    if !f.coeffs[..d].iter().all(|a| prime.contains(a)) {
        return false;
    }
    let square = prime.cached_power(2).expect("square is cached");
    !square.contains(f.constant())
}

/// Coefficients of f(x + b), by repeated synthetic division.
pub fn shift_poly(field: &NumberField, f: &CoefficientTuple, b: &AlgebraicInteger) -> CoefficientTuple {
    let mut c = f.coeffs.clone();
    if b.is_zero() {
        return CoefficientTuple { coeffs: c };
    }
    let d = f.degree();
    for i in 0..d {
        for j in (i..d).rev() {
            let t = field.mul(b, &c[j + 1]);
            c[j] = field.add(&c[j], &t);
        }
    }
    CoefficientTuple { coeffs: c }
}

/// First residue b (canonical order) with f(x + b) P-Eisenstein.
pub fn is_shifted_p_eisenstein(
    field: &NumberField,
    f: &CoefficientTuple,
    prime: &PrimeIdeal,
) -> Result<Option<EisensteinWitness>> {
    is_shifted_p_eisenstein_bounded(field, f, prime, RESIDUE_SCAN_BOUND)
}

pub fn is_shifted_p_eisenstein_bounded(
    field: &NumberField,
    f: &CoefficientTuple,
    prime: &PrimeIdeal,
    bound: u64,
) -> Result<Option<EisensteinWitness>> {
    let reps = field.residue_representatives(prime, bound)?;
    if prime.contains(f.leading()) {
        return Ok(None);
    }
    for b in reps {
        // The shifted constant term is f(b); test it before expanding.
        if !prime.contains(&eval_at(field, f, &b)) {
            continue;
        }
        if is_p_eisenstein(&shift_poly(field, f, &b), prime) {
            return Ok(Some(EisensteinWitness {
                prime: prime.clone(),
                shift: Some(b),
            }));
        }
    }
    Ok(None)
}

fn eval_at(field: &NumberField, f: &CoefficientTuple, b: &AlgebraicInteger) -> AlgebraicInteger {
    let mut acc = f.leading().clone();
    for a in f.coeffs[..f.degree()].iter().rev() {
        acc = field.add(&field.mul(&acc, b), a);
    }
    acc
}

/// Same answer as the residue scan without enumerating o/P.
///
/// If f(x + b) is P-Eisenstein then f = a_d (x - b)^d mod P. Writing d = p^s m
/// with p not dividing m, the coefficient of x^(d - p^s) is -m a_d b^(p^s), which
/// pins b^(p^s) and hence b, since Frobenius is bijective on o/P.
pub fn shifted_witness(field: &NumberField, f: &CoefficientTuple, prime: &PrimeIdeal) -> Option<EisensteinWitness> {
    let p = prime.p();
    let g = prime.generator();
    let to_poly = |x: &AlgebraicInteger| FpPoly::new(p, prime.reduce(x));
    let lead = to_poly(f.leading());
    if lead.is_zero() {
        return None;
    }
    let d = f.degree() as u64;
    let (mut s, mut m, mut ps) = (0u32, d, 1u64);
    while m % p == 0 {
        m /= p;
        s += 1;
        ps *= p;
    }
    let a = to_poly(f.coeff((d - ps) as usize));
    let denom = lead.scale(m % p).inv_mod(g)?;
    let mut b = a.mul(&denom).rem(g).scale(p - 1);
    // Inverse Frobenius is z -> z^(p^(deg - 1)); apply it s times.
    let steps = s as usize * (prime.residue_degree() - 1);
    for _ in 0..steps {
        b = b.pow_mod(p, g);
    }
    let residue: Vec<u64> = (0..prime.residue_degree()).map(|t| b.coeff(t)).collect();
    let shift = prime.lift(&residue, field.degree());
    is_p_eisenstein(&shift_poly(field, f, &shift), prime).then(|| EisensteinWitness {
        prime: prime.clone(),
        shift: Some(shift),
    })
}

/// Determinant over Z[theta] by Berkowitz's division-free algorithm.
fn berkowitz_det(field: &NumberField, a: &[Vec<AlgebraicInteger>]) -> AlgebraicInteger {
    let n = a.len();
    if n == 0 {
        return field.one();
    }
    // v holds the characteristic polynomial of the leading r x r block, highest degree first.
    let mut v = vec![field.one(), field.neg(&a[0][0])];
    for r in 1..n {
        let col: Vec<AlgebraicInteger> = (0..r).map(|i| a[i][r].clone()).collect();
        let row = &a[r][..r];
        // Toeplitz column: 1, -a_rr, -R C, -R M C, ..., -R M^(r-1) C.
        let mut toep = vec![field.one(), field.neg(&a[r][r])];
        let mut mc = col;
        for _ in 0..r {
            let rc = dot(field, row, &mc);
            toep.push(field.neg(&rc));
            mc = (0..r).map(|i| dot(field, &a[i][..r], &mc)).collect();
        }
        let mut next = vec![field.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i >= j && i - j < toep.len() {
                    let t = field.mul(&toep[i - j], vj);
                    *slot = field.add(slot, &t);
                }
            }
        }
        v = next;
    }
    let last = v.pop().unwrap();
    if n.is_multiple_of(2) {
        last
    } else {
        field.neg(&last)
    }
}

fn dot(field: &NumberField, x: &[AlgebraicInteger], y: &[AlgebraicInteger]) -> AlgebraicInteger {
    x.iter()
        .zip(y)
        .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
}

/// disc f = (-1)^(d(d-1)/2) Res(f, f') / a_d.
pub fn discriminant(field: &NumberField, f: &CoefficientTuple) -> Result<AlgebraicInteger> {
    let d = f.degree();
    let lead = f.leading();
    if lead.is_zero() {
        return Err(Error::LeadingCoefficientZero);
    }
    let df: Vec<AlgebraicInteger> = f
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.scale(c, &BigInt::from(i)))
        .collect();
    let m = d - 1;
    let size = d + m;
    let mut syl = vec![vec![field.zero(); size]; size];
    for i in 0..m {
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            syl[i][i + j] = c.clone();
        }
    }
    for i in 0..d {
        for (j, c) in df.iter().rev().enumerate() {
            syl[m + i][i + j] = c.clone();
        }
    }
    let mut res = berkowitz_det(field, &syl);
    if (d * (d - 1) / 2) % 2 == 1 {
        res = field.neg(&res);
    }
    Ok(field
        .div_exact(&res, lead)
        .expect("resultant is divisible by the leading coefficient"))
}

/// Primes dividing `x`, via the rational primes dividing its norm.
///
/// Rational primes beyond 64 bits cannot be split; they are dropped when one of
/// `must_divide` has a norm they do not divide, and reported otherwise.
pub fn primes_dividing(
    cache: &mut SplitCache<'_>,
    x: &AlgebraicInteger,
    must_divide: &[AlgebraicInteger],
) -> Result<Vec<PrimeIdeal>> {
    let field = cache.field();
    if x.is_zero() {
        return Ok(Vec::new());
    }
    let norm = field.norm(x);
    let mut out = Vec::new();
    for (p, _) in factor_integer(&norm, field.factor_config())? {
        let Some(small) = p.to_u64() else {
            let excluded = must_divide
                .iter()
                .any(|y| !(field.norm(y) % &p).is_zero());
            if excluded {
                continue;
            }
            return Err(Error::InvalidArgument(format!("prime {p} above 64 bits cannot be split")));
        };
        for q in cache.primes_above(small)? {
            if q.contains(x) {
                out.push(q.clone());
            }
        }
    }
    Ok(out)
}

/// Every P at which f can be P-Eisenstein: the primes dividing a_0.
pub fn candidate_primes_eisenstein(field: &NumberField, f: &CoefficientTuple) -> Result<Vec<PrimeIdeal>> {
    candidate_primes_eisenstein_cached(&mut SplitCache::new(field), f)
}

pub fn candidate_primes_eisenstein_cached(cache: &mut SplitCache<'_>, f: &CoefficientTuple) -> Result<Vec<PrimeIdeal>> {
    let d = f.degree();
    primes_dividing(cache, f.constant(), &f.coeffs[1..d])
}

/// Every P at which f can be shifted P-Eisenstein: the primes dividing disc f.
pub fn candidate_primes_shifted(field: &NumberField, f: &CoefficientTuple) -> Result<Vec<PrimeIdeal>> {
    candidate_primes_shifted_cached(&mut SplitCache::new(field), f)
}

pub fn candidate_primes_shifted_cached(cache: &mut SplitCache<'_>, f: &CoefficientTuple) -> Result<Vec<PrimeIdeal>> {
    if f.leading().is_zero() {
        return Ok(Vec::new());
    }
    let field = cache.field();
    let disc = discriminant(field, f)?;
    primes_dividing(cache, &disc, &shift_free_residual(field, f))
}

/// Coefficients of (d a_d x + a_(d-1)) f' - d^2 a_d f.
///
/// If f = a_d (x - b)^d mod P with p not dividing d, then b = -a_(d-1)/(d a_d)
/// mod P and (x - b) f' = d f mod P, so every coefficient lies in P.
fn shift_free_residual(field: &NumberField, f: &CoefficientTuple) -> Vec<AlgebraicInteger> {
    let d = f.degree();
    let dd = BigInt::from(d);
    let lead = field.scale(f.leading(), &dd);
    let linear = [f.coeffs[d - 1].clone(), lead.clone()];
    let df: Vec<AlgebraicInteger> = (1..=d).map(|i| field.scale(&f.coeffs[i], &BigInt::from(i))).collect();
    let mut out = vec![field.zero(); d + 1];
    for (i, l) in linear.iter().enumerate() {
        for (j, c) in df.iter().enumerate() {
            let t = field.mul(l, c);
            out[i + j] = field.add(&out[i + j], &t);
        }
    }
    let scale = field.scale(&lead, &dd);
    for (o, a) in out.iter_mut().zip(&f.coeffs) {
        *o = field.sub(o, &field.mul(&scale, a));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(s: &str) -> NumberField {
        NumberField::from_str_poly(s).unwrap()
    }

    fn prime(f: &NumberField, p: u64, i: usize) -> PrimeIdeal {
        f.split_prime(p).unwrap().remove(i)
    }

    fn rat(c: &[i64]) -> CoefficientTuple {
        CoefficientTuple::rational(c)
    }

    #[test]
    fn eisenstein_examples() {
        let q = field("x");
        let p2 = prime(&q, 2, 0);
        assert!(is_p_eisenstein(&rat(&[2, 2, 1]), &p2));
        assert!(!is_p_eisenstein(&rat(&[4, 2, 1]), &p2));
        assert!(!is_p_eisenstein(&rat(&[2, 2, 2]), &p2));
        assert!(!is_p_eisenstein(&rat(&[2, 1, 1]), &p2));

        let qi = field("x^2+1");
        let p2 = prime(&qi, 2, 0);
        let f = CoefficientTuple::from_coords(&qi, &[1, 1, 2, 0, 1, 0]).unwrap();
        assert!(is_p_eisenstein(&f, &p2));
    }

    #[test]
    fn shift_examples() {
        let q = field("x");
        let one = q.from_int(1);
        assert_eq!(shift_poly(&q, &rat(&[0, 0, 1]), &one), rat(&[1, 2, 1]));
        assert_eq!(shift_poly(&q, &rat(&[5, -3, 2]), &q.zero()), rat(&[5, -3, 2]));
        assert_eq!(shift_poly(&q, &rat(&[2, 2, 1]), &q.from_int(-1)), rat(&[1, 0, 1]));
        assert_eq!(shift_poly(&q, &rat(&[0, 0, 0, 1]), &q.from_int(2)), rat(&[8, 12, 6, 1]));
    }

    #[test]
    fn shifted_examples() {
        let q = field("x");
        let p2 = prime(&q, 2, 0);
        let p3 = prime(&q, 3, 0);
        let w = is_shifted_p_eisenstein(&q, &rat(&[1, 0, 1]), &p2).unwrap().unwrap();
        assert_eq!(w.shift, Some(q.from_int(1)));
        let w = is_shifted_p_eisenstein(&q, &rat(&[2, 2, 1]), &p2).unwrap().unwrap();
        assert_eq!(w.shift, Some(q.from_int(0)));
        assert!(is_shifted_p_eisenstein(&q, &rat(&[1, 0, 1]), &p3).unwrap().is_none());
    }

    #[test]
    fn scan_respects_bound() {
        let qi = field("x^2+1");
        let big = prime(&qi, 1000003, 0);
        let f = CoefficientTuple::from_coords(&qi, &[1, 0, 0, 0, 1, 0]).unwrap();
        assert!(matches!(
            is_shifted_p_eisenstein(&qi, &f, &big),
            Err(Error::ResidueFieldTooLarge { .. })
        ));
    }

    #[test]
    fn discriminant_examples() {
        let q = field("x");
        assert_eq!(discriminant(&q, &rat(&[1, 0, 1])).unwrap(), q.from_int(-4));
        assert_eq!(discriminant(&q, &rat(&[2, 2, 1])).unwrap(), q.from_int(-4));
        assert_eq!(discriminant(&q, &rat(&[-1, -1, 0, 1])).unwrap(), q.from_int(-23));
        assert_eq!(discriminant(&q, &rat(&[3, 5, 2])).unwrap(), q.from_int(1));
        assert_eq!(discriminant(&q, &rat(&[0, 0, 1])).unwrap(), q.zero());
        assert_eq!(discriminant(&q, &rat(&[1, 0, 0])), Err(Error::LeadingCoefficientZero));
        // x^4 + 1 has discriminant 256.
        assert_eq!(discriminant(&q, &rat(&[1, 0, 0, 0, 1])).unwrap(), q.from_int(256));

        let qi = field("x^2+1");
        // x^2 - i: b^2 - 4c = 4i.
        let f = CoefficientTuple::from_coords(&qi, &[0, -1, 0, 0, 1, 0]).unwrap();
        assert_eq!(discriminant(&qi, &f).unwrap(), qi.element(&[0, 4]));
    }

    #[test]
    fn candidate_examples() {
        let q = field("x");
        let ps = |v: Vec<PrimeIdeal>| v.iter().map(|p| p.p()).collect::<Vec<_>>();
        assert_eq!(ps(candidate_primes_eisenstein(&q, &rat(&[12, 0, 1])).unwrap()), vec![2, 3]);
        assert!(candidate_primes_eisenstein(&q, &rat(&[0, 2, 1])).unwrap().is_empty());
        assert!(candidate_primes_eisenstein(&q, &rat(&[-1, 2, 1])).unwrap().is_empty());
        assert_eq!(ps(candidate_primes_shifted(&q, &rat(&[1, 0, 1])).unwrap()), vec![2]);
        assert!(candidate_primes_shifted(&q, &rat(&[0, 0, 1])).unwrap().is_empty());
        assert_eq!(ps(candidate_primes_shifted(&q, &rat(&[-1, -1, 0, 1])).unwrap()), vec![23]);

        let qi = field("x^2+1");
        let f = CoefficientTuple::from_coords(&qi, &[1, 1, 0, 0, 1, 0]).unwrap();
        let c = candidate_primes_eisenstein(&qi, &f).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].label(), "(2, x+1)");
        // 2 + i has norm 5 and lies in exactly one of the two primes above 5.
        let f = CoefficientTuple::from_coords(&qi, &[2, 1, 0, 0, 1, 0]).unwrap();
        assert_eq!(candidate_primes_eisenstein(&qi, &f).unwrap().len(), 1);
    }

    #[test]
    fn flavor_round_trip() {
        for f in [Flavor::Plain, Flavor::Shifted] {
            assert_eq!(f.to_string().parse::<Flavor>().unwrap(), f);
        }
        assert!("both".parse::<Flavor>().is_err());
    }

    struct Setting {
        field: NumberField,
        primes: Vec<PrimeIdeal>,
    }

    fn settings() -> Vec<Setting> {
        ["x", "x^2+1", "x^2-x-1", "x^3-2"]
            .iter()
            .map(|s| {
                let field = field(s);
                let primes = field
                    .primes_up_to(50)
                    .unwrap()
                    .into_iter()
                    .filter(|p| p.norm() <= &BigInt::from(50))
                    .collect();
                Setting { field, primes }
            })
            .collect()
    }

    fn tuple_strategy() -> impl Strategy<Value = (usize, Vec<i64>)> {
        (2usize..=4).prop_flat_map(|d| (Just(d), prop::collection::vec(-12i64..=12, 3 * (d + 1))))
    }

    fn take(field: &NumberField, d: usize, raw: &[i64]) -> CoefficientTuple {
        let k = field.degree();
        CoefficientTuple::from_coords(field, &raw[..k * (d + 1)]).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn shift_group_law(raw in tuple_strategy(), a in prop::collection::vec(-5i64..=5, 3), b in prop::collection::vec(-5i64..=5, 3)) {
            let (d, raw) = raw;
            for s in settings() {
                let k = s.field.degree();
                let f = take(&s.field, d, &raw);
                let (a, b) = (s.field.element(&a[..k]), s.field.element(&b[..k]));
                let ab = s.field.add(&a, &b);
                let twice = shift_poly(&s.field, &shift_poly(&s.field, &f, &a), &b);
                prop_assert_eq!(&twice, &shift_poly(&s.field, &f, &ab));
                let back = shift_poly(&s.field, &shift_poly(&s.field, &f, &a), &s.field.neg(&a));
                prop_assert_eq!(&back, &f);
            }
        }

        #[test]
        fn discriminant_is_shift_invariant(raw in tuple_strategy(), b in prop::collection::vec(-6i64..=6, 3)) {
            let (d, raw) = raw;
            for s in settings() {
                let k = s.field.degree();
                let f = take(&s.field, d, &raw);
                prop_assume!(!f.leading().is_zero());
                let b = s.field.element(&b[..k]);
                prop_assert_eq!(
                    discriminant(&s.field, &f).unwrap(),
                    discriminant(&s.field, &shift_poly(&s.field, &f, &b)).unwrap()
                );
            }
        }

        #[test]
        fn closed_form_matches_scan(raw in tuple_strategy()) {
            let (d, raw) = raw;
            for s in settings() {
                let f = take(&s.field, d, &raw);
                for q in &s.primes {
                    let scan = is_shifted_p_eisenstein(&s.field, &f, q).unwrap();
                    prop_assert_eq!(scan, shifted_witness(&s.field, &f, q), "{} {} {:?}", s.field.label(), f, q);
                }
            }
        }

        #[test]
        fn shifted_witness_found_for_shifted_eisenstein(
            raw in tuple_strategy(),
            b in prop::collection::vec(-9i64..=9, 3),
            pick in 0usize..64,
        ) {
            // Build f = g(x - b) with g P-Eisenstein; the witness must be b mod P.
            let (d, raw) = raw;
            for s in settings() {
                let k = s.field.degree();
                let q = &s.primes[pick % s.primes.len()];
                let p = q.p() as i64;
                let mut g = take(&s.field, d, &raw).coeffs;
                let pi = find_uniformizer(&s.field, q);
                for (i, c) in g.iter_mut().enumerate() {
                    *c = if i == 0 {
                        let u = s.field.add(&s.field.scale(c, &BigInt::from(p)), &s.field.one());
                        // unit times uniformizer, with the unit chosen off P
                        if q.contains(&u) { pi.clone() } else { s.field.mul(&pi, &u) }
                    } else if i == d {
                        if q.contains(c) { s.field.add(c, &s.field.one()) } else { c.clone() }
                    } else {
                        s.field.mul(c, &pi)
                    };
                }
                let gt = CoefficientTuple::new(g).unwrap();
                prop_assume!(!q.contains(gt.leading()));
                prop_assert!(is_p_eisenstein(&gt, q));
                let b = s.field.element(&b[..k]);
                let f = shift_poly(&s.field, &gt, &s.field.neg(&b));
                let w = shifted_witness(&s.field, &f, q).expect("witness");
                let diff = s.field.sub(w.shift.as_ref().unwrap(), &b);
                prop_assert!(q.contains(&diff));
            }
        }

        #[test]
        fn eisenstein_under_shift_iff_shift_in_prime(raw in tuple_strategy(), b in prop::collection::vec(-9i64..=9, 3), pick in 0usize..64) {
            let (d, raw) = raw;
            for s in settings() {
                let k = s.field.degree();
                let q = &s.primes[pick % s.primes.len()];
                let pi = find_uniformizer(&s.field, q);
                let mut g = take(&s.field, d, &raw).coeffs;
                for c in g[1..d].iter_mut() {
                    *c = s.field.mul(c, &pi);
                }
                g[0] = pi.clone();
                if q.contains(&g[d]) {
                    g[d] = s.field.add(&g[d], &s.field.one());
                }
                let f = CoefficientTuple::new(g).unwrap();
                prop_assume!(is_p_eisenstein(&f, q));
                let b = s.field.element(&b[..k]);
                prop_assert_eq!(is_p_eisenstein(&shift_poly(&s.field, &f, &b), q), q.contains(&b));
            }
        }

    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn candidates_are_complete(raw in tuple_strategy()) {
            let (d, raw) = raw;
            for s in settings() {
                let f = take(&s.field, d, &raw);
                let plain = candidate_primes_eisenstein(&s.field, &f).unwrap();
                // A norm whose cofactor beats the rho budget is a reported error, not a wrong list.
                let shifted = match candidate_primes_shifted(&s.field, &f) {
                    Err(Error::FactorTooHard { .. }) => continue,
                    r => r.unwrap(),
                };
                for q in &s.primes {
                    if is_p_eisenstein(&f, q) {
                        prop_assert!(plain.contains(q));
                    }
                    if shifted_witness(&s.field, &f, q).is_some() {
                        prop_assert!(shifted.contains(q));
                    }
                }
            }
        }
    }

    /// Some element of P outside P^2.
    fn find_uniformizer(field: &NumberField, q: &PrimeIdealData) -> AlgebraicInteger {
        let sq = q.cached_power(2).unwrap();
        for row in q.lattice().basis().row_vecs() {
            let x = AlgebraicInteger::new(row);
            if !sq.contains(&x) {
                return x;
            }
        }
        // Sum of two basis elements otherwise; all of them in P^2 would force P = P^2.
        unreachable!("{} has no uniformizer among {:?}", field.label(), q.lattice())
    }
}
