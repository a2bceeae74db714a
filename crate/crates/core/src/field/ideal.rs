//! Ideals of Z[theta] as full-rank integer lattices, and prime ideals from
//! Dedekind's factorization theorem.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{AlgebraicInteger, NumberField};
use crate::error::{Error, Result};
use crate::integer::{hnf, primes_up_to, solve_in_lattice, FpPoly, IntMatrix};

/// Powers p^1..p^POWER_CACHE are precomputed for every prime ideal.
pub const POWER_CACHE: u32 = 4;

/// A nonzero ideal stored as the HNF of a Z-basis (k x k, upper triangular).
#[derive(Clone, PartialEq, Eq)]
pub struct IdealLattice {
    basis: IntMatrix,
    norm: BigInt,
    /// Row-major copy of the basis when every entry fits in an i64.
    small: Option<Vec<i64>>,
}

impl fmt::Debug for IdealLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealLattice(norm {}, {:?})", self.norm, self.basis)
    }
}

impl IdealLattice {
    fn from_hnf(basis: IntMatrix) -> Self {
        let norm = basis.diagonal_product();
        let k = basis.cols();
        let small = (0..k * k)
            .map(|i| basis[(i / k, i % k)].to_i64())
            .collect::<Option<Vec<i64>>>();
        IdealLattice { basis, norm, small }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Index in Z[theta], i.e. the absolute norm of the ideal.
    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    pub fn is_unit(&self) -> bool {
        self.norm.is_one()
    }

    pub fn contains(&self, x: &AlgebraicInteger) -> bool {
        solve_in_lattice(&self.basis, x.coords())
    }

    /// Membership for machine-integer coordinates; falls back to big integers
    /// when the basis or intermediate values do not fit.
    pub fn contains_i64(&self, coords: &[i64]) -> bool {
        let Some(b) = &self.small else {
            return self.contains(&AlgebraicInteger::from_i64(coords));
        };
        let k = coords.len();
        let mut rest: Vec<i128> = coords.iter().map(|&c| c as i128).collect();
        for i in 0..k {
            let pivot = b[i * k + i] as i128;
            if rest[i] % pivot != 0 {
                return false;
            }
            let q = rest[i] / pivot;
            if q != 0 {
                for c in i + 1..k {
                    let step = q.checked_mul(b[i * k + c] as i128);
                    match step.and_then(|s| rest[c].checked_sub(s)) {
                        Some(v) => rest[c] = v,
                        None => return self.contains(&AlgebraicInteger::from_i64(coords)),
                    }
                }
            }
        }
        true
    }
}

/// v_p(x) capped: `Exact(v)` when x lies in p^v but not p^(v+1),
/// `AtLeast(cap)` when x lies in p^cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Exact(u32),
    AtLeast(u32),
}

/// Nonzero prime ideal (p, g(theta)) of Z[theta].
pub struct PrimeIdealData {
    p: u64,
    g: FpPoly,
    ramification: u32,
    residue_degree: usize,
    norm: BigInt,
    /// `powers[i]` is the lattice of p^(i+1).
    powers: Vec<IdealLattice>,
    /// theta^j modulo (p, g) as coefficient vectors of length `residue_degree`.
    theta_images: Vec<Vec<u64>>,
}

pub type PrimeIdeal = Arc<PrimeIdealData>;

impl fmt::Debug for PrimeIdealData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl PartialEq for PrimeIdealData {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.g == other.g
    }
}

impl Eq for PrimeIdealData {}

impl PrimeIdealData {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The monic irreducible factor g of f mod p.
    pub fn generator(&self) -> &FpPoly {
        &self.g
    }

    pub fn ramification_index(&self) -> u32 {
        self.ramification
    }

    pub fn residue_degree(&self) -> usize {
        self.residue_degree
    }

    /// N(p) = p^deg(p).
    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    pub fn lattice(&self) -> &IdealLattice {
        &self.powers[0]
    }

    /// `(p, g)`, e.g. `(5, x+2)`.
    pub fn label(&self) -> String {
        format!("({}, {})", self.p, self.g)
    }

    /// Image of `x` in the residue field F_p[x]/(g).
    pub fn reduce(&self, x: &AlgebraicInteger) -> Vec<u64> {
        let m = BigInt::from(self.p);
        let coords: Vec<u64> = x
            .coords()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().unwrap())
            .collect();
        self.combine(&coords)
    }

    pub fn reduce_i64(&self, coords: &[i64]) -> Vec<u64> {
        let p = self.p as i128;
        let coords: Vec<u64> = coords
            .iter()
            .map(|&c| (c as i128).rem_euclid(p) as u64)
            .collect();
        self.combine(&coords)
    }

    fn combine(&self, coords: &[u64]) -> Vec<u64> {
        let p = self.p as u128;
        let mut out = vec![0u128; self.residue_degree];
        for (c, img) in coords.iter().zip(&self.theta_images) {
            if *c == 0 {
                continue;
            }
            for (o, &t) in out.iter_mut().zip(img) {
                *o = (*o + *c as u128 * t as u128) % p;
            }
        }
        out.into_iter().map(|v| v as u64).collect()
    }

    /// `x` in p, via the residue map.
    pub fn contains(&self, x: &AlgebraicInteger) -> bool {
        self.reduce(x).iter().all(|&c| c == 0)
    }

    pub fn contains_i64(&self, coords: &[i64]) -> bool {
        let p = self.p as i128;
        for t in 0..self.residue_degree {
            let mut acc: i128 = 0;
            for (j, &c) in coords.iter().enumerate() {
                acc = (acc + (c as i128).rem_euclid(p) * self.theta_images[j][t] as i128) % p;
            }
            if acc != 0 {
                return false;
            }
        }
        true
    }

    /// Lattice of p^v for 1 <= v <= POWER_CACHE.
    pub fn cached_power(&self, v: u32) -> Option<&IdealLattice> {
        (v >= 1).then(|| self.powers.get(v as usize - 1)).flatten()
    }

    /// Canonical lift of a residue vector: sum c_j theta^j with 0 <= c_j < p.
    pub fn lift(&self, residue: &[u64], k: usize) -> AlgebraicInteger {
        let mut coords = vec![BigInt::zero(); k];
        for (c, &r) in coords.iter_mut().zip(residue) {
            *c = BigInt::from(r);
        }
        AlgebraicInteger::new(coords)
    }
}

impl NumberField {
    /// Ideal with the given Z-basis generators; fails unless the lattice has
    /// full rank and is closed under multiplication by theta.
    pub fn ideal_from_z_generators(&self, gens: &[AlgebraicInteger]) -> Result<IdealLattice> {
        let k = self.degree();
        let m = IntMatrix::from_rows(k, gens.iter().map(|g| g.coords().to_vec()).collect());
        let h = hnf(&m);
        if h.rows() < k {
            return Err(Error::RankDeficient);
        }
        let ideal = IdealLattice::from_hnf(h);
        let theta = self.theta();
        for row in ideal.basis.row_vecs() {
            let shifted = self.mul(&theta, &AlgebraicInteger::new(row));
            if !ideal.contains(&shifted) {
                return Err(Error::InvalidArgument(
                    "lattice is not closed under multiplication by theta".into(),
                ));
            }
        }
        Ok(ideal)
    }

    /// The ideal generated (as an ideal) by the given elements.
    pub fn ideal_generated(&self, elems: &[AlgebraicInteger]) -> Result<IdealLattice> {
        let k = self.degree();
        let mut gens = Vec::with_capacity(elems.len() * k);
        for e in elems {
            for j in 0..k {
                gens.push(self.mul(e, &self.theta_pow(j)));
            }
        }
        self.ideal_from_z_generators(&gens)
    }

    pub fn unit_ideal(&self) -> IdealLattice {
        IdealLattice::from_hnf(IntMatrix::identity(self.degree()))
    }

    /// HNF of all pairwise products of basis elements.
    pub fn ideal_mul(&self, a: &IdealLattice, b: &IdealLattice) -> IdealLattice {
        let k = self.degree();
        let mut rows = Vec::with_capacity(k * k);
        for x in a.basis.row_vecs() {
            let x = AlgebraicInteger::new(x);
            for y in b.basis.row_vecs() {
                rows.push(self.mul(&x, &AlgebraicInteger::new(y)).coords().to_vec());
            }
        }
        IdealLattice::from_hnf(hnf(&IntMatrix::from_rows(k, rows)))
    }

    /// Sum of two ideals.
    pub fn ideal_add(&self, a: &IdealLattice, b: &IdealLattice) -> IdealLattice {
        let k = self.degree();
        let rows = a.basis.row_vecs().into_iter().chain(b.basis.row_vecs()).collect();
        IdealLattice::from_hnf(hnf(&IntMatrix::from_rows(k, rows)))
    }

    pub fn ideal_contains(&self, a: &IdealLattice, x: &AlgebraicInteger) -> bool {
        a.contains(x)
    }

    /// Prime ideals above the rational prime `p`, sorted by generator.
    pub fn split_prime(&self, p: u64) -> Result<Vec<PrimeIdeal>> {
        let k = self.degree();
        let fbar = self.reduce_mod_p(p);
        let factors = fbar.factor();
        if (self.poly_discriminant() % p).is_zero() && !self.dedekind_maximal(p, &factors) {
            return Err(Error::NotMaximalAtP { p });
        }
        let pk = self.from_int(p);
        let mut out = Vec::with_capacity(factors.len());
        for (g, e) in factors {
            let deg = g.degree().unwrap();
            let mut g_theta = self.zero();
            for (i, &c) in g.coeffs().iter().enumerate() {
                if c != 0 {
                    let term = self.scale(&self.theta_pow(i), &BigInt::from(c));
                    g_theta = self.add(&g_theta, &term);
                }
            }
            let prime = self.ideal_generated(&[pk.clone(), g_theta])?;
            let mut powers = vec![prime.clone()];
            for _ in 1..POWER_CACHE {
                let next = self.ideal_mul(powers.last().unwrap(), &prime);
                powers.push(next);
            }
            let x = FpPoly::x(p);
            let theta_images = (0..k)
                .map(|j| {
                    let r = x.pow_mod(j as u64, &g);
                    (0..deg).map(|t| r.coeff(t)).collect()
                })
                .collect();
            let norm = BigInt::from(p).pow(deg as u32);
            debug_assert_eq!(prime.norm(), &norm);
            out.push(Arc::new(PrimeIdealData {
                p,
                g,
                ramification: e,
                residue_degree: deg,
                norm,
                powers,
                theta_images,
            }));
        }
        Ok(out)
    }

    /// Dedekind's criterion: with f = prod g_i^e_i mod p, G = prod g_i, H = f/G
    /// and F = (f - G H)/p, Z[theta] is p-maximal iff no g_i with e_i >= 2 divides F mod p.
    fn dedekind_maximal(&self, p: u64, factors: &[(FpPoly, u32)]) -> bool {
        let mut radical = FpPoly::one(p);
        let mut cofactor = FpPoly::one(p);
        for (g, e) in factors {
            radical = radical.mul(g);
            for _ in 1..*e {
                cofactor = cofactor.mul(g);
            }
        }
        let lift = |q: &FpPoly| -> Vec<BigInt> { q.coeffs().iter().map(|&c| BigInt::from(c)).collect() };
        let (gl, hl) = (lift(&radical), lift(&cofactor));
        let mut prod = vec![BigInt::zero(); gl.len() + hl.len() - 1];
        for (i, a) in gl.iter().enumerate() {
            for (j, b) in hl.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let f = self.defining_poly();
        let bp = BigInt::from(p);
        let n = prod.len().max(f.len());
        let reduced: Vec<u64> = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                let (q, r) = (a - b).div_rem(&bp);
                debug_assert!(r.is_zero());
                q.mod_floor(&bp).to_u64().unwrap()
            })
            .collect();
        let big_f = FpPoly::new(p, reduced);
        factors
            .iter()
            .filter(|(_, e)| *e >= 2)
            .all(|(g, _)| !big_f.rem(g).is_zero())
    }

    /// All prime ideals above rational primes p <= m, ordered by (p, g).
    pub fn primes_up_to(&self, m: u64) -> Result<Vec<PrimeIdeal>> {
        let mut out = Vec::new();
        for p in primes_up_to(m) {
            out.extend(self.split_prime(p)?);
        }
        Ok(out)
    }

    /// Lattice of P^v; cached powers are shared, larger ones are computed.
    pub fn prime_power(&self, prime: &PrimeIdealData, v: u32) -> IdealLattice {
        if v == 0 {
            return self.unit_ideal();
        }
        if let Some(l) = prime.cached_power(v) {
            return l.clone();
        }
        let mut acc = prime.cached_power(POWER_CACHE).unwrap().clone();
        for _ in POWER_CACHE..v {
            acc = self.ideal_mul(&acc, prime.lattice());
        }
        acc
    }

    /// Largest v <= cap with x in P^v.
    pub fn valuation(&self, prime: &PrimeIdealData, x: &AlgebraicInteger, cap: u32) -> Valuation {
        if cap == 0 || x.is_zero() {
            return Valuation::AtLeast(cap);
        }
        if !prime.contains(x) {
            return Valuation::Exact(0);
        }
        for v in 2..=cap {
            let inside = match prime.cached_power(v) {
                Some(l) => l.contains(x),
                None => self.prime_power(prime, v).contains(x),
            };
            if !inside {
                return Valuation::Exact(v - 1);
            }
        }
        Valuation::AtLeast(cap)
    }

    /// One representative per residue class of o/P, as sum c_j theta^j with
    /// 0 <= c_j < p for j < deg P; ordered lexicographically by (c_0, c_1, ...).
    pub fn residue_representatives(&self, prime: &PrimeIdealData, bound: u64) -> Result<Vec<AlgebraicInteger>> {
        let count = prime.norm().to_u64().filter(|&n| n <= bound).ok_or_else(|| {
            Error::ResidueFieldTooLarge {
                norm: prime.norm().clone(),
                bound,
            }
        })?;
        let k = self.degree();
        let f = prime.residue_degree();
        let p = prime.p();
        let mut digits = vec![0u64; f];
        let mut out = Vec::with_capacity(count as usize);
        loop {
            out.push(prime.lift(&digits, k));
            let mut i = f;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

/// Per-thread memo of `split_prime`.
pub struct SplitCache<'a> {
    field: &'a NumberField,
    map: HashMap<u64, Vec<PrimeIdeal>>,
}

impl<'a> SplitCache<'a> {
    pub fn new(field: &'a NumberField) -> Self {
        SplitCache {
            field,
            map: HashMap::new(),
        }
    }

    pub fn field(&self) -> &'a NumberField {
        self.field
    }

    pub fn primes_above(&mut self, p: u64) -> Result<&[PrimeIdeal]> {
        if !self.map.contains_key(&p) {
            let primes = self.field.split_prime(p)?;
            self.map.insert(p, primes);
        }
        Ok(&self.map[&p])
    }
}
