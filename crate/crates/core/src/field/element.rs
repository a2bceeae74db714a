use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::NumberField;
use crate::integer::IntMatrix;

/// Element of Z[theta] in the power basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraicInteger {
    coords: Vec<BigInt>,
}

impl fmt::Debug for AlgebraicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl AlgebraicInteger {
    pub fn new(coords: Vec<BigInt>) -> Self {
        AlgebraicInteger { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        AlgebraicInteger::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Coordinates as machine integers, when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coords.iter().map(|c| c.to_i64()).collect()
    }
}

impl NumberField {
    fn check(&self, a: &AlgebraicInteger) {
        debug_assert_eq!(a.coords.len(), self.degree(), "element from another field");
    }

    pub fn zero(&self) -> AlgebraicInteger {
        AlgebraicInteger::new(vec![BigInt::zero(); self.degree()])
    }

    pub fn one(&self) -> AlgebraicInteger {
        self.from_int(BigInt::one())
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> AlgebraicInteger {
        let mut z = self.zero();
        z.coords[0] = n.into();
        z
    }

    /// The generator theta itself.
    pub fn theta(&self) -> AlgebraicInteger {
        if self.degree() == 1 {
            return self.from_int(-&self.defining_poly()[0]);
        }
        AlgebraicInteger::new(self.theta_power(1).to_vec())
    }

    /// theta^j reduced into the power basis.
    pub fn theta_pow(&self, j: usize) -> AlgebraicInteger {
        if j < 2 * self.degree() - 1 {
            return AlgebraicInteger::new(self.theta_power(j).to_vec());
        }
        self.pow(&self.theta(), j as u32)
    }

    pub fn element(&self, coords: &[i64]) -> AlgebraicInteger {
        assert_eq!(coords.len(), self.degree(), "wrong number of coordinates");
        AlgebraicInteger::from_i64(coords)
    }

    pub fn add(&self, a: &AlgebraicInteger, b: &AlgebraicInteger) -> AlgebraicInteger {
        self.check(a);
        self.check(b);
        AlgebraicInteger::new(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &AlgebraicInteger, b: &AlgebraicInteger) -> AlgebraicInteger {
        AlgebraicInteger::new(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &AlgebraicInteger) -> AlgebraicInteger {
        AlgebraicInteger::new(a.coords.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &AlgebraicInteger, c: &BigInt) -> AlgebraicInteger {
        AlgebraicInteger::new(a.coords.iter().map(|x| x * c).collect())
    }

    /// Product, reduced modulo the defining polynomial.
    pub fn mul(&self, a: &AlgebraicInteger, b: &AlgebraicInteger) -> AlgebraicInteger {
        self.check(a);
        self.check(b);
        let k = self.degree();
        let mut raw = vec![BigInt::zero(); 2 * k - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = raw[..k].to_vec();
        for (i, c) in raw.iter().enumerate().skip(k) {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(self.theta_power(i)) {
                *o += c * t;
            }
        }
        AlgebraicInteger::new(out)
    }

    pub fn pow(&self, a: &AlgebraicInteger, mut e: u32) -> AlgebraicInteger {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Matrix of multiplication by `a`: row j holds the coordinates of a * theta^j.
    pub fn mul_matrix(&self, a: &AlgebraicInteger) -> IntMatrix {
        let k = self.degree();
        let rows = (0..k)
            .map(|j| self.mul(a, &AlgebraicInteger::new(self.theta_power(j).to_vec())).coords)
            .collect();
        IntMatrix::from_rows(k, rows)
    }

    /// Absolute norm N_{K/Q}(a), the determinant of multiplication by `a`.
    pub fn norm(&self, a: &AlgebraicInteger) -> BigInt {
        self.mul_matrix(a).determinant()
    }

    /// `a / b` when the quotient lies in Z[theta].
    pub fn div_exact(&self, a: &AlgebraicInteger, b: &AlgebraicInteger) -> Option<AlgebraicInteger> {
        if b.is_zero() {
            return None;
        }
        let k = self.degree();
        // Solve y * M_b = a, i.e. M_b^T y^T = a^T, over Q.
        let m = self.mul_matrix(b);
        let mut aug: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..k).map(|j| BigRational::from_integer(m[(j, i)].clone())).collect();
                row.push(BigRational::from_integer(a.coords[i].clone()));
                row
            })
            .collect();
        for col in 0..k {
            let piv = (col..k).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for c in col..=k {
                aug[col][c] = &aug[col][c] * &inv;
            }
            for r in 0..k {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in col..=k {
                        let v = &aug[r][c] - &factor * &aug[col][c];
                        aug[r][c] = v;
                    }
                }
            }
        }
        let mut coords = Vec::with_capacity(k);
        for row in aug {
            let v = &row[k];
            if !v.is_integer() {
                return None;
            }
            coords.push(v.to_integer());
        }
        Some(AlgebraicInteger::new(coords))
    }
}
