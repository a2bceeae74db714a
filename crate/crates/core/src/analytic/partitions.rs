use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Integer partition of n in multiplicity form: `counts[j - 1]` parts of size j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionShape {
    pub counts: Vec<u32>,
    /// Number of parts.
    pub length: usize,
    /// Number of set partitions of {1..n} with this block-size profile.
    pub multiplicity: BigInt,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub const MAX_ORDER: usize = 20;

/// All partitions of n with n! / prod((j!)^t_j t_j!) as multiplicity.
pub fn partition_shapes(n: usize) -> Result<Vec<PartitionShape>> {
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(Error::InvalidArgument(format!("moment order {n} outside 1..={MAX_ORDER}")));
    }
    let mut out = Vec::new();
    let mut counts = vec![0u32; n];
    fill(n, n, &mut counts, &mut out);
    Ok(out)
}

fn fill(rest: usize, largest: usize, counts: &mut Vec<u32>, out: &mut Vec<PartitionShape>) {
    if rest == 0 {
        let n = counts.len() as u64;
        let mut denom = BigInt::one();
        for (j, &t) in counts.iter().enumerate() {
            denom *= factorial(j as u64 + 1).pow(t) * factorial(t as u64);
        }
        out.push(PartitionShape {
            counts: counts.clone(),
            length: counts.iter().map(|&t| t as usize).sum(),
            multiplicity: factorial(n) / denom,
        });
        return;
    }
    for part in (1..=largest.min(rest)).rev() {
        counts[part - 1] += 1;
        fill(rest - part, part, counts, out);
        counts[part - 1] -= 1;
    }
}
