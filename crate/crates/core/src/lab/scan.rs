use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{witness_count, BoxSpec, EmpiricalReport, ScanMode, WitnessHistogram};
use crate::eisenstein::{primes_dividing, Flavor};
use crate::error::{Error, Result};
use crate::field::{AlgebraicInteger, PrimeIdeal, SplitCache};

/// Default cap on the number of tuples an exhaustive scan may visit.
pub const DEFAULT_BUDGET: u128 = 200_000_000;
/// Samples per independently seeded Monte Carlo stream.
pub const MC_CHUNK: u64 = 4096;
/// Boxes with at most this many elements per coefficient get a precomputed a_0 table.
const A0_TABLE_LIMIT: u128 = 1 << 22;
/// Largest candidate set handled by the mask histogram path.
const MAX_MASK_BITS: usize = 16;

#[derive(Debug, Clone)]
pub struct ScanConfig {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub budget: u128,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            threads: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

fn with_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Primes P with a_0 in P but not in P^2.
fn simple_primes(cache: &mut SplitCache<'_>, a0: &[i64]) -> Result<Vec<PrimeIdeal>> {
    let x = AlgebraicInteger::from_i64(a0);
    Ok(primes_dividing(cache, &x, &[])?
        .into_iter()
        .filter(|p| !p.cached_power(2).unwrap().contains_i64(a0))
        .collect())
}

fn element_index(b: &BoxSpec<'_>, coords: &[i64]) -> usize {
    let side = 2 * b.h() as i64;
    coords.iter().fold(0i64, |acc, &c| acc * side + c + b.h() as i64) as usize
}

fn report(b: &BoxSpec<'_>, flavor: Flavor, mode: ScanMode, order: usize, histogram: WitnessHistogram) -> EmpiricalReport {
    EmpiricalReport {
        field: b.field().label(),
        d: b.d(),
        flavor,
        h: b.h(),
        mode,
        order,
        histogram,
    }
}

/// Every tuple of the box, grouped by a_0 and merged in a_0 order.
pub fn exhaustive_scan(b: &BoxSpec<'_>, flavor: Flavor, order: usize, cfg: &ScanConfig) -> Result<EmpiricalReport> {
    let total = b.total().unwrap_or(u128::MAX);
    if total > cfg.budget {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget: cfg.budget,
        });
    }
    let count = b.elements().unwrap() as usize;
    let elements: Vec<Vec<i64>> = (0..count).map(|i| b.element(i as u128)).collect();
    let field = b.field();
    let slices: Vec<Result<WitnessHistogram>> = with_pool(cfg.threads, || {
        (0..count)
            .into_par_iter()
            .map_init(
                || SplitCache::new(field),
                |cache, i| match flavor {
                    Flavor::Plain => plain_slice(b, cache, &elements, i),
                    Flavor::Shifted => general_slice(b, cache, &elements, i, flavor),
                },
            )
            .collect()
    })?;
    let mut hist = WitnessHistogram::new();
    for s in slices {
        hist.merge(&s?);
    }
    debug_assert_eq!(hist.total(), total);
    Ok(report(b, flavor, ScanMode::Exhaustive, order, hist))
}

/// Plain flavor for one a_0 without visiting tuples: with C the primes where
/// v(a_0) = 1 and m(a) the set of those containing a, the witness count of a
/// tuple is |C & m(a_1) & ... & m(a_(d-1)) & !m(a_d)|, so it suffices to count
/// elements per mask and combine the counts.
fn plain_slice(b: &BoxSpec<'_>, cache: &mut SplitCache<'_>, elements: &[Vec<i64>], i: usize) -> Result<WitnessHistogram> {
    let e = elements.len() as u128;
    let per_slice = e.pow(b.d() as u32);
    let mut hist = WitnessHistogram::new();
    let cands = simple_primes(cache, &elements[i])?;
    if cands.is_empty() {
        hist.add(0, per_slice);
        return Ok(hist);
    }
    if cands.len() > MAX_MASK_BITS {
        return general_slice(b, cache, elements, i, Flavor::Plain);
    }
    let c = cands.len();
    let size = 1usize << c;
    let mut cnt = vec![0u128; size];
    for el in elements {
        let mut m = 0usize;
        for (bit, p) in cands.iter().enumerate() {
            if p.contains_i64(el) {
                m |= 1 << bit;
            }
        }
        cnt[m] += 1;
    }
    // Distribution of the AND of d-1 independent masks: superset sums, power, inverse.
    let mut and_cnt = cnt.clone();
    for bit in 0..c {
        for s in 0..size {
            if s & (1 << bit) == 0 {
                and_cnt[s] += and_cnt[s | (1 << bit)];
            }
        }
    }
    for v in and_cnt.iter_mut() {
        *v = v.pow(b.d() as u32 - 1);
    }
    for bit in 0..c {
        for s in 0..size {
            if s & (1 << bit) == 0 {
                and_cnt[s] -= and_cnt[s | (1 << bit)];
            }
        }
    }
    let full = size - 1;
    for (a, &na) in and_cnt.iter().enumerate() {
        if na == 0 {
            continue;
        }
        for (m, &nm) in cnt.iter().enumerate() {
            if nm > 0 {
                hist.add((a & !m & full).count_ones() as usize, na * nm);
            }
        }
    }
    Ok(hist)
}

/// All tuples with the given a_0, one witness count each.
pub(super) fn general_slice(
    b: &BoxSpec<'_>,
    cache: &mut SplitCache<'_>,
    elements: &[Vec<i64>],
    i: usize,
    flavor: Flavor,
) -> Result<WitnessHistogram> {
    let d = b.d();
    let mut hist = WitnessHistogram::new();
    let mut idx = vec![0usize; d];
    let mut tuple: Vec<Vec<i64>> = vec![elements[i].clone(); d + 1];
    loop {
        for (slot, &j) in tuple[1..].iter_mut().zip(&idx) {
            slot.clone_from(&elements[j]);
        }
        let (w, _) = witness_count(cache, &b.tuple(&tuple), flavor)?;
        hist.add(w as usize, 1);
        let mut pos = 0;
        loop {
            if pos == d {
                return Ok(hist);
            }
            idx[pos] += 1;
            if idx[pos] < elements.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Uniform samples from the box. Chunk j of `MC_CHUNK` samples draws from
/// ChaCha8 seeded with `seed` on stream j, so the result does not depend on
/// the thread count.
pub fn monte_carlo_scan(
    b: &BoxSpec<'_>,
    flavor: Flavor,
    samples: u64,
    seed: u64,
    order: usize,
    cfg: &ScanConfig,
) -> Result<EmpiricalReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let field = b.field();
    let table = match (flavor, b.elements()) {
        (Flavor::Plain, Some(e)) if e <= A0_TABLE_LIMIT => Some(a0_table(b, cfg)?),
        _ => None,
    };
    let chunks = samples.div_ceil(MC_CHUNK);
    let parts: Vec<Result<WitnessHistogram>> = with_pool(cfg.threads, || {
        (0..chunks)
            .into_par_iter()
            .map_init(
                || SplitCache::new(field),
                |cache, chunk| {
                    let n = MC_CHUNK.min(samples - chunk * MC_CHUNK);
                    sample_chunk(b, cache, flavor, seed, chunk, n, table.as_deref())
                },
            )
            .collect()
    })?;
    let mut hist = WitnessHistogram::new();
    for p in parts {
        hist.merge(&p?);
    }
    Ok(report(b, flavor, ScanMode::MonteCarlo { samples, seed }, order, hist))
}

fn a0_table(b: &BoxSpec<'_>, cfg: &ScanConfig) -> Result<Vec<Vec<PrimeIdeal>>> {
    let count = b.elements().unwrap() as usize;
    let field = b.field();
    let rows: Vec<Result<Vec<PrimeIdeal>>> = with_pool(cfg.threads, || {
        (0..count)
            .into_par_iter()
            .map_init(|| SplitCache::new(field), |cache, i| simple_primes(cache, &b.element(i as u128)))
            .collect()
    })?;
    rows.into_iter().collect()
}

fn sample_chunk(
    b: &BoxSpec<'_>,
    cache: &mut SplitCache<'_>,
    flavor: Flavor,
    seed: u64,
    chunk: u64,
    n: u64,
    table: Option<&[Vec<PrimeIdeal>]>,
) -> Result<WitnessHistogram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let k = b.field().degree();
    let h = b.h() as i64;
    let d = b.d();
    let mut hist = WitnessHistogram::new();
    let mut tuple = vec![vec![0i64; k]; d + 1];
    for _ in 0..n {
        for el in tuple.iter_mut() {
            for c in el.iter_mut() {
                *c = rng.random_range(-h..h);
            }
        }
        let w = match flavor {
            Flavor::Plain => {
                let owned;
                let cands = match table {
                    Some(t) => &t[element_index(b, &tuple[0])],
                    None => {
                        owned = simple_primes(cache, &tuple[0])?;
                        &owned
                    }
                };
                cands
                    .iter()
                    .filter(|p| !p.contains_i64(&tuple[d]) && tuple[1..d].iter().all(|a| p.contains_i64(a)))
                    .count()
            }
            Flavor::Shifted => witness_count(cache, &b.tuple(&tuple), flavor)?.0 as usize,
        };
        hist.add(w, 1);
    }
    Ok(hist)
}
