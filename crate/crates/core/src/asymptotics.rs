//! Limit-behavior probes: the central limit theorem for `L_n` and the
//! ratios `d_{n_t(m)} / log n_t(m)` along `n_t(m) = floor(2^m (1 + t))`.
//!
//! Counting is exact (each `L_n` is compared exactly against the `f64`
//! threshold), so results do not depend on how a caller splits the range.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::guard;
use crate::lebesgue::{lebesgue_fine, lebesgue_table, LebesgueTable, MAX_N};
use crate::{BigRational, DyadicRational, Error, Result};

/// Largest horizon accepted by [`clt_empirical`].
pub const MAX_CLT_N: u64 = 1 << 26;

/// Standard normal distribution function.
pub fn gaussian_cdf(y: f64) -> f64 {
    0.5 * libm::erfc(-y / core::f64::consts::SQRT_2)
}

/// `log2(n)/4 + (y/4) sqrt(log2(n)/3)`.
pub fn clt_threshold(n: u64, y: f64) -> f64 {
    let lg = libm::log2(n as f64);
    lg / 4.0 + y / 4.0 * libm::sqrt(lg / 3.0)
}

/// Whether `L_n <= clt_threshold(n, y)`, compared exactly; ties count.
#[inline]
pub fn below_clt_threshold(n: u64, l: &DyadicRational, y: f64) -> bool {
    l.cmp_f64(clt_threshold(n, y)).is_some_and(|o| o != Ordering::Greater)
}

/// Empirical fraction of `2 <= n < N` with `L_n` below the CLT threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct CltQuery {
    pub horizon: u64,
    pub y: f64,
    pub count: u64,
    /// Number of indices examined, `N - 2`.
    pub total: u64,
    pub result: f64,
    pub phi_y: f64,
}

impl CltQuery {
    pub fn from_count(horizon: u64, y: f64, count: u64) -> Self {
        let total = horizon - 2;
        Self {
            horizon,
            y,
            count,
            total,
            result: count as f64 / total as f64,
            phi_y: gaussian_cdf(y),
        }
    }

    /// `count / total` as an exact fraction.
    pub fn exact_result(&self) -> BigRational {
        BigRational::new(self.count, self.total).expect("total is positive")
    }
}

fn check_horizon(horizon: u64) -> Result<()> {
    if horizon < 4 {
        return Err(Error::InvalidArgument("the CLT horizon needs N >= 4"));
    }
    guard("N", horizon, MAX_CLT_N)
}

/// Counts `lo <= n < hi` with `L_n` below the threshold for `y`.
pub fn clt_count(table: &LebesgueTable, lo: u64, hi: u64, y: f64) -> Result<u64> {
    if hi > 0 {
        guard("n", hi - 1, table.max_n())?;
    }
    Ok((lo.max(1)..hi)
        .filter(|&n| below_clt_threshold(n, table.get(n).expect("index within table"), y))
        .count() as u64)
}

pub fn clt_empirical(horizon: u64, y: f64) -> Result<CltQuery> {
    check_horizon(horizon)?;
    let table = lebesgue_table(horizon - 1)?;
    clt_empirical_in(&table, horizon, y)
}

/// [`clt_empirical`] with a table covering `N - 1`.
pub fn clt_empirical_in(table: &LebesgueTable, horizon: u64, y: f64) -> Result<CltQuery> {
    check_horizon(horizon)?;
    if y.is_nan() {
        return Err(Error::InvalidArgument("y must be a number"));
    }
    let count = clt_count(table, 2, horizon, y)?;
    Ok(CltQuery::from_count(horizon, y, count))
}

/// [`clt_empirical`] for several thresholds sharing one table.
pub fn clt_profile(horizon: u64, ys: &[f64]) -> Result<Vec<CltQuery>> {
    check_horizon(horizon)?;
    let table = lebesgue_table(horizon - 1)?;
    ys.iter().map(|&y| clt_empirical_in(&table, horizon, y)).collect()
}

/// `d_{n_t(m)} / log n_t(m)` for one `(t, m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsequenceQuery {
    pub t: BigRational,
    pub m: u32,
    /// `floor(2^m (1 + t))`.
    pub n_t: u64,
    pub d: DyadicRational,
    pub ratio: f64,
}

/// `floor(2^m (1 + t))` in exact arithmetic.
pub fn subsequence_index(t: &BigRational, m: u32) -> Result<u64> {
    if *t < BigRational::zero() || *t > BigRational::one() {
        return Err(Error::InvalidArgument("t must lie in [0, 1]"));
    }
    if m == 0 || m > 62 {
        return Err(Error::InvalidArgument("m must lie in 1..=62"));
    }
    let scaled = (BigRational::one() + t) * BigRational::from(1u64 << m);
    let n = scaled
        .floor()
        .to_u64()
        .ok_or(Error::InvalidArgument("n_t(m) out of range"))?;
    guard("n_t(m)", n, MAX_N)?;
    Ok(n)
}

pub fn subsequence_ratio(t: &BigRational, m: u32) -> Result<SubsequenceQuery> {
    let n_t = subsequence_index(t, m)?;
    let d = lebesgue_fine(n_t)?;
    let ratio = d.to_f64() / libm::log(n_t as f64);
    Ok(SubsequenceQuery {
        t: t.clone(),
        m,
        n_t,
        d,
        ratio,
    })
}

/// Ratios for a dyadic `t` and `m = 1 ..= M`.
///
/// Once `m >= e` (the denominator exponent of `t`), `n_t(m) = 2^m (1 + t)`
/// exactly and `n_t(m+1) = 2 n_t(m)`, so `d` stays at `eventual_d` and
/// the ratio is at most `eventual_d / (m log 2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DyadicScan {
    pub queries: Vec<SubsequenceQuery>,
    /// First `m` from which `d_{n_t(m)}` is constant.
    pub stable_from: u32,
    pub eventual_d: DyadicRational,
}

impl DyadicScan {
    /// Upper bound on the ratio for `m >= stable_from`.
    pub fn epsilon(&self, m: u32) -> f64 {
        self.eventual_d.to_f64() / (f64::from(m) * core::f64::consts::LN_2)
    }

    pub fn ratios(&self) -> impl Iterator<Item = f64> + '_ {
        self.queries.iter().map(|q| q.ratio)
    }
}

pub fn dyadic_t_scan(t: &BigRational, max_m: u32) -> Result<DyadicScan> {
    let dyadic = t.to_dyadic().ok_or(Error::NotDyadic)?;
    if max_m == 0 {
        return Err(Error::InvalidArgument("need M >= 1"));
    }
    let stable_from = dyadic.exp().max(1);
    let eventual_d = subsequence_ratio(t, stable_from)?.d;
    let queries = (1..=max_m).map(|m| subsequence_ratio(t, m)).collect::<Result<_>>()?;
    Ok(DyadicScan {
        queries,
        stable_from,
        eventual_d,
    })
}

/// Ratio trajectory for one sampled `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub t: BigRational,
    pub ratios: Vec<f64>,
}

/// Denominator of the sampled `t`: the prime `2^61 - 1`, so no sample is
/// dyadic.
const SAMPLE_DENOM: u64 = (1 << 61) - 1;

/// Ratio trajectories for `samples` values `t = p / (2^61 - 1)` drawn from
/// a generator seeded with `seed`, for `m = 1 ..= max_m`.
///
/// This is a heuristic look at the almost-everywhere limit; no finite
/// run can confirm it.
pub fn ae_probe(seed: u64, samples: usize, max_m: u32) -> Result<Vec<Trajectory>> {
    if max_m == 0 || max_m > 61 {
        return Err(Error::InvalidArgument("m_max must lie in 1..=61"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let p = rng.next_u64() >> 3;
            let t = BigRational::new(p, SAMPLE_DENOM)?;
            let ratios = (1..=max_m)
                .map(|m| subsequence_ratio(&t, m).map(|q| q.ratio))
                .collect::<Result<_>>()?;
            Ok(Trajectory { t, ratios })
        })
        .collect()
}
