use alloc::format;
use alloc::string::ToString;
use core::cmp::Ordering;

use super::{lebesgue_fine, lebesgue_table, LebesgueTable};
use crate::error::guard;
use crate::{bit_length, BigRational, DyadicRational, Error, Result, VerificationReport};

/// Largest block index for the closed-form block maximum.
pub const BLOCK_MAX_R: u32 = 60;

/// Largest block index scanned by [`block_max_brute`].
pub const BLOCK_MAX_BRUTE_R: u32 = 24;

/// Maximum of `L_n` over `2^{r-1} <= n <= 2^r` and where it is attained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMax {
    pub r: u32,
    pub value: BigRational,
    pub argmax: u64,
}

/// Closed form `r/3 + 7/9 + (-1)^r / (9 2^{r-1})`, attained at
/// `n = (2^{r+1} + (-1)^r) / 3`.
pub fn block_max(r: u32) -> Result<BlockMax> {
    if r == 0 {
        return Err(Error::InvalidArgument("block index r must be positive"));
    }
    guard("r", u64::from(r), u64::from(BLOCK_MAX_R))?;
    let sign: i64 = if r % 2 == 0 { 1 } else { -1 };
    let value = BigRational::new(r, 3)? + BigRational::new(7, 9)? + BigRational::new(sign, 9i64 << (r - 1))?;
    let numer = (1i128 << (r + 1)) + i128::from(sign);
    debug_assert_eq!(numer % 3, 0);
    let argmax = (numer / 3) as u64;
    Ok(BlockMax { r, value, argmax })
}

/// Largest `L_n` on `[2^{r-1}, 2^r]` by scanning a fresh table; ties go to
/// the smaller `n`.
pub fn block_max_brute(r: u32) -> Result<(DyadicRational, u64)> {
    if r == 0 {
        return Err(Error::InvalidArgument("block index r must be positive"));
    }
    guard("r", u64::from(r), u64::from(BLOCK_MAX_BRUTE_R))?;
    let table = lebesgue_table(1 << r)?;
    block_max_brute_in(&table, r)
}

/// [`block_max_brute`] over an existing table covering `2^r`.
pub fn block_max_brute_in(table: &LebesgueTable, r: u32) -> Result<(DyadicRational, u64)> {
    if r == 0 || r > 63 {
        return Err(Error::InvalidArgument("block index r out of range"));
    }
    let hi = 1u64 << r;
    guard("2^r", hi, table.max_n())?;
    let mut best: Option<(&DyadicRational, u64)> = None;
    for n in (1u64 << (r - 1))..=hi {
        let v = table.get(n).expect("index within table");
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, n));
        }
    }
    let (v, n) = best.expect("nonempty block");
    Ok((v.clone(), n))
}

/// The block index `r` if `n = 2^s (2^{r+1} + (-1)^r) / 3` for some
/// `s >= 0`, i.e. if `n` is a block maximizer or a doubling of one.
pub fn maximizer_block(n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let odd = n >> n.trailing_zeros();
    let r = bit_length(odd);
    (1..=BLOCK_MAX_R)
        .contains(&r)
        .then(|| block_max(r).ok())
        .flatten()
        .filter(|b| b.argmax == odd)
        .map(|b| b.r)
}

/// Checks `L_n <= log2(n) / 3 + 1` for every `1 <= n <= max_n`.
///
/// Each comparison is rigorous: `3 (L_n - 1)` is compared exactly with
/// `floor(log2 n)` first, and otherwise with a floating value of `log2 n`
/// nudged a few ulps down. A verdict that the nudged bounds cannot settle
/// is reported as a failure.
pub fn upper_bound_check(max_n: u64) -> Result<VerificationReport> {
    let table = lebesgue_table(max_n)?;
    upper_bound_check_in(&table, 1, max_n)
}

/// [`upper_bound_check`] over `lo..=hi` using an existing table.
pub fn upper_bound_check_in(table: &LebesgueTable, lo: u64, hi: u64) -> Result<VerificationReport> {
    if lo == 0 || lo > hi {
        return Err(Error::InvalidArgument("need 1 <= lo <= hi"));
    }
    guard("hi", hi, table.max_n())?;
    let mut report = VerificationReport::new("upper-bound", lo, hi);
    for n in lo..=hi {
        let l = table.get(n).expect("index within table");
        match bound_holds(n, l) {
            Some(true) => {}
            verdict => {
                let method = if verdict.is_none() {
                    "log2(n)/3+1 (undecided)"
                } else {
                    "log2(n)/3+1"
                };
                report.record_failure(
                    n,
                    "L_n",
                    l.to_string(),
                    method,
                    format!("{:.17e}", libm::log2(n as f64) / 3.0 + 1.0),
                );
            }
        }
        report.checked += 1;
    }
    Ok(report)
}

// Some(true): holds; Some(false): violated; None: too close to call.
fn bound_holds(n: u64, l: &DyadicRational) -> Option<bool> {
    let lhs = (l - &DyadicRational::ONE).mul_int(3);
    let floor_log = DyadicRational::from(bit_length(n) - 1);
    if lhs <= floor_log {
        return Some(true);
    }
    let log = libm::log2(n as f64);
    let (mut down, mut up) = (log, log);
    for _ in 0..4 {
        down = down.next_down();
        up = up.next_up();
    }
    if lhs.cmp_f64(down)? != Ordering::Greater {
        Some(true)
    } else if lhs.cmp_f64(up)? == Ordering::Greater {
        Some(false)
    } else {
        None
    }
}

/// `(1/n) sum_{k <= n} L_k - log2(n) / 4` with the mean formed exactly and
/// only the final subtraction in floating point.
pub fn average_deviation(n: u64) -> Result<f64> {
    let table = lebesgue_table(n)?;
    average_deviation_in(&table, n)
}

/// [`average_deviation`] using an existing table.
pub fn average_deviation_in(table: &LebesgueTable, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("the average deviation needs n >= 2"));
    }
    let sum = table.prefix_sum(n).ok_or(Error::GuardExceeded {
        what: "n",
        value: n,
        limit: table.max_n(),
    })?;
    let mean = BigRational::from(sum).checked_div(&BigRational::from(n))?;
    Ok(mean.to_f64() - libm::log2(n as f64) / 4.0)
}

/// `L_n - (4/9 + log2(3)/3 + log2(n)/3)`.
///
/// Evaluated as `(L_n - 4/9 - p/3) - log2(1 + f)/3` where
/// `3n = 2^p (1 + f)` with `|f| <= 1/2`; the first term is exact up to the
/// final rounding, so values near zero keep full relative precision.
pub fn limsup_bracket(n: u64) -> Result<f64> {
    let l = lebesgue_fine(n)?;
    let three_n = 3 * u128::from(n);
    let e = 128 - three_n.leading_zeros();
    // Pick the power of two nearest to 3n.
    let p = if three_n < 3u128 << (e - 2) { e - 1 } else { e };
    let pow = 1u128 << p;
    let f = (three_n as i128 - pow as i128) as f64 / pow as f64;
    let exact = BigRational::from(l) - BigRational::new(4, 9)? - BigRational::new(p, 3)?;
    Ok(exact.to_f64() - libm::log1p(f) / (3.0 * core::f64::consts::LN_2))
}

/// [`limsup_bracket`] at the maximizer of block `r`.
pub fn limsup_probe(r: u32) -> Result<f64> {
    if r < 2 {
        return Err(Error::InvalidArgument("the probe needs r >= 2"));
    }
    limsup_bracket(block_max(r)?.argmax)
}
