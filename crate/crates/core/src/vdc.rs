//! The van der Corput sequence and its exact star discrepancy.
//!
//! `d_n = n D*_n` is computed four ways: from order statistics of the
//! sorted prefix, as twice the `L_1` norm of the discrepancy function
//! (pointwise or block by block), through the Walsh-sum representation,
//! and (via the identity `d_n = L_n`) by the closed forms of
//! [`crate::lebesgue`].

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::guard;
use crate::lebesgue::{decompose, MAX_N};
use crate::walsh::{wal, DyadicPoint, WalshIndex};
use crate::{bit_length, BigRational, DyadicRational, Error, Result, VerificationReport};

/// Largest prefix length for the sorting-based routines.
pub const MAX_SORTED_N: u64 = 1 << 22;

/// Largest prefix length for [`walsh_sum_discrepancy`].
pub const MAX_WALSH_SUM_N: u64 = 1 << 10;

fn check_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("the prefix length must be positive"))
    } else {
        Ok(())
    }
}

/// Numerator and exponent of `y_k`: the binary digits of `k` mirrored
/// about the binary point.
#[inline]
fn radical_inverse(k: u64) -> (u64, u32) {
    if k == 0 {
        return (0, 0);
    }
    let width = bit_length(k);
    (k.reverse_bits() >> (64 - width), width)
}

/// `y_k = k_0 / 2 + k_1 / 4 + k_2 / 8 + ...`.
pub fn vdc_point(k: u64) -> DyadicRational {
    let (num, exp) = radical_inverse(k);
    DyadicRational::new(num, exp)
}

/// `y_k` as a [`DyadicPoint`], ready for Walsh evaluation.
pub fn vdc_dyadic_point(k: u64) -> DyadicPoint {
    let (num, exp) = radical_inverse(k);
    DyadicPoint::grid(num, exp)
}

/// Reverses the low `width` binary digits of `m`.
pub fn bit_reverse_index(m: u64, width: u32) -> Result<u64> {
    if width > 64 {
        return Err(Error::InvalidArgument("width exceeds 64 bits"));
    }
    if width < 64 && m >> width != 0 {
        return Err(Error::InvalidArgument("index does not fit the width"));
    }
    Ok(if width == 0 {
        0
    } else {
        m.reverse_bits() >> (64 - width)
    })
}

/// The first `n` points `y_0, ..., y_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VdcPrefix {
    points: Vec<DyadicRational>,
}

impl VdcPrefix {
    pub fn new(n: u64) -> Result<Self> {
        check_positive(n)?;
        guard("n", n, MAX_SORTED_N)?;
        Ok(Self {
            points: (0..n).map(vdc_point).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[DyadicRational] {
        &self.points
    }

    /// Points in increasing order.
    pub fn sorted(&self) -> Vec<DyadicRational> {
        let mut v = self.points.clone();
        v.sort();
        v
    }
}

/// One block `{ k step + offset : 0 <= k < size }` of the prefix of length
/// `n = 2^{n_1} + ... + 2^{n_nu}`: block `i` holds `y_l` for the `2^{n_i}`
/// indices following `2^{n_1} + ... + 2^{n_{i-1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixBlock {
    /// Block number, starting at 1.
    pub index: usize,
    /// Exponent `n_i`.
    pub exponent: u32,
    /// `sum_{j < i} 2^-(n_j + 1)`.
    pub offset: DyadicRational,
}

impl PrefixBlock {
    pub fn size(&self) -> u64 {
        1 << self.exponent
    }

    /// `2^-{n_i}`.
    pub fn step(&self) -> DyadicRational {
        DyadicRational::pow2_recip(self.exponent)
    }

    pub fn points(&self) -> impl Iterator<Item = DyadicRational> + '_ {
        (0..self.size()).map(move |k| &DyadicRational::new(k, self.exponent) + &self.offset)
    }
}

pub fn prefix_blocks(n: u64) -> Result<Vec<PrefixBlock>> {
    let d = decompose(n)?;
    let mut offset = DyadicRational::ZERO;
    let mut blocks = Vec::with_capacity(d.nu());
    for (i, &e) in d.exponents().iter().enumerate() {
        blocks.push(PrefixBlock {
            index: i + 1,
            exponent: e,
            offset: offset.clone(),
        });
        offset += DyadicRational::pow2_recip(e + 1);
    }
    Ok(blocks)
}

/// Exact star discrepancy `sup_t |#{k < n : x_k < t} / n - t|` of a finite
/// point set in `[0, 1)`, by the order-statistics formula
/// `max_i max(i/n - x_(i), x_(i) - (i-1)/n)`.
///
/// All points are brought to the common denominator `2^E` of the largest
/// exponent present; `E` may not exceed 64.
pub fn star_discrepancy_of(points: &[DyadicRational]) -> Result<BigRational> {
    let n = points.len() as u64;
    check_positive(n)?;
    guard("n", n, MAX_SORTED_N)?;
    let mut scaled = scale_to_common(points)?;
    scaled.values.sort_unstable();
    let (numer, denom) = order_statistics_max(&scaled.values, scaled.exp);
    BigRational::new(numer, denom)
}

struct Scaled {
    values: Vec<u64>,
    exp: u32,
}

fn scale_to_common(points: &[DyadicRational]) -> Result<Scaled> {
    let exp = points.iter().map(DyadicRational::exp).max().unwrap_or(0);
    if exp > 64 {
        return Err(Error::InvalidArgument("points need at most 64 binary digits"));
    }
    let mut values = Vec::with_capacity(points.len());
    for p in points {
        if p.is_negative() || *p >= DyadicRational::ONE {
            return Err(Error::PointOutOfRange);
        }
        let num = p.mul_pow2(exp).numer();
        values.push(u64::try_from(num).map_err(|_| Error::PointOutOfRange)?);
    }
    Ok(Scaled { values, exp })
}

// Returns the maximum as numer / (n 2^exp), with sorted[i - 1] = x_(i) 2^exp.
fn order_statistics_max(sorted: &[u64], exp: u32) -> (i128, i128) {
    let n = sorted.len() as i128;
    let unit: i128 = 1 << exp;
    let mut best = 0i128;
    for (idx, &x) in sorted.iter().enumerate() {
        let i = idx as i128 + 1;
        let nx = n * i128::from(x);
        best = best.max(i * unit - nx).max(nx - (i - 1) * unit);
    }
    (best, n * unit)
}

/// `D*_n` of the first `n` van der Corput points.
pub fn star_discrepancy(n: u64) -> Result<BigRational> {
    check_positive(n)?;
    guard("n", n, MAX_SORTED_N)?;
    let (sorted, exp) = sorted_prefix(n);
    let (numer, denom) = order_statistics_max(&sorted, exp);
    BigRational::new(numer, denom)
}

// Sorted numerators of y_0 .. y_{n-1} over the common denominator 2^exp.
fn sorted_prefix(n: u64) -> (Vec<u64>, u32) {
    let exp = bit_length(n - 1);
    let mut values: Vec<u64> = (0..n)
        .map(|k| {
            let (num, e) = radical_inverse(k);
            num << (exp - e)
        })
        .collect();
    values.sort_unstable();
    (values, exp)
}

fn to_dyadic_checked(v: BigRational) -> Result<DyadicRational> {
    v.to_dyadic().ok_or(Error::NotDyadic)
}

/// Non-normalized star discrepancy `d_n = n D*_n`, which is always dyadic.
pub fn d_n(n: u64) -> Result<DyadicRational> {
    let d = star_discrepancy(n)? * BigRational::from(n);
    to_dyadic_checked(d)
}

/// `d_n = 2 sum_{l < n} (1/2 - y_l)`, summed point by point.
pub fn d_n_via_l1(n: u64) -> Result<DyadicRational> {
    check_positive(n)?;
    guard("n", n, MAX_SORTED_N)?;
    let half = DyadicRational::pow2_recip(1);
    let sum: DyadicRational = (0..n).map(|l| &half - &vdc_point(l)).sum();
    Ok(sum.mul_pow2(1))
}

/// `d_n = 2 (nu/2 - sum_i 2^{n_i} offset_i)`: the same `L_1` sum with
/// each block summed in closed form.
pub fn d_n_via_l1_blocks(n: u64) -> Result<DyadicRational> {
    check_positive(n)?;
    guard("n", n, MAX_N)?;
    let blocks = prefix_blocks(n)?;
    let mut total = DyadicRational::from(blocks.len() as u64).div_pow2(1);
    for b in &blocks {
        total -= &b.offset.mul_pow2(b.exponent);
    }
    Ok(total.mul_pow2(1))
}

/// `d_n` for `n = 1, 2, ...` from one incrementally sorted prefix.
///
/// Each step inserts `y_{n-1}` into the sorted prefix and rescans the
/// order statistics, so a sweep to `N` costs `O(N^2)` instead of the
/// `O(N^2 log N)` of calling [`d_n`] per index.
#[derive(Clone, Debug, Default)]
pub struct DiscrepancySweep {
    sorted: Vec<u64>,
    exp: u32,
}

impl DiscrepancySweep {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of points taken so far.
    pub fn len(&self) -> u64 {
        self.sorted.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }
}

impl Iterator for DiscrepancySweep {
    type Item = DyadicRational;

    fn next(&mut self) -> Option<DyadicRational> {
        let k = self.len();
        if k >= MAX_SORTED_N {
            return None;
        }
        let (num, e) = radical_inverse(k);
        if e > self.exp {
            let grow = e - self.exp;
            for v in &mut self.sorted {
                *v <<= grow;
            }
            self.exp = e;
        }
        let v = num << (self.exp - e);
        let at = self.sorted.partition_point(|&x| x < v);
        self.sorted.insert(at, v);
        let (numer, denom) = order_statistics_max(&self.sorted, self.exp);
        // n D* = numer / 2^exp
        debug_assert_eq!(denom, (self.len() as i128) << self.exp);
        Some(DyadicRational::from_i128(numer, self.exp))
    }
}

/// Checks the endpoint form of `Delta_n(t) >= 0`: `x_(i) <= (i-1)/n` for
/// every order statistic of the first `n` points.
pub fn nonnegativity_check(n: u64) -> Result<VerificationReport> {
    check_positive(n)?;
    guard("n", n, MAX_SORTED_N)?;
    let (sorted, exp) = sorted_prefix(n);
    let mut report = VerificationReport::new("nonnegativity", 1, n);
    for (idx, &x) in sorted.iter().enumerate() {
        let i = idx as u64 + 1;
        // n x_(i) <= i - 1, scaled by 2^exp
        if u128::from(n) * u128::from(x) > u128::from(i - 1) << exp {
            report.record_failure(
                i,
                "x_(i)",
                DyadicRational::new(x, exp).to_string(),
                "(i-1)/n",
                format!("{}/{}", i - 1, n),
            );
        }
        report.checked += 1;
    }
    Ok(report)
}

/// [`nonnegativity_check`] for every prefix length `1..=max_n`; a failure
/// entry names the first offending prefix length.
pub fn nonnegativity_sweep(max_n: u64) -> Result<VerificationReport> {
    check_positive(max_n)?;
    guard("n", max_n, MAX_SORTED_N)?;
    let mut report = VerificationReport::new("nonnegativity", 1, max_n);
    for n in 1..=max_n {
        let single = nonnegativity_check(n)?;
        if let Some(f) = single.first_failure() {
            report.record_failure(
                n,
                format!("x_({})", f.n),
                f.value_a.clone(),
                f.method_b.clone(),
                f.value_b.clone(),
            );
        }
        report.checked += 1;
    }
    Ok(report)
}

/// `D*_n = 2^-(n_1+1) sum_{m'} |(1/n) sum_{k < n} wal_{m'}(y_k)|`, with `m'`
/// running over the digit reversals of `m = 0 .. 2^{n_1+1} - 1`.
pub fn walsh_sum_discrepancy(n: u64) -> Result<BigRational> {
    check_positive(n)?;
    guard("n", n, MAX_WALSH_SUM_N)?;
    let width = bit_length(n);
    let points: Vec<DyadicPoint> = (0..n).map(vdc_dyadic_point).collect();
    let mut total: u64 = 0;
    for m in 0..(1u64 << width) {
        let index = WalshIndex(bit_reverse_index(m, width)?);
        let s: i64 = points.iter().map(|y| i64::from(wal(index, y))).sum();
        total += s.unsigned_abs();
    }
    BigRational::new(total, (n as i128) << width)
}
