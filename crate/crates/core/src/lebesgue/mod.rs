//! Lebesgue constants `L_n` of the Walsh system by number-theoretic routes:
//! the closed form over the binary decomposition of `n`, the even/odd
//! recursion (pointwise and as a table), the nearest-integer sum, and the
//! generating function. Block maxima, the logarithmic upper bound and the
//! asymptotic probes live in the submodules.

mod extremes;
mod series;

use alloc::vec::Vec;

pub use extremes::{
    average_deviation, average_deviation_in, block_max, block_max_brute, block_max_brute_in, limsup_bracket,
    limsup_probe, maximizer_block, upper_bound_check, upper_bound_check_in, BlockMax, BLOCK_MAX_BRUTE_R, BLOCK_MAX_R,
};
pub use series::{generating_function_coeffs, PowerSeries, GF_MAX_TERMS};

use crate::error::guard;
use crate::{bit_length, DyadicRational, Error, Result};

/// Largest `n` accepted by the closed forms (`n < 2^63`).
pub const MAX_N: u64 = (1 << 63) - 1;

/// Default memory guard for [`lebesgue_table`].
pub const DEFAULT_TABLE_CAP: u64 = 1 << 26;

/// Exponents `n_1 > n_2 > ... > n_nu >= 0` with `n = sum 2^{n_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryDecomposition {
    n: u64,
    exponents: Vec<u32>,
}

impl BinaryDecomposition {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Strictly decreasing exponents.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Number of binary digits equal to one.
    pub fn nu(&self) -> usize {
        self.exponents.len()
    }

    /// `n_1 = floor(log2 n)`.
    pub fn leading(&self) -> u32 {
        self.exponents[0]
    }
}

pub fn decompose(n: u64) -> Result<BinaryDecomposition> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive"));
    }
    let exponents = (0..64u32).rev().filter(|&i| (n >> i) & 1 == 1).collect();
    Ok(BinaryDecomposition { n, exponents })
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive"));
    }
    guard("n", n, MAX_N)
}

/// `L_n = nu - sum_{1 <= j < i <= nu} 2^{n_i - n_j}`.
pub fn lebesgue_fine(n: u64) -> Result<DyadicRational> {
    check_n(n)?;
    let d = decompose(n)?;
    let e = d.exponents();
    let top = d.leading();
    // Work over the common denominator 2^{n_1}: 2^{n_i - n_j} = 2^{n_i - n_j + n_1} / 2^{n_1}.
    let mut numer = (d.nu() as i128) << top;
    for i in 1..e.len() {
        for j in 0..i {
            numer -= 1i128 << (e[i] + top - e[j]);
        }
    }
    Ok(DyadicRational::from_i128(numer, top))
}

/// `L_n` from `L_0 = 0`, `L_1 = 1`, `L_{2n} = L_n` and
/// `L_{2n+1} = (1 + L_n + L_{n+1}) / 2`.
///
/// Walks the binary digits of `n` from the top carrying the pair
/// `(L_m, L_{m+1})` for the current prefix `m`, so only `O(log n)`
/// values are ever formed.
pub fn lebesgue_recursive(n: u64) -> DyadicRational {
    let mut lo = DyadicRational::ZERO;
    let mut hi = DyadicRational::ONE;
    for i in (0..bit_length(n)).rev() {
        let mid = odd_step(&lo, &hi);
        if (n >> i) & 1 == 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

#[inline]
fn odd_step(a: &DyadicRational, b: &DyadicRational) -> DyadicRational {
    (DyadicRational::ONE + a + b).div_pow2(1)
}

/// `L_0 ... L_N` computed in one forward pass of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LebesgueTable {
    // values[0] = L_0 = 0
    values: Vec<DyadicRational>,
}

impl LebesgueTable {
    /// Largest index held.
    pub fn max_n(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// `L_n` for `0 <= n <= max_n`.
    pub fn get(&self, n: u64) -> Option<&DyadicRational> {
        usize::try_from(n).ok().and_then(|i| self.values.get(i))
    }

    /// `L_1 ... L_N`.
    pub fn as_slice(&self) -> &[DyadicRational] {
        &self.values[1..]
    }

    /// `(n, L_n)` for `n = 1 ... N`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &DyadicRational)> + '_ {
        self.values.iter().enumerate().skip(1).map(|(i, v)| (i as u64, v))
    }

    /// `L_1 + ... + L_n`.
    pub fn prefix_sum(&self, n: u64) -> Option<DyadicRational> {
        let upto = usize::try_from(n).ok()?;
        let slice = self.values.get(1..=upto)?;
        Some(slice.iter().sum())
    }
}

pub fn lebesgue_table(max_n: u64) -> Result<LebesgueTable> {
    lebesgue_table_capped(max_n, DEFAULT_TABLE_CAP)
}

/// [`lebesgue_table`] with an explicit memory guard on `max_n`.
pub fn lebesgue_table_capped(max_n: u64, cap: u64) -> Result<LebesgueTable> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("the table needs N >= 1"));
    }
    guard("N", max_n, cap)?;
    let len = usize::try_from(max_n)
        .ok()
        .and_then(|n| n.checked_add(1))
        .ok_or(Error::GuardExceeded {
            what: "N",
            value: max_n,
            limit: cap,
        })?;
    let mut values = Vec::with_capacity(len);
    values.push(DyadicRational::ZERO);
    values.push(DyadicRational::ONE);
    for n in 2..len {
        let v = if n % 2 == 0 {
            values[n / 2].clone()
        } else {
            odd_step(&values[n / 2], &values[n / 2 + 1])
        };
        values.push(v);
    }
    Ok(LebesgueTable { values })
}

/// `L_n = sum_{r=1}^m ||n / 2^r|| + n / 2^m` with `m` the smallest
/// exponent such that `n <= 2^m`; `||x||` is the distance from `x` to the
/// nearest integer.
pub fn lebesgue_nearest_int(n: u64) -> Result<DyadicRational> {
    check_n(n)?;
    let m = bit_length(n - 1);
    let mut total = DyadicRational::ZERO;
    for r in 1..=m {
        let modulus = 1u64 << r;
        let rem = n & (modulus - 1);
        let dist = rem.min(modulus - rem);
        total += DyadicRational::from_i128(i128::from(dist), r);
    }
    total += DyadicRational::from_i128(i128::from(n), m);
    Ok(total)
}
