//! Walsh functions, the Walsh Dirichlet kernel and Lebesgue functions, all
//! evaluated exactly at dyadic points.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::guard;
use crate::{bit_length, DyadicRational, Error, Result};

/// Default ceiling on `n` for [`lebesgue_function`]; the cost grows like
/// `n * 2^(n_1 + 1)`.
pub const DEFAULT_INTEGRAL_CAP: u64 = 1 << 20;

/// Index `k = k_0 + k_1 2 + ... + k_m 2^m` of a Walsh function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WalshIndex(pub u64);

impl WalshIndex {
    pub fn get(self) -> u64 {
        self.0
    }

    /// Position `m` of the leading binary digit; `None` for `k = 0`.
    pub fn degree(self) -> Option<u32> {
        bit_length(self.0).checked_sub(1)
    }

    /// Binary digit `k_j`.
    pub fn digit(self, j: u32) -> u8 {
        if j >= 64 {
            0
        } else {
            ((self.0 >> j) & 1) as u8
        }
    }
}

impl From<u64> for WalshIndex {
    fn from(k: u64) -> Self {
        WalshIndex(k)
    }
}

/// A dyadic point of `[0, 1)` together with its first 64 binary digits.
///
/// Bit `j` of the digit word is `x_{j+1}` in `x = x_1/2 + x_2/4 + ...`
/// (the terminating expansion). Digits past the 64th never pair with a
/// digit of a 64-bit Walsh index, so the word determines every `wal_k(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicPoint {
    value: DyadicRational,
    digits: u64,
}

impl DyadicPoint {
    pub fn new(value: DyadicRational) -> Result<Self> {
        if value.is_negative() || value >= DyadicRational::ONE {
            return Err(Error::PointOutOfRange);
        }
        let exp = value.exp();
        let leading = if exp <= 64 {
            // value < 1 so the numerator has at most `exp` bits.
            let num = match value.numer_i64() {
                Some(v) => v as u64,
                None => value.numer().to_u64().unwrap_or(0),
            };
            if exp == 0 {
                0
            } else {
                num << (64 - exp)
            }
        } else {
            let top: BigInt = value.numer() >> (exp - 64);
            top.to_u64().unwrap_or(0)
        };
        Ok(Self {
            value,
            digits: leading.reverse_bits(),
        })
    }

    /// The point `num / 2^exp`.
    pub fn from_ratio(num: u64, exp: u32) -> Result<Self> {
        Self::new(DyadicRational::new(num, exp))
    }

    /// The grid point `m / 2^bits` for `m < 2^bits <= 2^64`, skipping the
    /// bignum round trip.
    pub(crate) fn grid(m: u64, bits: u32) -> Self {
        debug_assert!(bits <= 64 && (bits == 64 || m >> bits == 0));
        let leading = if bits == 0 { 0 } else { m << (64 - bits) };
        Self {
            value: DyadicRational::new(m, bits),
            digits: leading.reverse_bits(),
        }
    }

    pub fn value(&self) -> &DyadicRational {
        &self.value
    }

    /// Digit `x_i` for `i >= 1`.
    pub fn digit(&self, i: u32) -> u8 {
        assert!(i >= 1, "binary digits are numbered from 1");
        if i <= 64 {
            ((self.digits >> (i - 1)) & 1) as u8
        } else {
            let exp = self.value.exp();
            if i > exp {
                0
            } else {
                let bit: BigInt = (self.value.numer() >> (exp - i)) & BigInt::one();
                bit.to_u8().unwrap_or(0)
            }
        }
    }

    /// Digit word with bit `j` equal to `x_{j+1}`.
    pub fn digit_word(&self) -> u64 {
        self.digits
    }
}

#[inline]
fn sign_of_parity(word: u64) -> i32 {
    if word.count_ones() & 1 == 0 {
        1
    } else {
        -1
    }
}

/// `wal_k(x) = (-1)^(x_1 k_0 + x_2 k_1 + ... + x_{m+1} k_m)`.
#[inline]
pub fn wal(k: WalshIndex, x: &DyadicPoint) -> i32 {
    sign_of_parity(k.0 & x.digits)
}

/// Walsh Dirichlet kernel `D_n(x, u) = sum_{k < n} wal_k(x) wal_k(u)`, by
/// direct summation.
pub fn dirichlet_kernel(n: u64, x: &DyadicPoint, u: &DyadicPoint) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidArgument("the kernel needs n >= 1"));
    }
    Ok(kernel_sum(n, x.digits ^ u.digits))
}

// wal_k(x) wal_k(u) depends only on the XOR of the digit words.
#[inline]
fn kernel_sum(n: u64, word: u64) -> i64 {
    (0..n).map(|k| i64::from(sign_of_parity(k & word))).sum()
}

/// Lebesgue function `L_n(x) = int_0^1 |D_n(x, u)| du`, integrated exactly.
///
/// With `n_1 = floor(log2 n)`, every `wal_k` with `k < 2^(n_1 + 1)` is
/// constant on the dyadic intervals of length `2^-(n_1 + 1)`, so the
/// integral is the average of `|D_n(x, m 2^-(n_1+1))|` over that grid.
pub fn lebesgue_function(n: u64, x: &DyadicPoint) -> Result<DyadicRational> {
    lebesgue_function_capped(n, x, DEFAULT_INTEGRAL_CAP)
}

/// [`lebesgue_function`] with an explicit ceiling on `n`.
pub fn lebesgue_function_capped(n: u64, x: &DyadicPoint, cap: u64) -> Result<DyadicRational> {
    if n == 0 {
        return Err(Error::InvalidArgument("L_n needs n >= 1"));
    }
    guard("n", n, cap.min((1 << 63) - 1))?;
    let bits = bit_length(n);
    let cells = 1u64 << bits;
    let total: u64 = (0..cells)
        .map(|m| {
            let u = DyadicPoint::grid(m, bits);
            kernel_sum(n, x.digits ^ u.digits).unsigned_abs()
        })
        .sum();
    Ok(DyadicRational::new(total, bits))
}
