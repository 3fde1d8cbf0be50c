use alloc::vec;
use alloc::vec::Vec;

use crate::error::guard;
use crate::{BigRational, DyadicRational, Error, Result};

/// Largest truncation order accepted by [`generating_function_coeffs`].
pub const GF_MAX_TERMS: u64 = 1 << 14;

/// A formal power series over exact rationals truncated after `z^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigRational::one())
    }

    /// `c z^deg`; vanishes if `deg > order`.
    pub fn monomial(order: usize, deg: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        if deg <= order {
            s.coeffs[deg] = c;
        }
        s
    }

    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least one coefficient"));
        }
        Ok(Self { coeffs })
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^i`; `None` beyond the truncation order.
    pub fn coeff(&self, i: usize) -> Option<&BigRational> {
        self.coeffs.get(i)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        Self {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        Self {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Product truncated to the smaller of the two orders. Zero
    /// coefficients of `self` are skipped, so sparse factors are cheap.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let inv_a0 = self.coeffs[0].recip()?;
        let support: Vec<usize> = (1..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect();
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(inv_a0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = BigRational::zero();
            for &i in support.iter().take_while(|&&i| i <= n) {
                acc = acc + &(&self.coeffs[i] * &out[n - i]);
            }
            out.push(-(acc * &inv_a0));
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplies by `z^k`, keeping the truncation order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in k..=n {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Divides by `1 - z` (running prefix sums).
    pub fn div_one_minus_z(&self) -> Self {
        let mut acc = BigRational::zero();
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    acc = &acc + c;
                    acc.clone()
                })
                .collect(),
        }
    }
}

/// The series `(z / (2 (1 - z)^2)) sum_{k >= 0} 2^-k (1 - z^{2^k}) / (1 + z^{2^k})`
/// truncated after `z^N`; its coefficient of `z^n` is `L_n`.
///
/// Factors with `2^k > N` are `1` modulo `z^{N+1}`, so the sum runs to
/// `K = floor(log2 N)` and the omitted tail contributes the constant
/// `sum_{k > K} 2^-k = 2^-K`.
pub fn generating_function_coeffs(max_n: u64) -> Result<PowerSeries> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("need at least one term"));
    }
    guard("terms", max_n, GF_MAX_TERMS)?;
    let order = max_n as usize;
    let last_k = crate::bit_length(max_n) - 1;

    let one = BigRational::one();
    let mut sum = PowerSeries::zero(order);
    for k in 0..=last_k {
        let step = 1usize << k;
        let numer = PowerSeries::one(order).sub(&PowerSeries::monomial(order, step, one.clone()));
        let denom = PowerSeries::one(order).add(&PowerSeries::monomial(order, step, one.clone()));
        let weight = BigRational::from(DyadicRational::pow2_recip(k));
        sum = sum.add(&numer.mul(&denom.inverse()?).scale(&weight));
    }
    let tail = BigRational::from(DyadicRational::pow2_recip(last_k));
    sum = sum.add(&PowerSeries::monomial(order, 0, tail));

    let half = BigRational::from(DyadicRational::pow2_recip(1));
    Ok(sum.shift_up(1).scale(&half).div_one_minus_z().div_one_minus_z())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    fn series(cs: &[&str]) -> PowerSeries {
        PowerSeries::from_coeffs(cs.iter().map(|s| q(s)).collect()).unwrap()
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_z = series(&["1", "-1", "0", "0", "0"]);
        let inv = one_minus_z.inverse().unwrap();
        assert_eq!(inv, series(&["1", "1", "1", "1", "1"]));
        assert_eq!(inv.mul(&one_minus_z), PowerSeries::one(4));
        assert_eq!(PowerSeries::one(4).div_one_minus_z(), inv);
    }

    #[test]
    fn inverse_needs_constant_term() {
        assert_eq!(series(&["0", "1"]).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn dense_inverse_round_trip() {
        let a = series(&["2", "1/3", "-5", "7/2", "0", "1"]);
        assert_eq!(a.mul(&a.inverse().unwrap()), PowerSeries::one(5));
    }

    #[test]
    fn mul_truncates_to_common_order() {
        let a = series(&["1", "1"]);
        let b = series(&["1", "2", "3"]);
        assert_eq!(a.mul(&b), series(&["1", "3"]));
        assert_eq!(b.shift_up(2), series(&["0", "0", "1"]));
    }

    #[test]
    fn first_coefficients() {
        let s = generating_function_coeffs(8).unwrap();
        assert!(s.coeff(0).unwrap().is_zero());
        let want = ["1", "1", "3/2", "1", "7/4", "3/2", "7/4", "1"];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(s.coeff(i + 1).unwrap(), &q(w), "z^{}", i + 1);
        }
        let one = generating_function_coeffs(1).unwrap();
        assert_eq!(one.coeffs(), &[BigRational::zero(), BigRational::one()]);
    }

    #[test]
    fn guard_and_domain() {
        assert!(generating_function_coeffs(0).is_err());
        assert!(matches!(
            generating_function_coeffs(GF_MAX_TERMS + 1),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
