use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{render, DyadicRational, Render};
use crate::{Error, Result};

/// An exact rational `num / den` in lowest terms with `den >= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigRational(Ratio<BigInt>);

impl BigRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(Ratio::new(num.into(), den)))
    }

    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn one() -> Self {
        Self(Ratio::one())
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Self(Ratio::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// The same value as a [`DyadicRational`] when the denominator is a
    /// power of two.
    pub fn to_dyadic(&self) -> Option<DyadicRational> {
        let den = self.denom();
        let tz = den.trailing_zeros().unwrap_or(0);
        if den.bits() != tz + 1 {
            return None;
        }
        Some(DyadicRational::new(self.numer().clone(), u32::try_from(tz).ok()?))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn render(&self, mode: Render) -> String {
        match mode {
            Render::Fraction => self.to_string(),
            Render::Decimal(digits) => render::decimal(self.numer(), self.denom().magnitude(), digits),
        }
    }
}

impl From<DyadicRational> for BigRational {
    fn from(v: DyadicRational) -> Self {
        Self::from(&v)
    }
}

impl From<&DyadicRational> for BigRational {
    fn from(v: &DyadicRational) -> Self {
        Self(Ratio::new_raw(v.numer(), BigInt::one() << v.exp()))
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for BigRational {
            fn from(v: $t) -> Self {
                Self::from_integer(v)
            }
        }
    )*};
}

from_int!(i32, i64, u32, u64);

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&BigRational> for &BigRational {
            type Output = BigRational;
            fn $method(self, rhs: &BigRational) -> BigRational {
                BigRational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<BigRational> for BigRational {
            type Output = BigRational;
            fn $method(self, rhs: BigRational) -> BigRational {
                BigRational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&BigRational> for BigRational {
            type Output = BigRational;
            fn $method(self, rhs: &BigRational) -> BigRational {
                BigRational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for BigRational {
    type Output = BigRational;
    fn neg(self) -> BigRational {
        BigRational(-self.0)
    }
}

impl fmt::Display for BigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for BigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigRational({self})")
    }
}

impl FromStr for BigRational {
    type Err = Error;

    /// Accepts `p` or `p/q`; `q = 2^e` may be written literally as `2^e`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| Error::Parse);
        match s.split_once('/') {
            None => Ok(Self::from_integer(parse_int(s)?)),
            Some((num, den)) => {
                let den = den.trim();
                let den = match den.strip_prefix("2^") {
                    Some(e) => BigInt::one() << e.trim().parse::<u32>().map_err(|_| Error::Parse)?,
                    None => parse_int(den)?,
                };
                if den.is_zero() {
                    return Err(Error::Parse);
                }
                Self::new(parse_int(num)?, den)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&q("7/20") * &BigRational::from(5), q("7/4"));
        assert_eq!(q("1/3") + q("7/9") - q("1/9"), BigRational::one());
        assert_eq!(BigRational::from(DyadicRational::new(3, 1)), q("3/2"));
        assert_eq!(q("6/-4"), q("-3/2"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q("1/2").checked_div(&BigRational::zero()), Err(Error::DivisionByZero));
        assert_eq!(BigRational::new(1, 0), Err(Error::DivisionByZero));
        assert_eq!(BigRational::zero().recip(), Err(Error::DivisionByZero));
        assert_eq!(q("2/3").checked_div(&q("4/9")), Ok(q("3/2")));
    }

    #[test]
    fn rendering() {
        assert_eq!(q("7/4").render(Render::Decimal(3)), "1.750");
        assert_eq!(q("7/20").render(Render::Fraction), "7/20");
        assert_eq!(BigRational::zero().render(Render::Fraction), "0");
        assert_eq!(q("2/3").render(Render::Decimal(4)), "0.6667");
    }

    #[test]
    fn dyadic_detection() {
        assert_eq!(q("9/12").to_dyadic(), Some(DyadicRational::new(3, 2)));
        assert_eq!(q("1/3").to_dyadic(), None);
        assert_eq!(q("5").to_dyadic(), Some(DyadicRational::from_integer(5)));
        assert_eq!(q("-1/2^70").to_dyadic(), Some(-DyadicRational::pow2_recip(70)));
    }

    fn arb_dyadic() -> impl Strategy<Value = DyadicRational> {
        (any::<i64>(), 0u32..90).prop_map(|(n, e)| DyadicRational::from_i128(n.into(), e))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(4096))]

        #[test]
        fn dyadic_ops_agree_with_rational(a in arb_dyadic(), b in arb_dyadic()) {
            let (qa, qb) = (BigRational::from(&a), BigRational::from(&b));
            prop_assert_eq!(BigRational::from(&a + &b), &qa + &qb);
            prop_assert_eq!(BigRational::from(&a - &b), &qa - &qb);
            prop_assert_eq!(BigRational::from(&a * &b), &qa * &qb);
            prop_assert_eq!(a.cmp(&b), qa.cmp(&qb));
        }

        #[test]
        fn embedding_is_injective(a in arb_dyadic(), b in arb_dyadic()) {
            prop_assert_eq!(a == b, BigRational::from(&a) == BigRational::from(&b));
            prop_assert_eq!(BigRational::from(&a).to_dyadic(), Some(a));
        }

        #[test]
        fn display_round_trips(n in any::<i64>(), d in 1i64..) {
            let r = BigRational::new(n, d).unwrap();
            prop_assert_eq!(r.to_string().parse::<BigRational>().unwrap(), r);
        }
    }
}
