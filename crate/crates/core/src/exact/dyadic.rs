use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive};

use super::{render, Render};
use crate::{Error, Result};

/// Numerator storage. `Big` is used only when the value does not fit an
/// `i64`, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Numer {
    Small(i64),
    Big(Box<BigInt>),
}

impl Numer {
    fn to_big(&self) -> BigInt {
        match self {
            Numer::Small(v) => BigInt::from(*v),
            Numer::Big(b) => (**b).clone(),
        }
    }

    fn from_big(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Numer::Small(s),
            None => Numer::Big(Box::new(v)),
        }
    }

    fn signum(&self) -> i32 {
        match self {
            Numer::Small(v) => v.signum() as i32,
            Numer::Big(b) => match b.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }
}

/// An exact dyadic rational `num / 2^exp`.
///
/// Always normalized: either `exp = 0` or `num` is odd, and zero is stored
/// as `0 / 2^0`. Two values are equal exactly when their representations
/// are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    num: Numer,
    exp: u32,
}

fn exp_from(e: u64) -> u32 {
    u32::try_from(e).expect("dyadic exponent overflow")
}

impl DyadicRational {
    pub const ZERO: Self = Self {
        num: Numer::Small(0),
        exp: 0,
    };
    pub const ONE: Self = Self {
        num: Numer::Small(1),
        exp: 0,
    };

    /// `num / 2^exp`, normalized.
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        Self::from_big_parts(num.into(), u64::from(exp))
    }

    /// `num / 2^exp` without going through a heap-allocated integer.
    pub fn from_i128(num: i128, exp: u32) -> Self {
        if num == 0 {
            return Self::ZERO;
        }
        let shift = num.trailing_zeros().min(exp);
        let num = num >> shift;
        let exp = exp - shift;
        match i64::try_from(num) {
            Ok(s) => Self {
                num: Numer::Small(s),
                exp,
            },
            Err(_) => Self {
                num: Numer::Big(Box::new(BigInt::from(num))),
                exp,
            },
        }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_i128(i128::from(v), 0)
    }

    fn from_big_parts(num: BigInt, exp: u64) -> Self {
        let Some(tz) = num.trailing_zeros() else {
            return Self::ZERO;
        };
        let shift = tz.min(exp);
        let num = if shift > 0 { num >> shift } else { num };
        Self {
            num: Numer::from_big(num),
            exp: exp_from(exp - shift),
        }
    }

    /// `1 / 2^k`.
    pub fn pow2_recip(k: u32) -> Self {
        Self {
            num: Numer::Small(1),
            exp: k,
        }
    }

    /// Exact value of a finite `f64`; `None` for NaN and infinities.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Self::ZERO);
        }
        let bits = v.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mantissa, e) = if biased == 0 {
            (fraction, -1074i64)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        let m = if negative {
            -i128::from(mantissa)
        } else {
            i128::from(mantissa)
        };
        Some(if e >= 0 {
            Self::from_big_parts(BigInt::from(m) << (e as u64), 0)
        } else {
            Self::from_i128(m, (-e) as u32)
        })
    }

    pub fn numer(&self) -> BigInt {
        self.num.to_big()
    }

    /// The numerator when it fits an `i64`.
    pub fn numer_i64(&self) -> Option<i64> {
        match self.num {
            Numer::Small(v) => Some(v),
            Numer::Big(_) => None,
        }
    }

    /// Binary exponent of the denominator.
    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.num, Numer::Small(0))
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn signum(&self) -> i32 {
        self.num.signum()
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// `self / 2^k`.
    pub fn div_pow2(&self, k: u32) -> Self {
        match self.num {
            Numer::Small(v) => Self::from_i128(i128::from(v), exp_from(u64::from(self.exp) + u64::from(k))),
            Numer::Big(ref b) => Self::from_big_parts((**b).clone(), u64::from(self.exp) + u64::from(k)),
        }
    }

    /// `self * 2^k`.
    pub fn mul_pow2(&self, k: u32) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        if k <= self.exp {
            return Self {
                num: self.num.clone(),
                exp: self.exp - k,
            };
        }
        let shift = k - self.exp;
        Self::from_big_parts(self.num.to_big() << shift, 0)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self * &Self::from_integer(k)
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        match self.num {
            Numer::Small(v) if self.exp < 64 => BigInt::from(v >> self.exp),
            Numer::Small(v) => BigInt::from(if v < 0 { -1 } else { 0 }),
            Numer::Big(ref b) => &**b >> self.exp,
        }
    }

    /// Nearest `f64`. Intended for reporting and for the floating
    /// comparisons of the asymptotic probes only.
    pub fn to_f64(&self) -> f64 {
        match self.num {
            Numer::Small(v) => scale_f64(v as f64, -i64::from(self.exp)),
            Numer::Big(ref b) => {
                let bits = b.bits();
                if bits > 1000 {
                    let drop = bits - 64;
                    let head = (&**b >> drop).to_f64().unwrap_or(0.0);
                    scale_f64(head, drop as i64 - i64::from(self.exp))
                } else {
                    scale_f64(b.to_f64().unwrap_or(0.0), -i64::from(self.exp))
                }
            }
        }
    }

    /// Exact comparison against a finite `f64`. `None` for NaN; infinities
    /// compare as expected.
    pub fn cmp_f64(&self, v: f64) -> Option<Ordering> {
        if v.is_nan() {
            return None;
        }
        if v.is_infinite() {
            return Some(if v > 0.0 { Ordering::Less } else { Ordering::Greater });
        }
        Self::from_f64(v).map(|d| self.cmp(&d))
    }

    pub fn render(&self, mode: Render) -> String {
        match mode {
            Render::Fraction => self.to_string(),
            Render::Decimal(digits) => {
                let den = num_bigint::BigUint::one() << self.exp;
                render::decimal(&self.numer(), &den, digits)
            }
        }
    }

    fn align(&self, other: &Self) -> (u32, u32, u32) {
        let e = self.exp.max(other.exp);
        (e, e - self.exp, e - other.exp)
    }

    fn add_ref(&self, other: &Self) -> Self {
        let (e, sa, sb) = self.align(other);
        if let (Numer::Small(x), Numer::Small(y)) = (&self.num, &other.num) {
            if sa.max(sb) <= 62 {
                let v = (i128::from(*x) << sa) + (i128::from(*y) << sb);
                return Self::from_i128(v, e);
            }
        }
        let v = (self.num.to_big() << sa) + (other.num.to_big() << sb);
        Self::from_big_parts(v, u64::from(e))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let e = u64::from(self.exp) + u64::from(other.exp);
        if let (Numer::Small(x), Numer::Small(y)) = (&self.num, &other.num) {
            if let Ok(e) = u32::try_from(e) {
                return Self::from_i128(i128::from(*x) * i128::from(*y), e);
            }
        }
        Self::from_big_parts(self.num.to_big() * other.num.to_big(), e)
    }

    fn neg_ref(&self) -> Self {
        match self.num {
            Numer::Small(v) => Self::from_i128(-i128::from(v), self.exp),
            Numer::Big(ref b) => Self {
                num: Numer::from_big(-(**b).clone()),
                exp: self.exp,
            },
        }
    }
}

fn scale_f64(v: f64, e: i64) -> f64 {
    libm::ldexp(v, e.clamp(i64::from(i32::MIN), i64::from(i32::MAX)) as i32)
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if self.exp == other.exp && self.num == other.num {
            return Ordering::Equal;
        }
        let (_, ka, kb) = self.align(other);
        if let (Numer::Small(x), Numer::Small(y)) = (&self.num, &other.num) {
            if ka.max(kb) <= 62 {
                return (i128::from(*x) << ka).cmp(&(i128::from(*y) << kb));
            }
        }
        (self.num.to_big() << ka).cmp(&(other.num.to_big() << kb))
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for DyadicRational {
    fn default() -> Self {
        Self::ZERO
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&DyadicRational> for &DyadicRational {
            type Output = DyadicRational;
            fn $method(self, rhs: &DyadicRational) -> DyadicRational {
                self.$imp(rhs)
            }
        }
        impl $trait<DyadicRational> for DyadicRational {
            type Output = DyadicRational;
            fn $method(self, rhs: DyadicRational) -> DyadicRational {
                (&self).$imp(&rhs)
            }
        }
        impl $trait<&DyadicRational> for DyadicRational {
            type Output = DyadicRational;
            fn $method(self, rhs: &DyadicRational) -> DyadicRational {
                (&self).$imp(rhs)
            }
        }
        impl $trait<DyadicRational> for &DyadicRational {
            type Output = DyadicRational;
            fn $method(self, rhs: DyadicRational) -> DyadicRational {
                self.$imp(&rhs)
            }
        }
    };
}

impl DyadicRational {
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        self.neg_ref()
    }
}

impl Neg for &DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        self.neg_ref()
    }
}

impl AddAssign<&DyadicRational> for DyadicRational {
    fn add_assign(&mut self, rhs: &DyadicRational) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign for DyadicRational {
    fn add_assign(&mut self, rhs: DyadicRational) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&DyadicRational> for DyadicRational {
    fn sub_assign(&mut self, rhs: &DyadicRational) {
        *self = self.sub_ref(rhs);
    }
}

impl Sum for DyadicRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a DyadicRational> for DyadicRational {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, x| acc + x)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for DyadicRational {
            fn from(v: $t) -> Self {
                Self::from_i128(i128::from(v), 0)
            }
        }
    )*};
}

from_int!(i8, i16, i32, i64, u8, u16, u32, u64);

impl From<BigInt> for DyadicRational {
    fn from(v: BigInt) -> Self {
        Self::from_big_parts(v, 0)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.num {
            Numer::Small(v) => write!(f, "{v}")?,
            Numer::Big(ref b) => write!(f, "{b}")?,
        }
        if self.exp > 0 {
            write!(f, "/2^{}", self.exp)?;
        }
        Ok(())
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyadicRational({self})")
    }
}

impl FromStr for DyadicRational {
    type Err = Error;

    /// Accepts `p`, `p/2^e` and `p/q` with `q` a power of two.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| Error::Parse);
        let Some((num, den)) = s.split_once('/') else {
            return Ok(Self::from_big_parts(parse_int(s)?, 0));
        };
        let num = parse_int(num)?;
        let den = den.trim();
        if let Some(e) = den.strip_prefix("2^") {
            let e: u32 = e.trim().parse().map_err(|_| Error::Parse)?;
            return Ok(Self::from_big_parts(num, u64::from(e)));
        }
        let den = parse_int(den)?;
        if !den.is_positive() {
            return Err(Error::Parse);
        }
        let tz = den.trailing_zeros().unwrap_or(0);
        if den != BigInt::one() << tz {
            return Err(Error::NotDyadic);
        }
        Ok(Self::from_big_parts(num, tz))
    }
}
