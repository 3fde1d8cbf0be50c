use alloc::string::{String, ToString};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

/// Renders `num / den` (with `den > 0`) with `digits` fractional digits,
/// rounding half to even.
pub(crate) fn decimal(num: &BigInt, den: &BigUint, digits: u32) -> String {
    let negative = num.sign() == Sign::Minus;
    let scaled = num.magnitude() * Pow::pow(BigUint::from(10u32), digits);
    let (mut q, r) = scaled.div_rem(den);
    let twice: BigUint = r << 1u32;
    match twice.cmp(den) {
        core::cmp::Ordering::Greater => q += BigUint::one(),
        core::cmp::Ordering::Equal if q.is_odd() => q += BigUint::one(),
        _ => {}
    }

    let mut body = q.to_string();
    let digits = digits as usize;
    if body.len() <= digits {
        let pad = digits + 1 - body.len();
        body.insert_str(0, &"0".repeat(pad));
    }

    let mut out = String::with_capacity(body.len() + 2);
    if negative && !q.is_zero() {
        out.push('-');
    }
    let split = body.len() - digits;
    out.push_str(&body[..split]);
    if digits > 0 {
        out.push('.');
        out.push_str(&body[split..]);
    }
    out
}
