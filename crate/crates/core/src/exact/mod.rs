//! Exact arithmetic on dyadic rationals `p / 2^e` and general rationals `p / q`.
//!
//! Dyadic values carry every Lebesgue constant, every van der Corput point
//! and every nearest-integer distance, so they get their own type with an
//! inline small-numerator representation and no gcd work. [`BigRational`]
//! covers what is not dyadic: `D*_n = d_n / n`, ninths in the block maxima,
//! averages.

mod dyadic;
mod rational;
mod render;

pub use dyadic::DyadicRational;
pub use rational::BigRational;

/// Output style for [`DyadicRational::render`] and [`BigRational::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Render {
    /// Lossless `p/q`; dyadic values print as `p/2^e`, integers as `p`.
    Fraction,
    /// Fixed-point decimal with the given number of fractional digits,
    /// rounded half to even.
    Decimal(u32),
}
