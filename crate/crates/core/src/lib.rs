//! Exact Lebesgue constants of the Walsh function system and the exact star
//! discrepancy of the van der Corput sequence.
//!
//! The two quantities coincide: `L_n = d_n = n * D*_n`. This crate computes
//! them by several independent routes so the equality can be checked
//! bit-for-bit:
//!
//! - [`lebesgue::lebesgue_fine`]: closed form over the binary decomposition of `n`
//! - [`lebesgue::lebesgue_recursive`] and [`lebesgue::lebesgue_table`]: the
//!   `L_{2n} = L_n`, `L_{2n+1} = (1 + L_n + L_{n+1}) / 2` recursion
//! - [`lebesgue::lebesgue_nearest_int`]: sum of distances `||n / 2^r||`
//! - [`lebesgue::generating_function_coeffs`]: coefficients of a formal power series
//! - [`walsh::lebesgue_function`]: exact integral of the Walsh Dirichlet kernel
//! - [`vdc::d_n`], [`vdc::d_n_via_l1`], [`vdc::walsh_sum_discrepancy`]: the van
//!   der Corput side
//!
//! Every value is exact. Floating point appears only in the asymptotic probes
//! of [`asymptotics`] and in the logarithmic bound checks, and there only at
//! the final comparison step.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod asymptotics;
mod error;
pub mod exact;
pub mod lebesgue;
pub mod report;
pub mod vdc;
pub mod walsh;

pub use error::{Error, Result};
pub use exact::{BigRational, DyadicRational, Render};
pub use report::{Failure, VerificationReport};

/// Number of binary digits of `n` (`0` for `n = 0`).
#[inline]
pub(crate) fn bit_length(n: u64) -> u32 {
    u64::BITS - n.leading_zeros()
}
