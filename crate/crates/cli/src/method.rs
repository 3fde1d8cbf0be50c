use walshdisc_core::lebesgue::{lebesgue_fine, lebesgue_nearest_int, lebesgue_recursive, MAX_N};
use walshdisc_core::vdc::{self, MAX_SORTED_N, MAX_WALSH_SUM_N};
use walshdisc_core::walsh::{self, DEFAULT_INTEGRAL_CAP};
use walshdisc_core::{BigRational, DyadicRational, Error, Result};

/// One of the independent routes to `L_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Fine,
    Recursion,
    NearestInt,
    /// The Dirichlet-kernel integral at the point `x = y_n`.
    Integral,
    /// `n D*_n` from the sorted prefix.
    Discrepancy,
    /// `n D*_n` from the Walsh sums of the prefix.
    WalshSum,
    /// `n` times the L1 norm of the discrepancy function.
    L1,
}

impl Method {
    pub const SIX: [Method; 6] = [
        Method::Fine,
        Method::Recursion,
        Method::NearestInt,
        Method::Integral,
        Method::Discrepancy,
        Method::WalshSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Fine => "fine",
            Method::Recursion => "recursion",
            Method::NearestInt => "nearest-int",
            Method::Integral => "integral",
            Method::Discrepancy => "discrepancy",
            Method::WalshSum => "walsh-sum",
            Method::L1 => "l1",
        }
    }

    /// Largest `n` the method accepts.
    pub fn limit(self) -> u64 {
        match self {
            Method::Fine | Method::Recursion | Method::NearestInt => MAX_N,
            Method::Integral => DEFAULT_INTEGRAL_CAP,
            Method::Discrepancy | Method::L1 => MAX_SORTED_N,
            Method::WalshSum => MAX_WALSH_SUM_N,
        }
    }

    pub fn check(self, n: u64) -> Result<()> {
        if n > self.limit() {
            return Err(Error::GuardExceeded {
                what: self.name(),
                value: n,
                limit: self.limit(),
            });
        }
        Ok(())
    }

    pub fn eval(self, n: u64) -> Result<DyadicRational> {
        self.check(n)?;
        match self {
            Method::Fine => lebesgue_fine(n),
            Method::Recursion => Ok(lebesgue_recursive(n)),
            Method::NearestInt => lebesgue_nearest_int(n),
            Method::Integral => walsh::lebesgue_function(n, &vdc::vdc_dyadic_point(n)),
            Method::Discrepancy => vdc::d_n(n),
            Method::WalshSum => {
                let scaled = vdc::walsh_sum_discrepancy(n)? * BigRational::from(n);
                scaled.to_dyadic().ok_or(Error::NotDyadic)
            }
            Method::L1 => vdc::d_n_via_l1(n),
        }
    }
}
