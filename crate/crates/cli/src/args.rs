use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use walshdisc_core::BigRational;

use crate::method::Method;

#[derive(Debug, Parser)]
#[command(
    name = "walshdisc",
    version,
    about = "Exact Walsh Lebesgue constants and van der Corput star discrepancy"
)]
pub struct Cli {
    /// Digits after the decimal point in decimal renderings.
    #[arg(long, global = true, default_value_t = 12)]
    pub digits: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print L_n by one or more methods.
    Ln {
        #[arg(value_parser = parse_index)]
        n: u64,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        method: Vec<MethodArg>,
    },
    /// Check that the chosen methods agree on every n in a range.
    Verify {
        #[arg(long, value_parser = parse_index)]
        max: u64,
        #[arg(long, value_parser = parse_index, default_value = "1")]
        min: u64,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "fine,recursion,nearest-int,discrepancy"
        )]
        methods: Vec<MethodArg>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Write n, L_n, D*_n and the binary data of n for every n up to a bound.
    Table {
        #[arg(long, value_parser = parse_index)]
        max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
    },
    /// Compare the closed-form block maximum with a scan of each block.
    ScanBlocks {
        #[arg(long)]
        r_max: u32,
    },
    /// Expand the generating function and compare coefficients with the table.
    Gf {
        #[arg(long, value_parser = parse_index)]
        terms: u64,
    },
    /// Fraction of n < N with L_n below the CLT threshold for each y.
    Clt {
        #[arg(long = "N", value_parser = parse_index)]
        horizon: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,0,1")]
        y: Vec<f64>,
    },
    /// Ratios d_n / log n along n = floor(2^m (1 + t)).
    Subseq {
        #[arg(long, value_parser = parse_rational)]
        t: BigRational,
        #[arg(long)]
        m_max: u32,
    },
    /// Ratio trajectories for pseudo-random t.
    AeProbe {
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        m_max: u32,
    },
    /// Check L_n <= log2(n)/3 + 1 for every n up to a bound.
    Bounds {
        #[arg(long, value_parser = parse_index)]
        max: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Check x_(i) <= (i-1)/n for every prefix length up to a bound.
    Nonneg {
        #[arg(long, value_parser = parse_index)]
        max: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Distance of L_n from 4/9 + log2(3n)/3 at the block maximizers.
    Limsup {
        #[arg(long)]
        r_max: u32,
    },
    /// Mean of L_k over k <= 2^j minus j/4, for j in a range.
    Average {
        #[arg(long, default_value_t = 1)]
        j_min: u32,
        #[arg(long)]
        j_max: u32,
    },
}

#[derive(Debug, clap::Args)]
pub struct ReportArgs {
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include the elapsed time in the report body.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DataFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Fine,
    Recursion,
    NearestInt,
    Integral,
    Discrepancy,
    WalshSum,
    L1,
    All,
}

/// Expands `all` and drops repeats, keeping first-seen order.
pub fn expand_methods(args: &[MethodArg]) -> Vec<Method> {
    let mut out: Vec<Method> = Vec::new();
    for a in args {
        let batch: &[Method] = match a {
            MethodArg::Fine => &[Method::Fine],
            MethodArg::Recursion => &[Method::Recursion],
            MethodArg::NearestInt => &[Method::NearestInt],
            MethodArg::Integral => &[Method::Integral],
            MethodArg::Discrepancy => &[Method::Discrepancy],
            MethodArg::WalshSum => &[Method::WalshSum],
            MethodArg::L1 => &[Method::L1],
            MethodArg::All => &Method::SIX,
        };
        for m in batch {
            if !out.contains(m) {
                out.push(*m);
            }
        }
    }
    out
}

/// A positive integer, written in decimal or as `2^k`.
pub fn parse_index(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let v = match s.split_once('^') {
        Some((base, exp)) => {
            let base: u64 = base.trim().parse().map_err(|e| format!("bad base in {s:?}: {e}"))?;
            let exp: u32 = exp.trim().parse().map_err(|e| format!("bad exponent in {s:?}: {e}"))?;
            base.checked_pow(exp).ok_or_else(|| format!("{s} overflows 64 bits"))?
        }
        None => s.parse().map_err(|e| format!("bad integer {s:?}: {e}"))?,
    };
    if v == 0 {
        return Err("must be at least 1".into());
    }
    Ok(v)
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim().parse().map_err(|e| format!("bad fraction {s:?}: {e}"))
}
