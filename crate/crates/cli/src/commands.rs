use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Result};
use rayon::prelude::*;
use walshdisc_core::asymptotics::{ae_probe, subsequence_ratio, CltQuery, MAX_CLT_N};
use walshdisc_core::lebesgue::{
    average_deviation_in, block_max, block_max_brute_in, generating_function_coeffs, lebesgue_table, limsup_probe,
    upper_bound_check, BLOCK_MAX_BRUTE_R,
};
use walshdisc_core::vdc::{nonnegativity_check, MAX_SORTED_N};
use walshdisc_core::{asymptotics, BigRational, DyadicRational, Error, Render, VerificationReport};

use crate::args::{expand_methods, Cli, Command, DataFormat, MethodArg, ReportArgs};
use crate::method::Method;
use crate::output::{csv_writer, emit_report, sink};

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
}

impl Status {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Ok
        } else {
            Status::Mismatch
        }
    }
}

pub fn run(cli: Cli) -> Result<Status> {
    let digits = cli.digits;
    match cli.command {
        Command::Ln { n, method } => ln(n, &method, digits),
        Command::Verify {
            max,
            min,
            methods,
            report,
        } => verify(min, max, &methods, &report),
        Command::Table { max, out, format } => table(max, out.as_deref(), format, digits),
        Command::ScanBlocks { r_max } => scan_blocks(r_max),
        Command::Gf { terms } => gf(terms),
        Command::Clt { horizon, y } => clt(horizon, &y, digits),
        Command::Subseq { t, m_max } => subseq(&t, m_max, digits),
        Command::AeProbe { samples, seed, m_max } => probe(samples, seed, m_max, digits),
        Command::Bounds { max, report } => bounds(max, &report),
        Command::Nonneg { max, report } => nonneg(max, &report),
        Command::Limsup { r_max } => limsup(r_max, digits),
        Command::Average { j_min, j_max } => average(j_min, j_max, digits),
    }
}

fn show(v: &DyadicRational, digits: u32) -> String {
    format!("{v} = {}", v.render(Render::Decimal(digits)))
}

fn ln(n: u64, args: &[MethodArg], digits: u32) -> Result<Status> {
    let methods = expand_methods(args);
    for m in &methods {
        m.check(n)?;
    }
    let values: Vec<DyadicRational> = methods.par_iter().map(|m| m.eval(n)).collect::<Result<_, _>>()?;
    let mut out = sink(None)?;
    if let [v] = values.as_slice() {
        writeln!(out, "{}", show(v, digits))?;
    } else {
        for (m, v) in methods.iter().zip(&values) {
            writeln!(out, "{:<12} {}", m.name(), show(v, digits))?;
        }
    }
    out.flush()?;
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if !agree {
        eprintln!("methods disagree at n = {n}");
    }
    Ok(Status::from_pass(agree))
}

fn verify(lo: u64, hi: u64, args: &[MethodArg], report_args: &ReportArgs) -> Result<Status> {
    if lo > hi {
        bail!("--min {lo} exceeds --max {hi}");
    }
    let methods = expand_methods(args);
    let Some((&reference, others)) = methods.split_first() else {
        bail!("no methods given");
    };
    for m in &methods {
        m.check(hi)?;
    }
    let start = Instant::now();
    let mismatches: Vec<Vec<(Method, DyadicRational, DyadicRational)>> = (lo..=hi)
        .into_par_iter()
        .map(|n| -> Result<_, Error> {
            let want = reference.eval(n)?;
            let mut bad = Vec::new();
            for &m in others {
                let got = m.eval(n)?;
                if got != want {
                    bad.push((m, want.clone(), got));
                }
            }
            Ok(bad)
        })
        .collect::<Result<_, _>>()?;

    let names: Vec<&str> = methods.iter().map(|m| m.name()).collect();
    let mut report = VerificationReport::new(format!("agreement[{}]", names.join(",")), lo, hi);
    for (n, bad) in (lo..=hi).zip(mismatches) {
        for (m, want, got) in bad {
            report.record_failure(n, reference.name(), want.to_string(), m.name(), got.to_string());
        }
    }
    report.checked = hi - lo + 1;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    emit_report(&report, report_args)?;
    Ok(Status::from_pass(report.passed()))
}

fn table(max: u64, out: Option<&Path>, format: DataFormat, digits: u32) -> Result<Status> {
    let table = lebesgue_table(max)?;
    let rows = table.iter().map(|(n, l)| -> Result<[String; 6]> {
        let dstar = BigRational::from(l).checked_div(&BigRational::from(n))?;
        Ok([
            n.to_string(),
            l.to_string(),
            l.render(Render::Decimal(digits)),
            dstar.to_string(),
            n.count_ones().to_string(),
            (63 - n.leading_zeros()).to_string(),
        ])
    });
    const HEADER: [&str; 6] = ["n", "L_frac", "L_dec", "Dstar_frac", "nu", "n1"];
    match format {
        DataFormat::Csv => {
            let mut w = csv_writer(out)?;
            w.write_record(HEADER)?;
            for row in rows {
                w.write_record(&row?)?;
            }
            w.flush()?;
        }
        DataFormat::Json => {
            let mut w = sink(out)?;
            writeln!(w, "[")?;
            for (i, row) in rows.enumerate() {
                let row = row?;
                let mut obj = serde_json::Map::new();
                for (k, v) in HEADER.iter().zip(row) {
                    let value = match *k {
                        "n" | "nu" | "n1" => serde_json::Value::from(v.parse::<u64>()?),
                        _ => serde_json::Value::from(v),
                    };
                    obj.insert((*k).to_string(), value);
                }
                let sep = if i + 1 < table.max_n() as usize { "," } else { "" };
                writeln!(w, "  {}{sep}", serde_json::Value::Object(obj))?;
            }
            writeln!(w, "]")?;
            w.flush()?;
        }
    }
    Ok(Status::Ok)
}

fn scan_blocks(r_max: u32) -> Result<Status> {
    if r_max == 0 {
        bail!("--r-max must be at least 1");
    }
    if r_max > BLOCK_MAX_BRUTE_R {
        return Err(Error::GuardExceeded {
            what: "r",
            value: u64::from(r_max),
            limit: u64::from(BLOCK_MAX_BRUTE_R),
        }
        .into());
    }
    let table = lebesgue_table(1 << r_max)?;
    let rows: Vec<_> = (1..=r_max)
        .into_par_iter()
        .map(|r| -> Result<_, Error> { Ok((block_max(r)?, block_max_brute_in(&table, r)?)) })
        .collect::<Result<_, _>>()?;
    let mut w = csv_writer(None)?;
    w.write_record([
        "r",
        "formula_value",
        "formula_argmax",
        "brute_value",
        "brute_argmax",
        "match",
    ])?;
    let mut all = true;
    for (formula, (value, argmax)) in rows {
        let brute = BigRational::from(value);
        let ok = formula.value == brute && formula.argmax == argmax;
        all &= ok;
        w.write_record([
            formula.r.to_string(),
            formula.value.to_string(),
            formula.argmax.to_string(),
            brute.to_string(),
            argmax.to_string(),
            ok.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(Status::from_pass(all))
}

fn gf(terms: u64) -> Result<Status> {
    let series = generating_function_coeffs(terms)?;
    let table = lebesgue_table(terms)?;
    let mut w = csv_writer(None)?;
    w.write_record(["n", "coefficient", "L_n", "diff"])?;
    let mut worst = BigRational::zero();
    for (n, l) in table.iter() {
        let c = series.coeff(n as usize).expect("series covers the table");
        let l = BigRational::from(l);
        let diff = c.clone() - l.clone();
        if diff.abs() > worst {
            worst = diff.abs();
        }
        w.write_record([n.to_string(), c.to_string(), l.to_string(), diff.to_string()])?;
    }
    w.flush()?;
    eprintln!("max |diff| = {worst}");
    Ok(Status::from_pass(worst.is_zero()))
}

fn clt(horizon: u64, ys: &[f64], digits: u32) -> Result<Status> {
    if horizon < 4 {
        bail!("--N must be at least 4");
    }
    if horizon > MAX_CLT_N {
        return Err(Error::GuardExceeded {
            what: "N",
            value: horizon,
            limit: MAX_CLT_N,
        }
        .into());
    }
    if ys.iter().any(|y| y.is_nan()) {
        bail!("--y values must be numbers");
    }
    let table = lebesgue_table(horizon - 1)?;
    const CHUNK: u64 = 1 << 16;
    let d = digits as usize;
    let mut w = csv_writer(None)?;
    w.write_record(["N", "y", "count", "total", "fraction", "fraction_dec", "phi", "diff"])?;
    for &y in ys {
        let count: u64 = (0..horizon.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let lo = (c * CHUNK).max(2);
                let hi = ((c + 1) * CHUNK).min(horizon);
                asymptotics::clt_count(&table, lo, hi, y)
            })
            .collect::<Result<Vec<u64>, _>>()?
            .into_iter()
            .sum();
        let q = CltQuery::from_count(horizon, y, count);
        w.write_record([
            horizon.to_string(),
            y.to_string(),
            q.count.to_string(),
            q.total.to_string(),
            q.exact_result().to_string(),
            q.exact_result().render(Render::Decimal(digits)),
            format!("{:.d$}", q.phi_y),
            format!("{:.d$}", q.result - q.phi_y),
        ])?;
    }
    w.flush()?;
    Ok(Status::Ok)
}

fn subseq(t: &BigRational, m_max: u32, digits: u32) -> Result<Status> {
    if m_max == 0 {
        bail!("--m-max must be at least 1");
    }
    let rows: Vec<_> = (1..=m_max)
        .into_par_iter()
        .map(|m| subsequence_ratio(t, m))
        .collect::<Result<_, _>>()?;
    let d = digits as usize;
    let mut w = csv_writer(None)?;
    w.write_record(["m", "n_t", "d_frac", "d_dec", "ratio"])?;
    for q in rows {
        w.write_record([
            q.m.to_string(),
            q.n_t.to_string(),
            q.d.to_string(),
            q.d.render(Render::Decimal(digits)),
            format!("{:.d$}", q.ratio),
        ])?;
    }
    w.flush()?;
    Ok(Status::Ok)
}

fn probe(samples: usize, seed: u64, m_max: u32, digits: u32) -> Result<Status> {
    let trajectories = ae_probe(seed, samples, m_max)?;
    let d = digits as usize;
    let mut w = csv_writer(None)?;
    w.write_record(["sample", "t", "m", "ratio"])?;
    for (i, tr) in trajectories.iter().enumerate() {
        for (m, ratio) in (1..).zip(&tr.ratios) {
            w.write_record([i.to_string(), tr.t.to_string(), m.to_string(), format!("{ratio:.d$}")])?;
        }
    }
    w.flush()?;
    Ok(Status::Ok)
}

fn bounds(max: u64, report_args: &ReportArgs) -> Result<Status> {
    let start = Instant::now();
    let mut report = upper_bound_check(max)?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    emit_report(&report, report_args)?;
    Ok(Status::from_pass(report.passed()))
}

fn nonneg(max: u64, report_args: &ReportArgs) -> Result<Status> {
    if max > MAX_SORTED_N {
        return Err(Error::GuardExceeded {
            what: "n",
            value: max,
            limit: MAX_SORTED_N,
        }
        .into());
    }
    let start = Instant::now();
    let singles: Vec<VerificationReport> = (1..=max)
        .into_par_iter()
        .map(nonnegativity_check)
        .collect::<Result<_, _>>()?;
    let mut report = VerificationReport::new("nonnegativity", 1, max);
    for (n, single) in (1..).zip(&singles) {
        if let Some(f) = single.first_failure() {
            report.record_failure(
                n,
                format!("x_({})", f.n),
                f.value_a.clone(),
                f.method_b.clone(),
                f.value_b.clone(),
            );
        }
    }
    report.checked = max;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    emit_report(&report, report_args)?;
    Ok(Status::from_pass(report.passed()))
}

fn limsup(r_max: u32, digits: u32) -> Result<Status> {
    if r_max < 2 {
        bail!("--r-max must be at least 2");
    }
    let d = digits as usize;
    let mut w = csv_writer(None)?;
    w.write_record(["r", "argmax", "bracket"])?;
    for r in 2..=r_max {
        let argmax = block_max(r)?.argmax;
        w.write_record([r.to_string(), argmax.to_string(), format!("{:.d$e}", limsup_probe(r)?)])?;
    }
    w.flush()?;
    Ok(Status::Ok)
}

fn average(j_min: u32, j_max: u32, digits: u32) -> Result<Status> {
    if j_min == 0 || j_min > j_max {
        bail!("need 1 <= --j-min <= --j-max");
    }
    if j_max > 62 {
        bail!("--j-max must be at most 62");
    }
    let table = lebesgue_table(1 << j_max)?;
    let d = digits as usize;
    let mut w = csv_writer(None)?;
    w.write_record(["n", "deviation"])?;
    for j in j_min..=j_max {
        let n = 1u64 << j;
        w.write_record([n.to_string(), format!("{:.d$}", average_deviation_in(&table, n)?)])?;
    }
    w.flush()?;
    Ok(Status::Ok)
}
