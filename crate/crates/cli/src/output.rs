use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use walshdisc_core::VerificationReport;

use crate::args::{ReportArgs, ReportFormat};

/// Buffered writer to `path`, or to stdout when no path is given.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn csv_writer(path: Option<&Path>) -> Result<csv::Writer<Box<dyn Write>>> {
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink(path)?))
}

#[derive(Serialize)]
struct FailureRow<'a> {
    n: u64,
    method_a: &'a str,
    value_a: &'a str,
    method_b: &'a str,
    value_b: &'a str,
}

#[derive(Serialize)]
struct ReportBody<'a> {
    subject: &'a str,
    range: [u64; 2],
    checked: u64,
    passed: bool,
    failures: Vec<FailureRow<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

fn rows(report: &VerificationReport) -> Vec<FailureRow<'_>> {
    report
        .failures
        .iter()
        .map(|f| FailureRow {
            n: f.n,
            method_a: &f.method_a,
            value_a: &f.value_a,
            method_b: &f.method_b,
            value_b: &f.value_b,
        })
        .collect()
}

/// Writes the report in the requested format and a one-line summary to
/// stderr.
pub fn emit_report(report: &VerificationReport, args: &ReportArgs) -> Result<()> {
    let out = args.out.as_deref();
    match args.format {
        ReportFormat::Text => {
            let mut w = sink(out)?;
            writeln!(w, "subject: {}", report.subject)?;
            writeln!(w, "range: {}..={}", report.range.0, report.range.1)?;
            writeln!(w, "checked: {}", report.checked)?;
            writeln!(w, "failures: {}", report.failures.len())?;
            for f in &report.failures {
                writeln!(
                    w,
                    "  n={}: {} = {}, {} = {}",
                    f.n, f.method_a, f.value_a, f.method_b, f.value_b
                )?;
            }
            if args.timing {
                writeln!(w, "elapsed_ms: {}", report.elapsed_ms)?;
            }
            w.flush()?;
        }
        ReportFormat::Csv => {
            let mut w = csv_writer(out)?;
            // An empty report still carries its header row.
            w.write_record(["n", "method_a", "value_a", "method_b", "value_b"])?;
            for f in &report.failures {
                w.write_record([&f.n.to_string(), &f.method_a, &f.value_a, &f.method_b, &f.value_b])?;
            }
            w.flush()?;
        }
        ReportFormat::Json => {
            let body = ReportBody {
                subject: &report.subject,
                range: [report.range.0, report.range.1],
                checked: report.checked,
                passed: report.passed(),
                failures: rows(report),
                elapsed_ms: args.timing.then_some(report.elapsed_ms),
            };
            let mut w = sink(out)?;
            serde_json::to_writer_pretty(&mut w, &body)?;
            writeln!(w)?;
            w.flush()?;
        }
    }
    eprintln!(
        "{}: checked {}, failures {}, {} ms",
        report.subject,
        report.checked,
        report.failures.len(),
        report.elapsed_ms
    );
    Ok(())
}
