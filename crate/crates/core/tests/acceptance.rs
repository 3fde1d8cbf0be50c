//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use walshdisc_core::asymptotics::{clt_profile, dyadic_t_scan, gaussian_cdf, subsequence_ratio};
use walshdisc_core::lebesgue::{
    average_deviation_in, block_max, block_max_brute_in, generating_function_coeffs, lebesgue_fine,
    lebesgue_nearest_int, lebesgue_recursive, lebesgue_table, maximizer_block, upper_bound_check,
};
use walshdisc_core::vdc::{
    d_n, d_n_via_l1, nonnegativity_sweep, star_discrepancy, vdc_dyadic_point, walsh_sum_discrepancy,
};
use walshdisc_core::walsh::{lebesgue_function, DyadicPoint};
use walshdisc_core::{BigRational, DyadicRational};

const EXACT_MAX: u64 = 1 << 12;
const SIX_WAY_MAX: u64 = 1 << 10;
const RANDOM_SAMPLES: usize = 100_000;
const RANDOM_SEED: u64 = 0x0ddba11;
const RECURSION_MAX: u64 = 1 << 20;
const GF_TERMS: u64 = 1024;
const BLOCK_R_MAX: u32 = 20;
const BOUND_MAX: u64 = 1 << 20;
const NONNEG_MAX: u64 = 1 << 12;
const X_INDEPENDENCE_MAX: u64 = 256;

const CLT_HORIZON: u64 = 1 << 22;
const CLT_TOLERANCE: f64 = 0.1;
const CLT_TARGETS: [(f64, f64); 3] = [(-1.0, 0.1587), (0.0, 0.5), (1.0, 0.8413)];

const SUBSEQ_M: u32 = 40;
const SUBSEQ_RATIO_BOUND: f64 = 0.05;
const SUBSEQ_SCAN_M: u32 = 60;
const ONE_THIRD_M_MAX: u32 = 59;

// Calibration run (2^10 ..= 2^20): min 0.500000476837, max 0.500488281250.
const AVERAGE_INTERVAL: (f64, f64) = (0.40, 0.60);
const AVERAGE_J: std::ops::RangeInclusive<u32> = 10..=20;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    check: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_equivalence() -> Outcome {
    for n in 1..=EXACT_MAX {
        let fine = BigRational::from(lebesgue_fine(n).map_err(|e| e.to_string())?);
        let scaled = star_discrepancy(n).map_err(|e| e.to_string())? * BigRational::from(n);
        let l1 = BigRational::from(d_n_via_l1(n).map_err(|e| e.to_string())?);
        ensure(fine == scaled && fine == l1, || {
            format!("n={n}: fine {fine}, n D* {scaled}, l1 {l1}")
        })?;
    }
    Ok(format!("{EXACT_MAX} indices"))
}

fn six_methods() -> Outcome {
    for n in 1..=SIX_WAY_MAX {
        let e = |r: walshdisc_core::Error| format!("n={n}: {r}");
        let fine = lebesgue_fine(n).map_err(e)?;
        let walsh_sum = (walsh_sum_discrepancy(n).map_err(e)? * BigRational::from(n))
            .to_dyadic()
            .ok_or_else(|| format!("n={n}: Walsh-sum value is not dyadic"))?;
        let values = [
            ("recursion", lebesgue_recursive(n)),
            ("nearest-int", lebesgue_nearest_int(n).map_err(e)?),
            ("integral", lebesgue_function(n, &vdc_dyadic_point(n)).map_err(e)?),
            ("discrepancy", d_n(n).map_err(e)?),
            ("walsh-sum", walsh_sum),
        ];
        for (name, v) in values {
            ensure(v == fine, || format!("n={n}: fine {fine} vs {name} {v}"))?;
        }
    }
    Ok(format!("{SIX_WAY_MAX} indices, 6 methods"))
}

fn random_closed_form() -> Outcome {
    let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
    for _ in 0..RANDOM_SAMPLES {
        let n = rng.random_range(1..1u64 << 62);
        let fine = lebesgue_fine(n).map_err(|e| e.to_string())?;
        let rec = lebesgue_recursive(n);
        ensure(fine == rec, || format!("n={n}: {fine} vs {rec}"))?;
    }
    Ok(format!("{RANDOM_SAMPLES} samples below 2^62, seed {RANDOM_SEED:#x}"))
}

fn recursion_identities() -> Outcome {
    let table = lebesgue_table(2 * RECURSION_MAX + 1).map_err(|e| e.to_string())?;
    let at = |n: u64| table.get(n).expect("within table");
    let half = DyadicRational::pow2_recip(1);
    for n in 1..=RECURSION_MAX {
        ensure(at(2 * n) == at(n), || format!("L_(2n) != L_n at n={n}"))?;
        let rhs = (&DyadicRational::ONE + at(n) + at(n + 1)) * &half;
        ensure(*at(2 * n + 1) == rhs, || format!("odd step fails at n={n}"))?;
    }
    Ok(format!("n <= {RECURSION_MAX}"))
}

fn generating_function() -> Outcome {
    let series = generating_function_coeffs(GF_TERMS).map_err(|e| e.to_string())?;
    for n in 1..=GF_TERMS {
        let c = series.coeff(n as usize).expect("within order");
        let l = BigRational::from(lebesgue_fine(n).map_err(|e| e.to_string())?);
        ensure(*c == l, || format!("z^{n}: {c} vs {l}"))?;
    }
    Ok(format!("{GF_TERMS} coefficients"))
}

fn block_maximum() -> Outcome {
    let table = lebesgue_table(1 << BLOCK_R_MAX).map_err(|e| e.to_string())?;
    for r in 1..=BLOCK_R_MAX {
        let formula = block_max(r).map_err(|e| e.to_string())?;
        let (value, argmax) = block_max_brute_in(&table, r).map_err(|e| e.to_string())?;
        let sign: i64 = if r % 2 == 0 { 1 } else { -1 };
        let expected_argmax = ((1i64 << (r + 1)) + sign) / 3;
        ensure(formula.argmax as i64 == expected_argmax, || {
            format!("r={r}: argmax formula")
        })?;
        ensure(
            formula.value == BigRational::from(&value) && formula.argmax == argmax,
            || {
                format!(
                    "r={r}: formula {} at {}, scan {value} at {argmax}",
                    formula.value, formula.argmax
                )
            },
        )?;
    }
    Ok(format!("r <= {BLOCK_R_MAX}"))
}

fn upper_bound() -> Outcome {
    let report = upper_bound_check(BOUND_MAX).map_err(|e| e.to_string())?;
    ensure(report.checked == BOUND_MAX, || {
        format!("checked only {}", report.checked)
    })?;
    match report.first_failure() {
        None => Ok(format!("n <= {BOUND_MAX}, 0 violations")),
        Some(f) => Err(format!(
            "{} violations, first n={} ({} vs {})",
            report.failures.len(),
            f.n,
            f.value_a,
            f.value_b
        )),
    }
}

fn nonnegativity() -> Outcome {
    let report = nonnegativity_sweep(NONNEG_MAX).map_err(|e| e.to_string())?;
    match report.first_failure() {
        None => Ok(format!("n <= {NONNEG_MAX}")),
        Some(f) => Err(format!(
            "prefix n={}: {} = {} > {}",
            f.n, f.method_a, f.value_a, f.value_b
        )),
    }
}

fn x_independence() -> Outcome {
    let points: Vec<DyadicPoint> = [
        DyadicRational::ZERO,
        DyadicRational::new(1, 1),
        DyadicRational::new(3, 2),
        DyadicRational::new(5, 3),
        DyadicRational::new(1, 10),
        DyadicRational::new(12345, 16),
        DyadicRational::new(u64::MAX, 64),
        DyadicRational::new(7, 100),
    ]
    .into_iter()
    .map(|x| DyadicPoint::new(x).expect("point in [0, 1)"))
    .collect();
    for n in 1..=X_INDEPENDENCE_MAX {
        let first = lebesgue_function(n, &points[0]).map_err(|e| e.to_string())?;
        for p in &points[1..] {
            let v = lebesgue_function(n, p).map_err(|e| e.to_string())?;
            ensure(v == first, || {
                format!("n={n}: x={} gives {v}, x=0 gives {first}", p.value())
            })?;
        }
    }
    Ok(format!("n <= {X_INDEPENDENCE_MAX}, {} points", points.len()))
}

fn clt() -> Outcome {
    let ys: Vec<f64> = CLT_TARGETS.iter().map(|&(y, _)| y).collect();
    let queries = clt_profile(CLT_HORIZON, &ys).map_err(|e| e.to_string())?;
    let mut detail = Vec::new();
    let mut ok = true;
    for (q, &(y, target)) in queries.iter().zip(&CLT_TARGETS) {
        ensure((gaussian_cdf(y) - target).abs() < 1e-4, || {
            format!("Phi({y}) = {}", gaussian_cdf(y))
        })?;
        let within = (q.result - q.phi_y).abs() <= CLT_TOLERANCE;
        ok &= within;
        detail.push(format!("y={y}: {:.4} vs {:.4}", q.result, q.phi_y));
    }
    let detail = format!("N=2^22, tol {CLT_TOLERANCE}: {}", detail.join("; "));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn subsequences() -> Outcome {
    let mut problems = Vec::new();
    let mut detail = Vec::new();
    for t in ["0", "1/2", "3/4"] {
        let tq: BigRational = t.parse().expect("literal");
        let scan = dyadic_t_scan(&tq, SUBSEQ_SCAN_M).map_err(|e| e.to_string())?;
        let ratios: Vec<f64> = scan.ratios().collect();
        let at_m = ratios[SUBSEQ_M as usize - 1];
        detail.push(format!("t={t}: ratio(40)={at_m:.4}"));
        if at_m >= SUBSEQ_RATIO_BOUND {
            problems.push(format!("t={t}: ratio(40) = {at_m:.4} >= {SUBSEQ_RATIO_BOUND}"));
        }
        let tail = &ratios[scan.stable_from as usize - 1..];
        if !tail.windows(2).all(|w| w[1] < w[0]) {
            problems.push(format!("t={t}: not decreasing from m={}", scan.stable_from));
        }
    }
    let third: BigRational = "1/3".parse().expect("literal");
    for m in 1..=ONE_THIRD_M_MAX {
        let q = subsequence_ratio(&third, m).map_err(|e| e.to_string())?;
        let r = if m % 2 == 0 { m + 1 } else { m };
        let b = block_max(r).map_err(|e| e.to_string())?;
        if maximizer_block(q.n_t) != Some(r) || BigRational::from(&q.d) != b.value {
            problems.push(format!(
                "t=1/3, m={m}: d={} at n={} vs block {r} max {}",
                q.d, q.n_t, b.value
            ));
        }
    }
    detail.push(format!("t=1/3 matches block maxima for m <= {ONE_THIRD_M_MAX}"));
    if problems.is_empty() {
        Ok(detail.join("; "))
    } else {
        Err(problems.join("; "))
    }
}

fn average_deviation() -> Outcome {
    let hi = 1u64 << AVERAGE_J.end();
    let table = lebesgue_table(hi).map_err(|e| e.to_string())?;
    let (lo_bound, hi_bound) = AVERAGE_INTERVAL;
    ensure(hi_bound - lo_bound < 0.5, || "interval too wide".into())?;
    let mut seen = (f64::INFINITY, f64::NEG_INFINITY);
    for j in AVERAGE_J {
        let dev = average_deviation_in(&table, 1 << j).map_err(|e| e.to_string())?;
        ensure((lo_bound..=hi_bound).contains(&dev), || {
            format!("n=2^{j}: deviation {dev}")
        })?;
        seen = (seen.0.min(dev), seen.1.max(dev));
    }
    Ok(format!(
        "range [{:.9}, {:.9}] inside [{lo_bound}, {hi_bound}]",
        seen.0, seen.1
    ))
}

fn criteria() -> Vec<Criterion> {
    let min = |m: u64| Duration::from_secs(60 * m);
    vec![
        Criterion {
            id: 1,
            title: "fine = n D* = L1 route",
            budget: min(1),
            check: exact_equivalence,
        },
        Criterion {
            id: 2,
            title: "six-method agreement",
            budget: min(10),
            check: six_methods,
        },
        Criterion {
            id: 3,
            title: "closed form vs recursion, random n",
            budget: Duration::from_secs(30),
            check: random_closed_form,
        },
        Criterion {
            id: 4,
            title: "doubling and odd-step identities",
            budget: min(5),
            check: recursion_identities,
        },
        Criterion {
            id: 5,
            title: "generating-function coefficients",
            budget: min(5),
            check: generating_function,
        },
        Criterion {
            id: 6,
            title: "block maximum formula vs scan",
            budget: min(5),
            check: block_maximum,
        },
        Criterion {
            id: 7,
            title: "upper bound log2(n)/3 + 1",
            budget: min(5),
            check: upper_bound,
        },
        Criterion {
            id: 8,
            title: "nonnegativity of the discrepancy function",
            budget: min(5),
            check: nonnegativity,
        },
        Criterion {
            id: 9,
            title: "Lebesgue function independent of x",
            budget: min(5),
            check: x_independence,
        },
        Criterion {
            id: 10,
            title: "CLT fractions near Phi(y)",
            budget: min(2),
            check: clt,
        },
        Criterion {
            id: 11,
            title: "subsequence ratios",
            budget: min(5),
            check: subsequences,
        },
        Criterion {
            id: 12,
            title: "average deviation interval",
            budget: min(5),
            check: average_deviation,
        },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let over = elapsed > c.budget;
        let (tag, detail) = match outcome {
            Ok(d) if !over => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(d) => ("FAIL", d),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "{tag} {:>2} {} ({detail}) [{:.2}s of {}s]",
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("{} criteria, {failed} failed", criteria().len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
