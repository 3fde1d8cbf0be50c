use std::process::{Command, Output};

fn walshdisc(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_walshdisc"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("WALSHDISC_THREADS", t),
        None => cmd.env_remove("WALSHDISC_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    walshdisc(args, None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn ln_all_methods_on_three() {
    let o = run(&["ln", "3", "--method", "all"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 6);
    for (row, name) in rows.iter().zip([
        "fine",
        "recursion",
        "nearest-int",
        "integral",
        "discrepancy",
        "walsh-sum",
    ]) {
        assert!(row.starts_with(name), "{row}");
        assert!(row.ends_with("3/2^1 = 1.500000000000"), "{row}");
    }
}

#[test]
fn ln_single_method() {
    let o = run(&["ln", "1", "--method", "fine"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1 = 1.000000000000\n");
    let o = run(&["ln", "2^x", "--method", "fine"]);
    assert_eq!(code(&o), 2);
    let o = run(&["ln", "11", "--method", "recursion,l1", "--digits", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "recursion    17/2^3 = 2.125\nl1           17/2^3 = 2.125\n");
}

#[test]
fn ln_usage_and_guard_errors() {
    assert_eq!(code(&run(&["ln", "0"])), 2);
    assert_eq!(code(&run(&["ln", "abc"])), 2);
    assert_eq!(code(&run(&["ln", "2^63", "--method", "fine"])), 2);
    assert_eq!(code(&run(&["ln", "2000", "--method", "walsh-sum"])), 2);
    assert_eq!(code(&run(&["ln", "5", "--method", "bogus"])), 2);
    assert_eq!(code(&run(&["ln", "9223372036854775807", "--method", "fine"])), 0);
}

#[test]
fn verify_closed_forms_against_discrepancy() {
    let o = run(&[
        "verify",
        "--max",
        "4096",
        "--methods",
        "fine,recursion,nearest-int,discrepancy",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("range: 1..=4096\n"), "{out}");
    assert!(out.contains("checked: 4096\n"));
    assert!(out.contains("failures: 0\n"));
}

#[test]
fn verify_all_six_methods() {
    let o = run(&["verify", "--max", "1024", "--methods", "all", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checked"], 1024);
    assert_eq!(v["passed"], true);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["range"], serde_json::json!([1, 1024]));
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn verify_edge_cases() {
    let o = run(&["verify", "--max", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("checked: 1\n"));

    let o = run(&["verify", "--max", "10", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "n,method_a,value_a,method_b,value_b\n");

    let o = run(&["verify", "--max", "10", "--format", "json", "--timing"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["elapsed_ms"].is_u64());

    assert_eq!(code(&run(&["verify", "--min", "5", "--max", "3"])), 2);
    assert_eq!(
        code(&run(&["verify", "--max", "2048", "--methods", "fine,walsh-sum"])),
        2
    );
    assert_eq!(code(&run(&["verify", "--max", "2^23", "--methods", "fine,l1"])), 2);
    assert_eq!(code(&run(&["verify", "--max", "0"])), 2);
}

#[test]
fn verify_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&[
        "verify",
        "--max",
        "64",
        "--methods",
        "fine,l1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["subject"], "agreement[fine,l1]");

    let bad = dir.path().join("missing").join("report.json");
    let o = run(&["verify", "--max", "4", "--out", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn table_rows_and_header() {
    let o = run(&["table", "--max", "8"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,L_frac,L_dec,Dstar_frac,nu,n1"));
    let l: Vec<String> = lines.map(|r| r.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(l, ["1", "1", "3/2^1", "1", "7/2^2", "3/2^1", "7/2^2", "1"]);
    assert!(out.contains("\n5,7/2^2,1.750000000000,7/20,2,2\n"));
    assert_eq!(code(&run(&["table", "--max", "0"])), 2);
}

#[test]
fn table_json_mirrors_csv() {
    let o = run(&["table", "--max", "8", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[2]["L_frac"], "3/2^1");
    assert_eq!(rows[2]["Dstar_frac"], "1/2");
    assert_eq!(rows[6]["nu"], 3);
    assert_eq!(rows[7]["n1"], 3);
}

#[test]
fn table_output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for (i, threads) in ["1", "1", "4"].into_iter().enumerate() {
        let p = dir.path().join(format!("t{i}.csv"));
        let o = walshdisc(&["table", "--max", "5000", "--out", p.to_str().unwrap()], Some(threads));
        assert_eq!(code(&o), 0);
        files.push(std::fs::read(&p).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[0], files[2]);
    assert_eq!(files[0].iter().filter(|&&b| b == b'\n').count(), 5001);
}

#[test]
fn scan_blocks_formula_matches_scan() {
    let o = run(&["scan-blocks", "--r-max", "20"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert_eq!(rows[1], "2,3/2,3,3/2,3,true");
    assert_eq!(code(&run(&["scan-blocks", "--r-max", "0"])), 2);
    assert_eq!(code(&run(&["scan-blocks", "--r-max", "25"])), 2);
}

#[test]
fn gf_coefficients() {
    let o = run(&["gf", "--terms", "1024"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stderr(&o), "max |diff| = 0\n");
    assert_eq!(stdout(&o).lines().count(), 1025);

    let o = run(&["gf", "--terms", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "n,coefficient,L_n,diff\n1,1,1,0\n");

    assert_eq!(code(&run(&["gf", "--terms", "2^20"])), 2);
}

#[test]
fn clt_rows_and_determinism() {
    let args = ["clt", "--N", "2^16", "--y", "-1,0,1"];
    let one = walshdisc(&args, Some("1"));
    let many = walshdisc(&args, Some("4"));
    assert_eq!(code(&one), 0, "{}", stderr(&one));
    assert_eq!(one.stdout, many.stdout);
    let out = stdout(&one);
    let fractions: Vec<f64> = out
        .lines()
        .skip(1)
        .map(|r| r.split(',').nth(5).unwrap().parse().unwrap())
        .collect();
    assert_eq!(fractions.len(), 3);
    assert!(fractions.windows(2).all(|w| w[0] <= w[1]));
    assert!(out.lines().nth(2).unwrap().starts_with("65536,0,"));

    assert_eq!(code(&run(&["clt", "--N", "3"])), 2);
    assert_eq!(code(&run(&["clt", "--N", "2^27"])), 2);
    assert_eq!(code(&run(&["clt", "--N", "100", "--y", "nan"])), 2);
}

#[test]
fn subseq_powers_of_two() {
    let o = run(&["subseq", "--t", "0/1", "--m-max", "20"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for (m, row) in (1..).zip(out.lines().skip(1)) {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[1], (1u64 << m).to_string());
        assert_eq!(fields[2], "1");
        let ratio: f64 = fields[4].parse().unwrap();
        assert!((ratio - 1.0 / (f64::from(m) * std::f64::consts::LN_2)).abs() < 1e-11);
    }
}

#[test]
fn subseq_one_third_and_errors() {
    let o = run(&["subseq", "--t", "1/3", "--m-max", "30"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 31);
    let last: f64 = out.lines().last().unwrap().split(',').nth(4).unwrap().parse().unwrap();
    assert!((0.48..0.56).contains(&last), "{last}");
    assert_eq!(code(&run(&["subseq", "--t", "2", "--m-max", "3"])), 2);
    assert_eq!(code(&run(&["subseq", "--t", "1/2", "--m-max", "63"])), 2);
    assert_eq!(code(&run(&["subseq", "--t", "1/0", "--m-max", "3"])), 2);
}

#[test]
fn ae_probe_is_seeded() {
    let a = run(&["ae-probe", "--samples", "3", "--seed", "7", "--m-max", "12"]);
    let b = run(&["ae-probe", "--samples", "3", "--seed", "7", "--m-max", "12"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 1 + 3 * 12);
    assert_eq!(code(&run(&["ae-probe", "--samples", "1", "--m-max", "62"])), 2);
}

#[test]
fn bound_and_nonnegativity_sweeps() {
    let o = run(&["bounds", "--max", "2^14"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("failures: 0\n"));
    let o = run(&["nonneg", "--max", "512", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checked"], 512);
    assert_eq!(code(&run(&["nonneg", "--max", "2^23"])), 2);
    assert_eq!(code(&run(&["bounds", "--max", "2^27"])), 2);
}

#[test]
fn limsup_and_average_tables() {
    let o = run(&["limsup", "--r-max", "6"]);
    assert_eq!(code(&o), 0);
    let signs: Vec<bool> = stdout(&o)
        .lines()
        .skip(1)
        .map(|r| r.split(',').nth(2).unwrap().starts_with('-'))
        .collect();
    assert_eq!(signs, [true, false, true, false, true]);

    let o = run(&["average", "--j-min", "3", "--j-max", "5", "--digits", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "n,deviation\n8,0.562500\n16,0.531250\n32,0.515625\n");
    assert_eq!(code(&run(&["average", "--j-min", "4", "--j-max", "2"])), 2);
}

#[test]
fn process_level_errors() {
    assert_eq!(code(&walshdisc(&["ln", "3"], Some("many"))), 2);
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let help = run(&["--help"]);
    assert_eq!(code(&help), 0);
    assert!(stdout(&help).contains("scan-blocks"));
}
