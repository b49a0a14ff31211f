use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermdecay")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn constants_json_and_csv() {
    let o = run(&["constants", "--a", "0.6", "--b", "0.6"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a = v["A"].as_f64().unwrap();
    assert!((a - 0.5).abs() < 1e-15, "{a}");
    assert_eq!(v["ordering_holds"], true);

    let o = run(&["constants", "--a", "0.3", "--b", "1.2", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
}

#[test]
fn constants_rejects_pairs_outside_the_domain() {
    for args in [["--a", "2", "--b", "1"], ["--a", "-1", "--b", "1"]] {
        let mut full = vec!["constants"];
        full.extend(args);
        assert_eq!(run(&full).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn extremal_coefficient_table() {
    let o = run(&["coeffs", "--a", "0.6", "--b", "0.6", "--function", "extremal", "--n-max", "100"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,log10_abs,phase_rad,log10_envelope"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 101);
    for (n, row) in rows.iter().enumerate() {
        assert_eq!(row[0], n.to_string());
        assert_eq!(row[1] == "-inf", n % 2 == 1, "row {n}");
    }
    let v: f64 = rows[2][1].parse().unwrap();
    assert!((v - (-0.30303002207042420)).abs() < 1e-12, "{v}");
}

#[test]
fn ground_state_gaussian_has_a_single_entry() {
    let o = run(&["coeffs", "--a", "0.6", "--b", "0.6", "--function", "gauss:1.0", "--n-max", "20"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let finite: Vec<&str> = text
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(1) != Some("-inf"))
        .collect();
    assert_eq!(finite.len(), 1);
    assert!(finite[0].starts_with("0,"));
}

#[test]
fn quadrature_matches_closed_form() {
    let args = ["coeffs", "--a", "0.3", "--b", "1.2", "--n-max", "40"];
    let closed = stdout(&run(&args));
    let mut q = args.to_vec();
    q.extend(["--method", "quadrature"]);
    let quad = stdout(&run(&q));
    for (c, d) in closed.lines().zip(quad.lines()).skip(1).step_by(2) {
        let x: f64 = c.split(',').nth(1).unwrap().parse().unwrap();
        let y: f64 = d.split(',').nth(1).unwrap().parse().unwrap();
        assert!((x - y).abs() < 1e-9, "{c} vs {d}");
    }
    let mut low = args.to_vec();
    low.extend(["--method", "quadrature", "--quad-order", "50"]);
    assert_eq!(run(&low).status.code(), Some(1));
}

#[test]
fn unknown_selector_and_bad_flags() {
    assert_eq!(run(&["coeffs", "--a", "0.6", "--b", "0.6", "--function", "sinc"]).status.code(), Some(1));
    assert_eq!(run(&["coeffs", "--a", "0.6"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn plot_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let o = run(&["coeffs", "--a", "0.6", "--b", "0.6", "--n-max", "60", "-o", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let (s1, s2) = (dir.path().join("1.svg"), dir.path().join("2.svg"));
    for s in [&s1, &s2] {
        let o = run(&["plot", "-i", csv.to_str().unwrap(), "-o", s.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let a = std::fs::read(&s1).unwrap();
    assert_eq!(a, std::fs::read(&s2).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("<polyline") && text.contains("envelope") && text.contains(">n</text>"));
}

#[test]
fn plot_errors_are_io() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let out = dir.path().join("x.svg");
    assert_eq!(
        run(&["plot", "-i", empty.to_str().unwrap(), "-o", out.to_str().unwrap()]).status.code(),
        Some(3)
    );
    let missing = dir.path().join("missing.csv");
    assert_eq!(
        run(&["plot", "-i", missing.to_str().unwrap(), "-o", out.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn ray_at_the_peak() {
    let o = run(&["bargmann-ray", "--a", "0.6", "--b", "0.6", "--theta", "peak", "--samples", "50"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut last_r = -1.0;
    for line in text.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert!(f[0] > last_r);
        last_r = f[0];
        assert!(f[3] <= 1e-6f64.ln_1p() / std::f64::consts::LN_10, "{line}");
    }
    let summary = String::from_utf8(o.stderr).unwrap();
    assert!(summary.contains("max_excess=") && summary.contains("bound=eq3"), "{summary}");
}

#[test]
fn ray_rejects_non_members() {
    // g_{0.1} is not dominated by exp(-0.6 x^2 / 2)
    let o = run(&["bargmann-ray", "--a", "0.6", "--b", "0.6", "--function", "gauss:0.1", "--theta", "0.3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "lemma21"]);
    assert!(o.status.success());
    let o = run(&["verify", "--suite", "decay", "--a", "0.3", "--b", "1.2"]);
    assert!(o.status.success());
    let report = stdout(&o);
    assert!(report.contains("fitted_rate=") && report.contains("target=-0.2614"), "{report}");
    assert!(!report.contains("(0.6,0.6)"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("no/such/dir/report.txt");
    assert_eq!(
        run(&["verify", "--suite", "symmetry", "-o", bad.to_str().unwrap()]).status.code(),
        Some(3)
    );
    let o = run(&["verify", "--suite", "symmetry", "--residual-tol", "1e-20"]);
    assert_eq!(o.status.code(), Some(2));
}
