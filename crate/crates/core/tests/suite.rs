use ebgwo::cec::{generate_suite_data, load_or_generate, load_suite_data, parse_suite_data, write_suite_data, SuiteDataError};
use ebgwo::RngStream;

#[test]
fn every_function_is_anchored_at_its_optimum() {
    for dim in [10, 30] {
        let suite = generate_suite_data(2024, dim).unwrap();
        for f in suite.functions() {
            let target = 100.0 * f.id() as f64;
            let v = f.eval(f.optimum());
            assert!(((v - target) / target).abs() <= 1e-6, "dim {dim} F{}: {v} vs {target}", f.id());
        }
    }
}

#[test]
fn random_probes_never_undercut_the_minimum() {
    let suite = generate_suite_data(7, 10).unwrap();
    let mut rng = RngStream::new(99);
    for f in suite.functions() {
        let fmin = f.known_fmin();
        for _ in 0..2_000 {
            let x: Vec<f64> = (0..10).map(|_| rng.next_in(-100.0, 100.0)).collect();
            let v = f.eval(&x);
            assert!(v.is_finite() && v >= fmin - 1e-9 * fmin, "F{}: {v}", f.id());
        }
    }
}

#[test]
fn suite_problems_carry_box_and_fmin() {
    let suite = generate_suite_data(3, 10).unwrap();
    let p = suite.problem(17).unwrap();
    assert_eq!(p.name, "F17");
    assert_eq!(p.dim(), 10);
    assert_eq!(p.known_fmin, Some(1700.0));
    assert!(suite.problem(0).is_none());
    assert!(suite.problem(31).is_none());
}

#[test]
fn written_files_load_back_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("suite_10.txt");
    let suite = generate_suite_data(11, 10).unwrap();
    write_suite_data(&suite, &path).unwrap();
    let back = load_suite_data(&path, 10).unwrap();
    let x = vec![12.5; 10];
    for (a, b) in suite.functions().zip(back.functions()) {
        assert_eq!(a.eval(&x), b.eval(&x));
    }
}

#[test]
fn missing_file_falls_back_only_when_allowed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("absent.txt");
    assert!(matches!(load_or_generate(&path, 10, 1, false), Err(SuiteDataError::Missing(_))));
    let suite = load_or_generate(&path, 10, 1, true).unwrap();
    assert_eq!(suite.dim, 10);
}

#[test]
fn malformed_files_are_reported() {
    let good = generate_suite_data(1, 10).unwrap().to_text();

    // wrong requested dimension
    assert!(matches!(parse_suite_data(&good, 30), Err(SuiteDataError::DimensionMismatch { .. })));

    // a missing function
    let cut: String = good.split("cec14 10 30").next().unwrap().to_string();
    assert!(matches!(parse_suite_data(&cut, 10), Err(SuiteDataError::MissingFunction(30))));

    // garbage token
    let bad = good.replacen("shift: ", "shift: nope ", 1);
    assert!(matches!(parse_suite_data(&bad, 10), Err(SuiteDataError::Malformed { .. })));

    // non-orthogonal rotation: scale the first rotation row of F1
    let mut lines: Vec<String> = good.lines().map(str::to_string).collect();
    let rot = lines.iter().position(|l| l == "rot:").unwrap();
    lines[rot + 1] = lines[rot + 1]
        .split_whitespace()
        .map(|t| format!("{:e}", 2.0 * t.parse::<f64>().unwrap()))
        .collect::<Vec<_>>()
        .join(" ");
    let skewed = lines.join("\n");
    assert!(matches!(
        parse_suite_data(&skewed, 10),
        Err(SuiteDataError::NotOrthogonal { function: 1, .. })
    ));

    // shift outside the box
    let mut lines: Vec<String> = good.lines().map(str::to_string).collect();
    let s = lines.iter().position(|l| l.starts_with("shift:")).unwrap();
    lines[s] = format!("shift: 150 {}", lines[s].split_whitespace().skip(2).collect::<Vec<_>>().join(" "));
    assert!(matches!(parse_suite_data(&lines.join("\n"), 10), Err(SuiteDataError::Invalid { function: 1, .. })));
}
