use std::io::Write;

use catshrink::cli::{run, EXIT_DOMAIN, EXIT_INVALID, EXIT_OK};
use catshrink::parallel::par_bootstrap_homogeneity;
use catshrink::report::Document;
use catshrink_core::bootstrap::{bootstrap_homogeneity, BootstrapConfig};
use catshrink_core::ContingencyTable;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str], stdin: &str) -> Outcome {
    let mut argv = vec!["catshrink"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn structured(args: &[&str], stdin: &str) -> Document {
    let mut full = vec!["--output", "structured"];
    full.extend_from_slice(args);
    let o = invoke(&full, stdin);
    assert_eq!(o.code, EXIT_OK, "stderr: {}", o.stderr);
    Document::from_json(&o.stdout).unwrap()
}

#[test]
fn estimate_defaults_to_bayes_laplace_prior() {
    let Document::Estimate(d) = structured(&["estimate", "--x", "0", "--n", "10"], "") else {
        panic!("wrong document");
    };
    assert_eq!(d.estimate, 1.0 / 12.0);
    assert_eq!(d.lambda, Some(10.0 / 12.0));
    assert_eq!(d.target, Some(0.5));
    assert!(!d.prior_advisory);
}

#[test]
fn human_output_lists_fields() {
    let o = invoke(
        &["estimate", "--x", "3", "--n", "4", "--estimator", "mle"],
        "",
    );
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("estimate: 0.75\n"), "{}", o.stdout);
    assert!(o.stdout.starts_with("command: estimate\n"));
}

#[test]
fn homogeneity_example_p_value() {
    let Document::Test(d) = structured(
        &["test", "--kind", "homogeneity", "--lambda", "0.5"],
        "10,20\n30,40\n",
    ) else {
        panic!("wrong document");
    };
    assert!((d.report.p_two_sided - 0.373).abs() < 1e-3);
}

#[test]
fn json_input_is_accepted() {
    let Document::Assoc(d) = structured(&["assoc"], r#"{"counts": [[10, 20], [30, 40]]}"#) else {
        panic!("wrong document");
    };
    assert_eq!(d.counts, vec![vec![10, 20], vec![30, 40]]);
}

#[test]
fn mi_reads_targets_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "0.4,0.1\n0.1,0.4").unwrap();
    let path = f.path().to_str().unwrap();
    let Document::Mi(d) = structured(&["mi", "--lambda", "0.5", "--targets", path], "1,0\n0,1\n")
    else {
        panic!("wrong document");
    };
    assert_eq!(d.targets, path);
    assert!(d.value > 0.130812);
}

#[test]
fn mi_drop_empty_removes_zero_margins() {
    let o = invoke(&["mi"], "3,0\n0,0\n");
    assert_eq!(o.code, EXIT_DOMAIN, "{}", o.stderr);
    let Document::Mi(d) = structured(&["mi", "--drop-empty"], "3,0\n0,0\n") else {
        panic!("wrong document");
    };
    assert_eq!(d.counts, vec![vec![3]]);
    assert_eq!(d.value, 0.0);
}

#[test]
fn input_file_argument() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# paired outcomes\n15\t8\n2\t25").unwrap();
    let path = f.path().to_str().unwrap();
    let Document::Test(d) = structured(&["test", "--kind", "mcnemar", path], "") else {
        panic!("wrong document");
    };
    assert!((d.report.statistic - 6.0 / 10f64.sqrt()).abs() < 1e-12);
}

#[test]
fn malformed_inputs_exit_two_with_location() {
    let cases = [
        ("1,2\n3,x\n", "line 2"),
        ("1,2\n3\n", "line 2"),
        ("1, -2\n", "column 4"),
        ("{\"counts\": [[1, 2], [3]]", "line 1"),
    ];
    for (input, needle) in cases {
        let o = invoke(&["assoc"], input);
        assert_eq!(o.code, EXIT_INVALID, "{input:?}");
        assert!(o.stderr.contains(needle), "{input:?}: {}", o.stderr);
    }
}

#[test]
fn invalid_flags_exit_two_naming_the_flag() {
    let o = invoke(
        &["test", "--kind", "homogeneity", "--lambda", "1.5"],
        "1,2\n3,4\n",
    );
    assert_eq!(o.code, EXIT_INVALID);
    assert!(o.stderr.contains("--lambda"), "{}", o.stderr);

    let o = invoke(&["estimate", "--x", "1", "--n", "2", "--prior-a", "-1"], "");
    assert_eq!(o.code, EXIT_INVALID);
    assert!(o.stderr.contains("--prior-a"), "{}", o.stderr);

    let o = invoke(&["bootstrap", "--kind", "homogeneity"], "1,2\n3,4\n");
    assert_eq!(o.code, EXIT_INVALID);
    assert!(o.stderr.contains("--seed"), "{}", o.stderr);

    let o = invoke(&["test", "--kind", "sign"], "");
    assert_eq!(o.code, EXIT_INVALID);
}

#[test]
fn undefined_statistics_exit_three() {
    assert_eq!(
        invoke(&["test", "--kind", "homogeneity"], "0,0\n3,4\n").code,
        EXIT_DOMAIN
    );
    assert_eq!(
        invoke(&["test", "--kind", "mcnemar"], "5,0\n0,5\n").code,
        EXIT_DOMAIN
    );
    assert_eq!(
        invoke(&["test", "--kind", "mcnemar"], "1,2,3\n4,5,6\n").code,
        EXIT_DOMAIN
    );
    assert_eq!(
        invoke(
            &["estimate", "--x", "0", "--n", "0", "--estimator", "mle"],
            ""
        )
        .code,
        EXIT_DOMAIN
    );
}

#[test]
fn parallel_bootstrap_equals_serial() {
    let t = ContingencyTable::new(&[[10, 20], [30, 40]]).unwrap();
    for seed in [0, 42, u64::MAX] {
        let cfg = BootstrapConfig::new(2_000, seed, 0.05).unwrap();
        let a = bootstrap_homogeneity(&t, 0.7, &cfg).unwrap();
        let b = par_bootstrap_homogeneity(&t, 0.7, &cfg).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn binary_runs_end_to_end() {
    let mut child = std::process::Command::new(env!("CARGO_BIN_EXE_catshrink"))
        .args(["--output", "structured", "assoc"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"1,2\n-3,4\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
