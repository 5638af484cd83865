//! Behavioural tests for the binary: payloads, formats, and exit codes.

use std::io::Write;
use std::process::{Command, Output};

fn xpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xpoint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn value_of<'a>(payload: &'a str, key: &str) -> &'a str {
    payload
        .lines()
        .find_map(|line| line.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("key {key} missing from payload:\n{payload}"))
}

fn temp_csv(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    file.write_all(content.as_bytes()).expect("write temp csv");
    file
}

#[test]
fn fit_exact_line() {
    let file = temp_csv("env,action\n0,1\n1,3\n2,5\n3,7\n");
    let out = xpoint(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--env-col",
        "env",
        "--action-col",
        "action",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let payload = stdout(&out);
    assert_eq!(value_of(&payload, "alpha"), "2");
    assert_eq!(value_of(&payload, "beta"), "1");
    assert_eq!(value_of(&payload, "r_squared"), "1");
    assert_eq!(value_of(&payload, "n_samples"), "4");
}

#[test]
fn fit_three_point_example() {
    let file = temp_csv("env,action\n0,0\n1,1\n2,3\n");
    let out = xpoint(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--env-col",
        "env",
        "--action-col",
        "action",
    ]);
    assert!(out.status.success());
    let payload = stdout(&out);
    assert_eq!(value_of(&payload, "alpha"), "1.5");
    assert_eq!(value_of(&payload, "beta"), "-0.166666667");
}

#[test]
fn fit_missing_required_flag_is_a_usage_error() {
    let file = temp_csv("env,action\n0,0\n1,1\n");
    let out = xpoint(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--env-col",
        "env",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).is_empty());
    assert!(
        stderr(&out).to_lowercase().contains("usage"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn fit_missing_file_column_is_a_data_error() {
    let file = temp_csv("env,value\n0,0\n1,1\n");
    let out = xpoint(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--env-col",
        "env",
        "--action-col",
        "action",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("action"));
}

#[test]
fn fit_bad_cell_reports_its_row() {
    let file = temp_csv("env,action\n0,0\n1,oops\n2,3\n");
    let out = xpoint(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--env-col",
        "env",
        "--action-col",
        "action",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("row 3"), "{}", stderr(&out));
}

#[test]
fn fit_with_smoothing_weights() {
    let file = temp_csv("env,action\n10,1\n20,2\n30,3\n40,4\n");
    let out = xpoint(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--env-col",
        "env",
        "--action-col",
        "action",
        "--smooth-weights",
        "1,1,1",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
}

#[test]
fn decompose_co2_low_at_20000() {
    let out = xpoint(&["decompose", "--case", "co2-low", "--eps", "20000"]);
    assert!(out.status.success());
    let payload = stdout(&out);
    assert_eq!(value_of(&payload, "eps.0.u_slope"), "0.333333333");
    assert_eq!(value_of(&payload, "eps.0.n_slope"), "-0.666666667");
    assert_eq!(value_of(&payload, "eps.0.n_intercept"), "3.4");
    assert_eq!(value_of(&payload, "eps.0.xpoint"), "3.4");
}

#[test]
fn decompose_power_before_defaults_to_reference_eps() {
    let out = xpoint(&["decompose", "--case", "power-before"]);
    assert!(out.status.success());
    let payload = stdout(&out);
    assert_eq!(value_of(&payload, "eps.0.eps"), "28");
    assert_eq!(value_of(&payload, "eps.0.xpoint"), "4668.4");
    assert_eq!(value_of(&payload, "n_intercept_rule"), "183.2*eps - 461.2");
}

#[test]
fn decompose_equal_thresholds_is_a_numeric_error() {
    let out = xpoint(&[
        "decompose",
        "--alpha",
        "1",
        "--beta",
        "0",
        "--eps-u0",
        "5",
        "--eps-n0",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).is_empty());
}

#[test]
fn xpoint_crossing_and_parallel_error() {
    let out = xpoint(&[
        "xpoint",
        "--u-slope",
        "1",
        "--u-intercept",
        "0",
        "--n-slope",
        "-1",
        "--n-intercept",
        "2",
    ]);
    assert!(out.status.success());
    assert_eq!(value_of(&stdout(&out), "xpoint"), "1");

    let out = xpoint(&[
        "xpoint",
        "--u-slope",
        "2",
        "--u-intercept",
        "0",
        "--n-slope",
        "2",
        "--n-intercept",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn argmax_matches_closed_form_and_ignores_offset() {
    let out = xpoint(&[
        "argmax", "--ua", "0.5", "--nb", "2", "--na", "0", "--noff", "0",
    ]);
    assert!(out.status.success());
    let base = stdout(&out);
    assert_eq!(value_of(&base, "x_vmax"), "0.396850263");

    let out = xpoint(&[
        "argmax", "--ua", "0.5", "--nb", "2", "--na", "0", "--noff", "100",
    ]);
    let shifted = stdout(&out);
    assert_eq!(value_of(&base, "x_vmax"), value_of(&shifted, "x_vmax"));
}

#[test]
fn argmax_inverted_bracket_is_a_usage_error() {
    let out = xpoint(&[
        "argmax", "--ua", "0.5", "--nb", "2", "--lower", "5", "--upper", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn argmax_without_interior_maximum_is_a_numeric_error() {
    let out = xpoint(&["argmax", "--ua", "0.5", "--nb", "2", "--upper", "0.1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_accepts_ids_and_parameter_tuples() {
    let out = xpoint(&["compare", "power-before", "power-after", "--eps-ref", "28"]);
    assert!(out.status.success());
    let payload = stdout(&out);
    assert_eq!(value_of(&payload, "approach.I"), "consistent");
    assert_eq!(value_of(&payload, "approach.II"), "opposite");

    // same comparison with the after side inline
    let out = xpoint(&[
        "compare",
        "power-before",
        "138.9,8.703,22,30",
        "--eps-ref",
        "28",
    ]);
    assert!(out.status.success());
    let payload = stdout(&out);
    assert_eq!(value_of(&payload, "approach.I"), "consistent");
    assert_eq!(value_of(&payload, "approach.II"), "opposite");

    // five-number tuples carry an explicit scale; flags are scale-invariant
    let out = xpoint(&[
        "compare",
        "183.2,-461.2,27,30,2.5",
        "138.9,8.703,22,30,2.5",
        "--eps-ref",
        "28",
    ]);
    assert!(out.status.success());
    let payload = stdout(&out);
    assert_eq!(value_of(&payload, "approach.I"), "consistent");
    assert_eq!(value_of(&payload, "approach.II"), "opposite");
}

#[test]
fn compare_same_case_is_unchanged() {
    let out = xpoint(&["compare", "co2-low", "co2-low", "--eps-ref", "20000"]);
    assert!(out.status.success());
    let payload = stdout(&out);
    for approach in ["I", "II", "III", "IV"] {
        assert_eq!(
            value_of(&payload, &format!("approach.{approach}")),
            "unchanged"
        );
    }
}

#[test]
fn compare_unknown_case_is_a_usage_error() {
    let out = xpoint(&["compare", "power-2020", "power-after", "--eps-ref", "28"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("power-2020"));
}

#[test]
fn plan_no_op_target_has_zero_shifts() {
    let out = xpoint(&[
        "plan",
        "--case",
        "power-before",
        "--alpha-target",
        "183.2",
        "--beta-target",
        "-461.2",
        "--eps-ref",
        "28",
    ]);
    assert!(out.status.success());
    let payload = stdout(&out);
    // shifts vanish up to float rounding of the two action routes
    for key in ["approach.III.value", "approach.IV.value"] {
        let value: f64 = value_of(&payload, key).parse().unwrap();
        assert!(value.abs() <= 1e-9 * 4668.4, "{key} = {value}");
    }
}

#[test]
fn simulate_is_deterministic_and_fits_back() {
    let args = [
        "simulate",
        "--alpha",
        "2",
        "--beta",
        "1",
        "--grid",
        "0:10:21",
        "--noise-sd",
        "0.5",
        "--seed",
        "7",
    ];
    let a = xpoint(&args);
    let b = xpoint(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));

    let file = temp_csv(&stdout(&a));
    let out = xpoint(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--env-col",
        "env",
        "--action-col",
        "action",
    ]);
    assert!(out.status.success());
    let alpha: f64 = value_of(&stdout(&out), "alpha").parse().unwrap();
    assert!((alpha - 2.0).abs() < 0.5);
}

#[test]
fn simulate_without_a_grid_is_a_usage_error() {
    let out = xpoint(&["simulate", "--alpha", "2", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn plot_table_round_trips_as_numeric_columns() {
    let out = xpoint(&["plot", "--case", "power-before", "--eps", "28,29"]);
    assert!(out.status.success());
    let table = stdout(&out);
    assert!(table.starts_with("eps,x,u,n\n"));
    // two line pairs, 51 samples each
    assert_eq!(table.lines().count(), 1 + 2 * 51);

    // the data table loads straight back as numeric columns
    let file = temp_csv(&table);
    let out = xpoint(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--env-col",
        "x",
        "--action-col",
        "n",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
}

#[test]
fn plot_svg_is_a_standalone_chart_with_crossing_markers() {
    let out = xpoint(&[
        "plot",
        "--case",
        "power-before",
        "--eps",
        "28,29",
        "--chart",
        "svg",
    ]);
    assert!(out.status.success());
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg "));
    assert!(svg.contains("polyline"));
    assert!(svg.contains("circle"));
    // one crossing marker per environment
    assert!(svg.contains("x=4668.4"), "marker for eps 28");
    assert!(svg.contains("x=4851.6"), "marker for eps 29");
}

#[test]
fn decompose_crossing_matches_the_fitted_line() {
    // points exactly on action = 183.2 * env - 461.2
    let file = temp_csv("env,action\n20,3202.8\n25,4118.8\n30,5034.8\n");
    let out = xpoint(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--env-col",
        "env",
        "--action-col",
        "action",
    ]);
    assert!(out.status.success());
    let payload = stdout(&out);
    let alpha = value_of(&payload, "alpha").to_string();
    let beta = value_of(&payload, "beta").to_string();

    let out = xpoint(&[
        "decompose",
        "--alpha",
        &alpha,
        "--beta",
        &beta,
        "--eps-u0",
        "27",
        "--eps-n0",
        "30",
        "--eps",
        "23.7",
    ]);
    assert!(out.status.success());
    let payload = stdout(&out);
    let got: f64 = value_of(&payload, "eps.0.xpoint").parse().unwrap();
    let line = alpha.parse::<f64>().unwrap() * 23.7 + beta.parse::<f64>().unwrap();
    assert!((got - line).abs() <= 1e-9 * line.abs().max(1.0));
}

#[test]
fn fit_with_a_semicolon_delimiter() {
    let file = temp_csv("env;action\n0;1\n1;3\n2;5\n");
    let out = xpoint(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--env-col",
        "env",
        "--action-col",
        "action",
        "--delimiter",
        ";",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(value_of(&stdout(&out), "alpha"), "2");
}

#[test]
fn plot_without_eps_is_a_usage_error() {
    let out = xpoint(&["plot", "--case", "power-before"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_flag_writes_the_payload_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let out = xpoint(&[
        "decompose",
        "--case",
        "co2-high",
        "--eps",
        "20000",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("eps.0.xpoint = 12.6"));
}

#[test]
fn unwritable_output_path_is_a_data_error() {
    let out = xpoint(&[
        "decompose",
        "--case",
        "co2-high",
        "--output",
        "/nonexistent-dir/out.txt",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_format_and_pretty_render() {
    let out = xpoint(&[
        "--format",
        "table",
        "xpoint",
        "--u-slope",
        "1",
        "--u-intercept",
        "0",
        "--n-slope",
        "-1",
        "--n-intercept",
        "2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("xpoint\t1\n"));

    let out = xpoint(&[
        "--pretty",
        "xpoint",
        "--u-slope",
        "1",
        "--u-intercept",
        "0",
        "--n-slope",
        "-1",
        "--n-intercept",
        "2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("xpoint"));
    assert!(!stdout(&out).contains(" = "));
}

#[test]
fn help_exits_zero() {
    let out = xpoint(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Usage"));
}
