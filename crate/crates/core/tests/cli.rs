//! End-to-end checks of the `swathplan` binary: exit codes, overrides,
//! golden outputs and plan-file round trips.

use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use swathplan::cli::format::{parse_plan, parse_plan_csv, PLAN_COLUMNS};

const GOLDEN_PLAN: &str = include_str!("golden/plan_default.csv");
const GOLDEN_WIDTH_TABLE: &str = include_str!("golden/width_table_default.csv");

/// 2 · 120 m · tan 60°.
const FLAT_WIDTH_120M: &str = "415.692";
/// 0.9 · 2 · 110 m · tan 60°.
const FLAT_SPACING_110M: f64 = 342.946;

fn swathplan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swathplan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn plot_data(args: &[&str]) -> Value {
    let out = swathplan(&[&["plot-data"], args].concat());
    assert_eq!(out.status.code(), Some(0));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn default_outputs_match_golden_files() {
    let plan = swathplan(&["plan"]);
    assert_eq!(plan.status.code(), Some(0));
    assert_eq!(stdout(&plan), GOLDEN_PLAN);

    let table = swathplan(&["width-table"]);
    assert_eq!(table.status.code(), Some(0));
    assert_eq!(stdout(&table), GOLDEN_WIDTH_TABLE);
}

#[test]
fn plan_summary_goes_to_stderr_and_file_output_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plan.csv");
    let out = swathplan(&["plan", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("34 lines, 68 NM total"));
    assert_eq!(std::fs::read_to_string(path).unwrap(), GOLDEN_PLAN);
}

#[test]
fn flat_override_gives_constant_widths() {
    let out = stdout(&swathplan(&["width-table", "--alpha-deg", "0"]));
    for row in out.lines().skip(1) {
        let cells: Vec<&str> = row.split(',').skip(1).collect();
        assert_eq!(cells.len(), 8);
        assert!(cells.iter().all(|c| *c == FLAT_WIDTH_120M), "{row}");
    }
}

#[test]
fn flat_override_gives_uniform_spacing() {
    let rows = parse_plan_csv(&stdout(&swathplan(&[
        "plan",
        "--alpha-deg",
        "0",
        "--precision",
        "12",
    ])))
    .unwrap();
    assert!(rows.len() > 2);
    for w in rows.windows(2) {
        assert!(
            (w[1].x_m - w[0].x_m - FLAT_SPACING_110M).abs() < 2e-3,
            "{:?}",
            w
        );
    }
}

#[test]
fn plot_data_describes_the_default_survey() {
    let doc = plot_data(&[]);
    let lines = doc["survey_lines"].as_array().unwrap();
    assert_eq!(lines.len(), 34);
    for line in lines {
        assert_eq!(line["start"][1].as_f64(), Some(0.0));
        assert_eq!(line["end"][1].as_f64(), Some(3704.0));
        assert_eq!(line["start"][0], line["end"][0]);
    }
    // 110 m at the center plus 3704 m · tan 1.5° toward the west edge.
    assert_eq!(doc["seabed"][0][2].as_f64(), Some(-206.993));
    assert_eq!(doc["seabed"][1][2].as_f64(), Some(-13.0073));
    assert_eq!(doc["summary"]["total_track_nm"].as_f64(), Some(68.0));
}

#[test]
fn plot_data_flat_seabed_is_level() {
    let doc = plot_data(&["--alpha-deg", "0"]);
    for corner in doc["seabed"].as_array().unwrap() {
        assert_eq!(corner[2].as_f64(), Some(-110.0));
    }
}

#[test]
fn plot_data_rejects_csv() {
    assert_eq!(
        swathplan(&["plot-data", "--format", "csv"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_round_trips_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let plan = stdout(&swathplan(&["plan", "--format", format]));
        let path = write(dir.path(), &format!("plan.{format}"), &plan);
        let out = swathplan(&["verify", &path]);
        assert_eq!(out.status.code(), Some(0), "{format}: {}", stdout(&out));
        assert!(stdout(&out).starts_with("PASS"));
    }
}

#[test]
fn csv_and_json_plans_parse_to_the_same_rows() {
    let csv = parse_plan(&stdout(&swathplan(&["plan"]))).unwrap();
    let json = parse_plan(&stdout(&swathplan(&["plan", "--format", "json"]))).unwrap();
    assert_eq!(csv, json);
}

#[test]
fn removing_a_line_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let mut lines: Vec<&str> = GOLDEN_PLAN.lines().collect();
    let removed = lines.remove(17);
    let x: f64 = removed.split(',').next().unwrap().parse().unwrap();
    let path = write(dir.path(), "gap.csv", &(lines.join("\n") + "\n"));

    let out = swathplan(&["verify", &path]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("FAIL"));
    assert!(text.contains("uncovered_intervals: 1"));
    let gap = text
        .lines()
        .find(|l| l.starts_with("finding: uncovered"))
        .unwrap();
    let bounds: Vec<f64> = gap[gap.find('[').unwrap() + 1..gap.find(']').unwrap()]
        .split(", ")
        .map(|v| v.parse().unwrap())
        .collect();
    assert!(bounds[0] < x && x < bounds[1], "{gap} should contain {x}");
}

#[test]
fn config_errors_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write(dir.path(), "unknown.json", r#"{"sea": {}}"#);
    let bad_json = write(dir.path(), "bad.json", "{");
    let bad_value = write(
        dir.path(),
        "bad_value.json",
        r#"{"transducer": {"opening_angle_deg": 200}}"#,
    );
    for path in [&unknown, &bad_json, &bad_value] {
        let out = swathplan(&["plan", "--config", path]);
        assert_eq!(out.status.code(), Some(2), "{path}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(
        swathplan(&["plan", "--config", "/nonexistent/x.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(swathplan(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        swathplan(&["plan", "--precision", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn config_file_drives_the_plan() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "flat.json",
        r#"{"region": {"slope_deg": 0}, "output": {"format": "json"}}"#,
    );
    let doc: Value =
        serde_json::from_slice(&swathplan(&["plan", "--config", &config]).stdout).unwrap();
    let rows = doc["placements"].as_array().unwrap();
    let dx = rows[1]["x_m"].as_f64().unwrap() - rows[0]["x_m"].as_f64().unwrap();
    assert!((dx - FLAT_SPACING_110M).abs() < 2e-3);
    assert_eq!(doc["summary"]["d1_m"].as_f64(), Some(0.0));
}

#[test]
fn infeasible_scenario_exits_one_with_partial_plan() {
    let out = swathplan(&["plan", "--alpha-deg", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("region exhausted"));
    let rows = parse_plan_csv(&stdout(&out)).unwrap();
    assert!(!rows.is_empty());
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(swathplan(&["--help"]).status.code(), Some(0));
    assert_eq!(swathplan(&["--version"]).status.code(), Some(0));
}

#[test]
fn precision_controls_significant_digits() {
    let rows = stdout(&swathplan(&["plan", "--precision", "3"]));
    assert!(rows.lines().nth(1).unwrap().starts_with("359,,686"));
}

fn malformed_plan() -> impl Strategy<Value = String> {
    let header = PLAN_COLUMNS.join(",");
    prop_oneof![
        // Wrong or missing header.
        "[a-z_]{1,8}(,[a-z_]{1,8}){0,3}\n1,,2\n",
        // Non-numeric position.
        "[a-zA-Z]{1,6}".prop_map(move |junk| format!("{header}\n{junk},,400\n")),
        // Missing width.
        (0.0f64..7000.0).prop_map({
            let header = PLAN_COLUMNS.join(",");
            move |x| format!("{header}\n{x},,\n")
        }),
        // Truncated record.
        (0.0f64..7000.0).prop_map({
            let header = PLAN_COLUMNS.join(",");
            move |x| format!("{header}\n{x}\n")
        }),
        // JSON without placements.
        "\\{\"[a-z]{1,6}\": [0-9]{1,3}\\}",
    ]
    .prop_filter("must not be a valid header", |s| {
        !s.starts_with("x_m,overlap_prev,width_m\n1,,2")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn malformed_plan_files_exit_two(text in malformed_plan()) {
        let dir = tempfile::tempdir().unwrap();
        let path = write(dir.path(), "bad.csv", &text);
        let out = swathplan(&["verify", &path]);
        prop_assert_eq!(out.status.code(), Some(2), "{}", text);
    }
}
