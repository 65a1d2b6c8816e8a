//! Text formats written and read by the CLI.
//!
//! Plan CSV:
//!
//! ```text
//! x_m,overlap_prev,width_m
//! 358.522,,686.168
//! 951.797,0.10000,632.222
//! # 34 lines, 68 NM total, D1 = 96.9927 m
//! ```
//!
//! The trailing `#` line is a summary comment and is skipped when read back.
//! Plan JSON carries the same rows under `placements` plus a `summary` object.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::CliError;
use crate::geometry::WidthTable;
use crate::planner::{DepthProfile, SurveyPlan, SurveyRegion};
use crate::units::m_to_nm;

pub const PLAN_COLUMNS: [&str; 3] = ["x_m", "overlap_prev", "width_m"];

/// Fixed-point text with `sig` significant digits, trailing zeros removed.
pub fn fmt_sig(v: f64, sig: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - magnitude).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// `v` rounded to `sig` significant digits, as a number.
pub fn round_sig(v: f64, sig: usize) -> f64 {
    fmt_sig(v, sig).parse().unwrap_or(v)
}

pub fn fmt_ratio(v: f64) -> String {
    format!("{v:.5}")
}

fn round_ratio(v: f64) -> f64 {
    fmt_ratio(v).parse().unwrap_or(v)
}

pub fn width_table_csv(table: &WidthTable, distances_nm: &[f64], precision: usize) -> String {
    let mut out = String::from("heading_deg");
    for d in distances_nm {
        out.push_str(&format!(",{d}"));
    }
    out.push('\n');
    for (heading, row) in table.rows() {
        out.push_str(&format!("{heading}"));
        for cell in row {
            match cell {
                Ok(w) => out.push_str(&format!(",{}", fmt_sig(*w, precision))),
                Err(_) => out.push_str(",ERR"),
            }
        }
        out.push('\n');
    }
    out
}

pub fn width_table_json(table: &WidthTable, distances_nm: &[f64], precision: usize) -> String {
    let rows: Vec<Value> = table
        .rows()
        .map(|(heading, row)| {
            let cells: Vec<Value> = row
                .iter()
                .zip(distances_nm)
                .map(|(cell, &d)| match cell {
                    Ok(w) => json!({ "distance_nm": d, "width_m": round_sig(*w, precision) }),
                    Err(e) => json!({ "distance_nm": d, "width_m": null, "error": e.to_string() }),
                })
                .collect();
            json!({ "heading_deg": heading, "cells": cells })
        })
        .collect();
    pretty(&Value::Array(rows))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn plan_csv(plan: &SurveyPlan, profile: &DepthProfile, precision: usize) -> String {
    let mut out = PLAN_COLUMNS.join(",");
    out.push('\n');
    for p in &plan.placements {
        let overlap = p.overlap_with_previous.map(fmt_ratio).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_sig(p.x, precision),
            overlap,
            fmt_sig(p.swath_width, precision)
        ));
    }
    out.push_str(&format!("# {}\n", plan_summary(plan, profile, precision)));
    out
}

pub fn plan_summary(plan: &SurveyPlan, profile: &DepthProfile, precision: usize) -> String {
    format!(
        "{} lines, {} NM total, D1 = {} m",
        plan.line_count,
        fmt_sig(plan.total_track_length, precision),
        fmt_sig(profile.edge_offset_d1, precision)
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanRow {
    pub x_m: f64,
    pub overlap_prev: Option<f64>,
    pub width_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSummary {
    pub line_count: usize,
    pub total_track_nm: f64,
    pub d1_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanDocument {
    pub placements: Vec<PlanRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<PlanSummary>,
}

pub fn plan_json(plan: &SurveyPlan, profile: &DepthProfile, precision: usize) -> String {
    let doc = PlanDocument {
        placements: plan
            .placements
            .iter()
            .map(|p| PlanRow {
                x_m: round_sig(p.x, precision),
                overlap_prev: p.overlap_with_previous.map(round_ratio),
                width_m: round_sig(p.swath_width, precision),
            })
            .collect(),
        summary: Some(PlanSummary {
            line_count: plan.line_count,
            total_track_nm: round_sig(plan.total_track_length, precision),
            d1_m: round_sig(profile.edge_offset_d1, precision),
        }),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plan serializes");
    s.push('\n');
    s
}

fn parse_field(record: &csv::StringRecord, i: usize, line: u64) -> Result<Option<f64>, CliError> {
    let raw = record.get(i).unwrap_or("").trim();
    if raw.is_empty() {
        return Ok(None);
    }
    raw.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .map(Some)
        .ok_or_else(|| CliError::PlanFile(format!("line {line}: `{raw}` is not a number")))
}

pub fn parse_plan_csv(text: &str) -> Result<Vec<PlanRow>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CliError::PlanFile(e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != PLAN_COLUMNS {
        return Err(CliError::PlanFile(format!(
            "expected header `{}`, found `{}`",
            PLAN_COLUMNS.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::PlanFile(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let x_m = parse_field(&record, 0, line)?
            .ok_or_else(|| CliError::PlanFile(format!("line {line}: missing x_m")))?;
        let overlap_prev = parse_field(&record, 1, line)?;
        let width_m = parse_field(&record, 2, line)?
            .ok_or_else(|| CliError::PlanFile(format!("line {line}: missing width_m")))?;
        rows.push(PlanRow {
            x_m,
            overlap_prev,
            width_m,
        });
    }
    Ok(rows)
}

pub fn parse_plan_json(text: &str) -> Result<Vec<PlanRow>, CliError> {
    let doc: PlanDocument =
        serde_json::from_str(text).map_err(|e| CliError::PlanFile(e.to_string()))?;
    Ok(doc.placements)
}

/// Reads a plan in either format; JSON is recognized by a leading `{`.
pub fn parse_plan(text: &str) -> Result<Vec<PlanRow>, CliError> {
    if text.trim_start().starts_with('{') {
        parse_plan_json(text)
    } else {
        parse_plan_csv(text)
    }
}

/// Geometry for a 3D schematic of the survey: sea surface, seabed plane and
/// one segment per line at the surface. Axes: x east from the west boundary,
/// y north from the south boundary, z up from the sea surface.
pub fn plot_data_json(
    plan: &SurveyPlan,
    region: &SurveyRegion,
    profile: &DepthProfile,
    precision: usize,
) -> String {
    let r = |v: f64| round_sig(v, precision);
    let (w, l) = (region.width_ew(), region.length_ns());
    let east_depth = profile.west_edge_depth - w * profile.slope_alpha_deg.to_radians().tan();
    let west_z = r(-profile.west_edge_depth);
    let east_z = r(-east_depth);
    let lines: Vec<Value> = plan
        .placements
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let x = r(p.x);
            json!({
                "index": i + 1,
                "x_m": x,
                "start": [x, 0.0, 0.0],
                "end": [x, r(l), 0.0],
            })
        })
        .collect();
    let doc = json!({
        "units": "m",
        "axes": {
            "x": "east from west boundary",
            "y": "north from south boundary",
            "z": "up from sea surface",
        },
        "sea_surface": [[0.0, 0.0, 0.0], [r(w), 0.0, 0.0], [r(w), r(l), 0.0], [0.0, r(l), 0.0]],
        "seabed": [[0.0, 0.0, west_z], [r(w), 0.0, east_z], [r(w), r(l), east_z], [0.0, r(l), west_z]],
        "survey_lines": lines,
        "summary": {
            "line_count": plan.line_count,
            "total_track_nm": r(plan.total_track_length),
            "line_length_nm": r(m_to_nm(plan.line_length)),
        },
    });
    pretty(&doc)
}
