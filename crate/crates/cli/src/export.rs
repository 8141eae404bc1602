//! Column tables written as CSV or as a JSON object of column arrays.

use std::fmt::Write as _;

use internal_waves::flowfield::{FlowSample, SurfaceSample};

use crate::config::OutputFormat;

pub const FLOW_COLUMNS: [&str; 14] = [
    "t", "q", "r", "s", "x", "y", "z", "u", "v", "w", "p", "w1", "w2", "w3",
];
pub const PROFILE_COLUMNS: [&str; 4] = ["q", "x", "y", "z"];

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn json_number(v: f64) -> String {
    if v.is_finite() {
        format_float(v)
    } else {
        "null".to_string()
    }
}

impl Table {
    pub fn flow(samples: &[FlowSample]) -> Self {
        let rows = samples
            .iter()
            .map(|s| {
                let (x, u, om) = (s.position, s.velocity, s.vorticity);
                vec![
                    s.t, s.label.q, s.label.r, s.label.s, x.x, x.y, x.z, u.x, u.y, u.z, s.pressure,
                    om.x, om.y, om.z,
                ]
            })
            .collect();
        Self {
            columns: FLOW_COLUMNS.to_vec(),
            rows,
        }
    }

    pub fn profile(samples: &[SurfaceSample]) -> Self {
        let rows = samples
            .iter()
            .map(|s| vec![s.q, s.point.x, s.point.y, s.point.z])
            .collect();
        Self {
            columns: PROFILE_COLUMNS.to_vec(),
            rows,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|&v| format_float(v)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        for (j, name) in self.columns.iter().enumerate() {
            let values: Vec<String> = self.rows.iter().map(|row| json_number(row[j])).collect();
            let sep = if j + 1 == self.columns.len() { "" } else { "," };
            let _ = writeln!(out, "  \"{name}\": [{}]{sep}", values.join(", "));
        }
        out.push_str("}\n");
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}
