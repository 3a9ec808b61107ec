//! Run reports and their CSV and JSON encodings.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use torsion_core::{FrenetData, Vec3};

use crate::error::{GalleryError, Result};

pub const CSV_HEADER: &str = "t,x,y,z,kappa,tau";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleRow {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub kappa: f64,
    /// `None` where the torsion is undefined.
    pub tau: Option<f64>,
}

/// Every key is always present; quantities a run does not produce are null.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct Summary {
    pub identity_value: Option<f64>,
    pub verdict: Option<String>,
    pub sign_changes: Option<usize>,
    pub closure_defect: Option<[f64; 3]>,
    pub ode_residual: Option<f64>,
    pub min_f: Option<f64>,
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub spec: serde_json::Value,
    pub samples: Vec<SampleRow>,
    pub summary: Summary,
}

impl RunReport {
    /// Rows from a Frenet apparatus, with `tau` overridden where given.
    pub fn rows(f: &FrenetData, tau: Option<&[f64]>) -> Vec<SampleRow> {
        (0..f.len())
            .map(|j| {
                let p = f.points[j];
                SampleRow {
                    t: f.params[j],
                    x: p.x,
                    y: p.y,
                    z: p.z,
                    kappa: f.kappa[j],
                    tau: tau.map_or(f.tau[j], |t| Some(t[j])),
                }
            })
            .collect()
    }

    pub fn closure(v: Vec3) -> Option<[f64; 3]> {
        Some(v.to_array())
    }

    /// Whether every table entry is finite (undefined torsion aside).
    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|r| {
            [r.t, r.x, r.y, r.z, r.kappa].iter().all(|v| v.is_finite())
                && r.tau.is_none_or(f64::is_finite)
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.samples.len() * 120);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.samples {
            let tau = r.tau.map_or_else(|| "NA".to_string(), format_g17);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                format_g17(r.t),
                format_g17(r.x),
                format_g17(r.y),
                format_g17(r.z),
                format_g17(r.kappa),
                tau
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Writes the report to `dest`, or to standard output when `dest` is `None`.
pub fn emit(report: &RunReport, format: Format, dest: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    match dest {
        Some(path) => std::fs::write(path, text).map_err(|source| GalleryError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| GalleryError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

/// C's `%.17g`: 17 significant digits, trailing zeros dropped, exponent
/// form outside `[1e-4, 1e17)`. Negative zero prints as `0`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
