//! Run configuration and the curve-family registry.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use torsion_core::{
    families, koenigs, CurveSampler, HeightFunction, MetricSignature, DEFAULT_SAMPLES,
};

use crate::error::{AtStage, GalleryError, Result, Stage};

/// Parameter name and optional default.
pub type ParamDecl = (&'static str, Option<f64>);

#[derive(Debug, Clone, Copy)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub params: &'static [ParamDecl],
    pub about: &'static str,
}

pub const FAMILIES: &[FamilyInfo] = &[
    FamilyInfo {
        name: "circle",
        params: &[("radius", Some(1.0))],
        about: "circle about the origin",
    },
    FamilyInfo {
        name: "ellipse",
        params: &[("a", Some(2.0)), ("b", Some(1.0))],
        about: "(a cos t, b sin t)",
    },
    FamilyInfo {
        name: "trochoid",
        params: &[("a", None), ("b", None), ("c", None)],
        about: "hypotrochoid (b < 0) or epitrochoid (b > 0); (a+b)/b must be an integer",
    },
    FamilyInfo {
        name: "helix",
        params: &[("a", Some(1.0)), ("b", Some(1.0))],
        about: "one turn of (a cos t, a sin t, b t), an open arc",
    },
    FamilyInfo {
        name: "torus-coil",
        params: &[("R", Some(2.0)), ("rho", Some(0.5)), ("m", Some(7.0))],
        about: "coil wound m times around a torus; illustrative only",
    },
    FamilyInfo {
        name: "beta",
        params: &[("r", Some(1.0))],
        about: "three-fold symmetric plane curve of zero signed area, scaled by r in (0, 1]",
    },
    FamilyInfo {
        name: "figure-eight",
        params: &[],
        about: "(sin t, sin t cos t)",
    },
];

pub const HEIGHTS: &[FamilyInfo] = &[
    FamilyInfo {
        name: "zero",
        params: &[],
        about: "h = 0",
    },
    FamilyInfo {
        name: "sine",
        params: &[("amp", None), ("freq", None)],
        about: "h = amp sin(freq t)",
    },
];

pub fn family(name: &str) -> Option<&'static FamilyInfo> {
    FAMILIES.iter().find(|f| f.name == name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Euclidean,
    Lorentz,
}

impl From<Metric> for MetricSignature {
    fn from(m: Metric) -> Self {
        match m {
            Metric::Euclidean => MetricSignature::Euclidean3,
            Metric::Lorentz => MetricSignature::Lorentz21,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeightSpec {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub height: Option<HeightSpec>,
    #[serde(default)]
    pub metric: Metric,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_winding")]
    pub winding: usize,
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_winding() -> usize {
    1
}

impl CurveSpec {
    pub fn new(family: &str) -> Self {
        CurveSpec {
            family: family.to_string(),
            params: BTreeMap::new(),
            height: None,
            metric: Metric::Euclidean,
            samples: DEFAULT_SAMPLES,
            winding: 1,
        }
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn with_sine_height(mut self, amp: f64, freq: f64) -> Self {
        let params = [("amp".to_string(), amp), ("freq".to_string(), freq)].into();
        self.height = Some(HeightSpec {
            kind: "sine".to_string(),
            params,
        });
        self
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| GalleryError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let spec: CurveSpec = serde_json::from_str(&text).map_err(|source| GalleryError::Json {
            path: path.to_path_buf(),
            source,
        })?;
        spec.validated()
    }

    /// Checks the family, fills parameter defaults and rejects unknown or
    /// missing parameters.
    pub fn validated(mut self) -> Result<Self> {
        let info = family(&self.family)
            .ok_or_else(|| GalleryError::Spec(format!("unknown family `{}`", self.family)))?;
        self.params = complete(info, &self.params)?;
        if let Some(h) = &mut self.height {
            let hinfo = HEIGHTS
                .iter()
                .find(|f| f.name == h.kind)
                .ok_or_else(|| GalleryError::Spec(format!("unknown height type `{}`", h.kind)))?;
            h.params = complete(hinfo, &h.params)?;
        }
        if self.samples < 256 || !self.samples.is_power_of_two() {
            return Err(GalleryError::Spec(format!(
                "samples must be a power of two >= 256, got {}",
                self.samples
            )));
        }
        if self.winding == 0 {
            return Err(GalleryError::Spec("winding must be positive".into()));
        }
        if self.params.values().any(|v| !v.is_finite()) {
            return Err(GalleryError::Spec("parameters must be finite".into()));
        }
        Ok(self)
    }

    fn param(&self, name: &str) -> f64 {
        self.params[name]
    }

    /// The family curve on `samples` grid points.
    pub fn curve(&self) -> Result<CurveSampler> {
        let n = self.samples;
        let p = |k| self.param(k);
        let c = match self.family.as_str() {
            "circle" => families::circle(p("radius"), n),
            "ellipse" => families::ellipse(p("a"), p("b"), n),
            "trochoid" => families::trochoid(p("a"), p("b"), p("c"), n),
            "helix" => families::helix(p("a"), p("b"), n),
            "torus-coil" => families::torus_coil(p("R"), p("rho"), p("m"), n),
            "beta" => koenigs::beta_curve(p("r"), n).map(|b| b.curve().clone()),
            "figure-eight" => families::figure_eight(n),
            other => return Err(GalleryError::Spec(format!("unknown family `{other}`"))),
        };
        c.at(Stage::GeometryCore)
    }

    /// `(amp, freq)` of the height, or `None` for a flat curve.
    pub fn sine_height(&self) -> Option<(f64, f64)> {
        let h = self.height.as_ref()?;
        (h.kind == "sine").then(|| (h.params["amp"], h.params["freq"]))
    }

    /// The family curve lifted by its height in the curve parameter.
    pub fn lifted_curve(&self) -> Result<CurveSampler> {
        let c = self.curve()?;
        match self.sine_height() {
            Some((amp, freq)) => families::sine_graph(&c, amp, freq).at(Stage::GeometryCore),
            None => Ok(c),
        }
    }

    /// Height sampled on the tangent-angle grid over `[0, 2πk)`.
    pub fn height_function(&self) -> Result<HeightFunction> {
        let (amp, freq) = self.sine_height().unwrap_or((0.0, 0.0));
        HeightFunction::from_fn(self.winding, self.samples, |t| amp * (freq * t).sin())
            .at(Stage::GraphCurve)
    }

    /// Whether `freq·2πk` is a whole number of turns, so the height closes.
    pub fn height_closes(&self) -> bool {
        self.sine_height().is_none_or(|(_, freq)| {
            let cycles = freq * self.winding as f64;
            (cycles - cycles.round()).abs() < 1e-9 * (1.0 + cycles.abs())
        })
    }
}

fn complete(info: &FamilyInfo, given: &BTreeMap<String, f64>) -> Result<BTreeMap<String, f64>> {
    if let Some(k) = given
        .keys()
        .find(|k| !info.params.iter().any(|(n, _)| n == k))
    {
        return Err(GalleryError::Spec(format!(
            "`{}` has no parameter `{k}`",
            info.name
        )));
    }
    let mut out = BTreeMap::new();
    for &(name, default) in info.params {
        let v = given.get(name).copied().or(default).ok_or_else(|| {
            GalleryError::Spec(format!("`{}` needs parameter `{name}`", info.name))
        })?;
        out.insert(name.to_string(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_and_full_specs() {
        let s: CurveSpec = serde_json::from_str(r#"{"family":"circle"}"#).unwrap();
        let s = s.validated().unwrap();
        assert_eq!(s.params["radius"], 1.0);
        assert_eq!(s.samples, 2048);
        let full = r#"{"family":"ellipse","params":{"a":3,"b":1},
            "height":{"type":"sine","params":{"amp":0.2,"freq":0.3333333333333333}},
            "metric":"lorentz","samples":1024,"winding":3}"#;
        let s: CurveSpec = serde_json::from_str(full).unwrap();
        let s = s.validated().unwrap();
        assert_eq!(s.metric, Metric::Lorentz);
        assert!(s.height_closes());
    }

    #[test]
    fn rejects_bad_specs() {
        let bad = |json: &str| serde_json::from_str::<CurveSpec>(json).map(|s| s.validated());
        assert!(matches!(
            bad(r#"{"family":"spiral"}"#),
            Ok(Err(GalleryError::Spec(_)))
        ));
        assert!(matches!(
            bad(r#"{"family":"trochoid","params":{"a":1}}"#),
            Ok(Err(_))
        ));
        assert!(matches!(
            bad(r#"{"family":"circle","params":{"r":1}}"#),
            Ok(Err(_))
        ));
        assert!(matches!(
            bad(r#"{"family":"circle","samples":1000}"#),
            Ok(Err(_))
        ));
        assert!(matches!(
            bad(r#"{"family":"circle","samples":128}"#),
            Ok(Err(_))
        ));
        assert!(bad(r#"{"family":"circle","colour":"red"}"#).is_err());
    }

    #[test]
    fn every_family_builds() {
        for f in FAMILIES {
            let mut spec = CurveSpec::new(f.name);
            if f.name == "trochoid" {
                spec = spec
                    .with_param("a", 1.0)
                    .with_param("b", 0.2)
                    .with_param("c", 0.26);
            }
            spec.validated().unwrap().curve().unwrap();
        }
    }
}
