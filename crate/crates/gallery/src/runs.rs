//! End-to-end pipelines behind each CLI command.

use serde_json::json;
use torsion_core::families;
use torsion_core::kernel::{weighted_identity_with, PLANAR_TOL};
use torsion_core::koenigs::{beta_curve, vertical_lift};
use torsion_core::{
    base_from_plane_curve, frenet_apparatus, graph_torsion, koenigs_curve, lift, sign_change_count,
    solve_kernel, BaseCurve, CurveSampler, FrenetData, GraphCurve, MetricSignature, Verdict,
};

use crate::error::{AtStage, GalleryError, Result, Stage};
use crate::report::{RunReport, Summary};
use crate::spec::CurveSpec;

fn echo(spec: &CurveSpec) -> serde_json::Value {
    serde_json::to_value(spec).expect("specs serialize")
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Planar => "planar",
        Verdict::MixedSign => "mixed-sign",
        Verdict::OneSigned => "one-signed",
    }
}

fn tau_summary(f: &FrenetData) -> Summary {
    Summary {
        tau_min: f.tau_min(),
        tau_max: f.tau_max(),
        sign_changes: f.tau_samples().map(|t| sign_change_count(&t)),
        ..Summary::default()
    }
}

/// Frenet apparatus of the family curve, lifted by its height if any.
pub fn run_frenet(spec: &CurveSpec) -> Result<RunReport> {
    let c = spec.lifted_curve()?;
    let f = frenet_apparatus(&c, spec.metric.into()).at(Stage::GeometryCore)?;
    Ok(RunReport {
        spec: echo(spec),
        samples: RunReport::rows(&f, None),
        summary: tau_summary(&f),
    })
}

fn base_of(spec: &CurveSpec) -> Result<BaseCurve> {
    base_from_plane_curve(&spec.curve()?).at(Stage::GraphCurve)
}

fn graph_of(spec: &CurveSpec) -> Result<GraphCurve> {
    if !spec.height_closes() {
        return Err(GalleryError::Spec(format!(
            "height frequency does not close over {} turn(s)",
            spec.winding
        )));
    }
    GraphCurve::new(base_of(spec)?, spec.height_function()?, spec.metric.into())
        .at(Stage::GraphCurve)
}

/// Closed-form graph torsion over the tangent-angle grid, tabulated along
/// the lift.
pub fn run_graph_torsion(spec: &CurveSpec) -> Result<RunReport> {
    let g = graph_of(spec)?;
    let tau = graph_torsion(&g).at(Stage::GraphCurve)?;
    let c = lift(&g).at(Stage::GraphCurve)?;
    let f = frenet_apparatus(&c, g.metric).at(Stage::GeometryCore)?;
    let summary = Summary {
        tau_min: Some(tau.min()),
        tau_max: Some(tau.max()),
        sign_changes: Some(sign_change_count(&tau)),
        ..Summary::default()
    };
    Ok(RunReport {
        spec: echo(spec),
        samples: RunReport::rows(&f, Some(tau.values())),
        summary,
    })
}

/// Base curve with `κ₀` in the table and the kernel diagnostics in the
/// summary.
pub fn run_kernel(spec: &CurveSpec) -> Result<RunReport> {
    let base = base_of(spec)?;
    let sol = solve_kernel(&base).at(Stage::KernelTheorem)?;
    let h = std::f64::consts::TAU / base.len() as f64;
    let samples = base
        .gamma0()
        .iter()
        .zip(base.kappa0().values())
        .enumerate()
        .map(|(j, (p, &k))| crate::report::SampleRow {
            t: j as f64 * h,
            x: p.x,
            y: p.y,
            z: 0.0,
            kappa: k,
            tau: Some(0.0),
        })
        .collect();
    let summary = Summary {
        ode_residual: Some(sol.ode_residual),
        min_f: Some(sol.min_f),
        ..Summary::default()
    };
    Ok(RunReport {
        spec: echo(spec),
        samples,
        summary,
    })
}

/// Base, kernel, graph torsion, weighted identity and verdict.
pub fn run_verify(spec: &CurveSpec, planar_tol: Option<f64>) -> Result<RunReport> {
    let g = graph_of(spec)?;
    let sol = solve_kernel(&g.base).at(Stage::KernelTheorem)?;
    let tau = graph_torsion(&g).at(Stage::GraphCurve)?;
    let report = weighted_identity_with(&g, &sol, planar_tol.unwrap_or(PLANAR_TOL))
        .at(Stage::KernelTheorem)?;
    let c = lift(&g).at(Stage::GraphCurve)?;
    let f = frenet_apparatus(&c, g.metric).at(Stage::GeometryCore)?;
    let summary = Summary {
        identity_value: Some(report.identity_value),
        verdict: Some(verdict_name(report.verdict).to_string()),
        sign_changes: Some(report.sign_changes),
        closure_defect: None,
        ode_residual: Some(sol.ode_residual),
        min_f: Some(sol.min_f),
        tau_min: Some(report.tau_min),
        tau_max: Some(report.tau_max),
    };
    Ok(RunReport {
        spec: echo(spec),
        samples: RunReport::rows(&f, Some(tau.values())),
        summary,
    })
}

/// Constant-torsion curve whose binormal is the vertical lift of `β_r`.
pub fn run_koenigs(r: f64, tau_target: Option<f64>, samples: usize) -> Result<RunReport> {
    let spec = CurveSpec {
        samples,
        ..CurveSpec::new("beta").with_param("r", r)
    }
    .validated()?;
    let beta = beta_curve(r, samples).at(Stage::ConstantTorsion)?;
    let b = vertical_lift(&beta).at(Stage::ConstantTorsion)?;
    let k = koenigs_curve(&b, tau_target.unwrap_or(r)).at(Stage::ConstantTorsion)?;
    let closed = k.closure_defect.norm() < 1e-6;
    let mut summary = tau_summary(&k.frenet);
    summary.closure_defect = RunReport::closure(k.closure_defect);
    summary.verdict = Some(if closed { "closed" } else { "open" }.to_string());
    Ok(RunReport {
        spec: echo(&spec),
        samples: RunReport::rows(&k.frenet, None),
        summary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Counterexample {
    /// Hypotrochoid `a = 1, b = −1/3, c = 1/6 + 0.05` under `h = ¼ sin 3t`.
    HypotrochoidGraph,
    /// Epitrochoid `a = 1, b = 1/5, c = 1.3 b` under `h = sin 5t`.
    EpitrochoidGraph,
}

impl Counterexample {
    pub fn name(self) -> &'static str {
        match self {
            Counterexample::HypotrochoidGraph => "hypotrochoid_graph",
            Counterexample::EpitrochoidGraph => "epitrochoid_graph",
        }
    }

    /// `(a, b, c, amp, freq)`.
    pub fn parameters(self) -> (f64, f64, f64, f64, f64) {
        match self {
            Counterexample::HypotrochoidGraph => (1.0, -1.0 / 3.0, 1.0 / 6.0 + 0.05, 0.25, 3.0),
            Counterexample::EpitrochoidGraph => (1.0, 0.2, 1.3 * 0.2, 1.0, 5.0),
        }
    }

    pub fn base(self, samples: usize) -> Result<CurveSampler> {
        let (a, b, c, _, _) = self.parameters();
        families::trochoid(a, b, c, samples).at(Stage::GeometryCore)
    }

    /// The lifted curve, composed analytically from the trochoid jets.
    pub fn curve(self, samples: usize) -> Result<CurveSampler> {
        let (_, _, _, amp, freq) = self.parameters();
        families::sine_graph(&self.base(samples)?, amp, freq).at(Stage::GeometryCore)
    }
}

/// Margins of a counterexample run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margins {
    pub kappa_min: f64,
    pub tau_min: f64,
}

impl Margins {
    pub fn holds(self) -> bool {
        self.kappa_min > 0.0 && self.tau_min > 0.0
    }
}

pub fn counterexample_margins(which: Counterexample, samples: usize) -> Result<Margins> {
    let f = frenet_apparatus(&which.curve(samples)?, MetricSignature::Euclidean3)
        .at(Stage::GeometryCore)?;
    Ok(margins_of(&f))
}

fn margins_of(f: &FrenetData) -> Margins {
    // an undefined torsion sample fails the positivity claim
    let tau_min = if f.all_defined() {
        f.tau_min().unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    Margins {
        kappa_min: f.kappa_min(),
        tau_min,
    }
}

/// Euclidean Frenet run on a counterexample; the verdict records whether
/// curvature and torsion are both positive everywhere.
pub fn run_counterexample(which: Counterexample, samples: usize) -> Result<RunReport> {
    let f = frenet_apparatus(&which.curve(samples)?, MetricSignature::Euclidean3)
        .at(Stage::GeometryCore)?;
    let m = margins_of(&f);
    let (a, b, c, amp, freq) = which.parameters();
    let spec = json!({
        "counterexample": which.name(),
        "family": "trochoid",
        "params": { "a": a, "b": b, "c": c },
        "height": { "type": "sine", "params": { "amp": amp, "freq": freq } },
        "metric": "euclidean",
        "samples": samples,
        "winding": 1,
    });
    let mut summary = tau_summary(&f);
    summary.verdict = Some(
        if m.holds() {
            "positive-torsion"
        } else {
            "claim-not-reproduced"
        }
        .to_string(),
    );
    Ok(RunReport {
        spec,
        samples: RunReport::rows(&f, None),
        summary,
    })
}
