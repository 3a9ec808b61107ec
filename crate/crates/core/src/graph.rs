//! Convex base curves in tangent-angle parametrization and graphs over them.
//!
//! A positively curved simple closed plane curve `γ₀` is encoded by its
//! curvature `κ₀(θ)` as a function of the tangent direction `θ ∈ [0, 2π)`.
//! Then `dγ₀/dθ = (cos θ, sin θ)/κ₀` and the curve closes exactly when
//!
//! ```text
//! ∫ cos θ / κ₀ dθ = 0,    ∫ sin θ / κ₀ dθ = 0.
//! ```
//!
//! A graph `γ = (γ₀; h)` with height `h(θ)` of period `2πk` wraps `k` times
//! around the cylinder over `γ₀`. With `u = κ₀h′` its torsion is
//!
//! ```text
//! τ = κ₀ (u″ + u) / (u′² + u² ± 1)
//! ```
//!
//! with `+1` in Euclidean space and `−1` in Lorentzian space.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::curve::{CurveSampler, Jet};
use crate::error::{Error, Result};
use crate::polyline;
use crate::spectral::PeriodicSamples;
use crate::vector::{metric_dot, MetricSignature, Vec3};

const TWO_PI: f64 = 2.0 * PI;

/// Default absolute tolerance on the closure residuals (curve scale 1).
pub const CLOSURE_TOL: f64 = 1e-8;

/// Relative out-of-plane tolerance used when a plane curve is expected.
const PLANAR_TOL: f64 = 1e-10;

/// Positively curved simple closed plane curve, sampled on a uniform
/// tangent-angle grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseCurve {
    kappa0: PeriodicSamples,
    closure_residual: (f64, f64),
    gamma0: Vec<Vec3>,
}

impl BaseCurve {
    /// Curvature `κ₀(θ_j)`.
    pub fn kappa0(&self) -> &PeriodicSamples {
        &self.kappa0
    }

    /// Radius of curvature `p = 1/κ₀`.
    pub fn radius_of_curvature(&self) -> PeriodicSamples {
        self.kappa0.map(|k| 1.0 / k).expect("kappa0 is positive")
    }

    /// `(∫ cos θ/κ₀, ∫ sin θ/κ₀)`.
    pub fn closure_residual(&self) -> (f64, f64) {
        self.closure_residual
    }

    /// Points `γ₀(θ_j)` in the z = 0 plane.
    pub fn gamma0(&self) -> &[Vec3] {
        &self.gamma0
    }

    pub fn len(&self) -> usize {
        self.kappa0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappa0.is_empty()
    }

    /// The base curve as a closed sampled curve in its θ-parametrization.
    pub fn curve(&self) -> Result<CurveSampler> {
        CurveSampler::sampled(self.gamma0.clone(), TWO_PI)
    }
}

fn closure_residuals(p: &PeriodicSamples) -> (f64, f64) {
    let h = p.spacing();
    let (mut rc, mut rs) = (0.0, 0.0);
    for (j, &v) in p.values().iter().enumerate() {
        let t = j as f64 * h;
        rc += v * libm::cos(t);
        rs += v * libm::sin(t);
    }
    (rc * h, rs * h)
}

fn check_two_pi(f: &PeriodicSamples) -> Result<()> {
    if (f.period() - TWO_PI).abs() > 1e-12 {
        return Err(Error::InvalidPeriod(f.period()));
    }
    Ok(())
}

pub fn base_from_kappa(kappa0: PeriodicSamples) -> Result<BaseCurve> {
    base_from_kappa_with(kappa0, CLOSURE_TOL)
}

/// Reconstructs `γ₀` from `κ₀(θ)` by spectral antidifferentiation of
/// `(cos θ, sin θ)/κ₀`. The mean modes of the integrand are the closure
/// residuals; the returned points form the zero-mean periodic part.
pub fn base_from_kappa_with(kappa0: PeriodicSamples, tol: f64) -> Result<BaseCurve> {
    check_two_pi(&kappa0)?;
    if let Some((index, &value)) = kappa0.values().iter().enumerate().find(|(_, &k)| k <= 0.0) {
        return Err(Error::NonPositiveCurvature { index, value });
    }
    let p = kappa0.map(|k| 1.0 / k)?;
    let (r_cos, r_sin) = closure_residuals(&p);
    if r_cos.abs() > tol || r_sin.abs() > tol {
        return Err(Error::NotClosed { r_cos, r_sin });
    }
    let vx = PeriodicSamples::new(
        p.params()
            .zip(p.values())
            .map(|(t, v)| v * libm::cos(t))
            .collect(),
        TWO_PI,
    )?;
    let vy = PeriodicSamples::new(
        p.params()
            .zip(p.values())
            .map(|(t, v)| v * libm::sin(t))
            .collect(),
        TWO_PI,
    )?;
    let (x, _) = vx.antiderivative()?;
    let (y, _) = vy.antiderivative()?;
    let gamma0 = x
        .values()
        .iter()
        .zip(y.values())
        .map(|(&x, &y)| Vec3::new(x, y, 0.0))
        .collect();
    Ok(BaseCurve {
        kappa0,
        closure_residual: (r_cos, r_sin),
        gamma0,
    })
}

/// Orientation-normalized view of a plane curve's jets.
struct Oriented<'a> {
    curve: &'a CurveSampler,
    reversed: bool,
}

impl Oriented<'_> {
    fn jet(&self, t: f64) -> Jet {
        if self.reversed {
            let j = self.curve.jet_at(self.curve.period() - t);
            Jet {
                pos: j.pos,
                d1: -j.d1,
                d2: j.d2,
                d3: -j.d3,
            }
        } else {
            self.curve.jet_at(t)
        }
    }
}

#[inline]
fn signed_curvature(j: &Jet) -> f64 {
    let s2 = j.d1.x * j.d1.x + j.d1.y * j.d1.y;
    (j.d1.x * j.d2.y - j.d1.y * j.d2.x) / (s2 * libm::sqrt(s2))
}

#[inline]
fn wrap_angle(a: f64) -> f64 {
    let w = a - TWO_PI * libm::round(a / TWO_PI);
    if w <= -PI {
        w + TWO_PI
    } else {
        w
    }
}

/// Tangent-angle reparametrization of a closed convex plane curve.
///
/// Checks, in order: planarity, constant sign of the curvature
/// (reversing orientation if it is negative throughout), simplicity of the
/// sample polygon, and total turning `2π`. Then every grid angle `θ_j` is
/// located on the unwrapped tangent angle by safeguarded Newton iteration
/// inside the bracketing sample interval, and `κ₀` and `γ₀` are evaluated
/// there.
pub fn base_from_plane_curve(c: &CurveSampler) -> Result<BaseCurve> {
    if !c.is_closed() {
        return Err(Error::OpenCurve);
    }
    let n = c.samples();
    let jets = c.jets()?;

    let extent = jets
        .iter()
        .fold(0.0f64, |m, j| m.max(j.pos.x.abs()).max(j.pos.y.abs()));
    let deviation = jets
        .iter()
        .fold(0.0f64, |m, j| m.max(j.pos.z.abs()).max(j.d1.z.abs()));
    if deviation > PLANAR_TOL * extent.max(1.0) {
        return Err(Error::NotPlanar { deviation });
    }
    if jets.iter().any(|j| j.d1.x == 0.0 && j.d1.y == 0.0) {
        return Err(Error::DegenerateCurve("velocity vanishes"));
    }

    let curv: Vec<f64> = jets.iter().map(signed_curvature).collect();
    let reversed = if curv.iter().all(|&k| k > 0.0) {
        false
    } else if curv.iter().all(|&k| k < 0.0) {
        true
    } else {
        return Err(Error::NonConvex("curvature changes sign"));
    };

    let pts: Vec<Vec3> = jets.iter().map(|j| j.pos).collect();
    if let Some((first, second)) = polyline::first_crossing(&pts) {
        return Err(Error::NotSimple { first, second });
    }

    // Unwrapped tangent angle along the oriented grid, with φ_N = φ_0 + turning.
    let view = Oriented { curve: c, reversed };
    let period = c.period();
    let grid: Vec<f64> = (0..=n).map(|j| j as f64 * period / n as f64).collect();
    let angle = |j: &Jet| libm::atan2(j.d1.y, j.d1.x);
    let mut phi = Vec::with_capacity(n + 1);
    let oriented_jet = |k: usize| -> Jet {
        if reversed {
            let j = jets[(n - k % n) % n];
            Jet {
                pos: j.pos,
                d1: -j.d1,
                d2: j.d2,
                d3: -j.d3,
            }
        } else {
            jets[k % n]
        }
    };
    phi.push(angle(&oriented_jet(0)));
    for k in 1..=n {
        let prev = phi[k - 1];
        phi.push(prev + wrap_angle(angle(&oriented_jet(k)) - prev));
    }
    let turning = phi[n] - phi[0];
    if (turning - TWO_PI).abs() > 1e-6 {
        return Err(Error::NonConvex("total turning is not 2π"));
    }
    // Make the endpoint exactly one turn ahead so targets bracket cleanly.
    phi[n] = phi[0] + TWO_PI;

    let mut kappa0 = Vec::with_capacity(n);
    let mut gamma0 = Vec::with_capacity(n);
    let phi0 = phi[0];
    for i in 0..n {
        let theta = TWO_PI * i as f64 / n as f64;
        let mut target = theta + TWO_PI * libm::ceil((phi0 - theta) / TWO_PI);
        if target >= phi0 + TWO_PI {
            target -= TWO_PI;
        }
        // phi[k] <= target < phi[k+1]
        let k = phi
            .partition_point(|&p| p <= target)
            .saturating_sub(1)
            .min(n - 1);
        let t = invert_angle(&view, phi[k], target, grid[k], grid[k + 1]);
        let j = view.jet(t);
        kappa0.push(signed_curvature(&j));
        gamma0.push(Vec3::new(j.pos.x, j.pos.y, 0.0));
    }
    let kappa0 = PeriodicSamples::new(kappa0, TWO_PI)?;
    if let Some((index, &value)) = kappa0.values().iter().enumerate().find(|(_, &k)| k <= 0.0) {
        return Err(Error::NonPositiveCurvature { index, value });
    }
    let p = kappa0.map(|k| 1.0 / k)?;
    let (r_cos, r_sin) = closure_residuals(&p);
    let scale = p.max();
    if r_cos.abs() > CLOSURE_TOL * scale.max(1.0) || r_sin.abs() > CLOSURE_TOL * scale.max(1.0) {
        return Err(Error::NotClosed { r_cos, r_sin });
    }
    Ok(BaseCurve {
        kappa0,
        closure_residual: (r_cos, r_sin),
        gamma0,
    })
}

/// Solves `φ(t) = target` on `[lo, hi]` where `φ` is the tangent angle
/// unwrapped continuously from `phi_lo = φ(lo)`.
fn invert_angle(view: &Oriented<'_>, phi_lo: f64, target: f64, lo: f64, hi: f64) -> f64 {
    let unwrapped = |j: &Jet| phi_lo + wrap_angle(libm::atan2(j.d1.y, j.d1.x) - phi_lo);
    let (mut a, mut b) = (lo, hi);
    let mut t = lo + 0.5 * (hi - lo);
    for _ in 0..100 {
        let j = view.jet(t);
        let residual = unwrapped(&j) - target;
        if residual == 0.0 {
            return t;
        }
        if residual < 0.0 {
            a = t;
        } else {
            b = t;
        }
        let s2 = j.d1.x * j.d1.x + j.d1.y * j.d1.y;
        let slope = (j.d1.x * j.d2.y - j.d1.y * j.d2.x) / s2;
        let newton = t - residual / slope;
        let next = if slope > 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        if (next - t).abs() <= 1e-15 * (1.0 + t.abs()) || b - a <= 1e-15 * (1.0 + t.abs()) {
            return next;
        }
        t = next;
    }
    t
}

/// Height over the base curve, periodic with period `2πk`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightFunction {
    h: PeriodicSamples,
    winding: usize,
}

impl HeightFunction {
    pub fn new(h: PeriodicSamples, winding: usize) -> Result<Self> {
        if winding == 0 {
            return Err(Error::InvalidParameter("winding number must be positive"));
        }
        if (h.period() - TWO_PI * winding as f64).abs() > 1e-12 * h.period() {
            return Err(Error::InvalidPeriod(h.period()));
        }
        if !h.len().is_multiple_of(winding) {
            return Err(Error::GridMismatch {
                expected: winding,
                got: h.len(),
            });
        }
        Ok(HeightFunction { h, winding })
    }

    /// Samples `f` on `[0, 2πk)` with `base_samples` points per turn.
    pub fn from_fn(winding: usize, base_samples: usize, f: impl FnMut(f64) -> f64) -> Result<Self> {
        if winding == 0 {
            return Err(Error::InvalidParameter("winding number must be positive"));
        }
        let h = PeriodicSamples::from_fn(base_samples * winding, TWO_PI * winding as f64, f)?;
        Self::new(h, winding)
    }

    pub fn zero(winding: usize, base_samples: usize) -> Result<Self> {
        Self::from_fn(winding, base_samples, |_| 0.0)
    }

    pub fn samples(&self) -> &PeriodicSamples {
        &self.h
    }

    pub fn winding(&self) -> usize {
        self.winding
    }
}

/// Graph of a height function over a base curve.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphCurve {
    pub base: BaseCurve,
    pub height: HeightFunction,
    pub metric: MetricSignature,
}

impl GraphCurve {
    /// The height grid must have `k` times the base grid size.
    pub fn new(base: BaseCurve, height: HeightFunction, metric: MetricSignature) -> Result<Self> {
        let expected = base.len() * height.winding;
        if height.h.len() != expected {
            return Err(Error::GridMismatch {
                expected,
                got: height.h.len(),
            });
        }
        Ok(GraphCurve {
            base,
            height,
            metric,
        })
    }

    pub fn winding(&self) -> usize {
        self.height.winding
    }

    /// `κ₀` repeated over `[0, 2πk)`.
    pub fn kappa0_tiled(&self) -> PeriodicSamples {
        self.base
            .kappa0
            .tile(self.height.winding)
            .expect("valid tile")
    }

    /// `u = κ₀h′` and its first two derivatives on `[0, 2πk)`.
    fn u_jet(&self) -> Result<[PeriodicSamples; 3]> {
        let k0 = self.kappa0_tiled();
        let u = k0.zip_with(&self.height.h.derivative(1)?, |k, d| k * d)?;
        let u1 = u.derivative(1)?;
        let u2 = u.derivative(2)?;
        Ok([u, u1, u2])
    }

    /// `((κ₀h′)′)² + (κ₀h′)² ± 1`: positive in Euclidean space, negative in
    /// Lorentzian space when the curvature vector is spacelike.
    pub fn bracket(&self) -> Result<PeriodicSamples> {
        let [u, u1, _] = self.u_jet()?;
        let s = self.metric.time_sign();
        u.zip_with(&u1, |u, d| d * d + u * u + s)
    }
}

/// Closed curve `θ ↦ (γ₀(θ mod 2π), h(θ))` on `[0, 2πk)`, differentiated
/// spectrally.
pub fn lift(g: &GraphCurve) -> Result<CurveSampler> {
    let h = g.height.h.values();
    let n = g.base.len();
    let pts = (0..h.len())
        .map(|j| {
            let p = g.base.gamma0[j % n];
            Vec3::new(p.x, p.y, h[j])
        })
        .collect();
    CurveSampler::sampled(pts, g.height.h.period())
}

/// Torsion of the graph from `κ₀` and `h` alone.
pub fn graph_torsion(g: &GraphCurve) -> Result<PeriodicSamples> {
    let [u, u1, u2] = g.u_jet()?;
    let k0 = g.kappa0_tiled();
    let s = g.metric.time_sign();
    let mut tau = Vec::with_capacity(u.len());
    for j in 0..u.len() {
        let (u, u1, u2) = (u.values()[j], u1.values()[j], u2.values()[j]);
        let bracket = u1 * u1 + u * u + s;
        if g.metric == MetricSignature::Lorentz21 && bracket >= 0.0 {
            return Err(Error::NotSpacelike { index: j, bracket });
        }
        tau.push(k0.values()[j] * (u2 + u) / bracket);
    }
    PeriodicSamples::new(tau, u.period())
}

/// Lorentzian causal character of a curve's tangent and curvature vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpacelikeFlags {
    pub tangent: bool,
    pub curvature: bool,
}

impl SpacelikeFlags {
    pub fn both(self) -> bool {
        self.tangent && self.curvature
    }
}

/// Per-sample check that `γ′` and the arc-length curvature vector are
/// spacelike in `ℝ^{2,1}`.
pub fn spacelike_check(c: &CurveSampler) -> Result<Vec<SpacelikeFlags>> {
    let m = MetricSignature::Lorentz21;
    Ok(c.jets()?
        .iter()
        .map(|j| {
            let s2 = metric_dot(j.d1, j.d1, m);
            let tangent = s2 > 0.0;
            // |γ_ss|² = Gram(γ′, γ″)/|γ′|⁶
            let d12 = metric_dot(j.d1, j.d2, m);
            let gram = s2 * metric_dot(j.d2, j.d2, m) - d12 * d12;
            SpacelikeFlags {
                tangent,
                curvature: tangent && gram > 0.0,
            }
        })
        .collect())
}
