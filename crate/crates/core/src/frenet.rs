//! Curvature, torsion and Frenet frames in either metric.
//!
//! Torsion sign convention: `T′ = κN, N′ = −κT + τB, B′ = −τN` in the
//! Euclidean case (opposite to do Carmo). In both metrics
//!
//! ```text
//! B = T × N,    τ = ((γ′ × γ″) · γ‴) / |γ′ × γ″|²
//! ```
//!
//! with the metric's cross and dot. For a Lorentzian curve with spacelike
//! tangent and spacelike curvature vector, `B` is timelike (`|B|² = −1`),
//! the denominator is negative, and the frame obeys
//! `N′ = −κT + τB, B′ = +τN` (arc-length derivatives). The numerator is
//! the same number under both metrics, so the Lorentzian torsion is the
//! Euclidean triple product divided by a negative quantity.

use alloc::vec::Vec;
use nalgebra::{Matrix3, SymmetricEigen};

use crate::curve::CurveSampler;
use crate::error::{Error, Result};
use crate::spectral::PeriodicSamples;
use crate::vector::{metric_cross, metric_dot, MetricSignature, Vec3};

/// Relative vanishing-curvature threshold.
pub const KAPPA_MIN: f64 = 1e-9;

/// Per-sample Frenet apparatus of a curve.
///
/// Where the curvature falls below the threshold, `tau[j]` is `None` and the
/// normal and binormal are reported as zero vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FrenetData {
    pub metric: MetricSignature,
    pub period: f64,
    pub params: Vec<f64>,
    pub points: Vec<Vec3>,
    pub speed: Vec<f64>,
    pub tangent: Vec<Vec3>,
    pub normal: Vec<Vec3>,
    pub binormal: Vec<Vec3>,
    pub kappa: Vec<f64>,
    pub tau: Vec<Option<f64>>,
}

impl FrenetData {
    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn tau_defined(&self, j: usize) -> bool {
        self.tau[j].is_some()
    }

    pub fn all_defined(&self) -> bool {
        self.tau.iter().all(Option::is_some)
    }

    pub fn defined_tau(&self) -> impl Iterator<Item = f64> + '_ {
        self.tau.iter().flatten().copied()
    }

    pub fn tau_min(&self) -> Option<f64> {
        self.defined_tau().reduce(f64::min)
    }

    pub fn tau_max(&self) -> Option<f64> {
        self.defined_tau().reduce(f64::max)
    }

    pub fn kappa_min(&self) -> f64 {
        self.kappa.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Torsion as periodic samples, if it is defined everywhere.
    pub fn tau_samples(&self) -> Option<PeriodicSamples> {
        let v: Option<Vec<f64>> = self.tau.iter().copied().collect();
        PeriodicSamples::new(v?, self.period).ok()
    }
}

pub fn frenet_apparatus(c: &CurveSampler, m: MetricSignature) -> Result<FrenetData> {
    frenet_apparatus_with(c, m, KAPPA_MIN)
}

/// Frenet apparatus with an explicit vanishing-curvature threshold.
///
/// Torsion is undefined where `|γ′ × γ″| ≤ kappa_min · scale³`, with
/// `scale = max |γ′|`, and also where a Lorentzian curvature vector fails to
/// be spacelike.
pub fn frenet_apparatus_with(
    c: &CurveSampler,
    m: MetricSignature,
    kappa_min: f64,
) -> Result<FrenetData> {
    let jets = c.jets()?;
    let mut scale: f64 = 0.0;
    for (j, jet) in jets.iter().enumerate() {
        if !(jet.d1.is_finite() && jet.d2.is_finite() && jet.d3.is_finite()) {
            return Err(Error::NonFiniteSample(j));
        }
        let s2 = metric_dot(jet.d1, jet.d1, m);
        if m == MetricSignature::Lorentz21 && s2 <= 0.0 {
            return Err(Error::NonSpacelikeTangent { index: j });
        }
        if s2 <= 0.0 {
            return Err(Error::DegenerateCurve("velocity vanishes"));
        }
        scale = scale.max(libm::sqrt(s2));
    }
    let threshold = kappa_min * scale * scale * scale;

    let n = jets.len();
    let mut out = FrenetData {
        metric: m,
        period: c.period(),
        params: c.params(),
        points: Vec::with_capacity(n),
        speed: Vec::with_capacity(n),
        tangent: Vec::with_capacity(n),
        normal: Vec::with_capacity(n),
        binormal: Vec::with_capacity(n),
        kappa: Vec::with_capacity(n),
        tau: Vec::with_capacity(n),
    };
    for jet in &jets {
        let speed = libm::sqrt(metric_dot(jet.d1, jet.d1, m));
        let t = jet.d1 / speed;
        let cross = metric_cross(jet.d1, jet.d2, m);
        let cross_sq = metric_dot(cross, cross, m);
        // Gram determinant of (γ′, γ″); equals |γ′|⁶ κ².
        let gram = match m {
            MetricSignature::Euclidean3 => cross_sq,
            MetricSignature::Lorentz21 => -cross_sq,
        };
        let kappa = libm::sqrt(gram.abs()) / (speed * speed * speed);
        out.points.push(jet.pos);
        out.speed.push(speed);
        out.tangent.push(t);
        out.kappa.push(kappa);
        if gram > 0.0 && libm::sqrt(gram) > threshold {
            let perp = jet.d2 - t * metric_dot(jet.d2, t, m);
            let nrm = perp / libm::sqrt(metric_dot(perp, perp, m));
            out.normal.push(nrm);
            out.binormal.push(metric_cross(t, nrm, m));
            out.tau.push(Some(metric_dot(cross, jet.d3, m) / cross_sq));
        } else {
            out.normal.push(Vec3::ZERO);
            out.binormal.push(Vec3::ZERO);
            out.tau.push(None);
        }
    }
    Ok(out)
}

/// `(γ′ × γ″) · γ‴` with the metric's operations.
pub fn triple_product(c: &CurveSampler, m: MetricSignature) -> Result<PeriodicSamples> {
    let values = c
        .jets()?
        .iter()
        .map(|j| metric_dot(metric_cross(j.d1, j.d2, m), j.d3, m))
        .collect();
    PeriodicSamples::new(values, c.period())
}

/// Numerator of the torsion formula, whose sign is the sign of the torsion
/// (up to the metric's fixed denominator sign). Metric independent.
pub fn torsion_sign_numerator(c: &CurveSampler) -> Result<PeriodicSamples> {
    triple_product(c, MetricSignature::Euclidean3)
}

/// Largest distance from the least-squares plane, divided by the diameter
/// of the sample set.
pub fn plane_fit_residual(c: &CurveSampler) -> Result<f64> {
    let pts = c.positions()?;
    plane_fit_residual_of(&pts)
}

pub(crate) fn plane_fit_residual_of(pts: &[Vec3]) -> Result<f64> {
    let diameter = diameter(pts);
    if diameter == 0.0 {
        return Err(Error::DegenerateCurve("all samples coincide"));
    }
    let n = pts.len() as f64;
    let centroid = pts.iter().fold(Vec3::ZERO, |a, &p| a + p) / n;
    let mut cov = Matrix3::<f64>::zeros();
    for &p in pts {
        let d = p - centroid;
        let a = d.to_array();
        for r in 0..3 {
            for s in 0..3 {
                cov[(r, s)] += a[r] * a[s];
            }
        }
    }
    let eig = SymmetricEigen::new(cov / n);
    let (imin, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold(
            (0, f64::INFINITY),
            |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc },
        );
    let col = eig.eigenvectors.column(imin);
    let normal = Vec3::new(col[0], col[1], col[2]);
    let worst = pts
        .iter()
        .fold(0.0f64, |m, &p| m.max((p - centroid).dot(normal).abs()));
    Ok(worst / diameter)
}

pub(crate) fn diameter(pts: &[Vec3]) -> f64 {
    let mut best: f64 = 0.0;
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            best = best.max((p - q).norm_sq());
        }
    }
    libm::sqrt(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Jet;
    use crate::families;
    use core::f64::consts::PI;
    use MetricSignature::*;

    fn helix(a: f64, b: f64) -> CurveSampler {
        families::helix(a, b, 2048).unwrap()
    }

    #[test]
    fn helix_closed_form() {
        // κ = a/(a²+b²), τ = b/(a²+b²)
        let f = frenet_apparatus(&helix(1.0, 1.0), Euclidean3).unwrap();
        for j in 0..f.len() {
            assert!((f.kappa[j] - 0.5).abs() < 1e-12);
            assert!((f.tau[j].unwrap() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_circle_frame() {
        let f = frenet_apparatus(&families::circle(1.0, 256).unwrap(), Euclidean3).unwrap();
        for j in 0..f.len() {
            assert!((f.kappa[j] - 1.0).abs() < 1e-14);
            assert_eq!(f.tau[j], Some(0.0));
            assert!((f.binormal[j] - Vec3::E3).norm() < 1e-14);
        }
    }

    #[test]
    fn planar_curves_have_zero_torsion() {
        let e = families::ellipse(2.0, 1.0, 512).unwrap();
        for m in [Euclidean3, Lorentz21] {
            let f = frenet_apparatus(&e, m).unwrap();
            assert!(f.defined_tau().all(|t| t == 0.0));
            assert!(f.all_defined());
        }
    }

    #[test]
    fn lorentz_rejects_timelike_tangent() {
        let c = CurveSampler::analytic(1.0, 16, false, |t| Jet {
            pos: Vec3::new(0.0, 0.0, t),
            d1: Vec3::E3,
            ..Jet::default()
        })
        .unwrap();
        assert_eq!(
            frenet_apparatus(&c, Lorentz21).unwrap_err(),
            Error::NonSpacelikeTangent { index: 0 }
        );
        // Euclidean: straight line, curvature zero, torsion undefined.
        let f = frenet_apparatus(&c, Euclidean3).unwrap();
        assert!(f.tau.iter().all(Option::is_none));
    }

    #[test]
    fn stationary_point_is_degenerate() {
        let c = CurveSampler::analytic(1.0, 16, true, |_| Jet::default()).unwrap();
        assert!(matches!(
            frenet_apparatus(&c, Euclidean3),
            Err(Error::DegenerateCurve(_))
        ));
    }

    #[test]
    fn lorentz_frame_signature() {
        // Graph over the unit circle with small height: spacelike throughout.
        let c = families::circle_graph(0.1, 2.0, 512).unwrap();
        let f = frenet_apparatus(&c, Lorentz21).unwrap();
        assert!(f.all_defined());
        for j in 0..f.len() {
            let (t, n, b) = (f.tangent[j], f.normal[j], f.binormal[j]);
            assert!((metric_dot(t, t, Lorentz21) - 1.0).abs() < 1e-12);
            assert!((metric_dot(n, n, Lorentz21) - 1.0).abs() < 1e-12);
            assert!((metric_dot(b, b, Lorentz21) + 1.0).abs() < 1e-12);
            assert!(metric_dot(t, n, Lorentz21).abs() < 1e-12);
            assert!(metric_dot(t, b, Lorentz21).abs() < 1e-12);
            assert!(metric_dot(n, b, Lorentz21).abs() < 1e-12);
        }
    }

    #[test]
    fn numerator_examples() {
        let z = torsion_sign_numerator(&families::ellipse(2.0, 1.0, 64).unwrap()).unwrap();
        assert_eq!(z.max_abs(), 0.0);
        // helix (cos t, sin t, t): (γ′×γ″)·γ‴ = a²b = 1
        let h = torsion_sign_numerator(&helix(1.0, 1.0)).unwrap();
        assert!(h.values().iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn plane_fit_examples() {
        let circle = families::circle(1.0, 512).unwrap();
        assert!(plane_fit_residual(&circle).unwrap() < 1e-12);
        // circle lifted into the plane z = x
        let tilted = families::circle_graph(1.0, 1.0, 512).unwrap();
        assert!(plane_fit_residual(&tilted).unwrap() < 1e-10);
        let h = CurveSampler::analytic(2.0 * PI, 512, false, |t| Jet {
            pos: Vec3::new(libm::cos(t), libm::sin(t), t),
            ..Jet::default()
        })
        .unwrap();
        assert!(plane_fit_residual(&h).unwrap() > 0.05);
        let point = CurveSampler::analytic(1.0, 16, true, |_| Jet::default()).unwrap();
        assert!(plane_fit_residual(&point).is_err());
    }
}
