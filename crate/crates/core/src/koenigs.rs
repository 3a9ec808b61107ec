//! Closed curves of constant torsion from a prescribed binormal.
//!
//! If `B(t)` is a curve on the unit sphere with `B × B′` never zero, then
//! `γ(t) = (1/τ) ∫₀ᵗ B × B′` has constant torsion `τ` and binormal `±B`.
//! The curve closes exactly when `∫ B × B′ = 0`; the vertical component of
//! that integral is the raw signed area of the projection of `B`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::curve::{CurveSampler, Jet};
use crate::error::{Error, Result};
use crate::frenet::{frenet_apparatus, FrenetData};
use crate::polyline::{cyclic_separation, segment_distance};
use crate::spectral::{self, check_grid};
use crate::vector::{MetricSignature, Vec3};

const TWO_PI: f64 = 2.0 * PI;
const UNIT_TOL: f64 = 1e-12;
const PLANAR_TOL: f64 = 1e-12;
/// Cyclic index separation excluded by [`min_self_distance`].
pub const ADJACENCY_WINDOW: usize = 10;

/// `β_r(t) = r·(½ cos t + (√2/4) cos 2t, ½ sin t − (√2/4) sin 2t, 0)`.
#[derive(Debug, Clone)]
pub struct BetaCurve {
    r: f64,
    curve: CurveSampler,
}

impl BetaCurve {
    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn curve(&self) -> &CurveSampler {
        &self.curve
    }

    pub fn positions(&self) -> Result<Vec<Vec3>> {
        self.curve.positions()
    }
}

impl AsRef<CurveSampler> for BetaCurve {
    fn as_ref(&self) -> &CurveSampler {
        &self.curve
    }
}

impl AsRef<CurveSampler> for CurveSampler {
    fn as_ref(&self) -> &CurveSampler {
        self
    }
}

pub fn beta_curve(r: f64, samples: usize) -> Result<BetaCurve> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidParameter("beta curve needs 0 < r <= 1"));
    }
    let a = 0.5 * r;
    let b = r * core::f64::consts::SQRT_2 / 4.0;
    let curve = CurveSampler::analytic(TWO_PI, samples, true, move |t| {
        let (s1, c1) = (libm::sin(t), libm::cos(t));
        let (s2, c2) = (libm::sin(2.0 * t), libm::cos(2.0 * t));
        Jet {
            pos: Vec3::new(a * c1 + b * c2, a * s1 - b * s2, 0.0),
            d1: Vec3::new(-a * s1 - 2.0 * b * s2, a * c1 - 2.0 * b * c2, 0.0),
            d2: Vec3::new(-a * c1 - 4.0 * b * c2, -a * s1 + 4.0 * b * s2, 0.0),
            d3: Vec3::new(a * s1 + 8.0 * b * s2, -a * c1 + 8.0 * b * c2, 0.0),
        }
    })?;
    Ok(BetaCurve { r, curve })
}

/// Periodic samples on the unit sphere, differentiated spectrally.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalCurve {
    points: Vec<Vec3>,
    period: f64,
}

impl SphericalCurve {
    pub fn new(points: Vec<Vec3>, period: f64) -> Result<Self> {
        check_grid(points.len())?;
        spectral::check_period(period)?;
        for (i, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFiniteSample(i));
            }
            if (p.norm_sq() - 1.0).abs() > UNIT_TOL {
                return Err(Error::InvalidParameter(
                    "spherical samples must have unit length",
                ));
            }
        }
        Ok(SphericalCurve { points, period })
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Orthogonal projection to the xy-plane as a closed sampled curve.
    pub fn projection(&self) -> Result<CurveSampler> {
        CurveSampler::sampled(project(&self.points), self.period)
    }
}

fn project(pts: &[Vec3]) -> Vec<Vec3> {
    pts.iter().map(|p| Vec3::new(p.x, p.y, 0.0)).collect()
}

/// `(x, y) ↦ (x, y, √(1 − x² − y²))` on every grid sample.
pub fn vertical_lift(plane: impl AsRef<CurveSampler>) -> Result<SphericalCurve> {
    let c = plane.as_ref();
    let pts = c.positions()?;
    let mut out = Vec::with_capacity(pts.len());
    for (index, p) in pts.iter().enumerate() {
        let r2 = p.x * p.x + p.y * p.y;
        if r2 >= 1.0 || r2.is_nan() {
            return Err(Error::OutsideDisk { index });
        }
        out.push(Vec3::new(p.x, p.y, libm::sqrt(1.0 - r2)));
    }
    SphericalCurve::new(out, c.period())
}

#[derive(Debug, Clone)]
pub struct KoenigsResult {
    pub curve: CurveSampler,
    pub tau_target: f64,
    /// `γ(P) − γ(0)`.
    pub closure_defect: Vec3,
    pub frenet: FrenetData,
    pub kappa_min: f64,
}

impl KoenigsResult {
    /// Standard deviation of the defined torsion samples.
    pub fn tau_stdev(&self) -> Option<f64> {
        let (n, sum) = self
            .frenet
            .defined_tau()
            .fold((0usize, 0.0), |(n, s), t| (n + 1, s + t));
        if n == 0 {
            return None;
        }
        let mean = sum / n as f64;
        let var = self
            .frenet
            .defined_tau()
            .map(|t| (t - mean) * (t - mean))
            .sum::<f64>()
            / n as f64;
        Some(libm::sqrt(var))
    }

    /// Largest deviation of the defined torsion samples from the target.
    pub fn tau_deviation(&self) -> Option<f64> {
        self.frenet
            .defined_tau()
            .map(|t| (t - self.tau_target).abs())
            .reduce(f64::max)
    }

    /// Sign `s` with Frenet binormal `≈ s·B` and the sup deviation
    /// `max |B_frenet − s·B|` over samples where the frame is defined.
    ///
    /// The binormal is `+B` when `det(B, B′, B″) > 0` and `−B` otherwise.
    pub fn binormal_mismatch(&self, b: &SphericalCurve) -> Result<(f64, f64)> {
        if b.len() != self.frenet.len() {
            return Err(Error::GridMismatch {
                expected: self.frenet.len(),
                got: b.len(),
            });
        }
        let dev = |s: f64| {
            self.frenet
                .binormal
                .iter()
                .zip(b.points())
                .zip(&self.frenet.tau)
                .filter(|(_, t)| t.is_some())
                .map(|((f, p), _)| (*f - *p * s).norm())
                .fold(0.0f64, f64::max)
        };
        let (plus, minus) = (dev(1.0), dev(-1.0));
        Ok(if plus <= minus {
            (1.0, plus)
        } else {
            (-1.0, minus)
        })
    }
}

/// `γ(t) = (1/τ) ∫₀ᵗ B × B′` by spectral antidifferentiation. A nonzero
/// mean of the integrand becomes a linear drift and is reported as the
/// closure defect rather than rejected.
pub fn koenigs_curve(b: &SphericalCurve, tau_target: f64) -> Result<KoenigsResult> {
    if tau_target == 0.0 || !tau_target.is_finite() {
        return Err(Error::ZeroTorsionTarget);
    }
    let period = b.period();
    let db = spectral::derivative_vec3(b.points(), period, 1)?;
    let w: Vec<Vec3> = b
        .points()
        .iter()
        .zip(&db)
        .map(|(&p, &d)| p.cross(d) / tau_target)
        .collect();
    if w.iter().fold(0.0f64, |m, v| m.max(v.norm())) * tau_target.abs() < 1e-12 {
        return Err(Error::DegenerateSpeed);
    }
    let mut periodic = Vec::new();
    let mut drift = [0.0; 3];
    for (axis, comp) in spectral::split(&w, period)?.iter().enumerate() {
        let (g, mean) = comp.antiderivative()?;
        let g0 = g.values()[0];
        periodic.push(g.map(|v| v - g0)?);
        drift[axis] = mean;
    }
    let drift = Vec3::from(drift);
    let curve = CurveSampler::sampled_with_drift(spectral::join(&periodic), drift, period)?;
    let frenet = frenet_apparatus(&curve, MetricSignature::Euclidean3)?;
    let kappa_min = frenet.kappa_min();
    Ok(KoenigsResult {
        curve,
        tau_target,
        closure_defect: drift * period,
        frenet,
        kappa_min,
    })
}

/// Raw signed area `∫₀ᴾ (x y′ − y x′) dt`, twice the enclosed area counted
/// with multiplicity.
pub fn signed_area(c: impl AsRef<CurveSampler>) -> Result<f64> {
    let c = c.as_ref();
    if !c.is_closed() {
        return Err(Error::OpenCurve);
    }
    let jets = c.jets()?;
    let scale = jets.iter().fold(1.0f64, |m, j| m.max(j.pos.norm()));
    let deviation = jets.iter().fold(0.0f64, |m, j| m.max(j.pos.z.abs()));
    if deviation > PLANAR_TOL * scale {
        return Err(Error::NotPlanar { deviation });
    }
    let h = c.period() / jets.len() as f64;
    Ok(h * jets
        .iter()
        .map(|j| j.pos.x * j.d1.y - j.pos.y * j.d1.x)
        .sum::<f64>())
}

/// Largest angle between a Frenet binormal and the normalized mean
/// binormal. Samples without a defined frame are skipped; a curve with no
/// defined frame has spread zero.
pub fn binormal_spread(c: &CurveSampler) -> Result<f64> {
    Ok(spread_of(&frenet_apparatus(
        c,
        MetricSignature::Euclidean3,
    )?))
}

pub(crate) fn spread_of(f: &FrenetData) -> f64 {
    let defined = || {
        f.binormal
            .iter()
            .zip(&f.tau)
            .filter(|(_, t)| t.is_some())
            .map(|(b, _)| *b)
    };
    let sum = defined().fold(Vec3::ZERO, |a, b| a + b);
    let norm = sum.norm();
    if norm == 0.0 {
        return 0.0;
    }
    let mean = sum / norm;
    defined()
        .map(|b| angle_between(b, mean))
        .fold(0.0, f64::max)
}

fn angle_between(a: Vec3, b: Vec3) -> f64 {
    libm::atan2(a.cross(b).norm(), a.dot(b))
}

/// Closed sampled curve `(x, y, 0)` from the grid samples of `c`.
pub fn plane_projection(c: &CurveSampler) -> Result<CurveSampler> {
    let jets = c.jets()?;
    let pts: Vec<Vec3> = jets
        .iter()
        .map(|j| Vec3::new(j.pos.x, j.pos.y, 0.0))
        .collect();
    CurveSampler::sampled(pts, c.period())
}

/// Shortest double normal of the planar sample chain, ignoring pairs within
/// [`ADJACENCY_WINDOW`] grid steps of each other.
///
/// A double normal is a chord orthogonal to the curve at both ends, that is
/// a critical point of the squared distance between two curve points; a
/// crossing is one of length zero. Every closed curve has at least one (its
/// diameter), so near points of a simple curve are told apart from
/// neighbouring points on the same arc.
///
/// A grid cell `[i, i+1] × [j, j+1]` is a candidate when both
/// `(pᵢ − pⱼ)·Tᵢ` and `(pᵢ − pⱼ)·Tⱼ` change sign over its corners; the value
/// at a candidate is the distance between segments `i` and `j`. Only x and
/// y are used.
pub fn min_self_distance(c: &CurveSampler) -> Result<f64> {
    let jets = c.jets()?;
    let n = jets.len();
    let p: Vec<(f64, f64)> = jets.iter().map(|j| (j.pos.x, j.pos.y)).collect();
    let t: Vec<(f64, f64)> = jets.iter().map(|j| (j.d1.x, j.d1.y)).collect();
    let flat = |v: (f64, f64)| Vec3::new(v.0, v.1, 0.0);
    let seg = |i: usize| (flat(p[i]), flat(p[(i + 1) % n]));
    // (a, b) at grid pair (i, j)
    let ab = |i: usize, j: usize| {
        let d = (p[i].0 - p[j].0, p[i].1 - p[j].1);
        (d.0 * t[i].0 + d.1 * t[i].1, d.0 * t[j].0 + d.1 * t[j].1)
    };
    let straddles = |v: [f64; 4]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        lo <= 0.0 && hi >= 0.0
    };
    let mut best = f64::INFINITY;
    let mut fallback = f64::INFINITY;
    for i in 0..n {
        let i1 = (i + 1) % n;
        for j in i + 1..n {
            let j1 = (j + 1) % n;
            let excluded = [(i, j), (i, j1), (i1, j), (i1, j1)]
                .iter()
                .any(|&(a, b)| cyclic_separation(a, b, n) <= ADJACENCY_WINDOW);
            if excluded {
                continue;
            }
            let corners = [ab(i, j), ab(i1, j), ab(i, j1), ab(i1, j1)];
            let (si, sj) = seg(i);
            let (ti, tj) = seg(j);
            if straddles(corners.map(|c| c.0)) && straddles(corners.map(|c| c.1)) {
                best = best.min(segment_distance(si, sj, ti, tj));
            } else if best == f64::INFINITY {
                fallback = fallback.min(segment_distance(si, sj, ti, tj));
            }
        }
    }
    Ok(if best.is_finite() { best } else { fallback })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use std::vec;

    const N: usize = 2048;

    #[test]
    fn beta_at_zero() {
        let b = beta_curve(1.0, N).unwrap();
        let p = b.positions().unwrap()[0];
        assert!((p - Vec3::new(0.5 + libm::sqrt(2.0) / 4.0, 0.0, 0.0)).norm() < 1e-15);
        assert!(beta_curve(0.0, N).is_err());
        assert!(beta_curve(1.5, N).is_err());
    }

    #[test]
    fn beta_has_threefold_symmetry() {
        // with N divisible by 3 the rotated sample set is the sample set
        let n = 1536;
        let pts = beta_curve(1.0, n).unwrap().positions().unwrap();
        let (s, c) = (libm::sin(TWO_PI / 3.0), libm::cos(TWO_PI / 3.0));
        let shift = n / 3;
        for (j, p) in pts.iter().enumerate() {
            let q = Vec3::new(c * p.x - s * p.y, s * p.x + c * p.y, 0.0);
            assert!((q - pts[(j + shift) % n]).norm() < 1e-12);
        }
    }

    #[test]
    fn beta_encloses_zero_area() {
        for r in [1.0, 0.5, 0.25] {
            assert!(signed_area(beta_curve(r, N).unwrap()).unwrap().abs() < 1e-10);
        }
        let fig8 = families::figure_eight(N).unwrap();
        assert!(signed_area(&fig8).unwrap().abs() < 1e-12);
        let circle = families::circle(1.0, N).unwrap();
        assert!((signed_area(&circle).unwrap() - TWO_PI).abs() < 1e-12);
        let helix = families::helix(1.0, 1.0, N).unwrap();
        assert_eq!(signed_area(&helix), Err(Error::OpenCurve));
        let tilted = families::circle_graph(0.1, 2.0, 64).unwrap();
        assert!(matches!(signed_area(&tilted), Err(Error::NotPlanar { .. })));
    }

    #[test]
    fn lift_examples() {
        let origin = CurveSampler::sampled(vec![Vec3::ZERO; 64], TWO_PI).unwrap();
        let b = vertical_lift(&origin).unwrap();
        assert!(b.points().iter().all(|p| *p == Vec3::E3));
        assert_eq!(koenigs_curve(&b, 1.0).unwrap_err(), Error::DegenerateSpeed);

        let half = families::circle(0.5, 64).unwrap();
        let b = vertical_lift(&half).unwrap();
        assert!(b
            .points()
            .iter()
            .all(|p| (p.z - libm::sqrt(3.0) / 2.0).abs() < 1e-15));

        let quarter = vertical_lift(beta_curve(0.25, N).unwrap()).unwrap();
        assert!(quarter.points().iter().all(|p| p.z > 0.9));

        let unit = families::circle(1.0, 64).unwrap();
        assert!(matches!(
            vertical_lift(&unit),
            Err(Error::OutsideDisk { .. })
        ));
    }

    #[test]
    fn great_circle_gives_a_segment() {
        let b = SphericalCurve::new(
            (0..64)
                .map(|j| {
                    let t = TWO_PI * j as f64 / 64.0;
                    Vec3::new(libm::cos(t), libm::sin(t), 0.0)
                })
                .collect(),
            TWO_PI,
        )
        .unwrap();
        let k = koenigs_curve(&b, 1.0).unwrap();
        assert!((k.closure_defect - Vec3::new(0.0, 0.0, TWO_PI)).norm() < 1e-12);
        assert!(k.frenet.tau.iter().all(Option::is_none));
        assert!(k.kappa_min < 1e-9);
        assert!(!k.curve.is_closed());
        assert_eq!(
            koenigs_curve(&b, 0.0).unwrap_err(),
            Error::ZeroTorsionTarget
        );
    }

    #[test]
    fn weiner_curves_close_with_constant_torsion() {
        for r in [1.0, 0.25] {
            let b = vertical_lift(beta_curve(r, N).unwrap()).unwrap();
            let k = koenigs_curve(&b, r).unwrap();
            assert!(
                k.closure_defect.norm() < 1e-6,
                "r = {r}: {:?}",
                k.closure_defect
            );
            assert!(k.frenet.all_defined());
            assert!(k.tau_deviation().unwrap() < 1e-6);
            assert!(k.tau_stdev().unwrap() < 1e-6 * r);
            assert!(k.kappa_min > 0.0);
            let (_, mismatch) = k.binormal_mismatch(&b).unwrap();
            assert!(mismatch < 1e-6);
            // vertical defect is the projected signed area over τ
            let area = signed_area(b.projection().unwrap()).unwrap();
            assert!((k.closure_defect.z - area / r).abs() < 1e-10);
        }
    }

    #[test]
    fn spread_examples() {
        assert_eq!(
            binormal_spread(&families::circle(1.0, 256).unwrap()).unwrap(),
            0.0
        );
        // binormal of (cos t, sin t, t) sits on a cone of half-angle π/4
        let helix = families::helix(1.0, 1.0, 256).unwrap();
        assert!((binormal_spread(&helix).unwrap() - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn self_distance_examples() {
        let circle = families::circle(1.0, 512).unwrap();
        let d = min_self_distance(&circle).unwrap();
        assert!((d - 2.0).abs() < 1e-3, "{d}");
        let ellipse = families::ellipse(2.0, 1.0, 512).unwrap();
        assert!((min_self_distance(&ellipse).unwrap() - 2.0).abs() < 1e-3);
        assert!(min_self_distance(&families::figure_eight(512).unwrap()).unwrap() < 1e-2);
        assert!(min_self_distance(beta_curve(1.0, 512).unwrap().curve()).unwrap() < 1e-2);
    }
}
