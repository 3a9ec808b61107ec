//! Positive periodic solutions of `f″ + f = 1/κ₀` and the weighted
//! total-torsion identity.
//!
//! With `p = 1/κ₀` satisfying the closure conditions, the convolution
//!
//! ```text
//! f(θ) = ∫_{−π}^{π} k(β) p(β + θ + π) dβ,     k(β) = β sin β / (2π)
//! ```
//!
//! solves `f″ + f = p`, and `f > 0` because `k > 0` on `(−π, π) \ {0}`.
//! Multiplying the ODE by `κ₀h′` and integrating by parts twice gives
//!
//! ```text
//! 0 = ∫ τ [((κ₀h′)′)² + (κ₀h′)² ± 1] f/κ₀ dθ
//! ```
//!
//! over `[0, 2πk)`, so a one-signed torsion must vanish identically.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::graph::{graph_torsion, BaseCurve, GraphCurve, CLOSURE_TOL};
use crate::spectral::PeriodicSamples;
use crate::vector::MetricSignature;

/// Default planarity tolerance on `max |τ|`.
pub const PLANAR_TOL: f64 = 1e-6;

/// Solution of `f″ + f = 1/κ₀` with vanishing first harmonics.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSolution {
    pub f: PeriodicSamples,
    /// `sup |f″ + f − 1/κ₀|`.
    pub ode_residual: f64,
    pub min_f: f64,
    /// `sup |f_quadrature − f_spectral|` between the two solution routes.
    pub route_gap: f64,
}

/// Kernel `k(β) = β sin β / (2π)`.
#[inline]
pub fn kernel(beta: f64) -> f64 {
    beta * libm::sin(beta) / (2.0 * PI)
}

/// Convolution of `p` with the kernel by the equal-weight rule on the
/// curve's own grid, with Euler–Maclaurin endpoint corrections.
///
/// The integrand `k(β)p(β+θ+π)` is smooth on `[−π, π]` but its periodic
/// extension has a derivative jump at `±π`, which limits the plain rule to
/// second order. Because `k(±π) = 0` and odd derivatives of `k` are odd,
/// the endpoint jumps of the odd derivatives reduce to `p` and its even
/// derivatives at `θ`:
///
/// ```text
/// g′  : −p
/// g‴  :  p − 3p″
/// g⁽⁵⁾: −p + 10p″ − 5p⁗
/// ```
///
/// and the corrected rule is accurate to `O(h⁸)`.
pub fn kernel_quadrature(p: &PeriodicSamples) -> Result<PeriodicSamples> {
    let n = p.len();
    let h = p.spacing();
    let weights: Vec<f64> = (0..n).map(|i| h * kernel(-PI + i as f64 * h)).collect();
    let pv = p.values();
    let raw: Vec<f64> = (0..n)
        .map(|j| {
            let (head, tail) = pv.split_at(j);
            // p[(i + j) mod n] for i = 0..n is tail ++ head
            tail.iter()
                .chain(head)
                .zip(&weights)
                .map(|(a, w)| a * w)
                .sum()
        })
        .collect();
    let p2 = p.derivative(2)?;
    let p4 = p2.derivative(2)?;
    let (h2, h4, h6) = (h * h, h * h * h * h, h * h * h * h * h * h);
    let f = raw
        .iter()
        .zip(pv)
        .zip(p2.values().iter().zip(p4.values()))
        .map(|((&t, &p0), (&p2, &p4))| {
            t + h2 * p0 / 12.0
                + h4 * (p0 - 3.0 * p2) / 720.0
                + h6 * (p0 - 10.0 * p2 + 5.0 * p4) / 30240.0
        })
        .collect();
    PeriodicSamples::new(f, p.period())
}

/// Frequency-space solution: mode `m` of `f` is mode `m` of `p` divided by
/// `1 − m²`, with the first harmonics set to zero.
pub fn kernel_spectral(p: &PeriodicSamples) -> Result<PeriodicSamples> {
    let n = p.len();
    let mut spec = fft::forward_real(p.values());
    for (j, c) in spec.iter_mut().enumerate() {
        let m = if j <= n / 2 {
            j as f64
        } else {
            j as f64 - n as f64
        };
        *c = if m.abs() == 1.0 {
            Complex64::new(0.0, 0.0)
        } else {
            *c / (1.0 - m * m)
        };
    }
    PeriodicSamples::new(fft::inverse_real(spec), p.period())
}

pub fn solve_kernel(base: &BaseCurve) -> Result<KernelSolution> {
    let (r_cos, r_sin) = base.closure_residual();
    if r_cos.abs() > CLOSURE_TOL || r_sin.abs() > CLOSURE_TOL {
        return Err(Error::NotClosed { r_cos, r_sin });
    }
    let p = base.radius_of_curvature();
    let f = kernel_quadrature(&p)?;
    let oracle = kernel_spectral(&p)?;
    let route_gap = f.zip_with(&oracle, |a, b| a - b)?.max_abs();
    let residual = f
        .derivative(2)?
        .zip_with(&f, |a, b| a + b)?
        .zip_with(&p, |a, b| a - b)?;
    let min_f = f.min();
    if min_f <= 0.0 {
        return Err(Error::NonPositiveSolution { min_f });
    }
    Ok(KernelSolution {
        ode_residual: residual.max_abs(),
        min_f,
        route_gap,
        f,
    })
}

/// Sign of the weight `[((κ₀h′)′)² + (κ₀h′)² ± 1]·f/κ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSign {
    AllPositive,
    AllNegative,
}

/// Classification of the torsion samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `max |τ|` below the planarity tolerance.
    Planar,
    /// `τ` takes both signs.
    MixedSign,
    /// `τ` is one-signed but not small; impossible for valid input.
    OneSigned,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    /// `∫ τ·weight` over the full period `2πk`.
    pub identity_value: f64,
    /// `∫ |τ·weight|`, the scale for [`IdentityReport::relative_identity`].
    pub integrand_abs: f64,
    pub weight_sign: WeightSign,
    pub tau_max: f64,
    pub tau_min: f64,
    pub sign_changes: usize,
    pub verdict: Verdict,
    pub planar_tol: f64,
}

impl IdentityReport {
    /// `|∫ integrand| / ∫ |integrand|`, or zero for a vanishing integrand.
    pub fn relative_identity(&self) -> f64 {
        if self.integrand_abs == 0.0 {
            0.0
        } else {
            self.identity_value.abs() / self.integrand_abs
        }
    }

    pub fn vanishes(&self, rel_tol: f64) -> bool {
        self.identity_value.abs() <= rel_tol * self.integrand_abs
    }
}

pub fn weighted_identity(g: &GraphCurve, f: &KernelSolution) -> Result<IdentityReport> {
    weighted_identity_with(g, f, PLANAR_TOL)
}

pub fn weighted_identity_with(
    g: &GraphCurve,
    f: &KernelSolution,
    planar_tol: f64,
) -> Result<IdentityReport> {
    if f.f.len() != g.base.len() {
        return Err(Error::GridMismatch {
            expected: g.base.len(),
            got: f.f.len(),
        });
    }
    let tau = graph_torsion(g)?;
    let bracket = g.bracket()?;
    let k = g.winding();
    let weight = bracket
        .zip_with(&f.f.tile(k)?, |b, f| b * f)?
        .zip_with(&g.kappa0_tiled(), |w, k0| w / k0)?;
    let integrand = tau.zip_with(&weight, |t, w| t * w)?;
    let weight_sign = match g.metric {
        MetricSignature::Euclidean3 => WeightSign::AllPositive,
        MetricSignature::Lorentz21 => WeightSign::AllNegative,
    };
    debug_assert!(weight.values().iter().all(|&w| match weight_sign {
        WeightSign::AllPositive => w > 0.0,
        WeightSign::AllNegative => w < 0.0,
    }));
    let (tau_min, tau_max) = (tau.min(), tau.max());
    Ok(IdentityReport {
        identity_value: integrand.integral(),
        integrand_abs: integrand.map(f64::abs)?.integral(),
        weight_sign,
        tau_max,
        tau_min,
        sign_changes: sign_change_count(&tau),
        verdict: classify(tau_min, tau_max, planar_tol),
        planar_tol,
    })
}

fn classify(tau_min: f64, tau_max: f64, tol: f64) -> Verdict {
    if tau_min.abs().max(tau_max.abs()) < tol {
        Verdict::Planar
    } else if tau_min < 0.0 && tau_max > 0.0 {
        Verdict::MixedSign
    } else {
        Verdict::OneSigned
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremVerdict {
    ConsistentWithTheorem,
    Violation,
}

/// A torsion that is one-signed up to the report's tolerance must be
/// below that tolerance everywhere.
pub fn theorem_verdict(report: &IdentityReport) -> TheoremVerdict {
    let tol = report.planar_tol;
    let one_signed = report.tau_min >= -tol || report.tau_max <= tol;
    let size = report.tau_min.abs().max(report.tau_max.abs());
    if one_signed && size >= tol {
        TheoremVerdict::Violation
    } else {
        TheoremVerdict::ConsistentWithTheorem
    }
}

/// Sign changes around the period, with hysteresis band
/// `±1e−9·max|τ|`: a change counts only when the samples leave the band on
/// the side opposite to the previous excursion. Non-finite samples are
/// skipped.
pub fn sign_change_count(tau: &PeriodicSamples) -> usize {
    let v = tau.values();
    let band = 1e-9
        * v.iter()
            .filter(|x| x.is_finite())
            .fold(0.0f64, |m, x| m.max(x.abs()));
    let Some(start) = v.iter().position(|x| x.is_finite() && x.abs() > band) else {
        return 0;
    };
    let mut side = v[start] > 0.0;
    let mut changes = 0;
    for i in 1..=v.len() {
        let x = v[(start + i) % v.len()];
        if !x.is_finite() || x.abs() <= band {
            continue;
        }
        if (x > 0.0) != side {
            side = !side;
            changes += 1;
        }
    }
    changes
}
