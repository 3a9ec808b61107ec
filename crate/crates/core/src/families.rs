//! Analytic curves with exact jets.

use core::f64::consts::PI;

use crate::curve::{CurveSampler, Jet};
use crate::error::{Error, Result};
use crate::vector::Vec3;

const TWO_PI: f64 = 2.0 * PI;

/// Jet of `t ↦ amp·(cos wt, sin wt)` in the xy-plane.
fn rotor(amp: f64, w: f64, t: f64) -> Jet {
    let (s, c) = (libm::sin(w * t), libm::cos(w * t));
    let (a1, a2, a3) = (amp * w, amp * w * w, amp * w * w * w);
    Jet {
        pos: Vec3::new(amp * c, amp * s, 0.0),
        d1: Vec3::new(-a1 * s, a1 * c, 0.0),
        d2: Vec3::new(-a2 * c, -a2 * s, 0.0),
        d3: Vec3::new(a3 * s, -a3 * c, 0.0),
    }
}

fn add(a: Jet, b: Jet) -> Jet {
    Jet {
        pos: a.pos + b.pos,
        d1: a.d1 + b.d1,
        d2: a.d2 + b.d2,
        d3: a.d3 + b.d3,
    }
}

fn scale(a: Jet, s: f64) -> Jet {
    Jet {
        pos: a.pos * s,
        d1: a.d1 * s,
        d2: a.d2 * s,
        d3: a.d3 * s,
    }
}

/// Counterclockwise circle of the given radius about the origin.
pub fn circle(radius: f64, samples: usize) -> Result<CurveSampler> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter("circle radius must be positive"));
    }
    CurveSampler::analytic(TWO_PI, samples, true, move |t| rotor(radius, 1.0, t))
}

/// `(a cos t, b sin t, 0)`.
pub fn ellipse(a: f64, b: f64, samples: usize) -> Result<CurveSampler> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter(
            "ellipse semi-axes must be positive",
        ));
    }
    CurveSampler::analytic(TWO_PI, samples, true, move |t| {
        let (s, c) = (libm::sin(t), libm::cos(t));
        Jet {
            pos: Vec3::new(a * c, b * s, 0.0),
            d1: Vec3::new(-a * s, b * c, 0.0),
            d2: Vec3::new(-a * c, -b * s, 0.0),
            d3: Vec3::new(a * s, -b * c, 0.0),
        }
    })
}

/// One turn `t ∈ [0, 2π)` of the helix `(a cos t, a sin t, b t)`; an open arc.
pub fn helix(a: f64, b: f64, samples: usize) -> Result<CurveSampler> {
    if !(a > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter("helix radius must be positive"));
    }
    CurveSampler::analytic(TWO_PI, samples, false, move |t| {
        let mut j = rotor(a, 1.0, t);
        j.pos.z = b * t;
        j.d1.z = b;
        j
    })
}

/// Roulette `((a+b) cos t − c cos(q t), (a+b) sin t − c sin(q t), 0)` with
/// `q = (a+b)/b`, which must be an integer for the curve to close on
/// `[0, 2π)`. Negative `b` gives hypotrochoids, positive `b` epitrochoids.
pub fn trochoid(a: f64, b: f64, c: f64, samples: usize) -> Result<CurveSampler> {
    if b == 0.0 || !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::InvalidParameter(
            "trochoid needs finite a, c and nonzero b",
        ));
    }
    let ratio = (a + b) / b;
    let q = libm::round(ratio);
    if (ratio - q).abs() > 1e-12 * ratio.abs().max(1.0) {
        return Err(Error::NonClosingParameters { ratio });
    }
    let r = a + b;
    CurveSampler::analytic(TWO_PI, samples, true, move |t| {
        add(rotor(r, 1.0, t), scale(rotor(c, q, t), -1.0))
    })
}

/// `(sin t, sin t cos t, 0)`, a figure eight crossing itself at the origin.
pub fn figure_eight(samples: usize) -> Result<CurveSampler> {
    CurveSampler::analytic(TWO_PI, samples, true, |t| {
        let (s, c) = (libm::sin(t), libm::cos(t));
        let (s2, c2) = (libm::sin(2.0 * t), libm::cos(2.0 * t));
        Jet {
            pos: Vec3::new(s, 0.5 * s2, 0.0),
            d1: Vec3::new(c, c2, 0.0),
            d2: Vec3::new(-s, -2.0 * s2, 0.0),
            d3: Vec3::new(-c, -4.0 * c2, 0.0),
        }
    })
}

/// Coil wound `m` times around a torus with radii `big_r` and `rho`:
/// `((R + ρ cos mt) cos t, (R + ρ cos mt) sin t, ρ sin mt)`.
pub fn torus_coil(big_r: f64, rho: f64, m: f64, samples: usize) -> Result<CurveSampler> {
    if !(big_r > 0.0 && rho > 0.0 && big_r.is_finite() && rho.is_finite()) {
        return Err(Error::InvalidParameter("torus radii must be positive"));
    }
    if libm::round(m) != m || m == 0.0 {
        return Err(Error::InvalidParameter(
            "coil winding must be a nonzero integer",
        ));
    }
    CurveSampler::analytic(TWO_PI, samples, true, move |t| {
        // radius ρ_r(t) = R + ρ cos mt and its derivatives
        let (sm, cm) = (libm::sin(m * t), libm::cos(m * t));
        let r0 = big_r + rho * cm;
        let r1 = -rho * m * sm;
        let r2 = -rho * m * m * cm;
        let r3 = rho * m * m * m * sm;
        let (s, c) = (libm::sin(t), libm::cos(t));
        // product rule for r(t)·(cos t, sin t)
        let u0 = Vec3::new(c, s, 0.0);
        let u1 = Vec3::new(-s, c, 0.0);
        let u2 = -u0;
        let u3 = -u1;
        let z = |k: u8| {
            let w = libm::pow(m, k as f64);
            match k % 4 {
                0 => rho * w * sm,
                1 => rho * w * cm,
                2 => -rho * w * sm,
                _ => -rho * w * cm,
            }
        };
        let mut j = Jet {
            pos: u0 * r0,
            d1: u1 * r0 + u0 * r1,
            d2: u2 * r0 + u1 * (2.0 * r1) + u0 * r2,
            d3: u3 * r0 + u2 * (3.0 * r1) + u1 * (3.0 * r2) + u0 * r3,
        };
        j.pos.z = z(0);
        j.d1.z = z(1);
        j.d2.z = z(2);
        j.d3.z = z(3);
        j
    })
}

/// Lift of a plane curve by the height `amp·sin(freq·t)` in its own
/// parameter, evaluated through the base curve's jets.
pub fn sine_graph(base: &CurveSampler, amp: f64, freq: f64) -> Result<CurveSampler> {
    if !(amp.is_finite() && freq.is_finite()) {
        return Err(Error::InvalidParameter("height parameters must be finite"));
    }
    let base = base.clone();
    let closed = base.is_closed() && {
        let cycles = freq * base.period() / TWO_PI;
        (cycles - libm::round(cycles)).abs() < 1e-12
    };
    CurveSampler::analytic(base.period(), base.samples(), closed, move |t| {
        let mut j = base.jet_at(t);
        let (s, c) = (libm::sin(freq * t), libm::cos(freq * t));
        j.pos.z = amp * s;
        j.d1.z = amp * freq * c;
        j.d2.z = -amp * freq * freq * s;
        j.d3.z = -amp * freq * freq * freq * c;
        j
    })
}

/// Unit circle lifted by `amp·sin(freq·t)`.
pub fn circle_graph(amp: f64, freq: f64, samples: usize) -> Result<CurveSampler> {
    sine_graph(&circle(1.0, samples)?, amp, freq)
}
