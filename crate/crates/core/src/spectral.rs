//! Calculus on uniformly sampled periodic functions.
//!
//! Samples sit at `t_j = j·P/N`, `j = 0..N`. Differentiation and
//! antidifferentiation act mode by mode in frequency space; integration is
//! the equal-weight rule, which is spectrally accurate for smooth periodic
//! integrands. The Nyquist mode is dropped by every differentiation so that
//! derivatives of real data stay real.
//!
//! Differentiation also drops modes whose magnitude is below
//! [`NOISE_FLOOR`] times the largest coefficient. Those modes hold FFT
//! roundoff, which a third derivative would otherwise amplify by up to
//! `(N/2)³`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::vector::Vec3;

/// Default grid size for every sampled quantity.
pub const DEFAULT_SAMPLES: usize = 2048;
/// Smallest grid accepted by [`PeriodicSamples`].
pub const MIN_SAMPLES: usize = 16;
/// Relative magnitude below which a mode is treated as roundoff.
pub const NOISE_FLOOR: f64 = 1e-13;

fn floor_of(spec: &[Complex64]) -> f64 {
    NOISE_FLOOR * spec.iter().fold(0.0f64, |m, c| m.max(c.norm()))
}

pub(crate) fn check_grid(n: usize) -> Result<()> {
    if n < MIN_SAMPLES || !n.is_multiple_of(2) {
        return Err(Error::InvalidGrid(n));
    }
    Ok(())
}

pub(crate) fn check_period(period: f64) -> Result<()> {
    if !(period.is_finite() && period > 0.0) {
        return Err(Error::InvalidPeriod(period));
    }
    Ok(())
}

/// Signed frequency of FFT slot `j` on an `n`-point grid; `None` for Nyquist.
#[inline]
fn signed_mode(j: usize, n: usize) -> Option<f64> {
    let half = n / 2;
    if j == half {
        None
    } else if j < half {
        Some(j as f64)
    } else {
        Some(j as f64 - n as f64)
    }
}

/// Real samples of a periodic function on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSamples {
    values: Vec<f64>,
    period: f64,
}

impl PeriodicSamples {
    pub fn new(values: Vec<f64>, period: f64) -> Result<Self> {
        check_grid(values.len())?;
        check_period(period)?;
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(i));
        }
        Ok(PeriodicSamples { values, period })
    }

    /// Samples `f` at `j·period/n`.
    pub fn from_fn(n: usize, period: f64, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        check_grid(n)?;
        check_period(period)?;
        let h = period / n as f64;
        Self::new((0..n).map(|j| f(j as f64 * h)).collect(), period)
    }

    pub fn constant(n: usize, period: f64, value: f64) -> Result<Self> {
        Self::from_fn(n, period, |_| value)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.values.len() as f64
    }

    /// Parameter of sample `j`.
    pub fn param(&self, j: usize) -> f64 {
        j as f64 * self.spacing()
    }

    pub fn params(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |j| self.param(j))
    }

    /// Same grid, values mapped pointwise.
    pub fn map(&self, f: impl FnMut(f64) -> f64) -> Result<Self> {
        Self::new(self.values.iter().copied().map(f).collect(), self.period)
    }

    /// Pointwise combination of two functions on the same grid.
    pub fn zip_with(&self, other: &Self, mut f: impl FnMut(f64, f64) -> f64) -> Result<Self> {
        self.same_grid(other)?;
        Self::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            self.period,
        )
    }

    pub(crate) fn same_grid(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::GridMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        if (self.period - other.period).abs() > 1e-12 * self.period {
            return Err(Error::InvalidPeriod(other.period));
        }
        Ok(())
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Repeats the samples `k` times, giving the same function on `[0, k·P)`.
    pub fn tile(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("tile count must be positive"));
        }
        let mut values = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            values.extend_from_slice(&self.values);
        }
        Self::new(values, self.period * k as f64)
    }

    /// Equal-weight quadrature over one period.
    pub fn integral(&self) -> f64 {
        self.spacing() * self.values.iter().sum::<f64>()
    }

    pub fn derivative(&self, order: u8) -> Result<Self> {
        if !(1..=3).contains(&order) {
            return Err(Error::InvalidOrder(order));
        }
        let n = self.len();
        let omega = 2.0 * PI / self.period;
        let mut spec = fft::forward_real(&self.values);
        let floor = floor_of(&spec);
        for (j, c) in spec.iter_mut().enumerate() {
            *c = match signed_mode(j, n) {
                Some(m) if c.norm() > floor => *c * ik_pow(m * omega, order),
                _ => Complex64::new(0.0, 0.0),
            };
        }
        Self::new(fft::inverse_real(spec), self.period)
    }

    /// Zero-mean periodic antiderivative together with the mean value.
    ///
    /// The full antiderivative is `G(t) + mean·t + C`; `G` has zero mean.
    pub fn antiderivative(&self) -> Result<(Self, f64)> {
        let n = self.len();
        let omega = 2.0 * PI / self.period;
        let mut spec = fft::forward_real(&self.values);
        let mean = spec[0].re / n as f64;
        for (j, c) in spec.iter_mut().enumerate() {
            *c = match signed_mode(j, n) {
                Some(m) if m != 0.0 => *c / Complex64::new(0.0, m * omega),
                _ => Complex64::new(0.0, 0.0),
            };
        }
        Ok((Self::new(fft::inverse_real(spec), self.period)?, mean))
    }

    /// Trigonometric interpolant through the samples.
    pub fn fourier(&self) -> FourierSeries {
        let coeffs = fft::forward_real(&self.values);
        FourierSeries {
            floor: floor_of(&coeffs),
            coeffs,
            period: self.period,
        }
    }

    /// Spectral resampling onto an `n`-point grid over the same period.
    pub fn resample(&self, n: usize) -> Result<Self> {
        check_grid(n)?;
        let old = self.len();
        if n == old {
            return Ok(self.clone());
        }
        let spec = fft::forward_real(&self.values);
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); n];
        let keep = old.min(n) / 2;
        let scale = n as f64 / old as f64;
        for m in 0..keep {
            out[m] = spec[m] * scale;
            if m > 0 {
                out[n - m] = spec[old - m] * scale;
            }
        }
        Self::new(fft::inverse_real(out), self.period)
    }
}

/// `(i·w)^order`.
fn ik_pow(w: f64, order: u8) -> Complex64 {
    let mag = libm::pow(w, order as f64);
    match order % 4 {
        0 => Complex64::new(mag, 0.0),
        1 => Complex64::new(0.0, mag),
        2 => Complex64::new(-mag, 0.0),
        _ => Complex64::new(0.0, -mag),
    }
}

/// Spectral derivative of order 1..=3.
pub fn spectral_derivative(f: &PeriodicSamples, order: u8) -> Result<PeriodicSamples> {
    f.derivative(order)
}

/// `(P/N)·Σ f_j`.
pub fn periodic_integral(f: &PeriodicSamples) -> f64 {
    f.integral()
}

/// Fourier coefficients of a real sampled function, evaluable anywhere.
#[derive(Debug, Clone)]
pub struct FourierSeries {
    coeffs: Vec<Complex64>,
    floor: f64,
    period: f64,
}

impl FourierSeries {
    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Derivative of the given order (0..=3) of the interpolant at `t`.
    /// Derivatives drop the Nyquist mode, matching [`PeriodicSamples::derivative`].
    pub fn eval(&self, t: f64, order: u8) -> f64 {
        let n = self.coeffs.len();
        let omega = 2.0 * PI / self.period;
        let inv_n = 1.0 / n as f64;
        let step = Complex64::new(libm::cos(omega * t), libm::sin(omega * t));
        let mut phase = Complex64::new(1.0, 0.0);
        let mut acc = 0.0;
        for m in 1..n / 2 {
            phase *= step;
            // Re-anchor periodically to bound recurrence drift.
            if m % 64 == 0 {
                let a = omega * t * m as f64;
                phase = Complex64::new(libm::cos(a), libm::sin(a));
            }
            let c = self.coeffs[m];
            if order > 0 && c.norm() <= self.floor {
                continue;
            }
            let term = c * phase * ik_pow(m as f64 * omega, order);
            acc += 2.0 * term.re;
        }
        if order == 0 {
            acc += self.coeffs[0].re;
            let a = omega * t * (n / 2) as f64;
            acc += self.coeffs[n / 2].re * libm::cos(a);
        }
        acc * inv_n
    }
}

/// Spectral derivative of a sampled vector-valued function.
pub(crate) fn derivative_vec3(values: &[Vec3], period: f64, order: u8) -> Result<Vec<Vec3>> {
    let comps = split(values, period)?;
    let d: Result<Vec<PeriodicSamples>> = comps.iter().map(|c| c.derivative(order)).collect();
    Ok(join(&d?))
}

pub(crate) fn split(values: &[Vec3], period: f64) -> Result<[PeriodicSamples; 3]> {
    Ok([
        PeriodicSamples::new(values.iter().map(|v| v.x).collect(), period)?,
        PeriodicSamples::new(values.iter().map(|v| v.y).collect(), period)?,
        PeriodicSamples::new(values.iter().map(|v| v.z).collect(), period)?,
    ])
}

pub(crate) fn join(c: &[PeriodicSamples]) -> Vec<Vec3> {
    c[0].values()
        .iter()
        .zip(c[1].values())
        .zip(c[2].values())
        .map(|((&x, &y), &z)| Vec3::new(x, y, z))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TWO_PI: f64 = 2.0 * PI;

    fn max_err(a: &PeriodicSamples, f: impl Fn(f64) -> f64) -> f64 {
        a.params()
            .zip(a.values())
            .fold(0.0, |m, (t, v)| m.max((v - f(t)).abs()))
    }

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(
            PeriodicSamples::constant(15, 1.0, 0.0),
            Err(Error::InvalidGrid(15))
        );
        assert_eq!(
            PeriodicSamples::constant(8, 1.0, 0.0),
            Err(Error::InvalidGrid(8))
        );
        assert!(PeriodicSamples::constant(16, 0.0, 0.0).is_err());
        assert_eq!(
            PeriodicSamples::new(alloc::vec![f64::NAN; 16], 1.0),
            Err(Error::NonFiniteSample(0))
        );
    }

    #[test]
    fn derivative_of_sine_is_cosine() {
        let f = PeriodicSamples::from_fn(2048, TWO_PI, libm::sin).unwrap();
        let d = spectral_derivative(&f, 1).unwrap();
        assert!(max_err(&d, libm::cos) < 1e-12);
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let f = PeriodicSamples::constant(64, TWO_PI, 3.5).unwrap();
        for order in 1..=3 {
            assert!(spectral_derivative(&f, order).unwrap().max_abs() < 1e-14);
        }
    }

    #[test]
    fn third_derivative_of_sin3() {
        // d³/dθ³ sin 3θ = −27 cos 3θ
        let f = PeriodicSamples::from_fn(2048, TWO_PI, |t| libm::sin(3.0 * t)).unwrap();
        let d = spectral_derivative(&f, 3).unwrap();
        assert!(max_err(&d, |t| -27.0 * libm::cos(3.0 * t)) < 1e-10);
    }

    #[test]
    fn rejects_bad_order() {
        let f = PeriodicSamples::constant(16, 1.0, 0.0).unwrap();
        assert_eq!(f.derivative(0), Err(Error::InvalidOrder(0)));
        assert_eq!(f.derivative(4), Err(Error::InvalidOrder(4)));
    }

    #[test]
    fn non_unit_period_and_non_power_of_two_grid() {
        // period 6π, 3·2048 samples: d/dθ sin(θ/3) = cos(θ/3)/3
        let f = PeriodicSamples::from_fn(6144, 3.0 * TWO_PI, |t| libm::sin(t / 3.0)).unwrap();
        let d = f.derivative(1).unwrap();
        assert!(max_err(&d, |t| libm::cos(t / 3.0) / 3.0) < 1e-12);
    }

    #[test]
    fn integral_examples() {
        let s = PeriodicSamples::from_fn(2048, TWO_PI, libm::sin).unwrap();
        assert!(periodic_integral(&s).abs() < 1e-14);
        let one = PeriodicSamples::constant(2048, TWO_PI, 1.0).unwrap();
        assert!((periodic_integral(&one) - TWO_PI).abs() < 1e-13);
        // ∫ sin² over a period = [θ/2 − sin 2θ/4] = π
        let s2 = PeriodicSamples::from_fn(2048, TWO_PI, |t| libm::sin(t).powi(2)).unwrap();
        assert!((periodic_integral(&s2) - PI).abs() < 1e-13);
    }

    #[test]
    fn antiderivative_recovers_function() {
        let f = PeriodicSamples::from_fn(256, TWO_PI, |t| {
            2.0 + libm::cos(t) - 3.0 * libm::sin(4.0 * t)
        })
        .unwrap();
        let (g, mean) = f.antiderivative().unwrap();
        assert!((mean - 2.0).abs() < 1e-14);
        assert!(max_err(&g, |t| libm::sin(t) + 0.75 * libm::cos(4.0 * t)) < 1e-13);
    }

    #[test]
    fn fourier_series_interpolates_between_samples() {
        let f = PeriodicSamples::from_fn(64, TWO_PI, |t| libm::exp(libm::sin(t))).unwrap();
        let s = f.fourier();
        for &t in &[0.1234, 1.0, 3.3, 6.0] {
            let e = libm::exp(libm::sin(t));
            assert!((s.eval(t, 0) - e).abs() < 1e-12);
            assert!((s.eval(t, 1) - e * libm::cos(t)).abs() < 1e-10);
            let d2 = e * (libm::cos(t).powi(2) - libm::sin(t));
            assert!((s.eval(t, 2) - d2).abs() < 1e-9);
        }
    }

    #[test]
    fn resample_preserves_band_limited_functions() {
        let f = PeriodicSamples::from_fn(32, TWO_PI, |t| libm::cos(3.0 * t) + 0.5).unwrap();
        let g = f.resample(100).unwrap();
        assert!(max_err(&g, |t| libm::cos(3.0 * t) + 0.5) < 1e-13);
        let h = g.resample(32).unwrap();
        assert!(max_err(&h, |t| libm::cos(3.0 * t) + 0.5) < 1e-13);
    }

    proptest! {
        #[test]
        fn derivative_integrates_to_zero(
            coeffs in proptest::collection::vec(-1.0..1.0f64, 10),
            order in 1u8..=3,
        ) {
            let f = PeriodicSamples::from_fn(128, TWO_PI, |t| {
                coeffs.iter().enumerate().map(|(m, c)| c * libm::cos(m as f64 * t + *c)).sum()
            }).unwrap();
            prop_assert!(f.derivative(order).unwrap().integral().abs() < 1e-12);
        }
    }
}
