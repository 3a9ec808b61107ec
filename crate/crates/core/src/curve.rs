//! Parametrized curves with derivatives through order three.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::spectral::{self, check_grid, check_period, FourierSeries};
use crate::vector::Vec3;

/// Position and first three parameter derivatives at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub pos: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
}

type JetFn = dyn Fn(f64) -> Jet + Send + Sync;

#[derive(Clone)]
enum Mode {
    Analytic(Arc<JetFn>),
    Sampled(Arc<SampledData>),
}

struct SampledData {
    periodic: Vec<Vec3>,
    drift: Vec3,
    series: [FourierSeries; 3],
}

/// A curve on `[0, period)` evaluated on a uniform grid of `samples` points.
///
/// Analytic curves carry an exact jet closure and may be open arcs. Sampled
/// curves store positions on the grid and differentiate spectrally; their
/// periodic part may be offset by a linear drift `drift·t`, which is how an
/// antiderivative with nonzero mean (an open Koenigs curve) is represented.
/// A sampled curve is closed exactly when its drift is zero.
#[derive(Clone)]
pub struct CurveSampler {
    period: f64,
    samples: usize,
    closed: bool,
    mode: Mode,
}

impl fmt::Debug for CurveSampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveSampler")
            .field("period", &self.period)
            .field("samples", &self.samples)
            .field("closed", &self.closed)
            .field("analytic", &self.is_analytic())
            .finish()
    }
}

impl CurveSampler {
    pub fn analytic(
        period: f64,
        samples: usize,
        closed: bool,
        jet: impl Fn(f64) -> Jet + Send + Sync + 'static,
    ) -> Result<Self> {
        check_grid(samples)?;
        check_period(period)?;
        Ok(CurveSampler {
            period,
            samples,
            closed,
            mode: Mode::Analytic(Arc::new(jet)),
        })
    }

    /// Closed curve through `positions` at `j·period/N`.
    pub fn sampled(positions: Vec<Vec3>, period: f64) -> Result<Self> {
        Self::sampled_with_drift(positions, Vec3::ZERO, period)
    }

    /// Curve `periodic(t) + drift·t`.
    pub fn sampled_with_drift(periodic: Vec<Vec3>, drift: Vec3, period: f64) -> Result<Self> {
        check_period(period)?;
        let comps = spectral::split(&periodic, period)?;
        if !drift.is_finite() {
            return Err(Error::InvalidParameter("drift must be finite"));
        }
        let series = [comps[0].fourier(), comps[1].fourier(), comps[2].fourier()];
        Ok(CurveSampler {
            period,
            samples: periodic.len(),
            closed: drift == Vec3::ZERO,
            mode: Mode::Sampled(Arc::new(SampledData {
                periodic,
                drift,
                series,
            })),
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn is_analytic(&self) -> bool {
        matches!(self.mode, Mode::Analytic(_))
    }

    /// Linear drift of a sampled curve; zero for analytic curves.
    pub fn drift(&self) -> Vec3 {
        match &self.mode {
            Mode::Analytic(_) => Vec3::ZERO,
            Mode::Sampled(s) => s.drift,
        }
    }

    /// Same curve on a grid of `n` points. Sampled curves are resampled
    /// spectrally.
    pub fn with_samples(&self, n: usize) -> Result<Self> {
        check_grid(n)?;
        match &self.mode {
            Mode::Analytic(_) => Ok(CurveSampler {
                samples: n,
                ..self.clone()
            }),
            Mode::Sampled(s) => {
                let comps = spectral::split(&s.periodic, self.period)?;
                let r: Result<Vec<_>> = comps.iter().map(|c| c.resample(n)).collect();
                Self::sampled_with_drift(spectral::join(&r?), s.drift, self.period)
            }
        }
    }

    pub fn param(&self, j: usize) -> f64 {
        j as f64 * self.period / self.samples as f64
    }

    pub fn params(&self) -> Vec<f64> {
        (0..self.samples).map(|j| self.param(j)).collect()
    }

    /// Jets at every grid parameter.
    pub fn jets(&self) -> Result<Vec<Jet>> {
        match &self.mode {
            Mode::Analytic(f) => Ok((0..self.samples).map(|j| f(self.param(j))).collect()),
            Mode::Sampled(s) => {
                let d1 = spectral::derivative_vec3(&s.periodic, self.period, 1)?;
                let d2 = spectral::derivative_vec3(&s.periodic, self.period, 2)?;
                let d3 = spectral::derivative_vec3(&s.periodic, self.period, 3)?;
                Ok((0..self.samples)
                    .map(|j| Jet {
                        pos: s.periodic[j] + s.drift * self.param(j),
                        d1: d1[j] + s.drift,
                        d2: d2[j],
                        d3: d3[j],
                    })
                    .collect())
            }
        }
    }

    /// Jet at an arbitrary parameter (trigonometric interpolation for
    /// sampled curves).
    pub fn jet_at(&self, t: f64) -> Jet {
        match &self.mode {
            Mode::Analytic(f) => f(t),
            Mode::Sampled(s) => {
                let v = |order: u8| {
                    Vec3::new(
                        s.series[0].eval(t, order),
                        s.series[1].eval(t, order),
                        s.series[2].eval(t, order),
                    )
                };
                Jet {
                    pos: v(0) + s.drift * t,
                    d1: v(1) + s.drift,
                    d2: v(2),
                    d3: v(3),
                }
            }
        }
    }

    pub fn positions(&self) -> Result<Vec<Vec3>> {
        Ok(self.jets()?.into_iter().map(|j| j.pos).collect())
    }
}
