//! Seeded random families of valid inputs.

use std::f64::consts::TAU;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torsion_core::{
    base_from_kappa, lift, spacelike_check, BaseCurve, CurveSampler, GraphCurve, HeightFunction,
    Jet, MetricSignature, PeriodicSamples, Vec3,
};

/// Finite trigonometric polynomial `Σ (a_i cos w_i t + b_i sin w_i t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trig {
    pub terms: Vec<(f64, f64, f64)>,
}

impl Trig {
    /// Derivative of the given order at `t`.
    pub fn eval(&self, t: f64, order: u8) -> f64 {
        self.terms
            .iter()
            .map(|&(w, a, b)| {
                let (s, c) = (w * t).sin_cos();
                let k = w.powi(order as i32);
                // derivatives cycle cos → −sin → −cos → sin
                match order % 4 {
                    0 => k * (a * c + b * s),
                    1 => k * (-a * s + b * c),
                    2 => -k * (a * c + b * s),
                    _ => k * (a * s - b * c),
                }
            })
            .sum()
    }
}

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn coeff(&mut self, bound: f64) -> f64 {
        if bound == 0.0 {
            return 0.0;
        }
        self.rng.gen_range(-bound..bound)
    }

    /// Radius of curvature `1 + Σ_{m=2..5}` with `|a_m|, |b_m| < 0.25/m`, so
    /// `p ≥ 0.36` and the first harmonics vanish.
    pub fn radius_profile(&mut self) -> Trig {
        let terms = (2..=5).map(|m| {
            (
                m as f64,
                self.coeff(0.25 / m as f64),
                self.coeff(0.25 / m as f64),
            )
        });
        let mut terms: Vec<_> = terms.collect();
        terms.push((0.0, 1.0, 0.0));
        Trig { terms }
    }

    pub fn base(&mut self, samples: usize) -> BaseCurve {
        let p = self.radius_profile();
        let kappa0 = PeriodicSamples::from_fn(samples, TAU, |t| 1.0 / p.eval(t, 0)).expect("grid");
        base_from_kappa(kappa0).expect("closed by construction")
    }

    /// Height with frequencies `j/k`, `j = 1..=4`, and coefficients below
    /// `amp/j²`.
    pub fn height_profile(&mut self, winding: usize, amp: f64) -> Trig {
        let k = winding as f64;
        let terms = (1..=4)
            .map(|j| {
                let bound = amp / (j * j) as f64;
                (j as f64 / k, self.coeff(bound), self.coeff(bound))
            })
            .collect();
        Trig { terms }
    }

    pub fn height(&mut self, winding: usize, samples: usize, amp: f64) -> HeightFunction {
        let h = self.height_profile(winding, amp);
        HeightFunction::from_fn(winding, samples, |t| h.eval(t, 0)).expect("grid")
    }

    /// Random graph curve. Lorentzian draws are repeated until the lift is
    /// spacelike with a spacelike curvature vector.
    pub fn graph(&mut self, metric: MetricSignature, winding: usize, samples: usize) -> GraphCurve {
        loop {
            let base = self.base(samples);
            let amp = match metric {
                MetricSignature::Euclidean3 => 0.3,
                MetricSignature::Lorentz21 => 0.05,
            };
            let h = self.height(winding, samples, amp);
            let g = GraphCurve::new(base, h, metric).expect("matching grids");
            if metric == MetricSignature::Euclidean3 || is_spacelike(&g) {
                return g;
            }
        }
    }

    /// Closed analytic space curve: an ellipse-like loop plus random
    /// harmonics up to order 4 in every coordinate.
    pub fn closed_curve(&mut self, samples: usize) -> CurveSampler {
        let mut comps: [Trig; 3] = std::array::from_fn(|_| Trig { terms: Vec::new() });
        for (axis, comp) in comps.iter_mut().enumerate() {
            for m in 1..=4 {
                let bound = 0.5 / m as f64;
                comp.terms
                    .push((m as f64, self.coeff(bound), self.coeff(bound)));
            }
            if axis < 2 {
                let (a, b) = if axis == 0 { (1.0, 0.0) } else { (0.0, 1.0) };
                comp.terms.push((1.0, a, b));
            }
        }
        let comps = Arc::new(comps);
        CurveSampler::analytic(TAU, samples, true, move |t| {
            let v = |o| {
                Vec3::new(
                    comps[0].eval(t, o),
                    comps[1].eval(t, o),
                    comps[2].eval(t, o),
                )
            };
            Jet {
                pos: v(0),
                d1: v(1),
                d2: v(2),
                d3: v(3),
            }
        })
        .expect("grid")
    }
}

/// Both spacelike conditions on the closed-form bracket and on the lift.
pub fn is_spacelike(g: &GraphCurve) -> bool {
    let bracket_ok = g.bracket().map(|b| b.max() < 0.0).unwrap_or(false);
    bracket_ok
        && lift(g)
            .and_then(|c| spacelike_check(&c))
            .map(|flags| flags.iter().all(|f| f.both()))
            .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_derivatives_match_finite_differences() {
        let t = Trig {
            terms: vec![(2.0, 0.3, -0.2), (0.5, 1.0, 0.4)],
        };
        let h = 1e-5;
        for o in 0..3 {
            let fd = (t.eval(1.3 + h, o) - t.eval(1.3 - h, o)) / (2.0 * h);
            assert!((fd - t.eval(1.3, o + 1)).abs() < 1e-8);
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = Generator::new(7).radius_profile();
        let b = Generator::new(7).radius_profile();
        assert_eq!(a, b);
    }

    #[test]
    fn lorentz_graphs_are_spacelike() {
        let mut g = Generator::new(3);
        for _ in 0..3 {
            assert!(is_spacelike(&g.graph(MetricSignature::Lorentz21, 1, 256)));
        }
    }
}
