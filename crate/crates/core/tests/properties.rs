//! Cross-module invariants on randomized convex bases and graph curves.

use std::f64::consts::PI;

use proptest::prelude::*;
use torsion_core::families;
use torsion_core::*;
use MetricSignature::*;

const TWO_PI: f64 = 2.0 * PI;
const N: usize = 1024;

/// `1/κ₀ = 1 + Σ_{m=2..4} (a_m cos mθ + b_m sin mθ)`; no first harmonics,
/// so the closure conditions hold exactly.
fn base_of(coeffs: &[(f64, f64)], n: usize) -> BaseCurve {
    let p = |t: f64| {
        1.0 + coeffs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let m = (i + 2) as f64;
                a * (m * t).cos() + b * (m * t).sin()
            })
            .sum::<f64>()
    };
    base_from_kappa(PeriodicSamples::from_fn(n, TWO_PI, |t| 1.0 / p(t)).unwrap()).unwrap()
}

/// Height with frequencies `j/k`, `j = 1..`, over `[0, 2πk)`.
fn height_of(coeffs: &[(f64, f64)], k: usize, n: usize) -> HeightFunction {
    HeightFunction::from_fn(k, n, |t| {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let w = (i + 1) as f64 / k as f64;
                a * (w * t).cos() + b * (w * t).sin()
            })
            .sum()
    })
    .unwrap()
}

fn base_coeffs() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-0.08..0.08f64, -0.08..0.08f64), 3)
}

fn height_coeffs(amp: f64) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-amp..amp, -amp..amp), 4)
}

fn lorentz_ok(g: &GraphCurve) -> bool {
    g.bracket().unwrap().max() < 0.0
        && spacelike_check(&lift(g).unwrap())
            .unwrap()
            .iter()
            .all(|f| f.both())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kernel_solution_is_positive(b in base_coeffs()) {
        let s = solve_kernel(&base_of(&b, N)).unwrap();
        prop_assert!(s.min_f > 0.0);
        prop_assert!(s.ode_residual < 1e-8, "residual {}", s.ode_residual);
        prop_assert!(s.route_gap < 1e-6);
    }

    #[test]
    fn identity_vanishes_and_torsion_changes_sign(
        b in base_coeffs(),
        h in height_coeffs(0.05),
        k in 1usize..=3,
        lorentz in any::<bool>(),
    ) {
        let metric = if lorentz { Lorentz21 } else { Euclidean3 };
        let base = base_of(&b, N);
        let s = solve_kernel(&base).unwrap();
        let g = GraphCurve::new(base, height_of(&h, k, N), metric).unwrap();
        prop_assume!(metric == Euclidean3 || lorentz_ok(&g));
        let r = weighted_identity(&g, &s).unwrap();
        prop_assert!(r.vanishes(1e-8), "relative identity {}", r.relative_identity());
        let bracket = g.bracket().unwrap();
        match metric {
            Euclidean3 => prop_assert!(bracket.min() > 0.0),
            Lorentz21 => prop_assert!(bracket.max() < 0.0),
        }
        prop_assert_eq!(theorem_verdict(&r), TheoremVerdict::ConsistentWithTheorem);
        if r.tau_max.abs().max(r.tau_min.abs()) > 1e-6 {
            prop_assert!(r.sign_changes >= 4, "{} sign changes", r.sign_changes);
            prop_assert_eq!(r.verdict, Verdict::MixedSign);
        }
    }

    #[test]
    fn graph_torsion_matches_frenet(
        b in base_coeffs(),
        h in height_coeffs(0.05),
        lorentz in any::<bool>(),
    ) {
        let metric = if lorentz { Lorentz21 } else { Euclidean3 };
        let g = GraphCurve::new(base_of(&b, N), height_of(&h, 1, N), metric).unwrap();
        prop_assume!(metric == Euclidean3 || lorentz_ok(&g));
        let closed_form = graph_torsion(&g).unwrap();
        let frenet = frenet_apparatus(&lift(&g).unwrap(), metric).unwrap();
        for (j, t) in frenet.tau.iter().enumerate() {
            if let Some(t) = t {
                prop_assert!((t - closed_form.values()[j]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn plane_curve_round_trip(b in base_coeffs()) {
        let base = base_of(&b, N);
        let again = base_from_plane_curve(&base.curve().unwrap()).unwrap();
        let err = base
            .kappa0()
            .zip_with(again.kappa0(), |a, b| a - b)
            .unwrap()
            .max_abs();
        prop_assert!(err < 1e-8, "round trip error {err}");
    }

    #[test]
    fn numerator_is_metric_independent(
        c in prop::collection::vec(-1.0..1.0f64, 6),
    ) {
        let curve = torsion_core::CurveSampler::analytic(TWO_PI, 256, true, move |t| {
            // d-th derivative of a·cos(m t)
            let f = |a: f64, m: f64, d: i32| a * m.powi(d) * (m * t + f64::from(d) * PI / 2.0).cos();
            let v = |d: i32| Vec3::new(
                f(1.0, 1.0, d) + f(c[0], 2.0, d),
                // cos(t + 3π/2) = sin t
                f(c[1], 3.0, d) + f(0.7, 1.0, d + 3),
                f(c[2], 1.0, d) + f(c[3], 2.0, d) + f(c[4], 4.0, d) + f(c[5], 5.0, d),
            );
            Jet { pos: v(0), d1: v(1), d2: v(2), d3: v(3) }
        })
        .unwrap();
        let e = triple_product(&curve, Euclidean3).unwrap();
        let l = triple_product(&curve, Lorentz21).unwrap();
        let scale = 1.0 + e.max_abs();
        for (a, b) in e.values().iter().zip(l.values()) {
            prop_assert!((a - b).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn rigid_planar_curves_have_zero_torsion(
        axis in (-1.0..1.0f64, -1.0..1.0f64, 0.2..1.0f64),
        angle in 0.0..PI,
        e in 0.3..1.0f64,
    ) {
        let u = Vec3::new(axis.0, axis.1, axis.2);
        let u = u / u.norm();
        let rot = move |v: Vec3| {
            // Rodrigues rotation about u
            let (s, c) = angle.sin_cos();
            v * c + u.cross(v) * s + u * (u.dot(v) * (1.0 - c))
        };
        let base = families::ellipse(1.0, e, 512).unwrap();
        let tilted = CurveSampler::analytic(TWO_PI, 512, true, move |t| {
            let j = base.jet_at(t);
            Jet { pos: rot(j.pos), d1: rot(j.d1), d2: rot(j.d2), d3: rot(j.d3) }
        })
        .unwrap();
        prop_assert!(plane_fit_residual(&tilted).unwrap() < 1e-10);
        let f = frenet_apparatus(&tilted, Euclidean3).unwrap();
        prop_assert!(f.defined_tau().all(|t| t.abs() < 1e-6));
    }
}

/// Spectral derivatives of the frame against the Frenet equations.
fn frenet_residual(c: &CurveSampler, m: MetricSignature, b_sign: f64) -> f64 {
    let f = frenet_apparatus(c, m).unwrap();
    assert!(f.all_defined());
    let comp = |v: &[Vec3], axis: usize| {
        PeriodicSamples::new(v.iter().map(|p| p.component(axis)).collect(), c.period()).unwrap()
    };
    let deriv = |v: &[Vec3]| -> Vec<Vec3> {
        let d: Vec<_> = (0..3).map(|a| comp(v, a).derivative(1).unwrap()).collect();
        (0..v.len())
            .map(|j| Vec3::new(d[0].values()[j], d[1].values()[j], d[2].values()[j]))
            .collect()
    };
    let (dt, dn, db) = (deriv(&f.tangent), deriv(&f.normal), deriv(&f.binormal));
    let mut worst: f64 = 0.0;
    for j in 0..f.len() {
        let (c, k, t) = (f.speed[j], f.kappa[j], f.tau[j].unwrap());
        let (tt, nn, bb) = (f.tangent[j], f.normal[j], f.binormal[j]);
        worst = worst
            .max((dt[j] - nn * (c * k)).norm())
            .max((dn[j] - (tt * (-k) + bb * t) * c).norm())
            .max((db[j] - nn * (b_sign * c * t)).norm());
    }
    worst
}

#[test]
fn frenet_equations_hold_on_analytic_curves() {
    let coil = families::torus_coil(2.0, 0.5, 3.0, 2048).unwrap();
    assert!(frenet_residual(&coil, Euclidean3, -1.0) < 1e-6);
    let graph = families::circle_graph(0.25, 3.0, 2048).unwrap();
    assert!(frenet_residual(&graph, Euclidean3, -1.0) < 1e-6);
    // with a timelike binormal the last equation reads B′ = +cτN
    let lorentz = families::circle_graph(0.1, 2.0, 2048).unwrap();
    assert!(frenet_residual(&lorentz, Lorentz21, 1.0) < 1e-6);
}

#[test]
fn frame_signature_tables() {
    let cases = [
        (
            families::torus_coil(2.0, 0.5, 3.0, 2048).unwrap(),
            Euclidean3,
            [1.0, 1.0, 1.0],
        ),
        (
            families::circle_graph(0.1, 2.0, 2048).unwrap(),
            Lorentz21,
            [1.0, 1.0, -1.0],
        ),
    ];
    for (c, m, diag) in cases {
        let f = frenet_apparatus(&c, m).unwrap();
        for j in 0..f.len() {
            let frame = [f.tangent[j], f.normal[j], f.binormal[j]];
            for a in 0..3 {
                for b in 0..3 {
                    let expect = if a == b { diag[a] } else { 0.0 };
                    assert!((metric_dot(frame[a], frame[b], m) - expect).abs() < 1e-8);
                }
            }
        }
    }
}

#[test]
fn winding_uses_one_period_of_base_curvature() {
    let base = base_of(&[(0.05, 0.0), (0.0, -0.04), (0.02, 0.01)], 512);
    let g = GraphCurve::new(base.clone(), height_of(&[(0.1, 0.0)], 3, 512), Euclidean3).unwrap();
    let k0 = g.kappa0_tiled();
    for j in 0..3 {
        assert_eq!(&k0.values()[j * 512..(j + 1) * 512], base.kappa0().values());
    }
}

#[test]
fn lorentz_projection_has_positive_curvature() {
    let g = GraphCurve::new(
        base_of(&[(0.05, 0.02), (0.0, 0.03), (0.0, 0.0)], N),
        height_of(&[(0.02, 0.0), (0.0, 0.03)], 1, N),
        Lorentz21,
    )
    .unwrap();
    assert!(lorentz_ok(&g));
    let pts: Vec<Vec3> = lift(&g)
        .unwrap()
        .positions()
        .unwrap()
        .iter()
        .map(|p| Vec3::new(p.x, p.y, 0.0))
        .collect();
    let projected = base_from_plane_curve(&CurveSampler::sampled(pts, TWO_PI).unwrap()).unwrap();
    assert!(projected.kappa0().min() > 0.0);
}
