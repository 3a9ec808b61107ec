//! The ten acceptance criteria, each a deterministic check returning a
//! pass/fail line with the measured margins.

use std::fmt;

use torsion_core::koenigs::plane_projection;
use torsion_core::{
    base_from_kappa, base_from_plane_curve, beta_curve, binormal_spread, families,
    frenet_apparatus, graph_torsion, koenigs_curve, lift, min_self_distance, signed_area,
    solve_kernel, triple_product, vertical_lift, weighted_identity, Error, GraphCurve,
    MetricSignature, PeriodicSamples,
};
use MetricSignature::*;

use crate::random::Generator;
use crate::runs::{counterexample_margins, Counterexample};

pub const N: usize = 2048;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{status}] criterion {:>2} {}: {}",
            self.id, self.title, self.detail
        )
    }
}

fn result(id: u8, title: &'static str, passed: bool, detail: String) -> CriterionResult {
    CriterionResult {
        id,
        title,
        passed,
        detail,
    }
}

/// Runs one criterion by number.
pub fn run(id: u8) -> Option<CriterionResult> {
    Some(match id {
        1 => kernel_positivity(),
        2 => weighted_identity_vanishes(),
        3 => torsion_changes_sign(),
        4 => counterexamples(),
        5 => hypothesis_enforcement(),
        6 => constant_torsion_curves(),
        7 => signed_area_lemma(),
        8 => rigidity_trend(),
        9 => metric_sign_invariance(),
        10 => cross_validation(),
        _ => return None,
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=10).filter_map(run).collect()
}

fn kernel_positivity() -> CriterionResult {
    let unit = base_from_kappa(PeriodicSamples::constant(N, std::f64::consts::TAU, 1.0).unwrap())
        .and_then(|b| solve_kernel(&b));
    let unit_dev = unit
        .map(|s| s.f.map(|v| v - 1.0).unwrap().max_abs())
        .unwrap_or(f64::INFINITY);
    let mut gen = Generator::new(0x6b65726e);
    let (mut worst_res, mut worst_gap, mut min_f) = (0.0f64, 0.0f64, f64::INFINITY);
    let mut failures = 0;
    for _ in 0..50 {
        match solve_kernel(&gen.base(N)) {
            Ok(s) => {
                worst_res = worst_res.max(s.ode_residual);
                worst_gap = worst_gap.max(s.route_gap);
                min_f = min_f.min(s.min_f);
            }
            Err(_) => failures += 1,
        }
    }
    let passed =
        unit_dev < 1e-10 && failures == 0 && worst_res < 1e-8 && min_f > 0.0 && worst_gap < 1e-6;
    result(
        1,
        "kernel solution",
        passed,
        format!(
            "unit circle |f-1| = {unit_dev:.1e}; 50 bases: max residual {worst_res:.1e}, \
             min f {min_f:.3}, max route gap {worst_gap:.1e}, errors {failures}"
        ),
    )
}

/// `(relative identity, sign changes, max |τ|)` of one graph curve.
fn identity_of(g: &GraphCurve) -> Result<(f64, usize, f64), Error> {
    let s = solve_kernel(&g.base)?;
    let r = weighted_identity(g, &s)?;
    Ok((
        r.relative_identity(),
        r.sign_changes,
        r.tau_max.abs().max(r.tau_min.abs()),
    ))
}

fn random_graphs(seed: u64, cases: &[(MetricSignature, usize, usize)]) -> Vec<GraphCurve> {
    let mut gen = Generator::new(seed);
    cases
        .iter()
        .flat_map(|&(m, k, count)| (0..count).map(move |_| (m, k)))
        .map(|(m, k)| gen.graph(m, k, N))
        .collect()
}

fn weighted_identity_vanishes() -> CriterionResult {
    let groups = [
        ("euclidean k=1", vec![(Euclidean3, 1, 50)]),
        ("lorentz k=1", vec![(Lorentz21, 1, 20)]),
        (
            "winding k=2,3",
            vec![(Euclidean3, 2, 5), (Euclidean3, 3, 5)],
        ),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (i, (name, cases)) in groups.iter().enumerate() {
        let mut worst = 0.0f64;
        for g in random_graphs(0x1d00 + i as u64, cases) {
            match identity_of(&g) {
                Ok((rel, _, _)) => worst = worst.max(rel),
                Err(_) => worst = f64::INFINITY,
            }
        }
        passed &= worst <= 1e-8;
        parts.push(format!("{name}: max |I|/∫|integrand| = {worst:.1e}"));
    }
    result(
        2,
        "weighted total-torsion identity",
        passed,
        parts.join("; "),
    )
}

fn torsion_changes_sign() -> CriterionResult {
    let mut graphs = random_graphs(
        0x5167,
        &[
            (Euclidean3, 1, 30),
            (Lorentz21, 1, 10),
            (Euclidean3, 2, 3),
            (Euclidean3, 3, 3),
        ],
    );
    // flat graphs must come out planar
    let mut gen = Generator::new(0xf1a7);
    for m in [Euclidean3, Lorentz21] {
        graphs.push(GraphCurve::new(gen.base(N), gen.height(1, N, 0.0), m).unwrap());
    }
    let (mut planar, mut min_changes, mut bad) = (0, usize::MAX, 0);
    for g in &graphs {
        match identity_of(g) {
            Ok((_, changes, size)) if size < 1e-6 => planar += usize::from(changes == 0),
            Ok((_, changes, _)) => {
                min_changes = min_changes.min(changes);
                bad += usize::from(changes < 4);
            }
            Err(_) => bad += 1,
        }
    }
    result(
        3,
        "torsion changes sign",
        bad == 0,
        format!(
            "{} curves: {planar} planar, min sign changes among the rest {min_changes}, \
             violations {bad}",
            graphs.len()
        ),
    )
}

fn counterexamples() -> CriterionResult {
    let mut passed = true;
    let mut parts = Vec::new();
    for which in [
        Counterexample::HypotrochoidGraph,
        Counterexample::EpitrochoidGraph,
    ] {
        match (
            counterexample_margins(which, N),
            counterexample_margins(which, 2 * N),
        ) {
            (Ok(a), Ok(b)) => {
                let drift = (a.tau_min - b.tau_min).abs() / a.tau_min.abs();
                passed &= a.holds() && b.holds() && drift < 0.01;
                parts.push(format!(
                    "{}: min kappa {:.4}, min tau {:.5} (N={N}) vs {:.5} (N={}), drift {drift:.1e}",
                    which.name(),
                    a.kappa_min,
                    a.tau_min,
                    b.tau_min,
                    2 * N
                ));
            }
            (Err(e), _) | (_, Err(e)) => {
                passed = false;
                parts.push(format!("{}: {e}", which.name()));
            }
        }
    }
    result(4, "counterexamples reproduce", passed, parts.join("; "))
}

fn hypothesis_enforcement() -> CriterionResult {
    let outcome = |which: Counterexample| match which.base(N) {
        Ok(c) => base_from_plane_curve(&c).err(),
        Err(_) => None,
    };
    let hypo = outcome(Counterexample::HypotrochoidGraph);
    let epi = outcome(Counterexample::EpitrochoidGraph);
    let passed =
        matches!(hypo, Some(Error::NonConvex(_))) && matches!(epi, Some(Error::NotSimple { .. }));
    let show = |e: &Option<Error>| {
        e.as_ref()
            .map_or("accepted".to_string(), |e| format!("{e:?}"))
    };
    result(
        5,
        "hypothesis enforcement",
        passed,
        format!(
            "hypotrochoid base: {}; epitrochoid base: {}",
            show(&hypo),
            show(&epi)
        ),
    )
}

fn constant_torsion_curves() -> CriterionResult {
    let mut passed = true;
    let mut parts = Vec::new();
    for r in [1.0, 0.5, 0.25] {
        let run = || -> Result<(bool, String), Error> {
            let b = vertical_lift(beta_curve(r, N)?)?;
            let k = koenigs_curve(&b, r)?;
            let sd = k.tau_stdev().unwrap_or(f64::INFINITY);
            let (sign, mismatch) = k.binormal_mismatch(&b)?;
            let ok = k.closure_defect.norm() < 1e-6
                && k.frenet.all_defined()
                && sd < 1e-6 * r
                && mismatch < 1e-6
                && k.kappa_min > 0.0;
            let line = format!(
                "r={r}: |defect| {:.1e}, tau stdev {sd:.1e}, binormal {}B to {mismatch:.1e}, \
                 min kappa {:.3}",
                k.closure_defect.norm(),
                if sign > 0.0 { "+" } else { "-" },
                k.kappa_min
            );
            Ok((ok, line))
        };
        match run() {
            Ok((ok, s)) => {
                passed &= ok;
                parts.push(s);
            }
            Err(e) => {
                passed = false;
                parts.push(format!("r={r}: {e}"));
            }
        }
    }
    result(
        6,
        "closed constant-torsion curves",
        passed,
        parts.join("; "),
    )
}

fn signed_area_lemma() -> CriterionResult {
    let mut passed = true;
    let mut parts = Vec::new();
    for r in [1.0, 0.5, 0.25] {
        let run = || -> Result<(f64, f64), Error> {
            let beta = beta_curve(r, N)?;
            let area = signed_area(&beta)?;
            let b = vertical_lift(&beta)?;
            let k = koenigs_curve(&b, r)?;
            let projected = signed_area(b.projection()?)?;
            Ok((area, (k.closure_defect.z - projected / r).abs()))
        };
        match run() {
            Ok((area, gap)) => {
                passed &= area.abs() < 1e-10 && gap < 1e-10;
                parts.push(format!("r={r}: area {area:.1e}, defect_z gap {gap:.1e}"));
            }
            Err(e) => {
                passed = false;
                parts.push(format!("r={r}: {e}"));
            }
        }
    }
    result(7, "signed-area lemma", passed, parts.join("; "))
}

fn rigidity_trend() -> CriterionResult {
    let run = || -> Result<(Vec<f64>, f64), Error> {
        let mut spreads = Vec::new();
        let mut last = None;
        for r in [1.0, 0.5, 0.25, 0.125] {
            let k = koenigs_curve(&vertical_lift(beta_curve(r, N)?)?, r)?;
            spreads.push(binormal_spread(&k.curve)?);
            last = Some(k.curve);
        }
        let d = min_self_distance(&plane_projection(&last.expect("four radii"))?)?;
        Ok((spreads, d))
    };
    match run() {
        Ok((s, d)) => {
            let decreasing = s.windows(2).all(|w| w[1] < w[0]);
            result(
                8,
                "rigidity trend",
                decreasing && d < 1e-2,
                format!(
                    "binormal spread {:.4} > {:.4} > {:.4} > {:.4}; \
                     min self-distance of the r=1/8 projection {d:.1e}",
                    s[0], s[1], s[2], s[3]
                ),
            )
        }
        Err(e) => result(8, "rigidity trend", false, e.to_string()),
    }
}

fn metric_sign_invariance() -> CriterionResult {
    let mut gen = Generator::new(0x5197);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let c = gen.closed_curve(N);
        match (
            triple_product(&c, Euclidean3),
            triple_product(&c, Lorentz21),
        ) {
            (Ok(e), Ok(l)) => {
                let gap = e.zip_with(&l, |a, b| a - b).map(|d| d.max_abs());
                worst = worst.max(gap.unwrap_or(f64::INFINITY));
            }
            _ => worst = f64::INFINITY,
        }
    }
    result(
        9,
        "metric-sign invariance",
        worst < 1e-12,
        format!("20 curves: max |numerator difference| {worst:.1e}"),
    )
}

fn cross_validation() -> CriterionResult {
    let graphs = random_graphs(0xc405, &[(Euclidean3, 1, 25), (Lorentz21, 1, 25)]);
    let mut worst = 0.0f64;
    for g in &graphs {
        let gap = (|| -> Result<f64, Error> {
            let closed = graph_torsion(g)?;
            let f = frenet_apparatus(&lift(g)?, g.metric)?;
            Ok(f.tau
                .iter()
                .zip(closed.values())
                .map(|(a, b)| a.map_or(f64::INFINITY, |a| (a - b).abs()))
                .fold(0.0, f64::max))
        })();
        worst = worst.max(gap.unwrap_or(f64::INFINITY));
    }
    let mut helix_worst = 0.0f64;
    for (a, b) in [(1.0, 1.0), (2.0, 1.0), (1.0, 3.0)] {
        let expect = b / (a * a + b * b);
        let dev = families::helix(a, b, N)
            .and_then(|c| frenet_apparatus(&c, Euclidean3))
            .map(|f| {
                f.tau
                    .iter()
                    .map(|t| t.map_or(f64::INFINITY, |t| (t - expect).abs()))
                    .fold(0.0, f64::max)
            })
            .unwrap_or(f64::INFINITY);
        helix_worst = helix_worst.max(dev);
    }
    result(
        10,
        "cross-validation",
        worst < 1e-6 && helix_worst < 1e-9,
        format!(
            "50 graphs: max |graph tau - Frenet tau| {worst:.1e}; helix max |tau - b/(a^2+b^2)| \
             {helix_worst:.1e}"
        ),
    )
}
