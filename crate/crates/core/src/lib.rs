//! Numerics for the torsion of closed space curves.
//!
//! The crate is `no_std` (it needs `alloc`) and pure: every value is
//! immutable after construction and every operation is a function of its
//! inputs. Curves are handled in Euclidean 3-space and in Lorentzian
//! 3-space with quadratic form `x² + y² − t²`.
//!
//! Layout:
//!
//! * [`vector`], [`fft`], [`spectral`]: metric-aware vectors and calculus on
//!   uniformly sampled periodic functions.
//! * [`curve`], [`frenet`]: parametrized curves with derivatives through
//!   order three and their Frenet apparatus.
//! * [`graph`]: convex base curves parametrized by tangent angle, height
//!   functions and the closed-form torsion of graphs over them.
//! * [`kernel`]: the positive periodic solution of `f″ + f = 1/κ₀` and the
//!   weighted total-torsion identity.
//! * [`koenigs`]: closed constant-torsion curves built from a prescribed
//!   binormal indicatrix.
//! * [`families`], [`polyline`]: analytic test curves and sampled-chain
//!   geometry (self-intersection, self-distance, signed area).
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod curve;
pub mod error;
pub mod families;
pub mod fft;
pub mod frenet;
pub mod graph;
pub mod kernel;
pub mod koenigs;
pub mod polyline;
pub mod spectral;
pub mod vector;

pub use curve::{CurveSampler, Jet};
pub use error::{Error, Result};
pub use frenet::{
    frenet_apparatus, frenet_apparatus_with, plane_fit_residual, torsion_sign_numerator,
    triple_product, FrenetData, KAPPA_MIN,
};
pub use graph::{
    base_from_kappa, base_from_plane_curve, graph_torsion, lift, spacelike_check, BaseCurve,
    GraphCurve, HeightFunction, SpacelikeFlags, CLOSURE_TOL,
};
pub use kernel::{
    sign_change_count, solve_kernel, theorem_verdict, weighted_identity, IdentityReport,
    KernelSolution, TheoremVerdict, Verdict, WeightSign,
};
pub use koenigs::{
    beta_curve, binormal_spread, koenigs_curve, min_self_distance, signed_area, vertical_lift,
    BetaCurve, KoenigsResult, SphericalCurve,
};
pub use spectral::{periodic_integral, spectral_derivative, PeriodicSamples, DEFAULT_SAMPLES};
pub use vector::{metric_cross, metric_dot, MetricSignature, Vec3};
