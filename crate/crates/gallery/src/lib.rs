//! Curve registry, run pipelines, report formats and the acceptance suite
//! behind the `torsion` command-line tool.

pub mod acceptance;
pub mod error;
pub mod random;
pub mod report;
pub mod runs;
pub mod spec;

pub use error::{GalleryError, Result, Stage};
pub use report::{emit, format_g17, Format, RunReport, SampleRow, Summary};
pub use runs::{
    run_counterexample, run_frenet, run_graph_torsion, run_kernel, run_koenigs, run_verify,
    Counterexample,
};
pub use spec::{CurveSpec, Metric, FAMILIES};
