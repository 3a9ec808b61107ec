use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

/// Pipeline stage that produced a core error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    GeometryCore,
    GraphCurve,
    KernelTheorem,
    ConstantTorsion,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::GeometryCore => "geometry-core",
            Stage::GraphCurve => "graph-curve",
            Stage::KernelTheorem => "kernel-theorem",
            Stage::ConstantTorsion => "constant-torsion",
        }
    }
}

#[derive(Debug, Error)]
pub enum GalleryError {
    #[error("invalid curve spec: {0}")]
    Spec(String),
    #[error("{}: {source}", stage.name())]
    Core {
        stage: Stage,
        #[source]
        source: torsion_core::Error,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl GalleryError {
    /// Machine-readable diagnostic for the CLI's error stream.
    pub fn diagnostic(&self) -> serde_json::Value {
        let (module, kind) = match self {
            GalleryError::Spec(_) => ("gallery-cli", "Spec".to_string()),
            GalleryError::Core { stage, source } => (stage.name(), variant_name(source)),
            GalleryError::Io { .. } => ("gallery-cli", "Io".to_string()),
            GalleryError::Json { .. } => ("gallery-cli", "Json".to_string()),
        };
        serde_json::json!({ "error": { "module": module, "kind": kind, "message": self.to_string() } })
    }
}

fn variant_name(e: &torsion_core::Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

pub type Result<T, E = GalleryError> = std::result::Result<T, E>;

/// Attaches a stage to core results.
pub(crate) trait AtStage<T> {
    fn at(self, stage: Stage) -> Result<T>;
}

impl<T> AtStage<T> for torsion_core::Result<T> {
    fn at(self, stage: Stage) -> Result<T> {
        self.map_err(|source| GalleryError::Core { stage, source })
    }
}
