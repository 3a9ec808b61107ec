use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use torsion_gallery::acceptance;
use torsion_gallery::spec::{CurveSpec, Metric, FAMILIES, HEIGHTS};
use torsion_gallery::{
    emit, run_counterexample, run_frenet, run_graph_torsion, run_kernel, run_koenigs, run_verify,
    Counterexample, Format, GalleryError, RunReport,
};

/// Torsion of closed space curves: Frenet data, graph torsion, the
/// weighted total-torsion identity and closed constant-torsion curves.
#[derive(Parser)]
#[command(name = "torsion", version)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    out: Format,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    dest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frenet apparatus of a family curve (lifted by its height, if any).
    Frenet(SpecArgs),
    /// Closed-form torsion of a graph over a convex base curve.
    GraphTorsion(SpecArgs),
    /// Full pipeline: base, kernel, graph torsion, weighted identity, verdict.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Planarity tolerance on max |tau|.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Positive solution of f'' + f = 1/kappa0 for a convex base curve.
    Kernel(SpecArgs),
    /// Closed constant-torsion curve from the lifted beta curve.
    Koenigs {
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Torsion target; defaults to r.
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long, default_value_t = 2048)]
        samples: usize,
    },
    /// Convex-curvature graphs with one-signed torsion over invalid bases.
    Counterexample {
        #[arg(value_enum)]
        name: Counterexample,
        #[arg(long, default_value_t = 2048)]
        samples: usize,
    },
    /// Registered curve families.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
    /// Runs every acceptance criterion; exits nonzero on any failure.
    Selfcheck,
}

#[derive(Subcommand)]
enum GalleryAction {
    List,
}

#[derive(Args)]
struct SpecArgs {
    /// JSON curve spec; the flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    /// Family parameter as name=value; repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, f64)>,
    /// Height amp·sin(freq·t).
    #[arg(long, requires = "height_freq")]
    height_amp: Option<f64>,
    #[arg(long, requires = "height_amp")]
    height_freq: Option<f64>,
    #[arg(long, value_enum)]
    metric: Option<Metric>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    winding: Option<usize>,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or("expected name=value")?;
    let v: f64 = v.trim().parse().map_err(|e| format!("{v}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

impl SpecArgs {
    fn resolve(self) -> Result<CurveSpec, GalleryError> {
        let mut spec = match (&self.config, &self.family) {
            (Some(path), _) => CurveSpec::from_path(path)?,
            (None, Some(f)) => CurveSpec::new(f),
            (None, None) => return Err(GalleryError::Spec("give --config or --family".into())),
        };
        if let Some(f) = self.family {
            if f != spec.family {
                spec.family = f;
                spec.params.clear();
            }
        }
        spec.params.extend(self.params);
        if let (Some(amp), Some(freq)) = (self.height_amp, self.height_freq) {
            spec = spec.with_sine_height(amp, freq);
        }
        spec.metric = self.metric.unwrap_or(spec.metric);
        spec.samples = self.samples.unwrap_or(spec.samples);
        spec.winding = self.winding.unwrap_or(spec.winding);
        spec.validated()
    }
}

fn report(command: Command) -> Result<Option<RunReport>, GalleryError> {
    Ok(Some(match command {
        Command::Frenet(s) => run_frenet(&s.resolve()?)?,
        Command::GraphTorsion(s) => run_graph_torsion(&s.resolve()?)?,
        Command::Verify { spec, tol } => run_verify(&spec.resolve()?, tol)?,
        Command::Kernel(s) => run_kernel(&s.resolve()?)?,
        Command::Koenigs { r, tau, samples } => run_koenigs(r, tau, samples)?,
        Command::Counterexample { name, samples } => run_counterexample(name, samples)?,
        Command::Gallery {
            action: GalleryAction::List,
        } => {
            for f in FAMILIES.iter().chain(HEIGHTS) {
                let params: Vec<String> = f
                    .params
                    .iter()
                    .map(|(n, d)| d.map_or(n.to_string(), |d| format!("{n}={d}")))
                    .collect();
                println!("{:<14} [{}]  {}", f.name, params.join(", "), f.about);
            }
            return Ok(None);
        }
        Command::Selfcheck => unreachable!("handled in main"),
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Selfcheck = cli.command {
        let mut all = true;
        for r in (1..=10).filter_map(acceptance::run) {
            println!("{r}");
            all &= r.passed;
        }
        return if all {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        };
    }
    let outcome = report(cli.command)
        .and_then(|r| r.map_or(Ok(()), |r| emit(&r, cli.out, cli.dest.as_deref())));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::FAILURE
        }
    }
}
