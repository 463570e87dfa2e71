//! Command-line front end and the file writers it uses.
//!
//! Every run writes into `--output-dir` a `manifest.txt` echoing the
//! configuration and the summary metrics, plus the command's tables and
//! images:
//!
//! | command    | files                            |
//! |------------|----------------------------------|
//! | `simulate` | `frames.csv`, `heatmap.pgm`      |
//! | `spectrum` | `spectrum.csv`                   |
//! | `coeffs`   | (stdout only)                    |
//! | `paths`    | `paths.csv`                      |
//! | `converge` | `convergence.csv`                |

use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coin::{solve_coefficients, verify_unitarity_system, WalkParameters};
use crate::convergence::{run_refinement_on, RefinementStudy, DEFAULT_DOMAIN_LENGTH};
use crate::error::{Result, WalkError};
use crate::evolve::{build_evolution_matrix, simulate, Engine, SimulationRecord};
use crate::lattice::{InitMode, Spin, SpinorField};
use crate::pathsum::{enumerate_paths, PathAmplitude};
use crate::spectrum::{spectrum, unitarity_residual, SpectrumResult};

/// Largest acceptable probability drift for a `simulate` run.
pub const DRIFT_TOLERANCE: f64 = 1e-9;

pub const FRAMES_HEADER: &str = "t,x,prob_plus,prob_minus,prob_total";

#[derive(Debug, Parser)]
#[command(name = "gdewalk", version, about = "Generalized Dirac quantum walk on a periodic lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve the centered initial state and write frames and a heatmap.
    Simulate(SimulateArgs),
    /// Eigenvalues of the evolution operator from its momentum blocks.
    Spectrum(SpectrumArgs),
    /// Coin coefficients and unitarity residuals.
    Coeffs(WalkArgs),
    /// Brute-force path sum from a single excitation.
    Paths(PathsArgs),
    /// ε-refinement self-convergence study.
    Converge(ConvergeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WalkArgs {
    /// Mass term R = m·ε, in [0, 1].
    #[arg(long = "R", alias = "mass", default_value_t = 0.8, allow_hyphen_values = true)]
    pub mass: f64,
    /// Mixing angle ρ in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub rho: f64,
    #[arg(long, default_value = "gdewalk-out")]
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    Quarter,
    Normalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Stencil,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Normalization {
    /// Each row scaled by its own maximum.
    #[default]
    Frame,
    /// All rows scaled by the maximum over the whole run.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Format {
    Csv,
    Pgm,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Number of frames, the initial one included.
    #[arg(long, default_value_t = 300)]
    pub t: usize,
    #[arg(long, value_enum, default_value_t = InitArg::Quarter)]
    pub init: InitArg,
    #[arg(long, value_enum, default_value_t = EngineArg::Stencil)]
    pub engine: EngineArg,
    #[arg(long, value_enum, default_value_t = Normalization::Frame)]
    pub norm: Normalization,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Format::Csv, Format::Pgm])]
    pub formats: Vec<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpinArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Args)]
pub struct PathsArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Number of steps.
    #[arg(long, default_value_t = 3)]
    pub t: usize,
    #[arg(long, default_value_t = 0)]
    pub site: usize,
    #[arg(long, value_enum, default_value_t = SpinArg::Plus)]
    pub spin: SpinArg,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    /// Physical mass.
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub rho: f64,
    /// Physical final time.
    #[arg(long = "T", default_value_t = 1.0)]
    pub final_time: f64,
    #[arg(long, default_value_t = 64)]
    pub base_n: usize,
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    /// Physical domain length targeted by the coarsest lattice.
    #[arg(long, default_value_t = DEFAULT_DOMAIN_LENGTH)]
    pub domain_length: f64,
    #[arg(long, default_value = "gdewalk-out")]
    pub output_dir: PathBuf,
}

/// A validated run request.
#[derive(Debug, Clone)]
pub enum RunConfig {
    Simulate {
        params: WalkParameters,
        n: usize,
        t: usize,
        init: InitMode,
        engine: Engine,
        norm: Normalization,
        formats: Vec<Format>,
        output_dir: PathBuf,
    },
    Spectrum {
        params: WalkParameters,
        n: usize,
        output_dir: PathBuf,
    },
    Coeffs {
        params: WalkParameters,
        output_dir: PathBuf,
    },
    Paths {
        params: WalkParameters,
        n: usize,
        t: usize,
        site: usize,
        spin: Spin,
        output_dir: PathBuf,
    },
    Converge {
        m: f64,
        rho: f64,
        final_time: f64,
        base_n: usize,
        levels: usize,
        domain_length: f64,
        output_dir: PathBuf,
    },
}

impl RunConfig {
    pub fn from_command(cmd: Command) -> Result<Self> {
        Ok(match cmd {
            Command::Simulate(a) => {
                let mut formats = a.formats.clone();
                formats.dedup();
                Self::Simulate {
                    params: WalkParameters::new(a.walk.mass, a.walk.rho)?,
                    n: a.n,
                    t: a.t,
                    init: match a.init {
                        InitArg::Quarter => InitMode::Quarter,
                        InitArg::Normalized => InitMode::Normalized,
                    },
                    engine: match a.engine {
                        EngineArg::Stencil => Engine::Stencil,
                        EngineArg::Dense => Engine::Dense,
                    },
                    norm: a.norm,
                    formats,
                    output_dir: a.walk.output_dir,
                }
            }
            Command::Spectrum(a) => Self::Spectrum {
                params: WalkParameters::new(a.walk.mass, a.walk.rho)?,
                n: a.n,
                output_dir: a.walk.output_dir,
            },
            Command::Coeffs(a) => Self::Coeffs {
                params: WalkParameters::new(a.mass, a.rho)?,
                output_dir: a.output_dir,
            },
            Command::Paths(a) => Self::Paths {
                params: WalkParameters::new(a.walk.mass, a.walk.rho)?,
                n: a.n,
                t: a.t,
                site: a.site,
                spin: match a.spin {
                    SpinArg::Plus => Spin::Plus,
                    SpinArg::Minus => Spin::Minus,
                },
                output_dir: a.walk.output_dir,
            },
            Command::Converge(a) => Self::Converge {
                m: a.m,
                rho: a.rho,
                final_time: a.final_time,
                base_n: a.base_n,
                levels: a.levels,
                domain_length: a.domain_length,
                output_dir: a.output_dir,
            },
        })
    }

    pub fn output_dir(&self) -> &Path {
        match self {
            Self::Simulate { output_dir, .. }
            | Self::Spectrum { output_dir, .. }
            | Self::Coeffs { output_dir, .. }
            | Self::Paths { output_dir, .. }
            | Self::Converge { output_dir, .. } => output_dir,
        }
    }

    fn echo(&self) -> Vec<(String, String)> {
        let mut kv = Vec::new();
        let mut put = |k: &str, v: String| kv.push((k.to_string(), v));
        match self {
            Self::Simulate {
                params,
                n,
                t,
                init,
                engine,
                norm,
                formats,
                ..
            } => {
                put("command", "simulate".into());
                put("R", fmt_f64(params.mass()));
                put("rho", fmt_f64(params.rho()));
                put("n", n.to_string());
                put("t", t.to_string());
                put("init", format!("{init:?}").to_lowercase());
                put("engine", format!("{engine:?}").to_lowercase());
                put("norm", format!("{norm:?}").to_lowercase());
                put(
                    "formats",
                    formats.iter().map(|f| format!("{f:?}").to_lowercase()).collect::<Vec<_>>().join(","),
                );
            }
            Self::Spectrum { params, n, .. } => {
                put("command", "spectrum".into());
                put("R", fmt_f64(params.mass()));
                put("rho", fmt_f64(params.rho()));
                put("n", n.to_string());
            }
            Self::Coeffs { params, .. } => {
                put("command", "coeffs".into());
                put("R", fmt_f64(params.mass()));
                put("rho", fmt_f64(params.rho()));
            }
            Self::Paths {
                params, n, t, site, spin, ..
            } => {
                put("command", "paths".into());
                put("R", fmt_f64(params.mass()));
                put("rho", fmt_f64(params.rho()));
                put("n", n.to_string());
                put("t", t.to_string());
                put("site", site.to_string());
                put("spin", spin_name(*spin).into());
            }
            Self::Converge {
                m,
                rho,
                final_time,
                base_n,
                levels,
                domain_length,
                ..
            } => {
                put("command", "converge".into());
                put("m", fmt_f64(*m));
                put("rho", fmt_f64(*rho));
                put("T", fmt_f64(*final_time));
                put("base_n", base_n.to_string());
                put("levels", levels.to_string());
                put("domain_length", fmt_f64(*domain_length));
            }
        }
        kv
    }
}

/// Outcome of a run: what to print and what was written.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    /// Extra lines printed before the summary (used by `coeffs`).
    pub details: Vec<String>,
    pub summary: String,
    pub metrics: Vec<(String, String)>,
    pub files: Vec<PathBuf>,
}

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn spin_name(s: Spin) -> &'static str {
    match s {
        Spin::Plus => "plus",
        Spin::Minus => "minus",
    }
}

fn write_file(path: &Path, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| WalkError::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w).and_then(|_| w.flush()).map_err(|e| WalkError::io(path, e))
}

/// Plain-text grayscale image: width `n`, height = number of frames, time
/// increasing downward.
pub fn render_heatmap(record: &SimulationRecord, norm: Normalization) -> String {
    let width = record.frames.first().map_or(0, |f| f.len());
    let global = record.frames.iter().map(|f| f.max()).fold(0.0, f64::max);
    let mut out = format!("P2\n{} {}\n255\n", width, record.frames.len());
    for frame in &record.frames {
        let scale = match norm {
            Normalization::Global => global,
            Normalization::Frame => frame.max(),
        };
        let row: Vec<String> = frame
            .total
            .iter()
            .map(|&p| {
                if scale > 0.0 {
                    ((255.0 * p / scale).round() as u32).min(255).to_string()
                } else {
                    "0".to_string()
                }
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_heatmap(record: &SimulationRecord, path: &Path, norm: Normalization) -> Result<()> {
    if record.frames.is_empty() {
        return Err(WalkError::Parameter("cannot render an empty record".into()));
    }
    let image = render_heatmap(record, norm);
    write_file(path, |w| w.write_all(image.as_bytes()))
}

pub fn write_frames_csv(record: &SimulationRecord, path: &Path) -> Result<()> {
    write_file(path, |w| {
        writeln!(w, "{FRAMES_HEADER}")?;
        for (t, frame) in record.frames.iter().enumerate() {
            for x in 0..frame.len() {
                writeln!(
                    w,
                    "{t},{x},{},{},{}",
                    fmt_f64(frame.plus[x]),
                    fmt_f64(frame.minus[x]),
                    fmt_f64(frame.total[x])
                )?;
            }
        }
        Ok(())
    })
}

pub fn write_spectrum_csv(result: &SpectrumResult, path: &Path) -> Result<()> {
    let n = result.n as f64;
    write_file(path, |w| {
        writeln!(w, "k,theta,branch,re,im,modulus")?;
        for e in &result.eigenvalues {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                e.k,
                fmt_f64(std::f64::consts::TAU * e.k as f64 / n),
                e.branch,
                fmt_f64(e.value.re),
                fmt_f64(e.value.im),
                fmt_f64(e.value.norm())
            )?;
        }
        Ok(())
    })
}

pub fn write_paths_csv(paths: &[PathAmplitude], path: &Path) -> Result<()> {
    write_file(path, |w| {
        writeln!(w, "site,spin,re,im,path_count")?;
        for a in paths {
            writeln!(
                w,
                "{},{},{},{},{}",
                a.site,
                spin_name(a.spin),
                fmt_f64(a.amplitude.re),
                fmt_f64(a.amplitude.im),
                a.path_count
            )?;
        }
        Ok(())
    })
}

pub fn write_convergence_csv(study: &RefinementStudy, path: &Path) -> Result<()> {
    let order = study.estimated_order.map_or_else(|| "nan".to_string(), fmt_f64);
    write_file(path, |w| {
        writeln!(w, "epsilon,n,steps,error,fitted_order")?;
        for (level, err) in study.levels.iter().zip(&study.pairwise_errors) {
            writeln!(w, "{},{},{},{},{}", fmt_f64(level.epsilon), level.n, level.steps, fmt_f64(*err), order)?;
        }
        Ok(())
    })
}

fn write_manifest(config: &RunConfig, summary: &RunSummary, path: &Path) -> Result<()> {
    let mut text = String::new();
    for (k, v) in config.echo() {
        let _ = writeln!(text, "{k}={v}");
    }
    for (k, v) in &summary.metrics {
        let _ = writeln!(text, "{k}={v}");
    }
    for f in &summary.files {
        let _ = writeln!(text, "file={}", f.file_name().unwrap_or_default().to_string_lossy());
    }
    write_file(path, |w| w.write_all(text.as_bytes()))
}

/// Executes a validated configuration, writing all outputs.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    let dir = config.output_dir();
    fs::create_dir_all(dir).map_err(|e| WalkError::io(dir, e))?;

    let mut summary = match config {
        RunConfig::Simulate {
            params,
            n,
            t,
            init,
            engine,
            norm,
            formats,
            ..
        } => {
            let start = SpinorField::centered_initial_state(*n, *init)?;
            let record = simulate(params, *n, *t, &start, *engine)?;
            record.ensure_conserved(DRIFT_TOLERANCE)?;
            let mut files = Vec::new();
            if formats.contains(&Format::Csv) {
                let p = dir.join("frames.csv");
                write_frames_csv(&record, &p)?;
                files.push(p);
            }
            if formats.contains(&Format::Pgm) {
                let p = dir.join("heatmap.pgm");
                write_heatmap(&record, &p, *norm)?;
                files.push(p);
            }
            RunSummary {
                details: Vec::new(),
                summary: format!(
                    "simulate: n={} frames={} conservation_drift={:e}",
                    n, t, record.conservation_drift
                ),
                metrics: vec![
                    ("conservation_drift".into(), fmt_f64(record.conservation_drift)),
                    ("initial_probability".into(), fmt_f64(record.frames[0].sum)),
                ],
                files,
            }
        }
        RunConfig::Spectrum { params, n, .. } => {
            let coin = solve_coefficients(params)?;
            let result = spectrum(&coin, params, *n)?;
            let residual = unitarity_residual(&build_evolution_matrix(*n, &coin, params)?);
            let p = dir.join("spectrum.csv");
            write_spectrum_csv(&result, &p)?;
            RunSummary {
                details: result
                    .eigenvalues
                    .iter()
                    .map(|e| format!("k={} branch={} lambda={:+.12}{:+.12}i", e.k, e.branch, e.value.re, e.value.im))
                    .collect(),
                summary: format!(
                    "spectrum: {} eigenvalues max_modulus_deviation={:e} unitarity_residual={:e}",
                    result.eigenvalues.len(),
                    result.max_modulus_deviation,
                    residual
                ),
                metrics: vec![
                    ("eigenvalue_count".into(), result.eigenvalues.len().to_string()),
                    ("max_modulus_deviation".into(), fmt_f64(result.max_modulus_deviation)),
                    ("unitarity_residual".into(), fmt_f64(residual)),
                ],
                files: vec![p],
            }
        }
        RunConfig::Coeffs { params, .. } => {
            let coin = solve_coefficients(params)?;
            let report = verify_unitarity_system(&coin, params);
            let mut details = vec![
                format!("r1={}", fmt_f64(coin.r1)),
                format!("r2={}", fmt_f64(coin.r2)),
                format!("g1={}{:+e}i", fmt_f64(coin.g1.re), coin.g1.im),
                format!("g2={}{:+e}i", fmt_f64(coin.g2.re), coin.g2.im),
                format!("f1={}{:+e}i", fmt_f64(coin.f1.re), coin.f1.im),
                format!("f2={}{:+e}i", fmt_f64(coin.f2.re), coin.f2.im),
            ];
            details.extend(report.named().into_iter().map(|(k, v)| format!("{k}={v:e}")));
            let mut metrics = vec![("r1".into(), fmt_f64(coin.r1)), ("r2".into(), fmt_f64(coin.r2))];
            metrics.push(("max_residual".into(), fmt_f64(report.max())));
            RunSummary {
                details,
                summary: format!("coeffs: max_residual={:e}", report.max()),
                metrics,
                files: Vec::new(),
            }
        }
        RunConfig::Paths {
            params,
            n,
            t,
            site,
            spin,
            ..
        } => {
            let coin = solve_coefficients(params)?;
            let paths = enumerate_paths(&coin, params, *t, *n, *site, *spin)?;
            let p = dir.join("paths.csv");
            write_paths_csv(&paths, &p)?;
            let total: u64 = paths.iter().map(|a| a.path_count).sum();
            let prob: f64 = paths.iter().map(|a| a.amplitude.norm_sqr()).sum();
            RunSummary {
                details: Vec::new(),
                summary: format!("paths: {} outcomes from {} strings total_probability={}", paths.len(), total, prob),
                metrics: vec![
                    ("outcomes".into(), paths.len().to_string()),
                    ("strings".into(), total.to_string()),
                    ("total_probability".into(), fmt_f64(prob)),
                ],
                files: vec![p],
            }
        }
        RunConfig::Converge {
            m,
            rho,
            final_time,
            base_n,
            levels,
            domain_length,
            ..
        } => {
            let study = run_refinement_on(*m, *rho, *final_time, *base_n, *levels, *domain_length)?;
            let p = dir.join("convergence.csv");
            write_convergence_csv(&study, &p)?;
            let order = study.estimated_order.map_or("skipped".to_string(), |o| format!("{o:.6}"));
            let r2 = study.fit_r_squared.map_or("skipped".to_string(), |r| format!("{r:.6}"));
            RunSummary {
                details: Vec::new(),
                summary: format!("converge: fitted_order={order} r_squared={r2}"),
                metrics: vec![("fitted_order".into(), order), ("r_squared".into(), r2)],
                files: vec![p],
            }
        }
    };

    let manifest = dir.join("manifest.txt");
    write_manifest(config, &summary, &manifest)?;
    summary.files.push(manifest);
    Ok(summary)
}

/// Parses `std::env::args`, runs, and maps errors to exit codes: 2 for
/// usage errors (from clap), 1 for everything else.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match RunConfig::from_command(cli.command).and_then(|cfg| run(&cfg)) {
        Ok(summary) => {
            for line in &summary.details {
                println!("{line}");
            }
            println!("{}", summary.summary);
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
