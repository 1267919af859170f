//! The `fftp` command-line harness.
//!
//! Subcommands: `synth` writes a synthetic dataset, `align` aligns two
//! matrix CSV files, `reproduce` runs the four-variant benchmark, and
//! `metrics` compares two matrix CSV files. Every command that writes files
//! also writes a `manifest.txt` listing each file with its SHA-256.

pub mod config;
pub mod io;
pub mod manifest;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Result;
use crate::metrics::{cosine_correlation, rmse};
use crate::pipeline::{self, AlignConfig, ExperimentConfig};
use crate::synthgen::{BlobRanges, Interval};
use config::ConfigFile;
use io::OutputDir;
use manifest::RunManifest;

#[derive(Debug, Parser)]
#[command(
    name = "fftp",
    version,
    about = "FFT-Procrustes alignment of 2D separations images"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a target image, its distorted counterpart and the perturbed variants.
    Synth(ExperimentArgs),
    /// Align a distorted matrix CSV onto a target matrix CSV.
    Align(AlignArgs),
    /// Run the four-variant benchmark and write the figure grid and cosine table.
    Reproduce(ExperimentArgs),
    /// Cosine correlation and RMSE between two matrix CSV files.
    Metrics(MetricsArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct AlignFlags {
    /// Reduction factor of the total number of retained frequency coefficients.
    #[arg(long)]
    pub downsample: Option<f64>,
    /// Retained block width in bins (overrides --downsample on that axis).
    #[arg(long)]
    pub keep_w: Option<usize>,
    /// Retained block height in bins (overrides --downsample on that axis).
    #[arg(long)]
    pub keep_h: Option<usize>,
    /// Materialize the dense rotation through a full SVD (small problems only).
    #[arg(long)]
    pub explicit_operator: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    /// Number of Gaussian blobs in the target image.
    #[arg(long)]
    pub blobs: Option<usize>,
    /// Blending factor of the logarithmic distortion, in [0, 1].
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Master seed (falls back to the FFTP_SEED environment variable).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Noise standard deviation as a fraction of the image maximum.
    #[arg(long)]
    pub noise: Option<f64>,
    #[arg(long)]
    pub extra_peaks: Option<usize>,
    /// Multiplier applied to blob widths in the wider variant.
    #[arg(long)]
    pub widen: Option<f64>,
    #[arg(long)]
    pub sigma_min: Option<f64>,
    #[arg(long)]
    pub sigma_max: Option<f64>,
    #[arg(long)]
    pub amp_min: Option<f64>,
    #[arg(long)]
    pub amp_max: Option<f64>,
    #[command(flatten)]
    pub align: AlignFlags,
    /// key=value file supplying defaults for any flag not given.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value = "fftp-out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct AlignArgs {
    /// Target matrix CSV.
    #[arg(long)]
    pub target: PathBuf,
    /// Distorted matrix CSV.
    #[arg(long)]
    pub distorted: PathBuf,
    #[command(flatten)]
    pub align: AlignFlags,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value = "fftp-out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct MetricsArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Also write metrics.csv and a manifest here.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    path.map(ConfigFile::load)
        .transpose()
        .map(Option::unwrap_or_default)
}

fn resolve_align(flags: &AlignFlags, cfg: &ConfigFile) -> Result<AlignConfig> {
    let defaults = AlignConfig::default();
    Ok(AlignConfig {
        downsample_total_factor: cfg.resolve(
            flags.downsample,
            "downsample",
            defaults.downsample_total_factor,
        )?,
        keep_w: flags.keep_w.or(cfg.get("keep-w")?),
        keep_h: flags.keep_h.or(cfg.get("keep-h")?),
        explicit_operator: flags.explicit_operator
            || cfg.get("explicit-operator")?.unwrap_or(false),
    })
}

/// Merges flags, the optional config file and built-in defaults.
pub fn resolve_experiment(args: &ExperimentArgs) -> Result<ExperimentConfig> {
    let cfg = load_config(args.config.as_deref())?;
    let d = ExperimentConfig::default();
    let r = BlobRanges::default();
    Ok(ExperimentConfig {
        width: cfg.resolve(args.width, "width", d.width)?,
        height: cfg.resolve(args.height, "height", d.height)?,
        n_blobs: cfg.resolve(args.blobs, "blobs", d.n_blobs)?,
        alpha: cfg.resolve(args.alpha, "alpha", d.alpha)?,
        master_seed: config::resolve_seed(args.seed, &cfg, d.master_seed)?,
        noise_fraction: cfg.resolve(args.noise, "noise", d.noise_fraction)?,
        extra_peaks: cfg.resolve(args.extra_peaks, "extra-peaks", d.extra_peaks)?,
        widen_factor: cfg.resolve(args.widen, "widen", d.widen_factor)?,
        ranges: BlobRanges {
            sigma: Interval::new(
                cfg.resolve(args.sigma_min, "sigma-min", r.sigma.low)?,
                cfg.resolve(args.sigma_max, "sigma-max", r.sigma.high)?,
            ),
            amplitude: Interval::new(
                cfg.resolve(args.amp_min, "amp-min", r.amplitude.low)?,
                cfg.resolve(args.amp_max, "amp-max", r.amplitude.high)?,
            ),
        },
        align: resolve_align(&args.align, &cfg)?,
    })
}

fn record_align(m: &mut RunManifest, a: &AlignConfig) {
    m.set("config.downsample", a.downsample_total_factor);
    m.set(
        "config.keep_w",
        a.keep_w.map_or("auto".into(), |v| v.to_string()),
    );
    m.set(
        "config.keep_h",
        a.keep_h.map_or("auto".into(), |v| v.to_string()),
    );
    m.set("config.explicit_operator", a.explicit_operator);
}

fn record_experiment(m: &mut RunManifest, c: &ExperimentConfig) {
    m.set("config.width", c.width);
    m.set("config.height", c.height);
    m.set("config.blobs", c.n_blobs);
    m.set("config.alpha", c.alpha);
    m.set("config.seed", c.master_seed);
    m.set("config.noise", c.noise_fraction);
    m.set("config.extra_peaks", c.extra_peaks);
    m.set("config.widen", c.widen_factor);
    m.set("config.sigma_min", c.ranges.sigma.low);
    m.set("config.sigma_max", c.ranges.sigma.high);
    m.set("config.amp_min", c.ranges.amplitude.low);
    m.set("config.amp_max", c.ranges.amplitude.high);
    record_align(m, &c.align);
}

fn finish(mut manifest: RunManifest, out: &OutputDir) -> Result<()> {
    manifest.add_inventory(out);
    manifest.write(out.root())
}

pub fn cmd_synth(args: &ExperimentArgs) -> Result<()> {
    let config = resolve_experiment(args)?;
    let data = pipeline::build_dataset(&config)?;
    let mut out = OutputDir::create(&args.out_dir)?;

    out.write_matrix("target.csv", &data.target)?;
    out.write_png("target.png", &data.target)?;
    for (variant, image) in &data.shifted {
        let stem = match variant {
            pipeline::Variant::NoNoise => "distorted".to_string(),
            other => format!("distorted_{}", other.slug()),
        };
        out.write_matrix(&format!("{stem}.csv"), image)?;
        out.write_png(&format!("{stem}.png"), image)?;
    }
    out.write("blobs_target.csv", &io::blob_table_csv(&data.target_blobs))?;
    out.write(
        "blobs_distorted.csv",
        &io::blob_table_csv(&data.distorted_blobs),
    )?;
    out.write(
        "blobs_extra_peaks.csv",
        &io::blob_table_csv(&data.extra_blobs),
    )?;

    let mut manifest = RunManifest::new("synth");
    record_experiment(&mut manifest, &config);
    finish(manifest, &out)?;
    println!(
        "wrote {} files to {}",
        out.files().len(),
        out.root().display()
    );
    Ok(())
}

pub fn cmd_align(args: &AlignArgs) -> Result<()> {
    let cfg = load_config(args.config.as_deref())?;
    let align_cfg = resolve_align(&args.align, &cfg)?;
    let target = io::read_matrix_csv(&args.target)?;
    let distorted = io::read_matrix_csv(&args.distorted)?;
    let result = pipeline::align(&target, &distorted, &align_cfg)?;

    let mut out = OutputDir::create(&args.out_dir)?;
    out.write_matrix("aligned.csv", &result.aligned)?;
    out.write_png("aligned.png", &result.aligned)?;
    let rows = [
        ("cosine", io::format_value(result.cosine_vs_target)),
        ("scale", io::format_value(result.scale)),
        ("residual", io::format_value(result.residual)),
        ("imag_residue", io::format_value(result.imag_residue)),
        ("max_abs_real", io::format_value(result.max_abs_real)),
        ("vector_length", result.vector_length.to_string()),
    ];
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|(k, v)| vec![k.to_string(), v.clone()])
        .collect();
    out.write("metrics.csv", &io::table_csv(&["metric", "value"], &table))?;

    let mut manifest = RunManifest::new("align");
    manifest.set("input.target", args.target.display());
    manifest.set("input.distorted", args.distorted.display());
    record_align(&mut manifest, &align_cfg);
    manifest.set("keep_w", result.keep_w);
    manifest.set("keep_h", result.keep_h);
    manifest.set("vector_length", result.vector_length);
    finish(manifest, &out)?;
    println!("cosine,{:.4}", result.cosine_vs_target);
    Ok(())
}

pub fn cmd_reproduce(args: &ExperimentArgs) -> Result<()> {
    let config = resolve_experiment(args)?;
    let report = pipeline::run_experiment(&config)?;
    let mut out = OutputDir::create(&args.out_dir)?;

    let table = report.table();
    out.write("table_cos.csv", &io::cosine_table_csv(&table))?;

    let mut detail = vec![vec![
        "Original (self)".to_string(),
        io::format_value(report.self_cosine),
        io::format_value(1.0),
        io::format_value(0.0),
        io::format_value(0.0),
    ]];
    for v in &report.variants {
        detail.push(vec![
            v.variant.label().to_string(),
            io::format_value(v.result.cosine_vs_target),
            io::format_value(v.result.scale),
            io::format_value(v.result.residual),
            io::format_value(v.result.imag_residue),
        ]);
    }
    out.write(
        "report.csv",
        &io::table_csv(
            &["variant", "cosine", "scale", "residual", "imag_residue"],
            &detail,
        ),
    )?;

    out.write_matrix("target.csv", &report.target)?;
    out.write(
        "blobs_target.csv",
        &io::blob_table_csv(&report.target_blobs),
    )?;
    out.write(
        "blobs_distorted.csv",
        &io::blob_table_csv(&report.distorted_blobs),
    )?;
    for (row, v) in report.variants.iter().enumerate() {
        let slug = v.variant.slug();
        out.write_matrix(&format!("shifted_{slug}.csv"), &v.shifted)?;
        out.write_matrix(&format!("aligned_{slug}.csv"), &v.result.aligned)?;
        let r = row + 1;
        out.write_png(&format!("grid/r{r}_{slug}_1_original.png"), &report.target)?;
        out.write_png(&format!("grid/r{r}_{slug}_2_shifted.png"), &v.shifted)?;
        out.write_png(
            &format!("grid/r{r}_{slug}_3_aligned.png"),
            &v.result.aligned,
        )?;
    }

    let mut manifest = RunManifest::new("reproduce");
    record_experiment(&mut manifest, &config);
    if let Some(first) = report.variants.first() {
        manifest.set("vector_length", first.result.vector_length);
    }
    finish(manifest, &out)?;

    print!("{}", String::from_utf8_lossy(&io::cosine_table_csv(&table)));
    Ok(())
}

pub fn cmd_metrics(args: &MetricsArgs) -> Result<()> {
    let a = io::read_matrix_csv(&args.first)?;
    let b = io::read_matrix_csv(&args.second)?;
    if (a.width(), a.height()) != (b.width(), b.height()) {
        return Err(crate::Error::DimensionMismatch(format!(
            "{} is {}x{}, {} is {}x{}",
            args.first.display(),
            a.width(),
            a.height(),
            args.second.display(),
            b.width(),
            b.height()
        )));
    }
    let cosine = cosine_correlation(a.as_slice(), b.as_slice())?;
    let err = rmse(a.as_slice(), b.as_slice())?;
    let rows = vec![
        vec!["cosine".to_string(), io::format_value(cosine)],
        vec!["rmse".to_string(), io::format_value(err)],
    ];
    let csv = io::table_csv(&["metric", "value"], &rows);
    if let Some(dir) = &args.out_dir {
        let mut out = OutputDir::create(dir)?;
        out.write("metrics.csv", &csv)?;
        let mut manifest = RunManifest::new("metrics");
        manifest.set("input.first", args.first.display());
        manifest.set("input.second", args.second.display());
        finish(manifest, &out)?;
    }
    print!("{}", String::from_utf8_lossy(&csv));
    Ok(())
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Synth(args) => cmd_synth(args),
        Command::Align(args) => cmd_align(args),
        Command::Reproduce(args) => cmd_reproduce(args),
        Command::Metrics(args) => cmd_metrics(args),
    }
}

/// Parses process arguments, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("fftp: {e}");
            e.exit_code()
        }
    }
}
