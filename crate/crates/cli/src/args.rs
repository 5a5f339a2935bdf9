use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use quatpw::{ImaginaryUnit, Quaternion};

#[derive(Debug, Parser)]
#[command(name = "quatpw", version, about = "Band-limited and Hardy-space analysis of slice regular quaternionic functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a function synthesized from a spectrum.
    Synth(SynthArgs),
    /// Left-sided quaternion Fourier transform of line samples.
    Qft(QftArgs),
    /// Evaluate a sinc series (or the reproducing kernel) from samples.
    Reconstruct(ReconstructArgs),
    /// Run named verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Evaluate the Hardy-space reproducing kernel.
    KernelEval(KernelArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Compact or half-line spectrum JSON.
    #[arg(long, conflicts_with = "band")]
    pub spectrum: Option<PathBuf>,
    /// Generate a seeded random spectrum on [-A, A] instead of reading one.
    #[arg(long)]
    pub band: Option<f64>,
    /// Unit of the sampled slice (and of a generated spectrum).
    #[arg(long, value_parser = parse_unit)]
    pub unit: Option<ImaginaryUnit>,
    /// Half-width of the sampled line.
    #[arg(long, default_value_t = 20.0)]
    pub extent: f64,
    #[arg(long = "grid-step", default_value_t = 0.05)]
    pub grid_step: f64,
    /// Imaginary part of the sampled line for compact spectra; real part of
    /// the sampled vertical line for half-line spectra.
    #[arg(long, allow_negative_numbers = true)]
    pub offset: Option<f64>,
    /// Write samples at πk/A, |k| ≤ K, instead of a line grid.
    #[arg(long = "trunc-K")]
    pub trunc_k: Option<usize>,
    #[arg(long, default_value_t = quatpw::verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Also write the generated spectrum here.
    #[arg(long = "spectrum-out")]
    pub spectrum_out: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct QftArgs {
    /// Line samples; repeat for boundary traces on several units.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    /// Kernel unit; defaults to the unit carried by the samples, then i.
    #[arg(long, value_parser = parse_unit)]
    pub unit: Option<ImaginaryUnit>,
    /// Treat the inputs as Hardy boundary traces and check that their
    /// spectrum is unit-independent and supported on t ≤ 0.
    #[arg(long)]
    pub essential: bool,
    /// Cross-unit tolerance for --essential.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Relative spectral floor for the half-line support test.
    #[arg(long = "support-tol", default_value_t = 1e-6)]
    pub support_tol: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// SampleSet JSON.
    #[arg(long)]
    pub samples: PathBuf,
    /// JSON list of query points `[[w, x, y, z], ...]`.
    #[arg(long, conflicts_with = "at")]
    pub points: Option<PathBuf>,
    /// A single query point `w,x,y,z`.
    #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
    pub at: Option<Quaternion>,
    /// Declared strip bound M: queries need |im q| ≤ M.
    #[arg(long, default_value_t = quatpw::sampling::DEFAULT_STRIP)]
    pub strip: f64,
    /// Use at most this many terms on each side.
    #[arg(long = "trunc-K")]
    pub trunc_k: Option<usize>,
    /// Evaluate through the reproducing-kernel integral over the sample line.
    #[arg(long)]
    pub kernel: bool,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite names, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<String>,
    #[arg(long, default_value_t = quatpw::verify::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long = "trunc-K", default_value_t = quatpw::sampling::DEFAULT_TRUNCATION)]
    pub trunc_k: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true, requires = "q2", conflicts_with = "trace")]
    pub q1: Option<Quaternion>,
    #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
    pub q2: Option<Quaternion>,
    /// Boundary trace (line samples with a unit) to reproduce from.
    #[arg(long, requires = "at")]
    pub trace: Option<PathBuf>,
    #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
    pub at: Option<Quaternion>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {:?}", s));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|e| format!("{p:?}: {e}"))?;
    }
    Ok(out)
}

/// `x,y,z`, normalized.
pub fn parse_unit(s: &str) -> Result<ImaginaryUnit, String> {
    let [x, y, z] = parse_floats::<3>(s)?;
    ImaginaryUnit::normalized(x, y, z).map_err(|e| e.to_string())
}

/// `w,x,y,z`.
pub fn parse_quaternion(s: &str) -> Result<Quaternion, String> {
    let [w, x, y, z] = parse_floats::<4>(s)?;
    Ok(Quaternion::new(w, x, y, z))
}
