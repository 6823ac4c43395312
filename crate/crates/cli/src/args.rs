use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hyperan::features::OsculatingMode;
use hyperan::stqft::Window;

#[derive(Debug, Parser)]
#[command(
    name = "hyperan",
    version,
    about = "Hypercomplex representation of complex signals: generate, transform, analyse"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a worked example or a band-limited baseband
    Generate(GenerateArgs),
    /// Quaternion Fourier transform of a signal (or inverse of a spectrum)
    Qft(QftArgs),
    /// Hypercomplex representation z + o j of a complex signal
    Analytic(AnalyticArgs),
    /// Instantaneous envelope, phase, frequency and osculating normal
    Features(FeaturesArgs),
    /// Short-time QFT modulus spectrogram
    Stqft(StqftArgs),
    /// Run the built-in property checks and benchmark
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputOpts {
    /// Omit the timestamp line so identical runs give identical files
    #[arg(long)]
    pub deterministic: bool,
    /// Also render a line chart to this SVG file
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Worked example to generate
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3), required_unless_present = "baseband", conflicts_with = "baseband")]
    pub example: Option<u8>,
    /// Generate only the band-limited random baseband
    #[arg(long)]
    pub baseband: bool,
    /// PRNG seed
    #[arg(long, env = "HYPERAN_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Number of samples (default 1024, 4096 for example 3)
    #[arg(long)]
    pub n: Option<usize>,
    /// Baseband band edge in cycles per record
    #[arg(long, default_value_t = 16)]
    pub max_cycles: usize,
    /// Initial carrier frequency in cycles per record
    #[arg(long)]
    pub nu0: Option<f64>,
    /// Second carrier frequency for example 2 (default 2 nu0)
    #[arg(long)]
    pub nu1: Option<f64>,
    /// Switch times for example 2
    #[arg(long, default_value_t = 0.25)]
    pub t1: f64,
    #[arg(long, default_value_t = 0.75)]
    pub t2: f64,
    /// Sweep scale for example 3 (default nu0 / T)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Sweep half-duration T for example 3
    #[arg(long, default_value_t = 0.5)]
    pub width: f64,
    /// Initial carrier phase in radians (examples 2 and 3)
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    /// Output file for z(t) (or the baseband)
    #[arg(short, long)]
    pub output: PathBuf,
    /// Optional output for the quadrature signal o(t)
    #[arg(long, value_name = "PATH")]
    pub quadrature: Option<PathBuf>,
    /// Optional output for the envelope A(t)
    #[arg(long, value_name = "PATH")]
    pub envelope: Option<PathBuf>,
    /// Optional output for the carrier phase B(t)
    #[arg(long, value_name = "PATH")]
    pub phase: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Args)]
pub struct QftArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    /// Read a spectrum file and write the inverse transform as a quaternion signal
    #[arg(long)]
    pub inverse: bool,
    /// Use the direct O(N^2) sum instead of the FFT
    #[arg(long, conflicts_with = "inverse")]
    pub naive: bool,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// Output for the quaternion signal z_hat
    #[arg(short, long)]
    pub output: PathBuf,
    /// Optional output for the simplex part (the original signal)
    #[arg(long, value_name = "PATH")]
    pub simplex: Option<PathBuf>,
    /// Optional output for the perplex part o(t)
    #[arg(long, value_name = "PATH")]
    pub perplex: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    /// Complex signal, or a quaternion file written by `analytic`
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    /// Normal vector: frenet (r' x r'') or literal (r x r')
    #[arg(long, default_value_t = OsculatingMode::Frenet)]
    pub mode: OsculatingMode,
    /// Half-width of a least-squares derivative window (0 = central differences)
    #[arg(long, default_value_t = 0)]
    pub smooth: usize,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Args)]
pub struct StqftArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long, default_value_t = 128)]
    pub window_len: usize,
    #[arg(long, default_value_t = 32)]
    pub hop: usize,
    #[arg(long, default_value_t = Window::Hann)]
    pub window: Window,
    /// Keep all bins instead of the non-negative frequencies
    #[arg(long)]
    pub full: bool,
    /// Optional output for the per-frame ridge frequency
    #[arg(long, value_name = "PATH")]
    pub ridge: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, env = "HYPERAN_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Oracle sweep lengths: a range `a..b` (inclusive) or a comma list
    #[arg(long, default_value = "1..64")]
    pub sizes: String,
    /// Benchmark length
    #[arg(long, default_value_t = 4096)]
    pub bench_len: usize,
    /// Skip the benchmark
    #[arg(long)]
    pub no_bench: bool,
    /// Deliberately break a check to confirm the suite detects it
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}
