use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "spectra",
    version,
    about = "Bound states of the inverse quartic-sextic radial potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies for one method (or all) over a range of ℓ.
    Spectrum(SpectrumArgs),
    /// Laguerre energies at fixed λ for increasing basis sizes.
    Converge(ConvergeArgs),
    /// Per-level fit of E(n, ℓ) = C₂(n)ℓ² − C₀(n).
    Fit(FitArgs),
    /// Sampled TRA wavefunctions.
    Wavefunction(WavefunctionArgs),
    /// TRA, Laguerre and FD energies side by side.
    Compare(SpectrumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Tra,
    Laguerre,
    Fd,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Unit,
    L2,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 7.0, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Clone, Args)]
pub struct EllRange {
    /// Single ℓ, or the start of the range when --ell-max is given.
    #[arg(long)]
    pub ell: Option<u32>,
    /// Last ℓ of the sweep (default 5 when --ell is absent).
    #[arg(long)]
    pub ell_max: Option<u32>,
}

impl EllRange {
    pub fn bounds(&self, default_max: u32) -> (u32, u32) {
        match (self.ell, self.ell_max) {
            (Some(l), None) => (l, l),
            (l, m) => (l.unwrap_or(0), m.unwrap_or(default_max)),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct LaguerreArgs {
    /// Laguerre scale λ.
    #[arg(long, default_value_t = 0.25, conflicts_with = "auto_lambda")]
    pub lambda: f64,
    /// Pick λ from the widest plateau of stable energies.
    #[arg(long)]
    pub auto_lambda: bool,
    /// Laguerre basis size.
    #[arg(long, default_value_t = 100)]
    pub size: usize,
    /// Gauss–Laguerre order for the overlap (default: the basis size).
    #[arg(long)]
    pub quad_order: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct FdArgs {
    /// Interior grid points M.
    #[arg(long = "grid-M", default_value_t = 1000)]
    pub grid_m: usize,
    /// Stencil half width k.
    #[arg(long, default_value_t = 8)]
    pub stencil_k: usize,
    /// Levels to compute (default: the TRA basis capacity).
    #[arg(long)]
    pub max_states: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub ells: EllRange,
    #[arg(long, value_enum, default_value_t = MethodArg::Tra)]
    pub method: MethodArg,
    #[command(flatten)]
    pub laguerre: LaguerreArgs,
    #[command(flatten)]
    pub fd: FdArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, default_value_t = 0)]
    pub ell: u32,
    #[arg(long, default_value_t = 0.25)]
    pub lambda: f64,
    /// Ascending basis sizes.
    #[arg(long, value_delimiter = ',', default_values_t = [30usize, 40, 50, 70, 100])]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub quad_order: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 15.0, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, default_value_t = 50)]
    pub ell_max: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, default_value_t = 3)]
    pub ell: u32,
    /// Levels to sample (default: every TRA level).
    #[arg(long, value_delimiter = ',')]
    pub levels: Vec<usize>,
    /// Smallest radius (default 0.05a).
    #[arg(long)]
    pub r_min: Option<f64>,
    /// Largest radius (default 20a).
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 400)]
    pub r_points: usize,
    #[arg(long, value_enum, default_value_t = NormArg::Unit)]
    pub normalize: NormArg,
    #[command(flatten)]
    pub output: OutputArgs,
}
