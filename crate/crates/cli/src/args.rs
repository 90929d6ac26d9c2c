use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mlumbral", version, about = "Mittag-Leffler functions, fractional PDEs and photon statistics")]
pub struct Cli {
    /// key=value file supplying defaults for any long flag; flags given on
    /// the command line take precedence
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a special function and print `value=<v> est_error=<e>`
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Truncated semigroup sum E(x ⊕ y), to compare with E(x)E(y)
    #[command(allow_negative_numbers = true)]
    Compose(ComposeArgs),
    /// Closed-form Mittag-Leffler integrals
    #[command(allow_negative_numbers = true)]
    Integrate(IntegrateArgs),
    /// Solve a time-fractional PDE for the initial condition e^{-x²} and write a CSV grid
    #[command(allow_negative_numbers = true)]
    Pde(PdeArgs),
    /// Write a photon-count distribution table
    #[command(allow_negative_numbers = true)]
    Dist(DistArgs),
    /// Write the data behind one of the four figure families as tidy CSV
    #[command(allow_negative_numbers = true)]
    Figures(FigureArgs),
}

pub fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not a finite number"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFunction {
    /// E_{α,β}(x)
    Ml,
    /// W_α^{(μ)}(x)
    Wright,
    /// Σ x^r/(r!)²
    Laguerre,
    /// e_s^{(α,β)}(x)
    Esab,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: EvalFunction,
    #[arg(long, value_parser = finite)]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = finite, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, value_parser = finite)]
    pub x: Option<f64>,
    #[arg(long, value_parser = finite, default_value_t = 0.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 0)]
    pub s: u32,
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    #[arg(long, value_parser = finite)]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = finite, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, value_parser = finite)]
    pub x: Option<f64>,
    #[arg(long, value_parser = finite)]
    pub y: Option<f64>,
    #[arg(long, default_value_t = 60)]
    pub n_max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntegralKind {
    /// ∫ E_{α,β}(-x²) dx over the real line
    Gaussian,
    /// ∫₀^∞ E_{α,1}(-x^γ) dx
    Stretched,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[arg(value_enum)]
    pub kind: IntegralKind,
    #[arg(long, value_parser = finite)]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = finite, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, value_parser = finite)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PdeKind {
    /// ∂_t^α F = ∂_x² F on a periodic grid
    Diffusion,
    /// The drift problem with coefficients a and b
    Drift,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_parser = finite)]
    pub x_min: Option<f64>,
    #[arg(long, value_parser = finite)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PdeArgs {
    #[arg(value_enum)]
    pub kind: PdeKind,
    #[arg(long, value_parser = finite)]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = finite)]
    pub t: Option<f64>,
    #[arg(long, value_parser = finite)]
    pub a: Option<f64>,
    #[arg(long, value_parser = finite)]
    pub b: Option<f64>,
    /// Admit diffusion orders in (2, 4]
    #[arg(long)]
    pub experimental: bool,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistVariant {
    Schrodinger,
    Laskin,
    Hermitian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(value_enum)]
    pub variant: DistVariant,
    #[arg(long, value_parser = finite)]
    pub alpha: Option<f64>,
    /// X = (Ωt^α)² for the schrodinger and hermitian variants
    #[arg(long, value_parser = finite)]
    pub x: Option<f64>,
    /// Λ = Ωt^α for the laskin variant
    #[arg(long, value_parser = finite)]
    pub lambda: Option<f64>,
    /// Ω, used with --t when the intensity is not given directly
    #[arg(long, value_parser = finite)]
    pub omega: Option<f64>,
    #[arg(long, value_parser = finite)]
    pub t: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also draw this many seeded samples
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Fractional diffusion profiles for each (α, t)
    Fig1,
    /// Drift-problem profiles for each α
    Fig2,
    /// Mandel parameter against α for each t
    Fig3,
    /// p_m against X for each m
    Fig4,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub family: Figure,
    #[arg(long, value_parser = finite, value_delimiter = ',')]
    pub alphas: Vec<f64>,
    #[arg(long, value_parser = finite, value_delimiter = ',')]
    pub ts: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub ms: Vec<u32>,
    #[arg(long, value_parser = finite)]
    pub t: Option<f64>,
    #[arg(long, value_parser = finite)]
    pub a: Option<f64>,
    #[arg(long, value_parser = finite)]
    pub b: Option<f64>,
    /// Order used by fig4
    #[arg(long, value_parser = finite, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, value_parser = finite, default_value_t = 1.0)]
    pub omega: f64,
    /// Largest X on the fig4 abscissa
    #[arg(long, value_parser = finite, default_value_t = 10.0)]
    pub x_intensity_max: f64,
    #[arg(long)]
    pub experimental: bool,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
