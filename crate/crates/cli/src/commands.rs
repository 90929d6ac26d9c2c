use std::io::Write;
use std::path::{Path, PathBuf};

use mlumbral::fracpde::DiffusionOptions;
use mlumbral::{
    e_sab, laguerre_exp, ml_e, ml_gaussian_integral, ml_semigroup_sum, ml_stretched_integral, sample_counts,
    solve_drift_pde, wright, CountDistribution, Grid, GridFunction, MLParams, Variant,
};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::args::{
    ComposeArgs, DistArgs, DistVariant, EvalArgs, EvalFunction, Format, GridArgs, IntegralKind, IntegrateArgs,
    PdeArgs, PdeKind,
};
use crate::output::{self, num, raw_num};
use crate::CliError;

pub fn required<T>(value: Option<T>, flag: &'static str) -> Result<T, CliError> {
    value.ok_or(CliError::Missing(flag))
}

fn result_line(out: &mut dyn Write, value: f64, est_error: f64) -> Result<(), CliError> {
    writeln!(out, "value={} est_error={}", num(value), num(est_error)).map_err(CliError::Stdout)
}

fn wrote(out: &mut dyn Write, path: &Path) -> Result<(), CliError> {
    writeln!(out, "wrote {}", path.display()).map_err(CliError::Stdout)
}

pub fn eval(args: &EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let r = match args.function {
        EvalFunction::Ml => {
            let p = MLParams::new(required(args.alpha, "--alpha")?, args.beta)?;
            ml_e(p, required(args.x, "--x")?)?
        }
        EvalFunction::Wright => wright(required(args.alpha, "--alpha")?, args.mu, required(args.x, "--x")?)?,
        EvalFunction::Laguerre => laguerre_exp(required(args.x, "--x")?)?,
        EvalFunction::Esab => e_sab(
            args.s,
            required(args.alpha, "--alpha")?,
            args.beta,
            required(args.x, "--x")?,
        )?,
    };
    result_line(out, r.value, r.est_error)
}

pub fn compose(args: &ComposeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let s = ml_semigroup_sum(
        required(args.x, "--x")?,
        required(args.y, "--y")?,
        required(args.alpha, "--alpha")?,
        args.beta,
        args.n_max,
    )?;
    result_line(out, s.value, s.tail)?;
    if !s.converged {
        return Err(CliError::Core(mlumbral::Error::NonConvergence {
            op: "compose",
            msg: format!("the last blocks are still significant at --n-max {}", args.n_max),
        }));
    }
    Ok(())
}

pub fn integrate(args: &IntegrateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let alpha = required(args.alpha, "--alpha")?;
    let value = match args.kind {
        IntegralKind::Gaussian => ml_gaussian_integral(alpha, args.beta)?,
        IntegralKind::Stretched => ml_stretched_integral(alpha, required(args.gamma, "--gamma")?)?,
    };
    // Closed forms: only the rounding of the Γ evaluation remains.
    result_line(out, value, 4.0 * f64::EPSILON * value.abs())
}

pub fn grid_from(args: &GridArgs, default: (f64, f64, usize)) -> Result<Grid, CliError> {
    Ok(Grid::new(
        args.x_min.unwrap_or(default.0),
        args.x_max.unwrap_or(default.1),
        args.points.unwrap_or(default.2),
    )?)
}

pub fn gaussian_initial(grid: Grid) -> Result<GridFunction, CliError> {
    Ok(GridFunction::from_fn(grid, |x| (-x * x).exp())?)
}

pub fn pde(args: &PdeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let alpha = required(args.alpha, "--alpha")?;
    let t = required(args.t, "--t")?;
    let (solution, name) = match args.kind {
        PdeKind::Diffusion => {
            let f = gaussian_initial(grid_from(&args.grid, (-20.0, 20.0, 1024))?)?;
            let opts = DiffusionOptions {
                experimental: args.experimental,
                ..Default::default()
            };
            (
                mlumbral::fracpde::solve_fractional_diffusion_with(&f, alpha, t, &opts)?,
                "pde_diffusion.csv",
            )
        }
        PdeKind::Drift => {
            let grid = grid_from(&args.grid, (-10.0, 10.0, 512))?;
            let a = required(args.a, "--a")?;
            let b = required(args.b, "--b")?;
            (solve_drift_pde(a, b, alpha, t, &grid)?.solution, "pde_drift.csv")
        }
    };
    let grid = *solution.grid();
    let rows: Vec<Vec<String>> = solution
        .values()
        .iter()
        .enumerate()
        .map(|(j, &v)| vec![num(grid.x(j)), num(v)])
        .collect();
    let path = output::resolve(args.out.as_deref(), name);
    output::write_csv(&path, &["x", "value"], &rows)?;
    wrote(out, &path)
}

fn intensity(args: &DistArgs) -> Result<f64, CliError> {
    let (flag, direct) = match args.variant {
        DistVariant::Laskin => ("--lambda", args.lambda),
        _ => ("--x", args.x),
    };
    if let Some(v) = direct {
        return Ok(v);
    }
    match (args.omega, args.t) {
        (Some(omega), Some(t)) => {
            let alpha = required(args.alpha, "--alpha")?;
            let lambda = omega * t.powf(alpha);
            Ok(match args.variant {
                DistVariant::Laskin => lambda,
                _ => lambda * lambda,
            })
        }
        _ => Err(CliError::Missing(flag)),
    }
}

#[derive(Serialize)]
struct DistMetadata<'a> {
    command: &'static str,
    variant: &'a str,
    alpha: Box<RawValue>,
    intensity: Box<RawValue>,
    truncation_m: usize,
    total_mass: Box<RawValue>,
    clamped_mass: Box<RawValue>,
    tail_converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_samples: Option<usize>,
    version: &'static str,
}

#[derive(Serialize)]
struct DistDocument<'a> {
    metadata: DistMetadata<'a>,
    probs: Vec<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<&'a [u32]>,
}

fn samples_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}_samples.csv"))
}

pub fn dist(args: &DistArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let alpha = required(args.alpha, "--alpha")?;
    let v = intensity(args)?;
    let variant = match args.variant {
        DistVariant::Schrodinger => Variant::Schrodinger,
        DistVariant::Laskin => Variant::Laskin,
        DistVariant::Hermitian => Variant::Hermitian,
    };
    let d = CountDistribution::new(variant, alpha, v)?;
    let samples = match args.samples {
        Some(n) => Some(sample_counts(&d, args.seed, n)?),
        None => None,
    };

    let ext = match args.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let path = output::resolve(args.out.as_deref(), &format!("dist_{}.{ext}", variant.name()));
    match args.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = d
                .probs()
                .iter()
                .enumerate()
                .map(|(m, &p)| vec![m.to_string(), num(p)])
                .collect();
            output::write_csv(&path, &["m", "probability"], &rows)?;
            wrote(out, &path)?;
            if let Some(s) = &samples {
                let sp = samples_path(&path);
                let rows: Vec<Vec<String>> =
                    s.iter().enumerate().map(|(i, m)| vec![i.to_string(), m.to_string()]).collect();
                output::write_csv(&sp, &["sample", "m"], &rows)?;
                wrote(out, &sp)?;
            }
        }
        Format::Json => {
            let doc = DistDocument {
                metadata: DistMetadata {
                    command: "dist",
                    variant: variant.name(),
                    alpha: raw_num(alpha),
                    intensity: raw_num(v),
                    truncation_m: d.truncation_m(),
                    total_mass: raw_num(d.total_mass()),
                    clamped_mass: raw_num(d.clamped_mass()),
                    tail_converged: d.tail_converged(),
                    seed: samples.as_ref().map(|_| args.seed),
                    n_samples: samples.as_ref().map(Vec::len),
                    version: env!("CARGO_PKG_VERSION"),
                },
                probs: d.probs().iter().map(|&p| raw_num(p)).collect(),
                samples: samples.as_deref(),
            };
            output::write_json(&path, &doc)?;
            wrote(out, &path)?;
        }
    }
    Ok(())
}
