use std::io::Write;

use mlumbral::fracpde::DiffusionOptions;
use mlumbral::{p_m_schrodinger, schrodinger_moments, solve_drift_pde};

use crate::args::{Figure, FigureArgs};
use crate::commands::{gaussian_initial, grid_from, required};
use crate::output::{self, num};
use crate::CliError;

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn nonempty<T>(values: &[T], flag: &'static str) -> Result<(), CliError> {
    if values.is_empty() {
        Err(CliError::Missing(flag))
    } else {
        Ok(())
    }
}

/// Diffusion profiles from e^{-x²}, one curve per (α, t).
fn fig1(args: &FigureArgs) -> Result<Table, CliError> {
    nonempty(&args.alphas, "--alphas")?;
    nonempty(&args.ts, "--ts")?;
    let f = gaussian_initial(grid_from(&args.grid, (-10.0, 10.0, 256))?)?;
    let opts = DiffusionOptions {
        experimental: args.experimental,
        ..Default::default()
    };
    let mut rows = Vec::new();
    for &alpha in &args.alphas {
        for &t in &args.ts {
            let u = mlumbral::fracpde::solve_fractional_diffusion_with(&f, alpha, t, &opts)?;
            let curve = format!("alpha={alpha};t={t}");
            for (j, &v) in u.values().iter().enumerate() {
                rows.push(vec![curve.clone(), num(alpha), num(t), num(u.grid().x(j)), num(v)]);
            }
        }
    }
    Ok(Table {
        header: vec!["curve", "alpha", "t", "x", "value"],
        rows,
    })
}

/// Drift-problem profiles at a fixed t, one curve per α.
fn fig2(args: &FigureArgs) -> Result<Table, CliError> {
    let a = required(args.a, "--a")?;
    let b = required(args.b, "--b")?;
    let t = required(args.t, "--t")?;
    nonempty(&args.alphas, "--alphas")?;
    // The Hermite series grows like E_α(|x|(a+2b)t^α); a narrower window
    // keeps small orders within the term cap.
    let grid = grid_from(&args.grid, (-6.0, 6.0, 256))?;
    let mut rows = Vec::new();
    for &alpha in &args.alphas {
        let s = solve_drift_pde(a, b, alpha, t, &grid)?;
        let curve = format!("alpha={alpha}");
        for (j, &v) in s.solution.values().iter().enumerate() {
            rows.push(vec![curve.clone(), num(a), num(b), num(alpha), num(t), num(grid.x(j)), num(v)]);
        }
    }
    Ok(Table {
        header: vec!["curve", "a", "b", "alpha", "t", "x", "value"],
        rows,
    })
}

/// Mandel parameter of the Schrödinger variant over α = 0.51, ..., 1.00.
fn fig3(args: &FigureArgs) -> Result<Table, CliError> {
    nonempty(&args.ts, "--ts")?;
    let mut rows = Vec::new();
    for &t in &args.ts {
        let curve = format!("t={t}");
        for i in 51..=100u32 {
            let alpha = f64::from(i) / 100.0;
            let x = (args.omega * t.powf(alpha)).powi(2);
            let q = schrodinger_moments(alpha, x)?.mandel_q;
            rows.push(vec![curve.clone(), num(t), num(alpha), num(x), num(q)]);
        }
    }
    Ok(Table {
        header: vec!["curve", "t", "alpha", "x_intensity", "mandel_q"],
        rows,
    })
}

/// p_m(X) of the Schrödinger variant over a uniform X grid, one curve per m.
fn fig4(args: &FigureArgs) -> Result<Table, CliError> {
    nonempty(&args.ms, "--ms")?;
    let n = args.grid.points.unwrap_or(201);
    if n < 2 {
        return Err(CliError::Invalid {
            flag: "--points",
            msg: format!("needs at least 2 points, got {n}"),
        });
    }
    if !(args.x_intensity_max > 0.0) {
        return Err(CliError::Invalid {
            flag: "--x-intensity-max",
            msg: format!("must be positive, got {}", args.x_intensity_max),
        });
    }
    let mut rows = Vec::new();
    for &m in &args.ms {
        let curve = format!("m={m}");
        for i in 0..n {
            let x = args.x_intensity_max * i as f64 / (n - 1) as f64;
            let p = p_m_schrodinger(m, args.alpha, x)?;
            rows.push(vec![curve.clone(), num(args.alpha), m.to_string(), num(x), num(p)]);
        }
    }
    Ok(Table {
        header: vec!["curve", "alpha", "m", "x_intensity", "probability"],
        rows,
    })
}

pub fn figures(args: &FigureArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (table, name) = match args.family {
        Figure::Fig1 => (fig1(args)?, "fig1.csv"),
        Figure::Fig2 => (fig2(args)?, "fig2.csv"),
        Figure::Fig3 => (fig3(args)?, "fig3.csv"),
        Figure::Fig4 => (fig4(args)?, "fig4.csv"),
    };
    let path = output::resolve(args.out.as_deref(), name);
    output::write_csv(&path, &table.header, &table.rows)?;
    writeln!(out, "wrote {}", path.display()).map_err(CliError::Stdout)
}
