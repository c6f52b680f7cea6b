//! Argument parsing and command execution for the `klstab` binary.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};

use klstab::boundary::parse_reconstruction_name;
use klstab::export::{map_svg, write_curve_csv, write_map_csv, write_simulation_csv};
use klstab::oracle::simulate;
use klstab::scheme::parse_custom_stencil;
use klstab::verdict::{linspace, trace};
use klstab::{sweep, BoundarySpec, SchemeTemplate, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "klstab", version, about = "Boundary stability of explicit advection schemes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the stability verdict at one CFL number.
    Check(PointArgs),
    /// Write the sampled determinant curve as CSV.
    Curve(PointArgs),
    /// Stability map over a grid of CFL numbers and boundary offsets.
    Sweep(SweepArgs),
    /// March the scheme in time and report the solution norm.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    /// Template name (upwind, naive_average, o3, lw5) or @file with `r p a_-r .. a_p`.
    #[arg(long)]
    pub scheme: String,
    /// `R<d>,<k_d>` reconstruction, or @file holding `reconstruction d k_d sigma`
    /// or `matrix r m` followed by the ghost matrix.
    #[arg(long)]
    pub boundary: String,
    /// Initial number of curve samples.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    #[arg(long)]
    pub tol_unit: Option<f64>,
    #[arg(long)]
    pub lambda_min: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub common: SchemeArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub lambda: f64,
    /// Output file (the curve CSV for `curve`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the curve CSV (for `check`).
    #[arg(long)]
    pub curve_out: Option<PathBuf>,
    /// Print diagnostics to stderr.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: SchemeArgs,
    /// `start:end:count`.
    #[arg(long, alias = "lambda-range", allow_hyphen_values = true)]
    pub lambda: String,
    /// `start:end:count`; may be omitted for matrix boundaries.
    #[arg(long, alias = "sigma-range", allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Map CSV; the SVG heatmap goes next to it with extension `.svg`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: SchemeArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub lambda: f64,
    /// Number of grid cells.
    #[arg(long, default_value_t = 400)]
    pub cells: usize,
    #[arg(long, default_value_t = 2000)]
    pub steps: usize,
    /// Unit initial value at this cell (default: zero initial data).
    #[arg(long)]
    pub pulse_cell: Option<usize>,
    /// Unit boundary datum on every ghost cell at the first step.
    #[arg(long)]
    pub ghost_impulse: bool,
    /// Write every value as `n,j,u` rows.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `start:end:count` with `count >= 1` and `start < end`.
pub fn parse_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![single
            .trim()
            .parse()
            .with_context(|| format!("bad value `{text}`"))?]),
        [start, end, count] => {
            let start: f64 = start.trim().parse().with_context(|| format!("bad start in `{text}`"))?;
            let end: f64 = end.trim().parse().with_context(|| format!("bad end in `{text}`"))?;
            let count: usize = count.trim().parse().with_context(|| format!("bad count in `{text}`"))?;
            ensure!(count >= 1, "range `{text}` needs at least one point");
            ensure!(start < end, "range `{text}` must have start < end");
            Ok(linspace(start, end, count))
        }
        _ => bail!("range `{text}` is not of the form start:end:count"),
    }
}

fn read_at_file(spec: &str) -> Result<Option<String>> {
    match spec.strip_prefix('@') {
        None => Ok(None),
        Some(path) => fs::read_to_string(path)
            .with_context(|| format!("reading {path}"))
            .map(Some),
    }
}

pub fn parse_scheme(spec: &str) -> Result<SchemeTemplate> {
    Ok(match read_at_file(spec)? {
        Some(text) => parse_custom_stencil(&text).with_context(|| format!("parsing scheme file {spec}"))?,
        None => spec.parse()?,
    })
}

/// Boundary from `R<d>,<k_d>` or `@file`. `sigma` overrides the offset of a
/// reconstruction; it is required for the `R` form.
pub fn parse_boundary(spec: &str, sigma: Option<f64>) -> Result<BoundarySpec> {
    match read_at_file(spec)? {
        Some(text) => {
            let parsed = BoundarySpec::parse_text(&text).with_context(|| format!("parsing boundary file {spec}"))?;
            Ok(match sigma {
                Some(s) => parsed.with_sigma(s),
                None => parsed,
            })
        }
        None => {
            let sigma = sigma.context("--sigma is required with an R<d>,<k_d> boundary")?;
            Ok(parse_reconstruction_name(spec, sigma)?)
        }
    }
}

fn tolerances(args: &SchemeArgs) -> Result<Tolerances> {
    ensure!(args.samples >= 4, "--samples must be at least 4");
    let mut tol = Tolerances {
        n_init: args.samples,
        ..Tolerances::default()
    };
    if let Some(t) = args.tol_unit {
        ensure!(t > 0.0, "--tol-unit must be positive");
        tol.tol_unit = t;
    }
    if let Some(l) = args.lambda_min {
        tol.lambda_min = l;
    }
    Ok(tol)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn write_curve(curve: &klstab::KlCurve, path: &Path) -> Result<()> {
    let mut file = create(path)?;
    write_curve_csv(curve, &mut file).with_context(|| format!("writing {}", path.display()))?;
    file.flush().with_context(|| format!("writing {}", path.display()))
}

fn point(args: &PointArgs, is_curve: bool, out: &mut dyn Write) -> Result<()> {
    let template = parse_scheme(&args.common.scheme)?;
    let boundary = parse_boundary(&args.common.boundary, args.sigma)?;
    let tol = tolerances(&args.common)?;
    let curve_path = if is_curve {
        Some(args.out.as_ref().context("curve needs --out")?)
    } else {
        args.curve_out.as_ref()
    };
    let traced = trace::<f64>(&template, &boundary, args.lambda, &tol);
    if args.verbose {
        eprintln!("{}", traced.verdict.diagnostics);
    }
    if let Some(path) = curve_path {
        let curve = traced
            .curve
            .as_ref()
            .with_context(|| format!("no curve was traced: {}", traced.verdict.summary()))?;
        write_curve(curve, path)?;
    }
    writeln!(out, "{}", traced.verdict.summary())?;
    Ok(())
}

fn run_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    let template = parse_scheme(&args.common.scheme)?;
    let lambdas = parse_range(&args.lambda)?;
    let sigmas = match &args.sigma {
        Some(s) => parse_range(s)?,
        None => vec![0.0],
    };
    let boundary = parse_boundary(&args.common.boundary, Some(sigmas[0]))?;
    if matches!(boundary, BoundarySpec::Reconstruction { .. }) {
        ensure!(args.sigma.is_some(), "--sigma range is required with a reconstruction boundary");
    }
    let tol = tolerances(&args.common)?;
    let grid = sweep(&template, &boundary, &lambdas, &sigmas, &tol)?;

    let mut file = create(&args.out)?;
    write_map_csv(&grid, &mut file).with_context(|| format!("writing {}", args.out.display()))?;
    file.flush()?;
    let svg_path = args.out.with_extension("svg");
    let title = format!("{template} with {}: unstable zeros", args.common.boundary);
    fs::write(&svg_path, map_svg(&grid, &title)).with_context(|| format!("writing {}", svg_path.display()))?;

    let stable = grid.results.iter().filter(|v| v.status == klstab::Status::Stable).count();
    writeln!(
        out,
        "cells={} stable={stable} csv={} svg={}",
        grid.results.len(),
        args.out.display(),
        svg_path.display()
    )?;
    Ok(())
}

fn run_simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let template = parse_scheme(&args.common.scheme)?;
    let boundary = parse_boundary(&args.common.boundary, args.sigma)?;
    let scheme = template.build(args.lambda)?;
    let bc = boundary.build(&scheme)?;
    let mut initial = vec![0.0; args.cells];
    if let Some(j) = args.pulse_cell {
        ensure!(j < args.cells, "--pulse-cell {j} is outside the grid of {} cells", args.cells);
        initial[j] = 1.0;
    }
    let g = if args.ghost_impulse {
        vec![vec![1.0; scheme.r()]]
    } else {
        Vec::new()
    };
    let run = simulate(&scheme, &bc, &initial, &g, args.steps)?;
    if let Some(path) = &args.out {
        let mut file = create(path)?;
        write_simulation_csv(&run, &mut file).with_context(|| format!("writing {}", path.display()))?;
        file.flush()?;
    }
    let max_norm = run.norm_trace.iter().copied().fold(0.0, f64::max);
    writeln!(
        out,
        "steps={} final_norm={:e} max_norm={max_norm:e} blew_up={}",
        run.history.len() - 1,
        run.norm_trace.last().copied().unwrap_or(0.0),
        run.blew_up
    )?;
    Ok(())
}

/// Execute a parsed command, writing the result line to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Check(args) => point(args, false, out),
        Command::Curve(args) => point(args, true, out),
        Command::Sweep(args) => run_sweep(args, out),
        Command::Simulate(args) => run_simulate(args, out),
    }
}

/// Thread cap from `KLSTAB_THREADS`, if set.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var("KLSTAB_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => {
            let n: usize = v.trim().parse().with_context(|| format!("KLSTAB_THREADS=`{v}` is not a number"))?;
            ensure!(n >= 1, "KLSTAB_THREADS must be at least 1");
            Ok(Some(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0.5").unwrap(), vec![0.5]);
        let v = parse_range("-0.49:0.49:40").unwrap();
        assert_eq!((v.len(), v[0], v[39]), (40, -0.49, 0.49));
        assert!(parse_range("1:0:3").is_err());
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("0:1").is_err());
    }

    #[test]
    fn boundary_specs() {
        assert_eq!(
            parse_boundary("R3,0", Some(0.4)).unwrap(),
            BoundarySpec::Reconstruction { d: 3, k_d: 0, sigma: 0.4 }
        );
        assert!(parse_boundary("R3,0", None).is_err());
        assert!(parse_boundary("Q3,0", Some(0.0)).is_err());
        assert!(parse_boundary("@/nonexistent/file", None).is_err());
    }

    #[test]
    fn scheme_specs() {
        assert_eq!(parse_scheme("o3").unwrap(), SchemeTemplate::O3);
        assert!(parse_scheme("o4").is_err());
    }
}
