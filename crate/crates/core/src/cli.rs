//! The `nearness` command line.
//!
//! Every command prints a [`ReportDocument`] as JSON, to stdout or to the
//! report path. Exit codes: 0 success, 1 runtime or validation error,
//! 2 usage error. Errors are one line on stderr starting with `error:`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::engine::{
    antipodal_string_family, but_search_bounded, fixed_point_search, ButObjects, Reducer,
    RegionDescriptor,
};
use crate::geometry::{antipodal_point_witness, petty_antipodal_set, sphere_sample, Worldsheet};
use crate::io::{
    export_mesh, file_digest, load_points_csv, load_trace_csv, write_curve_csv, ReportDocument,
};
use crate::proximity::{check_axioms, DescriptiveSpace, Family, FeatureMap};
use crate::surfaces::{
    eeg_torus_mesh, eeg_twist_lift, torus_measures, torus_mesh, torus_residual, MeshDocument,
    TorusParams, TwistSpec,
};

/// Environment variable consulted when `--seed` is not given.
pub const SEED_ENV: &str = "NEARNESS_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "nearness",
    version,
    about = "Descriptive proximity and antipodal matching toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Proximity axiom checks
    #[command(subcommand)]
    Axioms(AxiomsCmd),
    /// Antipodal point and set predicates
    #[command(subcommand)]
    Antipodes(AntipodesCmd),
    /// Antipodal matching searches on sphere grids
    #[command(subcommand)]
    But(ButCmd),
    /// Parametric surfaces
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// EEG trace lifting and torus placement
    #[command(subcommand)]
    Eeg(EegCmd),
    /// Fixed-point search on the unit ball
    Fixedpoint(FixedpointArgs),
}

#[derive(Args, Debug)]
struct ReportTo {
    /// Write the report here instead of stdout
    #[arg(long, visible_alias = "report", value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum AxiomsCmd {
    /// Check the axioms of one relation family on a finite space
    Check {
        /// lodato-descriptive, strong or descriptive-strong
        #[arg(long, value_parser = parse_family)]
        family: Family,
        /// Points CSV (x1..xn[,interior])
        #[arg(long, value_name = "CSV")]
        space: PathBuf,
        /// Feature name or JSON feature config
        #[arg(long, default_value = "coords")]
        feature: String,
        /// Component-wise match tolerance
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Defaults to $NEARNESS_SEED, then 0
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        report: ReportTo,
    },
}

#[derive(Subcommand, Debug)]
enum AntipodesCmd {
    /// Parallel-hyperplane witness for two points
    Witness {
        #[arg(long, value_name = "CSV")]
        points: PathBuf,
        #[command(flatten)]
        report: ReportTo,
    },
    /// Whether a point set is a Petty antipodal set
    Petty {
        #[arg(long, value_name = "CSV")]
        points: PathBuf,
        #[command(flatten)]
        report: ReportTo,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Points,
    Strings,
    Sheets,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReducerArg {
    Mean,
    MinMax,
    Shape,
}

#[derive(Subcommand, Debug)]
enum ButCmd {
    /// Find antipodal objects with matching descriptions
    Search {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Sphere grid, e.g. `--grid n=1 density=32`
        #[arg(long, num_args = 1.., required = true, value_name = "KEY=VALUE")]
        grid: Vec<String>,
        /// Feature name or JSON feature config
        #[arg(long)]
        descriptor: String,
        #[arg(long, value_enum, default_value = "mean")]
        reducer: ReducerArg,
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        /// Vertices per string in strings and sheets modes
        #[arg(long, default_value_t = 4)]
        vertices: usize,
        /// Strings from a points CSV with a `string` column instead of the grid
        #[arg(long, value_name = "CSV")]
        objects: Option<PathBuf>,
        /// Stop after this many candidate pairs
        #[arg(long)]
        max_pairs: Option<usize>,
        #[command(flatten)]
        report: ReportTo,
    },
}

#[derive(Subcommand, Debug)]
enum SurfaceCmd {
    /// Ring torus measures and an OBJ mesh
    Torus {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        /// Mesh resolution `GUxGV`
        #[arg(long, default_value = "32x32", value_parser = parse_grid_size)]
        grid: (usize, usize),
        /// OBJ output path
        #[arg(long, value_name = "OBJ")]
        out: PathBuf,
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct TwistArgs {
    #[arg(long, default_value_t = 1.2, allow_hyphen_values = true)]
    amplitude: f64,
    #[arg(long, default_value_t = 2.5, allow_hyphen_values = true)]
    inner_freq: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    outer_freq: f64,
}

#[derive(Subcommand, Debug)]
enum EegCmd {
    /// Lift a `t,x,z` trace to `(x, z, twist)` and write an `x,y,z` curve CSV
    Lift {
        #[arg(long = "in", value_name = "CSV")]
        input: PathBuf,
        #[arg(long, value_name = "CSV")]
        out: PathBuf,
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
    },
    /// Place a trace on a ring torus and write an OBJ mesh
    Torus {
        #[arg(long = "in", value_name = "CSV")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        /// Number of shifted copies of the trace
        #[arg(long, default_value_t = 8)]
        strings: usize,
        #[arg(long, value_name = "OBJ")]
        out: PathBuf,
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapArg {
    /// x ↦ x/2
    Half,
    /// x ↦ cos x on B_1
    Cos,
    /// quarter turn on B_2
    Rotate90,
}

#[derive(Args, Debug)]
struct FixedpointArgs {
    #[arg(long, value_enum)]
    map: MapArg,
    /// Ball dimension; defaults to 2 for rotate90 and 1 otherwise
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 40)]
    max_refinements: usize,
    #[command(flatten)]
    report: ReportTo,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
        .map_err(|e: crate::proximity::ProximityError| e.to_string())
}

fn parse_grid_size(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once('x')
        .ok_or_else(|| format!("expected GUxGV, got `{s}`"))?;
    let n = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| format!("`{t}` is not a count"))
    };
    Ok((n(a)?, n(b)?))
}

fn parse_sphere_grid(tokens: &[String]) -> Result<(usize, usize)> {
    let (mut n, mut density) = (None, None);
    for tok in tokens
        .iter()
        .flat_map(|t| t.split([',', ' ']))
        .filter(|t| !t.is_empty())
    {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| anyhow!("grid token `{tok}` is not KEY=VALUE"))?;
        let v: usize = v.parse().with_context(|| format!("grid value `{v}`"))?;
        match k {
            "n" => n = Some(v),
            "density" => density = Some(v),
            _ => bail!("unknown grid key `{k}` (expected n, density)"),
        }
    }
    Ok((
        n.ok_or_else(|| anyhow!("grid needs n=<1|2|3>"))?,
        density.ok_or_else(|| anyhow!("grid needs density=<d>"))?,
    ))
}

fn feature_map(spec: &str, tolerance: Option<f64>) -> Result<FeatureMap> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        json!({ "name": spec }).to_string()
    };
    let mut config: crate::proximity::FeatureConfig =
        serde_json::from_str(&text).map_err(|e| anyhow!("feature `{spec}`: {e}"))?;
    if let Some(t) = tolerance {
        config.tolerance = t;
    }
    Ok(FeatureMap::from_config(&config)?)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{SEED_ENV}=`{v}` is not a seed")),
        Err(_) => Ok(0),
    }
}

fn emit(doc: &ReportDocument, to: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let text = doc.to_json();
    match to {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => out.write_all(text.as_bytes()).context("writing report"),
    }
}

fn mesh_summary(mesh: &MeshDocument, params: &TorusParams, out: &Path) -> Value {
    let max_residual = mesh
        .vertices()
        .iter()
        .map(|&v| torus_residual(v, params))
        .fold(0.0, f64::max);
    json!({
        "mesh": out.display().to_string(),
        "vertices": mesh.vertices().len(),
        "faces": mesh.faces().len(),
        "max_torus_residual": max_residual,
    })
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Axioms(AxiomsCmd::Check {
            family,
            space,
            feature,
            tolerance,
            trials,
            seed,
            report,
        }) => {
            let seed = resolve_seed(seed)?;
            let table = load_points_csv(&space)?;
            let fm = feature_map(&feature, tolerance)?;
            let labels = table.interior_or_open();
            let space_obj = DescriptiveSpace::new(table.points, labels, fm.clone())?;
            let result = check_axioms(&space_obj, family, trials, seed)?;
            let doc = ReportDocument::new(
                "axioms check",
                Some(file_digest(&space)?),
                json!({
                    "family": family,
                    "space": space.display().to_string(),
                    "feature": fm.config(),
                    "trials": trials,
                    "seed": seed,
                }),
                json!({ "passed": result.passed(), "report": result }),
            )?;
            emit(&doc, report.out.as_deref(), out)
        }
        Command::Antipodes(cmd) => {
            let (name, points, report) = match &cmd {
                AntipodesCmd::Witness { points, report } => ("antipodes witness", points, report),
                AntipodesCmd::Petty { points, report } => ("antipodes petty", points, report),
            };
            let table = load_points_csv(points)?;
            let results = match cmd {
                AntipodesCmd::Witness { .. } => {
                    let [p, q] = table.points.as_slice() else {
                        bail!(
                            "witness needs exactly 2 points, found {}",
                            table.points.len()
                        );
                    };
                    match antipodal_point_witness(p, q)? {
                        Some((h1, h2)) => json!({ "antipodal": true, "hyperplanes": [h1, h2] }),
                        None => json!({ "antipodal": false, "hyperplanes": null }),
                    }
                }
                AntipodesCmd::Petty { .. } => json!({
                    "points": table.points.len(),
                    "petty": petty_antipodal_set(&table.points)?,
                }),
            };
            let doc = ReportDocument::new(
                name,
                Some(file_digest(points)?),
                json!({ "points": points.display().to_string() }),
                results,
            )?;
            emit(&doc, report.out.as_deref(), out)
        }
        Command::But(ButCmd::Search {
            mode,
            grid,
            descriptor,
            reducer,
            tol,
            vertices,
            objects,
            max_pairs,
            report,
        }) => {
            let (n, density) = parse_sphere_grid(&grid)?;
            let sphere = sphere_sample(n, density)?;
            let reducer = match reducer {
                ReducerArg::Mean => Reducer::Mean,
                ReducerArg::MinMax => Reducer::MinMax,
                ReducerArg::Shape => Reducer::Shape,
            };
            let f = RegionDescriptor::new(feature_map(&descriptor, None)?, reducer, tol)?;
            let limit = max_pairs.unwrap_or(usize::MAX);
            let mut digest = None;
            let result = match mode {
                Mode::Points => but_search_bounded(ButObjects::Points(&sphere), &f, limit)?,
                Mode::Strings => {
                    let strings = match &objects {
                        Some(path) => {
                            digest = Some(file_digest(path)?);
                            load_points_csv(path)?.strings()?
                        }
                        None => antipodal_string_family(&sphere, vertices)?,
                    };
                    but_search_bounded(ButObjects::Strings(&strings), &f, limit)?
                }
                Mode::Sheets => {
                    if objects.is_some() {
                        bail!("--objects is only supported in strings mode");
                    }
                    let strings = antipodal_string_family(&sphere, vertices)?;
                    let (pos, neg) = strings.split_at(strings.len() / 2);
                    let sheets = pos
                        .chunks(2)
                        .chain(neg.chunks(2))
                        .map(|c| Worldsheet::from_strings(c.to_vec(), 1e-9))
                        .collect::<Result<Vec<_>, _>>()?;
                    but_search_bounded(ButObjects::Sheets(&sheets), &f, limit)?
                }
            };
            let doc = ReportDocument::new(
                "but search",
                digest,
                json!({
                    "mode": result.kind,
                    "grid": { "n": n, "density": density },
                    "descriptor": f.feature().config(),
                    "reducer": reducer,
                    "tol": tol,
                    "vertices": vertices,
                    "objects": objects.map(|p| p.display().to_string()),
                    "max_pairs": max_pairs,
                }),
                result,
            )?;
            emit(&doc, report.out.as_deref(), out)
        }
        Command::Surface(SurfaceCmd::Torus {
            c,
            r,
            grid,
            out: obj,
            report,
        }) => {
            let params = TorusParams::new(c, r)?;
            let mesh = torus_mesh(&params, grid.0, grid.1)?;
            export_mesh(&mesh, &obj)?;
            let mut results = mesh_summary(&mesh, &params, &obj);
            results["measures"] = serde_json::to_value(torus_measures(&params))?;
            let doc = ReportDocument::new(
                "surface torus",
                None,
                json!({ "c": c, "r": r, "grid": [grid.0, grid.1] }),
                results,
            )?;
            emit(&doc, report.as_deref(), out)
        }
        Command::Eeg(EegCmd::Lift {
            input,
            out: csv,
            twist,
            report,
        }) => {
            let spec = TwistSpec {
                amplitude: twist.amplitude,
                inner_freq: twist.inner_freq,
                outer_freq: twist.outer_freq,
            };
            let trace: Vec<(f64, f64)> =
                load_trace_csv(&input)?.iter().map(|r| (r.x, r.z)).collect();
            let lifted = eeg_twist_lift(&trace, &spec)?;
            write_curve_csv(&lifted, &csv)?;
            let twists: Vec<f64> = lifted.iter().map(|p| p.coords()[2]).collect();
            let doc = ReportDocument::new(
                "eeg lift",
                Some(file_digest(&input)?),
                json!({ "in": input.display().to_string(), "twist": spec }),
                json!({
                    "curve": csv.display().to_string(),
                    "samples": lifted.len(),
                    "twist_min": twists.iter().copied().fold(f64::INFINITY, f64::min),
                    "twist_max": twists.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                }),
            )?;
            emit(&doc, report.as_deref(), out)
        }
        Command::Eeg(EegCmd::Torus {
            input,
            c,
            r,
            strings,
            out: obj,
            report,
        }) => {
            let params = TorusParams::new(c, r)?;
            let trace: Vec<(f64, f64)> =
                load_trace_csv(&input)?.iter().map(|r| (r.x, r.z)).collect();
            let mesh = eeg_torus_mesh(&trace, &params, strings)?;
            export_mesh(&mesh, &obj)?;
            let mut results = mesh_summary(&mesh, &params, &obj);
            results["measures"] = serde_json::to_value(torus_measures(&params))?;
            let doc = ReportDocument::new(
                "eeg torus",
                Some(file_digest(&input)?),
                json!({ "in": input.display().to_string(), "c": c, "r": r, "strings": strings }),
                results,
            )?;
            emit(&doc, report.as_deref(), out)
        }
        Command::Fixedpoint(args) => {
            let dim = args.dim.unwrap_or(match args.map {
                MapArg::Rotate90 => 2,
                _ => 1,
            });
            let result = match args.map {
                MapArg::Half => fixed_point_search(
                    |x| x.iter().map(|v| v / 2.0).collect(),
                    dim,
                    args.tol,
                    args.max_refinements,
                )?,
                MapArg::Cos => {
                    if dim != 1 {
                        bail!("map cos is defined on B_1 only, got --dim {dim}");
                    }
                    fixed_point_search(|x| vec![x[0].cos()], 1, args.tol, args.max_refinements)?
                }
                MapArg::Rotate90 => {
                    if dim != 2 {
                        bail!("map rotate90 is defined on B_2 only, got --dim {dim}");
                    }
                    fixed_point_search(|x| vec![-x[1], x[0]], 2, args.tol, args.max_refinements)?
                }
            };
            let doc = ReportDocument::new(
                "fixedpoint",
                None,
                json!({
                    "map": args.map.to_possible_value().map(|v| v.get_name().to_string()),
                    "dim": dim,
                    "tol": args.tol,
                    "max_refinements": args.max_refinements,
                }),
                result,
            )?;
            emit(&doc, args.report.out.as_deref(), out)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let text = e.render().to_string();
            let first = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("usage error");
            let msg = first.trim_start_matches("error:").trim();
            let hint = if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                "a subcommand is required (try --help)"
            } else {
                msg
            };
            let _ = writeln!(err, "error: {hint}");
            return 2;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
