//! `circmap`: iterate the circumcenter map, extract similarities, evaluate
//! loci, count regions and render figures from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input, 3 degenerate
//! geometry.

mod format;
mod input;
mod verify;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use circmap::census::{census_polygon, stretch_sweep, write_csv, CensusConfig, CSV_HEADER};
use circmap::dynamics::{extract_similarity, iterate};
use circmap::geometry::{regular_ngon, Point, Rect};
use circmap::loci::{alpha_zero_lines, trace_s1_locus, LocusFamily};
use circmap::render::{
    render_hemisphere, render_orbit, render_region_map, render_stretch_strip, FigureKind, Overlays, RenderSpec,
};

use format::{sig17, to_json};
use input::{parse_point, parse_window, ShapeSource};
use verify::{Suite, SuiteOptions};

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> CliError {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<circmap::Error> for CliError {
    fn from(e: circmap::Error) -> CliError {
        let code = if e.is_degenerate_geometry() {
            3
        } else {
            match e {
                circmap::Error::UnstableCount | circmap::Error::NoConventionFits { .. } => 1,
                _ => 2,
            }
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "circmap", version, about = "Circumcenter map on polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply the map repeatedly and report every iterate.
    Iterate(IterateArgs),
    /// Scale and rotation after n applications (n = vertex count).
    Similarity(SimilarityArgs),
    /// Closed-form loci and traced `s = 1` contours.
    #[command(subcommand)]
    Locus(LocusCommand),
    /// Count contracting and expanding regions of a regular polygon.
    Census(CensusArgs),
    /// Census of the stretched equilateral over a range of stretch factors.
    StretchSweep(StretchArgs),
    /// Run a named invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ShapeArg {
    /// `regular:N` or `file:PATH` (one `x,y` per line, or a JSON array of pairs).
    #[arg(long)]
    shape: ShapeSource,
}

#[derive(Debug, Args)]
struct IterateArgs {
    #[command(flatten)]
    shape: ShapeArg,
    /// Center of the map, `X,Y`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    m: Point,
    #[arg(long)]
    steps: usize,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write the orbit here instead of standard output.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimilarityArgs {
    #[command(flatten)]
    shape: ShapeArg,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    m: Point,
}

#[derive(Debug, Subcommand)]
enum LocusCommand {
    /// Evaluate a locus polynomial at a point.
    Eval {
        #[arg(long)]
        family: LocusFamily,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Point,
    },
    /// Trace `s = 1` inside a window; prints polylines as JSON.
    Trace {
        #[command(flatten)]
        shape: ShapeArg,
        /// `X0,Y0,X1,Y1`
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Rect,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 512)]
    resolution: usize,
    #[arg(long, default_value_t = 4)]
    refine: u32,
    /// Write the CSV report here instead of standard output.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Region map of the plane chart.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Both charts on the compactified disk.
    #[arg(long)]
    hemisphere: Option<PathBuf>,
    /// Exit with status 1 when the counts are not stable under refinement.
    #[arg(long)]
    require_stable: bool,
}

#[derive(Debug, Args)]
struct StretchArgs {
    #[arg(long, default_value_t = 1.0)]
    t_min: f64,
    #[arg(long, default_value_t = 3.0)]
    t_max: f64,
    #[arg(long, default_value_t = 21)]
    steps: usize,
    #[arg(long, default_value_t = 256)]
    resolution: usize,
    #[arg(long, default_value_t = 3)]
    refine: u32,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Smallest n for the table suite.
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, default_value_t = 512)]
    resolution: usize,
    #[arg(long, default_value_t = 4)]
    refine: u32,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Also write the checks as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn write_file(path: &Path, content: &str) -> CliResult {
    fs::write(path, content).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

/// Writes to `path`, or to standard output when there is none.
fn emit(path: Option<&Path>, content: &str) -> CliResult {
    match path {
        Some(p) => write_file(p, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn json_line<T: serde::Serialize + ?Sized>(value: &T) -> CliResult<String> {
    let mut s = to_json(value).map_err(|e| CliError::input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn run_iterate(args: IterateArgs) -> CliResult {
    let p = args.shape.shape.load()?;
    let orbit = iterate(&p, args.m, args.steps);
    let doc = json!({
        "m": orbit.m,
        "steps": orbit.steps(),
        "complete": orbit.is_complete(),
        "failure": orbit.failure,
        "iterates": orbit.iterates,
    });
    emit(args.json.as_deref(), &json_line(&doc)?)?;
    if let Some(path) = &args.svg {
        write_file(path, &render_orbit(&orbit, &RenderSpec::new(FigureKind::Orbit)))?;
    }
    match orbit.failure {
        Some(f) => Err(circmap::Error::DegenerateOrbit {
            step: f.step,
            vertex: f.vertex,
        }
        .into()),
        None => Ok(()),
    }
}

fn run_similarity(args: SimilarityArgs) -> CliResult {
    let p = args.shape.shape.load()?;
    let sim = extract_similarity(&p, args.m)?;
    let doc = json!({
        "s": sim.s,
        "alpha": sim.alpha,
        "residual": sim.residual,
        "center": sim.center,
    });
    emit(None, &json_line(&doc)?)
}

fn run_locus(cmd: LocusCommand) -> CliResult {
    match cmd {
        LocusCommand::Eval { family, point } => emit(None, &format!("{}\n", sig17(family.evaluate(point)))),
        LocusCommand::Trace {
            shape,
            window,
            resolution,
            json,
        } => {
            if resolution < 2 {
                return Err(CliError::input("trace resolution must be at least 2"));
            }
            let p = shape.shape.load()?;
            let polylines = trace_s1_locus(&p, window, resolution);
            emit(json.as_deref(), &json_line(&json!({ "polylines": polylines }))?)
        }
    }
}

fn run_census(args: CensusArgs) -> CliResult {
    let p = regular_ngon(args.n)?;
    let cfg = CensusConfig::with_resolution(args.resolution, args.refine);
    let outcome = census_polygon(&p, &cfg)?;
    let mut csv = Vec::new();
    write_csv(&mut csv, std::slice::from_ref(&outcome.report))?;
    emit(args.csv.as_deref(), &String::from_utf8(csv).expect("csv is UTF-8"))?;
    if args.svg.is_some() || args.hemisphere.is_some() {
        let overlays = Overlays {
            contours: trace_s1_locus(&outcome.polygon, outcome.plane.bounds, 256),
            alpha_lines: alpha_zero_lines(args.n)?,
            polygon: Some(outcome.polygon.clone()),
        };
        if let Some(path) = &args.svg {
            let svg = render_region_map(&outcome.plane, &overlays, &RenderSpec::new(FigureKind::RegionMap));
            write_file(path, &svg)?;
        }
        if let Some(path) = &args.hemisphere {
            let spec = RenderSpec::new(FigureKind::Hemisphere);
            write_file(path, &render_hemisphere(&outcome.plane, &outcome.inverted, &overlays, &spec))?;
        }
    }
    if args.require_stable && !outcome.report.stable {
        return Err(CliError::verification("region counts changed at the last refinement level"));
    }
    Ok(())
}

fn run_stretch(args: StretchArgs) -> CliResult {
    let cfg = CensusConfig::with_resolution(args.resolution, args.refine);
    let sweep = stretch_sweep(args.t_min, args.t_max, args.steps, &cfg)?;
    let mut out = format!("t,{CSV_HEADER}\n");
    for e in &sweep.entries {
        let c = e.report.counts;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            sig17(e.t),
            e.report.n,
            c.interior,
            c.noncompact,
            c.compact,
            c.total_contracting(),
            c.expanding,
            e.report.stable,
            e.report.resolution
        )
        .unwrap();
    }
    emit(args.csv.as_deref(), &out)?;
    for tr in sweep.transitions() {
        eprintln!(
            "transition {} -> {} between t={} and t={}",
            tr.from,
            tr.to,
            sig17(tr.t_before),
            sig17(tr.t_after)
        );
    }
    if let Some(path) = &args.svg {
        write_file(path, &render_stretch_strip(&sweep, &RenderSpec::new(FigureKind::StretchStrip)))?;
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> CliResult {
    let opts = SuiteOptions {
        n_min: args.n_min,
        n_max: args.n_max,
        resolution: args.resolution,
        refine: args.refine,
        seed: args.seed,
    };
    let checks = verify::run(args.suite, &opts)?;
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    if let Some(path) = &args.json {
        write_file(path, &json_line(&checks)?)?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::verification(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Iterate(a) => run_iterate(a),
        Command::Similarity(a) => run_similarity(a),
        Command::Locus(c) => run_locus(c),
        Command::Census(a) => run_census(a),
        Command::StretchSweep(a) => run_stretch(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
