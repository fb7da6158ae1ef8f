//! Command-line front door. Thin dispatch onto the library; all file
//! formats live in [`motherbody::scene`].
//!
//! Exit codes: 0 success/pass, 1 verification or fit failure, 2 input error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use motherbody::geometry::{ConvexPolygon, Point2};
use motherbody::measure::Measure;
use motherbody::packing::ball_packing;
use motherbody::potential::{potential_atomic, potential_body_quadrature, PotentialError};
use motherbody::scene::{self, fmt_f64, Scene};
use motherbody::skeleton::{mother_of_polygon, FitConfig, RingSpec};
use motherbody::verify::{reproduce, verify_all, AxiomConfig, ReproduceCase, ReproduceParams};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "motherbody", version, about = "Mother-body potential toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Units {
    Natural,
    Si,
}

impl Units {
    fn kappa(self) -> f64 {
        match self {
            Units::Natural => 1.0,
            Units::Si => 1.0 / (4.0 * std::f64::consts::PI * 8.85e-12),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate potentials of every scene object at a batch of points
    Eval(EvalArgs),
    /// Medial-axis skeleton of a convex polygon
    Skeleton(SkeletonArgs),
    /// Fit a nonnegative mother-body density on a polygon's skeleton
    Fit(FitArgs),
    /// Check the five mother-body axioms for a scene's (body, measure) pair
    Verify(VerifyArgs),
    /// Reproduce a worked case: shell | cylinder | cone | square
    Reproduce(ReproduceArgs),
    /// Quadtree disk packing of a polygon
    Pack(PackArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    scene: PathBuf,
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// unit system; overrides the scene's kappa
    #[arg(long, value_enum)]
    units: Option<Units>,
}

#[derive(Args)]
struct SkeletonArgs {
    #[arg(long)]
    polygon: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    polygon: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// FitConfig JSON; flags below override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// holdout relative residual threshold for exit code 1
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long)]
    subdivisions: Option<usize>,
    /// collocation ring RADIUS:COUNT, centered at the centroid (repeatable)
    #[arg(long = "ring")]
    rings: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    scene: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// AxiomConfig JSON; flags below override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// relative tolerance for the exterior match
    #[arg(long)]
    tol: Option<f64>,
    /// exterior ring RADIUS:COUNT, centered on the body (repeatable)
    #[arg(long = "ring")]
    rings: Vec<String>,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long)]
    case: String,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[arg(long, default_value_t = 1.0)]
    height: f64,
    #[arg(long, default_value_t = 2.0)]
    ref_a: f64,
    #[arg(long, default_value_t = 1.0)]
    eps0: f64,
    /// comma-separated radius sweep
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    subdivisions: Option<usize>,
}

#[derive(Args)]
struct PackArgs {
    #[arg(long)]
    polygon: PathBuf,
    #[arg(long, default_value_t = 6)]
    depth: usize,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Skeleton(a) => cmd_skeleton(&a),
        Command::Fit(a) => cmd_fit(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Reproduce(a) => cmd_reproduce(&a),
        Command::Pack(a) => cmd_pack(&a),
    };
    match code {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<ExitCode, String>;

fn input_err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure_out_dir(dir: &Path) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(input_err)
}

fn load_polygon(path: &Path) -> Result<ConvexPolygon, String> {
    let text = std::fs::read_to_string(path).map_err(input_err)?;
    serde_json::from_str(&text).map_err(input_err)
}

fn parse_ring(spec: &str, center: Point2) -> Result<RingSpec, String> {
    let (r, c) = spec
        .split_once(':')
        .ok_or_else(|| format!("--ring expects RADIUS:COUNT, got {spec}"))?;
    let radius: f64 = r.parse().map_err(|_| format!("bad ring radius {r}"))?;
    let count: usize = c.parse().map_err(|_| format!("bad ring count {c}"))?;
    Ok(RingSpec {
        center,
        radius,
        count,
    })
}

fn cmd_eval(args: &EvalArgs) -> CmdResult {
    let scene = Scene::from_file(&args.scene).map_err(input_err)?;
    let text = std::fs::read_to_string(&args.points).map_err(input_err)?;
    let points = scene::parse_points_csv(&text).map_err(input_err)?;
    let dim = scene.kernel.dim();
    for p in &points {
        if p.dim() != dim {
            return Err(format!(
                "point dimension {} does not match scene {dim}",
                p.dim()
            ));
        }
    }
    ensure_out_dir(&args.out)?;
    // emitted values are V = 4 pi kappa U (kappa = 1 reads V = q/r for a
    // 3D point charge q at distance r)
    let kappa = args.units.map_or(scene.constants.kappa, Units::kappa);
    let scale = 4.0 * std::f64::consts::PI * kappa;

    let coord_cols: &[&str] = if dim == 3 {
        &["x", "y", "z"]
    } else {
        &["x", "y"]
    };
    let mut header = vec!["object"];
    header.extend_from_slice(coord_cols);
    header.extend_from_slice(&["value", "estimated_error", "status"]);

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut emit =
        |name: String, sample: Result<(f64, f64), PotentialError>, p: &motherbody::Point| {
            let mut row = vec![name];
            row.extend(p.coords().iter().map(|c| fmt_f64(*c)));
            match sample {
                Ok((v, e)) => {
                    row.push(fmt_f64(v * scale));
                    row.push(fmt_f64(e * scale));
                    row.push("ok".to_string());
                }
                Err(PotentialError::OnSupport | PotentialError::OnBoundary) => {
                    row.push(String::new());
                    row.push(String::new());
                    row.push("on-support".to_string());
                }
                Err(e) => {
                    row.push(String::new());
                    row.push(String::new());
                    row.push(e.to_string());
                }
            }
            rows.push(row);
        };

    for (i, body) in scene.bodies.iter().enumerate() {
        for p in &points {
            let s = potential_body_quadrature(&scene.kernel, body, p)
                .map(|s| (s.value, s.estimated_error));
            emit(format!("body{i}"), s, p);
        }
    }
    for (i, m) in scene.measures.iter().enumerate() {
        for p in &points {
            let s = potential_atomic(&scene.kernel, m, p).map(|s| (s.value, s.estimated_error));
            emit(format!("measure{i}"), s, p);
        }
    }
    scene::write_csv(&args.out.join("potentials.csv"), &header, &rows).map_err(input_err)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_skeleton(args: &SkeletonArgs) -> CmdResult {
    let poly = load_polygon(&args.polygon)?;
    let sk = motherbody::geometry::medial_axis(&poly).map_err(input_err)?;
    ensure_out_dir(&args.out)?;
    scene::write_json(&args.out.join("skeleton.json"), &sk).map_err(input_err)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_fit(args: &FitArgs) -> CmdResult {
    let poly = load_polygon(&args.polygon)?;
    let mut cfg: FitConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(input_err)?;
            serde_json::from_str(&text).map_err(input_err)?
        }
        None => FitConfig::default(),
    };
    if let Some(k) = args.subdivisions {
        cfg.subdivisions = k;
    }
    let centroid = poly.centroid();
    for spec in &args.rings {
        cfg.collocation.push(parse_ring(spec, centroid)?);
    }

    let kernel = motherbody::Kernel::new(2);
    let (measure, report) = mother_of_polygon(&poly, &cfg, &kernel).map_err(input_err)?;
    ensure_out_dir(&args.out)?;
    scene::write_json(&args.out.join("measure.json"), &measure).map_err(input_err)?;
    scene::write_json(&args.out.join("report.json"), &report).map_err(input_err)?;

    let mut rows = Vec::new();
    for (e, atom) in measure.atoms.iter().enumerate() {
        if let motherbody::Atom::Segment { p0, p1, lambda } = atom {
            let len = p0.distance(p1);
            let k = lambda.len() - 1;
            for (i, l) in lambda.iter().enumerate() {
                rows.push(vec![
                    e.to_string(),
                    fmt_f64(len * i as f64 / k as f64),
                    fmt_f64(*l),
                ]);
            }
        }
    }
    scene::write_csv(
        &args.out.join("density.csv"),
        &["edge", "arclength", "density"],
        &rows,
    )
    .map_err(input_err)?;

    println!(
        "fit: holdout_rel={} mass_error={} iterations={}",
        fmt_f64(report.holdout_relative),
        fmt_f64(report.mass_error),
        report.iterations
    );
    if report.holdout_relative > args.tol {
        eprintln!(
            "fit failed: holdout relative residual {} exceeds tolerance {}",
            fmt_f64(report.holdout_relative),
            fmt_f64(args.tol)
        );
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let scene = Scene::from_file(&args.scene).map_err(input_err)?;
    let body = scene.bodies.first().ok_or("scene has no body")?;
    let mu = scene
        .measures
        .first()
        .ok_or("scene has no candidate measure")?;

    let mut cfg: AxiomConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(input_err)?;
            serde_json::from_str(&text).map_err(input_err)?
        }
        None => AxiomConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(tol) = args.tol {
        cfg.tol_match = tol;
    }
    let center = match &body.body {
        motherbody::Body::Polygon(p) => p.centroid(),
        _ => Point2::new(0.0, 0.0),
    };
    for spec in &args.rings {
        cfg.rings.push(parse_ring(spec, center)?);
    }

    let report =
        verify_all(body, &Measure::Atomic(mu.clone()), &cfg, &scene.kernel).map_err(input_err)?;
    ensure_out_dir(&args.out)?;
    scene::write_json(&args.out.join("report.json"), &report).map_err(input_err)?;
    for (name, r) in [
        ("axiom1", &report.axiom1),
        ("axiom2", &report.axiom2),
        ("axiom3", &report.axiom3),
        ("axiom4", &report.axiom4),
        ("axiom5", &report.axiom5),
    ] {
        println!(
            "{name}: {} (worst residual {})",
            if r.pass { "pass" } else { "FAIL" },
            fmt_f64(r.worst_residual)
        );
    }
    if report.overall {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_reproduce(args: &ReproduceArgs) -> CmdResult {
    let case = ReproduceCase::from_name(&args.case)
        .ok_or_else(|| format!("unknown case {:?}", args.case))?;
    let mut params = ReproduceParams {
        radius: args.radius,
        sigma: args.sigma,
        rho: args.rho,
        height: args.height,
        ref_a: args.ref_a,
        eps0: args.eps0,
        ..ReproduceParams::default()
    };
    if let Some(sweep) = &args.sweep {
        params.sweep = sweep
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("bad sweep entry {s}"))
            })
            .collect::<Result<_, _>>()?;
    }
    if let Some(k) = args.subdivisions {
        params.fit.subdivisions = k;
    }
    let tables = reproduce(case, &params).map_err(input_err)?;
    ensure_out_dir(&args.out)?;
    for t in &tables {
        let path = scene::write_table(&args.out, t).map_err(input_err)?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PackReport {
    depth: usize,
    atom_count: usize,
    polygon_area: f64,
    covered_area: f64,
    residual_area: f64,
}

fn cmd_pack(args: &PackArgs) -> CmdResult {
    let poly = load_polygon(&args.polygon)?;
    if args.depth == 0 {
        return Err("depth must be at least 1".to_string());
    }
    let (measure, residual) = ball_packing(&poly, args.depth);
    ensure_out_dir(&args.out)?;
    scene::write_json(&args.out.join("packing.json"), &measure).map_err(input_err)?;
    let report = PackReport {
        depth: args.depth,
        atom_count: measure.atoms.len(),
        polygon_area: poly.area(),
        covered_area: poly.area() - residual,
        residual_area: residual,
    };
    scene::write_json(&args.out.join("pack_report.json"), &report).map_err(input_err)?;
    println!(
        "pack: {} disks, residual area {}",
        report.atom_count,
        fmt_f64(residual)
    );
    Ok(ExitCode::SUCCESS)
}
