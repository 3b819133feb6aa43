mod svg;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use hypdel::delaunay::{thick_thin_triangulation, TriComplex};
use hypdel::equilateral::{certify_equilateral, check_hyperbolizable, hyperbolize, RotationSystem};
use hypdel::linearbound::{
    appendix_b_audit, cluster_decomposition, edge_bound_audit, edge_tallies, locate_vertices_in_pants, pants_constants,
};
use hypdel::surface::{build_atlas, linear_graph, Atlas, Caps, SurfaceSpec};
use hypdel::thickthin::{appendix_a_audit, collar_margin_audit, detect_thin_part, standard_cycle_audit, EPSILON};
use hypdel::verify::{jungerman_ringel, mutation_suite, verify, CheckResult, VerifyOptions};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hypdel", version, about = "Delaunay triangulations of closed hyperbolic surfaces")]
struct Cli {
    /// Radius cap for lifted-point enumeration.
    #[arg(long, global = true)]
    rmax: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SurfaceArg {
    /// Surface spec or atlas cache (JSON).
    #[arg(long)]
    surface: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Build the atlas of a surface and cache it.
    BuildSurface {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = EPSILON)]
        epsilon: f64,
    },
    /// Compute the thick-thin Delaunay triangulation.
    Triangulate {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(long, default_value_t = EPSILON)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a triangulation and print its certificate.
    Verify {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(long)]
        triangulation: PathBuf,
        /// Slack for the empty circumdisk test.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Also check the thick-thin vertex bound.
        #[arg(long)]
        thick_thin: bool,
        #[arg(long, default_value_t = EPSILON)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Cluster decomposition and edge-count audit on a linear-graph surface.
    Bounds {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(long)]
        triangulation: PathBuf,
        /// Grid size per cuff length.
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hyperbolize and certify a triangulation given by a rotation system.
    Equilateral {
        rotation: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Numeric audits of the thick-thin constants.
    Report {
        #[arg(long, default_value_t = EPSILON)]
        epsilon: f64,
    },
    /// Write a corrupted copy of a triangulation (seed from HYPDEL_SEED).
    Mutate {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(long)]
        triangulation: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Serialize, Deserialize)]
struct AtlasCache {
    spec: SurfaceSpec,
    atlas: Atlas,
}

fn load_surface(path: &Path, rmax: Option<f64>) -> anyhow::Result<AtlasCache> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut cache = if value.get("atlas").is_some() {
        serde_json::from_value::<AtlasCache>(value)?
    } else {
        let spec: SurfaceSpec = serde_json::from_value(value)?;
        let (graph, fnc) = spec.parts()?;
        AtlasCache { atlas: build_atlas(&graph, &fnc)?, spec }
    };
    if let Some(r_max) = rmax {
        let caps = Caps { r_max, ..cache.atlas.caps };
        cache.atlas = cache.atlas.with_caps(caps);
    }
    Ok(cache)
}

fn write_json(path: &Path, value: &impl Serialize) -> anyhow::Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)? + "\n").with_context(|| format!("writing {}", path.display()))
}

fn print_json(value: &impl Serialize) -> anyhow::Result<()> {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value)?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn write_svg(path: Option<&PathBuf>, atlas: &Atlas, t: Option<&TriComplex>) -> anyhow::Result<()> {
    if let Some(p) = path {
        std::fs::write(p, svg::render(atlas, t)?).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn all_passed(rows: &[CheckResult]) -> bool {
    rows.iter().all(|c| c.passed)
}

/// Returns whether every check passed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let rmax = cli.rmax;
    match cli.command {
        Command::BuildSurface { spec, out, epsilon } => {
            let cache = load_surface(&spec, rmax)?;
            let thin = detect_thin_part(&cache.atlas, epsilon)?;
            print_json(&json!({
                "genus": cache.atlas.genus,
                "pants": 2 * cache.atlas.genus - 2,
                "cuffs": cache.atlas.cuffs.iter().map(|c| c.length).collect::<Vec<_>>(),
                "charts": cache.atlas.charts.len(),
                "generators": cache.atlas.generators.len(),
                "epsilon": epsilon,
                "thin_cylinders": thin,
            }))?;
            if let Some(out) = out {
                write_json(&out, &cache)?;
            }
            Ok(true)
        }
        Command::Triangulate { surface, epsilon, out, svg } => {
            let cache = load_surface(&surface.surface, rmax)?;
            let tt = thick_thin_triangulation(&cache.atlas, epsilon)?;
            let (v, e, f) = tt.complex.counts();
            let g = cache.atlas.genus;
            print_json(&json!({
                "genus": g,
                "vertices": v,
                "edges": e,
                "triangles": f,
                "vertex_bound": 151 * g,
                "jungerman_ringel": jungerman_ringel(g),
                "cylinder_vertices": tt.p1,
                "net_vertices": tt.p2,
                "cylinders": tt.cylinders,
                "standard_triangles": tt.standard_triangles,
            }))?;
            if let Some(out) = out {
                tt.complex.save(&out)?;
            }
            write_svg(svg.as_ref(), &cache.atlas, Some(&tt.complex))?;
            Ok(true)
        }
        Command::Verify { surface, triangulation, tol, thick_thin, epsilon, out, svg } => {
            let cache = load_surface(&surface.surface, rmax)?;
            let t = TriComplex::load(&triangulation)?;
            let opts = VerifyOptions { delaunay_tol: tol, epsilon, thick_thin, ..VerifyOptions::default() };
            let cert = verify(&t, &cache.atlas, &opts)?;
            print_json(&cert)?;
            if let Some(out) = out {
                write_json(&out, &cert)?;
            }
            write_svg(svg.as_ref(), &cache.atlas, Some(&t))?;
            Ok(cert.passed)
        }
        Command::Bounds { surface, triangulation, grid, out } => {
            let cache = load_surface(&surface.surface, rmax)?;
            let g = cache.spec.genus;
            let linear: Vec<[usize; 2]> = linear_graph(g)?.edges.iter().map(|&(u, v)| [u, v]).collect();
            if cache.spec.graph != linear {
                bail!("the surface is not built on the linear pants graph of genus {g}");
            }
            let t = TriComplex::load(&triangulation)?;
            let a = cache.spec.lengths.iter().copied().fold(f64::INFINITY, f64::min);
            let b = cache.spec.lengths.iter().copied().fold(0.0, f64::max);
            let constants = pants_constants(a, b, grid)?;
            let loc = locate_vertices_in_pants(&cache.atlas, &t)?;
            let d = cluster_decomposition(&loc.tallies, constants.n)?;
            let e = edge_tallies(&d, &loc, &t)?;
            let edge_bounds = edge_bound_audit(&d, &e, &t);
            let subgraphs = appendix_b_audit(&d, &e, &t)?;
            let passed = all_passed(&edge_bounds) && all_passed(&subgraphs);
            let report = json!({
                "passed": passed,
                "constants": constants,
                "tallies": loc.tallies,
                "empty_pants": loc.empty_pants(),
                "decomposition": d,
                "edges": e,
                "edge_bounds": edge_bounds,
                "subgraphs": subgraphs,
            });
            print_json(&report)?;
            if let Some(out) = out {
                write_json(&out, &report)?;
            }
            Ok(passed)
        }
        Command::Equilateral { rotation, out, svg } => {
            let rot = RotationSystem::load(&rotation)?;
            let h = check_hyperbolizable(&rot)?;
            if !h.verdict {
                print_json(&json!({ "hyperbolizable": h }))?;
                return Ok(false);
            }
            let s = hyperbolize(&rot)?;
            let cert = certify_equilateral(&s)?;
            print_json(&json!({
                "hyperbolizable": h,
                "genus": s.genus,
                "angle": s.angle,
                "side": s.side,
                "total_defect": s.total_defect()?,
                "certificate": cert,
            }))?;
            if let Some(out) = out {
                s.complex.save(&out)?;
            }
            write_svg(svg.as_ref(), &s.atlas, Some(&s.complex))?;
            Ok(cert.passed)
        }
        Command::Report { epsilon } => {
            let collar = collar_margin_audit(epsilon);
            let appendix_a = appendix_a_audit(epsilon);
            let cycle = standard_cycle_audit(epsilon);
            let passed = collar.passed && appendix_a.passed && cycle.passed;
            print_json(&json!({
                "passed": passed,
                "collar": collar,
                "appendix_a": appendix_a,
                "standard_cycle": cycle,
            }))?;
            Ok(passed)
        }
        Command::Mutate { surface, triangulation, out } => {
            let cache = load_surface(&surface.surface, rmax)?;
            let t = TriComplex::load(&triangulation)?;
            let seed = match std::env::var("HYPDEL_SEED") {
                Ok(s) => s.parse::<u64>().with_context(|| format!("HYPDEL_SEED = {s:?} is not an integer"))?,
                Err(_) => 0,
            };
            let (bad, mutation) = mutation_suite(&t, &cache.atlas, 1, seed)?.pop().context("no mutation produced")?;
            bad.save(&out)?;
            print_json(&json!({ "seed": seed, "mutation": mutation }))?;
            Ok(true)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<hypdel::Error>() {
        Some(hypdel::Error::RadiusCap { .. } | hypdel::Error::EnumerationCap { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
