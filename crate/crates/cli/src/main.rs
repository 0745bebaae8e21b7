//! `icosa`: construct the icosahedral invariants and equivariant maps,
//! rerun the search for the two soccer-ball maps, iterate them, render
//! their basins, and build the quintic resolvent.

use std::path::PathBuf;

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use icosa_core::context::Context;
use icosa_core::dynamics::{converge_to_cycle, find_edge_anchor};
use icosa_core::equivariants::check_special_orbit_table;
use icosa_core::group::ProjectivePoint;
use icosa_core::render::{self, Viewport};
use icosa_core::resolvent::{
    fit_coefficients, resolvent_at, symmetry_breaking_demo, TauDecomposition, TetrahedralSystem,
};
use icosa_core::search::basins::run_triangle_grid;
use icosa_core::RunConfig;

#[derive(Parser)]
#[command(name = "icosa", version, about)]
struct Cli {
    /// Numeric tolerance for group and orbit checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Significant digits for root polishing (minimum 15).
    #[arg(long, global = true, default_value_t = 30)]
    digits: u32,
    /// Worker threads (falls back to ICOSA_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized checks; recorded in every JSON artifact.
    #[arg(long, default_value_t = 1728)]
    seed: u64,
    /// Write machine-readable output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON even for subcommands that default to a table.
    #[arg(long, default_value_t = false)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact identities, the equivariance suite, the special-orbit
    /// behavior table, and the mirror theorem check.
    Verify,
    /// Export the special orbits and mirror circles.
    Group {
        /// Output JSON path.
        #[arg(long, default_value = "orbits.json")]
        export: PathBuf,
    },
    /// Rerun the search: coefficient pairs, root census, classifications.
    Search {
        /// Render the Newton-basin raster to this image (PPM or PNG).
        #[arg(long)]
        newton_png: Option<PathBuf>,
        /// Rows of the triangular cell grid.
        #[arg(long, default_value_t = 300)]
        res: usize,
    },
    /// Iterate a special map or locate the pentagon-edge anchor.
    Dynamics {
        /// Which map to iterate.
        #[arg(long, value_enum, default_value_t = MapChoice::G)]
        map: MapChoice,
        /// Initial point "re,im"; the trajectory is reported.
        #[arg(long, value_name = "RE,IM")]
        seed: Option<String>,
        /// Write the trajectory to this JSON file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Print the pentagon-edge anchor and its multiplier.
        #[arg(long, default_value_t = false)]
        edge_anchor: bool,
    },
    /// Render basins of attraction or the Julia overlay.
    Render {
        #[arg(long, value_enum)]
        map: RenderMap,
        #[arg(long, value_enum)]
        kind: RenderKind,
        /// Image width in pixels.
        #[arg(long, default_value_t = 500)]
        res: usize,
        /// Chart window "x0,y0,x1,y1".
        #[arg(long)]
        viewport: Option<String>,
        /// Output image (.ppm exact, .png when requested).
        #[arg(long, default_value = "render.ppm")]
        out: PathBuf,
    },
    /// Quintic resolvent: coefficients at a point, constant fits, and the
    /// symmetry-breaking demo.
    Resolvent {
        /// Evaluate at this point "re,im".
        #[arg(long)]
        z: Option<String>,
        /// Run the Monte-Carlo symmetry-breaking demo.
        #[arg(long, default_value_t = false)]
        demo: bool,
        /// Demo sample count.
        #[arg(long, default_value_t = 1000)]
        seeds: usize,
        /// Select the opposite chiral system of tetrahedra.
        #[arg(long, default_value_t = false)]
        flip: bool,
        /// Write the resolvent report to this JSON file.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MapChoice {
    G,
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderMap {
    G,
    H,
    Phi,
    Eta,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderKind {
    Basins,
    Julia,
    /// Orthographic scatter of the map's critical orbit (with the five
    /// tetrahedral-icosahedron colors for g and h) plus a JSON side file.
    Scatter,
}

fn parse_point(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        bail!("expected \"re,im\", got {s:?}");
    }
    Ok(Complex64::new(
        parts[0].trim().parse()?,
        parts[1].trim().parse()?,
    ))
}

fn emit(cli: &Cli, value: serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(&value)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let threads = cli.threads.or_else(|| {
        std::env::var("ICOSA_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    let config = RunConfig {
        tol: cli.tol,
        digits: cli.digits,
        threads,
        seed: cli.seed,
    };
    let ctx = Context::build(config).context("pipeline construction failed")?;

    match &cli.command {
        Command::Verify => run_verify(&cli, &ctx),
        Command::Group { export } => run_group(&cli, &ctx, export),
        Command::Search { newton_png, res } => run_search(&cli, &ctx, newton_png.as_deref(), *res),
        Command::Dynamics {
            map,
            seed,
            trace,
            edge_anchor,
        } => run_dynamics(&cli, &ctx, *map, seed.as_deref(), trace.as_deref(), *edge_anchor),
        Command::Render {
            map,
            kind,
            res,
            viewport,
            out,
        } => run_render(&ctx, *map, *kind, *res, viewport.as_deref(), out),
        Command::Resolvent {
            z,
            demo,
            seeds,
            flip,
            json,
        } => run_resolvent(&cli, &ctx, z.as_deref(), *demo, *seeds, *flip, json.as_deref()),
    }
}

fn run_verify(cli: &Cli, ctx: &Context) -> Result<i32> {
    let mut checks: Vec<(&str, bool, String)> = Vec::new();

    let syzygy = ctx.inv.verify_syzygy();
    checks.push(("syzygy 1728 F^5 - H^3 + T^2 = 0 (exact)", syzygy, String::new()));

    let relation = ctx.eq.verify_module_relation(&ctx.inv);
    checks.push((
        "module relation 5 T eps + 5 H phi - 3 F eta = (0,0) (exact)",
        relation,
        String::new(),
    ));

    let hess_ok = ctx.inv.hessian_scale == icosa_core::Q::from_integer((-121).into());
    checks.push((
        "H = hess(F) / scale",
        hess_ok,
        format!("scale = {}", ctx.inv.hessian_scale),
    ));
    let jac_ok = ctx.inv.jacobian_scale == icosa_core::Q::from_integer((-20).into());
    checks.push((
        "T = J_(F,H) / scale",
        jac_ok,
        format!("scale = {}", ctx.inv.jacobian_scale),
    ));

    let samples: Vec<Complex64> = (0..20)
        .map(|k| {
            let t = k as f64 * 0.37 + 0.11;
            Complex64::new(t.cos() * (0.3 + 0.05 * k as f64), t.sin() * 0.9)
        })
        .collect();
    for (name, map) in [
        ("phi", ctx.eq.phi.to_complex()),
        ("eta", ctx.eq.eta.to_complex()),
        ("g", ctx.soccer.map.clone()),
        ("h", ctx.dual_soccer.map.clone()),
    ] {
        let defect = icosa_core::equivariants::equivariance_defect(&map, &ctx.group, &samples);
        checks.push((
            match name {
                "phi" => "equivariance of phi",
                "eta" => "equivariance of eta",
                "g" => "equivariance of g",
                _ => "equivariance of h",
            },
            defect < 1e-8,
            format!("defect = {defect:.2e}"),
        ));
    }

    let table = check_special_orbit_table(&ctx.eq, &ctx.vertices, &ctx.faces, &ctx.edges)?;
    checks.push((
        "special-orbit behavior table (phi, eta)",
        table.matches_expected(),
        String::new(),
    ));

    let mut off_mirror = 0usize;
    for orbit in [&ctx.soccer.orbit, &ctx.dual_soccer.orbit] {
        for p in &orbit.points {
            if ctx.group.mirror_containing(p, 1e-8).is_none() {
                off_mirror += 1;
            }
        }
    }
    checks.push((
        "all 120 critical points lie on mirrors",
        off_mirror == 0,
        format!("{off_mirror} off-mirror"),
    ));

    let all_ok = checks.iter().all(|(_, ok, _)| *ok);
    if cli.json {
        let value = serde_json::json!({
            "seed": ctx.config.seed,
            "pass": all_ok,
            "checks": checks
                .iter()
                .map(|(name, ok, note)| serde_json::json!({
                    "name": name, "pass": ok, "note": note,
                }))
                .collect::<Vec<_>>(),
        });
        emit(cli, value)?;
    } else {
        for (name, ok, note) in &checks {
            let tag = if *ok { "PASS" } else { "FAIL" };
            if note.is_empty() {
                println!("{tag}  {name}");
            } else {
                println!("{tag}  {name}  [{note}]");
            }
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn point_json(p: &ProjectivePoint) -> serde_json::Value {
    match p.to_affine() {
        Some(z) => serde_json::json!({"re": z.re, "im": z.im, "infinite": false}),
        None => serde_json::json!({"re": 0.0, "im": 0.0, "infinite": true}),
    }
}

fn run_group(cli: &Cli, ctx: &Context, export: &std::path::Path) -> Result<i32> {
    let orbit_json = |orbit: &icosa_core::group::Orbit| {
        orbit.points.iter().map(point_json).collect::<Vec<_>>()
    };
    let mirrors: Vec<serde_json::Value> = ctx
        .group
        .mirrors
        .iter()
        .map(|m| serde_json::to_value(m.chart()).unwrap())
        .collect();
    let value = serde_json::json!({
        "seed": ctx.config.seed,
        "order_census": ctx.group.order_census(),
        "vertices": orbit_json(&ctx.vertices),
        "face_centers": orbit_json(&ctx.faces),
        "edge_midpoints": orbit_json(&ctx.edges),
        "mirrors": mirrors,
    });
    std::fs::write(export, serde_json::to_string_pretty(&value)?)?;
    println!("wrote {}", export.display());
    let _ = cli;
    Ok(0)
}

fn run_search(
    cli: &Cli,
    ctx: &Context,
    newton_image: Option<&std::path::Path>,
    res: usize,
) -> Result<i32> {
    let mismatches: Vec<serde_json::Value> = ctx
        .residual
        .diff_against_published()
        .into_iter()
        .map(|(i, j, d)| serde_json::json!([i, j, d.to_string()]))
        .collect();
    let mut value = serde_json::json!({
        "seed": ctx.config.seed,
        "coefficient_pairs": {
            "g": [1.0, ctx.soccer.coeff_b],
            "h": [1.0, ctx.dual_soccer.coeff_b],
        },
        "census": ctx.census,
        "classification": {
            "o1": ctx.soccer.label,
            "o2": ctx.dual_soccer.label,
        },
        "real_slices": {
            "o1": ctx.soccer.real_slice,
            "o2": ctx.dual_soccer.real_slice,
        },
        "published_residual": {
            "fitted_scale": ctx.residual.published_scale().to_string(),
            "coefficient_mismatches": mismatches,
        },
    });

    if let Some(path) = newton_image {
        let targets = ctx.newton_targets();
        let tri = ctx.fundamental_triangle()?;
        let raster = render::render_newton_basins(&ctx.residual, &targets, &tri, 700, 200);
        raster.write(path)?;
        let (_, stats) = run_triangle_grid(&ctx.residual, &targets, &tri, res, 200);
        value["newton_basins"] = serde_json::json!({
            "image": path.display().to_string(),
            "grid_rows": res,
            "stats": stats,
        });
    }
    emit(cli, value)?;
    Ok(0)
}

fn run_dynamics(
    cli: &Cli,
    ctx: &Context,
    which: MapChoice,
    seed_point: Option<&str>,
    trace: Option<&std::path::Path>,
    edge_anchor: bool,
) -> Result<i32> {
    let (solution, cycles) = match which {
        MapChoice::G => (&ctx.soccer, &ctx.soccer_cycles),
        MapChoice::H => (&ctx.dual_soccer, &ctx.dual_cycles),
    };
    let mut value = serde_json::json!({ "seed": ctx.config.seed });

    if edge_anchor {
        let anchor = find_edge_anchor(&solution.map, &solution.orbit)?;
        value["edge_anchor"] = serde_json::json!({
            "z": anchor.z,
            "multiplier": anchor.multiplier,
            "flanking": [[anchor.x.re, anchor.x.im], [anchor.y.re, anchor.y.im]],
        });
    }

    if let Some(s) = seed_point {
        let z0 = parse_point(s)?;
        let p0 = ProjectivePoint::from_affine(z0);
        let out = converge_to_cycle(&solution.map, cycles, &p0, 400, 1e-12, 1e-6);
        let mut history = Vec::new();
        let mut cur = p0;
        for _ in 0..out.iterations.min(400) {
            history.push(point_json(&cur));
            cur = solution.map.apply(&cur);
        }
        history.push(point_json(&cur));
        value["trajectory"] = serde_json::json!({
            "start": [z0.re, z0.im],
            "iterations": out.iterations,
            "cycle": out.cycle,
            "history": history,
        });
        if let Some(path) = trace {
            std::fs::write(path, serde_json::to_string_pretty(&value["trajectory"])?)?;
        }
    }
    emit(cli, value)?;
    Ok(0)
}

fn run_render(
    ctx: &Context,
    which: RenderMap,
    kind: RenderKind,
    res: usize,
    viewport: Option<&str>,
    out_file: &std::path::Path,
) -> Result<i32> {
    let viewport = match viewport {
        Some(s) => {
            let v: Vec<f64> = s
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()?;
            if v.len() != 4 {
                bail!("viewport needs four numbers x0,y0,x1,y1");
            }
            Viewport {
                x0: v[0],
                y0: v[1],
                x1: v[2],
                y1: v[3],
            }
        }
        None => Viewport::square(2.0),
    };
    // each map is paired with its critical orbit
    let (map, orbit) = match which {
        RenderMap::G => (ctx.soccer.map.clone(), ctx.soccer.orbit.clone()),
        RenderMap::H => (ctx.dual_soccer.map.clone(), ctx.dual_soccer.orbit.clone()),
        RenderMap::Phi => (ctx.eq.phi.to_complex(), ctx.faces.clone()),
        RenderMap::Eta => (ctx.eq.eta.to_complex(), ctx.vertices.clone()),
    };
    let cycles = icosa_core::dynamics::two_cycles(&map, &orbit)?;
    match kind {
        RenderKind::Basins => {
            let (raster, stats) = render::render_basins(&map, &cycles, res, res, viewport, 400);
            raster.write(out_file)?;
            println!(
                "wrote {} ({} px, {} converged, {} cycles)",
                out_file.display(),
                stats.pixels,
                stats.converged,
                stats.distinct_cycles
            );
        }
        RenderKind::Julia => {
            let anchor = find_edge_anchor(&map, &orbit)?;
            let anchor_orbit = ctx.group.orbit_of(&ProjectivePoint::from_affine(
                Complex64::new(anchor.z, 0.0),
            ));
            let (raster, stats) = render::render_julia(
                &map,
                &cycles,
                &ctx.group.mirrors,
                &orbit,
                &anchor,
                &anchor_orbit,
                res,
                res,
                viewport,
                400,
            );
            raster.write(out_file)?;
            println!(
                "wrote {} ({} px, {} marked)",
                out_file.display(),
                stats.pixels,
                stats.marked
            );
        }
        RenderKind::Scatter => {
            let labels = match which {
                RenderMap::G | RenderMap::H => {
                    let ts = TetrahedralSystem::build(&ctx.group, &ctx.faces, false)?;
                    Some(TauDecomposition::build(&ctx.group, &ts, &orbit)?.labels)
                }
                _ => None,
            };
            let raster = render::render_orbit_scatter(&orbit, labels.as_deref(), res.max(64));
            raster.write(out_file)?;
            let json = serde_json::json!({
                "points": orbit.points.iter().map(point_json).collect::<Vec<_>>(),
                "labels": labels,
            });
            let side = out_file.with_extension("json");
            std::fs::write(&side, serde_json::to_string_pretty(&json)?)?;
            println!("wrote {} and {}", out_file.display(), side.display());
        }
    }
    Ok(0)
}

fn run_resolvent(
    cli: &Cli,
    ctx: &Context,
    z: Option<&str>,
    demo: bool,
    seeds: usize,
    flip: bool,
    json_path: Option<&std::path::Path>,
) -> Result<i32> {
    let ts = TetrahedralSystem::build(&ctx.group, &ctx.faces, flip)?;
    let fit = fit_coefficients(&ts, &ctx.inv, 50, ctx.config.seed)?;
    let mut value = serde_json::json!({
        "seed": ctx.config.seed,
        "alt5_action": ts.action_is_alt5(),
        "coefficient_fit": fit,
    });
    if let Some(s) = z {
        let zv = parse_point(s)?;
        let sample = resolvent_at(&ts, &ctx.inv, zv);
        value["at"] = serde_json::to_value(&sample)?;
    }
    if demo {
        let tau = TauDecomposition::build(&ctx.group, &ts, &ctx.soccer.orbit)?;
        let report = symmetry_breaking_demo(
            &ctx.soccer.map,
            &ctx.soccer_cycles,
            &ctx.soccer.orbit,
            &tau,
            seeds,
            ctx.config.seed,
        );
        value["demo"] = serde_json::to_value(&report)?;
        value["tau_sizes"] = serde_json::json!((0..5)
            .map(|a| tau.labels.iter().filter(|&&l| l == a).count())
            .collect::<Vec<_>>());
    }
    if let Some(path) = json_path {
        std::fs::write(path, serde_json::to_string_pretty(&value)?)?;
        println!("wrote {}", path.display());
    } else {
        emit(cli, value)?;
    }
    Ok(0)
}
