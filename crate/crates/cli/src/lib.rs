//! Headless planning pipeline and server launcher behind the `agroline` binary.

pub mod args;
pub mod error;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use agroline_core::export::{scene_from_plan, write_geojson, write_report, write_svg, write_waypoints_csv};
use agroline_core::geometry::is_convex;
use agroline_core::ingest::{parse_eplot, parse_level_curves, parse_plot};
use agroline_core::planner::{plan_field, FieldPlan, PlanError, PlanParams};
use agroline_core::surface::{build_sample_grid, fit_surface, MAX_GRID};
use agroline_core::{Pairs64, Plot64, Surface64, Terrain64};
use agroline_server::ServerConfig;

pub use args::{Cli, Command};
pub use error::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONSTRAINT: i32 = 2;
pub const EXIT_NEEDS_SUBDIVISION: i32 = 3;

/// Files written by `plan`.
pub const PLAN_OUTPUTS: [&str; 4] = ["plan.svg", "plan.geojson", "waypoints.csv", "report.txt"];

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Plan(a) => cmd_plan(&a),
        Command::Check(a) => cmd_check(&a),
        Command::Render(a) => cmd_render(&a),
        Command::Serve(a) => cmd_serve(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write(dir: &Path, name: &str, content: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    std::fs::write(&path, content).map_err(|source| CliError::Write {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })
}

/// Parsed terrain and plot.
pub struct Loaded {
    pub terrain: Terrain64,
    pub plot: Plot64,
}

pub fn load(inputs: &args::Inputs) -> Result<Loaded, CliError> {
    let terrain = parse_level_curves(&read(&inputs.terrain)?).map_err(|source| CliError::Ingest {
        path: inputs.terrain.clone(),
        source,
    })?;
    let plot = parse_plot(&read(&inputs.plot)?).map_err(|source| CliError::Ingest {
        path: inputs.plot.clone(),
        source,
    })?;
    Ok(Loaded { terrain, plot })
}

fn load_pairs(path: Option<&Path>, plot: &Plot64) -> Result<Option<Pairs64>, CliError> {
    let Some(path) = path else { return Ok(None) };
    parse_eplot(&read(path)?, plot)
        .map(Some)
        .map_err(|source| CliError::Ingest {
            path: path.to_path_buf(),
            source,
        })
}

fn fit(loaded: &Loaded, path: &Path) -> Result<Surface64, CliError> {
    build_sample_grid(&loaded.terrain, MAX_GRID, MAX_GRID)
        .and_then(|g| fit_surface(&g))
        .map_err(|source| CliError::Surface {
            path: path.to_path_buf(),
            source,
        })
}

fn plan_inputs(
    inputs: &args::Inputs,
    eplot: Option<&Path>,
    params: &PlanParams,
) -> Result<(Loaded, FieldPlan), CliError> {
    let loaded = load(inputs)?;
    let pairs = load_pairs(eplot, &loaded.plot)?;
    let field = plan_field(&loaded.terrain, &loaded.plot, pairs.as_ref(), params).map_err(|e| match e {
        PlanError::NeedsSubdivision => CliError::NeedsSubdivision {
            path: inputs.plot.clone(),
        },
        PlanError::Surface(source) => CliError::Surface {
            path: inputs.terrain.clone(),
            source,
        },
        other => CliError::Plan(other),
    })?;
    Ok((loaded, field))
}

pub fn cmd_plan(a: &args::PlanArgs) -> Result<i32, CliError> {
    let params = a.params.resolve();
    params.validate().map_err(CliError::Plan)?;
    if !(a.waypoint_step.is_finite() && a.waypoint_step > 0.0) {
        return Err(CliError::Plan(PlanError::InvalidParams(format!(
            "waypoint step must be positive, got {}",
            a.waypoint_step
        ))));
    }
    let (loaded, field) = plan_inputs(&a.inputs, a.eplot.as_deref(), &params)?;
    let plan = &field.plan;
    create_dir(&a.out_dir)?;
    let scene = scene_from_plan(
        &loaded.terrain,
        &field.surface,
        &loaded.plot,
        Some(plan),
        agroline_server::SCENE_CONTOURS,
    );
    let report = write_report(plan);
    let contents = [
        write_svg(&scene),
        write_geojson(plan),
        write_waypoints_csv(plan, a.waypoint_step),
        report.clone(),
    ];
    for (name, content) in PLAN_OUTPUTS.iter().zip(&contents) {
        write(&a.out_dir, name, content)?;
    }
    print!("{report}");
    println!("wrote {} files to {}", PLAN_OUTPUTS.len(), a.out_dir.display());
    Ok(if plan.passes() { EXIT_OK } else { EXIT_CONSTRAINT })
}

/// Text printed by `check`.
pub fn check_summary(loaded: &Loaded) -> String {
    let t = &loaded.terrain;
    let b = t.bounds();
    let (low, high) = t.z_range();
    let plot = &loaded.plot;
    let mut out = String::new();
    let _ = writeln!(out, "terrain: {} points on {} level curves", t.len(), t.levels().len());
    let _ = writeln!(
        out,
        "bounds: x {:.2} .. {:.2}, y {:.2} .. {:.2}",
        b.min_x, b.max_x, b.min_y, b.max_y
    );
    let _ = writeln!(out, "H: {high:.2}");
    let _ = writeln!(out, "L: {low:.2}");
    let _ = writeln!(out, "plot: {} vertices, area {:.2} m2", plot.len(), plot.area());
    let verdict = if is_convex(plot) { "convex" } else { "concave" };
    let _ = writeln!(out, "plot is {verdict}");
    out
}

pub fn cmd_check(a: &args::CheckArgs) -> Result<i32, CliError> {
    let loaded = load(&a.inputs)?;
    print!("{}", check_summary(&loaded));
    if a.dump_q {
        let surface = fit(&loaded, &a.inputs.terrain)?;
        print!("{}", surface.coefficients_text());
    }
    Ok(EXIT_OK)
}

pub fn cmd_render(a: &args::RenderArgs) -> Result<i32, CliError> {
    let params = a.params.resolve();
    let (loaded, surface, plan) = if a.plan {
        params.validate().map_err(CliError::Plan)?;
        let (loaded, field) = plan_inputs(&a.inputs, a.eplot.as_deref(), &params)?;
        (loaded, field.surface, Some(field.plan))
    } else {
        let loaded = load(&a.inputs)?;
        let surface = fit(&loaded, &a.inputs.terrain)?;
        (loaded, surface, None)
    };
    create_dir(&a.out_dir)?;
    let scene = scene_from_plan(&loaded.terrain, &surface, &loaded.plot, plan.as_ref(), a.contours);
    let path = write(&a.out_dir, "scene.svg", &write_svg(&scene))?;
    println!("wrote {}", path.display());
    Ok(EXIT_OK)
}

async fn shutdown_signal() {
    #[cfg(unix)]
    {
        let mut term = match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(s) => s,
            Err(_) => {
                let _ = tokio::signal::ctrl_c().await;
                return;
            }
        };
        tokio::select! {
            _ = tokio::signal::ctrl_c() => {}
            _ = term.recv() => {}
        }
    }
    #[cfg(not(unix))]
    {
        let _ = tokio::signal::ctrl_c().await;
    }
}

pub fn cmd_serve(a: &args::ServeArgs) -> Result<i32, CliError> {
    let params = a.params.resolve();
    params.validate().map_err(CliError::Plan)?;
    let config = ServerConfig {
        out_dir: a.out_dir.clone(),
        idle_timeout: Duration::from_secs(a.idle_timeout),
        params,
    };
    let addr = format!("{}:{}", a.host, a.port);
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(CliError::Server)?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(&addr)
            .await
            .map_err(|source| CliError::Bind {
                addr: addr.clone(),
                source,
            })?;
        let local = listener.local_addr().map_err(CliError::Server)?;
        announce(&format!("agroline server listening on http://{local}"));
        agroline_server::serve(listener, config, shutdown_signal())
            .await
            .map_err(CliError::Server)?;
        announce("server stopped");
        Ok(EXIT_OK)
    })
}

fn announce(line: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}
