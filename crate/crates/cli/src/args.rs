use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use agroline_core::planner::PlanParams;

#[derive(Debug, Parser)]
#[command(
    name = "agroline",
    version,
    about = "Contour-following plantation lines for sloped plots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plan the lines and write plan.svg, plan.geojson, waypoints.csv and report.txt.
    Plan(PlanArgs),
    /// Validate the inputs and print terrain bounds, H, L and plot convexity.
    Check(CheckArgs),
    /// Draw terrain, contours and plot (and optionally the plan) to scene.svg.
    Render(RenderArgs),
    /// Run the session server used for interactive subdivision.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Inputs {
    /// Terrain level curves, one `x y z` row per point.
    pub terrain: PathBuf,
    /// Plot polygon, one `x y` row per vertex.
    pub plot: PathBuf,
}

/// Overrides for the planning parameters; unset flags keep the defaults.
#[derive(Debug, Clone, Copy, Default, Args)]
pub struct ParamArgs {
    /// Distance between neighbouring lines, metres [default: 3].
    #[arg(long)]
    pub spacing: Option<f64>,
    /// Smallest turning radius, metres [default: 50].
    #[arg(long)]
    pub min_radius: Option<f64>,
    /// Largest slant, degrees [default: 5].
    #[arg(long)]
    pub max_slope: Option<f64>,
    /// Boundary resampling step, metres [default: 10].
    #[arg(long)]
    pub max_step: Option<f64>,
    /// Initial level offset of the master-line ends, metres [default: 2].
    #[arg(long)]
    pub de0: Option<f64>,
    /// Smallest level offset before the optimizer stops [default: 1e-6].
    #[arg(long)]
    pub de_floor: Option<f64>,
    /// Optimizer iteration cap [default: 60].
    #[arg(long)]
    pub max_iters: Option<usize>,
}

impl ParamArgs {
    pub fn resolve(&self) -> PlanParams {
        let d = PlanParams::default();
        PlanParams {
            spacing: self.spacing.unwrap_or(d.spacing),
            min_radius: self.min_radius.unwrap_or(d.min_radius),
            max_slope_deg: self.max_slope.unwrap_or(d.max_slope_deg),
            max_step: self.max_step.unwrap_or(d.max_step),
            de0: self.de0.unwrap_or(d.de0),
            de_floor: self.de_floor.unwrap_or(d.de_floor),
            max_iters: self.max_iters.unwrap_or(d.max_iters),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PlanArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Saved subdivision pairs; required for concave plots.
    #[arg(long)]
    pub eplot: Option<PathBuf>,
    /// Output directory, created if absent.
    #[arg(short, long, default_value = "out")]
    pub out_dir: PathBuf,
    /// Arc-length step between CSV waypoints, metres.
    #[arg(long, default_value_t = agroline_core::export::DEFAULT_WAYPOINT_STEP)]
    pub waypoint_step: f64,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Also fit the terrain surface and print its coefficient matrix q.
    #[arg(long)]
    pub dump_q: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Saved subdivision pairs, used with --plan on concave plots.
    #[arg(long)]
    pub eplot: Option<PathBuf>,
    /// Output directory, created if absent.
    #[arg(short, long, default_value = "out")]
    pub out_dir: PathBuf,
    /// Also plan and draw the master line and parallels.
    #[arg(long)]
    pub plan: bool,
    /// Number of polynomial contour levels.
    #[arg(long, default_value_t = agroline_server::SCENE_CONTOURS)]
    pub contours: usize,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    /// Port to listen on; 0 picks a free port.
    #[arg(long, env = "AGROLINE_PORT", default_value_t = 8080)]
    pub port: u16,
    /// Address to bind.
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Directory for saved eplot files.
    #[arg(short, long)]
    pub out_dir: Option<PathBuf>,
    /// Idle time after which a session is dropped, seconds.
    #[arg(long, default_value_t = 3600)]
    pub idle_timeout: u64,
    #[command(flatten)]
    pub params: ParamArgs,
}
