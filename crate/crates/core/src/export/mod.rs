//! Plan serialization: SVG overview, GeoJSON, CSV waypoints and the text report.

mod contour;
mod flatten;
mod geojson;
mod report;
mod scene;
mod svg;
mod waypoints;

pub use contour::{contour_levels, contour_lines, CONTOUR_GRID};
pub use flatten::{flatten_arc, flatten_curve, FLATTEN_TOLERANCE};
pub use geojson::write_geojson;
pub use report::write_report;
pub use scene::{scene_from_plan, Layer, RenderScene, Shape};
pub use svg::write_svg;
pub use waypoints::{write_waypoints_csv, DEFAULT_WAYPOINT_STEP};
