use std::fmt::Write as _;

use super::scene::{RenderScene, Shape};
use crate::Point2;

const STYLE: &str = "\
.level-curve{fill:none;stroke:#9c7a4b;stroke-width:0.6}
.contour{fill:none;stroke:#3d7ab8;stroke-width:0.6;stroke-dasharray:3 2}
.plot{fill:#eef5e6;stroke:#222;stroke-width:1.5}
.vertex{fill:#222}
.master{fill:none;stroke:#c0392b;stroke-width:2}
.parallel{fill:none;stroke:#2e8b57;stroke-width:0.5}
.failing{stroke:#e67e22;stroke-width:1}
";

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// SVG 1.1 document with one named group per layer and north up.
pub fn write_svg(scene: &RenderScene) -> String {
    let v = scene.viewport;
    let (w, h) = (v.width(), v.height());
    let map = |p: &Point2| (p.x - v.min_x, v.max_y - p.y);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.2}\" height=\"{h:.2}\" viewBox=\"0 0 {w:.2} {h:.2}\">"
    );
    let _ = write!(out, "<style>\n{STYLE}</style>\n");
    for layer in &scene.layers {
        let _ = writeln!(
            out,
            "<g id=\"{}\" class=\"{}\">",
            escape(&layer.name),
            escape(&layer.style)
        );
        for shape in &layer.shapes {
            match shape {
                Shape::Path { parts, closed, failing } => {
                    let mut d = String::new();
                    for part in parts.iter().filter(|p| !p.is_empty()) {
                        for (k, p) in part.iter().enumerate() {
                            let (x, y) = map(p);
                            let _ = write!(d, "{}{x:.2} {y:.2}", if k == 0 { "M" } else { " L" });
                        }
                        if *closed {
                            d.push_str(" Z");
                        }
                        d.push(' ');
                    }
                    if d.is_empty() {
                        continue;
                    }
                    let class = if *failing { " class=\"failing\"" } else { "" };
                    let _ = writeln!(out, "<path d=\"{}\"{class}/>", d.trim_end());
                }
                Shape::Marker { at } => {
                    let (x, y) = map(at);
                    let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2\"/>");
                }
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
