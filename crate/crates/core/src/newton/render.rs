use std::fmt::Write;

use super::polygon::{NewtonPolygon, Point};

/// Text plot: `*` vertex, `o` other point, `+` lattice point counted by the
/// index, `.` anything else.
pub fn render_ascii(polygon: &NewtonPolygon) -> String {
    let width = polygon.points.iter().map(|p| p.x).max().unwrap_or(0);
    let height = polygon.points.iter().map(|p| p.y).max().unwrap_or(0);
    let label = height.to_string().len();
    let mut out = String::new();
    for y in (0..=height).rev() {
        let _ = write!(out, "{y:>label$} |");
        for x in 0..=width {
            let pt = Point::new(x, y);
            let c = if polygon.vertices.contains(&pt) {
                '*'
            } else if polygon.points.contains(&pt) {
                'o'
            } else if x >= 1 && y >= 1 && polygon.on_or_below(pt) {
                '+'
            } else {
                '.'
            };
            out.push(' ');
            out.push(c);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{:>label$} +{}", "", "--".repeat(width as usize + 1));
    let _ = write!(out, "{:>label$}  ", "");
    for x in 0..=width {
        let _ = write!(out, " {}", x % 10);
    }
    out.push('\n');
    out
}

/// Standalone SVG plot of the points and the lower hull.
pub fn render_svg(polygon: &NewtonPolygon) -> String {
    const UNIT: u64 = 40;
    const PAD: u64 = 30;
    let width = polygon.points.iter().map(|p| p.x).max().unwrap_or(0);
    let height = polygon.points.iter().map(|p| p.y).max().unwrap_or(0);
    let w = width * UNIT + 2 * PAD;
    let h = height * UNIT + 2 * PAD;
    let sx = |x: u64| PAD + x * UNIT;
    let sy = |y: u64| h - PAD - y * UNIT;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        sx(0),
        sy(0),
        w - PAD / 2,
        sy(0)
    );
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        sx(0),
        sy(0),
        sx(0),
        PAD / 2
    );
    let path: Vec<String> = polygon
        .vertices
        .iter()
        .map(|v| format!("{},{}", sx(v.x), sy(v.y)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
        path.join(" ")
    );
    for pt in &polygon.points {
        let fill = if polygon.vertices.contains(pt) {
            "black"
        } else {
            "white"
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="4" fill="{fill}" stroke="black"><title>{pt}</title></circle>"#,
            sx(pt.x),
            sy(pt.y)
        );
    }
    out.push_str("</svg>\n");
    out
}
