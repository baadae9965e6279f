//! SVG output: the domain outline, optional critical triangles and lattice
//! translates, on a 1000 x 1000 canvas with 5% padding and the y axis up.

use std::fmt::Write as _;

use inextensible::{BoundaryPiece, Domain, Lattice, Point, Triangle};

const SIZE: f64 = 1000.0;
const PADDING: f64 = 0.05;

struct Frame {
    scale: f64,
}

impl Frame {
    fn new(radius: f64) -> Self {
        Self {
            scale: SIZE * (1.0 - 2.0 * PADDING) / (2.0 * radius),
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (SIZE / 2.0 + p.x * self.scale, SIZE / 2.0 - p.y * self.scale)
    }
}

fn fmt(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// Absolute path data for the boundary in canvas coordinates.
fn outline_path(k: &Domain, f: &Frame) -> String {
    let pieces = k.pieces();
    let mut d = String::new();
    let (x0, y0) = f.map(pieces[0].start());
    let _ = write!(d, "M {} {}", fmt(x0), fmt(y0));
    for p in pieces {
        let (x, y) = f.map(p.end());
        match p {
            BoundaryPiece::Segment { .. } => {
                let _ = write!(d, " L {} {}", fmt(x), fmt(y));
            }
            BoundaryPiece::Arc(a) => {
                // After the y flip a counter-clockwise arc is a negative sweep in
                // SVG terms; SVG arc rotations are in degrees.
                let large = u8::from(a.span() > std::f64::consts::PI);
                let _ = write!(
                    d,
                    " A {} {} {} {} 0 {} {}",
                    fmt(a.rx * f.scale),
                    fmt(a.ry * f.scale),
                    fmt(-a.rotation.to_degrees()),
                    large,
                    fmt(x),
                    fmt(y)
                );
            }
        }
    }
    d.push_str(" Z");
    d
}

fn triangle_path(t: &Triangle, f: &Frame) -> String {
    let v = t.vertices().map(|p| f.map(p));
    format!(
        "M {} {} L {} {} L {} {} Z",
        fmt(v[0].0),
        fmt(v[0].1),
        fmt(v[1].0),
        fmt(v[1].1),
        fmt(v[2].0),
        fmt(v[2].1)
    )
}

pub fn render_svg(k: &Domain, triangles: &[Triangle], lattice: Option<&Lattice>) -> String {
    let radius = k.circumradius() * if lattice.is_some() { 2.5 } else { 1.0 };
    let f = Frame::new(radius);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" version="1.1" width="1000" height="1000" viewBox="0 0 1000 1000">"#
    );
    let _ = writeln!(out, r#"<defs><path id="domain" d="{}"/></defs>"#, outline_path(k, &f));
    let _ = writeln!(out, r##"<rect width="1000" height="1000" fill="#ffffff"/>"##);

    if let Some(l) = lattice {
        // Translates whose centre stays on the canvas, in (m, n) order.
        let span = 6;
        for m in -span..=span {
            for n in -span..=span {
                if (m, n) == (0, 0) {
                    continue;
                }
                let c = l.point(m, n);
                if c.x.abs() > radius || c.y.abs() > radius {
                    continue;
                }
                let _ = writeln!(
                    out,
                    r##"<use xlink:href="#domain" transform="translate({} {})" fill="#4a90d9" fill-opacity="0.12" stroke="#4a90d9" stroke-width="1"/>"##,
                    fmt(c.x * f.scale),
                    fmt(-c.y * f.scale)
                );
            }
        }
    }
    let _ = writeln!(
        out,
        r##"<use xlink:href="#domain" fill="#f2c94c" fill-opacity="0.35" stroke="#222222" stroke-width="2"/>"##
    );
    for t in triangles {
        let _ = writeln!(
            out,
            r##"<path d="{}" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##,
            triangle_path(t, &f)
        );
    }
    let (ox, oy) = f.map(Point::ORIGIN);
    let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="3" fill="#222222"/>"##, fmt(ox), fmt(oy));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_outline_is_flipped_and_padded() {
        let sq = Domain::parallelogram(Point::new(1.0, 0.0), Point::new(0.0, 1.0)).unwrap();
        let svg = render_svg(&sq, &[], None);
        // Corner (0.5, 0.5) maps to the top-right of the padded box.
        let r = sq.circumradius();
        let x = 500.0 + 0.5 * 450.0 / r;
        let y = 500.0 - 0.5 * 450.0 / r;
        assert!(svg.contains(&format!("{} {}", fmt(x), fmt(y))));
        assert!(svg.starts_with("<?xml"));
    }

    #[test]
    fn disk_uses_arc_commands() {
        let d = Domain::disk(1.0).unwrap();
        let svg = render_svg(&d, &[], None);
        assert_eq!(svg.matches(" A ").count(), 2);
    }
}
