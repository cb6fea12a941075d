//! Planar SVG figures. The output depends only on the scene, so the same
//! instance always renders to the same bytes.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use maxmin::geometry::SegmentDecomposition;
use maxmin::semispace::{Hyperplane, SemispaceId};
use maxmin::{Point, SemiringBounds, Value};

pub const CANVAS: f64 = 512.0;
pub const MARGIN: f64 = 16.0;

#[derive(Default)]
pub struct Scene {
    pub segments: Vec<SegmentDecomposition>,
    pub sectors: Vec<SemispaceId>,
    pub hyperplanes: Vec<Hyperplane>,
    /// Named generator sets, drawn as dots.
    pub point_sets: Vec<(String, Vec<Point>)>,
    pub marks: Vec<(String, Point)>,
}

struct Frame {
    lo: f64,
    span: f64,
}

impl Frame {
    fn x(&self, v: Value) -> f64 {
        MARGIN + (v.to_f64() - self.lo) / self.span * (CANVAS - 2.0 * MARGIN)
    }

    // y grows upwards in the figure
    fn y(&self, v: Value) -> f64 {
        CANVAS - MARGIN - (v.to_f64() - self.lo) / self.span * (CANVAS - 2.0 * MARGIN)
    }

    fn xy(&self, p: &Point) -> String {
        format!("{:.3},{:.3}", self.x(p.get(0)), self.y(p.get(1)))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Region `{ x : lhs(x) = rhs(x) }` of a hyperplane of the two shapes used
/// for separation, as polygon vertices.
fn hyperplane_region(h: &Hyperplane, b: &SemiringBounds) -> Option<Vec<(Value, Value)>> {
    let (lo, hi) = (b.lo(), b.hi());
    let a = h.lhs_coeffs();
    let c = h.rhs_coeffs();
    if a[..2].iter().all(|&v| v == hi) && a[2] == lo && c[..2].iter().all(|&v| v == hi) {
        // max(x, y) >= L
        let l = c[2];
        return Some(vec![(l, lo), (hi, lo), (hi, hi), (lo, hi), (lo, l), (l, l)]);
    }
    if c[2] == lo && a[2] == lo {
        // x_k <= L
        let k = (0..2).find(|&k| c[k] == hi && c[1 - k] == lo && a[1 - k] == lo)?;
        let l = a[k];
        return Some(if k == 0 {
            vec![(lo, lo), (l, lo), (l, hi), (lo, hi)]
        } else {
            vec![(lo, lo), (hi, lo), (hi, l), (lo, l)]
        });
    }
    None
}

pub fn render_svg(scene: &Scene, bounds: &SemiringBounds) -> Result<String> {
    let dims = scene
        .segments
        .iter()
        .map(|s| s.x.dim())
        .chain(scene.sectors.iter().map(|s| s.anchor().dim()))
        .chain(scene.hyperplanes.iter().map(Hyperplane::dim))
        .chain(scene.point_sets.iter().flat_map(|(_, l)| l.iter().map(Point::dim)))
        .chain(scene.marks.iter().map(|(_, p)| p.dim()));
    for d in dims {
        if d != 2 {
            bail!("render draws planar instances only (dimension 2, got {d}); pick two coordinates and re-run");
        }
    }
    let f = Frame {
        lo: bounds.lo().to_f64(),
        span: (bounds.hi().to_f64() - bounds.lo().to_f64()),
    };
    let corner = |x: Value, y: Value| format!("{:.3},{:.3}", f.x(x), f.y(y));
    let (lo, hi) = (bounds.lo(), bounds.hi());

    let mut s = String::new();
    writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="512" height="512" viewBox="0 0 512 512">"##
    )?;
    writeln!(s, r##"<rect width="512" height="512" fill="white"/>"##)?;
    writeln!(
        s,
        r##"<polygon class="frame" points="{} {} {} {}" fill="none" stroke="#999" stroke-width="1"/>"##,
        corner(lo, lo),
        corner(hi, lo),
        corner(hi, hi),
        corner(lo, hi)
    )?;
    for h in &scene.hyperplanes {
        let Some(poly) = hyperplane_region(h, bounds) else {
            bail!("cannot draw hyperplane {:?} = {:?}", h.lhs_coeffs(), h.rhs_coeffs());
        };
        let pts: Vec<String> = poly.iter().map(|&(x, y)| corner(x, y)).collect();
        writeln!(
            s,
            r##"<polygon class="hyperplane" points="{}" fill="#4a90d9" fill-opacity="0.25" stroke="#1f5fa8" stroke-width="1.5"/>"##,
            pts.join(" ")
        )?;
    }
    for sector in &scene.sectors {
        let b = sector.sector_box();
        let (x0, x1) = (f.x(b.lower().get(0)), f.x(b.upper().get(0)));
        let (y0, y1) = (f.y(b.upper().get(1)), f.y(b.lower().get(1)));
        writeln!(
            s,
            r##"<rect class="sector" data-index="{}" x="{x0:.3}" y="{y0:.3}" width="{:.3}" height="{:.3}" fill="#e8a33d" fill-opacity="0.2" stroke="#b36b00" stroke-width="1"/>"##,
            sector.index(),
            x1 - x0,
            y1 - y0
        )?;
    }
    for seg in &scene.segments {
        for piece in &seg.pieces {
            writeln!(
                s,
                r##"<polyline class="segment-piece" points="{} {}" fill="none" stroke="#c0392b" stroke-width="2.5"/>"##,
                f.xy(&piece.start),
                f.xy(&piece.end)
            )?;
        }
    }
    for (name, list) in &scene.point_sets {
        for p in list {
            writeln!(
                s,
                r##"<circle class="generator" data-set="{}" cx="{:.3}" cy="{:.3}" r="4" fill="#222"/>"##,
                escape(name),
                f.x(p.get(0)),
                f.y(p.get(1))
            )?;
        }
    }
    for (name, p) in &scene.marks {
        let (cx, cy) = (f.x(p.get(0)), f.y(p.get(1)));
        writeln!(
            s,
            r##"<circle class="mark" cx="{cx:.3}" cy="{cy:.3}" r="5" fill="none" stroke="#000" stroke-width="2"/>"##
        )?;
        writeln!(
            s,
            r##"<text x="{:.3}" y="{:.3}" font-family="monospace" font-size="12">{}</text>"##,
            cx + 7.0,
            cy - 7.0,
            escape(name)
        )?;
    }
    writeln!(s, "</svg>")?;
    Ok(s)
}
