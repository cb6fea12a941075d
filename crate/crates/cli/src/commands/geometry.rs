use anyhow::{Context as _, Result};
use maxmin::geometry::{geodesic_distance, segment_decompose, SegmentDecomposition, SegmentMode};
use maxmin::hull::in_hull;
use maxmin::oracle::brute_semispace_contains;
use maxmin::semispace::{index_set, SemispaceId};
use maxmin::separation::{separate_by_hyperplane, HyperplaneSeparation};
use maxmin::{Polytope, SemiringBounds};
use serde_json::{json, Value as Json};

use super::{Command, CommandRegistry, Context, Outcome};
use crate::instance::{interval_box, point, val};
use crate::render::{render_svg, Scene};

pub fn register(r: &mut CommandRegistry) {
    r.register(Box::new(Segment));
    r.register(Box::new(Distance));
    r.register(Box::new(Semispaces));
    r.register(Box::new(Render));
}

fn decomposition_json(dec: &SegmentDecomposition) -> Json {
    let mode = match &dec.mode {
        SegmentMode::Comparable => json!({ "kind": "comparable" }),
        SegmentMode::Concatenated { apex } => json!({ "kind": "concatenated", "apex": point(apex) }),
    };
    let pieces: Vec<Json> = dec
        .pieces
        .iter()
        .map(|p| {
            json!({
                "start": point(&p.start),
                "end": point(&p.end),
                "active": p.active,
                "beta": [val(p.beta_range.0), val(p.beta_range.1)],
            })
        })
        .collect();
    let corners: Vec<Json> = dec.corners().iter().map(point).collect();
    json!({ "mode": mode, "pieces": pieces, "corners": corners })
}

/// Piece endpoints lie in the hull of the two endpoints.
fn check_pieces(out: &mut Outcome, dec: &SegmentDecomposition, bounds: &SemiringBounds) -> Result<()> {
    let ends = Polytope::new(vec![dec.x.clone(), dec.y.clone()])?;
    for (i, p) in dec.pieces.iter().enumerate() {
        let ok = in_hull(&p.start, &ends, bounds)? && in_hull(&p.end, &ends, bounds)?;
        out.add_check(format!("piece {i} endpoints lie in conv{{x, y}}"), ok);
    }
    for w in dec.pieces.windows(2) {
        out.add_check("consecutive pieces share an endpoint", w[0].end == w[1].start);
    }
    let d = dec.x.dim();
    let bound = match dec.mode {
        SegmentMode::Comparable => 2 * d - 1,
        SegmentMode::Concatenated { .. } => 2 * d - 2,
    };
    out.add_check(format!("{} pieces, at most {bound}", dec.pieces.len()), dec.pieces.len() <= bound);
    Ok(())
}

struct Segment;

impl Command for Segment {
    fn name(&self) -> &'static str {
        "segment"
    }

    fn about(&self) -> &'static str {
        "Decompose the segment between points x and y into elementary pieces"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let (x, y) = (ctx.point("x")?, ctx.point("y")?);
        let dec = segment_decompose(&x, &y)?;
        let mut out = Outcome::verified(decomposition_json(&dec));
        check_pieces(&mut out, &dec, &ctx.bounds)?;
        Ok(out)
    }
}

struct Distance;

impl Command for Distance {
    fn name(&self) -> &'static str {
        "distance"
    }

    fn about(&self) -> &'static str {
        "Euclidean length of the segment between points x and y, exact as a sum of square roots"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let (x, y) = (ctx.point("x")?, ctx.point("y")?);
        let dist = geodesic_distance(&x, &y)?;
        let (lo, hi) = dist.enclosure(1_000_000)?;
        let terms: Vec<Json> = dist
            .terms()
            .map(|(m, c)| json!({ "coefficient": val(c), "radicand": m }))
            .collect();
        let approx = dist.to_f64();
        let dec = segment_decompose(&x, &y)?;
        let piecewise: f64 = dec
            .pieces
            .iter()
            .map(|p| {
                let sq: f64 = p
                    .start
                    .to_f64()
                    .iter()
                    .zip(p.end.to_f64())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                sq.sqrt()
            })
            .sum();
        Ok(Outcome::verified(json!({
            "exact": dist.to_string(),
            "terms": terms,
            "approx": approx,
            "enclosure": [val(lo), val(hi)],
        }))
        .check("enclosure brackets the value", lo.to_f64() <= approx + 1e-12 && approx <= hi.to_f64() + 1e-12)
        .check("equals the summed Euclidean piece lengths", (piecewise - approx).abs() <= 1e-12))
    }
}

struct Semispaces;

impl Command for Semispaces {
    fn name(&self) -> &'static str {
        "semispaces"
    }

    fn about(&self) -> &'static str {
        "List the semispaces at point p with their sectors"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let p = ctx.point("p")?;
        let mut list = Vec::new();
        let mut checks = Vec::new();
        for idx in index_set(&p, &ctx.bounds) {
            let s = SemispaceId::new(p.clone(), idx, ctx.bounds)?;
            list.push(json!({ "index": idx.0, "sector": interval_box(&s.sector_box()) }));
            let by_definition = if p.dim() <= maxmin::oracle::MAX_DIM {
                brute_semispace_contains(p.coords(), idx.0, p.coords(), &ctx.bounds)? == Some(false)
            } else {
                true
            };
            checks.push((format!("p lies outside S_{idx}(p)"), !s.contains(&p)? && by_definition));
        }
        let mut out = Outcome::verified(json!({ "anchor": point(&p), "semispaces": list }));
        for (claim, holds) in checks {
            out.add_check(claim, holds);
        }
        Ok(out)
    }
}

struct Render;

impl Command for Render {
    fn name(&self) -> &'static str {
        "render"
    }

    fn about(&self) -> &'static str {
        "Draw a planar instance as SVG: segment x-y, sectors at p, the hyperplane separating p from C, all polytopes"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let inst = ctx.instance()?;
        let mut scene = Scene::default();
        let mut out = Outcome::verified(Json::Null);
        if let (Some(x), Some(y)) = (inst.points.get("x"), inst.points.get("y")) {
            let dec = segment_decompose(x, y)?;
            check_pieces(&mut out, &dec, &ctx.bounds)?;
            scene.segments.push(dec);
            scene.marks.push(("x".into(), x.clone()));
            scene.marks.push(("y".into(), y.clone()));
        }
        if let Some(p) = inst.points.get("p") {
            for idx in index_set(p, &ctx.bounds) {
                scene.sectors.push(SemispaceId::new(p.clone(), idx, ctx.bounds)?);
            }
            scene.marks.push(("p".into(), p.clone()));
            if let Some(c) = inst.polytopes.get("C") {
                let c = Polytope::new(c.clone())?;
                if let HyperplaneSeparation::Separated { hyperplane, .. } = separate_by_hyperplane(p, &c, &ctx.bounds)? {
                    out.add_check("p lies off the drawn hyperplane", !hyperplane.contains(p)?);
                    scene.hyperplanes.push(hyperplane);
                }
            }
        }
        for (name, list) in &inst.polytopes {
            scene.point_sets.push((name.clone(), list.clone()));
        }
        let svg = render_svg(&scene, &ctx.bounds)?;
        let pieces = scene.segments.iter().map(|s| s.pieces.len()).sum::<usize>();
        out.add_check(
            "one polyline per elementary piece",
            svg.matches("class=\"segment-piece\"").count() == pieces,
        );
        let mut result = json!({
            "segment_pieces": pieces,
            "sectors": scene.sectors.len(),
            "hyperplanes": scene.hyperplanes.len(),
            "generators": scene.point_sets.iter().map(|(_, l)| l.len()).sum::<usize>(),
        });
        match &ctx.svg {
            Some(path) => {
                std::fs::write(path, &svg).with_context(|| format!("writing {}", path.display()))?;
                result["svg_path"] = json!(path.display().to_string());
            }
            None => result["svg"] = json!(svg),
        }
        out.result = result;
        Ok(out)
    }
}
