use anyhow::{bail, Result};
use maxmin::hull::in_hull;
use maxmin::oracle::brute_semispace_contains;
use maxmin::semispace::{Hyperplane, SemispaceId};
use maxmin::separation::{
    box_order, separate_box, separate_by_hyperplane, separate_point, sep_condition, BoxSeparation,
    HyperplaneSeparation, PointSeparation,
};
use maxmin::{Point, Polytope, SemiringBounds};
use serde_json::{json, Value as Json};

use super::{Command, CommandRegistry, Context, Outcome};
use crate::instance::{interval_box, point, val};

pub fn register(r: &mut CommandRegistry) {
    r.register(Box::new(SeparatePoint));
    r.register(Box::new(SeparateBox));
    r.register(Box::new(SepCondition));
    r.register(Box::new(SeparateHyperplane));
}

fn semispace_json(s: &SemispaceId) -> Json {
    json!({ "anchor": point(s.anchor()), "index": s.index().0, "sector": interval_box(&s.sector_box()) })
}

/// Membership by the definition when the oracle's size limits allow, else
/// through the library predicate.
fn in_semispace(s: &SemispaceId, q: &Point, bounds: &SemiringBounds) -> Result<bool> {
    if q.dim() <= maxmin::oracle::MAX_DIM {
        if let Some(b) = brute_semispace_contains(s.anchor().coords(), s.index().0, q.coords(), bounds)? {
            return Ok(b);
        }
    }
    Ok(s.contains(q)?)
}

fn holds_generators(s: &SemispaceId, c: &Polytope, bounds: &SemiringBounds) -> Result<bool> {
    for g in c.generators() {
        if !in_semispace(s, g, bounds)? {
            return Ok(false);
        }
    }
    Ok(true)
}

struct SeparatePoint;

impl Command for SeparatePoint {
    fn name(&self) -> &'static str {
        "separate-point"
    }

    fn about(&self) -> &'static str {
        "Find a semispace containing polytope C but not point p"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let p = ctx.point("p")?;
        let c = ctx.target_polytope()?;
        Ok(match separate_point(&p, &c, &ctx.bounds)? {
            PointSeparation::Separated(s) => Outcome::verified(json!({ "separated": true, "semispace": semispace_json(&s) }))
                .check("semispace contains every generator of C", holds_generators(&s, &c, &ctx.bounds)?)
                .check("semispace misses p", !in_semispace(&s, &p, &ctx.bounds)?),
            PointSeparation::InHull => Outcome::negative(json!({ "separated": false, "reason": "p lies in conv(C)" }))
                .check("p lies in conv(C)", in_hull(&p, &c, &ctx.bounds)?),
        })
    }
}

struct SeparateBox;

impl Command for SeparateBox {
    fn name(&self) -> &'static str {
        "separate-box"
    }

    fn about(&self) -> &'static str {
        "Find a semispace containing polytope C and missing box B"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let b = ctx.instance()?.interval_box("B")?.clone();
        let c = ctx.target_polytope()?;
        Ok(match separate_box(&b, &c, &ctx.bounds)? {
            BoxSeparation::Separated(s) => {
                let mut corners_out = true;
                for q in b.corners() {
                    corners_out &= !in_semispace(&s, &q, &ctx.bounds)?;
                }
                Outcome::verified(json!({ "separated": true, "semispace": semispace_json(&s) }))
                    .check("semispace contains every generator of C", holds_generators(&s, &c, &ctx.bounds)?)
                    .check("every corner of B lies in the sector", corners_out)
            }
            BoxSeparation::NonSeparable => Outcome::negative(json!({ "separated": false, "reason": "non-separable" }))
                .check("the box separation condition fails", !sep_condition(&b, &c, &ctx.bounds)?),
        })
    }
}

struct SepCondition;

impl Command for SepCondition {
    fn name(&self) -> &'static str {
        "sep-condition"
    }

    fn about(&self) -> &'static str {
        "Evaluate the condition under which box B and polytope C are semispace-separable"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let b = ctx.instance()?.interval_box("B")?.clone();
        let c = ctx.target_polytope()?;
        let holds = sep_condition(&b, &c, &ctx.bounds)?;
        let (order, t) = box_order(&b);
        let result = json!({ "holds": holds, "order": order, "t": t });
        // the condition is equivalent to separability
        let separable = matches!(separate_box(&b, &c, &ctx.bounds)?, BoxSeparation::Separated(_));
        let out = if holds { Outcome::verified(result) } else { Outcome::negative(result) };
        Ok(out.check("agrees with the outcome of box separation", separable == holds))
    }
}

fn hyperplane_json(h: &Hyperplane) -> Json {
    json!({
        "lhs": h.lhs_coeffs().iter().map(|&v| val(v)).collect::<Vec<_>>(),
        "rhs": h.rhs_coeffs().iter().map(|&v| val(v)).collect::<Vec<_>>(),
    })
}

struct SeparateHyperplane;

impl Command for SeparateHyperplane {
    fn name(&self) -> &'static str {
        "separate-hyperplane"
    }

    fn about(&self) -> &'static str {
        "Separate a diagonal point p from polytope C by a hyperplane"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let p = ctx.point("p")?;
        let c = ctx.target_polytope()?;
        match separate_by_hyperplane(&p, &c, &ctx.bounds)? {
            HyperplaneSeparation::Separated { hyperplane, index } => {
                let mut on = true;
                for g in c.generators() {
                    on &= hyperplane.contains(g)?;
                }
                Ok(Outcome::verified(json!({
                    "separated": true,
                    "index": index.0,
                    "hyperplane": hyperplane_json(&hyperplane),
                }))
                .check("every generator of C lies on the hyperplane", on)
                .check("p lies off the hyperplane", !hyperplane.contains(&p)?))
            }
            HyperplaneSeparation::InHull => Ok(Outcome::negative(json!({ "separated": false, "reason": "p lies in conv(C)" }))
                .check("p lies in conv(C)", in_hull(&p, &c, &ctx.bounds)?)),
            HyperplaneSeparation::NotOnDiagonal => bail!(
                "$.points.p: {p} is not on the diagonal; hyperplane separation is only available for points with equal coordinates"
            ),
        }
    }
}
