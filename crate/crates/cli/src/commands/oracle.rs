use anyhow::{bail, Result};
use maxmin::geometry::segment_decompose;
use maxmin::hull::in_hull;
use maxmin::maxt::in_hull_maxt;
use maxmin::oracle::{brute_hull_member, brute_segment, GridSpec, OracleNorm, MAX_GRID};
use maxmin::{Point, Value};
use serde_json::json;

use super::{Command, CommandRegistry, Context, Outcome};

pub fn register(r: &mut CommandRegistry) {
    r.register(Box::new(OracleCheck));
}

struct OracleCheck;

impl OracleCheck {
    /// Instance coordinates, plus a uniform grid for norms that leave the
    /// input grid; the step is coarsened until the oracle accepts it.
    fn grid(&self, ctx: &Context) -> Result<GridSpec> {
        let inst = ctx.instance()?;
        let values: Vec<Value> = inst
            .points
            .values()
            .chain(inst.polytopes.values().flatten())
            .flat_map(|p| p.coords().iter().copied())
            .collect();
        if ctx.tnorm.is_selective() {
            return Ok(GridSpec::new(values, None, ctx.bounds)?);
        }
        let mut step = ctx.opts.grid_step;
        let span = ctx.bounds.hi().checked_sub(&ctx.bounds.lo())?;
        let floor = span.checked_div(&Value::from_int(MAX_GRID as i128 - 1 - values.len() as i128))?;
        if step < floor {
            step = floor;
        }
        Ok(GridSpec::new(values, Some(step), ctx.bounds)?)
    }
}

impl Command for OracleCheck {
    fn name(&self) -> &'static str {
        "oracle-check"
    }

    fn about(&self) -> &'static str {
        "Cross-check hull membership of p in X (and the segment x-y) against brute-force enumeration"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let inst = ctx.instance()?;
        let grid = self.grid(ctx)?;
        let norm = OracleNorm::from_name(ctx.tnorm.name())?;
        let mut out = Outcome::verified(json!({}));
        let mut compared = Vec::new();
        if let (Some(p), Some(x)) = (inst.points.get("p"), inst.polytopes.get("X")) {
            let poly = maxmin::Polytope::new(x.clone())?;
            let fast = if ctx.tnorm.is_selective() {
                in_hull(p, &poly, &ctx.bounds)?
            } else {
                in_hull_maxt(p, &poly, ctx.tnorm.as_ref(), &ctx.bounds)?
            };
            let rows: Vec<Vec<Value>> = x.iter().map(|g| g.coords().to_vec()).collect();
            let brute = brute_hull_member(p.coords(), &rows, norm, &grid)?;
            compared.push(json!({ "check": "hull-member", "library": fast, "enumeration": brute }));
            if ctx.tnorm.is_selective() {
                out.add_check("membership agrees with enumeration on the exact grid", fast == brute);
            } else {
                out.add_check("every member found by enumeration is a member", !brute || fast);
            }
        }
        if let (Some(x), Some(y)) = (inst.points.get("x"), inst.points.get("y")) {
            if !ctx.tnorm.is_selective() {
                bail!("the segment cross-check is defined for the min t-norm only");
            }
            let lambdas = GridSpec::new([], Some(Value::new(1, 16)), ctx.bounds)?;
            let dec = segment_decompose(x, y)?;
            let enumerated = brute_segment(x.coords(), y.coords(), &lambdas)?;
            let missing = enumerated
                .iter()
                .filter(|z| !dec.contains(&Point::new((*z).clone()).expect("non-empty")))
                .count();
            compared.push(json!({ "check": "segment", "enumerated_points": enumerated.len(), "missed": missing }));
            out.add_check("every enumerated segment point lies on a piece", missing == 0);
        }
        if compared.is_empty() {
            bail!("oracle-check needs points p with polytope X, or points x and y");
        }
        out.result = json!({ "grid_size": grid.values().len(), "comparisons": compared });
        Ok(out)
    }
}
