use anyhow::Result;
use maxmin::hull::in_hull;
use maxmin::koenig::{
    bottleneck_threshold, improve_diagram_traced, internal_separation, intsep_sorted, koenig_diagram,
    verify_internal_separation, ImprovementKind, KoenigDiagram, Matrix,
};
use maxmin::semispace::SemispaceId;
use maxmin::Polytope;
use serde_json::{json, Value as Json};

use super::{Command, CommandRegistry, Context, Outcome};
use crate::instance::{point, val};

pub fn register(r: &mut CommandRegistry) {
    r.register(Box::new(Intsep));
    r.register(Box::new(TightDiagram));
}

struct Intsep;

impl Command for Intsep {
    fn name(&self) -> &'static str {
        "intsep"
    }

    fn about(&self) -> &'static str {
        "Internally separate the d + 1 points of list X (params.sorted selects the sorted construction)"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let inst = ctx.instance()?;
        let pts = inst.point_list("X")?;
        let sep = if inst.param_bool("sorted")? {
            intsep_sorted(pts, &ctx.bounds)?
        } else {
            internal_separation(pts, &ctx.bounds)?
        };
        let mut out = Outcome::verified(json!({
            "point": point(&sep.point),
            "assignment": sep.assignment.iter().map(|s| s.0).collect::<Vec<_>>(),
        }));
        for (i, (x, s)) in pts.iter().zip(&sep.assignment).enumerate() {
            let sector = SemispaceId::new(sep.point.clone(), *s, ctx.bounds)?;
            out.add_check(format!("X[{i}] lies in sector {s}"), sector.sector_contains(x)?);
        }
        out.add_check(
            "sector assignment is a bijection onto I(p)",
            verify_internal_separation(pts, &sep, &ctx.bounds)?,
        );
        out.add_check("p lies in the hull of X", in_hull(&sep.point, &Polytope::new(pts.to_vec())?, &ctx.bounds)?);
        Ok(out)
    }
}

fn diagram_json(d: &KoenigDiagram) -> Json {
    json!({
        "t": val(d.t()),
        "m1": d.m1(),
        "n1": d.n1(),
        "m2": d.m2(),
        "n2": d.n2(),
        "pi": d.pi(),
        "free_row": d.free_row(),
        "r": d.r(),
        "s": d.s(),
        "tightness": d.tightness(),
    })
}

struct TightDiagram;

impl Command for TightDiagram {
    fn name(&self) -> &'static str {
        "tight-diagram"
    }

    fn about(&self) -> &'static str {
        "Build a König diagram for the (d + 1) x d matrix whose rows are list A and improve it until tight"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let a = Matrix::from_points(ctx.instance()?.point_list("A")?)?;
        a.check_bounds(&ctx.bounds)?;
        let mut diag = koenig_diagram(&a)?;
        let initial = diagram_json(&diag);
        let mut steps = Vec::new();
        let mut increasing = true;
        while !diag.is_tight() {
            let step = improve_diagram_traced(&diag)?;
            increasing &= step.diagram.tightness() > diag.tightness();
            steps.push(json!({
                "kind": match step.kind {
                    ImprovementKind::FreeRow => "free-row",
                    ImprovementKind::Cycle => "cycle",
                    ImprovementKind::Retarget => "retarget",
                },
                "turns": step.turns,
                "tightness": step.diagram.tightness(),
            }));
            diag = step.diagram;
        }
        Ok(Outcome::verified(json!({
            "initial": initial,
            "improvements": steps,
            "diagram": diagram_json(&diag),
        }))
        .check("threshold is the bottleneck value", diag.t() == bottleneck_threshold(&a)?)
        .check("diagram passes every structural invariant", diag.validate().is_ok())
        .check("every improvement raised the tightness", increasing)
        .check("final diagram is tight", diag.is_tight()))
    }
}
