use anyhow::Result;
use maxmin::hull::{caratheodory_reduce, colorful_strong, colorful_weak, hull_member, in_hull, HullMembership};
use maxmin::maxt::hull_member_maxt;
use maxmin::semispace::SemispaceId;
use maxmin::tnorm::tnorm_apply;
use maxmin::{Point, Polytope};
use serde_json::{json, Value as Json};

use super::{Command, CommandRegistry, Context, Outcome};
use crate::instance::{point, points, val};

pub fn register(r: &mut CommandRegistry) {
    r.register(Box::new(HullMember));
    r.register(Box::new(Caratheodory));
    r.register(Box::new(ColorfulWeak));
    r.register(Box::new(ColorfulStrong));
}

struct HullMember;

impl Command for HullMember {
    fn name(&self) -> &'static str {
        "hull-member"
    }

    fn about(&self) -> &'static str {
        "Decide whether point p lies in the hull of polytope X"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let p = ctx.point("p")?;
        let x = ctx.polytope("X")?;
        if !ctx.tnorm.is_selective() {
            let m = hull_member_maxt(&p, &x, ctx.tnorm.as_ref(), &ctx.bounds)?;
            // recompute the principal combination from its coefficients
            let mut combo = vec![ctx.bounds.lo(); p.dim()];
            for (lam, g) in m.coefficients.iter().zip(x.generators()) {
                for (k, slot) in combo.iter_mut().enumerate() {
                    *slot = (*slot).max(tnorm_apply(ctx.tnorm.as_ref(), *lam, g.get(k), &ctx.bounds)?);
                }
            }
            let has_top = m.coefficients.iter().any(|&l| l == ctx.bounds.hi());
            let result = json!({
                "member": m.member,
                "coefficients": m.coefficients.iter().map(|&l| val(l)).collect::<Vec<_>>(),
                "combination": point(&m.combination),
            });
            let recomputed = Point::new(combo)? == m.combination;
            return Ok(if m.member {
                Outcome::verified(result)
                    .check("coefficients reproduce the combination", recomputed)
                    .check("some coefficient is the top element", has_top)
                    .check("combination equals p", m.combination == p)
            } else {
                Outcome::negative(result)
                    .check("coefficients reproduce the combination", recomputed)
                    .check("greatest combination below p differs from p", m.combination != p)
            });
        }
        match hull_member(&p, &x, &ctx.bounds)? {
            HullMembership::Member { witnesses } => {
                let mut out = Outcome::verified(json!({
                    "member": true,
                    "witnesses": witnesses
                        .iter()
                        .map(|(s, g)| json!({ "sector": s.0, "generator": point(&x.generators()[*g]) }))
                        .collect::<Vec<_>>(),
                }));
                for (s, g) in &witnesses {
                    let sector = SemispaceId::new(p.clone(), *s, ctx.bounds)?;
                    out.add_check(
                        format!("sector {s} at p holds a generator"),
                        sector.sector_contains(&x.generators()[*g])?,
                    );
                }
                Ok(out)
            }
            HullMembership::Outside { separating } => {
                let s = SemispaceId::new(p.clone(), separating, ctx.bounds)?;
                let mut all = true;
                for g in x.generators() {
                    all &= s.contains(g)?;
                }
                Ok(Outcome::negative(json!({ "member": false, "separating_semispace": separating.0 }))
                    .check(format!("S_{separating}(p) contains every generator"), all)
                    .check(format!("p lies outside S_{separating}(p)"), !s.contains(&p)?))
            }
        }
    }
}

struct Caratheodory;

impl Command for Caratheodory {
    fn name(&self) -> &'static str {
        "caratheodory"
    }

    fn about(&self) -> &'static str {
        "Reduce X to at most d + 1 generators whose hull still holds p"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let p = ctx.point("p")?;
        let x = ctx.polytope("X")?;
        let red = caratheodory_reduce(&p, &x, &ctx.bounds)?;
        Ok(Outcome::verified(json!({
            "indices": red.indices,
            "generators": points(red.polytope.generators()),
        }))
        .check(format!("{} generators, at most d + 1", red.polytope.len()), red.polytope.len() <= p.dim() + 1)
        .check("p lies in the hull of the reduced set", in_hull(&p, &red.polytope, &ctx.bounds)?))
    }
}

fn colors(ctx: &Context) -> Result<(Vec<String>, Vec<Polytope>)> {
    let names = ctx.instance()?.polytope_names("colors", "color")?;
    let polys = names.iter().map(|n| ctx.polytope(n)).collect::<Result<_>>()?;
    Ok((names, polys))
}

struct ColorfulWeak;

impl Command for ColorfulWeak {
    fn name(&self) -> &'static str {
        "colorful-weak"
    }

    fn about(&self) -> &'static str {
        "Pick one point per color so that p stays in the hull (p in every color hull)"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let p = ctx.point("p")?;
        let (names, polys) = colors(ctx)?;
        let picks = colorful_weak(&p, &polys, &ctx.bounds)?;
        let transversal = Polytope::new(picks.iter().map(|c| c.point.clone()).collect())?;
        let mut out = Outcome::verified(json!({
            "picks": picks
                .iter()
                .map(|c| json!({ "color": names[c.color], "sector": c.sector.0, "point": point(&c.point) }))
                .collect::<Vec<_>>(),
        }));
        for c in &picks {
            out.add_check(
                format!("pick for sector {} comes from {}", c.sector, names[c.color]),
                polys[c.color].generators().contains(&c.point),
            );
        }
        out.add_check("p lies in the hull of the picks", in_hull(&p, &transversal, &ctx.bounds)?);
        Ok(out)
    }
}

struct ColorfulStrong;

impl Command for ColorfulStrong {
    fn name(&self) -> &'static str {
        "colorful-strong"
    }

    fn about(&self) -> &'static str {
        "Pick one point per color whose hull meets conv(C) (each color hull meets conv(C))"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        ctx.require_min(self.name())?;
        let c = ctx.polytope("C")?;
        let (names, polys) = colors(ctx)?;
        let anchors: Option<Vec<Point>> = match ctx.instance()?.params.get("anchors") {
            None => None,
            Some(Json::String(name)) => Some(ctx.instance()?.point_list(name)?.to_vec()),
            Some(_) => anyhow::bail!("$.params.anchors: expected the name of a point list"),
        };
        let out = colorful_strong(&c, &polys, anchors.as_deref(), &ctx.bounds)?;
        let transversal = Polytope::new(out.picks.iter().map(|c| c.point.clone()).collect())?;
        let mut doc = Outcome::verified(json!({
            "picks": out
                .picks
                .iter()
                .map(|c| json!({ "color": names[c.color], "sector": c.sector.0, "point": point(&c.point) }))
                .collect::<Vec<_>>(),
            "witness": point(&out.witness),
            "anchors": points(&out.anchors),
            "working_bounds": [val(out.working_bounds.lo()), val(out.working_bounds.hi())],
        }));
        for (i, pick) in out.picks.iter().enumerate() {
            doc.add_check(format!("pick {i} comes from {}", names[i]), polys[i].generators().contains(&pick.point));
        }
        doc.add_check("witness lies in conv(C)", in_hull(&out.witness, &c, &ctx.bounds)?);
        doc.add_check("witness lies in the hull of the picks", in_hull(&out.witness, &transversal, &ctx.bounds)?);
        Ok(doc)
    }
}
