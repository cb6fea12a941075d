use anyhow::{anyhow, Result};
use itertools::Itertools;
use maxmin::maxt::{
    centerpoint, centerpoint_subset_size, helly_check, in_hull_maxt, radon_partition, tverberg_search,
    verify_partition, HellyOutcome, TverbergOutcome,
};
use maxmin::{Error, Polytope};
use serde_json::json;

use super::{Command, CommandRegistry, Context, Outcome};
use crate::instance::point;

pub fn register(r: &mut CommandRegistry) {
    r.register(Box::new(Radon));
    r.register(Box::new(Helly));
    r.register(Box::new(Centerpoint));
    r.register(Box::new(Tverberg));
}

struct Radon;

impl Command for Radon {
    fn name(&self) -> &'static str {
        "radon"
    }

    fn about(&self) -> &'static str {
        "Split the d + 2 points of list X into two parts with intersecting hulls"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let pts = ctx.instance()?.point_list("X")?;
        let t = ctx.tnorm.as_ref();
        match radon_partition(pts, t, &ctx.bounds, &ctx.opts) {
            Ok(rp) => {
                let parts = [rp.first.clone(), rp.second.clone()];
                Ok(Outcome::verified(json!({
                    "found": true,
                    "parts": parts,
                    "witness": point(&rp.witness),
                }))
                .check(
                    "witness lies in the hull of both parts",
                    verify_partition(pts, &parts, &rp.witness, t, &ctx.bounds)?,
                ))
            }
            Err(Error::ResolutionExhausted(msg)) => {
                Ok(Outcome::negative(json!({ "found": false, "reason": msg })).check("search resolution exhausted", true))
            }
            Err(e) => Err(e.into()),
        }
    }
}

struct Helly;

impl Command for Helly {
    fn name(&self) -> &'static str {
        "helly"
    }

    fn about(&self) -> &'static str {
        "Find a common point of a polytope family (params.family, default all polytopes) or a failing subfamily"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let names = ctx.instance()?.polytope_names("family", "")?;
        let family: Vec<Polytope> = names.iter().map(|n| ctx.polytope(n)).collect::<Result<_>>()?;
        let t = ctx.tnorm.as_ref();
        match helly_check(&family, t, &ctx.bounds, &ctx.opts)? {
            HellyOutcome::Common(q) => {
                let mut out = Outcome::verified(json!({ "common": true, "point": point(&q) }));
                for (n, x) in names.iter().zip(&family) {
                    out.add_check(format!("point lies in {n}"), in_hull_maxt(&q, x, t, &ctx.bounds)?);
                }
                Ok(out)
            }
            HellyOutcome::Counterexample { members, exact } => {
                let d = family[0].dim();
                let sub: Vec<&String> = members.iter().map(|&i| &names[i]).collect();
                Ok(Outcome::negative(json!({ "common": false, "members": sub, "exact": exact }))
                    .check(format!("{} members, at most d + 1", members.len()), members.len() <= d + 1))
            }
        }
    }
}

struct Centerpoint;

impl Command for Centerpoint {
    fn name(&self) -> &'static str {
        "centerpoint"
    }

    fn about(&self) -> &'static str {
        "A point in the hull of every large enough subset of list X"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let pts = ctx.instance()?.point_list("X")?;
        let t = ctx.tnorm.as_ref();
        let c = centerpoint(pts, t, &ctx.bounds, &ctx.opts)?;
        let m0 = centerpoint_subset_size(pts.len(), c.dim());
        let mut all = true;
        let mut subsets = 0usize;
        for subset in pts.iter().cloned().combinations(m0) {
            subsets += 1;
            all &= in_hull_maxt(&c, &Polytope::new(subset)?, t, &ctx.bounds)?;
        }
        Ok(Outcome::verified(json!({ "point": point(&c), "subset_size": m0, "subsets_checked": subsets }))
            .check(format!("point lies in the hull of all {subsets} subsets of size {m0}"), all))
    }
}

struct Tverberg;

impl Command for Tverberg {
    fn name(&self) -> &'static str {
        "tverberg"
    }

    fn about(&self) -> &'static str {
        "Split list X into params.r parts with a common hull point"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let inst = ctx.instance()?;
        let pts = inst.point_list("X")?;
        let r = inst.param_usize("r")?.ok_or_else(|| anyhow!("$.params.r: required by tverberg"))?;
        let t = ctx.tnorm.as_ref();
        match tverberg_search(pts, r, t, &ctx.bounds, &ctx.opts)? {
            TverbergOutcome::Found { parts, witness } => Ok(Outcome::verified(json!({
                "found": true,
                "parts": parts,
                "witness": point(&witness),
            }))
            .check(
                format!("witness lies in the hull of all {r} parts"),
                verify_partition(pts, &parts, &witness, t, &ctx.bounds)?,
            )),
            TverbergOutcome::NotFound { soundness_alarm } => Ok(Outcome::negative(json!({
                "found": false,
                "soundness_alarm": soundness_alarm,
            }))
            .check("no partition found by the search", true)),
        }
    }
}
