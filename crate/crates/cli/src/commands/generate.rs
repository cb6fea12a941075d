use std::collections::BTreeMap;

use anyhow::{bail, Result};
use clap::{value_parser, Arg};
use maxmin::semispace::{index_set, SemispaceId};
use maxmin::separation::box_hull_meet;
use maxmin::{IntervalBox, Point, Polytope, SemiringBounds, Value};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map};

use super::{Command, CommandRegistry, Context, Outcome};
use crate::instance::Instance;

pub fn register(r: &mut CommandRegistry) {
    r.register(Box::new(Generate));
}

const KINDS: [&str; 9] = ["hull", "segment", "box", "intsep", "matrix", "colorful", "radon", "helly", "tverberg"];

struct Gen {
    rng: ChaCha8Rng,
    dim: usize,
    denom: i128,
    bounds: SemiringBounds,
}

impl Gen {
    fn value(&mut self, lo: i128, hi: i128) -> Value {
        let span = self.bounds.hi().checked_sub(&self.bounds.lo()).expect("small");
        let k = Value::new(self.rng.gen_range(lo..=hi), self.denom);
        self.bounds.lo().checked_add(&span.checked_mul(&k).expect("small")).expect("small")
    }

    fn point(&mut self) -> Point {
        let n = self.denom;
        Point::new((0..self.dim).map(|_| self.value(0, n)).collect()).expect("dim >= 1")
    }

    fn interior_point(&mut self) -> Point {
        let n = self.denom;
        Point::new((0..self.dim).map(|_| self.value(1, n - 1)).collect()).expect("dim >= 1")
    }

    fn points(&mut self, count: usize) -> Vec<Point> {
        (0..count).map(|_| self.point()).collect()
    }

    /// One point from each sector at `p`, plus `extra` random points.
    fn around(&mut self, p: &Point, extra: usize) -> Result<Vec<Point>> {
        let mut out = Vec::new();
        for idx in index_set(p, &self.bounds) {
            let b = SemispaceId::new(p.clone(), idx, self.bounds)?.sector_box();
            let coords = (0..self.dim)
                .map(|i| {
                    let (lo, hi) = (b.lower().get(i), b.upper().get(i));
                    let mut options: Vec<Value> = (0..=self.denom)
                        .map(|k| self.value(k, k))
                        .filter(|v| lo <= *v && *v <= hi)
                        .collect();
                    options.extend([lo, hi]);
                    *options.choose(&mut self.rng).expect("non-empty")
                })
                .collect();
            out.push(Point::new(coords)?);
        }
        out.extend(self.points(extra));
        out.shuffle(&mut self.rng);
        Ok(out)
    }
}

struct Generate;

impl Command for Generate {
    fn name(&self) -> &'static str {
        "generate"
    }

    fn about(&self) -> &'static str {
        "Print a random instance file (reproducible with --seed)"
    }

    fn needs_instance(&self) -> bool {
        false
    }

    fn wraps_result(&self) -> bool {
        false
    }

    fn configure(&self, cmd: clap::Command) -> clap::Command {
        cmd.arg(
            Arg::new("kind")
                .long("kind")
                .value_parser(KINDS)
                .default_value("hull")
                .help("Instance shape"),
        )
        .arg(
            Arg::new("dim")
                .long("dim")
                .value_parser(value_parser!(usize))
                .default_value("2")
                .help("Dimension d"),
        )
        .arg(
            Arg::new("count")
                .long("count")
                .value_parser(value_parser!(usize))
                .default_value("4")
                .help("Number of generators where the kind leaves it open"),
        )
        .arg(
            Arg::new("denominator")
                .long("denominator")
                .value_parser(value_parser!(i128))
                .default_value("10")
                .help("Coordinates are multiples of 1/N of the bounds' span"),
        )
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let m = &ctx.matches;
        let kind = m.get_one::<String>("kind").expect("defaulted").as_str();
        let dim = *m.get_one::<usize>("dim").expect("defaulted");
        let count = *m.get_one::<usize>("count").expect("defaulted");
        let denom = *m.get_one::<i128>("denominator").expect("defaulted");
        if dim == 0 || count == 0 || denom < 2 {
            bail!("--dim and --count must be positive and --denominator at least 2");
        }
        let mut g = Gen {
            rng: ChaCha8Rng::seed_from_u64(ctx.seed),
            dim,
            denom,
            bounds: ctx.bounds,
        };
        let mut points = BTreeMap::new();
        let mut polytopes = BTreeMap::new();
        let mut boxes = BTreeMap::new();
        let mut params = Map::new();
        match kind {
            "hull" => {
                points.insert("p".to_string(), g.point());
                polytopes.insert("X".to_string(), g.points(count));
            }
            "segment" => {
                points.insert("x".to_string(), g.point());
                points.insert("y".to_string(), g.point());
            }
            "box" => {
                let c = g.points(count);
                let hull = Polytope::new(c.clone())?;
                // redraw until the box misses the hull, falling back to the last draw
                let mut found = None;
                for _ in 0..1000 {
                    let (a, b) = (g.point(), g.point());
                    let lo = Point::new(a.coords().iter().zip(b.coords()).map(|(x, y)| (*x).min(*y)).collect())?;
                    let hi = Point::new(a.coords().iter().zip(b.coords()).map(|(x, y)| (*x).max(*y)).collect())?;
                    let bx = IntervalBox::new(lo, hi)?;
                    let disjoint = box_hull_meet(&bx, &hull, &ctx.bounds)?.is_none();
                    found = Some(bx);
                    if disjoint {
                        break;
                    }
                }
                boxes.insert("B".to_string(), found.expect("at least one draw"));
                polytopes.insert("C".to_string(), c);
            }
            "intsep" => {
                polytopes.insert("X".to_string(), (0..=dim).map(|_| g.interior_point()).collect());
            }
            "matrix" => {
                polytopes.insert("A".to_string(), (0..=dim).map(|_| g.interior_point()).collect());
            }
            "colorful" => {
                let p = g.interior_point();
                for c in 0..=dim {
                    polytopes.insert(format!("color{c}"), g.around(&p, 1)?);
                }
                polytopes.insert("C".to_string(), g.around(&p, 1)?);
                points.insert("p".to_string(), p);
            }
            "radon" => {
                polytopes.insert("X".to_string(), g.points(dim + 2));
            }
            "helly" => {
                let p = g.point();
                for k in 0..count {
                    polytopes.insert(format!("F{k}"), g.around(&p, 1)?);
                }
            }
            "tverberg" => {
                let r = 3;
                polytopes.insert("X".to_string(), g.points((r - 1) * (dim + 1) + 1));
                params.insert("r".into(), json!(r));
            }
            other => bail!("unknown kind {other}"),
        }
        let inst = Instance {
            dimension: dim,
            tnorm: Some(ctx.tnorm.name().to_string()),
            bounds: ctx.bounds,
            points,
            polytopes,
            boxes,
            params,
        };
        Ok(Outcome::verified(inst.to_json()))
    }
}
