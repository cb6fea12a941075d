//! Subcommands. Each one is a [`Command`] trait object registered by name in
//! a [`CommandRegistry`]; `main` builds the clap parser from the registry and
//! dispatches on the chosen name.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, Result};
use clap::ArgMatches;
use maxmin::maxt::SearchOptions;
use maxmin::{Point, Polytope, SemiringBounds, TNorm};
use serde_json::{json, Value as Json};

use crate::instance::Instance;

mod generate;
mod geometry;
mod hull;
mod koenig;
mod maxt;
mod oracle;
mod separation;

pub struct Context {
    pub instance: Option<Instance>,
    pub tnorm: Arc<dyn TNorm>,
    pub bounds: SemiringBounds,
    pub opts: SearchOptions,
    pub seed: u64,
    pub svg: Option<PathBuf>,
    pub matches: ArgMatches,
}

impl Context {
    pub fn instance(&self) -> Result<&Instance> {
        self.instance.as_ref().ok_or_else(|| anyhow!("this command needs an instance file"))
    }

    pub fn polytope(&self, name: &str) -> Result<Polytope> {
        Ok(Polytope::new(self.instance()?.point_list(name)?.to_vec())?)
    }

    /// The polytope named `C`, or `X` when there is no `C`.
    pub fn target_polytope(&self) -> Result<Polytope> {
        let polytopes = &self.instance()?.polytopes;
        if polytopes.contains_key("C") {
            self.polytope("C")
        } else if polytopes.contains_key("X") {
            self.polytope("X")
        } else {
            Err(anyhow!("$.polytopes.C: required by this command"))
        }
    }

    pub fn point(&self, name: &str) -> Result<Point> {
        Ok(self.instance()?.point(name)?.clone())
    }

    /// Fails unless the selected norm is min; most of the geometry is only
    /// defined for it.
    pub fn require_min(&self, command: &str) -> Result<()> {
        if self.tnorm.is_selective() {
            Ok(())
        } else {
            Err(anyhow!("{command} is defined for the min t-norm only, got --tnorm {}", self.tnorm.name()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub claim: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Copy)]
pub enum Status {
    Verified,
    /// Non-separable, not found, not a member and similar answers.
    Negative,
}

#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub result: Json,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn verified(result: Json) -> Outcome {
        Outcome { status: Status::Verified, result, checks: Vec::new() }
    }

    pub fn negative(result: Json) -> Outcome {
        Outcome { status: Status::Negative, result, checks: Vec::new() }
    }

    pub fn check(mut self, claim: impl Into<String>, holds: bool) -> Outcome {
        self.checks.push(Check { claim: claim.into(), holds });
        self
    }

    pub fn add_check(&mut self, claim: impl Into<String>, holds: bool) {
        self.checks.push(Check { claim: claim.into(), holds });
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn verification(&self) -> Json {
        let checks: Vec<Json> = self
            .checks
            .iter()
            .map(|c| json!({ "claim": c.claim, "holds": c.holds }))
            .collect();
        json!({ "verified": self.all_hold(), "checks": checks })
    }
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;

    fn about(&self) -> &'static str;

    fn needs_instance(&self) -> bool {
        true
    }

    /// False for commands whose result is printed bare instead of wrapped
    /// in a result document.
    fn wraps_result(&self) -> bool {
        true
    }

    /// Extra arguments beyond the instance path.
    fn configure(&self, cmd: clap::Command) -> clap::Command {
        cmd
    }

    fn run(&self, ctx: &Context) -> Result<Outcome>;
}

#[derive(Default)]
pub struct CommandRegistry {
    commands: BTreeMap<&'static str, Box<dyn Command>>,
}

impl CommandRegistry {
    pub fn register(&mut self, cmd: Box<dyn Command>) {
        self.commands.insert(cmd.name(), cmd);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Command> {
        self.commands.get(name).map(|c| c.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Command> {
        self.commands.values().map(|c| c.as_ref())
    }

    pub fn builtin() -> CommandRegistry {
        let mut r = CommandRegistry::default();
        geometry::register(&mut r);
        hull::register(&mut r);
        separation::register(&mut r);
        koenig::register(&mut r);
        maxt::register(&mut r);
        oracle::register(&mut r);
        generate::register(&mut r);
        r
    }
}
