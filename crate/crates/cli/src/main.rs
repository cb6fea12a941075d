//! `maxmin`: run max-min convexity operations on instance files.
//!
//! Exit codes: 0 verified result, 2 negative result (not separable, not
//! found, not a member), 1 error.

mod commands;
mod instance;
mod render;

use std::io::{Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Arg, ArgMatches, Args, FromArgMatches};
use maxmin::maxt::SearchOptions;
use maxmin::{SemiringBounds, TNormRegistry, Value};
use serde_json::json;

use commands::{CommandRegistry, Context, Status};
use instance::{val, Instance};

#[derive(Args, Debug)]
struct Globals {
    /// T-norm: min, product or lukasiewicz (overrides the instance file)
    #[arg(long, global = true)]
    tnorm: Option<String>,
    /// Semiring bounds (overrides the instance file)
    #[arg(long, global = true, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
    bounds: Option<Vec<String>>,
    /// Step of the refined search grid for non-min norms, as p/q
    #[arg(long, global = true)]
    grid_step: Option<String>,
    /// Seed for instance generation
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Where `render` writes its SVG (otherwise embedded in the output)
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
}

fn cli(registry: &CommandRegistry) -> clap::Command {
    let mut cmd = Globals::augment_args(
        clap::Command::new("maxmin")
            .about("Exact max-min convex geometry")
            .version(env!("CARGO_PKG_VERSION"))
            .subcommand_required(true)
            .arg_required_else_help(true),
    );
    for c in registry.iter() {
        let mut sub = clap::Command::new(c.name()).about(c.about());
        if c.needs_instance() {
            sub = sub.arg(
                Arg::new("instance")
                    .value_name("INSTANCE")
                    .required(true)
                    .help("Instance file (JSON, schema 1), or - for standard input"),
            );
        }
        cmd = cmd.subcommand(c.configure(sub));
    }
    cmd
}

fn read_instance(path: &str) -> Result<Instance> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    Instance::parse(&text).with_context(|| format!("in {path}"))
}

fn context(globals: &Globals, sub: &ArgMatches, needs_instance: bool) -> Result<Context> {
    let instance = if needs_instance {
        Some(read_instance(sub.get_one::<String>("instance").expect("required"))?)
    } else {
        None
    };
    let bounds = match (&globals.bounds, &instance) {
        (Some(b), _) => SemiringBounds::new(
            Value::parse(&b[0]).map_err(|e| anyhow!("--bounds LO: {e}"))?,
            Value::parse(&b[1]).map_err(|e| anyhow!("--bounds HI: {e}"))?,
        )
        .map_err(|e| anyhow!("--bounds: {e}"))?,
        (None, Some(i)) => i.bounds,
        (None, None) => SemiringBounds::unit(),
    };
    if let Some(i) = &instance {
        i.check_bounds(&bounds)?;
    }
    let name = globals
        .tnorm
        .clone()
        .or_else(|| instance.as_ref().and_then(|i| i.tnorm.clone()))
        .unwrap_or_else(|| "min".into());
    let tnorm = TNormRegistry::builtin().get(&name).map_err(|e| {
        let known: Vec<_> = TNormRegistry::builtin().names().collect();
        anyhow!("{e}; available: {}", known.join(", "))
    })?;
    let mut opts = SearchOptions::default();
    if let Some(step) = &globals.grid_step {
        opts.grid_step = Value::parse(step).map_err(|e| anyhow!("--grid-step: {e}"))?;
        if opts.grid_step <= Value::ZERO {
            bail!("--grid-step must be positive");
        }
    }
    Ok(Context {
        instance,
        tnorm,
        bounds,
        opts,
        seed: globals.seed,
        svg: globals.svg.clone(),
        matches: sub.clone(),
    })
}

fn run() -> Result<Status> {
    let registry = CommandRegistry::builtin();
    let matches = cli(&registry).get_matches();
    let globals = Globals::from_arg_matches(&matches)?;
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let command = registry.get(name).expect("registered");
    let ctx = context(&globals, sub, command.needs_instance())?;
    let outcome = command.run(&ctx)?;
    if !outcome.all_hold() {
        let failed: Vec<&str> = outcome.checks.iter().filter(|c| !c.holds).map(|c| c.claim.as_str()).collect();
        bail!("result failed re-verification, not emitted: {}", failed.join("; "));
    }
    let doc = if command.wraps_result() {
        json!({
            "schema": instance::SCHEMA_VERSION,
            "command": name,
            "tnorm": ctx.tnorm.name(),
            "bounds": [val(ctx.bounds.lo()), val(ctx.bounds.hi())],
            "status": match outcome.status {
                Status::Verified => "verified",
                Status::Negative => "negative",
            },
            "result": outcome.result,
            "verification": outcome.verification(),
        })
    } else {
        outcome.result.clone()
    };
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc)?) {
        // a closed pipe (`| head`) is not an error of ours
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(e.into());
        }
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    match run() {
        Ok(Status::Verified) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
