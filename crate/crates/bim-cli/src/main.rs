//! Command-line front end: parse monoid, group, and supernatural specs, run
//! the analyses, and print reports.
//!
//! Exit codes: 0 success (including `unknown` verdicts), 1 domain or
//! precondition failures, 2 parse errors, 3 validation (axiom) failures,
//! 4 resource bounds.

mod spec_expr;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use bim::colimit::{finite_type_certificate, uhf_isomorphic, uhf_mv_probe, UhfSpec};
use bim::error::Error;
use bim::structure::{decompose, reconstruct, StructureReport};
use bim::supernat::Supernatural;
use bim::typemv::{enumerate_invariant_means, lukasiewicz_identification, mv_algebra};
use bim::{Limits, Verdict};

#[derive(Parser)]
#[command(name = "bim", version, about = "Finite Boolean inverse monoid toolkit")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Maximum number of elements a materialized monoid may have
    /// (env: BIM_MAX_ELEMENTS)
    #[arg(long, global = true)]
    max_elements: Option<usize>,
    /// Maximum matrix size of a tower stage (env: BIM_HORIZON)
    #[arg(long, global = true)]
    horizon: Option<u64>,
    /// Emit machine-readable JSON instead of plain text (env: BIM_JSON)
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structure report and groupoid decomposition of a monoid
    Analyze { spec: String },
    /// Print the MV-algebra of a Foulis monoid and its chain identification
    Mv { spec: String },
    /// Enumerate the normalized invariant means of a monoid
    Mean { spec: String },
    /// Verify the reconstruction isomorphism onto the bisection monoid
    Reconstruct { spec: String },
    /// Tower operations driven by supernatural numbers
    #[command(subcommand)]
    Uhf(UhfCommand),
}

#[derive(Subcommand)]
enum UhfCommand {
    /// Decide whether two towers are isomorphic
    Iso { a: String, b: String },
    /// Decide whether some stage attains an idempotent of the given mean
    Probe { spec: String, fraction: String },
    /// Verify the subalgebra chain of the first k stages
    Certify { spec: String, k: usize },
}

fn resolve_limits(opts: &GlobalOpts) -> Limits {
    let defaults = Limits::default();
    let env_usize = |name: &str| {
        std::env::var(name)
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
    };
    let env_u64 = |name: &str| std::env::var(name).ok().and_then(|v| v.parse::<u64>().ok());
    Limits {
        max_elements: opts
            .max_elements
            .or_else(|| env_usize("BIM_MAX_ELEMENTS"))
            .unwrap_or(defaults.max_elements),
        max_level_size: opts
            .horizon
            .or_else(|| env_u64("BIM_HORIZON"))
            .unwrap_or(defaults.max_level_size),
    }
}

fn resolve_json(opts: &GlobalOpts) -> bool {
    opts.json
        || std::env::var("BIM_JSON")
            .map(|v| v == "1" || v.eq_ignore_ascii_case("true"))
            .unwrap_or(false)
}

fn parse_uhf_spec(text: &str, limits: &Limits) -> bim::error::Result<Arc<UhfSpec>> {
    if let Some(rest) = text.trim().strip_prefix("seq:") {
        let terms = rest
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::parse(1, 1, format!("bad sequence term `{}`", t.trim())))
            })
            .collect::<bim::error::Result<Vec<u64>>>()?;
        UhfSpec::from_prefix(&terms, limits)
    } else {
        let n = Supernatural::parse(text)?;
        UhfSpec::from_supernatural(&n, limits)
    }
}

fn parse_fraction(text: &str) -> bim::error::Result<(u64, u64)> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p = p
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, 1, format!("bad numerator `{p}`")))?;
        let q = q
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, 1, format!("bad denominator `{q}`")))?;
        Ok((p, q))
    } else {
        let v: u64 = text
            .parse()
            .map_err(|_| Error::parse(1, 1, format!("bad fraction `{text}`")))?;
        Ok((v, 1))
    }
}

fn run(cli: &Cli) -> bim::error::Result<String> {
    let limits = resolve_limits(&cli.opts);
    let as_json = resolve_json(&cli.opts);
    match &cli.command {
        Command::Analyze { spec } => {
            let monoid = spec_expr::eval_spec(spec, &limits)?;
            let report = StructureReport::compute(&monoid);
            let components = decompose(&monoid)?;
            if as_json {
                let comps: Vec<_> = components
                    .iter()
                    .map(|(atoms, g)| json!({ "atoms": atoms, "isotropy_order": g.order() }))
                    .collect();
                Ok(serde_json::to_string_pretty(&json!({
                    "report": report,
                    "components": comps,
                }))
                .expect("serializable"))
            } else {
                let mut out = report.to_text();
                for (i, (atoms, g)) in components.iter().enumerate() {
                    out.push_str(&format!(
                        "component={} atoms={} isotropy_order={}\n",
                        i + 1,
                        atoms,
                        g.order()
                    ));
                }
                Ok(out)
            }
        }
        Command::Mv { spec } => {
            let monoid = spec_expr::eval_spec(spec, &limits)?;
            let coord = mv_algebra(&monoid)?;
            let chain = lukasiewicz_identification(&coord.algebra)?;
            if as_json {
                let mut oplus = Vec::new();
                for a in 0..coord.algebra.size() as u32 {
                    let row: Vec<u32> = (0..coord.algebra.size() as u32)
                        .map(|b| coord.algebra.oplus(a, b))
                        .collect();
                    oplus.push(row);
                }
                let neg: Vec<u32> = (0..coord.algebra.size() as u32)
                    .map(|a| coord.algebra.neg(a))
                    .collect();
                Ok(serde_json::to_string_pretty(&json!({
                    "size": coord.algebra.size(),
                    "oplus": oplus,
                    "neg": neg,
                    "zero": coord.algebra.zero(),
                    "one": coord.algebra.one(),
                    "lukasiewicz": chain.as_ref().map(|_| coord.algebra.size()),
                }))
                .expect("serializable"))
            } else {
                let mut out = coord.algebra.format();
                if chain.is_some() {
                    out.push_str(&format!("lukasiewicz={}\n", coord.algebra.size()));
                }
                Ok(out)
            }
        }
        Command::Mean { spec } => {
            let monoid = spec_expr::eval_spec(spec, &limits)?;
            let means = enumerate_invariant_means(&monoid)?;
            if as_json {
                let list: Vec<_> = means
                    .iter()
                    .map(|mean| {
                        mean.entries()
                            .iter()
                            .map(|(e, v)| json!({ "idempotent": e.index(), "value": v.to_string() }))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                Ok(serde_json::to_string_pretty(&json!({
                    "count": means.len(),
                    "unique": means.len() == 1,
                    "means": list,
                }))
                .expect("serializable"))
            } else {
                let mut out = format!("means={}\nunique={}\n", means.len(), means.len() == 1);
                for (i, mean) in means.iter().enumerate() {
                    let vals: Vec<String> = mean
                        .entries()
                        .iter()
                        .map(|(e, v)| format!("nu[{}]={}", e.index(), v))
                        .collect();
                    out.push_str(&format!("mean {}: {}\n", i, vals.join(" ")));
                }
                Ok(out)
            }
        }
        Command::Reconstruct { spec } => {
            let monoid = spec_expr::eval_spec(spec, &limits)?;
            let iso = reconstruct(&monoid, &limits)?;
            if as_json {
                Ok(serde_json::to_string_pretty(&json!({
                    "verified": true,
                    "elements": monoid.size(),
                }))
                .expect("serializable"))
            } else {
                Ok(format!(
                    "isomorphism verified over {} elements\n",
                    iso.source().size()
                ))
            }
        }
        Command::Uhf(sub) => run_uhf(sub, &limits, as_json),
    }
}

fn verdict_output(v: Verdict, as_json: bool) -> String {
    if as_json {
        serde_json::to_string_pretty(&json!({ "verdict": v.as_str() })).expect("serializable")
    } else {
        format!("{v}\n")
    }
}

fn run_uhf(cmd: &UhfCommand, limits: &Limits, as_json: bool) -> bim::error::Result<String> {
    match cmd {
        UhfCommand::Iso { a, b } => {
            let sa = parse_uhf_spec(a, limits)?;
            let sb = parse_uhf_spec(b, limits)?;
            Ok(verdict_output(uhf_isomorphic(&sa, &sb)?, as_json))
        }
        UhfCommand::Probe { spec, fraction } => {
            let s = parse_uhf_spec(spec, limits)?;
            let (p, q) = parse_fraction(fraction)?;
            Ok(verdict_output(uhf_mv_probe(&s, p, q)?, as_json))
        }
        UhfCommand::Certify { spec, k } => {
            let s = parse_uhf_spec(spec, limits)?;
            let (members, _) = finite_type_certificate(&s, *k, limits)?;
            if as_json {
                Ok(serde_json::to_string_pretty(&json!({ "levels": members }))
                    .expect("serializable"))
            } else {
                let mut out = String::new();
                for m in &members {
                    out.push_str(&format!(
                        "level={} size={} elements={} subalgebra={} factorizable={} fundamental={} zero_simplifying={} j_linear={} divides_next={}\n",
                        m.level,
                        m.stage_size,
                        m.image_elements,
                        m.subalgebra,
                        m.factorizable,
                        m.fundamental,
                        m.zero_simplifying,
                        m.j_linear,
                        m.divides_next,
                    ));
                }
                Ok(out)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Parse { .. } => 2,
                Error::Axiom { .. } => 3,
                Error::Resource(_) => 4,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
