mod cache;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use modpic::arith::Gf;
use modpic::curve::{Curve, EllipticCurve, P1};
use modpic::pair::{Pair, PairDescription};
use modpic::report::{class_report, group_report, pi_report, ToolError};
use modpic::verify::{self, Suite, VerifyOptions};

use cache::Cache;

/// Chow groups with modulus on curves: relative Picard groups, their
/// unipotent parts, and randomized checks of their structure.
#[derive(Parser)]
#[command(name = "modpic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print wall-clock time to stderr.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args)]
struct Common {
    /// Pair description file (JSON), or `-` for stdin.
    #[arg(long, short)]
    input: PathBuf,
    /// Emit machine-readable JSON.
    #[arg(long)]
    json: bool,
    /// Neither read nor write the result cache.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Structure of Pic(C, D): free rank, invariant factors, unipotent part.
    Group(Common),
    /// Coordinates of the class of a 0-cycle and of its projection.
    Class {
        #[command(flatten)]
        common: Common,
        /// Cycle such as "[t-1] - 2[t^2+1] + div((t-1)/(t-2))".
        cycle: String,
    },
    /// The projection Pic(C, D) -> Pic(C, D_red) and its kernel.
    Pi {
        #[command(flatten)]
        common: Common,
        /// Optional cycle whose class and image are shown.
        cycle: Option<String>,
    },
    /// Run a seeded verification suite.
    Verify {
        /// Suite name.
        #[arg(required_unless_present = "replay")]
        suite: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Rerun one trial from a failure payload (inline JSON or a file).
        #[arg(long, conflicts_with = "suite")]
        replay: Option<String>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// List the places of a curve.
    Places {
        /// Pair description whose curve is listed.
        #[arg(long, short, conflicts_with = "field")]
        input: Option<PathBuf>,
        /// Base field as `p` or `p^k`.
        #[arg(long, required_unless_present = "input")]
        field: Option<String>,
        /// Elliptic curve coefficients `a,b`.
        #[arg(long, requires = "field")]
        elliptic: Option<String>,
        /// Largest place degree on the projective line.
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
}

fn read_pair(path: &PathBuf) -> Result<PairDescription, ToolError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| ToolError::Parse(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| ToolError::Parse(format!("{}: {e}", path.display())))?
    };
    Ok(PairDescription::from_json(&text)?)
}

/// Text and JSON renderings of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct Rendered {
    pub text: String,
    pub json: String,
}

fn render<T: Serialize>(value: &T, text: String) -> Rendered {
    Rendered { text, json: serde_json::to_string_pretty(value).expect("serializable") + "\n" }
}

fn cached(
    timing: bool,
    common: &Common,
    command: &str,
    extra: Option<&str>,
    compute: impl FnOnce(&PairDescription) -> Result<Rendered, ToolError>,
) -> Result<String, ToolError> {
    let desc = read_pair(&common.input)?;
    let cache = (!common.no_cache).then(Cache::from_env).flatten();
    let key = Cache::key(command, &desc, extra)?;
    let out = match cache.as_ref().and_then(|c| c.load(&key)) {
        Some(hit) => {
            if timing {
                eprintln!("cache: hit");
            }
            hit
        }
        None => {
            if timing && cache.is_some() {
                eprintln!("cache: miss");
            }
            let r = compute(&desc)?;
            if let Some(c) = &cache {
                c.store(&key, &r);
            }
            r
        }
    };
    Ok(if common.json { out.json } else { out.text })
}

fn places_listing(
    input: &Option<PathBuf>,
    field: &Option<String>,
    elliptic: &Option<String>,
    max_degree: usize,
) -> Result<Vec<String>, ToolError> {
    let desc = match input {
        Some(path) => read_pair(path)?,
        None => {
            let spec = field.as_deref().unwrap_or_default();
            let (p, k) = match spec.split_once('^') {
                Some((p, k)) => (p.trim(), k.trim()),
                None => (spec.trim(), "1"),
            };
            let bad = || ToolError::Parse(format!("bad field {spec:?}; expected p or p^k"));
            let curve = match elliptic {
                Some(ab) => {
                    let (a, b) =
                        ab.split_once(',').ok_or_else(|| ToolError::Parse("expected --elliptic a,b".into()))?;
                    let a: i64 = a.trim().parse().map_err(|_| ToolError::Parse(format!("bad coefficient {a:?}")))?;
                    let b: i64 = b.trim().parse().map_err(|_| ToolError::Parse(format!("bad coefficient {b:?}")))?;
                    format!(r#"{{"kind": "Elliptic", "a": {a}, "b": {b}}}"#)
                }
                None => r#"{"kind": "P1"}"#.to_string(),
            };
            let p: u32 = p.parse().map_err(|_| bad())?;
            let k: u32 = k.parse().map_err(|_| bad())?;
            PairDescription::from_json(&format!(
                r#"{{"characteristic": {p}, "extension_degree": {k}, "curve": {curve}, "modulus": []}}"#
            ))?
        }
    };
    match desc.resolve()? {
        Pair::FiniteLine { curve, .. } => list_line(&curve, max_degree),
        Pair::Elliptic { curve, .. } => Ok(list_elliptic(&curve)),
        Pair::RationalLine { .. } => {
            Err(ToolError::Parse("the rational places of P1 over Q form the infinite family t - a plus inf".into()))
        }
    }
}

fn list_line(curve: &P1<Gf>, max_degree: usize) -> Result<Vec<String>, ToolError> {
    let places = curve.field().enumerate_places(max_degree).map_err(|e| ToolError::Parse(e.to_string()))?.listed();
    Ok(places.iter().map(|p| curve.fmt_place(p)).collect())
}

fn list_elliptic(curve: &EllipticCurve) -> Vec<String> {
    curve.points().iter().map(|p| curve.fmt_place(p)).collect()
}

fn run(cli: &Cli) -> Result<(String, i32), ToolError> {
    match &cli.command {
        Command::Group(common) => {
            let out = cached(cli.timing, common, "group", None, |d| {
                let r = group_report(d)?;
                Ok(render(&r, r.to_text()))
            })?;
            Ok((out, 0))
        }
        Command::Class { common, cycle } => {
            let out = cached(cli.timing, common, "class", Some(cycle), |d| {
                let r = class_report(d, cycle)?;
                Ok(render(&r, r.to_text()))
            })?;
            Ok((out, 0))
        }
        Command::Pi { common, cycle } => {
            let out = cached(cli.timing, common, "pi", cycle.as_deref(), |d| {
                let r = pi_report(d, cycle.as_deref())?;
                Ok(render(&r, r.to_text()))
            })?;
            Ok((out, 0))
        }
        Command::Verify { suite, trials, seed, json, replay, inject_fault } => {
            let report = match replay {
                Some(payload) => {
                    let text = match std::fs::read_to_string(payload) {
                        Ok(s) => s,
                        Err(_) => payload.clone(),
                    };
                    verify::replay(&verify::parse_replay(&text)?)?
                }
                None => {
                    let suite: Suite = suite.as_deref().unwrap_or_default().parse()?;
                    verify::run(&VerifyOptions { suite, trials: *trials, seed: *seed, inject_fault: *inject_fault })?
                }
            };
            let out = if *json { render(&report, String::new()).json } else { report.to_text() };
            Ok((out, if report.ok { 0 } else { 1 }))
        }
        Command::Places { input, field, elliptic, max_degree, json } => {
            let places = places_listing(input, field, elliptic, *max_degree)?;
            let out =
                if *json { serde_json::to_string_pretty(&places).unwrap() + "\n" } else { places.join("\n") + "\n" };
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
