//! Seeded randomized verification suites over the instance grid.
//!
//! Trial `i` of a run with seed `s` draws everything from its own seed
//! `splitmix64(s, i)`, so trials can run in parallel and any single trial
//! can be replayed from its payload.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::report::ToolError;

pub mod sample;
mod suites;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticSpec {
    pub p: u32,
    pub a: i64,
    pub b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalGrid {
    pub max_components: usize,
    pub max_multiplicity: u32,
    /// Rational places `t - a` with `|a| <= point_range`.
    pub point_range: i64,
}

/// Bounds of the instance grid, read from a versioned file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub version: String,
    pub primes: Vec<u32>,
    pub max_extension_degree: u32,
    pub max_place_degree: usize,
    pub max_components: usize,
    /// Bound on `sum n_i deg P_i`.
    pub max_modulus_weight: usize,
    pub elliptic_curves: Vec<EllipticSpec>,
    /// Fraction `[num, den]` of finite instances drawn on elliptic curves.
    pub elliptic_share: [u32; 2],
    pub sweep_cap: u64,
    pub rational: RationalGrid,
    pub max_root_index: u64,
    pub max_series_precision: usize,
    pub max_cover_degree: usize,
}

impl GridConfig {
    pub fn builtin() -> &'static GridConfig {
        static GRID: OnceLock<GridConfig> = OnceLock::new();
        GRID.get_or_init(|| {
            serde_json::from_str(include_str!("../../config/grid-v1.json")).expect("shipped grid config parses")
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PPrimary,
    Char0Divisible,
    KeyLem,
    KeyLemP,
    NormCompat,
    TorsionIso,
    LangOrders,
    PiKernel,
    NDivisible,
    UDivisible,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::PPrimary,
        Suite::Char0Divisible,
        Suite::KeyLem,
        Suite::KeyLemP,
        Suite::NormCompat,
        Suite::TorsionIso,
        Suite::LangOrders,
        Suite::PiKernel,
        Suite::NDivisible,
        Suite::UDivisible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PPrimary => "p-primary",
            Suite::Char0Divisible => "char0-divisible",
            Suite::KeyLem => "key-lem",
            Suite::KeyLemP => "key-lem-p",
            Suite::NormCompat => "norm-compat",
            Suite::TorsionIso => "torsion-iso",
            Suite::LangOrders => "lang-orders",
            Suite::PiKernel => "pi-kernel",
            Suite::NDivisible => "n-divisible",
            Suite::UDivisible => "u-divisible",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ToolError;

    fn from_str(s: &str) -> Result<Self, ToolError> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            ToolError::Parse(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    /// Corrupt the comparison of the torsion-iso suite.
    pub inject_fault: bool,
}

/// Everything needed to rerun one trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReplayPayload {
    pub suite: Suite,
    pub version: String,
    pub grid: String,
    pub index: usize,
    pub trial_seed: u64,
    #[serde(default)]
    pub fault: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub index: usize,
    pub trial_seed: u64,
    pub passed: bool,
    pub instance: Value,
    pub detail: String,
    pub observations: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<ReplayPayload>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub version: String,
    pub grid: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub ok: bool,
    pub results: Vec<TrialOutcome>,
}

impl VerifyReport {
    fn assemble(suite: Suite, seed: u64, results: Vec<TrialOutcome>) -> Self {
        let passed = results.iter().filter(|r| r.passed).count();
        VerifyReport {
            suite,
            version: VERSION.to_string(),
            grid: GridConfig::builtin().version.clone(),
            seed,
            trials: results.len(),
            passed,
            failed: results.len() - passed,
            ok: passed == results.len(),
            results,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &TrialOutcome> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "suite {} (seed {}, {} trials, grid {}): {} passed, {} failed\n",
            self.suite, self.seed, self.trials, self.grid, self.passed, self.failed
        );
        for f in self.failures() {
            s.push_str(&format!("  trial {} FAILED: {}\n", f.index, f.detail));
            s.push_str(&format!("    instance: {}\n", f.instance));
            if let Some(p) = &f.replay {
                s.push_str(&format!("    replay: {}\n", serde_json::to_string(p).unwrap()));
            }
        }
        s
    }
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(seed: u64, index: usize) -> u64 {
    splitmix64(splitmix64(seed) ^ (index as u64).wrapping_mul(0xD1B5_4A32_D192_ED03))
}

fn run_trial(suite: Suite, index: usize, seed: u64, fault: bool) -> TrialOutcome {
    let grid = GridConfig::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = suites::run(suite, grid, &mut rng, fault);
    let replay = (!t.passed).then(|| ReplayPayload {
        suite,
        version: VERSION.to_string(),
        grid: grid.version.clone(),
        index,
        trial_seed: seed,
        fault,
    });
    TrialOutcome {
        index,
        trial_seed: seed,
        passed: t.passed,
        instance: t.instance,
        detail: t.detail,
        observations: t.observations,
        replay,
    }
}

pub fn run(opts: &VerifyOptions) -> Result<VerifyReport, ToolError> {
    if opts.trials == 0 {
        return Err(ToolError::Parse("trials must be at least 1".into()));
    }
    let results: Vec<TrialOutcome> = (0..opts.trials)
        .into_par_iter()
        .map(|i| run_trial(opts.suite, i, trial_seed(opts.seed, i), opts.inject_fault))
        .collect();
    Ok(VerifyReport::assemble(opts.suite, opts.seed, results))
}

/// Rerun the single trial described by a failure payload.
pub fn replay(payload: &ReplayPayload) -> Result<VerifyReport, ToolError> {
    let grid = GridConfig::builtin();
    if payload.grid != grid.version {
        return Err(ToolError::Parse(format!(
            "payload was produced with grid {}, this build uses {}",
            payload.grid, grid.version
        )));
    }
    let outcome = run_trial(payload.suite, payload.index, payload.trial_seed, payload.fault);
    Ok(VerifyReport::assemble(payload.suite, payload.trial_seed, vec![outcome]))
}

pub fn parse_replay(text: &str) -> Result<ReplayPayload, ToolError> {
    serde_json::from_str(text).map_err(|e| ToolError::Parse(format!("invalid replay payload: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_value(s).unwrap(), s.name());
        }
        assert_eq!("nope".parse::<Suite>().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn grid_config_loads() {
        let g = GridConfig::builtin();
        assert_eq!(g.primes, vec![2, 3, 5]);
        assert_eq!(g.elliptic_curves.len(), 2);
    }

    #[test]
    fn trial_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| trial_seed(42, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    fn smoke(suite: Suite, trials: usize) -> VerifyReport {
        run(&VerifyOptions { suite, trials, seed: 42, inject_fault: false }).unwrap()
    }

    #[test]
    fn every_suite_runs() {
        for s in Suite::ALL {
            let r = smoke(s, 8);
            if s != Suite::NDivisible {
                assert!(r.ok, "{}", r.to_text());
            }
        }
    }
}
