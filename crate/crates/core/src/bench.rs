//! Timed solver runs over generated instances, reported as JSON lines.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gen::{gen_random_instance, GenKind};
use crate::solve::{brute_force_sat, solve_dispatch, Engine};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchCase {
    /// A [`GenKind`] name such as `2sat` or `rel:NEQ,IMPL`.
    pub generator: String,
    pub seed: u64,
    pub vars: usize,
    pub constraints: usize,
}

impl BenchCase {
    pub fn new(generator: &str, vars: usize, constraints: usize, seed: u64) -> Self {
        BenchCase {
            generator: generator.to_string(),
            seed,
            vars,
            constraints,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub cases: Vec<BenchCase>,
    /// Cases with at most this many variables are also decided by brute
    /// force.
    pub brute_force_max_vars: usize,
}

/// Generators of the small mixed cases.
const MIXED: [&str; 7] = [
    "horn",
    "2sat",
    "xor",
    "rel:ONE_IN_THREE",
    "rel:NEQ,IMPL",
    "rel:OR,ANDNOT",
    "rel:X,NOTX,NAND",
];

impl BenchConfig {
    /// Large 2-SAT, horn and XOR cases plus a mixed set of small cases.
    pub fn standard() -> Self {
        let mut cases = vec![
            BenchCase::new("2sat", 1_000_000, 1_000_000, 1),
            BenchCase::new("horn", 1_000_000, 1_000_000, 1),
            BenchCase::new("xor8", 2000, 2000, 1),
        ];
        cases.extend(Self::mixed(&[1, 2, 3]).cases);
        BenchConfig {
            cases,
            brute_force_max_vars: 20,
        }
    }

    /// Small cases only, every one cross-checked.
    pub fn mixed(seeds: &[u64]) -> Self {
        let mut cases = Vec::new();
        for g in MIXED {
            for n in [8, 14, 20] {
                for &seed in seeds {
                    cases.push(BenchCase::new(g, n, 2 * n, seed));
                }
            }
        }
        BenchConfig {
            cases,
            brute_force_max_vars: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Sat,
    Unsat,
}

impl Verdict {
    fn of(sat: bool) -> Self {
        if sat {
            Verdict::Sat
        } else {
            Verdict::Unsat
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub generator: String,
    pub seed: u64,
    pub vars: usize,
    pub constraints: usize,
    pub engine: Engine,
    pub verdict: Verdict,
    /// Solver wall time; generation is not included.
    pub millis: f64,
    pub brute_force: Option<Verdict>,
}

impl BenchRow {
    /// False only when the brute-force verdict disagrees.
    pub fn agrees(&self) -> bool {
        self.brute_force.is_none_or(|b| b == self.verdict)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_json_lines(&self) -> String {
        self.rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("plain data") + "\n")
            .collect()
    }

    /// Rows with the timings zeroed, for comparing runs.
    pub fn without_times(&self) -> BenchReport {
        BenchReport {
            rows: self
                .rows
                .iter()
                .map(|r| BenchRow {
                    millis: 0.0,
                    ..r.clone()
                })
                .collect(),
        }
    }
}

pub fn run_case(case: &BenchCase, brute_force_max_vars: usize) -> Result<BenchRow> {
    let kind: GenKind = case.generator.parse()?;
    let inst = gen_random_instance(&kind, case.vars, case.constraints, case.seed)?;
    let start = Instant::now();
    let (result, engine) = solve_dispatch(&inst)?;
    let millis = start.elapsed().as_secs_f64() * 1000.0;
    let brute_force = if case.vars <= brute_force_max_vars {
        Some(Verdict::of(brute_force_sat(&inst)?.is_sat()))
    } else {
        None
    };
    Ok(BenchRow {
        generator: case.generator.clone(),
        seed: case.seed,
        vars: case.vars,
        constraints: case.constraints,
        engine,
        verdict: Verdict::of(result.is_sat()),
        millis,
        brute_force,
    })
}

/// Runs every case in order on one thread.
pub fn bench_suite(config: &BenchConfig) -> Result<BenchReport> {
    let rows = config
        .cases
        .iter()
        .map(|c| run_case(c, config.brute_force_max_vars))
        .collect::<Result<Vec<_>>>()?;
    Ok(BenchReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_agrees_with_brute_force() {
        let report = bench_suite(&BenchConfig::mixed(&[5])).unwrap();
        assert_eq!(report.rows.len(), MIXED.len() * 3);
        assert!(report
            .rows
            .iter()
            .all(|r| r.brute_force.is_some() && r.agrees()));
    }

    #[test]
    fn deterministic_apart_from_time() {
        let cfg = BenchConfig::mixed(&[1]);
        let a = bench_suite(&cfg).unwrap().without_times();
        let b = bench_suite(&cfg).unwrap().without_times();
        assert_eq!(a, b);
    }

    #[test]
    fn json_lines() {
        let cfg = BenchConfig {
            cases: vec![BenchCase::new("xor", 12, 10, 3)],
            brute_force_max_vars: 20,
        };
        let text = bench_suite(&cfg).unwrap().to_json_lines();
        assert_eq!(text.lines().count(), 1);
        let row: BenchRow = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(row.engine, Engine::Xor);
        assert!(text.contains("\"engine\":\"xor\""));
    }
}
