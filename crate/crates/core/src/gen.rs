//! Seeded random instances, trees, graphs and halting tables.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::lab::{BinaryTree, Graph, MockOracle, OracleEntry};
use crate::relation::{known, BoolRelation};

/// Largest variable count accepted by [`gen_random_instance`].
pub const GEN_MAX_VARS: usize = 1_000_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// What [`gen_random_instance`] draws its constraints from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenKind {
    /// Clauses of width 1 to 3 with at most one positive literal.
    Horn,
    /// Clauses of width exactly 2.
    TwoSat,
    /// Parity equations of a fixed arity with random right-hand sides.
    Xor { arity: usize },
    /// Uniform choices from a fixed set of relations.
    Rel(Vec<BoolRelation>),
}

/// `horn`, `2sat`, `xor` (arity 3), `xorK`, `rel:NAME,NAME,..` with names
/// from the built-in catalogue.
impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("unknown generator `{s}`"));
        match s {
            "horn" => Ok(GenKind::Horn),
            "2sat" => Ok(GenKind::TwoSat),
            "xor" => Ok(GenKind::Xor { arity: 3 }),
            _ => {
                if let Some(k) = s.strip_prefix("xor") {
                    let arity: usize = k.parse().map_err(|_| bad())?;
                    if !(1..=BoolRelation::MAX_ARITY).contains(&arity) {
                        return Err(bad());
                    }
                    return Ok(GenKind::Xor { arity });
                }
                let names = s.strip_prefix("rel:").ok_or_else(bad)?;
                let rels = names
                    .split(',')
                    .map(|n| {
                        known::by_name(n)
                            .ok_or_else(|| Error::Invalid(format!("unknown relation `{n}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(GenKind::Rel(rels))
            }
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenKind::Horn => f.write_str("horn"),
            GenKind::TwoSat => f.write_str("2sat"),
            GenKind::Xor { arity: 3 } => f.write_str("xor"),
            GenKind::Xor { arity } => write!(f, "xor{arity}"),
            GenKind::Rel(rs) => {
                let names: Vec<String> = rs.iter().map(BoolRelation::label).collect();
                write!(f, "rel:{}", names.join(","))
            }
        }
    }
}

/// The clause `OR_j l_j` with literal `j` positive iff bit `j` of `signs`.
fn clause(width: usize, signs: u32) -> BoolRelation {
    // the only falsifying tuple sets every literal false
    let falsifier = !signs & ((1 << width) - 1);
    let tag: String = (0..width)
        .map(|j| if signs >> j & 1 == 1 { 'P' } else { 'N' })
        .collect();
    BoolRelation::from_predicate(width, |t| t != falsifier)
        .expect("width within cap")
        .with_name(format!("CL_{tag}"))
}

/// `k` variables out of `0..n`, distinct whenever `k <= n`.
fn pick_vars(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<u32> {
    if k <= n {
        sample(rng, n, k).into_iter().map(|v| v as u32).collect()
    } else {
        (0..k).map(|_| rng.gen_range(0..n) as u32).collect()
    }
}

/// `m` constraints over `n` variables drawn from `kind`. The same arguments
/// always give the same instance.
pub fn gen_random_instance(kind: &GenKind, n: usize, m: usize, seed: u64) -> Result<Instance> {
    if n > GEN_MAX_VARS {
        return Err(Error::Budget {
            what: "generated variables",
            needed: n as u128,
            bound: GEN_MAX_VARS as u128,
        });
    }
    if n == 0 && m > 0 {
        return Err(Error::Invalid(
            "constraints need at least one variable".into(),
        ));
    }
    let mut rng = rng(seed);
    let mut inst = Instance::new(n);
    match kind {
        GenKind::Horn => {
            // shapes[w - 1][p]: p = 0 all negative, p = j + 1 literal j positive
            let shapes: Vec<Vec<usize>> = (1..=3)
                .map(|w| {
                    std::iter::once(0)
                        .chain((0..w).map(|j| 1 << j))
                        .map(|signs| inst.add_relation(clause(w, signs)))
                        .collect()
                })
                .collect();
            for _ in 0..m {
                let w = rng.gen_range(1..=3usize).min(n);
                let p = rng.gen_range(0..=w);
                let vars = pick_vars(&mut rng, n, w);
                inst.add_constraint(shapes[w - 1][p], vars)?;
            }
        }
        GenKind::TwoSat => {
            let ids: Vec<usize> = (0..4).map(|s| inst.add_relation(clause(2, s))).collect();
            for _ in 0..m {
                let s = rng.gen_range(0..4);
                let vars = pick_vars(&mut rng, n, 2);
                inst.add_constraint(ids[s], vars)?;
            }
        }
        GenKind::Xor { arity } => {
            let ids = [false, true].map(|p| inst.add_relation(known::parity(*arity, p)));
            for _ in 0..m {
                let p = rng.gen_bool(0.5) as usize;
                let vars = pick_vars(&mut rng, n, *arity);
                inst.add_constraint(ids[p], vars)?;
            }
        }
        GenKind::Rel(rels) => {
            if rels.is_empty() && m > 0 {
                return Err(Error::Invalid("empty relation set".into()));
            }
            let ids: Vec<usize> = rels.iter().map(|r| inst.add_relation(r.clone())).collect();
            for _ in 0..m {
                let i = rng.gen_range(0..ids.len());
                let vars = pick_vars(&mut rng, n, rels[i].arity());
                inst.add_constraint(ids[i], vars)?;
            }
        }
    }
    Ok(inst)
}

/// A tree of depth at most `depth` where each child of a kept string is
/// kept with probability `keep`.
pub fn random_tree(depth: usize, keep: f64, seed: u64) -> BinaryTree {
    let mut rng = rng(seed);
    let mut strings = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for s in &frontier {
            for b in [false, true] {
                if rng.gen_bool(keep) {
                    let mut c: Vec<bool> = s.clone();
                    c.push(b);
                    next.push(c);
                }
            }
        }
        strings.extend(next.iter().cloned());
        frontier = next;
    }
    BinaryTree::from_strings(strings).expect("built downward closed")
}

/// `m` random edges without self-loops. With `bipartite` set every edge
/// crosses a hidden random bipartition.
pub fn random_graph(n: usize, m: usize, bipartite: bool, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut g = Graph::new(n);
    if n < 2 {
        return g;
    }
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut added = 0;
    let mut tries = 0;
    while added < m && tries < 100 * (m + 1) {
        tries += 1;
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || (bipartite && side[u] == side[v]) {
            continue;
        }
        g.add_edge(u as u32, v as u32).expect("endpoints in range");
        added += 1;
    }
    g
}

/// Up to `max_entries` halting entries over indices `< max_index`, with
/// distinct stages below `max_stage` and values at most `max_value`.
pub fn random_oracle(
    max_entries: usize,
    max_index: usize,
    max_stage: usize,
    max_value: u64,
    seed: u64,
) -> Result<MockOracle> {
    let mut rng = rng(seed);
    let count = rng.gen_range(0..=max_entries.min(max_index).min(max_stage));
    let es = sample(&mut rng, max_index, count);
    let stages = sample(&mut rng, max_stage, count);
    let mut entries = Vec::with_capacity(count);
    for (e, stage) in es.into_iter().zip(stages) {
        entries.push(OracleEntry {
            e,
            value: rng.gen_range(0..=max_value),
            stage,
        });
    }
    MockOracle::new(entries)
}
