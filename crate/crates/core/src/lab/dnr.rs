use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::relation::known;

/// A halting table standing in for `Φ_e(e)`: entry `e` converges to
/// `value` from stage `stage` on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OracleEntry {
    pub e: usize,
    pub value: u64,
    pub stage: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MockOracle {
    entries: Vec<OracleEntry>,
}

impl MockOracle {
    /// At most one entry per index and at most one index halting per stage.
    pub fn new(mut entries: Vec<OracleEntry>) -> Result<Self> {
        entries.sort_by_key(|x| x.stage);
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                if a.e == b.e {
                    return Err(Error::Invalid(format!("index {} halts twice", a.e)));
                }
                if a.stage == b.stage {
                    return Err(Error::Invalid(format!(
                        "two indices halt at stage {}",
                        a.stage
                    )));
                }
            }
        }
        Ok(MockOracle { entries })
    }

    pub fn entries(&self) -> &[OracleEntry] {
        &self.entries
    }

    /// `Φ_{e,s}(e)`.
    pub fn lookup(&self, e: usize, stage: usize) -> Option<u64> {
        self.entries
            .iter()
            .find(|x| x.e == e && x.stage <= stage)
            .map(|x| x.value)
    }

    pub fn halting_at(&self, stage: usize) -> Option<&OracleEntry> {
        self.entries.iter().find(|x| x.stage == stage)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.iter().map(|x| x.e).max()
    }
}

/// `t(0) = 2`, `t(e + 1) = 2 + t(0) + .. + t(e)`.
pub fn dnr_t(e: usize) -> Result<u64> {
    let mut sum: u64 = 0;
    let mut t = 2u64;
    for _ in 0..e {
        sum = sum.checked_add(t).ok_or_else(overflow)?;
        t = sum.checked_add(2).ok_or_else(overflow)?;
    }
    Ok(t)
}

fn overflow() -> Error {
    Error::Budget {
        what: "set size t(e)",
        needed: u128::MAX,
        bound: u64::MAX as u128,
    }
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u8);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The `j`-th `k`-element subset of the naturals in colexicographic order,
/// ascending; `j = sum C(c_i, i)` over its elements `c_1 < .. < c_k`.
pub fn colex_unrank(k: u64, j: &BigUint) -> Vec<u64> {
    let mut rest = j.clone();
    let mut out = Vec::with_capacity(k as usize);
    for i in (1..=k).rev() {
        // largest c with C(c, i) <= rest
        let mut c = i - 1;
        let mut val = BigUint::ZERO;
        loop {
            let next = binomial(c + 1, i);
            if next > rest {
                break;
            }
            c += 1;
            val = next;
        }
        rest -= val;
        out.push(c);
    }
    out.reverse();
    out
}

/// Inverse of [`colex_unrank`] on an ascending set.
pub fn colex_rank(set: &[u64]) -> BigUint {
    set.iter()
        .enumerate()
        .map(|(i, &c)| binomial(c, i as u64 + 1))
        .sum()
}

/// `D_{e,j}`.
pub fn dnr_set(e: usize, j: u64) -> Result<Vec<u64>> {
    Ok(colex_unrank(dnr_t(e)?, &BigUint::from(j)))
}

/// Largest arity of the parity pieces a long equation is split into.
const PARITY_CHUNK: usize = 8;

/// Default bound on the variable ids [`dnr_build`] may use.
pub const DNR_MAX_VARS: u64 = 1 << 20;

/// For every stage `s <= s_max` at which index `e` halts with value `j`, the
/// equation `XOR of x_v over v in D_{e,j} = 1`. Long equations are chained
/// through auxiliary variables numbered after every `D` element; the
/// localized set is the non-auxiliary variables.
pub fn dnr_build(oracle: &MockOracle, s_max: usize, max_vars: u64) -> Result<Instance> {
    let mut sets = Vec::new();
    for s in 0..=s_max {
        if let Some(h) = oracle.halting_at(s) {
            sets.push(dnr_set(h.e, h.value)?);
        }
    }
    let top = sets.iter().flatten().max().map_or(0, |&v| v + 1);
    if top > max_vars {
        return Err(Error::Budget {
            what: "DNR variables",
            needed: top as u128,
            bound: max_vars as u128,
        });
    }
    let mut inst = Instance::new(top as usize);
    for d in &sets {
        let mut vars: Vec<u32> = d.iter().map(|&v| v as u32).collect();
        while vars.len() > PARITY_CHUNK {
            // z = XOR of the first chunk, then continue with z in its place
            let z = inst.fresh_var();
            let mut piece: Vec<u32> = vars.drain(..PARITY_CHUNK - 1).collect();
            piece.push(z);
            inst.constrain(&known::parity(piece.len(), false), &piece)?;
            vars.insert(0, z);
        }
        inst.constrain(&known::parity(vars.len(), true), &vars)?;
    }
    inst.set_localized((0..top as u32).collect())?;
    Ok(inst)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnrExtraction {
    /// `g(e)` for `e = 0 ..= max halting index`.
    pub g: Vec<BigUint>,
    /// Halting indices with `g(e) = Φ_e(e)`.
    pub failures: Vec<usize>,
}

impl DnrExtraction {
    pub fn verdict(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `g(e)` = colex index of the `t(e)` least elements of `h`.
pub fn dnr_extract(h: &[u64], oracle: &MockOracle) -> Result<DnrExtraction> {
    let mut h = h.to_vec();
    h.sort_unstable();
    h.dedup();
    let Some(e_max) = oracle.max_index() else {
        return Ok(DnrExtraction {
            g: Vec::new(),
            failures: Vec::new(),
        });
    };
    let mut g = Vec::with_capacity(e_max + 1);
    let mut failures = Vec::new();
    for e in 0..=e_max {
        let t = dnr_t(e)?;
        if (h.len() as u64) < t {
            return Err(Error::Invalid(format!(
                "homogeneous set has {} elements, index {e} needs {t}",
                h.len()
            )));
        }
        let ge = colex_rank(&h[..t as usize]);
        if let Some(v) = oracle.lookup(e, usize::MAX) {
            if u64::try_from(&ge).ok() == Some(v) {
                failures.push(e);
            }
        }
        g.push(ge);
    }
    Ok(DnrExtraction { g, failures })
}
