use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// A Boolean relation of arity `1..=16` stored as a bitset over the `2^n`
/// tuple indices.
///
/// Tuple index `k` encodes `(a_1, .., a_n)` with `a_j` = bit `j - 1` of `k`
/// (little-endian). Textual tuples are written coordinate 1 leftmost, so
/// `"01"` is index 2. Equality and hashing ignore the name.
#[derive(Clone)]
pub struct BoolRelation {
    arity: u8,
    words: Vec<u64>,
    count: u32,
    name: Option<String>,
}

impl BoolRelation {
    pub const MAX_ARITY: usize = 16;

    pub fn empty(arity: usize) -> Result<Self> {
        if arity == 0 || arity > Self::MAX_ARITY {
            return Err(Error::ArityCap {
                arity,
                cap: Self::MAX_ARITY,
            });
        }
        let words = (1usize << arity).div_ceil(64);
        Ok(BoolRelation {
            arity: arity as u8,
            words: vec![0; words],
            count: 0,
            name: None,
        })
    }

    pub fn full(arity: usize) -> Result<Self> {
        let mut r = Self::empty(arity)?;
        for k in 0..1u32 << arity {
            r.insert_unchecked(k);
        }
        Ok(r)
    }

    pub fn from_tuples(arity: usize, tuples: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut r = Self::empty(arity)?;
        for t in tuples {
            r.insert(t)?;
        }
        Ok(r)
    }

    /// Builds a relation from textual tuples, coordinate 1 leftmost.
    pub fn from_bitstrings<S: AsRef<str>>(arity: usize, tuples: &[S]) -> Result<Self> {
        let mut r = Self::empty(arity)?;
        for t in tuples {
            r.insert(parse_tuple(t.as_ref(), arity)?)?;
        }
        Ok(r)
    }

    pub fn from_predicate(arity: usize, pred: impl Fn(u32) -> bool) -> Result<Self> {
        let mut r = Self::empty(arity)?;
        for k in 0..1u32 << arity {
            if pred(k) {
                r.insert_unchecked(k);
            }
        }
        Ok(r)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Name if present, otherwise the tuple list.
    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!("{self}"),
        }
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    /// Number of tuple indices, `2^arity`.
    pub fn universe(&self) -> u32 {
        1u32 << self.arity
    }

    pub fn len(&self) -> usize {
        self.count as usize
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Empty relations are allowed as data but flagged degenerate.
    pub fn is_degenerate(&self) -> bool {
        self.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.count == self.universe()
    }

    #[inline]
    pub fn contains(&self, tuple: u32) -> bool {
        let t = tuple as usize;
        t < (1usize << self.arity) && (self.words[t / 64] >> (t % 64)) & 1 == 1
    }

    pub fn insert(&mut self, tuple: u32) -> Result<bool> {
        if tuple >= self.universe() {
            return Err(Error::TupleOutOfRange {
                index: tuple as u64,
                arity: self.arity(),
            });
        }
        Ok(self.insert_unchecked(tuple))
    }

    fn insert_unchecked(&mut self, tuple: u32) -> bool {
        let t = tuple as usize;
        let bit = 1u64 << (t % 64);
        let fresh = self.words[t / 64] & bit == 0;
        if fresh {
            self.words[t / 64] |= bit;
            self.count += 1;
        }
        fresh
    }

    /// Member tuples in ascending index order.
    pub fn tuples(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(w as u32 * 64 + b)
            })
        })
    }

    /// Tuple indices not in the relation, ascending.
    pub fn non_tuples(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.universe()).filter(move |&k| !self.contains(k))
    }

    pub fn all_ones(&self) -> u32 {
        self.universe() - 1
    }

    /// `{ !r : r in R }`.
    pub fn complement_image(&self) -> Self {
        let full = self.all_ones();
        let mut out = Self::empty(self.arity()).expect("same arity");
        for t in self.tuples() {
            out.insert_unchecked(!t & full);
        }
        out.name = self.name.as_ref().map(|n| format!("~{n}"));
        out
    }

    /// Set complement `{0,1}^n \ R`.
    pub fn complement(&self) -> Self {
        let mut out = Self::empty(self.arity()).expect("same arity");
        for t in self.non_tuples() {
            out.insert_unchecked(t);
        }
        out
    }

    pub fn same_tuples(&self, other: &Self) -> bool {
        self.arity == other.arity && self.words == other.words
    }
}

impl PartialEq for BoolRelation {
    fn eq(&self, other: &Self) -> bool {
        self.same_tuples(other)
    }
}

impl Eq for BoolRelation {}

impl Hash for BoolRelation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.arity.hash(state);
        self.words.hash(state);
    }
}

impl fmt::Debug for BoolRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}{self}"),
            None => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for BoolRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.tuples().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&tuple_to_bitstring(t, self.arity()))?;
        }
        f.write_str("}")
    }
}

/// Tuple index to text, coordinate 1 leftmost.
pub fn tuple_to_bitstring(tuple: u32, arity: usize) -> String {
    (0..arity)
        .map(|j| if (tuple >> j) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Text (coordinate 1 leftmost) to tuple index.
pub fn parse_tuple(text: &str, arity: usize) -> Result<u32> {
    if text.len() != arity {
        return Err(Error::Invalid(format!(
            "tuple `{text}` has width {}, expected {arity}",
            text.len()
        )));
    }
    let mut k = 0u32;
    for (j, ch) in text.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => k |= 1 << j,
            other => {
                return Err(Error::Invalid(format!(
                    "bad tuple digit `{other}` in `{text}`"
                )))
            }
        }
    }
    Ok(k)
}

/// Frequently used relations.
pub mod known {
    use super::BoolRelation;

    fn build(name: &str, arity: usize, tuples: &[&str]) -> BoolRelation {
        BoolRelation::from_bitstrings(arity, tuples)
            .expect("well-formed constant relation")
            .with_name(name)
    }

    /// `[x]`
    pub fn unit_pos() -> BoolRelation {
        build("X", 1, &["1"])
    }

    /// `[!x]`
    pub fn unit_neg() -> BoolRelation {
        build("NOTX", 1, &["0"])
    }

    pub fn neq() -> BoolRelation {
        build("NEQ", 2, &["01", "10"])
    }

    pub fn eq() -> BoolRelation {
        build("EQ", 2, &["00", "11"])
    }

    /// `[x -> y]`
    pub fn implies() -> BoolRelation {
        build("IMPL", 2, &["00", "01", "11"])
    }

    pub fn or2() -> BoolRelation {
        build("OR", 2, &["01", "10", "11"])
    }

    pub fn nand2() -> BoolRelation {
        build("NAND", 2, &["00", "01", "10"])
    }

    /// `[x & !y]`
    pub fn and_not() -> BoolRelation {
        build("ANDNOT", 2, &["10"])
    }

    pub fn one_in_three() -> BoolRelation {
        build("ONE_IN_THREE", 3, &["001", "010", "100"])
    }

    /// `x_1 + .. + x_n = parity` over GF(2).
    pub fn parity(arity: usize, parity: bool) -> BoolRelation {
        BoolRelation::from_predicate(arity, |k| (k.count_ones() % 2 == 1) == parity)
            .expect("arity within cap")
            .with_name(format!("XOR{arity}_{}", parity as u8))
    }

    /// Looks up one of the relations above by its name; `XOR{n}_{p}` covers
    /// every parity relation.
    pub fn by_name(name: &str) -> Option<BoolRelation> {
        let r = match name {
            "X" => unit_pos(),
            "NOTX" => unit_neg(),
            "NEQ" => neq(),
            "EQ" => eq(),
            "IMPL" => implies(),
            "OR" => or2(),
            "NAND" => nand2(),
            "ANDNOT" => and_not(),
            "ONE_IN_THREE" => one_in_three(),
            _ => {
                let (digits, p) = name.strip_prefix("XOR")?.split_once('_')?;
                let n: usize = digits.parse().ok()?;
                if n == 0 || n > BoolRelation::MAX_ARITY || n.to_string() != digits {
                    return None;
                }
                match p {
                    "0" => parity(n, false),
                    "1" => parity(n, true),
                    _ => return None,
                }
            }
        };
        Some(r)
    }
}
