use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Renders a binary string as `0`/`1` characters.
pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Invalid(format!(
                "`{other}` in binary string `{text}`"
            ))),
        })
        .collect()
}

/// A finite downward-closed set of binary strings.
///
/// Strings compare lexicographically with `0 < 1`, so iteration within a
/// level goes leftmost first. The empty string is a member whenever the tree
/// is nonempty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BinaryTree {
    nodes: BTreeSet<Vec<bool>>,
    depth: usize,
}

impl BinaryTree {
    pub fn empty() -> Self {
        Self::default()
    }

    /// All strings of length at most `depth`.
    pub fn full(depth: usize) -> Self {
        Self::from_predicate(depth, |_| true)
    }

    /// Strings of length at most `depth` all of whose prefixes (including
    /// themselves) satisfy `keep`.
    pub fn from_predicate(depth: usize, keep: impl Fn(&[bool]) -> bool) -> Self {
        let mut t = Self::empty();
        if !keep(&[]) {
            return t;
        }
        t.nodes.insert(Vec::new());
        let mut frontier = vec![Vec::new()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for s in &frontier {
                for b in [false, true] {
                    let mut c: Vec<bool> = s.clone();
                    c.push(b);
                    if keep(&c) {
                        next.push(c);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            t.depth += 1;
            t.nodes.extend(next.iter().cloned());
            frontier = next;
        }
        t
    }

    /// Builds a tree from explicit strings, checking downward closure. The
    /// empty string is implied.
    pub fn from_strings<I, S>(strings: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[bool]>,
    {
        let mut t = Self::empty();
        for s in strings {
            t.nodes.insert(s.as_ref().to_vec());
        }
        if !t.nodes.is_empty() {
            t.nodes.insert(Vec::new());
        }
        for s in &t.nodes {
            if !s.is_empty() && !t.nodes.contains(&s[..s.len() - 1]) {
                return Err(Error::Invalid(format!(
                    "tree is not closed downward: `{}` lacks its parent",
                    bits_to_string(s)
                )));
            }
        }
        t.depth = t.nodes.iter().map(Vec::len).max().unwrap_or(0);
        Ok(t)
    }

    /// Length of the longest member.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, s: &[bool]) -> bool {
        self.nodes.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &[bool]> {
        self.nodes.iter().map(Vec::as_slice)
    }

    /// `T^n`, leftmost first.
    pub fn level(&self, n: usize) -> Vec<&[bool]> {
        self.iter().filter(|s| s.len() == n).collect()
    }

    /// Whether some member of length `len` extends `prefix`, i.e.
    /// `T^{[prefix]}_len` is nonempty.
    pub fn has_extension(&self, prefix: &[bool], len: usize) -> bool {
        if !self.contains(prefix) || prefix.len() > len {
            return false;
        }
        let mut stack = vec![prefix.to_vec()];
        while let Some(s) = stack.pop() {
            if s.len() == len {
                return true;
            }
            for b in [true, false] {
                let mut c = s.clone();
                c.push(b);
                if self.contains(&c) {
                    stack.push(c);
                }
            }
        }
        false
    }

    /// For every member `σ`, the length of the longest member extending it.
    pub fn extension_lengths(&self) -> BTreeMap<Vec<bool>, usize> {
        let mut by_len: Vec<&Vec<bool>> = self.nodes.iter().collect();
        by_len.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut out: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
        for s in by_len {
            let mut best = s.len();
            for b in [false, true] {
                let mut c = s.clone();
                c.push(b);
                if let Some(&m) = out.get(&c) {
                    best = best.max(m);
                }
            }
            out.insert(s.clone(), best);
        }
        out
    }

    /// The leftmost member of length `len`.
    pub fn leftmost(&self, len: usize) -> Option<Vec<bool>> {
        self.level(len).first().map(|s| s.to_vec())
    }
}

/// One string per line, shortest first; the empty string is omitted.
impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut all: Vec<&[bool]> = self.iter().filter(|s| !s.is_empty()).collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        for s in all {
            writeln!(f, "{}", bits_to_string(s))?;
        }
        Ok(())
    }
}
