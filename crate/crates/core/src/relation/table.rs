use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Boolean function of arity at most [`TruthTable::MAX_ARITY`], stored as
/// its value column.
///
/// Bit `k` of `bits` is `f(a_1, .., a_m)` where `a_j` is bit `j - 1` of `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TruthTable {
    arity: u8,
    bits: u16,
}

impl TruthTable {
    pub const MAX_ARITY: usize = 4;

    pub fn new(arity: usize, bits: u16) -> Result<Self> {
        if arity > Self::MAX_ARITY {
            return Err(Error::ArityCap {
                arity,
                cap: Self::MAX_ARITY,
            });
        }
        let table = TruthTable {
            arity: arity as u8,
            bits: 0,
        };
        if bits & !table.mask() != 0 {
            return Err(Error::Invalid(format!(
                "bits {bits:#x} exceed the {} rows of an arity-{arity} table",
                table.rows()
            )));
        }
        Ok(TruthTable { bits, ..table })
    }

    pub fn from_fn(arity: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        if arity > Self::MAX_ARITY {
            return Err(Error::ArityCap {
                arity,
                cap: Self::MAX_ARITY,
            });
        }
        let bits = (0..1usize << arity)
            .filter(|&k| f(k))
            .fold(0u16, |acc, k| acc | (1 << k));
        Ok(TruthTable {
            arity: arity as u8,
            bits,
        })
    }

    /// Parses a value column written row 0 first, e.g. `"00010111"` for maj.
    pub fn from_bitstring(text: &str) -> Result<Self> {
        let rows = text.len();
        if !rows.is_power_of_two() {
            return Err(Error::Invalid(format!(
                "truth table length {rows} is not a power of two"
            )));
        }
        let arity = rows.trailing_zeros() as usize;
        let mut bits = 0u16;
        for (k, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << k,
                other => return Err(Error::Invalid(format!("bad truth table digit `{other}`"))),
            }
        }
        Self::new(arity, bits)
    }

    /// The `i`-th projection (0-based) of the given arity.
    pub fn projection(arity: usize, i: usize) -> Result<Self> {
        if i >= arity {
            return Err(Error::Invalid(format!("projection {i} of arity {arity}")));
        }
        Self::from_fn(arity, |k| (k >> i) & 1 == 1)
    }

    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        Self::from_fn(arity, |_| value)
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn bits(&self) -> u16 {
        self.bits
    }

    pub fn rows(&self) -> usize {
        1 << self.arity
    }

    pub(crate) fn mask(&self) -> u16 {
        if self.arity == 4 {
            u16::MAX
        } else {
            (1u16 << (1u16 << self.arity)) - 1
        }
    }

    /// Value on the row whose `j`-th argument is bit `j` of `row`.
    #[inline]
    pub fn eval(&self, row: usize) -> bool {
        (self.bits >> row) & 1 == 1
    }

    pub fn eval_args(&self, args: &[bool]) -> Result<bool> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: args.len(),
            });
        }
        let row = args
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &a)| acc | ((a as usize) << j));
        Ok(self.eval(row))
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.rows())
            .map(|k| if self.eval(k) { '1' } else { '0' })
            .collect()
    }

    /// `g(a) = !f(!a)`.
    pub fn dual(&self) -> Self {
        let full = self.rows() - 1;
        let mut bits = 0u16;
        for k in 0..self.rows() {
            if !self.eval(!k & full) {
                bits |= 1 << k;
            }
        }
        TruthTable { bits, ..*self }
    }

    /// Reproduces `f(0..0) = 0`.
    pub fn preserves_zero(&self) -> bool {
        !self.eval(0)
    }

    pub fn preserves_one(&self) -> bool {
        self.eval(self.rows() - 1)
    }

    pub fn is_constant(&self) -> bool {
        self.bits == 0 || self.bits == self.mask()
    }

    /// Whether the value depends on argument `i`.
    pub fn depends_on(&self, i: usize) -> bool {
        (0..self.rows()).any(|k| k >> i & 1 == 0 && self.eval(k) != self.eval(k | 1 << i))
    }

    /// Substitutes the tables `args` (all of one arity `k`) into `self`,
    /// producing an arity-`k` table.
    pub fn compose(&self, args: &[TruthTable]) -> Result<Self> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: args.len(),
            });
        }
        let arity = match args.first() {
            Some(a) => a.arity(),
            None => {
                return Err(Error::Invalid(
                    "cannot compose a nullary table without an arity".into(),
                ))
            }
        };
        if let Some(bad) = args.iter().find(|a| a.arity() != arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: bad.arity(),
            });
        }
        Ok(self.compose_unchecked(args, arity))
    }

    pub(crate) fn compose_unchecked(&self, args: &[TruthTable], arity: usize) -> Self {
        let mut bits = 0u16;
        for k in 0..1usize << arity {
            let row = args
                .iter()
                .enumerate()
                .fold(0usize, |acc, (j, g)| acc | ((g.eval(k) as usize) << j));
            if self.eval(row) {
                bits |= 1 << k;
            }
        }
        TruthTable {
            arity: arity as u8,
            bits,
        }
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}:{})", self.arity, self.to_bitstring())
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// Looks up a catalogue function by name. `n` is only read for `t_n`.
///
/// Names: `conj`, `disj`, `maj`, `aff`, `neg`, `id`, `const0`, `const1` and
/// `t_n` (the `(n+1)`-ary threshold "at least `n` of `n+1`", `n` in 1..=3).
/// Constants are unary so they can act as polymorphisms directly.
pub fn named_function(name: &str, n: Option<usize>) -> Result<TruthTable> {
    let ones = |k: usize| k.count_ones() as usize;
    match name {
        "conj" => TruthTable::new(2, 0b1000),
        "disj" => TruthTable::new(2, 0b1110),
        "maj" => TruthTable::from_fn(3, |k| ones(k) >= 2),
        "aff" => TruthTable::from_fn(3, |k| ones(k) % 2 == 1),
        "neg" => TruthTable::new(1, 0b01),
        "id" => TruthTable::new(1, 0b10),
        "const0" => TruthTable::new(1, 0b00),
        "const1" => TruthTable::new(1, 0b11),
        "t_n" | "t" => {
            let n = n.ok_or_else(|| Error::Invalid("t_n needs n".into()))?;
            threshold(n)
        }
        other => {
            if let Some(n) = other
                .strip_prefix("t_")
                .and_then(|s| s.parse::<usize>().ok())
            {
                return threshold(n);
            }
            Err(Error::UnknownFunction(other.to_string()))
        }
    }
}

/// `t_n = OR_i AND_{j != i} x_j` over `n + 1` arguments.
fn threshold(n: usize) -> Result<TruthTable> {
    if n == 0 {
        return Err(Error::Invalid("t_n is defined for n >= 1".into()));
    }
    if n + 1 > TruthTable::MAX_ARITY {
        return Err(Error::ArityCap {
            arity: n + 1,
            cap: TruthTable::MAX_ARITY,
        });
    }
    TruthTable::from_fn(n + 1, |k| k.count_ones() as usize >= n)
}

pub fn dual_function(f: &TruthTable) -> TruthTable {
    f.dual()
}
