use std::fmt;

use crate::error::{Error, Result};
use crate::relation::BoolRelation;

/// `x_{v_1} + .. + x_{v_k} = parity` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XorEquation {
    vars: Vec<u32>,
    pub parity: bool,
}

impl XorEquation {
    /// Repeated variables cancel in pairs.
    pub fn new(mut vars: Vec<u32>, parity: bool) -> Self {
        vars.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(vars.len());
        for v in vars {
            if out.last() == Some(&v) {
                out.pop();
            } else {
                out.push(v);
            }
        }
        XorEquation { vars: out, parity }
    }

    pub fn from_mask(mask: u32, parity: bool) -> Self {
        XorEquation {
            vars: (0..32).filter(|j| mask >> j & 1 == 1).collect(),
            parity,
        }
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    /// `0 = 1`.
    pub fn is_degenerate(&self) -> bool {
        self.vars.is_empty() && self.parity
    }

    pub fn eval(&self, value: impl Fn(u32) -> bool) -> bool {
        self.vars.iter().fold(false, |acc, &v| acc ^ value(v)) == self.parity
    }

    pub fn remap(&self, map: &[u32]) -> Self {
        XorEquation::new(
            self.vars.iter().map(|&v| map[v as usize]).collect(),
            self.parity,
        )
    }
}

/// Coordinates print 1-based: `x1 + x2 = 1`.
impl fmt::Display for XorEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            f.write_str("0")?;
        }
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "x{}", v + 1)?;
        }
        write!(f, " = {}", self.parity as u8)
    }
}

/// Reduced row echelon basis of the span of `vectors`; each row's pivot is
/// its lowest set bit and no other row has that bit.
fn reduced_basis(vectors: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut rows: Vec<u32> = Vec::new();
    for mut v in vectors {
        for &r in &rows {
            if v >> r.trailing_zeros() & 1 == 1 {
                v ^= r;
            }
        }
        if v != 0 {
            let p = v.trailing_zeros();
            for r in rows.iter_mut() {
                if *r >> p & 1 == 1 {
                    *r ^= v;
                }
            }
            rows.push(v);
        }
    }
    rows.sort_by_key(|r| r.trailing_zeros());
    rows
}

/// Parity-check equations defining `r`: the orthogonal complement of the
/// span of `{t + p}` for `p` the lowest member, one equation per non-pivot
/// coordinate.
pub fn compile_xor_system(r: &BoolRelation) -> Result<Vec<XorEquation>> {
    let n = r.arity();
    let Some(p) = r.tuples().next() else {
        return Err(Error::Degenerate(format!(
            "relation `{}` is empty",
            r.label()
        )));
    };
    let basis = reduced_basis(r.tuples().map(|t| t ^ p));
    if r.len() != 1usize << basis.len() {
        return Err(Error::NotInClass {
            relation: r.label(),
            class: "affine",
        });
    }
    let pivots: u32 = basis.iter().fold(0, |acc, b| acc | 1 << b.trailing_zeros());
    let mut eqs = Vec::new();
    for f in (0..n as u32).filter(|f| pivots >> f & 1 == 0) {
        let mut a = 1u32 << f;
        for b in &basis {
            if b >> f & 1 == 1 {
                a |= 1 << b.trailing_zeros();
            }
        }
        let parity = (a & p).count_ones() % 2 == 1;
        eqs.push(XorEquation::from_mask(a, parity));
    }
    Ok(eqs)
}

/// Unguarded equation search: every parity equation satisfied by all of `r`,
/// kept only if their common solutions are exactly `r`.
pub fn xor_equation_cover(r: &BoolRelation) -> Option<Vec<XorEquation>> {
    let n = r.arity();
    let mut eqs = Vec::new();
    for a in 0..1u32 << n {
        for parity in [false, true] {
            if r.tuples()
                .all(|t| ((t & a).count_ones() % 2 == 1) == parity)
            {
                eqs.push(XorEquation::from_mask(a, parity));
            }
        }
    }
    let exact = (0..1u32 << n).all(|k| {
        let sat = eqs.iter().all(|e| e.eval(|v| k >> v & 1 == 1));
        sat == r.contains(k)
    });
    exact.then_some(eqs)
}
