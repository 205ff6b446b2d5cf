use std::fmt::Write;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::relation::{dual_function, named_function, TruthTable};

/// Largest `n` for which `t_n` fits the function-arity cap.
pub const MAX_THRESHOLD_N: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Any,
    /// `x_i1 | .. | x_ik` for nonempty index sets, plus allowed constants.
    Disjunctions {
        zero: bool,
        one: bool,
    },
    Conjunctions {
        zero: bool,
        one: bool,
    },
    /// Projections, optionally negated projections, plus allowed constants.
    Literals {
        negated: bool,
        zero: bool,
        one: bool,
    },
}

/// Separation requirement: `None` degree means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Sep {
    value: bool,
    degree: Option<usize>,
}

/// Membership predicate of a clone, used where generation is too costly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Definition {
    r0: bool,
    r1: bool,
    monotone: bool,
    self_dual: bool,
    linear: bool,
    sep: Option<Sep>,
    shape: Shape,
}

const ANY: Definition = Definition {
    r0: false,
    r1: false,
    monotone: false,
    self_dual: false,
    linear: false,
    sep: None,
    shape: Shape::Any,
};

/// A row of the clone table: name, defining property and generating bases.
#[derive(Debug, Clone)]
pub struct CloneDescriptor {
    pub name: String,
    pub definition: String,
    /// Alternative bases; every entry generates the clone.
    pub bases: Vec<Vec<TruthTable>>,
    pub base_text: String,
    def: Definition,
    decidable: bool,
}

impl CloneDescriptor {
    /// Primary base.
    pub fn base(&self) -> &[TruthTable] {
        self.bases.first().map(Vec::as_slice).unwrap_or(&[])
    }

    /// False for family members whose bases need `t_n` beyond the cap.
    pub fn is_decidable(&self) -> bool {
        self.decidable
    }

    /// Membership by the defining property rather than by generation.
    pub fn satisfies_definition(&self, f: &TruthTable) -> bool {
        self.def.holds(f)
    }
}

fn table(arity: usize, f: impl Fn(&[bool]) -> bool) -> TruthTable {
    TruthTable::from_fn(arity, |k| {
        let args: Vec<bool> = (0..arity).map(|j| k >> j & 1 == 1).collect();
        f(&args)
    })
    .expect("arity within cap")
}

fn named(name: &str) -> TruthTable {
    named_function(name, None).expect("catalogue function")
}

fn threshold(n: usize) -> TruthTable {
    named_function("t_n", Some(n)).expect("n within cap")
}

fn is_monotone(f: &TruthTable) -> bool {
    let rows = f.rows();
    (0..rows).all(|a| (0..f.arity()).all(|j| a >> j & 1 == 1 || !f.eval(a) || f.eval(a | 1 << j)))
}

fn is_self_dual(f: &TruthTable) -> bool {
    dual_function(f) == *f
}

/// `f = c + sum of a subset of the arguments`.
fn is_linear(f: &TruthTable) -> bool {
    let c = f.eval(0);
    let coeffs: Vec<bool> = (0..f.arity()).map(|j| f.eval(1 << j) != c).collect();
    (0..f.rows()).all(|a| {
        let v = (0..f.arity()).fold(c, |acc, j| acc ^ (coeffs[j] && a >> j & 1 == 1));
        v == f.eval(a)
    })
}

/// Every set of at most `degree` rows in `f^-1(value)` shares a coordinate
/// equal to `value`.
fn is_separating(f: &TruthTable, sep: Sep) -> bool {
    let full = (1usize << f.arity()) - 1;
    // coordinates equal to `value` on each row
    let masks: Vec<usize> = (0..f.rows())
        .filter(|&a| f.eval(a) == sep.value)
        .map(|a| if sep.value { a } else { !a & full })
        .collect();
    let degree = sep.degree.unwrap_or(masks.len()).min(masks.len());
    fn search(masks: &[usize], start: usize, left: usize, acc: usize) -> bool {
        if acc == 0 {
            return false;
        }
        if left == 0 {
            return true;
        }
        (start..masks.len()).all(|i| search(masks, i + 1, left - 1, acc & masks[i]))
    }
    if masks.is_empty() {
        return true;
    }
    if sep.degree.is_none() {
        return masks.iter().fold(full, |acc, m| acc & m) != 0;
    }
    search(&masks, 0, degree, full)
}

fn shape_holds(shape: Shape, f: &TruthTable) -> bool {
    let n = f.arity();
    let full = if n == 0 { 0 } else { (1usize << n) - 1 };
    let constant = |v: bool| (0..f.rows()).all(|a| f.eval(a) == v);
    match shape {
        Shape::Any => true,
        Shape::Disjunctions { zero, one } => {
            (zero && constant(false))
                || (one && constant(true))
                || (1..=full).any(|s| (0..f.rows()).all(|a| f.eval(a) == (a & s != 0)))
        }
        Shape::Conjunctions { zero, one } => {
            (zero && constant(false))
                || (one && constant(true))
                || (1..=full).any(|s| (0..f.rows()).all(|a| f.eval(a) == (a & s == s)))
        }
        Shape::Literals { negated, zero, one } => {
            (zero && constant(false))
                || (one && constant(true))
                || (0..n).any(|j| {
                    (0..f.rows()).all(|a| f.eval(a) == (a >> j & 1 == 1))
                        || (negated && (0..f.rows()).all(|a| f.eval(a) == (a >> j & 1 == 0)))
                })
        }
    }
}

impl Definition {
    fn holds(&self, f: &TruthTable) -> bool {
        (!self.r0 || !f.eval(0))
            && (!self.r1 || f.eval(f.rows() - 1))
            && (!self.monotone || is_monotone(f))
            && (!self.self_dual || is_self_dual(f))
            && (!self.linear || is_linear(f))
            && self.sep.is_none_or(|s| is_separating(f, s))
            && shape_holds(self.shape, f)
    }
}

/// Semi-naive fixpoint of the `k`-ary functions generated by `base`.
///
/// Starts from the `k` projections and repeatedly composes each base
/// function with already generated functions until nothing new appears.
/// Returned sorted by truth table.
pub fn generate_clone_functions(base: &[TruthTable], k: usize) -> Result<Vec<TruthTable>> {
    if k > TruthTable::MAX_ARITY {
        return Err(Error::ArityCap {
            arity: k,
            cap: TruthTable::MAX_ARITY,
        });
    }
    let rows = 1usize << k;
    let mask: u32 = if rows == 16 {
        0xFFFF
    } else {
        (1u32 << rows) - 1
    };
    let full_size = 1usize << rows;
    let mut seen = vec![false; full_size];
    let mut all: Vec<u16> = Vec::new();
    let mut add = |t: u16, all: &mut Vec<u16>| {
        if !seen[t as usize] {
            seen[t as usize] = true;
            all.push(t);
        }
    };
    for i in 0..k {
        add(TruthTable::projection(k, i)?.bits(), &mut all);
    }
    // tables of nullary base functions are constants of arity k
    for f in base.iter().filter(|f| f.arity() == 0) {
        add(if f.eval(0) { mask as u16 } else { 0 }, &mut all);
    }
    let compose = |f: &TruthTable, args: &[u16]| -> u16 {
        let mut out = 0u32;
        for r in 0..f.rows() {
            if f.eval(r) {
                let mut term = mask;
                for (i, &g) in args.iter().enumerate() {
                    term &= if r >> i & 1 == 1 {
                        g as u32
                    } else {
                        !(g as u32) & mask
                    };
                }
                out |= term;
            }
        }
        out as u16
    };
    let mut done = 0usize;
    while done < all.len() && all.len() < full_size {
        let cur = all.len();
        for f in base.iter().filter(|f| f.arity() > 0) {
            let m = f.arity();
            // position p takes a new function, earlier positions old ones,
            // later positions anything generated before this round
            for p in 0..m {
                let ranges: Vec<(usize, usize)> = (0..m)
                    .map(|i| match i.cmp(&p) {
                        std::cmp::Ordering::Less => (0, done),
                        std::cmp::Ordering::Equal => (done, cur),
                        std::cmp::Ordering::Greater => (0, cur),
                    })
                    .collect();
                if ranges.iter().any(|(a, b)| a >= b) {
                    continue;
                }
                let mut idx: Vec<usize> = ranges.iter().map(|r| r.0).collect();
                let mut args = vec![0u16; m];
                'odometer: loop {
                    for (a, &i) in args.iter_mut().zip(&idx) {
                        *a = all[i];
                    }
                    let t = compose(f, &args);
                    add(t, &mut all);
                    let mut q = 0;
                    loop {
                        if q == m {
                            break 'odometer;
                        }
                        idx[q] += 1;
                        if idx[q] < ranges[q].1 {
                            break;
                        }
                        idx[q] = ranges[q].0;
                        q += 1;
                    }
                }
            }
        }
        done = cur;
    }
    let mut out: Vec<TruthTable> = all
        .into_iter()
        .map(|b| TruthTable::new(k, b).expect("masked"))
        .collect();
    out.sort();
    Ok(out)
}

/// Whether `f` belongs to the clone.
///
/// Up to arity 3 this is decided by generating the clone's functions of
/// that arity from its base. At arity 4 the defining property is checked
/// instead (the fixpoint over ternary bases is too large there); the two
/// agree wherever both are computed.
pub fn clone_contains(clone: &CloneDescriptor, f: &TruthTable) -> Result<bool> {
    if !clone.decidable {
        return Err(Error::Invalid(format!(
            "membership in {} is not decidable at the arity cap",
            clone.name
        )));
    }
    match f.arity() {
        0 => {
            let lifted = TruthTable::constant(1, f.eval(0))?;
            clone_contains(clone, &lifted)
        }
        k @ 1..=3 => {
            let funcs = generate_clone_functions(clone.base(), k)?;
            Ok(funcs.binary_search(f).is_ok())
        }
        _ => Ok(clone.def.holds(f)),
    }
}

struct Builder(Vec<CloneDescriptor>);

impl Builder {
    fn add(
        &mut self,
        name: &str,
        definition: &str,
        base_text: &str,
        bases: Vec<Vec<TruthTable>>,
        def: Definition,
    ) {
        self.0.push(CloneDescriptor {
            name: name.to_string(),
            definition: definition.to_string(),
            bases,
            base_text: base_text.to_string(),
            def,
            decidable: true,
        });
    }

    fn flagged(&mut self, name: &str, definition: &str, base_text: &str) {
        self.0.push(CloneDescriptor {
            name: name.to_string(),
            definition: definition.to_string(),
            bases: Vec::new(),
            base_text: base_text.to_string(),
            def: ANY,
            decidable: false,
        });
    }
}

fn build_atlas() -> Vec<CloneDescriptor> {
    let and = named("conj");
    let or = named("disj");
    let not = named("neg");
    let id = named("id");
    let c0 = named("const0");
    let c1 = named("const1");
    let xor2 = table(2, |a| a[0] ^ a[1]);
    let xnor2 = table(2, |a| a[0] == a[1]);
    let xor3 = named("aff");
    let xnor3 = table(3, |a| !(a[0] ^ a[1] ^ a[2]));
    let imp = table(2, |a| !a[0] || a[1]);
    let and_not = table(2, |a| a[0] && !a[1]);
    let x_or_y_and_not_z = table(3, |a| a[0] || (a[1] && !a[2]));
    let x_or_y_and_z = table(3, |a| a[0] || (a[1] && a[2]));
    let x_and_y_or_not_z = table(3, |a| a[0] && (a[1] || !a[2]));
    let x_and_y_or_z = table(3, |a| a[0] && (a[1] || a[2]));
    let r2_base = table(3, |a| a[0] && !(a[1] ^ a[2]));
    let d_base = table(3, |a| {
        (a[0] && !a[1]) || (a[0] && !a[2]) || (!a[1] && !a[2])
    });
    let d1_base = table(3, |a| (a[0] && a[1]) || (a[0] && !a[2]) || (a[1] && !a[2]));

    let r0 = Definition { r0: true, ..ANY };
    let r1 = Definition { r1: true, ..ANY };
    let r2 = Definition {
        r0: true,
        r1: true,
        ..ANY
    };
    let m = Definition {
        monotone: true,
        ..ANY
    };
    let sep = |value: bool, degree: Option<usize>, extra: Definition| Definition {
        sep: Some(Sep { value, degree }),
        ..extra
    };

    let mut b = Builder(Vec::new());
    b.add(
        "BF",
        "all Boolean functions",
        "{and, not}",
        vec![vec![and, not]],
        ANY,
    );
    b.add(
        "R0",
        "0-reproducing",
        "{and, xor}",
        vec![vec![and, xor2]],
        r0,
    );
    b.add(
        "R1",
        "1-reproducing",
        "{or, x xor y xor 1}",
        vec![vec![or, xnor2]],
        r1,
    );
    b.add(
        "R2",
        "R1 & R0",
        "{or, x and (y xor z xor 1)}",
        vec![vec![or, r2_base]],
        r2,
    );
    b.add(
        "M",
        "monotonic",
        "{and, or, 0, 1}",
        vec![vec![and, or, c0, c1]],
        m,
    );
    b.add(
        "M1",
        "M & R1",
        "{and, or, 1}",
        vec![vec![and, or, c1]],
        Definition { r1: true, ..m },
    );
    b.add(
        "M0",
        "M & R0",
        "{and, or, 0}",
        vec![vec![and, or, c0]],
        Definition { r0: true, ..m },
    );
    b.add(
        "M2",
        "M & R2",
        "{and, or}",
        vec![vec![and, or]],
        Definition {
            r0: true,
            r1: true,
            ..m
        },
    );

    for n in 2..=MAX_THRESHOLD_N {
        let t = threshold(n);
        let dt = dual_function(&t);
        let d = Some(n);
        b.add(
            &format!("S0^{n}"),
            &format!("0-separating of degree {n}"),
            &format!("{{imp, dual(t_{n})}}"),
            vec![vec![imp, dt]],
            sep(false, d, ANY),
        );
        b.add(
            &format!("S1^{n}"),
            &format!("1-separating of degree {n}"),
            &format!("{{x and not y, t_{n}}}"),
            vec![vec![and_not, t]],
            sep(true, d, ANY),
        );
        b.add(
            &format!("S02^{n}"),
            &format!("S0^{n} & R2"),
            &format!("{{x or (y and not z), dual(t_{n})}}"),
            vec![vec![x_or_y_and_not_z, dt]],
            sep(false, d, r2),
        );
        b.add(
            &format!("S01^{n}"),
            &format!("S0^{n} & M"),
            &format!("{{dual(t_{n}), 1}}"),
            vec![vec![dt, c1]],
            sep(false, d, m),
        );
        b.add(
            &format!("S00^{n}"),
            &format!("S0^{n} & R2 & M"),
            &format!("{{x or (y and z), dual(t_{n})}}"),
            vec![vec![x_or_y_and_z, dt]],
            sep(
                false,
                d,
                Definition {
                    r0: true,
                    r1: true,
                    ..m
                },
            ),
        );
        b.add(
            &format!("S12^{n}"),
            &format!("S1^{n} & R2"),
            &format!("{{x and (y or not z), t_{n}}}"),
            vec![vec![x_and_y_or_not_z, t]],
            sep(true, d, r2),
        );
        b.add(
            &format!("S11^{n}"),
            &format!("S1^{n} & M"),
            &format!("{{t_{n}, 0}}"),
            vec![vec![t, c0]],
            sep(true, d, m),
        );
        b.add(
            &format!("S10^{n}"),
            &format!("S1^{n} & R2 & M"),
            &format!("{{x and (y or z), t_{n}}}"),
            vec![vec![x_and_y_or_z, t]],
            sep(
                true,
                d,
                Definition {
                    r0: true,
                    r1: true,
                    ..m
                },
            ),
        );
    }
    for family in ["S0", "S1", "S02", "S01", "S00", "S12", "S11", "S10"] {
        b.flagged(
            &format!("{family}^n (n > {MAX_THRESHOLD_N})"),
            &format!("{family} family at degree n"),
            "needs t_n beyond the arity cap",
        );
    }
    b.add(
        "S0",
        "0-separating",
        "{imp}",
        vec![vec![imp]],
        sep(false, None, ANY),
    );
    b.add(
        "S1",
        "1-separating",
        "{x and not y}",
        vec![vec![and_not]],
        sep(true, None, ANY),
    );
    b.add(
        "S02",
        "S0 & R2",
        "{x or (y and not z)}",
        vec![vec![x_or_y_and_not_z]],
        sep(false, None, r2),
    );
    b.add(
        "S01",
        "S0 & M",
        "{x or (y and z), 1}",
        vec![vec![x_or_y_and_z, c1]],
        sep(false, None, m),
    );
    b.add(
        "S00",
        "S0 & R2 & M",
        "{x or (y and z)}",
        vec![vec![x_or_y_and_z]],
        sep(
            false,
            None,
            Definition {
                r0: true,
                r1: true,
                ..m
            },
        ),
    );
    b.add(
        "S12",
        "S1 & R2",
        "{x and (y or not z)}",
        vec![vec![x_and_y_or_not_z]],
        sep(true, None, r2),
    );
    b.add(
        "S11",
        "S1 & M",
        "{x and (y or z), 0}",
        vec![vec![x_and_y_or_z, c0]],
        sep(true, None, m),
    );
    b.add(
        "S10",
        "S1 & R2 & M",
        "{x and (y or z)}",
        vec![vec![x_and_y_or_z]],
        sep(
            true,
            None,
            Definition {
                r0: true,
                r1: true,
                ..m
            },
        ),
    );

    let d = Definition {
        self_dual: true,
        ..ANY
    };
    b.add(
        "D",
        "self-dual",
        "{(x and not y) or (x and not z) or (not y and not z)}",
        vec![vec![d_base]],
        d,
    );
    b.add(
        "D1",
        "D & R2",
        "{(x and y) or (x and not z) or (y and not z)}",
        vec![vec![d1_base]],
        Definition {
            r0: true,
            r1: true,
            ..d
        },
    );
    b.add(
        "D2",
        "D & M",
        "{maj}",
        vec![vec![named("maj")]],
        Definition {
            monotone: true,
            ..d
        },
    );

    let l = Definition {
        linear: true,
        ..ANY
    };
    b.add("L", "linear", "{xor, 1}", vec![vec![xor2, c1]], l);
    b.add(
        "L0",
        "L & R0",
        "{xor}",
        vec![vec![xor2]],
        Definition { r0: true, ..l },
    );
    b.add(
        "L1",
        "L & R1",
        "{iff}",
        vec![vec![xnor2]],
        Definition { r1: true, ..l },
    );
    b.add(
        "L2",
        "L & R2",
        "{x xor y xor z}",
        vec![vec![xor3]],
        Definition {
            r0: true,
            r1: true,
            ..l
        },
    );
    b.add(
        "L3",
        "L & D",
        "{x xor y xor z xor 1}",
        vec![vec![xnor3]],
        Definition {
            self_dual: true,
            ..l
        },
    );

    let shaped = |shape| Definition { shape, ..ANY };
    b.add(
        "V",
        "or-functions and constants",
        "{or, 0, 1}",
        vec![vec![or, c0, c1]],
        shaped(Shape::Disjunctions {
            zero: true,
            one: true,
        }),
    );
    b.add(
        "V0",
        "[{or}] u [{0}]",
        "{or, 0}",
        vec![vec![or, c0]],
        shaped(Shape::Disjunctions {
            zero: true,
            one: false,
        }),
    );
    b.add(
        "V1",
        "[{or}] u [{1}]",
        "{or, 1}",
        vec![vec![or, c1]],
        shaped(Shape::Disjunctions {
            zero: false,
            one: true,
        }),
    );
    b.add(
        "V2",
        "[{or}]",
        "{or}",
        vec![vec![or]],
        shaped(Shape::Disjunctions {
            zero: false,
            one: false,
        }),
    );
    b.add(
        "E",
        "and-functions and constants",
        "{and, 0, 1}",
        vec![vec![and, c0, c1]],
        shaped(Shape::Conjunctions {
            zero: true,
            one: true,
        }),
    );
    b.add(
        "E0",
        "[{and}] u [{0}]",
        "{and, 0}",
        vec![vec![and, c0]],
        shaped(Shape::Conjunctions {
            zero: true,
            one: false,
        }),
    );
    b.add(
        "E1",
        "[{and}] u [{1}]",
        "{and, 1}",
        vec![vec![and, c1]],
        shaped(Shape::Conjunctions {
            zero: false,
            one: true,
        }),
    );
    b.add(
        "E2",
        "[{and}]",
        "{and}",
        vec![vec![and]],
        shaped(Shape::Conjunctions {
            zero: false,
            one: false,
        }),
    );
    b.add(
        "N",
        "[{not}] u [{0}] u [{1}]",
        "{not, 1}, {not, 0}",
        vec![vec![not, c1], vec![not, c0]],
        shaped(Shape::Literals {
            negated: true,
            zero: true,
            one: true,
        }),
    );
    b.add(
        "N2",
        "[{not}]",
        "{not}",
        vec![vec![not]],
        shaped(Shape::Literals {
            negated: true,
            zero: false,
            one: false,
        }),
    );
    b.add(
        "I",
        "[{id}] u [{1}] u [{0}]",
        "{id, 0, 1}",
        vec![vec![id, c0, c1]],
        shaped(Shape::Literals {
            negated: false,
            zero: true,
            one: true,
        }),
    );
    b.add(
        "I0",
        "[{id}] u [{0}]",
        "{id, 0}",
        vec![vec![id, c0]],
        shaped(Shape::Literals {
            negated: false,
            zero: true,
            one: false,
        }),
    );
    b.add(
        "I1",
        "[{id}] u [{1}]",
        "{id, 1}",
        vec![vec![id, c1]],
        shaped(Shape::Literals {
            negated: false,
            zero: false,
            one: true,
        }),
    );
    b.add(
        "I2",
        "[{id}]",
        "{id}",
        vec![vec![id]],
        shaped(Shape::Literals {
            negated: false,
            zero: false,
            one: false,
        }),
    );
    b.0
}

/// The static clone catalogue.
pub fn atlas() -> &'static [CloneDescriptor] {
    static ATLAS: OnceLock<Vec<CloneDescriptor>> = OnceLock::new();
    ATLAS.get_or_init(build_atlas)
}

pub fn clone_by_name(name: &str) -> Option<&'static CloneDescriptor> {
    atlas().iter().find(|c| c.name == name)
}

/// Plain-text table with columns Class, Definition, Base(s).
pub fn atlas_table() -> String {
    let rows: Vec<(&str, &str, &str)> = atlas()
        .iter()
        .map(|c| (c.name.as_str(), c.definition.as_str(), c.base_text.as_str()))
        .collect();
    let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(5);
    let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(10);
    let mut out = String::new();
    writeln!(out, "{:w0$}  {:w1$}  Base(s)", "Class", "Definition").unwrap();
    for (name, def, base) in rows {
        writeln!(out, "{name:w0$}  {def:w1$}  {base}").unwrap();
    }
    out
}
