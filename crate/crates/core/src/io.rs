//! Text formats: constraint files, trees, graphs and halting tables.
//!
//! A constraint file is line based; `#` starts a comment.
//!
//! ```text
//! rel NEQ 2 : 01 10          # tuples written coordinate 1 leftmost
//! var 3
//! c NEQ 0 1
//! c NEQ 1 2
//! L 0 2
//! def NEQ x y exists z : x = z ; NAND z y ; OR z y
//! ```
//!
//! Relations named in the built-in catalogue (`NEQ`, `IMPL`, `XOR3_1`, ..)
//! may be used without a `rel` line. Without a `var` line the instance has
//! one more variable than the largest id mentioned.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance};
use crate::lab::{Atom, BinaryTree, Graph, MockOracle, OracleEntry, Representation, Term};
use crate::relation::{known, tuple_to_bitstring, BoolRelation};

/// A parsed constraint file: the instance and any `def` lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CspFile {
    pub instance: Instance,
    pub defs: Vec<Representation>,
}

struct Token<'a> {
    col: usize,
    text: &'a str,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line at whitespace, with `:`, `;` and `=` as tokens of their
/// own. Everything after `#` is dropped. Columns are 1-based.
fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    // byte offset and column of the token being read
    let mut start: Option<(usize, usize)> = None;
    for (col, (i, ch)) in line.char_indices().enumerate() {
        let special = ch == '#' || ch.is_whitespace() || matches!(ch, ':' | ';' | '=');
        if !special {
            start.get_or_insert((i, col + 1));
            continue;
        }
        if let Some((a, c)) = start.take() {
            out.push(Token {
                col: c,
                text: &line[a..i],
            });
        }
        if ch == '#' {
            return out;
        }
        if !ch.is_whitespace() {
            out.push(Token {
                col: col + 1,
                text: &line[i..i + 1],
            });
        }
    }
    if let Some((a, c)) = start {
        out.push(Token {
            col: c,
            text: &line[a..],
        });
    }
    out
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &Token, what: &str) -> Result<T> {
    tok.text.parse().map_err(|_| {
        parse_err(
            line,
            tok.col,
            format!("expected {what}, found `{}`", tok.text),
        )
    })
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | ';' | '=' | '#'))
}

struct Catalogue {
    inst: Instance,
    ids: HashMap<String, usize>,
}

impl Catalogue {
    fn resolve(&mut self, line: usize, tok: &Token) -> Result<usize> {
        if let Some(&i) = self.ids.get(tok.text) {
            return Ok(i);
        }
        let r = known::by_name(tok.text)
            .ok_or_else(|| parse_err(line, tok.col, format!("unknown relation `{}`", tok.text)))?;
        let i = self.inst.add_relation(r);
        self.ids.insert(tok.text.to_string(), i);
        Ok(i)
    }
}

pub fn parse_csp_file(text: &str) -> Result<CspFile> {
    let lines: Vec<(usize, Vec<Token>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokenize(l)))
        .filter(|(_, t)| !t.is_empty())
        .collect();

    // declarations first, so lines may come in any order
    let mut cat = Catalogue {
        inst: Instance::new(0),
        ids: HashMap::new(),
    };
    let mut declared_vars: Option<(usize, usize)> = None;
    for (ln, toks) in &lines {
        let ln = *ln;
        match toks[0].text {
            "rel" => {
                let [_, name, arity, colon, tuples @ ..] = toks.as_slice() else {
                    return Err(parse_err(
                        ln,
                        toks[0].col,
                        "expected `rel NAME ARITY : TUPLES`",
                    ));
                };
                if colon.text != ":" {
                    return Err(parse_err(
                        ln,
                        colon.col,
                        format!("expected `:`, found `{}`", colon.text),
                    ));
                }
                if !valid_name(name.text) || name.text.chars().all(|c| c.is_ascii_digit()) {
                    return Err(parse_err(
                        ln,
                        name.col,
                        format!("bad relation name `{}`", name.text),
                    ));
                }
                if cat.ids.contains_key(name.text) {
                    return Err(parse_err(
                        ln,
                        name.col,
                        format!("relation `{}` declared twice", name.text),
                    ));
                }
                let k: usize = parse_num(ln, arity, "an arity")?;
                let mut r =
                    BoolRelation::empty(k).map_err(|e| parse_err(ln, arity.col, e.to_string()))?;
                for t in tuples {
                    if t.text.len() != k {
                        return Err(parse_err(
                            ln,
                            t.col,
                            format!(
                                "tuple `{}` has width {}, expected {k}",
                                t.text,
                                t.text.len()
                            ),
                        ));
                    }
                    let idx = crate::relation::parse_tuple(t.text, k)
                        .map_err(|e| parse_err(ln, t.col, e.to_string()))?;
                    r.insert(idx)
                        .map_err(|e| parse_err(ln, t.col, e.to_string()))?;
                }
                let i = cat.inst.add_relation(r.with_name(name.text));
                cat.ids.insert(name.text.to_string(), i);
            }
            "var" => {
                let [_, n] = toks.as_slice() else {
                    return Err(parse_err(ln, toks[0].col, "expected `var N`"));
                };
                if declared_vars.is_some() {
                    return Err(parse_err(ln, toks[0].col, "second `var` line"));
                }
                declared_vars = Some((parse_num(ln, n, "a variable count")?, ln));
            }
            "c" | "L" | "def" => {}
            other => {
                return Err(parse_err(
                    ln,
                    toks[0].col,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }

    let mut constraints: Vec<(usize, usize, Vec<u32>)> = Vec::new();
    let mut localized: Option<Vec<u32>> = None;
    let mut defs = Vec::new();
    let mut max_var: Option<(u32, usize, usize)> = None;
    let mut note_var = |v: u32, ln: usize, col: usize| {
        if max_var.is_none_or(|(m, _, _)| v > m) {
            max_var = Some((v, ln, col));
        }
    };
    for (ln, toks) in &lines {
        let ln = *ln;
        match toks[0].text {
            "c" => {
                let Some(name) = toks.get(1) else {
                    return Err(parse_err(ln, toks[0].col, "expected `c NAME VARS`"));
                };
                let id = cat.resolve(ln, name)?;
                let arity = cat.inst.relation(id).arity();
                let vars_tok = &toks[2..];
                if vars_tok.len() != arity {
                    let col = vars_tok.get(arity).map_or(name.col, |t| t.col);
                    return Err(parse_err(
                        ln,
                        col,
                        format!(
                            "`{}` has arity {arity}, got {} variables",
                            name.text,
                            vars_tok.len()
                        ),
                    ));
                }
                let mut vars = Vec::with_capacity(arity);
                for t in vars_tok {
                    let v: u32 = parse_num(ln, t, "a variable id")?;
                    note_var(v, ln, t.col);
                    vars.push(v);
                }
                constraints.push((ln, id, vars));
            }
            "L" => {
                if localized.is_some() {
                    return Err(parse_err(ln, toks[0].col, "second `L` line"));
                }
                let mut l = Vec::new();
                for t in &toks[1..] {
                    let v: u32 = parse_num(ln, t, "a variable id")?;
                    note_var(v, ln, t.col);
                    l.push(v);
                }
                localized = Some(l);
            }
            "def" => defs.push(parse_def(ln, toks, &mut cat)?),
            _ => {}
        }
    }

    let num_vars = match (declared_vars, max_var) {
        (Some((n, _)), Some((m, ln, col))) if m as usize >= n => {
            return Err(parse_err(
                ln,
                col,
                format!("variable {m} outside `var {n}`"),
            ));
        }
        (Some((n, _)), _) => n,
        (None, Some((m, _, _))) => m as usize + 1,
        (None, None) => 0,
    };
    let mut inst = cat.inst;
    inst.ensure_vars(num_vars);
    for (_, id, vars) in constraints {
        inst.add_constraint(id, vars)?;
    }
    if let Some(l) = localized {
        inst.set_localized(l)?;
    }
    Ok(CspFile {
        instance: inst,
        defs,
    })
}

/// `def NAME p_1 .. p_n [exists z_1 .. z_k] : ATOM ; ATOM ..` where an atom
/// is `REL t_1 .. t_m` or `t = t'` and a term is a parameter, a quantified
/// variable, `0` or `1`.
fn parse_def(ln: usize, toks: &[Token], cat: &mut Catalogue) -> Result<Representation> {
    let Some(colon) = toks.iter().position(|t| t.text == ":") else {
        return Err(parse_err(
            ln,
            toks[0].col,
            "`def` needs `:` before its atoms",
        ));
    };
    let Some(name) = toks.get(1).filter(|_| colon > 1) else {
        return Err(parse_err(ln, toks[0].col, "`def` needs a relation name"));
    };
    let id = cat.resolve(ln, name)?;
    let target = cat.inst.relation(id).clone();
    let head = &toks[2..colon];
    let split = head
        .iter()
        .position(|t| t.text == "exists")
        .unwrap_or(head.len());
    let (params, exists) = (&head[..split], head.get(split + 1..).unwrap_or(&[]));
    if params.len() != target.arity() {
        return Err(parse_err(
            ln,
            name.col,
            format!(
                "`{}` has arity {}, got {} parameters",
                name.text,
                target.arity(),
                params.len()
            ),
        ));
    }
    let mut scope: HashMap<&str, Term> = HashMap::new();
    for (i, t) in params.iter().enumerate() {
        if scope.insert(t.text, Term::Param(i)).is_some() || matches!(t.text, "0" | "1") {
            return Err(parse_err(
                ln,
                t.col,
                format!("bad or repeated variable `{}`", t.text),
            ));
        }
    }
    for (i, t) in exists.iter().enumerate() {
        if scope.insert(t.text, Term::Exists(i)).is_some() || matches!(t.text, "0" | "1") {
            return Err(parse_err(
                ln,
                t.col,
                format!("bad or repeated variable `{}`", t.text),
            ));
        }
    }
    let term = |t: &Token| match t.text {
        "0" => Ok(Term::Const(false)),
        "1" => Ok(Term::Const(true)),
        s => scope
            .get(s)
            .copied()
            .ok_or_else(|| parse_err(ln, t.col, format!("unbound variable `{s}`"))),
    };
    let mut atoms = Vec::new();
    for part in toks[colon + 1..].split(|t| t.text == ";") {
        match part {
            [] => return Err(parse_err(ln, toks[colon].col, "empty atom")),
            [a, eq, b] if eq.text == "=" => atoms.push(Atom::Eq(term(a)?, term(b)?)),
            [rel, args @ ..] => {
                let id = cat.resolve(ln, rel)?;
                let r = cat.inst.relation(id).clone();
                if r.arity() != args.len() {
                    return Err(parse_err(
                        ln,
                        rel.col,
                        format!(
                            "`{}` has arity {}, got {} terms",
                            rel.text,
                            r.arity(),
                            args.len()
                        ),
                    ));
                }
                let ts = args.iter().map(term).collect::<Result<Vec<_>>>()?;
                atoms.push(Atom::Rel(r, ts));
            }
        }
    }
    Ok(Representation {
        target,
        exists: exists.len(),
        atoms,
    })
}

pub fn parse_instance_file(text: &str) -> Result<Instance> {
    Ok(parse_csp_file(text)?.instance)
}

/// Catalogue names for printing: a relation keeps its name unless it is
/// unprintable or already taken, otherwise it becomes `R{i}`.
fn print_names(relations: &[BoolRelation]) -> Vec<String> {
    let mut taken: HashSet<String> = HashSet::new();
    let mut names: Vec<Option<String>> = relations
        .iter()
        .map(|r| {
            r.name()
                .filter(|n| valid_name(n) && !n.chars().all(|c| c.is_ascii_digit()))
                .filter(|n| taken.insert(n.to_string()))
                .map(str::to_string)
        })
        .collect();
    let mut next = 0usize;
    for n in names.iter_mut().filter(|n| n.is_none()) {
        while taken.contains(&format!("R{next}")) {
            next += 1;
        }
        taken.insert(format!("R{next}"));
        *n = Some(format!("R{next}"));
    }
    names.into_iter().map(Option::unwrap).collect()
}

/// The instance the printed form of `instance` parses back to: every
/// relation named, the catalogue sorted by name and constraints remapped.
pub fn canonicalize(instance: &Instance) -> Instance {
    let names = print_names(instance.relations());
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    let mut out = Instance::new(instance.num_vars());
    let mut remap = vec![0; names.len()];
    for &i in &order {
        remap[i] = out.add_relation(instance.relation(i).clone().with_name(names[i].clone()));
    }
    for c in instance.constraints() {
        out.add_constraint(remap[c.relation], c.vars.clone())
            .expect("same variables and arities");
    }
    if let Some(l) = instance.localized() {
        out.set_localized(l.to_vec()).expect("same variables");
    }
    out
}

fn write_rel(out: &mut String, name: &str, r: &BoolRelation) {
    write!(out, "rel {name} {} :", r.arity()).unwrap();
    for t in r.tuples() {
        write!(out, " {}", tuple_to_bitstring(t, r.arity())).unwrap();
    }
    out.push('\n');
}

/// Canonical text: catalogue sorted by name, `var`, constraints in order,
/// then `L`.
pub fn print_instance(instance: &Instance) -> String {
    let canon = canonicalize(instance);
    let mut out = String::new();
    for r in canon.relations() {
        write_rel(&mut out, r.name().expect("named by canonicalize"), r);
    }
    writeln!(out, "var {}", canon.num_vars()).unwrap();
    for Constraint { relation, vars } in canon.constraints() {
        write!(out, "c {}", canon.relation(*relation).name().unwrap()).unwrap();
        for v in vars {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    if let Some(l) = canon.localized() {
        out.push('L');
        for v in l {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Prints the instance followed by its definitions. Relations only used
/// inside definitions are added to the catalogue.
pub fn print_csp_file(file: &CspFile) -> String {
    let mut inst = file.instance.clone();
    for d in &file.defs {
        inst.add_relation(d.target.clone());
        for a in &d.atoms {
            if let Atom::Rel(r, _) = a {
                inst.add_relation(r.clone());
            }
        }
    }
    let canon = canonicalize(&inst);
    let mut out = print_instance(&canon);
    let name_of = |r: &BoolRelation| {
        canon
            .relations()
            .iter()
            .find(|q| *q == r && (r.name().is_none() || q.name() == r.name()))
            .and_then(|q| q.name())
            .expect("catalogued above")
            .to_string()
    };
    let term = |t: &Term| match t {
        Term::Param(i) => format!("x{}", i + 1),
        Term::Exists(k) => format!("z{}", k + 1),
        Term::Const(b) => (*b as u8).to_string(),
    };
    for d in &file.defs {
        write!(out, "def {}", name_of(&d.target)).unwrap();
        for i in 0..d.target.arity() {
            write!(out, " x{}", i + 1).unwrap();
        }
        if d.exists > 0 {
            out.push_str(" exists");
            for k in 0..d.exists {
                write!(out, " z{}", k + 1).unwrap();
            }
        }
        out.push_str(" :");
        for (i, a) in d.atoms.iter().enumerate() {
            if i > 0 {
                out.push_str(" ;");
            }
            match a {
                Atom::Rel(r, ts) => {
                    write!(out, " {}", name_of(r)).unwrap();
                    for t in ts {
                        write!(out, " {}", term(t)).unwrap();
                    }
                }
                Atom::Eq(a, b) => write!(out, " {} = {}", term(a), term(b)).unwrap(),
            }
        }
        out.push('\n');
    }
    out
}

/// One binary string per line; the empty string is implied.
pub fn parse_tree_file(text: &str) -> Result<BinaryTree> {
    let mut strings = vec![Vec::new()];
    for (i, line) in text.lines().enumerate() {
        let toks = tokenize(line);
        match toks.as_slice() {
            [] => {}
            [t] => {
                let mut s = Vec::with_capacity(t.text.len());
                for (j, ch) in t.text.chars().enumerate() {
                    match ch {
                        '0' => s.push(false),
                        '1' => s.push(true),
                        other => {
                            return Err(parse_err(
                                i + 1,
                                t.col + j,
                                format!("`{other}` in binary string"),
                            ));
                        }
                    }
                }
                strings.push(s);
            }
            [_, extra, ..] => return Err(parse_err(i + 1, extra.col, "one string per line")),
        }
    }
    BinaryTree::from_strings(strings)
}

pub fn print_tree_file(tree: &BinaryTree) -> String {
    tree.to_string()
}

/// `n VERTICES` (optional) and `e U V` lines.
pub fn parse_graph_file(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(u32, u32, usize, usize)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokenize(line);
        match toks.as_slice() {
            [] => {}
            [d, n] if d.text == "n" => {
                if declared.is_some() {
                    return Err(parse_err(ln, d.col, "second `n` line"));
                }
                declared = Some(parse_num(ln, n, "a vertex count")?);
            }
            [d, u, v] if d.text == "e" => {
                edges.push((
                    parse_num(ln, u, "a vertex")?,
                    parse_num(ln, v, "a vertex")?,
                    ln,
                    u.col,
                ));
            }
            [d, ..] => return Err(parse_err(ln, d.col, "expected `n N` or `e U V`")),
        }
    }
    let top = edges
        .iter()
        .map(|e| e.0.max(e.1) as usize + 1)
        .max()
        .unwrap_or(0);
    let vertices = match declared {
        Some(n) => {
            if let Some(e) = edges.iter().find(|e| e.0.max(e.1) as usize >= n) {
                return Err(parse_err(
                    e.2,
                    e.3,
                    format!("edge endpoint outside `n {n}`"),
                ));
            }
            n
        }
        None => top,
    };
    let mut g = Graph::new(vertices);
    for (u, v, _, _) in edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub fn print_graph_file(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.vertices);
    for (u, v) in &g.edges {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// `halt E VALUE STAGE` lines: index `E` converges to `VALUE` at `STAGE`.
pub fn parse_oracle_file(text: &str) -> Result<MockOracle> {
    let mut entries = Vec::new();
    let mut by_e: BTreeMap<usize, usize> = BTreeMap::new();
    let mut by_stage: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokenize(line);
        match toks.as_slice() {
            [] => {}
            [d, e, value, stage] if d.text == "halt" => {
                let entry = OracleEntry {
                    e: parse_num(ln, e, "an index")?,
                    value: parse_num(ln, value, "a value")?,
                    stage: parse_num(ln, stage, "a stage")?,
                };
                if let Some(prev) = by_e.insert(entry.e, ln) {
                    return Err(parse_err(
                        ln,
                        e.col,
                        format!("index {} already halts on line {prev}", entry.e),
                    ));
                }
                if let Some(prev) = by_stage.insert(entry.stage, ln) {
                    return Err(parse_err(
                        ln,
                        stage.col,
                        format!("stage {} already used on line {prev}", entry.stage),
                    ));
                }
                entries.push(entry);
            }
            [d, ..] => return Err(parse_err(ln, d.col, "expected `halt E VALUE STAGE`")),
        }
    }
    MockOracle::new(entries)
}

/// Entries by stage.
pub fn print_oracle_file(o: &MockOracle) -> String {
    let mut out = String::new();
    for x in o.entries() {
        writeln!(out, "halt {} {} {}", x.e, x.value, x.stage).unwrap();
    }
    out
}

/// Renders a homogeneous set and its color on one line.
pub fn format_set(set: &[u32]) -> String {
    let items: Vec<String> = set.iter().map(u32::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_neq() {
        let inst = parse_instance_file("rel NEQ 2 : 01 10\nc NEQ 0 1").unwrap();
        assert_eq!(inst.constraints().len(), 1);
        assert_eq!(inst.num_vars(), 2);
        assert_eq!(inst.relation(0), &known::neq());
    }

    #[test]
    fn width_error_has_position() {
        let e = parse_instance_file("rel R 2 : 01 001\n").unwrap_err();
        match e {
            Error::Parse {
                line,
                column,
                message,
            } => {
                assert_eq!((line, column), (1, 14));
                assert!(message.contains("width"));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn localized_line() {
        let inst = parse_instance_file("var 3\nc IMPL 0 1\nL 0 2\n").unwrap();
        assert_eq!(inst.localized(), Some(&[0, 2][..]));
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            parse_instance_file("c FOO 0 1"),
            Err(Error::Parse {
                line: 1,
                column: 3,
                ..
            })
        ));
        assert!(parse_instance_file("c NEQ 0").is_err());
        assert!(parse_instance_file("c NEQ 0 1 2").is_err());
        assert!(parse_instance_file("var 2\nc NEQ 0 2").is_err());
        assert!(parse_instance_file("rel A 2 : 01\nrel A 2 : 10").is_err());
        assert!(parse_instance_file("rel A 0 :").is_err());
        assert!(parse_instance_file("rel A 2 : 0x").is_err());
        assert!(parse_instance_file("frob 1").is_err());
    }

    #[test]
    fn comments_and_order() {
        let text = "# header\nc MINE 1 0   # use before rel\n\nrel MINE 2 : 11 # both\n";
        let inst = parse_instance_file(text).unwrap();
        assert_eq!(inst.num_vars(), 2);
        assert_eq!(inst.relation(0).tuples().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn canonical_round_trip() {
        let mut inst = Instance::new(4);
        inst.constrain(&known::or2(), &[0, 1]).unwrap();
        inst.constrain(&BoolRelation::from_tuples(3, [0, 7]).unwrap(), &[1, 2, 3])
            .unwrap();
        inst.constrain(&known::and_not(), &[3, 0]).unwrap();
        inst.set_localized(vec![2, 0]).unwrap();
        let text = print_instance(&inst);
        assert_eq!(
            text,
            "rel ANDNOT 2 : 10\nrel OR 2 : 10 01 11\nrel R0 3 : 000 111\nvar 4\n\
             c OR 0 1\nc R0 1 2 3\nc ANDNOT 3 0\nL 0 2\n"
        );
        let back = parse_instance_file(&text).unwrap();
        assert_eq!(back, canonicalize(&inst));
        assert_eq!(print_instance(&back), text);
    }

    #[test]
    fn definitions() {
        let text = "def NEQ x y exists z : x = z ; NAND z y ; OR z y\n";
        let f = parse_csp_file(text).unwrap();
        assert_eq!(f.defs.len(), 1);
        f.defs[0].check().unwrap();
        let again = parse_csp_file(&print_csp_file(&f)).unwrap();
        assert_eq!(again.defs, f.defs);
        assert!(parse_csp_file("def NEQ x : OR x x").is_err());
        assert!(parse_csp_file("def NEQ x y : OR x w").is_err());
    }

    #[test]
    fn trees_graphs_oracles() {
        let t = parse_tree_file("0\n1\n\n01 # right\n").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(parse_tree_file(&print_tree_file(&t)).unwrap(), t);
        assert!(parse_tree_file("01\n").is_err());
        assert!(matches!(
            parse_tree_file("0\n02"),
            Err(Error::Parse {
                line: 2,
                column: 2,
                ..
            })
        ));

        let g = parse_graph_file("e 0 1\ne 1 2\n").unwrap();
        assert_eq!(g.vertices, 3);
        assert_eq!(parse_graph_file(&print_graph_file(&g)).unwrap(), g);
        assert!(parse_graph_file("n 2\ne 0 2").is_err());

        let o = parse_oracle_file("halt 0 2 3\nhalt 1 5 1\n").unwrap();
        assert_eq!(o.lookup(0, 3), Some(2));
        assert_eq!(parse_oracle_file(&print_oracle_file(&o)).unwrap(), o);
        assert!(parse_oracle_file("halt 0 2 3\nhalt 0 1 4").is_err());
        assert!(parse_oracle_file("halt 0 2 3\nhalt 1 1 3").is_err());
    }
}
