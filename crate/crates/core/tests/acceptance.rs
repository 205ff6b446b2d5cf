//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::VecDeque;
use std::panic;
use std::time::{Duration, Instant};

use dichotomy_core::clone::{
    classify_complexity, classify_ramsey, classify_sat, find_unit_gadget, lemma43_case,
    ComplexityClass, GadgetTarget, RamseyCondition, RamseyStrength, SatCondition, SatStrength,
    SchaeferCondition,
};
use dichotomy_core::compile::XorEquation;
use dichotomy_core::gen::{
    gen_random_instance, random_graph, random_oracle, random_tree, rng, GenKind,
};
use dichotomy_core::lab::{
    colex_unrank, compactness_path, dnr_build, dnr_extract, dnr_t, graph_to_neq, homog_horn,
    homog_search, path_from_model, tree_to_gadget_instance, tree_to_sat, verify_homogeneous,
    BinaryTree, CompactnessOutcome, ConstraintStream, DNR_MAX_VARS, HOMOG_SEARCH_BUDGET,
};
use dichotomy_core::relation::{is_polymorphism, known, named_function};
use dichotomy_core::solve::{solve_dispatch, solve_with_engine, solve_xor_equations, Engine};
use dichotomy_core::{Assignment, BoolRelation, Instance};
use num_bigint::BigUint;
use rand::Rng;

use common::{all_models, check_values, map_relations, mask_relation, planted_horn, to_mask};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

// ---- 1: closure characterization ---------------------------------------

#[derive(Clone, Copy)]
enum Syntax {
    Horn,
    Cohorn,
    TwoCnf,
    Xor,
}

/// Model masks of every clause (or equation) of the given shape over
/// `n` variables.
fn shapes(n: usize, kind: Syntax) -> Vec<u64> {
    let size = 1u32 << n;
    let mut out = Vec::new();
    if let Syntax::Xor = kind {
        for s in 1..size {
            for b in [0, 1] {
                out.push(
                    (0..size)
                        .filter(|&k| (k & s).count_ones() % 2 == b)
                        .fold(0, |m, k| m | 1 << k),
                );
            }
        }
        return out;
    }
    // every variable absent (0), positive (1) or negative (2)
    for code in 1..3u32.pow(n as u32) {
        let lits: Vec<u32> = (0..n).map(|j| code / 3u32.pow(j as u32) % 3).collect();
        let pos = lits.iter().filter(|&&l| l == 1).count();
        let neg = lits.iter().filter(|&&l| l == 2).count();
        let ok = match kind {
            Syntax::Horn => pos <= 1,
            Syntax::Cohorn => neg <= 1,
            Syntax::TwoCnf => pos + neg <= 2,
            Syntax::Xor => unreachable!(),
        };
        if ok {
            let models = (0..size).filter(|&k| {
                (0..n).any(|j| match lits[j] {
                    1 => k >> j & 1 == 1,
                    2 => k >> j & 1 == 0,
                    _ => false,
                })
            });
            out.push(models.fold(0, |m, k| m | 1 << k));
        }
    }
    out
}

/// Whether the conjunction of all implied shapes is exactly `r`.
fn expressible(r: u64, full: u64, shapes: &[u64]) -> bool {
    shapes
        .iter()
        .filter(|&&c| r & !c == 0)
        .fold(full, |m, &c| m & c)
        == r
}

fn closure_characterization() -> Outcome {
    let classes = [
        (Syntax::Horn, "conj"),
        (Syntax::Cohorn, "disj"),
        (Syntax::TwoCnf, "maj"),
        (Syntax::Xor, "aff"),
    ];
    let mut checked = 0u64;
    let mut arity4 = Duration::ZERO;
    for n in 1..=4 {
        let start = Instant::now();
        let full = (1u64 << (1 << n)) - 1;
        let tables: Vec<(Vec<u64>, _)> = classes
            .iter()
            .map(|&(k, f)| (shapes(n, k), named_function(f, None).unwrap()))
            .collect();
        for mask in 1..=full {
            let r = mask_relation(n, mask);
            for (sh, f) in &tables {
                let syntactic = expressible(mask, full, sh);
                let closed = is_polymorphism(f, &r).map_err(|e| e.to_string())?;
                ensure(syntactic == closed, || {
                    format!("{r} arity {n}: syntax {syntactic}, polymorphism {closed}")
                })?;
                checked += 1;
            }
        }
        if n == 4 {
            arity4 = start.elapsed();
        }
    }
    ensure(arity4 < Duration::from_secs(60), || {
        format!("arity 4 took {}", secs(arity4))
    })?;
    Ok(format!(
        "{checked} relation/class pairs agree, arity 4 in {}",
        secs(arity4)
    ))
}

// ---- 2: four-case lemma ------------------------------------------------

fn lemma_cases() -> Outcome {
    let mut count = [0usize; 4];
    for n in 1..=3 {
        for mask in 1..(1u64 << (1 << n)) {
            let r = mask_relation(n, mask);
            let c = lemma43_case(std::slice::from_ref(&r)).map_err(|e| format!("{r}: {e}"))?;
            count[c.letter() as usize - 'a' as usize] += 1;
        }
    }
    Ok(format!(
        "{} relations, cases a/b/c/d = {}/{}/{}/{}",
        count.iter().sum::<usize>(),
        count[0],
        count[1],
        count[2],
        count[3]
    ))
}

// ---- 3: classifier golden table ----------------------------------------

fn golden_table() -> Outcome {
    let start = Instant::now();
    let imp = classify_complexity(&[known::implies()]).map_err(|e| e.to_string())?;
    ensure(
        matches!(&imp, ComplexityClass::PolyTime { holds, .. } if holds.contains(&SchaeferCondition::Horn)),
        || format!("IMPL: {imp}"),
    )?;
    let units = classify_sat(&[known::unit_pos(), known::unit_neg()]).map_err(|e| e.to_string())?;
    ensure(
        units == SatStrength::ProvableRca0(SatCondition::ZeroDefaultOrUnit),
        || format!("units: {units}"),
    )?;
    let an = [known::and_not()];
    let sat = classify_sat(&an).map_err(|e| e.to_string())?;
    ensure(sat == SatStrength::EquivWkl, || {
        format!("ANDNOT sat: {sat}")
    })?;
    let ram = classify_ramsey(&an).map_err(|e| e.to_string())?;
    ensure(
        ram == RamseyStrength::ProvableRca0(RamseyCondition::Horn),
        || format!("ANDNOT ramsey: {ram}"),
    )?;
    let neq = classify_ramsey(&[known::neq()]).map_err(|e| e.to_string())?;
    ensure(neq == RamseyStrength::Rcolor2, || {
        format!("NEQ ramsey: {neq}")
    })?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || {
        format!("took {}", secs(took))
    })?;
    Ok(format!("5 entries match in {}", secs(took)))
}

// ---- 4: solvers against enumeration ------------------------------------

fn engine_instance(engine: Engine, n: usize, m: usize, seed: u64) -> Instance {
    let gen = |k: &str| gen_random_instance(&k.parse::<GenKind>().unwrap(), n, m, seed).unwrap();
    let at_most_one = BoolRelation::from_predicate(3, |k| k.count_ones() <= 1).unwrap();
    let downward = GenKind::Rel(vec![
        known::nand2(),
        known::unit_neg(),
        known::unit_pos(),
        at_most_one,
    ]);
    match engine {
        Engine::Horn => gen("horn"),
        Engine::Cohorn => map_relations(&gen("horn"), BoolRelation::complement_image),
        Engine::TwoSat => gen("2sat"),
        Engine::Xor => gen(&format!("xor{}", 1 + seed % 4)),
        Engine::Default0 => gen_random_instance(&downward, n, m, seed).unwrap(),
        Engine::Default1 => map_relations(
            &gen_random_instance(&downward, n, m, seed).unwrap(),
            BoolRelation::complement_image,
        ),
        _ => gen("rel:ONE_IN_THREE,NEQ,OR,XOR3_1,NAND,IMPL"),
    }
}

fn solver_oracle() -> Outcome {
    let engines = [
        Engine::Horn,
        Engine::Cohorn,
        Engine::TwoSat,
        Engine::Xor,
        Engine::Default0,
        Engine::Default1,
        Engine::Generic,
    ];
    let mut sat = 0;
    let mut total = 0;
    for engine in engines {
        let mut r = rng(engine as u64);
        for trial in 0..1000u64 {
            let n = r.gen_range(1..=15);
            let m = r.gen_range(0..=40);
            let inst = engine_instance(engine, n, m, trial);
            let models = all_models(&inst);
            let got =
                solve_with_engine(&inst, engine).map_err(|e| format!("{engine} #{trial}: {e}"))?;
            ensure(got.is_sat() == !models.is_empty(), || {
                format!(
                    "{engine} #{trial}: verdict {} vs {} models",
                    got.is_sat(),
                    models.len()
                )
            })?;
            if let Some(nu) = got.model() {
                let values = nu.to_bools().map_err(|e| e.to_string())?;
                ensure(check_values(&inst, &values), || {
                    format!("{engine} #{trial}: bad model")
                })?;
                if engine == Engine::Horn {
                    let a = to_mask(&values);
                    ensure(!models.iter().any(|&b| b != a && b & !a == 0), || {
                        format!("horn #{trial}: model not minimal")
                    })?;
                }
                sat += 1;
            }
            total += 1;
        }
    }
    Ok(format!(
        "{total} instances over 7 engines agree ({sat} sat), horn models minimal"
    ))
}

// ---- 5: performance ----------------------------------------------------

fn timed(inst: &Instance, expect: Engine, limit: Duration) -> Result<String, String> {
    let start = Instant::now();
    let (res, engine) = solve_dispatch(inst).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(engine == expect, || {
        format!("routed to {engine}, expected {expect}")
    })?;
    ensure(took < limit, || format!("{expect} took {}", secs(took)))?;
    Ok(format!(
        "{expect} {} {}",
        if res.is_sat() { "sat" } else { "unsat" },
        secs(took)
    ))
}

fn performance() -> Outcome {
    let mut parts = Vec::new();
    let two = gen_random_instance(&GenKind::TwoSat, 1_000_000, 1_000_000, 1).unwrap();
    parts.push(timed(&two, Engine::TwoSat, Duration::from_secs(2))?);
    drop(two);
    let horn = gen_random_instance(&GenKind::Horn, 1_000_000, 1_000_000, 1).unwrap();
    parts.push(timed(&horn, Engine::Horn, Duration::from_secs(2))?);
    drop(horn);
    let planted = planted_horn(1_000_000, 1_000_000, 2);
    parts.push(timed(&planted, Engine::Horn, Duration::from_secs(2))?);
    drop(planted);

    // dense system with a planted solution: each variable in each equation
    // with probability 1/2
    let mut r = rng(3);
    let n = 2000;
    let hidden: Vec<bool> = (0..n).map(|_| r.gen_bool(0.5)).collect();
    let eqs: Vec<XorEquation> = (0..n)
        .map(|_| {
            let vars: Vec<u32> = (0..n as u32).filter(|_| r.gen_bool(0.5)).collect();
            let parity = vars.iter().fold(false, |acc, &v| acc ^ hidden[v as usize]);
            XorEquation::new(vars, parity)
        })
        .collect();
    let start = Instant::now();
    let res = solve_xor_equations(n, &eqs).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || {
        format!("dense xor took {}", secs(took))
    })?;
    let nu = res.model().ok_or("planted dense xor reported unsat")?;
    let values = nu.to_bools().map_err(|e| e.to_string())?;
    ensure(eqs.iter().all(|e| e.eval(|v| values[v as usize])), || {
        "dense xor model wrong".into()
    })?;
    parts.push(format!("dense xor sat {}", secs(took)));
    let wide = gen_random_instance(&GenKind::Xor { arity: 16 }, 2000, 2000, 4).unwrap();
    parts.push(timed(&wide, Engine::Xor, Duration::from_secs(10))?);
    Ok(parts.join(", "))
}

// ---- 6: encodings ------------------------------------------------------

fn leftmost_by_count(t: &BinaryTree, d: usize) -> Option<Vec<bool>> {
    // lexicographic order with the first coordinate most significant
    (0..1u32 << d)
        .map(|k| {
            (0..d)
                .map(|i| k >> (d - 1 - i) & 1 == 1)
                .collect::<Vec<bool>>()
        })
        .find(|s| t.contains(s))
}

fn two_colorable(n: usize, edges: &[(u32, u32)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u as usize].push(v as usize);
        adj[v as usize].push(u as usize);
    }
    let mut color: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                match color[w] {
                    None => {
                        color[w] = Some(!color[u].unwrap());
                        queue.push_back(w);
                    }
                    Some(c) if c == color[u].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn nonempty_tree(max_depth: usize, seed: u64) -> BinaryTree {
    let mut s = seed;
    loop {
        let depth = 1 + (s as usize % max_depth);
        let t = random_tree(depth, 0.6 + 0.3 * ((s % 7) as f64 / 6.0), s);
        if t.depth() > 0 {
            return t;
        }
        s += 1000;
    }
}

fn encodings() -> Outcome {
    for i in 0..100u64 {
        let t = nonempty_tree(12, i);
        let d = t.depth();
        let inst = tree_to_sat(&t).map_err(|e| e.to_string())?;
        let (res, _) = solve_dispatch(&inst).map_err(|e| e.to_string())?;
        let nu = res.into_model().ok_or(format!("tree #{i}: unsat"))?;
        let path = path_from_model(&nu, &t).map_err(|e| format!("tree #{i}: {e}"))?;
        ensure(path.len() == d && t.contains(&path), || {
            format!("tree #{i}: path not in T")
        })?;
        let left = compactness_path(&ConstraintStream::from_instance(&inst), d)
            .map_err(|e| e.to_string())?;
        let expect = leftmost_by_count(&t, d).unwrap();
        ensure(left == CompactnessOutcome::Path(expect), || {
            format!("tree #{i}: compactness {left:?}")
        })?;
    }
    let mut bip = 0;
    for i in 0..200u64 {
        let n = 1 + (i as usize * 7) % 30;
        let g = random_graph(n, (i as usize * 13) % 41, i % 2 == 0, i);
        let inst = graph_to_neq(&g).map_err(|e| e.to_string())?;
        let sat = solve_dispatch(&inst).map_err(|e| e.to_string())?.0.is_sat();
        let expect = two_colorable(n, &g.edges);
        ensure(sat == expect, || {
            format!("graph #{i}: solver {sat}, BFS {expect}")
        })?;
        bip += expect as usize;
    }
    Ok(format!(
        "100 trees round-trip, 200 graphs agree ({bip} bipartite)"
    ))
}

// ---- 7: homogeneity ----------------------------------------------------

fn homogeneity() -> Outcome {
    let mut smallest = usize::MAX;
    for i in 0..200u64 {
        let inst = planted_horn(256, 1000, 100 + i);
        let stream = ConstraintStream::from_instance(&inst);
        let l: Vec<u32> = rand::seq::index::sample(&mut rng(i), 256, 64)
            .into_iter()
            .map(|v| v as u32)
            .collect();
        let cert = homog_horn(&stream, &l, stream.stages()).map_err(|e| e.to_string())?;
        ensure(cert.verified, || {
            format!("stream #{i}: certificate not verified")
        })?;
        ensure(
            cert.set.len() >= 32 && cert.set.iter().all(|v| l.contains(v)),
            || format!("stream #{i}: set of {} outside bounds", cert.set.len()),
        )?;
        // exhibit a model with the set pinned and check it here
        let mut pinned = stream.prefix(stream.stages());
        let unit = if cert.color {
            known::unit_pos()
        } else {
            known::unit_neg()
        };
        for &v in &cert.set {
            pinned.constrain(&unit, &[v]).unwrap();
        }
        let nu = solve_dispatch(&pinned)
            .map_err(|e| e.to_string())?
            .0
            .into_model();
        let values = nu
            .ok_or(format!("stream #{i}: pinned instance unsat"))?
            .to_bools()
            .unwrap();
        ensure(check_values(&pinned, &values), || {
            format!("stream #{i}: witness fails")
        })?;
        smallest = smallest.min(cert.set.len());
    }

    let mut r = rng(77);
    let mut nonempty = 0;
    for i in 0..150u64 {
        let n = r.gen_range(4..=14);
        let m = r.gen_range(1..=2 * n);
        let inst = gen_random_instance(
            &"rel:ONE_IN_THREE,NEQ,IMPL,OR,NAND".parse().unwrap(),
            n,
            m,
            i,
        )
        .unwrap();
        let k = r.gen_range(1..=n.min(12));
        let l: Vec<u32> = rand::seq::index::sample(&mut r, n, k)
            .into_iter()
            .map(|v| v as u32)
            .collect();
        let cert = homog_search(&inst, &l, HOMOG_SEARCH_BUDGET).map_err(|e| e.to_string())?;
        let models = all_models(&inst);
        let best = models
            .iter()
            .map(|&a| {
                let ones = l.iter().filter(|&&v| a >> v & 1 == 1).count();
                ones.max(l.len() - ones)
            })
            .max();
        match best {
            None => ensure(!cert.verified, || {
                format!("search #{i}: unsat but verified")
            })?,
            Some(b) => {
                ensure(cert.verified && cert.set.len() == b, || {
                    format!("search #{i}: size {} vs exhaustive {b}", cert.set.len())
                })?;
                let ok =
                    verify_homogeneous(&inst, &cert.set, cert.color).map_err(|e| e.to_string())?;
                let witness = models
                    .iter()
                    .any(|&a| cert.set.iter().all(|&v| (a >> v & 1 == 1) == cert.color));
                ensure(ok && witness, || {
                    format!("search #{i}: set does not verify")
                })?;
                nonempty += 1;
            }
        }
    }
    Ok(format!(
        "200 horn streams verify (smallest set {smallest}/64), 150 searches match exhaustive ({nonempty} sat)"
    ))
}

// ---- 8: diagonal function ----------------------------------------------

fn diagonal() -> Outcome {
    let mut t = vec![2u64];
    for e in 1..3 {
        t.push(2 + t[..e].iter().sum::<u64>());
    }
    let lib: Vec<u64> = (0..3).map(|e| dnr_t(e).unwrap()).collect();
    ensure(lib == t, || format!("t(0..2) = {lib:?}, expected {t:?}"))?;

    let mut checked_sets = 0;
    let mut refused = 0;
    for trial in 0..100u64 {
        let oracle = random_oracle(8, 8, 64, 30, trial).map_err(|e| e.to_string())?;
        let s_max = oracle.entries().iter().map(|x| x.stage).max().unwrap_or(0);
        let mut inst = dnr_build(&oracle, s_max, DNR_MAX_VARS).map_err(|e| e.to_string())?;
        let t_max = oracle.max_index().map_or(0, |e| dnr_t(e).unwrap() as usize);
        let base = inst.num_vars();
        // room for a homogeneous set of every needed size
        inst.ensure_vars(base + 2 * t_max + 2);
        let all: Vec<u32> = (0..inst.num_vars() as u32).collect();
        inst.set_localized(all.clone()).unwrap();
        let nu = solve_dispatch(&inst)
            .map_err(|e| e.to_string())?
            .0
            .into_model();
        let values = nu
            .ok_or(format!("trial {trial}: built instance unsat"))?
            .to_bools()
            .unwrap();
        for color in [false, true] {
            let h: Vec<u32> = all
                .iter()
                .copied()
                .filter(|&v| values[v as usize] == color)
                .collect();
            if h.len() < t_max
                || !verify_homogeneous(&inst, &h, color).map_err(|e| e.to_string())?
            {
                continue;
            }
            let h64: Vec<u64> = h.iter().map(|&v| v as u64).collect();
            let x = dnr_extract(&h64, &oracle).map_err(|e| e.to_string())?;
            ensure(x.verdict(), || {
                format!("trial {trial}: g hits the diagonal at {:?}", x.failures)
            })?;
            for entry in oracle.entries() {
                ensure(x.g[entry.e] != BigUint::from(entry.value), || {
                    format!("trial {trial}: e = {}", entry.e)
                })?;
            }
            checked_sets += 1;
        }
        // a set starting with D_{e, value} cannot be homogeneous
        for entry in oracle.entries() {
            let d = colex_unrank(dnr_t(entry.e).unwrap(), &BigUint::from(entry.value));
            let mut h: Vec<u32> = d.iter().map(|&v| v as u32).collect();
            h.extend(base as u32..inst.num_vars() as u32);
            for color in [false, true] {
                ensure(
                    !verify_homogeneous(&inst, &h, color).map_err(|e| e.to_string())?,
                    || format!("trial {trial}: diagonal set for e = {} verified", entry.e),
                )?;
                refused += 1;
            }
        }
    }
    ensure(checked_sets >= 100, || {
        format!("only {checked_sets} homogeneous sets found")
    })?;
    Ok(format!(
        "t(0..2) = {t:?}, {checked_sets} homogeneous sets avoid the diagonal, {refused} diagonal sets refused"
    ))
}

// ---- 9: gadget pipeline ------------------------------------------------

fn gadget_pipeline() -> Outcome {
    let s = [known::and_not()];
    let pos = find_unit_gadget(&s, GadgetTarget::Pos).map_err(|e| e.to_string())?;
    let neg = find_unit_gadget(&s, GadgetTarget::Neg).map_err(|e| e.to_string())?;
    let mut pinned = 0;
    for i in 0..50u64 {
        let t = nonempty_tree(10, 500 + i);
        let d = t.depth();
        let g = tree_to_gadget_instance(&t, &pos, &neg, d).map_err(|e| e.to_string())?;
        let nu: Assignment = solve_dispatch(&g.instance)
            .map_err(|e| e.to_string())?
            .0
            .into_model()
            .ok_or(format!("tree #{i}: gadget instance unsat"))?;
        let path = g.extract(&nu).map_err(|e| format!("tree #{i}: {e}"))?;
        ensure(path.len() == d && t.contains(&path), || {
            format!("tree #{i}: extracted path not in T")
        })?;
        pinned += g.pins.len();
    }
    Ok(format!("50 trees give members of T ({pinned} pins)"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("closure characterization", closure_characterization),
        ("four-case lemma", lemma_cases),
        ("classifier golden table", golden_table),
        ("solver oracle equivalence", solver_oracle),
        ("performance targets", performance),
        ("encoding round trips", encodings),
        ("homogeneity", homogeneity),
        ("diagonal function", diagonal),
        ("gadget pipeline", gadget_pipeline),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = secs(start.elapsed());
        match outcome {
            Ok(detail) => println!("acceptance {}: PASS {name} [{took}] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("acceptance {}: FAIL {name} [{took}] {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
}
