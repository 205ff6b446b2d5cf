use crate::compile::compile_two_cnf;
use crate::error::Result;
use crate::instance::{Assignment, Instance, SolveResult};
use crate::solve::common::{compile_used, degenerate_check, instantiate};

#[inline]
fn node(var: u32, positive: bool) -> usize {
    2 * var as usize + (!positive) as usize
}

/// Implication graph in CSR form.
struct Graph {
    start: Vec<usize>,
    edges: Vec<u32>,
}

impl Graph {
    fn build(nodes: usize, arcs: &[(u32, u32)]) -> Self {
        let mut start = vec![0usize; nodes + 1];
        for &(a, _) in arcs {
            start[a as usize + 1] += 1;
        }
        for i in 0..nodes {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut edges = vec![0u32; arcs.len()];
        for &(a, b) in arcs {
            edges[fill[a as usize]] = b;
            fill[a as usize] += 1;
        }
        Graph { start, edges }
    }

    fn succ(&self, v: usize) -> &[u32] {
        &self.edges[self.start[v]..self.start[v + 1]]
    }
}

/// Iterative Tarjan. Components are numbered in completion order, which is
/// a reverse topological order of the condensation.
fn tarjan(g: &Graph, nodes: usize) -> Vec<u32> {
    const UNSEEN: u32 = u32::MAX;
    let mut index = vec![UNSEEN; nodes];
    let mut low = vec![0u32; nodes];
    let mut comp = vec![UNSEEN; nodes];
    let mut on_stack = vec![false; nodes];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, usize)> = Vec::new();
    let mut counter = 0u32;
    let mut comps = 0u32;
    for root in 0..nodes {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root as u32, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root as u32);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            let v = v as usize;
            let succ = g.succ(v);
            if *next < succ.len() {
                let w = succ[*next] as usize;
                *next += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    call.push((w as u32, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                let p = parent as usize;
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("scc stack") as usize;
                    on_stack[w] = false;
                    comp[w] = comps;
                    if w == v {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    comp
}

/// Implication-graph 2-SAT. A variable is true iff its positive literal's
/// component comes later in topological order than its negation's.
pub fn solve_two_sat(instance: &Instance) -> Result<SolveResult> {
    if let Some(unsat) = degenerate_check(instance) {
        return Ok(unsat);
    }
    let compiled = compile_used(instance, compile_two_cnf)?;
    let n = instance.num_vars();
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    for c in instance.constraints() {
        for clause in compiled[c.relation].as_ref().expect("compiled") {
            let Some(lits) = instantiate(clause, &c.vars) else {
                continue;
            };
            match lits.as_slice() {
                [a] => arcs.push((
                    node(a.var, !a.positive) as u32,
                    node(a.var, a.positive) as u32,
                )),
                [a, b] => {
                    arcs.push((
                        node(a.var, !a.positive) as u32,
                        node(b.var, b.positive) as u32,
                    ));
                    arcs.push((
                        node(b.var, !b.positive) as u32,
                        node(a.var, a.positive) as u32,
                    ));
                }
                _ => unreachable!("bijunctive clauses have one or two literals"),
            }
        }
    }
    let g = Graph::build(2 * n, &arcs);
    let comp = tarjan(&g, 2 * n);
    let mut values = Vec::with_capacity(n);
    for v in 0..n as u32 {
        let (p, q) = (comp[node(v, true)], comp[node(v, false)]);
        if p == q {
            return Ok(SolveResult::Unsat { failed: None });
        }
        values.push(p < q);
    }
    Ok(SolveResult::Sat(Assignment::total(values)))
}
