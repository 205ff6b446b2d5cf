use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance};
use crate::lab::tree::{bits_to_string, BinaryTree};
use crate::relation::{known, BoolRelation};

/// Largest tree depth [`tree_to_sat`] encodes; level `n` becomes an arity-`n`
/// relation.
pub const TREE_MAX_DEPTH: usize = BoolRelation::MAX_ARITY;

fn bits_to_tuple(s: &[bool]) -> u32 {
    s.iter()
        .enumerate()
        .fold(0, |acc, (j, &b)| acc | (b as u32) << j)
}

/// One constraint `T_n(x_0, .., x_{n-1})` per level `1 ..= depth`, where
/// `T_n` has exactly the members of length `n` as tuples. An empty level
/// yields an empty (degenerate) relation.
pub fn tree_to_sat(tree: &BinaryTree) -> Result<Instance> {
    let depth = tree.depth();
    if depth > TREE_MAX_DEPTH {
        return Err(Error::ArityCap {
            arity: depth,
            cap: TREE_MAX_DEPTH,
        });
    }
    let mut inst = Instance::new(depth);
    for n in 1..=depth {
        let r = BoolRelation::from_tuples(n, tree.level(n).into_iter().map(bits_to_tuple))?
            .with_name(format!("T{n}"));
        let vars: Vec<u32> = (0..n as u32).collect();
        inst.constrain(&r, &vars)?;
    }
    Ok(inst)
}

/// The string `ν(x_0) .. ν(x_{d-1})` for `d` the depth of `tree`, which
/// must be a member.
pub fn path_from_model(nu: &Assignment, tree: &BinaryTree) -> Result<Vec<bool>> {
    let sigma = (0..tree.depth() as u32)
        .map(|v| nu.get(v).ok_or(Error::PartialAssignment(v)))
        .collect::<Result<Vec<bool>>>()?;
    if !tree.contains(&sigma) {
        return Err(Error::Encoding(format!(
            "`{}` is not in the tree",
            bits_to_string(&sigma)
        )));
    }
    Ok(sigma)
}

/// A finite undirected graph on vertices `0..vertices`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(vertices: usize) -> Self {
        Graph {
            vertices,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<()> {
        if let Some(&w) = [u, v].iter().find(|&&w| w as usize >= self.vertices) {
            return Err(Error::VariableOutOfRange {
                var: w,
                universe: self.vertices,
            });
        }
        self.edges.push((u, v));
        Ok(())
    }
}

/// One `NEQ` constraint per edge, lower endpoint first. A self-loop becomes
/// `NEQ(v, v)`, which no assignment satisfies.
pub fn graph_to_neq(g: &Graph) -> Result<Instance> {
    let mut inst = Instance::new(g.vertices);
    let neq = inst.add_relation(known::neq());
    for &(u, v) in &g.edges {
        inst.add_constraint(neq, vec![u.min(v), u.max(v)])?;
    }
    Ok(inst)
}

/// Reads the edges back from an instance whose constraints are all `NEQ`.
pub fn neq_to_graph(instance: &Instance) -> Result<Graph> {
    let mut g = Graph::new(instance.num_vars());
    for c in instance.constraints() {
        let r = instance.relation(c.relation);
        if r != &known::neq() {
            return Err(Error::WrongClass(format!(
                "relation `{}` is not NEQ",
                r.label()
            )));
        }
        g.add_edge(c.vars[0], c.vars[1])?;
    }
    Ok(g)
}

/// `(P_0, P_1)`: the vertices a model sends to false and to true.
pub fn bipartition(nu: &Assignment, vertices: usize) -> Result<(Vec<u32>, Vec<u32>)> {
    let mut parts = (Vec::new(), Vec::new());
    for v in 0..vertices as u32 {
        match nu.get(v) {
            Some(false) => parts.0.push(v),
            Some(true) => parts.1.push(v),
            None => return Err(Error::PartialAssignment(v)),
        }
    }
    Ok(parts)
}
