//! Exponential-time exact solvers, used as ground truth at small sizes.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::dag::{members, Node};
use crate::fvsp::FvspInstance;
use crate::graph::{Vertex, VertexSet, WeightedGraph};
use crate::obstruction::{all_c4_and_gems, is_ptolemaic};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_nodes: usize,
    pub time_cap: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 14, max_nodes: 18, time_cap: None }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("instance has {size} elements, over the oracle budget of {limit}")]
    Budget { size: usize, limit: usize },
    #[error("oracle exceeded its time cap of {0:?}")]
    TimeCap(Duration),
}

/// Minimum weight and one optimal set.
#[derive(Clone, Debug, PartialEq)]
pub struct Exact<T> {
    pub weight: f64,
    pub set: T,
}

struct Clock {
    start: Option<Instant>,
    cap: Option<Duration>,
}

impl Clock {
    fn new(cap: Option<Duration>) -> Self {
        Clock { start: cap.map(|_| Instant::now()), cap }
    }

    fn check(&self) -> Result<(), OracleError> {
        match (self.start, self.cap) {
            (Some(s), Some(cap)) if s.elapsed() > cap => Err(OracleError::TimeCap(cap)),
            _ => Ok(()),
        }
    }
}

fn bits_to_set(bits: u32) -> VertexSet {
    (0..32).filter(|&v| bits >> v & 1 == 1).collect()
}

/// All subsets of `0..n` ordered by weight, then lexicographically.
fn subsets_by_weight(weights: &[f64]) -> Vec<(f64, u32)> {
    let n = weights.len();
    let mut all: Vec<(f64, u32)> = (0..1u32 << n)
        .map(|s| ((0..n).filter(|&v| s >> v & 1 == 1).map(|v| weights[v]).fold(0.0, |a, w| a + w), s))
        .collect();
    let lex_key = |s: u32| -> Vec<usize> { (0..n).filter(|&v| s >> v & 1 == 1).collect() };
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| lex_key(a.1).cmp(&lex_key(b.1))));
    all
}

fn check_vertices(g: &WeightedGraph, budget: &OracleBudget) -> Result<(), OracleError> {
    let limit = budget.max_vertices.min(24);
    if g.n() > limit {
        return Err(OracleError::Budget { size: g.n(), limit });
    }
    Ok(())
}

/// Minimum-weight `S` with `G ∖ S` ptolemaic.
pub fn exact_ptolemaic_deletion(g: &WeightedGraph, budget: &OracleBudget) -> Result<Exact<VertexSet>, OracleError> {
    check_vertices(g, budget)?;
    if is_ptolemaic(g).is_ok() {
        return Ok(Exact { weight: 0.0, set: VertexSet::new() });
    }
    let clock = Clock::new(budget.time_cap);
    for (i, (weight, bits)) in subsets_by_weight(g.weights()).into_iter().enumerate() {
        if i % 256 == 0 {
            clock.check()?;
        }
        let set = bits_to_set(bits);
        if is_ptolemaic(&g.remove_vertices(&set).0).is_ok() {
            return Ok(Exact { weight, set });
        }
    }
    unreachable!("deleting every vertex leaves the empty graph")
}

/// Minimum-weight vertex set meeting every induced C4 and gem.
pub fn exact_c4gem_hitting(g: &WeightedGraph, budget: &OracleBudget) -> Result<Exact<VertexSet>, OracleError> {
    check_vertices(g, budget)?;
    let targets: Vec<u32> = all_c4_and_gems(g)
        .iter()
        .map(|a| a.iter().fold(0u32, |m, v| m | 1 << v))
        .collect();
    if targets.is_empty() {
        return Ok(Exact { weight: 0.0, set: VertexSet::new() });
    }
    let clock = Clock::new(budget.time_cap);
    for (i, (weight, bits)) in subsets_by_weight(g.weights()).into_iter().enumerate() {
        if i % 4096 == 0 {
            clock.check()?;
        }
        if targets.iter().all(|&t| t & bits != 0) {
            return Ok(Exact { weight, set: bits_to_set(bits) });
        }
    }
    unreachable!("the full vertex set hits everything")
}

/// Minimum-weight downward-closed node set whose removal leaves an
/// undirected forest. Enumerates downward-closed sets by deciding nodes
/// children-first, pruning branches that cannot beat the incumbent; the
/// first optimum found is returned.
pub fn exact_fvsp(inst: &FvspInstance, budget: &OracleBudget) -> Result<Exact<Vec<Node>>, OracleError> {
    if inst.n() > budget.max_nodes {
        return Err(OracleError::Budget { size: inst.n(), limit: budget.max_nodes });
    }
    let mut order = inst.dag().topological_order().expect("FVSP instances are acyclic");
    order.reverse();
    let mut search = FvspSearch {
        inst,
        order,
        chosen: vec![false; inst.n()],
        best: None,
        clock: Clock::new(budget.time_cap),
        visited: 0,
    };
    search.run(0, 0.0)?;
    let (weight, set) = search.best.expect("deleting everything is feasible");
    Ok(Exact { weight, set })
}

struct FvspSearch<'a> {
    inst: &'a FvspInstance,
    order: Vec<Node>,
    chosen: Vec<bool>,
    best: Option<(f64, Vec<Node>)>,
    clock: Clock,
    visited: usize,
}

impl FvspSearch<'_> {
    fn run(&mut self, depth: usize, weight: f64) -> Result<(), OracleError> {
        self.visited += 1;
        if self.visited.is_multiple_of(1024) {
            self.clock.check()?;
        }
        if let Some((bw, _)) = &self.best {
            if weight >= *bw {
                return Ok(());
            }
        }
        if depth == self.order.len() {
            let remaining: Vec<bool> = self.chosen.iter().map(|c| !c).collect();
            if self.inst.dag().underlying_is_forest(&remaining) {
                self.best = Some((weight, members(&self.chosen)));
            }
            return Ok(());
        }
        let v = self.order[depth];
        self.run(depth + 1, weight)?;
        if self.inst.dag().children(v).iter().all(|&c| self.chosen[c]) {
            self.chosen[v] = true;
            self.run(depth + 1, weight + self.inst.weights()[v])?;
            self.chosen[v] = false;
        }
        Ok(())
    }
}

/// Drops vertices from a ptolemaic deletion set while it stays one, heaviest
/// first (ties by id). The result is inclusion-minimal.
pub fn minimalize_deletion_set(g: &WeightedGraph, set: &VertexSet) -> VertexSet {
    let mut order: Vec<Vertex> = set.iter().collect();
    order.sort_by(|&a, &b| g.weight(b).total_cmp(&g.weight(a)).then(a.cmp(&b)));
    let mut current = set.clone();
    for v in order {
        let trial = current.difference(&VertexSet::from([v]));
        if is_ptolemaic(&g.remove_vertices(&trial).0).is_ok() {
            current = trial;
        }
    }
    current
}
