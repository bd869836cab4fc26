//! Feedback Vertex Set with Precedence Constraints: find a minimum-weight
//! downward-closed node set whose removal leaves an undirected forest.
//!
//! The solver rounds the LP relaxation at a threshold θ ∈ [α, β], tries
//! every combinatorially distinct θ, and finishes each unicyclic remainder
//! component exactly.

mod cleanup;
mod model;
mod params;
mod rounding;
mod solver;

use std::fmt::Write;
use std::str::FromStr;

use thiserror::Error;

pub use cleanup::cleanup_unicyclic;
pub use model::{build_lp, solve_lp, FvspLp, FvspLpSolution};
pub use params::{ParamError, RoundingParams, PARAM_SLACK};
pub use rounding::{deletion_measure, round_at, theta_candidates, Rounding};
pub use solver::{
    derandomize, evaluate_theta, solve_fvsp, verify_fvsp_solution, FvspOutcome, FvspSolution, FvspViolation,
    StageWeights,
};

use crate::dag::{Dag, DagError, Node};
use crate::graph::{parse_field, strip_comment, ParseError};
use crate::lp::LpError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error("expected {expected} weights, got {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("node {node} has invalid weight {weight}")]
    InvalidWeight { node: Node, weight: f64 },
}

/// Why a digraph is not a valid FVSP instance.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum InstanceViolation {
    #[error("directed cycle through node {0}")]
    Cycle(Node),
    #[error("ancestors of node {0} do not induce an in-tree rooted at it")]
    NotInTree(Node),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FvspError {
    #[error("invalid instance: {0}")]
    Instance(#[from] InstanceViolation),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("remainder component {nodes:?} has {cycles} independent cycles at theta = {theta}")]
    MultiCycle { nodes: Vec<Node>, cycles: usize, theta: f64 },
    #[error("solution fails verification: {0}")]
    Verification(#[from] FvspViolation),
}

/// Weighted digraph; `validate` checks the FVSP precondition.
#[derive(Clone, Debug, PartialEq)]
pub struct FvspInstance {
    dag: Dag,
    weights: Vec<f64>,
}

impl FvspInstance {
    pub fn new(n: usize, arcs: Vec<(Node, Node)>, weights: Vec<f64>) -> Result<Self, InstanceError> {
        if weights.len() != n {
            return Err(InstanceError::WeightCount { expected: n, found: weights.len() });
        }
        if let Some(node) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(InstanceError::InvalidWeight { node, weight: weights[node] });
        }
        Ok(FvspInstance { dag: Dag::new(n, arcs)?, weights })
    }

    pub fn n(&self) -> usize {
        self.dag.n()
    }

    pub fn m(&self) -> usize {
        self.dag.arcs().len()
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn arcs(&self) -> &[(Node, Node)] {
        self.dag.arcs()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_of(&self, mask: &[bool]) -> f64 {
        self.weights.iter().zip(mask).filter(|(_, &m)| m).map(|(w, _)| w).fold(0.0, |a, w| a + w)
    }

    /// Acyclic, and the ancestors of every node induce an in-tree rooted at it.
    pub fn validate(&self) -> Result<(), InstanceViolation> {
        self.dag.topological_order().map_err(InstanceViolation::Cycle)?;
        match self.dag.in_tree_violation() {
            Some(v) => Err(InstanceViolation::NotInTree(v)),
            None => Ok(()),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("d {} {}\n", self.n(), self.m());
        for (v, w) in self.weights.iter().enumerate() {
            writeln!(out, "n {v} {w}").unwrap();
        }
        for &(u, v) in self.arcs() {
            writeln!(out, "a {u} {v}").unwrap();
        }
        out
    }
}

impl FromStr for FvspInstance {
    type Err = ParseError;

    /// `d <n> <m>`, then `n <id> <weight>` and `a <u> <v>` lines; `#` comments.
    /// Nodes without an `n` line weigh 1.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut header: Option<(usize, usize)> = None;
        let mut weights = Vec::new();
        let mut arcs = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let Some(body) = strip_comment(raw) else { continue };
            let mut toks = body.split_whitespace();
            let tag = toks.next().unwrap_or_default();
            match (tag, header) {
                ("d", None) => {
                    let n: usize = parse_field(toks.next(), line, "node count")?;
                    let m: usize = parse_field(toks.next(), line, "arc count")?;
                    header = Some((n, m));
                    weights = vec![1.0; n];
                }
                ("d", Some(_)) => return Err(ParseError::new(line, "duplicate `d` line")),
                (_, None) => return Err(ParseError::new(line, "expected `d <n> <m>` header first")),
                ("n", Some((n, _))) => {
                    let v: Node = parse_field(toks.next(), line, "node id")?;
                    let w: f64 = parse_field(toks.next(), line, "weight")?;
                    if v >= n {
                        return Err(ParseError::new(line, format!("node {v} out of range")));
                    }
                    if !w.is_finite() || w < 0.0 {
                        return Err(ParseError::new(line, format!("invalid weight {w}")));
                    }
                    weights[v] = w;
                }
                ("a", Some(_)) => {
                    let u: Node = parse_field(toks.next(), line, "tail")?;
                    let v: Node = parse_field(toks.next(), line, "head")?;
                    arcs.push((u, v));
                }
                (other, Some(_)) => return Err(ParseError::new(line, format!("unknown line tag `{other}`"))),
            }
            if toks.next().is_some() {
                return Err(ParseError::new(line, "trailing tokens"));
            }
        }
        let (n, m) = header.ok_or_else(|| ParseError::new(last_line, "missing `d` header"))?;
        if arcs.len() != m {
            return Err(ParseError::new(last_line, format!("header declares {m} arcs, found {}", arcs.len())));
        }
        FvspInstance::new(n, arcs, weights).map_err(|e| ParseError::new(last_line, e.to_string()))
    }
}
