//! Inter-clique digraphs: the Hasse diagram of the nonempty intersections of
//! maximal cliques, ordered by inclusion, with arcs from superset to subset.
//!
//! Nodes are identified by their cliques. Every node also carries its
//! src-set (indices of the maximal cliques containing it), the vertices whose
//! canonical clique it is, and the summed weight of those vertices.

mod brute;
mod build;
mod checks;
mod export;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use brute::{brute_force_icd, BRUTE_FORCE_CLIQUE_LIMIT};
pub use build::build_icd;
pub use checks::{
    check_anc_in_trees, check_laminar_out_trees, check_two_enough, check_unique_greatest_common_descendants,
    is_ptolemaic_via_icd, min_segment_length, LaminarityViolation,
};

use crate::cliques::CliqueLimitExceeded;
use crate::dag::{Dag, Node};
use crate::fvsp::FvspInstance;
use crate::graph::{Vertex, VertexSet, WeightedGraph};

/// Indices into the maximal-clique list, sorted.
pub type SrcSet = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IcdError {
    #[error(transparent)]
    Cliques(#[from] CliqueLimitExceeded),
    #[error("{count} nodes exceed the bound 2n^3 = {bound}; the graph is not (C4, gem)-free")]
    TooManyNodes { count: usize, bound: usize },
    #[error(
        "cliques {first} and {second} below maximal clique {max_clique} overlap; the graph is not (C4, gem)-free"
    )]
    NotLaminar { max_clique: VertexSet, first: VertexSet, second: VertexSet },
    #[error("{count} maximal cliques exceed the brute-force limit of {limit}")]
    OracleScale { count: usize, limit: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct IcdNode {
    pub clique: VertexSet,
    pub src: SrcSet,
    /// Vertices whose canonical clique is this node; possibly empty.
    pub phi_inv: VertexSet,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterCliqueDigraph {
    max_cliques: Vec<VertexSet>,
    nodes: Vec<IcdNode>,
    dag: Dag,
    phi: Vec<Node>,
    fixpoint_rounds: usize,
}

impl InterCliqueDigraph {
    /// Assembles an ICD from its node cliques with their src-sets and the
    /// cover arcs between them (given as pairs of positions in `cliques`).
    /// Nodes are reordered canonically by `(|src|, src)`.
    fn assemble(
        g: &WeightedGraph,
        max_cliques: Vec<VertexSet>,
        cliques: Vec<(VertexSet, SrcSet)>,
        arcs: Vec<(usize, usize)>,
        phi: Vec<usize>,
        fixpoint_rounds: usize,
    ) -> Self {
        let mut order: Vec<usize> = (0..cliques.len()).collect();
        order.sort_by(|&a, &b| {
            let (sa, sb) = (&cliques[a].1, &cliques[b].1);
            sa.len().cmp(&sb.len()).then_with(|| sa.cmp(sb))
        });
        let mut position = vec![0; cliques.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let phi: Vec<Node> = phi.into_iter().map(|x| position[x]).collect();
        let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); cliques.len()];
        for (v, &x) in phi.iter().enumerate() {
            members[x].push(v);
        }
        let mut slots: Vec<Option<(VertexSet, SrcSet)>> = cliques.into_iter().map(Some).collect();
        let nodes: Vec<IcdNode> = order
            .iter()
            .enumerate()
            .map(|(new, &old)| {
                let (clique, src) = slots[old].take().expect("each node taken once");
                let phi_inv: VertexSet = members[new].iter().copied().collect();
                let weight = if phi_inv.is_empty() { 0.0 } else { g.weight_of(phi_inv.iter()) };
                IcdNode { clique, src, phi_inv, weight }
            })
            .collect();
        let mut arcs: Vec<(Node, Node)> = arcs.into_iter().map(|(p, c)| (position[p], position[c])).collect();
        arcs.sort_unstable();
        let dag = Dag::new(nodes.len(), arcs).expect("cover arcs form a simple digraph");
        InterCliqueDigraph { max_cliques, nodes, dag, phi, fixpoint_rounds }
    }

    pub fn max_cliques(&self) -> &[VertexSet] {
        &self.max_cliques
    }

    pub fn nodes(&self) -> &[IcdNode] {
        &self.nodes
    }

    pub fn node(&self, x: Node) -> &IcdNode {
        &self.nodes[x]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn arcs(&self) -> &[(Node, Node)] {
        self.dag.arcs()
    }

    /// Node of the canonical clique of `v`.
    pub fn phi(&self, v: Vertex) -> Node {
        self.phi[v]
    }

    pub fn phi_inv(&self, x: Node) -> &VertexSet {
        &self.nodes[x].phi_inv
    }

    pub fn weight(&self, x: Node) -> f64 {
        self.nodes[x].weight
    }

    pub fn weights(&self) -> Vec<f64> {
        self.nodes.iter().map(|x| x.weight).collect()
    }

    /// Rounds of pairwise src-set intersection until the fixpoint (0 for the
    /// brute-force construction).
    pub fn fixpoint_rounds(&self) -> usize {
        self.fixpoint_rounds
    }

    /// Node whose clique is exactly `clique`.
    pub fn find(&self, clique: &VertexSet) -> Option<Node> {
        self.nodes.iter().position(|x| &x.clique == clique)
    }

    /// The ICD's digraph and node weights as an FVSP instance.
    pub fn to_fvsp_instance(&self) -> FvspInstance {
        FvspInstance::new(self.len(), self.arcs().to_vec(), self.weights()).expect("ICD weights are valid")
    }

    /// Longest directed path length, in arcs.
    pub fn height(&self) -> usize {
        let order = self.dag.topological_order().expect("ICD is acyclic");
        let mut h = vec![0usize; self.len()];
        for &v in order.iter().rev() {
            h[v] = self.dag.children(v).iter().map(|&c| h[c] + 1).max().unwrap_or(0);
        }
        h.into_iter().max().unwrap_or(0)
    }

    /// Compares two ICDs using cliques as node identities: same cliques,
    /// src-sets, arcs, canonical-clique map and weights. Returns the first
    /// difference found.
    pub fn same_labeled_structure(&self, other: &InterCliqueDigraph) -> Result<(), String> {
        if self.max_cliques != other.max_cliques {
            return Err("maximal clique lists differ".into());
        }
        let index = |icd: &InterCliqueDigraph| -> BTreeMap<VertexSet, (SrcSet, VertexSet, f64)> {
            icd.nodes
                .iter()
                .map(|x| (x.clique.clone(), (x.src.clone(), x.phi_inv.clone(), x.weight)))
                .collect()
        };
        let (a, b) = (index(self), index(other));
        for clique in a.keys().chain(b.keys()) {
            match (a.get(clique), b.get(clique)) {
                (Some(x), Some(y)) if x == y => {}
                (Some(_), Some(_)) => return Err(format!("node {clique} carries different labels")),
                (Some(_), None) => return Err(format!("node {clique} missing from the second ICD")),
                (None, _) => return Err(format!("node {clique} missing from the first ICD")),
            }
        }
        let labeled_arcs = |icd: &InterCliqueDigraph| -> Vec<(VertexSet, VertexSet)> {
            let mut arcs: Vec<_> = icd
                .arcs()
                .iter()
                .map(|&(p, c)| (icd.nodes[p].clique.clone(), icd.nodes[c].clique.clone()))
                .collect();
            arcs.sort();
            arcs
        };
        if labeled_arcs(self) != labeled_arcs(other) {
            return Err("arc sets differ".into());
        }
        let phi_cliques = |icd: &InterCliqueDigraph| -> Vec<VertexSet> {
            icd.phi.iter().map(|&x| icd.nodes[x].clique.clone()).collect()
        };
        if phi_cliques(self) != phi_cliques(other) {
            return Err("canonical clique maps differ".into());
        }
        Ok(())
    }
}

impl fmt::Display for InterCliqueDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
