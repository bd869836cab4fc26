//! Structural validators for inter-clique digraphs.

use super::{brute_force_icd, build_icd, IcdError, InterCliqueDigraph, BRUTE_FORCE_CLIQUE_LIMIT};
use crate::cliques::maximal_cliques;
use crate::dag::Node;
use crate::graph::{VertexSet, WeightedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaminarityViolation {
    /// Two cliques below `max_clique` overlap.
    Overlap { max_clique: VertexSet, first: VertexSet, second: VertexSet },
    /// `node` is below `max_clique` but does not have exactly one parent there.
    NotOutTree { max_clique: VertexSet, node: VertexSet },
}

/// For each maximal clique M, the nodes contained in M must form a laminar
/// family inducing an out-tree rooted at M.
pub fn check_laminar_out_trees(icd: &InterCliqueDigraph) -> Result<(), LaminarityViolation> {
    let nodes = icd.nodes();
    for (m, max_clique) in icd.max_cliques().iter().enumerate() {
        let below: Vec<Node> = (0..nodes.len()).filter(|&x| nodes[x].src.binary_search(&m).is_ok()).collect();
        for (i, &a) in below.iter().enumerate() {
            for &b in &below[i + 1..] {
                if nodes[a].clique.overlaps(&nodes[b].clique) {
                    return Err(LaminarityViolation::Overlap {
                        max_clique: max_clique.clone(),
                        first: nodes[a].clique.clone(),
                        second: nodes[b].clique.clone(),
                    });
                }
            }
        }
        // Out-tree: the root has no parent inside, every other node exactly one.
        for &x in &below {
            let inside = icd.dag().parents(x).iter().filter(|&&p| nodes[p].src.binary_search(&m).is_ok()).count();
            let expected = usize::from(&nodes[x].clique != max_clique);
            if inside != expected {
                return Err(LaminarityViolation::NotOutTree {
                    max_clique: max_clique.clone(),
                    node: nodes[x].clique.clone(),
                });
            }
        }
    }
    Ok(())
}

/// For every node v the ancestors of v, together with v, must induce an
/// in-tree rooted at v. `Err` names a violating node.
pub fn check_anc_in_trees(icd: &InterCliqueDigraph) -> Result<(), Node> {
    icd.dag().in_tree_violation().map_or(Ok(()), Err)
}

/// A node with two or more children has as src-set the intersection of the
/// src-sets of any two of them. `Err` names a violating node.
pub fn check_two_enough(icd: &InterCliqueDigraph) -> Result<(), Node> {
    let nodes = icd.nodes();
    for x in 0..nodes.len() {
        let kids = icd.dag().children(x);
        for (i, &a) in kids.iter().enumerate() {
            for &b in &kids[i + 1..] {
                let meet: Vec<usize> =
                    nodes[a].src.iter().copied().filter(|m| nodes[b].src.binary_search(m).is_ok()).collect();
                if meet != nodes[x].src {
                    return Err(x);
                }
            }
        }
    }
    Ok(())
}

/// Every pair of nodes has at most one greatest common descendant.
pub fn check_unique_greatest_common_descendants(icd: &InterCliqueDigraph) -> Result<(), (Node, Node)> {
    for a in 0..icd.len() {
        for b in a + 1..icd.len() {
            if icd.dag().greatest_common_descendants(a, b).len() > 1 {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

/// Smallest segment length over all undirected cycles, `None` for a forest.
pub fn min_segment_length(icd: &InterCliqueDigraph) -> Option<usize> {
    let dag = icd.dag();
    dag.undirected_simple_cycles().iter().map(|c| dag.segment_length(c)).min()
}

/// Ptolemaicity through the inter-clique digraph: the graph is ptolemaic iff
/// the ICD's underlying graph is a forest. Uses the brute-force construction
/// when the maximal-clique count allows, and the (C4, gem)-free construction
/// otherwise.
pub fn is_ptolemaic_via_icd(g: &WeightedGraph) -> Result<bool, IcdError> {
    let icd = if maximal_cliques(g).len() <= BRUTE_FORCE_CLIQUE_LIMIT {
        brute_force_icd(g)?
    } else {
        build_icd(g)?
    };
    Ok(icd.dag().underlying_is_forest(&vec![true; icd.len()]))
}
