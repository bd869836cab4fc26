use std::collections::BTreeSet;

use super::{IcdError, InterCliqueDigraph};
use crate::cliques::maximal_cliques;
use crate::graph::{VertexSet, WeightedGraph};

/// Largest maximal-clique count [`brute_force_icd`] accepts.
pub const BRUTE_FORCE_CLIQUE_LIMIT: usize = 20;

/// Inter-clique digraph straight from the definition: every nonempty
/// intersection of a subfamily of maximal cliques is a node, and arcs are
/// the cover relation of clique inclusion. Works for any graph whose
/// maximal-clique count is within [`BRUTE_FORCE_CLIQUE_LIMIT`].
pub fn brute_force_icd(g: &WeightedGraph) -> Result<InterCliqueDigraph, IcdError> {
    let max_cliques = maximal_cliques(g);
    if max_cliques.len() > BRUTE_FORCE_CLIQUE_LIMIT {
        return Err(IcdError::OracleScale { count: max_cliques.len(), limit: BRUTE_FORCE_CLIQUE_LIMIT });
    }
    let mut found = BTreeSet::new();
    for (i, m) in max_cliques.iter().enumerate() {
        collect_intersections(&max_cliques, i + 1, m.clone(), &mut found);
    }
    let cliques: Vec<VertexSet> = found.into_iter().collect();

    let nodes: Vec<(VertexSet, Vec<usize>)> = cliques
        .iter()
        .map(|c| {
            let src = (0..max_cliques.len()).filter(|&i| c.is_subset(&max_cliques[i])).collect();
            (c.clone(), src)
        })
        .collect();

    let below = |a: usize, b: usize| cliques[b].len() < cliques[a].len() && cliques[b].is_subset(&cliques[a]);
    let mut arcs = Vec::new();
    for p in 0..cliques.len() {
        for c in 0..cliques.len() {
            if below(p, c) && !(0..cliques.len()).any(|w| below(p, w) && below(w, c)) {
                arcs.push((p, c));
            }
        }
    }

    let phi = g
        .vertices()
        .map(|v| {
            let holders: Vec<usize> = (0..cliques.len()).filter(|&x| cliques[x].contains(v)).collect();
            let smallest = *holders.iter().min_by_key(|&&x| cliques[x].len()).expect("every vertex is in a clique");
            debug_assert!(holders.iter().all(|&x| cliques[smallest].is_subset(&cliques[x])));
            smallest
        })
        .collect();

    Ok(InterCliqueDigraph::assemble(g, max_cliques, nodes, arcs, phi, 0))
}

fn collect_intersections(max_cliques: &[VertexSet], from: usize, acc: VertexSet, found: &mut BTreeSet<VertexSet>) {
    if acc.is_empty() {
        return;
    }
    found.insert(acc.clone());
    for j in from..max_cliques.len() {
        collect_intersections(max_cliques, j + 1, acc.intersection(&max_cliques[j]), found);
    }
}
