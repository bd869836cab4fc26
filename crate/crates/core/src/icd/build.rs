use std::collections::BTreeSet;

use super::{IcdError, InterCliqueDigraph, SrcSet};
use crate::cliques::{maximal_cliques_guarded, twin_classes, CliqueGuard};
use crate::graph::{VertexSet, WeightedGraph};

fn src_of(max_cliques: &[VertexSet], set: &VertexSet) -> SrcSet {
    (0..max_cliques.len()).filter(|&i| set.is_subset(&max_cliques[i])).collect()
}

fn intersect(a: &[usize], b: &[usize]) -> SrcSet {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_proper_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && intersect(a, b).len() == a.len()
}

/// Builds the inter-clique digraph of a (C4, gem)-free graph bottom-up.
///
/// Starting from the src-sets of the true-twin classes, pairwise
/// intersections are added until nothing changes; every resulting src-set is
/// a node whose clique is the intersection of its maximal cliques. Arcs are
/// the cover relation of proper src-set containment, reversed.
///
/// The precondition is checked after the fact: too many maximal cliques or
/// nodes, or two overlapping cliques below a common maximal clique, are
/// reported as errors.
pub fn build_icd(g: &WeightedGraph) -> Result<InterCliqueDigraph, IcdError> {
    let n = g.n();
    let max_cliques = maximal_cliques_guarded(g, CliqueGuard::C4Free)?;
    let node_bound = 2 * n * n * n;

    let mut family: BTreeSet<SrcSet> = twin_classes(g).iter().map(|z| src_of(&max_cliques, z)).collect();
    let mut rounds = 0;
    loop {
        let current: Vec<&SrcSet> = family.iter().collect();
        let mut fresh = BTreeSet::new();
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let meet = intersect(a, b);
                if !meet.is_empty() && !family.contains(&meet) {
                    fresh.insert(meet);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        rounds += 1;
        family.extend(fresh);
        if family.len() > node_bound {
            return Err(IcdError::TooManyNodes { count: family.len(), bound: node_bound });
        }
    }

    let srcs: Vec<SrcSet> = family.into_iter().collect();
    let cliques: Vec<VertexSet> = srcs
        .iter()
        .map(|src| {
            src.iter()
                .map(|&i| max_cliques[i].clone())
                .reduce(|acc, m| acc.intersection(&m))
                .expect("src-sets are nonempty")
        })
        .collect();

    for (m, max_clique) in max_cliques.iter().enumerate() {
        let below: Vec<usize> = (0..srcs.len()).filter(|&x| srcs[x].binary_search(&m).is_ok()).collect();
        for (i, &a) in below.iter().enumerate() {
            for &b in &below[i + 1..] {
                if cliques[a].overlaps(&cliques[b]) {
                    return Err(IcdError::NotLaminar {
                        max_clique: max_clique.clone(),
                        first: cliques[a].clone(),
                        second: cliques[b].clone(),
                    });
                }
            }
        }
    }

    // Cover pairs of proper src-set containment: parent ⊊ child with nothing between.
    let contains: Vec<Vec<bool>> = srcs
        .iter()
        .map(|a| srcs.iter().map(|b| is_proper_subset(a, b)).collect())
        .collect();
    let mut arcs = Vec::new();
    for p in 0..srcs.len() {
        for c in 0..srcs.len() {
            if contains[p][c] && !(0..srcs.len()).any(|w| contains[p][w] && contains[w][c]) {
                arcs.push((p, c));
            }
        }
    }

    let phi: Vec<usize> = g
        .vertices()
        .map(|v| {
            let src_v = src_of(&max_cliques, &VertexSet::from([v]));
            srcs.binary_search(&src_v).expect("every vertex src-set is a twin-class src-set")
        })
        .collect();

    let nodes = cliques.into_iter().zip(srcs).collect();
    Ok(InterCliqueDigraph::assemble(g, max_cliques, nodes, arcs, phi, rounds))
}
