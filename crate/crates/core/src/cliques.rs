//! Maximal cliques and true-twin classes.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Vertex, VertexSet, WeightedGraph};

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{count} maximal cliques exceed the limit of {limit}{}", if *.c4_free { " for a C4-free graph" } else { "" })]
pub struct CliqueLimitExceeded {
    pub count: usize,
    pub limit: usize,
    pub c4_free: bool,
}

/// Upper bound on the number of maximal cliques a caller is willing to accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliqueGuard {
    Unbounded,
    /// The caller declares the graph C4-free, which caps the count at `n^2`.
    C4Free,
    AtMost(usize),
}

/// All maximal cliques, each sorted, in lexicographic order.
pub fn maximal_cliques(g: &WeightedGraph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut r = Vec::new();
    let p: Vec<Vertex> = g.vertices().collect();
    bron_kerbosch(g, &mut r, p, Vec::new(), &mut out);
    out.sort();
    out
}

/// [`maximal_cliques`] with a count guard.
pub fn maximal_cliques_guarded(g: &WeightedGraph, guard: CliqueGuard) -> Result<Vec<VertexSet>, CliqueLimitExceeded> {
    let cliques = maximal_cliques(g);
    let (limit, c4_free) = match guard {
        CliqueGuard::Unbounded => return Ok(cliques),
        CliqueGuard::C4Free => (g.n() * g.n(), true),
        CliqueGuard::AtMost(limit) => (limit, false),
    };
    if cliques.len() > limit {
        return Err(CliqueLimitExceeded { count: cliques.len(), limit, c4_free });
    }
    Ok(cliques)
}

// Tomita-style pivoting: branch only on P \ N(u) for the pivot u in P ∪ X
// with the most neighbors in P.
fn bron_kerbosch(g: &WeightedGraph, r: &mut Vec<Vertex>, mut p: Vec<Vertex>, mut x: Vec<Vertex>, out: &mut Vec<VertexSet>) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r.iter().copied().collect());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| (p.iter().filter(|&&v| g.has_edge(u, v)).count(), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    let branch: Vec<Vertex> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    for v in branch {
        let p_next = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let x_next = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, p_next, x_next, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Partition of the vertices into classes of equal closed neighborhoods,
/// ordered by smallest member.
pub fn twin_classes(g: &WeightedGraph) -> Vec<VertexSet> {
    let mut by_neighborhood: BTreeMap<VertexSet, Vec<Vertex>> = BTreeMap::new();
    for v in g.vertices() {
        by_neighborhood.entry(g.closed_neighborhood(v)).or_default().push(v);
    }
    let mut classes: Vec<VertexSet> = by_neighborhood.into_values().map(VertexSet::from_iter).collect();
    classes.sort_by_key(|c| c.as_slice()[0]);
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::fixture;
    use proptest::prelude::*;

    fn sets(v: &[&[Vertex]]) -> Vec<VertexSet> {
        v.iter().map(|s| VertexSet::from(*s)).collect()
    }

    #[test]
    fn clique_examples() {
        assert_eq!(maximal_cliques(&fixture("diamond").unwrap()), sets(&[&[0, 1, 2], &[0, 1, 3]]));
        assert_eq!(
            maximal_cliques(&fixture("c5").unwrap()),
            sets(&[&[0, 1], &[0, 4], &[1, 2], &[2, 3], &[3, 4]])
        );
        assert_eq!(maximal_cliques(&fixture("k4").unwrap()), sets(&[&[0, 1, 2, 3]]));
        assert!(maximal_cliques(&WeightedGraph::new(0)).is_empty());
        assert_eq!(maximal_cliques(&WeightedGraph::new(2)), sets(&[&[0], &[1]]));
    }

    #[test]
    fn guard_trips() {
        let g = fixture("c5").unwrap();
        assert!(maximal_cliques_guarded(&g, CliqueGuard::C4Free).is_ok());
        let err = maximal_cliques_guarded(&g, CliqueGuard::AtMost(4)).unwrap_err();
        assert_eq!(err.count, 5);
    }

    #[test]
    fn twin_examples() {
        assert_eq!(twin_classes(&fixture("k3").unwrap()), sets(&[&[0, 1, 2]]));
        assert_eq!(twin_classes(&fixture("p3").unwrap()), sets(&[&[0], &[1], &[2]]));
        assert_eq!(twin_classes(&fixture("diamond").unwrap()), sets(&[&[0, 1], &[2], &[3]]));
    }

    fn brute_maximal_cliques(g: &WeightedGraph) -> Vec<VertexSet> {
        let n = g.n();
        let cliques: Vec<u32> = (1u32..1 << n)
            .filter(|&m| {
                let vs: Vec<Vertex> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .collect();
        let mut out: Vec<VertexSet> = cliques
            .iter()
            .filter(|&&m| !cliques.iter().any(|&o| o != m && o & m == m))
            .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn exhaustive_against_subset_enumeration() {
        for n in 0..=6 {
            for g in crate::gen::all_labeled_graphs(n) {
                assert_eq!(maximal_cliques(&g), brute_maximal_cliques(&g));
            }
        }
        for g in crate::gen::graphs_up_to_isomorphism(7) {
            assert_eq!(maximal_cliques(&g), brute_maximal_cliques(&g));
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
        (1..=max_n, any::<u64>(), 0.0f64..1.0).prop_map(|(n, seed, p)| {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            crate::gen::erdos_renyi(&mut rng, n, p, (1.0, 1.0))
        })
    }

    proptest! {
        #[test]
        fn c4_free_graphs_have_few_cliques(seed in any::<u64>(), n in 1usize..=9, p in 0.1f64..0.9) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = crate::gen::random_c4_gem_free(&mut rng, n, p, (1.0, 1.0));
            prop_assert!(maximal_cliques_guarded(&g, CliqueGuard::C4Free).is_ok());
        }

        #[test]
        fn twin_partition_matches_closed_neighborhoods(g in arb_graph(9)) {
            let classes = twin_classes(&g);
            let mut class_of = vec![usize::MAX; g.n()];
            for (i, c) in classes.iter().enumerate() {
                prop_assert!(g.is_clique(c.as_slice()));
                for v in c.iter() {
                    prop_assert_eq!(class_of[v], usize::MAX);
                    class_of[v] = i;
                }
            }
            for u in g.vertices() {
                for v in g.vertices() {
                    let same = g.closed_neighborhood(u) == g.closed_neighborhood(v);
                    prop_assert_eq!(class_of[u] == class_of[v], same);
                }
            }
        }
    }
}
