//! Named fixtures, seeded random generators, and small-graph enumeration.

use std::collections::BTreeSet;

use rand::Rng;

use crate::fvsp::FvspInstance;
use crate::graph::{Vertex, WeightedGraph};
use crate::obstruction::{find_induced_c4, find_induced_gem};

/// Names accepted by [`fixture`], besides the `c<k>`, `p<k>`, `k<k>` families.
pub const FIXTURE_NAMES: &[&str] = &["diamond", "gem", "house", "domino", "bull", "dart"];

/// Small named graphs with unit weights.
///
/// `diamond` has degree-3 vertices 0 and 1; `gem` is the path 0-1-2-3 plus
/// hub 4; `house` has square 0-1-2-3 and roof 4; `dart` is the diamond with a
/// pendant 4 on vertex 0. `c<k>`, `p<k>` and `k<k>` give cycles, paths and
/// complete graphs.
pub fn fixture(name: &str) -> Option<WeightedGraph> {
    let edges: Vec<(Vertex, Vertex)> = match name {
        "diamond" => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
        "gem" => vec![(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)],
        "house" => vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)],
        "domino" => vec![(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)],
        "bull" => vec![(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)],
        "dart" => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (0, 4)],
        _ => {
            let (kind, k) = name.split_at(1);
            let k: usize = k.parse().ok()?;
            return match kind {
                "c" if k >= 3 => Some(cycle(k)),
                "p" if k >= 1 => Some(path(k)),
                "k" => Some(complete(k)),
                _ => None,
            };
        }
    };
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Some(WeightedGraph::from_edges(n, &edges).expect("fixture edges are valid"))
}

pub fn cycle(k: usize) -> WeightedGraph {
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    WeightedGraph::from_edges(k, &edges).expect("cycle")
}

pub fn path(k: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    WeightedGraph::from_edges(k, &edges).expect("path")
}

pub fn complete(k: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(k);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v).expect("complete");
        }
    }
    g
}

/// G(n, p) with weights drawn uniformly from `weights` (a degenerate range
/// gives constant weights).
pub fn erdos_renyi<R: Rng>(rng: &mut R, n: usize, p: f64, weights: (f64, f64)) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
    }
    for v in 0..n {
        let w = if weights.1 > weights.0 { rng.gen_range(weights.0..=weights.1) } else { weights.0 };
        g.set_weight(v, w).expect("weight in range");
    }
    g
}

/// A random (C4, gem)-free graph: G(n, p), then delete a random edge from
/// each remaining C4 or gem until none is left.
pub fn random_c4_gem_free<R: Rng>(rng: &mut R, n: usize, p: f64, weights: (f64, f64)) -> WeightedGraph {
    let mut g = erdos_renyi(rng, n, p, weights);
    loop {
        let witness: Vec<Vertex> = if let Some(c) = find_induced_c4(&g) {
            c.to_vec()
        } else if let Some(gem) = find_induced_gem(&g) {
            gem.vertex_set().into_vec()
        } else {
            return g;
        };
        let mut inner = Vec::new();
        for (i, &u) in witness.iter().enumerate() {
            for &v in &witness[i + 1..] {
                if g.has_edge(u, v) {
                    inner.push((u, v));
                }
            }
        }
        let (u, v) = inner[rng.gen_range(0..inner.len())];
        g.remove_edge(u, v);
    }
}

/// A random DAG on `n` nodes with at most one directed path between any two
/// nodes, which is exactly the in-tree ancestor property. Arcs are offered in
/// random order along a random topological order and kept with probability
/// `p` when they preserve the property.
pub fn random_fvsp_instance<R: Rng>(rng: &mut R, n: usize, p: f64, weights: (f64, f64)) -> FvspInstance {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((order[i], order[j]));
        }
    }
    for i in (1..pairs.len()).rev() {
        pairs.swap(i, rng.gen_range(0..=i));
    }
    // reach[a][b]: a directed path a -> b exists (reflexive)
    let mut reach = vec![vec![false; n]; n];
    for (v, row) in reach.iter_mut().enumerate() {
        row[v] = true;
    }
    let mut arcs = Vec::new();
    for (u, v) in pairs {
        if !rng.gen_bool(p) {
            continue;
        }
        let creates_second_path = (0..n)
            .filter(|&a| reach[a][u])
            .any(|a| (0..n).any(|b| reach[v][b] && reach[a][b]));
        if creates_second_path {
            continue;
        }
        arcs.push((u, v));
        let sources: Vec<usize> = (0..n).filter(|&a| reach[a][u]).collect();
        let targets: Vec<usize> = (0..n).filter(|&b| reach[v][b]).collect();
        for &a in &sources {
            for &b in &targets {
                reach[a][b] = true;
            }
        }
    }
    arcs.sort_unstable();
    let w: Vec<f64> = (0..n)
        .map(|_| if weights.1 > weights.0 { rng.gen_range(weights.0..=weights.1) } else { weights.0 })
        .collect();
    FvspInstance::new(n, arcs, w).expect("generated arcs are valid")
}

/// Every labeled graph on `n` vertices (2^(n(n-1)/2) of them), unit weights.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = WeightedGraph> {
    let pairs: Vec<(Vertex, Vertex)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        WeightedGraph::from_edges(n, &edges).expect("distinct pairs")
    })
}

/// Canonical adjacency code: the lexicographically largest upper-triangle bit
/// string over all relabelings that order vertices by a refined degree
/// invariant. Two graphs are isomorphic iff their codes are equal.
pub fn canonical_code(g: &WeightedGraph) -> Vec<bool> {
    let n = g.n();
    let mut invariant: Vec<(usize, Vec<usize>, Vertex)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd, v)
        })
        .collect();
    invariant.sort();
    let mut cells: Vec<Vec<Vertex>> = Vec::new();
    for (i, entry) in invariant.iter().enumerate() {
        if i > 0 && invariant[i - 1].0 == entry.0 && invariant[i - 1].1 == entry.1 {
            cells.last_mut().expect("cell").push(entry.2);
        } else {
            cells.push(vec![entry.2]);
        }
    }
    let mut best: Option<Vec<bool>> = None;
    let mut order = Vec::with_capacity(n);
    permute_cells(g, &mut cells, 0, &mut order, &mut best);
    best.unwrap_or_default()
}

fn permute_cells(
    g: &WeightedGraph,
    cells: &mut [Vec<Vertex>],
    idx: usize,
    order: &mut Vec<Vertex>,
    best: &mut Option<Vec<bool>>,
) {
    if idx == cells.len() {
        let n = order.len();
        let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                code.push(g.has_edge(order[i], order[j]));
            }
        }
        if best.as_ref().is_none_or(|b| code > *b) {
            *best = Some(code);
        }
        return;
    }
    let k = cells[idx].len();
    let mut perm = cells[idx].clone();
    permutations(&mut perm, k, &mut |p| {
        let mark = order.len();
        order.extend_from_slice(p);
        permute_cells(g, cells, idx + 1, order, best);
        order.truncate(mark);
    });
}

/// Heap's algorithm.
fn permutations(items: &mut [Vertex], k: usize, visit: &mut dyn FnMut(&[Vertex])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k - 1 {
        permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    permutations(items, k - 1, visit);
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// built by extending the classes on `n - 1` vertices by one vertex.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<WeightedGraph> {
    if n == 0 {
        return vec![WeightedGraph::new(0)];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for base in graphs_up_to_isomorphism(n - 1) {
        for mask in 0u32..1 << (n - 1) {
            let mut g = WeightedGraph::new(n);
            for (u, v) in base.edges() {
                g.add_edge(u, v).expect("base edge");
            }
            for u in 0..n - 1 {
                if mask >> u & 1 == 1 {
                    g.add_edge(u, n - 1).expect("new edge");
                }
            }
            if seen.insert(canonical_code(&g)) {
                out.push(g);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn isomorphism_class_counts() {
        // OEIS A000088
        let counts: Vec<usize> = (0..=6).map(|n| graphs_up_to_isomorphism(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn fixtures_exist() {
        for name in FIXTURE_NAMES {
            assert!(fixture(name).is_some(), "{name}");
        }
        assert_eq!(fixture("c5").unwrap().edge_count(), 5);
        assert_eq!(fixture("k4").unwrap().edge_count(), 6);
        assert!(fixture("c2").is_none());
        assert!(fixture("nope").is_none());
    }

    #[test]
    fn random_instances_are_valid_multitrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..12 {
            let inst = random_fvsp_instance(&mut rng, n, 0.4, (0.0, 5.0));
            assert_eq!(inst.validate(), Ok(()));
        }
    }

    #[test]
    fn repaired_graphs_are_c4_gem_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let g = random_c4_gem_free(&mut rng, 8, 0.6, (1.0, 1.0));
            assert!(crate::obstruction::is_c4_gem_free(&g));
        }
    }
}
