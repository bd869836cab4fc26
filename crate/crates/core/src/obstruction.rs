//! Forbidden induced subgraphs: C4, gem and holes, and the ptolemaic test
//! built from them (a graph is ptolemaic iff it is chordal and gem-free).

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::graph::{Vertex, VertexSet, WeightedGraph};

/// Calls `visit(a, b, c, d)` for every induced 4-cycle `a-b-c-d-a`, stopping
/// as soon as it returns `true`. Each cycle is reported once, with `a` its
/// smallest vertex and `b < d`.
fn scan_c4(g: &WeightedGraph, mut visit: impl FnMut([Vertex; 4]) -> bool) -> bool {
    for a in g.vertices() {
        let nb: Vec<Vertex> = g.neighbors(a).filter(|&x| x > a).collect();
        for (i, &b) in nb.iter().enumerate() {
            for &d in &nb[i + 1..] {
                if g.has_edge(b, d) {
                    continue;
                }
                for c in g.neighbors(b) {
                    if c > a && c != d && g.has_edge(c, d) && !g.has_edge(a, c) && visit([a, b, c, d]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Some induced C4, as the vertex sequence of the cycle.
pub fn find_induced_c4(g: &WeightedGraph) -> Option<[Vertex; 4]> {
    let mut found = None;
    scan_c4(g, |cycle| {
        found = Some(cycle);
        true
    });
    found
}

/// Vertex sets of all induced C4s, sorted.
pub fn all_induced_c4(g: &WeightedGraph) -> Vec<VertexSet> {
    let mut out = BTreeSet::new();
    scan_c4(g, |cycle| {
        out.insert(VertexSet::from(cycle));
        false
    });
    out.into_iter().collect()
}

/// A gem as its induced path `p[0]-p[1]-p[2]-p[3]` and the hub adjacent to all four.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Gem {
    pub path: [Vertex; 4],
    pub hub: Vertex,
}

impl Gem {
    pub fn vertex_set(&self) -> VertexSet {
        self.path.iter().copied().chain([self.hub]).collect()
    }
}

fn scan_gems(g: &WeightedGraph, mut visit: impl FnMut(Gem) -> bool) -> bool {
    for hub in g.vertices() {
        let nb = g.neighbor_set(hub);
        for &b in nb {
            for &c in nb.range(b + 1..) {
                if !g.has_edge(b, c) {
                    continue;
                }
                // a-b-c-d induced inside N(hub)
                for &a in nb {
                    if a == c || !g.has_edge(a, b) || g.has_edge(a, c) {
                        continue;
                    }
                    for &d in nb {
                        if d == b || d == a || !g.has_edge(c, d) || g.has_edge(b, d) || g.has_edge(a, d) {
                            continue;
                        }
                        if visit(Gem { path: [a, b, c, d], hub }) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

pub fn find_induced_gem(g: &WeightedGraph) -> Option<Gem> {
    let mut found = None;
    scan_gems(g, |gem| {
        found = Some(gem);
        true
    });
    found
}

/// Vertex sets of all induced gems, sorted.
pub fn all_induced_gems(g: &WeightedGraph) -> Vec<VertexSet> {
    let mut out = BTreeSet::new();
    scan_gems(g, |gem| {
        out.insert(gem.vertex_set());
        false
    });
    out.into_iter().collect()
}

/// Every vertex set inducing a C4 or a gem, sorted and deduplicated.
pub fn all_c4_and_gems(g: &WeightedGraph) -> Vec<VertexSet> {
    let mut all: BTreeSet<VertexSet> = all_induced_c4(g).into_iter().collect();
    all.extend(all_induced_gems(g));
    all.into_iter().collect()
}

pub fn is_c4_gem_free(g: &WeightedGraph) -> bool {
    find_induced_c4(g).is_none() && find_induced_gem(g).is_none()
}

/// Lexicographic breadth-first search; returns vertices in visit order.
pub fn lex_bfs(g: &WeightedGraph) -> Vec<Vertex> {
    let n = g.n();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let next = (0..n)
            .filter(|&v| !visited[v])
            // Largest label wins; ties go to the smallest id.
            .max_by(|&u, &v| labels[u].cmp(&labels[v]).then(v.cmp(&u)))
            .expect("unvisited vertex remains");
        visited[next] = true;
        order.push(next);
        for w in g.neighbors(next) {
            if !visited[w] {
                labels[w].push(n - step);
            }
        }
    }
    order
}

/// Whether `order` is a perfect elimination ordering: each vertex's later
/// neighbors form a clique.
pub fn is_perfect_elimination_ordering(g: &WeightedGraph, order: &[Vertex]) -> bool {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<Vertex> = g.neighbors(v).filter(|&w| pos[w] > pos[v]).collect();
        let Some(&first) = later.iter().min_by_key(|&&w| pos[w]) else { continue };
        if later.iter().any(|&w| w != first && !g.has_edge(first, w)) {
            return false;
        }
    }
    true
}

/// Chordality via the reverse of a LexBFS order.
pub fn is_chordal(g: &WeightedGraph) -> bool {
    let mut order = lex_bfs(g);
    order.reverse();
    is_perfect_elimination_ordering(g, &order)
}

/// Shortest path from `from` to `to` avoiding `blocked`, as a vertex sequence.
fn shortest_path(g: &WeightedGraph, from: Vertex, to: Vertex, blocked: &[bool]) -> Option<Vec<Vertex>> {
    let mut prev = vec![usize::MAX; g.n()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(u) {
            if prev[w] == usize::MAX && !blocked[w] {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// A shortest hole (induced cycle of length at least 4), as its vertex
/// sequence, or `None` iff the graph is chordal.
///
/// For every vertex `s` and non-adjacent neighbors `a`, `b` of `s`, a shortest
/// `a`-`b` path avoiding `N[s] \ {a, b}` closes into a hole through `s`; every
/// hole arises this way.
pub fn find_hole(g: &WeightedGraph) -> Option<Vec<Vertex>> {
    if is_chordal(g) {
        return None;
    }
    let mut best: Option<Vec<Vertex>> = None;
    for s in g.vertices() {
        let nb: Vec<Vertex> = g.neighbors(s).collect();
        let mut blocked = vec![false; g.n()];
        blocked[s] = true;
        for &x in &nb {
            blocked[x] = true;
        }
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                blocked[a] = false;
                blocked[b] = false;
                if let Some(path) = shortest_path(g, a, b, &blocked) {
                    if best.as_ref().is_none_or(|h| path.len() + 1 < h.len()) {
                        let mut cycle = vec![s];
                        cycle.extend(path);
                        best = Some(cycle);
                    }
                }
                blocked[a] = true;
                blocked[b] = true;
            }
        }
    }
    debug_assert!(best.is_some(), "non-chordal graph without a hole");
    best
}

/// What keeps a graph from being ptolemaic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Obstruction {
    Hole { cycle: Vec<Vertex> },
    Gem { path: [Vertex; 4], hub: Vertex },
}

impl Obstruction {
    pub fn vertex_set(&self) -> VertexSet {
        match self {
            Obstruction::Hole { cycle } => cycle.iter().copied().collect(),
            Obstruction::Gem { path, hub } => Gem { path: *path, hub: *hub }.vertex_set(),
        }
    }
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::Hole { cycle } => {
                write!(f, "hole ")?;
                for (i, v) in cycle.iter().enumerate() {
                    if i > 0 {
                        write!(f, "-")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Obstruction::Gem { path, hub } => {
                write!(f, "gem path {}-{}-{}-{} hub {hub}", path[0], path[1], path[2], path[3])
            }
        }
    }
}

/// `Ok(())` if ptolemaic, otherwise a hole or gem witness.
pub fn is_ptolemaic(g: &WeightedGraph) -> Result<(), Obstruction> {
    if let Some(cycle) = find_hole(g) {
        return Err(Obstruction::Hole { cycle });
    }
    if let Some(gem) = find_induced_gem(g) {
        return Err(Obstruction::Gem { path: gem.path, hub: gem.hub });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::fixture;
    use std::collections::BTreeSet;

    fn subsets(n: usize, k: usize) -> Vec<Vec<Vertex>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
            .collect()
    }

    fn induced_edges(g: &WeightedGraph, s: &[Vertex]) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if g.has_edge(s[i], s[j]) {
                    e.push((i, j));
                }
            }
        }
        e
    }

    /// 4-subsets whose induced subgraph is 2-regular and connected.
    fn brute_c4(g: &WeightedGraph) -> Vec<VertexSet> {
        subsets(g.n(), 4)
            .into_iter()
            .filter(|s| {
                let e = induced_edges(g, s);
                let mut deg = [0; 4];
                for &(a, b) in &e {
                    deg[a] += 1;
                    deg[b] += 1;
                }
                e.len() == 4 && deg.iter().all(|&d| d == 2)
            })
            .map(|s| VertexSet::from(s.as_slice()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// 5-subsets with degree sequence (4,3,3,2,2), 7 edges, and the degree-2
    /// vertices non-adjacent: that is exactly the gem.
    fn brute_gems(g: &WeightedGraph) -> Vec<VertexSet> {
        subsets(g.n(), 5)
            .into_iter()
            .filter(|s| {
                let e = induced_edges(g, s);
                let mut deg = [0; 5];
                for &(a, b) in &e {
                    deg[a] += 1;
                    deg[b] += 1;
                }
                let mut sorted = deg;
                sorted.sort_unstable();
                let twos: Vec<usize> = (0..5).filter(|&i| deg[i] == 2).collect();
                e.len() == 7
                    && sorted == [2, 2, 3, 3, 4]
                    && !g.has_edge(s[twos[0]], s[twos[1]])
            })
            .map(|s| VertexSet::from(s.as_slice()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    #[test]
    fn c4_examples() {
        let c4 = fixture("c4").unwrap();
        assert_eq!(VertexSet::from(find_induced_c4(&c4).unwrap()), VertexSet::from([0, 1, 2, 3]));
        assert_eq!(find_induced_c4(&fixture("diamond").unwrap()), None);
        let house = fixture("house").unwrap();
        assert_eq!(all_induced_c4(&house), brute_c4(&house));
        assert_eq!(all_induced_c4(&house), vec![VertexSet::from([0, 1, 2, 3])]);
    }

    #[test]
    fn gem_examples() {
        let gem = fixture("gem").unwrap();
        assert_eq!(find_induced_gem(&gem).unwrap().vertex_set(), VertexSet::from([0, 1, 2, 3, 4]));
        assert_eq!(find_induced_gem(&fixture("c5").unwrap()), None);
        let bull = fixture("bull").unwrap();
        assert!(brute_gems(&bull).is_empty());
        assert_eq!(find_induced_gem(&bull), None);
    }

    #[test]
    fn hole_examples() {
        let c5 = fixture("c5").unwrap();
        let hole = find_hole(&c5).unwrap();
        assert_eq!(VertexSet::from(hole.as_slice()), VertexSet::from([0, 1, 2, 3, 4]));
        let tree = WeightedGraph::from_edges(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        assert_eq!(find_hole(&tree), None);
        let domino = fixture("domino").unwrap();
        let hole = VertexSet::from(find_hole(&domino).unwrap().as_slice());
        assert!(brute_c4(&domino).contains(&hole));
    }

    #[test]
    fn ptolemaic_examples() {
        assert_eq!(is_ptolemaic(&fixture("p4").unwrap()), Ok(()));
        match is_ptolemaic(&fixture("gem").unwrap()) {
            Err(o @ Obstruction::Gem { .. }) => assert_eq!(o.vertex_set().len(), 5),
            other => panic!("unexpected {other:?}"),
        }
        let (p4, _) = fixture("c5").unwrap().remove_vertices(&VertexSet::from([2]));
        assert_eq!(is_ptolemaic(&p4), Ok(()));
    }

    /// Holes found are induced cycles of length >= 4.
    fn assert_is_hole(g: &WeightedGraph, cycle: &[Vertex]) {
        let k = cycle.len();
        assert!(k >= 4);
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                assert_eq!(g.has_edge(cycle[i], cycle[j]), consecutive, "{cycle:?}");
            }
        }
    }

    /// Greedy simplicial elimination: succeeds iff a PEO exists.
    fn peo_exists(g: &WeightedGraph) -> bool {
        let mut alive: Vec<Vertex> = g.vertices().collect();
        while !alive.is_empty() {
            let simplicial = alive.iter().position(|&v| {
                let nb: Vec<Vertex> = alive.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
                g.is_clique(&nb)
            });
            match simplicial {
                Some(i) => {
                    alive.remove(i);
                }
                None => return false,
            }
        }
        true
    }

    #[test]
    fn exhaustive_small_graphs_agree_with_brute_force() {
        for n in 0..=6 {
            for g in crate::gen::all_labeled_graphs(n) {
                let hole = find_hole(&g);
                assert_eq!(hole.is_none(), peo_exists(&g), "{}", g.to_text());
                if let Some(h) = &hole {
                    assert_is_hole(&g, h);
                }
                assert_eq!(all_induced_c4(&g), brute_c4(&g));
                assert_eq!(all_induced_gems(&g), brute_gems(&g));
            }
        }
    }

    #[test]
    fn n7_classes_agree_with_brute_force() {
        for g in crate::gen::graphs_up_to_isomorphism(7) {
            let hole = find_hole(&g);
            assert_eq!(hole.is_none(), peo_exists(&g));
            let brute = peo_exists(&g) && brute_gems(&g).is_empty();
            assert_eq!(is_ptolemaic(&g).is_ok(), brute);
        }
    }
}
