//! Directed acyclic graphs: reachability, closures, and the underlying
//! undirected structure.

use thiserror::Error;

pub type Node = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DagError {
    #[error("node {0} out of range for {1} nodes")]
    NodeOutOfRange(Node, usize),
    #[error("self-loop at node {0}")]
    SelfLoop(Node),
    #[error("duplicate arc {0}->{1}")]
    DuplicateArc(Node, Node),
    #[error("antiparallel arcs between {0} and {1}")]
    Antiparallel(Node, Node),
}

/// Simple digraph; acyclicity is checked separately by callers that need it.
#[derive(Clone, Debug, PartialEq)]
pub struct Dag {
    arcs: Vec<(Node, Node)>,
    out: Vec<Vec<Node>>,
    inc: Vec<Vec<Node>>,
}

impl Dag {
    pub fn new(n: usize, arcs: Vec<(Node, Node)>) -> Result<Self, DagError> {
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(DagError::NodeOutOfRange(x, n));
                }
            }
            if u == v {
                return Err(DagError::SelfLoop(u));
            }
            if out[u].contains(&v) {
                return Err(DagError::DuplicateArc(u, v));
            }
            if out[v].contains(&u) {
                return Err(DagError::Antiparallel(u.min(v), u.max(v)));
            }
            out[u].push(v);
            inc[v].push(u);
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Dag { arcs, out, inc })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arcs(&self) -> &[(Node, Node)] {
        &self.arcs
    }

    pub fn children(&self, v: Node) -> &[Node] {
        &self.out[v]
    }

    pub fn parents(&self, v: Node) -> &[Node] {
        &self.inc[v]
    }

    pub fn has_arc(&self, u: Node, v: Node) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Kahn's algorithm; `Err` carries a node on a directed cycle.
    pub fn topological_order(&self) -> Result<Vec<Node>, Node> {
        let n = self.n();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.inc[v].len()).collect();
        let mut ready: Vec<Node> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in self.out[v].iter().rev() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        // Walk backwards from a stuck node until a node repeats.
        let stuck = (0..n).find(|&v| indeg[v] > 0).expect("cycle exists");
        let mut seen = vec![false; n];
        let mut cur = stuck;
        while !seen[cur] {
            seen[cur] = true;
            cur = *self.inc[cur].iter().find(|&&p| indeg[p] > 0).expect("stuck node has a stuck parent");
        }
        Err(cur)
    }

    fn reach(&self, start: &[Node], forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut stack: Vec<Node> = start.to_vec();
        for &s in start {
            seen[s] = true;
        }
        while let Some(u) = stack.pop() {
            let next = if forward { &self.out[u] } else { &self.inc[u] };
            for &w in next {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// `des(v) ∪ {v}` as a mask.
    pub fn descendants(&self, v: Node) -> Vec<bool> {
        self.reach(&[v], true)
    }

    /// `anc(v) ∪ {v}` as a mask.
    pub fn ancestors(&self, v: Node) -> Vec<bool> {
        self.reach(&[v], false)
    }

    /// Smallest downward-closed superset of `set`.
    pub fn descendant_closure(&self, set: &[bool]) -> Vec<bool> {
        let start: Vec<Node> = (0..self.n()).filter(|&v| set[v]).collect();
        self.reach(&start, true)
    }

    /// First arc `(u, v)` with `u` in the set and `v` outside it.
    pub fn downward_closure_violation(&self, set: &[bool]) -> Option<(Node, Node)> {
        self.arcs
            .iter()
            .copied()
            .filter(|&(u, v)| set[u] && !set[v])
            .min()
    }

    /// Reflexive reachability matrix.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        (0..self.n()).map(|v| self.descendants(v)).collect()
    }

    /// A node `v` whose ancestors (with `v`) do not induce an in-tree rooted at
    /// `v`, i.e. some ancestor has two out-neighbors inside that set.
    pub fn in_tree_violation(&self) -> Option<Node> {
        (0..self.n()).find(|&v| {
            let anc = self.ancestors(v);
            (0..self.n())
                .filter(|&u| anc[u] && u != v)
                .any(|u| self.out[u].iter().filter(|&&w| anc[w]).count() != 1)
        })
    }

    /// Underlying undirected adjacency restricted to `alive` nodes.
    fn undirected(&self, alive: &[bool]) -> Vec<Vec<Node>> {
        (0..self.n())
            .map(|v| {
                if !alive[v] {
                    return Vec::new();
                }
                let mut nb: Vec<Node> = self.out[v]
                    .iter()
                    .chain(self.inc[v].iter())
                    .copied()
                    .filter(|&w| alive[w])
                    .collect();
                nb.sort_unstable();
                nb
            })
            .collect()
    }

    /// Connected components of the underlying graph on `alive` nodes, with
    /// their edge counts.
    pub fn components(&self, alive: &[bool]) -> Vec<Component> {
        let adj = self.undirected(alive);
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if !alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut nodes = vec![s];
            let mut stack = vec![s];
            let mut degree_sum = 0;
            while let Some(u) = stack.pop() {
                degree_sum += adj[u].len();
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        nodes.push(w);
                        stack.push(w);
                    }
                }
            }
            nodes.sort_unstable();
            out.push(Component { nodes, edges: degree_sum / 2 });
        }
        out
    }

    /// A cycle of the underlying graph on `alive` nodes, if any.
    pub fn find_undirected_cycle(&self, alive: &[bool]) -> Option<Vec<Node>> {
        let adj = self.undirected(alive);
        let mut parent = vec![usize::MAX; self.n()];
        let mut depth = vec![0usize; self.n()];
        for s in 0..self.n() {
            if !alive[s] || parent[s] != usize::MAX {
                continue;
            }
            parent[s] = s;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if parent[w] == usize::MAX {
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        stack.push(w);
                    } else if w != parent[u] && parent[w] != u {
                        return Some(tree_cycle(&parent, &depth, u, w));
                    }
                }
            }
        }
        None
    }

    pub fn underlying_is_forest(&self, alive: &[bool]) -> bool {
        self.components(alive).iter().all(|c| c.cyclomatic_number() == 0)
    }

    /// Every simple cycle of the underlying graph, each listed once starting
    /// at its smallest node. Exponential; meant for small digraphs.
    pub fn undirected_simple_cycles(&self) -> Vec<Vec<Node>> {
        let adj = self.undirected(&vec![true; self.n()]);
        let mut out = Vec::new();
        for s in 0..self.n() {
            let mut path = vec![s];
            let mut on_path = vec![false; self.n()];
            on_path[s] = true;
            extend_cycles(&adj, s, &mut path, &mut on_path, &mut out);
        }
        out
    }

    /// Number of maximal directed subpaths of an undirected cycle.
    pub fn segment_length(&self, cycle: &[Node]) -> usize {
        let k = cycle.len();
        let forward: Vec<bool> = (0..k).map(|i| self.has_arc(cycle[i], cycle[(i + 1) % k])).collect();
        (0..k).filter(|&i| forward[i] != forward[(i + 1) % k]).count()
    }

    /// Maximal elements among common descendants (reflexive) of `a` and `b`.
    pub fn greatest_common_descendants(&self, a: Node, b: Node) -> Vec<Node> {
        let da = self.descendants(a);
        let db = self.descendants(b);
        let common: Vec<Node> = (0..self.n()).filter(|&v| da[v] && db[v]).collect();
        common
            .iter()
            .copied()
            .filter(|&w| {
                let anc = self.ancestors(w);
                !common.iter().any(|&u| u != w && anc[u])
            })
            .collect()
    }
}

fn tree_cycle(parent: &[usize], depth: &[usize], mut a: Node, mut b: Node) -> Vec<Node> {
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

fn extend_cycles(adj: &[Vec<Node>], start: Node, path: &mut Vec<Node>, on_path: &mut [bool], out: &mut Vec<Vec<Node>>) {
    let last = *path.last().expect("path starts at start");
    for &w in &adj[last] {
        if w == start && path.len() >= 3 && path[1] < last {
            out.push(path.clone());
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend_cycles(adj, start, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// A connected piece of an underlying undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub nodes: Vec<Node>,
    pub edges: usize,
}

impl Component {
    /// Number of independent cycles: `edges - nodes + 1`.
    pub fn cyclomatic_number(&self) -> usize {
        (self.edges + 1).saturating_sub(self.nodes.len())
    }
}

/// Mask with `true` at each listed node.
pub fn mask(n: usize, nodes: impl IntoIterator<Item = Node>) -> Vec<bool> {
    let mut m = vec![false; n];
    for v in nodes {
        m[v] = true;
    }
    m
}

/// Listed nodes of a mask.
pub fn members(mask: &[bool]) -> Vec<Node> {
    (0..mask.len()).filter(|&v| mask[v]).collect()
}
