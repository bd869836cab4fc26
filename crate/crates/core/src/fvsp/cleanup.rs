use super::{FvspError, FvspInstance};
use crate::dag::Node;

/// Breaks the cycle of every unicyclic component of the remainder at minimum
/// cost. For each cycle node `v`, deleting `des(v)` (restricted to what
/// remains) breaks the cycle; the cheapest such set is taken, ties going to
/// the smaller node id. Returns the extra deletions as a mask.
///
/// `remaining` must be upward-closed (its complement downward-closed), so
/// descendants never leave their component.
pub fn cleanup_unicyclic(inst: &FvspInstance, remaining: &[bool], theta: f64) -> Result<Vec<bool>, FvspError> {
    let dag = inst.dag();
    let mut extra = vec![false; inst.n()];
    for comp in dag.components(remaining) {
        match comp.cyclomatic_number() {
            0 => continue,
            1 => {}
            cycles => return Err(FvspError::MultiCycle { nodes: comp.nodes, cycles, theta }),
        }
        let cycle = two_core(inst, remaining, &comp.nodes);
        let cost = |v: Node| -> (f64, Vec<bool>) {
            let des: Vec<bool> = dag.descendants(v).iter().zip(remaining).map(|(d, r)| *d && *r).collect();
            (inst.weight_of(&des), des)
        };
        let mut best: Option<(f64, Vec<bool>)> = None;
        for v in cycle {
            let candidate = cost(v);
            if best.as_ref().is_none_or(|b| candidate.0 < b.0) {
                best = Some(candidate);
            }
        }
        let (_, des) = best.expect("a unicyclic component has a cycle");
        for (e, d) in extra.iter_mut().zip(des) {
            *e |= d;
        }
    }
    Ok(extra)
}

/// Nodes left after repeatedly stripping leaves from a component; for a
/// unicyclic component this is exactly its cycle. Sorted by id.
fn two_core(inst: &FvspInstance, remaining: &[bool], nodes: &[Node]) -> Vec<Node> {
    let dag = inst.dag();
    let mut alive = vec![false; inst.n()];
    for &v in nodes {
        alive[v] = true;
    }
    let neighbors = |v: Node| dag.children(v).iter().chain(dag.parents(v)).copied().filter(|&w| remaining[w]);
    let mut degree: Vec<usize> = (0..inst.n()).map(|v| if alive[v] { neighbors(v).count() } else { 0 }).collect();
    let mut leaves: Vec<Node> = nodes.iter().copied().filter(|&v| degree[v] <= 1).collect();
    while let Some(v) = leaves.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for w in neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    leaves.push(w);
                }
            }
        }
    }
    nodes.iter().copied().filter(|&v| alive[v]).collect()
}
