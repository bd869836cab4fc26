//! Weighted ptolemaic deletion end to end: hit every C4 and gem by LP
//! threshold rounding, reduce the rest to FVSP on the inter-clique digraph,
//! and lift the FVSP solution back to vertices.

use serde::Serialize;
use thiserror::Error;

use crate::dag::{mask, members, Node};
use crate::fvsp::{solve_fvsp, FvspError, FvspInstance, FvspSolution, InstanceViolation, RoundingParams};
use crate::graph::{Vertex, VertexSet, WeightedGraph};
use crate::icd::{build_icd, is_ptolemaic_via_icd, IcdError, InterCliqueDigraph};
use crate::lp::{Cmp, LinearProgram, LpError};
use crate::obstruction::{all_c4_and_gems, is_ptolemaic, Obstruction};

/// Hitting threshold on the LP values: every constraint has at most five
/// variables summing to at least one, so one of them reaches 1/5.
pub const HIT_THRESHOLD: f64 = 0.2;
const HIT_SLACK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("hitting stage: {0}")]
    Hitting(LpError),
    #[error("icd stage: {0}")]
    Icd(#[from] IcdError),
    #[error("reduction stage: {0}")]
    Reduction(InstanceViolation),
    #[error("fvsp stage: {0}")]
    Fvsp(#[from] FvspError),
    #[error("lift stage: node {node} is selected but its descendant {descendant} is not")]
    Lift { node: Node, descendant: Node },
    #[error("verification stage: remainder still contains {0}")]
    Verification(Obstruction),
    #[error("verification stage: ICD recognizer rejects the remainder")]
    IcdVerification,
}

impl PipelineError {
    pub fn stage(&self) -> &'static str {
        match self {
            PipelineError::Hitting(_) => "hitting",
            PipelineError::Icd(_) => "icd",
            PipelineError::Reduction(_) => "reduction",
            PipelineError::Fvsp(_) => "fvsp",
            PipelineError::Lift { .. } => "lift",
            PipelineError::Verification(_) | PipelineError::IcdVerification => "verification",
        }
    }
}

/// One covering row per induced C4 or gem.
#[derive(Clone, Debug, PartialEq)]
pub struct HittingLp {
    pub obstructions: Vec<VertexSet>,
    program: LinearProgram,
}

impl HittingLp {
    pub fn new(g: &WeightedGraph) -> Self {
        let obstructions = all_c4_and_gems(g);
        let mut program = LinearProgram::new();
        if !obstructions.is_empty() {
            for v in g.vertices() {
                program.add_var(g.weight(v), (0.0, 1.0));
            }
        }
        for a in &obstructions {
            program.add_constraint(a.iter().map(|v| (v, 1.0)).collect(), Cmp::Ge, 1.0);
        }
        HittingLp { obstructions, program }
    }

    pub fn program(&self) -> &LinearProgram {
        &self.program
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HittingOutcome {
    pub deleted: VertexSet,
    pub weight: f64,
    pub lp_value: f64,
    pub constraints: usize,
    /// Vertices added after thresholding because an obstruction survived it.
    pub repaired: Vec<Vertex>,
    #[serde(skip)]
    pub x: Vec<f64>,
}

/// Solves the hitting LP and keeps every vertex with `x*_v ≥ 1/5`.
pub fn hit_c4_gem(g: &WeightedGraph) -> Result<HittingOutcome, PipelineError> {
    let lp = HittingLp::new(g);
    if lp.obstructions.is_empty() {
        return Ok(HittingOutcome {
            deleted: VertexSet::new(),
            weight: 0.0,
            lp_value: 0.0,
            constraints: 0,
            repaired: Vec::new(),
            x: vec![0.0; g.n()],
        });
    }
    let sol = lp.program.solve().map_err(PipelineError::Hitting)?;
    let x = sol.values;
    let mut chosen: Vec<bool> = x.iter().map(|&v| v >= HIT_THRESHOLD - HIT_SLACK).collect();
    let mut repaired = Vec::new();
    for a in &lp.obstructions {
        if a.iter().any(|v| chosen[v]) {
            continue;
        }
        let pick = a
            .iter()
            .max_by(|&p, &q| x[p].total_cmp(&x[q]).then(q.cmp(&p)))
            .expect("obstructions are nonempty");
        chosen[pick] = true;
        repaired.push(pick);
    }
    let deleted: VertexSet = members(&chosen).into_iter().collect();
    Ok(HittingOutcome {
        weight: g.weight_of(deleted.iter()),
        deleted,
        lp_value: sol.objective,
        constraints: lp.obstructions.len(),
        repaired,
        x,
    })
}

/// Inter-clique digraph of a (C4, gem)-free graph and its FVSP instance.
pub fn reduce_to_fvsp(g: &WeightedGraph) -> Result<(InterCliqueDigraph, FvspInstance), PipelineError> {
    let icd = build_icd(g)?;
    let inst = icd.to_fvsp_instance();
    inst.validate().map_err(PipelineError::Reduction)?;
    Ok((icd, inst))
}

/// Least superset `R*` of `R` such that every descendant of `R*` with zero
/// weight is in `R*`, and every node with empty `φ⁻¹` whose children all lie
/// in `R*` is in `R*`.
pub fn closure(icd: &InterCliqueDigraph, r: &[bool]) -> Vec<bool> {
    let dag = icd.dag();
    let mut inside = r.to_vec();
    loop {
        let mut changed = false;
        let reach = dag.descendant_closure(&inside);
        for x in 0..icd.len() {
            if inside[x] {
                continue;
            }
            let zero_descendant = reach[x] && icd.weight(x) == 0.0;
            let hollow_covered = icd.phi_inv(x).is_empty() && dag.children(x).iter().all(|&c| inside[c]);
            if zero_descendant || hollow_covered {
                inside[x] = true;
                changed = true;
            }
        }
        if !changed {
            return inside;
        }
    }
}

/// `{φ(v) : v ∈ S}` as a node mask.
pub fn phi_image(icd: &InterCliqueDigraph, s: &VertexSet) -> Vec<bool> {
    mask(icd.len(), s.iter().map(|v| icd.phi(v)))
}

/// `⋃_{x ∈ R} φ⁻¹(x)` for a downward-closed `R`.
pub fn lift(icd: &InterCliqueDigraph, r: &[bool]) -> Result<VertexSet, PipelineError> {
    if let Some((node, descendant)) = icd.dag().downward_closure_violation(r) {
        return Err(PipelineError::Lift { node, descendant });
    }
    Ok(members(r).into_iter().flat_map(|x| icd.phi_inv(x).iter()).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FvspStage {
    /// Lifted vertices, as ids of the input graph.
    pub deleted: VertexSet,
    pub weight: f64,
    pub nodes: Vec<Node>,
    pub solution: FvspSolution,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IcdSummary {
    pub nodes: usize,
    pub arcs: usize,
    pub fixpoint_rounds: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Certificates {
    pub hitting_leaves_c4_gem_free: bool,
    pub chordal_and_gem_free: bool,
    pub icd_forest: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineResult {
    pub deleted: VertexSet,
    pub weight: f64,
    pub hitting: HittingOutcome,
    pub fvsp: FvspStage,
    pub icd: IcdSummary,
    pub certificates: Certificates,
}

pub fn solve_ptolemaic_deletion(g: &WeightedGraph) -> Result<PipelineResult, PipelineError> {
    solve_ptolemaic_deletion_with(g, &RoundingParams::default())
}

pub fn solve_ptolemaic_deletion_with(g: &WeightedGraph, params: &RoundingParams) -> Result<PipelineResult, PipelineError> {
    let hitting = hit_c4_gem(g)?;
    let (rest, labels) = g.remove_vertices(&hitting.deleted);
    let hitting_leaves_c4_gem_free = all_c4_and_gems(&rest).is_empty();
    let (icd, inst) = reduce_to_fvsp(&rest)?;
    let solution = solve_fvsp(&inst, params)?;
    let lifted = lift(&icd, &mask(icd.len(), solution.deleted.iter().copied()))?;
    let lifted: VertexSet = lifted.iter().map(|v| labels[v]).collect();
    let deleted = hitting.deleted.union(&lifted);

    let (remainder, _) = g.remove_vertices(&deleted);
    is_ptolemaic(&remainder).map_err(PipelineError::Verification)?;
    if !is_ptolemaic_via_icd(&remainder)? {
        return Err(PipelineError::IcdVerification);
    }
    Ok(PipelineResult {
        weight: hitting.weight + g.weight_of(lifted.iter()),
        deleted,
        icd: IcdSummary { nodes: icd.len(), arcs: icd.arcs().len(), fixpoint_rounds: icd.fixpoint_rounds() },
        fvsp: FvspStage {
            weight: g.weight_of(lifted.iter()),
            deleted: lifted,
            nodes: solution.deleted.clone(),
            solution,
        },
        hitting,
        certificates: Certificates { hitting_leaves_c4_gem_free, chordal_and_gem_free: true, icd_forest: true },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{cycle, fixture, path};
    use crate::icd::brute_force_icd;

    #[test]
    fn ptolemaic_input_is_untouched() {
        for g in [path(4), fixture("diamond").unwrap(), fixture("bull").unwrap()] {
            let r = solve_ptolemaic_deletion(&g).unwrap();
            assert!(r.deleted.is_empty());
            assert_eq!(r.weight, 0.0);
            assert_eq!(r.hitting.constraints, 0);
        }
    }

    #[test]
    fn c5_costs_one() {
        let r = solve_ptolemaic_deletion(&cycle(5)).unwrap();
        assert_eq!(r.weight, 1.0);
        assert_eq!(r.deleted.len(), 1);
        assert!(r.hitting.deleted.is_empty());
    }

    #[test]
    fn hitting_c4_and_gem() {
        for g in [cycle(4), fixture("gem").unwrap()] {
            let h = hit_c4_gem(&g).unwrap();
            assert!(h.weight <= 5.0 * h.lp_value + 1e-9);
            assert!(h.weight <= 5.0);
            assert!(all_c4_and_gems(&g.remove_vertices(&h.deleted).0).is_empty());
        }
    }

    #[test]
    fn reduction_of_c5_and_diamond() {
        let (icd, inst) = reduce_to_fvsp(&cycle(5)).unwrap();
        assert_eq!((inst.n(), inst.m()), (10, 10));
        let mut w = icd.weights();
        w.sort_by(f64::total_cmp);
        assert_eq!(w, [vec![0.0; 5], vec![1.0; 5]].concat());
        let (_, inst) = reduce_to_fvsp(&fixture("diamond").unwrap()).unwrap();
        assert!(inst.dag().underlying_is_forest(&vec![true; inst.n()]));
        let (icd, inst) = reduce_to_fvsp(&WeightedGraph::new(0)).unwrap();
        assert!(icd.is_empty() && inst.n() == 0);
    }

    #[test]
    fn closure_examples() {
        let g = cycle(5);
        let icd = brute_force_icd(&g).unwrap();
        let vertex_node = icd.phi(0);
        let r = mask(icd.len(), [vertex_node]);
        assert_eq!(closure(&icd, &r), r);
        let edge_node = icd.find(&VertexSet::from([0, 1])).unwrap();
        let r = mask(icd.len(), [edge_node]);
        assert_eq!(closure(&icd, &r), r);

        // K2 plus a pendant: every node owns a vertex with positive weight
        let p3 = path(3);
        let icd = brute_force_icd(&p3).unwrap();
        assert!(icd.nodes().iter().all(|x| !x.phi_inv.is_empty()));
        assert_eq!(closure(&icd, &vec![false; icd.len()]), vec![false; icd.len()]);
    }

    #[test]
    fn closure_absorbs_zero_weight_descendants_and_hollow_nodes() {
        // C5 with edge nodes weighing zero already; make vertex 1 weigh zero
        let mut g = cycle(5);
        g.set_weight(1, 0.0).unwrap();
        let icd = brute_force_icd(&g).unwrap();
        let e01 = icd.find(&VertexSet::from([0, 1])).unwrap();
        let r = closure(&icd, &mask(icd.len(), [e01]));
        assert!(r[icd.phi(1)]);
        assert!(!r[icd.phi(0)]);
    }

    #[test]
    fn lift_examples() {
        let g = cycle(5);
        let icd = brute_force_icd(&g).unwrap();
        let x = icd.phi(3);
        assert_eq!(lift(&icd, &mask(icd.len(), [x])).unwrap(), VertexSet::from([3]));
        assert!(is_ptolemaic(&g.remove_vertices(&VertexSet::from([3])).0).is_ok());
        assert_eq!(lift(&icd, &vec![true; icd.len()]).unwrap(), (0..5).collect());
        let e = icd.find(&VertexSet::from([0, 1])).unwrap();
        assert!(matches!(lift(&icd, &mask(icd.len(), [e])), Err(PipelineError::Lift { .. })));

        let forest = brute_force_icd(&path(4)).unwrap();
        assert!(lift(&forest, &vec![false; forest.len()]).unwrap().is_empty());
    }

    #[test]
    fn stage_tags() {
        assert_eq!(PipelineError::IcdVerification.stage(), "verification");
        assert_eq!(PipelineError::Hitting(LpError::Infeasible).stage(), "hitting");
    }

    mod properties {
        use proptest::prelude::*;
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        use super::*;
        use crate::gen::{erdos_renyi, random_c4_gem_free};
        use crate::oracle::{exact_c4gem_hitting, exact_ptolemaic_deletion, minimalize_deletion_set, OracleBudget};

        fn free_graph(seed: u64, n: usize, p: f64) -> WeightedGraph {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = random_c4_gem_free(&mut rng, n, p, (0.0, 3.0));
            for v in 0..n {
                if rng.gen_bool(0.15) {
                    g.set_weight(v, 0.0).unwrap();
                }
            }
            g
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn minimal_solutions_contain_canonical_cliques(seed in any::<u64>(), n in 3usize..9, p in 0.3f64..0.8) {
                let g = free_graph(seed, n, p);
                let icd = build_icd(&g).unwrap();
                let s = exact_ptolemaic_deletion(&g, &OracleBudget::default()).unwrap().set;
                let s = minimalize_deletion_set(&g, &s);
                for v in s.iter() {
                    prop_assert!(icd.node(icd.phi(v)).clique.is_subset(&s), "{}", g.to_text());
                }
            }

            #[test]
            fn phi_star_of_minimal_solution_is_feasible(seed in any::<u64>(), n in 3usize..9, p in 0.3f64..0.8) {
                let g = free_graph(seed, n, p);
                let icd = build_icd(&g).unwrap();
                let s = exact_ptolemaic_deletion(&g, &OracleBudget::default()).unwrap().set;
                let s = minimalize_deletion_set(&g, &s);
                let star = closure(&icd, &phi_image(&icd, &s));
                prop_assert!(icd.dag().downward_closure_violation(&star).is_none());
                let remaining: Vec<bool> = star.iter().map(|x| !x).collect();
                prop_assert!(icd.dag().underlying_is_forest(&remaining));
                let nodes: f64 = members(&star).iter().map(|&x| icd.weight(x)).sum();
                prop_assert!((nodes - g.weight_of(s.iter())).abs() <= 1e-9);
            }

            #[test]
            fn pipeline_output_is_ptolemaic_and_bounded(seed in any::<u64>(), n in 1usize..10, p in 0.1f64..0.8) {
                let g = erdos_renyi(&mut ChaCha8Rng::seed_from_u64(seed), n, p, (0.0, 10.0));
                let r = solve_ptolemaic_deletion(&g).unwrap();
                let rest = g.remove_vertices(&r.deleted).0;
                prop_assert!(is_ptolemaic(&rest).is_ok());
                prop_assert_eq!(is_ptolemaic_via_icd(&rest), Ok(true));
                let opt = exact_ptolemaic_deletion(&g, &OracleBudget::default()).unwrap().weight;
                prop_assert!(r.weight <= 68.0 * opt + 1e-9);
                let hit = exact_c4gem_hitting(&g, &OracleBudget::default()).unwrap().weight;
                prop_assert!(r.hitting.weight <= 5.0 * r.hitting.lp_value + 1e-9);
                prop_assert!(r.hitting.lp_value <= hit + 1e-7);
            }
        }
    }
}
