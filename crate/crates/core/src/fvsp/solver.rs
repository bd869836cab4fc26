use serde::Serialize;
use thiserror::Error;

use super::rounding::{round_at, theta_candidates, Rounding};
use super::{build_lp, cleanup_unicyclic, solve_lp, FvspError, FvspInstance, FvspLpSolution, RoundingParams};
use crate::dag::{mask, members, Node};

/// Weight removed by each stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct StageWeights {
    pub step1: f64,
    pub step3: f64,
    pub cleanup: f64,
}

/// Full rounding outcome at the chosen θ.
#[derive(Clone, Debug, PartialEq)]
pub struct FvspOutcome {
    pub rounding: Rounding,
    pub cleanup: Vec<bool>,
    pub deleted: Vec<bool>,
    pub weight: f64,
    pub stages: StageWeights,
}

impl FvspOutcome {
    pub fn theta(&self) -> f64 {
        self.rounding.theta
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FvspSolution {
    pub deleted: Vec<Node>,
    pub weight: f64,
    pub theta: f64,
    pub stages: StageWeights,
    pub lp_value: f64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FvspViolation {
    #[error("node {0} is out of range")]
    OutOfRange(Node),
    #[error("node {node} is deleted but its descendant {descendant} is not")]
    NotDownwardClosed { node: Node, descendant: Node },
    #[error("remainder contains the undirected cycle {0:?}")]
    Cycle(Vec<Node>),
}

/// Rounding followed by cycle cleanup at a single θ.
pub fn evaluate_theta(inst: &FvspInstance, lp: &FvspLpSolution, params: &RoundingParams, theta: f64) -> Result<FvspOutcome, FvspError> {
    let rounding = round_at(inst, lp, params, theta);
    let after = rounding.deleted();
    let remaining: Vec<bool> = after.iter().map(|d| !d).collect();
    let cleanup = cleanup_unicyclic(inst, &remaining, theta)?;
    let deleted: Vec<bool> = after.iter().zip(&cleanup).map(|(a, b)| *a || *b).collect();
    let stages = StageWeights {
        step1: inst.weight_of(&rounding.step1),
        step3: inst.weight_of(&rounding.step3),
        cleanup: inst.weight_of(&cleanup),
    };
    let weight = inst.weight_of(&deleted);
    Ok(FvspOutcome { rounding, cleanup, deleted, weight, stages })
}

fn better(candidate: &FvspOutcome, best: &FvspOutcome) -> bool {
    let tol = 1e-9 * best.weight.abs().max(1.0);
    if candidate.weight < best.weight - tol {
        return true;
    }
    candidate.weight <= best.weight + tol && members(&candidate.deleted) < members(&best.deleted)
}

/// Evaluates rounding plus cleanup at every θ candidate and keeps the
/// cheapest result; ties go to the lexicographically smallest deleted set,
/// then to the smallest θ.
pub fn derandomize(inst: &FvspInstance, lp: &FvspLpSolution, params: &RoundingParams) -> Result<FvspOutcome, FvspError> {
    let mut best: Option<FvspOutcome> = None;
    for theta in theta_candidates(inst, lp, params) {
        let outcome = evaluate_theta(inst, lp, params, theta)?;
        if best.as_ref().is_none_or(|b| better(&outcome, b)) {
            best = Some(outcome);
        }
    }
    Ok(best.expect("alpha and beta are always candidates"))
}

pub fn solve_fvsp(inst: &FvspInstance, params: &RoundingParams) -> Result<FvspSolution, FvspError> {
    inst.validate()?;
    params.validate()?;
    let lp = solve_lp(&build_lp(inst))?;
    let outcome = derandomize(inst, &lp, params)?;
    let deleted = members(&outcome.deleted);
    verify_fvsp_solution(inst, &deleted)?;
    Ok(FvspSolution {
        deleted,
        weight: outcome.weight,
        theta: outcome.theta(),
        stages: outcome.stages,
        lp_value: lp.objective,
    })
}

/// Deleted set is downward-closed and the remainder is an undirected forest.
pub fn verify_fvsp_solution(inst: &FvspInstance, deleted: &[Node]) -> Result<(), FvspViolation> {
    if let Some(&v) = deleted.iter().find(|&&v| v >= inst.n()) {
        return Err(FvspViolation::OutOfRange(v));
    }
    let set = mask(inst.n(), deleted.iter().copied());
    if let Some((node, descendant)) = inst.dag().downward_closure_violation(&set) {
        return Err(FvspViolation::NotDownwardClosed { node, descendant });
    }
    let remaining: Vec<bool> = set.iter().map(|d| !d).collect();
    match inst.dag().find_undirected_cycle(&remaining) {
        Some(cycle) => Err(FvspViolation::Cycle(cycle)),
        None => Ok(()),
    }
}
