use serde::Serialize;

use super::FvspInstance;
use crate::dag::Node;
use crate::lp::{Cmp, LinearProgram, LpError};

/// The FVSP relaxation. Variable `v` is `z_v`; arc `i = (u, v)` owns
/// `x_ue` at `n + 2i` and `x_ve` at `n + 2i + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FvspLp {
    n: usize,
    arcs: Vec<(Node, Node)>,
    program: LinearProgram,
}

impl FvspLp {
    pub fn program(&self) -> &LinearProgram {
        &self.program
    }

    pub fn num_variables(&self) -> usize {
        self.program.num_vars()
    }

    pub fn num_equalities(&self) -> usize {
        self.program.count(Cmp::Eq)
    }

    pub fn num_inequalities(&self) -> usize {
        self.program.count(Cmp::Le) + self.program.count(Cmp::Ge)
    }

    /// Index of `x_ue` (`head == false`) or `x_ve` (`head == true`) for arc `i`.
    pub fn x_var(&self, i: usize, head: bool) -> usize {
        self.n + 2 * i + usize::from(head)
    }
}

pub fn build_lp(inst: &FvspInstance) -> FvspLp {
    let n = inst.n();
    let mut program = LinearProgram::new();
    for v in 0..n {
        program.add_var(inst.weights()[v], (0.0, 1.0));
    }
    for _ in inst.arcs() {
        program.add_var(0.0, (0.0, 1.0));
        program.add_var(0.0, (0.0, 1.0));
    }
    let x = |i: usize, head: bool| n + 2 * i + usize::from(head);
    for (i, &(_, v)) in inst.arcs().iter().enumerate() {
        program.add_constraint(vec![(v, 1.0), (x(i, false), 1.0), (x(i, true), 1.0)], Cmp::Eq, 1.0);
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in inst.arcs().iter().enumerate() {
        incident[u].push(x(i, false));
        incident[v].push(x(i, true));
    }
    for (v, vars) in incident.iter().enumerate() {
        let mut terms = vec![(v, 1.0)];
        terms.extend(vars.iter().map(|&j| (j, 1.0)));
        program.add_constraint(terms, Cmp::Le, 1.0);
    }
    for &(u, v) in inst.arcs() {
        program.add_constraint(vec![(u, 1.0), (v, -1.0)], Cmp::Le, 0.0);
    }
    FvspLp { n, arcs: inst.arcs().to_vec(), program }
}

/// Optimal fractional point of the relaxation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FvspLpSolution {
    pub z: Vec<f64>,
    /// `[x_ue, x_ve]` per arc `e = (u, v)`.
    pub x: Vec<[f64; 2]>,
    pub objective: f64,
    pub max_residual: f64,
}

impl FvspLpSolution {
    /// `1 − x_ve` for the head (`head == true`) or `1 − x_ue` for the tail.
    pub fn x_bar(&self, arc: usize, head: bool) -> f64 {
        1.0 - self.x[arc][usize::from(head)]
    }

    /// `y_e = z_v − z_u` for arc `e = (u, v)`.
    pub fn y(&self, inst: &FvspInstance, arc: usize) -> f64 {
        let (u, v) = inst.arcs()[arc];
        self.z[v] - self.z[u]
    }

    /// Largest violation of the relaxation's constraints and bounds.
    pub fn residual(&self, inst: &FvspInstance) -> f64 {
        let lp = build_lp(inst);
        let mut values = self.z.clone();
        values.extend(self.x.iter().flatten());
        lp.program.max_residual(&values)
    }
}

pub fn solve_lp(model: &FvspLp) -> Result<FvspLpSolution, LpError> {
    let sol = model.program.solve()?;
    let z = sol.values[..model.n].to_vec();
    let x = (0..model.arcs.len())
        .map(|i| [sol.values[model.x_var(i, false)], sol.values[model.x_var(i, true)]])
        .collect();
    Ok(FvspLpSolution { z, x, objective: sol.objective, max_residual: sol.max_residual })
}
