//! Small dense-ish linear programs, solved with the `microlp` simplex.
//!
//! After solving, each value within 1e-9 of a rational with a small
//! denominator is snapped to it. The snapped point is kept when it is still
//! feasible to 1e-12 and no worse in objective; otherwise the raw simplex
//! output is returned. Downstream rounding compares LP values against
//! breakpoints, and snapping keeps ties like `1 - x = x'` from depending on
//! the last bits of the simplex arithmetic.

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Eq,
    Le,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub terms: Vec<(usize, f64)>,
    pub cmp: Cmp,
    pub rhs: f64,
}

impl Constraint {
    fn lhs(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|&(i, c)| c * values[i]).sum()
    }

    /// Amount by which `values` violate this constraint (0 when satisfied).
    pub fn violation(&self, values: &[f64]) -> f64 {
        let lhs = self.lhs(values);
        match self.cmp {
            Cmp::Eq => (lhs - self.rhs).abs(),
            Cmp::Le => (lhs - self.rhs).max(0.0),
            Cmp::Ge => (self.rhs - lhs).max(0.0),
        }
    }
}

/// Minimization problem over bounded variables.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LinearProgram {
    objective: Vec<f64>,
    bounds: Vec<(f64, f64)>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub values: Vec<f64>,
    pub objective: f64,
    /// Largest constraint or bound violation of `values`.
    pub max_residual: f64,
    pub snapped: bool,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("LP solver failure: {0}")]
    Solver(String),
}

const SNAP_DISTANCE: f64 = 1e-9;
const SNAP_MAX_DENOMINATOR: i64 = 10_000;
const SNAP_RESIDUAL: f64 = 1e-12;

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable and returns its index.
    pub fn add_var(&mut self, cost: f64, bounds: (f64, f64)) -> usize {
        self.objective.push(cost);
        self.bounds.push(bounds);
        self.objective.len() - 1
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, f64)>, cmp: Cmp, rhs: f64) {
        self.constraints.push(Constraint { terms, cmp, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn count(&self, cmp: Cmp) -> usize {
        self.constraints.iter().filter(|c| c.cmp == cmp).count()
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().zip(values).map(|(c, v)| c * v).fold(0.0, |a, t| a + t)
    }

    pub fn max_residual(&self, values: &[f64]) -> f64 {
        let bounds = self
            .bounds
            .iter()
            .zip(values)
            .map(|(&(lo, hi), &v)| (lo - v).max(v - hi).max(0.0));
        let rows = self.constraints.iter().map(|c| c.violation(values));
        bounds.chain(rows).fold(0.0, f64::max)
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        if self.objective.is_empty() {
            let feasible = self.constraints.iter().all(|c| c.violation(&[]) <= SNAP_RESIDUAL);
            return if feasible {
                Ok(LpSolution { values: Vec::new(), objective: 0.0, max_residual: 0.0, snapped: false })
            } else {
                Err(LpError::Infeasible)
            };
        }
        let mut problem = Problem::new(OptimizationDirection::Minimize);
        let vars: Vec<_> = self
            .objective
            .iter()
            .zip(&self.bounds)
            .map(|(&c, &b)| problem.add_var(c, b))
            .collect();
        for c in &self.constraints {
            let expr: Vec<_> = c.terms.iter().map(|&(i, coeff)| (vars[i], coeff)).collect();
            let op = match c.cmp {
                Cmp::Eq => ComparisonOp::Eq,
                Cmp::Le => ComparisonOp::Le,
                Cmp::Ge => ComparisonOp::Ge,
            };
            problem.add_constraint(expr, op, c.rhs);
        }
        let solution = problem
            .solve()
            .map_err(|e| match e {
                microlp::Error::Infeasible => LpError::Infeasible,
                microlp::Error::Unbounded => LpError::Unbounded,
                other => LpError::Solver(other.to_string()),
            })?
            .into_solution()
            .map_err(|_| LpError::Solver("solve interrupted".into()))?;
        let raw: Vec<f64> = vars.iter().map(|&v| solution.var_value(v)).collect();
        Ok(self.polish(raw))
    }

    fn polish(&self, raw: Vec<f64>) -> LpSolution {
        let raw_objective = self.objective_value(&raw);
        let snapped: Vec<f64> = raw.iter().map(|&v| snap(v)).collect();
        let snapped_objective = self.objective_value(&snapped);
        let residual = self.max_residual(&snapped);
        if residual <= SNAP_RESIDUAL && snapped_objective <= raw_objective + SNAP_DISTANCE {
            LpSolution { values: snapped, objective: snapped_objective, max_residual: residual, snapped: true }
        } else {
            let max_residual = self.max_residual(&raw);
            LpSolution { values: raw, objective: raw_objective, max_residual, snapped: false }
        }
    }
}

/// Nearest rational with denominator at most [`SNAP_MAX_DENOMINATOR`], if it
/// lies within [`SNAP_DISTANCE`]; `x` unchanged otherwise.
fn snap(x: f64) -> f64 {
    match best_rational(x, SNAP_MAX_DENOMINATOR) {
        Some((p, q)) if (x - p as f64 / q as f64).abs() <= SNAP_DISTANCE => p as f64 / q as f64,
        _ => x,
    }
}

/// Last continued-fraction convergent of `x` whose denominator fits.
fn best_rational(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e9 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let (p2, q2) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rest - a;
        if frac.abs() < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    (q1 > 0).then_some((p1, q1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convergents() {
        assert_eq!(best_rational(0.5, 100), Some((1, 2)));
        assert_eq!(best_rational(1.0 / 3.0 + 1e-12, 100), Some((1, 3)));
        assert_eq!(best_rational(2.0, 100), Some((2, 1)));
        assert_eq!(snap(0.25 + 3e-10), 0.25);
        assert_eq!(snap(0.123456789123), 0.123456789123);
    }

    #[test]
    fn small_covering_lp() {
        // min x + y  s.t.  x + y >= 1, x - y = 0
        let mut lp = LinearProgram::new();
        let x = lp.add_var(1.0, (0.0, 1.0));
        let y = lp.add_var(1.0, (0.0, 1.0));
        lp.add_constraint(vec![(x, 1.0), (y, 1.0)], Cmp::Ge, 1.0);
        lp.add_constraint(vec![(x, 1.0), (y, -1.0)], Cmp::Eq, 0.0);
        let sol = lp.solve().unwrap();
        assert_eq!(sol.values, vec![0.5, 0.5]);
        assert_eq!(sol.objective, 1.0);
        assert!(sol.snapped);
    }

    #[test]
    fn infeasible_is_reported() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(1.0, (0.0, 1.0));
        lp.add_constraint(vec![(x, 1.0)], Cmp::Ge, 2.0);
        assert_eq!(lp.solve(), Err(LpError::Infeasible));
    }

    #[test]
    fn empty_program() {
        let sol = LinearProgram::new().solve().unwrap();
        assert!(sol.values.is_empty());
        assert_eq!(sol.objective, 0.0);
    }

    #[test]
    fn triangle_vertex_cover_is_half_integral() {
        let mut lp = LinearProgram::new();
        let v: Vec<usize> = (0..3).map(|_| lp.add_var(1.0, (0.0, 1.0))).collect();
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            lp.add_constraint(vec![(v[a], 1.0), (v[b], 1.0)], Cmp::Ge, 1.0);
        }
        let sol = lp.solve().unwrap();
        assert!((sol.objective - 1.5).abs() < 1e-12);
        assert!(sol.max_residual <= 1e-12);
    }
}
