use super::{FvspInstance, FvspLpSolution, RoundingParams};

/// Slack when comparing `z_v` against `ε`.
pub(crate) const Z_SLACK: f64 = 1e-9;
/// Slack on each side of a θ breakpoint.
pub(crate) const THETA_SLACK: f64 = 1e-12;

/// Outcome of threshold rounding at one θ, before cleanup.
#[derive(Clone, Debug, PartialEq)]
pub struct Rounding {
    pub theta: f64,
    /// Nodes with `z_v ≥ ε`.
    pub step1: Vec<bool>,
    /// Nodes deleted through some arc's deletion interval, minus `step1`.
    pub step3: Vec<bool>,
    /// Arc indices each node points to, over arcs whose endpoints both
    /// survive step (i) and that delete nothing.
    pub pointers: Vec<Vec<usize>>,
}

impl Rounding {
    pub fn deleted(&self) -> Vec<bool> {
        self.step1.iter().zip(&self.step3).map(|(a, b)| *a || *b).collect()
    }
}

/// Rounds `lp` at threshold `theta`.
///
/// Step (i) deletes every node with `z_v ≥ ε`; the LP precedence rows make
/// this set downward-closed. Then for each arc `e = (u, v)` with both ends
/// still present: if `θ ∈ [x̄_ve − y_e, x̄_ve]`, `v` and all its descendants
/// are deleted; otherwise `v` points to `e` when `θ > x̄_ve` and `u` points to
/// `e` when `θ > x̄_ue`.
pub fn round_at(inst: &FvspInstance, lp: &FvspLpSolution, params: &RoundingParams, theta: f64) -> Rounding {
    let n = inst.n();
    let step1: Vec<bool> = lp.z.iter().map(|&z| z >= params.epsilon - Z_SLACK).collect();
    let mut direct = Vec::new();
    let mut pointers = vec![Vec::new(); n];
    for (i, &(u, v)) in inst.arcs().iter().enumerate() {
        if step1[u] || step1[v] {
            continue;
        }
        let head_bar = lp.x_bar(i, true);
        let low = head_bar - lp.y(inst, i);
        if theta >= low - THETA_SLACK && theta <= head_bar + THETA_SLACK {
            direct.push(v);
            continue;
        }
        if theta > head_bar + THETA_SLACK {
            pointers[v].push(i);
        }
        if theta > lp.x_bar(i, false) + THETA_SLACK {
            pointers[u].push(i);
        }
    }
    let reached = inst.dag().descendant_closure(&crate::dag::mask(n, direct));
    let step3 = reached.iter().zip(&step1).map(|(r, s)| *r && !*s).collect();
    Rounding { theta, step1, step3, pointers }
}

/// `{α, β}` together with every breakpoint `x̄_ve`, `x̄_ve − y_e`, `x̄_ue`
/// strictly inside `(α, β)`, sorted and deduplicated. Rounding behaves
/// identically on each open interval between consecutive entries.
pub(crate) fn breakpoints(inst: &FvspInstance, lp: &FvspLpSolution, params: &RoundingParams) -> Vec<f64> {
    let mut points = vec![params.alpha, params.beta];
    for i in 0..inst.m() {
        let head_bar = lp.x_bar(i, true);
        for t in [head_bar, head_bar - lp.y(inst, i), lp.x_bar(i, false)] {
            if t > params.alpha && t < params.beta {
                points.push(t);
            }
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// Breakpoints plus the midpoint of each pair of consecutive breakpoints;
/// at most `6m + 3` values, in increasing order.
pub fn theta_candidates(inst: &FvspInstance, lp: &FvspLpSolution, params: &RoundingParams) -> Vec<f64> {
    let points = breakpoints(inst, lp, params);
    let mut out = Vec::with_capacity(2 * points.len());
    for (i, &p) in points.iter().enumerate() {
        out.push(p);
        if let Some(&q) = points.get(i + 1) {
            out.push(p + (q - p) / 2.0);
        }
    }
    out
}

/// For each node, the total length of θ ∈ [α, β] at which step (iii)
/// deletes it.
pub fn deletion_measure(inst: &FvspInstance, lp: &FvspLpSolution, params: &RoundingParams) -> Vec<f64> {
    let points = breakpoints(inst, lp, params);
    let mut measure = vec![0.0; inst.n()];
    for pair in points.windows(2) {
        let r = round_at(inst, lp, params, pair[0] + (pair[1] - pair[0]) / 2.0);
        for (m, &hit) in measure.iter_mut().zip(&r.step3) {
            if hit {
                *m += pair[1] - pair[0];
            }
        }
    }
    measure
}
