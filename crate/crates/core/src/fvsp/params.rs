use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance when checking the two parameter inequalities. The published
/// constants are rounded to six digits and miss `3(1−β) ≥ 1 + 8ε` by about
/// 1.4e-6, so an exact check would reject the defaults.
pub const PARAM_SLACK: f64 = 1e-5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("parameters must lie in (0, 1): eps = {epsilon}, alpha = {alpha}, beta = {beta}")]
    OutOfRange { epsilon: f64, alpha: f64, beta: f64 },
    #[error("alpha < beta violated: alpha = {alpha}, beta = {beta}")]
    NotOrdered { alpha: f64, beta: f64 },
    #[error("2*alpha >= 1 + eps violated by {0:e}")]
    First(f64),
    #[error("3*(1 - beta) >= 1 + 8*eps violated by {0:e}")]
    Second(f64),
}

/// Threshold-rounding parameters: `ε` for direct deletion, `[α, β]` for θ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundingParams {
    pub epsilon: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl Default for RoundingParams {
    fn default() -> Self {
        RoundingParams { epsilon: 0.0293258, alpha: 0.514663, beta: 0.588465 }
    }
}

impl RoundingParams {
    /// Checks the parameter constraints up to [`PARAM_SLACK`].
    pub fn new(epsilon: f64, alpha: f64, beta: f64) -> Result<Self, ParamError> {
        let p = RoundingParams { epsilon, alpha, beta };
        p.validate_with(PARAM_SLACK)?;
        Ok(p)
    }

    /// `2α − 1 − ε`; nonnegative when the first constraint holds.
    pub fn first_margin(&self) -> f64 {
        2.0 * self.alpha - 1.0 - self.epsilon
    }

    /// `3(1 − β) − 1 − 8ε`; nonnegative when the second constraint holds.
    pub fn second_margin(&self) -> f64 {
        3.0 * (1.0 - self.beta) - 1.0 - 8.0 * self.epsilon
    }

    /// `1/ε + 2/(β − α) + 1`.
    pub fn ratio_bound(&self) -> f64 {
        1.0 / self.epsilon + 2.0 / (self.beta - self.alpha) + 1.0
    }

    pub fn validate_with(&self, slack: f64) -> Result<(), ParamError> {
        let RoundingParams { epsilon, alpha, beta } = *self;
        let inside = |x: f64| x > 0.0 && x < 1.0;
        if !(inside(epsilon) && inside(alpha) && inside(beta)) {
            return Err(ParamError::OutOfRange { epsilon, alpha, beta });
        }
        if alpha >= beta {
            return Err(ParamError::NotOrdered { alpha, beta });
        }
        if self.first_margin() < -slack {
            return Err(ParamError::First(-self.first_margin()));
        }
        if self.second_margin() < -slack {
            return Err(ParamError::Second(-self.second_margin()));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        self.validate_with(PARAM_SLACK)
    }
}
