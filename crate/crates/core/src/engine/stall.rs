use crate::lp::Tolerances;
use crate::scalar::Scalar;

/// Rule in force for the next iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleOverride {
    /// Use the configured rule.
    Configured,
    /// Least-index entering and leaving choices until the objective drops.
    Bland,
}

/// Switches to Bland's rule after `window` consecutive iterations without a
/// strict objective decrease, and back once the objective decreases again.
#[derive(Clone, Debug)]
pub struct AntiStall {
    window: usize,
    stalled: usize,
    mode: RuleOverride,
}

impl AntiStall {
    pub fn new(window: usize) -> Self {
        Self {
            window: window.max(1),
            stalled: 0,
            mode: RuleOverride::Configured,
        }
    }

    pub fn mode(&self) -> RuleOverride {
        self.mode
    }

    pub fn observe<S: Scalar>(&mut self, z_before: &S, z_after: &S, tol: &Tolerances<S>) -> RuleOverride {
        if tol.decreased(z_before, z_after) {
            self.stalled = 0;
            self.mode = RuleOverride::Configured;
        } else {
            self.stalled += 1;
            if self.stalled >= self.window {
                self.mode = RuleOverride::Bland;
            }
        }
        self.mode
    }
}
