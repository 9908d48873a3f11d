use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by every check in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Max-entry deviation allowed between a matrix and its adjoint.
    pub hermiticity: f64,
    /// Eigenvalues down to `-psd` still count as non-negative.
    pub psd: f64,
    /// Generic agreement tolerance between two computed values.
    pub comparison: f64,
    /// Slack added to inequality bounds (|⟨B⟩| ≤ 1, |⟨Z⟩| ≤ 1, quadruples ≤ 2).
    pub bound: f64,
    /// Phase-1 objective and residual level treated as feasible.
    pub feasibility: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermiticity: 1e-12,
        psd: 1e-10,
        comparison: 1e-10,
        bound: 1e-12,
        feasibility: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Outcome of comparing `|value|` against an inequality bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundVerdict {
    Satisfied,
    Violated,
}

impl BoundVerdict {
    /// Satisfied iff `|value| ≤ bound + Tolerances::DEFAULT.bound`.
    pub fn from_abs(value: f64, bound: f64) -> Self {
        if value.abs() <= bound + Tolerances::DEFAULT.bound {
            BoundVerdict::Satisfied
        } else {
            BoundVerdict::Violated
        }
    }

    pub fn is_satisfied(self) -> bool {
        self == BoundVerdict::Satisfied
    }
}
