use serde::{Deserialize, Serialize};

use crate::fourier::DEFAULT_SUPPORT_THRESHOLD;
use crate::groups::DEFAULT_MAX_NODES;

/// Numerical knobs shared by the norm and verification code.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    /// Relative cutoff defining a "nonzero" Fourier coefficient.
    pub support_threshold: f64,
    /// Stop rule for grid refinement of non-polynomial integrands.
    pub refine_tol: f64,
    /// Largest quadrature rule any single norm may build.
    pub max_nodes: usize,
    /// Upper bound on band-limit doublings during refinement.
    pub max_refinements: u32,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            support_threshold: DEFAULT_SUPPORT_THRESHOLD,
            refine_tol: 1e-6,
            max_nodes: DEFAULT_MAX_NODES,
            max_refinements: 12,
        }
    }
}
