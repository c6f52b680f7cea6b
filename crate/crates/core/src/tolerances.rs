use crate::poly::{DEFAULT_CIRCLE_SAMPLES, DEFAULT_ROOT_TOL};
use crate::scheme::{DEFAULT_CAUCHY_SAMPLES, DEFAULT_CAUCHY_TOL, DEFAULT_TOL_UNIT};

/// Numerical knobs shared by root selection, curve tracing and the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Residual target for the polynomial root finder.
    pub root_tol: f64,
    /// Half-width of the band around the unit circle treated as "on the circle".
    pub tol_unit: f64,
    /// Roots closer than this are considered the same (multiple) root.
    pub cluster_tol: f64,
    pub cauchy_samples: usize,
    pub cauchy_tol: f64,
    /// Initial number of curve samples.
    pub n_init: usize,
    /// Maximum number of bisections of an initial curve interval.
    pub max_depth: u32,
    /// Curves passing closer than this to the origin give a marginal verdict.
    pub origin_floor: f64,
    /// Samples used to estimate the minimum of `|P|` on a small circle.
    pub circle_samples: usize,
    /// Upper bound for the perturbation disk radius around a root on the circle.
    pub eps_cap: f64,
    /// CFL numbers below this are reported as marginal.
    pub lambda_min: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root_tol: DEFAULT_ROOT_TOL,
            tol_unit: DEFAULT_TOL_UNIT,
            cluster_tol: 1e-7,
            cauchy_samples: DEFAULT_CAUCHY_SAMPLES,
            cauchy_tol: DEFAULT_CAUCHY_TOL,
            n_init: 256,
            max_depth: 20,
            origin_floor: 1e-13,
            circle_samples: DEFAULT_CIRCLE_SAMPLES,
            eps_cap: 0.1,
            lambda_min: 0.01,
        }
    }
}
