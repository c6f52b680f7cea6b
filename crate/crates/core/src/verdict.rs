//! Stability verdicts from the winding number of the determinant curve, and
//! parameter sweeps over the CFL number and boundary offset.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::boundary::BoundarySpec;
use crate::error::{Error, Result};
use crate::kldet::{kl_curve, KlCurve};
use crate::scalar::Real;
use crate::scheme::SchemeTemplate;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Stable,
    Unstable,
    /// The curve gets too close to the origin to be trusted.
    Marginal,
    /// Scheme or boundary could not be set up, or the scheme is not Cauchy-stable.
    InvalidPrecondition,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Stable => "stable",
            Status::Unstable => "unstable",
            Status::Marginal => "marginal",
            Status::InvalidPrecondition => "invalid_precondition",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stable" => Ok(Status::Stable),
            "unstable" => Ok(Status::Unstable),
            "marginal" => Ok(Status::Marginal),
            "invalid_precondition" => Ok(Status::InvalidPrecondition),
            other => Err(Error::Parse(format!("unknown status `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub r: usize,
    /// Closest approach of the sampled curve to the origin.
    pub min_distance: Option<f64>,
    pub cauchy_worst_xi: Option<f64>,
    pub cauchy_worst_modulus: Option<f64>,
    pub curve_samples: usize,
    pub max_depth: u32,
    pub unresolved_segments: usize,
    pub ambiguous_selections: usize,
    pub note: Option<String>,
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={}", self.r)?;
        if let Some(d) = self.min_distance {
            write!(f, " min_distance={d:e}")?;
        }
        if let (Some(xi), Some(m)) = (self.cauchy_worst_xi, self.cauchy_worst_modulus) {
            write!(f, " cauchy_max=|gamma({xi:.6})|={m:.12}")?;
        }
        write!(
            f,
            " samples={} max_depth={} unresolved={} ambiguous={}",
            self.curve_samples, self.max_depth, self.unresolved_segments, self.ambiguous_selections
        )?;
        if let Some(note) = &self.note {
            write!(f, " note=\"{note}\"")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    /// Winding number of the curve around the origin, when it could be computed.
    pub winding: Option<i64>,
    /// `r - winding`: zeros of the determinant outside the unit disk.
    pub unstable_zeros: Option<i64>,
    pub status: Status,
    pub diagnostics: Diagnostics,
}

impl StabilityVerdict {
    fn invalid(diagnostics: Diagnostics, note: String) -> Self {
        StabilityVerdict {
            winding: None,
            unstable_zeros: None,
            status: Status::InvalidPrecondition,
            diagnostics: Diagnostics {
                note: Some(note),
                ..diagnostics
            },
        }
    }

    /// `status=<s> winding=<w> zeros=<z>`, with `-` for missing values.
    pub fn summary(&self) -> String {
        let show = |v: Option<i64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        format!(
            "status={} winding={} zeros={}",
            self.status,
            show(self.winding),
            show(self.unstable_zeros)
        )
    }
}

/// Outcome of [`trace`]: the curve and the verdict drawn from it.
pub struct Traced<T> {
    pub verdict: StabilityVerdict,
    pub curve: Option<KlCurve<T>>,
}

/// Build scheme and boundary, trace the determinant curve and classify it.
/// Errors never escape: they end up in the verdict's status and note.
pub fn trace<T: Real>(
    template: &SchemeTemplate,
    boundary: &BoundarySpec,
    lambda: f64,
    tol: &Tolerances,
) -> Traced<T> {
    let mut diag = Diagnostics::default();
    let invalid = |diag: Diagnostics, note: String| Traced {
        verdict: StabilityVerdict::invalid(diag, note),
        curve: None,
    };
    if !(lambda > 0.0) {
        return invalid(diag, format!("lambda must be positive, got {lambda}"));
    }
    let scheme = match template.build(T::lit(lambda)) {
        Ok(s) => s,
        Err(e) => return invalid(diag, e.to_string()),
    };
    diag.r = scheme.r();
    let cauchy = scheme.cauchy_check(tol.cauchy_samples, T::lit(tol.cauchy_tol));
    diag.cauchy_worst_xi = Some(cauchy.worst_xi.to_f64_lossy());
    diag.cauchy_worst_modulus = Some(cauchy.worst_modulus.to_f64_lossy());
    if !cauchy.stable {
        let e = Error::CauchyViolation {
            xi: cauchy.worst_xi.to_f64_lossy(),
            modulus: cauchy.worst_modulus.to_f64_lossy(),
        };
        return invalid(diag, e.to_string());
    }
    let bc = match boundary.build(&scheme) {
        Ok(bc) => bc,
        Err(e) => return invalid(diag, e.to_string()),
    };

    let marginal = |diag: Diagnostics, winding: Option<i64>, note: String| StabilityVerdict {
        winding,
        unstable_zeros: winding.map(|w| diag.r as i64 - w),
        status: Status::Marginal,
        diagnostics: Diagnostics {
            note: Some(note),
            ..diag
        },
    };

    let curve = match kl_curve(&scheme, &bc, tol.n_init, tol) {
        Ok(c) => c,
        Err(e) => {
            return Traced {
                verdict: marginal(diag, None, e.to_string()),
                curve: None,
            }
        }
    };
    diag.min_distance = Some(curve.min_distance().to_f64_lossy());
    diag.curve_samples = curve.samples.len();
    diag.max_depth = curve.max_depth();
    diag.unresolved_segments = curve.unresolved_segments;
    diag.ambiguous_selections = curve.ambiguous_selections;
    if curve.ambiguous_selections > 0 {
        diag.note = Some("a root cluster on the unit circle was split".into());
    }

    let verdict = match curve.winding() {
        Err(e) => marginal(diag, None, e.to_string()),
        Ok(w) => {
            let r = diag.r as i64;
            let zeros = r - w.index;
            if !w.certified {
                marginal(diag, Some(w.index), "curve refinement did not converge".into())
            } else if w.min_distance < tol.origin_floor {
                marginal(diag, Some(w.index), "curve passes through the origin".into())
            } else if !(0..=r).contains(&zeros) {
                marginal(diag, Some(w.index), format!("zero count {zeros} outside 0..={r}"))
            } else if lambda < tol.lambda_min {
                marginal(diag, Some(w.index), format!("lambda below {}", tol.lambda_min))
            } else {
                StabilityVerdict {
                    winding: Some(w.index),
                    unstable_zeros: Some(zeros),
                    status: if zeros == 0 { Status::Stable } else { Status::Unstable },
                    diagnostics: diag,
                }
            }
        }
    };
    Traced {
        verdict,
        curve: Some(curve),
    }
}

/// Stability check in double precision.
pub fn check(template: &SchemeTemplate, boundary: &BoundarySpec, lambda: f64, tol: &Tolerances) -> StabilityVerdict {
    check_as::<f64>(template, boundary, lambda, tol)
}

pub fn check_as<T: Real>(
    template: &SchemeTemplate,
    boundary: &BoundarySpec,
    lambda: f64,
    tol: &Tolerances,
) -> StabilityVerdict {
    trace::<T>(template, boundary, lambda, tol).verdict
}

/// Verdicts on a `lambda x sigma` grid, stored row-major in lambda.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub lambda_values: Vec<f64>,
    pub sigma_values: Vec<f64>,
    pub results: Vec<StabilityVerdict>,
}

impl SweepGrid {
    pub fn get(&self, i_lambda: usize, i_sigma: usize) -> &StabilityVerdict {
        &self.results[i_lambda * self.sigma_values.len() + i_sigma]
    }

    /// `(lambda, sigma, verdict)` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, &StabilityVerdict)> {
        let n = self.sigma_values.len();
        self.results
            .iter()
            .enumerate()
            .map(move |(k, v)| (self.lambda_values[k / n], self.sigma_values[k % n], v))
    }
}

/// Run [`check`] on every `(lambda, sigma)` pair. The boundary for each cell is
/// `boundary.with_sigma(sigma)`. Cells are evaluated in parallel.
pub fn sweep(
    template: &SchemeTemplate,
    boundary: &BoundarySpec,
    lambda_values: &[f64],
    sigma_values: &[f64],
    tol: &Tolerances,
) -> Result<SweepGrid> {
    if lambda_values.is_empty() || sigma_values.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let n = sigma_values.len();
    let results = (0..lambda_values.len() * n)
        .into_par_iter()
        .map(|k| {
            let bc = boundary.with_sigma(sigma_values[k % n]);
            check(template, &bc, lambda_values[k / n], tol)
        })
        .collect();
    Ok(SweepGrid {
        lambda_values: lambda_values.to_vec(),
        sigma_values: sigma_values.to_vec(),
        results,
    })
}

/// `count` equispaced values from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|k| {
                if k + 1 == count {
                    end
                } else {
                    start + (end - start) * k as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}
