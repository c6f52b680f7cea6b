//! Explicit one-step interior schemes `U_j^{n+1} = sum_{k=-r}^{p} a_k U_{j+k}^n`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, RootSet};
use crate::scalar::{Field, Real};

pub const DEFAULT_CAUCHY_SAMPLES: usize = 4096;
pub const DEFAULT_CAUCHY_TOL: f64 = 1e-10;
/// Half-width of the band around `|k| = 1` in which a root is considered on the circle.
pub const DEFAULT_TOL_UNIT: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Scheme<T> {
    r: usize,
    p: usize,
    /// `a_{-r}, ..., a_p`
    coeffs: Vec<T>,
    lambda: T,
}

/// Outcome of the von Neumann check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyReport<T> {
    pub stable: bool,
    /// Sample frequency where `|gamma|` is largest.
    pub worst_xi: T,
    pub worst_modulus: T,
}

impl<T: Real> Scheme<T> {
    /// Build a scheme from `a_{-r}, ..., a_p`.
    ///
    /// The outermost coefficients must be nonzero (only on sides with a nonzero
    /// width) and the stencil must be consistent, `sum a_k = 1`.
    pub fn new(r: usize, p: usize, coeffs: Vec<T>, lambda: T) -> Result<Self> {
        if coeffs.len() != r + p + 1 {
            return Err(Error::InvalidScheme(format!(
                "expected {} coefficients for r = {r}, p = {p}, got {}",
                r + p + 1,
                coeffs.len()
            )));
        }
        if r > 0 && coeffs[0].is_zero() {
            return Err(Error::InvalidScheme("a_{-r} must be nonzero".into()));
        }
        if p > 0 && coeffs[r + p].is_zero() {
            return Err(Error::InvalidScheme("a_p must be nonzero".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidScheme("non-finite coefficient".into()));
        }
        let sum: T = coeffs.iter().copied().sum();
        let tol = T::lit(1e-12).max(T::lit(64.0) * T::epsilon());
        if (sum - T::one()).abs() > tol {
            return Err(Error::InvalidScheme(format!(
                "inconsistent stencil: coefficients sum to {sum}"
            )));
        }
        Ok(Scheme {
            r,
            p,
            coeffs,
            lambda,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// `a_{-r}, ..., a_p`
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `a_k` for `k` in `-r..=p`, zero outside the stencil.
    pub fn coeff(&self, k: isize) -> T {
        let idx = k + self.r as isize;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            T::zero()
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// `gamma(xi) = sum a_k e^{i k xi}`
    pub fn symbol(&self, xi: T) -> Complex<T> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let k = T::lit(i as f64 - self.r as f64);
                Complex::from_polar(a, k * xi)
            })
            .fold(Complex::zero(), |acc, x| acc + x)
    }

    pub fn cauchy_check(&self, n_samples: usize, tol: T) -> CauchyReport<T> {
        debug_assert!(n_samples >= 256);
        let n = n_samples.max(1);
        let mut worst_xi = T::zero();
        let mut worst_modulus = T::neg_infinity();
        for k in 0..n {
            let xi = T::TAU() * T::lit(k as f64) / T::lit(n as f64);
            let m = self.symbol(xi).norm();
            if m > worst_modulus {
                worst_modulus = m;
                worst_xi = xi;
            }
        }
        CauchyReport {
            stable: worst_modulus <= T::one() + tol,
            worst_xi,
            worst_modulus,
        }
    }

    pub fn is_cauchy_stable(&self, n_samples: usize, tol: T) -> bool {
        self.cauchy_check(n_samples, tol).stable
    }

    /// `P_z(k) = sum_k a_k k^{r+k} - z k^r`, of degree `r + p`.
    pub fn characteristic_polynomial(&self, z: Complex<T>) -> Polynomial<T> {
        let mut coeffs: Vec<Complex<T>> = self
            .coeffs
            .iter()
            .map(|&a| Complex::new(a, T::zero()))
            .collect();
        coeffs[self.r] -= z;
        Polynomial::new(coeffs)
    }

    /// Split roots of `P_z` for `|z| > 1` into the `r` inside the unit disk and
    /// the `p` outside it.
    pub fn hersh_split(
        &self,
        z: Complex<T>,
        roots: &RootSet<T>,
        tol_unit: T,
    ) -> Result<(Vec<Complex<T>>, Vec<Complex<T>>)> {
        let failure = |reason: String| Error::SeparationFailure {
            z: format!("{z}"),
            reason,
        };
        if z.norm() <= T::one() + tol_unit {
            return Err(failure("z is not strictly outside the unit disk".into()));
        }
        let mut inside = Vec::with_capacity(self.r);
        let mut outside = Vec::with_capacity(self.p);
        for &k in &roots.roots {
            let m = k.norm();
            if (T::one() - m).abs() <= tol_unit {
                return Err(failure(format!("root {k} lies on the unit circle")));
            }
            if m < T::one() {
                inside.push(k);
            } else {
                outside.push(k);
            }
        }
        if inside.len() != self.r || outside.len() != self.p {
            return Err(failure(format!(
                "found {} roots inside and {} outside, expected ({}, {})",
                inside.len(),
                outside.len(),
                self.r,
                self.p
            )));
        }
        Ok((inside, outside))
    }
}

/// Built-in stencils, parameterised by the CFL number.
#[derive(Debug, Clone, PartialEq)]
pub enum SchemeTemplate {
    /// First-order upwind: `a_{-1} = lambda, a_0 = 1 - lambda`.
    Upwind,
    /// `(U_{j-1} + U_{j+1}) / 2`, independent of lambda.
    NaiveAverage,
    /// Third-order scheme with `r = 2, p = 1`.
    O3,
    /// Fifth-order Lax-Wendroff with `r = 3, p = 2`.
    Lw5,
    /// Fixed user stencil `a_{-r}, ..., a_p`; lambda is only recorded.
    Custom { r: usize, p: usize, coeffs: Vec<f64> },
}

impl SchemeTemplate {
    pub fn name(&self) -> &'static str {
        match self {
            SchemeTemplate::Upwind => "upwind",
            SchemeTemplate::NaiveAverage => "naive_average",
            SchemeTemplate::O3 => "o3",
            SchemeTemplate::Lw5 => "lw5",
            SchemeTemplate::Custom { .. } => "custom",
        }
    }

    /// Documented CFL interval `(lo, hi]` on which the template is Cauchy-stable.
    /// Not enforced.
    pub fn validity_interval(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    /// `(r, p, [a_{-r}, ..., a_p])` at the given CFL number, in any field.
    ///
    /// Outermost coefficients that vanish (O3 and LW5 degenerate to a pure shift
    /// at `lambda = 1`) are dropped, shrinking the stencil.
    pub fn stencil<T: Field>(&self, lambda: T) -> (usize, usize, Vec<T>) {
        let l = lambda;
        let q = |n: i64, d: i64| T::ratio(n, d);
        let one = T::one();
        let (r, p, coeffs) = match self {
            SchemeTemplate::Upwind => (1, 0, vec![l.clone(), one - l]),
            SchemeTemplate::NaiveAverage => (1, 1, vec![q(1, 2), T::zero(), q(1, 2)]),
            SchemeTemplate::O3 => {
                let l2 = l.clone() * l.clone();
                let l3 = l2.clone() * l.clone();
                (
                    2,
                    1,
                    vec![
                        l3.clone() * q(1, 6) - l.clone() * q(1, 6),
                        l.clone() + l2.clone() * q(1, 2) - l3.clone() * q(1, 2),
                        one - l.clone() * q(1, 2) - l2.clone() + l3.clone() * q(1, 2),
                        l2 * q(1, 2) - l3 * q(1, 6) - l * q(1, 3),
                    ],
                )
            }
            SchemeTemplate::Lw5 => {
                let f = |shift: i64| l.clone() + T::from_i64(shift).expect("small integer");
                let lam = l.clone();
                let l2 = l.clone() * l.clone();
                let l3 = l2.clone() * l.clone();
                let l4 = l3.clone() * l.clone();
                let centre_poly = l4 - l3 * q(3, 1) - l2.clone() * q(5, 1) + l.clone() * q(15, 1)
                    + q(4, 1);
                (
                    3,
                    2,
                    vec![
                        lam.clone() * f(-2) * f(-1) * f(1) * f(2) * q(1, 120),
                        -(lam.clone() * f(-1) * f(-3) * f(1) * f(2)) * q(1, 24),
                        lam.clone() * f(-2) * f(-3) * f(1) * f(2) * q(1, 12),
                        one - lam.clone() * centre_poly * q(1, 12),
                        lam.clone() * f(-1) * f(-2) * f(-3) * f(2) * q(1, 24),
                        -(lam * f(-1) * f(-2) * f(-3) * f(1)) * q(1, 120),
                    ],
                )
            }
            SchemeTemplate::Custom { r, p, coeffs } => (
                *r,
                *p,
                coeffs
                    .iter()
                    .map(|&c| T::from_f64(c).expect("finite coefficient"))
                    .collect(),
            ),
        };
        if matches!(self, SchemeTemplate::Custom { .. }) {
            return (r, p, coeffs);
        }
        trim_vanishing_ends(r, p, coeffs)
    }

    pub fn build<T: Real>(&self, lambda: T) -> Result<Scheme<T>> {
        let (r, p, coeffs) = self.stencil(lambda);
        Scheme::new(r, p, coeffs, lambda)
    }
}

fn trim_vanishing_ends<T: Field>(
    mut r: usize,
    mut p: usize,
    mut coeffs: Vec<T>,
) -> (usize, usize, Vec<T>) {
    let scale = coeffs
        .iter()
        .map(Field::magnitude)
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    let negligible = |c: &T| {
        c.is_zero() || c.magnitude() <= T::pivot_threshold() * T::ratio(1, 10) * scale.clone()
    };
    while p > 0 && negligible(&coeffs[r + p]) {
        coeffs.pop();
        p -= 1;
    }
    while r > 0 && negligible(&coeffs[0]) {
        coeffs.remove(0);
        r -= 1;
    }
    (r, p, coeffs)
}

impl fmt::Display for SchemeTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeTemplate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "upwind" => Ok(SchemeTemplate::Upwind),
            "naive_average" | "naive-average" | "average" => Ok(SchemeTemplate::NaiveAverage),
            "o3" => Ok(SchemeTemplate::O3),
            "lw5" => Ok(SchemeTemplate::Lw5),
            other => Err(Error::Parse(format!("unknown scheme template `{other}`"))),
        }
    }
}

/// Parse the one-line custom stencil format `r p a_{-r} ... a_p`.
pub fn parse_custom_stencil(text: &str) -> Result<SchemeTemplate> {
    let mut tokens = text.split_whitespace();
    let mut next_usize = |what: &str| -> Result<usize> {
        tokens
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {what}")))?
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
    };
    let r = next_usize("r")?;
    let p = next_usize("p")?;
    let coeffs = tokens
        .map(|t| {
            t.parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad coefficient `{t}`: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != r + p + 1 {
        return Err(Error::Parse(format!(
            "expected {} coefficients, found {}",
            r + p + 1,
            coeffs.len()
        )));
    }
    Ok(SchemeTemplate::Custom { r, p, coeffs })
}
