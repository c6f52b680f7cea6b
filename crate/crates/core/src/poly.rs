//! Complex polynomials, simultaneous root finding and disk root counts.

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default absolute residual accepted by [`Polynomial::find_roots`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Aberth sweeps before giving up.
pub const MAX_SWEEPS: usize = 200;
/// Default number of samples for [`min_modulus_on_circle`].
pub const DEFAULT_CIRCLE_SAMPLES: usize = 512;

/// Polynomial with complex coefficients stored in ascending degree order.
///
/// Trailing zero coefficients are trimmed on construction, so the last stored
/// coefficient is nonzero unless the polynomial is identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<Complex<T>>,
}

/// Roots of a polynomial, repeated according to multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet<T> {
    pub roots: Vec<Complex<T>>,
    /// Largest scaled residual `|P(root)| / max(1, sum |c_i| |root|^i)` of the
    /// monic polynomial.
    pub residual: T,
}

impl<T: Real> Polynomial<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex::zero());
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    /// Monic polynomial `prod (X - root)`.
    pub fn from_roots(roots: &[Complex<T>]) -> Self {
        let mut coeffs = vec![Complex::one()];
        for &root in roots {
            let mut next = vec![Complex::zero(); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * root;
            }
            coeffs = next;
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs[self.degree()]
    }

    pub fn eval(&self, x: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &c| acc * x + c)
    }

    /// Value and first derivative by Horner's rule.
    pub fn eval_with_derivative(&self, x: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut p = Complex::zero();
        let mut dp = Complex::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    /// `sum |c_i| |x|^i`, the natural scale of rounding errors in `eval(x)`.
    fn magnitude_at(&self, x: Complex<T>) -> T {
        let r = x.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * r + c.norm())
    }

    fn scaled_residual(&self, x: Complex<T>) -> T {
        self.eval(x).norm() / self.magnitude_at(x).max(T::one())
    }

    pub fn monic(&self) -> Self {
        let lead = self.leading();
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| c / lead).collect(),
        }
    }

    /// All roots with an Aberth-Ehrlich simultaneous iteration.
    ///
    /// Exact zero roots are deflated first. The iteration runs on the monic
    /// polynomial and stops once every approximation has a scaled residual below
    /// `tol`; a couple of extra sweeps then sharpen simple roots.
    pub fn find_roots(&self, tol: T) -> Result<RootSet<T>> {
        let degree = self.degree();
        if degree == 0 {
            return Err(Error::DegreeTooLow(degree));
        }
        let monic = self.monic();
        let zeros_at_origin = monic.coeffs.iter().take_while(|c| c.is_zero()).count();
        let reduced = Polynomial {
            coeffs: monic.coeffs[zeros_at_origin..].to_vec(),
        };
        let mut roots = vec![Complex::zero(); zeros_at_origin];
        match reduced.degree() {
            0 => {}
            1 => roots.push(-reduced.coeffs[0]),
            _ => roots.extend(reduced.aberth(tol)?),
        }
        roots.sort_by(lexicographic);
        let residual = roots
            .iter()
            .map(|&z| monic.scaled_residual(z))
            .fold(T::zero(), T::max);
        Ok(RootSet { roots, residual })
    }

    fn initial_guesses(&self) -> Vec<Complex<T>> {
        let d = self.degree();
        // geometric mean of root moduli, clamped into a sane range
        let c0 = self.coeffs[0].norm();
        let radius = c0
            .powf(T::one() / T::lit(d as f64))
            .max(T::lit(1e-3))
            .min(T::lit(1e6));
        let offset = T::lit(0.4);
        (0..d)
            .map(|k| {
                let angle = T::TAU() * T::lit(k as f64) / T::lit(d as f64) + offset;
                Complex::from_polar(radius, angle)
            })
            .collect()
    }

    fn aberth(&self, tol: T) -> Result<Vec<Complex<T>>> {
        let d = self.degree();
        let mut z = self.initial_guesses();
        let mut extra = 0usize;
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            for k in 0..d {
                let (p, dp) = self.eval_with_derivative(z[k]);
                if p.is_zero() {
                    continue;
                }
                let repulsion: Complex<T> = (0..d)
                    .filter(|&j| j != k)
                    .map(|j| {
                        let diff = z[k] - z[j];
                        if diff.is_zero() {
                            Complex::zero()
                        } else {
                            diff.inv()
                        }
                    })
                    .fold(Complex::zero(), |a, b| a + b);
                let step = if dp.is_zero() {
                    // stationary point: nudge off it
                    Complex::new(tol.sqrt() * z[k].norm().max(T::one()), T::zero())
                } else {
                    let ratio: Complex<T> = p / dp;
                    let denom = Complex::<T>::one() - ratio * repulsion;
                    if denom.is_zero() {
                        ratio
                    } else {
                        ratio / denom
                    }
                };
                if step.re.is_finite() && step.im.is_finite() {
                    z[k] -= step;
                }
            }
            let worst = z
                .iter()
                .map(|&x| self.scaled_residual(x))
                .fold(T::zero(), T::max);
            if worst <= tol {
                if converged {
                    extra += 1;
                } else {
                    converged = true;
                }
                if extra >= 2 {
                    return Ok(z);
                }
            } else if converged {
                // a refinement sweep made things worse; the previous state was fine
                converged = false;
                extra = 0;
            }
        }
        let worst = z
            .iter()
            .map(|&x| self.scaled_residual(x))
            .fold(T::zero(), T::max);
        if worst <= tol {
            return Ok(z);
        }
        Err(Error::NonConvergence {
            sweeps: MAX_SWEEPS,
            residual: worst.to_f64_lossy(),
        })
    }
}

fn lexicographic<T: Real>(a: &Complex<T>, b: &Complex<T>) -> Ordering {
    a.re
        .partial_cmp(&b.re)
        .unwrap_or(Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

/// Number of roots strictly inside the disk `|k - center| < radius`.
///
/// Fails with [`Error::BoundaryAmbiguity`] when a root sits within `tol` of the
/// circle, since its side cannot be trusted.
pub fn count_roots_in_disk<T: Real>(
    roots: &RootSet<T>,
    center: Complex<T>,
    radius: T,
    tol: T,
) -> Result<usize> {
    let mut count = 0;
    for &root in &roots.roots {
        let dist = (root - center).norm();
        if (dist - radius).abs() <= tol {
            return Err(Error::BoundaryAmbiguity {
                radius: radius.to_f64_lossy(),
            });
        }
        if dist < radius {
            count += 1;
        }
    }
    Ok(count)
}

/// Minimum of `|p|` over `n_samples` equispaced points of a circle.
pub fn min_modulus_on_circle<T: Real>(
    p: &Polynomial<T>,
    center: Complex<T>,
    radius: T,
    n_samples: usize,
) -> T {
    debug_assert!(n_samples >= 64);
    let n = n_samples.max(64);
    (0..n)
        .map(|k| {
            let angle = T::TAU() * T::lit(k as f64) / T::lit(n as f64);
            p.eval(center + Complex::from_polar(radius, angle)).norm()
        })
        .fold(T::infinity(), T::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = Polynomial::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs().len(), 2);
    }

    #[test]
    fn roots_of_x_squared_minus_one() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]);
        let rs = p.find_roots(1e-12).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert!(close(rs.roots[0], c(-1.0, 0.0), 1e-12));
        assert!(close(rs.roots[1], c(1.0, 0.0), 1e-12));
    }

    #[test]
    fn triple_root_at_origin() {
        let p = Polynomial::from_real(&[0.0, 0.0, 0.0, 1.0]);
        let rs = p.find_roots(1e-12).unwrap();
        assert_eq!(rs.roots, vec![c(0.0, 0.0); 3]);
    }

    #[test]
    fn clustered_double_root_converges() {
        // (X - 0.5)^2 (X + 2)
        let p = Polynomial::from_roots(&[c(0.5, 0.0), c(0.5, 0.0), c(-2.0, 0.0)]);
        let rs = p.find_roots(1e-12).unwrap();
        assert!(rs.residual <= 1e-12);
        assert!(close(rs.roots[0], c(-2.0, 0.0), 1e-10));
        assert!(close(rs.roots[1], c(0.5, 0.0), 1e-6));
        assert!(close(rs.roots[2], c(0.5, 0.0), 1e-6));
    }

    #[test]
    fn constant_polynomial_rejected() {
        let p = Polynomial::from_real(&[3.0]);
        assert!(matches!(p.find_roots(1e-12), Err(Error::DegreeTooLow(0))));
    }

    #[test]
    fn disk_counts() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]);
        let rs = p.find_roots(1e-12).unwrap();
        assert_eq!(count_roots_in_disk(&rs, c(0.0, 0.0), 1.5, 1e-9).unwrap(), 2);
        assert_eq!(count_roots_in_disk(&rs, c(0.0, 0.0), 0.5, 1e-9).unwrap(), 0);
        assert!(matches!(
            count_roots_in_disk(&rs, c(0.0, 0.0), 1.0, 1e-9),
            Err(Error::BoundaryAmbiguity { .. })
        ));
    }

    #[test]
    fn min_modulus_examples() {
        let x = Polynomial::from_real(&[0.0, 1.0]);
        assert!((min_modulus_on_circle(&x, c(0.0, 0.0), 1.0, 512) - 1.0).abs() < 1e-15);
        let xm1 = Polynomial::from_real(&[-1.0, 1.0]);
        assert!((min_modulus_on_circle(&xm1, c(1.0, 0.0), 0.5, 512) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn min_modulus_matches_oversampling() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]);
        let coarse = min_modulus_on_circle(&p, c(1.0, 0.0), 0.5, 512);
        let fine = min_modulus_on_circle(&p, c(1.0, 0.0), 0.5, 4096);
        assert!((coarse - fine).abs() <= 1e-3 * fine);
        // |k^2 - 1| = |k - 1||k + 1| = 0.5 |k + 1|, smallest at k = 0.5
        assert!((fine - 0.75).abs() < 1e-6);
    }

    #[test]
    fn works_in_single_precision() {
        let p = Polynomial::<f32>::from_real(&[-1.0, 0.0, 1.0]);
        let rs = p.find_roots(1e-5).unwrap();
        assert!((rs.roots[1].re - 1.0).abs() < 1e-5);
    }

    fn vieta_holds(p: &Polynomial<f64>, rs: &RootSet<f64>) -> bool {
        let d = p.degree();
        let lead = p.leading();
        let sum: Complex<f64> = rs.roots.iter().sum();
        let prod: Complex<f64> = rs.roots.iter().product();
        let s_expected = -p.coeffs()[d - 1] / lead;
        let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
        let p_expected = p.coeffs()[0] / lead * sign;
        (sum - s_expected).norm() <= 1e-8 * (1.0 + s_expected.norm())
            && (prod - p_expected).norm() <= 1e-8 * (1.0 + p_expected.norm())
    }

    proptest! {
        #[test]
        fn vieta_and_determinism(
            coeffs in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 2..8),
            lead in 0.2f64..3.0,
        ) {
            let mut cs: Vec<Complex<f64>> = coeffs.iter().map(|&(a, b)| c(a, b)).collect();
            cs.push(c(lead, 0.0));
            let p = Polynomial::new(cs);
            let rs = p.find_roots(1e-12).unwrap();
            prop_assert_eq!(rs.roots.len(), p.degree());
            prop_assert!(rs.residual <= 1e-12);
            prop_assert!(vieta_holds(&p, &rs));
            let again = p.find_roots(1e-12).unwrap();
            prop_assert_eq!(&rs, &again);
            let everything = count_roots_in_disk(&rs, c(0.0, 0.0), 1e12, 1e-9).unwrap();
            prop_assert_eq!(everything, p.degree());
        }
    }
}
