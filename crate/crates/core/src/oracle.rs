//! Cross-checks independent of the determinant: spectral radius of a truncated
//! quasi-Toeplitz matrix, and direct time marching of the boundary scheme.
//!
//! Both truncate the half-line at `J` cells and set values beyond the last cell
//! to zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::BoundaryCondition;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Real;
use crate::scheme::Scheme;

/// Norms above this count as a blow-up and stop [`simulate`].
pub const BLOW_UP: f64 = 1e100;

const RESTARTS: usize = 10;
const FIRST_WINDOW: usize = 64;
const MAX_WINDOW: usize = 1 << 16;

/// `J x J` one-step operator: first `r` rows from `calB`, the rest the interior band.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiToeplitzMatrix<T> {
    entries: Matrix<T>,
    /// Nonzero `(column, value)` pairs per row.
    sparse: Vec<Vec<(usize, T)>>,
}

impl<T: Real> QuasiToeplitzMatrix<T> {
    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Matrix<T> {
        &self.entries
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        self.sparse
            .iter()
            .map(|row| row.iter().map(|&(j, a)| a * x[j]).sum())
            .collect()
    }
}

pub fn assemble_quasi_toeplitz<T: Real>(
    scheme: &Scheme<T>,
    bc: &BoundaryCondition<T>,
    size: usize,
) -> Result<QuasiToeplitzMatrix<T>> {
    let (r, p, m) = (scheme.r(), scheme.p(), bc.m());
    if size < m + p || size < r {
        return Err(Error::ShapeMismatch(format!(
            "truncation {size} is below m + p = {}",
            m + p
        )));
    }
    let cal_b = bc.cal_b();
    let entries = Matrix::from_fn(size, size, |i, j| {
        if i < r {
            if j < m {
                cal_b[(i, j)]
            } else {
                T::zero()
            }
        } else {
            let k = j as isize - i as isize;
            if -(r as isize) <= k && k <= p as isize {
                scheme.coeff(k)
            } else {
                T::zero()
            }
        }
    });
    let sparse = (0..size)
        .map(|i| {
            entries
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(j, &a)| (j, a))
                .collect()
        })
        .collect();
    Ok(QuasiToeplitzMatrix { entries, sparse })
}

fn norm<T: Real>(x: &[T]) -> T {
    x.iter().map(|&v| v * v).sum::<T>().sqrt()
}

/// Growth rate `(|A^{2k} x| / |A^k x|)^{1/k}` over doubling windows `k`, from
/// one random start. Returns the last estimate and whether it settled.
fn growth_rate<T: Real>(m: &QuasiToeplitzMatrix<T>, rng: &mut ChaCha8Rng, tol: T) -> (T, bool) {
    let n = m.size();
    let mut x: Vec<T> = (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect();
    let mut log_norm = T::zero();
    let advance = |x: &mut Vec<T>, steps: usize, log_norm: &mut T| -> bool {
        for _ in 0..steps {
            *x = m.apply(x);
            let s = norm(x);
            if s == T::zero() || !s.is_finite() {
                return false;
            }
            *log_norm += s.ln();
            for v in x.iter_mut() {
                *v /= s;
            }
        }
        true
    };
    if !advance(&mut x, FIRST_WINDOW, &mut log_norm) {
        return (T::zero(), true);
    }
    let mut previous: Option<T> = None;
    let mut window = FIRST_WINDOW;
    loop {
        let start = log_norm;
        if !advance(&mut x, window, &mut log_norm) {
            return (T::zero(), true);
        }
        let estimate = ((log_norm - start) / T::lit(window as f64)).exp();
        if let Some(prev) = previous {
            if (estimate - prev).abs() <= tol * estimate {
                return (estimate, true);
            }
        }
        if window >= MAX_WINDOW {
            return (estimate, false);
        }
        previous = Some(estimate);
        window *= 2;
    }
}

/// Largest eigenvalue modulus, estimated by power iteration from several seeded
/// random starts (maximum over starts).
pub fn spectral_radius<T: Real>(m: &QuasiToeplitzMatrix<T>, tol: T) -> Result<T> {
    if m.size() == 0 {
        return Ok(T::zero());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best = T::zero();
    let mut converged = true;
    for _ in 0..RESTARTS {
        let (rho, ok) = growth_rate(m, &mut rng, tol);
        best = best.max(rho);
        converged &= ok;
    }
    if converged {
        Ok(best)
    } else {
        Err(Error::SpectralNonConvergence {
            estimate: best.to_f64_lossy(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRun<T> {
    pub size: usize,
    pub steps: usize,
    pub lambda: T,
    /// Row `n` holds the solution after `n` steps; row 0 is the initial data.
    pub history: Vec<Vec<T>>,
    /// Euclidean norm of each history row.
    pub norm_trace: Vec<T>,
    /// The norm exceeded [`BLOW_UP`]; marching stopped there.
    pub blew_up: bool,
}

/// March `steps` time steps from `initial`. Ghost values are `B u + g[n]`, with
/// `g[n][i]` the datum of ghost cell `i - r` at step `n` (missing entries are zero).
pub fn simulate<T: Real>(
    scheme: &Scheme<T>,
    bc: &BoundaryCondition<T>,
    initial: &[T],
    g: &[Vec<T>],
    steps: usize,
) -> Result<SimulationRun<T>> {
    let (r, p, m) = (scheme.r(), scheme.p(), bc.m());
    let size = initial.len();
    if size < m + p {
        return Err(Error::ShapeMismatch(format!(
            "grid of {size} cells is below m + p = {}",
            m + p
        )));
    }
    if steps == 0 {
        return Err(Error::ShapeMismatch("at least one step is required".into()));
    }
    let b = bc.b();
    if b.rows() != r {
        return Err(Error::ShapeMismatch(
            "simulation needs the ghost matrix B, not only calB".into(),
        ));
    }

    let mut history = vec![initial.to_vec()];
    let mut norm_trace = vec![norm(initial)];
    let mut blew_up = false;
    let mut ghosts = vec![T::zero(); r];
    for n in 0..steps {
        let u = history.last().expect("history starts non-empty");
        for (i, ghost) in ghosts.iter_mut().enumerate() {
            let datum = g.get(n).and_then(|row| row.get(i)).copied().unwrap_or_else(T::zero);
            *ghost = b.row(i).iter().zip(u).map(|(&bij, &uj)| bij * uj).sum::<T>() + datum;
        }
        let next: Vec<T> = (0..size)
            .map(|j| {
                (-(r as isize)..=p as isize)
                    .map(|k| {
                        let idx = j as isize + k;
                        let v = if idx < 0 {
                            ghosts[(idx + r as isize) as usize]
                        } else if (idx as usize) < size {
                            u[idx as usize]
                        } else {
                            T::zero()
                        };
                        scheme.coeff(k) * v
                    })
                    .sum()
            })
            .collect();
        let nn = norm(&next);
        history.push(next);
        norm_trace.push(nn);
        if !(nn.to_f64_lossy() <= BLOW_UP) {
            blew_up = true;
            break;
        }
    }
    Ok(SimulationRun {
        size,
        steps,
        lambda: scheme.lambda(),
        history,
        norm_trace,
        blew_up,
    })
}
