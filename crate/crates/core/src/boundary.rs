//! Boundary treatment: ghost-point matrix `B`, its ghost-free form `calB`, and the
//! reconstruction family `R^{d,k_d}` for a boundary offset `x_sigma = sigma dx`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Real};
use crate::scheme::Scheme;

/// Reconstruction of order `d` that uses the first `k_d + 1` time derivatives of
/// the boundary datum and extrapolates the remaining `d - k_d - 1` space
/// derivatives from the interior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionSpec<T> {
    pub d: usize,
    /// `-1` means pure extrapolation.
    pub k_d: i64,
    pub sigma: T,
}

impl<T: Field> ReconstructionSpec<T> {
    pub fn new(d: usize, k_d: i64, sigma: T) -> Result<Self> {
        let spec = ReconstructionSpec { d, k_d, sigma };
        spec.validate()?;
        Ok(spec)
    }

    /// Number of extrapolated derivatives, the size of `Y+`.
    pub fn unknowns(&self) -> usize {
        (self.d as i64 - self.k_d - 1).max(0) as usize
    }

    fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidReconstruction("order d must be >= 1".into()));
        }
        if self.k_d < -1 || self.k_d >= self.d as i64 {
            return Err(Error::InvalidReconstruction(format!(
                "k_d = {} must satisfy -1 <= k_d < d = {}",
                self.k_d, self.d
            )));
        }
        if self.unknowns() < 1 {
            return Err(Error::InvalidReconstruction(format!(
                "R^{{{},{}}} leaves no derivative to extrapolate",
                self.d, self.k_d
            )));
        }
        let half = T::ratio(1, 2);
        if self.sigma < -half.clone() || self.sigma >= half {
            return Err(Error::InvalidReconstruction(format!(
                "sigma = {:?} must lie in [-1/2, 1/2)",
                self.sigma
            )));
        }
        Ok(())
    }

    /// Cell average over `[j - 1/2, j + 1/2]` of `(x - sigma)^n / n!`.
    fn cell_moment(&self, j: i64, n: usize) -> T {
        let half = T::ratio(1, 2);
        let centre = T::from_i64(j).expect("small integer") - self.sigma.clone();
        let hi = pow(centre.clone() + half.clone(), n);
        let lo = pow(centre - half, n);
        (hi - lo) / factorial::<T>(n)
    }

    /// `(Y-, Y+)`: ghost rows `U_{-r}, ..., U_{-1}` and interior rows
    /// `U_0, ..., U_{d-k_d-2}` against the unknown derivatives.
    pub fn matrices(&self, r: usize) -> (Matrix<T>, Matrix<T>) {
        let n = self.unknowns();
        let power = |col: usize| (col as i64 + self.k_d + 2) as usize;
        let y_minus = Matrix::from_fn(r, n, |i, col| {
            self.cell_moment(i as i64 - r as i64, power(col))
        });
        let y_plus = Matrix::from_fn(n, n, |i, col| self.cell_moment(i as i64, power(col)));
        (y_minus, y_plus)
    }

    /// Ghost matrix `B = Y- Y+^{-1}`, zero-padded to `m` columns.
    pub fn ghost_matrix(&self, r: usize, m: usize) -> Result<Matrix<T>> {
        let n = self.unknowns();
        if m < n {
            return Err(Error::ShapeMismatch(format!(
                "m = {m} is smaller than the {n} interior values the reconstruction uses"
            )));
        }
        let (y_minus, y_plus) = self.matrices(r);
        let b = y_plus.solve_left(&y_minus).map_err(|e| match e {
            Error::Singular => Error::SingularYPlus,
            other => other,
        })?;
        Ok(b.resized_cols(m))
    }
}

fn pow<T: Field>(x: T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, _| acc * x.clone())
}

fn factorial<T: Field>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| {
        acc * T::from_usize(k).expect("small integer")
    })
}

/// Free-function form of [`ReconstructionSpec::matrices`].
pub fn reconstruction_matrices<T: Field>(
    spec: &ReconstructionSpec<T>,
    r: usize,
) -> (Matrix<T>, Matrix<T>) {
    spec.matrices(r)
}

/// Free-function form of [`ReconstructionSpec::ghost_matrix`].
pub fn reconstruction_b<T: Field>(
    spec: &ReconstructionSpec<T>,
    r: usize,
    m: usize,
) -> Result<Matrix<T>> {
    spec.ghost_matrix(r, m)
}

/// Substitute the ghost values into the first `r` interior updates:
/// `calB = T B + S` with `T` the upper-triangular block of `a_{-r}, ..., a_{-1}`
/// and `S` the shifted interior band.
///
/// `coeffs` holds `a_{-r}, ..., a_p`.
pub fn eliminate_ghosts<T: Field>(
    b: &Matrix<T>,
    coeffs: &[T],
    r: usize,
    p: usize,
) -> Result<Matrix<T>> {
    let m = b.cols();
    if b.rows() != r {
        return Err(Error::ShapeMismatch(format!(
            "B has {} rows, the scheme has r = {r} ghost points",
            b.rows()
        )));
    }
    if m < p + r {
        return Err(Error::ShapeMismatch(format!(
            "B has m = {m} columns, at least p + r = {} are required",
            p + r
        )));
    }
    if coeffs.len() != r + p + 1 {
        return Err(Error::ShapeMismatch("coefficient count is not r + p + 1".into()));
    }
    let a = |k: i64| -> T {
        let idx = k + r as i64;
        if idx < 0 || idx as usize >= coeffs.len() {
            T::zero()
        } else {
            coeffs[idx as usize].clone()
        }
    };
    Ok(Matrix::from_fn(r, m, |i, col| {
        let i = i as i64;
        // ghost U_g sits in row g + r of B; it reaches row i through a_{g - i}
        let ghosts = (-(r as i64)..0).fold(T::zero(), |acc, g| {
            let coeff = a(g - i);
            if coeff.is_zero() {
                acc
            } else {
                acc + coeff * b[((g + r as i64) as usize, col)].clone()
            }
        });
        ghosts + a(col as i64 - i)
    }))
}

/// Free-function form of [`BoundaryCondition::new`]'s elimination step.
pub fn build_cal_b<T: Real>(b: &Matrix<T>, scheme: &Scheme<T>) -> Result<Matrix<T>> {
    eliminate_ghosts(b, scheme.coeffs(), scheme.r(), scheme.p())
}

/// Ghost-point boundary condition for a given scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCondition<T> {
    m: usize,
    b: Matrix<T>,
    cal_b: Matrix<T>,
}

impl<T: Real> BoundaryCondition<T> {
    pub fn new(b: Matrix<T>, scheme: &Scheme<T>) -> Result<Self> {
        let cal_b = build_cal_b(&b, scheme)?;
        Ok(BoundaryCondition {
            m: b.cols(),
            b,
            cal_b,
        })
    }

    /// Reconstruction boundary with the minimal width `m = max(p + r, d - k_d - 1)`.
    pub fn reconstruction(spec: &ReconstructionSpec<T>, scheme: &Scheme<T>) -> Result<Self> {
        let m = (scheme.p() + scheme.r()).max(spec.unknowns());
        let b = spec.ghost_matrix(scheme.r(), m)?;
        Self::new(b, scheme)
    }

    /// Boundary given directly by `calB`, bypassing the ghost matrix. The stored
    /// `B` is empty.
    pub fn from_cal_b(cal_b: Matrix<T>, scheme: &Scheme<T>) -> Result<Self> {
        if cal_b.rows() != scheme.r() || cal_b.cols() < scheme.r() {
            return Err(Error::ShapeMismatch(format!(
                "calB must be {} x m with m >= {}",
                scheme.r(),
                scheme.r()
            )));
        }
        Ok(BoundaryCondition {
            m: cal_b.cols(),
            b: Matrix::zeros(0, cal_b.cols()),
            cal_b,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn b(&self) -> &Matrix<T> {
        &self.b
    }

    pub fn cal_b(&self) -> &Matrix<T> {
        &self.cal_b
    }

    /// Check that the stored `calB` is what `B` and the scheme produce.
    pub fn revalidate(&self, scheme: &Scheme<T>) -> Result<()> {
        if self.b.rows() == 0 {
            return Ok(());
        }
        let expected = build_cal_b(&self.b, scheme)?;
        let tol = T::lit(1e-12);
        let ok = expected
            .iter()
            .zip(self.cal_b.iter())
            .all(|(&x, &y)| (x - y).abs() <= tol * (T::one() + x.abs()));
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(
                "stored calB does not match B for this scheme".into(),
            ))
        }
    }
}

/// Boundary description independent of the scheme it will be paired with.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundarySpec {
    Reconstruction { d: usize, k_d: i64, sigma: f64 },
    /// Raw ghost matrix `B`, `r x m`.
    Matrix(Matrix<f64>),
}

impl BoundarySpec {
    pub fn build<T: Real>(&self, scheme: &Scheme<T>) -> Result<BoundaryCondition<T>> {
        match self {
            BoundarySpec::Reconstruction { d, k_d, sigma } => {
                let spec = ReconstructionSpec::new(*d, *k_d, T::lit(*sigma))?;
                BoundaryCondition::reconstruction(&spec, scheme)
            }
            BoundarySpec::Matrix(b) => BoundaryCondition::new(b.map(|&x| T::lit(x)), scheme),
        }
    }

    /// Text format: `reconstruction d k_d sigma`, or `matrix r m` followed by
    /// `r` rows of `m` numbers.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let bad = |what: &str| Error::Parse(format!("boundary file: {what}"));
        match tokens.next() {
            Some("reconstruction") => {
                let d = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("missing or bad d"))?;
                let k_d = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("missing or bad k_d"))?;
                let sigma = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("missing or bad sigma"))?;
                if tokens.next().is_some() {
                    return Err(bad("trailing tokens"));
                }
                Ok(BoundarySpec::Reconstruction { d, k_d, sigma })
            }
            Some("matrix") => {
                let r: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("missing or bad r"))?;
                let m: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("missing or bad m"))?;
                let values = tokens
                    .map(|t| t.parse::<f64>().map_err(|_| bad(&format!("bad entry `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if values.len() != r * m {
                    return Err(bad(&format!("expected {} entries, found {}", r * m, values.len())));
                }
                Ok(BoundarySpec::Matrix(Matrix::from_fn(r, m, |i, j| values[i * m + j])))
            }
            _ => Err(bad("expected `reconstruction` or `matrix`")),
        }
    }

    pub fn with_sigma(&self, sigma: f64) -> Self {
        match self {
            BoundarySpec::Reconstruction { d, k_d, .. } => BoundarySpec::Reconstruction {
                d: *d,
                k_d: *k_d,
                sigma,
            },
            other => other.clone(),
        }
    }
}

impl fmt::Display for BoundarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundarySpec::Reconstruction { d, k_d, sigma } => write!(f, "R{d},{k_d} sigma={sigma}"),
            BoundarySpec::Matrix(b) => write!(f, "matrix {}x{}", b.rows(), b.cols()),
        }
    }
}

/// `R<d>,<k_d>` (sigma supplied separately).
pub fn parse_reconstruction_name(s: &str, sigma: f64) -> Result<BoundarySpec> {
    let body = s
        .strip_prefix('R')
        .or_else(|| s.strip_prefix('r'))
        .ok_or_else(|| Error::Parse(format!("boundary `{s}` is not of the form R<d>,<k_d>")))?;
    let (d, k) = body
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("boundary `{s}` is missing `,<k_d>`")))?;
    let d = usize::from_str(d.trim()).map_err(|e| Error::Parse(format!("bad d in `{s}`: {e}")))?;
    let k_d = i64::from_str(k.trim()).map_err(|e| Error::Parse(format!("bad k_d in `{s}`: {e}")))?;
    ReconstructionSpec::new(d, k_d, sigma)?;
    Ok(BoundarySpec::Reconstruction { d, k_d, sigma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::SchemeTemplate;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::ratio(n, d)
    }

    fn qm(rows: &[&[(i64, i64)]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| q(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn r30_matrices_exact() {
        let spec = ReconstructionSpec::new(3, 0, q(2, 5)).unwrap();
        let (ym, yp) = spec.matrices(2);
        assert_eq!(ym, qm(&[&[(-12, 5), (1753, 600)], &[(-7, 5), (613, 600)]]));
        assert_eq!(yp, qm(&[&[(-2, 5), (73, 600)], &[(3, 5), (133, 600)]]));
        let b = spec.ghost_matrix(2, 2).unwrap();
        assert_eq!(b, qm(&[&[(1371, 97), (526, 97)], &[(554, 97), (143, 97)]]));
        let b3 = spec.ghost_matrix(2, 3).unwrap();
        assert_eq!(
            b3,
            qm(&[&[(1371, 97), (526, 97), (0, 1)], &[(554, 97), (143, 97), (0, 1)]])
        );
    }

    #[test]
    fn single_unknown_reconstruction_divides() {
        for d in 2..7 {
            for sigma in [-0.5f64, -0.1, 0.0, 0.3] {
                let spec = ReconstructionSpec::new(d, d as i64 - 2, sigma).unwrap();
                let (ym, yp): (Matrix<f64>, Matrix<f64>) = spec.matrices(2);
                assert_eq!(yp.shape(), (1, 1));
                let fact: f64 = (1..=d).map(|k| k as f64).product();
                let expected =
                    ((0.5 - sigma).powi(d as i32) - (-0.5 - sigma).powi(d as i32)) / fact;
                assert!((yp[(0, 0)] - expected).abs() < 1e-15);
                if yp[(0, 0)].abs() > 1e-12 {
                    let b = spec.ghost_matrix(2, 3).unwrap();
                    for i in 0..2 {
                        assert!((b[(i, 0)] - ym[(i, 0)] / yp[(0, 0)]).abs() < 1e-12);
                        assert_eq!(b[(i, 1)], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn y_plus_parity_under_reflection() {
        // at sigma = 0 the cell moment of cell j and cell -j flip sign iff the power is even
        for (d, k_d) in [(3, 0), (4, 1), (5, 0), (6, 2)] {
            let spec = ReconstructionSpec::new(d, k_d, 0.0f64).unwrap();
            for j in 0..4i64 {
                for col in 0..spec.unknowns() {
                    let n = (col as i64 + k_d + 2) as usize;
                    let a = spec.cell_moment(j, n);
                    let b = spec.cell_moment(-j, n);
                    let expected = if n % 2 == 0 { -a } else { a };
                    assert!((b - expected).abs() < 1e-13, "d={d} j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn naive_average_elimination() {
        let avg = SchemeTemplate::NaiveAverage.build(0.5).unwrap();
        let b = Matrix::from_rows(vec![vec![0.5, 0.5]]).unwrap();
        let cal_b = build_cal_b(&b, &avg).unwrap();
        assert_eq!(cal_b, Matrix::from_rows(vec![vec![0.25, 0.75]]).unwrap());
    }

    #[test]
    fn zero_ghost_matrix_leaves_interior_band() {
        let o3 = SchemeTemplate::O3.build(0.4).unwrap();
        let cal_b = build_cal_b(&Matrix::zeros(2, 4), &o3).unwrap();
        let a = |k| o3.coeff(k);
        let expected = Matrix::from_rows(vec![
            vec![a(0), a(1), 0.0, 0.0],
            vec![a(-1), a(0), a(1), 0.0],
        ])
        .unwrap();
        assert_eq!(cal_b, expected);
    }

    #[test]
    fn o3_cal_b_matches_closed_form_exactly() {
        let spec = ReconstructionSpec::new(3, 0, q(2, 5)).unwrap();
        for (n, d) in [(2, 5), (1, 3), (9, 10), (1, 1)] {
            let l = q(n, d);
            let (r, p, a) = SchemeTemplate::O3.stencil(l.clone());
            if r != 2 {
                continue;
            }
            let b = spec.ghost_matrix(2, 3).unwrap();
            let cal_b = eliminate_ghosts(&b, &a, r, p).unwrap();
            let l2 = l.clone() * l.clone();
            let l3 = l2.clone() * l.clone();
            let one = q(1, 1);
            let expected = Matrix::from_rows(vec![
                vec![
                    q(180, 97) * l2.clone() + q(277, 97) * l.clone() + one.clone(),
                    q(120, 97) * l2.clone() + q(23, 97) * l.clone(),
                    q(0, 1),
                ],
                vec![
                    q(263, 582) * l3.clone() + q(1, 2) * l2.clone() + q(14, 291) * l.clone(),
                    q(217, 291) * l3.clone() - l2.clone() - q(217, 291) * l.clone() + one,
                    -q(1, 6) * l3 + q(1, 2) * l2 - q(1, 3) * l,
                ],
            ])
            .unwrap();
            assert_eq!(cal_b, expected);
        }
    }

    #[test]
    fn elimination_is_affine_in_b() {
        let o3 = SchemeTemplate::O3.build(0.7).unwrap();
        let b1 = Matrix::from_rows(vec![vec![1.0, -2.0, 0.5], vec![0.25, 3.0, -1.0]]).unwrap();
        let b2 = Matrix::from_rows(vec![vec![-0.5f64, 0.0, 2.0], vec![1.5, -1.0, 0.75]]).unwrap();
        let sum = b1.add(&b2).unwrap();
        let lhs = build_cal_b(&sum, &o3).unwrap();
        let zero = build_cal_b(&Matrix::<f64>::zeros(2, 3), &o3).unwrap();
        let rhs = build_cal_b(&b1, &o3)
            .unwrap()
            .add(&build_cal_b(&b2, &o3).unwrap())
            .unwrap();
        for i in 0..2 {
            for j in 0..3 {
                assert!((lhs[(i, j)] + zero[(i, j)] - rhs[(i, j)]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn shape_errors() {
        let o3 = SchemeTemplate::O3.build(0.4).unwrap();
        assert!(matches!(
            build_cal_b(&Matrix::zeros(2, 2), &o3),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            build_cal_b(&Matrix::zeros(1, 3), &o3),
            Err(Error::ShapeMismatch(_))
        ));
        let spec = ReconstructionSpec::new(5, 0, 0.4).unwrap();
        assert!(spec.ghost_matrix(3, 2).is_err());
    }

    #[test]
    fn invalid_reconstructions() {
        assert!(ReconstructionSpec::new(3, 2, 0.0).is_err());
        assert!(ReconstructionSpec::new(3, -2, 0.0).is_err());
        assert!(ReconstructionSpec::new(3, 0, 0.5).is_err());
        assert!(ReconstructionSpec::new(3, 0, -0.5).is_ok());
        assert!(ReconstructionSpec::new(0, -1, 0.0).is_err());
    }

    #[test]
    fn minimal_width_chosen() {
        let lw5 = SchemeTemplate::Lw5.build(0.5).unwrap();
        let spec = ReconstructionSpec::new(6, 0, 0.4).unwrap();
        let bc = BoundaryCondition::reconstruction(&spec, &lw5).unwrap();
        assert_eq!(bc.m(), 5);
        let o3 = SchemeTemplate::O3.build(0.4).unwrap();
        let spec = ReconstructionSpec::new(3, 0, 0.4).unwrap();
        let bc = BoundaryCondition::reconstruction(&spec, &o3).unwrap();
        assert_eq!(bc.m(), 3);
        bc.revalidate(&o3).unwrap();
    }

    #[test]
    fn boundary_text_format() {
        let spec = BoundarySpec::parse_text("reconstruction 3 0 0.4").unwrap();
        assert_eq!(spec, BoundarySpec::Reconstruction { d: 3, k_d: 0, sigma: 0.4 });
        let spec = BoundarySpec::parse_text("matrix 1 2\n0.5 0.5\n").unwrap();
        match spec {
            BoundarySpec::Matrix(b) => assert_eq!(b.shape(), (1, 2)),
            _ => panic!(),
        }
        assert!(BoundarySpec::parse_text("matrix 1 2\n0.5").is_err());
        assert!(BoundarySpec::parse_text("nonsense").is_err());
        assert_eq!(
            parse_reconstruction_name("R3,0", 0.4).unwrap(),
            BoundarySpec::Reconstruction { d: 3, k_d: 0, sigma: 0.4 }
        );
        assert!(parse_reconstruction_name("R3,3", 0.4).is_err());
        assert!(parse_reconstruction_name("Q3,0", 0.4).is_err());
    }
}
