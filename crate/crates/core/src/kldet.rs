//! Kreiss-Lopatinskii determinant and its curve along the unit circle.
//!
//! For `|z| >= 1` the boundary matrix `calB` is reduced to an `r x r` matrix using
//! the monic polynomial whose roots are the stable characteristic roots, and the
//! determinant is `det(z I - Btilde)`.

use num_complex::Complex;
use num_traits::{Num, Zero};
use rayon::prelude::*;

use crate::boundary::BoundaryCondition;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{min_modulus_on_circle, Polynomial, RootSet};
use crate::scalar::Real;
use crate::scheme::Scheme;
use crate::tolerances::Tolerances;
use crate::winding::{needs_refinement, winding_number, WindingResult, ORIGIN_EPSILON};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootOrigin {
    /// Strictly inside the unit disk.
    StrictInside,
    /// On the unit circle, reached from inside the disk as `|z|` decreases to 1.
    ContinuedFromInside,
}

/// The `r` characteristic roots spanning the decaying solutions at `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct StableRootSet<T> {
    pub z: Complex<T>,
    pub roots: Vec<Complex<T>>,
    /// Coefficients `s_0 .. s_{r-1}` of the monic polynomial with these roots.
    pub sigmas: Vec<Complex<T>>,
    pub origins: Vec<RootOrigin>,
    /// A cluster on the circle contributed only part of its members.
    pub ambiguous: bool,
}

impl<T: Real> StableRootSet<T> {
    fn from_roots(z: Complex<T>, roots: Vec<Complex<T>>, origins: Vec<RootOrigin>, ambiguous: bool) -> Self {
        let r = roots.len();
        let mut sigmas = Polynomial::from_roots(&roots).coeffs().to_vec();
        sigmas.resize(r + 1, Complex::zero());
        sigmas.truncate(r);
        StableRootSet {
            z,
            roots,
            sigmas,
            origins,
            ambiguous,
        }
    }
}

fn selection_failure<T: Real>(z: Complex<T>, reason: impl Into<String>) -> Error {
    Error::SelectionFailure {
        z: format!("{z}"),
        reason: reason.into(),
    }
}

/// Group indices of `points` whose mutual distance chains stay below `tol`.
fn clusters<T: Real>(points: &[Complex<T>], tol: T) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        let hits: Vec<usize> = groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.iter().any(|&j| (points[j] - p).norm() <= tol))
            .map(|(k, _)| k)
            .collect();
        match hits.first() {
            None => groups.push(vec![i]),
            Some(&first) => {
                for &k in hits[1..].iter().rev() {
                    let merged = groups.remove(k);
                    groups[first].extend(merged);
                }
                groups[first].push(i);
            }
        }
    }
    groups
}

fn centroid<T: Real>(points: &[Complex<T>], members: &[usize]) -> Complex<T> {
    let sum = members
        .iter()
        .fold(Complex::zero(), |acc: Complex<T>, &i| acc + points[i]);
    sum / T::lit(members.len() as f64)
}

enum Side {
    Inside,
    Band,
    Outside,
}

fn side<T: Real>(k: Complex<T>, tol_unit: T) -> Side {
    let m = k.norm();
    if m < T::one() - tol_unit {
        Side::Inside
    } else if m > T::one() + tol_unit {
        Side::Outside
    } else {
        Side::Band
    }
}

fn characteristic_roots<T: Real>(scheme: &Scheme<T>, z: Complex<T>, tol: &Tolerances) -> Result<RootSet<T>> {
    scheme
        .characteristic_polynomial(z)
        .find_roots(T::lit(tol.root_tol))
}

/// Select the `r` stable characteristic roots at `z`, `|z| >= 1 - tol_unit`.
///
/// Off the circle these are the roots inside the unit disk. On the circle, roots
/// within `tol_unit` of it are resolved by moving `z` slightly outwards and
/// counting how many of them enter the disk.
pub fn select_stable_roots<T: Real>(
    scheme: &Scheme<T>,
    z: Complex<T>,
    tol: &Tolerances,
) -> Result<StableRootSet<T>> {
    let r = scheme.r();
    if r == 0 {
        return Ok(StableRootSet::from_roots(z, Vec::new(), Vec::new(), false));
    }
    let tol_unit = T::lit(tol.tol_unit);
    if z.norm() < T::one() - tol_unit {
        return Err(selection_failure(z, "z lies inside the unit disk"));
    }
    let roots = characteristic_roots(scheme, z, tol)?;
    if z.norm() > T::one() + tol_unit {
        let (inside, _) = scheme.hersh_split(z, &roots, tol_unit)?;
        let origins = vec![RootOrigin::StrictInside; inside.len()];
        return Ok(StableRootSet::from_roots(z, inside, origins, false));
    }
    select_on_circle(scheme, z, &roots.roots, tol)
}

fn select_on_circle<T: Real>(
    scheme: &Scheme<T>,
    z: Complex<T>,
    roots: &[Complex<T>],
    tol: &Tolerances,
) -> Result<StableRootSet<T>> {
    let r = scheme.r();
    let tol_unit = T::lit(tol.tol_unit);
    let mut chosen = Vec::with_capacity(r);
    let mut origins = Vec::with_capacity(r);
    let mut band = Vec::new();
    for (i, &k) in roots.iter().enumerate() {
        match side(k, tol_unit) {
            Side::Inside => {
                chosen.push(k);
                origins.push(RootOrigin::StrictInside);
            }
            Side::Band => band.push(i),
            Side::Outside => {}
        }
    }

    let band_points: Vec<Complex<T>> = band.iter().map(|&i| roots[i]).collect();
    let mut ambiguous = false;
    let poly = scheme.characteristic_polynomial(z);
    let r_pow = i32::try_from(r).unwrap_or(i32::MAX);
    for group in clusters(&band_points, T::lit(tol.cluster_tol)) {
        let members: Vec<usize> = group.iter().map(|&g| band[g]).collect();
        let center = centroid(roots, &members);
        let eps = roots
            .iter()
            .enumerate()
            .filter(|(i, _)| !members.contains(i))
            .map(|(_, &k)| (k - center).norm() / T::lit(2.0))
            .fold(T::lit(tol.eps_cap), T::min);
        let eta = (T::one() + eps).powi(-r_pow)
            * min_modulus_on_circle(&poly, center, eps, tol.circle_samples);
        if !(eta > T::zero()) {
            return Err(selection_failure(z, "perturbation size vanished"));
        }
        let shifted = z * (T::one() + eta / T::lit(2.0));
        let moved = characteristic_roots(scheme, shifted, tol)?;
        let entering = moved
            .roots
            .iter()
            .filter(|k| (**k - center).norm() < eps && k.norm() < T::one())
            .count();
        if entering > members.len() {
            return Err(selection_failure(
                z,
                format!(
                    "{entering} perturbed roots entered the disk from a cluster of {}",
                    members.len()
                ),
            ));
        }
        if entering > 0 && entering < members.len() {
            ambiguous = true;
        }
        for &i in members.iter().take(entering) {
            chosen.push(roots[i]);
            origins.push(RootOrigin::ContinuedFromInside);
        }
    }

    if chosen.len() != r {
        return Err(selection_failure(
            z,
            format!("selected {} roots, expected {r}", chosen.len()),
        ));
    }
    Ok(StableRootSet::from_roots(z, chosen, origins, ambiguous))
}

/// Like [`select_stable_roots`], but roots on the circle are matched to the
/// stable set `prev` of a nearby point. Falls back to full selection whenever
/// the matching is not clear-cut.
pub fn select_continued<T: Real>(
    scheme: &Scheme<T>,
    z: Complex<T>,
    prev: &StableRootSet<T>,
    tol: &Tolerances,
) -> Result<StableRootSet<T>> {
    let r = scheme.r();
    let tol_unit = T::lit(tol.tol_unit);
    if r == 0 || prev.roots.len() != r || (z.norm() - T::one()).abs() > tol_unit {
        return select_stable_roots(scheme, z, tol);
    }
    let roots = characteristic_roots(scheme, z, tol)?.roots;
    if roots
        .iter()
        .all(|&k| !matches!(side(k, tol_unit), Side::Band))
    {
        return select_on_circle(scheme, z, &roots, tol);
    }

    let mut pairs: Vec<(T, usize, usize)> = Vec::with_capacity(r * roots.len());
    for (i, &old) in prev.roots.iter().enumerate() {
        for (j, &new) in roots.iter().enumerate() {
            pairs.push(((old - new).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut old_used = vec![false; r];
    let mut new_used = vec![false; roots.len()];
    let mut worst = T::zero();
    for (d, i, j) in pairs {
        if !old_used[i] && !new_used[j] {
            old_used[i] = true;
            new_used[j] = true;
            worst = worst.max(d);
        }
    }

    let cluster_tol = T::lit(tol.cluster_tol);
    let mut gap = T::infinity();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = (roots[i] - roots[j]).norm();
            if d > cluster_tol {
                gap = gap.min(d / T::lit(2.0));
            }
        }
    }

    let mut chosen = Vec::with_capacity(r);
    let mut origins = Vec::with_capacity(r);
    let mut consistent = worst < gap;
    for (j, &k) in roots.iter().enumerate() {
        match (side(k, tol_unit), new_used[j]) {
            (Side::Inside, true) => {
                chosen.push(k);
                origins.push(RootOrigin::StrictInside);
            }
            (Side::Band, true) => {
                chosen.push(k);
                origins.push(RootOrigin::ContinuedFromInside);
            }
            (Side::Inside, false) | (Side::Outside, true) => consistent = false,
            _ => {}
        }
    }
    if consistent && chosen.len() == r {
        Ok(StableRootSet::from_roots(z, chosen, origins, prev.ambiguous))
    } else {
        select_on_circle(scheme, z, &roots, tol)
    }
}

/// Eliminate columns `m-1 .. r` of `calB` using the recurrence
/// `u_{j+r} = -(s_0 u_j + ... + s_{r-1} u_{j+r-1})`, leaving an `r x r` matrix.
pub fn reduce_btilde<S: Clone + Num>(cal_b: &Matrix<S>, sigmas: &[S]) -> Result<Matrix<S>> {
    let (r, m) = cal_b.shape();
    if m < r || sigmas.len() != r {
        return Err(Error::ShapeMismatch(format!(
            "calB is {r}x{m} with {} recurrence coefficients",
            sigmas.len()
        )));
    }
    let mut work = cal_b.clone();
    for j in (r..m).rev() {
        for row in 0..r {
            let c = work[(row, j)].clone();
            if c.is_zero() {
                continue;
            }
            for (i, s) in sigmas.iter().enumerate() {
                let col = j - r + i;
                let v = work[(row, col)].clone() - c.clone() * s.clone();
                work[(row, col)] = v;
            }
        }
    }
    Ok(Matrix::from_fn(r, r, |i, j| work[(i, j)].clone()))
}

/// `det(z I - Btilde)` for an already selected root set.
pub fn delta_from_roots<T: Real>(cal_b: &Matrix<Complex<T>>, set: &StableRootSet<T>) -> Result<Complex<T>> {
    let bt = reduce_btilde(cal_b, &set.sigmas)?;
    let r = bt.rows();
    Matrix::from_fn(r, r, |i, j| {
        let diag = if i == j { set.z } else { Complex::zero() };
        diag - bt[(i, j)]
    })
    .det()
}

/// The intrinsic Kreiss-Lopatinskii determinant at `z`.
pub fn delta<T: Real>(
    scheme: &Scheme<T>,
    bc: &BoundaryCondition<T>,
    z: Complex<T>,
    tol: &Tolerances,
) -> Result<Complex<T>> {
    let set = select_stable_roots(scheme, z, tol)?;
    delta_from_roots(&bc.cal_b().to_complex(), &set)
}

/// Columns of the decaying-solution basis evaluated on rows `0..rows`.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeBasis<T> {
    pub z: Complex<T>,
    pub k_top: Matrix<Complex<T>>,
    pub k_full: Matrix<Complex<T>>,
    /// Multiplicity of each distinct root, in column order.
    pub multiplicities: Vec<usize>,
}

/// Confluent Vandermonde basis: a root of multiplicity `q` contributes the
/// columns `j^l k^j` for `l < q`.
pub fn basis_matrices<T: Real>(set: &StableRootSet<T>, rows: usize, cluster_tol: T) -> Result<VandermondeBasis<T>> {
    let r = set.roots.len();
    if rows < r {
        return Err(Error::ShapeMismatch(format!(
            "basis needs at least {r} rows, got {rows}"
        )));
    }
    let mut columns: Vec<(Complex<T>, i32)> = Vec::with_capacity(r);
    let mut multiplicities = Vec::new();
    for group in clusters(&set.roots, cluster_tol) {
        let center = centroid(&set.roots, &group);
        multiplicities.push(group.len());
        for l in 0..group.len() {
            columns.push((center, l as i32));
        }
    }
    let k_full = Matrix::from_fn(rows, r, |j, c| {
        let (k, l) = columns[c];
        let weight = if l == 0 { T::one() } else { T::lit(j as f64).powi(l) };
        k.powi(j as i32) * weight
    });
    let k_top = Matrix::from_fn(r, r, |i, c| k_full[(i, c)]);
    Ok(VandermondeBasis {
        z: set.z,
        k_top,
        k_full,
        multiplicities,
    })
}

/// `det(z K_top - calB K_full) / det K_top` with a plain Vandermonde basis.
/// Only defined when the stable roots are distinct.
pub fn delta_via_basis<T: Real>(cal_b: &Matrix<Complex<T>>, set: &StableRootSet<T>, cluster_tol: T) -> Result<Complex<T>> {
    let basis = basis_matrices(set, cal_b.cols(), cluster_tol)?;
    if basis.multiplicities.iter().any(|&q| q > 1) {
        return Err(Error::MultipleRoot);
    }
    let scaled = basis.k_top.map(|&x| x * set.z);
    let product = cal_b.matmul(&basis.k_full)?;
    let num = Matrix::from_fn(scaled.rows(), scaled.cols(), |i, j| scaled[(i, j)] - product[(i, j)]).det()?;
    let den = basis.k_top.det()?;
    if den.is_zero() {
        return Err(Error::Singular);
    }
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample<T> {
    pub theta: T,
    pub value: Complex<T>,
    /// Bisection level that produced this sample, 0 for the initial grid.
    pub depth: u32,
}

/// Sampled image of the unit circle under the determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct KlCurve<T> {
    pub samples: Vec<CurveSample<T>>,
    pub closed: bool,
    /// Segments still failing the refinement test at maximum depth.
    pub unresolved_segments: usize,
    /// Samples whose root selection split a cluster on the circle.
    pub ambiguous_selections: usize,
}

impl<T: Real> KlCurve<T> {
    pub fn values(&self) -> Vec<Complex<T>> {
        self.samples.iter().map(|s| s.value).collect()
    }

    pub fn max_depth(&self) -> u32 {
        self.samples.iter().map(|s| s.depth).max().unwrap_or(0)
    }

    pub fn winding(&self) -> Result<WindingResult> {
        let mut w = winding_number(&self.values())?;
        w.certified &= self.unresolved_segments == 0;
        Ok(w)
    }
}

/// Jump bound between neighbouring samples of a continuous curve.
pub fn is_continuous<T: Real>(a: Complex<T>, b: Complex<T>) -> bool {
    (b - a).norm() <= T::lit(0.5) * (T::one() + a.norm().min(b.norm()))
}

fn segment_resolved<T: Real>(a: Complex<T>, b: Complex<T>) -> bool {
    let floor = T::lit(ORIGIN_EPSILON);
    a.norm() >= floor && b.norm() >= floor && !needs_refinement(a, b) && is_continuous(a, b)
}

struct Node<T> {
    theta: T,
    value: Complex<T>,
    roots: StableRootSet<T>,
}

struct Tracer<'a, T> {
    scheme: &'a Scheme<T>,
    cal_b: Matrix<Complex<T>>,
    tol: &'a Tolerances,
}

#[derive(Default)]
struct Refined<T> {
    samples: Vec<CurveSample<T>>,
    unresolved: usize,
    ambiguous: usize,
}

impl<T: Real> Tracer<'_, T> {
    fn node(&self, theta: T, prev: Option<&StableRootSet<T>>) -> Result<Node<T>> {
        let z = Complex::from_polar(T::one(), theta);
        let roots = match prev {
            Some(p) => select_continued(self.scheme, z, p, self.tol)?,
            None => select_stable_roots(self.scheme, z, self.tol)?,
        };
        let value = delta_from_roots(&self.cal_b, &roots)?;
        Ok(Node { theta, value, roots })
    }

    fn refine(&self, a: &Node<T>, b: &Node<T>, depth: u32, out: &mut Refined<T>) -> Result<()> {
        if segment_resolved(a.value, b.value) {
            return Ok(());
        }
        if depth >= self.tol.max_depth {
            out.unresolved += 1;
            return Ok(());
        }
        let mid = self.node((a.theta + b.theta) / T::lit(2.0), Some(&a.roots))?;
        self.refine(a, &mid, depth + 1, out)?;
        out.ambiguous += usize::from(mid.roots.ambiguous);
        out.samples.push(CurveSample {
            theta: mid.theta,
            value: mid.value,
            depth: depth + 1,
        });
        self.refine(&mid, b, depth + 1, out)
    }
}

/// Sample the determinant on `n_init` equispaced points of the unit circle and
/// bisect every interval that fails the winding refinement test, up to
/// `tol.max_depth` levels.
pub fn kl_curve<T: Real>(
    scheme: &Scheme<T>,
    bc: &BoundaryCondition<T>,
    n_init: usize,
    tol: &Tolerances,
) -> Result<KlCurve<T>> {
    if n_init == 0 {
        return Err(Error::EmptyGrid);
    }
    let tracer = Tracer {
        scheme,
        cal_b: bc.cal_b().to_complex(),
        tol,
    };
    let step = T::TAU() / T::lit(n_init as f64);
    let mut nodes: Vec<Node<T>> = Vec::with_capacity(n_init + 1);
    for k in 0..n_init {
        let node = tracer.node(step * T::lit(k as f64), nodes.last().map(|n| &n.roots))?;
        nodes.push(node);
    }
    nodes.push(Node {
        theta: T::TAU(),
        value: nodes[0].value,
        roots: nodes[0].roots.clone(),
    });

    let pieces = (0..n_init)
        .into_par_iter()
        .map(|k| {
            let mut out = Refined::default();
            tracer.refine(&nodes[k], &nodes[k + 1], 0, &mut out)?;
            Ok(out)
        })
        .collect::<Result<Vec<Refined<T>>>>()?;

    let mut curve = KlCurve {
        samples: Vec::with_capacity(n_init),
        closed: true,
        unresolved_segments: 0,
        ambiguous_selections: nodes[..n_init].iter().filter(|n| n.roots.ambiguous).count(),
    };
    for (node, piece) in nodes.iter().zip(pieces) {
        curve.samples.push(CurveSample {
            theta: node.theta,
            value: node.value,
            depth: 0,
        });
        curve.samples.extend(piece.samples);
        curve.unresolved_segments += piece.unresolved;
        curve.ambiguous_selections += piece.ambiguous;
    }
    Ok(curve)
}

impl<T: Real> KlCurve<T> {
    pub fn min_distance(&self) -> T {
        self.samples
            .iter()
            .map(|s| s.value.norm())
            .fold(T::infinity(), T::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::SchemeTemplate;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn shift() -> Scheme<f64> {
        Scheme::new(1, 0, vec![1.0, 0.0], 1.0).unwrap()
    }

    #[test]
    fn shift_scheme_root_comes_from_inside() {
        let s = shift();
        for theta in [0.0, 0.3, 2.0, 4.5] {
            let z = Complex::from_polar(1.0, theta);
            let set = select_stable_roots(&s, z, &tol()).unwrap();
            assert_eq!(set.roots.len(), 1);
            assert!((set.roots[0] - Complex::from_polar(1.0, -theta)).norm() < 1e-12);
            assert_eq!(set.origins, vec![RootOrigin::ContinuedFromInside]);
        }
    }

    #[test]
    fn o3_at_z_one_keeps_the_unit_root() {
        let s = SchemeTemplate::O3.build(0.4).unwrap();
        let set = select_stable_roots(&s, Complex::new(1.0, 0.0), &tol()).unwrap();
        assert_eq!(set.roots.len(), 2);
        let on_circle: Vec<_> = set
            .roots
            .iter()
            .zip(&set.origins)
            .filter(|(_, o)| **o == RootOrigin::ContinuedFromInside)
            .map(|(k, _)| *k)
            .collect();
        assert_eq!(on_circle.len(), 1);
        assert!((on_circle[0] - Complex::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn o3_outside_matches_vieta() {
        let s = SchemeTemplate::O3.build(0.4).unwrap();
        let z = Complex::new(2.0, 0.0);
        let set = select_stable_roots(&s, z, &tol()).unwrap();
        assert!(set.origins.iter().all(|o| *o == RootOrigin::StrictInside));
        let (k1, k2) = (set.roots[0], set.roots[1]);
        assert!((set.sigmas[0] - k1 * k2).norm() < 1e-12);
        assert!((set.sigmas[1] + k1 + k2).norm() < 1e-12);
    }

    #[test]
    fn reduction_without_extra_columns_is_identity() {
        let b = Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(reduce_btilde(&b, &[5.0, 6.0]).unwrap(), b);
        assert!(reduce_btilde(&b, &[1.0]).is_err());
    }

    #[test]
    fn zero_boundary_gives_power_of_z() {
        let s = SchemeTemplate::O3.build(0.4).unwrap();
        let bc = BoundaryCondition::from_cal_b(Matrix::zeros(2, 3), &s).unwrap();
        let z = Complex::new(1.2, -0.7);
        let d = delta(&s, &bc, z, &tol()).unwrap();
        assert!((d - z * z).norm() < 1e-12);
        let curve = kl_curve(&s, &bc, 64, &tol()).unwrap();
        let w = curve.winding().unwrap();
        assert_eq!(w.index, 2);
        assert!(w.certified);
    }

    #[test]
    fn basis_layouts() {
        let k1 = Complex::new(0.3, 0.1);
        let k2 = Complex::new(-0.2, 0.4);
        let set = StableRootSet::from_roots(Complex::new(2.0, 0.0), vec![k1, k2], vec![RootOrigin::StrictInside; 2], false);
        let b = basis_matrices(&set, 3, 1e-7).unwrap();
        assert_eq!(b.k_full.row(2), &[k1 * k1, k2 * k2]);
        assert_eq!(b.k_top.shape(), (2, 2));

        let k = Complex::new(0.5, -0.1);
        let double = StableRootSet::from_roots(Complex::new(2.0, 0.0), vec![k, k], vec![RootOrigin::StrictInside; 2], false);
        let b = basis_matrices(&double, 4, 1e-7).unwrap();
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        let expected = [[one, zero], [k, k], [k * k, k * k * 2.0], [k * k * k, k * k * k * 3.0]];
        for (j, row) in expected.iter().enumerate() {
            for c in 0..2 {
                assert!((b.k_full[(j, c)] - row[c]).norm() < 1e-15);
            }
        }
        let cal_b = Matrix::zeros(2, 4);
        assert_eq!(delta_via_basis(&cal_b, &double, 1e-7), Err(Error::MultipleRoot));
    }

    #[test]
    fn continuation_agrees_with_full_selection_around_the_circle() {
        let s = SchemeTemplate::O3.build(0.4).unwrap();
        let mut prev = select_stable_roots(&s, Complex::new(1.0, 0.0), &tol()).unwrap();
        for k in 1..=64 {
            let z = Complex::from_polar(1.0, std::f64::consts::TAU * k as f64 / 64.0);
            let cont = select_continued(&s, z, &prev, &tol()).unwrap();
            let full = select_stable_roots(&s, z, &tol()).unwrap();
            for (a, b) in cont.sigmas.iter().zip(&full.sigmas) {
                assert!((a - b).norm() < 1e-10);
            }
            prev = cont;
        }
    }
}
