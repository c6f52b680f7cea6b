//! Winding number of the origin with respect to a closed polygon.
//!
//! The argument is tracked by counting signed quadrant transitions, so the
//! result is an integer computed without any accumulated floating point angle.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Samples closer than this to the origin are treated as lying on it.
pub const ORIGIN_EPSILON: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingResult {
    pub index: i64,
    /// Smallest sample modulus.
    pub min_distance: f64,
    /// Every segment satisfied [`needs_refinement`] negatively.
    pub certified: bool,
}

/// Quadrant of a nonzero point, half-open so every axis ray belongs to exactly one.
fn quadrant<T: Real>(s: Complex<T>) -> i64 {
    let zero = T::zero();
    if s.re > zero && s.im >= zero {
        0
    } else if s.re <= zero && s.im > zero {
        1
    } else if s.re < zero && s.im <= zero {
        2
    } else {
        3
    }
}

/// Signed quarter turns from `a` to `b` along the straight segment, and whether
/// the segment hits the origin.
fn quarter_turns<T: Real>(a: Complex<T>, b: Complex<T>) -> (i64, bool) {
    match (quadrant(b) - quadrant(a)).rem_euclid(4) {
        0 => (0, false),
        1 => (1, false),
        3 => (-1, false),
        _ => {
            let cross = a.re * b.im - a.im * b.re;
            if cross > T::zero() {
                (2, false)
            } else if cross < T::zero() {
                (-2, false)
            } else {
                (2, true)
            }
        }
    }
}

/// Distance from the origin to the segment `[a, b]`.
pub fn segment_distance<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == T::zero() {
        return a.norm();
    }
    let t = (-(a.re * d.re + a.im * d.im) / len2)
        .max(T::zero())
        .min(T::one());
    (a + d * t).norm()
}

/// True when the segment turns by more than a quarter turn around the origin, or
/// comes closer to it than `max(1e-12, 0.1 min(|a|, |b|))`.
pub fn needs_refinement<T: Real>(a: Complex<T>, b: Complex<T>) -> bool {
    let turn = (b * a.conj()).arg().abs();
    if turn > T::FRAC_PI_2() {
        return true;
    }
    let guard = T::lit(1e-12).max(T::lit(0.1) * a.norm().min(b.norm()));
    segment_distance(a, b) < guard
}

/// Winding number of the closed polygon through `samples` (the last sample
/// connects back to the first).
pub fn winding_number<T: Real>(samples: &[Complex<T>]) -> Result<WindingResult> {
    let mut min_distance = f64::INFINITY;
    for s in samples {
        let m = s.norm().to_f64_lossy();
        if !(m >= ORIGIN_EPSILON) {
            return Err(Error::OriginOnCurve);
        }
        min_distance = min_distance.min(m);
    }
    if samples.is_empty() {
        return Ok(WindingResult {
            index: 0,
            min_distance,
            certified: false,
        });
    }
    let mut turns = 0i64;
    let mut certified = true;
    for (k, &a) in samples.iter().enumerate() {
        let b = samples[(k + 1) % samples.len()];
        let (q, through_origin) = quarter_turns(a, b);
        turns += q;
        if through_origin || needs_refinement(a, b) {
            certified = false;
        }
    }
    debug_assert_eq!(turns.rem_euclid(4), 0);
    Ok(WindingResult {
        index: turns.div_euclid(4),
        min_distance,
        certified,
    })
}
