use num_complex::Complex;
use proptest::prelude::*;

use klstab::poly::Polynomial;
use klstab::winding::{needs_refinement, winding_number};

fn power_curve(r: usize, n: usize) -> Vec<Complex<f64>> {
    (0..n)
        .map(|k| Complex::from_polar(1.0, std::f64::consts::TAU * (r * k) as f64 / n as f64))
        .collect()
}

/// Values of `p` on the unit circle, bisected until no segment needs refinement.
fn trace(p: &Polynomial<f64>) -> Vec<Complex<f64>> {
    let f = |t: f64| p.eval(Complex::from_polar(1.0, t));
    let mut out = Vec::new();
    let n = 32;
    let h = std::f64::consts::TAU / n as f64;
    let mut stack: Vec<(f64, f64)> = (0..n).rev().map(|k| (h * k as f64, h * (k + 1) as f64)).collect();
    while let Some((a, b)) = stack.pop() {
        if needs_refinement(f(a), f(b)) {
            let mid = 0.5 * (a + b);
            stack.push((mid, b));
            stack.push((a, mid));
        } else {
            out.push(f(a));
        }
    }
    out
}

fn root_away_from_circle() -> impl Strategy<Value = Complex<f64>> {
    (prop_oneof![0.0f64..0.95, 1.05f64..4.0], 0.0f64..std::f64::consts::TAU)
        .prop_map(|(m, a)| Complex::from_polar(m, a))
}

#[test]
fn powers_wind_r_times() {
    for r in 1..=8 {
        for n in [4 * r, 5 * r, 64 * r] {
            let w = winding_number(&power_curve(r, n)).unwrap();
            assert_eq!(w.index, r as i64, "r={r} n={n}");
        }
    }
}

proptest! {
    #[test]
    fn rotation_scaling_and_conjugation(
        r in 1usize..=8,
        extra in 0usize..40,
        shift in 0usize..1000,
        modulus in 1e-6f64..1e6,
        angle in 0.0f64..std::f64::consts::TAU,
    ) {
        let samples = power_curve(r, 5 * r + extra);
        let mut rotated = samples.clone();
        rotated.rotate_left(shift % samples.len());
        let factor = Complex::from_polar(modulus, angle);
        let scaled: Vec<_> = samples.iter().map(|&s| s * factor).collect();
        let conjugated: Vec<_> = samples.iter().map(|s| s.conj()).collect();
        let base = winding_number(&samples).unwrap().index;
        prop_assert_eq!(winding_number(&rotated).unwrap().index, base);
        prop_assert_eq!(winding_number(&scaled).unwrap().index, base);
        prop_assert_eq!(winding_number(&conjugated).unwrap().index, -base);
    }

    #[test]
    fn argument_principle(roots in prop::collection::vec(root_away_from_circle(), 1..=6), lead in 0.1f64..10.0) {
        let p = Polynomial::from_roots(&roots);
        let p = Polynomial::new(p.coeffs().iter().map(|&c| c * lead).collect());
        let inside = roots.iter().filter(|k| k.norm() < 1.0).count() as i64;
        let w = winding_number(&trace(&p)).unwrap();
        prop_assert!(w.certified);
        prop_assert_eq!(w.index, inside);
    }
}
