use num_complex::Complex;
use proptest::prelude::*;

use klstab::boundary::{build_cal_b, ReconstructionSpec};
use klstab::linalg::Matrix;
use klstab::SchemeTemplate;

const TEMPLATES: [SchemeTemplate; 4] = [
    SchemeTemplate::Upwind,
    SchemeTemplate::NaiveAverage,
    SchemeTemplate::O3,
    SchemeTemplate::Lw5,
];

fn template() -> impl Strategy<Value = SchemeTemplate> {
    (0..TEMPLATES.len()).prop_map(|i| TEMPLATES[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn outside_the_disk_roots_split_r_p(
        t in template(),
        lambda in 0.01f64..=1.0,
        zs in prop::collection::vec((0.0043f64..2.0, 0.0f64..std::f64::consts::TAU), 200),
    ) {
        let s = t.build(lambda).unwrap();
        for (log_r, angle) in zs {
            let z = Complex::from_polar(10f64.powf(log_r), angle);
            let roots = s.characteristic_polynomial(z).find_roots(1e-12).unwrap();
            let (inside, outside) = s.hersh_split(z, &roots, 1e-9).unwrap();
            prop_assert_eq!((inside.len(), outside.len()), (s.r(), s.p()));
        }
    }

    #[test]
    fn symbol_is_periodic(t in template(), lambda in 0.01f64..=1.0, xi in -10.0f64..10.0) {
        let s = t.build(lambda).unwrap();
        prop_assert!((s.symbol(xi) - s.symbol(xi + std::f64::consts::TAU)).norm() <= 1e-12);
    }

    #[test]
    fn symbol_value_has_a_unit_root(t in template(), lambda in 0.01f64..=1.0, xi in 0.0f64..std::f64::consts::TAU) {
        let s = t.build(lambda).unwrap();
        let p = s.characteristic_polynomial(s.symbol(xi));
        prop_assert!(p.eval(Complex::from_polar(1.0, xi)).norm() <= 1e-10);
    }

    #[test]
    fn stencils_are_consistent(t in template(), lambda in 0.01f64..=1.0) {
        let s = t.build(lambda).unwrap();
        prop_assert!((s.coeffs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn ghost_elimination_is_affine(
        lambda in 0.05f64..0.95,
        b1 in prop::collection::vec(-5.0f64..5.0, 6),
        b2 in prop::collection::vec(-5.0f64..5.0, 6),
    ) {
        let s = SchemeTemplate::O3.build(lambda).unwrap();
        let mat = |v: &[f64]| Matrix::from_fn(2, 3, |i, j| v[3 * i + j]);
        let sum: Vec<f64> = b1.iter().zip(&b2).map(|(x, y)| x + y).collect();
        let f = |b: &Matrix<f64>| build_cal_b(b, &s).unwrap();
        let combo = f(&mat(&sum));
        let parts = [f(&mat(&b1)), f(&mat(&b2)), f(&Matrix::zeros(2, 3))];
        for i in 0..2 {
            for j in 0..3 {
                let residual = combo[(i, j)] - parts[0][(i, j)] - parts[1][(i, j)] + parts[2][(i, j)];
                prop_assert!(residual.abs() <= 1e-12 * (1.0 + combo[(i, j)].abs()));
            }
        }
    }
}

#[test]
fn interior_rows_flip_sign_with_power_parity() {
    for (d, k_d) in [(3, 0), (4, 0), (4, 1), (5, 0), (6, 1), (6, 2)] {
        let spec = ReconstructionSpec::new(d, k_d, 0.0f64).unwrap();
        let n = spec.unknowns();
        let (y_minus, y_plus) = spec.matrices(n);
        // Y- row i holds cell -(n - i); Y+ row i holds cell i. Cell j and cell -j
        // are mirror images at zero offset.
        for i in 1..n {
            for col in 0..n {
                let power = col as i64 + k_d + 2;
                let mirrored = y_minus[(n - i, col)];
                let expected = if power % 2 == 0 { -y_plus[(i, col)] } else { y_plus[(i, col)] };
                assert!(
                    (mirrored - expected).abs() <= 1e-12 * (1.0 + expected.abs()),
                    "R{d},{k_d} row {i} col {col}"
                );
            }
        }
    }
}
