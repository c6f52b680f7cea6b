use std::fs::File;

use klstab::export::{map_svg, read_curve_csv, read_map_csv, write_curve_csv, write_map_csv};
use klstab::kldet::kl_curve;
use klstab::verdict::{linspace, trace};
use klstab::{sweep, winding_number, BoundarySpec, SchemeTemplate, Tolerances};

#[test]
fn curve_file_reproduces_the_winding_number() {
    let dir = tempfile::tempdir().unwrap();
    let tol = Tolerances::default();
    for (template, boundary, lambda) in [
        (SchemeTemplate::O3, BoundarySpec::Reconstruction { d: 3, k_d: 0, sigma: -0.4 }, 0.4),
        (SchemeTemplate::O3, BoundarySpec::Reconstruction { d: 3, k_d: 0, sigma: 0.4 }, 0.9),
        (SchemeTemplate::Lw5, BoundarySpec::Reconstruction { d: 6, k_d: 1, sigma: 0.0 }, 0.3),
    ] {
        let traced = trace::<f64>(&template, &boundary, lambda, &tol);
        let curve = traced.curve.unwrap();
        let path = dir.path().join("curve.csv");
        write_curve_csv(&curve, File::create(&path).unwrap()).unwrap();
        let samples = read_curve_csv(File::open(&path).unwrap()).unwrap();
        assert_eq!(samples, curve.samples);
        let values: Vec<_> = samples.iter().map(|s| s.value).collect();
        assert_eq!(Some(winding_number(&values).unwrap().index), traced.verdict.winding);
    }
}

#[test]
fn repeated_exports_are_byte_identical() {
    let tol = Tolerances::default();
    let boundary = BoundarySpec::Reconstruction { d: 4, k_d: 1, sigma: 0.0 };
    let render = || {
        let s = SchemeTemplate::O3.build(0.7).unwrap();
        let bc = boundary.build(&s).unwrap();
        let mut curve_bytes = Vec::new();
        write_curve_csv(&kl_curve(&s, &bc, 64, &tol).unwrap(), &mut curve_bytes).unwrap();
        let grid = sweep(&SchemeTemplate::O3, &boundary, &linspace(0.1, 1.0, 5), &linspace(-0.4, 0.4, 3), &tol).unwrap();
        let mut map_bytes = Vec::new();
        write_map_csv(&grid, &mut map_bytes).unwrap();
        (curve_bytes, map_bytes, map_svg(&grid, "o3"))
    };
    let first = render();
    assert_eq!(first, render());
    assert_eq!(read_map_csv(first.1.as_slice()).unwrap().len(), 15);
}
