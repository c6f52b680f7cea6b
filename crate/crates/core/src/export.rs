//! CSV and SVG artifacts.

use std::fmt::Write as _;
use std::io::{Read, Write};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::kldet::{CurveSample, KlCurve};
use crate::oracle::SimulationRun;
use crate::verdict::{Status, SweepGrid};

/// 17 significant digits.
fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Curve CSV with header `theta,re,im,depth`.
pub fn write_curve_csv<W: Write>(curve: &KlCurve<f64>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["theta", "re", "im", "depth"])?;
    for s in &curve.samples {
        w.write_record([
            sci(s.theta),
            sci(s.value.re),
            sci(s.value.im),
            s.depth.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_curve_csv<R: Read>(input: R) -> Result<Vec<CurveSample<f64>>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != ["theta", "re", "im", "depth"] {
        return Err(Error::Parse(format!("unexpected curve header {header:?}")));
    }
    let mut samples = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let field = |i: usize| -> Result<&str> {
            record
                .get(i)
                .ok_or_else(|| Error::Parse(format!("short curve row {record:?}")))
        };
        let num = |i: usize| -> Result<f64> {
            let text = field(i)?;
            text.parse()
                .map_err(|_| Error::Parse(format!("bad number `{text}` in curve row")))
        };
        let depth_text = field(3)?;
        samples.push(CurveSample {
            theta: num(0)?,
            value: Complex::new(num(1)?, num(2)?),
            depth: depth_text
                .parse()
                .map_err(|_| Error::Parse(format!("bad depth `{depth_text}`")))?,
        });
    }
    Ok(samples)
}

/// Map CSV with header `lambda,sigma,winding,zeros,status`, row-major in lambda.
pub fn write_map_csv<W: Write>(grid: &SweepGrid, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lambda", "sigma", "winding", "zeros", "status"])?;
    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    for (lambda, sigma, v) in grid.cells() {
        w.write_record([
            lambda.to_string(),
            sigma.to_string(),
            opt(v.winding),
            opt(v.unstable_zeros),
            v.status.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One row of a map CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct MapRow {
    pub lambda: f64,
    pub sigma: f64,
    pub winding: Option<i64>,
    pub zeros: Option<i64>,
    pub status: Status,
}

pub fn read_map_csv<R: Read>(input: R) -> Result<Vec<MapRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let bad = || Error::Parse(format!("bad map row {record:?}"));
        let get = |i: usize| record.get(i).ok_or_else(bad);
        let opt = |i: usize| -> Result<Option<i64>> {
            let t = get(i)?;
            if t.is_empty() {
                Ok(None)
            } else {
                t.parse().map(Some).map_err(|_| bad())
            }
        };
        rows.push(MapRow {
            lambda: get(0)?.parse().map_err(|_| bad())?,
            sigma: get(1)?.parse().map_err(|_| bad())?,
            winding: opt(2)?,
            zeros: opt(3)?,
            status: get(4)?.parse()?,
        });
    }
    Ok(rows)
}

/// Fill colour of a map cell. Marginal cells use the unstable palette.
pub fn cell_color(status: Status, zeros: Option<i64>) -> &'static str {
    const UNSTABLE: [&str; 4] = ["#f4a261", "#e76f51", "#b5179e", "#560bad"];
    match (status, zeros) {
        (Status::InvalidPrecondition, _) => "#bdbdbd",
        (Status::Stable, _) => "#2a9d8f",
        (_, z) => {
            let k = z.unwrap_or(1).max(1) as usize;
            UNSTABLE[(k - 1).min(UNSTABLE.len() - 1)]
        }
    }
}

/// Heatmap of the number of unstable zeros: lambda grows to the right, sigma upwards.
pub fn map_svg(grid: &SweepGrid, title: &str) -> String {
    const CELL: usize = 12;
    const LEFT: usize = 60;
    const TOP: usize = 30;
    const BOTTOM: usize = 50;
    let (nl, ns) = (grid.lambda_values.len(), grid.sigma_values.len());
    let width = LEFT + nl * CELL + 150;
    let height = TOP + ns * CELL + BOTTOM;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<text x="{LEFT}" y="18" font-size="13">{}</text>"#, escape(title));
    for (i, _) in grid.lambda_values.iter().enumerate() {
        for (k, _) in grid.sigma_values.iter().enumerate() {
            let v = grid.get(i, k);
            let x = LEFT + i * CELL;
            let y = TOP + (ns - 1 - k) * CELL;
            let zeros = v.unstable_zeros.map_or_else(|| "-".to_string(), |z| z.to_string());
            let _ = writeln!(
                svg,
                r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}"><title>lambda={} sigma={} zeros={zeros} {}</title></rect>"#,
                cell_color(v.status, v.unstable_zeros),
                grid.lambda_values[i],
                grid.sigma_values[k],
                v.status
            );
        }
    }
    let plot_bottom = TOP + ns * CELL;
    let plot_right = LEFT + nl * CELL;
    let first = |v: &[f64]| v.first().copied().unwrap_or(0.0);
    let last = |v: &[f64]| v.last().copied().unwrap_or(0.0);
    let _ = writeln!(
        svg,
        r#"<text x="{LEFT}" y="{}">{}</text><text x="{plot_right}" y="{}" text-anchor="end">{}</text>"#,
        plot_bottom + 14,
        first(&grid.lambda_values),
        plot_bottom + 14,
        last(&grid.lambda_values)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">λ</text>"#,
        LEFT + nl * CELL / 2,
        plot_bottom + 34
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{plot_bottom}" text-anchor="end">{}</text><text x="{}" y="{}" text-anchor="end">{}</text>"#,
        LEFT - 4,
        first(&grid.sigma_values),
        LEFT - 4,
        TOP + 10,
        last(&grid.sigma_values)
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{}" text-anchor="middle">σ</text>"#,
        TOP + ns * CELL / 2
    );
    let legend = [
        ("0 zeros (stable)", cell_color(Status::Stable, Some(0))),
        ("1 zero", cell_color(Status::Unstable, Some(1))),
        ("2 zeros", cell_color(Status::Unstable, Some(2))),
        ("3 zeros", cell_color(Status::Unstable, Some(3))),
        ("4+ zeros", cell_color(Status::Unstable, Some(4))),
        ("invalid", cell_color(Status::InvalidPrecondition, None)),
    ];
    for (k, (label, color)) in legend.iter().enumerate() {
        let y = TOP + k * 18;
        let _ = writeln!(
            svg,
            r#"<rect x="{}" y="{y}" width="12" height="12" fill="{color}"/><text x="{}" y="{}">{label}</text>"#,
            plot_right + 16,
            plot_right + 34,
            y + 10
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Simulation dump with header `n,j,u`.
pub fn write_simulation_csv<W: Write>(run: &SimulationRun<f64>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "j", "u"])?;
    for (n, row) in run.history.iter().enumerate() {
        for (j, &u) in row.iter().enumerate() {
            w.write_record([n.to_string(), j.to_string(), sci(u)])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::{Diagnostics, StabilityVerdict};

    #[test]
    fn curve_csv_round_trip_is_exact() {
        let curve = KlCurve {
            samples: vec![
                CurveSample { theta: 0.0, value: Complex::new(1.0 / 3.0, -2.0e-17), depth: 0 },
                CurveSample { theta: 0.1, value: Complex::new(-7.25e10, std::f64::consts::PI), depth: 3 },
            ],
            closed: true,
            unresolved_segments: 0,
            ambiguous_selections: 0,
        };
        let mut buf = Vec::new();
        write_curve_csv(&curve, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("theta,re,im,depth\n"));
        assert_eq!(read_curve_csv(buf.as_slice()).unwrap(), curve.samples);
    }

    #[test]
    fn map_csv_round_trip() {
        let verdict = |status, w: Option<i64>| StabilityVerdict {
            winding: w,
            unstable_zeros: w.map(|w| 2 - w),
            status,
            diagnostics: Diagnostics::default(),
        };
        let grid = SweepGrid {
            lambda_values: vec![0.1, 0.2],
            sigma_values: vec![-0.3],
            results: vec![verdict(Status::Stable, Some(2)), verdict(Status::InvalidPrecondition, None)],
        };
        let mut buf = Vec::new();
        write_map_csv(&grid, &mut buf).unwrap();
        let rows = read_map_csv(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].zeros, Some(0));
        assert_eq!(rows[1].status, Status::InvalidPrecondition);
        assert_eq!(rows[1].winding, None);
        let svg = map_svg(&grid, "test");
        assert_eq!(svg.matches("<rect").count(), 2 + 6);
    }

    #[test]
    fn colors_are_distinct_per_zero_count() {
        let colors: Vec<_> = (0..5)
            .map(|z| cell_color(if z == 0 { Status::Stable } else { Status::Unstable }, Some(z)))
            .collect();
        for i in 0..colors.len() {
            for j in i + 1..colors.len() {
                assert_ne!(colors[i], colors[j]);
            }
        }
    }
}
