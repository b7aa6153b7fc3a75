//! In-plane magnetization snapshots as SVG vector fields.

use std::fmt::Write;

use crate::analysis::{PolarSample, PHASE_EPS};
use crate::error::{Error, Result};
use crate::lattice::LatticeGraph;
use crate::record::TrajectoryRecord;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 30.0;

/// One arrow per site at its layout coordinate, pointing along
/// `atan2(<Y>, <X>)`. Lengths are proportional to `R_j`, rescaled so the
/// longest arrow in this panel spans 0.8 layout units. Sites with `R_j = 0`
/// are drawn as dots.
pub fn snapshot_svg(record: &TrajectoryRecord, graph: &LatticeGraph, n: usize) -> Result<String> {
    let y = record.y_table()?;
    if graph.num_sites() != record.num_sites() {
        return Err(Error::InvalidInput("graph and record sizes differ".into()));
    }
    if n >= record.num_steps() {
        return Err(Error::InvalidInput(format!("step {n} beyond record of {} steps", record.num_steps())));
    }
    let coords = graph.coords();
    let (min_x, max_x) = coords.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), c| (a.min(c.0), b.max(c.0)));
    let (min_y, max_y) = coords.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), c| (a.min(c.1), b.max(c.1)));
    let width = (max_x - min_x) * SCALE + 2.0 * MARGIN;
    let height = (max_y - min_y) * SCALE + 2.0 * MARGIN;
    let px = |c: (f64, f64)| (MARGIN + (c.0 - min_x) * SCALE, MARGIN + (c.1 - min_y) * SCALE);

    let samples: Vec<PolarSample> = (0..graph.num_sites()).map(|j| PolarSample::from_xy(record.x[n][j], y[n][j])).collect();
    let r_max = samples.iter().map(|s| s.amplitude).fold(0.0, f64::max);
    let unit = if r_max > PHASE_EPS { 0.8 * SCALE / r_max } else { 0.0 };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(svg, r#"<title>step {n}</title>"#);
    let _ = writeln!(svg, r##"<g stroke="#bbbbbb" stroke-width="1">"##);
    for &(a, b) in graph.edges() {
        let (p, q) = (px(coords[a]), px(coords[b]));
        let _ = writeln!(svg, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, p.0, p.1, q.0, q.1);
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r##"<g stroke="#1f4e99" fill="#1f4e99" stroke-width="2">"##);
    for (j, s) in samples.iter().enumerate() {
        let c = px(coords[j]);
        match s.phase {
            Some(theta) => {
                // SVG y grows downward
                let len = s.amplitude * unit;
                let (dx, dy) = (0.5 * len * theta.cos(), -0.5 * len * theta.sin());
                let (tail, tip) = ((c.0 - dx, c.1 - dy), (c.0 + dx, c.1 + dy));
                let _ = writeln!(
                    svg,
                    r#"<line data-site="{j}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                    tail.0, tail.1, tip.0, tip.1
                );
                let head = 0.3 * len.min(0.4 * SCALE);
                let back = |sign: f64| {
                    let a = -theta + std::f64::consts::PI + sign * 0.45;
                    (tip.0 + head * a.cos(), tip.1 + head * a.sin())
                };
                let (l, r) = (back(1.0), back(-1.0));
                let _ = writeln!(
                    svg,
                    r#"<polygon data-site="{j}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
                    tip.0, tip.1, l.0, l.1, r.0, r.1
                );
            }
            None => {
                let _ = writeln!(svg, r#"<circle data-site="{j}" cx="{:.2}" cy="{:.2}" r="2.5"/>"#, c.0, c.1);
            }
        }
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::load_edge_list;

    #[test]
    fn ferro_arrows_point_along_x() {
        let g = load_edge_list("0 1\n1 2\n").unwrap();
        let rec = TrajectoryRecord::from_tables(vec![vec![1.0; 3]], Some(vec![vec![0.0; 3]])).unwrap();
        let svg = snapshot_svg(&rec, &g, 0).unwrap();
        let lines: Vec<&str> = svg.lines().filter(|l| l.starts_with("<line data-site")).collect();
        assert_eq!(lines.len(), 3);
        for l in lines {
            let attr = |k: &str| -> f64 {
                let s = &l[l.find(&format!(" {k}=\"")).unwrap() + k.len() + 3..];
                s[..s.find('"').unwrap()].parse().unwrap()
            };
            assert!(attr("x2") > attr("x1"));
            assert_eq!(attr("y1"), attr("y2"));
        }
    }

    #[test]
    fn zero_amplitude_is_a_dot() {
        let g = load_edge_list("0 1\n").unwrap();
        let rec = TrajectoryRecord::from_tables(vec![vec![0.5, 0.0]], Some(vec![vec![0.0, 0.0]])).unwrap();
        let svg = snapshot_svg(&rec, &g, 0).unwrap();
        assert!(svg.contains(r#"<circle data-site="1""#));
        assert!(!svg.contains(r#"<circle data-site="0""#));
        let no_y = TrajectoryRecord::from_tables(vec![vec![0.5, 0.0]], None).unwrap();
        assert!(matches!(snapshot_svg(&no_y, &g, 0), Err(Error::RequiresY)));
    }
}
