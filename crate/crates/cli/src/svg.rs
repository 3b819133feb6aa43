//! Pictures of an atlas and a triangulation in the Poincaré disk.

use hypdel::delaunay::TriComplex;
use hypdel::hyp;
use hypdel::surface::Atlas;
use hypdel::{Mobius, Result, C64};
use std::fmt::Write;

const SIZE: f64 = 800.0;
const MAX_SAMPLES: usize = 24;

fn xy(z: C64) -> (f64, f64) {
    let r = SIZE / 2.0 - 10.0;
    (SIZE / 2.0 + r * z.re, SIZE / 2.0 - r * z.im)
}

/// Polyline along the geodesic from `p` to `q`.
fn geodesic(out: &mut String, p: C64, q: C64, style: &str) {
    let d = hyp::dist(p, q);
    // Short or far-out segments are nearly straight on the page.
    let samples = (((p - q).norm() * SIZE / 12.0).ceil() as usize).clamp(1, MAX_SAMPLES);
    let pts: Vec<String> = (0..=samples)
        .map(|i| {
            let (x, y) = xy(hyp::along(p, q, d * i as f64 / samples as f64));
            format!("{x:.1},{y:.1}")
        })
        .collect();
    let _ = writeln!(out, r#"<polyline points="{}" {style}/>"#, pts.join(" "));
}

/// The charts placed by the spanning tree, their images under every
/// generator and its inverse, and the triangulation lifted into each copy.
pub fn render(atlas: &Atlas, t: Option<&TriComplex>) -> Result<String> {
    let mut copies = vec![Mobius::identity()];
    for i in 0..atlas.generators.len() {
        let g = atlas.generator_map(i);
        copies.push(g);
        copies.push(g.inverse());
    }
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let (cx, cy) = xy(C64::new(0.0, 0.0));
    let _ = writeln!(out, r##"<circle cx="{cx}" cy="{cy}" r="{}" fill="#fafafa" stroke="black" stroke-width="1.5"/>"##, SIZE / 2.0 - 10.0);
    for (c, g) in copies.iter().enumerate().rev() {
        let style = if c == 0 {
            r##"fill="none" stroke="#4a6fa5" stroke-width="1.2""##
        } else {
            r##"fill="none" stroke="#b8c4d6" stroke-width="0.6""##
        };
        for (k, chart) in atlas.charts.iter().enumerate() {
            let m = g.compose(&atlas.placement[k]);
            let n = chart.vertices.len();
            for i in 0..n {
                geodesic(&mut out, m.apply(chart.vertices[i]), m.apply(chart.vertices[(i + 1) % n]), style);
            }
        }
    }
    if let Some(t) = t {
        for (c, g) in copies.iter().enumerate().rev() {
            let style = if c == 0 {
                r##"fill="none" stroke="#c0392b" stroke-width="1""##
            } else {
                r##"fill="none" stroke="#e6a49c" stroke-width="0.5""##
            };
            for k in 0..t.triangles.len() {
                let chart = t.vertices[t.triangles[k].vertices[0]].chart;
                let m = g.compose(&atlas.placement[chart]);
                let p = t.triangle_lift(atlas, k)?.map(|z| m.apply(z));
                for i in 0..3 {
                    geodesic(&mut out, p[i], p[(i + 1) % 3], style);
                }
            }
        }
        for v in &t.vertices {
            let (x, y) = xy(atlas.placement[v.chart].apply(v.z));
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="black"/>"#);
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
