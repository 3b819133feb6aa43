//! Greedy ε/2-separated net of the complement of the thin cylinders.

use super::standard::{standard_cycle, standard_triangulation};
use super::{Cylinder, CylinderClass};
use crate::error::{Error, Result};
use crate::hyp::{self, C64};
use crate::surface::cover::{tiles_within, SurfacePoint};
use crate::surface::{Atlas, Chart};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NetOptions {
    /// Hyperbolic spacing of the candidate grid.
    pub delta: f64,
}

impl NetOptions {
    pub fn for_epsilon(eps: f64) -> Self {
        NetOptions { delta: eps / 100.0 }
    }
}

/// Cylinder vertices plus a greedy net of the rest of the surface.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EpsilonNet {
    pub cylinder_vertices: Vec<SurfacePoint>,
    pub points: Vec<SurfacePoint>,
    pub separation: f64,
    pub delta: f64,
    /// Grid points considered (outside the thin triangles).
    pub candidates: usize,
    /// Grid points dropped because they lie in a thin standard triangle.
    pub excluded: usize,
}

/// Lifts of accepted points near each chart, in that chart's frame.
struct PointIndex {
    reach: f64,
    lifts: Vec<Vec<C64>>,
}

impl PointIndex {
    fn new(atlas: &Atlas, reach: f64) -> Self {
        PointIndex { reach, lifts: vec![Vec::new(); atlas.charts.len()] }
    }

    fn add(&mut self, atlas: &Atlas, p: SurfacePoint) -> Result<()> {
        for t in tiles_within(atlas, p.chart, p.z, self.reach)? {
            self.lifts[t.chart].push(t.map.inverse().apply(p.z));
        }
        Ok(())
    }

    fn closer_than(&self, chart: usize, z: C64, r: f64) -> bool {
        self.lifts[chart].iter().any(|&w| hyp::dist(w, z) < r)
    }
}

/// Thin standard triangles lifted near each chart, as Klein-model triangles.
fn excluded_triangles(atlas: &Atlas, cylinders: &[Cylinder]) -> Result<Vec<Vec<[C64; 3]>>> {
    let mut out = vec![Vec::new(); atlas.charts.len()];
    for cyl in cylinders.iter().filter(|c| c.class == CylinderClass::Thin) {
        let st = standard_triangulation(atlas, cyl)?;
        for tri in &st.triangles {
            let p = tri.map(|r| st.lift.position(r));
            let centroid = hyp::from_klein(p.iter().map(|&z| hyp::to_klein(z)).sum::<C64>() / 3.0);
            let radius = p.iter().map(|&z| hyp::dist(centroid, z)).fold(0.0, f64::max);
            for t in tiles_within(atlas, st.lift.chart, centroid, radius)? {
                let inv = t.map.inverse();
                out[t.chart].push(p.map(|z| hyp::to_klein(inv.apply(z))));
            }
        }
    }
    Ok(out)
}

fn in_klein_triangle(t: &[C64; 3], k: C64) -> bool {
    let cross = |a: C64, b: C64, c: C64| (b - a).re * (c - a).im - (b - a).im * (c - a).re;
    let s = cross(t[0], t[1], t[2]).signum();
    (0..3).all(|i| s * cross(t[i], t[(i + 1) % 3], k) >= -1e-12)
}

/// Centres of an adaptive square grid covering the chart polygon, with
/// hyperbolic cell side at most `delta`.
fn chart_grid(chart: &Chart, delta: f64) -> Vec<C64> {
    let rho = (chart.radius / 2.0).tanh() * (1.0 + 1e-9);
    let mut out = Vec::new();
    let mut stack = vec![(C64::new(0.0, 0.0), rho)];
    while let Some((c, half)) = stack.pop() {
        let far = C64::new(c.re.abs() + half, c.im.abs() + half).norm();
        let near = C64::new((c.re.abs() - half).max(0.0), (c.im.abs() - half).max(0.0)).norm();
        if near >= rho {
            continue;
        }
        let worst = far.min(rho);
        let side = 4.0 * half / (1.0 - worst * worst);
        if side > delta {
            let q = half / 2.0;
            for (dx, dy) in [(-q, -q), (q, -q), (-q, q), (q, q)] {
                stack.push((c + C64::new(dx, dy), q));
            }
        } else if c.norm() < 1.0 && chart.contains(c, 0.0) {
            out.push(c);
        }
    }
    out
}

/// Net with the default grid spacing `ε/100`.
pub fn thick_net(atlas: &Atlas, cylinders: &[Cylinder], eps: f64) -> Result<EpsilonNet> {
    thick_net_with(atlas, cylinders, eps, NetOptions::for_epsilon(eps))
}

/// Greedy maximal set of grid points outside the thin standard triangles,
/// at distance at least `ε/2` from each other and from every cylinder
/// vertex. Candidates are visited in order of `(chart, x, y)`.
pub fn thick_net_with(atlas: &Atlas, cylinders: &[Cylinder], eps: f64, opts: NetOptions) -> Result<EpsilonNet> {
    let max = eps / 100.0;
    if !(opts.delta > 0.0 && opts.delta <= max * (1.0 + 1e-12)) {
        return Err(Error::Mesh { delta: opts.delta, max });
    }
    let sep = eps / 2.0;
    let mut cylinder_vertices = Vec::new();
    for cyl in cylinders {
        match cyl.class {
            CylinderClass::Thin => cylinder_vertices.extend(standard_triangulation(atlas, cyl)?.lift.points),
            CylinderClass::Thick => cylinder_vertices.extend(standard_cycle(atlas, cyl)?.lift.points),
        }
    }
    let excluded_tris = excluded_triangles(atlas, cylinders)?;

    let grids: Vec<(Vec<C64>, usize)> = atlas
        .charts
        .par_iter()
        .enumerate()
        .map(|(k, chart)| {
            let mut g = chart_grid(chart, opts.delta);
            let before = g.len();
            g.retain(|&z| {
                let kz = hyp::to_klein(z);
                !excluded_tris[k].iter().any(|t| in_klein_triangle(t, kz))
            });
            g.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            let dropped = before - g.len();
            (g, dropped)
        })
        .collect();
    if grids.iter().all(|(g, _)| g.is_empty()) && excluded_tris.iter().all(|t| t.is_empty()) {
        return Err(Error::Mesh { delta: opts.delta, max });
    }

    let mut index = PointIndex::new(atlas, sep);
    for &p in &cylinder_vertices {
        index.add(atlas, p)?;
    }
    let mut points = Vec::new();
    let mut candidates = 0;
    let mut excluded = 0;
    for (k, (grid, dropped)) in grids.iter().enumerate() {
        candidates += grid.len();
        excluded += dropped;
        for &z in grid {
            if index.closer_than(k, z, sep) {
                continue;
            }
            let p = SurfacePoint::new(k, z);
            index.add(atlas, p)?;
            points.push(p);
        }
    }
    Ok(EpsilonNet { cylinder_vertices, points, separation: sep, delta: opts.delta, candidates, excluded })
}
