//! Vertex and edge sets placed on the waist and boundary curves of a
//! cylinder.

use super::{Cylinder, CylinderClass};
use crate::error::{Error, Result};
use crate::hyp::{self, Mobius, C64};
use crate::surface::cover::{locate, SurfacePoint};
use crate::surface::Atlas;
use serde::{Deserialize, Serialize};

/// A lift of a cylinder vertex: the stored lift moved `turns` times around
/// the waist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiftRef {
    pub vertex: usize,
    pub turns: i32,
}

const fn at(vertex: usize, turns: i32) -> LiftRef {
    LiftRef { vertex, turns }
}

/// Vertices of a cylinder construction lifted side by side in the frame of
/// the waist's chart.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CylinderLift {
    pub chart: usize,
    pub element: Mobius,
    pub positions: Vec<C64>,
    pub points: Vec<SurfacePoint>,
}

impl CylinderLift {
    fn new(atlas: &Atlas, chart: usize, element: Mobius, positions: Vec<C64>) -> Result<Self> {
        let points = positions.iter().map(|&z| locate(atlas, chart, z).map(|(_, p)| p)).collect::<Result<_>>()?;
        Ok(CylinderLift { chart, element, positions, points })
    }

    pub fn position(&self, r: LiftRef) -> C64 {
        let m = if r.turns >= 0 { self.element } else { self.element.inverse() };
        (0..r.turns.unsigned_abs()).fold(self.positions[r.vertex], |z, _| m.apply(z))
    }
}

/// The nine-vertex triangulation of a thin cylinder. Vertices are the waist
/// points `0..3`, the points above them on the left boundary `3..6` and
/// those on the right boundary `6..9`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StandardTriangulation {
    pub lift: CylinderLift,
    pub edges: Vec<[LiftRef; 2]>,
    /// Counterclockwise in the lift frame.
    pub triangles: Vec<[LiftRef; 3]>,
}

/// Three equally spaced waist points of a thick cylinder and the arcs
/// between them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StandardCycle {
    pub lift: CylinderLift,
    pub edges: Vec<[LiftRef; 2]>,
}

fn next(i: usize) -> (usize, i32) {
    if i == 2 {
        (0, 1)
    } else {
        (i + 1, 0)
    }
}

pub fn standard_triangulation(atlas: &Atlas, cyl: &Cylinder) -> Result<StandardTriangulation> {
    if cyl.class != CylinderClass::Thin {
        return Err(Error::WrongClassification { length: cyl.length, expected: "thin" });
    }
    let f = cyl.frame(atlas)?;
    let step = cyl.length / 3.0;
    let mut positions = Vec::with_capacity(9);
    for h in [0.0, cyl.k_c, -cyl.k_c] {
        for i in 0..3 {
            positions.push(f.point(i as f64 * step, h));
        }
    }
    let lift = CylinderLift::new(atlas, f.chart, f.element, positions)?;
    let (up, down) = (3, 6);
    let mut edges = Vec::with_capacity(21);
    let mut triangles = Vec::with_capacity(12);
    for i in 0..3 {
        let (j, w) = next(i);
        edges.push([at(down + i, 0), at(down + j, w)]);
        edges.push([at(down + i, 0), at(i, 0)]);
        edges.push([at(down + i, 0), at(j, w)]);
        edges.push([at(i, 0), at(j, w)]);
        edges.push([at(i, 0), at(up + i, 0)]);
        edges.push([at(i, 0), at(up + j, w)]);
        edges.push([at(up + i, 0), at(up + j, w)]);
        triangles.push([at(i, 0), at(j, w), at(up + j, w)]);
        triangles.push([at(i, 0), at(up + j, w), at(up + i, 0)]);
        triangles.push([at(down + i, 0), at(down + j, w), at(j, w)]);
        triangles.push([at(down + i, 0), at(j, w), at(i, 0)]);
    }
    Ok(StandardTriangulation { lift, edges, triangles })
}

pub fn standard_cycle(atlas: &Atlas, cyl: &Cylinder) -> Result<StandardCycle> {
    if cyl.class != CylinderClass::Thick {
        return Err(Error::WrongClassification { length: cyl.length, expected: "thick" });
    }
    let f = cyl.frame(atlas)?;
    let positions = (0..3).map(|i| f.point(i as f64 * cyl.length / 3.0, 0.0)).collect();
    let lift = CylinderLift::new(atlas, f.chart, f.element, positions)?;
    let edges = (0..3)
        .map(|i| {
            let (j, w) = next(i);
            [at(i, 0), at(j, w)]
        })
        .collect();
    Ok(StandardCycle { lift, edges })
}

impl StandardTriangulation {
    pub fn edge_length(&self, e: usize) -> f64 {
        let [a, b] = self.edges[e];
        hyp::dist(self.lift.position(a), self.lift.position(b))
    }
}

impl StandardCycle {
    pub fn edge_length(&self, e: usize) -> f64 {
        let [a, b] = self.edges[e];
        hyp::dist(self.lift.position(a), self.lift.position(b))
    }
}
