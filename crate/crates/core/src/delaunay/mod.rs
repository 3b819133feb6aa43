//! Delaunay triangulations of finite point sets on a surface, computed from
//! the lifted point set in the disk.

mod assemble;
mod lifted;
pub(crate) mod polygon;

pub use assemble::{thick_thin_triangulation, ThickThin};
pub use lifted::{lifted_delaunay, lifted_delaunay_with, DelaunayOptions, PreferredTriangle};

use crate::embedding::{dart_tail, Embedding};
use crate::error::{Error, Result};
use crate::hyp::{self, Mobius, C64};
use crate::surface::atlas::{Atlas, Word};
use crate::surface::cover::SurfacePoint;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// An edge from `u` to the lift of `v` reached along `word` from `u`'s chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriEdge {
    pub u: usize,
    pub v: usize,
    pub word: Word,
}

/// A use of an edge by a triangle, possibly against its stored direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRef {
    pub edge: usize,
    pub reversed: bool,
}

/// A counterclockwise triangle. Corner `i` is the lift of `vertices[i]`
/// reached along `words[i]` from the chart of `vertices[0]`; `words[0]` is
/// empty. Edge `i` runs from corner `i` to corner `i + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub words: [Word; 3],
    pub edges: [EdgeRef; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Resolution {
    /// Split along chords of prescribed triangles.
    Preferred,
    /// Fanned from the first corner of the canonical representative.
    Fan,
    /// Both, in turn.
    Mixed,
}

/// A Delaunay cell with four or more cocircular vertices and how it was cut
/// into triangles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyNote {
    pub vertices: Vec<usize>,
    pub resolution: Resolution,
}

/// A triangulated closed surface with lift data for every edge and face.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriComplex {
    pub genus: usize,
    pub vertices: Vec<SurfacePoint>,
    pub edges: Vec<TriEdge>,
    pub triangles: Vec<Triangle>,
    #[serde(default)]
    pub degeneracies: Vec<DegeneracyNote>,
}

impl TriComplex {
    /// Lift of an edge in the frame of `u`'s chart.
    pub fn edge_lift(&self, atlas: &Atlas, e: usize) -> Result<(C64, C64)> {
        let edge = &self.edges[e];
        let (chart, m) = atlas.eval_word(self.vertices[edge.u].chart, &edge.word)?;
        if chart != self.vertices[edge.v].chart {
            return Err(Error::Parse(format!(
                "edge {e}: word ends in chart {chart}, vertex {} is in chart {}",
                edge.v, self.vertices[edge.v].chart
            )));
        }
        Ok((self.vertices[edge.u].z, m.apply(self.vertices[edge.v].z)))
    }

    /// Length of the geodesic representative of an edge.
    pub fn edge_length(&self, atlas: &Atlas, e: usize) -> Result<f64> {
        let (a, b) = self.edge_lift(atlas, e)?;
        Ok(hyp::dist(a, b))
    }

    /// Maps placing the three corner charts in the frame of corner 0.
    pub fn triangle_maps(&self, atlas: &Atlas, t: usize) -> Result<[Mobius; 3]> {
        let tri = &self.triangles[t];
        let start = self.vertices[tri.vertices[0]].chart;
        let mut out = [Mobius::identity(); 3];
        for i in 0..3 {
            let (chart, m) = atlas.eval_word(start, &tri.words[i])?;
            if chart != self.vertices[tri.vertices[i]].chart {
                return Err(Error::Parse(format!("triangle {t}: corner {i} word ends in the wrong chart")));
            }
            out[i] = m;
        }
        Ok(out)
    }

    /// Corner positions in the frame of corner 0's chart.
    pub fn triangle_lift(&self, atlas: &Atlas, t: usize) -> Result<[C64; 3]> {
        let maps = self.triangle_maps(atlas, t)?;
        let tri = &self.triangles[t];
        Ok([0, 1, 2].map(|i| maps[i].apply(self.vertices[tri.vertices[i]].z)))
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.triangles.len())
    }

    /// `v - e + f`.
    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.counts();
        v as i64 - e as i64 + f as i64
    }

    /// The rotation system induced by the triangles, oriented so that face
    /// tracing returns the triangles themselves.
    pub fn embedding(&self) -> Result<Embedding> {
        let darts = 2 * self.edges.len();
        let mut succ = vec![usize::MAX; darts];
        let leaving = |r: EdgeRef, forward: bool| 2 * r.edge + usize::from(r.reversed == forward);
        for (k, tri) in self.triangles.iter().enumerate() {
            for c in 0..3 {
                let out = leaving(tri.edges[c], true);
                let back = leaving(tri.edges[(c + 2) % 3], false);
                if back >= darts || out >= darts || succ[back] != usize::MAX {
                    return Err(Error::Embedding(format!("triangle {k}: corner {c} reuses a dart")));
                }
                succ[back] = out;
            }
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        let mut rotation = vec![Vec::new(); self.vertices.len()];
        let mut seen = vec![false; darts];
        for d in 0..darts {
            let v = dart_tail(&edges, d);
            if seen[d] || !rotation[v].is_empty() {
                continue;
            }
            let mut x = d;
            loop {
                if x == usize::MAX {
                    return Err(Error::Embedding(format!("dart {d} is not in a closed corner cycle")));
                }
                if seen[x] {
                    break;
                }
                seen[x] = true;
                rotation[v].push(x);
                x = succ[x];
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(Error::Embedding(format!("vertex {} has more than one corner cycle", dart_tail(&edges, d))));
        }
        Ok(Embedding { vertices: self.vertices.len(), edges, rotation })
    }

    pub fn to_file(&self) -> TriangulationFile {
        TriangulationFile {
            genus: self.genus,
            vertices: self.vertices.iter().map(|p| (p.chart, p.z.re, p.z.im)).collect(),
            edges: self.edges.iter().map(|e| (e.u, e.v, e.word.clone())).collect(),
            triangles: self
                .triangles
                .iter()
                .map(|t| TriangleRecord { vertices: t.vertices, words: t.words.clone(), edges: t.edges.map(|r| (r.edge, r.reversed)) })
                .collect(),
            degeneracies: self.degeneracies.clone(),
        }
    }

    pub fn from_file(f: TriangulationFile) -> Result<Self> {
        let n = f.vertices.len();
        let vertices = f
            .vertices
            .iter()
            .map(|&(chart, x, y)| hyp::check_point(C64::new(x, y)).map(|z| SurfacePoint::new(chart, z)))
            .collect::<Result<Vec<_>>>()?;
        let edges: Vec<TriEdge> = f.edges.into_iter().map(|(u, v, word)| TriEdge { u, v, word }).collect();
        for (i, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::Parse(format!("edge {i} references a missing vertex")));
            }
        }
        let mut triangles = Vec::with_capacity(f.triangles.len());
        for (i, t) in f.triangles.into_iter().enumerate() {
            if t.vertices.iter().any(|&v| v >= n) || t.edges.iter().any(|&(e, _)| e >= edges.len()) {
                return Err(Error::Parse(format!("triangle {i} references a missing vertex or edge")));
            }
            triangles.push(Triangle {
                vertices: t.vertices,
                words: t.words,
                edges: t.edges.map(|(edge, reversed)| EdgeRef { edge, reversed }),
            });
        }
        Ok(TriComplex { genus: f.genus, vertices, edges, triangles, degeneracies: f.degeneracies })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        TriComplex::from_file(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        TriComplex::from_json(&std::fs::read_to_string(path)?)
    }
}

/// On-disk triangulation: vertices as `(chart, x, y)`, edges as
/// `(u, v, word)`, triangles as vertex triples with corner words and edge
/// references.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangulationFile {
    pub genus: usize,
    pub vertices: Vec<(usize, f64, f64)>,
    pub edges: Vec<(usize, usize, Word)>,
    pub triangles: Vec<TriangleRecord>,
    #[serde(default)]
    pub degeneracies: Vec<DegeneracyNote>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub vertices: [usize; 3],
    pub words: [Word; 3],
    pub edges: [(usize, bool); 3],
}
