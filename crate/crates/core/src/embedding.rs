//! Rotation systems on multigraphs and face tracing.
//!
//! Edge `e = (u, v)` has two darts: `2e` leaves `u`, `2e + 1` leaves `v`.
//! A rotation lists, per vertex, the darts leaving it in cyclic order. The
//! face after dart `d` continues with the rotation successor of `d ^ 1`.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub rotation: Vec<Vec<usize>>,
}

/// Faces of an embedding, each as its cyclic dart sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct Faces {
    pub faces: Vec<Vec<usize>>,
    /// Vertices without edges; each counts as one face of its own sphere.
    pub isolated: usize,
    pub components: usize,
}

pub fn dart_tail(edges: &[(usize, usize)], d: usize) -> usize {
    let (u, v) = edges[d / 2];
    if d % 2 == 0 {
        u
    } else {
        v
    }
}

pub fn dart_head(edges: &[(usize, usize)], d: usize) -> usize {
    dart_tail(edges, d ^ 1)
}

impl Embedding {
    fn successors(&self) -> Result<Vec<usize>> {
        let darts = 2 * self.edges.len();
        let mut succ = vec![usize::MAX; darts];
        for (v, rot) in self.rotation.iter().enumerate() {
            for (k, &d) in rot.iter().enumerate() {
                if d >= darts {
                    return Err(Error::Embedding(format!("dart {d} at vertex {v} does not exist")));
                }
                if dart_tail(&self.edges, d) != v {
                    return Err(Error::Embedding(format!("dart {d} listed at {v} leaves {}", dart_tail(&self.edges, d))));
                }
                if succ[d] != usize::MAX {
                    return Err(Error::Embedding(format!("dart {d} listed twice")));
                }
                succ[d] = rot[(k + 1) % rot.len()];
            }
        }
        if let Some(d) = succ.iter().position(|&s| s == usize::MAX) {
            return Err(Error::Embedding(format!("dart {d} missing from the rotation at {}", dart_tail(&self.edges, d))));
        }
        Ok(succ)
    }

    /// Traces every face. Each dart lies on exactly one face.
    pub fn trace(&self) -> Result<Faces> {
        if self.rotation.len() != self.vertices {
            return Err(Error::Embedding(format!("{} rotations for {} vertices", self.rotation.len(), self.vertices)));
        }
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| u >= self.vertices || v >= self.vertices) {
            return Err(Error::Embedding(format!("edge ({u}, {v}) has an endpoint out of range")));
        }
        let succ = self.successors()?;
        let mut seen = vec![false; succ.len()];
        let mut faces = Vec::new();
        for start in 0..succ.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = succ[d ^ 1];
            }
            if d != start {
                return Err(Error::Embedding(format!("face walk from dart {start} does not close")));
            }
            faces.push(face);
        }
        let isolated = self.rotation.iter().filter(|r| r.is_empty()).count();
        Ok(Faces { faces, isolated, components: self.components() })
    }

    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let n = p[x];
                p[x] = r;
                x = n;
            }
            r
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        (0..self.vertices).filter(|&x| find(&mut parent, x) == x).count()
    }
}

impl Faces {
    pub fn count(&self) -> usize {
        self.faces.len() + self.isolated
    }

    /// Total genus of the embedded components, from
    /// `v - e + f = 2c - 2g`. Fails if the parity is off.
    pub fn genus(&self, vertices: usize, edges: usize) -> Result<usize> {
        let twice = 2 * self.components as i64 - vertices as i64 + edges as i64 - self.count() as i64;
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::Embedding(format!("Euler characteristic gives genus {}/2", twice)));
        }
        Ok(twice as usize / 2)
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }
}
