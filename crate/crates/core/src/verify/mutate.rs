//! Single-element corruptions of a triangulation, for testing that the
//! checks catch them.

use crate::delaunay::TriComplex;
use crate::error::{Error, Result};
use crate::hyp;
use crate::surface::cover::{lifts_near, tiles_within};
use crate::surface::{Atlas, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mutation {
    /// `vertex` moved to half the circumradius from the circumcentre of
    /// `into`, a triangle across from it.
    MoveVertex {
        vertex: usize,
        into: usize,
    },
    /// `edge` re-routed around the closed path `detour` at its far end.
    RerouteEdge {
        edge: usize,
        detour: Word,
    },
    DeleteTriangle {
        triangle: usize,
    },
}

pub(crate) fn move_vertex(t: &TriComplex, atlas: &Atlas, rng: &mut impl Rng) -> Result<Option<(TriComplex, Mutation)>> {
    let k = rng.gen_range(0..t.triangles.len());
    let i = rng.gen_range(0..3);
    let tri = &t.triangles[k];
    let vertex = tri.vertices[(i + 2) % 3];
    let edge = tri.edges[i].edge;
    let Some(into) = (0..t.triangles.len()).find(|&j| j != k && t.triangles[j].edges.iter().any(|r| r.edge == edge)) else {
        return Ok(None);
    };
    if t.triangles[into].vertices.contains(&vertex) {
        return Ok(None);
    }
    let p = t.triangle_lift(atlas, into)?;
    let circle = hyp::circumdisk(p[0], p[1], p[2])?;
    let chart = t.vertices[t.triangles[into].vertices[0]].chart;
    let lifts = lifts_near(atlas, t.vertices[vertex], chart, circle.center, circle.radius + 2.0)?;
    let Some(near) = lifts.first() else { return Ok(None) };
    let (_, m) = atlas.eval_word(chart, &near.word)?;
    let target = hyp::along(circle.center, near.position, circle.radius / 2.0);
    let z = m.inverse().apply(target);
    if z.norm() >= 1.0 - 1e-9 {
        return Ok(None);
    }
    let mut out = t.clone();
    out.vertices[vertex].z = z;
    Ok(Some((out, Mutation::MoveVertex { vertex, into })))
}

fn reroute_edge(t: &TriComplex, atlas: &Atlas, rng: &mut impl Rng) -> Result<Option<(TriComplex, Mutation)>> {
    let edge = rng.gen_range(0..t.edges.len());
    let far = t.vertices[t.edges[edge].v].chart;
    let c = &atlas.charts[far];
    let loops: Vec<Word> = tiles_within(atlas, far, c.center, 2.0 * c.radius + 0.5)?
        .into_iter()
        .filter(|tile| tile.chart == far && !tile.word.is_empty())
        .map(|tile| tile.word)
        .collect();
    let Some(detour) = loops.choose(rng).cloned() else { return Ok(None) };
    let mut out = t.clone();
    out.edges[edge].word = atlas.concat(&t.edges[edge].word, &detour);
    Ok(Some((out, Mutation::RerouteEdge { edge, detour })))
}

/// One random corruption of `t`.
pub fn mutate(t: &TriComplex, atlas: &Atlas, rng: &mut impl Rng) -> Result<(TriComplex, Mutation)> {
    if t.triangles.is_empty() || t.edges.is_empty() {
        return Err(Error::Argument { what: "mutate (empty complex)", value: 0.0 });
    }
    for _ in 0..1000 {
        let r = match rng.gen_range(0..3) {
            0 => move_vertex(t, atlas, rng)?,
            1 => reroute_edge(t, atlas, rng)?,
            _ => {
                let triangle = rng.gen_range(0..t.triangles.len());
                let mut out = t.clone();
                out.triangles.remove(triangle);
                Some((out, Mutation::DeleteTriangle { triangle }))
            }
        };
        if let Some(x) = r {
            return Ok(x);
        }
    }
    Err(Error::ConstructionFailure("no applicable mutation found".into()))
}

/// `count` independent corruptions drawn from a seeded generator.
pub fn mutation_suite(t: &TriComplex, atlas: &Atlas, count: usize, seed: u64) -> Result<Vec<(TriComplex, Mutation)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| mutate(t, atlas, &mut rng)).collect()
}
