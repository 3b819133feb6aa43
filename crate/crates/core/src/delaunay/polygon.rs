//! Lifted polygons up to deck transformations.
//!
//! A polygon is a cyclic sequence of corners, each a vertex of the point set
//! together with the tile its lift lies in. Two lifted polygons describe the
//! same object on the surface when a deck transformation carries one onto a
//! cyclic rotation of the other. Rebasing at a corner moves that corner's
//! lift back into its own chart, which removes the deck ambiguity; among the
//! rotations with the smallest vertex sequence the stored representative is
//! the one whose second corner comes first in `(x, y)` order.

use crate::hyp::{Mobius, C64};
use crate::surface::atlas::{Atlas, Word};
use crate::surface::cover::SurfacePoint;
use std::collections::HashMap;

/// A corner: vertex `vertex` lifted by `map`, reached along `word`.
#[derive(Clone, Debug)]
pub(crate) struct Corner {
    pub vertex: usize,
    pub map: Mobius,
    pub word: Word,
}

impl Corner {
    pub fn base(vertex: usize) -> Self {
        Corner { vertex, map: Mobius::identity(), word: Word::default() }
    }

    pub fn position(&self, points: &[SurfacePoint]) -> C64 {
        self.map.apply(points[self.vertex].z)
    }
}

/// The polygon rotated to start at corner `k`, expressed in the frame of
/// that corner's chart.
pub(crate) fn rebase(atlas: &Atlas, corners: &[Corner], k: usize) -> Vec<Corner> {
    let n = corners.len();
    let h = corners[k].map.inverse();
    let back = atlas.inverse_word(&corners[k].word);
    (0..n)
        .map(|j| {
            let c = &corners[(k + j) % n];
            if j == 0 {
                Corner::base(c.vertex)
            } else {
                Corner { vertex: c.vertex, map: h.compose(&c.map), word: atlas.concat(&back, &c.word) }
            }
        })
        .collect()
}

fn indices(corners: &[Corner], k: usize) -> Vec<usize> {
    let n = corners.len();
    (0..n).map(|j| corners[(k + j) % n].vertex).collect()
}

/// Rotations achieving the lexicographically smallest vertex sequence, and
/// that sequence.
fn minimal_rotations(corners: &[Corner]) -> (Vec<usize>, Vec<usize>) {
    let n = corners.len();
    let mut best = indices(corners, 0);
    let mut ks = vec![0];
    for k in 1..n {
        let s = indices(corners, k);
        match s.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = s;
                ks = vec![k];
            }
            std::cmp::Ordering::Equal => ks.push(k),
            std::cmp::Ordering::Greater => {}
        }
    }
    (best, ks)
}

/// Canonical representative and the rotation that produced it.
pub(crate) fn canonical(atlas: &Atlas, points: &[SurfacePoint], corners: &[Corner]) -> (Vec<Corner>, usize) {
    let (_, ks) = minimal_rotations(corners);
    let mut best: Option<(Vec<Corner>, usize, C64)> = None;
    for k in ks {
        let r = rebase(atlas, corners, k);
        let p = r[1 % r.len()].position(points);
        let better = match &best {
            None => true,
            Some((_, _, q)) => p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)).is_lt(),
        };
        if better {
            best = Some((r, k, p));
        }
    }
    let (r, k, _) = best.expect("polygons have at least one corner");
    (r, k)
}

/// Deduplicating store of lifted polygons.
#[derive(Default)]
pub(crate) struct PolygonSet {
    by_key: HashMap<Vec<usize>, Vec<usize>>,
    pub items: Vec<Vec<Corner>>,
    positions: Vec<Vec<C64>>,
}

const SAME_LIFT: f64 = 1e-7;

impl PolygonSet {
    pub fn new() -> Self {
        PolygonSet::default()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// Index of the stored polygon equal to `corners`, and the rotation of
    /// `corners` that matches it.
    pub fn find(&self, atlas: &Atlas, points: &[SurfacePoint], corners: &[Corner]) -> Option<(usize, usize)> {
        let (key, ks) = minimal_rotations(corners);
        let ids = self.by_key.get(&key)?;
        for k in ks {
            let r = rebase(atlas, corners, k);
            let pos: Vec<C64> = r.iter().map(|c| c.position(points)).collect();
            for &id in ids {
                if self.positions[id].iter().zip(&pos).all(|(a, b)| (a - b).norm() < SAME_LIFT) {
                    return Some((id, k));
                }
            }
        }
        None
    }

    /// Inserts unless present. Returns the index, the matching rotation of
    /// `corners`, and whether the polygon was new.
    pub fn insert(&mut self, atlas: &Atlas, points: &[SurfacePoint], corners: &[Corner]) -> (usize, usize, bool) {
        if let Some((id, k)) = self.find(atlas, points, corners) {
            return (id, k, false);
        }
        let (rep, k) = canonical(atlas, points, corners);
        let key: Vec<usize> = rep.iter().map(|c| c.vertex).collect();
        let id = self.items.len();
        self.positions.push(rep.iter().map(|c| c.position(points)).collect());
        self.items.push(rep);
        self.by_key.entry(key).or_default().push(id);
        (id, k, true)
    }
}
