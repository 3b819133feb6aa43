//! Tiles of the universal cover, lifts of surface points and surface
//! distances. Every position is expressed in the model frame of a chosen
//! anchor chart so no computation leaves a bounded neighbourhood of the
//! origin.

use super::atlas::{Atlas, Word};
use crate::error::{Error, Result};
use crate::hyp::{self, Mobius, C64};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

/// A point of the surface: a chart and a position in its model polygon.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub chart: usize,
    pub z: C64,
}

impl SurfacePoint {
    pub fn new(chart: usize, z: C64) -> Self {
        SurfacePoint { chart, z }
    }
}

/// A copy of a chart polygon in the universal cover.
#[derive(Clone, Debug)]
pub struct Tile {
    pub chart: usize,
    /// Places the chart's model polygon in the anchor frame.
    pub map: Mobius,
    /// Path from the anchor chart.
    pub word: Word,
}

/// A lift of a surface point, positioned in the frame of the chart it was
/// lifted from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftedPoint {
    pub base: SurfacePoint,
    pub word: Word,
    pub position: C64,
}

/// Minimising pair returned by [`surface_distance`]: `u` stays put in its
/// own chart and `v` is lifted along `word`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistanceWitness {
    pub u: C64,
    pub word: Word,
    pub v: C64,
}

const CELL: f64 = 1e-5;
const SAME_TILE: f64 = 1e-6;

/// Deduplicates tiles by their chart and the image of the chart centre.
struct TileSet {
    cells: HashMap<(usize, i64, i64), Vec<C64>>,
}

impl TileSet {
    fn new() -> Self {
        TileSet { cells: HashMap::new() }
    }

    fn key(chart: usize, z: C64) -> (usize, i64, i64) {
        (chart, (z.re / CELL).floor() as i64, (z.im / CELL).floor() as i64)
    }

    /// Inserts and reports whether the tile was new.
    fn insert(&mut self, chart: usize, z: C64) -> bool {
        let (c, x, y) = Self::key(chart, z);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(v) = self.cells.get(&(c, x + dx, y + dy)) {
                    if v.iter().any(|&w| hyp::dist(w, z) < SAME_TILE) {
                        return false;
                    }
                }
            }
        }
        self.cells.entry((c, x, y)).or_default().push(z);
        true
    }
}

fn center_of(atlas: &Atlas, t: &Tile) -> C64 {
    t.map.apply(atlas.charts[t.chart].center)
}

/// Breadth-first search over tiles adjacent across pieces, keeping those
/// accepted by `keep`. Starts from `start` (already accepted).
fn tile_bfs(atlas: &Atlas, start: Tile, mut keep: impl FnMut(&Tile) -> bool) -> Result<Vec<Tile>> {
    let caps = atlas.caps;
    let mut set = TileSet::new();
    set.insert(start.chart, center_of(atlas, &start));
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        let chart = &atlas.charts[t.chart];
        for (p, piece) in chart.pieces.iter().enumerate() {
            let map = t.map.compose(&piece.map);
            let next = Tile { chart: piece.to_chart, map, word: Word::default() };
            if !keep(&next) {
                continue;
            }
            if !set.insert(next.chart, center_of(atlas, &next)) {
                continue;
            }
            let mut word = t.word.clone();
            atlas.push_reduced(&mut word, atlas.port(t.chart, p));
            if word.len() > caps.word_cap {
                return Err(Error::EnumerationCap { what: "word length", cap: caps.word_cap });
            }
            let next = Tile { word, ..next };
            out.push(next.clone());
            if out.len() > caps.tile_cap {
                return Err(Error::EnumerationCap { what: "tile count", cap: caps.tile_cap });
            }
            queue.push_back(next);
        }
    }
    Ok(out)
}

/// Finds the tile containing `x` (given in the frame of chart `anchor`) by
/// walking the tiles that meet the segment from the anchor centre to `x`.
/// Returns the tile and the point in that tile's chart frame.
pub fn locate(atlas: &Atlas, anchor: usize, x: C64) -> Result<(Tile, SurfacePoint)> {
    hyp::check_point(x)?;
    let chart = &atlas.charts[anchor];
    if chart.contains(x, 0.0) {
        return Ok((Tile { chart: anchor, map: Mobius::identity(), word: Word::default() }, SurfacePoint::new(anchor, x)));
    }
    let c0 = chart.center;
    let start = Tile { chart: anchor, map: Mobius::identity(), word: Word::default() };
    let tiles = tile_bfs(atlas, start, |t| {
        let c = center_of(atlas, t);
        hyp::dist_to_segment(c0, x, c) <= atlas.charts[t.chart].radius + 1e-9
    })?;
    let mut best: Option<(f64, Tile, C64)> = None;
    for t in tiles {
        let z = t.map.inverse().apply(x);
        let margin = atlas.charts[t.chart].inside_margin(z);
        if best.as_ref().map_or(true, |b| margin > b.0) {
            best = Some((margin, t, z));
        }
    }
    let (margin, tile, z) = best.expect("anchor tile is always present");
    if margin < -1e-9 {
        return Err(Error::ConstructionFailure(format!("point {x} could not be located (margin {margin:.3e})")));
    }
    let chart = tile.chart;
    Ok((tile, SurfacePoint::new(chart, z)))
}

/// All tiles meeting the closed ball of radius `r` about `x`, where `x` is
/// given in the frame of chart `anchor` (it need not lie in that chart).
/// Positions of the returned tiles are in the frame of `anchor`.
pub fn tiles_within(atlas: &Atlas, anchor: usize, x: C64, r: f64) -> Result<Vec<Tile>> {
    let (start, _) = locate(atlas, anchor, x)?;
    tile_bfs(atlas, start, |t| hyp::dist(x, center_of(atlas, t)) <= r + atlas.charts[t.chart].radius + 1e-9)
}

/// All lifts of `base` within distance `r` of its position in its own chart.
pub fn lift_ball(atlas: &Atlas, base: SurfacePoint, r: f64) -> Result<Vec<LiftedPoint>> {
    if r > atlas.caps.r_max {
        return Err(Error::RadiusCap { cap: atlas.caps.r_max, needed: r });
    }
    lifts_near(atlas, base, base.chart, base.z, r)
}

/// Lifts of `p` within distance `r` of `x`, where `x` is in the frame of
/// chart `anchor`; positions are in that frame as well.
pub fn lifts_near(atlas: &Atlas, p: SurfacePoint, anchor: usize, x: C64, r: f64) -> Result<Vec<LiftedPoint>> {
    let tiles = tiles_within(atlas, anchor, x, r)?;
    let mut out: Vec<LiftedPoint> = tiles
        .into_iter()
        .filter(|t| t.chart == p.chart)
        .filter_map(|t| {
            let position = t.map.apply(p.z);
            (hyp::dist(x, position) <= r).then_some(LiftedPoint { base: p, word: t.word, position })
        })
        .collect();
    out.sort_by(|a, b| hyp::dist(x, a.position).total_cmp(&hyp::dist(x, b.position)));
    Ok(out)
}

/// Distance on the surface between `u` and `v`, with a minimising lift of
/// `v` in the frame of `u`'s chart.
pub fn surface_distance(atlas: &Atlas, u: SurfacePoint, v: SurfacePoint) -> Result<(f64, DistanceWitness)> {
    let mut r: f64 = 1.0;
    loop {
        let lifts = lifts_near(atlas, v, u.chart, u.z, r)?;
        if let Some(best) = lifts.into_iter().next() {
            let d = hyp::dist(u.z, best.position);
            return Ok((d, DistanceWitness { u: u.z, word: best.word, v: best.position }));
        }
        if r >= atlas.caps.r_max {
            return Err(Error::RadiusCap { cap: atlas.caps.r_max, needed: 2.0 * r });
        }
        r = (2.0 * r).min(atlas.caps.r_max);
    }
}
