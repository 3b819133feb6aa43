use crate::error::{Error, Result};
use crate::hyp::{self, Mobius, C64};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::f64::consts::PI;

/// A path through the chart complex, recorded as the sequence of boundary
/// pieces crossed (global port ids).
///
/// A word starting in chart `k` determines a tile of the universal cover and
/// hence a deck transformation; dropping the crossings of spanning-tree
/// ports yields the same element as a word in [`Atlas::generators`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// What a boundary piece is glued along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieceKind {
    /// Orthogeodesic seam between the two hexagons of a pants.
    Seam,
    /// Part of the pants curve with this index.
    Cuff(usize),
    /// Side of a dual cell crossing one edge of a triangulation.
    Edge,
}

/// A maximal boundary segment of a chart glued to a single neighbour.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Piece {
    pub start: C64,
    pub end: C64,
    /// Polygon side containing the piece.
    pub side: usize,
    /// Whether `start` is the polygon vertex opening `side`.
    pub start_corner: bool,
    pub to_chart: usize,
    pub to_piece: usize,
    /// Places the neighbouring chart's model polygon in this chart's frame.
    pub map: Mobius,
    pub kind: PieceKind,
}

/// A convex polygon in its own model frame together with its gluings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Chart {
    pub vertices: Vec<C64>,
    pub angles: Vec<f64>,
    pub pieces: Vec<Piece>,
    pub center: C64,
    /// Largest distance from `center` to a vertex.
    pub radius: f64,
    /// For each side, the isometry taking the side's start to the origin and
    /// the side onto the positive real axis.
    side_frames: Vec<Mobius>,
}

impl Chart {
    pub fn new(vertices: Vec<C64>, angles: Vec<f64>) -> Self {
        let n = vertices.len();
        let side_frames = (0..n).map(|i| Mobius::from_segment(vertices[i], vertices[(i + 1) % n]).inverse()).collect();
        let center = C64::new(0.0, 0.0);
        let radius = vertices.iter().map(|&v| hyp::dist(center, v)).fold(0.0, f64::max);
        Chart { vertices, angles, pieces: Vec::new(), center, radius, side_frames }
    }

    /// Smallest signed Klein-ordinate over all sides; nonnegative iff `z`
    /// lies in the closed polygon.
    pub fn inside_margin(&self, z: C64) -> f64 {
        self.side_frames.iter().map(|f| hyp::to_klein(f.apply(z)).im).fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, z: C64, tol: f64) -> bool {
        self.inside_margin(z) >= -tol
    }

    /// Interior angle of the chart at the start of piece `p`.
    pub fn angle_at_piece_start(&self, p: usize) -> f64 {
        let piece = &self.pieces[p];
        if piece.start_corner {
            self.angles[piece.side]
        } else {
            PI
        }
    }
}

/// Enumeration limits that turn runaway searches into errors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    pub r_max: f64,
    pub word_cap: usize,
    pub tile_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { r_max: 8.0, word_cap: 64, tile_cap: 2_000_000 }
    }
}

/// A pants curve as seen from the front hexagon of its first pants.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CuffCurve {
    pub chart: usize,
    /// Hexagon side lying on the curve; its start vertex is the seam foot
    /// used as basepoint.
    pub side: usize,
    /// Closed path once around the curve.
    pub word: Word,
    pub length: f64,
}

/// A closed hyperbolic surface presented as a glued complex of convex
/// polygons, with a spanning tree and the induced deck generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Atlas {
    pub genus: usize,
    pub charts: Vec<Chart>,
    /// Global port id of piece `p` of chart `k` is `offsets[k] + p`.
    pub offsets: Vec<usize>,
    /// Port through which the spanning tree reaches each chart.
    pub tree_port: Vec<Option<u32>>,
    /// Placement of each chart's model in the frame of chart 0 along the tree.
    pub placement: Vec<Mobius>,
    /// One port per generator, oriented from the lower port id.
    pub generators: Vec<u32>,
    /// Signed generator index (1-based) per port, 0 for tree ports.
    pub port_generator: Vec<i32>,
    pub cuffs: Vec<CuffCurve>,
    pub caps: Caps,
}

impl Atlas {
    /// Assembles an atlas from glued charts; checks the pairing and builds
    /// the spanning tree, placements and generators.
    pub fn from_charts(genus: usize, charts: Vec<Chart>, cuffs: Vec<CuffCurve>) -> Result<Self> {
        let mut offsets = Vec::with_capacity(charts.len());
        let mut total = 0;
        for c in &charts {
            offsets.push(total);
            total += c.pieces.len();
        }
        for (k, c) in charts.iter().enumerate() {
            for (p, piece) in c.pieces.iter().enumerate() {
                let back = charts
                    .get(piece.to_chart)
                    .and_then(|o| o.pieces.get(piece.to_piece))
                    .ok_or_else(|| Error::ConstructionFailure(format!("piece {p} of chart {k} glued to nothing")))?;
                if back.to_chart != k || back.to_piece != p {
                    return Err(Error::ConstructionFailure(format!("gluing of chart {k} piece {p} is not symmetric")));
                }
                let l1 = hyp::dist(piece.start, piece.end);
                let l2 = hyp::dist(back.start, back.end);
                if (l1 - l2).abs() > 1e-9 * (1.0 + l1) {
                    return Err(Error::ConstructionFailure(format!("glued pieces differ in length: {l1} vs {l2}")));
                }
            }
        }
        let n = charts.len();
        let mut tree_port = vec![None; n];
        let mut placement = vec![Mobius::identity(); n];
        let mut seen = vec![false; n];
        let mut is_tree = vec![false; total];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (p, piece) in charts[k].pieces.iter().enumerate() {
                let j = piece.to_chart;
                if !seen[j] {
                    seen[j] = true;
                    let port = offsets[k] + p;
                    tree_port[j] = Some(port as u32);
                    is_tree[port] = true;
                    is_tree[offsets[j] + piece.to_piece] = true;
                    placement[j] = placement[k].compose(&piece.map);
                    queue.push_back(j);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::ConstructionFailure("chart complex is disconnected".into()));
        }
        let mut generators = Vec::new();
        let mut port_generator = vec![0i32; total];
        for (k, c) in charts.iter().enumerate() {
            for (p, piece) in c.pieces.iter().enumerate() {
                let port = offsets[k] + p;
                let partner = offsets[piece.to_chart] + piece.to_piece;
                if is_tree[port] || port_generator[port] != 0 {
                    continue;
                }
                generators.push(port as u32);
                let idx = generators.len() as i32;
                port_generator[port] = idx;
                port_generator[partner] = -idx;
            }
        }
        Ok(Atlas { genus, charts, offsets, tree_port, placement, generators, port_generator, cuffs, caps: Caps::default() })
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn port(&self, chart: usize, piece: usize) -> u32 {
        (self.offsets[chart] + piece) as u32
    }

    /// Chart and piece index of a global port id.
    pub fn port_location(&self, port: u32) -> (usize, usize) {
        let port = port as usize;
        let k = match self.offsets.binary_search(&port) {
            Ok(mut k) => {
                // Skip charts without pieces sharing the same offset.
                while k + 1 < self.offsets.len() && self.offsets[k + 1] == port {
                    k += 1;
                }
                k
            }
            Err(k) => k - 1,
        };
        (k, port - self.offsets[k])
    }

    pub fn piece(&self, port: u32) -> &Piece {
        let (k, p) = self.port_location(port);
        &self.charts[k].pieces[p]
    }

    /// Port on the far side of `port`.
    pub fn partner(&self, port: u32) -> u32 {
        let piece = self.piece(port);
        self.port(piece.to_chart, piece.to_piece)
    }

    /// Appends a crossing, cancelling an immediate backtrack.
    pub fn push_reduced(&self, word: &mut Word, port: u32) {
        if let Some(&last) = word.0.last() {
            if self.partner(last) == port {
                word.0.pop();
                return;
            }
        }
        word.0.push(port);
    }

    /// Concatenation with backtrack cancellation.
    pub fn concat(&self, a: &Word, b: &Word) -> Word {
        let mut out = a.clone();
        for &p in &b.0 {
            self.push_reduced(&mut out, p);
        }
        out
    }

    /// The reverse path.
    pub fn inverse_word(&self, w: &Word) -> Word {
        Word(w.0.iter().rev().map(|&p| self.partner(p)).collect())
    }

    /// Follows `word` from `start`; returns the final chart and the map
    /// placing that chart's model in the frame of `start`.
    pub fn eval_word(&self, start: usize, word: &Word) -> Result<(usize, Mobius)> {
        let mut chart = start;
        let mut map = Mobius::identity();
        for &port in &word.0 {
            if port as usize >= self.port_generator.len() {
                return Err(Error::Parse(format!("port {port} does not exist")));
            }
            let (k, p) = self.port_location(port);
            if k != chart {
                return Err(Error::Parse(format!("port {port} leaves chart {k}, path is in chart {chart}")));
            }
            let piece = &self.charts[k].pieces[p];
            map = map.compose(&piece.map);
            chart = piece.to_chart;
        }
        Ok((chart, map))
    }

    /// The word in the deck generators (signed, 1-based) of a path.
    pub fn generator_word(&self, word: &Word) -> Vec<i32> {
        let mut out: Vec<i32> = Vec::new();
        for &p in &word.0 {
            let g = self.port_generator[p as usize];
            if g == 0 {
                continue;
            }
            if out.last() == Some(&-g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        out
    }

    /// Generator `i` (0-based) as an isometry of the frame of chart 0.
    pub fn generator_map(&self, i: usize) -> Mobius {
        let port = self.generators[i];
        let (k, p) = self.port_location(port);
        let piece = &self.charts[k].pieces[p];
        self.placement[k].compose(&piece.map).compose(&self.placement[piece.to_chart].inverse())
    }

    /// Evaluates a signed generator word in the frame of chart 0.
    pub fn eval_generator_word(&self, w: &[i32]) -> Mobius {
        w.iter().fold(Mobius::identity(), |acc, &g| {
            let m = self.generator_map(g.unsigned_abs() as usize - 1);
            acc.compose(&if g > 0 { m } else { m.inverse() })
        })
    }

    /// Walks around every vertex of the chart complex. Each cycle is
    /// returned with its ports, total angle, and composed transition map
    /// (which must be the identity).
    pub fn vertex_cycles(&self) -> Vec<VertexCycle> {
        let total = self.port_generator.len();
        let mut done = vec![false; total];
        let mut cycles = Vec::new();
        for start in 0..total as u32 {
            if done[start as usize] {
                continue;
            }
            let mut ports = Vec::new();
            let mut angle = 0.0;
            let mut map = Mobius::identity();
            let mut port = start;
            loop {
                done[port as usize] = true;
                ports.push(port);
                let (k, p) = self.port_location(port);
                angle += self.charts[k].angle_at_piece_start(p);
                let piece = &self.charts[k].pieces[p];
                map = map.compose(&piece.map);
                let j = piece.to_chart;
                let next = (piece.to_piece + 1) % self.charts[j].pieces.len();
                port = self.port(j, next);
                if port == start || ports.len() > 4 * total {
                    break;
                }
            }
            cycles.push(VertexCycle { ports, angle, map });
        }
        cycles
    }
}

/// Result of walking once around a vertex of the chart complex.
#[derive(Clone, Debug)]
pub struct VertexCycle {
    pub ports: Vec<u32>,
    pub angle: f64,
    pub map: Mobius,
}

/// Builds a convex polygon by walking its sides with fixed left turns
/// `PI - angle`, then recentres it at its Klein centroid.
pub fn polygon_from_sides(sides: &[f64], angles: &[f64]) -> Result<Chart> {
    let mut f = Mobius::identity();
    let mut verts = Vec::with_capacity(sides.len());
    for (i, &s) in sides.iter().enumerate() {
        verts.push(f.apply(C64::new(0.0, 0.0)));
        let turn = PI - angles[(i + 1) % angles.len()];
        f = f.compose(&Mobius::translation_x(s)).compose(&Mobius::rotation(turn));
    }
    let gap = f.distance_to(&Mobius::identity());
    if !(gap < 1e-8) {
        return Err(Error::ConstructionFailure(format!("polygon does not close (gap {gap:.3e})")));
    }
    let centroid = verts.iter().map(|&v| hyp::to_klein(v)).sum::<C64>() / verts.len() as f64;
    let m = Mobius::recenter(hyp::from_klein(centroid));
    let verts = verts.into_iter().map(|v| m.apply(v)).collect();
    Ok(Chart::new(verts, angles.to_vec()))
}

/// Attaches `pieces` to `chart` (they must already be in boundary order).
pub(crate) fn set_pieces(chart: &mut Chart, pieces: Vec<Piece>) {
    chart.pieces = pieces;
}
