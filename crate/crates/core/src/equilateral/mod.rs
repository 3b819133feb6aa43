//! Surfaces glued from equilateral triangles along a triangular embedding
//! of the complete graph `K_n`.
//!
//! With `n - 1` triangles around every vertex, the angle `2π/(n-1)` makes
//! the vertex angle sums `2π`. The atlas uses the dual cells: vertex `v` is
//! the centre of a regular `(n-1)`-gon whose corners are the centres of the
//! triangles at `v` and whose side `k` crosses the edge to the `k`-th
//! neighbour in the rotation. Three cells meet at each corner with angle
//! `2π/3`.

use crate::delaunay::{EdgeRef, TriComplex, TriEdge, Triangle};
use crate::embedding::{dart_tail, Embedding};
use crate::error::{Error, Result};
use crate::hyp::{self, trig, Mobius, C64};
use crate::surface::atlas::{set_pieces, Atlas, Chart, Piece, PieceKind, Word};
use crate::surface::cover::{lifts_near, SurfacePoint};
use crate::verify::{self, jungerman_ringel, Certificate, CheckResult, VerifyOptions, Witness};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Cyclic neighbour order at every vertex of a complete graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub n: usize,
    pub rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(rotations: Vec<Vec<usize>>) -> Result<Self> {
        let n = rotations.len();
        if n < 4 {
            return Err(Error::InvalidRotation(format!("{n} vertices; need at least 4")));
        }
        for (v, rot) in rotations.iter().enumerate() {
            let mut seen = vec![false; n];
            for &w in rot {
                if w >= n || w == v || seen[w] {
                    return Err(Error::InvalidRotation(format!("rotation at {v} lists {w} out of range, twice, or as itself")));
                }
                seen[w] = true;
            }
            if rot.len() != n - 1 {
                return Err(Error::InvalidRotation(format!("rotation at {v} has {} of the {} other vertices", rot.len(), n - 1)));
            }
        }
        Ok(RotationSystem { n, rotations })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    /// Position of `w` in the rotation at `v`.
    pub fn slot(&self, v: usize, w: usize) -> usize {
        self.rotations[v].iter().position(|&x| x == w).expect("complete graph")
    }

    /// The embedding with one edge per pair `u < v`.
    pub fn embedding(&self) -> Embedding {
        let mut id = vec![vec![usize::MAX; self.n]; self.n];
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                id[u][v] = edges.len();
                id[v][u] = edges.len();
                edges.push((u, v));
            }
        }
        let rotation = (0..self.n).map(|v| self.rotations[v].iter().map(|&w| 2 * id[v][w] + usize::from(v > w)).collect()).collect();
        Embedding { vertices: self.n, edges, rotation }
    }
}

impl FromStr for RotationSystem {
    type Err = Error;

    /// One line per vertex, `v: n1 n2 ...`; `#` starts a comment.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows: Vec<Option<Vec<usize>>> = Vec::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("line {}: {what}", i + 1));
            let (head, tail) = line.split_once(':').ok_or_else(|| bad("expected `v: n1 n2 ...`"))?;
            let v: usize = head.trim().parse().map_err(|_| bad("vertex label is not an integer"))?;
            let rot = tail
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad("neighbour is not an integer")))
                .collect::<Result<Vec<_>>>()?;
            if rows.len() <= v {
                rows.resize(v + 1, None);
            }
            if rows[v].replace(rot).is_some() {
                return Err(bad("vertex listed twice"));
            }
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.ok_or_else(|| Error::InvalidRotation(format!("no rotation for vertex {v}"))))
            .collect::<Result<Vec<_>>>()?;
        RotationSystem::new(rows)
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, rot) in self.rotations.iter().enumerate() {
            let row: Vec<String> = rot.iter().map(usize::to_string).collect();
            writeln!(f, "{v}: {}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceTrace {
    /// Vertex sequences of the traced faces.
    pub faces: Vec<Vec<usize>>,
    pub genus: usize,
    pub triangular: bool,
}

/// Traces the faces of the embedding and reads off its genus from
/// `v - e + f = 2 - 2g`.
pub fn trace_faces(rot: &RotationSystem) -> Result<FaceTrace> {
    let emb = rot.embedding();
    let traced = emb.trace().map_err(|e| Error::InvalidRotation(e.to_string()))?;
    let genus = traced.genus(emb.vertices, emb.edges.len()).map_err(|e| Error::InvalidRotation(e.to_string()))?;
    let faces: Vec<Vec<usize>> = traced.faces.iter().map(|f| f.iter().map(|&d| dart_tail(&emb.edges, d)).collect()).collect();
    let triangular = faces.iter().all(|f| f.len() == 3);
    Ok(FaceTrace { faces, genus, triangular })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperbolizability {
    pub n: usize,
    pub genus: usize,
    pub faces: usize,
    pub verdict: bool,
    pub reasons: Vec<String>,
}

/// Whether the embedding can be realised with equilateral triangles of
/// angle `2π/(n-1)` on a hyperbolic surface of the least possible genus.
pub fn check_hyperbolizable(rot: &RotationSystem) -> Result<Hyperbolizability> {
    let tr = trace_faces(rot)?;
    let n = rot.n;
    let mut reasons = Vec::new();
    if !tr.triangular {
        let bad = tr.faces.iter().filter(|f| f.len() != 3).count();
        reasons.push(format!("{bad} faces are not triangles"));
    }
    if (n - 3) * (n - 4) % 12 != 0 || tr.genus != (n - 3) * (n - 4) / 12 {
        reasons.push(format!("genus {} differs from (n-3)(n-4)/12 = {:.3}", tr.genus, ((n - 3) * (n - 4)) as f64 / 12.0));
    }
    if n % 12 != 0 {
        let alpha = 2.0 * PI / (n - 1) as f64;
        let kind = if (alpha - PI / 3.0).abs() < 1e-12 {
            " (flat, not hyperbolic)"
        } else if alpha > PI / 3.0 {
            " (spherical, not hyperbolic)"
        } else {
            ""
        };
        reasons.push(format!("n ≢ 0 mod 12{kind}"));
    }
    Ok(Hyperbolizability { n, genus: tr.genus, faces: tr.faces.len(), verdict: reasons.is_empty(), reasons })
}

/// A hyperbolic surface tiled by equilateral triangles, one per face.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquilateralSurface {
    pub rotation: RotationSystem,
    pub faces: Vec<[usize; 3]>,
    pub genus: usize,
    /// Interior angle `2π/(n-1)`.
    pub angle: f64,
    /// Side length of every triangle.
    pub side: f64,
    pub atlas: Atlas,
    /// The triangulation by the graph's vertices and edges.
    pub complex: TriComplex,
}

/// Regular `p`-gon centred at the origin with all angles `2π/3`; side `k`
/// is centred on the ray of angle `2πk/p`.
fn dual_cell(p: usize) -> Chart {
    let a = PI / p as f64;
    let cosh_r = (1.0 / a.tan()) * (1.0 / (PI / 3.0).tan());
    let r = cosh_r.acosh();
    let vertices = (0..p).map(|k| hyp::polar(r, 2.0 * a * k as f64 - a)).collect();
    Chart::new(vertices, vec![2.0 * PI / 3.0; p])
}

/// Glues the equilateral surface of a verified triangular embedding.
pub fn hyperbolize(rot: &RotationSystem) -> Result<EquilateralSurface> {
    let h = check_hyperbolizable(rot)?;
    if !h.verdict {
        return Err(Error::NotHyperbolizable(h.reasons.join("; ")));
    }
    let n = rot.n;
    let p = n - 1;
    let angle = 2.0 * PI / p as f64;
    let side = trig::equilateral_side(angle)?;
    let model = dual_cell(p);
    let mut charts = vec![model.clone(); n];
    for (v, chart) in charts.iter_mut().enumerate() {
        let vs = &model.vertices;
        let pieces = (0..p)
            .map(|k| {
                let w = rot.rotations[v][k];
                let j = rot.slot(w, v);
                // Side j of w runs backwards along side k of v.
                let map = Mobius::segment_to_segment(vs[(j + 1) % p], vs[j], vs[k], vs[(k + 1) % p]);
                Piece {
                    start: vs[k],
                    end: vs[(k + 1) % p],
                    side: k,
                    start_corner: true,
                    to_chart: w,
                    to_piece: j,
                    map,
                    kind: PieceKind::Edge,
                }
            })
            .collect();
        set_pieces(chart, pieces);
    }
    let atlas = Atlas::from_charts(h.genus, charts, Vec::new())?;
    let faces = unique_faces(&trace_faces(rot)?.faces);
    let complex = complex_of(rot, &atlas, &faces, h.genus)?;
    Ok(EquilateralSurface { rotation: rot.clone(), faces, genus: h.genus, angle, side, atlas, complex })
}

fn unique_faces(faces: &[Vec<usize>]) -> Vec<[usize; 3]> {
    let mut out: Vec<[usize; 3]> = faces.iter().map(|f| [f[0], f[1], f[2]]).collect();
    out.sort_by_key(|f| {
        let mut s = *f;
        s.sort();
        s
    });
    out
}

fn complex_of(rot: &RotationSystem, atlas: &Atlas, faces: &[[usize; 3]], genus: usize) -> Result<TriComplex> {
    let n = rot.n;
    let port = |u: usize, v: usize| atlas.port(u, rot.slot(u, v));
    let vertices: Vec<SurfacePoint> = (0..n).map(|v| SurfacePoint::new(v, C64::new(0.0, 0.0))).collect();
    let mut id = vec![vec![0; n]; n];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            id[u][v] = edges.len();
            id[v][u] = edges.len();
            edges.push(TriEdge { u, v, word: Word(vec![port(u, v)]) });
        }
    }
    let mut triangles = Vec::with_capacity(faces.len());
    for &[a, b, c] in faces {
        let place = |w: usize| -> Result<C64> { Ok(atlas.eval_word(a, &Word(vec![port(a, w)]))?.1.apply(C64::new(0.0, 0.0))) };
        let (b, c) = if hyp::orient(C64::new(0.0, 0.0), place(b)?, place(c)?) > 0.0 { (b, c) } else { (c, b) };
        let corners = [a, b, c];
        let edge = |i: usize| {
            let (x, y) = (corners[i], corners[(i + 1) % 3]);
            EdgeRef { edge: id[x][y], reversed: x > y }
        };
        triangles.push(Triangle {
            vertices: corners,
            words: [Word(Vec::new()), Word(vec![port(a, b)]), Word(vec![port(a, c)])],
            edges: [edge(0), edge(1), edge(2)],
        });
    }
    Ok(TriComplex { genus, vertices, edges, triangles, degeneracies: Vec::new() })
}

impl EquilateralSurface {
    /// Angle sum at every vertex, measured on the developed triangles.
    pub fn angle_sums(&self) -> Result<Vec<f64>> {
        let mut sums = vec![0.0; self.rotation.n];
        for k in 0..self.complex.triangles.len() {
            let p = self.complex.triangle_lift(&self.atlas, k)?;
            for i in 0..3 {
                sums[self.complex.triangles[k].vertices[i]] += hyp::angle_at(p[i], p[(i + 1) % 3], p[(i + 2) % 3]);
            }
        }
        Ok(sums)
    }

    /// Sum of the angle defects `π - (α + β + γ)` over all triangles.
    pub fn total_defect(&self) -> Result<f64> {
        let mut total = 0.0;
        for k in 0..self.complex.triangles.len() {
            let p = self.complex.triangle_lift(&self.atlas, k)?;
            let s: f64 = (0..3).map(|i| hyp::angle_at(p[i], p[(i + 1) % 3], p[(i + 2) % 3])).sum();
            total += PI - s;
        }
        Ok(total)
    }

    /// Altitude of the equilateral triangle, from `sinh h = sinh ℓ sin α`.
    pub fn altitude(&self) -> f64 {
        (self.side.sinh() * self.angle.sin()).asinh()
    }
}

/// Smallest `d(c, p) - d(c, x) - ℓ/2` over triangles, where `c` is the
/// circumcentre, `x` the foot of `c` on a side and `p` any other vertex
/// within `d(c, u) + ℓ`.
fn two_ring_margin(s: &EquilateralSurface) -> Result<(f64, Option<Witness>)> {
    let t = &s.complex;
    let per: Vec<(f64, Option<Witness>)> = (0..t.triangles.len())
        .into_par_iter()
        .map(|k| -> Result<(f64, Option<Witness>)> {
            let p = t.triangle_lift(&s.atlas, k)?;
            let circle = hyp::circumdisk(p[0], p[1], p[2])?;
            let foot = hyp::dist_to_segment(p[0], p[1], circle.center);
            let anchor = t.vertices[t.triangles[k].vertices[0]].chart;
            let mut best = (f64::INFINITY, None);
            for v in 0..t.vertices.len() {
                for lift in lifts_near(&s.atlas, t.vertices[v], anchor, circle.center, circle.radius + s.side)? {
                    if p.iter().any(|&q| hyp::dist(q, lift.position) < 1e-9) {
                        continue;
                    }
                    let m = hyp::dist(circle.center, lift.position) - foot - s.side / 2.0;
                    if m < best.0 {
                        let depth = circle.radius - hyp::dist(circle.center, lift.position);
                        best =
                            (m, Some(Witness::Intruder { triangle: k, vertex: v, position: [lift.position.re, lift.position.im], depth }));
                    }
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().min_by(|a, b| a.0.total_cmp(&b.0)).unwrap_or((f64::INFINITY, None)))
}

/// Runs the triangulation checks of [`verify::verify`] and the equilateral
/// audits: angle sums, Gauss-Bonnet, the altitude bound and the two-ring
/// distance inequality.
pub fn certify_equilateral(s: &EquilateralSurface) -> Result<Certificate> {
    let base = verify::verify(&s.complex, &s.atlas, &VerifyOptions::default())?;
    let mut checks = base.checks;
    let sums = s.angle_sums()?;
    let worst = sums.iter().map(|x| (x - 2.0 * PI).abs()).fold(0.0, f64::max);
    checks.push(CheckResult::new("angle_sums", worst <= 1e-10, 1e-10 - worst, None));
    let defect = s.total_defect()?;
    let area = 4.0 * PI * (s.genus as f64 - 1.0);
    let gap = (defect - area).abs();
    checks.push(CheckResult::new("gauss_bonnet", gap <= 1e-8, 1e-8 - gap, Some(Witness::Count { lhs: defect, rhs: area })));
    let h = s.altitude();
    let ok = h >= s.side / 2.0;
    checks.push(CheckResult::new("altitude", ok, h - s.side / 2.0, Some(Witness::Count { lhs: s.side / 2.0, rhs: h })));
    let (m, w) = two_ring_margin(s)?;
    checks.push(CheckResult::new("two_ring", m >= -1e-9, m, if m >= -1e-9 { None } else { w }));
    let jr = jungerman_ringel(s.genus);
    let v = s.complex.vertices.len();
    checks.push(CheckResult::new(
        "jungerman_ringel_attained",
        v == jr,
        jr as f64 - v as f64,
        Some(Witness::Count { lhs: v as f64, rhs: jr as f64 }),
    ));
    Ok(Certificate::new(checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::surface_distance;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn every_dart_on_one_face(n in 4usize..10, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rotations = (0..n).map(|v| { let mut r: Vec<usize> = (0..n).filter(|&w| w != v).collect(); r.shuffle(&mut rng); r }).collect();
            let rot = RotationSystem::new(rotations).unwrap();
            let t = trace_faces(&rot).unwrap();
            let mut darts: Vec<(usize, usize)> = t.faces.iter().flat_map(|f| (0..f.len()).map(move |i| (f[i], f[(i + 1) % f.len()]))).collect();
            prop_assert_eq!(darts.len(), n * (n - 1));
            darts.sort();
            darts.dedup();
            prop_assert_eq!(darts.len(), n * (n - 1));
            let chi = n as i64 - (n * (n - 1) / 2) as i64 + t.faces.len() as i64;
            prop_assert_eq!(chi, 2 - 2 * t.genus as i64);
        }
    }

    const K12: &str = include_str!("../../data/k12_genus6.rot");
    const K7: &str = include_str!("../../data/k7_torus.rot");

    fn k4() -> RotationSystem {
        // Tetrahedron seen from outside: each row lists the others in one
        // consistent orientation.
        RotationSystem::new(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn tetrahedron() {
        let t = trace_faces(&k4()).unwrap();
        assert_eq!(t.faces.len(), 4);
        assert!(t.triangular);
        assert_eq!(t.genus, 0);
    }

    #[test]
    fn seven_vertex_torus() {
        let rot: RotationSystem = K7.parse().unwrap();
        let t = trace_faces(&rot).unwrap();
        assert_eq!((t.faces.len(), t.genus, t.triangular), (14, 1, true));
        let h = check_hyperbolizable(&rot).unwrap();
        assert!(!h.verdict);
        assert_eq!(h.reasons, vec!["n ≢ 0 mod 12 (flat, not hyperbolic)".to_string()]);
        assert!(matches!(hyperbolize(&rot), Err(Error::NotHyperbolizable(_))));
    }

    #[test]
    fn twelve_vertices_genus_six() {
        let rot: RotationSystem = K12.parse().unwrap();
        let t = trace_faces(&rot).unwrap();
        assert_eq!((t.faces.len(), t.genus, t.triangular), (44, 6, true));
        // Each directed edge lies on exactly one face.
        let mut darts: Vec<(usize, usize)> = t.faces.iter().flat_map(|f| (0..3).map(move |i| (f[i], f[(i + 1) % 3]))).collect();
        darts.sort();
        darts.dedup();
        assert_eq!(darts.len(), 132);
        assert!(check_hyperbolizable(&rot).unwrap().verdict);
        assert_eq!(rot.to_string().parse::<RotationSystem>().unwrap(), rot);
    }

    #[test]
    fn swapped_pair_breaks_triangularity() {
        let mut rot: RotationSystem = K12.parse().unwrap();
        rot.rotations[0].swap(2, 3);
        let h = check_hyperbolizable(&rot).unwrap();
        assert!(!h.verdict);
        assert!(h.reasons[0].contains("not triangles"));
    }

    #[test]
    fn malformed_files() {
        assert!(matches!("0: 1 2\n1: 0 2\n2: 0 1 1\n3: 0".parse::<RotationSystem>(), Err(Error::InvalidRotation(_))));
        assert!(matches!("0 1 2 3".parse::<RotationSystem>(), Err(Error::Parse(_))));
        assert!(matches!("0: 1 2 3\n0: 1 2 3".parse::<RotationSystem>(), Err(Error::Parse(_))));
        assert!(matches!("0: 1 2 3\n1: 0 2 3\n3: 0 1 2".parse::<RotationSystem>(), Err(Error::InvalidRotation(_))));
    }

    #[test]
    fn cell_apothem_is_half_the_side() {
        for n in [12, 24, 36] {
            let p = n - 1;
            let cell = dual_cell(p);
            let apothem = hyp::dist_to_segment(cell.vertices[0], cell.vertices[1], C64::new(0.0, 0.0));
            let side = trig::equilateral_side(2.0 * PI / p as f64).unwrap();
            assert!((2.0 * apothem - side).abs() < 1e-12, "{n}");
        }
    }

    #[test]
    fn k12_surface() {
        let rot: RotationSystem = K12.parse().unwrap();
        let s = hyperbolize(&rot).unwrap();
        assert!((s.side - 2.351708).abs() < 1e-6);
        assert_eq!(s.complex.counts(), (12, 66, 44));
        for sum in s.angle_sums().unwrap() {
            assert!((sum - 2.0 * PI).abs() < 1e-10);
        }
        // 44 · (π - 6π/11) = 20π.
        assert!((s.total_defect().unwrap() - 20.0 * PI).abs() < 1e-8);
        // Faces of the glued complex are the traced faces.
        let mut traced: Vec<Vec<usize>> = trace_faces(&rot)
            .unwrap()
            .faces
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect();
        let mut built: Vec<Vec<usize>> = s
            .complex
            .triangles
            .iter()
            .map(|t| {
                let mut f = t.vertices.to_vec();
                f.sort();
                f
            })
            .collect();
        traced.sort();
        built.sort();
        assert_eq!(traced, built);
        // Neighbours sit at distance ℓ.
        let (d, _) = surface_distance(&s.atlas, s.complex.vertices[0], s.complex.vertices[5]).unwrap();
        assert!((d - s.side).abs() < 1e-9);
    }

    #[test]
    fn altitude_exceeds_half_side() {
        for n in [12, 24, 36, 48] {
            let alpha = 2.0 * PI / (n - 1) as f64;
            let l = trig::equilateral_side(alpha).unwrap();
            // Independent: altitude from the right triangle with hypotenuse
            // ℓ and the half side, cosh ℓ = cosh h cosh(ℓ/2).
            let h = (l.cosh() / (l / 2.0).cosh()).acosh();
            assert!(((l.sinh() * alpha.sin()).asinh() - h).abs() < 1e-10);
            assert!(h >= l / 2.0);
        }
    }

    #[test]
    fn k12_is_certified() {
        let rot: RotationSystem = K12.parse().unwrap();
        let s = hyperbolize(&rot).unwrap();
        let cert = certify_equilateral(&s).unwrap();
        assert!(cert.passed, "{:?}", cert.failures().collect::<Vec<_>>());
        assert_eq!(s.complex.vertices.len(), jungerman_ringel(6));
        assert!(cert.get("delaunay").unwrap().margin >= -1e-9);
        let again =
            verify::verify(&TriComplex::from_json(&s.complex.to_json().unwrap()).unwrap(), &s.atlas, &VerifyOptions::default()).unwrap();
        assert!(again.passed);
    }
}
