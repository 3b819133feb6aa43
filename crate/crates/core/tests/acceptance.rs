//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one line; exits non-zero if any fails.

use hypdel::delaunay::{lifted_delaunay, thick_thin_triangulation, TriComplex};
use hypdel::equilateral::{certify_equilateral, check_hyperbolizable, hyperbolize, RotationSystem};
use hypdel::hyp;
use hypdel::linearbound::{
    appendix_b_audit, cluster_decomposition, edge_bound_audit, edge_tallies, locate_vertices_in_pants, pants_constants,
};
use hypdel::surface::cover::tiles_within;
use hypdel::surface::{build_atlas, linear_graph, Atlas, FnCoordinates, SurfacePoint};
use hypdel::thickthin::{appendix_a_audit, collar_margin_audit, standard_cycle_audit, standard_triangulation, CylinderClass, EPSILON};
use hypdel::verify::{mutation_suite, verify, VerifyOptions};
use hypdel::{Error, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

const COLLAR_TARGET: f64 = 0.24;
const COLLAR_TOL: f64 = 1e-2;
const CIRCUMDISK_FIRST: f64 = -0.180;
const CIRCUMDISK_SECOND: f64 = 0.247;
const CIRCUMDISK_TOL: f64 = 1e-3;
const COSH_KC_MAX: f64 = 1.02;
const COSH_REACH_MIN: f64 = 1.03;
const DELAUNAY_TOL: f64 = 1e-9;
const DISTANCE_TOL: f64 = 1e-7;
const MATCH_TOL: f64 = 1e-9;
const GAUSS_BONNET_TOL: f64 = 1e-8;
const ORACLE_RADIUS: f64 = 4.5;
const MUTATIONS: usize = 20;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn linear_surface(g: usize, lengths: Vec<f64>) -> Atlas {
    let graph = linear_graph(g).unwrap();
    let twists = vec![0.0; lengths.len()];
    build_atlas(&graph, &FnCoordinates { lengths, twists }).unwrap()
}

fn c1_collar() -> Outcome {
    let r = collar_margin_audit(0.72);
    let above = collar_margin_audit(0.73);
    let ok = (r.infimum - COLLAR_TARGET).abs() <= COLLAR_TOL && r.infimum > 0.72 / 3.0 && r.passed && !above.passed;
    outcome(
        ok,
        format!(
            "inf(w - K_C) = {:.4} (eps/3 = 0.2400); at eps = 0.73: {:.4} vs {:.4}, passed = {}",
            r.infimum,
            above.infimum,
            0.73 / 3.0,
            above.passed
        ),
    )
}

fn c2_appendix_a() -> Outcome {
    let r = appendix_a_audit(0.72);
    let ok = (r.first_min - CIRCUMDISK_FIRST).abs() <= CIRCUMDISK_TOL
        && (r.second_inf - CIRCUMDISK_SECOND).abs() <= CIRCUMDISK_TOL
        && r.sum_min > 0.0
        && r.passed;
    outcome(ok, format!("first = {:.4}, second = {:.4}, min sum = {:.4}", r.first_min, r.second_inf, r.sum_min))
}

fn c3_cycle_constants() -> Outcome {
    let r = standard_cycle_audit(0.72);
    let ok = r.cosh_kc_bound <= COSH_KC_MAX && r.cosh_reach_bound >= COSH_REACH_MIN && r.passed;
    outcome(
        ok,
        format!(
            "cosh K_C <= {:.5} (margin {:.5}), cosh d >= {:.5} (margin {:.5})",
            r.cosh_kc_bound,
            COSH_KC_MAX - r.cosh_kc_bound,
            r.cosh_reach_bound,
            r.cosh_reach_bound - COSH_REACH_MIN
        ),
    )
}

/// Index of the complex vertex at `z`, seen through every tile meeting `z`.
fn vertex_at(atlas: &Atlas, t: &TriComplex, chart: usize, z: C64) -> Option<usize> {
    let tiles = tiles_within(atlas, chart, z, MATCH_TOL).ok()?;
    t.vertices.iter().position(|v| tiles.iter().any(|tile| tile.chart == v.chart && hyp::dist(tile.map.apply(v.z), z) < MATCH_TOL))
}

/// Counts the standard triangles of thin cylinders that occur in `t` with
/// the same vertices and side lengths.
fn standard_triangles_present(atlas: &Atlas, tt: &hypdel::delaunay::ThickThin) -> (usize, usize) {
    let t = &tt.complex;
    let lengths: Vec<f64> = (0..t.edges.len()).map(|e| t.edge_length(atlas, e).unwrap()).collect();
    let (mut expected, mut found) = (0, 0);
    for cyl in tt.cylinders.iter().filter(|c| c.class == CylinderClass::Thin) {
        let st = standard_triangulation(atlas, cyl).unwrap();
        for tri in &st.triangles {
            expected += 1;
            let pos = tri.map(|r| st.lift.position(r));
            let Some(vs) = pos.iter().map(|&z| vertex_at(atlas, t, st.lift.chart, z)).collect::<Option<Vec<_>>>() else { continue };
            let mut sides: Vec<f64> = (0..3).map(|i| hyp::dist(pos[i], pos[(i + 1) % 3])).collect();
            sides.sort_by(f64::total_cmp);
            let want: BTreeSet<usize> = vs.iter().copied().collect();
            let hit = t.triangles.iter().any(|f| {
                let mut got: Vec<f64> = f.edges.iter().map(|r| lengths[r.edge]).collect();
                got.sort_by(f64::total_cmp);
                f.vertices.iter().copied().collect::<BTreeSet<_>>() == want && got.iter().zip(&sides).all(|(a, b)| (a - b).abs() < 1e-7)
            });
            found += usize::from(hit);
        }
    }
    (expected, found)
}

fn c4_end_to_end() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for g in [2, 3, 5] {
        for thin_cuff in [false, true] {
            let start = Instant::now();
            let mut lengths = vec![1.0; 3 * g - 3];
            if thin_cuff {
                lengths[0] = 0.5;
            }
            let atlas = linear_surface(g, lengths);
            let tt = match thick_thin_triangulation(&atlas, EPSILON) {
                Ok(tt) => tt,
                Err(e) => {
                    ok = false;
                    parts.push(format!("g={g}: {e}"));
                    continue;
                }
            };
            let opts = VerifyOptions { delaunay_tol: DELAUNAY_TOL, distance_tol: DISTANCE_TOL, epsilon: EPSILON, thick_thin: true };
            let cert = verify(&tt.complex, &atlas, &opts).unwrap();
            let three = ["simplicial", "delaunay", "distance_paths"].iter().all(|n| cert.get(n).is_some_and(|c| c.passed));
            let v = tt.complex.vertices.len();
            let (expected, found) = standard_triangles_present(&atlas, &tt);
            let thin = tt.cylinders.iter().filter(|c| c.class == CylinderClass::Thin).count();
            let elapsed = start.elapsed();
            let this =
                three && cert.passed && v <= 151 * g && expected == 12 * thin && found == expected && elapsed < Duration::from_secs(60);
            ok &= this;
            parts.push(format!(
                "g={g}{} v={v} std={found}/{expected}{}",
                if thin_cuff { "*" } else { "" },
                if this { "" } else { " FAIL" }
            ));
        }
    }
    outcome(ok, parts.join(", "))
}

/// Empty-circumdisk corners `(i, j, k, radius in µ-units)` found by trying
/// every pair of lifts around every point.
fn oracle_corners(atlas: &Atlas, pts: &[SurfacePoint]) -> Vec<(usize, usize, usize, i64)> {
    let mut out = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let tiles = tiles_within(atlas, p.chart, p.z, ORACLE_RADIUS).unwrap();
        let mut lifts: Vec<(usize, C64)> = Vec::new();
        for tile in &tiles {
            for (j, q) in pts.iter().enumerate() {
                if q.chart == tile.chart {
                    let z = tile.map.apply(q.z);
                    if hyp::dist(z, p.z) <= ORACLE_RADIUS && hyp::dist(z, p.z) > 1e-9 {
                        lifts.push((j, z));
                    }
                }
            }
        }
        for &(j, u) in &lifts {
            for &(k, w) in &lifts {
                if hyp::orient(p.z, u, w) <= 0.0 {
                    continue;
                }
                let Ok(c) = hyp::circumdisk(p.z, u, w) else { continue };
                if 2.0 * c.radius >= ORACLE_RADIUS {
                    continue;
                }
                if lifts.iter().all(|&(_, z)| c.depth(z) <= 1e-9) {
                    out.push((i, j, k, (c.radius * 1e6).round() as i64));
                }
            }
        }
    }
    out.sort();
    out
}

fn c5_brute_force() -> Outcome {
    let graph = linear_graph(2).unwrap();
    let atlas = build_atlas(&graph, &FnCoordinates { lengths: vec![1.2, 1.0, 1.4], twists: vec![0.1, 0.0, 0.3] }).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut matched = 0;
    let mut worst = String::new();
    for set in 0..10 {
        let n = rng.gen_range(6..=12);
        let mut pts = Vec::new();
        while pts.len() < n {
            let k = rng.gen_range(0..atlas.charts.len());
            let c = &atlas.charts[k];
            let z = hyp::polar(rng.gen::<f64>() * c.radius, rng.gen::<f64>() * 2.0 * PI);
            if c.contains(z, -1e-3) {
                pts.push(SurfacePoint::new(k, z));
            }
        }
        let t = lifted_delaunay(&atlas, &pts, 1.0).unwrap();
        let index: Vec<usize> = t.vertices.iter().map(|v| pts.iter().position(|p| p == v).unwrap()).collect();
        let mut got = Vec::new();
        for k in 0..t.triangles.len() {
            let p = t.triangle_lift(&atlas, k).unwrap();
            let r = hyp::circumdisk(p[0], p[1], p[2]).unwrap().radius;
            let v = t.triangles[k].vertices.map(|x| index[x]);
            for i in 0..3 {
                got.push((v[i], v[(i + 1) % 3], v[(i + 2) % 3], (r * 1e6).round() as i64));
            }
        }
        got.sort();
        let want = oracle_corners(&atlas, &pts);
        if got == want {
            matched += 1;
        } else if worst.is_empty() {
            worst = format!(" (set {set}, n = {n}: {} vs {} corners)", got.len(), want.len());
        }
    }
    outcome(matched == 10, format!("{matched}/10 point sets identical to the oracle{worst}"))
}

fn c6_linear_audits() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for g in [5, 8, 10] {
        let atlas = linear_surface(g, vec![1.0; 3 * g - 3]);
        let t = thick_thin_triangulation(&atlas, EPSILON).unwrap().complex;
        let c = pants_constants(1.0, 1.0, 16).unwrap();
        let loc = locate_vertices_in_pants(&atlas, &t).unwrap();
        let d = cluster_decomposition(&loc.tallies, c.n).unwrap();
        let of = d.cluster_of_pants();
        let size = d.clusters.iter().all(|k| k.pants.len() <= 6 * c.n);
        let occupied = d.vertex_counts.iter().all(|&x| x > 0) && loc.pants_of_vertex.iter().all(|&p| of[p].is_some());
        let consecutive = t.edges.iter().all(|e| match (of[loc.pants_of_vertex[e.u]], of[loc.pants_of_vertex[e.v]]) {
            (Some(a), Some(b)) => a.abs_diff(b) <= 1,
            _ => false,
        });
        let e = edge_tallies(&d, &loc, &t).unwrap();
        let rows: Vec<_> = edge_bound_audit(&d, &e, &t).into_iter().chain(appendix_b_audit(&d, &e, &t).unwrap()).collect();
        let failing: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
        let lower = (g - 1) as f64 / (6.0 + 39.0 * (c.n * (c.n + 1)) as f64);
        let v = t.vertices.len() as f64;
        let this = size && occupied && consecutive && failing.is_empty() && lower <= v;
        ok &= this;
        parts.push(format!(
            "g={g}: N={} clusters={} rows={} failing={:?} slack={:.1}",
            c.n,
            d.clusters.len(),
            rows.len(),
            failing,
            v - lower
        ));
    }
    // Worked example: 32 pants, N = 2, '#' marks a pants holding a vertex.
    let tallies: Vec<usize> = "#.###..##.#...#..##.###.####.###".chars().map(|ch| usize::from(ch == '#')).collect();
    let d = cluster_decomposition(&tallies, 2).unwrap();
    let clusters: Vec<_> = d.clusters.iter().map(|k| (k.pants.clone(), k.short)).collect();
    let example = d.wide_gaps == vec![5..7, 11..14, 15..17]
        && clusters == vec![(0..5, true), (7..11, true), (14..15, true), (17..23, false), (23..32, false)];
    ok &= example;
    parts.push(format!("g=17 example: {}", if example { "clusters match" } else { "MISMATCH" }));
    outcome(ok, parts.join("; "))
}

fn c7_k12() -> Outcome {
    let rot: RotationSystem = include_str!("../data/k12_genus6.rot").parse().unwrap();
    let s = hyperbolize(&rot).unwrap();
    let cert = certify_equilateral(&s).unwrap();
    let jr = ((7.0 + (1.0 + 48.0 * 6.0f64).sqrt()) / 2.0).ceil() as usize;
    let v = s.complex.vertices.len();
    // Area from the angles of the developed triangles.
    let area: f64 = (0..s.complex.triangles.len())
        .map(|k| {
            let p = s.complex.triangle_lift(&s.atlas, k).unwrap();
            PI - hyp::angle_at(p[0], p[1], p[2]) - hyp::angle_at(p[1], p[2], p[0]) - hyp::angle_at(p[2], p[0], p[1])
        })
        .sum();
    let defect = s.total_defect().unwrap();
    let k7: RotationSystem = include_str!("../data/k7_torus.rot").parse().unwrap();
    let verdict = check_hyperbolizable(&k7).unwrap();
    let rejected = !verdict.verdict
        && verdict.reasons.iter().any(|r| r.contains("not hyperbolic"))
        && matches!(hyperbolize(&k7), Err(Error::NotHyperbolizable(_)));
    let ok = cert.passed
        && v == 12
        && jr == 12
        && (area - 20.0 * PI).abs() < GAUSS_BONNET_TOL
        && (defect - 20.0 * PI).abs() < GAUSS_BONNET_TOL
        && rejected;
    outcome(
        ok,
        format!(
            "certified = {}, v = {v} (bound {jr}), area - 20pi = {:.1e}, defect - 20pi = {:.1e}, K7 rejected = {rejected}",
            cert.passed,
            area - 20.0 * PI,
            defect - 20.0 * PI
        ),
    )
}

fn c8_mutations() -> Outcome {
    let atlas = linear_surface(2, vec![1.0; 3]);
    let t = thick_thin_triangulation(&atlas, EPSILON).unwrap().complex;
    let opts = VerifyOptions::default();
    if !verify(&t, &atlas, &opts).unwrap().passed {
        return outcome(false, "base triangulation does not pass");
    }
    let seed = std::env::var("HYPDEL_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(11);
    let mut caught = 0;
    let mut silent = Vec::new();
    for (k, (bad, m)) in mutation_suite(&t, &atlas, MUTATIONS, seed).unwrap().into_iter().enumerate() {
        let cert = verify(&bad, &atlas, &opts).unwrap();
        if !cert.passed && cert.failures().all(|c| c.witness.is_some()) {
            caught += 1;
        } else {
            silent.push(format!("{k}: {m:?}"));
        }
    }
    outcome(
        caught == MUTATIONS,
        format!(
            "{caught}/{MUTATIONS} corruptions caught with witnesses (seed {seed}){}",
            if silent.is_empty() { String::new() } else { format!("; missed {silent:?}") }
        ),
    )
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("collar margin", Duration::from_secs(1), c1_collar),
        ("circumdisk extremes", Duration::from_secs(1), c2_appendix_a),
        ("cycle cover constants", Duration::from_secs(1), c3_cycle_constants),
        ("thick-thin end to end", Duration::from_secs(6 * 60), c4_end_to_end),
        ("brute-force Delaunay", Duration::from_secs(120), c5_brute_force),
        ("linear-graph audits", Duration::from_secs(300), c6_linear_audits),
        ("K12 attainment", Duration::from_secs(30), c7_k12),
        ("mutation soundness", Duration::from_secs(120), c8_mutations),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = run();
        let elapsed = start.elapsed();
        let passed = r.passed && elapsed <= *budget;
        failed += usize::from(!passed);
        println!("[{}] {}. {name}: {} ({:.2?} of {:?})", if passed { "PASS" } else { "FAIL" }, i + 1, r.detail, elapsed, budget);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
