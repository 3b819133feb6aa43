//! Wide gaps, superclusters and clusters over the chain of pants.

use super::PantsTally;
use crate::delaunay::TriComplex;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::Range;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub pants: Range<usize>,
    /// A whole supercluster of at most `3N` pants.
    pub short: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterDecomposition {
    pub n: usize,
    pub tallies: Vec<usize>,
    /// Maximal runs of at least `N` empty pants.
    pub wide_gaps: Vec<Range<usize>>,
    pub superclusters: Vec<Range<usize>>,
    pub clusters: Vec<Cluster>,
    /// `v(Γ_i)`.
    pub vertex_counts: Vec<usize>,
}

fn runs_of_empty(tallies: &[usize], n: usize) -> Vec<Range<usize>> {
    let mut gaps = Vec::new();
    let mut i = 0;
    while i < tallies.len() {
        if tallies[i] != 0 {
            i += 1;
            continue;
        }
        let start = i;
        while i < tallies.len() && tallies[i] == 0 {
            i += 1;
        }
        if i - start >= n {
            gaps.push(start..i);
        }
    }
    gaps
}

fn complement(len: usize, gaps: &[Range<usize>]) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut at = 0;
    for g in gaps {
        if g.start > at {
            out.push(at..g.start);
        }
        at = g.end;
    }
    if at < len {
        out.push(at..len);
    }
    out
}

/// Splits the chain of pants into clusters: superclusters of at most `3N`
/// pants are kept whole, longer ones of length `3kN + r` are cut into
/// `k - 1` pieces of `3N` followed by one of `3N + r`.
pub fn cluster_decomposition(tallies: &[usize], n: usize) -> Result<ClusterDecomposition> {
    if n < 2 {
        return Err(Error::Argument { what: "cluster_decomposition (N >= 2)", value: n as f64 });
    }
    if tallies.iter().all(|&x| x == 0) {
        return Err(Error::DecompositionFailure("no pants holds a vertex".into()));
    }
    let wide_gaps = runs_of_empty(tallies, n);
    let superclusters = complement(tallies.len(), &wide_gaps);
    let mut clusters = Vec::new();
    for s in &superclusters {
        let m = s.len();
        if m <= 3 * n {
            clusters.push(Cluster { pants: s.clone(), short: true });
            continue;
        }
        let k = m / (3 * n);
        let mut at = s.start;
        for _ in 0..k - 1 {
            clusters.push(Cluster { pants: at..at + 3 * n, short: false });
            at += 3 * n;
        }
        clusters.push(Cluster { pants: at..s.end, short: false });
    }
    let d = ClusterDecomposition::new(tallies.to_vec(), n, wide_gaps, superclusters, clusters);
    d.check_properties()?;
    Ok(d)
}

impl ClusterDecomposition {
    fn new(tallies: Vec<usize>, n: usize, wide_gaps: Vec<Range<usize>>, superclusters: Vec<Range<usize>>, clusters: Vec<Cluster>) -> Self {
        let vertex_counts = clusters.iter().map(|c| tallies[c.pants.clone()].iter().sum()).collect();
        ClusterDecomposition { n, tallies, wide_gaps, superclusters, clusters, vertex_counts }
    }

    /// A decomposition with prescribed clusters, checked like a computed one.
    pub fn from_clusters(tallies: &[usize], n: usize, clusters: Vec<Range<usize>>) -> Result<Self> {
        let wide_gaps = runs_of_empty(tallies, n);
        let superclusters = complement(tallies.len(), &wide_gaps);
        let clusters = clusters.into_iter().map(|pants| Cluster { short: pants.len() <= 3 * n, pants }).collect();
        let d = ClusterDecomposition::new(tallies.to_vec(), n, wide_gaps, superclusters, clusters);
        d.check_properties()?;
        Ok(d)
    }

    /// Cluster index of every pants, `None` inside wide gaps.
    pub fn cluster_of_pants(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.tallies.len()];
        for (i, c) in self.clusters.iter().enumerate() {
            for p in c.pants.clone() {
                out[p] = Some(i);
            }
        }
        out
    }

    /// Clusters are ordered, disjoint and at most `6N` long; each holds a
    /// vertex and every vertex lies in one.
    pub fn check_properties(&self) -> Result<()> {
        let fail = |m: String| Err(Error::DecompositionFailure(m));
        let mut at = 0;
        for (i, c) in self.clusters.iter().enumerate() {
            if c.pants.start < at || c.pants.end > self.tallies.len() || c.pants.is_empty() {
                return fail(format!("cluster {i} = {:?} overlaps its predecessor or leaves the chain", c.pants));
            }
            if c.pants.len() > 6 * self.n {
                return fail(format!("cluster {i} has {} > 6N = {} pants", c.pants.len(), 6 * self.n));
            }
            if self.vertex_counts[i] == 0 {
                return fail(format!("cluster {i} = {:?} holds no vertex", c.pants));
            }
            at = c.pants.end;
        }
        let of = self.cluster_of_pants();
        if let Some(p) = (0..self.tallies.len()).find(|&p| self.tallies[p] > 0 && of[p].is_none()) {
            return fail(format!("pants {p} holds {} vertices but lies in no cluster", self.tallies[p]));
        }
        Ok(())
    }

    /// Number of pants strictly between clusters `i` and `i + 1`.
    pub fn separation(&self, i: usize) -> usize {
        self.clusters[i + 1].pants.start - self.clusters[i].pants.end
    }
}

/// Edge counts per cluster and per consecutive pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeTallies {
    pub cluster_of_vertex: Vec<usize>,
    /// `e(Γ_i, Γ_i)`.
    pub within: Vec<usize>,
    /// `e(Γ_i, Γ_{i+1})`.
    pub between: Vec<usize>,
}

/// Counts edges by cluster. An edge joining non-consecutive clusters
/// violates the decomposition and is reported as its witness.
pub fn edge_tallies(d: &ClusterDecomposition, loc: &PantsTally, t: &TriComplex) -> Result<EdgeTallies> {
    let of = d.cluster_of_pants();
    let mut cluster_of_vertex = Vec::with_capacity(loc.pants_of_vertex.len());
    for (v, &p) in loc.pants_of_vertex.iter().enumerate() {
        match of.get(p).copied().flatten() {
            Some(c) => cluster_of_vertex.push(c),
            None => return Err(Error::DecompositionFailure(format!("vertex {v} in pants {p} lies in no cluster"))),
        }
    }
    let k = d.clusters.len();
    let mut within = vec![0; k];
    let mut between = vec![0; k.saturating_sub(1)];
    for (i, e) in t.edges.iter().enumerate() {
        let (a, b) = (cluster_of_vertex[e.u], cluster_of_vertex[e.v]);
        match a.abs_diff(b) {
            0 => within[a] += 1,
            1 => between[a.min(b)] += 1,
            _ => {
                return Err(Error::DecompositionFailure(format!(
                    "edge {i} joins vertex {} in cluster {a} to vertex {} in cluster {b}",
                    e.u, e.v
                )))
            }
        }
    }
    Ok(EdgeTallies { cluster_of_vertex, within, between })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pattern(s: &str) -> Vec<usize> {
        s.chars().filter(|c| !c.is_whitespace()).map(|c| usize::from(c == '#')).collect()
    }

    /// Genus 17 has 32 pants; `#` marks a pants holding vertices.
    #[test]
    fn genus_seventeen_chain() {
        let t = pattern("#.### .. ##.# ... # .. ##.###.####.###");
        assert_eq!(t.len(), 32);
        let d = cluster_decomposition(&t, 2).unwrap();
        assert_eq!(d.wide_gaps, vec![5..7, 11..14, 15..17]);
        assert_eq!(d.superclusters, vec![0..5, 7..11, 14..15, 17..32]);
        let got: Vec<(Range<usize>, bool)> = d.clusters.iter().map(|c| (c.pants.clone(), c.short)).collect();
        // 15 = 3·2·2 + 3: one piece of 6, then one of 9.
        assert_eq!(got, vec![(0..5, true), (7..11, true), (14..15, true), (17..23, false), (23..32, false)]);
        assert_eq!(d.vertex_counts, vec![4, 3, 1, 5, 7]);
    }

    #[test]
    fn full_chain_is_chopped() {
        for g in [5, 10, 17, 30] {
            let t = vec![1; 2 * g - 2];
            let d = cluster_decomposition(&t, 2).unwrap();
            assert_eq!(d.superclusters, vec![0..2 * g - 2]);
            if 2 * g - 2 > 6 {
                assert_eq!(d.clusters.len(), (2 * g - 2) / 6);
                assert!(d.clusters.iter().all(|c| (6..12).contains(&c.pants.len())));
            }
        }
    }

    #[test]
    fn lone_vertex() {
        let mut t = vec![0; 12];
        t[0] = 3;
        let d = cluster_decomposition(&t, 2).unwrap();
        assert_eq!(d.clusters, vec![Cluster { pants: 0..1, short: true }]);
        assert!(cluster_decomposition(&[0; 6], 2).is_err());
        assert!(cluster_decomposition(&t, 1).is_err());
    }

    #[test]
    fn prescribed_clusters_are_checked() {
        let t = pattern("##..##");
        assert!(ClusterDecomposition::from_clusters(&t, 2, vec![0..2, 4..6]).is_ok());
        assert!(ClusterDecomposition::from_clusters(&t, 2, vec![Range { start: 0, end: 2 }]).is_err());
        assert!(ClusterDecomposition::from_clusters(&t, 2, vec![0..3, 2..6]).is_err());
        assert!(ClusterDecomposition::from_clusters(&t, 2, vec![0..2, 2..4, 4..6]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn properties_hold(bits in prop::collection::vec(prop::bool::weighted(0.4), 2..80), n in 2usize..5) {
            let t: Vec<usize> = bits.iter().map(|&b| usize::from(b)).collect();
            prop_assume!(t.iter().any(|&x| x > 0));
            let d = cluster_decomposition(&t, n).unwrap();
            prop_assert_eq!(d.vertex_counts.iter().sum::<usize>(), t.iter().sum::<usize>());
            prop_assert_eq!(&cluster_decomposition(&t, n).unwrap(), &d);
            // Clusters tile the superclusters exactly.
            let covered: usize = d.clusters.iter().map(|c| c.pants.len()).sum();
            prop_assert_eq!(covered, d.superclusters.iter().map(|s| s.len()).sum::<usize>());
            // Each supercluster decomposes the same on its own.
            for s in &d.superclusters {
                let sub = cluster_decomposition(&t[s.clone()], n).unwrap();
                let shifted: Vec<Range<usize>> = sub.clusters.iter().map(|c| c.pants.start + s.start..c.pants.end + s.start).collect();
                let mine: Vec<Range<usize>> = d.clusters.iter().map(|c| c.pants.clone()).filter(|c| c.start >= s.start && c.end <= s.end).collect();
                prop_assert_eq!(shifted, mine);
            }
            for c in &d.clusters {
                prop_assert!(c.pants.len() <= 6 * n);
                prop_assert!(c.short || c.pants.len() >= 3 * n);
            }
        }
    }
}
