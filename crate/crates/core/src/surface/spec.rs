use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Trivalent graph of a pants decomposition: one node per pair of pants,
/// one edge per pants curve. Loops and multi-edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

/// One end of a pants curve as seen from a pair of pants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CuffSlot {
    pub curve: usize,
    /// 0 when this pants is the first endpoint of the curve, 1 otherwise.
    pub end: usize,
}

impl PantsGraph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = PantsGraph { nodes, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn genus(&self) -> usize {
        self.nodes / 2 + 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < 2 || self.nodes % 2 != 0 {
            return Err(Error::InvalidGraph(format!("{} nodes; expected 2g-2 with g >= 2", self.nodes)));
        }
        let g = self.genus();
        if self.edges.len() != 3 * g - 3 {
            return Err(Error::InvalidGraph(format!("{} edges; expected {}", self.edges.len(), 3 * g - 3)));
        }
        let mut deg = vec![0usize; self.nodes];
        for &(u, v) in &self.edges {
            if u >= self.nodes || v >= self.nodes {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) references a missing node")));
            }
            deg[u] += 1;
            deg[v] += 1;
        }
        if let Some(n) = deg.iter().position(|&d| d != 3) {
            return Err(Error::InvalidGraph(format!("node {n} has degree {}", deg[n])));
        }
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(n) = stack.pop() {
            for &(u, v) in &self.edges {
                for (a, b) in [(u, v), (v, u)] {
                    if a == n && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidGraph("graph is disconnected".into()));
        }
        Ok(())
    }

    /// The three cuff slots of each pants, in edge-list order (a loop
    /// contributes its first end, then its second).
    pub fn slots(&self) -> Vec<[CuffSlot; 3]> {
        let mut out: Vec<Vec<CuffSlot>> = vec![Vec::new(); self.nodes];
        for (c, &(u, v)) in self.edges.iter().enumerate() {
            out[u].push(CuffSlot { curve: c, end: 0 });
            out[v].push(CuffSlot { curve: c, end: 1 });
        }
        out.into_iter().map(|s| [s[0], s[1], s[2]]).collect()
    }
}

/// The linear trivalent graph `L_g`: a chain of `2g - 2` pants with a loop at
/// each end, single edges after odd positions and double edges after even
/// positions (1-based).
pub fn linear_graph(g: usize) -> Result<PantsGraph> {
    if g < 2 {
        return Err(Error::InvalidGenus(g));
    }
    let n = 2 * g - 2;
    let mut edges = vec![(0, 0)];
    for i in 0..n - 1 {
        let mult = if (i + 1) % 2 == 1 { 1 } else { 2 };
        for _ in 0..mult {
            edges.push((i, i + 1));
        }
    }
    edges.push((n - 1, n - 1));
    PantsGraph::new(n, edges)
}

/// Fenchel-Nielsen coordinates, indexed like the graph's edges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FnCoordinates {
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

impl FnCoordinates {
    pub fn uniform(count: usize, length: f64) -> Self {
        FnCoordinates { lengths: vec![length; count], twists: vec![0.0; count] }
    }

    pub fn validate(&self, graph: &PantsGraph) -> Result<()> {
        if self.lengths.len() != graph.edges.len() || self.twists.len() != graph.edges.len() {
            return Err(Error::InvalidGraph(format!(
                "{} lengths and {} twists for {} curves",
                self.lengths.len(),
                self.twists.len(),
                graph.edges.len()
            )));
        }
        for (index, &value) in self.lengths.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidLength { index, value });
            }
        }
        if let Some(index) = self.twists.iter().position(|t| !t.is_finite()) {
            return Err(Error::InvalidLength { index, value: self.twists[index] });
        }
        Ok(())
    }
}

/// On-disk surface description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub genus: usize,
    pub graph: Vec<[usize; 2]>,
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

impl SurfaceSpec {
    pub fn new(graph: &PantsGraph, fnc: &FnCoordinates) -> Self {
        SurfaceSpec {
            genus: graph.genus(),
            graph: graph.edges.iter().map(|&(u, v)| [u, v]).collect(),
            lengths: fnc.lengths.clone(),
            twists: fnc.twists.clone(),
        }
    }

    /// `S_g` over the linear graph with every length `length` and zero twists.
    pub fn linear(g: usize, length: f64) -> Result<Self> {
        let graph = linear_graph(g)?;
        let fnc = FnCoordinates::uniform(graph.edges.len(), length);
        Ok(SurfaceSpec::new(&graph, &fnc))
    }

    pub fn parts(&self) -> Result<(PantsGraph, FnCoordinates)> {
        let nodes = self.graph.iter().flat_map(|e| e.iter().copied()).max().map_or(0, |m| m + 1);
        let graph = PantsGraph::new(nodes, self.graph.iter().map(|e| (e[0], e[1])).collect())?;
        if graph.genus() != self.genus {
            return Err(Error::InvalidGraph(format!("declared genus {} but graph has genus {}", self.genus, graph.genus())));
        }
        let fnc = FnCoordinates { lengths: self.lengths.clone(), twists: self.twists.clone() };
        fnc.validate(&graph)?;
        Ok((graph, fnc))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SurfaceSpec = serde_json::from_str(text)?;
        spec.parts()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("surface spec serialises")
    }

    pub fn load(path: &Path) -> Result<Self> {
        SurfaceSpec::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn genus_two_linear_graph() {
        let g = linear_graph(2).unwrap();
        assert_eq!(g.nodes, 2);
        assert_eq!(g.edges, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn genus_three_linear_graph() {
        let g = linear_graph(3).unwrap();
        assert_eq!(g.nodes, 4);
        assert_eq!(g.edges, vec![(0, 0), (0, 1), (1, 2), (1, 2), (2, 3), (3, 3)]);
    }

    #[test]
    fn genus_one_rejected() {
        assert!(matches!(linear_graph(1), Err(Error::InvalidGenus(1))));
    }

    #[test]
    fn bad_graphs_rejected() {
        assert!(matches!(PantsGraph::new(2, vec![(0, 0), (0, 0), (1, 1)]), Err(Error::InvalidGraph(_))));
        // Two disjoint theta graphs have the right degrees but are disconnected.
        let theta = vec![(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)];
        assert!(matches!(PantsGraph::new(4, theta), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn zero_length_rejected() {
        let g = linear_graph(2).unwrap();
        let f = FnCoordinates { lengths: vec![1.0, 0.0, 1.0], twists: vec![0.0; 3] };
        assert!(matches!(f.validate(&g), Err(Error::InvalidLength { index: 1, .. })));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let mut spec = SurfaceSpec::linear(3, 1.0).unwrap();
        spec.lengths[2] = 0.1 + 0.2;
        spec.twists[1] = -1.0 / 3.0;
        let back = SurfaceSpec::from_json(&spec.to_json()).unwrap();
        for (a, b) in spec.lengths.iter().zip(&back.lengths).chain(spec.twists.iter().zip(&back.twists)) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    proptest! {
        #[test]
        fn linear_graph_invariants(g in 2usize..40) {
            let graph = linear_graph(g).unwrap();
            prop_assert_eq!(graph.nodes, 2 * g - 2);
            prop_assert_eq!(graph.edges.len(), 3 * g - 3);
            prop_assert_eq!(graph.genus(), g);
            prop_assert!(graph.validate().is_ok());
        }
    }
}
