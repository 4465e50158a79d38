//! Finite simple graphs and the combinatorial invariants the ideal computations consume.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph on {count} vertices")]
    OutOfRange { vertex: usize, count: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has {count} vertices; exhaustive search is bounded at {bound}")]
    BoundExceeded { count: usize, bound: usize },
    #[error("cycle enumeration exceeded the bound of {0} cycles")]
    TooManyCycles(usize),
    #[error("not a cycle of the graph: {0}")]
    NotACycle(String),
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { got: usize, expected: usize },
    #[error("vertex set must be nonempty")]
    EmptySet,
}

/// A sorted, duplicate-free set of vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|v| mask >> v & 1 == 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// 1-based labels, as used in every text format.
    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let set: BTreeSet<usize> = iter.into_iter().collect();
        VertexSet(set.into_iter().collect())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

/// A simple cycle given by its cyclically ordered vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CycleCertificate {
    vertices: Vec<usize>,
}

impl CycleCertificate {
    /// Validates that `vertices` is a simple cycle of `g` of length at least 3.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        let k = vertices.len();
        let describe = || {
            vertices
                .iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        if k < 3 {
            return Err(GraphError::NotACycle(describe()));
        }
        for &v in &vertices {
            g.check_vertex(v)?;
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != k {
            return Err(GraphError::NotACycle(describe()));
        }
        for i in 0..k {
            if !g.has_edge(vertices[i], vertices[(i + 1) % k]) {
                return Err(GraphError::NotACycle(describe()));
            }
        }
        Ok(CycleCertificate { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.vertices.len() % 2 == 1
    }

    /// `n` for a cycle of length `2n+1`.
    pub fn half_length(&self) -> Option<usize> {
        self.is_odd().then(|| (self.vertices.len() - 1) / 2)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn labels(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v + 1).collect()
    }
}

/// A finite simple graph on vertices `0..vertex_count`.
///
/// Edges keep their insertion order; that order is one of the selectable edge
/// orders for edgelex comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        };
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u + 1));
        }
        let (a, b) = (u.min(v), u.max(v));
        if self.has_edge(a, b) {
            return Err(GraphError::DuplicateEdge(a + 1, b + 1));
        }
        self.edges.push((a, b));
        for (x, y) in [(a, b), (b, a)] {
            let pos = self.adj[x].binary_search(&y).unwrap_err();
            self.adj[x].insert(pos, y);
        }
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::OutOfRange {
                vertex: v + 1,
                count: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs, in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|&e| e == key)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v].iter().fold(0, |m, &u| m | 1 << u)
    }

    pub fn all_vertices(&self) -> VertexSet {
        (0..self.n).collect()
    }

    pub(crate) fn require_bound(&self, limits: &Limits) -> Result<(), GraphError> {
        if self.n > limits.max_vertices || self.n > 63 {
            Err(GraphError::BoundExceeded {
                count: self.n,
                bound: limits.max_vertices.min(63),
            })
        } else {
            Ok(())
        }
    }

    /// Union of the neighborhoods of the vertices in `s`.
    ///
    /// For the vertex set of a cycle this contains the cycle itself.
    pub fn neighborhoods(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySet);
        }
        for v in s.iter() {
            self.check_vertex(v)?;
        }
        Ok(s.iter().flat_map(|v| self.adj[v].iter().copied()).collect())
    }

    /// Closed neighborhood `s ∪ N(s)`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        let open = self.neighborhoods(s)?;
        Ok(open.iter().chain(s.iter()).collect())
    }

    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        for v in s.iter() {
            self.check_vertex(v)?;
        }
        let map: Vec<usize> = s.iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let mut graph = Graph::empty(map.len());
        for &(u, v) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                graph.add_edge(index[u], index[v])?;
            }
        }
        Ok(InducedSubgraph { graph, map })
    }

    /// All inclusion-minimal vertex covers, sorted canonically, with `α(G)`.
    pub fn minimal_vertex_covers(&self, limits: &Limits) -> Result<VertexCovers, GraphError> {
        self.require_bound(limits)?;
        if self.edges.is_empty() {
            return Ok(VertexCovers {
                covers: vec![VertexSet::new()],
                alpha: 0,
                edgeless: true,
            });
        }
        let nbr: Vec<u64> = (0..self.n).map(|v| self.neighbor_mask(v)).collect();
        let mut covers = Vec::new();
        for mask in 0u64..(1 << self.n) {
            let covers_all = self
                .edges
                .iter()
                .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1);
            if !covers_all {
                continue;
            }
            // minimal iff every member has a neighbor outside the cover
            let minimal = (0..self.n)
                .filter(|v| mask >> v & 1 == 1)
                .all(|v| nbr[v] & !mask != 0);
            if minimal {
                covers.push(VertexSet::from_mask(mask));
            }
        }
        covers.sort();
        let alpha = covers.iter().map(VertexSet::len).min().unwrap_or(0);
        Ok(VertexCovers {
            covers,
            alpha,
            edgeless: false,
        })
    }

    /// `α(G)` for the induced subgraph on every vertex subset, indexed by mask.
    pub(crate) fn cover_numbers(&self, limits: &Limits) -> Result<Vec<u8>, GraphError> {
        self.require_bound(limits)?;
        let nbr: Vec<u64> = (0..self.n).map(|v| self.neighbor_mask(v)).collect();
        let full = 1usize << self.n;
        let mut alpha = vec![0u8; full];
        for mask in 1..full {
            let m = mask as u64;
            let pivot = (0..self.n).find(|&v| m >> v & 1 == 1 && nbr[v] & m != 0);
            alpha[mask] = match pivot {
                None => 0,
                Some(v) => {
                    let take = 1 + alpha[(m & !(1 << v)) as usize];
                    let inside = nbr[v] & m;
                    let skip = inside.count_ones() as u8 + alpha[(m & !inside & !(1 << v)) as usize];
                    take.min(skip)
                }
            };
        }
        Ok(alpha)
    }

    /// Largest set of edges whose endpoints induce exactly that matching.
    pub fn max_induced_matching(&self, limits: &Limits) -> Result<Vec<(usize, usize)>, GraphError> {
        self.require_bound(limits)?;
        let closed: Vec<u64> = (0..self.n).map(|v| self.neighbor_mask(v) | 1 << v).collect();
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.induced_matching_search(0, 0, &closed, &mut current, &mut best);
        Ok(best)
    }

    fn induced_matching_search(
        &self,
        start: usize,
        blocked: u64,
        closed: &[u64],
        current: &mut Vec<(usize, usize)>,
        best: &mut Vec<(usize, usize)>,
    ) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        if current.len() + (self.edges.len() - start) <= best.len() {
            return;
        }
        for i in start..self.edges.len() {
            let (u, v) = self.edges[i];
            if blocked >> u & 1 == 1 || blocked >> v & 1 == 1 {
                continue;
            }
            current.push((u, v));
            self.induced_matching_search(i + 1, blocked | closed[u] | closed[v], closed, current, best);
            current.pop();
        }
    }

    /// Induced matching number `ν(G)`.
    pub fn induced_matching_number(&self, limits: &Limits) -> Result<usize, GraphError> {
        Ok(self.max_induced_matching(limits)?.len())
    }

    /// Two-colors the graph, or returns an odd cycle.
    pub fn bipartition(&self) -> Bipartiteness {
        let mut color = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        for root in 0..self.n {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return Bipartiteness::OddCycle(self.tree_cycle(u, v, &parent, &depth));
                    }
                }
            }
        }
        Bipartiteness::Bipartite(color.into_iter().map(|c| c as usize).collect())
    }

    /// Closes the BFS-tree paths from `u` and `v` to their common ancestor.
    fn tree_cycle(&self, u: usize, v: usize, parent: &[usize], depth: &[usize]) -> CycleCertificate {
        let (mut a, mut b) = (u, v);
        let mut left = vec![a];
        let mut right = vec![b];
        while depth[a] > depth[b] {
            a = parent[a];
            left.push(a);
        }
        while depth[b] > depth[a] {
            b = parent[b];
            right.push(b);
        }
        while a != b {
            a = parent[a];
            b = parent[b];
            left.push(a);
            right.push(b);
        }
        right.pop();
        right.reverse();
        left.extend(right);
        CycleCertificate::new(self, left).expect("BFS conflict always closes a simple cycle")
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartiteness::Bipartite(_))
    }

    /// All simple cycles, each listed once starting from its smallest vertex.
    pub fn simple_cycles(&self, limits: &Limits) -> Result<Vec<CycleCertificate>, GraphError> {
        self.require_bound(limits)?;
        let mut out = Vec::new();
        for start in 0..self.n {
            let mut path = vec![start];
            let mut on_path = 1u64 << start;
            self.cycle_search(start, &mut path, &mut on_path, &mut out, limits.max_cycles)?;
        }
        out.sort();
        Ok(out)
    }

    fn cycle_search(
        &self,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut u64,
        out: &mut Vec<CycleCertificate>,
        cap: usize,
    ) -> Result<(), GraphError> {
        let last = *path.last().unwrap();
        for &w in &self.adj[last] {
            if w == start && path.len() >= 3 && path[1] < last {
                if out.len() >= cap {
                    return Err(GraphError::TooManyCycles(cap));
                }
                out.push(CycleCertificate {
                    vertices: path.clone(),
                });
            } else if w > start && *on_path >> w & 1 == 0 {
                path.push(w);
                *on_path |= 1 << w;
                self.cycle_search(start, path, on_path, out, cap)?;
                *on_path &= !(1 << w);
                path.pop();
            }
        }
        Ok(())
    }

    /// All odd simple cycles plus, per vertex, whether it lies on any simple cycle.
    pub fn odd_cycles(&self, limits: &Limits) -> Result<OddCycles, GraphError> {
        let cycles = self
            .simple_cycles(limits)?
            .into_iter()
            .filter(CycleCertificate::is_odd)
            .collect();
        Ok(OddCycles {
            cycles,
            on_cycle: self.on_cycle_flags(),
        })
    }

    /// A vertex lies on a simple cycle iff some incident edge is not a bridge.
    pub fn on_cycle_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if !self.is_bridge(i) {
                flags[u] = true;
                flags[v] = true;
            }
        }
        flags
    }

    fn is_bridge(&self, edge: usize) -> bool {
        let (u, v) = self.edges[edge];
        let mut seen = vec![false; self.n];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if (x, y) == (u, v) || (x, y) == (v, u) {
                    continue;
                }
                if !seen[y] {
                    if y == v {
                        return false;
                    }
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        true
    }

    pub fn is_forest(&self) -> bool {
        !self.on_cycle_flags().iter().any(|&f| f)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    /// Parallelization: vertex `i` is deleted when `weights[i] == 0` and
    /// otherwise appears `weights[i]` times, every copy adjacent to exactly the
    /// copies of the original neighbors.
    pub fn parallelization(&self, weights: &[usize]) -> Result<Parallelization, GraphError> {
        if weights.len() != self.n {
            return Err(GraphError::WeightLength {
                got: weights.len(),
                expected: self.n,
            });
        }
        let mut origin = Vec::new();
        let mut copies: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (v, &w) in weights.iter().enumerate() {
            for _ in 0..w {
                copies[v].push(origin.len());
                origin.push(v);
            }
        }
        let mut graph = Graph::empty(origin.len());
        for &(u, v) in &self.edges {
            for &a in &copies[u] {
                for &b in &copies[v] {
                    graph.add_edge(a, b)?;
                }
            }
        }
        Ok(Parallelization { graph, origin })
    }

    /// Searches for a split `V = A ⊔ B` with `α(G[A]) + α(G[B]) = α(G)`.
    ///
    /// A partition into more parts with the same property can always be merged
    /// down to two parts, since `Σ α(G[V_i]) ≤ α(G)` for every partition.
    pub fn decomposability(&self, limits: &Limits) -> Result<Decomposability, GraphError> {
        let alpha = self.cover_numbers(limits)?;
        if self.n < 2 {
            return Ok(Decomposability::Indecomposable);
        }
        let full = (1u64 << self.n) - 1;
        let total = alpha[full as usize];
        // fix vertex 0 in the first part to visit each split once
        for a in (1..full).filter(|a| a & 1 == 1) {
            let b = full & !a;
            if b == 0 {
                continue;
            }
            if alpha[a as usize] + alpha[b as usize] == total {
                return Ok(Decomposability::Decomposable(vec![
                    VertexSet::from_mask(a),
                    VertexSet::from_mask(b),
                ]));
            }
        }
        Ok(Decomposability::Indecomposable)
    }

    /// Checks the structural hypotheses attached to a designated odd cycle.
    pub fn check_hypotheses(&self, cycle: &CycleCertificate, limits: &Limits) -> Result<HypothesisReport, GraphError> {
        let cycle = CycleCertificate::new(self, cycle.vertices.clone())?;
        if !cycle.is_odd() {
            return Err(GraphError::NotACycle(format!(
                "designated cycle has even length {}",
                cycle.len()
            )));
        }
        let vc = cycle.vertex_set();
        let open = self.neighborhoods(&vc)?;
        let closed = self.closed_neighborhood(&vc)?;
        let all = self.all_vertices();
        let h_vertices: VertexSet = (0..self.n).filter(|&v| !open.contains(v)).collect();
        let on_cycle = self.on_cycle_flags();
        let h = self.induced_subgraph(&h_vertices)?;
        let nu_g = self.induced_matching_number(limits)?;
        let nu_h = h.graph.induced_matching_number(limits)?;
        let h_forest = h_vertices.iter().all(|v| !on_cycle[v]);
        Ok(HypothesisReport {
            dominant: open == all,
            closed_dominant: closed == all,
            h_forest,
            h_vertices,
            h,
            nu_g,
            nu_h,
            gap: nu_g as i64 - nu_h as i64,
        })
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for &(u, v) in &self.edges {
            writeln!(f, "e {} {}", u + 1, v + 1)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `map[new] = old`
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCovers {
    pub covers: Vec<VertexSet>,
    pub alpha: usize,
    /// Set for edgeless graphs, where the only cover is empty.
    pub edgeless: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// A proper 2-coloring.
    Bipartite(Vec<usize>),
    OddCycle(CycleCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycles {
    pub cycles: Vec<CycleCertificate>,
    pub on_cycle: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelization {
    pub graph: Graph,
    /// `origin[new]` is the original vertex the new vertex copies.
    pub origin: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposability {
    Decomposable(Vec<VertexSet>),
    Indecomposable,
}

#[derive(Debug, Clone)]
pub struct HypothesisReport {
    /// `⋃_{x ∈ V(C)} N(x) = V(G)`
    pub dominant: bool,
    /// `V(C) ∪ ⋃ N(x) = V(G)`; coincides with `dominant` for cycles.
    pub closed_dominant: bool,
    pub h_vertices: VertexSet,
    pub h: InducedSubgraph,
    /// No vertex of `H` lies on a cycle of `G`.
    pub h_forest: bool,
    pub nu_g: usize,
    pub nu_h: usize,
    pub gap: i64,
}

impl HypothesisReport {
    pub fn gap_at_least_three(&self) -> bool {
        self.gap >= 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(k: usize) -> Graph {
        Graph::new(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()
    }

    fn path(k: usize) -> Graph {
        Graph::new(k, (0..k - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::Loop(2)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(1, 2)));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(GraphError::OutOfRange { .. })));
    }

    #[test]
    fn induced_subgraph_cases() {
        let c5 = cycle(5);
        let all = c5.induced_subgraph(&c5.all_vertices()).unwrap();
        assert_eq!(all.graph.sorted_edges(), c5.sorted_edges());
        let p = c5.induced_subgraph(&set(&[1, 2, 3])).unwrap();
        assert_eq!(p.graph.sorted_edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.map, vec![0, 1, 2]);
        assert!(c5.induced_subgraph(&set(&[9])).is_err());
    }

    #[test]
    fn neighborhoods_cases() {
        let c5 = cycle(5);
        assert_eq!(c5.neighborhoods(&set(&[1])).unwrap(), set(&[2, 5]));
        assert_eq!(c5.neighborhoods(&c5.all_vertices()).unwrap(), c5.all_vertices());
        let mut g = Graph::new(6, c5.edges().iter().copied()).unwrap();
        g.add_edge(0, 5).unwrap();
        assert_eq!(g.neighborhoods(&set(&[1, 2, 3, 4, 5])).unwrap(), g.all_vertices());
        assert_eq!(g.neighborhoods(&VertexSet::new()), Err(GraphError::EmptySet));
    }

    #[test]
    fn covers_small_cases() {
        let lim = Limits::default();
        let e = Graph::new(2, [(0, 1)]).unwrap().minimal_vertex_covers(&lim).unwrap();
        assert_eq!(e.covers, vec![set(&[1]), set(&[2])]);
        assert_eq!(e.alpha, 1);
        let k3 = cycle(3).minimal_vertex_covers(&lim).unwrap();
        assert_eq!(k3.covers, vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
        assert_eq!(k3.alpha, 2);
        let c5 = cycle(5).minimal_vertex_covers(&lim).unwrap();
        assert_eq!(c5.covers.len(), 5);
        assert!(c5.covers.iter().all(|c| c.len() == 3));
        assert_eq!(c5.alpha, 3);
        let none = Graph::empty(3).minimal_vertex_covers(&lim).unwrap();
        assert!(none.edgeless);
        assert_eq!(none.covers, vec![VertexSet::new()]);
    }

    #[test]
    fn search_bound_is_enforced() {
        let lim = Limits {
            max_vertices: 4,
            ..Limits::default()
        };
        assert!(matches!(
            cycle(5).minimal_vertex_covers(&lim),
            Err(GraphError::BoundExceeded { count: 5, bound: 4 })
        ));
        assert!(cycle(5).odd_cycles(&lim).is_err());
        assert!(cycle(5).decomposability(&lim).is_err());
    }

    #[test]
    fn induced_matching_cases() {
        let lim = Limits::default();
        assert_eq!(cycle(5).induced_matching_number(&lim).unwrap(), 1);
        assert_eq!(path(2).induced_matching_number(&lim).unwrap(), 1);
        assert_eq!(path(5).induced_matching_number(&lim).unwrap(), 2);
        assert_eq!(cycle(7).induced_matching_number(&lim).unwrap(), 2);
        assert_eq!(Graph::empty(3).induced_matching_number(&lim).unwrap(), 0);
    }

    #[test]
    fn bipartite_and_witness() {
        assert!(cycle(4).is_bipartite());
        assert!(path(6).is_bipartite());
        match cycle(5).bipartition() {
            Bipartiteness::OddCycle(c) => assert_eq!(c.len(), 5),
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn odd_cycle_enumeration() {
        let lim = Limits::default();
        let tree = path(6).odd_cycles(&lim).unwrap();
        assert!(tree.cycles.is_empty());
        assert!(tree.on_cycle.iter().all(|&f| !f));

        let mut g = Graph::new(6, cycle(5).edges().iter().copied()).unwrap();
        g.add_edge(0, 5).unwrap();
        let oc = g.odd_cycles(&lim).unwrap();
        assert_eq!(oc.cycles.len(), 1);
        assert_eq!(oc.on_cycle, vec![true, true, true, true, true, false]);

        // C_4 with a chord has two triangles and one 4-cycle
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(g.simple_cycles(&lim).unwrap().len(), 3);
        assert_eq!(g.odd_cycles(&lim).unwrap().cycles.len(), 2);
    }

    #[test]
    fn parallelization_cases() {
        let c5 = cycle(5);
        let same = c5.parallelization(&[1; 5]).unwrap();
        assert_eq!(same.graph.sorted_edges(), c5.sorted_edges());
        let e = Graph::new(2, [(0, 1)]).unwrap();
        let star = e.parallelization(&[2, 1]).unwrap();
        assert_eq!(star.origin, vec![0, 0, 1]);
        assert_eq!(star.graph.sorted_edges(), vec![(0, 2), (1, 2)]);
        let p4 = c5.parallelization(&[0, 1, 1, 1, 1]).unwrap();
        assert_eq!(p4.graph.vertex_count(), 4);
        assert_eq!(p4.graph.sorted_edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(c5.parallelization(&[1, 1]).is_err());
    }

    #[test]
    fn decomposability_cases() {
        let lim = Limits::default();
        let e = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(e.decomposability(&lim).unwrap(), Decomposability::Indecomposable);
        match cycle(4).decomposability(&lim).unwrap() {
            Decomposability::Decomposable(parts) => {
                assert_eq!(parts.len(), 2);
                assert!(parts.iter().all(|p| p.len() == 2));
            }
            Decomposability::Indecomposable => panic!("C_4 is decomposable"),
        }
        assert_eq!(cycle(5).decomposability(&lim).unwrap(), Decomposability::Indecomposable);
    }

    #[test]
    fn hypotheses_on_bare_cycle() {
        let c5 = cycle(5);
        let c = CycleCertificate::new(&c5, vec![0, 1, 2, 3, 4]).unwrap();
        let h = c5.check_hypotheses(&c, &Limits::default()).unwrap();
        assert!(h.dominant && h.closed_dominant && h.h_forest);
        assert!(h.h_vertices.is_empty());
        assert_eq!((h.nu_g, h.nu_h, h.gap), (1, 0, 1));
        assert!(!h.gap_at_least_three());
    }

    #[test]
    fn cycle_certificate_validation() {
        let c5 = cycle(5);
        assert!(CycleCertificate::new(&c5, vec![0, 1, 2]).is_err());
        assert!(CycleCertificate::new(&c5, vec![0, 1]).is_err());
        assert!(CycleCertificate::new(&c5, vec![0, 1, 2, 3, 4, 0]).is_err());
        let c = CycleCertificate::new(&c5, vec![2, 3, 4, 0, 1]).unwrap();
        assert_eq!(c.half_length(), Some(2));
    }
}
