//! Canonical simple undirected graphs with CSR adjacency.

use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index, `< vertex_count` of the graph it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct VertexId(pub u64);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        Self(v as u64)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Undirected edge stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
}

impl Edge {
    /// Builds the canonical form of `{x, y}`. Returns `None` for self-loops.
    pub fn canonical(x: VertexId, y: VertexId) -> Option<Self> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Some(Self { a: x, b: y }),
            std::cmp::Ordering::Greater => Some(Self { a: y, b: x }),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// The endpoint that is not `v`.
    #[inline]
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

/// Reads whitespace-separated integer pairs, one per line. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Vec<(u64, u64)>> {
    let mut pairs = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<u64> {
            let tok = tok.ok_or_else(|| Error::Parse {
                line: lineno + 1,
                reason: "expected two vertex ids".into(),
            })?;
            tok.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                reason: format!("not a vertex id: {tok:?}"),
            })
        };
        let u = parse(tokens.next())?;
        let v = parse(tokens.next())?;
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: lineno + 1,
                reason: "expected exactly two vertex ids".into(),
            });
        }
        pairs.push((u, v));
    }
    Ok(pairs)
}

/// Immutable simple undirected graph.
///
/// Vertices are dense `0..vertex_count`; every vertex has at least one
/// incident edge. Edges are sorted by `(a, b)` and the edge index used
/// throughout the crate is the position in that list. Adjacency is CSR:
/// the neighbors of `v` are `adjacency[offsets[v]..offsets[v + 1]]`, sorted
/// ascending by neighbor, each paired with the index of the connecting edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<(VertexId, usize)>,
    original_ids: Vec<u64>,
}

impl Graph {
    /// Drops self-loops, merges duplicate edges in either direction and
    /// renumbers the remaining endpoints densely, preserving the numeric order
    /// of the original ids.
    pub fn canonicalize(pairs: &[(u64, u64)]) -> Self {
        let mut ids: Vec<u64> = pairs
            .iter()
            .filter(|(u, v)| u != v)
            .flat_map(|&(u, v)| [u, v])
            .collect();
        ids.sort_unstable();
        ids.dedup();

        let dense = |x: u64| VertexId(ids.binary_search(&x).expect("id collected above") as u64);
        let mut edges: Vec<Edge> = pairs
            .iter()
            .filter(|(u, v)| u != v)
            .filter_map(|&(u, v)| Edge::canonical(dense(u), dense(v)))
            .collect();
        edges.sort_unstable();
        edges.dedup();

        Self::from_sorted_edges(ids, edges)
    }

    fn from_sorted_edges(original_ids: Vec<u64>, edges: Vec<Edge>) -> Self {
        let n = original_ids.len();
        let mut offsets = vec![0usize; n + 1];
        for e in &edges {
            offsets[e.a.index() + 1] += 1;
            offsets[e.b.index() + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut cursor = offsets.clone();
        let mut adjacency = vec![(VertexId(0), 0usize); 2 * edges.len()];
        // Edges are sorted by (a, b), so pushing in edge order leaves every
        // list sorted: for fixed v, neighbors below v arrive first (as `a` of
        // edges sorted by a), then neighbors above v (as `b`, sorted by b).
        for (idx, e) in edges.iter().enumerate() {
            adjacency[cursor[e.b.index()]] = (e.a, idx);
            cursor[e.b.index()] += 1;
        }
        for (idx, e) in edges.iter().enumerate() {
            adjacency[cursor[e.a.index()]] = (e.b, idx);
            cursor[e.a.index()] += 1;
        }
        Self {
            edges,
            offsets,
            adjacency,
            original_ids,
        }
    }

    pub fn empty() -> Self {
        Self::from_sorted_edges(Vec::new(), Vec::new())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.original_ids.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    /// `(neighbor, edge index)` pairs of `v`, ascending by neighbor.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.adjacency[self.offsets[v.index()]..self.offsets[v.index() + 1]]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count() as u64).map(VertexId)
    }

    /// Id the vertex had in the input before densification.
    pub fn original_id(&self, v: VertexId) -> u64 {
        self.original_ids[v.index()]
    }

    /// Index of the edge `{x, y}`, if present.
    pub fn find_edge(&self, x: VertexId, y: VertexId) -> Option<usize> {
        let e = Edge::canonical(x, y)?;
        self.edges.binary_search(&e).ok()
    }

    /// Edge list as dense `(a, b)` pairs.
    pub fn to_pairs(&self) -> Vec<(u64, u64)> {
        self.edges.iter().map(|e| (e.a.0, e.b.0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: u64) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn parses_pairs_in_order() {
        let pairs = parse_edge_list("0 1\n1 2\n".as_bytes()).unwrap();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn skips_comments_and_handles_crlf() {
        let pairs = parse_edge_list("# comment\n5 7\r\n\n3\t4\n".as_bytes()).unwrap();
        assert_eq!(pairs, vec![(5, 7), (3, 4)]);
    }

    #[test]
    fn malformed_lines_report_line_number() {
        match parse_edge_list("a b\n".as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match parse_edge_list("1 2\n# x\n3\n".as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_edge_list("1 2 3\n".as_bytes()).is_err());
        assert!(parse_edge_list("1 -2\n".as_bytes()).is_err());
    }

    #[test]
    fn drops_loops_and_duplicates() {
        let g = Graph::canonicalize(&[(1, 1), (1, 2), (2, 1)]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges(), &[Edge { a: v(0), b: v(1) }]);
    }

    #[test]
    fn densifies_sparse_ids() {
        let g = Graph::canonicalize(&[(10, 20), (20, 30)]);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.to_pairs(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.original_id(v(2)), 30);
    }

    #[test]
    fn triangle_degrees() {
        let g = Graph::canonicalize(&[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(g.degrees().collect::<Vec<_>>(), vec![2, 2, 2]);
        assert_eq!(g.neighbors(v(1)), &[(v(0), 0), (v(2), 2)]);
        assert_eq!(g.find_edge(v(2), v(1)), Some(2));
        assert_eq!(g.find_edge(v(1), v(1)), None);
    }

    #[test]
    fn empty_after_cleaning() {
        let g = Graph::canonicalize(&[(4, 4)]);
        assert!(g.is_empty());
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g, Graph::empty());
    }

    fn check_invariants(g: &Graph) {
        assert_eq!(g.degrees().sum::<usize>(), 2 * g.edge_count());
        for u in g.vertices() {
            let nbrs = g.neighbors(u);
            assert!(!nbrs.is_empty());
            assert!(nbrs.windows(2).all(|w| w[0].0 < w[1].0), "sorted, no multi-edges");
            for &(w, e) in nbrs {
                assert_ne!(w, u);
                assert!(g.neighbors(w).contains(&(u, e)), "symmetry");
                let edge = g.edge(e);
                assert!(edge.a < edge.b);
                assert_eq!(edge.other(u), w);
            }
        }
    }

    proptest! {
        #[test]
        fn canonical_graph_invariants(pairs in prop::collection::vec((0u64..40, 0u64..40), 0..120)) {
            let g = Graph::canonicalize(&pairs);
            check_invariants(&g);
            // idempotent
            let again = Graph::canonicalize(&g.to_pairs());
            prop_assert_eq!(again.edges(), g.edges());
            prop_assert_eq!(again.vertex_count(), g.vertex_count());
            // order preserving densification
            for x in 1..g.vertex_count() as u64 {
                prop_assert!(g.original_id(VertexId(x - 1)) < g.original_id(VertexId(x)));
            }
        }
    }
}
