//! Partition quality: replication factor, balance, and the ordering
//! objective in its per-chunk and per-edge-index forms.

mod bounds;

pub use bounds::{powerlaw_bound, rf_upper_bound, zeta};

use serde::Serialize;

use crate::chunk::{id2p, PartitionSpec};
use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::ordering::Ordering;
use crate::partitioners::Assignment;

/// Counts distinct vertices over edge sets using a generation stamp per
/// vertex, so repeated counts cost O(edges) with no clearing.
#[derive(Debug, Clone)]
pub struct VertexCounter {
    stamp: Vec<u32>,
    generation: u32,
}

impl VertexCounter {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            stamp: vec![0; vertex_count],
            generation: 0,
        }
    }

    fn next_generation(&mut self) -> u32 {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.fill(0);
            self.generation = 1;
        }
        self.generation
    }

    /// Distinct endpoints of the given edge indices.
    pub fn count(&mut self, graph: &Graph, edges: impl IntoIterator<Item = usize>) -> u64 {
        let gen = self.next_generation();
        let mut n = 0;
        for e in edges {
            let edge = graph.edge(e);
            for v in [edge.a, edge.b] {
                let s = &mut self.stamp[v.index()];
                if *s != gen {
                    *s = gen;
                    n += 1;
                }
            }
        }
        n
    }

    /// Sum over `k` in `k_min..=k_max` and over the CEP chunks of an
    /// `edge_count`-edge list of the vertices covered by the part of
    /// `prefix` inside each chunk. With a complete prefix this is the raw
    /// ordering objective.
    pub fn prefix_objective_raw(
        &mut self,
        graph: &Graph,
        prefix: &[usize],
        edge_count: u64,
        k_min: u64,
        k_max: u64,
    ) -> u64 {
        let len = prefix.len() as u64;
        let mut total = 0;
        for k in k_min..=k_max {
            let spec = PartitionSpec::new(edge_count, k).expect("k >= 1");
            for range in spec.ranges() {
                if range.start >= len {
                    break;
                }
                let end = range.end.min(len);
                total += self.count(graph, prefix[range.start as usize..end as usize].iter().copied());
            }
        }
        total
    }
}

/// Max over mean. All-zero loads count as perfectly balanced.
pub fn balance(values: &[u64]) -> Result<f64> {
    if values.is_empty() {
        return domain("balance of an empty list");
    }
    let max = *values.iter().max().unwrap() as f64;
    let sum: u64 = values.iter().sum();
    if sum == 0 {
        return Ok(1.0);
    }
    Ok(max / (sum as f64 / values.len() as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionLoad {
    pub edges: u64,
    pub vertices: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityReport {
    pub k: u64,
    /// Replication factor: covered vertices summed over partitions, over |V|.
    pub rf: f64,
    /// Edge balance.
    pub eb: f64,
    /// Vertex balance.
    pub vb: f64,
    pub per_partition: Vec<PartitionLoad>,
}

impl QualityReport {
    fn from_loads(graph: &Graph, k: u64, per_partition: Vec<PartitionLoad>) -> Result<Self> {
        let edges: Vec<u64> = per_partition.iter().map(|l| l.edges).collect();
        let vertices: Vec<u64> = per_partition.iter().map(|l| l.vertices).collect();
        let covered: u64 = vertices.iter().sum();
        let rf = match graph.vertex_count() {
            0 => 0.0,
            n => covered as f64 / n as f64,
        };
        Ok(Self {
            k,
            rf,
            eb: balance(&edges)?,
            vb: balance(&vertices)?,
            per_partition,
        })
    }

    /// Sum of covered-vertex counts, `rf * |V|` as an integer.
    pub fn covered_vertices(&self) -> u64 {
        self.per_partition.iter().map(|l| l.vertices).sum()
    }
}

/// Quality of an explicit per-edge assignment.
pub fn quality_of_assignment(graph: &Graph, assignment: &Assignment) -> Result<QualityReport> {
    let parts = assignment.part_of();
    if parts.len() != graph.edge_count() {
        return domain(format!(
            "assignment covers {} edges, graph has {}",
            parts.len(),
            graph.edge_count()
        ));
    }
    let k = assignment.k() as usize;
    let mut by_part: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (e, &p) in parts.iter().enumerate() {
        by_part[p as usize].push(e);
    }
    let mut counter = VertexCounter::new(graph.vertex_count());
    let loads = by_part
        .into_iter()
        .map(|edges| PartitionLoad {
            edges: edges.len() as u64,
            vertices: counter.count(graph, edges),
        })
        .collect();
    QualityReport::from_loads(graph, assignment.k() as u64, loads)
}

/// Quality of k-way CEP over `ordering`, without materializing an assignment.
pub fn quality_of_chunks(graph: &Graph, ordering: &Ordering, k: u64) -> Result<QualityReport> {
    if ordering.len() != graph.edge_count() {
        return domain("ordering length differs from edge count");
    }
    let spec = PartitionSpec::new(graph.edge_count() as u64, k)?;
    let mut counter = VertexCounter::new(graph.vertex_count());
    let perm = ordering.permutation();
    let loads = spec
        .ranges()
        .map(|r| PartitionLoad {
            edges: r.end - r.start,
            vertices: counter.count(graph, perm[r.start as usize..r.end as usize].iter().copied()),
        })
        .collect();
    QualityReport::from_loads(graph, k, loads)
}

pub fn replication_factor(graph: &Graph, assignment: &Assignment) -> Result<f64> {
    Ok(quality_of_assignment(graph, assignment)?.rf)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObjectiveValue {
    /// Covered-vertex count summed over every k and chunk.
    pub raw: u64,
    /// `raw / |V|`.
    pub total: f64,
}

impl ObjectiveValue {
    fn new(raw: u64, graph: &Graph) -> Self {
        let total = match graph.vertex_count() {
            0 => 0.0,
            n => raw as f64 / n as f64,
        };
        Self { raw, total }
    }
}

fn check_objective_inputs(graph: &Graph, ordering: &Ordering, k_min: u64, k_max: u64) -> Result<()> {
    if k_min == 0 || k_min > k_max {
        return domain(format!("invalid k range {k_min}..={k_max}"));
    }
    if ordering.len() != graph.edge_count() {
        return domain("ordering length differs from edge count");
    }
    Ok(())
}

/// Ordering objective summed chunk by chunk over the CEP boundaries of each k.
pub fn objective_def4(graph: &Graph, ordering: &Ordering, k_min: u64, k_max: u64) -> Result<ObjectiveValue> {
    check_objective_inputs(graph, ordering, k_min, k_max)?;
    let mut counter = VertexCounter::new(graph.vertex_count());
    let raw = counter.prefix_objective_raw(
        graph,
        ordering.permutation(),
        graph.edge_count() as u64,
        k_min,
        k_max,
    );
    Ok(ObjectiveValue::new(raw, graph))
}

/// Ordering objective summed over order indices: index `i` contributes the
/// vertices of the width-`floor((|E| + ID2P(i)) / k)` window ending at `i`,
/// but only where the partition id changes after `i` (or `i` is last).
pub fn objective_def5(graph: &Graph, ordering: &Ordering, k_min: u64, k_max: u64) -> Result<ObjectiveValue> {
    check_objective_inputs(graph, ordering, k_min, k_max)?;
    let m = graph.edge_count() as u64;
    let perm = ordering.permutation();
    let mut window = Vec::new();
    let mut raw = 0;
    for k in k_min..=k_max {
        for i in 0..m {
            let p = id2p(m, k, i)?;
            let splits = i + 1 == m || id2p(m, k, i + 1)? != p;
            if !splits {
                continue;
            }
            let width = (m + p) / k;
            let start = (i + 1).saturating_sub(width);
            window.clear();
            for &e in &perm[start as usize..=i as usize] {
                let edge = graph.edge(e);
                window.push(edge.a);
                window.push(edge.b);
            }
            window.sort_unstable();
            window.dedup();
            raw += window.len() as u64;
        }
    }
    Ok(ObjectiveValue::new(raw, graph))
}
