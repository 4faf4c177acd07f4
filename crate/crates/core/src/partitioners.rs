//! Per-edge assignments: CEP over an ordering plus the hash and degree-based
//! baselines it is compared against.

use serde::{Deserialize, Serialize};

use crate::chunk::PartitionSpec;
use crate::error::{domain, Result};
use crate::graph::{Graph, VertexId};
use crate::hash::{mix64, GOLDEN_GAMMA};
use crate::ordering::Ordering;

/// Partition id for every edge index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    k: u32,
    part_of: Vec<u32>,
}

impl Assignment {
    pub fn new(k: u32, part_of: Vec<u32>) -> Result<Self> {
        if k == 0 {
            return domain("k must be at least 1");
        }
        if let Some((e, &p)) = part_of.iter().enumerate().find(|(_, &p)| p >= k) {
            return domain(format!("edge {e} assigned to partition {p}, k = {k}"));
        }
        Ok(Self { k, part_of })
    }

    /// CEP: edge at order index `i` goes to the chunk containing `i`.
    pub fn from_chunks(ordering: &Ordering, k: u64) -> Result<Self> {
        let k32 = check_k(k)?;
        let spec = PartitionSpec::new(ordering.len() as u64, k)?;
        let mut part_of = vec![0u32; ordering.len()];
        for (p, range) in spec.ranges().enumerate() {
            for i in range {
                part_of[ordering.edge_at(i as usize)] = p as u32;
            }
        }
        Ok(Self { k: k32, part_of })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn part_of(&self) -> &[u32] {
        &self.part_of
    }

    pub fn partition(&self, edge: usize) -> u32 {
        self.part_of[edge]
    }

    pub fn len(&self) -> usize {
        self.part_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.part_of.is_empty()
    }

    /// Edge count per partition.
    pub fn loads(&self) -> Vec<u64> {
        let mut loads = vec![0u64; self.k as usize];
        for &p in &self.part_of {
            loads[p as usize] += 1;
        }
        loads
    }
}

fn check_k(k: u64) -> Result<u32> {
    match u32::try_from(k) {
        Ok(k) if k > 0 => Ok(k),
        _ => domain(format!("k must be in 1..=2^32-1, got {k}")),
    }
}

fn build(graph: &Graph, k: u64, f: impl Fn(VertexId, VertexId) -> u64) -> Result<Assignment> {
    let k32 = check_k(k)?;
    let part_of = graph.edges().iter().map(|e| (f(e.a, e.b) % k) as u32).collect();
    Ok(Assignment { k: k32, part_of })
}

/// CEP over `ordering`; same as [`Assignment::from_chunks`].
pub fn cep_assignment(ordering: &Ordering, k: u64) -> Result<Assignment> {
    Assignment::from_chunks(ordering, k)
}

/// Edge hashing on both endpoints, salted so repeated runs can differ.
pub fn partition_hash1d(graph: &Graph, k: u64, salt: u64) -> Result<Assignment> {
    build(graph, k, |a, b| {
        mix64(mix64(a.0).wrapping_mul(GOLDEN_GAMMA) ^ mix64(b.0) ^ salt)
    })
}

/// `(rows, cols)` with `rows` the largest divisor of `k` not above `sqrt(k)`.
pub fn grid_shape(k: u64) -> (u64, u64) {
    let mut r = (k as f64).sqrt() as u64;
    while r * r > k {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= k {
        r += 1;
    }
    while r > 1 && !k.is_multiple_of(r) {
        r -= 1;
    }
    let r = r.max(1);
    (r, k / r)
}

/// 2D grid hashing: the row comes from one endpoint, the column from the other.
pub fn partition_hash2d(graph: &Graph, k: u64) -> Result<Assignment> {
    check_k(k)?;
    let (rows, cols) = grid_shape(k);
    build(graph, k, |a, b| (mix64(a.0) % rows) * cols + mix64(b.0) % cols)
}

/// Degree-based hashing: each edge follows the hash of its lower-degree
/// endpoint, ties going to the smaller id.
pub fn partition_dbh(graph: &Graph, k: u64) -> Result<Assignment> {
    build(graph, k, |a, b| {
        let pick = if graph.degree(b) < graph.degree(a) { b } else { a };
        mix64(pick.0)
    })
}
