//! Chunk-based edge partitioning (CEP).
//!
//! An ordered edge list of `m` edges is cut into `k` contiguous chunks whose
//! widths are `floor((m + p) / k)` for `p = 0..k`. The first `k - m % k`
//! chunks have width `m / k`, the rest one more. Every query here is O(1)
//! in `m`.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

fn check_k(k: u64) -> Result<()> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    Ok(())
}

/// Width of chunk `p`: `floor((m + p) / k)`.
pub fn chunk_width(edge_count: u64, k: u64, p: u64) -> Result<u64> {
    check_k(k)?;
    if p >= k {
        return domain(format!("partition {p} out of range for k = {k}"));
    }
    Ok((edge_count + p) / k)
}

/// First order index of chunk `p`; `p == k` yields `edge_count`.
///
/// Closed form of `sum_{x < p} floor((m + x) / k)`, namely
/// `p * floor(m / k) + max(0, p - k + m mod k)`.
pub fn chunk_start(edge_count: u64, k: u64, p: u64) -> Result<u64> {
    check_k(k)?;
    if p > k {
        return domain(format!("partition {p} out of range for k = {k}"));
    }
    Ok(chunk_start_unchecked(edge_count, k, p))
}

#[inline]
fn chunk_start_unchecked(edge_count: u64, k: u64, p: u64) -> u64 {
    p * (edge_count / k) + (p + edge_count % k).saturating_sub(k)
}

/// Partition id of order index `i` under k-way CEP.
pub fn id2p(edge_count: u64, k: u64, i: u64) -> Result<u64> {
    check_k(k)?;
    if i >= edge_count {
        return domain(format!("order index {i} out of range for {edge_count} edges"));
    }
    Ok(id2p_unchecked(edge_count, k, i))
}

/// Direct inversion of [`chunk_start`]: narrow chunks first, then wide ones.
#[inline]
pub(crate) fn id2p_unchecked(edge_count: u64, k: u64, i: u64) -> u64 {
    let narrow = edge_count / k;
    let narrow_chunks = k - edge_count % k;
    let narrow_end = narrow_chunks * narrow;
    if i < narrow_end {
        i / narrow
    } else {
        narrow_chunks + (i - narrow_end) / (narrow + 1)
    }
}

/// The k chunk boundaries for a given edge count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSpec {
    k: u64,
    edge_count: u64,
    /// `start_0 .. start_k`; `boundaries[k] == edge_count`.
    boundaries: Vec<u64>,
}

impl PartitionSpec {
    /// O(k) regardless of `edge_count`.
    pub fn new(edge_count: u64, k: u64) -> Result<Self> {
        check_k(k)?;
        let boundaries = (0..=k)
            .map(|p| chunk_start_unchecked(edge_count, k, p))
            .collect();
        Ok(Self {
            k,
            edge_count,
            boundaries,
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn boundaries(&self) -> &[u64] {
        &self.boundaries
    }

    pub fn range(&self, p: u64) -> Range<u64> {
        self.boundaries[p as usize]..self.boundaries[p as usize + 1]
    }

    pub fn ranges(&self) -> impl Iterator<Item = Range<u64>> + '_ {
        self.boundaries.windows(2).map(|w| w[0]..w[1])
    }

    pub fn widths(&self) -> impl Iterator<Item = u64> + '_ {
        self.boundaries.windows(2).map(|w| w[1] - w[0])
    }

    /// Partition of order index `i`; same contract as [`id2p`].
    pub fn partition_of(&self, i: u64) -> Result<u64> {
        id2p(self.edge_count, self.k, i)
    }
}

/// Shorthand for [`PartitionSpec::new`].
pub fn make_partition_spec(edge_count: u64, k: u64) -> Result<PartitionSpec> {
    PartitionSpec::new(edge_count, k)
}
