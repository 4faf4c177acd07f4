//! Dynamic scaling over CEP: exact migration counts when k changes, the
//! closed-form estimate, and replay of k schedules.

use log::warn;
use serde::Serialize;

use crate::chunk::PartitionSpec;
use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::metrics::{quality_of_chunks, QualityReport};
use crate::ordering::Ordering;

/// Edges whose partition id differs between k-way and k'-way CEP over the
/// same `edge_count` edges. Walks the merged boundary lists, so the cost is
/// O(k + k') whatever the edge count.
pub fn migrated_exact(edge_count: u64, k_before: u64, k_after: u64) -> Result<u64> {
    let a = PartitionSpec::new(edge_count, k_before)?;
    let b = PartitionSpec::new(edge_count, k_after)?;
    let (a, b) = (a.boundaries(), b.boundaries());
    let (mut pa, mut pb) = (0usize, 0usize);
    let mut pos = 0u64;
    let mut moved = 0u64;
    while pos < edge_count {
        while a[pa + 1] <= pos {
            pa += 1;
        }
        while b[pb + 1] <= pos {
            pb += 1;
        }
        let end = a[pa + 1].min(b[pb + 1]);
        if pa != pb {
            moved += end - pos;
        }
        pos = end;
    }
    Ok(moved)
}

/// Approximate migration when going from `k` to `k + x` partitions (or back):
/// `x|E| c(c+1) / (2k(k+x)) + (|E|/k)(k - c)` with `c = ceil(k/x)`.
pub fn migrated_estimate(edge_count: u64, k: u64, x: u64) -> Result<f64> {
    if k == 0 || x == 0 {
        return domain(format!("need k >= 1 and x >= 1, got k={k}, x={x}"));
    }
    if (k + x) as f64 > 0.01 * edge_count as f64 {
        warn!("migration estimate for k={k}, x={x} is rough on {edge_count} edges");
    }
    let e = edge_count as f64;
    let (kf, xf) = (k as f64, x as f64);
    let c = k.div_ceil(x) as f64;
    // Numerators first keeps divisible cases exact.
    let partial = (xf * e * c * (c + 1.0)) / (2.0 * kf * (kf + xf));
    let whole = (e * (kf - c)) / kf;
    Ok(partial + whole)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingStep {
    pub k_before: u64,
    pub k_after: u64,
    pub migrated_exact: u64,
    pub migrated_estimate: f64,
    pub quality_after: QualityReport,
}

/// Replays `schedule` over CEP of `ordering`. A one-entry schedule has no
/// transitions and yields no steps.
pub fn run_schedule(graph: &Graph, ordering: &Ordering, schedule: &[u64]) -> Result<Vec<ScalingStep>> {
    if schedule.is_empty() {
        return domain("empty scaling schedule");
    }
    if let Some(&k) = schedule.iter().find(|&&k| k == 0) {
        return domain(format!("schedule entry {k} is not a valid partition count"));
    }
    let m = graph.edge_count() as u64;
    schedule
        .windows(2)
        .map(|w| {
            let (before, after) = (w[0], w[1]);
            let small = before.min(after);
            let x = before.abs_diff(after);
            let estimate = if x == 0 { 0.0 } else { migrated_estimate(m, small, x)? };
            Ok(ScalingStep {
                k_before: before,
                k_after: after,
                migrated_exact: migrated_exact(m, before, after)?,
                migrated_estimate: estimate,
                quality_after: quality_of_chunks(graph, ordering, after)?,
            })
        })
        .collect()
}
