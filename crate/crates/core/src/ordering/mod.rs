//! Edge orderings: the PQ-driven greedy expansion, the exhaustive baseline
//! greedy it approximates, and trivial reference orderings.

mod baseline;
mod geo;
mod trivial;

pub use baseline::{order_geo_baseline, order_geo_baseline_with_cap, BASELINE_EDGE_CAP};
pub use geo::{order_geo_fast, order_geo_fast_with_stats, ExpansionStats, GeoExpander, IterationOutcome, TwoHopAssignment};
pub use trivial::{bfs_from, order_trivial, TrivialStrategy};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graph::{Edge, Graph};

/// Bijection from order index to edge index, with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    permutation: Vec<usize>,
    inverse: Vec<usize>,
}

impl Ordering {
    /// Fails unless `permutation` is a bijection on `0..len`.
    pub fn from_permutation(permutation: Vec<usize>) -> Result<Self> {
        let n = permutation.len();
        let mut inverse = vec![usize::MAX; n];
        for (i, &e) in permutation.iter().enumerate() {
            if e >= n || inverse[e] != usize::MAX {
                return domain(format!("not a permutation: entry {e} at position {i}"));
            }
            inverse[e] = i;
        }
        Ok(Self {
            permutation,
            inverse,
        })
    }

    pub fn identity(len: usize) -> Self {
        Self {
            permutation: (0..len).collect(),
            inverse: (0..len).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    /// Edge index at order index `i`.
    #[inline]
    pub fn edge_at(&self, i: usize) -> usize {
        self.permutation[i]
    }

    /// Order index of edge `e`.
    #[inline]
    pub fn position_of(&self, e: usize) -> usize {
        self.inverse[e]
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn inverse(&self) -> &[usize] {
        &self.inverse
    }

    /// The ordered edge list.
    pub fn ordered_edges<'a>(&'a self, graph: &'a Graph) -> impl ExactSizeIterator<Item = Edge> + 'a {
        self.permutation.iter().map(move |&e| graph.edge(e))
    }
}

/// How the expansion picks a start vertex when the frontier is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Restart {
    /// Seeded uniform draw among vertices with unordered edges.
    #[default]
    Random,
    /// Lowest-id vertex with unordered edges.
    LowestId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingParams {
    pub k_min: u64,
    pub k_max: u64,
    /// Trailing window for the two-hop rule; `None` uses [`default_delta`].
    pub delta: Option<u64>,
    pub seed: u64,
    pub restart: Restart,
}

impl Default for OrderingParams {
    fn default() -> Self {
        Self {
            k_min: 4,
            k_max: 128,
            delta: None,
            seed: 0,
            restart: Restart::Random,
        }
    }
}

impl OrderingParams {
    pub fn new(k_min: u64, k_max: u64, seed: u64) -> Self {
        Self {
            k_min,
            k_max,
            seed,
            ..Self::default()
        }
    }

    pub fn with_delta(mut self, delta: u64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_restart(mut self, restart: Restart) -> Self {
        self.restart = restart;
        self
    }

    /// Validates against `graph` and fixes every derived quantity.
    ///
    /// A `k_max` above `|E|` is clamped to `|E|` (and `k_min` with it), since
    /// chunks narrower than one edge do not exist.
    pub fn resolve(&self, graph: &Graph) -> Result<ResolvedParams> {
        if self.k_min < 2 {
            return Err(Error::Config(format!("k_min must be at least 2, got {}", self.k_min)));
        }
        if self.k_min > self.k_max {
            return Err(Error::Config(format!(
                "k_min ({}) exceeds k_max ({})",
                self.k_min, self.k_max
            )));
        }
        let m = graph.edge_count() as u64;
        if let Some(delta) = self.delta {
            if delta > m {
                return Err(Error::Config(format!("delta {delta} exceeds edge count {m}")));
            }
        }
        let k_max = self.k_max.min(m.max(1));
        let k_min = self.k_min.min(k_max);
        let delta = self.delta.unwrap_or_else(|| default_delta(m, k_max));
        let (alpha, beta) = if m >= 2 {
            priority_weights(m, k_min, k_max)?
        } else {
            (0, 0)
        };
        check_priority_range(alpha, beta, graph.max_degree() as u64, m)?;
        Ok(ResolvedParams {
            k_min,
            k_max,
            delta,
            alpha: alpha as i64,
            beta: beta as i64,
        })
    }
}

/// Parameters after validation against a concrete graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedParams {
    pub k_min: u64,
    pub k_max: u64,
    pub delta: u64,
    pub alpha: i64,
    pub beta: i64,
}

/// `alpha = sum_{k=k_min}^{k_max} floor(m / k)` and `beta = k_max - k_min`.
pub fn priority_weights(edge_count: u64, k_min: u64, k_max: u64) -> Result<(u64, u64)> {
    if k_min < 2 || k_min > k_max || k_max > edge_count {
        return domain(format!(
            "need 2 <= k_min <= k_max <= |E|, got k_min={k_min}, k_max={k_max}, |E|={edge_count}"
        ));
    }
    let alpha = (k_min..=k_max).map(|k| edge_count / k).sum();
    Ok((alpha, k_max - k_min))
}

/// Ensures `alpha * d_max` and `beta * |E|` stay below `2^63`, so
/// [`priority`] cannot overflow during the expansion.
pub fn check_priority_range(alpha: u64, beta: u64, max_degree: u64, edge_count: u64) -> Result<()> {
    let fits = |a: u64, b: u64| a.checked_mul(b).is_some_and(|x| x < i64::MAX as u64);
    if !fits(alpha, max_degree) || !fits(beta, edge_count) {
        return Err(Error::Config(format!(
            "priority overflow: alpha={alpha}, beta={beta}, max degree {max_degree}, {edge_count} edges"
        )));
    }
    Ok(())
}

/// Frontier priority `alpha * D[v] - beta * M[v]`; smaller is expanded first.
#[inline]
pub fn priority(alpha: i64, beta: i64, remaining_degree: i64, latest_index: i64) -> i64 {
    alpha * remaining_degree - beta * latest_index
}

/// Size of the smallest chunk at `k_max`.
pub fn default_delta(edge_count: u64, k_max: u64) -> u64 {
    edge_count / k_max.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert_eq!(priority_weights(10, 2, 3).unwrap(), (8, 1));
        let direct: u64 = (4..=128).map(|k| 1000 / k).sum();
        assert_eq!(priority_weights(1000, 4, 128).unwrap(), (direct, 124));
        assert_eq!(priority_weights(77, 5, 5).unwrap(), (15, 0));
        assert!(priority_weights(10, 1, 3).is_err());
        assert!(priority_weights(10, 4, 3).is_err());
        assert!(priority_weights(10, 2, 11).is_err());
    }

    #[test]
    fn priority_arithmetic() {
        assert_eq!(priority(10, 2, 3, 4), 22);
        assert_eq!(priority(8, 1, 0, 5), -5);
    }

    #[test]
    fn figure_four_selection() {
        // Two frontier vertices after edges C (x+1) and D (x+2): u touched by
        // the newest edge with one unordered edge left, v older with two.
        let (alpha, beta) = priority_weights(1000, 4, 128).unwrap();
        let (alpha, beta) = (alpha as i64, beta as i64);
        let x = 500;
        let p_u = priority(alpha, beta, 1, x + 2);
        let p_v = priority(alpha, beta, 2, x + 1);
        assert!(p_u < p_v);
    }

    #[test]
    fn deltas() {
        assert_eq!(default_delta(1280, 128), 10);
        assert_eq!(default_delta(14, 4), 3);
        assert_eq!(default_delta(0, 7), 0);
    }

    #[test]
    fn permutation_validation() {
        assert!(Ordering::from_permutation(vec![2, 0, 1]).is_ok());
        assert!(Ordering::from_permutation(vec![0, 0, 1]).is_err());
        assert!(Ordering::from_permutation(vec![0, 3, 1]).is_err());
        let o = Ordering::from_permutation(vec![2, 0, 1]).unwrap();
        assert_eq!(o.position_of(2), 0);
        assert_eq!(o.edge_at(2), 1);
    }

    #[test]
    fn resolve_rejects_bad_ranges() {
        let g = Graph::canonicalize(&[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert!(OrderingParams::new(1, 4, 0).resolve(&g).is_err());
        assert!(OrderingParams::new(3, 2, 0).resolve(&g).is_err());
        assert!(OrderingParams::new(2, 3, 0).with_delta(5).resolve(&g).is_err());
        let r = OrderingParams::default().resolve(&g).unwrap();
        assert_eq!((r.k_min, r.k_max, r.delta), (4, 4, 1));
        assert_eq!((r.alpha, r.beta), (1, 0));
    }

    #[test]
    fn overflow_guard() {
        assert!(check_priority_range(1 << 40, 10, 1 << 20, 1 << 30).is_ok());
        assert!(matches!(
            check_priority_range(1 << 44, 10, 1 << 20, 1 << 30),
            Err(Error::Config(_))
        ));
        assert!(check_priority_range(1, 1 << 40, 1, 1 << 23).is_err());
    }
}
