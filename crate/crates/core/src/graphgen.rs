//! Seeded synthetic graphs: R-MAT and Erdos-Renyi G(n, m).
//!
//! Generators emit raw `(u, v)` pairs; [`Graph::canonicalize`] turns them
//! into a simple undirected graph.
//!
//! [`Graph::canonicalize`]: crate::graph::Graph::canonicalize

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hash::CounterRng;

pub const MAX_RMAT_SCALE: u32 = 34;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RmatParams {
    /// log2 of the vertex count.
    pub scale: u32,
    /// Samples per vertex.
    pub edge_factor: u64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub seed: u64,
}

impl RmatParams {
    /// Graph500 quadrant probabilities.
    pub fn new(scale: u32, edge_factor: u64, seed: u64) -> Self {
        Self {
            scale,
            edge_factor,
            a: 0.57,
            b: 0.19,
            c: 0.19,
            d: 0.05,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.scale > MAX_RMAT_SCALE {
            return Err(Error::Config(format!(
                "scale {} exceeds {MAX_RMAT_SCALE}",
                self.scale
            )));
        }
        let probs = [self.a, self.b, self.c, self.d];
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Config(format!("quadrant probabilities out of [0, 1]: {probs:?}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("quadrant probabilities sum to {sum}, not 1")));
        }
        Ok(())
    }

    pub fn sample_count(&self) -> u64 {
        (1u64 << self.scale) * self.edge_factor
    }
}

/// Sample `j` descends `scale` levels using draws `j * scale ..` of the
/// seeded stream, so output is independent of thread count.
pub fn gen_rmat(params: &RmatParams) -> Result<Vec<(u64, u64)>> {
    params.validate()?;
    let count = (1u64 << params.scale)
        .checked_mul(params.edge_factor)
        .ok_or_else(|| Error::Config("sample count overflows".into()))?;
    let scale = params.scale as u64;
    let (ab, abc) = (params.a + params.b, params.a + params.b + params.c);
    Ok((0..count)
        .into_par_iter()
        .map(|j| {
            let mut rng = CounterRng::at(params.seed, j * scale);
            let (mut u, mut v) = (0u64, 0u64);
            for _ in 0..scale {
                let r = rng.next_f64();
                let (du, dv) = if r < params.a {
                    (0, 0)
                } else if r < ab {
                    (0, 1)
                } else if r < abc {
                    (1, 0)
                } else {
                    (1, 1)
                };
                u = (u << 1) | du;
                v = (v << 1) | dv;
            }
            (u, v)
        })
        .collect())
}

/// `m` distinct undirected edges drawn uniformly on `n` vertices, each as
/// `(u, v)` with `u < v`. Dense requests sample the complement instead.
pub fn gen_er(n: u64, m: u64, seed: u64) -> Result<Vec<(u64, u64)>> {
    let max = match n {
        0 | 1 => 0,
        _ => n
            .checked_mul(n - 1)
            .ok_or_else(|| Error::Config(format!("{n} vertices is too many")))?
            / 2,
    };
    if m > max {
        return Err(Error::Config(format!("{m} edges requested, at most {max} fit on {n} vertices")));
    }
    let complement = m > max / 2;
    let want = if complement { max - m } else { m };
    let mut rng = CounterRng::new(seed);
    let mut taken = HashSet::new();
    while (taken.len() as u64) < want {
        let u = rng.below(n);
        let v = rng.below(n);
        if u != v {
            taken.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = if complement {
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !taken.contains(e))
            .collect()
    } else {
        taken.into_iter().collect()
    };
    // HashSet order is not stable across runs.
    edges.sort_unstable();
    rng.shuffle(&mut edges);
    Ok(edges)
}
