use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Ordering;
use crate::graph::{Graph, VertexId};
use crate::hash::CounterRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrivialStrategy {
    /// Canonical edge list order.
    InputOrder,
    /// Seeded uniform permutation.
    RandomShuffle,
    /// Discovery order of a seeded BFS, restarting on disconnection.
    Bfs,
}

pub fn order_trivial(graph: &Graph, strategy: TrivialStrategy, seed: u64) -> Ordering {
    match strategy {
        TrivialStrategy::InputOrder => Ordering::identity(graph.edge_count()),
        TrivialStrategy::RandomShuffle => {
            let mut perm: Vec<usize> = (0..graph.edge_count()).collect();
            CounterRng::new(seed).shuffle(&mut perm);
            Ordering::from_permutation(perm).expect("shuffled identity")
        }
        TrivialStrategy::Bfs => {
            let mut starts: Vec<VertexId> = graph.vertices().collect();
            CounterRng::new(seed).shuffle(&mut starts);
            bfs_order(graph, starts)
        }
    }
}

/// BFS edge order that starts at `start`, then continues with unvisited
/// vertices in id order.
pub fn bfs_from(graph: &Graph, start: VertexId) -> Ordering {
    bfs_order(graph, std::iter::once(start).chain(graph.vertices()))
}

fn bfs_order(graph: &Graph, starts: impl IntoIterator<Item = VertexId>) -> Ordering {
    let mut visited = vec![false; graph.vertex_count()];
    let mut placed = vec![false; graph.edge_count()];
    let mut perm = Vec::with_capacity(graph.edge_count());
    let mut queue = VecDeque::new();
    for s in starts {
        if visited[s.index()] {
            continue;
        }
        visited[s.index()] = true;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &(u, e) in graph.neighbors(v) {
                if !placed[e] {
                    placed[e] = true;
                    perm.push(e);
                }
                if !visited[u.index()] {
                    visited[u.index()] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    Ordering::from_permutation(perm).expect("every edge placed once")
}
