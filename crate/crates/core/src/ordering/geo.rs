use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use super::{priority, Ordering, OrderingParams, ResolvedParams, Restart};
use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::hash::CounterRng;

const UNORDERED: usize = usize::MAX;
const NEVER: u64 = u64::MAX;

/// An edge placed by the two-hop rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoHopAssignment {
    pub order_index: u64,
    /// The endpoint that qualified the edge by lying in the trailing window.
    pub far_endpoint: VertexId,
    /// Latest order index touching `far_endpoint` before this assignment.
    pub far_latest: u64,
}

/// What one outer iteration of the expansion did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterationOutcome {
    pub vertex: VertexId,
    /// The vertex came from a restart rather than the frontier queue.
    pub restarted: bool,
    pub first_index: u64,
    pub one_hop: usize,
    pub two_hop: Vec<TwoHopAssignment>,
}

impl IterationOutcome {
    pub fn edges_ordered(&self) -> usize {
        self.one_hop + self.two_hop.len()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ExpansionStats {
    pub iterations: usize,
    pub restarts: usize,
    pub two_hop_edges: usize,
    /// Largest number of edges ordered within one iteration.
    pub max_iteration_edges: usize,
}

impl ExpansionStats {
    fn record(&mut self, outcome: &IterationOutcome) {
        self.iterations += 1;
        self.restarts += outcome.restarted as usize;
        self.two_hop_edges += outcome.two_hop.len();
        self.max_iteration_edges = self.max_iteration_edges.max(outcome.edges_ordered());
    }
}

/// D, M and the partial order shared by the fast and baseline expansions.
#[derive(Debug, Clone)]
pub(crate) struct ExpansionState<'g> {
    pub graph: &'g Graph,
    pub delta: u64,
    remaining: Vec<u32>,
    latest: Vec<u64>,
    position: Vec<usize>,
    order: Vec<usize>,
}

impl<'g> ExpansionState<'g> {
    pub fn new(graph: &'g Graph, delta: u64) -> Self {
        Self {
            graph,
            delta,
            remaining: graph.degrees().map(|d| d as u32).collect(),
            latest: vec![NEVER; graph.vertex_count()],
            position: vec![UNORDERED; graph.edge_count()],
            order: Vec::with_capacity(graph.edge_count()),
        }
    }

    #[inline]
    pub fn remaining(&self, v: VertexId) -> u32 {
        self.remaining[v.index()]
    }

    #[inline]
    pub fn latest(&self, v: VertexId) -> Option<u64> {
        let m = self.latest[v.index()];
        (m != NEVER).then_some(m)
    }

    #[inline]
    pub fn is_ordered(&self, e: usize) -> bool {
        self.position[e] != UNORDERED
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn done(&self) -> bool {
        self.order.len() == self.graph.edge_count()
    }

    /// `w` touches one of the last `delta` ordered edges.
    #[inline]
    fn in_window(&self, w: VertexId) -> bool {
        let m = self.latest[w.index()];
        m != NEVER && m + self.delta >= self.order.len() as u64
    }

    fn assign(&mut self, e: usize, x: VertexId, y: VertexId) {
        let i = self.order.len();
        self.position[e] = i;
        self.order.push(e);
        for v in [x, y] {
            self.remaining[v.index()] -= 1;
            self.latest[v.index()] = i as u64;
        }
    }

    /// Orders every unordered edge of `v` (ascending neighbor), each followed
    /// by the qualifying two-hop edges of that neighbor. `touched` is called
    /// for every vertex other than `v` whose D or M changed, after the change.
    pub fn expand(
        &mut self,
        v: VertexId,
        restarted: bool,
        mut touched: impl FnMut(&Self, VertexId),
    ) -> IterationOutcome {
        let graph = self.graph;
        let mut outcome = IterationOutcome {
            vertex: v,
            restarted,
            first_index: self.order.len() as u64,
            one_hop: 0,
            two_hop: Vec::new(),
        };
        for &(u, e) in graph.neighbors(v) {
            if self.is_ordered(e) {
                continue;
            }
            self.assign(e, v, u);
            outcome.one_hop += 1;
            for &(w, e2) in graph.neighbors(u) {
                if self.is_ordered(e2) || !self.in_window(w) {
                    continue;
                }
                outcome.two_hop.push(TwoHopAssignment {
                    order_index: self.order.len() as u64,
                    far_endpoint: w,
                    far_latest: self.latest[w.index()],
                });
                self.assign(e2, u, w);
                touched(self, w);
            }
            touched(self, u);
        }
        debug_assert_eq!(self.remaining(v), 0);
        outcome
    }

    pub fn into_ordering(self) -> Ordering {
        debug_assert!(self.done());
        Ordering::from_permutation(self.order).expect("expansion orders every edge once")
    }
}

/// Start-vertex selection when the frontier is empty.
#[derive(Debug, Clone)]
pub(crate) struct RestartPicker {
    mode: Restart,
    rng: CounterRng,
    pending: Vec<u32>,
    cursor: usize,
}

impl RestartPicker {
    pub fn new(graph: &Graph, mode: Restart, seed: u64) -> Self {
        let pending = match mode {
            Restart::Random => (0..graph.vertex_count() as u32).collect(),
            Restart::LowestId => Vec::new(),
        };
        Self {
            mode,
            rng: CounterRng::new(seed),
            pending,
            cursor: 0,
        }
    }

    /// A vertex with unordered edges. Requires that one exists.
    pub fn pick(&mut self, state: &ExpansionState<'_>) -> VertexId {
        match self.mode {
            Restart::LowestId => {
                while state.remaining(VertexId(self.cursor as u64)) == 0 {
                    self.cursor += 1;
                }
                VertexId(self.cursor as u64)
            }
            Restart::Random => loop {
                let j = self.rng.below(self.pending.len() as u64) as usize;
                let v = VertexId(self.pending[j] as u64);
                if state.remaining(v) > 0 {
                    return v;
                }
                self.pending.swap_remove(j);
            },
        }
    }
}

/// Min-queue keyed by `(priority, vertex id)` with upsert and removal.
/// Superseded heap entries are skipped lazily on pop.
#[derive(Debug, Clone)]
struct FrontierQueue {
    heap: BinaryHeap<Reverse<(i64, u64)>>,
    key: Vec<Option<i64>>,
}

impl FrontierQueue {
    fn new(vertex_count: usize) -> Self {
        Self {
            heap: BinaryHeap::new(),
            key: vec![None; vertex_count],
        }
    }

    fn upsert(&mut self, v: VertexId, prio: i64) {
        if self.key[v.index()] != Some(prio) {
            self.key[v.index()] = Some(prio);
            self.heap.push(Reverse((prio, v.0)));
        }
    }

    fn remove(&mut self, v: VertexId) {
        self.key[v.index()] = None;
    }

    fn pop(&mut self) -> Option<VertexId> {
        while let Some(Reverse((prio, v))) = self.heap.pop() {
            let slot = &mut self.key[v as usize];
            if *slot == Some(prio) {
                *slot = None;
                return Some(VertexId(v));
            }
        }
        None
    }

    fn contains(&self, v: VertexId) -> bool {
        self.key[v.index()].is_some()
    }
}

/// Step-wise priority-queue greedy expansion.
///
/// The frontier queue holds every vertex that has both ordered and unordered
/// incident edges, keyed by `alpha * D[v] - beta * M[v]` with ties going to
/// the lower vertex id. Each [`step`](Self::step) expands one vertex; the
/// state in between is observable, which the tests use to inspect the
/// expansion mid-run.
#[derive(Debug, Clone)]
pub struct GeoExpander<'g> {
    state: ExpansionState<'g>,
    params: ResolvedParams,
    queue: FrontierQueue,
    picker: RestartPicker,
    stats: ExpansionStats,
}

impl<'g> GeoExpander<'g> {
    pub fn new(graph: &'g Graph, params: &OrderingParams) -> Result<Self> {
        let resolved = params.resolve(graph)?;
        Ok(Self {
            state: ExpansionState::new(graph, resolved.delta),
            params: resolved,
            queue: FrontierQueue::new(graph.vertex_count()),
            picker: RestartPicker::new(graph, params.restart, params.seed),
            stats: ExpansionStats::default(),
        })
    }

    pub fn params(&self) -> &ResolvedParams {
        &self.params
    }

    pub fn graph(&self) -> &'g Graph {
        self.state.graph
    }

    /// Edge indices ordered so far, in order.
    pub fn ordered(&self) -> &[usize] {
        self.state.order()
    }

    pub fn is_done(&self) -> bool {
        self.state.done()
    }

    /// `D[v]`: incident edges of `v` not yet ordered.
    pub fn remaining_degree(&self, v: VertexId) -> u32 {
        self.state.remaining(v)
    }

    /// `M[v]`: order index of the latest ordered edge touching `v`.
    pub fn latest_index(&self, v: VertexId) -> Option<u64> {
        self.state.latest(v)
    }

    pub fn is_edge_ordered(&self, e: usize) -> bool {
        self.state.is_ordered(e)
    }

    /// Vertices currently queued, ascending by id.
    pub fn frontier(&self) -> Vec<VertexId> {
        self.graph().vertices().filter(|&v| self.queue.contains(v)).collect()
    }

    pub fn priority_of(&self, v: VertexId) -> Option<i64> {
        let m = self.state.latest(v)?;
        Some(priority(
            self.params.alpha,
            self.params.beta,
            self.state.remaining(v) as i64,
            m as i64,
        ))
    }

    pub fn stats(&self) -> &ExpansionStats {
        &self.stats
    }

    /// Runs one outer iteration; `None` once every edge is ordered.
    pub fn step(&mut self) -> Option<IterationOutcome> {
        if self.state.done() {
            return None;
        }
        let (v, restarted) = loop {
            match self.queue.pop() {
                Some(v) if self.state.remaining(v) > 0 => break (v, false),
                Some(_) => continue,
                None => break (self.picker.pick(&self.state), true),
            }
        };
        let ResolvedParams { alpha, beta, .. } = self.params;
        let queue = &mut self.queue;
        let outcome = self.state.expand(v, restarted, |state, x| {
            let d = state.remaining(x);
            if d == 0 {
                queue.remove(x);
            } else {
                let m = state.latest(x).expect("touched vertices have an ordered edge");
                queue.upsert(x, priority(alpha, beta, d as i64, m as i64));
            }
        });
        self.stats.record(&outcome);
        Some(outcome)
    }

    pub fn run(mut self) -> (Ordering, ExpansionStats) {
        while self.step().is_some() {}
        (self.state.into_ordering(), self.stats)
    }
}

/// Orders the edges of `graph` with the priority-queue greedy expansion.
pub fn order_geo_fast(graph: &Graph, params: &OrderingParams) -> Result<Ordering> {
    Ok(order_geo_fast_with_stats(graph, params)?.0)
}

pub fn order_geo_fast_with_stats(
    graph: &Graph,
    params: &OrderingParams,
) -> Result<(Ordering, ExpansionStats)> {
    Ok(GeoExpander::new(graph, params)?.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::gen_er;
    use proptest::prelude::*;

    fn lowest(k_min: u64, k_max: u64) -> OrderingParams {
        OrderingParams::new(k_min, k_max, 0).with_restart(Restart::LowestId)
    }

    #[test]
    fn triangle_trace() {
        // a=0, b=1, c=2; edges ab=0, ac=1, bc=2.
        let g = Graph::canonicalize(&[(0, 1), (0, 2), (1, 2)]);
        let mut exp = GeoExpander::new(&g, &lowest(2, 3).with_delta(2)).unwrap();
        let first = exp.step().unwrap();
        assert_eq!(first.vertex, VertexId(0));
        assert!(first.restarted);
        assert_eq!(first.one_hop, 2);
        // bc placed right after ac: b is in the window through ab.
        assert_eq!(
            first.two_hop,
            vec![TwoHopAssignment { order_index: 2, far_endpoint: VertexId(1), far_latest: 0 }]
        );
        assert!(exp.step().is_none());
        let order = GeoExpander::new(&g, &lowest(2, 3).with_delta(2)).unwrap().run().0;
        assert_eq!(order.permutation(), &[0, 1, 2]);
    }

    #[test]
    fn window_excludes_stale_vertices() {
        // delta = 1 only admits the latest edge, which does not touch b.
        let g = Graph::canonicalize(&[(0, 1), (0, 2), (1, 2)]);
        let mut exp = GeoExpander::new(&g, &lowest(2, 3).with_delta(1)).unwrap();
        let first = exp.step().unwrap();
        assert!(first.two_hop.is_empty());
        assert_eq!(exp.frontier(), vec![VertexId(1), VertexId(2)]);
        exp.step().unwrap();
        assert!(exp.is_done());
    }

    #[test]
    fn single_edge() {
        let g = Graph::canonicalize(&[(3, 9)]);
        let order = order_geo_fast(&g, &OrderingParams::default()).unwrap();
        assert_eq!(order.permutation(), &[0]);
    }

    #[test]
    fn empty_graph() {
        let order = order_geo_fast(&Graph::empty(), &OrderingParams::default()).unwrap();
        assert!(order.is_empty());
    }

    #[test]
    fn disconnected_components_restart() {
        let g = Graph::canonicalize(&[(0, 1), (2, 3)]);
        let (order, stats) = order_geo_fast_with_stats(&g, &OrderingParams::new(2, 2, 5)).unwrap();
        assert_eq!(order.len(), 2);
        assert_eq!(stats.restarts, 2);
    }

    #[test]
    fn star_orders_center_first_when_it_is_picked() {
        let pairs: Vec<_> = (1..6).map(|leaf| (0, leaf)).collect();
        let g = Graph::canonicalize(&pairs);
        let mut exp = GeoExpander::new(&g, &lowest(2, 5)).unwrap();
        let out = exp.step().unwrap();
        assert_eq!(out.one_hop, 5);
        assert!(exp.is_done());
    }

    fn random_graph(n: u64, m: u64, seed: u64) -> Graph {
        Graph::canonicalize(&gen_er(n, m, seed).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bijective_and_deterministic(n in 2u64..40, density in 0.05f64..0.6, seed in any::<u64>(), delta in 0u64..6) {
            let max = n * (n - 1) / 2;
            let g = random_graph(n, ((max as f64) * density) as u64, seed);
            let m = g.edge_count() as u64;
            let params = OrderingParams::new(2, 4, seed).with_delta(delta.min(m));
            let a = order_geo_fast(&g, &params).unwrap();
            let b = order_geo_fast(&g, &params).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.len(), g.edge_count());
            for i in 0..a.len() {
                prop_assert_eq!(a.position_of(a.edge_at(i)), i);
            }
        }

        #[test]
        fn invariants_hold_at_every_step(n in 2u64..30, density in 0.05f64..0.7, seed in any::<u64>()) {
            let max = n * (n - 1) / 2;
            let g = random_graph(n, ((max as f64) * density).max(1.0) as u64, seed);
            let params = OrderingParams::new(2, 3, seed);
            let mut exp = GeoExpander::new(&g, &params).unwrap();
            let delta = exp.params().delta;
            while let Some(out) = exp.step() {
                // progress
                prop_assert_eq!(exp.remaining_degree(out.vertex), 0);
                // two-hop safety
                for t in &out.two_hop {
                    prop_assert!(t.far_latest + delta >= t.order_index);
                }
                for v in g.vertices() {
                    let unordered = g.neighbors(v).iter().filter(|&&(_, e)| !exp.is_edge_ordered(e)).count();
                    prop_assert_eq!(exp.remaining_degree(v) as usize, unordered);
                    let latest = g.neighbors(v).iter()
                        .filter(|&&(_, e)| exp.is_edge_ordered(e))
                        .map(|&(_, e)| exp.ordered().iter().position(|&x| x == e).unwrap() as u64)
                        .max();
                    prop_assert_eq!(exp.latest_index(v), latest);
                }
                // the queue holds exactly the frontier
                let frontier: Vec<_> = g.vertices()
                    .filter(|&v| exp.latest_index(v).is_some() && exp.remaining_degree(v) > 0)
                    .collect();
                prop_assert_eq!(exp.frontier(), frontier);
            }
        }
    }
}
