use super::geo::{ExpansionState, RestartPicker};
use super::{Ordering, OrderingParams};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metrics::VertexCounter;

/// Largest graph [`order_geo_baseline`] accepts.
pub const BASELINE_EDGE_CAP: usize = 5_000;

/// Exhaustive greedy expansion.
///
/// Every iteration scores each frontier vertex `v` by the partial objective
/// of the current prefix extended with `v`'s unordered edges, and expands the
/// minimizer (lowest id on ties). The two-hop rule and restarts match
/// [`order_geo_fast`](super::order_geo_fast). Cost grows roughly with
/// `|V|^2 |E| (k_max - k_min)`, hence the size cap.
pub fn order_geo_baseline(graph: &Graph, params: &OrderingParams) -> Result<Ordering> {
    order_geo_baseline_with_cap(graph, params, BASELINE_EDGE_CAP)
}

pub fn order_geo_baseline_with_cap(
    graph: &Graph,
    params: &OrderingParams,
    cap: usize,
) -> Result<Ordering> {
    if graph.edge_count() > cap {
        return Err(Error::TooLarge {
            edges: graph.edge_count(),
            cap,
        });
    }
    let resolved = params.resolve(graph)?;
    let mut state = ExpansionState::new(graph, resolved.delta);
    let mut picker = RestartPicker::new(graph, params.restart, params.seed);
    let mut counter = VertexCounter::new(graph.vertex_count());
    let mut candidate = Vec::with_capacity(graph.edge_count());

    while !state.done() {
        let mut best: Option<(u64, VertexId)> = None;
        for v in graph.vertices() {
            if state.remaining(v) == 0 || state.latest(v).is_none() {
                continue;
            }
            candidate.clear();
            candidate.extend_from_slice(state.order());
            candidate.extend(
                graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&(_, e)| !state.is_ordered(e))
                    .map(|&(_, e)| e),
            );
            let score = counter.prefix_objective_raw(
                graph,
                &candidate,
                graph.edge_count() as u64,
                resolved.k_min,
                resolved.k_max,
            );
            if best.is_none_or(|(f, _)| score < f) {
                best = Some((score, v));
            }
        }
        let (v, restarted) = match best {
            Some((_, v)) => (v, false),
            None => (picker.pick(&state), true),
        };
        state.expand(v, restarted, |_, _| {});
    }
    Ok(state.into_ordering())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::objective_def4;
    use crate::ordering::Restart;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn single_edge() {
        let g = Graph::canonicalize(&[(0, 1)]);
        let o = order_geo_baseline(&g, &OrderingParams::default()).unwrap();
        assert_eq!(o.permutation(), &[0]);
    }

    #[test]
    fn refuses_large_graphs() {
        let pairs: Vec<_> = (0..20).map(|i| (i, i + 1)).collect();
        let g = Graph::canonicalize(&pairs);
        let err = order_geo_baseline_with_cap(&g, &OrderingParams::default(), 10).unwrap_err();
        assert!(matches!(err, Error::TooLarge { edges: 20, cap: 10 }));
        assert!(err.to_string().contains("10"));
    }

    #[test]
    fn path_is_no_worse_than_reverse() {
        let g = Graph::canonicalize(&[(0, 1), (1, 2)]);
        let o = order_geo_baseline(&g, &OrderingParams::new(2, 2, 3)).unwrap();
        let mut reversed = o.permutation().to_vec();
        reversed.reverse();
        let rev = Ordering::from_permutation(reversed).unwrap();
        assert!(objective_def4(&g, &o, 2, 2).unwrap().raw <= objective_def4(&g, &rev, 2, 2).unwrap().raw);
    }

    #[test]
    fn triangle_reaches_brute_force_optimum() {
        let g = Graph::canonicalize(&[(0, 1), (1, 2), (2, 0)]);
        let o = order_geo_baseline(&g, &OrderingParams::new(3, 3, 1)).unwrap();
        let best = permutations(3)
            .into_iter()
            .map(|p| objective_def4(&g, &Ordering::from_permutation(p).unwrap(), 3, 3).unwrap().raw)
            .min()
            .unwrap();
        assert_eq!(objective_def4(&g, &o, 3, 3).unwrap().raw, best);
    }

    #[test]
    fn small_graphs_match_brute_force_for_a_single_chunking() {
        // Two triangles joined by a bridge: a greedy expansion with k = 2
        // should keep each triangle inside one chunk.
        let g = Graph::canonicalize(&[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]);
        let params = OrderingParams::new(2, 2, 0).with_restart(Restart::LowestId);
        let o = order_geo_baseline(&g, &params).unwrap();
        let best = permutations(g.edge_count())
            .into_iter()
            .map(|p| objective_def4(&g, &Ordering::from_permutation(p).unwrap(), 2, 2).unwrap().raw)
            .min()
            .unwrap();
        let got = objective_def4(&g, &o, 2, 2).unwrap().raw;
        assert_eq!(got, best);
        assert_eq!(best, 7);
    }

    #[test]
    fn deterministic() {
        let g = Graph::canonicalize(&crate::graphgen::gen_er(25, 60, 4).unwrap());
        let p = OrderingParams::new(2, 6, 11);
        assert_eq!(order_geo_baseline(&g, &p).unwrap(), order_geo_baseline(&g, &p).unwrap());
    }
}
