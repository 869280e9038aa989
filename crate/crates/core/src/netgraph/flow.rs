use std::collections::VecDeque;

use super::{NetworkError, NetworkGraph};

/// Unicast capacities of every sink and their minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCut {
    pub n: usize,
    /// `(sink node, n_T)` in sink declaration order.
    pub per_sink: Vec<(usize, usize)>,
}

impl MinCut {
    pub fn of_sink(&self, sink: usize) -> Option<usize> {
        self.per_sink.iter().find(|(s, _)| *s == sink).map(|&(_, c)| c)
    }
}

struct Arc {
    to: usize,
    cap: u32,
    rev: usize,
}

/// Number of edge-disjoint paths from the source to each sink (unit
/// capacities, augmenting shortest paths).
pub fn min_cut(g: &NetworkGraph) -> Result<MinCut, NetworkError> {
    let mut per_sink = Vec::with_capacity(g.sinks().len());
    for &t in g.sinks() {
        let flow = max_flow(g, g.source(), t);
        if flow == 0 {
            return Err(NetworkError::SinkUnreachable(g.node_name(t).to_string()));
        }
        per_sink.push((t, flow));
    }
    let n = per_sink.iter().map(|&(_, c)| c).min().unwrap_or(0);
    Ok(MinCut { n, per_sink })
}

fn max_flow(g: &NetworkGraph, s: usize, t: usize) -> usize {
    let nn = g.nodes().len();
    let mut adj: Vec<Vec<Arc>> = (0..nn).map(|_| Vec::new()).collect();
    for e in g.edges() {
        let (u, v) = (e.tail, e.head);
        let ru = adj[v].len();
        let rv = adj[u].len();
        adj[u].push(Arc { to: v, cap: 1, rev: ru });
        adj[v].push(Arc { to: u, cap: 0, rev: rv });
    }
    let mut flow = 0;
    loop {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; nn];
        let mut queue = VecDeque::from([s]);
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for (ai, a) in adj[u].iter().enumerate() {
                if a.cap > 0 && a.to != s && prev[a.to].is_none() {
                    prev[a.to] = Some((u, ai));
                    if a.to == t {
                        found = true;
                        break;
                    }
                    queue.push_back(a.to);
                }
            }
            if found {
                break;
            }
        }
        if !found {
            return flow;
        }
        let mut v = t;
        while let Some((u, ai)) = prev[v] {
            adj[u][ai].cap -= 1;
            let rev = adj[u][ai].rev;
            adj[v][rev].cap += 1;
            v = u;
        }
        flow += 1;
    }
}
