use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use super::NetworkError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// An acyclic directed multigraph with one source and a list of sinks.
///
/// Edges are kept in an ancestral order: whenever `head(e_i) = tail(e_j)`,
/// `e_i` comes before `e_j`. Edge indices used throughout the crate refer to
/// this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkGraph {
    nodes: Vec<String>,
    edges: Vec<Edge>,
    source: usize,
    sinks: Vec<usize>,
    reordered: bool,
}

impl NetworkGraph {
    /// Validates and builds a graph. Edges are given as `(id, tail, head)` by
    /// node name; an edge list that is not ancestrally ordered is re-sorted
    /// with a stable topological sort.
    pub fn new<S: AsRef<str>>(
        nodes: &[S],
        edges: &[(S, S, S)],
        source: &str,
        sinks: &[S],
    ) -> Result<Self, NetworkError> {
        let mut node_index = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if node_index.insert(n.as_ref().to_string(), i).is_some() {
                return Err(NetworkError::Duplicate(format!("node {}", n.as_ref())));
            }
        }
        let lookup = |name: &str, edge: &str| {
            node_index
                .get(name)
                .copied()
                .ok_or_else(|| NetworkError::DanglingEndpoint {
                    edge: edge.to_string(),
                    node: name.to_string(),
                })
        };
        let mut seen_ids = HashSet::new();
        let mut declared = Vec::with_capacity(edges.len());
        for (id, tail, head) in edges {
            let id = id.as_ref();
            if !seen_ids.insert(id.to_string()) {
                return Err(NetworkError::Duplicate(format!("edge {id}")));
            }
            declared.push(Edge {
                id: id.to_string(),
                tail: lookup(tail.as_ref(), id)?,
                head: lookup(head.as_ref(), id)?,
            });
        }
        let source = *node_index
            .get(source)
            .ok_or_else(|| NetworkError::UnknownNode(source.to_string()))?;
        let mut sink_ids = Vec::new();
        for s in sinks {
            let idx = *node_index
                .get(s.as_ref())
                .ok_or_else(|| NetworkError::UnknownNode(s.as_ref().to_string()))?;
            if idx == source {
                return Err(NetworkError::Invalid("the source cannot be a sink".into()));
            }
            if sink_ids.contains(&idx) {
                return Err(NetworkError::Duplicate(format!("sink {}", s.as_ref())));
            }
            sink_ids.push(idx);
        }
        if sink_ids.is_empty() {
            return Err(NetworkError::Invalid("no sinks declared".into()));
        }
        if let Some(e) = declared.iter().find(|e| e.head == source) {
            return Err(NetworkError::Invalid(format!(
                "edge {} enters the source",
                e.id
            )));
        }
        check_acyclic(nodes.len(), &declared, |i| nodes[i].as_ref().to_string())?;
        let (edges, reordered) = ancestral_order(nodes.len(), declared);
        Ok(Self {
            nodes: nodes.iter().map(|n| n.as_ref().to_string()).collect(),
            edges,
            source,
            sinks: sink_ids,
            reordered,
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sinks(&self) -> &[usize] {
        &self.sinks
    }

    pub fn node_name(&self, node: usize) -> &str {
        &self.nodes[node]
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Whether the declared edge order had to be re-sorted.
    pub fn was_reordered(&self) -> bool {
        self.reordered
    }

    /// Incoming edges of `node` in ancestral order.
    pub fn in_edges(&self, node: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].head == node).collect()
    }

    /// Outgoing edges of `node` in ancestral order.
    pub fn out_edges(&self, node: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].tail == node).collect()
    }

    /// True when `e_i` feeds directly into `e_j`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edges[i].head == self.edges[j].tail
    }
}

fn check_acyclic(
    num_nodes: usize,
    edges: &[Edge],
    name: impl Fn(usize) -> String,
) -> Result<(), NetworkError> {
    let mut indeg = vec![0usize; num_nodes];
    for e in edges {
        indeg[e.head] += 1;
    }
    let mut stack: Vec<usize> = (0..num_nodes).filter(|&v| indeg[v] == 0).collect();
    let mut visited = 0;
    while let Some(v) = stack.pop() {
        visited += 1;
        for e in edges.iter().filter(|e| e.tail == v) {
            indeg[e.head] -= 1;
            if indeg[e.head] == 0 {
                stack.push(e.head);
            }
        }
    }
    if visited < num_nodes {
        let on_cycle = (0..num_nodes).find(|&v| indeg[v] > 0).expect("cycle node");
        return Err(NetworkError::Cycle(name(on_cycle)));
    }
    Ok(())
}

/// Stable topological sort of the edges: among edges whose predecessors are
/// all placed, the one declared first goes next.
fn ancestral_order(num_nodes: usize, declared: Vec<Edge>) -> (Vec<Edge>, bool) {
    let m = declared.len();
    let mut pending_into = vec![0usize; num_nodes];
    for e in &declared {
        pending_into[e.head] += 1;
    }
    let mut ready = BinaryHeap::new();
    for (i, e) in declared.iter().enumerate() {
        if pending_into[e.tail] == 0 {
            ready.push(Reverse(i));
        }
    }
    let mut order = Vec::with_capacity(m);
    while let Some(Reverse(i)) = ready.pop() {
        order.push(i);
        let h = declared[i].head;
        pending_into[h] -= 1;
        if pending_into[h] == 0 {
            for (j, e) in declared.iter().enumerate() {
                if e.tail == h {
                    ready.push(Reverse(j));
                }
            }
        }
    }
    debug_assert_eq!(order.len(), m, "acyclicity was checked");
    let reordered = order.iter().enumerate().any(|(pos, &i)| pos != i);
    let mut slots: Vec<Option<Edge>> = declared.into_iter().map(Some).collect();
    let edges = order.iter().map(|&i| slots[i].take().expect("each edge once")).collect();
    (edges, reordered)
}
