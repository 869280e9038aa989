use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::transfer::instantaneous_transfer;
use super::{min_cut, NetworkError, NetworkGraph};
use crate::galois::{Field, FieldMatrix};

/// Local encoding kernels of an `n`-dimensional linear network code.
///
/// `alpha` is `n x |E|`, `beta` is `|E| x |E|` and each entry of `epsilon` is
/// `|E| x n` (one per sink, in sink declaration order). Values are field
/// element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkCode {
    field: Field,
    n: usize,
    alpha: Vec<Vec<u32>>,
    beta: Vec<Vec<u32>>,
    epsilon: Vec<Vec<Vec<u32>>>,
}

impl NetworkCode {
    pub fn new(
        g: &NetworkGraph,
        field: &Field,
        n: usize,
        alpha: Vec<Vec<u32>>,
        beta: Vec<Vec<u32>>,
        epsilon: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self, NetworkError> {
        let m = g.num_edges();
        if n == 0 {
            return Err(NetworkError::Invalid("network code dimension must be positive".into()));
        }
        let shape_ok = alpha.len() == n
            && alpha.iter().all(|r| r.len() == m)
            && beta.len() == m
            && beta.iter().all(|r| r.len() == m)
            && epsilon.len() == g.sinks().len()
            && epsilon
                .iter()
                .all(|b| b.len() == m && b.iter().all(|r| r.len() == n));
        if !shape_ok {
            return Err(NetworkError::Invalid("kernel matrices have the wrong shape".into()));
        }
        let all_values = alpha
            .iter()
            .chain(beta.iter())
            .chain(epsilon.iter().flatten())
            .flatten();
        if let Some(&v) = all_values.clone().find(|&&v| !field.contains(v)) {
            return Err(NetworkError::Invalid(format!("kernel value {v} not in {field}")));
        }
        for row in &alpha {
            for (e, &v) in row.iter().enumerate() {
                if v != 0 && g.edges()[e].tail != g.source() {
                    return Err(off_support("alpha", &g.edges()[e].id, None));
                }
            }
        }
        for (i, row) in beta.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 && !g.adjacent(i, j) {
                    return Err(off_support("beta", &g.edges()[i].id, Some(&g.edges()[j].id)));
                }
            }
        }
        for (b, &t) in epsilon.iter().zip(g.sinks()) {
            for (e, row) in b.iter().enumerate() {
                if row.iter().any(|&v| v != 0) && g.edges()[e].head != t {
                    return Err(off_support("epsilon", &g.edges()[e].id, Some(g.node_name(t))));
                }
            }
        }
        let cut = min_cut(g)?;
        if n > cut.n {
            return Err(NetworkError::DimensionExceedsMinCut { n, min_cut: cut.n });
        }
        Ok(Self {
            field: field.clone(),
            n,
            alpha,
            beta,
            epsilon,
        })
    }

    /// Sink kernels selecting the first `n` incoming edges of every sink in
    /// ancestral order.
    pub fn identity_selection(g: &NetworkGraph, n: usize) -> Result<Vec<Vec<Vec<u32>>>, NetworkError> {
        g.sinks()
            .iter()
            .map(|&t| identity_selection_for(g, t, n))
            .collect()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &[Vec<u32>] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Vec<u32>] {
        &self.beta
    }

    pub fn epsilon(&self, sink_pos: usize) -> &[Vec<u32>] {
        &self.epsilon[sink_pos]
    }

    /// The source matrix `A`.
    pub fn source_matrix(&self) -> FieldMatrix {
        grid_to_matrix(&self.field, &self.alpha)
    }

    /// The local kernel matrix `K`.
    pub fn local_matrix(&self) -> FieldMatrix {
        grid_to_matrix(&self.field, &self.beta)
    }

    /// The sink matrix `B^T` of the sink at `sink_pos` in declaration order.
    pub fn sink_matrix(&self, sink_pos: usize) -> FieldMatrix {
        grid_to_matrix(&self.field, &self.epsilon[sink_pos])
    }
}

pub(crate) fn identity_selection_for(
    g: &NetworkGraph,
    t: usize,
    n: usize,
) -> Result<Vec<Vec<u32>>, NetworkError> {
    let incoming = g.in_edges(t);
    if incoming.len() < n {
        return Err(NetworkError::Invalid(format!(
            "sink {} has {} incoming edges, fewer than the dimension {n}",
            g.node_name(t),
            incoming.len()
        )));
    }
    let mut b = vec![vec![0u32; n]; g.num_edges()];
    for (i, &e) in incoming.iter().take(n).enumerate() {
        b[e][i] = 1;
    }
    Ok(b)
}

fn off_support(kind: &str, a: &str, b: Option<&str>) -> NetworkError {
    NetworkError::KernelOffSupport {
        kind: kind.to_string(),
        at: match b {
            Some(b) => format!("({a}, {b})"),
            None => a.to_string(),
        },
    }
}

fn grid_to_matrix(field: &Field, grid: &[Vec<u32>]) -> FieldMatrix {
    let rows = grid
        .iter()
        .map(|r| r.iter().map(|&v| field.element(v).expect("validated")).collect())
        .collect();
    FieldMatrix::from_rows(field, rows).expect("rectangular")
}

/// Draws kernels uniformly at random until every instantaneous sink matrix
/// `M_T(1)` has full rank. Deterministic in `seed`.
///
/// A sink with exactly `n` incoming edges keeps the identity selection; any
/// invertible choice there gives the same decodability.
pub fn random_network_code(
    g: &NetworkGraph,
    n: usize,
    field: &Field,
    seed: u64,
    max_tries: usize,
) -> Result<NetworkCode, NetworkError> {
    let cut = min_cut(g)?;
    if n == 0 || n > cut.n {
        return Err(NetworkError::DimensionExceedsMinCut { n, min_cut: cut.n });
    }
    let m = g.num_edges();
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_tries {
        let mut draw = || rng.gen_range(0..q);
        let mut alpha = vec![vec![0u32; m]; n];
        for e in g.out_edges(g.source()) {
            for row in alpha.iter_mut() {
                row[e] = draw();
            }
        }
        let mut beta = vec![vec![0u32; m]; m];
        for (i, row) in beta.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if g.adjacent(i, j) {
                    *v = draw();
                }
            }
        }
        let mut epsilon = Vec::with_capacity(g.sinks().len());
        for &t in g.sinks() {
            let incoming = g.in_edges(t);
            if incoming.len() == n {
                epsilon.push(identity_selection_for(g, t, n)?);
                continue;
            }
            let mut b = vec![vec![0u32; n]; m];
            for e in incoming {
                for v in b[e].iter_mut() {
                    *v = draw();
                }
            }
            epsilon.push(b);
        }
        // supports hold by construction
        let code = NetworkCode {
            field: field.clone(),
            n,
            alpha,
            beta,
            epsilon,
        };
        if instantaneous_transfer(g, &code)
            .iter()
            .all(|mt| mt.rank() == n)
        {
            return Ok(code);
        }
    }
    Err(NetworkError::TriesExhausted(max_tries))
}
