use super::{NetworkCode, NetworkError, NetworkGraph};
use crate::galois::{FieldMatrix, Matrix, PolyMatrix, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinkTransfer {
    /// Sink node index.
    pub sink: usize,
    /// `F_T(z) = F(z) B^T`, `|E| x n`.
    pub f_t: PolyMatrix,
    /// `M_T(z) = A F_T(z)`, `n x n`.
    pub m_t: PolyMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferSet {
    /// `F(z) = (I - zK)^{-1}`.
    pub f: PolyMatrix,
    pub sinks: Vec<SinkTransfer>,
    /// One more than the largest degree in `F(z)`.
    pub t_delay: usize,
}

impl TransferSet {
    pub fn sink(&self, sink: usize) -> Option<&SinkTransfer> {
        self.sinks.iter().find(|s| s.sink == sink)
    }
}

fn to_poly(m: &FieldMatrix) -> PolyMatrix {
    let field = m.field().clone();
    m.map(|x| Polynomial::constant(&field, x.value()))
}

/// `F(z)` as the finite sum `I + zK + (zK)^2 + ...`; the sum stops once the
/// power vanishes, which happens after at most `|E|` terms.
pub fn delay_transfer(code: &NetworkCode) -> PolyMatrix {
    let field = code.field();
    let m = code.beta().len();
    let z = Polynomial::z(field);
    let zk = to_poly(&code.local_matrix()).scale(&z);
    let mut f = PolyMatrix::identity(field, m);
    let mut power = PolyMatrix::identity(field, m);
    for _ in 1..=m {
        power = power.mul(&zk).expect("square");
        if power.is_zero() {
            break;
        }
        f = f.add(&power).expect("same shape");
    }
    f
}

pub fn compute_transfer(g: &NetworkGraph, code: &NetworkCode) -> Result<TransferSet, NetworkError> {
    let f = delay_transfer(code);
    let a = to_poly(&code.source_matrix());
    let mut sinks = Vec::with_capacity(g.sinks().len());
    for (pos, &t) in g.sinks().iter().enumerate() {
        let f_t = f.mul(&to_poly(&code.sink_matrix(pos)))?;
        let m_t = a.mul(&f_t)?;
        if m_t.rank() < code.dimension() {
            return Err(NetworkError::SingularTransfer(g.node_name(t).to_string()));
        }
        sinks.push(SinkTransfer { sink: t, f_t, m_t });
    }
    let t_delay = f.max_degree().unwrap_or(0) + 1;
    Ok(TransferSet { f, sinks, t_delay })
}

/// Sink transfer matrices of the same kernels on the delay-free network,
/// `A (I - K)^{-1} B^T`.
pub fn instantaneous_transfer(g: &NetworkGraph, code: &NetworkCode) -> Vec<FieldMatrix> {
    let field = code.field();
    let m = g.num_edges();
    let k = code.local_matrix();
    let mut f: FieldMatrix = Matrix::identity(field, m);
    let mut power: FieldMatrix = Matrix::identity(field, m);
    for _ in 1..=m {
        power = power.mul(&k).expect("square");
        if power.is_zero() {
            break;
        }
        f = f.add(&power).expect("same shape");
    }
    let af = code.source_matrix().mul(&f).expect("n x |E| times |E| x |E|");
    (0..g.sinks().len())
        .map(|pos| af.mul(&code.sink_matrix(pos)).expect("shapes agree"))
        .collect()
}
