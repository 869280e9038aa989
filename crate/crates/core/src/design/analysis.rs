use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::patterns::{enumerate_w_phi, ErrorPatternSet, DEFAULT_BUDGET};
use super::DesignError;
use crate::convcode::{profile, CodeProfile, GeneratorMatrix, Separation};
use crate::galois::{Field, PolyMatrix, Polynomial};
use crate::netgraph::{compute_transfer, NetworkCode, NetworkGraph, TransferSet};

/// An `n`-tuple over `F_q[z]`.
pub type PolyVec = Vec<Polynomial>;
/// Deduplicated, canonically ordered set of polynomial tuples.
pub type VectorSet = BTreeSet<PolyVec>;

/// Number of nonzero `F_q` coefficients over all components and powers.
pub fn weight(v: &[Polynomial]) -> usize {
    v.iter().map(Polynomial::weight).sum()
}

/// `{ w F_T(z) : w in W_phi }`.
pub fn sink_error_images(w_phi: &[Vec<u32>], f_t: &PolyMatrix) -> VectorSet {
    let field = f_t.field().clone();
    w_phi
        .iter()
        .map(|w| {
            (0..f_t.cols())
                .map(|j| {
                    let mut acc = Polynomial::zero(&field);
                    for (e, &c) in w.iter().enumerate() {
                        if c != 0 {
                            acc = &acc + &f_t.get(e, j).scale(c);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `p_T = det / g` and `P_T = adj / g` with `g` the monic gcd of the adjoint
/// entries. An override `p` is accepted when `p * adj / det` stays polynomial.
pub fn choose_processing(
    m_t: &PolyMatrix,
    override_p: Option<&Polynomial>,
) -> Result<(Polynomial, PolyMatrix), DesignError> {
    let (det, adj) = m_t.det_adjoint()?;
    if det.is_zero() {
        return Err(DesignError::Algebra(crate::galois::AlgebraError::Singular));
    }
    if let Some(p) = override_p {
        let mut entries = Vec::with_capacity(adj.rows());
        for i in 0..adj.rows() {
            let mut row = Vec::with_capacity(adj.cols());
            for a in adj.row(i) {
                row.push((p * a).div_exact(&det).ok_or(DesignError::NonPolynomialProcessing)?);
            }
            entries.push(row);
        }
        return Ok((p.clone(), PolyMatrix::from_rows(m_t.field(), entries)?));
    }
    let g = Polynomial::gcd_all(m_t.field(), adj.entries());
    let p = det.div_exact(&g).expect("gcd of adjoint divides det");
    let proc = adj.map(|a| a.div_exact(&g).expect("gcd divides"));
    Ok((p, proc))
}

/// `W_s = union of { w_T P_T }` and its largest weight `t_s`.
pub fn build_w_s(images: &[VectorSet], processing: &[PolyMatrix]) -> (VectorSet, usize) {
    let mut w_s = VectorSet::new();
    for (set, p) in images.iter().zip(processing) {
        for v in set {
            w_s.insert(p.left_mul_vec(v).expect("n-tuple times n x n"));
        }
    }
    let t_s = w_s.iter().map(|v| weight(v)).max().unwrap_or(0);
    (w_s, t_s)
}

/// True iff `d_free(C_s) >= 2 t_s + 1`.
pub fn verify_code(c_s: &GeneratorMatrix, t_s: usize, n: usize) -> Result<bool, DesignError> {
    if c_s.n() != n {
        return Err(DesignError::RateMismatch {
            code_n: c_s.n(),
            network_n: n,
        });
    }
    Ok(profile(c_s)?.d_free > 2 * t_s)
}

/// `m_T`, the number of `t_T`-weight errors the output code absorbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(usize),
    /// No error reaches the sink (`t_T = 0`).
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

/// `floor((d_free - 1) / (2 t_T))`.
pub fn multiplicity(d_free: usize, t_t: usize) -> Multiplicity {
    if t_t == 0 {
        Multiplicity::Infinite
    } else {
        Multiplicity::Finite(d_free.saturating_sub(1) / (2 * t_t))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecodeMode {
    /// Minimum distance decoding on the output code trellis.
    OutputTrellis,
    /// Processing by `P_T(z)` followed by decoding on `p_T G_I`.
    InputTrellis,
}

impl fmt::Display for DecodeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeMode::OutputTrellis => write!(f, "Output trellis"),
            DecodeMode::InputTrellis => write!(f, "Input trellis"),
        }
    }
}

pub fn select_decode_mode(
    m_t: Multiplicity,
    output: &CodeProfile,
    input: &CodeProfile,
) -> DecodeMode {
    if output.catastrophic {
        return DecodeMode::InputTrellis;
    }
    let spacing_ok = match (m_t, output.t_dfree, input.t_dfree) {
        (Multiplicity::Infinite, _, _) => true,
        (Multiplicity::Finite(0), _, _) => false,
        (_, Separation::Unbounded, _) => false,
        (_, Separation::Finite(_), Separation::Unbounded) => true,
        (Multiplicity::Finite(m), Separation::Finite(t_o), Separation::Finite(t_s)) => t_o <= m * t_s,
    };
    if spacing_ok {
        DecodeMode::OutputTrellis
    } else {
        DecodeMode::InputTrellis
    }
}

/// The output code seen at one sink.
#[derive(Clone, Debug)]
pub struct OutputAnalysis {
    /// `G_O = G_I M_T`.
    pub generator: GeneratorMatrix,
    pub profile: CodeProfile,
    pub m_t: Multiplicity,
    pub mode: DecodeMode,
}

#[derive(Clone, Debug)]
pub struct SinkAnalysis {
    pub sink: usize,
    pub name: String,
    pub transfer: PolyMatrix,
    pub f_t: PolyMatrix,
    pub w_t: VectorSet,
    pub t_t: usize,
    pub p_t: Polynomial,
    pub processing: PolyMatrix,
    pub output: Option<OutputAnalysis>,
}

#[derive(Clone, Debug)]
pub struct InputAnalysis {
    pub generator: GeneratorMatrix,
    pub profile: CodeProfile,
    /// `d_free >= 2 t_s + 1`.
    pub valid: bool,
}

#[derive(Clone, Debug, Default)]
pub struct DesignOptions {
    pub budget: Option<u64>,
    /// Processing function overrides by sink name.
    pub processing_overrides: BTreeMap<String, Polynomial>,
}

/// Everything derived from a network, its code, an error pattern set and
/// optionally an input convolutional code.
#[derive(Clone, Debug)]
pub struct CneccDesign {
    pub field: Field,
    pub graph: NetworkGraph,
    pub code: NetworkCode,
    pub transfer: TransferSet,
    pub patterns: ErrorPatternSet,
    pub w_phi: Vec<Vec<u32>>,
    pub w_s: VectorSet,
    pub t_s: usize,
    /// Largest weight of any processing function.
    pub r: usize,
    pub sinks: Vec<SinkAnalysis>,
    pub input: Option<InputAnalysis>,
}

impl CneccDesign {
    pub fn build(
        graph: &NetworkGraph,
        code: &NetworkCode,
        patterns: &ErrorPatternSet,
        input: Option<&GeneratorMatrix>,
        options: &DesignOptions,
    ) -> Result<Self, DesignError> {
        let field = code.field().clone();
        let transfer = compute_transfer(graph, code)?;
        let w_phi = enumerate_w_phi(
            patterns,
            &field,
            graph.num_edges(),
            options.budget.unwrap_or(DEFAULT_BUDGET),
        )?;
        for name in options.processing_overrides.keys() {
            if !graph.sinks().iter().any(|&t| graph.node_name(t) == name) {
                return Err(DesignError::UnknownSink(name.clone()));
            }
        }
        let mut sinks = Vec::with_capacity(transfer.sinks.len());
        for st in &transfer.sinks {
            let name = graph.node_name(st.sink).to_string();
            let w_t = sink_error_images(&w_phi, &st.f_t);
            let t_t = w_t.iter().map(|v| weight(v)).max().unwrap_or(0);
            let (p_t, processing) =
                choose_processing(&st.m_t, options.processing_overrides.get(&name))
                    .map_err(|e| match e {
                        DesignError::NonPolynomialProcessing => {
                            DesignError::NonPolynomialProcessingAt(name.clone())
                        }
                        other => other,
                    })?;
            sinks.push(SinkAnalysis {
                sink: st.sink,
                name,
                transfer: st.m_t.clone(),
                f_t: st.f_t.clone(),
                w_t,
                t_t,
                p_t,
                processing,
                output: None,
            });
        }
        let images: Vec<VectorSet> = sinks.iter().map(|s| s.w_t.clone()).collect();
        let procs: Vec<PolyMatrix> = sinks.iter().map(|s| s.processing.clone()).collect();
        let (w_s, t_s) = build_w_s(&images, &procs);
        let r = sinks.iter().map(|s| s.p_t.weight()).max().unwrap_or(0);
        let design = Self {
            field,
            graph: graph.clone(),
            code: code.clone(),
            transfer,
            patterns: patterns.clone(),
            w_phi,
            w_s,
            t_s,
            r,
            sinks,
            input: None,
        };
        match input {
            Some(g) => design.with_input(g),
            None => Ok(design),
        }
    }

    /// The same network analysis with a (new) input code attached.
    pub fn with_input(&self, g: &GeneratorMatrix) -> Result<Self, DesignError> {
        let n = self.code.dimension();
        if g.n() != n {
            return Err(DesignError::RateMismatch {
                code_n: g.n(),
                network_n: n,
            });
        }
        if g.field() != &self.field {
            return Err(DesignError::FieldMismatch);
        }
        let input_profile = profile(g)?;
        let mut out = self.clone();
        for s in out.sinks.iter_mut() {
            let generator = g.times(&s.transfer)?;
            let prof = profile(&generator)?;
            let m_t = multiplicity(prof.d_free, s.t_t);
            let mode = select_decode_mode(m_t, &prof, &input_profile);
            s.output = Some(OutputAnalysis {
                generator,
                profile: prof,
                m_t,
                mode,
            });
        }
        out.input = Some(InputAnalysis {
            generator: g.clone(),
            profile: input_profile,
            valid: input_profile.d_free > 2 * self.t_s,
        });
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.code.dimension()
    }

    pub fn t_delay(&self) -> usize {
        self.transfer.t_delay
    }

    pub fn sink_position(&self, name: &str) -> Option<usize> {
        self.sinks.iter().position(|s| s.name == name)
    }
}
