use rand::seq::index::sample;
use rand::Rng;

use super::SimError;
use crate::design::ErrorPatternSet;
use crate::galois::Field;

/// How edge errors are produced over network uses.
#[derive(Clone, Debug, PartialEq)]
pub enum ErrorModel {
    /// `i` edges in error with probability `p^i`, none with `1 - sum p^i`,
    /// independently at every network use.
    Probabilistic { p: f64 },
    /// One pattern of the set, drawn uniformly, every `spacing` network uses
    /// starting at a random offset below `spacing`.
    Spaced { patterns: ErrorPatternSet, spacing: usize },
    /// Explicit error vectors per network use; zero after the script ends.
    Scripted { steps: Vec<Vec<u32>> },
}

impl ErrorModel {
    pub fn probabilistic(p: f64) -> Result<Self, SimError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(SimError::InvalidProbability(p));
        }
        Ok(ErrorModel::Probabilistic { p })
    }

    pub fn spaced(patterns: ErrorPatternSet, spacing: usize) -> Result<Self, SimError> {
        if spacing == 0 {
            return Err(SimError::InvalidSpacing);
        }
        Ok(ErrorModel::Spaced { patterns, spacing })
    }
}

/// `q = 1 - sum_{i=1}^{m} p^i`.
pub fn idle_probability(p: f64, num_edges: usize) -> f64 {
    1.0 - (1..=num_edges as i32).map(|i| p.powi(i)).sum::<f64>()
}

/// An [`ErrorModel`] bound to a field and an edge count.
#[derive(Clone, Debug)]
pub struct ErrorSource {
    model: ErrorModel,
    field: Field,
    num_edges: usize,
    /// `cumulative[i] = P(at most i edges in error)` in probabilistic mode.
    cumulative: Vec<f64>,
}

impl ErrorSource {
    pub fn new(model: &ErrorModel, field: &Field, num_edges: usize) -> Result<Self, SimError> {
        let mut cumulative = Vec::new();
        match model {
            ErrorModel::Probabilistic { p } => {
                let q = idle_probability(*p, num_edges);
                if !(*p > 0.0 && *p < 1.0) || q < 0.0 {
                    return Err(SimError::InvalidProbability(*p));
                }
                let mut acc = q;
                cumulative.push(acc);
                for i in 1..=num_edges {
                    acc += p.powi(i as i32);
                    cumulative.push(acc);
                }
            }
            ErrorModel::Spaced { patterns, spacing } => {
                if *spacing == 0 {
                    return Err(SimError::InvalidSpacing);
                }
                if let Some(e) = patterns.patterns().iter().flatten().find(|&&e| e >= num_edges) {
                    return Err(SimError::PatternOutOfRange(*e));
                }
            }
            ErrorModel::Scripted { steps } => {
                for w in steps {
                    if w.len() != num_edges || w.iter().any(|&v| !field.contains(v)) {
                        return Err(SimError::BadScript);
                    }
                }
            }
        }
        Ok(Self {
            model: model.clone(),
            field: field.clone(),
            num_edges,
            cumulative,
        })
    }

    pub fn model(&self) -> &ErrorModel {
        &self.model
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    /// Number of erroneous edges for one probabilistic step.
    pub fn sample_count<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let r: f64 = rng.gen();
        self.cumulative
            .iter()
            .position(|&c| r < c)
            .unwrap_or(self.num_edges)
    }

    fn fill_nonzero<R: Rng + ?Sized>(&self, w: &mut [u32], edges: impl Iterator<Item = usize>, rng: &mut R) {
        let q = self.field.order();
        for e in edges {
            w[e] = rng.gen_range(1..q);
        }
    }

    /// Error vectors for `len` consecutive network uses.
    pub fn sequence<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> Vec<Vec<u32>> {
        let m = self.num_edges;
        match &self.model {
            ErrorModel::Probabilistic { .. } => (0..len).map(|_| sample_error_step(self, rng)).collect(),
            ErrorModel::Spaced { patterns, spacing } => {
                let mut out = vec![vec![0; m]; len];
                if patterns.is_empty() {
                    return out;
                }
                let offset = rng.gen_range(0..*spacing);
                for t in (offset..len).step_by(*spacing) {
                    let p = &patterns.patterns()[rng.gen_range(0..patterns.len())];
                    self.fill_nonzero(&mut out[t], p.iter().copied(), rng);
                }
                out
            }
            ErrorModel::Scripted { steps } => (0..len)
                .map(|t| steps.get(t).cloned().unwrap_or_else(|| vec![0; m]))
                .collect(),
        }
    }
}

/// One probabilistic error vector: the count from `P(i) = p^i`, a uniform
/// subset of that size and uniform nonzero values. Other models give the
/// zero vector.
pub fn sample_error_step<R: Rng + ?Sized>(source: &ErrorSource, rng: &mut R) -> Vec<u32> {
    let mut w = vec![0; source.num_edges];
    if let ErrorModel::Probabilistic { .. } = source.model {
        let i = source.sample_count(rng);
        if i > 0 {
            let edges = sample(rng, source.num_edges, i);
            source.fill_nonzero(&mut w, edges.into_iter(), rng);
        }
    }
    w
}

/// Random `n`-symbol error blocks whose weight over every `window`
/// consecutive blocks stays at most `max_weight`. Each symbol is proposed
/// with probability `density` and kept only if the constraint allows it.
pub fn windowed_error_sequence<R: Rng + ?Sized>(
    field: &Field,
    n: usize,
    len: usize,
    window: usize,
    max_weight: usize,
    density: f64,
    rng: &mut R,
) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; n]; len];
    let mut block_weight = vec![0usize; len];
    let q = field.order();
    for t in 0..len {
        let lo = (t + 1).saturating_sub(window.max(1));
        let mut recent: usize = block_weight[lo..t].iter().sum();
        for j in 0..n {
            if recent < max_weight && rng.gen_bool(density) {
                out[t][j] = rng.gen_range(1..q);
                recent += 1;
                block_weight[t] += 1;
            }
        }
    }
    out
}
