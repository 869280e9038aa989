use std::collections::{BTreeMap, BTreeSet};

use super::DesignError;
use crate::galois::Field;
use crate::netgraph::NetworkGraph;

/// A collection of edge subsets that may be in error at one time instant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorPatternSet {
    patterns: Vec<Vec<usize>>,
}

impl ErrorPatternSet {
    /// Patterns as edge indices (ancestral order). Duplicates collapse.
    pub fn from_indices(num_edges: usize, patterns: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        let mut set = BTreeSet::new();
        for mut p in patterns {
            if let Some(&e) = p.iter().find(|&&e| e >= num_edges) {
                return Err(DesignError::UnknownEdge(format!("#{e}")));
            }
            p.sort_unstable();
            p.dedup();
            set.insert(p);
        }
        Ok(Self {
            patterns: set.into_iter().collect(),
        })
    }

    pub fn all_single(num_edges: usize) -> Self {
        Self {
            patterns: (0..num_edges).map(|e| vec![e]).collect(),
        }
    }

    pub fn all_double(num_edges: usize) -> Self {
        let mut patterns = Vec::new();
        for i in 0..num_edges {
            for j in i + 1..num_edges {
                patterns.push(vec![i, j]);
            }
        }
        Self { patterns }
    }

    /// `all-single` or `all-double`.
    pub fn shorthand(g: &NetworkGraph, name: &str) -> Option<Self> {
        match name.trim() {
            "all-single" => Some(Self::all_single(g.num_edges())),
            "all-double" => Some(Self::all_double(g.num_edges())),
            _ => None,
        }
    }

    /// One pattern per line as space-separated edge ids; `all-single` and
    /// `all-double` lines expand in place, `{}` is the empty pattern and `#`
    /// starts a comment.
    pub fn parse(g: &NetworkGraph, text: &str) -> Result<Self, DesignError> {
        let mut patterns = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(expanded) = Self::shorthand(g, line) {
                patterns.extend(expanded.patterns);
                continue;
            }
            if line == "{}" {
                patterns.push(Vec::new());
                continue;
            }
            let p = line
                .split_whitespace()
                .map(|id| {
                    g.edge_index(id).ok_or_else(|| DesignError::Pattern {
                        line: idx + 1,
                        reason: format!("unknown edge {id}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            patterns.push(p);
        }
        Self::from_indices(g.num_edges(), patterns)
    }

    pub fn patterns(&self) -> &[Vec<usize>] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Largest number of edges in one pattern.
    pub fn max_size(&self) -> usize {
        self.patterns.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Default cap on the number of vectors visited by [`enumerate_w_phi`].
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Every error vector supported on some pattern, zero vector included, in
/// lexicographic order.
pub fn enumerate_w_phi(
    phi: &ErrorPatternSet,
    field: &Field,
    num_edges: usize,
    budget: u64,
) -> Result<Vec<Vec<u32>>, DesignError> {
    let q = field.order() as u64;
    let needed = phi
        .patterns()
        .iter()
        .try_fold(0u64, |acc, p| q.checked_pow(p.len() as u32).and_then(|c| acc.checked_add(c)));
    match needed {
        Some(n) if n <= budget => {}
        _ => {
            return Err(DesignError::BudgetExceeded {
                needed: needed.unwrap_or(u64::MAX),
                budget,
            })
        }
    }
    let mut out = BTreeSet::new();
    out.insert(vec![0u32; num_edges]);
    for p in phi.patterns() {
        let mut digits = vec![0u32; p.len()];
        loop {
            let mut w = vec![0u32; num_edges];
            for (&e, &d) in p.iter().zip(&digits) {
                w[e] = d;
            }
            out.insert(w);
            // odometer increment
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < field.order() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Number of weight-`i` vectors per `i` in a vector list; handy for checks.
pub fn weight_histogram(vectors: &[Vec<u32>]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in vectors {
        *h.entry(v.iter().filter(|&&x| x != 0).count()).or_insert(0) += 1;
    }
    h
}
