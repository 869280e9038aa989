use std::fmt;

use super::CodeError;
use crate::galois::{parse_polynomial, Field, PolyMatrix, Polynomial};

/// A `k x n` polynomial generator matrix of rank `k`, `k < n`.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    matrix: PolyMatrix,
    row_degrees: Vec<usize>,
}

impl GeneratorMatrix {
    pub fn new(matrix: PolyMatrix) -> Result<Self, CodeError> {
        let (k, n) = (matrix.rows(), matrix.cols());
        if k == 0 || k >= n {
            return Err(CodeError::BadRate { k, n });
        }
        let mut row_degrees = Vec::with_capacity(k);
        for i in 0..k {
            let deg = matrix
                .row(i)
                .iter()
                .filter_map(Polynomial::degree)
                .max()
                .ok_or(CodeError::RankDeficient)?;
            row_degrees.push(deg);
        }
        if matrix.rank() < k {
            return Err(CodeError::RankDeficient);
        }
        Ok(Self {
            matrix,
            row_degrees,
        })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Polynomial>>) -> Result<Self, CodeError> {
        Self::new(PolyMatrix::from_rows(field, rows)?)
    }

    /// Parses rows separated by `;` or newlines with comma-separated entries,
    /// e.g. `1+z^2, 1+z+z^2`. Surrounding brackets are ignored.
    pub fn parse(field: &Field, text: &str) -> Result<Self, CodeError> {
        let body = text.trim().trim_start_matches('[').trim_end_matches(']');
        let mut rows = Vec::new();
        for row in body.split([';', '\n']) {
            let row = row.trim().trim_start_matches('[').trim_end_matches(']');
            if row.trim().is_empty() {
                continue;
            }
            let entries = row
                .split(',')
                .map(|e| parse_polynomial(field, e))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(entries);
        }
        if rows.is_empty() {
            return Err(CodeError::BadRate { k: 0, n: 0 });
        }
        Self::from_rows(field, rows)
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        self.matrix.get(i, j)
    }

    pub fn row_degrees(&self) -> &[usize] {
        &self.row_degrees
    }

    /// Sum of the row degrees.
    pub fn degree(&self) -> usize {
        self.row_degrees.iter().sum()
    }

    /// Largest row degree, i.e. the length of the zero tail.
    pub fn memory(&self) -> usize {
        self.row_degrees.iter().copied().max().unwrap_or(0)
    }

    /// `p(z) G(z)`.
    pub fn scaled(&self, p: &Polynomial) -> Result<Self, CodeError> {
        if p.is_zero() {
            return Err(CodeError::RankDeficient);
        }
        Self::new(self.matrix.scale(p))
    }

    /// `G(z) M(z)` for a square `n x n` matrix, e.g. a sink transfer matrix.
    pub fn times(&self, m: &PolyMatrix) -> Result<Self, CodeError> {
        Self::new(self.matrix.mul(m)?)
    }

    /// Largest `a` such that `z^a` divides every entry.
    pub fn delay(&self) -> usize {
        self.matrix
            .entries()
            .filter_map(Polynomial::valuation)
            .min()
            .unwrap_or(0)
    }

    /// The generator with the common `z^a` factor removed, and `a`.
    pub fn strip_delay(&self) -> (Self, usize) {
        let a = self.delay();
        if a == 0 {
            return (self.clone(), 0);
        }
        let m = self.matrix.map(|p| p.unshift(a));
        (Self::new(m).expect("same rank"), a)
    }

    /// `v(z) = u(z) G(z)` where `u` holds one polynomial per input row.
    pub fn encode_poly(&self, u: &[Polynomial]) -> Result<Vec<Polynomial>, CodeError> {
        Ok(self.matrix.left_mul_vec(u)?)
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.k() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, p) in self.matrix.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field())
    }
}
