use std::fmt;

use super::{AlgebraError, Field, FieldElement, Polynomial, RationalFunction};

/// Ring operations needed by [`Matrix`].
pub trait Entry: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero(field: &Field) -> Self;
    fn one(field: &Field) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
}

impl Entry for Polynomial {
    fn zero(field: &Field) -> Self {
        Polynomial::zero(field)
    }
    fn one(field: &Field) -> Self {
        Polynomial::one(field)
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Entry for RationalFunction {
    fn zero(field: &Field) -> Self {
        RationalFunction::zero(field)
    }
    fn one(field: &Field) -> Self {
        RationalFunction::one(field)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
}

impl Entry for FieldElement {
    fn zero(field: &Field) -> Self {
        field.element(0).expect("zero")
    }
    fn one(field: &Field) -> Self {
        field.element(1).expect("one")
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        let f = self.field();
        f.element(f.add(self.value(), rhs.value())).expect("closed")
    }
    fn minus(&self, rhs: &Self) -> Self {
        let f = self.field();
        f.element(f.sub(self.value(), rhs.value())).expect("closed")
    }
    fn times(&self, rhs: &Self) -> Self {
        let f = self.field();
        f.element(f.mul(self.value(), rhs.value())).expect("closed")
    }
}

/// A dense row-major matrix over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<Polynomial>;
pub type RationalMatrix = Matrix<RationalFunction>;
pub type FieldMatrix = Matrix<FieldElement>;

impl<T: Entry> Matrix<T> {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![T::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, T::one(field));
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Ragged);
        }
        Ok(Self {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Entry::is_zero)
    }

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let acc = out.get(i, j).plus(&a.times(b));
                    out.set(i, j, acc);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(AlgebraError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.times(c))
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[T]) -> Result<Vec<T>, AlgebraError> {
        if v.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch {
                left: (1, v.len()),
                right: (self.rows, self.cols),
            });
        }
        let mut out = vec![T::zero(&self.field); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if !b.is_zero() {
                    *slot = slot.plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    /// The matrix with row `skip_row` and column `skip_col` removed.
    pub fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            field: self.field.clone(),
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<T, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        Ok(self.det_unchecked())
    }

    fn det_unchecked(&self) -> T {
        match self.rows {
            0 => T::one(&self.field),
            1 => self.data[0].clone(),
            2 => self
                .get(0, 0)
                .times(self.get(1, 1))
                .minus(&self.get(0, 1).times(self.get(1, 0))),
            n => {
                let mut acc = T::zero(&self.field);
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.times(&self.minor(0, j).det_unchecked());
                    acc = if j % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
                }
                acc
            }
        }
    }

    /// Classical adjoint: `adj[i][j] = (-1)^(i+j) det(minor(j, i))`.
    pub fn adjoint(&self) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut adj = Self::zeros(&self.field, n, n);
        if n == 1 {
            adj.set(0, 0, T::one(&self.field));
            return Ok(adj);
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det_unchecked();
                let c = if (i + j) % 2 == 0 {
                    c
                } else {
                    T::zero(&self.field).minus(&c)
                };
                adj.set(i, j, c);
            }
        }
        Ok(adj)
    }

    pub fn det_adjoint(&self) -> Result<(T, Self), AlgebraError> {
        Ok((self.det()?, self.adjoint()?))
    }
}

impl PolyMatrix {
    /// Substitutes a field value for `z` in every entry.
    pub fn eval(&self, x: u32) -> FieldMatrix {
        let f = self.field.clone();
        self.map(|p| f.element(p.eval(x)).expect("closed"))
    }

    /// Largest entry degree; `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(Polynomial::degree).max()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.map(|p| RationalFunction::from_poly(p.clone()))
    }

    /// Rank over `F_q(z)` by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Polynomial>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let piv = rows[rank][col].clone();
            for r in rank + 1..rows.len() {
                let a = rows[r][col].clone();
                if a.is_zero() {
                    continue;
                }
                let reduced: Vec<Polynomial> = rows[r]
                    .iter()
                    .zip(&rows[rank])
                    .map(|(x, y)| &(x * &piv) - &(y * &a))
                    .collect();
                // divide out the row content to keep degrees small
                let content = Polynomial::gcd_all(&self.field, &reduced);
                rows[r] = if content.is_zero() {
                    reduced
                } else {
                    reduced
                        .iter()
                        .map(|x| x.div_exact(&content).expect("content divides row"))
                        .collect()
                };
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

impl FieldMatrix {
    /// Rank over `F_q` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m: Vec<Vec<u32>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(FieldElement::value).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = f.inv(m[rank][col]).expect("nonzero pivot");
            for r in rank + 1..m.len() {
                let factor = f.mul(m[r][col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    m[r][c] = f.sub(m[r][c], f.mul(factor, m[rank][c]));
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let (det, adj) = self.det_adjoint()?;
        let f = self.field.clone();
        let inv = f.inv(det.value()).ok_or(AlgebraError::Singular)?;
        let inv = f.element(inv)?;
        Ok(adj.scale(&inv))
    }
}

impl RationalMatrix {
    /// `adj / det`; fails for singular matrices.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let (det, adj) = self.det_adjoint()?;
        let inv = det.inv().map_err(|_| AlgebraError::Singular)?;
        Ok(adj.scale(&inv))
    }

    /// Converts to a polynomial matrix when every denominator is one.
    pub fn to_polynomial(&self) -> Option<PolyMatrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for e in &self.data {
            data.push(e.as_polynomial()?.clone());
        }
        Some(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// Product of two matrices over the same ring.
pub fn mat_mul<T: Entry>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>, AlgebraError> {
    a.mul(b)
}

/// Determinant and classical adjoint of a square polynomial matrix.
pub fn det_adjoint(m: &PolyMatrix) -> Result<(Polynomial, PolyMatrix), AlgebraError> {
    m.det_adjoint()
}

pub fn rank_over_fq_z(m: &PolyMatrix) -> usize {
    m.rank()
}

impl<T: Entry> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

impl<T: Entry> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(f: &Field, rows: &[&[&[u32]]]) -> PolyMatrix {
        Matrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|c| Polynomial::from_coeffs(f, c.to_vec())).collect())
                .collect(),
        )
        .unwrap()
    }

    fn zpow(f: &Field, d: usize) -> Polynomial {
        Polynomial::monomial(f, 1, d)
    }

    #[test]
    fn butterfly_sink_one_det_adjoint() {
        let f = Field::prime(2).unwrap();
        let m = pm(&f, &[&[&[0, 1], &[0, 0, 0, 1]], &[&[], &[0, 0, 0, 0, 1]]]);
        let (det, adj) = det_adjoint(&m).unwrap();
        assert_eq!(det, zpow(&f, 5));
        let expected = pm(&f, &[&[&[0, 0, 0, 0, 1], &[0, 0, 0, 1]], &[&[], &[0, 1]]]);
        assert_eq!(adj, expected);
        assert_eq!(rank_over_fq_z(&m), 2);
    }

    #[test]
    fn comb_sink_one_det_adjoint() {
        let f = Field::prime(3).unwrap();
        let m = pm(&f, &[&[&[0, 1], &[]], &[&[], &[0, 1]]]);
        let (det, adj) = det_adjoint(&m).unwrap();
        assert_eq!(det, zpow(&f, 2));
        assert_eq!(adj, m);
    }

    #[test]
    fn identity_cases() {
        let f = Field::prime(3).unwrap();
        let id = PolyMatrix::identity(&f, 3);
        let (det, adj) = id.det_adjoint().unwrap();
        assert!(det.is_one());
        assert_eq!(adj, id);
        let m = pm(&f, &[&[&[1, 2], &[0, 1]], &[&[2], &[1, 1, 1]]]);
        assert_eq!(mat_mul(&PolyMatrix::identity(&f, 2), &m).unwrap(), m);
    }

    #[test]
    fn rank_examples() {
        let f = Field::prime(2).unwrap();
        assert_eq!(PolyMatrix::zeros(&f, 2, 3).rank(), 0);
        let m = pm(&f, &[&[&[0, 1], &[0, 1]], &[&[0, 0, 1], &[0, 0, 1]]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn dimension_mismatch() {
        let f = Field::prime(2).unwrap();
        let a = PolyMatrix::zeros(&f, 2, 3);
        assert!(matches!(
            a.mul(&a),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
        assert!(matches!(a.det(), Err(AlgebraError::NotSquare(2, 3))));
    }

    #[test]
    fn transfer_times_processing_is_scalar() {
        let f = Field::prime(2).unwrap();
        let m = pm(&f, &[&[&[0, 1], &[0, 0, 0, 1]], &[&[], &[0, 0, 0, 0, 1]]]);
        let p = pm(&f, &[&[&[0, 0, 0, 1], &[0, 0, 1]], &[&[], &[1]]]);
        let expected = PolyMatrix::identity(&f, 2).scale(&zpow(&f, 4));
        assert_eq!(m.mul(&p).unwrap(), expected);
    }

    #[test]
    fn rational_inverse_round_trip() {
        let f = Field::prime(3).unwrap();
        let m = pm(&f, &[&[&[1, 1], &[2]], &[&[0, 1], &[1, 0, 1]]]).to_rational();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(&f, 2));
    }
}

/// Sparse tap list of a polynomial matrix, used to filter block sequences
/// `y_t = sum_d x_{t-d} M_d` without building polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFilter {
    field: Field,
    rows: usize,
    cols: usize,
    /// `(row, col, delay, coefficient)`, nonzero coefficients only.
    taps: Vec<(usize, usize, usize, u32)>,
}

impl BlockFilter {
    pub fn new(m: &PolyMatrix) -> Self {
        let mut taps = Vec::new();
        for i in 0..m.rows {
            for j in 0..m.cols {
                for (d, &c) in m.get(i, j).coeffs().iter().enumerate() {
                    if c != 0 {
                        taps.push((i, j, d, c));
                    }
                }
            }
        }
        Self {
            field: m.field.clone(),
            rows: m.rows,
            cols: m.cols,
            taps,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds the filtered `x` into `out`; outputs past `out.len()` are dropped.
    pub fn accumulate(&self, x: &[Vec<u32>], out: &mut [Vec<u32>]) {
        let f = &self.field;
        for (t, block) in x.iter().enumerate() {
            for &(i, j, d, c) in &self.taps {
                let v = block[i];
                if v == 0 || t + d >= out.len() {
                    continue;
                }
                let slot = &mut out[t + d][j];
                *slot = f.add(*slot, f.mul(v, c));
            }
        }
    }

    pub fn apply(&self, x: &[Vec<u32>], out_len: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; self.cols]; out_len];
        self.accumulate(x, &mut out);
        out
    }
}
