use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, Field, FieldElement};

/// A polynomial in `z` over a finite field, coefficients indexed by power.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient list and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<u32>,
}

impl Polynomial {
    pub fn zero(field: &Field) -> Self {
        Self {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: &Field, c: u32) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// `c * z^degree`.
    pub fn monomial(field: &Field, c: u32, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(field, coeffs)
    }

    /// The indeterminate `z`.
    pub fn z(field: &Field) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// Builds a polynomial from low-order-first coefficients.
    ///
    /// Panics if a coefficient is not an element of `field`.
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<u32>) -> Self {
        assert!(
            coeffs.iter().all(|&c| field.contains(c)),
            "coefficient outside {field}"
        );
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `z^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Largest `d` with `z^d` dividing `self`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// True for `c * z^d` with `c != 0`.
    pub fn is_monomial(&self) -> bool {
        self.weight() == 1
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        Self::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Divides by `z^k`; the caller guarantees `z^k` divides `self`.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|&c| c == 0));
        Self::from_coeffs(&self.field, self.coeffs.iter().skip(k).copied().collect())
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval_at(&self, x: &FieldElement) -> Result<FieldElement, AlgebraError> {
        if x.field() != &self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        self.field.element(self.eval(x.value()))
    }

    /// Euclidean division, `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        self.check_field(divisor);
        let f = &self.field;
        let lead_inv = f
            .inv(divisor.leading())
            .ok_or(AlgebraError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - dd];
        for deg in (dd..rem.len()).rev() {
            let c = rem[deg];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[deg - dd] = factor;
            for (k, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = deg - dd + k;
                rem[idx] = f.sub(rem[idx], f.mul(factor, dc));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(f, quot), Self::from_coeffs(f, rem)))
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        self.check_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic gcd of a collection; zero if every entry is zero.
    pub fn gcd_all<'a, I: IntoIterator<Item = &'a Polynomial>>(field: &Field, items: I) -> Self {
        items
            .into_iter()
            .fold(Self::zero(field), |acc, p| acc.gcd(p))
    }

    fn check_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "polynomials over different fields ({} vs {})",
            self.field,
            other.field
        );
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivMod,
    Gcd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyResult {
    Poly(Polynomial),
    Pair(Polynomial, Polynomial),
}

/// Checked polynomial arithmetic entry point; reports field mismatch and
/// division by the zero polynomial as errors instead of panicking.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: PolyOp) -> Result<PolyResult, AlgebraError> {
    if a.field != b.field {
        return Err(AlgebraError::FieldMismatch);
    }
    Ok(match op {
        PolyOp::Add => PolyResult::Poly(a + b),
        PolyOp::Mul => PolyResult::Poly(a * b),
        PolyOp::DivMod => {
            let (q, r) = a.div_rem(b)?;
            PolyResult::Pair(q, r)
        }
        PolyOp::Gcd => PolyResult::Poly(a.gcd(b)),
    })
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_field(rhs);
        let f = &self.field;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Polynomial::from_coeffs(f, coeffs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_field(rhs);
        let f = &self.field;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Polynomial::from_coeffs(f, coeffs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(f);
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Polynomial::from_coeffs(f, coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let f = &self.field;
        Polynomial::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &'a Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Orders by degree, then by coefficients from the highest power down.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("z")?,
                (1, _) => write!(f, "{c}*z")?,
                (_, 1) => write!(f, "z^{i}")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
