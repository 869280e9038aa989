use std::fmt;

use super::{AlgebraError, Field, Polynomial};

/// An element of `F_q(z)` kept in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(Self::zero(&field));
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lead = field.inv(den.leading()).expect("nonzero leading coefficient");
        Ok(Self {
            num: num.scale(lead),
            den: den.scale(lead),
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.field());
        Self { num: p, den }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(Polynomial::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(Polynomial::one(field))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// A polynomial, i.e. denominator one.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_one().then_some(&self.num)
    }

    /// Realizable iff the denominator does not vanish at `z = 0`.
    pub fn is_realizable(&self) -> bool {
        self.den.coeff(0) != 0
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        Self::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&rhs.inv()?))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
