//! Exact arithmetic over `F_q`, `F_q[z]`, `F_q(z)` and small matrices over them.

mod field;
mod matrix;
mod poly;
mod rational;

pub use field::{field_arith, Field, FieldElement, FieldOp, FieldSpec, MAX_FIELD_ORDER};
pub use matrix::{
    BlockFilter,
    det_adjoint, mat_mul, rank_over_fq_z, Entry, FieldMatrix, Matrix, PolyMatrix, RationalMatrix,
};
pub use poly::{poly_arith, PolyOp, PolyResult, Polynomial};
pub use rational::RationalFunction;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("no built-in field of order {0}")]
    NoBuiltinField(u32),
    #[error("field order {0} exceeds the supported maximum")]
    FieldTooLarge(u64),
    #[error("value {value} is not an element of a field of order {order}")]
    OutOfRange { value: u32, order: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("rows have different lengths")]
    Ragged,
    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// Parses sparse polynomial text such as `1+z^2`, `2*z^3+z` or `2z+1`.
///
/// Coefficients are field element indices (`0..q`); repeated powers add up.
pub fn parse_polynomial(field: &Field, text: &str) -> Result<Polynomial, AlgebraError> {
    let err = |reason: &str| AlgebraError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty"));
    }
    let mut coeffs: Vec<u32> = Vec::new();
    for term in compact.split('+') {
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let (coef_text, power) = match term.find('z') {
            None => (term, 0usize),
            Some(pos) => {
                let coef = term[..pos].trim_end_matches('*');
                let rest = &term[pos + 1..];
                let power = if rest.is_empty() {
                    1
                } else if let Some(exp) = rest.strip_prefix('^') {
                    exp.parse().map_err(|_| err("bad exponent"))?
                } else {
                    return Err(err("unexpected text after z"));
                };
                (if coef.is_empty() { "1" } else { coef }, power)
            }
        };
        let c: u32 = coef_text.parse().map_err(|_| err("bad coefficient"))?;
        if !field.contains(c) {
            return Err(err(&format!("coefficient {c} not in {field}")));
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = field.add(coeffs[power], c);
    }
    Ok(Polynomial::from_coeffs(field, coeffs))
}
