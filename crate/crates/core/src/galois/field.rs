use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// Largest field order for which arithmetic tables are built.
pub const MAX_FIELD_ORDER: u32 = 1024;

/// Description of a finite field `F_q` with `q = p^m`.
///
/// Extension fields are given as `F_p[x] / (f(x))` for a monic irreducible
/// `f` of degree `m`; the modulus is stored low-order coefficient first and is
/// empty for prime fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
    extension_degree: u32,
    modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Self {
            characteristic: p,
            extension_degree: 1,
            modulus: Vec::new(),
        })
    }

    /// An extension of degree `m` over `F_p` with the given modulus
    /// (coefficients of `x^0 .. x^m`).
    pub fn extension(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if m == 0 {
            return Err(AlgebraError::InvalidModulus("extension degree must be positive".into()));
        }
        if m == 1 && modulus.is_empty() {
            return Self::prime(p);
        }
        if modulus.len() != m as usize + 1 {
            return Err(AlgebraError::InvalidModulus(format!(
                "expected {} coefficients for a degree {m} modulus, got {}",
                m + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::InvalidModulus(format!(
                "coefficients must lie in 0..{p}"
            )));
        }
        if modulus[m as usize] != 1 {
            return Err(AlgebraError::InvalidModulus("modulus must be monic".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(AlgebraError::InvalidModulus(format!(
                "{modulus:?} is reducible over F_{p}"
            )));
        }
        if m == 1 {
            return Self::prime(p);
        }
        Ok(Self {
            characteristic: p,
            extension_degree: m,
            modulus,
        })
    }

    /// Prime fields of any supported order plus the built-in extension
    /// fields `F_4`, `F_8` and `F_9`.
    pub fn builtin(q: u32) -> Result<Self, AlgebraError> {
        match q {
            4 => Self::extension(2, 2, vec![1, 1, 1]),
            8 => Self::extension(2, 3, vec![1, 1, 0, 1]),
            9 => Self::extension(3, 2, vec![1, 0, 1]),
            _ if is_prime(q) => Self::prime(q),
            _ => Err(AlgebraError::NoBuiltinField(q)),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn extension_degree(&self) -> u32 {
        self.extension_degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        (self.characteristic as u64).pow(self.extension_degree)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.extension_degree == 1 {
            write!(f, "F_{}", self.characteristic)
        } else {
            write!(f, "F_{}", self.order())
        }
    }
}

struct Tables {
    spec: FieldSpec,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// A finite field with precomputed arithmetic tables.
///
/// Elements are the integers `0..q`; for extension fields the integer's base-`p`
/// digits are the coefficients of the residue polynomial. `0` and `1` are the
/// additive and multiplicative identities in every field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self, AlgebraError> {
        let order = spec.order();
        if order > MAX_FIELD_ORDER as u64 {
            return Err(AlgebraError::FieldTooLarge(order));
        }
        let q = order as u32;
        let p = spec.characteristic;
        let digits = |mut v: u32| -> Vec<u32> {
            let mut d = vec![0; spec.extension_degree as usize];
            for slot in d.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            d
        };
        let undigits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);

        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum);
                let prod = if spec.extension_degree == 1 {
                    ((a as u64 * b as u64) % p as u64) as u32
                } else {
                    undigits(&mul_mod(p, &da, &db, &spec.modulus))
                };
                mul[(a * q + b) as usize] = prod;
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b;
                }
                if a != 0 && mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        Ok(Field(Arc::new(Tables {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
        })))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self, AlgebraError> {
        Self::new(FieldSpec::prime(p)?)
    }

    /// See [`FieldSpec::builtin`].
    pub fn builtin(q: u32) -> Result<Self, AlgebraError> {
        Self::new(FieldSpec::builtin(q)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.characteristic
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.0.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add[(a * self.0.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul[(a * self.0.q + b) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.0.inv[a as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// Reduces a signed integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.characteristic() as i64) as u32
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, AlgebraError> {
        if !self.contains(value) {
            return Err(AlgebraError::OutOfRange {
                value,
                order: self.order(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.spec)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0.spec, f)
    }
}

/// A field element tagged with its field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn apply(&self, op: FieldOp, rhs: &FieldElement) -> Result<FieldElement, AlgebraError> {
        field_arith(self, rhs, op)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Checked arithmetic on two tagged field elements.
pub fn field_arith(
    a: &FieldElement,
    b: &FieldElement,
    op: FieldOp,
) -> Result<FieldElement, AlgebraError> {
    if a.field != b.field {
        return Err(AlgebraError::FieldMismatch);
    }
    let f = &a.field;
    let value = match op {
        FieldOp::Add => f.add(a.value, b.value),
        FieldOp::Sub => f.sub(a.value, b.value),
        FieldOp::Mul => f.mul(a.value, b.value),
        FieldOp::Div => f.div(a.value, b.value).ok_or(AlgebraError::DivisionByZero)?,
    };
    Ok(FieldElement {
        field: f.clone(),
        value,
    })
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Product of two residues modulo a monic `modulus` over `F_p`.
fn mul_mod(p: u32, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (k, &mc) in modulus.iter().enumerate() {
            let idx = deg - m + k;
            prod[idx] = (prod[idx] + (p - c) * mc) % p;
        }
    }
    prod.truncate(m);
    prod
}

/// Trial division by every monic polynomial of degree `1..=deg/2` over `F_p`.
fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                g.push((v % p as u64) as u32);
                v /= p as u64;
            }
            g.push(1);
            if remainder_is_zero(p, f, &g) {
                return false;
            }
        }
    }
    true
}

fn remainder_is_zero(p: u32, f: &[u32], g: &[u32]) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for deg in (dg..r.len()).rev() {
        let c = r[deg];
        if c == 0 {
            continue;
        }
        for (k, &gc) in g.iter().enumerate() {
            let idx = deg - dg + k;
            r[idx] = (r[idx] + (p - c) * gc) % p;
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}
