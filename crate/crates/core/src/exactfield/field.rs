use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::poly;

/// Largest accepted prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;
/// Largest accepted extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar does not belong to field {0}")]
    FieldMismatch(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("extension degree {0} outside 2..=8")]
    DegreeOutOfRange(usize),
    #[error("modulus must be monic of length deg+1 with coefficients below p")]
    BadModulus,
    #[error("modulus {0:?} is reducible over F_{1}")]
    Reducible(Vec<u64>, u64),
}

/// The base field of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime {
        p: u64,
    },
    /// F_p[t]/(modulus), modulus monic, coefficients low-to-high.
    Extension {
        p: u64,
        modulus: Vec<u64>,
    },
    Rational,
}

/// An element of a [`FieldSpec`], always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Residue(u64),
    Poly(Box<[u64]>),
    Ratio(BigRational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime { p })
    }

    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let deg = modulus.len().saturating_sub(1);
        if !(2..=MAX_EXTENSION_DEGREE).contains(&deg) {
            return Err(FieldError::DegreeOutOfRange(deg));
        }
        if modulus[deg] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus);
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(FieldError::Reducible(modulus, p));
        }
        Ok(FieldSpec::Extension { p, modulus })
    }

    /// Smallest-index monic irreducible of the given degree (little-endian
    /// enumeration of the lower coefficients).
    pub fn default_extension(p: u64, deg: usize) -> Result<Self, FieldError> {
        if !(2..=MAX_EXTENSION_DEGREE).contains(&deg) {
            return Err(FieldError::DegreeOutOfRange(deg));
        }
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let mut idx: u64 = 0;
        loop {
            let mut m = Vec::with_capacity(deg + 1);
            let mut t = idx;
            for _ in 0..deg {
                m.push(t % p);
                t /= p;
            }
            m.push(1);
            if poly::is_irreducible(&m, p) {
                return Ok(FieldSpec::Extension { p, modulus: m });
            }
            idx += 1;
        }
    }

    pub fn rational() -> Self {
        FieldSpec::Rational
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => *p,
            FieldSpec::Rational => 0,
        }
    }

    /// Degree over the prime subfield (1 for prime fields and for Q).
    pub fn degree(&self) -> usize {
        match self {
            FieldSpec::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// Number of elements, or `None` for Q.
    pub fn order(&self) -> Option<u128> {
        match self {
            FieldSpec::Prime { p } => Some(*p as u128),
            FieldSpec::Extension { p, modulus } => {
                Some((*p as u128).pow((modulus.len() - 1) as u32))
            }
            FieldSpec::Rational => None,
        }
    }

    /// |F|^dim, saturating; `None` for Q.
    pub fn space_size(&self, dim: usize) -> Option<u128> {
        let q = self.order()?;
        let mut acc: u128 = 1;
        for _ in 0..dim {
            acc = acc.saturating_mul(q);
        }
        Some(acc)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime { .. } => Scalar::Residue(0),
            FieldSpec::Extension { modulus, .. } => {
                Scalar::Poly(vec![0; modulus.len() - 1].into_boxed_slice())
            }
            FieldSpec::Rational => Scalar::Ratio(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Prime { p } => Scalar::Residue(v.rem_euclid(*p as i64) as u64),
            FieldSpec::Extension { p, modulus } => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = v.rem_euclid(*p as i64) as u64;
                Scalar::Poly(c.into_boxed_slice())
            }
            FieldSpec::Rational => Scalar::Ratio(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Residue(r) => *r == 0,
            Scalar::Poly(c) => c.iter().all(|&x| x == 0),
            Scalar::Ratio(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Residue(r) => *r == 1,
            Scalar::Poly(c) => c[0] == 1 && c[1..].iter().all(|&x| x == 0),
            Scalar::Ratio(q) => q.is_one(),
        }
    }

    /// Checks that `a` is a canonical element of this field.
    pub fn check(&self, a: &Scalar) -> Result<(), FieldError> {
        let ok = match (self, a) {
            (FieldSpec::Prime { p }, Scalar::Residue(r)) => r < p,
            (FieldSpec::Extension { p, modulus }, Scalar::Poly(c)) => {
                c.len() == modulus.len() - 1 && c.iter().all(|x| x < p)
            }
            (FieldSpec::Rational, Scalar::Ratio(q)) => q.denom().is_positive(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.to_string()))
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime { p }, Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(poly::add_mod(*x, *y, *p))
            }
            (FieldSpec::Extension { p, .. }, Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(
                x.iter()
                    .zip(y.iter())
                    .map(|(&u, &v)| poly::add_mod(u, v, *p))
                    .collect(),
            ),
            (FieldSpec::Rational, Scalar::Ratio(x), Scalar::Ratio(y)) => Scalar::Ratio(x + y),
            _ => panic!("scalar/field mismatch in add"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime { p }, Scalar::Residue(x)) => {
                Scalar::Residue(poly::sub_mod(0, *x, *p))
            }
            (FieldSpec::Extension { p, .. }, Scalar::Poly(x)) => {
                Scalar::Poly(x.iter().map(|&u| poly::sub_mod(0, u, *p)).collect())
            }
            (FieldSpec::Rational, Scalar::Ratio(x)) => Scalar::Ratio(-x),
            _ => panic!("scalar/field mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime { p }, Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(poly::sub_mod(*x, *y, *p))
            }
            (FieldSpec::Extension { p, .. }, Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(
                x.iter()
                    .zip(y.iter())
                    .map(|(&u, &v)| poly::sub_mod(u, v, *p))
                    .collect(),
            ),
            (FieldSpec::Rational, Scalar::Ratio(x), Scalar::Ratio(y)) => Scalar::Ratio(x - y),
            _ => panic!("scalar/field mismatch in sub"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime { p }, Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(poly::mul_mod(*x, *y, *p))
            }
            (FieldSpec::Extension { p, modulus }, Scalar::Poly(x), Scalar::Poly(y)) => {
                let deg = modulus.len() - 1;
                let mut prod = vec![0u64; 2 * deg - 1];
                for (i, &u) in x.iter().enumerate() {
                    if u == 0 {
                        continue;
                    }
                    for (j, &v) in y.iter().enumerate() {
                        prod[i + j] = poly::add_mod(prod[i + j], poly::mul_mod(u, v, *p), *p);
                    }
                }
                // reduce by the monic modulus from the top down
                for top in (deg..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (j, &m) in modulus[..deg].iter().enumerate() {
                        let idx = top - deg + j;
                        prod[idx] = poly::sub_mod(prod[idx], poly::mul_mod(c, m, *p), *p);
                    }
                }
                prod.truncate(deg);
                Scalar::Poly(prod.into_boxed_slice())
            }
            (FieldSpec::Rational, Scalar::Ratio(x), Scalar::Ratio(y)) => Scalar::Ratio(x * y),
            _ => panic!("scalar/field mismatch in mul"),
        }
    }

    /// `acc + a * b`.
    pub fn mul_add(&self, acc: &Scalar, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, acc, a, b) {
            (
                FieldSpec::Prime { p },
                Scalar::Residue(s),
                Scalar::Residue(x),
                Scalar::Residue(y),
            ) => Scalar::Residue((s + x * y) % p),
            _ => self.add(acc, &self.mul(a, b)),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (FieldSpec::Prime { p }, Scalar::Residue(x)) => {
                poly::inv_mod(*x, *p).map(Scalar::Residue)
            }
            (FieldSpec::Extension { p, modulus }, Scalar::Poly(x)) => {
                let inv = poly::poly_inverse_mod(x, modulus, *p)?;
                let mut c = vec![0u64; modulus.len() - 1];
                c[..inv.len()].copy_from_slice(&inv);
                Some(Scalar::Poly(c.into_boxed_slice()))
            }
            (FieldSpec::Rational, Scalar::Ratio(x)) => Some(Scalar::Ratio(x.recip())),
            _ => panic!("scalar/field mismatch in inv"),
        }
    }

    pub fn pow(&self, a: &Scalar, mut exp: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Checked arithmetic on two scalars of this field.
    pub fn arith(&self, a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b).ok_or(FieldError::DivisionByZero)?,
        })
    }

    /// The `index`-th element of a finite field, `0 <= index < |F|`.
    /// Index 0 is zero; for extensions the index is read base p, low digit first.
    pub fn element(&self, index: u64) -> Scalar {
        match self {
            FieldSpec::Prime { p } => Scalar::Residue(index % p),
            FieldSpec::Extension { p, modulus } => {
                let mut t = index;
                let c: Vec<u64> = (0..modulus.len() - 1)
                    .map(|_| {
                        let d = t % p;
                        t /= p;
                        d
                    })
                    .collect();
                Scalar::Poly(c.into_boxed_slice())
            }
            FieldSpec::Rational => panic!("Q is not enumerable"),
        }
    }

    /// A random element: uniform for finite fields, an integer in {-2,..,2} over Q.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Prime { p } => Scalar::Residue(rng.random_range(0..*p)),
            FieldSpec::Extension { p, modulus } => Scalar::Poly(
                (0..modulus.len() - 1)
                    .map(|_| rng.random_range(0..*p))
                    .collect(),
            ),
            FieldSpec::Rational => self.from_i64(rng.random_range(-2..=2)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Extension { p, modulus } => {
                write!(f, "F_{p}^{}", modulus.len() - 1)
            }
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue(r) => write!(f, "{r}"),
            Scalar::Poly(c) => {
                write!(f, "[")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Scalar::Ratio(q) => write!(f, "{q}"),
        }
    }
}
