//! Finite-dimensional associative unital algebras presented by structure
//! constants: `x_i * x_j = sum_k c[i][j][k] x_k`.

mod basis;
mod generators;

use std::fmt;

use rayon::prelude::*;

use crate::exactfield::{FieldSpec, Matrix, Scalar};

pub use basis::{change_of_basis, random_invertible, scramble, transport_element};
pub use generators::{
    direct_sum, field_extension_algebra, group_algebra_cyclic, matrix_algebra,
    matrix_algebra_over_prime_subfield, quaternion_algebra, tensor_product,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("algebras are over different fields")]
    FieldMismatch,
    #[error("not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no unity exists")]
    NoUnity,
    #[error("stored unity differs from the computed unity")]
    WrongUnity,
    #[error("change-of-basis matrix is singular")]
    SingularMatrix,
    #[error("algebra dimension must be at least 1")]
    Empty,
    #[error("invalid scalar in structure data: {0}")]
    BadScalar(String),
}

/// A ring element as its coordinate vector in the algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element(coords)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl AsRef<[Scalar]> for Element {
    fn as_ref(&self) -> &[Scalar] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// An element known to satisfy `e * e = e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Idempotent(Element);

impl Idempotent {
    pub fn new(algebra: &Algebra, e: Element) -> Option<Self> {
        (algebra.mul(&e, &e) == e).then_some(Idempotent(e))
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }
}

/// One failed check from [`Algebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationFailure {
    NotAssociative(usize, usize, usize),
    NoUnity,
    WrongUnity { computed: Element },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The first failure as an error, if any.
    pub fn into_result(self) -> Result<(), AlgebraError> {
        match self.failures.into_iter().next() {
            None => Ok(()),
            Some(ValidationFailure::NotAssociative(i, j, k)) => {
                Err(AlgebraError::NotAssociative(i, j, k))
            }
            Some(ValidationFailure::NoUnity) => Err(AlgebraError::NoUnity),
            Some(ValidationFailure::WrongUnity { .. }) => Err(AlgebraError::WrongUnity),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    /// Dense tensor, index `(i * dim + j) * dim + k`.
    table: Vec<Scalar>,
    /// Nonzero entries of each product x_i * x_j, index `i * dim + j`.
    sparse: Vec<Vec<(usize, Scalar)>>,
    unity: Element,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.table == other.table
            && self.unity == other.unity
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Builds and fully validates an algebra with a stored unity.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        table: Vec<Scalar>,
        unity: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let a = Self::from_parts_unchecked(field, dim, table, unity)?;
        a.validate().into_result()?;
        Ok(a)
    }

    /// Builds an algebra from a table alone, computing its unity.
    pub fn from_table(
        field: FieldSpec,
        dim: usize,
        table: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let zero = vec![field.zero(); dim];
        let mut a = Self::from_parts_unchecked(field, dim, table, zero)?;
        let report = a.associativity_failures();
        if let Some(&(i, j, k)) = report.first() {
            return Err(AlgebraError::NotAssociative(i, j, k));
        }
        a.unity = a.find_unity().ok_or(AlgebraError::NoUnity)?;
        Ok(a)
    }

    /// Shape and scalar checks only; no associativity or unity validation.
    pub fn from_parts_unchecked(
        field: FieldSpec,
        dim: usize,
        table: Vec<Scalar>,
        unity: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::Empty);
        }
        if table.len() != dim * dim * dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim * dim * dim,
                found: table.len(),
            });
        }
        if unity.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: unity.len(),
            });
        }
        for s in table.iter().chain(unity.iter()) {
            field
                .check(s)
                .map_err(|e| AlgebraError::BadScalar(e.to_string()))?;
        }
        let sparse = table
            .chunks(dim)
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !field.is_zero(c))
                    .map(|(k, c)| (k, c.clone()))
                    .collect()
            })
            .collect();
        Ok(Algebra {
            field,
            dim,
            table,
            sparse,
            unity: Element(unity),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant c[i][j][k].
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn table(&self) -> &[Scalar] {
        &self.table
    }

    pub fn unity(&self) -> &Element {
        &self.unity
    }

    pub fn zero(&self) -> Element {
        Element(vec![self.field.zero(); self.dim])
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        Element(v)
    }

    /// Element with small-integer coordinates, mapped into the field.
    pub fn element_from_ints(&self, coords: &[i64]) -> Element {
        assert_eq!(coords.len(), self.dim);
        Element(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        a.0.iter().all(|x| self.field.is_zero(x))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.field.add(x, y))
                .collect(),
        )
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        Element(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.field.sub(x, y))
                .collect(),
        )
    }

    pub fn neg(&self, a: &Element) -> Element {
        Element(a.0.iter().map(|x| self.field.neg(x)).collect())
    }

    pub fn scale(&self, s: &Scalar, a: &Element) -> Element {
        Element(a.0.iter().map(|x| self.field.mul(s, x)).collect())
    }

    /// Product of basis elements x_i * x_j as an element.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let start = (i * self.dim + j) * self.dim;
        Element(self.table[start..start + self.dim].to_vec())
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        debug_assert_eq!(a.len(), self.dim);
        debug_assert_eq!(b.len(), self.dim);
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, ai) in a.0.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let entries = &self.sparse[i * self.dim + j];
                if entries.is_empty() {
                    continue;
                }
                let t = f.mul(ai, bj);
                for (k, c) in entries {
                    out[*k] = f.mul_add(&out[*k], &t, c);
                }
            }
        }
        Element(out)
    }

    pub fn checked_mul(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        for x in [a, b] {
            if x.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.dim,
                    found: x.len(),
                });
            }
        }
        Ok(self.mul(a, b))
    }

    /// x_i * a
    pub fn basis_mul(&self, i: usize, a: &Element) -> Element {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (j, aj) in a.0.iter().enumerate() {
            if f.is_zero(aj) {
                continue;
            }
            for (k, c) in &self.sparse[i * self.dim + j] {
                out[*k] = f.mul_add(&out[*k], aj, c);
            }
        }
        Element(out)
    }

    /// a * x_j
    pub fn mul_basis(&self, a: &Element, j: usize) -> Element {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, ai) in a.0.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (k, c) in &self.sparse[i * self.dim + j] {
                out[*k] = f.mul_add(&out[*k], ai, c);
            }
        }
        Element(out)
    }

    /// a * b * c
    pub fn mul3(&self, a: &Element, b: &Element, c: &Element) -> Element {
        self.mul(&self.mul(a, b), c)
    }

    /// Linear combination sum coeffs[t] * elems[t].
    pub fn combine<E: AsRef<[Scalar]>>(&self, coeffs: &[Scalar], elems: &[E]) -> Element {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (c, e) in coeffs.iter().zip(elems) {
            if f.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(e.as_ref()) {
                if !f.is_zero(x) {
                    *o = f.mul_add(o, c, x);
                }
            }
        }
        Element(out)
    }

    fn associativity_failures(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim;
        (0..d)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut bad = Vec::new();
                for j in 0..d {
                    let xij = self.basis_product(i, j);
                    for k in 0..d {
                        let left = self.mul_basis(&xij, k);
                        let right = self.basis_mul(i, &self.basis_product(j, k));
                        if left != right {
                            bad.push((i, j, k));
                        }
                    }
                }
                bad
            })
            .collect()
    }

    /// Exhaustive check of associativity on basis triples and of the
    /// stored unity against the one recomputed from the table.
    pub fn validate(&self) -> ValidationReport {
        let mut failures: Vec<ValidationFailure> = self
            .associativity_failures()
            .into_iter()
            .map(|(i, j, k)| ValidationFailure::NotAssociative(i, j, k))
            .collect();
        match self.find_unity() {
            None => failures.push(ValidationFailure::NoUnity),
            Some(u) if u != self.unity => {
                failures.push(ValidationFailure::WrongUnity { computed: u })
            }
            Some(_) => {}
        }
        ValidationReport { failures }
    }

    /// Solves u * x_i = x_i = x_i * u for all i.
    pub fn find_unity(&self) -> Option<Element> {
        let d = self.dim;
        let f = &self.field;
        // unknown u_m; equation rows indexed by (side, i, k)
        let mut a = Matrix::zeros(f, 2 * d * d, d);
        let mut rhs = vec![f.zero(); 2 * d * d];
        for i in 0..d {
            for k in 0..d {
                let r_left = i * d + k;
                let r_right = d * d + i * d + k;
                for m in 0..d {
                    a[(r_left, m)] = self.structure_constant(m, i, k).clone();
                    a[(r_right, m)] = self.structure_constant(i, m, k).clone();
                }
                if i == k {
                    rhs[r_left] = f.one();
                    rhs[r_right] = f.one();
                }
            }
        }
        a.solve(f, &rhs).map(Element)
    }

    pub fn is_idempotent(&self, e: &Element) -> bool {
        &self.mul(e, e) == e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    /// index of E_ij (1-based) in the row-major basis of M_n
    fn e(n: usize, i: usize, j: usize) -> usize {
        (i - 1) * n + (j - 1)
    }

    #[test]
    fn matrix_unit_product() {
        let a = matrix_algebra(2, &f2());
        let p = a.mul(&a.basis_element(e(2, 1, 2)), &a.basis_element(e(2, 2, 1)));
        assert_eq!(p, a.basis_element(e(2, 1, 1)));
        let x = a.element_from_ints(&[1, 1, 0, 1]);
        assert_eq!(a.mul(a.unity(), &x), x);
        assert_eq!(a.mul(&x, a.unity()), x);
    }

    #[test]
    fn group_algebra_nilpotent() {
        let a = group_algebra_cyclic(2, &f2());
        let s = a.element_from_ints(&[1, 1]);
        assert!(a.is_zero(&a.mul(&s, &s)));
    }

    #[test]
    fn validate_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(matrix_algebra(2, &f3).validate().passed());

        let zero =
            Algebra::from_parts_unchecked(f2(), 1, vec![f2().zero()], vec![f2().one()]).unwrap();
        assert_eq!(zero.validate().failures, vec![ValidationFailure::NoUnity]);

        // zero out every x_0 * x_1 constant (E_11 * E_12) in M_2(F_2)
        let m = matrix_algebra(2, &f2());
        let mut table = m.table().to_vec();
        for slot in &mut table[4..8] {
            *slot = f2().zero();
        }
        let bad =
            Algebra::from_parts_unchecked(f2(), 4, table, m.unity().coords().to_vec()).unwrap();
        let report = bad.validate();
        let triple = report
            .failures
            .iter()
            .find_map(|f| match f {
                ValidationFailure::NotAssociative(i, j, k) => Some((*i, *j, *k)),
                _ => None,
            })
            .expect("associativity failure reported");
        // recompute both association orders independently for the witness
        let (i, j, k) = triple;
        let x = |t| bad.basis_element(t);
        assert_ne!(
            bad.mul(&bad.mul(&x(i), &x(j)), &x(k)),
            bad.mul(&x(i), &bad.mul(&x(j), &x(k)))
        );
        assert!(matches!(
            bad.validate().into_result(),
            Err(AlgebraError::NotAssociative(..))
        ));
    }

    #[test]
    fn wrong_unity_detected() {
        let m = matrix_algebra(2, &f2());
        let r = Algebra::new(
            f2(),
            4,
            m.table().to_vec(),
            m.element_from_ints(&[1, 0, 0, 0]).into_coords(),
        );
        assert_eq!(r.unwrap_err(), AlgebraError::WrongUnity);
    }

    #[test]
    fn find_unity_examples() {
        for n in 1..=3 {
            for q in [2u64, 3] {
                let f = FieldSpec::prime(q).unwrap();
                let a = matrix_algebra(n, &f);
                let mut expected = a.zero().into_coords();
                for i in 0..n {
                    expected[i * n + i] = f.one();
                }
                assert_eq!(a.find_unity(), Some(Element::new(expected)));
            }
        }
        // span{E_12}: the only product is zero
        let z =
            Algebra::from_parts_unchecked(f2(), 1, vec![f2().zero()], vec![f2().zero()]).unwrap();
        assert_eq!(z.find_unity(), None);
        let f4 = field_extension_algebra(&FieldSpec::extension(2, vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(f4.find_unity(), Some(f4.element_from_ints(&[1, 0])));
    }

    #[test]
    fn checked_mul_rejects_wrong_length() {
        let a = matrix_algebra(2, &f2());
        let short = Element::new(vec![f2().one()]);
        assert_eq!(
            a.checked_mul(&short, a.unity()),
            Err(AlgebraError::DimensionMismatch {
                expected: 4,
                found: 1
            })
        );
    }

    #[test]
    fn from_table_computes_unity() {
        let m = matrix_algebra(2, &FieldSpec::prime(5).unwrap());
        let a = Algebra::from_table(m.field().clone(), 4, m.table().to_vec()).unwrap();
        assert_eq!(a, m);
    }

    proptest! {
        #[test]
        fn mul_is_bilinear(a in prop::collection::vec(0i64..3, 9), a2 in prop::collection::vec(0i64..3, 9),
                           b in prop::collection::vec(0i64..3, 9), s in 0i64..3) {
            let f = FieldSpec::prime(3).unwrap();
            let alg = matrix_algebra(3, &f);
            let (a, a2, b) = (alg.element_from_ints(&a), alg.element_from_ints(&a2), alg.element_from_ints(&b));
            let s = f.from_i64(s);
            prop_assert_eq!(alg.mul(&alg.add(&a, &a2), &b), alg.add(&alg.mul(&a, &b), &alg.mul(&a2, &b)));
            prop_assert_eq!(alg.mul(&b, &alg.add(&a, &a2)), alg.add(&alg.mul(&b, &a), &alg.mul(&b, &a2)));
            prop_assert_eq!(alg.mul(&alg.scale(&s, &a), &b), alg.scale(&s, &alg.mul(&a, &b)));
            prop_assert_eq!(alg.mul(&a, &alg.scale(&s, &b)), alg.scale(&s, &alg.mul(&a, &b)));
        }
    }
}
