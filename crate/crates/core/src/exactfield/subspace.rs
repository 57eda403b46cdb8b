use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubspaceError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// A linear subspace of F^n held as a canonical RREF basis. Two subspaces
/// are equal iff their bases are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span<V: AsRef<[Scalar]>>(field: &FieldSpec, ambient_dim: usize, vectors: &[V]) -> Self {
        let rows = vectors.iter().map(|v| v.as_ref().to_vec()).collect();
        let r = Matrix::from_rows(ambient_dim, rows).rref(field);
        Subspace {
            ambient_dim,
            basis: r.matrix,
            pivots: r.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        self.basis.row_vectors()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.ambient_dim != other.ambient_dim {
            Err(SubspaceError::AmbientMismatch(
                self.ambient_dim,
                other.ambient_dim,
            ))
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, field: &FieldSpec, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_ambient(other)?;
        let rows: Vec<&[Scalar]> = self.basis_vectors().chain(other.basis_vectors()).collect();
        Ok(Subspace::span(field, self.ambient_dim, &rows))
    }

    /// Coordinates of `v` with respect to the RREF basis, or `None` if `v`
    /// lies outside the subspace.
    pub fn coordinates(&self, field: &FieldSpec, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let coords: Vec<Scalar> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        // v - sum coords_r * row_r must vanish
        let mut residual = v.to_vec();
        for (r, c) in coords.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            for (j, b) in self.basis.row(r).iter().enumerate() {
                if !field.is_zero(b) {
                    residual[j] = field.sub(&residual[j], &field.mul(c, b));
                }
            }
        }
        residual.iter().all(|x| field.is_zero(x)).then_some(coords)
    }

    pub fn contains(&self, field: &FieldSpec, v: &[Scalar]) -> bool {
        self.coordinates(field, v).is_some()
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, field: &FieldSpec, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![field.zero(); self.ambient_dim];
        for (r, c) in coords.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            for (j, b) in self.basis.row(r).iter().enumerate() {
                if !field.is_zero(b) {
                    out[j] = field.mul_add(&out[j], c, b);
                }
            }
        }
        out
    }

    pub fn is_subset(&self, field: &FieldSpec, other: &Subspace) -> Result<bool, SubspaceError> {
        self.check_ambient(other)?;
        Ok(self.dim() <= other.dim() && self.basis_vectors().all(|v| other.contains(field, v)))
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool, SubspaceError> {
        self.check_ambient(other)?;
        Ok(self == other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn vecs(field: &FieldSpec, xs: &[&[i64]]) -> Vec<Vec<Scalar>> {
        xs.iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn examples() {
        let f = f2();
        let u = Subspace::span(&f, 2, &vecs(&f, &[&[1, 0]]));
        let v = Subspace::span(&f, 2, &vecs(&f, &[&[0, 1]]));
        let s = u.sum(&f, &v).unwrap();
        assert_eq!(s, Subspace::full(&f, 2));
        assert!(u.equals(&u).unwrap());
        let diag = Subspace::span(&f, 2, &vecs(&f, &[&[1, 1]]));
        assert!(diag.is_subset(&f, &s).unwrap());
        assert!(!diag.is_subset(&f, &u).unwrap());
        assert!(!u.contains(&f, &vecs(&f, &[&[1, 1]])[0]));
    }

    #[test]
    fn ambient_mismatch() {
        let f = f2();
        let a = Subspace::full(&f, 2);
        let b = Subspace::full(&f, 3);
        assert_eq!(a.sum(&f, &b), Err(SubspaceError::AmbientMismatch(2, 3)));
        assert!(a.is_subset(&f, &b).is_err());
        assert!(a.equals(&b).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let f = FieldSpec::prime(5).unwrap();
        let s = Subspace::span(&f, 4, &vecs(&f, &[&[1, 2, 0, 3], &[0, 1, 1, 1]]));
        let w = vecs(&f, &[&[2, 2, 3, 4]])[0].clone(); // 2*r0 + 3*r1 over F_5
        let c = s.coordinates(&f, &w).unwrap();
        assert_eq!(s.combine(&f, &c), w);
    }

    fn arb_space() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(0i64..3, 6), 0..5)
    }

    proptest! {
        #[test]
        fn sum_is_a_semilattice(a in arb_space(), b in arb_space(), c in arb_space()) {
            let f = FieldSpec::prime(3).unwrap();
            let mk = |x: &Vec<Vec<i64>>| {
                let rows: Vec<Vec<Scalar>> = x.iter()
                    .map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect();
                Subspace::span(&f, 6, &rows)
            };
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(a.sum(&f, &b).unwrap(), b.sum(&f, &a).unwrap());
            prop_assert_eq!(
                a.sum(&f, &b).unwrap().sum(&f, &c).unwrap(),
                a.sum(&f, &b.sum(&f, &c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.sum(&f, &a).unwrap(), a.clone());
            prop_assert!(a.is_subset(&f, &a.sum(&f, &b).unwrap()).unwrap());
        }
    }
}
