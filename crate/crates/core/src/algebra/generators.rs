//! Standard algebras used as inputs and fixtures.

use super::{Algebra, AlgebraError};
use crate::exactfield::{FieldSpec, Scalar};

fn build(field: FieldSpec, dim: usize, table: Vec<Scalar>, unity: Vec<Scalar>) -> Algebra {
    Algebra::from_parts_unchecked(field, dim, table, unity)
        .expect("generator produced a well-shaped table")
}

/// M_n(F) on the row-major basis E_11, E_12, ..., E_nn.
pub fn matrix_algebra(n: usize, field: &FieldSpec) -> Algebra {
    assert!(n >= 1, "matrix size must be positive");
    let d = n * n;
    let mut table = vec![field.zero(); d * d * d];
    // E_ij * E_jl = E_il
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let a = i * n + j;
                let b = j * n + l;
                let c = i * n + l;
                table[(a * d + b) * d + c] = field.one();
            }
        }
    }
    let mut unity = vec![field.zero(); d];
    for i in 0..n {
        unity[i * n + i] = field.one();
    }
    build(field.clone(), d, table, unity)
}

/// A ⊕ B with block-diagonal multiplication.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
    if a.field() != b.field() {
        return Err(AlgebraError::FieldMismatch);
    }
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let d = da + db;
    let mut table = vec![f.zero(); d * d * d];
    for i in 0..da {
        for j in 0..da {
            for k in 0..da {
                table[(i * d + j) * d + k] = a.structure_constant(i, j, k).clone();
            }
        }
    }
    for i in 0..db {
        for j in 0..db {
            for k in 0..db {
                table[((da + i) * d + da + j) * d + da + k] = b.structure_constant(i, j, k).clone();
            }
        }
    }
    let unity = a
        .unity()
        .coords()
        .iter()
        .chain(b.unity().coords())
        .cloned()
        .collect();
    Ok(build(f.clone(), d, table, unity))
}

/// F[C_m] on the basis g^0, ..., g^(m-1).
pub fn group_algebra_cyclic(m: usize, field: &FieldSpec) -> Algebra {
    assert!(m >= 1, "group order must be positive");
    let mut table = vec![field.zero(); m * m * m];
    for i in 0..m {
        for j in 0..m {
            table[(i * m + j) * m + (i + j) % m] = field.one();
        }
    }
    let mut unity = vec![field.zero(); m];
    unity[0] = field.one();
    build(field.clone(), m, table, unity)
}

/// Hamilton's quaternions over Q on the basis 1, i, j, k.
pub fn quaternion_algebra() -> Algebra {
    let q = FieldSpec::rational();
    let mut table = vec![q.zero(); 64];
    // products of basis units: (left, right) -> (sign, result)
    let rules: [(usize, usize, i64, usize); 16] = [
        (0, 0, 1, 0),
        (0, 1, 1, 1),
        (0, 2, 1, 2),
        (0, 3, 1, 3),
        (1, 0, 1, 1),
        (1, 1, -1, 0),
        (1, 2, 1, 3),
        (1, 3, -1, 2),
        (2, 0, 1, 2),
        (2, 1, -1, 3),
        (2, 2, -1, 0),
        (2, 3, 1, 1),
        (3, 0, 1, 3),
        (3, 1, 1, 2),
        (3, 2, -1, 1),
        (3, 3, -1, 0),
    ];
    for (a, b, sign, c) in rules {
        table[(a * 4 + b) * 4 + c] = q.from_i64(sign);
    }
    let unity = vec![q.one(), q.zero(), q.zero(), q.zero()];
    build(q, 4, table, unity)
}

/// F_{p^k} = F_p[t]/(m) as a k-dimensional algebra over F_p, basis 1, t, ..., t^(k-1).
pub fn field_extension_algebra(ext: &FieldSpec) -> Result<Algebra, AlgebraError> {
    let FieldSpec::Extension { p, modulus } = ext else {
        return Err(AlgebraError::FieldMismatch);
    };
    let k = modulus.len() - 1;
    let base = FieldSpec::Prime { p: *p };
    let monomial = |e: usize| {
        let mut c = vec![0u64; k];
        c[e] = 1;
        Scalar::Poly(c.into_boxed_slice())
    };
    let mut table = vec![base.zero(); k * k * k];
    for a in 0..k {
        for b in 0..k {
            let Scalar::Poly(prod) = ext.mul(&monomial(a), &monomial(b)) else {
                unreachable!()
            };
            for (c, &coef) in prod.iter().enumerate() {
                table[(a * k + b) * k + c] = Scalar::Residue(coef);
            }
        }
    }
    let mut unity = vec![base.zero(); k];
    unity[0] = base.one();
    Ok(build(base, k, table, unity))
}

/// A ⊗ B on the basis (a, b) -> a * dim(B) + b.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
    if a.field() != b.field() {
        return Err(AlgebraError::FieldMismatch);
    }
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let mut table = vec![f.zero(); d * d * d];
    for a1 in 0..da {
        for a2 in 0..da {
            for a3 in 0..da {
                let ca = a.structure_constant(a1, a2, a3);
                if f.is_zero(ca) {
                    continue;
                }
                for b1 in 0..db {
                    for b2 in 0..db {
                        for b3 in 0..db {
                            let cb = b.structure_constant(b1, b2, b3);
                            if f.is_zero(cb) {
                                continue;
                            }
                            let (i, j, k) = (a1 * db + b1, a2 * db + b2, a3 * db + b3);
                            table[(i * d + j) * d + k] = f.mul(ca, cb);
                        }
                    }
                }
            }
        }
    }
    let mut unity = vec![f.zero(); d];
    for (x, ux) in a.unity().coords().iter().enumerate() {
        for (y, uy) in b.unity().coords().iter().enumerate() {
            unity[x * db + y] = f.mul(ux, uy);
        }
    }
    Ok(build(f.clone(), d, table, unity))
}

/// M_n(F_{p^k}) viewed as an algebra of dimension n^2 k over F_p.
pub fn matrix_algebra_over_prime_subfield(
    n: usize,
    ext: &FieldSpec,
) -> Result<Algebra, AlgebraError> {
    let ext_alg = field_extension_algebra(ext)?;
    tensor_product(&matrix_algebra(n, ext_alg.field()), &ext_alg)
}
