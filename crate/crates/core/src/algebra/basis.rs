use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use super::{Algebra, AlgebraError, Element};
use crate::exactfield::{FieldSpec, Matrix};

/// Re-presents `a` on the basis y_i = sum_j P[i][j] x_j.
///
/// Coordinates transform by `beta = P^{-T} alpha`, which makes the
/// coordinate map an isomorphism onto the returned algebra.
pub fn change_of_basis(a: &Algebra, p: &Matrix) -> Result<Algebra, AlgebraError> {
    let d = a.dim();
    let f = a.field();
    if p.rows() != d || p.cols() != d {
        return Err(AlgebraError::DimensionMismatch {
            expected: d,
            found: p.rows().max(p.cols()),
        });
    }
    let q = p.inverse(f).ok_or(AlgebraError::SingularMatrix)?;

    // y_a * y_b = sum_{i,j} P[a][i] P[b][j] x_i x_j, expressed in the x basis
    let mut in_x = vec![f.zero(); d * d * d];
    for ya in 0..d {
        let left = Element::new(p.row(ya).to_vec());
        for yb in 0..d {
            let right = Element::new(p.row(yb).to_vec());
            let prod = a.mul(&left, &right);
            in_x[(ya * d + yb) * d..(ya * d + yb + 1) * d].clone_from_slice(prod.coords());
        }
    }
    // x_k = sum_l Q[k][l] y_l
    let mut table = vec![f.zero(); d * d * d];
    for ab in 0..d * d {
        for k in 0..d {
            let c = &in_x[ab * d + k];
            if f.is_zero(c) {
                continue;
            }
            for l in 0..d {
                let slot = &mut table[ab * d + l];
                *slot = f.mul_add(slot, c, &q[(k, l)]);
            }
        }
    }
    let unity = q.transpose().apply(f, a.unity().coords());
    Algebra::from_parts_unchecked(f.clone(), d, table, unity)
}

/// Coordinates, on the basis defined by `p`, of an element given on the original basis.
pub fn transport_element(field: &FieldSpec, p: &Matrix, a: &Element) -> Option<Element> {
    p.transpose().solve(field, a.coords()).map(Element::new)
}

/// Rejection-samples uniformly random matrices until one is invertible.
pub fn random_invertible<R: Rng + ?Sized>(field: &FieldSpec, n: usize, rng: &mut R) -> Matrix {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| field.sample(rng)).collect())
            .collect();
        let m = Matrix::from_rows(n, rows);
        if m.rank(field) == n {
            return m;
        }
    }
}

/// Applies a seeded random change of basis; returns the new algebra and P.
pub fn scramble(a: &Algebra, seed: u64) -> (Algebra, Matrix) {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let p = random_invertible(a.field(), a.dim(), &mut rng);
    let scrambled = change_of_basis(a, &p).expect("sampled matrix is invertible");
    (scrambled, p)
}
