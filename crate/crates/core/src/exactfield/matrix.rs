use super::field::{FieldSpec, Scalar};

/// Dense row-major matrix of scalars. The field is supplied by the caller
/// on every operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    /// Nonzero rows of the reduced row-echelon form.
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: &FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, field: &FieldSpec, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !field.is_zero(b) {
                        out[(i, j)] = field.mul_add(&out[(i, j)], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, field: &FieldSpec, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.mul_add(&acc, a, b))
            })
            .collect()
    }

    pub fn is_zero(&self, field: &FieldSpec) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    pub fn rref(&self, field: &FieldSpec) -> Rref {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(field, self.cols);
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    /// Gauss-Jordan elimination restricted to pivots in the first
    /// `pivot_cols` columns. Rows are reordered so that the pivot rows come
    /// first; returns the pivot columns.
    fn reduce_in_place(&mut self, field: &FieldSpec, pivot_cols: usize) -> Vec<usize> {
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(found) = (r..self.rows).find(|&i| !field.is_zero(&self[(i, c)])) else {
                continue;
            };
            if found != r {
                for j in 0..cols {
                    self.data.swap(r * cols + j, found * cols + j);
                }
            }
            let inv = field.inv(&self[(r, c)]).unwrap();
            for j in c..cols {
                self[(r, j)] = field.mul(&self[(r, j)], &inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)].clone();
                if field.is_zero(&factor) {
                    continue;
                }
                for j in c..cols {
                    let t = field.mul(&factor, &self[(r, j)]);
                    self[(i, j)] = field.sub(&self[(i, j)], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// One solution of `self * x = b`, free variables set to zero, or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, field: &FieldSpec, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Matrix::zeros(field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.reduce_in_place(field, self.cols);
        let rank = pivots.len();
        if (rank..self.rows).any(|i| !field.is_zero(&aug[(i, self.cols)])) {
            return None;
        }
        let mut x = vec![field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the right null space {x : self * x = 0}.
    pub fn kernel(&self, field: &FieldSpec) -> Vec<Vec<Scalar>> {
        let red = self.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &c in &red.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![field.zero(); self.cols];
                x[free] = field.one();
                for (r, &pc) in red.pivots.iter().enumerate() {
                    x[pc] = field.neg(&red.matrix[(r, free)]);
                }
                x
            })
            .collect()
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        self.rref(field).rank
    }

    pub fn inverse(&self, field: &FieldSpec) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = field.one();
        }
        let pivots = aug.reduce_in_place(field, n);
        if pivots.len() < n {
            return None;
        }
        let mut out = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn m(field: &FieldSpec, rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    fn v(field: &FieldSpec, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let f3 = fp(3);
        let id = Matrix::identity(&f3, 2);
        let r = id.rref(&f3);
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let f2 = fp(2);
        let r = m(&f2, &[&[1, 1], &[1, 1]]).rref(&f2);
        assert_eq!(r.matrix, m(&f2, &[&[1, 1]]));
        assert_eq!(r.rank, 1);

        let f5 = fp(5);
        let r = m(&f5, &[&[0, 1], &[1, 0]]).rref(&f5);
        assert_eq!(r.matrix, Matrix::identity(&f5, 2));
    }

    #[test]
    fn solve_examples() {
        let f7 = fp(7);
        let b = v(&f7, &[3, 5, 6]);
        assert_eq!(Matrix::identity(&f7, 3).solve(&f7, &b), Some(b));

        let q = FieldSpec::rational();
        assert_eq!(m(&q, &[&[1, 1], &[2, 2]]).solve(&q, &v(&q, &[1, 3])), None);

        let f2 = fp(2);
        assert_eq!(
            m(&f2, &[&[1, 1]]).solve(&f2, &v(&f2, &[1])),
            Some(v(&f2, &[1, 0]))
        );
    }

    #[test]
    fn kernel_and_inverse() {
        let q = FieldSpec::rational();
        let a = m(&q, &[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel(&q);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(a.apply(&q, x).iter().all(|s| q.is_zero(s)));
        }
        let p = m(&q, &[&[2, 1], &[1, 1]]);
        let pi = p.inverse(&q).unwrap();
        assert_eq!(p.mul(&q, &pi), Matrix::identity(&q, 2));
        assert!(m(&q, &[&[1, 1], &[1, 1]]).inverse(&q).is_none());
        assert_eq!(
            pi[(0, 0)],
            Scalar::Ratio(BigRational::from_integer(1.into()))
        );
    }

    fn arb_matrix() -> impl Strategy<Value = (u64, Vec<Vec<i64>>)> {
        (
            prop::sample::select(vec![2u64, 3, 5, 0]),
            1usize..6,
            1usize..6,
        )
            .prop_flat_map(|(p, r, c)| {
                (
                    Just(p),
                    prop::collection::vec(prop::collection::vec(-3i64..4, c), r),
                )
            })
    }

    fn field_of(p: u64) -> FieldSpec {
        if p == 0 {
            FieldSpec::rational()
        } else {
            fp(p)
        }
    }

    proptest! {
        #[test]
        fn rref_is_idempotent((p, rows) in arb_matrix()) {
            let f = field_of(p);
            let a = Matrix::from_rows(rows[0].len(),
                rows.iter().map(|r| v(&f, r)).collect());
            let once = a.rref(&f);
            prop_assert_eq!(once.matrix.rref(&f), once.clone());
            prop_assert_eq!(once.rank, once.pivots.len());
        }

        #[test]
        fn solutions_are_exact((p, rows) in arb_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
            let f = field_of(p);
            let a = Matrix::from_rows(rows[0].len(),
                rows.iter().map(|r| v(&f, r)).collect());
            // a right-hand side known to be consistent
            let x0 = v(&f, &seed[..a.cols()]);
            let b = a.apply(&f, &x0);
            let x = a.solve(&f, &b).expect("consistent system");
            prop_assert_eq!(a.apply(&f, &x), b);
        }
    }
}
