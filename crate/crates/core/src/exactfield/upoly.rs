//! Univariate polynomials over any [`FieldSpec`], as coefficient vectors
//! low-to-high with no trailing zeros. Used for minimal polynomials and
//! for splitting them (squarefree part, distinct- and equal-degree
//! factorization over finite fields, rational roots over Q).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;

pub type Poly = Vec<Scalar>;

pub fn trim(field: &FieldSpec, mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(a: &[Scalar]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let out = (0..n)
        .map(|i| field.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, out)
}

pub fn sub(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let out = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, out)
}

pub fn mul(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.mul_add(&out[i + j], x, y);
        }
    }
    trim(field, out)
}

pub fn divrem(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    let b = trim(field, b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = trim(field, a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = field.inv(b.last().unwrap()).unwrap();
    let mut quot = vec![field.zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = field.mul(rem.last().unwrap(), &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] = field.sub(&rem[shift + j], &field.mul(&c, bj));
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(field, rem);
    }
    (trim(field, quot), rem)
}

pub fn rem(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Poly {
    divrem(field, a, b).1
}

pub fn monic(field: &FieldSpec, a: Poly) -> Poly {
    match a.last() {
        None => a,
        Some(lead) => {
            let inv = field.inv(lead).unwrap();
            a.iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}

pub fn gcd(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Poly {
    let mut a = trim(field, a.to_vec());
    let mut b = trim(field, b.to_vec());
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, a)
}

pub fn derivative(field: &FieldSpec, a: &[Scalar]) -> Poly {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(&field.from_i64(i as i64), c))
        .collect();
    trim(field, out)
}

fn mulmod(field: &FieldSpec, a: &[Scalar], b: &[Scalar], m: &[Scalar]) -> Poly {
    rem(field, &mul(field, a, b), m)
}

pub fn pow_mod(field: &FieldSpec, base: &[Scalar], exp: &BigUint, m: &[Scalar]) -> Poly {
    let mut acc = rem(field, &[field.one()], m);
    let b = rem(field, base, m);
    for i in (0..exp.bits()).rev() {
        acc = mulmod(field, &acc, &acc, m);
        if exp.bit(i) {
            acc = mulmod(field, &acc, &b, m);
        }
    }
    acc
}

/// a^q mod m, computed as k successive p-th powers.
fn frobenius_mod(field: &FieldSpec, a: &[Scalar], m: &[Scalar]) -> Poly {
    let p = BigUint::from(field.characteristic());
    let mut out = a.to_vec();
    for _ in 0..field.degree() {
        out = pow_mod(field, &out, &p, m);
    }
    out
}

fn x_poly(field: &FieldSpec) -> Poly {
    vec![field.zero(), field.one()]
}

/// Irreducibility over a finite field (Ben-Or); `None` over Q.
pub fn is_irreducible(field: &FieldSpec, f: &[Scalar]) -> Option<bool> {
    field.order()?;
    let f = monic(field, trim(field, f.to_vec()));
    let n = match degree(&f) {
        None | Some(0) => return Some(false),
        Some(n) => n,
    };
    let x = x_poly(field);
    let mut h = rem(field, &x, &f);
    for _ in 0..n / 2 {
        h = frobenius_mod(field, &h, &f);
        if degree(&gcd(field, &sub(field, &h, &x), &f)) != Some(0) {
            return Some(false);
        }
    }
    Some(true)
}

/// Inverse of the Frobenius c -> c^p on a finite field: c^(q/p).
fn pth_root(field: &FieldSpec, c: &Scalar) -> Scalar {
    let p = field.characteristic();
    let mut out = c.clone();
    for _ in 1..field.degree() {
        out = field.pow(&out, p);
    }
    out
}

/// A monic factor of `f` of degree strictly between 0 and deg f, if one is
/// found. Complete over finite fields (the equal-degree split is
/// randomized and retried); over Q only repeated factors and small
/// rational roots are detected.
pub fn proper_factor<R: Rng + ?Sized>(
    field: &FieldSpec,
    f: &[Scalar],
    rng: &mut R,
) -> Option<Poly> {
    let f = monic(field, trim(field, f.to_vec()));
    let n = degree(&f)?;
    if n < 2 {
        return None;
    }
    let is_proper = |g: &Poly| degree(g).is_some_and(|d| d > 0 && d < n);
    let df = derivative(field, &f);
    if df.is_empty() {
        // f = h(x^p) = (h~)^p over a perfect field
        let p = field.characteristic() as usize;
        let root: Poly = f.iter().step_by(p).map(|c| pth_root(field, c)).collect();
        return Some(monic(field, root));
    }
    let g = gcd(field, &f, &df);
    if is_proper(&g) {
        return Some(g);
    }
    if field.order().is_none() {
        return rational_root(field, &f).map(|r| vec![field.neg(&r), field.one()]);
    }
    // distinct-degree split
    let x = x_poly(field);
    let mut h = rem(field, &x, &f);
    for i in 1..=n / 2 {
        h = frobenius_mod(field, &h, &f);
        let g = gcd(field, &sub(field, &h, &x), &f);
        if is_proper(&g) {
            return Some(g);
        }
        if degree(&g) == Some(n) {
            return equal_degree_split(field, &f, i, rng);
        }
    }
    None
}

/// Cantor-Zassenhaus split of a squarefree `f` whose irreducible factors all have degree `i`.
fn equal_degree_split<R: Rng + ?Sized>(
    field: &FieldSpec,
    f: &[Scalar],
    i: usize,
    rng: &mut R,
) -> Option<Poly> {
    let n = f.len() - 1;
    let q = BigUint::from(field.order()?);
    let qi = q.pow(i as u32);
    let p = field.characteristic();
    for _ in 0..64 {
        let b: Poly = trim(field, (0..n).map(|_| field.sample(rng)).collect());
        if degree(&b).is_none_or(|d| d == 0) {
            continue;
        }
        let g = gcd(field, &b, f);
        if degree(&g).is_some_and(|d| d > 0 && d < n) {
            return Some(g);
        }
        let t = if p == 2 {
            // trace b + b^2 + ... + b^(2^(k i - 1))
            let two = BigUint::from(2u32);
            let mut term = rem(field, &b, f);
            let mut acc = term.clone();
            for _ in 1..field.degree() * i {
                term = pow_mod(field, &term, &two, f);
                acc = add(field, &acc, &term);
            }
            acc
        } else {
            let e: BigUint = (&qi - 1u32) >> 1;
            sub(field, &pow_mod(field, &b, &e, f), &[field.one()])
        };
        let g = gcd(field, &t, f);
        if degree(&g).is_some_and(|d| d > 0 && d < n) {
            return Some(g);
        }
    }
    None
}

const RATIONAL_ROOT_BOUND: u64 = 1_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > RATIONAL_ROOT_BOUND {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// A rational root of `f` by the rational root theorem, when the cleared
/// integer coefficients are small enough to enumerate divisors.
fn rational_root(field: &FieldSpec, f: &[Scalar]) -> Option<Scalar> {
    let ratios: Vec<&num_rational::BigRational> = f
        .iter()
        .map(|c| match c {
            Scalar::Ratio(r) => r,
            _ => unreachable!("rational root search over Q only"),
        })
        .collect();
    if ratios[0].is_zero() {
        return Some(field.zero());
    }
    let lcm = ratios
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = ratios
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    let num_divs = divisors(&ints[0])?;
    let den_divs = divisors(ints.last().unwrap())?;
    for &a in &num_divs {
        for &b in &den_divs {
            for sign in [1i64, -1] {
                let cand = Scalar::Ratio(num_rational::BigRational::new(
                    BigInt::from(a) * sign,
                    BigInt::from(b),
                ));
                if field.is_zero(&eval(field, f, &cand)) {
                    return Some(cand);
                }
            }
        }
    }
    None
}

pub fn eval(field: &FieldSpec, f: &[Scalar], x: &Scalar) -> Scalar {
    f.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// Minimal polynomial (monic) of a sequence of vectors v_0, v_1, ... where
/// `next` produces v_{i+1} from v_i: the first linear dependency
/// v_j = sum_{i<j} c_i v_i gives x^j - sum c_i x^i.
pub fn krylov_minimal_polynomial(
    field: &FieldSpec,
    start: Vec<Scalar>,
    max_degree: usize,
    mut next: impl FnMut(&[Scalar]) -> Vec<Scalar>,
) -> Poly {
    let len = start.len();
    let mut powers = vec![start];
    for j in 1..=max_degree + 1 {
        let v = next(powers.last().unwrap());
        let a = Matrix::from_columns(field, len, &powers);
        if let Some(c) = a.solve(field, &v) {
            let mut poly: Poly = c.iter().map(|x| field.neg(x)).collect();
            poly.push(field.one());
            debug_assert_eq!(poly.len(), j + 1);
            return poly;
        }
        powers.push(v);
    }
    unreachable!(
        "sequence in a space of dimension {len} has no dependency within {max_degree} steps"
    )
}

/// Minimal polynomial of a square matrix.
pub fn matrix_minimal_polynomial(field: &FieldSpec, m: &Matrix) -> Poly {
    let n = m.rows();
    let flat = |a: &Matrix| -> Vec<Scalar> { (0..n).flat_map(|i| a.row(i).to_vec()).collect() };
    let unflat = |v: &[Scalar]| Matrix::from_rows(n, v.chunks(n).map(|c| c.to_vec()).collect());
    krylov_minimal_polynomial(field, flat(&Matrix::identity(field, n)), n, |v| {
        flat(&unflat(v).mul(field, m))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn p(field: &FieldSpec, xs: &[i64]) -> Poly {
        trim(field, xs.iter().map(|&x| field.from_i64(x)).collect())
    }

    #[test]
    fn division_identity() {
        let f = FieldSpec::prime(7).unwrap();
        let a = p(&f, &[3, 1, 4, 1, 5]);
        let b = p(&f, &[2, 6, 1]);
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn irreducibility_over_f4() {
        let f4 = FieldSpec::extension(2, vec![1, 1, 1]).unwrap();
        let t = Scalar::Poly(vec![0, 1].into());
        // x^2 + x + t is irreducible over F_4; x^2 + x + 1 splits
        let g = vec![t, f4.one(), f4.one()];
        assert_eq!(is_irreducible(&f4, &g), Some(true));
        assert_eq!(is_irreducible(&f4, &p(&f4, &[1, 1, 1])), Some(false));
        assert_eq!(is_irreducible(&FieldSpec::rational(), &[]), None);
    }

    #[test]
    fn factors_found() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(0);
        let f = FieldSpec::prime(101).unwrap();
        // (x - 3)(x - 5) needs the equal-degree split
        let split = p(&f, &[15, -8, 1]);
        let g = proper_factor(&f, &split, &mut rng).unwrap();
        assert!(rem(&f, &split, &g).is_empty());
        assert_eq!(degree(&g), Some(1));
        // x^2 + 1 is irreducible mod 103 (103 = 3 mod 4)
        let f103 = FieldSpec::prime(103).unwrap();
        assert_eq!(proper_factor(&f103, &p(&f103, &[1, 0, 1]), &mut rng), None);
        // (x^2 + 1)(x^2 + 2) over F_3: both irreducible, equal degree
        let f3 = FieldSpec::prime(3).unwrap();
        let quartic = mul(&f3, &p(&f3, &[1, 0, 1]), &p(&f3, &[2, 0, 1]));
        let g = proper_factor(&f3, &quartic, &mut rng).unwrap();
        assert_eq!(degree(&g), Some(2));
        // x^2 over F_2 has zero derivative
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(
            proper_factor(&f2, &p(&f2, &[1, 0, 1]), &mut rng),
            Some(p(&f2, &[1, 1]))
        );
        // over Q: x^2 - 4 has rational roots, x^2 + 1 does not
        let q = FieldSpec::rational();
        let g = proper_factor(&q, &p(&q, &[-4, 0, 1]), &mut rng).unwrap();
        assert!(rem(&q, &p(&q, &[-4, 0, 1]), &g).is_empty());
        assert_eq!(proper_factor(&q, &p(&q, &[1, 0, 1]), &mut rng), None);
    }

    #[test]
    fn even_characteristic_split() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(3);
        let f16 = FieldSpec::default_extension(2, 4).unwrap();
        // x (x + 1) lies in the trace-split branch after the distinct-degree step
        let g = proper_factor(&f16, &p(&f16, &[0, 1, 1]), &mut rng).unwrap();
        assert_eq!(degree(&g), Some(1));
    }

    #[test]
    fn matrix_minpoly() {
        let f = FieldSpec::prime(5).unwrap();
        let m = Matrix::from_rows(
            2,
            vec![
                vec![f.from_i64(0), f.from_i64(1)],
                vec![f.from_i64(1), f.from_i64(0)],
            ],
        );
        assert_eq!(matrix_minimal_polynomial(&f, &m), p(&f, &[-1, 0, 1]));
        let id = Matrix::identity(&f, 3);
        assert_eq!(matrix_minimal_polynomial(&f, &id), p(&f, &[-1, 1]));
    }
}
