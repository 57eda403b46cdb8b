//! The constructive decomposition R ≅ M_n(D).
//!
//! The pipeline peels off pairwise orthogonal idempotents e_1, ..., e_n
//! with division-ring corners e_i R e_i, working inside the complementary
//! corner (1 - e_1 - ... - e_k) R (1 - e_1 - ... - e_k) at each step. It
//! then connects every e_i to e_1 by elements u_i in e_1 R e_i and v_i in
//! e_i R e_1 with u_i v_i = e_1 and v_i u_i = e_i, completes these to a
//! full set of matrix units, and reads off the isomorphism
//! a -> (e_1i a e_j1)_ij onto n x n matrices over D = e_1 R e_1.
//!
//! Any step may instead expose a pair a, b != 0 with aRb = 0, which is
//! returned as a certificate that R is not prime.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::algebra::{Algebra, Element, Idempotent};
use crate::certify::{self, DivisionRingReport};
use crate::exactfield::upoly::{matrix_minimal_polynomial, proper_factor};
use crate::exactfield::{projective_vectors, Matrix, Scalar, Subspace};
use crate::ideals::{
    descend_from, eval_polynomial, principal_left_ideal, LeftIdeal, ENUMERATION_LIMIT, SAMPLE_COUNT,
};

/// Upper bound on retries (re-descents and fresh PRNG substreams) per decomposition.
pub const MAX_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WedderburnError {
    #[error("corner of the zero idempotent")]
    ZeroCorner,
    #[error("element {0} has no inverse in the corner")]
    NotInvertible(Element),
    #[error("minimality refuted by a sub-left-ideal of dimension {}", .0.dim())]
    MinimalityRefuted(LeftIdeal),
    #[error("no connecting pair: aRb = 0 for a = {}, b = {}", .0.a, .0.b)]
    NoConnector(NotPrimeWitness),
    #[error("connecting pair satisfies uv = e but not vu = f")]
    ConnectorFailed,
    #[error("matrix unit relation fails at ({0},{1},{2},{3})")]
    RelationsFailed(usize, usize, usize, usize),
    #[error("matrix units do not sum to the unity")]
    SumFailed,
    #[error("dimension {dim} is not n^2 * {corner_dim} for n = {n}")]
    DimensionMismatch {
        dim: usize,
        n: usize,
        corner_dim: usize,
    },
}

/// Nonzero a, b with a x_i b = 0 for every basis element x_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotPrimeWitness {
    pub a: Element,
    pub b: Element,
}

/// eRe, presented by its own structure constants with unity e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerAlgebra {
    e: Element,
    basis: Vec<Element>,
    /// d x k, columns are the lifted basis elements.
    embedding: Matrix,
    local: Algebra,
}

impl CornerAlgebra {
    /// Reassembles a corner from stored data; nothing is checked here.
    pub fn from_parts(e: Element, basis: Vec<Element>, local: Algebra) -> Self {
        let columns: Vec<Vec<Scalar>> = basis.iter().map(|b| b.coords().to_vec()).collect();
        let embedding = Matrix::from_columns(local.field(), e.len(), &columns);
        CornerAlgebra {
            e,
            basis,
            embedding,
            local,
        }
    }

    pub fn idempotent(&self) -> &Element {
        &self.e
    }

    pub fn dim(&self) -> usize {
        self.local.dim()
    }

    pub fn local(&self) -> &Algebra {
        &self.local
    }

    pub fn basis_lift(&self) -> &[Element] {
        &self.basis
    }

    /// Parent element with the given local coordinates.
    pub fn lift(&self, local: &Element) -> Element {
        Element::new(self.embedding.apply(self.local.field(), local.coords()))
    }

    /// Local coordinates of a parent element lying in the span of the basis.
    pub fn project(&self, x: &Element) -> Option<Element> {
        self.embedding
            .solve(self.local.field(), x.coords())
            .map(Element::new)
    }
}

pub fn corner_algebra(algebra: &Algebra, e: &Idempotent) -> Result<CornerAlgebra, WedderburnError> {
    let e = e.element();
    if algebra.is_zero(e) {
        return Err(WedderburnError::ZeroCorner);
    }
    let f = algebra.field();
    let spanning: Vec<Element> = (0..algebra.dim())
        .map(|i| algebra.mul(&algebra.mul_basis(e, i), e))
        .collect();
    let span = Subspace::span(f, algebra.dim(), &spanning);
    let basis: Vec<Element> = span
        .basis_vectors()
        .map(|v| Element::new(v.to_vec()))
        .collect();
    let k = basis.len();
    let mut table = Vec::with_capacity(k * k * k);
    for s in &basis {
        for t in &basis {
            let c = span
                .coordinates(f, algebra.mul(s, t).coords())
                .expect("eRe is closed under multiplication");
            table.extend(c);
        }
    }
    let unity = span.coordinates(f, e.coords()).expect("e lies in eRe");
    let local = Algebra::from_parts_unchecked(f.clone(), k, table, unity)
        .expect("corner table has the right shape");
    Ok(CornerAlgebra::from_parts(e.clone(), basis, local))
}

/// Two-sided inverse of a local element of the corner.
pub fn invert_in_corner(corner: &CornerAlgebra, x: &Element) -> Result<Element, WedderburnError> {
    invert_local(corner.local(), x).ok_or_else(|| WedderburnError::NotInvertible(x.clone()))
}

/// Solves w x = 1 in a (local) algebra and checks x w = 1.
fn invert_local(algebra: &Algebra, x: &Element) -> Option<Element> {
    let f = algebra.field();
    let columns: Vec<Vec<Scalar>> = (0..algebra.dim())
        .map(|s| algebra.basis_mul(s, x).into_coords())
        .collect();
    let m = Matrix::from_columns(f, algebra.dim(), &columns);
    let w = Element::new(m.solve(f, algebra.unity().coords())?);
    (algebra.mul(x, &w) == *algebra.unity()).then_some(w)
}

/// Result of extracting an idempotent from a (claimed) minimal left ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalIdealOutcome {
    /// e in L with Re = L.
    Idempotent(Idempotent),
    /// L^2 = 0, so aRb ⊆ aL ⊆ L^2 = 0 for any a, b in L.
    Nilpotent(NotPrimeWitness),
}

/// Finds y in L with Ly != 0 and solves e y = y for e in L. A non-unique or
/// missing solution exposes a smaller nonzero left ideal inside L.
pub fn idempotent_from_minimal_ideal(
    algebra: &Algebra,
    l: &LeftIdeal,
) -> Result<MinimalIdealOutcome, WedderburnError> {
    let f = algebra.field();
    let basis = l.basis();
    assert!(!basis.is_empty(), "minimal left ideal must be nonzero");
    let y = basis
        .iter()
        .find(|y| basis.iter().any(|z| !algebra.is_zero(&algebra.mul(z, y))));
    let Some(y) = y else {
        return Ok(MinimalIdealOutcome::Nilpotent(NotPrimeWitness {
            a: basis[0].clone(),
            b: basis[0].clone(),
        }));
    };
    // columns z_t y for the basis z_t of L
    let columns: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|z| algebra.mul(z, y).into_coords())
        .collect();
    let system = Matrix::from_columns(f, algebra.dim(), &columns);
    let kernel = system.kernel(f);
    if !kernel.is_empty() {
        // J = {z in L : zy = 0} is a nonzero left ideal, proper since Ly != 0
        let j: Vec<Element> = kernel.iter().map(|c| l.element(algebra, c)).collect();
        let j = LeftIdeal::from_subspace(algebra, Subspace::span(f, algebra.dim(), &j))
            .expect("annihilator of y is a left ideal");
        return Err(WedderburnError::MinimalityRefuted(j));
    }
    let Some(coeffs) = system.solve(f, y.coords()) else {
        // y is not in Ly, so Ly is a proper nonzero sub-ideal
        let ly = LeftIdeal::from_subspace(algebra, Subspace::span(f, algebra.dim(), &columns))
            .expect("Ly is a left ideal");
        return Err(WedderburnError::MinimalityRefuted(ly));
    };
    let e = l.element(algebra, &coeffs);
    let re = principal_left_ideal(algebra, &e);
    if re.dim() != l.dim() {
        return Err(WedderburnError::MinimalityRefuted(re));
    }
    let e = Idempotent::new(algebra, e).expect("e^2 - e lies in the zero annihilator");
    Ok(MinimalIdealOutcome::Idempotent(e))
}

/// How a corner was confirmed to be a division ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisionEvidence {
    Exhaustive,
    Sampled,
}

/// Inverts every nonzero element of a small corner (one per scalar line),
/// or the basis and [`SAMPLE_COUNT`] samples of a large one. Sampled
/// elements over finite fields must also have an irreducible minimal
/// polynomial; a proper factor g yields the zero divisor g(x). Returns a
/// non-invertible local element on failure.
fn confirm_division<R: Rng + ?Sized>(
    local: &Algebra,
    rng: &mut R,
) -> Result<DivisionEvidence, Element> {
    let f = local.field();
    let k = local.dim();
    let basis_elem = |coords: &[Scalar]| Element::new(coords.to_vec());
    if f.space_size(k).is_some_and(|n| n <= ENUMERATION_LIMIT) {
        for coords in projective_vectors(f, k) {
            let x = basis_elem(&coords);
            if invert_local(local, &x).is_none() {
                return Err(x);
            }
        }
        return Ok(DivisionEvidence::Exhaustive);
    }
    let samples: Vec<Element> = (0..k)
        .map(|i| local.basis_element(i))
        .chain((0..SAMPLE_COUNT).map(|_| Element::new((0..k).map(|_| f.sample(rng)).collect())))
        .filter(|x| !local.is_zero(x))
        .collect();
    for x in samples {
        if invert_local(local, &x).is_none() {
            return Err(x);
        }
        if f.order().is_some() {
            let columns: Vec<Vec<Scalar>> = (0..k)
                .map(|s| local.basis_mul(s, &x).into_coords())
                .collect();
            // right multiplication by x has the same minimal polynomial as x
            let op = Matrix::from_columns(f, k, &columns);
            let mu = matrix_minimal_polynomial(f, &op);
            if let Some(g) = proper_factor(f, &mu, rng) {
                return Err(eval_polynomial(local, &g, &x));
            }
        }
    }
    Ok(DivisionEvidence::Sampled)
}

/// Retry accounting shared by every stage of one decomposition.
#[derive(Debug, Clone)]
pub struct RetryBudget {
    used: usize,
    limit: usize,
    last_reason: String,
}

impl RetryBudget {
    pub fn new(limit: usize) -> Self {
        RetryBudget {
            used: 0,
            limit,
            last_reason: String::new(),
        }
    }

    pub fn used(&self) -> usize {
        self.used
    }

    fn spend(&mut self, reason: impl fmt::Display) -> Result<(), Failure> {
        self.used += 1;
        self.last_reason = reason.to_string();
        if self.used >= self.limit {
            Err(Failure::Exhausted)
        } else {
            Ok(())
        }
    }
}

/// Why a pipeline stage stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    NotPrime(NotPrimeWitness),
    /// The attempt failed in a way a fresh PRNG substream may avoid.
    Retry(String),
    Exhausted,
}

/// Successful peel: orthogonal idempotents summing to 1 with division corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peel {
    pub idempotents: Vec<Idempotent>,
    /// dim R(1 - e_1 - ... - e_k) for k = 0..=n, strictly decreasing to 0.
    pub complement_dims: Vec<usize>,
    pub evidence: Vec<DivisionEvidence>,
}

/// Finds an idempotent e of `local` with eRe a division ring.
fn division_idempotent<R: Rng + ?Sized>(
    local: &Algebra,
    rng: &mut R,
    budget: &mut RetryBudget,
) -> Result<(Element, DivisionEvidence), Failure> {
    let mut start = LeftIdeal::whole(local);
    loop {
        let descent = descend_from(local, start, rng);
        match idempotent_from_minimal_ideal(local, &descent.ideal) {
            Ok(MinimalIdealOutcome::Nilpotent(w)) => return Err(Failure::NotPrime(w)),
            Err(WedderburnError::MinimalityRefuted(smaller)) => {
                budget.spend("minimality refuted while solving ey = y")?;
                start = smaller;
            }
            Err(other) => return Err(Failure::Retry(other.to_string())),
            Ok(MinimalIdealOutcome::Idempotent(e)) => {
                let corner =
                    corner_algebra(local, &e).map_err(|x| Failure::Retry(x.to_string()))?;
                match confirm_division(corner.local(), rng) {
                    Ok(evidence) => return Ok((e.into_element(), evidence)),
                    Err(x) => {
                        budget.spend("corner is not a division ring")?;
                        let x = corner.lift(&x);
                        let rx = principal_left_ideal(local, &x);
                        start = if rx.dim() < descent.ideal.dim() {
                            rx
                        } else {
                            LeftIdeal::whole(local)
                        };
                    }
                }
            }
        }
    }
}

/// Peels orthogonal idempotents with division-ring corners until they sum to 1.
pub fn peel_idempotents(algebra: &Algebra, seed: u64) -> Result<Peel, Failure> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut budget = RetryBudget::new(MAX_RETRIES);
    peel_with(algebra, &mut rng, &mut budget)
}

fn peel_with<R: Rng + ?Sized>(
    algebra: &Algebra,
    rng: &mut R,
    budget: &mut RetryBudget,
) -> Result<Peel, Failure> {
    let mut remaining = algebra.unity().clone();
    let mut idempotents: Vec<Idempotent> = Vec::new();
    let mut evidence = Vec::new();
    let mut complement_dims = vec![principal_left_ideal(algebra, &remaining).dim()];
    while !algebra.is_zero(&remaining) {
        let g = Idempotent::new(algebra, remaining.clone()).expect("complement of idempotents");
        let corner = corner_algebra(algebra, &g).expect("nonzero complement");
        let (e_local, ev) = match division_idempotent(corner.local(), rng, budget) {
            Ok(found) => found,
            Err(Failure::NotPrime(w)) => {
                // corner elements are parent elements; re-check against the parent
                let lifted = NotPrimeWitness {
                    a: corner.lift(&w.a),
                    b: corner.lift(&w.b),
                };
                if certify::verify_not_prime_witness(algebra, &lifted.a, &lifted.b).passed() {
                    return Err(Failure::NotPrime(lifted));
                }
                return Err(Failure::Retry("lifted witness failed in the parent".into()));
            }
            Err(other) => return Err(other),
        };
        let e = corner.lift(&e_local);
        let orthogonal = idempotents.iter().all(|prev| {
            algebra.is_zero(&algebra.mul(prev.element(), &e))
                && algebra.is_zero(&algebra.mul(&e, prev.element()))
        });
        let e = Idempotent::new(algebra, e).filter(|_| orthogonal);
        let Some(e) = e else {
            return Err(Failure::Retry(
                "peeled element not an orthogonal idempotent".into(),
            ));
        };
        remaining = algebra.sub(&remaining, e.element());
        let dim = principal_left_ideal(algebra, &remaining).dim();
        if dim >= *complement_dims.last().unwrap() {
            return Err(Failure::Retry("complement ideal did not shrink".into()));
        }
        complement_dims.push(dim);
        idempotents.push(e);
        evidence.push(ev);
    }
    Ok(Peel {
        idempotents,
        complement_dims,
        evidence,
    })
}

/// u in eRf and v in fRe with uv = e and vu = f.
pub fn connecting_pair(
    algebra: &Algebra,
    e: &Idempotent,
    f: &Idempotent,
) -> Result<(Element, Element), WedderburnError> {
    let (e, f) = (e.element(), f.element());
    let d = algebra.dim();
    let e_x_f: Vec<Element> = (0..d)
        .map(|i| algebra.mul(&algebra.mul_basis(e, i), f))
        .collect();
    let found = e_x_f.iter().find_map(|u| {
        if algebra.is_zero(u) {
            return None;
        }
        (0..d).find_map(|j| {
            let w = algebra.mul(&algebra.mul_basis(u, j), e);
            (!algebra.is_zero(&w)).then(|| (u.clone(), j, w))
        })
    });
    let Some((u, j, w)) = found else {
        // eRf fRe = 0
        let witness = match e_x_f.iter().find(|u| !algebra.is_zero(u)) {
            None => NotPrimeWitness {
                a: e.clone(),
                b: f.clone(),
            },
            Some(u) => NotPrimeWitness {
                a: u.clone(),
                b: e.clone(),
            },
        };
        return Err(WedderburnError::NoConnector(witness));
    };
    let e_idem = Idempotent::new(algebra, e.clone()).expect("e is idempotent");
    let corner = corner_algebra(algebra, &e_idem)?;
    let w_local = corner.project(&w).expect("eafbe lies in eRe");
    let c = corner.lift(&invert_in_corner(&corner, &w_local)?);
    let v = algebra.mul(&algebra.mul(&algebra.mul_basis(f, j), e), &c);
    if algebra.mul(&u, &v) != *e || algebra.mul(&v, &u) != *f {
        return Err(WedderburnError::ConnectorFailed);
    }
    Ok((u, v))
}

/// A full n x n grid of matrix units e_ij.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixUnits {
    units: Vec<Vec<Element>>,
}

impl MatrixUnits {
    pub fn from_grid(units: Vec<Vec<Element>>) -> Self {
        MatrixUnits { units }
    }

    pub fn n(&self) -> usize {
        self.units.len()
    }

    /// e_ij with 0-based indices.
    pub fn unit(&self, i: usize, j: usize) -> &Element {
        &self.units[i][j]
    }

    pub fn grid(&self) -> &[Vec<Element>] {
        &self.units
    }
}

/// Completes e_ii, e_1i = u_i, e_i1 = v_i to all e_ij = e_i1 e_1j and checks
/// every relation e_ij e_kl = δ_jk e_il together with Σ e_ii = 1.
pub fn complete_matrix_units(
    algebra: &Algebra,
    idempotents: &[Idempotent],
    pairs: &[(Element, Element)],
) -> Result<MatrixUnits, WedderburnError> {
    let n = idempotents.len();
    assert_eq!(
        pairs.len() + 1,
        n,
        "one connecting pair per idempotent after the first"
    );
    let e1 = idempotents[0].element().clone();
    let first_row: Vec<Element> = std::iter::once(e1.clone())
        .chain(pairs.iter().map(|(u, _)| u.clone()))
        .collect();
    let first_col: Vec<Element> = std::iter::once(e1)
        .chain(pairs.iter().map(|(_, v)| v.clone()))
        .collect();
    let units: Vec<Vec<Element>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| algebra.mul(&first_col[i], &first_row[j]))
                .collect()
        })
        .collect();
    for (i, e) in idempotents.iter().enumerate() {
        if &units[i][i] != e.element() {
            return Err(WedderburnError::RelationsFailed(i, i, i, i));
        }
    }
    let zero = algebra.zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let prod = algebra.mul(&units[i][j], &units[k][l]);
                    let expected = if j == k { &units[i][l] } else { &zero };
                    if &prod != expected {
                        return Err(WedderburnError::RelationsFailed(i, j, k, l));
                    }
                }
            }
        }
    }
    let sum = (0..n).fold(algebra.zero(), |acc, i| algebra.add(&acc, &units[i][i]));
    if &sum != algebra.unity() {
        return Err(WedderburnError::SumFailed);
    }
    Ok(MatrixUnits { units })
}

/// a -> (e_1i a e_j1)_ij from R onto M_n(D), D = e_11 R e_11, with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    n: usize,
    corner: CornerAlgebra,
    /// (n^2 k) x d; row (i n + j) k + t holds coordinate t of entry (i, j).
    forward: Matrix,
    /// d x (n^2 k); column (i n + j) k + t is e_i1 b_t e_1j.
    backward: Matrix,
}

impl Isomorphism {
    pub fn from_parts(n: usize, corner: CornerAlgebra, forward: Matrix, backward: Matrix) -> Self {
        Isomorphism {
            n,
            corner,
            forward,
            backward,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn corner(&self) -> &CornerAlgebra {
        &self.corner
    }

    pub fn forward_matrix(&self) -> &Matrix {
        &self.forward
    }

    pub fn backward_matrix(&self) -> &Matrix {
        &self.backward
    }

    /// Image of `a` as an n x n grid of local corner elements.
    pub fn forward(&self, a: &Element) -> Vec<Vec<Element>> {
        let f = self.corner.local().field();
        let flat = self.forward.apply(f, a.coords());
        let k = self.corner.dim();
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let start = (i * self.n + j) * k;
                        Element::new(flat[start..start + k].to_vec())
                    })
                    .collect()
            })
            .collect()
    }

    pub fn backward(&self, grid: &[Vec<Element>]) -> Element {
        let f = self.corner.local().field();
        let flat: Vec<Scalar> = grid
            .iter()
            .flat_map(|row| row.iter().flat_map(|x| x.coords().to_vec()))
            .collect();
        Element::new(self.backward.apply(f, &flat))
    }
}

pub fn build_isomorphism(
    algebra: &Algebra,
    units: &MatrixUnits,
) -> Result<Isomorphism, WedderburnError> {
    let f = algebra.field();
    let n = units.n();
    let e11 = Idempotent::new(algebra, units.unit(0, 0).clone())
        .ok_or(WedderburnError::RelationsFailed(0, 0, 0, 0))?;
    let corner = corner_algebra(algebra, &e11)?;
    let k = corner.dim();
    let d = algebra.dim();
    if d != n * n * k {
        return Err(WedderburnError::DimensionMismatch {
            dim: d,
            n,
            corner_dim: k,
        });
    }
    let mut columns = Vec::with_capacity(d);
    for c in 0..d {
        let x = algebra.basis_element(c);
        let mut col = Vec::with_capacity(n * n * k);
        for i in 0..n {
            for j in 0..n {
                let entry = algebra.mul(&algebra.mul(units.unit(0, i), &x), units.unit(j, 0));
                let local = corner
                    .project(&entry)
                    .expect("e_1i a e_j1 lies in e_11 R e_11");
                col.extend(local.into_coords());
            }
        }
        columns.push(col);
    }
    let forward = Matrix::from_columns(f, n * n * k, &columns);
    let basis = corner.basis_lift();
    let mut back_columns = Vec::with_capacity(n * n * k);
    for i in 0..n {
        for j in 0..n {
            for b in basis {
                back_columns.push(
                    algebra
                        .mul(&algebra.mul(units.unit(i, 0), b), units.unit(0, j))
                        .into_coords(),
                );
            }
        }
    }
    let backward = Matrix::from_columns(f, d, &back_columns);
    Ok(Isomorphism {
        n,
        corner,
        forward,
        backward,
    })
}

/// Everything produced for a prime algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub idempotents: Vec<Element>,
    pub units: MatrixUnits,
    pub isomorphism: Isomorphism,
    pub division: DivisionRingReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Decomposed(Box<Decomposition>),
    NotPrime(NotPrimeWitness),
}

/// Retries ran out before a certified answer was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconclusive {
    pub retries: usize,
    pub last_reason: String,
}

impl fmt::Display for Inconclusive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "inconclusive after {} retries: {}",
            self.retries, self.last_reason
        )
    }
}

/// PRNG substream `index` of `seed`: the seeded generator advanced by
/// `index` jumps of 2^128 steps.
pub fn substream(seed: u64, index: usize) -> Xoshiro256PlusPlus {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    for _ in 0..index {
        rng.jump();
    }
    rng
}

/// Decomposes a validated algebra. The returned certificate has already
/// passed [`certify::verify_certificate`].
pub fn decompose(algebra: &Algebra, seed: u64) -> Result<Certificate, Inconclusive> {
    let mut budget = RetryBudget::new(MAX_RETRIES);
    let mut attempt = 0;
    loop {
        let mut rng = substream(seed, attempt);
        let outcome = attempt_decomposition(algebra, seed, &mut rng, &mut budget);
        let reason = match outcome {
            Ok(cert) => {
                let report = certify::verify_certificate(algebra, &cert);
                if report.passed() {
                    return Ok(cert);
                }
                format!("certificate rejected: {}", report.summary())
            }
            Err(Failure::Retry(reason)) => reason,
            Err(Failure::Exhausted) => budget.last_reason.clone(),
            Err(Failure::NotPrime(_)) => unreachable!("not-prime outcomes become certificates"),
        };
        if budget.spend(reason).is_err() || budget.used() >= MAX_RETRIES {
            return Err(Inconclusive {
                retries: MAX_RETRIES,
                last_reason: budget.last_reason,
            });
        }
        attempt += 1;
    }
}

fn attempt_decomposition<R: Rng + ?Sized>(
    algebra: &Algebra,
    seed: u64,
    rng: &mut R,
    budget: &mut RetryBudget,
) -> Result<Certificate, Failure> {
    let peel = match peel_with(algebra, rng, budget) {
        Ok(p) => p,
        Err(Failure::NotPrime(w)) => return Ok(Certificate::NotPrime(w)),
        Err(other) => return Err(other),
    };
    let e1 = &peel.idempotents[0];
    let mut pairs = Vec::with_capacity(peel.idempotents.len() - 1);
    for ei in &peel.idempotents[1..] {
        match connecting_pair(algebra, e1, ei) {
            Ok(pair) => pairs.push(pair),
            Err(WedderburnError::NoConnector(w)) => return Ok(Certificate::NotPrime(w)),
            Err(other) => return Err(Failure::Retry(other.to_string())),
        }
    }
    let units = complete_matrix_units(algebra, &peel.idempotents, &pairs)
        .map_err(|e| Failure::Retry(e.to_string()))?;
    let isomorphism =
        build_isomorphism(algebra, &units).map_err(|e| Failure::Retry(e.to_string()))?;
    let division = certify::verify_division_ring(isomorphism.corner().local(), seed);
    if !division.report.passed() {
        return Err(Failure::Retry(
            "final corner failed the division-ring check".into(),
        ));
    }
    Ok(Certificate::Decomposed(Box::new(Decomposition {
        idempotents: peel
            .idempotents
            .into_iter()
            .map(Idempotent::into_element)
            .collect(),
        units,
        isomorphism,
        division,
    })))
}
