//! Left ideals: generation, products, and descent to a minimal left ideal.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::algebra::{Algebra, Element};
use crate::exactfield::upoly::{self, matrix_minimal_polynomial, proper_factor};
use crate::exactfield::{projective_vectors, Matrix, Scalar, Subspace};

/// Largest |F|^dim for which a subspace is swept exhaustively.
pub const ENUMERATION_LIMIT: u128 = 1 << 16;
/// Random picks per level when a subspace is too large to sweep.
pub const SAMPLE_COUNT: usize = 64;

/// A subspace closed under left multiplication by the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeftIdeal {
    space: Subspace,
}

impl LeftIdeal {
    pub fn zero(algebra: &Algebra) -> Self {
        LeftIdeal {
            space: Subspace::zero(algebra.field(), algebra.dim()),
        }
    }

    pub fn whole(algebra: &Algebra) -> Self {
        LeftIdeal {
            space: Subspace::full(algebra.field(), algebra.dim()),
        }
    }

    /// Wraps a subspace after checking closure under left multiplication.
    pub fn from_subspace(algebra: &Algebra, space: Subspace) -> Option<Self> {
        is_left_ideal(algebra, &space).then_some(LeftIdeal { space })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn contains(&self, algebra: &Algebra, a: &Element) -> bool {
        self.space.contains(algebra.field(), a.coords())
    }

    /// The canonical RREF basis as elements.
    pub fn basis(&self) -> Vec<Element> {
        self.space
            .basis_vectors()
            .map(|v| Element::new(v.to_vec()))
            .collect()
    }

    pub fn element(&self, algebra: &Algebra, coords: &[Scalar]) -> Element {
        Element::new(self.space.combine(algebra.field(), coords))
    }
}

/// `x_i * v` lies in the space for every basis vector v and every x_i.
pub fn is_left_ideal(algebra: &Algebra, space: &Subspace) -> bool {
    space.basis_vectors().all(|v| {
        let v = Element::new(v.to_vec());
        (0..algebra.dim())
            .all(|i| space.contains(algebra.field(), algebra.basis_mul(i, &v).coords()))
    })
}

/// RS: the smallest left ideal containing `gens`, by repeated sweeps of
/// left multiplication until the span stops growing.
pub fn left_ideal_generated(algebra: &Algebra, gens: &[Element]) -> LeftIdeal {
    let f = algebra.field();
    let mut space = Subspace::span(f, algebra.dim(), gens);
    loop {
        let mut vectors: Vec<Vec<Scalar>> = space.basis_vectors().map(|v| v.to_vec()).collect();
        for v in space.basis_vectors() {
            let v = Element::new(v.to_vec());
            for i in 0..algebra.dim() {
                vectors.push(algebra.basis_mul(i, &v).into_coords());
            }
        }
        let grown = Subspace::span(f, algebra.dim(), &vectors);
        if grown.dim() == space.dim() {
            return LeftIdeal { space };
        }
        space = grown;
    }
}

/// Ra = span{x_i * a}; a single sweep suffices because x_j (x_i a) = (x_j x_i) a.
pub fn principal_left_ideal(algebra: &Algebra, a: &Element) -> LeftIdeal {
    let vectors: Vec<Element> = (0..algebra.dim())
        .map(|i| algebra.basis_mul(i, a))
        .collect();
    LeftIdeal {
        space: Subspace::span(algebra.field(), algebra.dim(), &vectors),
    }
}

/// RaR, closed under multiplication on both sides.
pub fn two_sided_ideal_generated(algebra: &Algebra, a: &Element) -> Subspace {
    let f = algebra.field();
    let d = algebra.dim();
    let mut space = Subspace::span(f, d, std::slice::from_ref(a));
    loop {
        let mut vectors: Vec<Vec<Scalar>> = space.basis_vectors().map(|v| v.to_vec()).collect();
        for v in space.basis_vectors() {
            let v = Element::new(v.to_vec());
            for i in 0..d {
                vectors.push(algebra.basis_mul(i, &v).into_coords());
                vectors.push(algebra.mul_basis(&v, i).into_coords());
            }
        }
        let grown = Subspace::span(f, d, &vectors);
        if grown.dim() == space.dim() {
            return space;
        }
        space = grown;
    }
}

/// IJ = span{u v : u in I, v in J}.
pub fn ideal_product(algebra: &Algebra, i: &LeftIdeal, j: &LeftIdeal) -> LeftIdeal {
    let mut products = Vec::with_capacity(i.dim() * j.dim());
    for u in i.basis() {
        for v in j.basis() {
            products.push(algebra.mul(&u, &v));
        }
    }
    LeftIdeal {
        space: Subspace::span(algebra.field(), algebra.dim(), &products),
    }
}

pub fn is_zero_square(algebra: &Algebra, l: &LeftIdeal) -> bool {
    ideal_product(algebra, l, l).is_zero()
}

/// Outcome of a descent towards a minimal left ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    pub ideal: LeftIdeal,
    /// Dimensions of the successive ideals, strictly decreasing.
    pub trace: Vec<usize>,
    /// True when minimality was checked against every nonzero element.
    pub exhaustive: bool,
}

/// Descends from R to a minimal left ideal with a PRNG seeded by `seed`.
pub fn minimal_left_ideal(algebra: &Algebra, seed: u64) -> Descent {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    descend_from(algebra, LeftIdeal::whole(algebra), &mut rng)
}

/// Repeatedly replaces `start` by a principal left ideal `Ra` it properly
/// contains. Small ideals are swept exhaustively (one representative per
/// scalar line, since R(λa) = Ra); larger ones are probed with their basis
/// vectors followed by [`SAMPLE_COUNT`] random elements.
pub fn descend_from<R: Rng + ?Sized>(algebra: &Algebra, start: LeftIdeal, rng: &mut R) -> Descent {
    let f = algebra.field();
    let mut current = start;
    let mut trace = vec![current.dim()];
    'descend: loop {
        let m = current.dim();
        if m <= 1 {
            return Descent {
                ideal: current,
                trace,
                exhaustive: true,
            };
        }
        let enumerable = f.space_size(m).is_some_and(|n| n <= ENUMERATION_LIMIT);
        let smaller = |a: &Element| {
            let r = principal_left_ideal(algebra, a);
            (r.dim() < m).then_some(r)
        };
        if enumerable {
            for coords in projective_vectors(f, m) {
                if let Some(r) = smaller(&current.element(algebra, &coords)) {
                    current = r;
                    trace.push(current.dim());
                    continue 'descend;
                }
            }
            return Descent {
                ideal: current,
                trace,
                exhaustive: true,
            };
        }
        for a in current.basis() {
            if let Some(r) = smaller(&a) {
                current = r;
                trace.push(current.dim());
                continue 'descend;
            }
        }
        for _ in 0..SAMPLE_COUNT {
            let coords: Vec<Scalar> = (0..m).map(|_| f.sample(rng)).collect();
            let a = current.element(algebra, &coords);
            if algebra.is_zero(&a) {
                continue;
            }
            if let Some(r) =
                smaller(&a).or_else(|| split_by_minimal_polynomial(algebra, &current, &a, rng))
            {
                current = r;
                trace.push(current.dim());
                continue 'descend;
            }
        }
        return Descent {
            ideal: current,
            trace,
            exhaustive: false,
        };
    }
}

/// Evaluates a polynomial at an element, constants mapped through the unity.
pub fn eval_polynomial(algebra: &Algebra, poly: &[Scalar], a: &Element) -> Element {
    poly.iter().rev().fold(algebra.zero(), |acc, c| {
        algebra.add(&algebra.mul(&acc, a), &algebra.scale(c, algebra.unity()))
    })
}

/// Looks for a proper nonzero sub-left-ideal of `l` through the minimal
/// polynomial ν of right multiplication z -> z a on `l`. For a proper
/// factor ν = g h, some basis vector z has w = z g(a) != 0, and w h(a) = 0.
/// If Rw were all of `l` then h(a) would annihilate `l` from the right,
/// contradicting the minimality of ν; so Rw is proper.
fn split_by_minimal_polynomial<R: Rng + ?Sized>(
    algebra: &Algebra,
    l: &LeftIdeal,
    a: &Element,
    rng: &mut R,
) -> Option<LeftIdeal> {
    let f = algebra.field();
    let basis = l.basis();
    let columns: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|z| {
            l.space
                .coordinates(f, algebra.mul(z, a).coords())
                .expect("left ideal closed under multiplication")
        })
        .collect();
    let op = Matrix::from_columns(f, l.dim(), &columns);
    let nu = matrix_minimal_polynomial(f, &op);
    let g = proper_factor(f, &nu, rng)?;
    debug_assert!(upoly::rem(f, &nu, &g).is_empty());
    let ga = eval_polynomial(algebra, &g, a);
    basis.iter().find_map(|z| {
        let w = algebra.mul(z, &ga);
        if algebra.is_zero(&w) {
            return None;
        }
        let r = principal_left_ideal(algebra, &w);
        (r.dim() < l.dim()).then_some(r)
    })
}
