//! Independent checks of decomposition results.
//!
//! Nothing here reuses the search logic of the pipeline: every check goes
//! back to the defining identities, evaluated with the parent algebra's
//! multiplication or the stored corner table.

use std::collections::HashSet;
use std::fmt;

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::algebra::{Algebra, Element};
use crate::exactfield::{all_vectors, Matrix, Scalar, Subspace};
use crate::ideals::{
    ideal_product, principal_left_ideal, LeftIdeal, ENUMERATION_LIMIT, SAMPLE_COUNT,
};
use crate::wedderburn::{Certificate, Isomorphism};

/// Largest |F|^dim the prime-equivalence probe will enumerate.
pub const PROBE_LIMIT: u128 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First counterexample, when the check failed.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line naming the failed checks, or "ok".
    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .failures()
            .map(|c| match &c.witness {
                Some(w) => format!("{} ({w})", c.name),
                None => c.name.clone(),
            })
            .collect();
        if failed.is_empty() {
            "ok".into()
        } else {
            failed.join("; ")
        }
    }

    pub fn record(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{status} {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisionMode {
    Exhaustive,
    Sampled,
}

impl fmt::Display for DivisionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivisionMode::Exhaustive => "exhaustive",
            DivisionMode::Sampled => "sampled",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionRingReport {
    pub report: Report,
    pub mode: DivisionMode,
    pub commutative: bool,
}

/// e_ij e_kl = δ_jk e_il for all indices, and Σ e_ii = 1.
pub fn verify_matrix_units(algebra: &Algebra, grid: &[Vec<Element>]) -> Report {
    let mut report = Report::default();
    let n = grid.len();
    let d = algebra.dim();
    let shape = grid
        .iter()
        .enumerate()
        .find_map(|(i, row)| {
            if row.len() != n {
                return Some(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                ));
            }
            row.iter().position(|x| x.len() != d).map(|j| {
                format!(
                    "e_{}{} has length {}, expected {d}",
                    i + 1,
                    j + 1,
                    row[j].len()
                )
            })
        })
        .or_else(|| (n == 0).then(|| "empty grid".to_string()));
    let shape_ok = shape.is_none();
    report.record("matrix units shape", shape);
    if !shape_ok {
        return report;
    }
    let zero = algebra.zero();
    let mut relation = None;
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let prod = algebra.mul(&grid[i][j], &grid[k][l]);
                    let expected = if j == k { &grid[i][l] } else { &zero };
                    if &prod != expected {
                        let rhs = if j == k {
                            format!("e_{}{}", i + 1, l + 1)
                        } else {
                            "0".into()
                        };
                        relation = Some(format!(
                            "e_{}{} * e_{}{} = {prod}, expected {rhs}",
                            i + 1,
                            j + 1,
                            k + 1,
                            l + 1
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.record("matrix unit relations", relation);
    let sum = (0..n).fold(algebra.zero(), |acc, i| algebra.add(&acc, &grid[i][i]));
    let sum_failure = (&sum != algebra.unity()).then(|| format!("sum of e_ii is {sum}"));
    report.record("matrix units sum to unity", sum_failure);
    report
}

/// The stored corner table matches products of the lifted basis, and the
/// forward and backward maps are mutually inverse, unital and multiplicative.
pub fn verify_isomorphism(algebra: &Algebra, iso: &Isomorphism) -> Report {
    let mut report = Report::default();
    let f = algebra.field();
    let corner = iso.corner();
    let local = corner.local();
    let (d, n, k) = (algebra.dim(), iso.n(), corner.dim());
    let m = n * n * k;

    let shape = if d != m {
        Some(format!("dim {d} != n^2 k = {n}^2 * {k}"))
    } else if (iso.forward_matrix().rows(), iso.forward_matrix().cols()) != (m, d)
        || (iso.backward_matrix().rows(), iso.backward_matrix().cols()) != (d, m)
        || corner.basis_lift().len() != k
        || corner.basis_lift().iter().any(|b| b.len() != d)
        || local.table().len() != k * k * k
        || local.unity().len() != k
    {
        Some("matrix or corner shapes are inconsistent".into())
    } else {
        None
    };
    let shape_ok = shape.is_none();
    report.record("isomorphism dimensions", shape);
    if !shape_ok {
        return report;
    }

    let basis = corner.basis_lift();
    let e = corner.idempotent();
    let independence =
        (Subspace::span(f, d, basis).dim() != k).then(|| "corner basis is dependent".into());
    report.record("corner basis independent", independence);

    let in_corner = basis
        .iter()
        .position(|b| &algebra.mul(&algebra.mul(e, b), e) != b)
        .map(|s| format!("basis element {} is not fixed by x -> exe", s + 1));
    report.record("corner basis inside eRe", in_corner);

    let mut table = None;
    'table: for s in 0..k {
        for t in 0..k {
            let lhs = algebra.mul(&basis[s], &basis[t]);
            let rhs = corner.lift(&local.basis_product(s, t));
            if lhs != rhs {
                table = Some(format!(
                    "b_{} b_{} = {lhs}, table gives {rhs}",
                    s + 1,
                    t + 1
                ));
                break 'table;
            }
        }
    }
    report.record("corner table", table);

    let unity =
        (&corner.lift(local.unity()) != e).then(|| "corner unity does not lift to e".into());
    report.record("corner unity", unity);

    let fwd = |x: &Element| iso.forward(x);
    let mut mult = None;
    'mult: for a in 0..d {
        let fa = fwd(&algebra.basis_element(a));
        for b in 0..d {
            let fb = fwd(&algebra.basis_element(b));
            let lhs = fwd(&algebra.basis_product(a, b));
            let rhs = grid_product(local, &fa, &fb);
            if lhs != rhs {
                mult = Some(format!(
                    "F(x_{} x_{}) != F(x_{}) F(x_{})",
                    a + 1,
                    b + 1,
                    a + 1,
                    b + 1
                ));
                break 'mult;
            }
        }
    }
    report.record("forward map multiplicative", mult);

    let image_of_one = fwd(algebra.unity());
    let unital = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let expected = if i == j {
                local.unity().clone()
            } else {
                local.zero()
            };
            image_of_one[i][j] != expected
        })
        .map(|(i, j)| format!("F(1) has wrong entry ({}, {})", i + 1, j + 1));
    report.record("forward map unital", unital);

    let bf = iso.backward_matrix().mul(f, iso.forward_matrix());
    let fb = iso.forward_matrix().mul(f, iso.backward_matrix());
    let inverse = if bf != Matrix::identity(f, d) {
        Some("backward after forward is not the identity".into())
    } else if fb != Matrix::identity(f, m) {
        Some("forward after backward is not the identity".into())
    } else {
        None
    };
    report.record("forward and backward inverse", inverse);
    report
}

fn grid_product(local: &Algebra, a: &[Vec<Element>], b: &[Vec<Element>]) -> Vec<Vec<Element>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(local.zero(), |acc, t| {
                        local.add(&acc, &local.mul(&a[i][t], &b[t][j]))
                    })
                })
                .collect()
        })
        .collect()
}

fn left_inverse(local: &Algebra, x: &Element) -> Option<Element> {
    let f = local.field();
    let columns: Vec<Vec<Scalar>> = (0..local.dim())
        .map(|s| local.basis_mul(s, x).into_coords())
        .collect();
    Matrix::from_columns(f, local.dim(), &columns)
        .solve(f, local.unity().coords())
        .map(Element::new)
}

/// Checks that a structure-constant algebra is a division ring: every
/// nonzero element when |D| <= 2^16, otherwise the basis and a seeded
/// sample. Each checked element must have a two-sided inverse whose own
/// inverse is the element again.
pub fn verify_division_ring(local: &Algebra, seed: u64) -> DivisionRingReport {
    let mut report = Report::default();
    let f = local.field();
    let k = local.dim();

    let nonzero = (k == 0 || local.is_zero(local.unity())).then(|| "the ring is zero".into());
    report.record("division ring nonzero", nonzero);

    let unity_fail = (0..k)
        .find(|&s| {
            let x = local.basis_element(s);
            local.mul(local.unity(), &x) != x || local.mul(&x, local.unity()) != x
        })
        .map(|s| format!("unity fails on basis element {}", s + 1));
    report.record("division ring unity", unity_fail);

    let exhaustive = f.space_size(k).is_some_and(|n| n <= ENUMERATION_LIMIT);
    let candidates: Box<dyn Iterator<Item = Element>> = if exhaustive {
        Box::new(all_vectors(f, k).skip(1).map(Element::new))
    } else {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        let samples: Vec<Element> = (0..SAMPLE_COUNT)
            .map(|_| Element::new((0..k).map(|_| f.sample(&mut rng)).collect()))
            .collect();
        Box::new(
            (0..k)
                .map(|s| local.basis_element(s))
                .chain(samples)
                .filter(|x| !local.is_zero(x)),
        )
    };
    let mut inverse_fail = None;
    for x in candidates {
        let failure = match left_inverse(local, &x) {
            None => Some(format!("{x} has no inverse")),
            Some(w) if &local.mul(&x, &w) != local.unity() => {
                Some(format!("{x} has only a left inverse"))
            }
            Some(w) => match left_inverse(local, &w) {
                Some(back) if back == x => None,
                _ => Some(format!("inverse of the inverse of {x} differs")),
            },
        };
        if failure.is_some() {
            inverse_fail = failure;
            break;
        }
    }
    report.record("division ring inverses", inverse_fail);

    let commutative =
        (0..k).all(|s| (s + 1..k).all(|t| local.basis_product(s, t) == local.basis_product(t, s)));
    DivisionRingReport {
        report,
        mode: if exhaustive {
            DivisionMode::Exhaustive
        } else {
            DivisionMode::Sampled
        },
        commutative,
    }
}

/// a != 0, b != 0 and a x_i b = 0 for every basis element x_i.
pub fn verify_not_prime_witness(algebra: &Algebra, a: &Element, b: &Element) -> Report {
    let mut report = Report::default();
    let d = algebra.dim();
    let shape =
        (a.len() != d || b.len() != d).then(|| format!("witness length differs from dim {d}"));
    let shape_ok = shape.is_none();
    report.record("witness shape", shape);
    if !shape_ok {
        return report;
    }
    report.record(
        "witness a nonzero",
        algebra.is_zero(a).then(|| "a = 0".into()),
    );
    report.record(
        "witness b nonzero",
        algebra.is_zero(b).then(|| "b = 0".into()),
    );
    let annihilates = (0..d)
        .find(|&i| !algebra.is_zero(&algebra.mul(&algebra.mul_basis(a, i), b)))
        .map(|i| format!("a x_{} b != 0", i + 1));
    report.record("aRb = 0", annihilates);
    report
}

/// Runs every check that applies to a certificate.
pub fn verify_certificate(algebra: &Algebra, certificate: &Certificate) -> Report {
    match certificate {
        Certificate::NotPrime(w) => verify_not_prime_witness(algebra, &w.a, &w.b),
        Certificate::Decomposed(dec) => {
            let mut report = verify_matrix_units(algebra, dec.units.grid());
            let n = dec.units.n();
            let diagonal = (dec.idempotents.len() != n
                || dec
                    .idempotents
                    .iter()
                    .enumerate()
                    .any(|(i, e)| e != dec.units.unit(i, i)))
            .then(|| "idempotents differ from the diagonal units".into());
            report.record("idempotents on the diagonal", diagonal);
            let corner_e = (n == 0
                || dec.isomorphism.corner().idempotent() != dec.units.unit(0, 0))
            .then(|| "corner is not taken at e_11".into());
            report.record("corner at e_11", corner_e);
            let iso_n = (dec.isomorphism.n() != n)
                .then(|| "isomorphism size differs from unit grid".into());
            report.record("isomorphism size", iso_n);
            report.extend(verify_isomorphism(algebra, &dec.isomorphism));
            report.extend(dec.division.report.clone());
            report
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProbeError {
    #[error("|F|^dim exceeds the probe limit of {PROBE_LIMIT}")]
    TooLarge,
}

/// Brute-force comparison of two forms of primeness on a small algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub left_ideal_count: usize,
    /// Nonzero left ideals I, J with IJ = 0.
    pub ideal_witness: Option<(LeftIdeal, LeftIdeal)>,
    /// Nonzero a, b with aRb = 0.
    pub element_witness: Option<(Element, Element)>,
}

impl ProbeReport {
    pub fn agree(&self) -> bool {
        self.ideal_witness.is_some() == self.element_witness.is_some()
    }
}

/// Enumerates every left ideal (as sums of principal ones) and every pair
/// of elements of a small algebra.
pub fn prime_equivalence_probe(algebra: &Algebra) -> Result<ProbeReport, ProbeError> {
    let f = algebra.field();
    let d = algebra.dim();
    if !f.space_size(d).is_some_and(|n| n <= PROBE_LIMIT) {
        return Err(ProbeError::TooLarge);
    }
    let elements: Vec<Element> = all_vectors(f, d).skip(1).map(Element::new).collect();

    let principal: Vec<LeftIdeal> = {
        let mut seen = HashSet::new();
        elements
            .iter()
            .map(|a| principal_left_ideal(algebra, a))
            .filter(|i| !i.is_zero() && seen.insert(i.space().clone()))
            .collect()
    };
    let mut ideals = principal.clone();
    let mut seen: HashSet<Subspace> = ideals.iter().map(|i| i.space().clone()).collect();
    let mut frontier = ideals.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for i in &frontier {
            for p in &principal {
                let sum = i.space().sum(f, p.space()).expect("same ambient space");
                if seen.insert(sum.clone()) {
                    let ideal = LeftIdeal::from_subspace(algebra, sum).expect("sum of left ideals");
                    next.push(ideal);
                }
            }
        }
        ideals.extend(next.iter().cloned());
        frontier = next;
    }

    let ideal_witness = ideals.iter().find_map(|i| {
        ideals
            .iter()
            .find(|j| ideal_product(algebra, i, j).is_zero())
            .map(|j| (i.clone(), j.clone()))
    });
    let element_witness = elements.iter().find_map(|a| {
        elements
            .iter()
            .find(|b| (0..d).all(|i| algebra.is_zero(&algebra.mul(&algebra.mul_basis(a, i), b))))
            .map(|b| (a.clone(), b.clone()))
    });
    Ok(ProbeReport {
        left_ideal_count: ideals.len() + 1,
        ideal_witness,
        element_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        direct_sum, group_algebra_cyclic, matrix_algebra, quaternion_algebra, scramble,
    };
    use crate::exactfield::FieldSpec;
    use crate::wedderburn::{decompose, Decomposition, Isomorphism, MatrixUnits};

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn decomposition(a: &Algebra) -> Decomposition {
        match decompose(a, 0).unwrap() {
            Certificate::Decomposed(d) => *d,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn standard_units_pass() {
        let a = matrix_algebra(2, &fp(2));
        let grid = vec![
            vec![a.basis_element(0), a.basis_element(1)],
            vec![a.basis_element(2), a.basis_element(3)],
        ];
        assert!(verify_matrix_units(&a, &grid).passed());
    }

    #[test]
    fn zeroed_unit_fails_its_relation() {
        let a = matrix_algebra(2, &fp(2));
        let grid = vec![
            vec![a.basis_element(0), a.zero()],
            vec![a.basis_element(2), a.basis_element(3)],
        ];
        let report = verify_matrix_units(&a, &grid);
        assert!(!report.passed());
        let failure = report.failures().next().unwrap();
        assert_eq!(failure.name, "matrix unit relations");
        assert!(failure.witness.as_ref().unwrap().starts_with("e_12 * e_21"));
    }

    #[test]
    fn units_must_sum_to_one() {
        let a = matrix_algebra(2, &fp(3));
        let grid = vec![vec![a.basis_element(0)]];
        let report = verify_matrix_units(&a, &grid);
        assert!(report
            .failures()
            .any(|c| c.name == "matrix units sum to unity"));
    }

    #[test]
    fn pipeline_certificate_passes() {
        let (a, _) = scramble(&matrix_algebra(2, &fp(3)), 42);
        let d = decomposition(&a);
        let report = verify_certificate(&a, &Certificate::Decomposed(Box::new(d)));
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn tampered_forward_map_fails() {
        let a = matrix_algebra(2, &fp(3));
        let d = decomposition(&a);
        let iso = &d.isomorphism;
        let f = a.field();
        let mut forward = iso.forward_matrix().clone();
        forward[(0, 0)] = f.add(&forward[(0, 0)], &f.one());
        let bad = Isomorphism::from_parts(
            iso.n(),
            iso.corner().clone(),
            forward,
            iso.backward_matrix().clone(),
        );
        assert!(!verify_isomorphism(&a, &bad).passed());
    }

    #[test]
    fn tampered_units_fail_the_certificate() {
        let a = matrix_algebra(2, &fp(2));
        let mut d = decomposition(&a);
        let mut grid = d.units.grid().to_vec();
        grid[0][1] = a.zero();
        d.units = MatrixUnits::from_grid(grid);
        assert!(!verify_certificate(&a, &Certificate::Decomposed(Box::new(d))).passed());
    }

    #[test]
    fn division_ring_checks() {
        let h = verify_division_ring(&quaternion_algebra(), 0);
        assert!(h.report.passed());
        assert!(!h.commutative);
        assert_eq!(h.mode, DivisionMode::Sampled);
        let m = verify_division_ring(&matrix_algebra(2, &fp(2)), 0);
        assert!(!m.report.passed());
        assert_eq!(m.mode, DivisionMode::Exhaustive);
        assert!(verify_division_ring(&matrix_algebra(1, &fp(7)), 0)
            .report
            .passed());
    }

    #[test]
    fn witness_checks() {
        let a = group_algebra_cyclic(2, &fp(2));
        let n = a.element_from_ints(&[1, 1]);
        assert!(verify_not_prime_witness(&a, &n, &n).passed());
        assert!(!verify_not_prime_witness(&a, &a.unity().clone(), &n).passed());
        assert!(!verify_not_prime_witness(&a, &a.zero(), &n).passed());
    }

    #[test]
    fn probe_agrees_on_small_algebras() {
        let cases = [
            (matrix_algebra(2, &fp(2)), false),
            (matrix_algebra(2, &fp(3)), false),
            (group_algebra_cyclic(2, &fp(2)), true),
            (group_algebra_cyclic(3, &fp(2)), true),
            (
                direct_sum(&matrix_algebra(1, &fp(5)), &matrix_algebra(1, &fp(5))).unwrap(),
                true,
            ),
        ];
        for (a, reducible) in &cases {
            let probe = prime_equivalence_probe(a).unwrap();
            assert!(probe.agree());
            assert_eq!(probe.element_witness.is_some(), *reducible);
        }
        // 0, R and one minimal left ideal per point of the projective line over F_2
        assert_eq!(
            prime_equivalence_probe(&matrix_algebra(2, &fp(2)))
                .unwrap()
                .left_ideal_count,
            5
        );
    }

    #[test]
    fn probe_refuses_large_algebras() {
        assert_eq!(
            prime_equivalence_probe(&matrix_algebra(3, &fp(3))),
            Err(ProbeError::TooLarge)
        );
    }
}
