//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use wedderburn_artin::algebra::{
    direct_sum, field_extension_algebra, group_algebra_cyclic, matrix_algebra,
    matrix_algebra_over_prime_subfield, quaternion_algebra, scramble, Algebra, Element,
};
use wedderburn_artin::certify::{prime_equivalence_probe, verify_not_prime_witness};
use wedderburn_artin::exactfield::{FieldSpec, Scalar};
use wedderburn_artin::io;
use wedderburn_artin::wedderburn::{decompose, peel_idempotents, Certificate, Decomposition};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_wedderburn")
}

fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn decomposed(a: &Algebra, seed: u64) -> Result<Decomposition, String> {
    match decompose(a, seed) {
        Ok(Certificate::Decomposed(d)) => Ok(*d),
        Ok(Certificate::NotPrime(w)) => {
            Err(format!("unexpected not_prime witness {} {}", w.a, w.b))
        }
        Err(inc) => Err(inc.to_string()),
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || {
        format!("{what} took {took:?}, limit {limit:?}")
    })
}

fn scramble_and_recover(dir: &Path) -> Outcome {
    let f4 = FieldSpec::default_extension(2, 2).unwrap();
    let cases: Vec<(&str, Algebra, usize, usize)> = vec![
        ("M_1(F_7)", matrix_algebra(1, &fp(7)), 1, 1),
        ("M_2(F_2)", matrix_algebra(2, &fp(2)), 2, 1),
        ("M_2(F_3)", matrix_algebra(2, &fp(3)), 2, 1),
        ("M_3(F_2)", matrix_algebra(3, &fp(2)), 3, 1),
        (
            "M_2(F_4) over F_2",
            matrix_algebra_over_prime_subfield(2, &f4).unwrap(),
            2,
            2,
        ),
    ];
    let mut count = 0;
    for (name, base, n, k) in &cases {
        for s in 0..5u64 {
            let start = Instant::now();
            let (a, _) = scramble(base, s);
            let d = decomposed(&a, s).map_err(|e| format!("{name} seed {s}: {e}"))?;
            let got = (d.units.n(), d.isomorphism.corner().dim());
            ensure(got == (*n, *k), || {
                format!("{name} seed {s}: got (n, dimD) = {got:?}")
            })?;
            let alg = dir.join(format!("c1_{count}.json"));
            let cert = dir.join(format!("c1_{count}.cert.json"));
            std::fs::write(&alg, io::write_algebra(&a)).unwrap();
            let seed = s.to_string();
            let (code, _) = run_cli(&[
                "decompose",
                alg.to_str().unwrap(),
                "--seed",
                &seed,
                "--out",
                cert.to_str().unwrap(),
            ]);
            ensure(code == 0, || {
                format!("{name} seed {s}: decompose exit {code}")
            })?;
            let (code, _) = run_cli(&["verify", alg.to_str().unwrap(), cert.to_str().unwrap()]);
            ensure(code == 0, || format!("{name} seed {s}: verify exit {code}"))?;
            within(Duration::from_secs(10), start, &format!("{name} seed {s}"))?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} scrambled instances recovered and verified"
    ))
}

fn division_algebras() -> Outcome {
    let start = Instant::now();
    let f8 = FieldSpec::default_extension(2, 3).unwrap();
    let d = decomposed(&field_extension_algebra(&f8).unwrap(), 0)?;
    let got = (d.units.n(), d.isomorphism.corner().dim());
    ensure(got == (1, 3), || format!("F_8: got {got:?}"))?;
    within(Duration::from_secs(1), start, "F_8")?;

    let start = Instant::now();
    let d = decomposed(&quaternion_algebra(), 0)?;
    let got = (
        d.units.n(),
        d.isomorphism.corner().dim(),
        d.division.commutative,
    );
    ensure(got == (1, 4, false), || format!("quaternions: got {got:?}"))?;
    within(Duration::from_secs(1), start, "quaternions")?;
    Ok("F_8 gives (1, 3); quaternions give (1, 4) noncommutative".into())
}

fn non_prime_detection() -> Outcome {
    let cases = [
        (
            "M_2(F_2) + F_2",
            direct_sum(&matrix_algebra(2, &fp(2)), &matrix_algebra(1, &fp(2))).unwrap(),
        ),
        ("F_2[C_2]", group_algebra_cyclic(2, &fp(2))),
    ];
    for (name, a) in &cases {
        let start = Instant::now();
        match decompose(a, 0) {
            Ok(Certificate::NotPrime(w)) => {
                let r = verify_not_prime_witness(a, &w.a, &w.b);
                ensure(r.passed(), || {
                    format!("{name}: witness rejected: {}", r.summary())
                })?;
            }
            other => return Err(format!("{name}: expected not_prime, got {other:?}")),
        }
        within(Duration::from_secs(1), start, name)?;
    }
    Ok("both inputs return verified witnesses".into())
}

/// Independent checks of the structural properties on random scrambled inputs.
fn property_suites() -> Outcome {
    let f4 = FieldSpec::default_extension(2, 2).unwrap();
    let bases: Vec<Algebra> = vec![
        matrix_algebra(1, &fp(5)),
        matrix_algebra(2, &fp(2)),
        matrix_algebra(2, &fp(3)),
        matrix_algebra(2, &fp(5)),
        matrix_algebra(3, &fp(2)),
        matrix_algebra(2, &f4),
        matrix_algebra_over_prime_subfield(2, &f4).unwrap(),
        field_extension_algebra(&FieldSpec::default_extension(3, 2).unwrap()).unwrap(),
        quaternion_algebra(),
        matrix_algebra(2, &FieldSpec::rational()),
    ];
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(2024);
    for trial in 0..100 {
        let base = &bases[rng.random_range(0..bases.len())];
        let (a, _) = scramble(base, rng.random());
        let seed: u64 = rng.random();
        let ctx = |m: &str| format!("trial {trial} (dim {}, {}): {m}", a.dim(), a.field());

        let peel = peel_idempotents(&a, seed).map_err(|e| ctx(&format!("peel failed: {e:?}")))?;
        let es: Vec<&Element> = peel.idempotents.iter().map(|e| e.element()).collect();
        for (i, e) in es.iter().enumerate() {
            for (j, f) in es.iter().enumerate() {
                let prod = a.mul(e, f);
                let want = if i == j { (*e).clone() } else { a.zero() };
                ensure(prod == want, || ctx(&format!("e_{i} e_{j} wrong")))?;
            }
        }
        let sum = es.iter().fold(a.zero(), |s, e| a.add(&s, e));
        ensure(&sum == a.unity(), || ctx("idempotents do not sum to 1"))?;
        let dims = &peel.complement_dims;
        ensure(
            dims.windows(2).all(|w| w[0] > w[1]) && dims.last() == Some(&0),
            || {
                ctx(&format!(
                    "complement dimensions {dims:?} not strictly decreasing to 0"
                ))
            },
        )?;

        let d = decomposed(&a, seed).map_err(|e| ctx(&e))?;
        let n = d.units.n();
        let e = |i: usize, j: usize| d.units.unit(i, j);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let want = if j == k { e(i, l).clone() } else { a.zero() };
                        ensure(a.mul(e(i, j), e(k, l)) == want, || {
                            ctx(&format!("relation ({i},{j},{k},{l})"))
                        })?;
                    }
                }
            }
        }
        let iso = &d.isomorphism;
        let local = iso.corner().local();
        for x in 0..a.dim() {
            let fx = iso.forward(&a.basis_element(x));
            for y in 0..a.dim() {
                let fy = iso.forward(&a.basis_element(y));
                let fxy = iso.forward(&a.mul(&a.basis_element(x), &a.basis_element(y)));
                for i in 0..n {
                    for j in 0..n {
                        let entry = (0..n).fold(local.zero(), |s, t| {
                            local.add(&s, &local.mul(&fx[i][t], &fy[t][j]))
                        });
                        ensure(fxy[i][j] == entry, || {
                            ctx(&format!("phi not multiplicative at ({x},{y})"))
                        })?;
                    }
                }
            }
        }
        let k = iso.corner().dim();
        ensure(a.dim() == n * n * k, || {
            ctx(&format!("dim {} != {n}^2 * {k}", a.dim()))
        })?;
    }
    Ok("100 randomized trials".into())
}

/// Brute force over F_2 with elements as bit masks: bit i is the coefficient of x_i.
struct Tiny {
    dim: usize,
    table: Vec<Vec<u8>>,
}

impl Tiny {
    fn mul(&self, a: u8, b: u8) -> u8 {
        let mut out = 0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if a >> i & 1 == 1 && b >> j & 1 == 1 {
                    out ^= self.table[i][j];
                }
            }
        }
        out
    }

    fn elements(&self) -> std::ops::Range<u8> {
        0..(1u8 << self.dim)
    }

    fn associative(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                self.elements()
                    .all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    fn unital(&self) -> bool {
        self.elements().any(|u| {
            self.elements()
                .all(|x| self.mul(u, x) == x && self.mul(x, u) == x)
        })
    }

    fn prime(&self) -> bool {
        let nonzero = 1..(1u8 << self.dim);
        !nonzero.clone().any(|a| {
            nonzero
                .clone()
                .any(|b| (0..self.dim).all(|i| self.mul(self.mul(a, 1 << i), b) == 0))
        })
    }

    /// Some bijective linear map onto F_4 (basis 1, t with t^2 = t + 1) is multiplicative.
    fn is_f4(&self) -> bool {
        let f4 = Tiny {
            dim: 2,
            table: vec![vec![0b01, 0b10], vec![0b10, 0b11]],
        };
        let images = [0b01u8, 0b10, 0b11];
        images.iter().any(|&p| {
            images.iter().filter(|&&q| q != p).any(|&q| {
                let phi =
                    |x: u8| (if x & 1 == 1 { p } else { 0 }) ^ (if x & 2 == 2 { q } else { 0 });
                self.elements().all(|x| {
                    self.elements()
                        .all(|y| phi(self.mul(x, y)) == f4.mul(phi(x), phi(y)))
                })
            })
        })
    }

    fn to_algebra(&self) -> Result<Algebra, String> {
        let f = fp(2);
        let mut table = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    table.push(Scalar::Residue(u64::from(self.table[i][j] >> k & 1)));
                }
            }
        }
        Algebra::from_table(f, self.dim, table).map_err(|e| e.to_string())
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut tiny = Vec::new();
    for c in 0..2u8 {
        tiny.push(Tiny {
            dim: 1,
            table: vec![vec![c]],
        });
    }
    for code in 0..=255u8 {
        let entry = |slot: u8| code >> (2 * slot) & 0b11;
        tiny.push(Tiny {
            dim: 2,
            table: vec![vec![entry(0), entry(1)], vec![entry(2), entry(3)]],
        });
    }
    let (mut algebras, mut primes) = (0, 0);
    for t in &tiny {
        let valid = t.associative() && t.unital();
        let built = t.to_algebra();
        ensure(valid == built.is_ok(), || {
            format!("table {:?}: validity disagrees ({built:?})", t.table)
        })?;
        let Ok(a) = built else { continue };
        algebras += 1;
        let outcome = decompose(&a, 0).map_err(|e| format!("table {:?}: {e}", t.table))?;
        match (t.prime(), outcome) {
            (true, Certificate::Decomposed(d)) => {
                primes += 1;
                let got = (d.units.n(), d.isomorphism.corner().dim());
                let want = if t.dim == 1 {
                    (1, 1)
                } else {
                    ensure(t.is_f4(), || {
                        format!("table {:?}: prime but not F_4", t.table)
                    })?;
                    (1, 2)
                };
                ensure(got == want, || {
                    format!("table {:?}: got {got:?}, oracle {want:?}", t.table)
                })?;
            }
            (false, Certificate::NotPrime(w)) => {
                ensure(verify_not_prime_witness(&a, &w.a, &w.b).passed(), || {
                    format!("table {:?}: bad witness", t.table)
                })?;
            }
            (prime, _) => {
                return Err(format!(
                    "table {:?}: oracle prime = {prime}, pipeline disagrees",
                    t.table
                ))
            }
        }
    }
    within(Duration::from_secs(60), start, "oracle sweep")?;
    Ok(format!(
        "{} tables, {algebras} algebras, {primes} prime; all classifications agree",
        tiny.len()
    ))
}

fn probe() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("F_2[C_2]", group_algebra_cyclic(2, &fp(2)), false),
        (
            "F_2 + F_2",
            direct_sum(&matrix_algebra(1, &fp(2)), &matrix_algebra(1, &fp(2))).unwrap(),
            false,
        ),
        ("M_2(F_2)", matrix_algebra(2, &fp(2)), true),
    ];
    for (name, a, prime) in &cases {
        let r = prime_equivalence_probe(a).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.agree(), || {
            format!("{name}: ideal and element forms disagree")
        })?;
        ensure(r.element_witness.is_none() == *prime, || {
            format!("{name}: wrong primeness")
        })?;
    }
    within(Duration::from_secs(30), start, "probe")?;
    Ok("ideal and element forms of primeness agree".into())
}

fn determinism(dir: &Path) -> Outcome {
    let (a, _) = scramble(&matrix_algebra(2, &fp(3)), 42);
    let alg = dir.join("det.json");
    std::fs::write(&alg, io::write_algebra(&a)).unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let cert = dir.join(format!("det{run}.cert.json"));
        let (code, _) = run_cli(&[
            "decompose",
            alg.to_str().unwrap(),
            "--seed",
            "7",
            "--out",
            cert.to_str().unwrap(),
        ]);
        ensure(code == 0, || format!("run {run}: exit {code}"))?;
        outputs.push(std::fs::read(&cert).unwrap());
    }
    ensure(outputs[0] == outputs[1], || "certificates differ".into())?;
    Ok(format!("identical {}-byte certificates", outputs[0].len()))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        (
            "scramble-and-recover",
            Box::new(|| scramble_and_recover(dir.path())),
        ),
        ("division-algebra inputs", Box::new(division_algebras)),
        ("non-prime detection", Box::new(non_prime_detection)),
        ("structural property suites", Box::new(property_suites)),
        (
            "oracle equivalence on dim <= 2 over F_2",
            Box::new(oracle_equivalence),
        ),
        ("prime-equivalence probe", Box::new(probe)),
        ("determinism", Box::new(|| determinism(dir.path()))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{took:.2?}]");
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
