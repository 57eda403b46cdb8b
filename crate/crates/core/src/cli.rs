//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 inconclusive, 3 verification failure.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::{
    change_of_basis, direct_sum, field_extension_algebra, group_algebra_cyclic, matrix_algebra,
    matrix_algebra_over_prime_subfield, quaternion_algebra, scramble, Algebra,
};
use crate::certify;
use crate::exactfield::FieldSpec;
use crate::io::{self, StoredCertificate};
use crate::wedderburn::{decompose, Certificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "wedderburn",
    version,
    about = "Exact Wedderburn-Artin decomposition of finite-dimensional algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose an algebra file and write a certificate.
    Decompose {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Certificate path; defaults to <input>.cert.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a standard algebra file.
    Generate {
        #[command(subcommand)]
        kind: Kind,
    },
    /// Apply a random (or recorded) change of basis.
    Scramble {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output algebra; the basis is recorded in <out>.basis.json.
        #[arg(long)]
        out: PathBuf,
        /// Use the matrix from a basis sidecar instead of sampling one.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// With --matrix, apply the recorded inverse.
        #[arg(long, requires = "matrix")]
        inverse: bool,
    },
    /// Check a certificate against its algebra.
    Verify {
        algebra: PathBuf,
        certificate: PathBuf,
    },
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Prime characteristic.
    #[arg(long, required_unless_present = "rational")]
    p: Option<u64>,
    /// Extension degree over F_p (smallest irreducible modulus).
    #[arg(long, requires = "p", conflicts_with = "modulus")]
    deg: Option<usize>,
    /// Extension modulus, coefficients low to high.
    #[arg(long, requires = "p", value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
    /// Work over Q.
    #[arg(long, conflicts_with = "p")]
    rational: bool,
}

impl FieldArgs {
    fn field(&self) -> Result<FieldSpec, String> {
        let spec = match (self.rational, self.p, self.deg, &self.modulus) {
            (true, ..) => return Ok(FieldSpec::rational()),
            (false, Some(p), None, None) => FieldSpec::prime(p),
            (false, Some(p), Some(deg), None) => FieldSpec::default_extension(p, deg),
            (false, Some(p), None, Some(m)) => FieldSpec::extension(p, m.clone()),
            _ => {
                return Err(
                    "a field needs --p (with optional --deg or --modulus) or --rational".into(),
                )
            }
        };
        spec.map_err(|e| e.to_string())
    }
}

#[derive(Debug, Subcommand)]
enum Kind {
    /// n x n matrices.
    Matrix {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
        /// Present M_n(F_{p^k}) over F_p (dimension n^2 k).
        #[arg(long)]
        over_prime: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group algebra of the cyclic group of order m.
    CyclicGroup {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hamilton's quaternions over Q.
    Quaternion {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Direct sum of two algebra files over the same field.
    DirectSum {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// F_{p^k} as a k-dimensional algebra over F_p.
    FieldExtension {
        #[arg(long)]
        p: u64,
        #[arg(long, conflicts_with = "modulus", required_unless_present = "modulus")]
        deg: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure that maps to an exit code after a message on stderr.
struct Exit(i32, String);

fn input_error(msg: impl std::fmt::Display) -> Exit {
    Exit(EXIT_INPUT, msg.to_string())
}

fn read_text(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Exit> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<Algebra, Exit> {
    io::read_algebra(&read_text(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Exit> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Decompose { input, seed, out } => cmd_decompose(&input, seed, out),
        Command::Generate { kind } => cmd_generate(kind),
        Command::Scramble {
            input,
            seed,
            out,
            matrix,
            inverse,
        } => cmd_scramble(&input, seed, &out, matrix.as_deref(), inverse),
        Command::Verify {
            algebra,
            certificate,
        } => cmd_verify(&algebra, &certificate),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn default_certificate_path(input: &Path) -> PathBuf {
    let mut name = input.file_stem().unwrap_or_default().to_os_string();
    name.push(".cert.json");
    input.with_file_name(name)
}

fn cmd_decompose(input: &Path, seed: u64, out: Option<PathBuf>) -> Result<i32, Exit> {
    let algebra = load_algebra(input)?;
    let out = out.unwrap_or_else(|| default_certificate_path(input));
    match decompose(&algebra, seed) {
        Ok(cert) => {
            write_text(&out, &io::write_certificate(&algebra, &cert, seed))?;
            match &cert {
                Certificate::Decomposed(d) => println!(
                    "decomposed n={} dimD={} field={} commutativeD={}",
                    d.units.n(),
                    d.isomorphism.corner().dim(),
                    algebra.field(),
                    d.division.commutative
                ),
                Certificate::NotPrime(w) => println!("not_prime witness={},{}", w.a, w.b),
            }
            Ok(EXIT_OK)
        }
        Err(inc) => {
            write_text(&out, &io::write_inconclusive(&algebra, &inc))?;
            println!("inconclusive retries={}", inc.retries);
            eprintln!("last failure: {}", inc.last_reason);
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn cmd_generate(kind: Kind) -> Result<i32, Exit> {
    let (algebra, out) = match kind {
        Kind::Matrix {
            n,
            field,
            over_prime,
            out,
        } => {
            if n == 0 {
                return Err(input_error("--n must be at least 1"));
            }
            let f = field.field().map_err(input_error)?;
            let a = if over_prime {
                matrix_algebra_over_prime_subfield(n, &f).map_err(input_error)?
            } else {
                matrix_algebra(n, &f)
            };
            (a, out)
        }
        Kind::CyclicGroup { m, field, out } => {
            if m == 0 {
                return Err(input_error("--m must be at least 1"));
            }
            (
                group_algebra_cyclic(m, &field.field().map_err(input_error)?),
                out,
            )
        }
        Kind::Quaternion { out } => (quaternion_algebra(), out),
        Kind::DirectSum { left, right, out } => {
            let (a, b) = (load_algebra(&left)?, load_algebra(&right)?);
            (direct_sum(&a, &b).map_err(input_error)?, out)
        }
        Kind::FieldExtension {
            p,
            deg,
            modulus,
            out,
        } => {
            let f = match (deg, modulus) {
                (Some(deg), None) => FieldSpec::default_extension(p, deg),
                (None, Some(m)) => FieldSpec::extension(p, m),
                _ => return Err(input_error("give exactly one of --deg and --modulus")),
            };
            let f = f.map_err(input_error)?;
            (field_extension_algebra(&f).map_err(input_error)?, out)
        }
    };
    algebra.validate().into_result().map_err(input_error)?;
    emit(out.as_deref(), &io::write_algebra(&algebra))?;
    Ok(EXIT_OK)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".basis.json");
    out.with_file_name(name)
}

fn cmd_scramble(
    input: &Path,
    seed: u64,
    out: &Path,
    matrix: Option<&Path>,
    inverse: bool,
) -> Result<i32, Exit> {
    let algebra = load_algebra(input)?;
    let f = algebra.field();
    let (scrambled, p) = match matrix {
        None => scramble(&algebra, seed),
        Some(path) => {
            let (p, q) = io::read_basis(&read_text(path)?, f, algebra.dim())
                .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            let p = if inverse { q } else { p };
            let scrambled = change_of_basis(&algebra, &p).map_err(input_error)?;
            (scrambled, p)
        }
    };
    let q = p
        .inverse(f)
        .ok_or_else(|| input_error("basis matrix is singular"))?;
    write_text(out, &io::write_algebra(&scrambled))?;
    write_text(&sidecar_path(out), &io::write_basis(f, &p, &q))?;
    Ok(EXIT_OK)
}

fn cmd_verify(algebra_path: &Path, cert_path: &Path) -> Result<i32, Exit> {
    let algebra = load_algebra(algebra_path)?;
    let stored = io::read_certificate(&read_text(cert_path)?, &algebra)
        .map_err(|e| input_error(format!("{}: {e}", cert_path.display())))?;
    let report = match stored {
        StoredCertificate::Inconclusive { retries } => {
            println!("inconclusive certificate (retries={retries}); nothing to verify");
            return Ok(EXIT_INCONCLUSIVE);
        }
        StoredCertificate::NotPrime(cert) => certify::verify_certificate(&algebra, &cert),
        StoredCertificate::Decomposed {
            certificate,
            commutative_flag,
            mode,
        } => {
            let mut report = certify::verify_certificate(&algebra, &certificate);
            if let Certificate::Decomposed(d) = &certificate {
                let flag = (d.division.commutative != commutative_flag).then(|| {
                    format!(
                        "stored {commutative_flag}, recomputed {}",
                        d.division.commutative
                    )
                });
                report.record("commutativity flag", flag);
                let m = (d.division.mode != mode)
                    .then(|| format!("stored {mode}, recomputed {}", d.division.mode));
                report.record("division check mode", m);
            }
            report
        }
    };
    print!("{report}");
    if report.passed() {
        println!("verified");
        Ok(EXIT_OK)
    } else {
        println!("verification failed");
        Ok(EXIT_VERIFY)
    }
}
