//! Canonical text formats for algebras, certificates and basis sidecars.
//!
//! Writers lay the JSON out by hand so that output is byte-stable: one
//! table row `table[i][j]` per line, scalars in canonical form. Readers go
//! through `serde_json` and report structural problems by field path.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::certify::{self, DivisionMode};
use crate::exactfield::{FieldSpec, Matrix, Scalar};
use crate::wedderburn::{
    Certificate, CornerAlgebra, Decomposition, Inconclusive, Isomorphism, MatrixUnits,
    NotPrimeWitness,
};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("invalid algebra: {0}")]
    Algebra(#[from] AlgebraError),
}

fn field_err(path: &str, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        path: path.to_string(),
        message: message.into(),
    }
}

pub fn scalar_json(s: &Scalar) -> String {
    match s {
        Scalar::Residue(r) => r.to_string(),
        Scalar::Poly(c) => format!("[{}]", join(c.iter().map(u64::to_string))),
        Scalar::Ratio(q) => format!("\"{q}\""),
    }
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(",")
}

pub fn vector_json(v: &[Scalar]) -> String {
    format!("[{}]", join(v.iter().map(scalar_json)))
}

pub fn field_json(f: &FieldSpec) -> String {
    match f {
        FieldSpec::Prime { p } => format!("{{\"kind\":\"prime\",\"p\":{p}}}"),
        FieldSpec::Extension { p, modulus } => format!(
            "{{\"kind\":\"extension\",\"p\":{p},\"deg\":{},\"modulus\":[{}]}}",
            modulus.len() - 1,
            join(modulus.iter().map(u64::to_string))
        ),
        FieldSpec::Rational => "{\"kind\":\"rational\"}".into(),
    }
}

/// Writes `rows` as a JSON array with one row per line at the given indent.
fn rows_block(out: &mut String, indent: &str, rows: impl ExactSizeIterator<Item = String>) {
    let n = rows.len();
    if n == 0 {
        out.push_str("[]");
        return;
    }
    out.push_str("[\n");
    for (i, row) in rows.enumerate() {
        let sep = if i + 1 < n { "," } else { "" };
        let _ = writeln!(out, "{indent}  {row}{sep}");
    }
    out.push_str(indent);
    out.push(']');
}

/// d x d x d table: one `table[i][j]` vector per line.
fn table_block(out: &mut String, indent: &str, dim: usize, table: &[Scalar]) {
    out.push_str("[\n");
    for i in 0..dim {
        for j in 0..dim {
            let start = (i * dim + j) * dim;
            let open = if j == 0 { "[" } else { " " };
            let close = match (j + 1 == dim, i + 1 == dim) {
                (false, _) => ",",
                (true, false) => "],",
                (true, true) => "]",
            };
            let _ = writeln!(
                out,
                "{indent}  {open}{}{close}",
                vector_json(&table[start..start + dim])
            );
        }
    }
    out.push_str(indent);
    out.push(']');
}

fn matrix_rows(m: &Matrix) -> impl ExactSizeIterator<Item = String> + '_ {
    (0..m.rows()).map(|i| vector_json(m.row(i)))
}

pub fn write_algebra(a: &Algebra) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"field\": {},", field_json(a.field()));
    let _ = writeln!(out, "  \"dim\": {},", a.dim());
    out.push_str("  \"table\": ");
    table_block(&mut out, "  ", a.dim(), a.table());
    out.push_str(",\n");
    let _ = writeln!(out, "  \"unity\": {}", vector_json(a.unity().coords()));
    out.push_str("}\n");
    out
}

fn elements_block(out: &mut String, indent: &str, elems: &[Element]) {
    rows_block(
        out,
        indent,
        elems
            .iter()
            .map(|e| vector_json(e.coords()))
            .collect::<Vec<_>>()
            .into_iter(),
    );
}

pub fn write_certificate(algebra: &Algebra, cert: &Certificate, seed: u64) -> String {
    let mut out = String::from("{\n");
    match cert {
        Certificate::NotPrime(w) => {
            out.push_str("  \"outcome\": \"not_prime\",\n");
            let _ = writeln!(out, "  \"field\": {},", field_json(algebra.field()));
            let _ = writeln!(out, "  \"dim\": {},", algebra.dim());
            let _ = writeln!(out, "  \"witness\": {{");
            let _ = writeln!(out, "    \"a\": {},", vector_json(w.a.coords()));
            let _ = writeln!(out, "    \"b\": {}", vector_json(w.b.coords()));
            out.push_str("  }\n");
        }
        Certificate::Decomposed(d) => {
            let iso = &d.isomorphism;
            let corner = iso.corner();
            out.push_str("  \"outcome\": \"decomposed\",\n");
            let _ = writeln!(out, "  \"field\": {},", field_json(algebra.field()));
            let _ = writeln!(out, "  \"dim\": {},", algebra.dim());
            let _ = writeln!(out, "  \"seed\": {seed},");
            let _ = writeln!(out, "  \"n\": {},", d.units.n());
            out.push_str("  \"idempotents\": ");
            elements_block(&mut out, "  ", &d.idempotents);
            out.push_str(",\n  \"units\": ");
            let unit_rows: Vec<String> = d
                .units
                .grid()
                .iter()
                .map(|row| format!("[{}]", join(row.iter().map(|e| vector_json(e.coords())))))
                .collect();
            rows_block(&mut out, "  ", unit_rows.into_iter());
            out.push_str(",\n  \"corner\": {\n");
            let _ = writeln!(
                out,
                "    \"idempotent\": {},",
                vector_json(corner.idempotent().coords())
            );
            let _ = writeln!(out, "    \"dim\": {},", corner.dim());
            out.push_str("    \"basis\": ");
            elements_block(&mut out, "    ", corner.basis_lift());
            out.push_str(",\n    \"table\": ");
            table_block(&mut out, "    ", corner.dim(), corner.local().table());
            out.push_str(",\n");
            let _ = writeln!(
                out,
                "    \"unity\": {}",
                vector_json(corner.local().unity().coords())
            );
            out.push_str("  },\n  \"forward\": ");
            rows_block(&mut out, "  ", matrix_rows(iso.forward_matrix()));
            out.push_str(",\n  \"backward\": ");
            rows_block(&mut out, "  ", matrix_rows(iso.backward_matrix()));
            out.push_str(",\n");
            let _ = writeln!(
                out,
                "  \"division_ring\": {{\"mode\":\"{}\",\"commutative\":{}}}",
                d.division.mode, d.division.commutative
            );
        }
    }
    out.push_str("}\n");
    out
}

pub fn write_inconclusive(algebra: &Algebra, inc: &Inconclusive) -> String {
    format!(
        "{{\n  \"outcome\": \"inconclusive\",\n  \"field\": {},\n  \"dim\": {},\n  \"retries\": {},\n  \"reason\": {}\n}}\n",
        field_json(algebra.field()),
        algebra.dim(),
        inc.retries,
        Value::String(inc.last_reason.clone())
    )
}

/// Sidecar recording a change of basis and its inverse.
pub fn write_basis(field: &FieldSpec, p: &Matrix, inverse: &Matrix) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"field\": {},", field_json(field));
    out.push_str("  \"matrix\": ");
    rows_block(&mut out, "  ", matrix_rows(p));
    out.push_str(",\n  \"inverse\": ");
    rows_block(&mut out, "  ", matrix_rows(inverse));
    out.push_str("\n}\n");
    out
}

fn get<'a>(obj: &'a Value, path: &str, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key)
        .ok_or_else(|| field_err(path, format!("missing key \"{key}\"")))
}

fn as_array<'a>(v: &'a Value, path: &str, len: Option<usize>) -> Result<&'a [Value], FormatError> {
    let arr = v
        .as_array()
        .ok_or_else(|| field_err(path, "expected an array"))?;
    if let Some(len) = len {
        if arr.len() != len {
            return Err(field_err(
                path,
                format!("expected {len} entries, found {}", arr.len()),
            ));
        }
    }
    Ok(arr)
}

fn as_u64(v: &Value, path: &str) -> Result<u64, FormatError> {
    v.as_u64()
        .ok_or_else(|| field_err(path, "expected a non-negative integer"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, FormatError> {
    let n = as_u64(v, path)?;
    usize::try_from(n).map_err(|_| field_err(path, "integer too large"))
}

pub fn parse_field(v: &Value, path: &str) -> Result<FieldSpec, FormatError> {
    let kind = get(v, path, "kind")?
        .as_str()
        .ok_or_else(|| field_err(&format!("{path}.kind"), "expected a string"))?;
    let spec = match kind {
        "prime" => FieldSpec::prime(as_u64(get(v, path, "p")?, &format!("{path}.p"))?),
        "extension" => {
            let p = as_u64(get(v, path, "p")?, &format!("{path}.p"))?;
            let mpath = format!("{path}.modulus");
            let modulus = as_array(get(v, path, "modulus")?, &mpath, None)?
                .iter()
                .enumerate()
                .map(|(i, c)| as_u64(c, &format!("{mpath}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(deg) = v.get("deg") {
                let deg = as_usize(deg, &format!("{path}.deg"))?;
                if deg + 1 != modulus.len() {
                    return Err(field_err(
                        path,
                        format!("deg {deg} disagrees with modulus length {}", modulus.len()),
                    ));
                }
            }
            FieldSpec::extension(p, modulus)
        }
        "rational" => Ok(FieldSpec::rational()),
        other => {
            return Err(field_err(
                &format!("{path}.kind"),
                format!("unknown field kind \"{other}\""),
            ))
        }
    };
    spec.map_err(|e| field_err(path, e.to_string()))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().ok()?,
            d.trim().parse::<BigInt>().ok()?,
        ),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!den.is_zero()).then(|| BigRational::new(num, den))
}

pub fn parse_scalar(field: &FieldSpec, v: &Value, path: &str) -> Result<Scalar, FormatError> {
    match field {
        FieldSpec::Prime { p } => {
            let r = as_u64(v, path)?;
            if r >= *p {
                return Err(field_err(path, format!("residue {r} is not below {p}")));
            }
            Ok(Scalar::Residue(r))
        }
        FieldSpec::Extension { p, modulus } => {
            let k = modulus.len() - 1;
            let coeffs = as_array(v, path, None)?;
            if coeffs.len() > k {
                return Err(field_err(
                    path,
                    format!("expected at most {k} coefficients, found {}", coeffs.len()),
                ));
            }
            let mut c = vec![0u64; k];
            for (i, x) in coeffs.iter().enumerate() {
                let r = as_u64(x, &format!("{path}[{i}]"))?;
                if r >= *p {
                    return Err(field_err(
                        &format!("{path}[{i}]"),
                        format!("residue {r} is not below {p}"),
                    ));
                }
                c[i] = r;
            }
            Ok(Scalar::Poly(c.into()))
        }
        FieldSpec::Rational => {
            let q = match v {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())),
                _ => None,
            };
            q.map(Scalar::Ratio)
                .ok_or_else(|| field_err(path, "expected a rational as \"a/b\" or an integer"))
        }
    }
}

pub fn parse_vector(
    field: &FieldSpec,
    v: &Value,
    path: &str,
    len: usize,
) -> Result<Vec<Scalar>, FormatError> {
    as_array(v, path, Some(len))?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_scalar(field, x, &format!("{path}[{i}]")))
        .collect()
}

fn parse_table(
    field: &FieldSpec,
    v: &Value,
    path: &str,
    dim: usize,
) -> Result<Vec<Scalar>, FormatError> {
    let mut table = Vec::with_capacity(dim * dim * dim);
    for (i, row) in as_array(v, path, Some(dim))?.iter().enumerate() {
        let rpath = format!("{path}[{i}]");
        for (j, entry) in as_array(row, &rpath, Some(dim))?.iter().enumerate() {
            table.extend(parse_vector(field, entry, &format!("{rpath}[{j}]"), dim)?);
        }
    }
    Ok(table)
}

fn parse_matrix(
    field: &FieldSpec,
    v: &Value,
    path: &str,
    rows: usize,
    cols: usize,
) -> Result<Matrix, FormatError> {
    let data = as_array(v, path, Some(rows))?
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(field, r, &format!("{path}[{i}]"), cols))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(cols, data))
}

fn parse_dim(v: &Value) -> Result<usize, FormatError> {
    let dim = as_usize(get(v, "", "dim")?, "dim")?;
    if dim == 0 {
        return Err(field_err("dim", "dimension must be at least 1"));
    }
    Ok(dim)
}

/// Parses and fully validates an algebra file. Without a `unity` key the
/// unity is computed from the table.
pub fn read_algebra(text: &str) -> Result<Algebra, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    let field = parse_field(get(&v, "", "field")?, "field")?;
    let dim = parse_dim(&v)?;
    let table = parse_table(&field, get(&v, "", "table")?, "table", dim)?;
    let algebra = match v.get("unity") {
        Some(u) => Algebra::new(
            field.clone(),
            dim,
            table,
            parse_vector(&field, u, "unity", dim)?,
        )?,
        None => Algebra::from_table(field, dim, table)?,
    };
    Ok(algebra)
}

/// A certificate file as read back for verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StoredCertificate {
    Decomposed {
        certificate: Certificate,
        commutative_flag: bool,
        mode: DivisionMode,
    },
    NotPrime(Certificate),
    Inconclusive {
        retries: usize,
    },
}

fn parse_elements(
    field: &FieldSpec,
    v: &Value,
    path: &str,
    count: usize,
    len: usize,
) -> Result<Vec<Element>, FormatError> {
    as_array(v, path, Some(count))?
        .iter()
        .enumerate()
        .map(|(i, e)| parse_vector(field, e, &format!("{path}[{i}]"), len).map(Element::new))
        .collect()
}

/// Parses a certificate against the algebra it claims to describe. Field
/// and dimension must match the algebra. The division-ring report of a
/// decomposition is recomputed from the stored corner table.
pub fn read_certificate(text: &str, algebra: &Algebra) -> Result<StoredCertificate, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    let field = parse_field(get(&v, "", "field")?, "field")?;
    if &field != algebra.field() {
        return Err(field_err(
            "field",
            format!(
                "certificate is over {field}, algebra over {}",
                algebra.field()
            ),
        ));
    }
    let dim = parse_dim(&v)?;
    if dim != algebra.dim() {
        return Err(field_err(
            "dim",
            format!("certificate has dim {dim}, algebra has {}", algebra.dim()),
        ));
    }
    let outcome = get(&v, "", "outcome")?
        .as_str()
        .ok_or_else(|| field_err("outcome", "expected a string"))?;
    match outcome {
        "not_prime" => {
            let w = get(&v, "", "witness")?;
            let a = parse_vector(&field, get(w, "witness", "a")?, "witness.a", dim)?;
            let b = parse_vector(&field, get(w, "witness", "b")?, "witness.b", dim)?;
            Ok(StoredCertificate::NotPrime(Certificate::NotPrime(
                NotPrimeWitness {
                    a: Element::new(a),
                    b: Element::new(b),
                },
            )))
        }
        "inconclusive" => Ok(StoredCertificate::Inconclusive {
            retries: as_usize(get(&v, "", "retries")?, "retries")?,
        }),
        "decomposed" => {
            let seed = as_u64(get(&v, "", "seed")?, "seed")?;
            let n = as_usize(get(&v, "", "n")?, "n")?;
            let idempotents =
                parse_elements(&field, get(&v, "", "idempotents")?, "idempotents", n, dim)?;
            let units_v = as_array(get(&v, "", "units")?, "units", Some(n))?;
            let grid = units_v
                .iter()
                .enumerate()
                .map(|(i, row)| parse_elements(&field, row, &format!("units[{i}]"), n, dim))
                .collect::<Result<Vec<_>, _>>()?;
            let c = get(&v, "", "corner")?;
            let k = as_usize(get(c, "corner", "dim")?, "corner.dim")?;
            if k == 0 {
                return Err(field_err(
                    "corner.dim",
                    "corner dimension must be at least 1",
                ));
            }
            let e = parse_vector(
                &field,
                get(c, "corner", "idempotent")?,
                "corner.idempotent",
                dim,
            )?;
            let basis = parse_elements(&field, get(c, "corner", "basis")?, "corner.basis", k, dim)?;
            let table = parse_table(&field, get(c, "corner", "table")?, "corner.table", k)?;
            let unity = parse_vector(&field, get(c, "corner", "unity")?, "corner.unity", k)?;
            let local = Algebra::from_parts_unchecked(field.clone(), k, table, unity)?;
            let m = n * n * k;
            let forward = parse_matrix(&field, get(&v, "", "forward")?, "forward", m, dim)?;
            let backward = parse_matrix(&field, get(&v, "", "backward")?, "backward", dim, m)?;
            let dr = get(&v, "", "division_ring")?;
            let commutative_flag = get(dr, "division_ring", "commutative")?
                .as_bool()
                .ok_or_else(|| field_err("division_ring.commutative", "expected a boolean"))?;
            let mode = match get(dr, "division_ring", "mode")?.as_str() {
                Some("exhaustive") => DivisionMode::Exhaustive,
                Some("sampled") => DivisionMode::Sampled,
                _ => {
                    return Err(field_err(
                        "division_ring.mode",
                        "expected \"exhaustive\" or \"sampled\"",
                    ))
                }
            };
            let corner = CornerAlgebra::from_parts(Element::new(e), basis, local);
            let division = certify::verify_division_ring(corner.local(), seed);
            let isomorphism = Isomorphism::from_parts(n, corner, forward, backward);
            Ok(StoredCertificate::Decomposed {
                certificate: Certificate::Decomposed(Box::new(Decomposition {
                    idempotents,
                    units: MatrixUnits::from_grid(grid),
                    isomorphism,
                    division,
                })),
                commutative_flag,
                mode,
            })
        }
        other => Err(field_err("outcome", format!("unknown outcome \"{other}\""))),
    }
}

/// Reads a basis sidecar; returns (matrix, inverse).
pub fn read_basis(
    text: &str,
    field: &FieldSpec,
    dim: usize,
) -> Result<(Matrix, Matrix), FormatError> {
    let v: Value = serde_json::from_str(text)?;
    let f = parse_field(get(&v, "", "field")?, "field")?;
    if &f != field {
        return Err(field_err(
            "field",
            format!("basis is over {f}, algebra over {field}"),
        ));
    }
    let p = parse_matrix(field, get(&v, "", "matrix")?, "matrix", dim, dim)?;
    let q = parse_matrix(field, get(&v, "", "inverse")?, "inverse", dim, dim)?;
    Ok((p, q))
}
