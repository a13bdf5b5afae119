//! File formats: JSON for families, unitaries and reports, line-oriented
//! text for block matrices and group listings.
//!
//! Floats are written with 17 significant digits so output is byte-stable
//! and round-trips exactly.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, Serializer};

use crate::error::{Error, Result};
use crate::heisenberg::{DenseUnitary, MonomialUnitary, Unitary};
use crate::mub::{ClassMatrix, MubBasis, MubFamily};
use crate::phasering::{BlockMatrix, DimensionProfile};

/// Pretty JSON formatter writing every float as `{:.16e}`.
struct FixedFloat<'a> {
    inner: serde_json::ser::PrettyFormatter<'a>,
}

impl Formatter for FixedFloat<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

/// Serializes `value` as indented JSON with fixed-width floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let fmt = FixedFloat { inner: serde_json::ser::PrettyFormatter::with_indent(b" ") };
    let mut ser = Serializer::with_formatter(&mut out, fmt);
    value.serialize(&mut ser).expect("in-memory serialization");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), message: e.to_string() }
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize, Deserialize)]
struct LabelFile {
    kind: String,
    #[serde(rename = "A")]
    a: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct BasisFile {
    label: LabelFile,
    vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    p: u64,
    n: u32,
    #[serde(rename = "N")]
    dim: usize,
    field_modulus: Vec<u64>,
    bases: Vec<BasisFile>,
}

pub fn family_to_json(family: &MubFamily) -> String {
    let file = FamilyFile {
        p: family.p,
        n: family.n,
        dim: family.dim(),
        field_modulus: family.field_modulus.clone(),
        bases: family
            .bases
            .iter()
            .map(|b| BasisFile {
                label: match &b.label {
                    ClassMatrix::Standard { .. } => LabelFile { kind: "I0".into(), a: Vec::new() },
                    ClassMatrix::Graph { a, .. } => LabelFile { kind: "AI".into(), a: a.clone() },
                },
                vectors: b.vectors.iter().map(|v| v.iter().map(pair).collect()).collect(),
            })
            .collect(),
    };
    to_json(&file)
}

fn shape_error(message: String) -> Error {
    Error::Parse { line: 0, message }
}

pub fn family_from_json(text: &str) -> Result<MubFamily> {
    let file: FamilyFile = serde_json::from_str(text).map_err(json_err)?;
    if !crate::modarith::is_prime(file.p) || file.n == 0 {
        return Err(shape_error(format!("p = {} and n = {} do not describe a prime power", file.p, file.n)));
    }
    let dim = (file.p as usize).checked_pow(file.n).filter(|&d| d == file.dim);
    let dim = dim.ok_or_else(|| shape_error(format!("N = {} is not p^n", file.dim)))?;
    let nn = file.n as usize;
    let bases = file
        .bases
        .into_iter()
        .enumerate()
        .map(|(idx, b)| {
            let label = match b.label.kind.as_str() {
                "I0" => ClassMatrix::Standard { p: file.p, n: nn },
                "AI" => {
                    let ok = b.label.a.len() == nn
                        && b.label.a.iter().all(|row| row.len() == nn && row.iter().all(|&x| x < file.p));
                    if !ok {
                        return Err(shape_error(format!("basis {idx}: label A must be {nn}x{nn} over Z_{}", file.p)));
                    }
                    ClassMatrix::Graph { p: file.p, a: b.label.a }
                }
                other => return Err(shape_error(format!("basis {idx}: unknown label kind {other:?}"))),
            };
            if b.vectors.len() != dim || b.vectors.iter().any(|v| v.len() != dim) {
                return Err(shape_error(format!("basis {idx}: expected {dim} vectors of length {dim}")));
            }
            let vectors = b
                .vectors
                .into_iter()
                .map(|v| v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
                .collect();
            Ok(MubBasis { label, vectors })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MubFamily { p: file.p, n: file.n, field_modulus: file.field_modulus, bases })
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum UnitaryFile {
    Monomial { dims: Vec<u64>, phase_order: u64, entries: Vec<(usize, u64)> },
    Dense { dims: Vec<u64>, entries: Vec<Vec<[f64; 2]>> },
}

/// Monomial entries are `[row, phase exponent]` per column; dense entries
/// are rows of `[re, im]`.
pub fn unitary_to_json(u: &Unitary) -> String {
    let file = match u {
        Unitary::Monomial(m) => UnitaryFile::Monomial {
            dims: m.profile().dims().to_vec(),
            phase_order: m.phase_order(),
            entries: m.perm().iter().copied().zip(m.phases().iter().copied()).collect(),
        },
        Unitary::Dense(d) => {
            let n = d.dim();
            UnitaryFile::Dense {
                dims: d.profile().dims().to_vec(),
                entries: (0..n).map(|r| (0..n).map(|c| pair(&d.get(r, c))).collect()).collect(),
            }
        }
    };
    to_json(&file)
}

pub fn unitary_from_json(text: &str) -> Result<Unitary> {
    match serde_json::from_str(text).map_err(json_err)? {
        UnitaryFile::Monomial { dims, phase_order, entries } => {
            let profile = DimensionProfile::new(&dims)?;
            if phase_order != profile.phase_order() {
                return Err(shape_error(format!("phase order {phase_order} does not match dims")));
            }
            let (perm, phase) = entries.into_iter().unzip();
            Ok(MonomialUnitary::from_parts(&profile, perm, phase)?.into())
        }
        UnitaryFile::Dense { dims, entries } => {
            let profile = DimensionProfile::new(&dims)?;
            let data = entries.into_iter().flatten().map(|[re, im]| Complex64::new(re, im)).collect();
            Ok(DenseUnitary::new(&profile, data)?.into())
        }
    }
}

fn dims_header(profile: &DimensionProfile) -> String {
    let dims: Vec<String> = profile.dims().iter().map(u64::to_string).collect();
    format!("dims: {}", dims.join(","))
}

fn parse_header(line: &str, lineno: usize) -> Result<DimensionProfile> {
    let rest = line
        .trim()
        .strip_prefix("dims:")
        .ok_or_else(|| Error::Parse { line: lineno, message: "expected header \"dims: a,b,...\"".into() })?;
    DimensionProfile::parse(rest.trim()).map_err(|e| Error::Parse { line: lineno, message: e.to_string() })
}

/// Significant lines with 1-based line numbers; `#` starts a comment.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Header line, then one line of canonical coefficients per matrix row.
pub fn write_matrix(h: &BlockMatrix) -> String {
    let m = h.size();
    let mut out = dims_header(h.profile());
    out.push('\n');
    for r in 0..m {
        let row: Vec<String> = (0..m).map(|s| h.coeff(r, s).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_coefficients(
    profile: &DimensionProfile,
    tokens: &[(usize, &str)],
) -> Result<BlockMatrix> {
    let m = profile.size();
    if tokens.len() != m * m {
        let line = tokens.last().map_or(1, |t| t.0);
        return Err(Error::Parse { line, message: format!("expected {} entries, found {}", m * m, tokens.len()) });
    }
    let mut coeffs = Vec::with_capacity(m * m);
    for (idx, &(line, tok)) in tokens.iter().enumerate() {
        let value: u64 = tok
            .parse()
            .map_err(|_| Error::Parse { line, message: format!("{tok:?} is not a nonnegative integer") })?;
        let (r, s) = (idx / m, idx % m);
        let bound = profile.coeff_bound(r, s);
        if value >= bound {
            return Err(Error::Parse {
                line,
                message: format!("entry ({r}, {s}) = {value} is outside the canonical range [0, {bound})"),
            });
        }
        coeffs.push(value);
    }
    BlockMatrix::from_coefficients(profile, coeffs)
}

/// Parses a matrix file. Entries may be separated by whitespace or commas
/// and wrap freely across lines.
pub fn read_matrix(text: &str) -> Result<BlockMatrix> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty matrix file".into() })?;
    let profile = parse_header(header, lineno)?;
    let tokens: Vec<(usize, &str)> = lines
        .flat_map(|(ln, l)| l.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(move |t| (ln, t)))
        .collect();
    parse_coefficients(&profile, &tokens)
}

/// Header line, then one matrix per line as row-major canonical
/// coefficients.
pub fn write_listing<'a>(profile: &DimensionProfile, group: impl IntoIterator<Item = &'a BlockMatrix>) -> String {
    let mut out = dims_header(profile);
    out.push('\n');
    for h in group {
        out.push_str(&h.to_line());
        out.push('\n');
    }
    out
}

pub fn read_listing(text: &str) -> Result<(DimensionProfile, Vec<BlockMatrix>)> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty listing".into() })?;
    let profile = parse_header(header, lineno)?;
    let group = lines
        .map(|(ln, l)| {
            let tokens: Vec<(usize, &str)> = l.split_whitespace().map(|t| (ln, t)).collect();
            parse_coefficients(&profile, &tokens).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { line: ln, message },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((profile, group))
}
