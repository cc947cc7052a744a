//! CSS stabilizer codes of surface complexes.
//!
//! One qubit per edge. X-type generators sit on faces and Z-type generators
//! on vertices, so `d_x` is measured in the primal graph and `d_z` in the
//! dual graph.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::SurfaceComplex;
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVec, RowSpace};
use crate::homology::boundary_matrices;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub n: usize,
    /// `|F| × n`, row `f` is the support of the face operator `X_f`.
    pub hx: BinaryMatrix,
    /// `|V| × n`, row `v` is the support of the vertex operator `Z_v`.
    pub hz: BinaryMatrix,
    pub k: usize,
    pub genus: Option<u32>,
    pub logical_x: Vec<BitVec>,
    pub logical_z: Vec<BitVec>,
    pub source_label: String,
    pub warnings: Vec<String>,
}

impl CssCode {
    /// A code from raw check matrices; logical operators are not extracted.
    pub fn from_checks(
        hx: BinaryMatrix,
        hz: BinaryMatrix,
        genus: Option<u32>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::Dimension {
                op: "from_checks",
                expected: hx.cols(),
                found: hz.cols(),
            });
        }
        let n = hx.cols();
        let k = n.saturating_sub(hx.rank() + hz.rank());
        Ok(Self {
            n,
            hx,
            hz,
            k,
            genus,
            logical_x: Vec::new(),
            logical_z: Vec::new(),
            source_label: label.into(),
            warnings: Vec::new(),
        })
    }

    pub fn rank_hx(&self) -> usize {
        self.hx.rank()
    }

    pub fn rank_hz(&self) -> usize {
        self.hz.rank()
    }
}

pub fn build_css(c: &SurfaceComplex) -> Result<CssCode> {
    let chain = boundary_matrices(c);
    let hx = chain.d2.transpose();
    let hz = chain.d1;
    let mut code = CssCode::from_checks(hx, hz, Some(c.genus()), c.label())?;
    let degenerate = c.degenerate_faces();
    if !degenerate.is_empty() {
        code.warnings.push(format!(
            "degenerate complex: faces {degenerate:?} repeat an edge in their boundary"
        ));
    }
    let expected = 2 * c.genus() as usize;
    if code.k != expected {
        return Err(Error::BettiMismatch {
            betti1: code.k,
            expected,
        });
    }
    let (lx, lz) = logical_basis(&code)?;
    code.logical_x = lx;
    code.logical_z = lz;
    Ok(code)
}

/// Outcome of the stabilizer algebra checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerReport {
    pub n: usize,
    pub k: usize,
    pub rank_hx: usize,
    pub rank_hz: usize,
    pub independent_generators: usize,
    pub face_operators: usize,
    pub vertex_operators: usize,
}

/// Checks commutation, the two global dependencies, and the generator count
/// `|V| + |F| - 2`.
pub fn verify_stabilizers(code: &CssCode) -> Result<StabilizerReport> {
    for (f, x) in code.hx.row_iter().enumerate() {
        for (v, z) in code.hz.row_iter().enumerate() {
            if x.dot(z) {
                return Err(Error::Stabilizer(format!(
                    "X_f{f} and Z_v{v} anticommute (odd overlap)"
                )));
            }
        }
    }
    let all_rows = |m: &BinaryMatrix| {
        let mut acc = BitVec::zeros(m.cols());
        for r in m.row_iter() {
            acc.xor_assign(r);
        }
        acc
    };
    if let Some(e) = all_rows(&code.hx).ones().next() {
        return Err(Error::Stabilizer(format!(
            "product of all face operators is not the identity (qubit {e})"
        )));
    }
    if let Some(e) = all_rows(&code.hz).ones().next() {
        return Err(Error::Stabilizer(format!(
            "product of all vertex operators is not the identity (qubit {e})"
        )));
    }
    let rank_hx = code.rank_hx();
    let rank_hz = code.rank_hz();
    let faces = code.hx.rows();
    let vertices = code.hz.rows();
    let independent = rank_hx + rank_hz;
    if independent + 2 != faces + vertices {
        return Err(Error::Stabilizer(format!(
            "{independent} independent generators, expected |V| + |F| - 2 = {}",
            (faces + vertices) as i64 - 2
        )));
    }
    Ok(StabilizerReport {
        n: code.n,
        k: code.n - independent,
        rank_hx,
        rank_hz,
        independent_generators: independent,
        face_operators: faces,
        vertex_operators: vertices,
    })
}

/// Representatives of `ker(hz)/rowspace(hx)` and `ker(hx)/rowspace(hz)`,
/// with the Z side transformed so that `logical_x[i]·logical_z[j] = δ_ij`.
pub fn logical_basis(code: &CssCode) -> Result<(Vec<BitVec>, Vec<BitVec>)> {
    let quotient = |kernel_of: &BinaryMatrix, modulo: &BinaryMatrix| {
        let mut span = RowSpace::from_matrix(modulo);
        kernel_of
            .kernel_basis()
            .into_iter()
            .filter(|v| span.insert(v.clone()))
            .collect::<Vec<_>>()
    };
    let lx = quotient(&code.hz, &code.hx);
    let lz = quotient(&code.hx, &code.hz);
    if lx.len() != code.k {
        return Err(Error::LogicalDimension {
            expected: code.k,
            found: lx.len(),
        });
    }
    if lz.len() != code.k {
        return Err(Error::LogicalDimension {
            expected: code.k,
            found: lz.len(),
        });
    }
    let k = code.k;
    let mut pairing = BinaryMatrix::zeros(k, k);
    for (i, x) in lx.iter().enumerate() {
        for (j, z) in lz.iter().enumerate() {
            pairing.set(i, j, x.dot(z));
        }
    }
    let inv = pairing.inverse().ok_or(Error::SingularPairing)?;
    let lz = (0..k)
        .map(|j| {
            let mut z = BitVec::zeros(code.n);
            for (kk, zk) in lz.iter().enumerate() {
                if inv.get(kk, j) {
                    z.xor_assign(zk);
                }
            }
            z
        })
        .collect();
    Ok((lx, lz))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckFormat {
    Alist,
    DenseText,
    Json,
}

impl FromStr for CheckFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alist" => Ok(Self::Alist),
            "dense-text" => Ok(Self::DenseText),
            "json" => Ok(Self::Json),
            other => Err(Error::Parse(format!("unknown check format '{other}'"))),
        }
    }
}

impl fmt::Display for CheckFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Alist => "alist",
            Self::DenseText => "dense-text",
            Self::Json => "json",
        })
    }
}

/// Which check matrix a single-matrix format carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMatrix {
    Hx,
    Hz,
}

/// Writes `which` in alist or dense-text format, or the whole code as JSON.
pub fn export_checks<W: Write>(
    code: &CssCode,
    format: CheckFormat,
    which: CheckMatrix,
    mut sink: W,
) -> Result<()> {
    let m = match which {
        CheckMatrix::Hx => &code.hx,
        CheckMatrix::Hz => &code.hz,
    };
    match format {
        CheckFormat::Alist => write_alist(m, sink),
        CheckFormat::DenseText => write_dense(m, sink),
        CheckFormat::Json => {
            serde_json::to_writer(&mut sink, &CodeJson::from(code))?;
            sink.write_all(b"\n")?;
            Ok(())
        }
    }
}

/// MacKay alist: `n m`, max weights, column weights, row weights, then the
/// 1-indexed supports of every column and every row, zero-padded.
pub fn write_alist<W: Write>(m: &BinaryMatrix, mut sink: W) -> Result<()> {
    let t = m.transpose();
    let col_w = m.col_weights();
    let row_w = m.row_weights();
    let max_c = col_w.iter().copied().max().unwrap_or(0);
    let max_r = row_w.iter().copied().max().unwrap_or(0);
    let join = |xs: &mut dyn Iterator<Item = usize>| {
        xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    };
    writeln!(sink, "{} {}", m.cols(), m.rows())?;
    writeln!(sink, "{max_c} {max_r}")?;
    writeln!(sink, "{}", join(&mut col_w.iter().copied()))?;
    writeln!(sink, "{}", join(&mut row_w.iter().copied()))?;
    for (lines, pad) in [(&t, max_c), (m, max_r)] {
        for row in lines.row_iter() {
            let ones: Vec<usize> = row.ones().map(|i| i + 1).collect();
            let padding = pad - ones.len();
            writeln!(
                sink,
                "{}",
                join(&mut ones.into_iter().chain(std::iter::repeat_n(0, padding)))
            )?;
        }
    }
    Ok(())
}

pub fn read_alist<R: BufRead>(source: R) -> Result<BinaryMatrix> {
    let lines: Vec<String> = source.lines().collect::<std::io::Result<_>>()?;
    let mut lines = lines.iter().filter(|l| !l.trim().is_empty());
    let mut numbers = |what: &str| -> Result<Vec<usize>> {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("alist: missing {what}")))?;
        line.split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("alist: bad number '{t}' in {what}")))
            })
            .collect()
    };
    let header = numbers("dimensions")?;
    let [n, m] = header[..] else {
        return Err(Error::Parse("alist: first line must be 'n m'".into()));
    };
    numbers("maximum weights")?;
    let col_w = numbers("column weights")?;
    let row_w = numbers("row weights")?;
    if col_w.len() != n || row_w.len() != m {
        return Err(Error::Parse(
            "alist: weight list lengths do not match n m".into(),
        ));
    }
    let mut mat = BinaryMatrix::zeros(m, n);
    for (c, &w) in col_w.iter().enumerate() {
        let entries: Vec<usize> = numbers("column support")?
            .into_iter()
            .filter(|&x| x != 0)
            .collect();
        if entries.len() != w {
            return Err(Error::Parse(format!(
                "alist: column {} has weight {}, expected {w}",
                c + 1,
                entries.len()
            )));
        }
        for r in entries {
            if r > m {
                return Err(Error::Parse(format!("alist: row index {r} exceeds {m}")));
            }
            mat.set(r - 1, c, true);
        }
    }
    for (r, &w) in row_w.iter().enumerate() {
        let entries: Vec<usize> = numbers("row support")?
            .into_iter()
            .filter(|&x| x != 0)
            .collect();
        let from_cols: Vec<usize> = mat.row(r).ones().map(|c| c + 1).collect();
        let mut sorted = entries.clone();
        sorted.sort_unstable();
        if entries.len() != w || sorted != from_cols {
            return Err(Error::Parse(format!(
                "alist: row {} disagrees with the column lists",
                r + 1
            )));
        }
    }
    Ok(mat)
}

pub fn write_dense<W: Write>(m: &BinaryMatrix, mut sink: W) -> Result<()> {
    for row in m.row_iter() {
        let line: String = (0..m.cols())
            .map(|c| if row.get(c) { '1' } else { '0' })
            .collect();
        writeln!(sink, "{line}")?;
    }
    Ok(())
}

pub fn read_dense<R: BufRead>(source: R) -> Result<BinaryMatrix> {
    let mut rows = Vec::new();
    let mut cols = None;
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bits = line
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!(
                    "dense-text line {}: unexpected '{other}'",
                    i + 1
                ))),
            })
            .collect::<Result<Vec<bool>>>()?;
        match cols {
            None => cols = Some(bits.len()),
            Some(c) if c != bits.len() => {
                return Err(Error::Parse(format!(
                    "dense-text line {}: {} columns, expected {c}",
                    i + 1,
                    bits.len()
                )))
            }
            Some(_) => {}
        }
        rows.push(BitVec::from_bools(&bits));
    }
    let cols = cols.ok_or_else(|| Error::Parse("dense-text: no rows".into()))?;
    BinaryMatrix::from_rows(cols, rows)
}

/// JSON form of a code's checks and metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeJson {
    pub n: usize,
    pub k: usize,
    pub genus: Option<u32>,
    pub hx: Vec<Vec<u8>>,
    pub hz: Vec<Vec<u8>>,
    pub label: String,
}

fn dense_rows(m: &BinaryMatrix) -> Vec<Vec<u8>> {
    m.row_iter()
        .map(|r| (0..m.cols()).map(|c| r.get(c) as u8).collect())
        .collect()
}

fn matrix_from_rows(n: usize, rows: &[Vec<u8>]) -> Result<BinaryMatrix> {
    let bits = rows
        .iter()
        .map(|r| {
            if r.len() != n || r.iter().any(|&b| b > 1) {
                return Err(Error::Parse(
                    "json: each check row must hold n entries of 0 or 1".into(),
                ));
            }
            Ok(BitVec::from_indices(
                n,
                r.iter()
                    .enumerate()
                    .filter(|(_, &b)| b == 1)
                    .map(|(i, _)| i),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    BinaryMatrix::from_rows(n, bits)
}

impl From<&CssCode> for CodeJson {
    fn from(code: &CssCode) -> Self {
        Self {
            n: code.n,
            k: code.k,
            genus: code.genus,
            hx: dense_rows(&code.hx),
            hz: dense_rows(&code.hz),
            label: code.source_label.clone(),
        }
    }
}

impl CodeJson {
    pub fn into_code(self) -> Result<CssCode> {
        let hx = matrix_from_rows(self.n, &self.hx)?;
        let hz = matrix_from_rows(self.n, &self.hz)?;
        CssCode::from_checks(hx, hz, self.genus, self.label)
    }
}
