//! Dense square integer matrices with checked arithmetic, the standard
//! alternating form `J`, and certified order computation in `Sp(2g, Z)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::criterion::{max_order, CriterionError, Genus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("matrix must have positive dimension")]
    Empty,
    #[error("symplectic checks need an even dimension, got {0}")]
    OddDimension(usize),
    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,
    #[error("matrix has determinant {0}, so it has no integer inverse")]
    NotUnimodular(i64),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("order cap {cap} is below the maximal finite order {required} for this genus")]
    CapTooSmall { cap: u64, required: u64 },
    #[error(transparent)]
    Criterion(#[from] CriterionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseMatrixError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing dimension line")]
    MissingDimension,
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

/// Row-major `dim x dim` matrix over the integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        m
    }

    pub fn zero(dim: usize) -> Self {
        IntMatrix {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    found: row.len(),
                    expected: dim,
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(IntMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.dim)
    }

    pub fn is_identity(&self) -> bool {
        self.rows()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        out
    }

    pub fn neg(&self) -> Result<Self, MatrixError> {
        let entries = self
            .entries
            .iter()
            .map(|x| x.checked_neg().ok_or(MatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    let term = i128::from(self.get(i, k)) * i128::from(other.get(k, j));
                    acc = acc.checked_add(term).ok_or(MatrixError::Overflow)?;
                }
                out.entries[i * n + j] = i64::try_from(acc).map_err(|_| MatrixError::Overflow)?;
            }
        }
        Ok(out)
    }

    /// `A^e` by repeated squaring; `A^0 = I`.
    pub fn pow(&self, mut e: u64) -> Result<Self, MatrixError> {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i64, MatrixError> {
        let n = self.dim;
        let mut a: Vec<i128> = self.entries.iter().map(|&x| i128::from(x)).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                let Some(swap) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return Ok(0);
                };
                for c in 0..n {
                    a.swap(k * n + c, swap * n + c);
                }
                sign = -sign;
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot
                        .checked_mul(a[i * n + j])
                        .zip(a[i * n + k].checked_mul(a[k * n + j]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or(MatrixError::Overflow)?;
                    a[i * n + j] = v / prev;
                }
            }
            prev = pivot;
        }
        i64::try_from(sign * a[n * n - 1]).map_err(|_| MatrixError::Overflow)
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let n = self.dim;
        let entries = (0..n)
            .filter(|&i| i != row)
            .flat_map(|i| (0..n).filter(move |&j| j != col).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        IntMatrix {
            dim: n - 1,
            entries,
        }
    }

    /// Exact inverse of a matrix with determinant ±1, via the adjugate.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let det = self.det()?;
        if det != 1 && det != -1 {
            return Err(MatrixError::NotUnimodular(det));
        }
        let n = self.dim;
        if n == 1 {
            return Ok(IntMatrix {
                dim: 1,
                entries: vec![det],
            });
        }
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let cofactor = self.minor(i, j).det()?;
                let signed = if (i + j) % 2 == 0 {
                    cofactor
                } else {
                    -cofactor
                };
                // adj(A)[j][i] = C[i][j]; dividing by ±1 is multiplying by it
                out.entries[j * n + i] = signed * det;
            }
        }
        Ok(out)
    }

    /// Block matrix `[[a, b], [c, d]]` from four equal-size square blocks.
    pub fn from_blocks(
        a: &IntMatrix,
        b: &IntMatrix,
        c: &IntMatrix,
        d: &IntMatrix,
    ) -> Result<Self, MatrixError> {
        let g = a.dim;
        for blk in [b, c, d] {
            if blk.dim != g {
                return Err(MatrixError::DimensionMismatch(g, blk.dim));
            }
        }
        let n = 2 * g;
        let mut out = Self::zero(n);
        for (bi, bj, blk) in [(0, 0, a), (0, g, b), (g, 0, c), (g, g, d)] {
            for i in 0..g {
                for j in 0..g {
                    out.entries[(bi + i) * n + bj + j] = blk.get(i, j);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Renders in the matrix file format.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.dim)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the matrix file format: a dimension line, then one line of
/// space-separated integers per row. Blank lines and `#` comments are
/// skipped.
impl FromStr for IntMatrix {
    type Err = ParseMatrixError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            (!content.is_empty()).then_some((i + 1, content))
        });
        let (line, dim_text) = lines.next().ok_or(ParseMatrixError::MissingDimension)?;
        let dim: usize = dim_text.parse().map_err(|_| ParseMatrixError::Syntax {
            line,
            message: format!("invalid dimension {dim_text:?}"),
        })?;
        if dim == 0 {
            return Err(ParseMatrixError::Syntax {
                line,
                message: "dimension must be positive".into(),
            });
        }
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(dim);
        for (line, content) in lines {
            if rows.len() == dim {
                return Err(ParseMatrixError::RowCount {
                    expected: dim,
                    found: dim + 1,
                });
            }
            let row = content
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>().map_err(|_| ParseMatrixError::Syntax {
                        line,
                        message: format!("invalid integer {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != dim {
                return Err(ParseMatrixError::Syntax {
                    line,
                    message: format!("expected {dim} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != dim {
            return Err(ParseMatrixError::RowCount {
                expected: dim,
                found: rows.len(),
            });
        }
        Ok(IntMatrix::from_rows(&rows).expect("rows validated above"))
    }
}

/// `J = [[0, I_g], [-I_g, 0]]` on `Z^(2g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    genus: usize,
    matrix: IntMatrix,
}

impl SymplecticForm {
    pub fn new(genus: usize) -> Self {
        let id = IntMatrix::identity(genus);
        let zero = IntMatrix::zero(genus);
        let neg = id.neg().expect("negating the identity cannot overflow");
        let matrix = IntMatrix::from_blocks(&zero, &id, &neg, &zero).expect("blocks share a size");
        SymplecticForm { genus, matrix }
    }

    pub fn for_dim(dim: usize) -> Result<Self, MatrixError> {
        if !dim.is_multiple_of(2) {
            return Err(MatrixError::OddDimension(dim));
        }
        Ok(Self::new(dim / 2))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

/// `Aᵀ J A = J`.
pub fn is_symplectic(a: &IntMatrix) -> Result<bool, MatrixError> {
    let form = SymplecticForm::for_dim(a.dim())?;
    let j = form.matrix();
    Ok(a.transpose().mul(j)?.mul(a)? == *j)
}

/// Inverse of a symplectic matrix, `A⁻¹ = -J Aᵀ J`.
pub fn symplectic_inverse(a: &IntMatrix) -> Result<IntMatrix, MatrixError> {
    let form = SymplecticForm::for_dim(a.dim())?;
    let j = form.matrix();
    j.mul(&a.transpose())?.mul(j)?.neg()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "order")]
pub enum MatrixOrder {
    Finite(u64),
    Infinite,
}

impl MatrixOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            MatrixOrder::Finite(m) => Some(m),
            MatrixOrder::Infinite => None,
        }
    }
}

impl fmt::Display for MatrixOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixOrder::Finite(m) => write!(f, "{m}"),
            MatrixOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// Smallest `m <= cap` with `A^m = I`, or `Infinite`.
///
/// `Infinite` is a proof, not a timeout: every finite order in `Sp(2g, Z)`
/// is at most `max_order(g)`, and the cap is required to reach that.
pub fn matrix_order(a: &IntMatrix, cap: u64) -> Result<MatrixOrder, MatrixError> {
    if !is_symplectic(a)? {
        return Err(MatrixError::NotSymplectic);
    }
    let genus = Genus::new((a.dim() / 2) as u32)?;
    let (required, _) = max_order(genus)?;
    if cap < required {
        return Err(MatrixError::CapTooSmall { cap, required });
    }
    let mut power = a.clone();
    for m in 1..=cap {
        if power.is_identity() {
            return Ok(MatrixOrder::Finite(m));
        }
        if m < cap {
            power = power.mul(a)?;
        }
    }
    Ok(MatrixOrder::Infinite)
}

/// [`matrix_order`] with the cap set to the maximal order for the genus.
pub fn certified_order(a: &IntMatrix) -> Result<MatrixOrder, MatrixError> {
    if !a.dim().is_multiple_of(2) {
        return Err(MatrixError::OddDimension(a.dim()));
    }
    let genus = Genus::new((a.dim() / 2) as u32)?;
    let (cap, _) = max_order(genus)?;
    matrix_order(a, cap)
}
