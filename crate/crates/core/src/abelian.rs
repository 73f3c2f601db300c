//! Relation matrices, Smith normal form and abelian invariants.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::words::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix text is empty")]
    Empty,
    #[error("bad matrix header: {0}")]
    Header(String),
    #[error("bad matrix entry `{0}`")]
    Entry(String),
    #[error("expected {expected} entries, found {found}")]
    Count { expected: usize, found: usize },
    #[error("rows have different lengths")]
    Ragged,
}

/// A rectangular matrix of unbounded integers, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of machine integers; `cols` is needed for
    /// matrices with no rows.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::Ragged);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] -= q * row[source]`.
    fn sub_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(source, j) * q;
            self.data[target * self.cols + j] -= v;
        }
    }

    /// `col[target] -= q * col[source]`.
    fn sub_col(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, source) * q;
            self.data[i * self.cols + target] -= v;
        }
    }
}

/// Text format: a header line `rows cols`, then the entries in row-major
/// order separated by whitespace.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f)?;
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        let mut dim = |what: &str| -> Result<usize, MatrixError> {
            let t = tokens
                .next()
                .ok_or_else(|| MatrixError::Header(format!("missing {what}")))?;
            t.parse()
                .map_err(|_| MatrixError::Header(format!("{what} `{t}` is not a size")))
        };
        if s.trim().is_empty() {
            return Err(MatrixError::Empty);
        }
        let rows = dim("row count")?;
        let cols = dim("column count")?;
        let data = tokens
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| MatrixError::Entry(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if data.len() != rows * cols {
            return Err(MatrixError::Count {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }
}

/// Exponent sums: entry `(i, j)` is the exponent sum of generator `j` in
/// relator `i`.
pub fn relation_matrix(presentation: &Presentation) -> IntMatrix {
    let cols = presentation.rank();
    let mut m = IntMatrix::zeros(presentation.relators().len(), cols);
    for (i, r) in presentation.relators().iter().enumerate() {
        for j in 0..cols {
            m.set(i, j, BigInt::from(r.exponent_sum(j)));
        }
    }
    m
}

/// The nonzero invariant factors `d1 | d2 | … | dk` of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigUint>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Smith normal form by integer row and column operations.
///
/// At each step the nonzero entry of least absolute value in the remaining
/// block becomes the pivot; its row and column are cleared by division with
/// remainder (a nonzero remainder becomes the next pivot), and an entry not
/// divisible by the pivot is brought into the pivot row by a row addition.
pub fn smith_normal_form(matrix: &IntMatrix) -> SmithForm {
    let mut m = matrix.clone();
    let mut diagonal = Vec::new();
    let (rows, cols) = (m.rows, m.cols);
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&m, t, |_, _| true) else {
            break;
        };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        loop {
            let pivot = m.get(t, t).clone();
            let mut remainder = false;
            for i in t + 1..rows {
                let q = m.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    m.sub_row(i, t, &q);
                }
                remainder |= !m.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = m.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    m.sub_col(j, t, &q);
                }
                remainder |= !m.get(t, j).is_zero();
            }
            if remainder {
                // Remainders are smaller than the pivot: promote the least.
                let (pi, pj) = min_entry(&m, t, |i, j| (i == t) != (j == t))
                    .expect("a nonzero remainder exists");
                m.swap_rows(t, pi);
                m.swap_cols(t, pj);
                continue;
            }
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => m.sub_row(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        diagonal.push(m.get(t, t).abs().to_biguint().expect("absolute value"));
    }
    SmithForm { diagonal }
}

/// Position of a nonzero entry of least absolute value in the block below
/// and right of `(t, t)`, restricted by `allow`.
fn min_entry(
    m: &IntMatrix,
    t: usize,
    allow: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let v = m.get(i, j);
            if v.is_zero() || !allow(i, j) {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|b| a < b.2) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// The abelian group `G/G'` as `Z^free_rank × C_t1 × … × C_tk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    /// Invariant factors greater than 1, each dividing the next.
    pub torsion: Vec<BigUint>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// `|G/G'|`, or `None` when the quotient is infinite.
    pub fn order(&self) -> Option<BigUint> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("C{t}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

pub fn abelian_invariants(presentation: &Presentation) -> AbelianInvariants {
    let snf = smith_normal_form(&relation_matrix(presentation));
    AbelianInvariants {
        free_rank: presentation.rank() - snf.rank(),
        torsion: snf
            .diagonal
            .into_iter()
            .filter(|d| *d > BigUint::one())
            .collect(),
    }
}
