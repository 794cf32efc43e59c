//! Dense matrices over `ℚ(ω_r)` with exact Gaussian elimination.

use std::fmt::Write as _;
use std::ops::Mul;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    r: usize,
    entries: Vec<CyclotomicNumber>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, r: usize) -> Self {
        ExactMatrix { rows, cols, r, entries: vec![CyclotomicNumber::zero(r); rows * cols] }
    }

    pub fn identity(size: usize, r: usize) -> Self {
        let mut m = Self::zeros(size, size, r);
        for i in 0..size {
            m.set(i, i, CyclotomicNumber::one(r));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CyclotomicNumber>>, r: usize) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != cols) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        if rows.iter().flatten().any(|x| x.r() != r) {
            return Err(Error::invalid(format!("matrix entries must all lie in ℚ(ω_{r})")));
        }
        let n_rows = rows.len();
        Ok(ExactMatrix { rows: n_rows, cols, r, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based.
    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CyclotomicNumber) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CyclotomicNumber] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut none = ExactMatrix::zeros(self.rows, 0, self.r);
        work.eliminate(&mut none)
    }

    /// Exact inverse, or `None` when singular. Errors on non-square input.
    pub fn inverse(&self) -> Result<Option<ExactMatrix>> {
        if !self.is_square() {
            return Err(Error::invalid(format!("cannot invert a {}x{} matrix", self.rows, self.cols)));
        }
        let mut work = self.clone();
        let mut aug = ExactMatrix::identity(self.rows, self.r);
        let rank = work.eliminate(&mut aug);
        Ok((rank == self.rows).then_some(aug))
    }

    /// Gauss-Jordan on `self`, mirroring row operations on `aug`. Returns the
    /// rank. On a full-rank square input `self` ends as the identity and
    /// `aug` as the inverse of the original.
    ///
    /// Pivot: among nonzero candidates in the column, the one with the fewest
    /// coefficient bits.
    fn eliminate(&mut self, aug: &mut ExactMatrix) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let pivot =
                (rank..self.rows).filter(|&i| !self.get(i, col).is_zero()).min_by_key(|&i| self.get(i, col).bit_size());
            let Some(p) = pivot else { continue };
            self.swap_rows(p, rank);
            aug.swap_rows(p, rank);
            let inv = self.get(rank, col).inv().expect("pivot is nonzero");
            self.scale_row(rank, &inv);
            aug.scale_row(rank, &inv);
            for i in 0..self.rows {
                if i == rank || self.get(i, col).is_zero() {
                    continue;
                }
                let factor = self.get(i, col).clone();
                self.sub_row_multiple(i, rank, &factor);
                aug.sub_row_multiple(i, rank, &factor);
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b || self.cols == 0 {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, s: &CyclotomicNumber) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            if !self.entries[idx].is_zero() {
                self.entries[idx] = &self.entries[idx] * s;
            }
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &CyclotomicNumber) {
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let t = &self.entries[target * self.cols + j] - &(factor * s);
            self.entries[target * self.cols + j] = t;
        }
    }

    /// One line per row, cells separated by a single space, each cell as its
    /// coordinate list `a0/b0,a1/b1,...`.
    pub fn to_plain_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# rows={} cols={} r={}", self.rows, self.cols, self.r);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(CyclotomicNumber::to_coord_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        assert_eq!(self.r, rhs.r, "field mismatch");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols, self.r);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}
