//! Dense matrices over Q(ζ_m) with exact elimination.

use std::fmt;

use serde::Serialize;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct CycloMatrix {
    m: u32,
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl CycloMatrix {
    pub fn zeros(m: u32, rows: usize, cols: usize) -> CycloMatrix {
        CycloMatrix {
            m,
            rows,
            cols,
            data: vec![CycloNum::zero(m); rows * cols],
        }
    }

    pub fn identity(m: u32, n: usize) -> CycloMatrix {
        let mut out = CycloMatrix::zeros(m, n, n);
        for i in 0..n {
            out.set(i, i, CycloNum::one(m));
        }
        out
    }

    pub fn from_fn(
        m: u32,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycloNum,
    ) -> CycloMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(
                    v.conductor(),
                    m,
                    "entry conductor differs from matrix conductor"
                );
                data.push(v);
            }
        }
        CycloMatrix {
            m,
            rows,
            cols,
            data,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycloNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &CycloMatrix) -> Result<CycloMatrix> {
        if self.m != other.m {
            return Err(Error::ConductorMismatch(self.m, other.m));
        }
        if self.cols != other.rows {
            return Err(Error::InconsistentInputs(format!(
                "matrix product {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(CycloMatrix::from_fn(
            self.m,
            self.rows,
            other.cols,
            |i, j| {
                let mut acc = CycloNum::zero(self.m);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            },
        ))
    }

    pub fn transpose(&self) -> CycloMatrix {
        CycloMatrix::from_fn(self.m, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Row echelon reduction in place; returns the pivot columns and the
    /// sign of the applied row permutation.
    fn echelon(&mut self, stop_at_zero_pivot: bool) -> (Vec<usize>, bool) {
        let mut pivots = Vec::new();
        let mut negate = false;
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                if stop_at_zero_pivot {
                    return (pivots, negate);
                }
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
                negate = !negate;
            }
            let inv = self.get(row, col).inv().expect("pivot is nonzero");
            for r in row + 1..self.rows {
                if self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col) * &inv;
                for j in col..self.cols {
                    let upd = self.get(row, j);
                    if upd.is_zero() {
                        continue;
                    }
                    let v = self.get(r, j) - &(&factor * upd);
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (pivots, negate)
    }

    /// Exact rank over Q(ζ_m).
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.echelon(false).0.len()
    }

    /// Exact determinant over Q(ζ_m).
    pub fn det(&self) -> Result<CycloNum> {
        if self.rows != self.cols {
            return Err(Error::InconsistentInputs(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut work = self.clone();
        let (pivots, negate) = work.echelon(true);
        if pivots.len() < self.rows {
            return Ok(CycloNum::zero(self.m));
        }
        let mut acc = CycloNum::one(self.m);
        for i in 0..self.rows {
            acc = &acc * work.get(i, i);
        }
        Ok(if negate { -acc } else { acc })
    }

    /// Solves `self · X = rhs` by Gauss-Jordan elimination with
    /// first-nonzero pivoting. Returns `None` when `self` is singular.
    pub fn solve(&self, rhs: &CycloMatrix) -> Result<Option<CycloMatrix>> {
        if self.rows != self.cols || rhs.rows != self.rows {
            return Err(Error::InconsistentInputs(
                "solve needs a square system".into(),
            ));
        }
        if self.m != rhs.m {
            return Err(Error::ConductorMismatch(self.m, rhs.m));
        }
        let n = self.rows;
        let w = n + rhs.cols;
        let mut aug = CycloMatrix::from_fn(self.m, n, w, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - n).clone()
            }
        });
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !aug.get(r, col).is_zero()) else {
                return Ok(None);
            };
            if p != col {
                for j in 0..w {
                    aug.data.swap(p * w + j, col * w + j);
                }
            }
            let inv = aug.get(col, col).inv()?;
            for j in col..w {
                let v = aug.get(col, j) * &inv;
                aug.set(col, j, v);
            }
            for r in 0..n {
                if r == col || aug.get(r, col).is_zero() {
                    continue;
                }
                let factor = aug.get(r, col).clone();
                for j in col..w {
                    let upd = aug.get(col, j);
                    if upd.is_zero() {
                        continue;
                    }
                    let v = aug.get(r, j) - &(&factor * upd);
                    aug.set(r, j, v);
                }
            }
        }
        Ok(Some(CycloMatrix::from_fn(self.m, n, rhs.cols, |i, j| {
            aug.get(i, n + j).clone()
        })))
    }

    /// Numeric embedding of every entry, row-major.
    pub fn embed(&self) -> Vec<Vec<num_complex::Complex64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(CycloNum::embed).collect())
            .collect()
    }
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycloMatrix[m={}] {}x{}", self.m, self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Rat;

    fn int_matrix(m: u32, rows: &[&[i64]]) -> CycloMatrix {
        CycloMatrix::from_fn(m, rows.len(), rows[0].len(), |i, j| {
            CycloNum::from_int(m, rows[i][j])
        })
    }

    #[test]
    fn rational_determinant_and_rank() {
        let a = int_matrix(1, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det().unwrap(), CycloNum::from_int(1, 18));
        assert_eq!(a.rank(), 3);
        let b = int_matrix(1, &[&[1, 2], &[2, 4], &[0, 0]]);
        assert_eq!(b.rank(), 1);
        let swap = int_matrix(1, &[&[0, 1], &[1, 0]]);
        assert_eq!(swap.det().unwrap(), CycloNum::from_int(1, -1));
    }

    #[test]
    fn solve_with_cyclotomic_entries() {
        let m = 5;
        let z = CycloNum::root(m, 1);
        let a = CycloMatrix::from_fn(m, 2, 2, |i, j| {
            if i == j {
                z.pow(i as u32 + 1)
            } else {
                CycloNum::one(m)
            }
        });
        let x = CycloMatrix::from_fn(m, 2, 1, |i, _| {
            CycloNum::from_rat(m, &Rat::new(i as i64 + 1, 3))
        });
        let b = a.mul(&x).unwrap();
        let solved = a.solve(&b).unwrap().unwrap();
        assert_eq!(solved, x);
    }

    #[test]
    fn singular_solve_is_none() {
        let a = int_matrix(3, &[&[1, 2], &[2, 4]]);
        let b = int_matrix(3, &[&[1], &[1]]);
        assert!(a.solve(&b).unwrap().is_none());
        assert!(a.det().unwrap().is_zero());
    }
}
