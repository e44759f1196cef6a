use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix with overflow-checked arithmetic.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

fn overflow() -> Error {
    Error::Overflow("integer matrix entry")
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged integer matrix".into()));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// `rows × cols` matrix; needed when a dimension is zero.
    pub fn with_shape(rows: usize, cols: usize, data: Vec<i128>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i128) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    let term = self.get(i, k).checked_mul(other.get(k, j)).ok_or_else(overflow)?;
                    acc = acc.checked_add(term).ok_or_else(overflow)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<i128> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a.get(k, k) == 0 {
                match (k + 1..n).find(|&i| a.get(i, k) != 0) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = a.get(i, j).checked_mul(a.get(k, k)).ok_or_else(overflow)?;
                    let y = a.get(i, k).checked_mul(a.get(k, j)).ok_or_else(overflow)?;
                    a.set(i, j, x.checked_sub(y).ok_or_else(overflow)? / prev);
                }
            }
            prev = a.get(k, k);
        }
        Ok(if n == 0 { 1 } else { sign * a.get(n - 1, n - 1) })
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

    /// `row[target] += q · row[source]`.
    fn add_row(&mut self, target: usize, source: usize, q: i128) -> Result<()> {
        for j in 0..self.cols {
            let term = self.get(source, j).checked_mul(q).ok_or_else(overflow)?;
            let v = self.get(target, j).checked_add(term).ok_or_else(overflow)?;
            self.set(target, j, v);
        }
        Ok(())
    }

    fn add_col(&mut self, target: usize, source: usize, q: i128) -> Result<()> {
        for i in 0..self.rows {
            let term = self.get(i, source).checked_mul(q).ok_or_else(overflow)?;
            let v = self.get(i, target).checked_add(term).ok_or_else(overflow)?;
            self.set(i, target, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            let v = self.get(i, j).checked_neg().ok_or_else(overflow)?;
            self.set(i, j, v);
        }
        Ok(())
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ⋯`, including zeros, of length
    /// `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i)).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let pivot = a.get(t, t);
            let mut dirty = false;
            for i in t + 1..r {
                let q = a.get(i, t).div_euclid(pivot);
                if q != 0 {
                    a.add_row(i, t, -q)?;
                    u.add_row(i, t, -q)?;
                }
                dirty |= a.get(i, t) != 0;
            }
            for j in t + 1..c {
                let q = a.get(t, j).div_euclid(pivot);
                if q != 0 {
                    a.add_col(j, t, -q)?;
                    v.add_col(j, t, -q)?;
                }
                dirty |= a.get(t, j) != 0;
            }
            if dirty {
                // a remainder smaller than the pivot is left; move it up
                let (pi, pj) = smallest_in_cross(&a, t);
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| a.get(i, j) % pivot != 0));
            match offender {
                Some(i) => {
                    a.add_row(t, i, 1)?;
                    u.add_row(t, i, 1)?;
                }
                None => break,
            }
        }
        if a.get(t, t) < 0 {
            a.negate_row(t)?;
            u.negate_row(t)?;
        }
    }
    Ok(SmithForm { d: a, u, v })
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j).unsigned_abs();
            if x != 0 && best.is_none_or(|(bi, bj)| x < a.get(bi, bj).unsigned_abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` and column `t` below and right of the pivot.
fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let candidates = (t..a.rows()).map(|i| (i, t)).chain((t + 1..a.cols()).map(|j| (t, j)));
    candidates
        .filter(|&(i, j)| a.get(i, j) != 0)
        .min_by_key(|&(i, j)| a.get(i, j).unsigned_abs())
        .expect("pivot is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m).unwrap();
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.determinant().unwrap().abs(), 1);
        assert_eq!(s.v.determinant().unwrap().abs(), 1);
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert_eq!(s.d.get(i, j), 0);
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[0] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn examples() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(check(&m).diagonal(), vec![1, 6]);
        assert_eq!(check(&IntMatrix::zeros(2, 3)).diagonal(), vec![0, 0]);
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        assert_eq!(check(&m).diagonal(), vec![2, 4]);
    }

    #[test]
    fn rectangular_and_negative() {
        let m = IntMatrix::from_rows(&[vec![-4, 6, 2], vec![10, -3, 7]]).unwrap();
        check(&m);
        let m = IntMatrix::from_rows(&[vec![0, -5], vec![0, 0], vec![3, 0]]).unwrap();
        assert_eq!(check(&m).diagonal(), vec![1, 15]);
        let empty = IntMatrix::with_shape(2, 0, vec![]).unwrap();
        assert_eq!(check(&empty).rank(), 0);
    }

    #[test]
    fn determinant_examples() {
        let m = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, 1, 4], vec![1, 0, 2]]).unwrap();
        assert_eq!(m.determinant().unwrap(), -5);
        assert_eq!(IntMatrix::identity(4).determinant().unwrap(), 1);
    }
}
