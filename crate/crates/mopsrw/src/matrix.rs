//! Small dense matrices over the exact rationals. The truncation windows in
//! this crate stay tiny (tens of rows), so dense storage is the simplest
//! exact representation.

use crate::rational::Rat;
use num::traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    rows: Vec<Vec<Rat>>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            rows: vec![vec![Rat::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.rows[i][i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, rows }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn row_sum(&self, i: usize) -> Rat {
        self.rows[i].iter().fold(Rat::zero(), |acc, v| acc + v)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n);
        let mut out = Matrix::zero(self.n);
        for i in 0..self.n {
            for (k, aik) in self.rows[i].iter().enumerate() {
                if aik.is_zero() {
                    continue;
                }
                for (j, bkj) in rhs.rows[k].iter().enumerate() {
                    if bkj.is_zero() {
                        continue;
                    }
                    out.rows[i][j] += aik * bkj;
                }
            }
        }
        out
    }

    pub fn pow(&self, r: usize) -> Matrix {
        let mut acc = Matrix::identity(self.n);
        for _ in 0..r {
            acc = acc.mul(self);
        }
        acc
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n);
        let mut out = vec![Rat::zero(); self.n];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, aij) in self.rows[i].iter().enumerate() {
                out[j] += vi * aij;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn multiply_and_power() {
        let mut m = Matrix::zero(2);
        m.set(0, 0, rat_int(1));
        m.set(0, 1, rat_int(1));
        m.set(1, 0, rat_int(1));
        // Fibonacci companion matrix squared
        let m2 = m.pow(2);
        assert_eq!(*m2.get(0, 0), rat_int(2));
        assert_eq!(*m2.get(0, 1), rat_int(1));
        assert_eq!(m.pow(0), Matrix::identity(2));
    }

    #[test]
    fn left_application_matches_power() {
        let mut m = Matrix::zero(2);
        m.set(0, 0, rat_int(1));
        m.set(0, 1, rat_int(1));
        m.set(1, 0, rat_int(1));
        let e0 = vec![rat_int(1), rat_int(0)];
        let v = m.apply_left(&m.apply_left(&e0));
        let p = m.pow(2);
        assert_eq!(v[0], *p.get(0, 0));
        assert_eq!(v[1], *p.get(0, 1));
    }
}
