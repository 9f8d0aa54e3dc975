//! General banded matrices with an LU factorization using partial pivoting.
//!
//! Storage follows the LAPACK `gbtrf` layout: column-major, with `kl` extra
//! rows on top reserved for the fill-in produced by row interchanges. Entry
//! `(i, j)` lives in row `kl + ku + i - j` of column `j`.

#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    ld: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    /// Zero `n×n` matrix with `kl` sub- and `ku` super-diagonals.
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ld = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            ld,
            data: vec![0.0; ld * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        j * self.ld + self.kl + self.ku + i - j
    }

    fn in_band(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && i <= j + self.kl && j <= i + self.ku
    }

    /// Writes entry `(i, j)`.
    ///
    /// Panics if `(i, j)` lies outside the declared band.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        assert!(self.in_band(i, j), "entry ({i}, {j}) outside band");
        let o = self.offset(i, j);
        self.data[o] = value;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) {
            self.data[self.offset(i, j)]
        } else {
            0.0
        }
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0.0 {
                continue;
            }
            let lo = j.saturating_sub(self.ku);
            let hi = (j + self.kl).min(self.n - 1);
            for (i, yi) in y.iter_mut().enumerate().take(hi + 1).skip(lo) {
                *yi += self.data[self.offset(i, j)] * xj;
            }
        }
        y
    }

    /// Factorizes `P A = L U` in place.
    pub fn factor(mut self) -> Result<BandLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let kv = kl + ku;
        let mut pivots = vec![0usize; n];
        // last column touched by U so far
        let mut ju = 0usize;

        for j in 0..n {
            let km = kl.min(n - 1 - j);

            let mut jp = 0;
            let mut best = self.data[self.offset(j, j)].abs();
            for i in 1..=km {
                let v = self.data[self.offset(j + i, j)].abs();
                if v > best {
                    best = v;
                    jp = i;
                }
            }
            pivots[j] = j + jp;
            if best == 0.0 {
                return Err(Error::SingularPivot { column: j });
            }

            ju = ju.max((j + ku + jp).min(n - 1));
            if jp != 0 {
                for c in j..=ju {
                    let a = self.offset(j, c);
                    let b = self.offset(j + jp, c);
                    self.data.swap(a, b);
                }
            }

            let pivot = self.data[self.offset(j, j)];
            let col = j * self.ld + kv;
            for i in 1..=km {
                self.data[col + i] /= pivot;
            }

            for c in (j + 1)..=ju {
                let t = self.data[self.offset(j, c)];
                if t == 0.0 {
                    continue;
                }
                let base_c = c * self.ld + kv + j - c;
                for i in 1..=km {
                    let l = self.data[col + i];
                    self.data[base_c + i] -= l * t;
                }
            }
        }

        Ok(BandLu {
            factors: self,
            pivots,
        })
    }
}

/// LU factors of a [`BandMatrix`]; `U` has bandwidth `kl + ku`.
#[derive(Debug, Clone)]
pub struct BandLu {
    factors: BandMatrix,
    pivots: Vec<usize>,
}

impl BandLu {
    /// Solves `A x = b`, overwriting `b` with `x`.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let a = &self.factors;
        let n = a.n;
        assert_eq!(b.len(), n);
        let kv = a.kl + a.ku;

        for j in 0..n {
            let p = self.pivots[j];
            if p != j {
                b.swap(j, p);
            }
            let bj = b[j];
            if bj == 0.0 {
                continue;
            }
            let km = a.kl.min(n - 1 - j);
            let col = j * a.ld + kv;
            for i in 1..=km {
                b[j + i] -= a.data[col + i] * bj;
            }
        }

        for j in (0..n).rev() {
            b[j] /= a.data[a.offset(j, j)];
            let bj = b[j];
            if bj == 0.0 {
                continue;
            }
            let lo = j.saturating_sub(kv);
            for (i, bi) in b.iter_mut().enumerate().take(j).skip(lo) {
                *bi -= a.data[a.offset(i, j)] * bj;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
        let n = b.len();
        for c in 0..n {
            let p = (c..n)
                .max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())
                .unwrap();
            a.swap(c, p);
            b.swap(c, p);
            for r in (c + 1)..n {
                let f = a[r][c] / a[c][c];
                for k in c..n {
                    a[r][k] -= f * a[c][k];
                }
                b[r] -= f * b[c];
            }
        }
        let mut x = vec![0.0; n];
        for r in (0..n).rev() {
            let s: f64 = ((r + 1)..n).map(|k| a[r][k] * x[k]).sum();
            x[r] = (b[r] - s) / a[r][r];
        }
        x
    }

    #[test]
    fn matches_dense_elimination_on_indefinite_matrix() {
        let n = 12;
        let (kl, ku) = (3, 2);
        let mut band = BandMatrix::zeros(n, kl, ku);
        let mut dense = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i.saturating_sub(kl)..=(i + ku).min(n - 1) {
                // small diagonal forces row interchanges
                let v = if i == j {
                    0.01 * (i as f64 - 5.5)
                } else {
                    libm::sin(1.0 + i as f64 * 0.7 + j as f64 * 1.3)
                };
                band.set(i, j, v);
                dense[i][j] = v;
            }
        }
        let b: Vec<f64> = (0..n).map(|i| libm::cos(i as f64)).collect();
        let expected = dense_solve(dense, b.clone());

        let lu = band.clone().factor().unwrap();
        let mut x = b.clone();
        lu.solve_in_place(&mut x);
        for (xi, ei) in x.iter().zip(&expected) {
            assert!((xi - ei).abs() < 1e-10 * (1.0 + ei.abs()), "{xi} vs {ei}");
        }
        let r = band.mul_vec(&x);
        for (ri, bi) in r.iter().zip(&b) {
            assert!((ri - bi).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_matrix_reports_singular_pivot() {
        let band = BandMatrix::zeros(4, 1, 1);
        assert!(matches!(
            band.factor(),
            Err(Error::SingularPivot { column: 0 })
        ));
    }

    #[test]
    #[should_panic]
    fn writing_outside_band_panics() {
        let mut band = BandMatrix::zeros(4, 1, 1);
        band.set(3, 0, 1.0);
    }
}
