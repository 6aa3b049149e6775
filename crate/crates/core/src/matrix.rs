//! Exact rational matrices.
//!
//! Row-major dense matrices over [`Rat`]. Characteristic polynomials
//! come from the Faddeev-LeVerrier recurrence, which also yields the
//! adjugate polynomial matrices the zeta resolvent needs. Exterior
//! powers use lexicographically ordered subset indexing so serialized
//! matrices are reproducible.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rat::{rat_int, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        QMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&n| rat_int(n)).collect())
                .collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn diagonal(diag: &[Rat]) -> Self {
        let mut m = QMatrix::zero(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn scale(&self, c: &Rat) -> QMatrix {
        QMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e * c).collect(),
        )
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn pow(&self, k: usize) -> QMatrix {
        let n = self.rows;
        assert!(self.is_square());
        let mut acc = QMatrix::identity(n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Rat {
        let n = match self.require_square() {
            Ok(n) => n,
            Err(_) => panic!("determinant of non-square matrix"),
        };
        let mut m = self.entries.clone();
        let at = |m: &Vec<Rat>, i: usize, j: usize| m[i * n + j].clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r * n + col].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Rat::zero(),
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = at(&m, col, col);
            det = det * &p;
            for r in col + 1..n {
                let f = &m[r * n + col] / &p;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = &f * &m[col * n + j];
                    m[r * n + j] = &m[r * n + j] - t;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan; None when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.require_square().ok()?;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let t = a[(pivot, j)].clone();
                    a[(pivot, j)] = a[(col, j)].clone();
                    a[(col, j)] = t;
                    let t = inv[(pivot, j)].clone();
                    inv[(pivot, j)] = inv[(col, j)].clone();
                    inv[(col, j)] = t;
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] = &a[(r, j)] - t;
                    let t = &f * &inv[(col, j)];
                    inv[(r, j)] = &inv[(r, j)] - t;
                }
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial det(tI - M), monic of degree n.
    pub fn charpoly(&self) -> Result<QPoly> {
        Ok(self.charpoly_with_adjugate()?.0)
    }

    /// Faddeev-LeVerrier: returns det(tI - M) together with the matrices
    /// M_0, ..., M_{n-1} satisfying adj(tI - M) = sum_k t^{n-1-k} M_k.
    pub fn charpoly_with_adjugate(&self) -> Result<(QPoly, Vec<QMatrix>)> {
        let n = self.require_square()?;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut adj = Vec::with_capacity(n);
        let mut m_k = QMatrix::identity(n);
        for k in 1..=n {
            adj.push(m_k.clone());
            let am = self * &m_k;
            let c = -(am.trace() / rat_int(k as i64));
            coeffs[n - k] = c.clone();
            m_k = am;
            for i in 0..n {
                m_k[(i, i)] = &m_k[(i, i)] + &c;
            }
        }
        // m_k is now A*M_{n-1} + c_0 I = 0 by Cayley-Hamilton.
        debug_assert!(m_k.entries.iter().all(|e| e.is_zero()));
        Ok((QPoly::new(coeffs), adj))
    }

    /// j-th exterior power: the C(n,j) x C(n,j) matrix of j x j minors,
    /// rows and columns indexed by lexicographically ordered j-subsets.
    pub fn exterior_power(&self, j: usize) -> Result<QMatrix> {
        let n = self.require_square()?;
        if j > n {
            return Err(Error::ExteriorIndex { index: j, dim: n });
        }
        if j == 0 {
            return Ok(QMatrix::identity(1));
        }
        let subsets = lex_subsets(n, j);
        let size = subsets.len();
        let mut out = QMatrix::zero(size, size);
        for (a, rows) in subsets.iter().enumerate() {
            for (b, cols) in subsets.iter().enumerate() {
                out[(a, b)] = self.minor(rows, cols);
            }
        }
        Ok(out)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> Rat {
        let k = rows.len();
        let mut sub = QMatrix::zero(k, k);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                sub[(i, j)] = self[(r, c)].clone();
            }
        }
        sub.det()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.denom().is_one())
    }

    /// Integer entry matrix, if all entries are integral.
    pub fn to_bigint_entries(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.entries.iter().map(|e| e.numer().clone()).collect())
    }
}

/// All j-element subsets of {0..n-1} in lexicographic order.
pub fn lex_subsets(n: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(j);
    fn rec(start: usize, n: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, j, cur, out);
            cur.pop();
        }
    }
    rec(0, n, j, &mut cur, &mut out);
    out
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|a| -a.clone()).collect(),
        )
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = QMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] = &out[(i, j)] + t;
                }
            }
        }
        out
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| crate::rat::format_rat(&self[(i, j)]))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// det(I - M) for square M.
pub fn det_i_minus(m: &QMatrix) -> Rat {
    let n = m.rows();
    (&QMatrix::identity(n) - m).det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn d_f() -> QMatrix {
        QMatrix::from_int_rows(&[&[4, 2, 0], &[-1, 1, 0], &[0, 0, 5]])
    }

    fn d_g() -> QMatrix {
        QMatrix::from_int_rows(&[&[-2, 8, 0], &[-1, 4, 0], &[0, 0, -3]])
    }

    #[test]
    fn charpoly_examples() {
        let diag = QMatrix::diagonal(&[rat_int(2), rat_int(3)]);
        assert_eq!(diag.charpoly().unwrap(), QPoly::from_ints(&[6, -5, 1]));
        // cofactor expansion by hand: (t-2)(t-3)(t-5)
        assert_eq!(
            d_f().charpoly().unwrap(),
            QPoly::from_ints(&[-30, 31, -10, 1])
        );
        // roots 0, 2, -3
        assert_eq!(d_g().charpoly().unwrap(), QPoly::from_ints(&[0, -6, 1, 1]));
    }

    #[test]
    fn adjugate_identity() {
        // (tI - M) * adj(tI - M) = charpoly(t) * I, checked at t = 7
        let m = QMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let (chi, adj) = m.charpoly_with_adjugate().unwrap();
        let t = rat_int(7);
        let ti_m = &QMatrix::diagonal(&[t.clone(), t.clone()]) - &m;
        let mut adj_at = QMatrix::zero(2, 2);
        for (k, mk) in adj.iter().enumerate() {
            let mut power = Rat::one();
            for _ in 0..(2 - 1 - k) {
                power = power * &t;
            }
            adj_at = &adj_at + &mk.scale(&power);
        }
        let prod = &ti_m * &adj_at;
        let expected = QMatrix::diagonal(&[chi.eval(&t), chi.eval(&t)]);
        assert_eq!(prod, expected);
    }

    #[test]
    fn exterior_powers() {
        let m = QMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.exterior_power(1).unwrap(), m);
        let d = QMatrix::diagonal(&[rat_int(2), rat_int(3), rat_int(5)]);
        assert_eq!(
            d.exterior_power(2).unwrap(),
            QMatrix::diagonal(&[rat_int(6), rat_int(10), rat_int(15)])
        );
        // top power is the determinant
        let top = d_f().exterior_power(3).unwrap();
        assert_eq!(top, QMatrix::diagonal(&[rat_int(30)]));
        assert!(d.exterior_power(4).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1, 2), rat_int(1)],
            vec![rat_int(0), rat_int(3)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        assert!(QMatrix::from_int_rows(&[&[1, 1], &[1, 1]])
            .inverse()
            .is_none());
    }

    #[test]
    fn det_paper_values() {
        assert_eq!(det_i_minus(&d_f()), rat_int(-8));
        assert_eq!(det_i_minus(&d_g()), rat_int(-4));
    }
}
