//! Smith normal form over the integers.
//!
//! Diagonalization by unimodular row and column operations, tracking
//! the left transform so integer linear systems can be tested for
//! solvability. Cokernel orders and invariant factors come from the
//! diagonal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BigInt>,
}

impl IMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMatrix::new(n, n, vec![BigInt::zero(); n * n]);
        for i in 0..n {
            m[(i, i)] = BigInt::from(1);
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Diagonal form U * M * V = diag(d) with unimodular U, V; returns
/// (U, diagonal). V is not tracked.
pub fn smith_diagonalize(m: &IMatrix) -> (IMatrix, Vec<BigInt>) {
    let mut a = m.clone();
    let mut u = IMatrix::identity(m.rows);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        loop {
            // smallest nonzero entry in the remaining block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    if !a[(i, j)].is_zero()
                        && pivot
                            .map(|(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                            .unwrap_or(true)
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            swap_rows(&mut a, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut a, t, pj);
            let mut clean = true;
            for i in t + 1..a.rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = div_round(&a[(i, t)], &a[(t, t)]);
                if !q.is_zero() {
                    row_sub(&mut a, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                }
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..a.cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = div_round(&a[(t, j)], &a[(t, t)]);
                if !q.is_zero() {
                    col_sub(&mut a, j, t, &q);
                }
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
    let diag = (0..n).map(|i| a[(i, i)].clone()).collect();
    (u, diag)
}

/// Canonical invariant factors d_1 | d_2 | ... from any diagonal form.
pub fn invariant_factors(diag: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag.iter().map(|x| x.abs()).collect();
    let n = d.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 1..n {
                if d[j].is_zero() && d[i].is_zero() {
                    continue;
                }
                if !d[i].is_zero() && (&d[j] % &d[i]).is_zero() {
                    continue;
                }
                let g = d[i].gcd(&d[j]);
                let l = if g.is_zero() {
                    BigInt::zero()
                } else {
                    (&d[i] * &d[j]) / &g
                };
                d[i] = g;
                d[j] = l.abs();
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    d
}

/// Order of coker(M) = Z^rows / M Z^cols, None when infinite.
pub fn cokernel_order(m: &IMatrix) -> Option<BigInt> {
    let (_, diag) = smith_diagonalize(m);
    if diag.len() < m.rows {
        return None; // fewer columns than rows: cokernel has free rank
    }
    let mut order = BigInt::from(1);
    for d in &diag {
        if d.is_zero() {
            return None;
        }
        order *= d.abs();
    }
    Some(order)
}

/// Whether M y = b has an integer solution y.
pub fn solvable(m: &IMatrix, b: &[BigInt]) -> bool {
    assert_eq!(b.len(), m.rows);
    let (u, diag) = smith_diagonalize(m);
    let ub = u.mul_vec(b);
    for (i, entry) in ub.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                if !(entry % d).is_zero() {
                    return false;
                }
            }
            _ => {
                if !entry.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

fn swap_rows(m: &mut IMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.entries.swap(a * m.cols + j, b * m.cols + j);
    }
}

fn swap_cols(m: &mut IMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        m.entries.swap(i * m.cols + a, i * m.cols + b);
    }
}

fn row_sub(m: &mut IMatrix, target: usize, source: usize, q: &BigInt) {
    for j in 0..m.cols {
        let t = q * &m[(source, j)];
        m[(target, j)] -= t;
    }
}

fn col_sub(m: &mut IMatrix, target: usize, source: usize, q: &BigInt) {
    for i in 0..m.rows {
        let t = q * &m[(i, source)];
        m[(i, target)] -= t;
    }
}

/// Rounded division minimizing the remainder's absolute value.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IMatrix {
        IMatrix::new(
            rows.len(),
            rows[0].len(),
            rows.iter()
                .flat_map(|r| r.iter().map(|&x| BigInt::from(x)))
                .collect(),
        )
    }

    #[test]
    fn diagonalization_is_consistent() {
        let m = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (_, diag) = smith_diagonalize(&m);
        let inv = invariant_factors(&diag);
        assert_eq!(
            inv,
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
    }

    #[test]
    fn cokernel_orders() {
        // I - D for D = [[4,2],[-1,1]]: det = 2
        let m = im(&[&[-3, -2], &[1, 0]]);
        assert_eq!(cokernel_order(&m), Some(BigInt::from(2)));
        let singular = im(&[&[1, 1], &[1, 1]]);
        assert_eq!(cokernel_order(&singular), None);
    }

    #[test]
    fn solvability() {
        // 2x = 4 solvable, 2x = 3 not
        let m = im(&[&[2]]);
        assert!(solvable(&m, &[BigInt::from(4)]));
        assert!(!solvable(&m, &[BigInt::from(3)]));
        // paper group: diag(0,0,2) l = -(0,0,1) unsolvable
        let s = im(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 2]]);
        assert!(!solvable(&s, &[BigInt::zero(), BigInt::zero(), BigInt::from(-1)]));
        assert!(solvable(&s, &[BigInt::zero(), BigInt::zero(), BigInt::from(-2)]));
    }
}
