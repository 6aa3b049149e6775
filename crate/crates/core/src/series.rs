//! Truncated power series over the rationals.
//!
//! A [`QSeries`] is a fixed-length coefficient window; the order is
//! the truncation length (number of stored coefficients, starting at
//! the constant term). The exponential uses the standard recurrence
//! driven by (exp S)' = S' exp S, so everything stays exact.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rat::{rat_int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

impl QSeries {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        QSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        QSeries::new(vec![Rat::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        let mut s = QSeries::zero(order);
        if order > 0 {
            s.coeffs[0] = Rat::one();
        }
        s
    }

    /// Truncation length: the number of stored coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn from_poly(p: &QPoly, order: usize) -> Self {
        QSeries::new((0..order).map(|k| p.coeff(k)).collect())
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        QSeries::new((0..order).map(|k| self.coeff(k)).collect())
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        QSeries::new((0..order).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let mut out = vec![Rat::zero(); order];
        for i in 0..order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..order - i {
                let t = &self.coeffs[i] * &other.coeffs[j];
                out[i + j] = &out[i + j] + t;
            }
        }
        QSeries::new(out)
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> Result<QSeries> {
        if self.order() == 0 || self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNotOne);
        }
        let order = self.order();
        let mut inv = vec![Rat::zero(); order];
        inv[0] = Rat::one() / self.coeffs[0].clone();
        for k in 1..order {
            let mut acc = Rat::zero();
            for i in 1..=k {
                let t = &self.coeffs[i] * &inv[k - i];
                acc = acc + t;
            }
            inv[k] = -(acc / self.coeffs[0].clone());
        }
        Ok(QSeries::new(inv))
    }

    /// exp(S) for S with zero constant term, truncated to the same order.
    pub fn exp(&self) -> Result<QSeries> {
        if self.order() > 0 && !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        if order == 0 {
            return Ok(QSeries::new(Vec::new()));
        }
        let mut e = vec![Rat::zero(); order];
        e[0] = Rat::one();
        // (k+1) e_{k+1} = sum_{i=0}^{k} (i+1) s_{i+1} e_{k-i}
        for k in 0..order - 1 {
            let mut acc = Rat::zero();
            for i in 0..=k {
                if i + 1 >= order {
                    break;
                }
                let t = &self.coeffs[i + 1] * rat_int((i + 1) as i64);
                acc = acc + t * &e[k - i];
            }
            e[k + 1] = acc / rat_int((k + 1) as i64);
        }
        Ok(QSeries::new(e))
    }

    /// log(S) for S with constant term 1, truncated to the same order.
    pub fn log(&self) -> Result<QSeries> {
        if self.order() == 0 || !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let order = self.order();
        // log(S)' = S'/S, integrated with zero constant term.
        let deriv = QSeries::new(
            (1..order)
                .map(|k| &self.coeffs[k] * rat_int(k as i64))
                .collect(),
        );
        let quotient = deriv.mul(&self.truncate(order - 1).inverse()?);
        let mut out = vec![Rat::zero(); order];
        for k in 1..order {
            out[k] = quotient.coeff(k - 1) / rat_int(k as i64);
        }
        Ok(QSeries::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn exp_of_zero_is_one() {
        let s = QSeries::zero(5);
        assert_eq!(s.exp().unwrap(), QSeries::one(5));
    }

    #[test]
    fn exp_of_z() {
        // 1, 1, 1/2, 1/6
        let s = QSeries::new(vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)]);
        let e = s.exp().unwrap();
        assert_eq!(
            e.coeffs(),
            &[rat_int(1), rat_int(1), rat(1, 2), rat(1, 6)]
        );
    }

    #[test]
    fn exp_rebuilds_rational_series() {
        // sum (1 - 2^k) z^k / k = log((1-2z)/(1-z)); exp gives 1, -1, -1, -1
        let s = QSeries::new(vec![rat_int(0), rat_int(-1), rat(-3, 2), rat(-7, 3)]);
        let e = s.exp().unwrap();
        assert_eq!(
            e.coeffs(),
            &[rat_int(1), rat_int(-1), rat_int(-1), rat_int(-1)]
        );
    }

    #[test]
    fn exp_rejects_nonzero_constant() {
        let s = QSeries::one(3);
        assert!(s.exp().is_err());
    }

    #[test]
    fn log_inverts_exp() {
        let s = QSeries::new(vec![rat_int(0), rat(2, 3), rat(-1, 5), rat_int(4), rat(7, 2)]);
        let back = s.exp().unwrap().log().unwrap();
        assert_eq!(back, s);
    }
}
