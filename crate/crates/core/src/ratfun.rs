//! Normalized rational functions and exact Pade reconstruction.
//!
//! A [`RatFun`] keeps numerator and denominator coprime with the
//! denominator normalized to constant term 1, so every value is
//! expandable as a power series at the origin. Zeta functions satisfy
//! the stronger normal form (both constant terms 1, integer
//! coefficients); [`RatFun::check_zeta_normal_form`] enforces it and a
//! violation is surfaced as an error, never silently accepted.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rat::{rat_int, Rat};
use crate::series::QSeries;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: QPoly,
    den: QPoly,
}

/// Transforms used to assemble Nielsen zeta functions from Lefschetz ones.
#[derive(Clone, Debug)]
pub enum Transform {
    Reciprocal,
    NegateArgument,
    Divide(RatFun),
}

impl RatFun {
    /// Builds num/den in canonical form: coprime, den(0) = 1.
    pub fn new(num: QPoly, den: QPoly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::PoleAtZero);
        }
        if num.is_zero() {
            return Ok(RatFun {
                num: QPoly::zero(),
                den: QPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (num.exact_div(&g), den.exact_div(&g))
        } else {
            (num, den)
        };
        let c0 = den.coeff(0);
        if c0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        let inv = Rat::one() / c0;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(RatFun { num, den })
    }

    pub fn one() -> RatFun {
        RatFun {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> RatFun {
        RatFun {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn eval_at_zero(&self) -> Rat {
        self.num.coeff(0)
    }

    pub fn apply(&self, op: &Transform) -> Result<RatFun> {
        match op {
            Transform::Reciprocal => self.reciprocal(),
            Transform::NegateArgument => Ok(self.negate_argument()),
            Transform::Divide(other) => self.div(other),
        }
    }

    pub fn reciprocal(&self) -> Result<RatFun> {
        if self.num.coeff(0).is_zero() {
            return Err(Error::ZeroAtOrigin);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn negate_argument(&self) -> RatFun {
        RatFun::new(self.num.negate_argument(), self.den.negate_argument())
            .expect("negating the argument preserves den(0) != 0")
    }

    pub fn mul(&self, other: &RatFun) -> Result<RatFun> {
        RatFun::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        if other.num.coeff(0).is_zero() {
            return Err(Error::ZeroAtOrigin);
        }
        RatFun::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn add(&self, other: &RatFun) -> Result<RatFun> {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFun::new(num, &self.den * &other.den)
    }

    /// Power-series expansion at the origin to the given order.
    pub fn series(&self, order: usize) -> QSeries {
        let num = QSeries::from_poly(&self.num, order);
        let den = QSeries::from_poly(&self.den, order);
        num.mul(&den.inverse().expect("den(0) = 1 by invariant"))
    }

    /// True when both constant terms are 1 and all coefficients are integers.
    pub fn is_zeta_normal_form(&self) -> bool {
        self.num.coeff(0).is_one()
            && self.den.coeff(0).is_one()
            && self.num.has_integer_coeffs()
            && self.den.has_integer_coeffs()
    }

    pub fn check_zeta_normal_form(&self) -> Result<()> {
        if self.is_zeta_normal_form() {
            Ok(())
        } else {
            Err(Error::NonIntegerCoefficients(format!(
                "({}) / ({})",
                self.num, self.den
            )))
        }
    }

    /// Factored display over the integers when every root is rational,
    /// e.g. "(1-5z)(1-30z)/((1-z)(1-6z))"; expanded form otherwise.
    /// Display only; the canonical form stays expanded.
    pub fn pretty(&self) -> String {
        match (factor_unit_linear(&self.num), factor_unit_linear(&self.den)) {
            (Some(n), Some(d)) => {
                if self.den.degree() == Some(0) {
                    n
                } else if self.den.degree() == Some(1) {
                    format!("{}/{}", n, d)
                } else {
                    format!("{}/({})", n, d)
                }
            }
            _ => format!("({})/({})", self.num, self.den),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun[{}]", self)
    }
}

/// Writes an integer polynomial with constant term 1 as a product of
/// factors (1 - b z) with integer b, when possible.
fn factor_unit_linear(p: &QPoly) -> Option<String> {
    if !p.has_integer_coeffs() || !p.coeff(0).is_one() {
        return None;
    }
    if p.degree() == Some(0) {
        return Some("1".to_string());
    }
    let mut rest = p.clone();
    let mut factors: Vec<BigInt> = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        let lead = rest.leading()?.numer().clone();
        let mut found = false;
        for d in divisors(&lead) {
            // try the factor (1 - d z), i.e. root z = 1/d
            let candidate = QPoly::new(vec![Rat::one(), -Rat::from_integer(d.clone())]);
            let (q, r) = rest.divrem(&candidate);
            if r.is_zero() {
                factors.push(d);
                rest = q;
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    factors.sort();
    let mut out = String::new();
    for b in factors.iter().rev() {
        if b.is_one() {
            out.push_str("(1-z)");
        } else if *b == BigInt::from(-1) {
            out.push_str("(1+z)");
        } else if b.is_positive() {
            out.push_str(&format!("(1-{}z)", b));
        } else {
            out.push_str(&format!("(1+{}z)", -b));
        }
    }
    Some(out)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    // trial division is fine: callers only factor small zeta coefficients
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            out.push(n.clone() / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    let mut signed = Vec::with_capacity(out.len() * 2);
    for d in out {
        signed.push(d.clone());
        signed.push(-d);
    }
    signed
}

/// Minimal-degree rational function agreeing with the series to full order.
///
/// Requires constant term 1 and order >= 2*dmax + 2. Solves the linear
/// system for denominator coefficients of degree dmax by exact
/// elimination; gcd reduction of the solution then yields the unique
/// minimal fit (two fits of degree <= dmax agreeing to this order are
/// equal as rational functions).
pub fn pade_fit(s: &QSeries, dmax: usize) -> Result<RatFun> {
    if s.order() == 0 || !s.coeff(0).is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    if s.order() < 2 * dmax + 2 {
        return Err(Error::ResourceCap(format!(
            "series order {} below 2*dmax + 2 = {}",
            s.order(),
            2 * dmax + 2
        )));
    }
    // Find q_1..q_dmax with sum_{i=0}^{dmax} q_i s_{m-i} = 0 (q_0 = 1)
    // for m = dmax+1 .. order-1.
    let order = s.order();
    let rows: Vec<Vec<Rat>> = (dmax + 1..order)
        .map(|m| (1..=dmax).map(|i| s.coeff(m - i)).collect())
        .collect();
    let rhs: Vec<Rat> = (dmax + 1..order).map(|m| -s.coeff(m)).collect();
    let q_tail = solve_linear_system(rows, rhs).ok_or(Error::NoPadeFit { dmax })?;
    let mut q_coeffs = vec![Rat::one()];
    q_coeffs.extend(q_tail);
    let den = QPoly::new(q_coeffs);
    // numerator = (s * den) truncated below degree dmax + 1
    let prod = s.mul(&QSeries::from_poly(&den, order));
    let num = QPoly::new(prod.coeffs()[..=dmax.min(order - 1)].to_vec());
    let fit = RatFun::new(num, den)?;
    // defensive full-order verification of the reduced fit
    if fit.series(order) != s.truncate(order) {
        return Err(Error::NoPadeFit { dmax });
    }
    Ok(fit)
}

/// Any exact solution of rows * x = rhs, or None when inconsistent.
/// Free variables are set to zero.
fn solve_linear_system(mut rows: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<Vec<Rat>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let pivot = (r..nrows).find(|&i| !rows[i][c].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = Rat::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..ncols {
                let t = &f * &rows[r][j];
                rows[i][j] = &rows[i][j] - t;
            }
            let t = &f * &rhs[r];
            rhs[i] = &rhs[i] - t;
        }
        pivot_cols.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    // inconsistent if a zero row has nonzero rhs
    for i in r..nrows {
        if !rhs[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = rhs[row].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(QPoly::from_ints(num), QPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn normalization_reduces_and_scales() {
        // (2 + 2z)/(2 - 2z^2) = 1/(1-z)
        let r = rf(&[2, 2], &[2, 0, -2]);
        assert_eq!(r, rf(&[1], &[1, -1]));
        assert!(RatFun::new(QPoly::from_ints(&[1]), QPoly::from_ints(&[0, 1])).is_err());
    }

    #[test]
    fn transforms_match_paper_cases() {
        let lf = rf(&[1, -35, 150], &[1, -7, 6]);
        let rec = lf.reciprocal().unwrap();
        assert_eq!(rec, rf(&[1, -7, 6], &[1, -35, 150]));

        let lg = rf(&[1, 3], &[1, -1]);
        assert_eq!(lg.negate_argument(), rf(&[1, -3], &[1, 1]));

        // L_{g+}(-z) / L_g(-z) = (1+2z)/(1-6z)
        let lg_plus_neg = rf(&[1, -1, -6], &[1, -5, -6]);
        let lg_neg = rf(&[1, -3], &[1, 1]);
        let n_g = lg_plus_neg.div(&lg_neg).unwrap();
        assert_eq!(n_g, rf(&[1, 2], &[1, -6]));
    }

    #[test]
    fn series_expansion() {
        let r = rf(&[1, -2], &[1, -1]);
        let s = r.series(5);
        assert_eq!(
            s.coeffs(),
            &[rat_int(1), rat_int(-1), rat_int(-1), rat_int(-1), rat_int(-1)]
        );
    }

    #[test]
    fn pade_recovers_rational_functions() {
        let r = rf(&[1, -2], &[1, -1]);
        let fit = pade_fit(&r.series(8), 2).unwrap();
        assert_eq!(fit, r);

        // constant series
        let one = QSeries::one(6);
        assert_eq!(pade_fit(&one, 2).unwrap(), RatFun::one());

        // paper zeta function at dmax = 4, order 12
        let lf = rf(&[1, -35, 150], &[1, -7, 6]);
        let fit = pade_fit(&lf.series(12), 4).unwrap();
        assert_eq!(fit, lf);
    }

    #[test]
    fn pade_rejects_exponential() {
        // exp(z) has no degree-1 rational representation
        let e = QSeries::new(vec![
            rat_int(1),
            rat_int(1),
            rat(1, 2),
            rat(1, 6),
            rat(1, 24),
            rat(1, 120),
            rat(1, 720),
            rat(1, 5040),
        ]);
        assert!(pade_fit(&e, 1).is_err());
    }

    #[test]
    fn pretty_factored() {
        let lf = rf(&[1, -35, 150], &[1, -7, 6]);
        assert_eq!(lf.pretty(), "(1-5z)(1-30z)/((1-z)(1-6z))");
        let ng = rf(&[1, 2], &[1, -6]);
        assert_eq!(ng.pretty(), "(1+2z)/(1-6z)");
    }
}
