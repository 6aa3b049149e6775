//! Univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending degree order; the zero
//! polynomial is the empty coefficient vector. Beyond ring arithmetic
//! this module carries the real-root machinery the spectral layer is
//! built on: Euclidean gcd, Yun squarefree decomposition, Sturm chains
//! and exact root counting over intervals with infinite endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_int, sign, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    /// Builds a polynomial, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::new(vec![c])
    }

    /// The monomial c * t^k.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    pub fn from_ints(ints: &[i64]) -> Self {
        QPoly::new(ints.iter().map(|&n| rat_int(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic rescaling of a nonzero polynomial.
    pub fn monic(&self) -> QPoly {
        match self.leading() {
            None => QPoly::zero(),
            Some(lc) => {
                let inv = Rat::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, div: &QPoly) -> (QPoly, QPoly) {
        let dd = div.degree().expect("division by zero polynomial");
        let lead = div.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let factor = &rem[k] / &lead;
            if !factor.is_zero() {
                for i in 0..dd {
                    let t = &factor * &div.coeffs[i];
                    rem[k - dd + i] = &rem[k - dd + i] - t;
                }
            }
            rem[k] = Rat::zero();
            quot[k - dd] = factor;
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, div: &QPoly) -> QPoly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Squarefree part self / gcd(self, self').
    pub fn squarefree_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.monic()
        } else {
            self.exact_div(&g).monic()
        }
    }

    /// Yun decomposition: returns (f_i, i) with self = lc * prod f_i^i,
    /// the f_i squarefree, pairwise coprime and monic.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, usize)> {
        let f = self.monic();
        if f.is_zero() || f.degree() == Some(0) {
            return Vec::new();
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div(&a);
        let mut c = df.exact_div(&a);
        let mut out = Vec::new();
        let mut i = 1usize;
        loop {
            let d = &c - &b.derivative();
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            if b.degree() == Some(0) {
                break;
            }
            c = d.exact_div(&a);
            i += 1;
        }
        out
    }

    /// Reversed coefficients: t^deg * self(1/t).
    pub fn reciprocal(&self) -> QPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        QPoly::new(coeffs)
    }

    /// self(-t).
    pub fn negate_argument(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Number of roots at t = 0, i.e. leading zero coefficients.
    pub fn order_at_zero(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by t^k; panics if the low-order coefficients are nonzero.
    pub fn shift_down(&self, k: usize) -> QPoly {
        assert!(self.order_at_zero() >= k);
        QPoly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// 1 + max |a_i / a_n|: every real root lies in (-bound, bound).
    pub fn cauchy_root_bound(&self) -> Rat {
        let lc = self.leading().expect("root bound of zero polynomial");
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = (c / lc).abs();
            if r > m {
                m = r;
            }
        }
        m + Rat::one()
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({})", self)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            if i == 1 {
                write!(f, "z")?;
            } else if i > 1 {
                write!(f, "z^{}", i)?;
            }
        }
        Ok(())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Interval endpoint for exact root counting.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

/// Signed-remainder (Sturm-type) chain of a polynomial pair.
pub struct SturmChain {
    chain: Vec<QPoly>,
}

impl SturmChain {
    /// Chain starting from (p, q) with p_{i+1} = -rem(p_{i-1}, p_i).
    pub fn from_pair(p: &QPoly, q: &QPoly) -> Self {
        let mut chain = vec![p.clone()];
        if !q.is_zero() {
            chain.push(q.clone());
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(-&r);
            }
        }
        SturmChain { chain }
    }

    /// Standard Sturm chain of p (pair (p, p')).
    pub fn new(p: &QPoly) -> Self {
        SturmChain::from_pair(p, &p.derivative())
    }

    fn sign_at(p: &QPoly, at: &Bound) -> i32 {
        match at {
            Bound::Finite(x) => sign(&p.eval(x)),
            Bound::PosInf => p.leading().map_or(0, sign),
            Bound::NegInf => p.leading().map_or(0, |lc| {
                let s = sign(lc);
                if p.degree().unwrap_or(0) % 2 == 0 {
                    s
                } else {
                    -s
                }
            }),
        }
    }

    pub fn sign_variations(&self, at: &Bound) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for p in &self.chain {
            let s = Self::sign_at(p, at);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots of p in the half-open interval (a, b].
    /// Requires p(a) != 0 and p(b) != 0 at finite endpoints.
    pub fn count_roots(&self, a: &Bound, b: &Bound) -> usize {
        let va = self.sign_variations(a);
        let vb = self.sign_variations(b);
        va.saturating_sub(vb)
    }

    /// Cauchy index of q/p over (a, b): jumps from -inf to +inf minus
    /// jumps from +inf to -inf, for the chain built from (p, q).
    pub fn cauchy_index(&self, a: &Bound, b: &Bound) -> i64 {
        self.sign_variations(a) as i64 - self.sign_variations(b) as i64
    }
}

/// Distinct real roots of a squarefree polynomial in (a, b], a, b finite,
/// with p(a) != 0, p(b) != 0.
pub fn count_real_roots_between(p: &QPoly, a: &Rat, b: &Rat) -> usize {
    SturmChain::new(p).count_roots(&Bound::Finite(a.clone()), &Bound::Finite(b.clone()))
}

/// Ensures the polynomial is nonzero.
pub fn require_nonzero(p: &QPoly) -> Result<()> {
    if p.is_zero() {
        Err(Error::ZeroPolynomial)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn divrem_and_gcd() {
        // (t-1)(t-2) = t^2 - 3t + 2
        let p = QPoly::from_ints(&[2, -3, 1]);
        let d = QPoly::from_ints(&[-1, 1]);
        let (q, r) = p.divrem(&d);
        assert!(r.is_zero());
        assert_eq!(q, QPoly::from_ints(&[-2, 1]));

        let a = &p * &QPoly::from_ints(&[5, 1]);
        let b = &d * &QPoly::from_ints(&[5, 1]);
        let g = a.gcd(&b);
        assert_eq!(g, (&d * &QPoly::from_ints(&[5, 1])).monic());
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^2 (t+2)^3
        let f1 = QPoly::from_ints(&[-1, 1]);
        let f2 = QPoly::from_ints(&[2, 1]);
        let p = &(&(&f1 * &f1) * &(&f2 * &f2)) * &f2;
        let dec = p.squarefree_decomposition();
        assert_eq!(dec, vec![(f1.clone(), 2), (f2.clone(), 3)]);
    }

    #[test]
    fn sturm_counts_roots() {
        // roots at -2, 1/2, 3
        let p = &(&QPoly::from_ints(&[2, 1]) * &QPoly::new(vec![rat(-1, 2), rat_int(1)]))
            * &QPoly::from_ints(&[-3, 1]);
        let chain = SturmChain::new(&p);
        assert_eq!(chain.count_roots(&Bound::NegInf, &Bound::PosInf), 3);
        assert_eq!(
            chain.count_roots(&Bound::Finite(rat_int(0)), &Bound::PosInf),
            2
        );
        assert_eq!(
            chain.count_roots(&Bound::NegInf, &Bound::Finite(rat_int(0))),
            1
        );
        assert_eq!(
            chain.count_roots(&Bound::Finite(rat_int(1)), &Bound::Finite(rat_int(3))),
            1
        );
    }

    #[test]
    fn eval_and_display() {
        let p = QPoly::from_ints(&[1, -35, 150]);
        assert_eq!(p.eval(&rat_int(1)), rat_int(116));
        assert_eq!(p.to_string(), "1 - 35z + 150z^2");
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = QPoly::from_ints(&[-30, 31, -10, 1]); // roots 2, 3, 5
        let b = p.cauchy_root_bound();
        assert!(b > rat_int(5));
    }
}
