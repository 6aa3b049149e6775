//! Exact real-root isolation and sign evaluation at algebraic points.
//!
//! Roots of squarefree rational polynomials are isolated in open
//! rational intervals by Sturm bisection. Signs of other polynomials
//! at an isolated root are decided by shrinking the interval until it
//! is free of their roots. This gives exact answers for questions like
//! "which real root has the largest modulus" without leaving rational
//! arithmetic.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Bound, QPoly, SturmChain};
use crate::rat::{rat_int, sign, Rat};

/// Refinement cap; isolation questions here terminate long before this.
const MAX_REFINE: usize = 4096;

/// Open interval (lo, hi) with f(lo) != 0, f(hi) != 0 containing
/// exactly one root of the polynomial it was isolated for.
#[derive(Clone, Debug)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    /// Range of |root| values compatible with the interval.
    fn abs_range(&self) -> (Rat, Rat) {
        if !self.lo.is_negative() {
            (self.lo.clone(), self.hi.clone())
        } else if !self.hi.is_positive() {
            (self.hi.abs(), self.lo.abs())
        } else {
            (Rat::zero(), self.hi.clone().max(self.lo.abs()))
        }
    }
}

/// A rational point in (lo, hi) that is not a root of `avoid`.
fn interior_non_root(avoid: &QPoly, lo: &Rat, hi: &Rat) -> Rat {
    let width = hi - lo;
    let mut denom = rat_int(2);
    for _ in 0..MAX_REFINE {
        let candidate = lo + &width / &denom;
        if !avoid.eval(&candidate).is_zero() {
            return candidate;
        }
        denom = denom * rat_int(2);
    }
    unreachable!("a polynomial has finitely many roots");
}

/// Isolating intervals for all real roots of a squarefree polynomial,
/// sorted in ascending root order.
pub fn isolate_real_roots(f: &QPoly) -> Vec<RootInterval> {
    let deg = match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    let chain = SturmChain::new(f);
    let bound = f.cauchy_root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let count = chain.count_roots(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
        match count {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = interior_non_root(f, &lo, &hi);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
        assert!(out.len() <= deg, "isolated more intervals than the degree");
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// One bisection step keeping the unique root of f; the new endpoints
/// avoid roots of `avoid` as well.
pub fn refine_once(f: &QPoly, chain: &SturmChain, iv: &RootInterval, avoid: &QPoly) -> RootInterval {
    let mid = interior_non_root(&(f * avoid), &iv.lo, &iv.hi);
    let left = chain.count_roots(&Bound::Finite(iv.lo.clone()), &Bound::Finite(mid.clone()));
    if left == 1 {
        RootInterval {
            lo: iv.lo.clone(),
            hi: mid,
        }
    } else {
        RootInterval {
            lo: mid,
            hi: iv.hi.clone(),
        }
    }
}

/// Sign of g at the unique root of f inside the interval: -1, 0 or +1.
pub fn sign_at_root(g: &QPoly, f: &QPoly, iv: &RootInterval) -> Result<i32> {
    if g.is_zero() {
        return Ok(0);
    }
    let f_chain = SturmChain::new(f);
    // g vanishes at the root iff gcd(f, g) has the root in the interval
    let w = f.gcd(g);
    if w.degree().unwrap_or(0) > 0 {
        let w_chain = SturmChain::new(&w);
        if w_chain.count_roots(&Bound::Finite(iv.lo.clone()), &Bound::Finite(iv.hi.clone())) > 0 {
            return Ok(0);
        }
    }
    let g_chain = SturmChain::new(&g.squarefree_part());
    let mut cur = iv.clone();
    for _ in 0..MAX_REFINE {
        let g_roots =
            g_chain.count_roots(&Bound::Finite(cur.lo.clone()), &Bound::Finite(cur.hi.clone()));
        let at_lo = g.eval(&cur.lo);
        if g_roots == 0 && !at_lo.is_zero() {
            return Ok(sign(&at_lo));
        }
        cur = refine_once(f, &f_chain, &cur, g);
    }
    Err(Error::Undecidable(
        "interval refinement did not separate the root".into(),
    ))
}

/// Index of the interval whose root has strictly maximal modulus.
/// The caller guarantees such a root exists and is unique.
pub fn max_modulus_root(f: &QPoly, intervals: &[RootInterval]) -> Result<usize> {
    match intervals.len() {
        0 => return Err(Error::Undecidable("no real roots to compare".into())),
        1 => return Ok(0),
        _ => {}
    }
    // only the leftmost and rightmost roots can have maximal modulus
    let chain = SturmChain::new(f);
    let one = QPoly::one();
    let mut first = intervals[0].clone();
    let mut last = intervals[intervals.len() - 1].clone();
    for _ in 0..MAX_REFINE {
        let (f_lo, f_hi) = first.abs_range();
        let (l_lo, l_hi) = last.abs_range();
        if f_lo > l_hi {
            return Ok(0);
        }
        if l_lo > f_hi {
            return Ok(intervals.len() - 1);
        }
        first = refine_once(f, &chain, &first, &one);
        last = refine_once(f, &chain, &last, &one);
    }
    Err(Error::Undecidable(
        "could not separate extremal root moduli".into(),
    ))
}

/// Checks |root| > 1 for the isolated root, refining as needed.
pub fn root_modulus_exceeds_one(f: &QPoly, iv: &RootInterval) -> Result<bool> {
    let chain = SturmChain::new(f);
    let one = QPoly::one();
    let unit = rat_int(1);
    let mut cur = iv.clone();
    for _ in 0..MAX_REFINE {
        let (lo, hi) = cur.abs_range();
        if lo > unit {
            return Ok(true);
        }
        if hi <= unit {
            return Ok(false);
        }
        cur = refine_once(f, &chain, &cur, &one);
    }
    Err(Error::Undecidable(
        "could not compare root modulus with 1".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn isolates_simple_roots() {
        // roots -2, 1/2, 3
        let f = &(&QPoly::from_ints(&[2, 1]) * &QPoly::new(vec![rat(-1, 2), rat_int(1)]))
            * &QPoly::from_ints(&[-3, 1]);
        let ivs = isolate_real_roots(&f);
        assert_eq!(ivs.len(), 3);
        assert!(ivs[0].lo < rat_int(-2) && rat_int(-2) < ivs[0].hi);
        assert!(ivs[1].lo < rat(1, 2) && rat(1, 2) < ivs[1].hi);
        assert!(ivs[2].lo < rat_int(3) && rat_int(3) < ivs[2].hi);
    }

    #[test]
    fn sign_evaluation() {
        // root sqrt(2) of t^2 - 2
        let f = QPoly::from_ints(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&f);
        assert_eq!(ivs.len(), 2);
        let sqrt2 = ivs.last().unwrap();
        // g = t - 1 is positive at sqrt(2), g = t - 2 negative, f itself zero
        assert_eq!(sign_at_root(&QPoly::from_ints(&[-1, 1]), &f, sqrt2).unwrap(), 1);
        assert_eq!(sign_at_root(&QPoly::from_ints(&[-2, 1]), &f, sqrt2).unwrap(), -1);
        assert_eq!(sign_at_root(&f, &f, sqrt2).unwrap(), 0);
    }

    #[test]
    fn max_modulus_picks_dominant() {
        // roots 2.618..., 0.381... of t^2 - 3t + 1
        let f = QPoly::from_ints(&[1, -3, 1]);
        let ivs = isolate_real_roots(&f);
        assert_eq!(max_modulus_root(&f, &ivs).unwrap(), 1);
        assert!(root_modulus_exceeds_one(&f, &ivs[1]).unwrap());
        assert!(!root_modulus_exceeds_one(&f, &ivs[0]).unwrap());

        // roots -5 and 2: dominant is the negative one
        let g = QPoly::from_ints(&[-10, 3, 1]);
        let ivs = isolate_real_roots(&g);
        assert_eq!(max_modulus_root(&g, &ivs).unwrap(), 0);
    }
}
