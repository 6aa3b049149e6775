//! Exact classification of eigenvalues by modulus and the determinant
//! character of the expanding part.
//!
//! Root counting never approximates: multiplicities come from Yun
//! decomposition, unit-circle roots from the self-inversive gcd factor
//! compressed through u = t + 1/t and counted by Sturm sequences in
//! [-2, 2], and the remaining roots from a Cayley transform whose
//! Cauchy index (again a Sturm computation) counts roots of the
//! transformed polynomial in the upper half plane, i.e. roots of the
//! original inside the unit disk.
//!
//! The character eps(x) = det of rho(x) acting on the expanding block
//! is decided by a ladder: the trivial split when nothing expands, the
//! sign of det(I - rho(x) D^k) det(I - D^k) products when some product
//! is nonzero, and otherwise an exact evaluation on the dominant
//! eigenline of the exterior power of D^T, where the expanding block's
//! top wedge lives. Every ladder output is cross-checked: eps must be
//! multiplicative and consistent with the product inequalities.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::crystal::HolonomyGroup;
use crate::error::{Error, Result};
use crate::maps::IntertwinerTable;
use crate::matrix::{det_i_minus, QMatrix};
use crate::poly::{require_nonzero, Bound, QPoly, SturmChain};
use crate::rat::{rat, rat_int, sign, Rat};
use crate::realroot::{isolate_real_roots, max_modulus_root, root_modulus_exceeds_one, sign_at_root};

/// Root census of a polynomial relative to the unit circle,
/// with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusCounts {
    pub inside: usize,
    pub on: usize,
    pub outside: usize,
}

/// Counts of real eigenvalues strictly above 1 and strictly below -1,
/// with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealCounts {
    pub above_one: usize,
    pub below_minus_one: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharMethod {
    TrivialSplit,
    ProductTest,
    CertifiedNumeric,
}

/// The determinant character of the expanding block, one sign per
/// holonomy element, together with the method that decided each value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub values: Vec<i8>,
    pub methods: Vec<CharMethod>,
}

impl Character {
    pub fn value(&self, element: usize) -> i8 {
        self.values[element]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }
}

/// Full spectral data of a map's linear part relative to a holonomy group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralSplit {
    pub modulus: ModulusCounts,
    pub real: RealCounts,
    pub character: Character,
}

/// Exact counts of roots inside / on / outside the unit circle.
pub fn count_roots_by_modulus(p: &QPoly) -> Result<ModulusCounts> {
    require_nonzero(p)?;
    let deg = p.degree().unwrap_or(0);
    let zeros = p.order_at_zero();
    let reduced = p.shift_down(zeros);
    let mut counts = ModulusCounts {
        inside: zeros,
        on: 0,
        outside: 0,
    };
    for (factor, mult) in reduced.squarefree_decomposition() {
        let (i, o, u) = squarefree_modulus_counts(&factor)?;
        counts.inside += mult * i;
        counts.on += mult * o;
        counts.outside += mult * u;
    }
    debug_assert_eq!(counts.inside + counts.on + counts.outside, deg);
    Ok(counts)
}

/// (inside, on, outside) for a squarefree polynomial with no root at 0.
fn squarefree_modulus_counts(f: &QPoly) -> Result<(usize, usize, usize)> {
    let mut f = f.clone();
    let mut on = 0usize;
    for root in [rat_int(1), rat_int(-1)] {
        if f.eval(&root).is_zero() {
            f = f.exact_div(&QPoly::new(vec![-root, Rat::one()]));
            on += 1;
        }
    }
    if f.degree().unwrap_or(0) == 0 {
        return Ok((0, on, 0));
    }
    // all remaining unit-circle roots and all reciprocal pairs of f lie
    // in the inversion-closed factor g
    let g = f.gcd(&f.reciprocal());
    let q = if g.degree().unwrap_or(0) > 0 {
        f.exact_div(&g)
    } else {
        f.clone()
    };
    let (mut inside, mut outside) = cayley_disk_count(&q)?;
    let g_deg = g.degree().unwrap_or(0);
    if g_deg > 0 {
        let circle_pairs = circle_pair_count(&g);
        on += 2 * circle_pairs;
        // the rest of g consists of reciprocal pairs and quadruples,
        // splitting evenly across the circle
        let off = g_deg - 2 * circle_pairs;
        debug_assert_eq!(off % 2, 0);
        inside += off / 2;
        outside += off / 2;
    }
    Ok((inside, on, outside))
}

/// Number of conjugate root pairs of g on the unit circle. g is
/// squarefree, inversion-closed, with g(0) != 0 and g(1)g(-1) != 0,
/// hence palindromic of even degree.
fn circle_pair_count(g: &QPoly) -> usize {
    let g = g.monic();
    let deg = g.degree().unwrap_or(0);
    debug_assert_eq!(deg % 2, 0);
    let m = deg / 2;
    debug_assert_eq!(g, g.reciprocal().monic(), "inversion-closed factor");
    // write g(t)/t^m as h(t + 1/t) via t^k + t^-k = C_k(u)
    let mut h = QPoly::constant(g.coeff(m));
    let mut c_prev = QPoly::constant(rat_int(2)); // C_0
    let mut c_cur = QPoly::from_ints(&[0, 1]); // C_1
    for k in 1..=m {
        h = &h + &c_cur.scale(&g.coeff(m + k));
        let next = &(&QPoly::from_ints(&[0, 1]) * &c_cur) - &c_prev;
        c_prev = c_cur;
        c_cur = next;
    }
    // real roots of h in (-2, 2) correspond to circle pairs
    let chain = SturmChain::new(&h);
    chain.count_roots(&Bound::Finite(rat_int(-2)), &Bound::Finite(rat_int(2)))
}

/// (inside, outside) for a squarefree polynomial with no roots on the
/// unit circle and no reciprocal root pairs. Uses the Cayley transform
/// w = (1+it)/(1-it): roots of q inside the disk become roots of
/// Q(t) = (1-it)^n q(w(t)) in the upper half plane, counted exactly by
/// the Cauchy index of Im Q / Re Q over the real line.
fn cayley_disk_count(q: &QPoly) -> Result<(usize, usize)> {
    let n = match q.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok((0, 0)),
        Some(n) => n,
    };
    // complex polynomials as (re, im) pairs
    let cmul = |a: &(QPoly, QPoly), b: &(QPoly, QPoly)| -> (QPoly, QPoly) {
        (&(&a.0 * &b.0) - &(&a.1 * &b.1), &(&a.0 * &b.1) + &(&a.1 * &b.0))
    };
    let one_plus = (QPoly::one(), QPoly::from_ints(&[0, 1])); // 1 + it
    let one_minus = (QPoly::one(), QPoly::from_ints(&[0, -1])); // 1 - it
    let mut plus_pows = vec![(QPoly::one(), QPoly::zero())];
    let mut minus_pows = vec![(QPoly::one(), QPoly::zero())];
    for k in 1..=n {
        plus_pows.push(cmul(&plus_pows[k - 1], &one_plus));
        minus_pows.push(cmul(&minus_pows[k - 1], &one_minus));
    }
    let mut re = QPoly::zero();
    let mut im = QPoly::zero();
    for k in 0..=n {
        let c = q.coeff(k);
        if c.is_zero() {
            continue;
        }
        let term = cmul(&plus_pows[k], &minus_pows[n - k]);
        re = &re + &term.0.scale(&c);
        im = &im + &term.1.scale(&c);
    }
    // rotate so the real part has full degree n (endpoints of the
    // argument sweep must be off the imaginary axis)
    if re.degree() != Some(n) {
        debug_assert_eq!(im.degree(), Some(n));
        let (c, s) = (rat(3, 5), rat(4, 5));
        let new_re = &re.scale(&c) - &im.scale(&s);
        let new_im = &re.scale(&s) + &im.scale(&c);
        re = new_re;
        im = new_im;
    }
    debug_assert_eq!(re.degree(), Some(n));
    let index = SturmChain::from_pair(&re, &im).cauchy_index(&Bound::NegInf, &Bound::PosInf);
    let inside = (n as i64 - index) / 2;
    if inside < 0 || inside > n as i64 || (n as i64 - index) % 2 != 0 {
        return Err(Error::Undecidable(format!(
            "inconsistent Cauchy index {index} for degree {n}"
        )));
    }
    let inside = inside as usize;
    Ok((inside, n - inside))
}

/// Exact counts of real roots in (1, inf) and (-inf, -1), with multiplicity.
pub fn count_real_outside(p: &QPoly) -> Result<RealCounts> {
    require_nonzero(p)?;
    let mut counts = RealCounts {
        above_one: 0,
        below_minus_one: 0,
    };
    let zeros = p.order_at_zero();
    let reduced = p.shift_down(zeros);
    for (mut factor, mult) in reduced.squarefree_decomposition() {
        for root in [rat_int(1), rat_int(-1)] {
            if factor.eval(&root).is_zero() {
                factor = factor.exact_div(&QPoly::new(vec![-root, Rat::one()]));
            }
        }
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let chain = SturmChain::new(&factor);
        counts.above_one += mult * chain.count_roots(&Bound::Finite(rat_int(1)), &Bound::PosInf);
        counts.below_minus_one +=
            mult * chain.count_roots(&Bound::NegInf, &Bound::Finite(rat_int(-1)));
    }
    Ok(counts)
}

/// How many k-power products to try before falling back to the exact
/// eigenline method.
fn sign_ladder_cap(group_order: usize, dim: usize) -> usize {
    4 * group_order * dim.max(1)
}

/// The character eps(x) = det(rho_{>1}(x)) for every element of F.
///
/// The intertwiner table witnesses that the expanding block is
/// well-defined for this (F, D) pair; its content is not otherwise used.
pub fn positive_character(
    group: &HolonomyGroup,
    linear: &QMatrix,
    table: &IntertwinerTable,
) -> Result<Character> {
    let dim = linear.require_square()?;
    debug_assert_eq!(table.candidates.len(), group.order());
    let chi = linear.charpoly()?;
    let modulus = count_roots_by_modulus(&chi)?;
    let order = group.order();
    if modulus.outside == 0 {
        let character = Character {
            values: vec![1; order],
            methods: vec![CharMethod::TrivialSplit; order],
        };
        validate_character(group, linear, &character)?;
        return Ok(character);
    }

    let mut values = vec![0i8; order];
    let mut methods = vec![CharMethod::ProductTest; order];
    let mut undecided = order;

    // Method A: sign of det(I - rho(x) D^k) det(I - D^k), first nonzero k.
    let cap = sign_ladder_cap(order, dim);
    let mut power = QMatrix::identity(dim);
    for _k in 1..=cap {
        if undecided == 0 {
            break;
        }
        power = &power * linear;
        let base = det_i_minus(&power);
        if base.is_zero() {
            continue;
        }
        for x in 0..order {
            if values[x] != 0 {
                continue;
            }
            let twisted = det_i_minus(&(group.element(x) * &power));
            if twisted.is_zero() {
                continue;
            }
            values[x] = (sign(&base) * sign(&twisted)) as i8;
            undecided -= 1;
        }
    }

    // Method B: evaluate the action on the dominant eigenline of
    // Lambda^outside(D^T), which spans the top wedge of the expanding
    // block's dual invariant subspace.
    if undecided > 0 {
        let eigenline = DominantEigenline::new(linear, modulus.outside)?;
        for x in 0..order {
            if values[x] != 0 {
                continue;
            }
            values[x] = eigenline.character_value(group.element(x))?;
            methods[x] = CharMethod::CertifiedNumeric;
        }
    }

    let character = Character { values, methods };
    validate_character(group, linear, &character)?;
    Ok(character)
}

/// Dominant eigenline data of E = Lambda^j (D^T): the characteristic
/// polynomial, an isolating interval for the unique eigenvalue of
/// maximal modulus (real, simple, |mu| > 1 for compatible inputs), and
/// a polynomial kernel vector w(s) with w(mu) spanning the eigenline.
struct DominantEigenline {
    wedge: usize,
    sf_charpoly: QPoly,
    interval: crate::realroot::RootInterval,
    kernel: Vec<QPoly>,
    witness_entry: usize,
}

impl DominantEigenline {
    fn new(linear: &QMatrix, wedge: usize) -> Result<Self> {
        let e = linear.transpose().exterior_power(wedge)?;
        let dim = e.rows();
        let (chi, adjugate) = e.charpoly_with_adjugate()?;
        let sf = chi.squarefree_part();
        let roots = isolate_real_roots(&sf);
        if roots.is_empty() {
            return Err(Error::Undecidable(
                "expanding block has no real dominant eigenvalue; input is not an \
                 intertwiner-compatible pair"
                    .into(),
            ));
        }
        let dominant = max_modulus_root(&sf, &roots)?;
        let interval = roots[dominant].clone();
        if !root_modulus_exceeds_one(&sf, &interval)? {
            return Err(Error::Undecidable(
                "dominant eigenvalue of the expanding wedge is not outside the unit circle"
                    .into(),
            ));
        }
        // kernel vector candidates: columns of adj(sI - E) evaluated at
        // the dominant root; pick any entry that is nonzero there
        for col in 0..dim {
            for row in 0..dim {
                let mut entry = QPoly::zero();
                for (k, mat) in adjugate.iter().enumerate() {
                    let coeff = mat[(row, col)].clone();
                    entry = &entry + &QPoly::monomial(coeff, dim - 1 - k);
                }
                if entry.is_zero() {
                    continue;
                }
                if sign_at_root(&entry, &sf, &interval)? != 0 {
                    let kernel = (0..dim)
                        .map(|r| {
                            let mut e = QPoly::zero();
                            for (k, mat) in adjugate.iter().enumerate() {
                                let coeff = mat[(r, col)].clone();
                                e = &e + &QPoly::monomial(coeff, dim - 1 - k);
                            }
                            e
                        })
                        .collect();
                    return Ok(DominantEigenline {
                        wedge,
                        sf_charpoly: sf,
                        interval,
                        kernel,
                        witness_entry: row,
                    });
                }
            }
        }
        Err(Error::Undecidable(
            "adjugate of the dominant eigenline vanished identically".into(),
        ))
    }

    /// eps(x) = sign of the scalar by which Lambda^wedge(rho(x)^T) acts
    /// on the eigenline.
    fn character_value(&self, rho_x: &QMatrix) -> Result<i8> {
        let action = rho_x.transpose().exterior_power(self.wedge)?;
        let i = self.witness_entry;
        let mut image_entry = QPoly::zero();
        for (j, w_j) in self.kernel.iter().enumerate() {
            let c = action[(i, j)].clone();
            if c.is_zero() {
                continue;
            }
            image_entry = &image_entry + &w_j.scale(&c);
        }
        let s_image = sign_at_root(&image_entry, &self.sf_charpoly, &self.interval)?;
        let s_base = sign_at_root(&self.kernel[i], &self.sf_charpoly, &self.interval)?;
        if s_image == 0 || s_base == 0 {
            return Err(Error::Undecidable(
                "eigenline is not preserved by the holonomy action; input is not an \
                 intertwiner-compatible pair"
                    .into(),
            ));
        }
        Ok((s_image * s_base) as i8)
    }
}

/// Hard-fails unless eps is a homomorphism consistent with the product
/// sign inequalities for all k up to a small cross-check horizon.
fn validate_character(group: &HolonomyGroup, linear: &QMatrix, ch: &Character) -> Result<()> {
    let order = group.order();
    if ch.values[group.identity()] != 1 {
        return Err(Error::NonMultiplicativeCharacter);
    }
    for x in 0..order {
        for y in 0..order {
            let xy = group.mul(x, y);
            if ch.values[xy] != ch.values[x] * ch.values[y] {
                return Err(Error::NonMultiplicativeCharacter);
            }
        }
    }
    // extended sign consistency for f^k
    let k_check = 10;
    let dim = linear.rows();
    let mut power = QMatrix::identity(dim);
    for _k in 1..=k_check {
        power = &power * linear;
        let base = det_i_minus(&power);
        for x in 0..order {
            let twisted = det_i_minus(&(group.element(x) * &power));
            let product = sign(&base) * sign(&twisted) * ch.values[x] as i32;
            if product < 0 {
                return Err(Error::Undecidable(format!(
                    "sign consistency violated at element {x}"
                )));
            }
        }
    }
    Ok(())
}

/// Convenience bundle of the full spectral data for (F, D).
pub fn spectral_split(
    group: &HolonomyGroup,
    linear: &QMatrix,
    table: &IntertwinerTable,
) -> Result<SpectralSplit> {
    let chi = linear.charpoly()?;
    let modulus = count_roots_by_modulus(&chi)?;
    let real = count_real_outside(&chi)?;
    let character = positive_character(group, linear, table)?;
    debug_assert!(modulus.outside > 0 || character.is_trivial());
    Ok(SpectralSplit {
        modulus,
        real,
        character,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::close_group;
    use crate::maps::intertwiner_table;

    fn counts(p: &QPoly) -> (usize, usize, usize) {
        let c = count_roots_by_modulus(p).unwrap();
        (c.inside, c.on, c.outside)
    }

    #[test]
    fn modulus_counts_paper_cases() {
        // eigenvalues 2, 3, 5
        assert_eq!(counts(&QPoly::from_ints(&[-30, 31, -10, 1])), (0, 0, 3));
        // eigenvalues 0, 2, -3
        assert_eq!(counts(&QPoly::from_ints(&[0, -6, 1, 1])), (1, 0, 2));
        // roots 0, 1, -1
        assert_eq!(counts(&QPoly::from_ints(&[0, -1, 0, 1])), (1, 2, 0));
        // golden ratio style: roots (3 +- sqrt 5)/2
        assert_eq!(counts(&QPoly::from_ints(&[1, -3, 1])), (1, 0, 1));
    }

    #[test]
    fn modulus_counts_tricky_cases() {
        // repeated roots: (t - 2)^2 (t + 1/2)^3
        let p = {
            let a = QPoly::from_ints(&[-2, 1]);
            let b = QPoly::new(vec![rat(1, 2), Rat::one()]);
            &(&a * &a) * &(&(&b * &b) * &b)
        };
        assert_eq!(counts(&p), (3, 0, 2));
        // cyclotomic: t^4 + 1 has all roots on the circle
        assert_eq!(counts(&QPoly::from_ints(&[1, 0, 0, 0, 1])), (0, 4, 0));
        // reciprocal pair off the circle: (t - 3)(t - 1/3)
        let p = &QPoly::from_ints(&[-3, 1]) * &QPoly::new(vec![rat(-1, 3), Rat::one()]);
        assert_eq!(counts(&p), (1, 0, 1));
        // complex quadruple: (t^2 - t/2 + 1/4)(reciprocal): roots 1/2 e^{+-i pi/3} and 2 e^{+-i pi/3}
        let inner = QPoly::new(vec![rat(1, 4), rat(-1, 2), Rat::one()]);
        let outer = inner.reciprocal().monic();
        assert_eq!(counts(&(&inner * &outer)), (2, 0, 2));
        // complex on the circle with irrational angle: t^2 - t/2 + 1
        let p = QPoly::new(vec![Rat::one(), rat(-1, 2), Rat::one()]);
        assert_eq!(counts(&p), (0, 2, 0));
    }

    #[test]
    fn reciprocal_swap_property() {
        let polys = [
            QPoly::from_ints(&[-30, 31, -10, 1]),
            QPoly::from_ints(&[1, -3, 1]),
            QPoly::from_ints(&[2, 5, -1, 3]),
            QPoly::from_ints(&[-1, 2, 2, 7, 4]),
        ];
        for p in &polys {
            let c = count_roots_by_modulus(p).unwrap();
            let r = count_roots_by_modulus(&p.reciprocal()).unwrap();
            assert_eq!(c.inside, r.outside, "poly {p}");
            assert_eq!(c.outside, r.inside, "poly {p}");
            assert_eq!(c.on, r.on, "poly {p}");
        }
    }

    #[test]
    fn real_counts() {
        let c = count_real_outside(&QPoly::from_ints(&[-30, 31, -10, 1])).unwrap();
        assert_eq!((c.above_one, c.below_minus_one), (3, 0));
        let c = count_real_outside(&QPoly::from_ints(&[0, -6, 1, 1])).unwrap();
        assert_eq!((c.above_one, c.below_minus_one), (1, 1));
        // double root at -2
        let c = count_real_outside(&QPoly::from_ints(&[4, 4, 1])).unwrap();
        assert_eq!((c.above_one, c.below_minus_one), (0, 2));
        // boundary roots at +-1 are excluded
        let c = count_real_outside(&QPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!((c.above_one, c.below_minus_one), (0, 0));
    }

    fn z2_group() -> HolonomyGroup {
        close_group(
            &[QMatrix::from_int_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]])],
            100,
        )
        .unwrap()
    }

    #[test]
    fn character_paper_f() {
        let group = z2_group();
        let d = QMatrix::from_int_rows(&[&[4, 2, 0], &[-1, 1, 0], &[0, 0, 5]]);
        let table = intertwiner_table(&group, &d).unwrap();
        let ch = positive_character(&group, &d, &table).unwrap();
        assert!(ch.is_trivial());
    }

    #[test]
    fn character_paper_g() {
        let group = z2_group();
        let d = QMatrix::from_int_rows(&[&[-2, 8, 0], &[-1, 4, 0], &[0, 0, -3]]);
        let table = intertwiner_table(&group, &d).unwrap();
        let ch = positive_character(&group, &d, &table).unwrap();
        let nontrivial = (0..group.order()).find(|&x| x != group.identity()).unwrap();
        assert_eq!(ch.value(group.identity()), 1);
        assert_eq!(ch.value(nontrivial), -1);
        assert_eq!(ch.methods[nontrivial], CharMethod::ProductTest);
    }

    #[test]
    fn character_eigenvalue_one_falls_back() {
        // D = diag(1, 2): det(I - D^k) = 0 for all k, so the product
        // test can never decide and the eigenline method must.
        let group = close_group(&[QMatrix::from_int_rows(&[&[-1, 0], &[0, -1]])], 10).unwrap();
        let d = QMatrix::from_int_rows(&[&[1, 0], &[0, 2]]);
        let table = intertwiner_table(&group, &d).unwrap();
        let ch = positive_character(&group, &d, &table).unwrap();
        let x = (0..group.order()).find(|&x| x != group.identity()).unwrap();
        assert_eq!(ch.value(x), -1);
        assert_eq!(ch.methods[x], CharMethod::CertifiedNumeric);
    }

    #[test]
    fn character_mixed_irrational_block() {
        // companion of t^2 - 3t + 1 + an eigenvalue-1 direction: the
        // dominant eigenvalue (3 + sqrt 5)/2 is irrational and the
        // fallback works on its isolating interval.
        let group = close_group(
            &[QMatrix::from_int_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]])],
            10,
        )
        .unwrap();
        let d = QMatrix::from_int_rows(&[&[0, -1, 0], &[1, 3, 0], &[0, 0, 1]]);
        let table = intertwiner_table(&group, &d).unwrap();
        let ch = positive_character(&group, &d, &table).unwrap();
        let x = (0..group.order()).find(|&x| x != group.identity()).unwrap();
        // rho(x) acts as -1 on the expanding line
        assert_eq!(ch.value(x), -1);
        assert_eq!(ch.methods[x], CharMethod::CertifiedNumeric);
    }
}
