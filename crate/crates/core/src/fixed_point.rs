//! Lefschetz and Nielsen numbers by holonomy averaging, the table
//! identity relating them, the torus fixed-point oracle and the sign
//! diagnostics.
//!
//! The averaging formulas depend only on the linear part; degenerate
//! terms det(I - rho(x) D^k) = 0 contribute 0 to both averages. Every
//! averaged value must come out an integer; a non-integer average
//! means the input is not a consistent infra-nilmanifold map datum.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::crystal::{CheckStatus, HolonomyGroup, ValidationReport};
use crate::error::{Error, Result};
use crate::maps::PositivePart;
use crate::matrix::{det_i_minus, QMatrix};
use crate::rat::{format_rat, rat_to_bigint, sign, Rat};
use crate::snf::{cokernel_order, IMatrix};
use crate::spectral::SpectralSplit;

/// Default horizon for diagnostics and stability cross-checks.
pub const DEFAULT_K_CHECK: usize = 10;

/// One row per iterate: k, L(f^k), N(f^k) and L(f_+^k) when the
/// positive part is proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub k: usize,
    pub lefschetz: BigInt,
    pub nielsen: BigInt,
    pub lefschetz_plus: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointTable {
    pub rows: Vec<TableRow>,
    pub kmax: usize,
}

/// (sum of det(I - rho(x) P), sum of |det|) over the element subset.
fn averaged_sums(
    group: &HolonomyGroup,
    subset: &[usize],
    power: &QMatrix,
    parallel: bool,
) -> (Rat, Rat) {
    let dets: Vec<Rat> = if parallel {
        subset
            .par_iter()
            .map(|&x| det_i_minus(&(group.element(x) * power)))
            .collect()
    } else {
        subset
            .iter()
            .map(|&x| det_i_minus(&(group.element(x) * power)))
            .collect()
    };
    let mut signed = Rat::zero();
    let mut absolute = Rat::zero();
    for d in dets {
        absolute = absolute + d.abs();
        signed = signed + d;
    }
    (signed, absolute)
}

fn average_to_integer(sum: Rat, count: usize) -> Result<BigInt> {
    let avg = sum / Rat::from_integer(BigInt::from(count));
    rat_to_bigint(&avg).map_err(|_| Error::NonIntegerAverage {
        value: format_rat(&avg),
    })
}

/// L(f^k) = (1/#F) sum_x det(I - rho(x) D^k).
pub fn lefschetz_number(group: &HolonomyGroup, linear: &QMatrix, k: usize) -> Result<BigInt> {
    let all: Vec<usize> = group.indices().collect();
    lefschetz_number_over(group, &all, linear, k)
}

/// Same average restricted to an element subset (the positive part's
/// holonomy, with the same linear part).
pub fn lefschetz_number_over(
    group: &HolonomyGroup,
    subset: &[usize],
    linear: &QMatrix,
    k: usize,
) -> Result<BigInt> {
    assert!(k >= 1);
    let (signed, _) = averaged_sums(group, subset, &linear.pow(k), false);
    average_to_integer(signed, subset.len())
}

/// N(f^k) = (1/#F) sum_x |det(I - rho(x) D^k)|.
pub fn nielsen_number(group: &HolonomyGroup, linear: &QMatrix, k: usize) -> Result<BigInt> {
    assert!(k >= 1);
    let all: Vec<usize> = group.indices().collect();
    let (_, absolute) = averaged_sums(group, &all, &linear.pow(k), false);
    average_to_integer(absolute, group.order())
}

/// N(f^k) from L(f^k) and L(f_+^k) via the parity table:
/// index 1 gives (-1)^p L or (-1)^{p+n} L, index 2 the same signs
/// applied to L_+ - L.
pub fn nielsen_via_table(
    split: &SpectralSplit,
    index: u8,
    lefschetz_k: &BigInt,
    lefschetz_plus_k: Option<&BigInt>,
    k: usize,
) -> Result<BigInt> {
    assert!(k >= 1);
    let p = split.real.above_one;
    let n = split.real.below_minus_one;
    let exponent = if k % 2 == 1 { p } else { p + n };
    let sign = if exponent % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    match index {
        1 => Ok(sign * lefschetz_k),
        2 => {
            let plus = lefschetz_plus_k.ok_or(Error::MissingPlusValue)?;
            Ok(sign * (plus - lefschetz_k))
        }
        _ => Err(Error::Validation(format!("index {index} is not 1 or 2"))),
    }
}

/// Fixed points of the affine map x -> D^k x + delta_k on the torus
/// R^d / Z^d, counted as the cokernel order of I - D^k. Requires an
/// integral linear part; when det(I - D^k) = 0 the fixed-point set is
/// infinite or non-isolated and the count is an error. The count is
/// |det(I - D^k)| independently of the translation: the congruence
/// (I - D^k) x = delta_k (mod Z^d) is always solvable when det != 0.
pub fn torus_fixed_count(linear: &QMatrix, translation: &[Rat], k: usize) -> Result<BigInt> {
    assert!(k >= 1);
    let d = linear.require_square()?;
    if translation.len() != d {
        return Err(Error::DimensionMismatch(
            "translation length differs from the matrix dimension".into(),
        ));
    }
    if !linear.is_integral() {
        return Err(Error::Validation(
            "torus count requires an integral linear part in lattice coordinates".into(),
        ));
    }
    let power = linear.pow(k);
    let m = &QMatrix::identity(d) - &power;
    let entries = m
        .to_bigint_entries()
        .expect("difference of integral matrices is integral");
    let int_matrix = IMatrix::new(d, d, entries);
    cokernel_order(&int_matrix).ok_or(Error::DegenerateFixedPointSet)
}

/// Runs the parity inequalities, the product inequalities for every
/// element and power, and strict positivity in the all-expanding case.
pub fn sign_diagnostics(
    group: &HolonomyGroup,
    linear: &QMatrix,
    split: &SpectralSplit,
    k_check: usize,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let p = split.real.above_one;
    let n = split.real.below_minus_one;
    let dim = linear.rows();

    let mut parity_ok = true;
    let mut product_ok = true;
    let mut power = QMatrix::identity(dim);
    for k in 1..=k_check {
        power = &power * linear;
        let base = det_i_minus(&power);
        let exponent = if k % 2 == 1 { p } else { p + n };
        let parity_sign = if exponent % 2 == 0 { 1 } else { -1 };
        if parity_sign * sign(&base) < 0 {
            parity_ok = false;
        }
        for x in group.indices() {
            let twisted = det_i_minus(&(group.element(x) * &power));
            if split.character.value(x) as i32 * sign(&base) * sign(&twisted) < 0 {
                product_ok = false;
            }
        }
    }
    report.push(
        "lemma_sign_parity",
        if parity_ok { CheckStatus::Pass } else { CheckStatus::Fail },
        format!("(-1)^p det(I-D^k) and (-1)^(p+n) det(I-D^k) over k <= {k_check}"),
    );
    report.push(
        "prop_sign_products",
        if product_ok { CheckStatus::Pass } else { CheckStatus::Fail },
        format!("eps(x) det(I-D^k) det(I-rho(x)D^k) >= 0 over k <= {k_check}"),
    );

    if split.modulus.inside == 0 && split.modulus.on == 0 && dim > 0 {
        let base = det_i_minus(linear);
        let expanding_ok = group.indices().all(|x| {
            let twisted = det_i_minus(&(group.element(x) * linear));
            let det_rho = group.element(x).det();
            sign(&det_rho) * sign(&base) * sign(&twisted) > 0
        });
        report.push(
            "expanding_strict_positivity",
            if expanding_ok { CheckStatus::Pass } else { CheckStatus::Fail },
            "det(rho(x)) det(I-D) det(I-rho(x)D) > 0 for an all-expanding linear part",
        );
    } else {
        report.push(
            "expanding_strict_positivity",
            CheckStatus::Skipped,
            "some eigenvalue has modulus <= 1",
        );
    }
    report
}

/// The k-table of L, N and optional L_+ values for k = 1..kmax.
/// N values come from direct averaging; integrality and nonnegativity
/// are enforced.
pub fn fixed_point_table(
    group: &HolonomyGroup,
    linear: &QMatrix,
    part: &PositivePart,
    kmax: usize,
    parallel: bool,
) -> Result<FixedPointTable> {
    assert!(kmax >= 1);
    let all: Vec<usize> = group.indices().collect();
    let dim = linear.require_square()?;
    let mut rows = Vec::with_capacity(kmax);
    let mut power = QMatrix::identity(dim);
    for k in 1..=kmax {
        power = &power * linear;
        let (signed, absolute) = averaged_sums(group, &all, &power, parallel);
        let lefschetz = average_to_integer(signed, all.len())?;
        let nielsen = average_to_integer(absolute, all.len())?;
        if nielsen.is_negative() {
            return Err(Error::Validation("negative Nielsen number".into()));
        }
        let lefschetz_plus = if part.index == 2 {
            let (plus_signed, _) = averaged_sums(group, &part.plus_indices, &power, parallel);
            Some(average_to_integer(plus_signed, part.plus_indices.len())?)
        } else {
            None
        };
        rows.push(TableRow {
            k,
            lefschetz,
            nielsen,
            lefschetz_plus,
        });
    }
    Ok(FixedPointTable { rows, kmax })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{catalog, close_group};
    use crate::maps::{intertwiner_table, positive_part};
    use crate::rat::rat_int;
    use crate::spectral::spectral_split;

    fn paper() -> (HolonomyGroup, QMatrix, QMatrix) {
        let data = catalog("paper-s5").unwrap();
        let f = data.map("f").unwrap().linear.clone();
        let g = data.map("g").unwrap().linear.clone();
        (data.holonomy, f, g)
    }

    #[test]
    fn lefschetz_closed_forms() {
        let (group, d_f, d_g) = paper();
        // L(f^k) = 1 - 5^k + 6^k - 30^k
        for k in 1..=5usize {
            let expected = BigInt::from(1) - BigInt::from(5).pow(k as u32)
                + BigInt::from(6).pow(k as u32)
                - BigInt::from(30).pow(k as u32);
            assert_eq!(lefschetz_number(&group, &d_f, k).unwrap(), expected);
        }
        // L(g^k) = 1 - (-3)^k
        for k in 1..=5usize {
            let expected = BigInt::from(1) - BigInt::from(-3).pow(k as u32);
            assert_eq!(lefschetz_number(&group, &d_g, k).unwrap(), expected);
        }
        assert_eq!(lefschetz_number(&group, &d_g, 2).unwrap(), BigInt::from(-8));
    }

    #[test]
    fn nielsen_closed_forms() {
        let (group, d_f, d_g) = paper();
        assert_eq!(nielsen_number(&group, &d_f, 1).unwrap(), BigInt::from(28));
        // N(g^k) = 6^k - (-2)^k
        for k in 1..=5usize {
            let expected = BigInt::from(6).pow(k as u32) - BigInt::from(-2).pow(k as u32);
            assert_eq!(nielsen_number(&group, &d_g, k).unwrap(), expected);
        }
    }

    #[test]
    fn identity_map_has_zero_numbers() {
        let group = crate::crystal::HolonomyGroup::trivial(2);
        let id = QMatrix::identity(2);
        assert_eq!(lefschetz_number(&group, &id, 3).unwrap(), BigInt::zero());
        assert_eq!(nielsen_number(&group, &id, 3).unwrap(), BigInt::zero());
    }

    #[test]
    fn table_identity_matches_direct_averaging() {
        let (group, d_f, d_g) = paper();
        for d in [&d_f, &d_g] {
            let table = intertwiner_table(&group, d).unwrap();
            let split = spectral_split(&group, d, &table).unwrap();
            let part = positive_part(&group, &split.character).unwrap();
            let fpt = fixed_point_table(&group, d, &part, 8, false).unwrap();
            for row in &fpt.rows {
                let via = nielsen_via_table(
                    &split,
                    part.index,
                    &row.lefschetz,
                    row.lefschetz_plus.as_ref(),
                    row.k,
                )
                .unwrap();
                assert_eq!(via, row.nielsen, "k = {}", row.k);
            }
        }
    }

    #[test]
    fn table_examples_from_worked_values() {
        let (group, d_f, d_g) = paper();
        let table_f = intertwiner_table(&group, &d_f).unwrap();
        let split_f = spectral_split(&group, &d_f, &table_f).unwrap();
        let via = nielsen_via_table(&split_f, 1, &BigInt::from(-28), None, 1).unwrap();
        assert_eq!(via, BigInt::from(28));

        let table_g = intertwiner_table(&group, &d_g).unwrap();
        let split_g = spectral_split(&group, &d_g, &table_g).unwrap();
        let via = nielsen_via_table(
            &split_g,
            2,
            &BigInt::from(4),
            Some(&BigInt::from(-4)),
            1,
        )
        .unwrap();
        assert_eq!(via, BigInt::from(8));
        let via = nielsen_via_table(
            &split_g,
            2,
            &BigInt::from(-8),
            Some(&BigInt::from(24)),
            2,
        )
        .unwrap();
        assert_eq!(via, BigInt::from(32));
        assert!(nielsen_via_table(&split_g, 2, &BigInt::from(4), None, 1).is_err());
    }

    #[test]
    fn torus_counts() {
        // x -> 2x on the circle: one fixed point
        let d = QMatrix::from_int_rows(&[&[2]]);
        assert_eq!(
            torus_fixed_count(&d, &[rat_int(0)], 1).unwrap(),
            BigInt::from(1)
        );
        // |det(I - D)| = 2
        let d = QMatrix::from_int_rows(&[&[4, 2], &[-1, 1]]);
        assert_eq!(
            torus_fixed_count(&d, &[rat_int(0), rat_int(0)], 1).unwrap(),
            BigInt::from(2)
        );
        let id = QMatrix::identity(2);
        assert!(matches!(
            torus_fixed_count(&id, &[rat_int(0), rat_int(0)], 1),
            Err(Error::DegenerateFixedPointSet)
        ));
    }

    #[test]
    fn diagnostics_pass_on_paper_maps() {
        let (group, d_f, d_g) = paper();
        for d in [&d_f, &d_g] {
            let table = intertwiner_table(&group, d).unwrap();
            let split = spectral_split(&group, d, &table).unwrap();
            let report = sign_diagnostics(&group, d, &split, 6);
            assert!(report.overall(), "{:?}", report.checks);
        }
    }

    #[test]
    fn diagnostics_trivial_character_case() {
        // all eigenvalues inside: product checks reduce to plain
        // nonnegativity and pass
        let group = close_group(&[QMatrix::from_int_rows(&[&[0, -1], &[1, 0]])], 10).unwrap();
        let d = QMatrix::zero(2, 2);
        let table = intertwiner_table(&group, &d).unwrap();
        let split = spectral_split(&group, &d, &table).unwrap();
        assert_eq!(split.modulus.outside, 0);
        let report = sign_diagnostics(&group, &d, &split, 6);
        assert!(report.overall());
    }
}
