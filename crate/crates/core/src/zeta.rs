//! Exact Lefschetz and Nielsen zeta functions with machine-checkable
//! certificates.
//!
//! The pipeline reconstructs L_f(z) = exp(sum L(f^k) z^k / k) from
//! directly averaged Lefschetz numbers via a Pade fit, then certifies
//! the result against an independently computed resolvent
//!
//!   T(z) = sum_{k>=1} L(f^k) z^{k-1}
//!        = (1/#F) sum_x sum_j (-1)^j tr(L^j rho(x) . L^j D (I - z L^j D)^{-1})
//!
//! by the exact polynomial identity (P'Q - PQ') T_den = T_num P Q,
//! i.e. the log-derivative of the fit equals T. Only certified values
//! are ever returned. The Nielsen zeta function is assembled from the
//! parity table and cross-checked coefficient by coefficient against
//! directly averaged Nielsen numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::crystal::HolonomyGroup;
use crate::error::{Error, Result};
use crate::fixed_point::{
    fixed_point_table, lefschetz_number_over, nielsen_number, FixedPointTable,
};
use crate::maps::PositivePart;
use crate::matrix::QMatrix;
use crate::poly::QPoly;
use crate::rat::{rat_int, Rat};
use crate::ratfun::{pade_fit, RatFun};
use crate::series::QSeries;
use crate::spectral::SpectralSplit;

/// Hard cap on 2^dimension, the degree bound of the reconstruction.
const MAX_WEDGE_TOTAL: usize = 1 << 12;

/// A rational function that passed the log-derivative certificate.
/// Constructed only by this module, so `certified` is always true and
/// `series_checked` records how many log-series coefficients were
/// verified against direct averages.
#[derive(Clone, Debug)]
pub struct CertifiedRatFun {
    value: RatFun,
    series_checked: usize,
}

impl CertifiedRatFun {
    pub fn value(&self) -> &RatFun {
        &self.value
    }

    pub fn series_checked(&self) -> usize {
        self.series_checked
    }
}

/// Which cell of the parity table applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableCase {
    pub p_odd: bool,
    pub n_odd: bool,
    pub index: u8,
}

/// Everything the zeta pipeline produces for one map.
#[derive(Clone, Debug)]
pub struct ZetaReport {
    pub lefschetz_zeta: CertifiedRatFun,
    pub lefschetz_zeta_plus: Option<CertifiedRatFun>,
    pub nielsen_zeta: RatFun,
    pub table_case: TableCase,
    pub k_table: FixedPointTable,
    pub nielsen_series_checked: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct ZetaOptions {
    pub kmax: usize,
    pub nielsen_series_checks: usize,
    pub parallel: bool,
}

impl Default for ZetaOptions {
    fn default() -> Self {
        ZetaOptions {
            kmax: 10,
            nielsen_series_checks: 20,
            parallel: false,
        }
    }
}

/// T(z) = sum_{k>=1} L(f^k) z^{k-1} over the whole group, as an exact
/// rational function.
pub fn lefschetz_log_derivative(group: &HolonomyGroup, linear: &QMatrix) -> Result<RatFun> {
    let all: Vec<usize> = group.indices().collect();
    log_derivative_over(group, &all, linear)
}

fn log_derivative_over(
    group: &HolonomyGroup,
    subset: &[usize],
    linear: &QMatrix,
) -> Result<RatFun> {
    let dim = linear.require_square()?;
    if 1usize.checked_shl(dim as u32).is_none_or(|w| w > MAX_WEDGE_TOTAL) {
        return Err(Error::ResourceCap(format!(
            "2^{dim} exterior resolvents exceed the configured limit"
        )));
    }
    let mut total = RatFun::new(QPoly::zero(), QPoly::one())?;
    for j in 0..=dim {
        let wedge_d = linear.exterior_power(j)?;
        let (chi, adjugate) = wedge_d.charpoly_with_adjugate()?;
        // det(I - z B) is the reversed characteristic polynomial
        let den = QPoly::new(chi.coeffs().iter().rev().cloned().collect());
        let n_j = wedge_d.rows();
        // numerator per element: sum_m z^m tr(L^j rho(x) . B . M_m)
        let mut num = QPoly::zero();
        for &x in subset {
            let wedge_rho = group.element(x).exterior_power(j)?;
            let front = &wedge_rho * &wedge_d;
            for (m, adj_m) in adjugate.iter().enumerate() {
                let trace = (&front * adj_m).trace();
                num = &num + &QPoly::monomial(trace, m);
            }
            debug_assert_eq!(adjugate.len(), n_j);
        }
        if num.is_zero() {
            continue;
        }
        if j % 2 == 1 {
            num = -&num;
        }
        total = total.add(&RatFun::new(num, den)?)?;
    }
    let scale = Rat::one() / rat_int(subset.len() as i64);
    RatFun::new(total.num().scale(&scale), total.den().clone())
}

/// Certified L_f(z) over the whole group.
pub fn lefschetz_zeta(group: &HolonomyGroup, linear: &QMatrix) -> Result<CertifiedRatFun> {
    let all: Vec<usize> = group.indices().collect();
    lefschetz_zeta_over(group, &all, linear)
}

fn lefschetz_zeta_over(
    group: &HolonomyGroup,
    subset: &[usize],
    linear: &QMatrix,
) -> Result<CertifiedRatFun> {
    let dim = linear.require_square()?;
    let dmax = 1usize
        .checked_shl(dim as u32)
        .filter(|&w| w <= MAX_WEDGE_TOTAL)
        .ok_or_else(|| {
            Error::ResourceCap(format!(
                "degree bound 2^{dim} exceeds the configured limit"
            ))
        })?;
    let needed = 2 * dmax + 8;
    // route 1: direct averages -> exp series -> Pade fit
    let mut log_coeffs = vec![Rat::zero(); needed + 1];
    let mut power = QMatrix::identity(dim);
    let mut numbers = Vec::with_capacity(needed);
    for k in 1..=needed {
        power = &power * linear;
        let value = lefschetz_number_over_power(group, subset, &power)?;
        log_coeffs[k] = Rat::from_integer(value.clone()) / rat_int(k as i64);
        numbers.push(value);
    }
    let series = QSeries::new(log_coeffs).exp()?;
    let fit = pade_fit(&series, dmax).map_err(|e| match e {
        Error::NoPadeFit { dmax } => Error::CertificateFailure(format!(
            "no rational function of degree <= {dmax} matches the Lefschetz series"
        )),
        other => other,
    })?;
    // route 2: independent resolvent, compared through the exact
    // log-derivative identity
    let resolvent = log_derivative_over(group, subset, linear)?;
    certify_log_derivative(&fit, &resolvent)?;
    fit.check_zeta_normal_form()?;
    // recheck the log series against the direct averages
    let log = fit.series(needed + 1).log()?;
    for (k, expected) in numbers.iter().enumerate() {
        let k = k + 1;
        let coeff = log.coeff(k) * rat_int(k as i64);
        if coeff != Rat::from_integer(expected.clone()) {
            return Err(Error::CertificateFailure(format!(
                "log series coefficient {k} disagrees with the direct average"
            )));
        }
    }
    Ok(CertifiedRatFun {
        value: fit,
        series_checked: needed,
    })
}

fn lefschetz_number_over_power(
    group: &HolonomyGroup,
    subset: &[usize],
    power: &QMatrix,
) -> Result<BigInt> {
    let sum: Rat = subset
        .iter()
        .map(|&x| crate::matrix::det_i_minus(&(group.element(x) * power)))
        .sum();
    let avg = sum / rat_int(subset.len() as i64);
    crate::rat::rat_to_bigint(&avg)
}

/// The exact identity (P'Q - PQ') T_den = T_num P Q.
fn certify_log_derivative(fit: &RatFun, resolvent: &RatFun) -> Result<()> {
    let p = fit.num();
    let q = fit.den();
    let wronskian = &(&p.derivative() * q) - &(p * &q.derivative());
    let lhs = &wronskian * resolvent.den();
    let rhs = &(resolvent.num() * p) * q;
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::CertificateFailure(
            "log-derivative of the fit differs from the resolvent".into(),
        ))
    }
}

/// Builds the full report: certified L_f (and L_{f_+} when the index
/// is 2), the table-selected N_f with its series cross-check, and the
/// k-table.
pub fn nielsen_zeta(
    group: &HolonomyGroup,
    linear: &QMatrix,
    split: &SpectralSplit,
    part: &PositivePart,
) -> Result<ZetaReport> {
    nielsen_zeta_with(group, linear, split, part, ZetaOptions::default())
}

pub fn nielsen_zeta_with(
    group: &HolonomyGroup,
    linear: &QMatrix,
    split: &SpectralSplit,
    part: &PositivePart,
    options: ZetaOptions,
) -> Result<ZetaReport> {
    let table_case = TableCase {
        p_odd: split.real.above_one % 2 == 1,
        n_odd: split.real.below_minus_one % 2 == 1,
        index: part.index,
    };
    let lefschetz_zeta_fn = lefschetz_zeta(group, linear)?;
    let lefschetz_zeta_plus = if part.index == 2 {
        Some(lefschetz_zeta_over(group, &part.plus_indices, linear)?)
    } else {
        None
    };
    let l = lefschetz_zeta_fn.value();
    let nielsen = match (table_case.p_odd, table_case.n_odd, table_case.index) {
        (false, false, 1) => l.clone(),
        (false, true, 1) => l.negate_argument().reciprocal()?,
        (true, false, 1) => l.reciprocal()?,
        (true, true, 1) => l.negate_argument(),
        (p_odd, n_odd, 2) => {
            let plus = lefschetz_zeta_plus
                .as_ref()
                .expect("index 2 always computes the positive zeta")
                .value();
            match (p_odd, n_odd) {
                (false, false) => plus.div(l)?,
                (false, true) => l.negate_argument().div(&plus.negate_argument())?,
                (true, false) => l.div(plus)?,
                (true, true) => plus.negate_argument().div(&l.negate_argument())?,
            }
        }
        _ => unreachable!("positive part index is 1 or 2"),
    };
    // series cross-check: k [z^k] log N_f(z) = N(f^k) by direct averaging
    let checks = options.nielsen_series_checks;
    let log = nielsen.series(checks + 1).log()?;
    for k in 1..=checks {
        let coeff = log.coeff(k) * rat_int(k as i64);
        let direct = nielsen_number(group, linear, k)?;
        if coeff != Rat::from_integer(direct) {
            return Err(Error::CertificateFailure(format!(
                "Nielsen series coefficient {k} disagrees with the direct average"
            )));
        }
    }
    if !nielsen.eval_at_zero().is_one() {
        return Err(Error::CertificateFailure("N_f(0) != 1".into()));
    }
    let k_table = fixed_point_table(group, linear, part, options.kmax, options.parallel)?;
    Ok(ZetaReport {
        lefschetz_zeta: lefschetz_zeta_fn,
        lefschetz_zeta_plus,
        nielsen_zeta: nielsen,
        table_case,
        k_table,
        nielsen_series_checked: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{catalog, HolonomyGroup};
    use crate::maps::{intertwiner_table, positive_part};
    use crate::spectral::spectral_split;

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(QPoly::from_ints(num), QPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn log_derivative_examples() {
        // trivial group, D = [2]: T = 1/(1-z) - 2/(1-2z) = -1/((1-z)(1-2z))
        let trivial = HolonomyGroup::trivial(1);
        let d = QMatrix::from_int_rows(&[&[2]]);
        let t = lefschetz_log_derivative(&trivial, &d).unwrap();
        assert_eq!(t, rf(&[-1], &[1, -3, 2]));

        // D = 0: T = 1/(1-z)
        let zero = QMatrix::zero(1, 1);
        let t = lefschetz_log_derivative(&trivial, &zero).unwrap();
        assert_eq!(t, rf(&[1], &[1, -1]));

        // paper map g: T = 1/(1-z) + 3/(1+3z) = 4/((1-z)(1+3z))
        let data = catalog("paper-s5").unwrap();
        let t = lefschetz_log_derivative(&data.holonomy, &data.map("g").unwrap().linear).unwrap();
        assert_eq!(t, rf(&[4], &[1, 2, -3]));
    }

    #[test]
    fn lefschetz_zeta_paper_f() {
        let data = catalog("paper-s5").unwrap();
        let z = lefschetz_zeta(&data.holonomy, &data.map("f").unwrap().linear).unwrap();
        assert_eq!(*z.value(), rf(&[1, -35, 150], &[1, -7, 6]));
        assert_eq!(z.value().pretty(), "(1-5z)(1-30z)/((1-z)(1-6z))");
    }

    #[test]
    fn lefschetz_zeta_paper_g_and_plus() {
        let data = catalog("paper-s5").unwrap();
        let group = &data.holonomy;
        let d_g = &data.map("g").unwrap().linear;
        let z = lefschetz_zeta(group, d_g).unwrap();
        assert_eq!(*z.value(), rf(&[1, 3], &[1, -1]));

        let table = intertwiner_table(group, d_g).unwrap();
        let split = spectral_split(group, d_g, &table).unwrap();
        let part = positive_part(group, &split.character).unwrap();
        assert_eq!(part.index, 2);
        let z_plus = lefschetz_zeta_over(group, &part.plus_indices, d_g).unwrap();
        // (1-2z)(1+3z)/((1-z)(1+6z))
        assert_eq!(*z_plus.value(), rf(&[1, 1, -6], &[1, 5, -6]));
    }

    #[test]
    fn nielsen_zeta_paper_examples() {
        let data = catalog("paper-s5").unwrap();
        let group = &data.holonomy;

        let d_f = &data.map("f").unwrap().linear;
        let table = intertwiner_table(group, d_f).unwrap();
        let split = spectral_split(group, d_f, &table).unwrap();
        let part = positive_part(group, &split.character).unwrap();
        let report = nielsen_zeta(group, d_f, &split, &part).unwrap();
        assert_eq!(report.nielsen_zeta, rf(&[1, -7, 6], &[1, -35, 150]));
        assert_eq!(
            report.table_case,
            TableCase {
                p_odd: true,
                n_odd: false,
                index: 1
            }
        );

        let d_g = &data.map("g").unwrap().linear;
        let table = intertwiner_table(group, d_g).unwrap();
        let split = spectral_split(group, d_g, &table).unwrap();
        let part = positive_part(group, &split.character).unwrap();
        let report = nielsen_zeta(group, d_g, &split, &part).unwrap();
        assert_eq!(report.nielsen_zeta, rf(&[1, 2], &[1, -6]));
        assert_eq!(
            report.table_case,
            TableCase {
                p_odd: true,
                n_odd: true,
                index: 2
            }
        );
    }

    #[test]
    fn torus_zero_map() {
        let trivial = HolonomyGroup::trivial(1);
        let zero = QMatrix::zero(1, 1);
        let table = intertwiner_table(&trivial, &zero).unwrap();
        let split = spectral_split(&trivial, &zero, &table).unwrap();
        let part = positive_part(&trivial, &split.character).unwrap();
        let report = nielsen_zeta(&trivial, &zero, &split, &part).unwrap();
        assert_eq!(report.nielsen_zeta, rf(&[1], &[1, -1]));
        assert_eq!(*report.lefschetz_zeta.value(), rf(&[1], &[1, -1]));
    }
}
