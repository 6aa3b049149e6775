//! Random compatible (F, D) fixtures for property and acceptance tests.
//!
//! Rejection sampling over raw matrices almost never satisfies the
//! intertwining condition, so fixtures are built the other way around:
//! pick a finite integer matrix group F, pick a candidate assignment
//! x -> phi(x), and solve the linear constraint rho(phi(x)) D = D rho(x)
//! for D exactly. Integer points sampled from a basis of the solution
//! space are compatible by construction, and since both F and D
//! preserve the standard lattice the averaged Lefschetz and Nielsen
//! numbers are integers.

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::crystal::{close_group, HolonomyGroup};
use crate::matrix::QMatrix;
use crate::rat::{rat_int, Rat};

/// A holonomy group together with a compatible linear part.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub group: HolonomyGroup,
    pub linear: QMatrix,
    pub label: String,
}

/// Small integer matrix groups in dimensions 1 through 4.
pub fn group_library(dimension: usize) -> Vec<(String, HolonomyGroup)> {
    let mut out = Vec::new();
    out.push((format!("trivial-{dimension}"), HolonomyGroup::trivial(dimension)));
    let mut push_gens = |name: &str, gens: Vec<QMatrix>| {
        if let Ok(group) = close_group(&gens, 64) {
            out.push((format!("{name}-{dimension}"), group));
        }
    };
    match dimension {
        1 => {
            push_gens("sign", vec![QMatrix::from_int_rows(&[&[-1]])]);
        }
        2 => {
            push_gens("sign", vec![-&QMatrix::identity(2)]);
            push_gens("reflection", vec![QMatrix::from_int_rows(&[&[1, 0], &[0, -1]])]);
            push_gens("rot4", vec![QMatrix::from_int_rows(&[&[0, -1], &[1, 0]])]);
            push_gens("rot6", vec![QMatrix::from_int_rows(&[&[0, -1], &[1, 1]])]);
            push_gens("swap", vec![QMatrix::from_int_rows(&[&[0, 1], &[1, 0]])]);
            push_gens(
                "dihedral4",
                vec![
                    QMatrix::from_int_rows(&[&[0, -1], &[1, 0]]),
                    QMatrix::from_int_rows(&[&[1, 0], &[0, -1]]),
                ],
            );
        }
        3 => {
            push_gens(
                "paper",
                vec![QMatrix::from_int_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]])],
            );
            push_gens("sign", vec![-&QMatrix::identity(3)]);
            push_gens(
                "rot4-axis",
                vec![QMatrix::from_int_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]])],
            );
            push_gens(
                "cycle",
                vec![QMatrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])],
            );
        }
        4 => {
            push_gens("sign", vec![-&QMatrix::identity(4)]);
            push_gens(
                "block-rot",
                vec![QMatrix::from_int_rows(&[
                    &[0, -1, 0, 0],
                    &[1, 0, 0, 0],
                    &[0, 0, 1, 0],
                    &[0, 0, 0, -1],
                ])],
            );
            push_gens(
                "double-reflection",
                vec![
                    QMatrix::from_int_rows(&[
                        &[-1, 0, 0, 0],
                        &[0, 1, 0, 0],
                        &[0, 0, -1, 0],
                        &[0, 0, 0, 1],
                    ]),
                    QMatrix::from_int_rows(&[
                        &[1, 0, 0, 0],
                        &[0, -1, 0, 0],
                        &[0, 0, 1, 0],
                        &[0, 0, 0, -1],
                    ]),
                ],
            );
            push_gens(
                "swap-pairs",
                vec![QMatrix::from_int_rows(&[
                    &[0, 1, 0, 0],
                    &[1, 0, 0, 0],
                    &[0, 0, 0, 1],
                    &[0, 0, 1, 0],
                ])],
            );
        }
        _ => {}
    }
    out
}

/// Rational basis of {D : rho(phi(x)) D = D rho(x) for all x}, as a
/// nullspace computation over the d^2 matrix entries.
pub fn intertwining_solution_basis(group: &HolonomyGroup, phi: &[usize]) -> Vec<QMatrix> {
    let d = group.dimension();
    let vars = d * d;
    // rows of the homogeneous system
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for x in group.indices() {
        let left = group.element(phi[x]);
        let right = group.element(x);
        // constraint (left . D - D . right)[a][b] = 0
        for a in 0..d {
            for b in 0..d {
                let mut row = vec![Rat::zero(); vars];
                for k in 0..d {
                    // left[a][k] * D[k][b]
                    row[k * d + b] = &row[k * d + b] + &left[(a, k)];
                    // - D[a][k] * right[k][b]
                    row[a * d + k] = &row[a * d + k] - &right[(k, b)];
                }
                rows.push(row);
            }
        }
    }
    nullspace_basis(rows, vars)
        .into_iter()
        .map(|v| QMatrix::new(d, d, v))
        .collect()
}

fn nullspace_basis(mut rows: Vec<Vec<Rat>>, vars: usize) -> Vec<Vec<Rat>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..vars {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = Rat::one() / rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in 0..vars {
                let t = &f * &rows[rank][c];
                rows[r][c] = &rows[r][c] - t;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..vars).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rat::zero(); vars];
            v[fc] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational matrix to integer entries (clearing denominators).
fn integerize(m: &QMatrix) -> QMatrix {
    let mut denom = num_bigint::BigInt::one();
    for e in m.entries() {
        denom = num_integer::Integer::lcm(&denom, e.denom());
    }
    m.scale(&Rat::from_integer(denom))
}

/// Deterministic stream of compatible fixtures across the group
/// library for one dimension. Entries are integral and include
/// singular, eigenvalue-one and mixed-modulus linear parts by chance.
pub fn compatible_fixtures(dimension: usize, count: usize, seed: u64) -> Vec<Fixture> {
    let mut rng = StdRng::seed_from_u64(seed ^ (dimension as u64) << 32);
    let library = group_library(dimension);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < count * 200 {
        attempts += 1;
        let (name, group) = &library[rng.random_range(0..library.len())];
        let order = group.order();
        // random candidate assignment phi; identity map always works,
        // conjugation-style assignments often do
        let phi: Vec<usize> = match rng.random_range(0..3) {
            0 => group.indices().collect(),
            1 => {
                let c = rng.random_range(0..order);
                group
                    .indices()
                    .map(|x| group.mul(group.mul(c, x), group.inv(c)))
                    .collect()
            }
            _ => {
                let mut v: Vec<usize> = group.indices().collect();
                let a = rng.random_range(0..order);
                let b = rng.random_range(0..order);
                v.swap(a, b);
                if v[group.identity()] != group.identity() {
                    group.indices().collect()
                } else {
                    v
                }
            }
        };
        let basis = intertwining_solution_basis(group, &phi);
        if basis.is_empty() {
            continue;
        }
        let mut candidate = QMatrix::zero(dimension, dimension);
        for b in &basis {
            let c = rat_int(rng.random_range(-4..=4));
            candidate = &candidate + &integerize(b).scale(&c);
        }
        // compatibility must hold for the actual linear part
        if crate::maps::intertwiner_table(group, &candidate).is_err() {
            continue;
        }
        out.push(Fixture {
            group: group.clone(),
            linear: candidate,
            label: format!("{name}/phi{attempts}"),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::intertwiner_table;

    #[test]
    fn library_groups_are_consistent() {
        for dim in 1..=4 {
            for (name, group) in group_library(dim) {
                assert!(group.order() >= 1, "{name}");
                assert_eq!(group.dimension(), dim, "{name}");
            }
        }
    }

    #[test]
    fn fixtures_are_compatible() {
        for dim in 1..=3 {
            let fixtures = compatible_fixtures(dim, 8, 7);
            assert!(fixtures.len() >= 8, "dimension {dim}");
            for fixture in &fixtures {
                assert!(intertwiner_table(&fixture.group, &fixture.linear).is_ok());
                assert!(fixture.linear.is_integral());
            }
        }
    }

    #[test]
    fn solution_basis_solves_the_constraint() {
        let group = close_group(&[QMatrix::from_int_rows(&[&[0, -1], &[1, 0]])], 16).unwrap();
        let phi: Vec<usize> = group.indices().collect();
        let basis = intertwining_solution_basis(&group, &phi);
        assert!(!basis.is_empty());
        for b in &basis {
            for x in group.indices() {
                let lhs = group.element(phi[x]) * b;
                let rhs = b * group.element(x);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
