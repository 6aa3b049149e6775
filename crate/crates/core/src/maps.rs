//! Affine homotopy lifts, the intertwining condition and the positive part.

use serde::{Deserialize, Serialize};

use crate::crystal::HolonomyGroup;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rat::Rat;
use crate::spectral::Character;

/// The affine homotopy lift of a self-map: linear part and translation.
/// Only the linear part enters the averaging formulas; the translation
/// is consumed by the torus fixed-point oracle.
#[derive(Clone, Debug)]
pub struct MapSpec {
    pub linear: QMatrix,
    pub translation: Vec<Rat>,
}

impl MapSpec {
    pub fn new(linear: QMatrix, translation: Vec<Rat>) -> Self {
        MapSpec {
            linear,
            translation,
        }
    }
}

/// For every element x, the set of y with rho(y) D = D rho(x).
/// Existence for all x certifies the map data is realizable; when D is
/// invertible each candidate set is a singleton. The induced function
/// is stored as a candidate set because nothing downstream consumes a
/// choice, only existence.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntertwinerTable {
    pub candidates: Vec<Vec<usize>>,
}

/// Builds the intertwiner table, failing on the first element with no
/// candidate.
pub fn intertwiner_table(group: &HolonomyGroup, linear: &QMatrix) -> Result<IntertwinerTable> {
    let dim = linear.require_square()?;
    if dim != group.dimension() {
        return Err(Error::DimensionMismatch(
            "linear part does not match the holonomy dimension".into(),
        ));
    }
    let right: Vec<QMatrix> = group
        .indices()
        .map(|x| linear * group.element(x))
        .collect();
    let left: Vec<QMatrix> = group
        .indices()
        .map(|y| group.element(y) * linear)
        .collect();
    let mut candidates = Vec::with_capacity(group.order());
    for x in group.indices() {
        let set: Vec<usize> = group.indices().filter(|&y| left[y] == right[x]).collect();
        if set.is_empty() {
            return Err(Error::NoIntertwiner { element: x });
        }
        candidates.push(set);
    }
    Ok(IntertwinerTable { candidates })
}

/// The subgroup of character value +1 and its index in F.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PositivePart {
    pub plus_indices: Vec<usize>,
    pub index: u8,
}

impl PositivePart {
    pub fn is_whole_group(&self) -> bool {
        self.index == 1
    }
}

/// Kernel of the character: a normal subgroup of index 1 or 2.
pub fn positive_part(group: &HolonomyGroup, character: &Character) -> Result<PositivePart> {
    if character.values.len() != group.order() || character.values[group.identity()] != 1 {
        return Err(Error::NonMultiplicativeCharacter);
    }
    for x in group.indices() {
        for y in group.indices() {
            if character.values[group.mul(x, y)] != character.values[x] * character.values[y] {
                return Err(Error::NonMultiplicativeCharacter);
            }
        }
    }
    let plus_indices: Vec<usize> = group.indices().filter(|&x| character.values[x] == 1).collect();
    let index = group.order() / plus_indices.len();
    if group.order() % plus_indices.len() != 0 || index > 2 {
        return Err(Error::NonMultiplicativeCharacter);
    }
    Ok(PositivePart {
        plus_indices,
        index: index as u8,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::close_group;
    use crate::spectral::{positive_character, CharMethod, Character};

    fn z2_group() -> HolonomyGroup {
        close_group(
            &[QMatrix::from_int_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]])],
            100,
        )
        .unwrap()
    }

    #[test]
    fn intertwiner_exists_for_paper_maps() {
        let group = z2_group();
        let d_f = QMatrix::from_int_rows(&[&[4, 2, 0], &[-1, 1, 0], &[0, 0, 5]]);
        let table = intertwiner_table(&group, &d_f).unwrap();
        // D_f is invertible and commutes with the holonomy, so each
        // candidate set is the singleton {x}
        for (x, set) in table.candidates.iter().enumerate() {
            assert_eq!(set, &vec![x]);
        }
    }

    #[test]
    fn zero_map_allows_everything() {
        let group = z2_group();
        let zero = QMatrix::zero(3, 3);
        let table = intertwiner_table(&group, &zero).unwrap();
        for set in &table.candidates {
            assert_eq!(set.len(), group.order());
        }
    }

    #[test]
    fn rotation_with_shear_has_no_intertwiner() {
        let rot = QMatrix::from_int_rows(&[&[0, -1], &[1, 0]]);
        let group = close_group(&[rot], 10).unwrap();
        let shear = QMatrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        assert!(matches!(
            intertwiner_table(&group, &shear),
            Err(Error::NoIntertwiner { .. })
        ));
    }

    #[test]
    fn positive_part_paper_examples() {
        let group = z2_group();
        let d_f = QMatrix::from_int_rows(&[&[4, 2, 0], &[-1, 1, 0], &[0, 0, 5]]);
        let table = intertwiner_table(&group, &d_f).unwrap();
        let ch = positive_character(&group, &d_f, &table).unwrap();
        let part = positive_part(&group, &ch).unwrap();
        assert_eq!(part.index, 1);
        assert_eq!(part.plus_indices.len(), 2);

        let d_g = QMatrix::from_int_rows(&[&[-2, 8, 0], &[-1, 4, 0], &[0, 0, -3]]);
        let table = intertwiner_table(&group, &d_g).unwrap();
        let ch = positive_character(&group, &d_g, &table).unwrap();
        let part = positive_part(&group, &ch).unwrap();
        assert_eq!(part.index, 2);
        assert_eq!(part.plus_indices, vec![group.identity()]);
    }

    #[test]
    fn rejects_non_multiplicative_character() {
        let group = z2_group();
        // a character must send the identity to +1
        let broken = Character {
            values: vec![-1; group.order()],
            methods: vec![CharMethod::ProductTest; group.order()],
        };
        assert!(positive_part(&group, &broken).is_err());
    }
}
