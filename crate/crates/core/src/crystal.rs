//! Holonomy groups, crystallographic input data and validation.
//!
//! The ambient group is fixed to R^d at the data level: users supply
//! the holonomy representation and the linear parts of maps directly
//! as rational matrices, which is all the averaging formulas consume.
//! Input files are JSON with every number an exact string ("p/q" or
//! "p"); floats are rejected at parse time.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::MapSpec;
use crate::matrix::QMatrix;
use crate::rat::{format_rat, parse_rat, rat, Rat};
use crate::snf::{solvable, IMatrix};

pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A finite group of invertible rational matrices with its
/// multiplication and inverse tables. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct HolonomyGroup {
    elements: Vec<QMatrix>,
    mul_table: Vec<Vec<usize>>,
    inv_table: Vec<usize>,
    generator_indices: Vec<usize>,
}

impl HolonomyGroup {
    /// The trivial group in the given dimension.
    pub fn trivial(dimension: usize) -> Self {
        HolonomyGroup {
            elements: vec![QMatrix::identity(dimension)],
            mul_table: vec![vec![0]],
            inv_table: vec![0],
            generator_indices: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dimension(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &QMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[QMatrix] {
        &self.elements
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul_table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv_table[x]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    /// Order of a single element as computed from the tables.
    pub fn element_order(&self, x: usize) -> usize {
        let mut cur = x;
        let mut n = 1;
        while cur != self.identity() {
            cur = self.mul(cur, x);
            n += 1;
            assert!(n <= self.order(), "inconsistent multiplication table");
        }
        n
    }

    /// All element indices.
    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

/// Closure of a set of invertible generators under multiplication.
/// Fails when the generated group would exceed the cap.
pub fn close_group(generators: &[QMatrix], cap: usize) -> Result<HolonomyGroup> {
    assert!(!generators.is_empty(), "use HolonomyGroup::trivial instead");
    let dim = generators[0].require_square()?;
    for (i, g) in generators.iter().enumerate() {
        if g.require_square()? != dim {
            return Err(Error::DimensionMismatch(format!(
                "generator {i} has a different dimension"
            )));
        }
        if g.det().is_zero() {
            return Err(Error::NonInvertibleGenerator { index: i });
        }
    }
    let mut elements = vec![QMatrix::identity(dim)];
    let mut index: HashMap<Vec<Rat>, usize> = HashMap::new();
    index.insert(elements[0].entries().to_vec(), 0);
    let mut frontier = 0usize;
    while frontier < elements.len() {
        let base = elements[frontier].clone();
        for g in generators {
            let prod = &base * g;
            let key = prod.entries().to_vec();
            if !index.contains_key(&key) {
                if elements.len() >= cap {
                    return Err(Error::OrderCap { cap });
                }
                index.insert(key, elements.len());
                elements.push(prod);
            }
        }
        frontier += 1;
    }
    let order = elements.len();
    let mut mul_table = vec![vec![0usize; order]; order];
    for x in 0..order {
        for y in 0..order {
            let prod = &elements[x] * &elements[y];
            let &idx = index
                .get(prod.entries())
                .expect("closure is complete for words in the generators");
            mul_table[x][y] = idx;
        }
    }
    let inv_table = (0..order)
        .map(|x| {
            (0..order)
                .find(|&y| mul_table[x][y] == 0)
                .expect("finite groups have inverses")
        })
        .collect();
    let generator_indices = generators
        .iter()
        .map(|g| index[g.entries()])
        .collect();
    Ok(HolonomyGroup {
        elements,
        mul_table,
        inv_table,
        generator_indices,
    })
}

/// Almost-crystallographic input data: holonomy with representation
/// matrices, optional lattice and coset translations, and named maps.
#[derive(Clone, Debug)]
pub struct CrystalData {
    pub name: String,
    pub dimension: usize,
    pub holonomy: HolonomyGroup,
    /// Lattice basis as columns; the standard basis when absent.
    pub lattice: Option<QMatrix>,
    /// Translation part of a coset representative per element index,
    /// propagated from the generators when supplied.
    pub coset_translations: Option<BTreeMap<usize, Vec<Rat>>>,
    pub maps: BTreeMap<String, MapSpec>,
}

impl CrystalData {
    pub fn lattice_basis(&self) -> QMatrix {
        self.lattice
            .clone()
            .unwrap_or_else(|| QMatrix::identity(self.dimension))
    }

    pub fn map(&self, name: &str) -> Result<&MapSpec> {
        self.maps
            .get(name)
            .ok_or_else(|| Error::UnknownMap(name.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Warn,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

/// Outcome of a validation run: overall passes iff no check failed
/// (warnings do not fail; strict mode upgrades them before they land here).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, name: &str, status: CheckStatus, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
        });
    }

    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

/// Structural validation: group tables, lattice preservation, coset
/// cocycle consistency and the torsion-freeness test. Torsion failures
/// are warnings unless strict mode promotes them to errors.
pub fn validate(data: &CrystalData, strict: bool) -> ValidationReport {
    let mut report = ValidationReport::default();
    let group = &data.holonomy;
    let d = data.dimension;

    // dimensions
    let mut dim_ok = group.dimension() == d;
    let mut dim_detail = String::new();
    if let Some(lattice) = &data.lattice {
        if lattice.rows() != d || lattice.cols() != d || lattice.det().is_zero() {
            dim_ok = false;
            dim_detail = "lattice basis is not an invertible d x d matrix".into();
        }
    }
    for (name, spec) in &data.maps {
        if spec.linear.rows() != d || spec.linear.cols() != d || spec.translation.len() != d {
            dim_ok = false;
            dim_detail = format!("map '{name}' has inconsistent dimensions");
        }
    }
    if let Some(translations) = &data.coset_translations {
        for (idx, v) in translations {
            if *idx >= group.order() || v.len() != d {
                dim_ok = false;
                dim_detail = format!("coset translation for element {idx} is inconsistent");
            }
        }
    }
    report.push(
        "dimension_consistency",
        if dim_ok { CheckStatus::Pass } else { CheckStatus::Fail },
        dim_detail,
    );
    if !dim_ok {
        return report;
    }

    // multiplication table against matrix products
    let closure_ok = group.indices().all(|x| {
        group.indices().all(|y| {
            let prod = group.element(x) * group.element(y);
            prod == *group.element(group.mul(x, y))
        })
    });
    report.push(
        "group_closure",
        if closure_ok { CheckStatus::Pass } else { CheckStatus::Fail },
        if closure_ok { "" } else { "multiplication table disagrees with matrix products" },
    );

    let inverse_ok = group
        .indices()
        .all(|x| group.mul(x, group.inv(x)) == group.identity());
    report.push(
        "inverse_table",
        if inverse_ok { CheckStatus::Pass } else { CheckStatus::Fail },
        "",
    );

    // lattice preservation: conjugated holonomy matrices are integral
    let basis = data.lattice_basis();
    match basis.inverse() {
        Some(basis_inv) => {
            let bad = group
                .indices()
                .find(|&x| !(&(&basis_inv * group.element(x)) * &basis).is_integral());
            report.push(
                "lattice_preservation",
                if bad.is_none() { CheckStatus::Pass } else { CheckStatus::Fail },
                match bad {
                    None => String::new(),
                    Some(x) => format!("element {x} does not preserve the lattice"),
                },
            );
        }
        None => report.push(
            "lattice_preservation",
            CheckStatus::Fail,
            "lattice basis is singular",
        ),
    }

    match &data.coset_translations {
        None => {
            report.push("coset_cocycle", CheckStatus::Skipped, "no coset translations supplied");
            report.push("torsion_free", CheckStatus::Skipped, "no coset translations supplied");
        }
        Some(translations) => {
            let cocycle_ok = check_cocycle(data, translations);
            report.push(
                "coset_cocycle",
                if cocycle_ok { CheckStatus::Pass } else { CheckStatus::Fail },
                if cocycle_ok {
                    ""
                } else {
                    "a_x + rho(x) a_y is not congruent to a_{xy} modulo the lattice"
                },
            );
            if cocycle_ok {
                match find_torsion(data, translations) {
                    None => report.push("torsion_free", CheckStatus::Pass, ""),
                    Some(x) => report.push(
                        "torsion_free",
                        if strict { CheckStatus::Fail } else { CheckStatus::Warn },
                        format!("the coset of element {x} contains a finite-order element"),
                    ),
                }
            } else {
                report.push("torsion_free", CheckStatus::Skipped, "cocycle inconsistent");
            }
        }
    }
    report
}

/// Lattice membership of a rational vector w.r.t. the data's basis.
fn in_lattice(data: &CrystalData, v: &[Rat]) -> bool {
    let basis = data.lattice_basis();
    let inv = match basis.inverse() {
        Some(b) => b,
        None => return false,
    };
    inv.mul_vec(v).iter().all(|c| c.denom().is_one())
}

fn check_cocycle(data: &CrystalData, translations: &BTreeMap<usize, Vec<Rat>>) -> bool {
    let group = &data.holonomy;
    if translations.len() != group.order() {
        return false;
    }
    group.indices().all(|x| {
        group.indices().all(|y| {
            let (ax, ay) = (&translations[&x], &translations[&y]);
            let axy = &translations[&group.mul(x, y)];
            let lhs = group.element(x).mul_vec(ay);
            let diff: Vec<Rat> = (0..ax.len())
                .map(|i| &ax[i] + &lhs[i] - &axy[i])
                .collect();
            in_lattice(data, &diff)
        })
    })
}

/// Index of an element whose coset contains torsion, if any: x with
/// order m has torsion in its coset iff sum_i rho(x)^i (a_x + l) = 0
/// is solvable for a lattice vector l.
fn find_torsion(data: &CrystalData, translations: &BTreeMap<usize, Vec<Rat>>) -> Option<usize> {
    let group = &data.holonomy;
    let d = data.dimension;
    let basis = data.lattice_basis();
    for x in group.indices() {
        if x == group.identity() {
            continue;
        }
        let a_x = translations.get(&x)?;
        let m = group.element_order(x);
        let mut avg = QMatrix::zero(d, d);
        let mut power = QMatrix::identity(d);
        for _ in 0..m {
            avg = &avg + &power;
            power = &power * group.element(x);
        }
        // solve (avg * basis) y = -avg a_x over the integers
        let target: Vec<Rat> = avg.mul_vec(a_x).iter().map(|c| -c.clone()).collect();
        let system = &avg * &basis;
        let mut denom = BigInt::one();
        for e in system.entries().iter().chain(target.iter()) {
            denom = denom.lcm(e.denom());
        }
        let scale = Rat::from_integer(denom);
        let int_matrix = IMatrix::new(
            d,
            d,
            system
                .entries()
                .iter()
                .map(|e| (e * &scale).numer().clone())
                .collect(),
        );
        let int_target: Vec<BigInt> = target.iter().map(|e| (e * &scale).numer().clone()).collect();
        if solvable(&int_matrix, &int_target) {
            return Some(x);
        }
    }
    None
}

/// Fills in translations for every element from generator data using
/// a_{xg} = a_x + rho(x) a_g. Fails when a generator is missing.
pub fn propagate_translations(
    group: &HolonomyGroup,
    generator_translations: &BTreeMap<usize, Vec<Rat>>,
) -> Result<BTreeMap<usize, Vec<Rat>>> {
    let d = group.dimension();
    let gens = group.generator_indices();
    for (pos, _) in gens.iter().enumerate() {
        if !generator_translations.contains_key(&pos) {
            return Err(Error::Parse(format!(
                "coset translation missing for generator {pos}"
            )));
        }
    }
    let mut known: BTreeMap<usize, Vec<Rat>> = BTreeMap::new();
    known.insert(group.identity(), vec![Rat::zero(); d]);
    for (pos, v) in generator_translations {
        let idx = *gens
            .get(*pos)
            .ok_or_else(|| Error::Parse(format!("no generator with index {pos}")))?;
        if v.len() != d {
            return Err(Error::Parse(format!(
                "coset translation for generator {pos} has wrong length"
            )));
        }
        known.insert(idx, v.clone());
    }
    loop {
        let mut progress = false;
        let snapshot: Vec<usize> = known.keys().copied().collect();
        for &x in &snapshot {
            for &g in gens {
                let xg = group.mul(x, g);
                if known.contains_key(&xg) {
                    continue;
                }
                let a_x = &known[&x];
                let a_g = &known[&g];
                let moved = group.element(x).mul_vec(a_g);
                let a_xg: Vec<Rat> = (0..d).map(|i| &a_x[i] + &moved[i]).collect();
                known.insert(xg, a_xg);
                progress = true;
            }
        }
        if known.len() == group.order() {
            return Ok(known);
        }
        if !progress {
            return Err(Error::Parse(
                "could not propagate coset translations to every element".into(),
            ));
        }
    }
}

// ---------------------------------------------------------------------------
// input format
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct InputFile {
    name: Option<String>,
    dimension: usize,
    #[serde(default)]
    holonomy_generators: Vec<Vec<Vec<String>>>,
    lattice: Option<Vec<Vec<String>>>,
    #[serde(default)]
    coset_translations: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    maps: BTreeMap<String, InputMap>,
}

#[derive(Deserialize)]
struct InputMap {
    #[serde(rename = "D")]
    d: Vec<Vec<String>>,
    delta: Option<Vec<String>>,
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<QMatrix> {
    let parsed: Result<Vec<Vec<Rat>>> = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_rat(s)).collect())
        .collect();
    let parsed = parsed?;
    let c = parsed.first().map_or(0, |r| r.len());
    if parsed.iter().any(|r| r.len() != c) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    Ok(QMatrix::from_rows(parsed))
}

fn parse_vector(items: &[String]) -> Result<Vec<Rat>> {
    items.iter().map(|s| parse_rat(s)).collect()
}

/// Parses the JSON input format into crystallographic data, closing
/// the holonomy group and propagating coset translations.
pub fn parse_input(text: &str, name_hint: &str) -> Result<CrystalData> {
    let input: InputFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let dimension = input.dimension;
    if dimension == 0 {
        return Err(Error::Parse("dimension must be positive".into()));
    }
    let generators: Result<Vec<QMatrix>> =
        input.holonomy_generators.iter().map(|m| parse_matrix(m)).collect();
    let generators = generators?;
    let holonomy = if generators.is_empty() {
        HolonomyGroup::trivial(dimension)
    } else {
        close_group(&generators, DEFAULT_ORDER_CAP)?
    };
    let lattice = input.lattice.as_ref().map(|m| parse_matrix(m)).transpose()?;
    let coset_translations = if input.coset_translations.is_empty() {
        None
    } else {
        let mut by_generator = BTreeMap::new();
        for (key, v) in &input.coset_translations {
            let idx: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index '{key}'")))?;
            by_generator.insert(idx, parse_vector(v)?);
        }
        Some(propagate_translations(&holonomy, &by_generator)?)
    };
    let mut maps = BTreeMap::new();
    for (name, spec) in &input.maps {
        let linear = parse_matrix(&spec.d)?;
        let translation = match &spec.delta {
            Some(v) => parse_vector(v)?,
            None => vec![Rat::zero(); dimension],
        };
        maps.insert(name.clone(), MapSpec::new(linear, translation));
    }
    Ok(CrystalData {
        name: input.name.unwrap_or_else(|| name_hint.to_string()),
        dimension,
        holonomy,
        lattice,
        coset_translations,
        maps,
    })
}

/// Serializes data back to the input format (used by `catalog show`).
pub fn to_input_json(data: &CrystalData) -> serde_json::Value {
    let matrix_json = |m: &QMatrix| -> serde_json::Value {
        serde_json::Value::Array(
            (0..m.rows())
                .map(|i| {
                    serde_json::Value::Array(
                        (0..m.cols())
                            .map(|j| serde_json::Value::String(format_rat(&m[(i, j)])))
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    let vector_json = |v: &[Rat]| -> serde_json::Value {
        serde_json::Value::Array(
            v.iter()
                .map(|c| serde_json::Value::String(format_rat(c)))
                .collect(),
        )
    };
    let mut root = serde_json::Map::new();
    root.insert("name".into(), serde_json::Value::String(data.name.clone()));
    root.insert("dimension".into(), serde_json::json!(data.dimension));
    root.insert(
        "holonomy_generators".into(),
        serde_json::Value::Array(
            data.holonomy
                .generator_indices()
                .iter()
                .map(|&g| matrix_json(data.holonomy.element(g)))
                .collect(),
        ),
    );
    if let Some(lattice) = &data.lattice {
        root.insert("lattice".into(), matrix_json(lattice));
    }
    if let Some(translations) = &data.coset_translations {
        let mut map = serde_json::Map::new();
        for (pos, &g) in data.holonomy.generator_indices().iter().enumerate() {
            if let Some(v) = translations.get(&g) {
                map.insert(pos.to_string(), vector_json(v));
            }
        }
        root.insert(
            "coset_translations".into(),
            serde_json::Value::Object(map),
        );
    }
    let mut maps = serde_json::Map::new();
    for (name, spec) in &data.maps {
        let mut m = serde_json::Map::new();
        m.insert("D".into(), matrix_json(&spec.linear));
        m.insert("delta".into(), vector_json(&spec.translation));
        maps.insert(name.clone(), serde_json::Value::Object(m));
    }
    root.insert("maps".into(), serde_json::Value::Object(maps));
    serde_json::Value::Object(root)
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

pub fn catalog_names() -> Vec<&'static str> {
    vec!["paper-s5", "torus-1", "torus-2", "klein-bottle"]
}

/// Published fixtures, including the worked three-dimensional example
/// with its two maps.
pub fn catalog(name: &str) -> Result<CrystalData> {
    match name {
        "paper-s5" => {
            let gen = QMatrix::from_int_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
            let holonomy = close_group(&[gen], DEFAULT_ORDER_CAP)?;
            let mut gen_translations = BTreeMap::new();
            gen_translations.insert(0usize, vec![rat(0, 1), rat(0, 1), rat(1, 2)]);
            let coset_translations = Some(propagate_translations(&holonomy, &gen_translations)?);
            let mut maps = BTreeMap::new();
            maps.insert(
                "f".to_string(),
                MapSpec::new(
                    QMatrix::from_int_rows(&[&[4, 2, 0], &[-1, 1, 0], &[0, 0, 5]]),
                    vec![Rat::zero(); 3],
                ),
            );
            maps.insert(
                "g".to_string(),
                MapSpec::new(
                    QMatrix::from_int_rows(&[&[-2, 8, 0], &[-1, 4, 0], &[0, 0, -3]]),
                    vec![Rat::zero(); 3],
                ),
            );
            Ok(CrystalData {
                name: name.to_string(),
                dimension: 3,
                holonomy,
                lattice: None,
                coset_translations,
                maps,
            })
        }
        "torus-1" => {
            let mut maps = BTreeMap::new();
            for (map_name, entry) in [("id", 1i64), ("zero", 0), ("double", 2)] {
                maps.insert(
                    map_name.to_string(),
                    MapSpec::new(QMatrix::from_int_rows(&[&[entry]]), vec![Rat::zero()]),
                );
            }
            Ok(CrystalData {
                name: name.to_string(),
                dimension: 1,
                holonomy: HolonomyGroup::trivial(1),
                lattice: None,
                coset_translations: None,
                maps,
            })
        }
        "torus-2" => Ok(CrystalData {
            name: name.to_string(),
            dimension: 2,
            holonomy: HolonomyGroup::trivial(2),
            lattice: None,
            coset_translations: None,
            maps: BTreeMap::new(),
        }),
        "klein-bottle" => {
            let gen = QMatrix::from_int_rows(&[&[1, 0], &[0, -1]]);
            let holonomy = close_group(&[gen], DEFAULT_ORDER_CAP)?;
            let mut gen_translations = BTreeMap::new();
            gen_translations.insert(0usize, vec![rat(1, 2), rat(0, 1)]);
            let coset_translations = Some(propagate_translations(&holonomy, &gen_translations)?);
            let mut maps = BTreeMap::new();
            maps.insert(
                "stretch".to_string(),
                MapSpec::new(
                    QMatrix::from_int_rows(&[&[3, 0], &[0, 2]]),
                    vec![Rat::zero(); 2],
                ),
            );
            Ok(CrystalData {
                name: name.to_string(),
                dimension: 2,
                holonomy,
                lattice: None,
                coset_translations,
                maps,
            })
        }
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn close_group_paper_holonomy() {
        let gen = QMatrix::from_int_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        let group = close_group(&[gen], 100).unwrap();
        assert_eq!(group.order(), 2);
        assert_eq!(group.element_order(1), 2);
    }

    #[test]
    fn close_group_rotation() {
        let rot = QMatrix::from_int_rows(&[&[0, -1], &[1, 0]]);
        let group = close_group(&[rot], 100).unwrap();
        assert_eq!(group.order(), 4);
    }

    #[test]
    fn close_group_infinite_order_hits_cap() {
        let shear = QMatrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        assert!(matches!(
            close_group(&[shear], 1000),
            Err(Error::OrderCap { cap: 1000 })
        ));
    }

    #[test]
    fn close_group_rejects_singular() {
        let sing = QMatrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        assert!(matches!(
            close_group(&[sing], 10),
            Err(Error::NonInvertibleGenerator { index: 0 })
        ));
    }

    #[test]
    fn catalog_entries_validate() {
        for name in catalog_names() {
            let data = catalog(name).unwrap();
            let report = validate(&data, true);
            assert!(report.overall(), "catalog {name}: {:?}", report.checks);
        }
    }

    #[test]
    fn paper_group_is_torsion_free_but_zero_translation_is_not() {
        let mut data = catalog("paper-s5").unwrap();
        let report = validate(&data, true);
        assert!(report.overall());

        // replacing the translation with zero creates torsion
        let mut translations = BTreeMap::new();
        translations.insert(0usize, vec![rat_int(0); 3]);
        data.coset_translations =
            Some(propagate_translations(&data.holonomy, &translations).unwrap());
        let report = validate(&data, true);
        assert!(!report.overall());
        let torsion = report
            .checks
            .iter()
            .find(|c| c.name == "torsion_free")
            .unwrap();
        assert_eq!(torsion.status, CheckStatus::Fail);
        // non-strict mode only warns
        let report = validate(&data, false);
        assert!(report.overall());
    }

    #[test]
    fn parse_input_round_trip() {
        let data = catalog("paper-s5").unwrap();
        let json = serde_json::to_string(&to_input_json(&data)).unwrap();
        let parsed = parse_input(&json, "paper-s5").unwrap();
        assert_eq!(parsed.dimension, 3);
        assert_eq!(parsed.holonomy.order(), 2);
        assert_eq!(parsed.maps.len(), 2);
        assert!(validate(&parsed, true).overall());
    }

    #[test]
    fn parse_rejects_floats() {
        let text = r#"{"dimension": 1, "maps": {"f": {"D": [[0.5]]}}}"#;
        assert!(parse_input(text, "bad").is_err());
    }
}
