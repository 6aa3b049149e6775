//! Command implementations behind the binary: loading, validation,
//! number tables, spectral splits, zeta reports and the catalog.
//!
//! Text and JSON output render the same computed report objects; the
//! JSON side keeps every integer exact. Exit codes: 0 ok, 1 domain
//! validation failure, 2 input parse failure, 3 undecidable spectral
//! character, 4 certificate failure.

use std::io::Write;

use num_bigint::BigInt;

use crate::crystal::{self, CheckStatus, CrystalData, ValidationReport};
use crate::error::{Error, Result};
use crate::fixed_point::{fixed_point_table, sign_diagnostics, FixedPointTable};
use crate::maps::{intertwiner_table, positive_part, PositivePart};
use crate::ratfun::RatFun;
use crate::spectral::{spectral_split, CharMethod, SpectralSplit};
use crate::zeta::{nielsen_zeta_with, ZetaOptions, ZetaReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNDECIDABLE: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;

/// One run's worth of options, shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// "catalog:<name>" or a file path.
    pub input: String,
    pub map_name: Option<String>,
    pub kmax: usize,
    pub json: bool,
    pub strict: bool,
    pub checks: bool,
    pub parallel: bool,
}

impl RunConfig {
    pub fn new(input: &str) -> Self {
        RunConfig {
            input: input.to_string(),
            map_name: None,
            kmax: 10,
            json: false,
            strict: false,
            checks: false,
            parallel: false,
        }
    }
}

/// Maps error kinds to the documented exit codes.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::UnknownCatalog(_) => EXIT_PARSE,
        Error::Undecidable(_) | Error::NonMultiplicativeCharacter => EXIT_UNDECIDABLE,
        Error::CertificateFailure(_) | Error::NonIntegerCoefficients(_) | Error::NoPadeFit { .. } => {
            EXIT_CERTIFICATE
        }
        _ => EXIT_VALIDATION,
    }
}

/// Loads from the catalog or from a JSON file.
pub fn load(config: &RunConfig) -> Result<CrystalData> {
    if let Some(name) = config.input.strip_prefix("catalog:") {
        crystal::catalog(name)
    } else {
        let text = std::fs::read_to_string(&config.input)
            .map_err(|e| Error::Parse(format!("cannot read '{}': {e}", config.input)))?;
        let hint = config.input.clone();
        crystal::parse_input(&text, &hint)
    }
}

fn require_valid(data: &CrystalData, strict: bool) -> Result<ValidationReport> {
    let report = crystal::validate(data, strict);
    if report.overall() {
        Ok(report)
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .map(|c| c.name.as_str())
            .collect();
        Err(Error::Validation(format!(
            "validation failed: {}",
            failed.join(", ")
        )))
    }
}

fn require_map<'a>(data: &'a CrystalData, config: &RunConfig) -> Result<&'a crate::maps::MapSpec> {
    let name = config
        .map_name
        .as_deref()
        .ok_or_else(|| Error::Validation("no map selected; pass --map <name>".into()))?;
    data.map(name)
}

// ---------------------------------------------------------------------------
// JSON helpers (exact integers via arbitrary-precision numbers)
// ---------------------------------------------------------------------------

fn big_json(b: &BigInt) -> serde_json::Value {
    let number: serde_json::Number = serde_json::from_str(&b.to_string())
        .expect("integer literals always parse as JSON numbers");
    serde_json::Value::Number(number)
}

fn ratfun_json(r: &RatFun) -> Result<serde_json::Value> {
    r.check_zeta_normal_form()?;
    let ints = |p: &crate::poly::QPoly| -> Vec<serde_json::Value> {
        p.coeffs().iter().map(|c| big_json(c.numer())).collect()
    };
    Ok(serde_json::json!({
        "num": ints(r.num()),
        "den": ints(r.den()),
        "pretty": r.pretty(),
    }))
}

fn validation_json(data: &CrystalData, report: &ValidationReport) -> serde_json::Value {
    serde_json::json!({
        "name": data.name,
        "dimension": data.dimension,
        "holonomy_order": data.holonomy.order(),
        "checks": report.checks,
        "overall": if report.overall() { "pass" } else { "fail" },
    })
}

fn table_json(table: &FixedPointTable) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            obj.insert("k".into(), serde_json::json!(row.k));
            obj.insert("lefschetz".into(), big_json(&row.lefschetz));
            obj.insert("nielsen".into(), big_json(&row.nielsen));
            if let Some(plus) = &row.lefschetz_plus {
                obj.insert("lefschetz_plus".into(), big_json(plus));
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::json!({ "kmax": table.kmax, "rows": rows })
}

fn split_json(split: &SpectralSplit, part: &PositivePart) -> serde_json::Value {
    let character: Vec<serde_json::Value> = split
        .character
        .values
        .iter()
        .zip(&split.character.methods)
        .enumerate()
        .map(|(x, (v, m))| {
            serde_json::json!({
                "element": x,
                "value": v,
                "method": method_name(*m),
            })
        })
        .collect();
    serde_json::json!({
        "modulus": split.modulus,
        "real": { "p": split.real.above_one, "n": split.real.below_minus_one },
        "character": character,
        "positive_part": { "indices": part.plus_indices, "index": part.index },
    })
}

fn method_name(m: CharMethod) -> &'static str {
    match m {
        CharMethod::TrivialSplit => "trivial_split",
        CharMethod::ProductTest => "product_test",
        CharMethod::CertifiedNumeric => "certified_numeric",
    }
}

fn zeta_json(report: &ZetaReport) -> Result<serde_json::Value> {
    let mut obj = serde_json::Map::new();
    let mut lefschetz = ratfun_json(report.lefschetz_zeta.value())?;
    lefschetz["series_checked"] = serde_json::json!(report.lefschetz_zeta.series_checked());
    obj.insert("lefschetz_zeta".into(), lefschetz);
    if let Some(plus) = &report.lefschetz_zeta_plus {
        let mut value = ratfun_json(plus.value())?;
        value["series_checked"] = serde_json::json!(plus.series_checked());
        obj.insert("lefschetz_zeta_plus".into(), value);
    }
    obj.insert("nielsen_zeta".into(), ratfun_json(&report.nielsen_zeta)?);
    obj.insert(
        "table_case".into(),
        serde_json::json!({
            "p_parity": if report.table_case.p_odd { "odd" } else { "even" },
            "n_parity": if report.table_case.n_odd { "odd" } else { "even" },
            "index": report.table_case.index,
        }),
    );
    obj.insert("k_table".into(), table_json(&report.k_table));
    obj.insert(
        "nielsen_series_checked".into(),
        serde_json::json!(report.nielsen_series_checked),
    );
    Ok(serde_json::Value::Object(obj))
}

fn diagnostics_json(report: &ValidationReport) -> serde_json::Value {
    serde_json::json!({
        "checks": report.checks,
        "overall": if report.overall() { "pass" } else { "fail" },
    })
}

// ---------------------------------------------------------------------------
// text rendering
// ---------------------------------------------------------------------------

fn render_validation(out: &mut dyn Write, data: &CrystalData, report: &ValidationReport) {
    let _ = writeln!(
        out,
        "{} (dimension {}, holonomy order {})",
        data.name,
        data.dimension,
        data.holonomy.order()
    );
    for check in &report.checks {
        let status = match check.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Warn => "warn",
            CheckStatus::Skipped => "skipped",
        };
        if check.detail.is_empty() {
            let _ = writeln!(out, "  {:<28} {}", check.name, status);
        } else {
            let _ = writeln!(out, "  {:<28} {} ({})", check.name, status, check.detail);
        }
    }
    let _ = writeln!(
        out,
        "overall: {}",
        if report.overall() { "pass" } else { "fail" }
    );
}

fn render_table(out: &mut dyn Write, table: &FixedPointTable) {
    let has_plus = table.rows.iter().any(|r| r.lefschetz_plus.is_some());
    if has_plus {
        let _ = writeln!(out, "  {:>3} {:>24} {:>24} {:>24}", "k", "L(f^k)", "N(f^k)", "L(f+^k)");
    } else {
        let _ = writeln!(out, "  {:>3} {:>24} {:>24}", "k", "L(f^k)", "N(f^k)");
    }
    for row in &table.rows {
        match &row.lefschetz_plus {
            Some(plus) => {
                let _ = writeln!(
                    out,
                    "  {:>3} {:>24} {:>24} {:>24}",
                    row.k,
                    row.lefschetz.to_string(),
                    row.nielsen.to_string(),
                    plus.to_string()
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "  {:>3} {:>24} {:>24}",
                    row.k,
                    row.lefschetz.to_string(),
                    row.nielsen.to_string()
                );
            }
        }
    }
}

fn render_split(out: &mut dyn Write, split: &SpectralSplit, part: &PositivePart) {
    let _ = writeln!(
        out,
        "eigenvalue moduli: inside {}, on {}, outside {}",
        split.modulus.inside, split.modulus.on, split.modulus.outside
    );
    let _ = writeln!(
        out,
        "real eigenvalues:  p = {} (> 1), n = {} (< -1)",
        split.real.above_one, split.real.below_minus_one
    );
    let _ = writeln!(out, "character eps = det(rho_{{>1}}(x)):");
    for (x, (v, m)) in split
        .character
        .values
        .iter()
        .zip(&split.character.methods)
        .enumerate()
    {
        let _ = writeln!(out, "  element {:>3}: {:>2}   [{}]", x, v, method_name(*m));
    }
    let _ = writeln!(
        out,
        "positive part: index {}, F+ = {:?}",
        part.index, part.plus_indices
    );
}

fn render_diagnostics(out: &mut dyn Write, report: &ValidationReport) {
    let _ = writeln!(out, "sign diagnostics:");
    for check in &report.checks {
        let status = match check.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Warn => "warn",
            CheckStatus::Skipped => "skipped",
        };
        let _ = writeln!(out, "  {:<28} {} ({})", check.name, status, check.detail);
    }
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

pub fn cmd_validate(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let data = load(config)?;
    let report = crystal::validate(&data, config.strict);
    if config.json {
        let value = validation_json(&data, &report);
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        render_validation(out, &data, &report);
    }
    Ok(if report.overall() { EXIT_OK } else { EXIT_VALIDATION })
}

/// Shared pipeline prefix: load, validate, resolve map, intertwiner,
/// split and positive part.
struct Pipeline {
    data: CrystalData,
    map_name: String,
    split: SpectralSplit,
    part: PositivePart,
}

fn pipeline(config: &RunConfig) -> Result<Pipeline> {
    let data = load(config)?;
    require_valid(&data, config.strict)?;
    let spec = require_map(&data, config)?;
    let table = intertwiner_table(&data.holonomy, &spec.linear)?;
    let split = spectral_split(&data.holonomy, &spec.linear, &table)?;
    let part = positive_part(&data.holonomy, &split.character)?;
    let map_name = config.map_name.clone().unwrap_or_default();
    Ok(Pipeline {
        data,
        map_name,
        split,
        part,
    })
}

pub fn cmd_numbers(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let pipe = pipeline(config)?;
    let spec = pipe.data.map(&pipe.map_name)?;
    let table = fixed_point_table(
        &pipe.data.holonomy,
        &spec.linear,
        &pipe.part,
        config.kmax,
        config.parallel,
    )?;
    let diagnostics = config.checks.then(|| {
        sign_diagnostics(&pipe.data.holonomy, &spec.linear, &pipe.split, config.kmax)
    });
    if config.json {
        let mut value = serde_json::json!({
            "input": pipe.data.name,
            "map": pipe.map_name,
            "table": table_json(&table),
        });
        if let Some(d) = &diagnostics {
            value["diagnostics"] = diagnostics_json(d);
        }
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        let _ = writeln!(out, "{} / map '{}'", pipe.data.name, pipe.map_name);
        render_table(out, &table);
        if let Some(d) = &diagnostics {
            render_diagnostics(out, d);
        }
    }
    if let Some(d) = &diagnostics {
        if !d.overall() {
            return Ok(EXIT_VALIDATION);
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_split(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let pipe = pipeline(config)?;
    if config.json {
        let value = serde_json::json!({
            "input": pipe.data.name,
            "map": pipe.map_name,
            "split": split_json(&pipe.split, &pipe.part),
        });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        let _ = writeln!(out, "{} / map '{}'", pipe.data.name, pipe.map_name);
        render_split(out, &pipe.split, &pipe.part);
    }
    Ok(EXIT_OK)
}

pub fn cmd_zeta(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let pipe = pipeline(config)?;
    let spec = pipe.data.map(&pipe.map_name)?;
    let options = ZetaOptions {
        kmax: config.kmax,
        parallel: config.parallel,
        ..ZetaOptions::default()
    };
    let report = nielsen_zeta_with(
        &pipe.data.holonomy,
        &spec.linear,
        &pipe.split,
        &pipe.part,
        options,
    )?;
    let diagnostics = config.checks.then(|| {
        sign_diagnostics(&pipe.data.holonomy, &spec.linear, &pipe.split, config.kmax)
    });
    if config.json {
        let mut value = serde_json::json!({
            "input": pipe.data.name,
            "map": pipe.map_name,
        });
        let zeta = zeta_json(&report)?;
        for (k, v) in zeta.as_object().unwrap() {
            value[k] = v.clone();
        }
        if let Some(d) = &diagnostics {
            value["diagnostics"] = diagnostics_json(d);
        }
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        let _ = writeln!(out, "{} / map '{}'", pipe.data.name, pipe.map_name);
        let _ = writeln!(
            out,
            "L_f(z)  = {}   [certified, {} coefficients checked]",
            report.lefschetz_zeta.value().pretty(),
            report.lefschetz_zeta.series_checked()
        );
        if let Some(plus) = &report.lefschetz_zeta_plus {
            let _ = writeln!(
                out,
                "L_f+(z) = {}   [certified, {} coefficients checked]",
                plus.value().pretty(),
                plus.series_checked()
            );
        }
        let _ = writeln!(
            out,
            "N_f(z)  = {}   [series checked to k = {}]",
            report.nielsen_zeta.pretty(),
            report.nielsen_series_checked
        );
        let _ = writeln!(
            out,
            "table case: p {}, n {}, index {}",
            if report.table_case.p_odd { "odd" } else { "even" },
            if report.table_case.n_odd { "odd" } else { "even" },
            report.table_case.index
        );
        render_table(out, &report.k_table);
        if let Some(d) = &diagnostics {
            render_diagnostics(out, d);
        }
    }
    if let Some(d) = &diagnostics {
        if !d.overall() {
            return Ok(EXIT_VALIDATION);
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_catalog_list(out: &mut dyn Write) -> Result<i32> {
    for name in crystal::catalog_names() {
        let data = crystal::catalog(name)?;
        let maps: Vec<&str> = data.maps.keys().map(|s| s.as_str()).collect();
        let _ = writeln!(
            out,
            "{:<14} dimension {}, holonomy order {}, maps: {}",
            name,
            data.dimension,
            data.holonomy.order(),
            if maps.is_empty() {
                "(none)".to_string()
            } else {
                maps.join(", ")
            }
        );
    }
    Ok(EXIT_OK)
}

pub fn cmd_catalog_show(name: &str, out: &mut dyn Write) -> Result<i32> {
    let data = crystal::catalog(name)?;
    let value = crystal::to_input_json(&data);
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap());
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(config: &RunConfig, f: fn(&RunConfig, &mut dyn Write) -> Result<i32>) -> (i32, String) {
        let mut buf = Vec::new();
        let code = match f(config, &mut buf) {
            Ok(code) => code,
            Err(e) => exit_code_for(&e),
        };
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn validate_catalog_passes() {
        let config = RunConfig::new("catalog:paper-s5");
        let (code, text) = run(&config, cmd_validate);
        assert_eq!(code, EXIT_OK);
        assert!(text.contains("overall: pass"));
    }

    #[test]
    fn unknown_catalog_is_parse_error() {
        let config = RunConfig::new("catalog:nope");
        let (code, _) = run(&config, cmd_validate);
        assert_eq!(code, EXIT_PARSE);
    }

    #[test]
    fn numbers_paper_f() {
        let mut config = RunConfig::new("catalog:paper-s5");
        config.map_name = Some("f".into());
        config.kmax = 3;
        let (code, text) = run(&config, cmd_numbers);
        assert_eq!(code, EXIT_OK);
        assert!(text.contains("-28"), "{text}");
        assert!(text.contains("-874"), "{text}");
        assert!(text.contains("-26728"), "{text}");
    }

    #[test]
    fn zeta_paper_g_json_round_trip() {
        let mut config = RunConfig::new("catalog:paper-s5");
        config.map_name = Some("g".into());
        config.json = true;
        config.checks = true;
        let (code, text) = run(&config, cmd_zeta);
        assert_eq!(code, EXIT_OK, "{text}");
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["nielsen_zeta"]["pretty"], "(1+2z)/(1-6z)");
        // parse -> re-serialize is the identity
        let again = serde_json::to_string_pretty(&value).unwrap();
        assert_eq!(text.trim_end(), again);
    }

    #[test]
    fn split_reports_case() {
        let mut config = RunConfig::new("catalog:paper-s5");
        config.map_name = Some("g".into());
        let (code, text) = run(&config, cmd_split);
        assert_eq!(code, EXIT_OK);
        assert!(text.contains("outside 2"), "{text}");
        assert!(text.contains("index 2"), "{text}");
    }
}
