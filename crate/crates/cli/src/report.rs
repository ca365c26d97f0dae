//! Report payloads and their JSON / text renderings.
//!
//! Every computed number is a string so nothing is lost to `f64`; all lists
//! follow the library's deterministic order, so output is byte-identical
//! across runs.

use std::fmt::Write as _;
use std::time::Duration;

use rayclass::exactmath::{format_complex, format_real, Precision};
use rayclass::normal_basis::{
    check_criterion, compute_polynomial, compute_power_polynomial, conjugates as conjugate_records,
    siegel_ramachandra_invariant, IntPolynomial, PolynomialKind,
};
use rayclass::quadforms::{reduced_forms, theta, Discriminant};
use rayclass::reciprocity::validate_level;
use rayclass::Result;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub command: &'static str,
    pub disc: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u64>,
    pub precision: u32,
    pub guard: u32,
    #[serde(serialize_with = "as_exp")]
    pub snap_tolerance: f64,
}

fn as_exp<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:e}"))
}

impl Config {
    fn disc(&self) -> Result<Discriminant> {
        Discriminant::new(self.disc)
    }

    fn level(&self) -> Result<u64> {
        validate_level(self.level.unwrap_or(0))
    }

    /// Significant digits for decimal output: `ceil(0.3 * precision)`.
    fn digits(&self) -> usize {
        (self.precision as usize * 3).div_ceil(10)
    }
}

#[derive(Debug, Serialize)]
pub struct Output {
    schema: u32,
    config: Config,
    result: Payload,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

#[derive(Debug, Serialize)]
struct Timing {
    seconds: String,
}

impl Output {
    pub fn new(config: Config, result: Payload, elapsed: Option<Duration>) -> Self {
        Output {
            schema: SCHEMA,
            config,
            result,
            timing: elapsed.map(|d| Timing {
                seconds: format!("{:.6}", d.as_secs_f64()),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// Indented `key: value` rendering of the same tree as [`Output::to_json`].
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report is serializable");
        let mut out = String::new();
        write_text(&mut out, &value, 0);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// A scalar, or an array of scalars joined by spaces.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) => items
            .iter()
            .map(scalar)
            .collect::<Option<Vec<_>>>()
            .map(|row| row.join(" ")),
        other => scalar(other),
    }
}

fn write_text(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                match inline(child) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        write_text(out, child, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            if items.iter().all(|i| scalar(i).is_some()) {
                let row: Vec<String> = items.iter().filter_map(scalar).collect();
                let _ = writeln!(out, "{pad}{}", row.join(" "));
            } else {
                // YAML-style items: the first line of each carries the "- " marker.
                for item in items {
                    let mut block = String::new();
                    write_text(&mut block, item, depth + 1);
                    let _ = write!(out, "{pad}- {}", block.trim_start_matches(' '));
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Forms(FormsReport),
    Conjugates(ConjugatesReport),
    NormalBasis(NormalBasisReport),
    Minpoly(PolynomialReport),
    Invariant(InvariantReport),
}

#[derive(Debug, Serialize)]
pub struct FormsReport {
    class_number: usize,
    theta: String,
    forms: Vec<[i64; 3]>,
}

pub fn forms(cfg: &Config) -> Result<Payload> {
    let d = cfg.disc()?;
    let forms: Vec<[i64; 3]> = reduced_forms(d).iter().map(|f| [f.a, f.b, f.c]).collect();
    Ok(Payload::Forms(FormsReport {
        class_number: forms.len(),
        theta: theta(d).to_string(),
        forms,
    }))
}

#[derive(Debug, Serialize)]
pub struct ConjugateRow {
    /// `alpha` as `(a, b; c, d) mod N`
    alpha: [u64; 4],
    form: [i64; 3],
    /// `(v, w)` standing for `(v/N, w/N)`
    vector: [u64; 2],
    point: String,
    value: String,
}

#[derive(Debug, Serialize)]
pub struct ConjugatesReport {
    count: usize,
    conjugates: Vec<ConjugateRow>,
}

pub fn conjugates(cfg: &Config, precision: Precision) -> Result<Payload> {
    let records = conjugate_records(cfg.disc()?, cfg.level()?, precision)?;
    let digits = cfg.digits();
    let rows: Vec<ConjugateRow> = records
        .iter()
        .map(|r| ConjugateRow {
            alpha: r.index.alpha.matrix().entries(),
            form: [r.index.form.a, r.index.form.b, r.index.form.c],
            vector: [r.vector.v(), r.vector.w()],
            point: r.point.to_string(),
            value: format_complex(&r.value, digits),
        })
        .collect();
    Ok(Payload::Conjugates(ConjugatesReport {
        count: rows.len(),
        conjugates: rows,
    }))
}

#[derive(Debug, Serialize)]
pub struct NormalBasisReport {
    group_order: usize,
    passes: bool,
    m: Option<u64>,
    max_ratio: String,
    /// `max_ratio + 2^-64`, the quantity actually compared
    bounded_ratio: String,
    ratios: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    power_polynomial: Option<Vec<String>>,
}

pub fn normal_basis(cfg: &Config, precision: Precision, expand_power: bool) -> Result<Payload> {
    let (d, n) = (cfg.disc()?, cfg.level()?);
    let records = conjugate_records(d, n, precision)?;
    let report = check_criterion(&records)?;
    let digits = cfg.digits();
    let power_polynomial = match (expand_power, report.power) {
        (true, Some(m)) => Some(coefficient_strings(&compute_power_polynomial(
            d,
            n,
            m,
            precision,
            cfg.snap_tolerance,
        )?)),
        _ => None,
    };
    Ok(Payload::NormalBasis(NormalBasisReport {
        group_order: report.group_order,
        passes: report.passes,
        m: report.power,
        max_ratio: format_real(&report.max_ratio, digits),
        bounded_ratio: format_real(&report.bounded_ratio, digits),
        ratios: report.ratios.iter().map(|r| format_real(r, digits)).collect(),
        power_polynomial,
    }))
}

fn coefficient_strings(p: &IntPolynomial) -> Vec<String> {
    p.coefficients.iter().map(|c| c.to_string()).collect()
}

#[derive(Debug, Serialize)]
pub struct PolynomialReport {
    degree: usize,
    monic: bool,
    coefficients: Vec<String>,
    max_rounding_residual: String,
    max_imag_residual: String,
    /// Bits used for the final evaluation, after headroom for large coefficients
    evaluation_bits: usize,
}

pub fn minpoly(cfg: &Config, precision: Precision, monic: bool) -> Result<Payload> {
    let kind = if monic { PolynomialKind::Monic } else { PolynomialKind::Integral };
    let run = compute_polynomial(cfg.disc()?, cfg.level()?, precision, cfg.snap_tolerance, kind)?;
    let p = &run.polynomial;
    Ok(Payload::Minpoly(PolynomialReport {
        degree: p.degree(),
        monic: p.is_monic(),
        coefficients: coefficient_strings(p),
        max_rounding_residual: format!("{:e}", p.max_rounding_residual),
        max_imag_residual: format!("{:e}", p.max_imag_residual),
        evaluation_bits: run.precision.bits,
    }))
}

#[derive(Debug, Serialize)]
pub struct InvariantReport {
    value: String,
}

pub fn invariant(cfg: &Config, precision: Precision) -> Result<Payload> {
    let v = siegel_ramachandra_invariant(cfg.disc()?, cfg.level()?, precision)?;
    Ok(Payload::Invariant(InvariantReport {
        value: format_complex(&v, cfg.digits()),
    }))
}
