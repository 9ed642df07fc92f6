//! TOML catalog of symmetric spaces. See `docs/catalog-format.md` for the schema.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use super::{AnalyticKind, Flavor, Space, SpaceSpec, Violation};
use crate::rational::{parse_q, QVec};
use crate::root_core::{Factor, RootSystem, Series};

pub const BUNDLED_CATALOG: &str = include_str!("../../data/catalog.toml");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {message}")]
    Io { path: String, message: String },
    #[error("catalog parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("catalog entry '{name}' (line {line}): {message}")]
    Entry { name: String, line: usize, message: String },
    #[error("catalog entry '{name}' (line {line}) fails validation: {violation}")]
    Validation { name: String, line: usize, violation: Violation },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(xs) => xs.clone(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum LatticeEntry {
    Named(String),
    Explicit { generators: Vec<Vec<Scalar>> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    name: Spanned<String>,
    series: OneOrMany<String>,
    rank: OneOrMany<usize>,
    theta: Vec<Vec<Scalar>>,
    analytic_lattice: LatticeEntry,
    flavor: String,
    #[serde(default)]
    model: Option<String>,
    #[serde(default)]
    comment: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    #[serde(default)]
    space: Vec<RawSpace>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
    (line, column)
}

fn parse_vec(row: &[Scalar]) -> Result<QVec, String> {
    row.iter()
        .map(|x| match x {
            Scalar::Int(i) => Ok(crate::rational::q(*i)),
            Scalar::Text(s) => parse_q(s).ok_or_else(|| format!("'{s}' is not a rational number")),
        })
        .collect()
}

fn build(raw: RawSpace, line: usize) -> Result<Space, CatalogError> {
    let name = raw.name.get_ref().clone();
    let entry_err = |message: String| CatalogError::Entry { name: name.clone(), line, message };

    let series = raw.series.to_vec();
    let ranks = raw.rank.to_vec();
    if series.len() != ranks.len() {
        return Err(entry_err(format!("{} series but {} ranks", series.len(), ranks.len())));
    }
    let factors = series
        .iter()
        .zip(&ranks)
        .map(|(s, &rank)| Ok(Factor { series: s.parse::<Series>()?, rank }))
        .collect::<Result<Vec<_>, crate::root_core::RootError>>()
        .map_err(|e| entry_err(e.to_string()))?;
    let rs = RootSystem::from_factors(&factors).map_err(|e| entry_err(e.to_string()))?;

    let theta = raw.theta.iter().map(|r| parse_vec(r)).collect::<Result<Vec<_>, _>>().map_err(&entry_err)?;
    let flavor = match raw.flavor.as_str() {
        "K0" => Flavor::K0,
        "KZ" => Flavor::KZ,
        other => return Err(entry_err(format!("unknown flavor '{other}' (expected K0 or KZ)"))),
    };
    let mut spec = match raw.analytic_lattice {
        LatticeEntry::Named(ref s) if s == "root" => SpaceSpec::new(&name, rs, theta, AnalyticKind::Root, flavor),
        LatticeEntry::Named(ref s) if s == "weight" => SpaceSpec::new(&name, rs, theta, AnalyticKind::Weight, flavor),
        LatticeEntry::Named(s) => {
            return Err(entry_err(format!("unknown analytic_lattice '{s}' (expected root, weight or {{ generators = ... }})")))
        }
        LatticeEntry::Explicit { generators } => {
            let gens = generators.iter().map(|r| parse_vec(r)).collect::<Result<Vec<_>, _>>().map_err(&entry_err)?;
            SpaceSpec::new(&name, rs, theta, AnalyticKind::Explicit, flavor)
                .with_lattice(gens)
                .map_err(|e| entry_err(e.to_string()))?
        }
    };
    spec.model = raw.model;
    spec.comment = raw.comment;
    Space::new(spec).map_err(|violation| CatalogError::Validation { name: name.clone(), line, violation })
}

/// Parses and validates every entry of a catalog document.
pub fn parse_catalog(text: &str) -> Result<Vec<Space>, CatalogError> {
    let raw: RawCatalog = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        CatalogError::Parse { line, column, message: e.message().to_string() }
    })?;
    let mut out: Vec<Space> = Vec::with_capacity(raw.space.len());
    for entry in raw.space {
        let (line, _) = line_col(text, entry.name.span().start);
        if out.iter().any(|s| s.name() == entry.name.get_ref()) {
            return Err(CatalogError::Entry {
                name: entry.name.get_ref().clone(),
                line,
                message: "duplicate name".into(),
            });
        }
        out.push(build(entry, line)?);
    }
    Ok(out)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<Space>, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CatalogError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_catalog(&text)
}

pub fn bundled_catalog() -> Vec<Space> {
    parse_catalog(BUNDLED_CATALOG).expect("bundled catalog is valid")
}
