//! Versioned JSON input formats and their conversion into domain types.
//!
//! Every file carries a top-level `"schema": 1`; any other value is
//! rejected with [`Error::SchemaVersion`] so future revisions can change
//! layouts without silently misreading old files. All indices are
//! 0-based, rationals are strings `"p/q"` (or `"p"`), and expressions use
//! the same grammar as [`Chart::function`].
//!
//! * `lsa.json` — structure constants: `{"schema":1, "dim":n,
//!   "labels":[...], "products":[{"left":i, "right":j,
//!   "result":[[k,"p/q"],...]},...]}`; omitted products are zero.
//! * `connection.json` — chart plus Christoffel symbols: `{"schema":1,
//!   "variables":["x","y"], "nonvanishing":["x"], "gamma":[{"upper":k,
//!   "lower":[i,j], "value":"expr"},...]}`; omitted symbols are zero.
//! * `fields.json` — named component lists over the chart of an
//!   accompanying connection file: `{"schema":1,
//!   "fields":[{"name":"e1-", "components":["x","y"]},...]}`.
//! * `group.json` — chart-with-frames presentation of a Lie group:
//!   `{"schema":1, "variables":[...], "nonvanishing":[...],
//!   "identity":["p/q",...], "left_frame":[[expr,...],...],
//!   "right_frame":[[expr,...],...]}`.

use serde::Deserialize;

use crate::connection::{Chart, Connection, VectorField};
use crate::error::Error;
use crate::exactmath::Rational;
use crate::liegroup::GroupChart;
use crate::lsa::StructureConstants;

/// The only schema version this build reads.
pub const SCHEMA_VERSION: u32 = 1;

fn check_version(schema: u32) -> Result<(), Error> {
    if schema == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(Error::SchemaVersion(schema))
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::ParseError { column: e.column(), message: format!("line {}: {e}", e.line()) }
}

fn parse_fraction(s: &str) -> Result<Rational, Error> {
    s.trim().parse::<Rational>().map_err(|e| Error::ParseError {
        column: 0,
        message: format!("bad rational {s:?}: {e}"),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LsaFile {
    schema: u32,
    dim: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    products: Vec<ProductEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductEntry {
    left: usize,
    right: usize,
    result: Vec<(usize, String)>,
}

/// Read structure constants from `lsa.json` text.
pub fn read_lsa(json: &str) -> Result<StructureConstants, Error> {
    let file: LsaFile = serde_json::from_str(json).map_err(json_error)?;
    check_version(file.schema)?;
    let labels = file
        .labels
        .unwrap_or_else(|| (1..=file.dim).map(|i| format!("e{i}")).collect());
    if labels.len() != file.dim {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for dimension {}",
            labels.len(),
            file.dim
        )));
    }
    let bound = |i: usize| {
        if i < file.dim {
            Ok(i)
        } else {
            Err(Error::DimensionMismatch(format!(
                "index {i} out of range for dimension {}",
                file.dim
            )))
        }
    };
    let mut entries = Vec::new();
    for p in &file.products {
        let left = bound(p.left)?;
        let right = bound(p.right)?;
        for (k, coeff) in &p.result {
            entries.push((left, right, bound(*k)?, parse_fraction(coeff)?));
        }
    }
    StructureConstants::from_sparse(labels, entries)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConnectionFile {
    schema: u32,
    variables: Vec<String>,
    #[serde(default)]
    nonvanishing: Vec<String>,
    #[serde(default)]
    gamma: Vec<GammaEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaEntry {
    upper: usize,
    lower: [usize; 2],
    value: String,
}

/// Read a chart and its Christoffel symbols from `connection.json` text.
pub fn read_connection(json: &str) -> Result<Connection, Error> {
    let file: ConnectionFile = serde_json::from_str(json).map_err(json_error)?;
    check_version(file.schema)?;
    let names: Vec<&str> = file.variables.iter().map(String::as_str).collect();
    let nonvanishing: Vec<&str> = file.nonvanishing.iter().map(String::as_str).collect();
    let chart = Chart::parse(&names, &nonvanishing)?;
    let sparse: Vec<(usize, usize, usize, &str)> = file
        .gamma
        .iter()
        .map(|g| (g.upper, g.lower[0], g.lower[1], g.value.as_str()))
        .collect();
    Connection::from_sparse(chart, &sparse)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldsFile {
    schema: u32,
    fields: Vec<NamedFieldEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedFieldEntry {
    name: String,
    components: Vec<String>,
}

/// Read labelled vector fields from `fields.json` text, interpreted on
/// the given chart (normally the chart of an accompanying connection).
pub fn read_fields(json: &str, chart: &Chart) -> Result<Vec<(String, VectorField)>, Error> {
    let file: FieldsFile = serde_json::from_str(json).map_err(json_error)?;
    check_version(file.schema)?;
    file.fields
        .into_iter()
        .map(|f| {
            let comps: Vec<&str> = f.components.iter().map(String::as_str).collect();
            Ok((f.name, VectorField::parse(chart, &comps)?))
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    schema: u32,
    variables: Vec<String>,
    #[serde(default)]
    nonvanishing: Vec<String>,
    identity: Vec<String>,
    left_frame: Vec<Vec<String>>,
    right_frame: Vec<Vec<String>>,
}

/// Read a chart-with-frames group presentation from `group.json` text.
pub fn read_group(json: &str) -> Result<GroupChart, Error> {
    let file: GroupFile = serde_json::from_str(json).map_err(json_error)?;
    check_version(file.schema)?;
    let names: Vec<&str> = file.variables.iter().map(String::as_str).collect();
    let nonvanishing: Vec<&str> = file.nonvanishing.iter().map(String::as_str).collect();
    let chart = Chart::parse(&names, &nonvanishing)?;
    let identity = file
        .identity
        .iter()
        .map(|s| parse_fraction(s))
        .collect::<Result<Vec<_>, _>>()?;
    let frame = |rows: &[Vec<String>]| -> Result<Vec<VectorField>, Error> {
        rows.iter()
            .map(|row| {
                let comps: Vec<&str> = row.iter().map(String::as_str).collect();
                VectorField::parse(&chart, &comps)
            })
            .collect()
    };
    GroupChart::new(chart.clone(), identity, frame(&file.left_frame)?, frame(&file.right_frame)?)
}
