//! Versioned JSON files: functions, families, representations, and dumps
//! of Zak/fiber arrays. Complex numbers are `[re, im]` pairs; functions are
//! listed in element index order.

use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSpec, Subgroup};
use crate::linalg::{c, CMat, C64};
use crate::rep::UnitaryRep;
use crate::zak::{FiberArray, ZakArray};

pub const SCHEMA: &str = "zakfiber/1";

pub type Pair = [f64; 2];

pub fn to_pairs(v: &[C64]) -> Vec<Pair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn from_pairs(v: &[Pair]) -> Vec<C64> {
    v.iter().map(|p| c(p[0], p[1])).collect()
}

pub fn matrix_to_pairs(m: &CMat) -> Vec<Vec<Pair>> {
    (0..m.nrows()).map(|r| m.row(r).iter().map(|z| [z.re, z.im]).collect()).collect()
}

pub fn matrix_from_pairs(rows: &[Vec<Pair>]) -> Result<CMat> {
    let n = rows.len();
    let m = rows.first().map(|r| r.len()).unwrap_or(0);
    if let Some(bad) = rows.iter().find(|r| r.len() != m) {
        return Err(Error::Schema(format!("ragged matrix: row of length {} among rows of length {m}", bad.len())));
    }
    Ok(CMat::from_fn(n, m, |i, j| c(rows[i][j][0], rows[i][j][1])))
}

fn schema_version() -> String {
    SCHEMA.to_string()
}

fn check_schema(found: &str) -> Result<()> {
    if found != SCHEMA {
        return Err(Error::Schema(format!("expected schema {SCHEMA:?}, found {found:?}")));
    }
    Ok(())
}

fn unit() -> f64 {
    1.0
}

/// Subgroup given by generators, with its Haar weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub generators: Vec<usize>,
    #[serde(default = "unit")]
    pub weight: f64,
}

impl SubgroupSpec {
    pub fn build(&self, group: &FiniteGroup) -> Result<Subgroup> {
        Subgroup::generate(group, &self.generators, self.weight)
    }
}

/// `{"schema", "group", "values"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionFile {
    #[serde(default = "schema_version")]
    pub schema: String,
    pub group: GroupSpec,
    pub values: Vec<Pair>,
}

/// `{"schema", "group", "subgroup"?, "functions"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyFile {
    #[serde(default = "schema_version")]
    pub schema: String,
    pub group: GroupSpec,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subgroup: Option<SubgroupSpec>,
    pub functions: Vec<Vec<Pair>>,
}

impl FamilyFile {
    pub fn family(&self) -> Vec<Vec<C64>> {
        self.functions.iter().map(|f| from_pairs(f)).collect()
    }
}

/// `{"schema", "group", "dim", "generator_images" | "element_matrices", "family"?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepFile {
    #[serde(default = "schema_version")]
    pub schema: String,
    pub group: GroupSpec,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator_images: Option<Vec<Vec<Vec<Pair>>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub element_matrices: Option<Vec<Vec<Vec<Pair>>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<Vec<Vec<Pair>>>,
}

impl RepFile {
    pub fn build(&self) -> Result<UnitaryRep> {
        check_schema(&self.schema)?;
        let group = Arc::new(self.group.build()?);
        let mats = |raw: &Vec<Vec<Vec<Pair>>>| -> Result<Vec<CMat>> {
            raw.iter()
                .map(|m| {
                    let m = matrix_from_pairs(m)?;
                    if m.nrows() != self.dim || m.ncols() != self.dim {
                        return Err(Error::Schema(format!(
                            "matrix is {}x{}, declared dimension {}",
                            m.nrows(),
                            m.ncols(),
                            self.dim
                        )));
                    }
                    Ok(m)
                })
                .collect()
        };
        match (&self.generator_images, &self.element_matrices) {
            (Some(g), None) => UnitaryRep::from_generator_images(group, mats(g)?),
            (None, Some(e)) => UnitaryRep::from_element_matrices(group, mats(e)?),
            _ => Err(Error::Schema("give exactly one of generator_images and element_matrices".into())),
        }
    }

    pub fn family(&self) -> Option<Vec<Vec<C64>>> {
        self.family.as_ref().map(|f| f.iter().map(|v| from_pairs(v)).collect())
    }
}

/// Dump of a Zak or fiber array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrayDump {
    pub schema: String,
    pub rows: String,
    pub cols: String,
    pub values: Vec<Vec<Pair>>,
}

impl ArrayDump {
    pub fn zak(z: &ZakArray) -> Self {
        ArrayDump { schema: schema_version(), rows: "dual_H".into(), cols: "cosets".into(), values: matrix_to_pairs(z.values()) }
    }

    pub fn fiber(t: &FiberArray) -> Self {
        ArrayDump { schema: schema_version(), rows: "G_mod_Hstar".into(), cols: "Hstar".into(), values: matrix_to_pairs(t.values()) }
    }
}

/// Reads and schema-checks any file with a `"schema"` field.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    parse_json(&text)
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let raw: serde_json::Value = serde_json::from_str(text)?;
    match raw.get("schema") {
        Some(serde_json::Value::String(s)) => check_schema(s)?,
        Some(_) => return Err(Error::Schema("schema field must be a string".into())),
        None => {}
    }
    Ok(serde_json::from_value(raw)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Function values checked against the group order.
pub fn function_values(file: &FunctionFile, group: &FiniteGroup) -> Result<Vec<C64>> {
    check_schema(&file.schema)?;
    if file.values.len() != group.order() {
        return Err(Error::Schema(format!("function has {} values, group order is {}", file.values.len(), group.order())));
    }
    Ok(from_pairs(&file.values))
}
