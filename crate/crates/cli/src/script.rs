//! TOML job scripts.

use std::collections::BTreeMap;

use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobScript {
    pub ring: RingDecl,
    #[serde(default)]
    pub local: Option<LocalDecl>,
    #[serde(default)]
    pub ideals: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub cycles: BTreeMap<String, CycleDecl>,
    #[serde(default)]
    pub symbols: BTreeMap<String, Vec<SymbolTermDecl>>,
    #[serde(default)]
    pub forms: BTreeMap<String, Vec<FormTermDecl>>,
    #[serde(default)]
    pub run: Vec<CommandDecl>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDecl {
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default = "default_order")]
    pub order: String,
}

fn default_order() -> String {
    "degrevlex".into()
}

/// The local ring `Λ[vars]` used by symbol commands. Entries may use the
/// uniformizer `pi` and, over an extension, the residue generator `a`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalDecl {
    #[serde(default = "default_precision")]
    pub precision: i64,
    #[serde(default = "one")]
    pub residue_degree: usize,
    /// Coefficients `a_0..a_{e-1}` of an Eisenstein polynomial.
    #[serde(default)]
    pub eisenstein: Vec<i64>,
    /// Residue polynomials made invertible, so that entries built from them
    /// are units.
    #[serde(default)]
    pub inverted: Vec<String>,
}

fn default_precision() -> i64 {
    20
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleDecl {
    pub codim: usize,
    pub terms: Vec<(i64, String)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolTermDecl {
    #[serde(default = "one_i64")]
    pub coeff: i64,
    pub entries: Vec<String>,
}

fn one_i64() -> i64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTermDecl {
    pub coeff: String,
    #[serde(default)]
    pub dx: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CommandDecl {
    pub op: String,
    #[serde(flatten)]
    pub args: BTreeMap<String, toml::Value>,
}

impl CommandDecl {
    pub fn echo(&self) -> String {
        let mut parts = vec![self.op.clone()];
        for (k, v) in &self.args {
            parts.push(format!("{k}={v}"));
        }
        parts.join(" ")
    }
}

pub fn parse_script(text: &str) -> Result<JobScript, String> {
    toml::from_str(text).map_err(|e| e.to_string())
}
