//! JSON configuration files describing a real form.

use std::path::Path;

use kcone_core::ktheta::{Dimensions, RealFormConfig};
use kcone_core::langlands::{PositiveSystem, TorusDatum};
use kcone_core::oracle::{AffineConeModel, ModelVariable, Polynomial};
use kcone_core::{InvolutionData, IntMatrix, RootDatum, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl std::fmt::Display) -> ConfigError {
    ConfigError::Invalid { field: field.into(), message: message.to_string() }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub group: GroupSection,
    pub involution: InvolutionSection,
    pub k: KSection,
    pub dims: DimsSection,
    pub split_mod_center: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tori: Option<Vec<TorusSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_model: Option<ModelSection>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InvolutionSection {
    pub theta: Vec<Vec<i64>>,
    /// Imaginary roots marked compact.
    #[serde(default)]
    pub compact: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct KSection {
    pub torus_rank: usize,
    pub restriction: Vec<Vec<i64>>,
    pub weights: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<KDatumSection>,
}

/// Root datum of `K` in the coordinates of its maximal torus.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct KDatumSection {
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DimsSection {
    pub g: usize,
    pub k: usize,
    pub p: usize,
    pub rank_split: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TorusSection {
    pub label: String,
    pub theta: Vec<Vec<i64>>,
    #[serde(default)]
    pub compact: Vec<Vec<i64>>,
    pub positive_systems: Vec<PositiveSystemSection>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PositiveSystemSection {
    pub id: String,
    #[serde(default)]
    pub imaginary_positive: Vec<Vec<i64>>,
    pub ell: u32,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub variables: Vec<VariableSection>,
    /// Each generator is a list of terms.
    pub generators: Vec<Vec<TermSection>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct VariableSection {
    pub name: String,
    pub weight: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TermSection {
    pub num: i64,
    #[serde(default = "one")]
    pub den: i64,
    pub exponents: Vec<u32>,
}

fn one() -> i64 {
    1
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct LoadedConfig {
    pub source: ConfigFile,
    pub real_form: RealFormConfig,
    pub tori: Option<Vec<TorusDatum>>,
    pub oracle_model: Option<AffineConeModel>,
}

impl LoadedConfig {
    pub fn name(&self) -> &str {
        &self.real_form.name
    }
}

fn square(field: &str, rows: &[Vec<i64>], n: usize) -> Result<IntMatrix, ConfigError> {
    if rows.len() != n {
        return Err(invalid(field, format!("expected {n} rows, found {}", rows.len())));
    }
    IntMatrix::from_rows(rows, n).map_err(|e| invalid(field, e))
}

fn weights(field: &str, rows: &[Vec<i64>], rank: usize) -> Result<Vec<Weight>, ConfigError> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            if r.len() == rank {
                Ok(Weight::new(r.clone()))
            } else {
                Err(invalid(format!("{field}[{i}]"), format!("expected {rank} coordinates, found {}", r.len())))
            }
        })
        .collect()
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<LoadedConfig, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)?.validate()
    }

    /// Converts to core types, running every cross-validation.
    pub fn validate(self) -> Result<LoadedConfig, ConfigError> {
        let g_datum = RootDatum::from_cartan(&self.group.cartan).map_err(|e| invalid("group.cartan", e))?;
        let rank = g_datum.rank();
        if !self.group.labels.is_empty() && self.group.labels.len() != rank {
            return Err(invalid("group.labels", format!("expected {rank} labels, found {}", self.group.labels.len())));
        }
        let theta = square("involution.theta", &self.involution.theta, rank)?;
        let compact = weights("involution.compact", &self.involution.compact, rank)?;
        let involution = InvolutionData::new(theta, compact);

        let kr = self.k.torus_rank;
        if self.k.restriction.len() != kr {
            return Err(invalid("k.restriction", format!("expected {kr} rows, found {}", self.k.restriction.len())));
        }
        let restriction = IntMatrix::from_rows(&self.k.restriction, rank).map_err(|e| invalid("k.restriction", e))?;
        let k_weights = weights("k.weights", &self.k.weights, kr)?;
        let k_datum = match &self.k.datum {
            None => None,
            Some(d) => {
                let roots = weights("k.datum.simple_roots", &d.simple_roots, kr)?;
                let coroots = weights("k.datum.simple_coroots", &d.simple_coroots, kr)?;
                Some(RootDatum::new(kr, roots, coroots).map_err(|e| invalid("k.datum", e))?)
            }
        };
        let real_form = RealFormConfig {
            name: self.name.clone(),
            g_datum,
            involution,
            k_torus_rank: kr,
            restriction,
            k_weights,
            k_datum,
            dims: Dimensions { g: self.dims.g, k: self.dims.k, p: self.dims.p, rank_split: self.dims.rank_split },
            split_mod_center: self.split_mod_center,
        };
        real_form.validate().map_err(|e| match e {
            kcone_core::Error::InvalidConfig(m) => match m.split_once(": ") {
                Some((field, msg)) => invalid(field, msg),
                None => invalid("config", m),
            },
            other => invalid("config", other),
        })?;

        let tori = match &self.tori {
            None => None,
            Some(list) => {
                let mut out = Vec::with_capacity(list.len());
                for (i, t) in list.iter().enumerate() {
                    let field = format!("tori[{i}]");
                    let theta = square(&format!("{field}.theta"), &t.theta, rank)?;
                    let compact = weights(&format!("{field}.compact"), &t.compact, rank)?;
                    let mut systems = Vec::with_capacity(t.positive_systems.len());
                    for (j, ps) in t.positive_systems.iter().enumerate() {
                        let pos = weights(
                            &format!("{field}.positive_systems[{j}].imaginary_positive"),
                            &ps.imaginary_positive,
                            rank,
                        )?;
                        systems.push(PositiveSystem {
                            id: ps.id.clone(),
                            imaginary_positive: pos.into_iter().collect(),
                            ell: ps.ell,
                        });
                    }
                    let torus = TorusDatum {
                        label: t.label.clone(),
                        lattice_rank: rank,
                        theta: InvolutionData::new(theta, compact),
                        positive_systems: systems,
                    };
                    torus.validate(&real_form.g_datum).map_err(|e| invalid(&field, e))?;
                    kcone_core::langlands::s_h_of_k(&torus, &real_form.g_datum, real_form.dims.k)
                        .map_err(|e| invalid(&field, e))?;
                    out.push(torus);
                }
                Some(out)
            }
        };

        let oracle_model = match &self.oracle_model {
            None => None,
            Some(m) => {
                let vars = m
                    .variables
                    .iter()
                    .map(|v| ModelVariable { name: v.name.clone(), weight: Weight::new(v.weight.clone()) })
                    .collect();
                let mut gens = Vec::with_capacity(m.generators.len());
                for (i, g) in m.generators.iter().enumerate() {
                    let mut p = Polynomial::new();
                    for (j, t) in g.iter().enumerate() {
                        if t.den == 0 {
                            return Err(invalid(format!("oracle_model.generators[{i}][{j}].den"), "zero denominator"));
                        }
                        p.add_term(BigRational::new(BigInt::from(t.num), BigInt::from(t.den)), t.exponents.clone());
                    }
                    gens.push(p);
                }
                let model = AffineConeModel::new(vars, gens).map_err(|e| invalid("oracle_model", e))?;
                if model.rank() != kr {
                    return Err(invalid(
                        "oracle_model.variables",
                        format!("weights have rank {}, but k.torus_rank is {kr}", model.rank()),
                    ));
                }
                Some(model)
            }
        };

        Ok(LoadedConfig { source: self, real_form, tori, oracle_model })
    }
}
