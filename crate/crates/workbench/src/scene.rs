use std::collections::BTreeMap;
use std::path::Path;

use hkt_core::exact::{parse_rational, rational_from_i64, ExactMatrix, Scalar};
use hkt_core::hermitian::{HermitianError, Hyperhermitian};
use hkt_core::hypercomplex::{AdaptedFrame, HypercomplexError, HypercomplexTriple, HypercomplexValidation};
use hkt_core::lie::{InvariantForm, LieAlgebraData, LieError, LieValidation, StructureEntry};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expect::Expectation;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("shape: {0}")]
    Shape(String),
    #[error("Jacobi: {0}")]
    Jacobi(LieError),
    #[error("structure constants: {0}")]
    Structure(LieError),
    #[error("quaternion: {0}")]
    Quaternion(HypercomplexError),
    #[error("compatibility: {0}")]
    Compatibility(HermitianError),
    #[error("metadata.expect: {0}")]
    Expect(serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Brackets,
    MaurerCartan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndoBasis {
    #[default]
    Vectors,
    Coframe,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Str(String),
    Int(i64),
}

/// The scene file as written on disk.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub name: String,
    pub dim: usize,
    pub mode: Mode,
    #[serde(default)]
    brackets: Vec<(usize, usize, usize, Coeff)>,
    #[serde(default)]
    maurer_cartan: Vec<(usize, usize, usize, Coeff)>,
    #[serde(rename = "I")]
    pub i: Vec<Vec<Scalar>>,
    #[serde(rename = "J")]
    pub j: Vec<Vec<Scalar>>,
    #[serde(default)]
    pub endo_given_on: EndoBasis,
    #[serde(default)]
    pub metric: Option<Vec<Vec<Scalar>>>,
    /// Ω over the real coframe e¹..eⁿ.
    #[serde(default)]
    pub phi: Option<InvariantForm>,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

/// Why metric sections of a report are switched off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limitation {
    NoMetric,
    NotIntegrable(String),
    NotUnimodular,
}

impl Limitation {
    pub fn reason(&self) -> String {
        match self {
            Limitation::NoMetric => "no metric".into(),
            Limitation::NotIntegrable(d) => format!("not integrable ({d})"),
            Limitation::NotUnimodular => "not unimodular".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Scene {
    pub name: String,
    pub algebra: LieAlgebraData,
    pub triple: HypercomplexTriple,
    pub metric: Option<ExactMatrix>,
    pub phi: Option<InvariantForm>,
    pub metadata: BTreeMap<String, serde_json::Value>,
    pub lie: LieValidation,
    pub validation: HypercomplexValidation,
    pub expect: Vec<Expectation>,
    hermitian: Option<Hyperhermitian>,
}

fn matrix(name: &str, dim: usize, rows: &[Vec<Scalar>]) -> Result<ExactMatrix, SceneError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(SceneError::Shape(format!("{name} must be a {dim}x{dim} array")));
    }
    Ok(ExactMatrix::from_rows(rows.to_vec()).expect("checked shape"))
}

fn entries(raw: &[(usize, usize, usize, Coeff)]) -> Result<Vec<StructureEntry>, SceneError> {
    raw.iter()
        .map(|(i, j, k, c)| {
            let c = match c {
                Coeff::Str(s) => parse_rational(s).map_err(|e| SceneError::Shape(e.to_string()))?,
                Coeff::Int(n) => rational_from_i64(*n),
            };
            Ok(StructureEntry { i: *i, j: *j, k: *k, c })
        })
        .collect()
}

impl Scene {
    pub fn load(path: &Path) -> Result<Self, SceneError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| SceneError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, SceneError> {
        let file: SceneFile = serde_json::from_str(text)?;
        Self::from_file(file)
    }

    pub fn from_file(file: SceneFile) -> Result<Self, SceneError> {
        let dim = file.dim;
        if dim == 0 || !dim.is_multiple_of(4) {
            return Err(SceneError::Shape(format!("dim {dim} is not a positive multiple of 4")));
        }
        let algebra = match file.mode {
            Mode::Brackets => {
                if !file.maurer_cartan.is_empty() {
                    return Err(SceneError::Shape("mode \"brackets\" with a maurer_cartan table".into()));
                }
                LieAlgebraData::from_brackets(dim, &entries(&file.brackets)?)
            }
            Mode::MaurerCartan => {
                if !file.brackets.is_empty() {
                    return Err(SceneError::Shape("mode \"maurer_cartan\" with a brackets table".into()));
                }
                LieAlgebraData::from_maurer_cartan(dim, &entries(&file.maurer_cartan)?)
            }
        }
        .map_err(SceneError::Structure)?;
        let lie = algebra.validate().map_err(SceneError::Jacobi)?;

        let a_i = matrix("I", dim, &file.i)?;
        let a_j = matrix("J", dim, &file.j)?;
        let triple = match file.endo_given_on {
            EndoBasis::Vectors => HypercomplexTriple::new(a_i, a_j),
            EndoBasis::Coframe => HypercomplexTriple::from_coframe(&a_i, &a_j),
        }
        .map_err(|e| SceneError::Shape(e.to_string()))?;
        triple.check_quaternion().map_err(SceneError::Quaternion)?;
        let validation = triple.validate(&algebra);

        let metric = file.metric.as_deref().map(|m| matrix("metric", dim, m)).transpose()?;
        let hermitian = Self::hermitian_from(&algebra, &triple, metric.as_ref(), file.phi.as_ref())?;
        let metric = hermitian.as_ref().map(|h| h.metric().clone()).or(metric);

        let expect = match file.metadata.get("expect") {
            Some(v) => serde_json::from_value(v.clone()).map_err(SceneError::Expect)?,
            None => Vec::new(),
        };
        Ok(Scene {
            name: file.name,
            algebra,
            triple,
            metric,
            phi: file.phi,
            metadata: file.metadata,
            lie,
            validation,
            expect,
            hermitian,
        })
    }

    /// Compatibility is checked whenever a metric or Ω is given, even when
    /// the metric sections end up disabled.
    fn hermitian_from(
        alg: &LieAlgebraData,
        triple: &HypercomplexTriple,
        metric: Option<&ExactMatrix>,
        phi: Option<&InvariantForm>,
    ) -> Result<Option<Hyperhermitian>, SceneError> {
        let frame = AdaptedFrame::new(alg, triple).map_err(|e| SceneError::Shape(e.to_string()))?;
        let from_phi = match phi {
            Some(p) => {
                if p.dim() != alg.dim() {
                    return Err(SceneError::Shape(format!("phi has dimension {}", p.dim())));
                }
                let omega = frame.to_frame(p);
                Some(
                    Hyperhermitian::from_qform_in_frame(alg, frame.clone(), &omega)
                        .map_err(SceneError::Compatibility)?,
                )
            }
            None => None,
        };
        let from_metric = match metric {
            Some(g) => Some(Hyperhermitian::from_metric_in_frame(alg, frame, g).map_err(SceneError::Compatibility)?),
            None => None,
        };
        match (from_phi, from_metric) {
            (Some(a), Some(b)) => {
                if a.metric() != b.metric() {
                    return Err(SceneError::Compatibility(HermitianError::Consistency(
                        "phi and metric describe different metrics".into(),
                    )));
                }
                Ok(Some(b))
            }
            (a, b) => Ok(b.or(a)),
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn integrable(&self) -> bool {
        self.validation.integrable()
    }

    pub fn abelian(&self) -> bool {
        self.validation.abelian
    }

    /// The first reason metric sections are unavailable, if any.
    pub fn limitation(&self) -> Option<Limitation> {
        if !self.integrable() {
            let f = &self.validation.nijenhuis_failures[0];
            return Some(Limitation::NotIntegrable(format!("N_{}(e{}, e{}) ≠ 0", f.which, f.pair.0, f.pair.1)));
        }
        if !self.lie.unimodular {
            return Some(Limitation::NotUnimodular);
        }
        if self.hermitian.is_none() {
            return Some(Limitation::NoMetric);
        }
        None
    }

    /// The hyperhermitian structure, when metric sections are enabled.
    pub fn hermitian(&self) -> Option<&Hyperhermitian> {
        match self.limitation() {
            None => self.hermitian.as_ref(),
            Some(_) => None,
        }
    }

    pub fn flag(&self, key: &str) -> Option<&serde_json::Value> {
        self.metadata.get(key)
    }
}
