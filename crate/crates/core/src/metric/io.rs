//! JSON descriptions of metrics and bases.
//!
//! A metric is either the string `"identity"` or `{"dim": n, "gram": [[…]]}`
//! with the Gram matrix given row by row. A basis is
//! `{"dim": n, "vectors": [[…]]}` where each inner list is one basis vector
//! (a column of the basis matrix).

use serde::{Deserialize, Serialize};

use super::{Basis, EuclideanMetric};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricSpec {
    Named(String),
    Gram { dim: usize, gram: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub dim: usize,
    pub vectors: Vec<Vec<f64>>,
}

impl MetricSpec {
    pub fn parse(text: &str) -> Result<MetricSpec> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    /// Dimension stated by the description, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            MetricSpec::Named(_) => None,
            MetricSpec::Gram { dim, .. } => Some(*dim),
        }
    }

    /// Builds the metric. `dim` is required for `"identity"` and must agree
    /// with an explicit Gram matrix when both are given.
    pub fn build(&self, dim: Option<usize>) -> Result<EuclideanMetric> {
        match self {
            MetricSpec::Named(name) if name == "identity" => {
                let dim =
                    dim.ok_or_else(|| Error::Format("identity metric needs a dimension".into()))?;
                EuclideanMetric::identity(dim)
            }
            MetricSpec::Named(name) => Err(Error::Format(format!("unknown metric name {name:?}"))),
            MetricSpec::Gram { dim: stated, gram } => {
                if let Some(d) = dim {
                    if d != *stated {
                        return Err(Error::DimMismatch {
                            left: d,
                            right: *stated,
                        });
                    }
                }
                if gram.len() != *stated {
                    return Err(Error::NotSquare { dim: *stated });
                }
                EuclideanMetric::from_gram(gram)
            }
        }
    }
}

impl From<&EuclideanMetric> for MetricSpec {
    fn from(g: &EuclideanMetric) -> MetricSpec {
        let gram = g
            .gram()
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect();
        MetricSpec::Gram { dim: g.dim(), gram }
    }
}

impl BasisSpec {
    pub fn parse(text: &str) -> Result<BasisSpec> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn build(&self) -> Result<Basis> {
        if self.vectors.len() != self.dim {
            return Err(Error::NotSquare { dim: self.dim });
        }
        Basis::from_columns(&self.vectors)
    }
}
