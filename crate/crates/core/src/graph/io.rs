use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::{build_graph, MetricSpace, OrientedGraph};

/// `{"vertices": N, "edges": [[tail, head, "p/q"], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, Rational)>,
}

/// `{"points": N, "d": [["p/q", ...], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricFile {
    pub points: usize,
    pub d: Vec<Vec<Rational>>,
}

impl GraphFile {
    pub fn from_graph(g: &OrientedGraph) -> Self {
        GraphFile {
            vertices: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.tail, e.head, e.weight.clone()))
                .collect(),
        }
    }

    pub fn into_graph(self) -> Result<OrientedGraph> {
        build_graph(self.vertices, self.edges)
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl MetricFile {
    pub fn into_metric(self) -> Result<MetricSpace> {
        if self.d.len() != self.points {
            return Err(Error::InvalidMetric(format!(
                "{} rows for {} points",
                self.d.len(),
                self.points
            )));
        }
        MetricSpace::new(self.d)
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl OrientedGraph {
    pub fn from_json(json: &str) -> Result<OrientedGraph> {
        GraphFile::parse(json)?.into_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile::from_graph(self)).expect("graph serializes")
    }
}
