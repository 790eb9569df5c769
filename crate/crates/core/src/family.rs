//! Named graph families with their structured symmetry groups, and the
//! uniqueness verdict for invariant projections on them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{hamming_graph_capped, torus_graph_capped, OrientedGraph};
use crate::invariant::commutant_dimension;
use crate::symmetry::{hamming_generators_capped, torus_generators_capped, GroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFamily {
    /// ℤₙᵐ
    Torus,
    /// Aₙᵐ
    Hamming,
    /// ℤ₂ⁿ; the second parameter is ignored.
    Cube,
}

impl GraphFamily {
    pub const ALL: [GraphFamily; 3] = [GraphFamily::Torus, GraphFamily::Hamming, GraphFamily::Cube];

    pub fn name(self) -> &'static str {
        match self {
            GraphFamily::Torus => "torus",
            GraphFamily::Hamming => "hamming",
            GraphFamily::Cube => "cube",
        }
    }

    pub fn build(self, n: usize, m: usize, caps: &Caps) -> Result<(OrientedGraph, GroupSpec)> {
        match self {
            GraphFamily::Torus => Ok((torus_graph_capped(n, m, caps)?, torus_generators_capped(n, m, caps)?)),
            GraphFamily::Hamming => Ok((hamming_graph_capped(n, m, caps)?, hamming_generators_capped(n, m, caps)?)),
            GraphFamily::Cube => Ok((hamming_graph_capped(2, n, caps)?, hamming_generators_capped(2, n, caps)?)),
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}; expected torus, hamming or cube")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub family: GraphFamily,
    pub n: usize,
    pub m: usize,
    pub vertices: usize,
    pub edges: usize,
    pub commutant_dimension: usize,
    pub strategy: &'static str,
    /// True iff the orthogonal projection is the only invariant projection.
    pub unique: bool,
}

pub fn uniqueness(family: GraphFamily, n: usize, m: usize, strategy: &str, caps: &Caps) -> Result<UniquenessReport> {
    let (g, group) = family.build(n, m, caps)?;
    let (dimension, chosen) = commutant_dimension(&g, &group, strategy, caps)?;
    Ok(UniquenessReport {
        family,
        n,
        m: if family == GraphFamily::Cube { n } else { m },
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        commutant_dimension: dimension,
        strategy: chosen,
        unique: dimension == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::AUTO;

    #[test]
    fn parse_names() {
        for f in GraphFamily::ALL {
            assert_eq!(f.name().parse::<GraphFamily>().unwrap(), f);
        }
        assert!("klein".parse::<GraphFamily>().is_err());
    }

    #[test]
    fn verdicts() {
        let caps = Caps::default();
        assert!(uniqueness(GraphFamily::Hamming, 3, 2, AUTO, &caps).unwrap().unique);
        assert!(uniqueness(GraphFamily::Torus, 4, 2, AUTO, &caps).unwrap().unique);
        let r = uniqueness(GraphFamily::Torus, 5, 2, AUTO, &caps).unwrap();
        assert!(!r.unique);
        assert_eq!(r.commutant_dimension, 1);
        let cube = uniqueness(GraphFamily::Cube, 3, 0, AUTO, &caps).unwrap();
        assert_eq!((cube.vertices, cube.m), (8, 3));
        assert!(cube.unique);
    }
}
