//! Invariant projections onto the cycle space: the affine family of all of
//! them, group averaging, and exact l1 minimization over the family.

mod minimize;
mod report;
mod strategy;
mod torus;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{cut_basis, cycle_basis, spanning_tree, EdgeVector, OrientedGraph, SpanningTree};
use crate::linalg::{solve, RatMatrix};
use crate::rational::Rational;
use crate::symmetry::{GroupSpec, SignedEdgeMap};

pub use minimize::{minimize_l1, Minimizer};
pub use report::{projection_report, ProjectionReport};
pub use strategy::{
    CharacterStrategy, CommutantInput, CommutantSolution, CommutantStrategy, IntertwiningStrategy, OrbitalStrategy,
    StabilizerStrategy, StrategyRegistry, TorusClosedFormStrategy, AUTO,
};
pub use torus::torus_invariant_basis;

/// Dense description of the edge space split `ℓ₂(E) = Z ⊕ B`.
#[derive(Debug, Clone)]
pub struct EdgeSpaces {
    pub tree: SpanningTree,
    /// Fundamental cycles, one per chord of `tree`.
    pub cycles: Vec<EdgeVector>,
    /// Stars `X(v)` for `v = 1..|V|`.
    pub stars: Vec<EdgeVector>,
    /// `(XᵀX)⁻¹Xᵀ`: coordinates of `P_B x` in the star basis.
    pub cut_coords: RatMatrix,
    pub p_b: RatMatrix,
    pub p_orth: RatMatrix,
}

impl EdgeSpaces {
    pub fn new(g: &OrientedGraph, caps: &Caps) -> Result<Self> {
        Caps::check("edge count", g.edge_count(), caps.max_dense_edges)?;
        let tree = spanning_tree(g);
        let cycles = cycle_basis(g);
        let stars = cut_basis(g);
        let e = g.edge_count();
        let (cut_coords, p_b) = if stars.is_empty() {
            (RatMatrix::zeros(0, e), RatMatrix::zeros(e, e))
        } else {
            let xt = RatMatrix::from_rows(stars.clone());
            let x = xt.transpose();
            let lap = xt.mul(&x);
            let coords = solve(&lap, &xt)?;
            let p_b = x.mul(&coords);
            (coords, p_b)
        };
        let p_orth = RatMatrix::identity(e).sub(&p_b);
        Ok(EdgeSpaces {
            tree,
            cycles,
            stars,
            cut_coords,
            p_b,
            p_orth,
        })
    }

    /// Edge-space matrix of the map `B -> Z` sending `X(v)` to `images[v-1]`,
    /// extended by zero on `Z`.
    pub fn lift(&self, images: &[EdgeVector]) -> RatMatrix {
        let e = self.p_b.rows();
        if images.is_empty() {
            return RatMatrix::zeros(e, e);
        }
        RatMatrix::from_columns(images, e).mul(&self.cut_coords)
    }
}

/// `P_orth` together with a basis of lifted invariant maps `Mᵢ = Aᵢ P_B`;
/// every `P_orth + Σ xᵢ Mᵢ` is an invariant projection onto the cycle space.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionFamily {
    #[serde(skip)]
    p_orth: RatMatrix,
    #[serde(skip)]
    p_b: RatMatrix,
    #[serde(skip)]
    basis: Vec<RatMatrix>,
    dimension: usize,
    strategy: &'static str,
    edge_transitive: bool,
    #[serde(skip)]
    edge_orbits: Vec<Vec<usize>>,
    #[serde(skip)]
    generators: Vec<SignedEdgeMap>,
    cycle_dimension: usize,
}

impl ProjectionFamily {
    pub fn p_orth(&self) -> &RatMatrix {
        &self.p_orth
    }

    pub fn p_b(&self) -> &RatMatrix {
        &self.p_b
    }

    pub fn basis(&self) -> &[RatMatrix] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn strategy(&self) -> &'static str {
        self.strategy
    }

    pub fn edge_transitive(&self) -> bool {
        self.edge_transitive
    }

    pub fn edge_orbits(&self) -> &[Vec<usize>] {
        &self.edge_orbits
    }

    pub fn generators(&self) -> &[SignedEdgeMap] {
        &self.generators
    }

    pub fn edge_count(&self) -> usize {
        self.p_orth.rows()
    }

    pub fn cycle_dimension(&self) -> usize {
        self.cycle_dimension
    }

    /// `P_orth + Σ xᵢ Mᵢ`
    pub fn member(&self, x: &[Rational]) -> Result<RatMatrix> {
        if x.len() != self.basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} parameters for a family of dimension {}",
                x.len(),
                self.basis.len()
            )));
        }
        let mut p = self.p_orth.clone();
        for (xi, m) in x.iter().zip(&self.basis) {
            p.add_scaled(xi, m);
        }
        Ok(p)
    }
}

/// Family of invariant projections using the automatically chosen strategy
/// and default caps.
pub fn commutant_family(g: &OrientedGraph, group: &GroupSpec) -> Result<ProjectionFamily> {
    commutant_family_with(g, group, AUTO, &Caps::default())
}

pub fn commutant_family_with(g: &OrientedGraph, group: &GroupSpec, strategy: &str, caps: &Caps) -> Result<ProjectionFamily> {
    let registry = StrategyRegistry::standard();
    let input = CommutantInput::new(g, group, caps);
    let (chosen, solution) = registry.run(strategy, &input, true)?;
    let basis = solution.basis.expect("basis requested");
    let spaces = input.spaces()?;
    Ok(ProjectionFamily {
        p_orth: spaces.p_orth.clone(),
        p_b: spaces.p_b.clone(),
        dimension: basis.len(),
        basis,
        strategy: chosen,
        edge_transitive: group.edge_transitive(),
        edge_orbits: group.edge_orbits(g.edge_count()),
        generators: group.generators().to_vec(),
        cycle_dimension: g.cycle_rank(),
    })
}

/// Number of independent invariant maps `B -> Z`, without building a basis
/// when the strategy can avoid it.
pub fn commutant_dimension(g: &OrientedGraph, group: &GroupSpec, strategy: &str, caps: &Caps) -> Result<(usize, &'static str)> {
    let registry = StrategyRegistry::standard();
    let input = CommutantInput::new(g, group, caps);
    let (chosen, solution) = registry.run(strategy, &input, false)?;
    Ok((solution.dimension, chosen))
}

/// `(1/|Ω|) Σ ω⁻¹ P₀ ω` over the enumerated group. The global sign `-I`
/// leaves every conjugate unchanged and is not summed separately.
pub fn average_projection(p0: &RatMatrix, g: &OrientedGraph, group: &GroupSpec) -> Result<RatMatrix> {
    let maps = group.element_edge_maps(g)?;
    if p0.rows() != g.edge_count() || !p0.is_square() {
        return Err(Error::DimensionMismatch("projection size differs from edge count".into()));
    }
    let mut acc = RatMatrix::zeros(p0.rows(), p0.cols());
    for w in &maps {
        acc = acc.add(&w.conjugate(p0));
    }
    Ok(acc.scale(&Rational::new(1, maps.len() as i64)))
}

/// `‖I - P‖₁`
pub fn complement_norm(p: &RatMatrix) -> Rational {
    RatMatrix::identity(p.rows()).sub(p).l1_norm()
}
