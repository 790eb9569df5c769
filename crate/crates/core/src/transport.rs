//! Transportation cost norms, Wasserstein-1 distances and their Lipschitz
//! duals, all as exact linear programs on a weighted graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{divergence, EdgeVector, Family, OrientedGraph};
use crate::lp::{LpProblem, Relation, Sense};
use crate::rational::Rational;

/// Zero-sum vertex function; vertices missing from `values` carry 0.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TransportationProblem {
    pub values: BTreeMap<usize, Rational>,
}

impl TransportationProblem {
    pub fn new(values: BTreeMap<usize, Rational>) -> Result<Self> {
        let sum = values.values().fold(Rational::zero(), |acc, x| acc + x);
        if !sum.is_zero() {
            return Err(Error::UnbalancedProblem);
        }
        Ok(TransportationProblem { values })
    }

    pub fn from_dense(values: &[Rational]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(v, x)| (v, x.clone()))
                .collect(),
        )
    }

    /// `𝟙ᵤ - 𝟙ᵥ`
    pub fn point_pair(u: usize, v: usize) -> Self {
        let mut values = BTreeMap::new();
        if u != v {
            values.insert(u, Rational::one());
            values.insert(v, -Rational::one());
        }
        TransportationProblem { values }
    }

    pub fn parse(json: &str) -> Result<Self> {
        let raw: TransportationProblem = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(raw.values)
    }

    pub fn to_dense(&self, vertex_count: usize) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); vertex_count];
        for (&v, x) in &self.values {
            if v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    index: v,
                    count: vertex_count,
                });
            }
            out[v] += x;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Rational::is_zero)
    }
}

/// Flow `F` with `D F = f`, and its cost `Σ |F(e)| w(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportPlan {
    pub flow: EdgeVector,
    pub cost: Rational,
}

/// 1-Lipschitz potentials vanishing at vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LipschitzWitness {
    pub potentials: Vec<Rational>,
}

impl LipschitzWitness {
    /// `⟨f, g⟩`
    pub fn pairing(&self, f: &[Rational]) -> Rational {
        crate::linalg::dot(f, &self.potentials)
    }

    /// Whether `|g(u) - g(v)| ≤ w(uv)` on every edge and `g(0) = 0`.
    pub fn is_valid(&self, g: &OrientedGraph) -> bool {
        self.potentials.len() == g.vertex_count()
            && self.potentials[0].is_zero()
            && g
                .edges()
                .iter()
                .all(|e| (&self.potentials[e.head] - &self.potentials[e.tail]).abs() <= e.weight)
    }
}

/// `Σ |F(e)| w(e)`
pub fn flow_cost(g: &OrientedGraph, flow: &[Rational]) -> Rational {
    g.edges()
        .iter()
        .zip(flow)
        .fold(Rational::zero(), |acc, (e, x)| acc + x.abs() * &e.weight)
}

/// Transportation cost norm of `f` and an optimal flow, from
/// `min Σ w(e)(F⁺(e) + F⁻(e))` subject to `D(F⁺ - F⁻) = f`.
pub fn tc_norm(f: &TransportationProblem, g: &OrientedGraph) -> Result<(Rational, TransportPlan)> {
    let values = f.to_dense(g.vertex_count())?;
    let e = g.edge_count();
    if f.is_zero() {
        return Ok((
            Rational::zero(),
            TransportPlan {
                flow: g.zero_vector(),
                cost: Rational::zero(),
            },
        ));
    }
    let mut lp = LpProblem::new(2 * e, Sense::Minimize);
    for (i, edge) in g.edges().iter().enumerate() {
        lp.set_objective(i, edge.weight.clone());
        lp.set_objective(e + i, edge.weight.clone());
    }
    // the row of vertex 0 is implied by the others
    for v in 1..g.vertex_count() {
        let mut row = Vec::new();
        for &(_, i) in g.neighbors(v) {
            let s = if g.edge(i).head == v { Rational::one() } else { -Rational::one() };
            row.push((e + i, -&s));
            row.push((i, s));
        }
        lp.add_constraint(row, Relation::Eq, values[v].clone());
    }
    let sol = lp.solve()?;
    let flow: EdgeVector = (0..e).map(|i| &sol.x[i] - &sol.x[e + i]).collect();
    debug_assert_eq!(divergence(g, &flow), values);
    let cost = flow_cost(g, &flow);
    debug_assert_eq!(cost, sol.value);
    Ok((sol.value, TransportPlan { flow, cost }))
}

/// Optimal potentials of the dual program `max ⟨f, g⟩` over 1-Lipschitz `g`
/// with `g(0) = 0`.
pub fn dual_certificate(f: &TransportationProblem, g: &OrientedGraph) -> Result<LipschitzWitness> {
    let values = f.to_dense(g.vertex_count())?;
    let n = g.vertex_count();
    if f.is_zero() {
        return Ok(LipschitzWitness {
            potentials: vec![Rational::zero(); n],
        });
    }
    // variable v - 1 holds g(v) for v >= 1
    let var = |v: usize| (v > 0).then(|| v - 1);
    let mut lp = LpProblem::new(n - 1, Sense::Maximize);
    for v in 1..n {
        lp.set_free(v - 1);
        lp.set_objective(v - 1, values[v].clone());
    }
    for edge in g.edges() {
        let mut row = Vec::new();
        if let Some(h) = var(edge.head) {
            row.push((h, Rational::one()));
        }
        if let Some(t) = var(edge.tail) {
            row.push((t, -Rational::one()));
        }
        lp.add_constraint(row.clone(), Relation::Le, edge.weight.clone());
        lp.add_constraint(row, Relation::Ge, -&edge.weight);
    }
    let sol = lp.solve()?;
    let mut potentials = vec![Rational::zero()];
    potentials.extend(sol.x);
    Ok(LipschitzWitness { potentials })
}

fn check_probability(p: &[Rational], n: usize, name: &str) -> Result<()> {
    if p.len() != n {
        return Err(Error::NotProbability(format!("{name} has {} entries for {n} vertices", p.len())));
    }
    if let Some(x) = p.iter().find(|x| x.is_negative()) {
        return Err(Error::NotProbability(format!("{name} has negative entry {x}")));
    }
    let sum = p.iter().fold(Rational::zero(), |acc, x| acc + x);
    if !sum.is_one() {
        return Err(Error::NotProbability(format!("{name} sums to {sum}")));
    }
    Ok(())
}

/// `d_W₁(μ, ν) = ‖μ - ν‖_tc`
pub fn wasserstein1(mu: &[Rational], nu: &[Rational], g: &OrientedGraph) -> Result<Rational> {
    let n = g.vertex_count();
    check_probability(mu, n, "mu")?;
    check_probability(nu, n, "nu")?;
    let diff: Vec<Rational> = mu.iter().zip(nu).map(|(a, b)| a - b).collect();
    Ok(tc_norm(&TransportationProblem::from_dense(&diff)?, g)?.0)
}

/// Consequences of a minimal projection onto the cycle space for the
/// transportation cost space `tc(G)` of dimension `N = |V| - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportBounds {
    pub dimension: usize,
    /// Upper bound for the L1 distortion of `tc(G)`.
    pub c1_tc_upper: Rational,
    /// Upper bound for the L1 distortion of the Wasserstein space; rests on
    /// `c₁(P(G), d_W₁) = c₁(tc(G))`, which is not checked here.
    pub c1_wasserstein_upper: Rational,
    pub lambda_lip0_lower: Rational,
    /// `‖I - P_min‖₁` when the group acts edge-transitively.
    pub lambda_lip0: Option<Rational>,
    pub dbm_lower: Rational,
    /// `2n` for the cube `ℤ₂ⁿ`.
    pub dbm_upper: Option<Rational>,
}

pub fn bounds_from_projection(
    g: &OrientedGraph,
    p_min_norm: &Rational,
    i_minus_p_min_norm: &Rational,
    edge_transitive: bool,
) -> TransportBounds {
    bounds_from_norms(g.vertex_count(), g.family(), p_min_norm, i_minus_p_min_norm, edge_transitive)
}

pub(crate) fn bounds_from_norms(
    vertex_count: usize,
    family: Family,
    p_min_norm: &Rational,
    i_minus_p_min_norm: &Rational,
    edge_transitive: bool,
) -> TransportBounds {
    let lambda_lower = p_min_norm - Rational::one();
    let lambda = edge_transitive.then(|| i_minus_p_min_norm.clone());
    let dbm_lower = match &lambda {
        Some(l) => l.clone().max(lambda_lower.clone()),
        None => lambda_lower.clone(),
    };
    let dbm_upper = match family {
        Family::Hamming { n: 2, m } => Some(Rational::from_integer(2 * m as i64)),
        _ => None,
    };
    TransportBounds {
        dimension: vertex_count - 1,
        c1_tc_upper: i_minus_p_min_norm.clone(),
        c1_wasserstein_upper: i_minus_p_min_norm.clone(),
        lambda_lip0_lower: lambda_lower,
        lambda_lip0: lambda,
        dbm_lower,
        dbm_upper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, hamming_graph, shortest_path_distances, torus_graph};
    use crate::rational::q;

    fn c4() -> OrientedGraph {
        torus_graph(2, 2).unwrap()
    }

    #[test]
    fn adjacent_vertices_cost_one() {
        let g = c4();
        let (norm, plan) = tc_norm(&TransportationProblem::point_pair(0, 1), &g).unwrap();
        assert_eq!(norm, q(1, 1));
        assert_eq!(plan.cost, norm);
    }

    #[test]
    fn opposite_corners_of_a_square() {
        let g = c4();
        let (norm, plan) = tc_norm(&TransportationProblem::point_pair(0, 3), &g).unwrap();
        assert_eq!(norm, q(2, 1));
        assert_eq!(divergence(&g, &plan.flow), TransportationProblem::point_pair(0, 3).to_dense(4).unwrap());
        let w = dual_certificate(&TransportationProblem::point_pair(0, 3), &g).unwrap();
        assert!(w.is_valid(&g));
        assert_eq!(w.pairing(&TransportationProblem::point_pair(0, 3).to_dense(4).unwrap()), q(2, 1));
    }

    #[test]
    fn zero_problem_skips_the_solver() {
        let g = c4();
        let (norm, plan) = tc_norm(&TransportationProblem::default(), &g).unwrap();
        assert!(norm.is_zero());
        assert_eq!(plan.flow, g.zero_vector());
        assert!(dual_certificate(&TransportationProblem::default(), &g)
            .unwrap()
            .potentials
            .iter()
            .all(Rational::is_zero));
    }

    #[test]
    fn unbalanced_and_out_of_range() {
        let mut values = BTreeMap::new();
        values.insert(0, q(1, 2));
        assert_eq!(TransportationProblem::new(values), Err(Error::UnbalancedProblem));
        assert!(TransportationProblem::parse(r#"{"values": {"0": "1", "1": "-1/2"}}"#).is_err());
        let far = TransportationProblem::point_pair(0, 9);
        assert!(matches!(tc_norm(&far, &c4()), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn parses_problem_files() {
        let f = TransportationProblem::parse(r#"{"values": {"0": "1/2", "3": "-1/2"}}"#).unwrap();
        assert_eq!(tc_norm(&f, &c4()).unwrap().0, q(1, 1));
    }

    #[test]
    fn wasserstein_examples() {
        let g = c4();
        let uniform = vec![q(1, 4); 4];
        let delta0 = vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)];
        assert_eq!(wasserstein1(&uniform, &delta0, &g).unwrap(), q(1, 1));
        assert!(wasserstein1(&uniform, &uniform, &g).unwrap().is_zero());
        let bad = vec![q(1, 2), q(1, 2), q(1, 2), q(-1, 2)];
        assert!(matches!(wasserstein1(&bad, &delta0, &g), Err(Error::NotProbability(_))));
        assert!(matches!(wasserstein1(&uniform[..3], &delta0, &g), Err(Error::NotProbability(_))));
    }

    #[test]
    fn weighted_point_pairs_match_shortest_paths() {
        let g = build_graph(
            4,
            vec![(0, 1, q(1, 2)), (1, 2, q(3, 1)), (2, 3, q(1, 3)), (3, 0, q(5, 4)), (0, 2, q(2, 1))],
        )
        .unwrap();
        let d = shortest_path_distances(&g);
        for u in 0..4 {
            for v in 0..4 {
                let f = TransportationProblem::point_pair(u, v);
                assert_eq!(tc_norm(&f, &g).unwrap().0, d[u][v]);
                assert_eq!(dual_certificate(&f, &g).unwrap().pairing(&f.to_dense(4).unwrap()), d[u][v]);
            }
        }
    }

    #[test]
    fn bounds_for_the_cube() {
        let g = hamming_graph(2, 5).unwrap();
        let b = bounds_from_projection(&g, &q(129, 40), &q(3, 1), true);
        assert_eq!(b.dbm_lower, q(3, 1));
        assert_eq!(b.dbm_upper, Some(q(10, 1)));
        assert_eq!(b.dimension, 31);
    }

    #[test]
    fn bounds_for_the_six_torus() {
        let g = torus_graph(6, 2).unwrap();
        let b = bounds_from_projection(&g, &q(109, 36), &q(3, 1), true);
        assert_eq!(b.c1_tc_upper, q(3, 1));
        assert_eq!(b.lambda_lip0, Some(q(3, 1)));
        assert_eq!(b.lambda_lip0_lower, q(73, 36));
        assert_eq!(b.dbm_lower, q(3, 1));
        assert_eq!(b.dbm_upper, None);
    }
}
