use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::{complement_norm, minimize_l1, ProjectionFamily};

/// Norms of the orthogonal and minimal invariant projections and the
/// quantities they bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub dimension: usize,
    pub p_orth_norm: Rational,
    pub i_minus_p_orth: Rational,
    pub p_min_norm: Rational,
    pub i_minus_p_min: Rational,
    pub unique_minimizer: bool,
    pub params: Vec<Rational>,
    /// `‖P_min‖₁ - 1`, a lower bound for the projection constant of Lip₀.
    pub lambda_lower: Rational,
    /// `‖I - P_min‖₁`, the projection constant of Lip₀ when the group is
    /// edge-transitive.
    pub lambda_exact: Option<Rational>,
    /// Upper bound for the l1 distortion of the transportation cost space.
    pub c1_upper: Rational,
    pub dbm_lower: Rational,
    /// `⟨P(e₀), e₀⟩ = dim Z / |E|` for edge-transitive groups.
    pub trace_value: Option<Rational>,
}

pub fn projection_report(family: &ProjectionFamily) -> Result<ProjectionReport> {
    let p_orth_norm = family.p_orth().l1_norm();
    let i_minus_p_orth = complement_norm(family.p_orth());
    let min = minimize_l1(family)?;
    let i_minus_p_min = complement_norm(&min.p_min);
    let lambda_lower = &min.norm - Rational::one();
    let (lambda_exact, trace_value) = if family.edge_transitive() {
        let trace = Rational::new(family.cycle_dimension() as i64, family.edge_count() as i64);
        if min.p_min[(0, 0)] != trace {
            return Err(Error::IdentityViolation(format!(
                "diagonal entry {} differs from dim Z / |E| = {trace}",
                min.p_min[(0, 0)]
            )));
        }
        for p in [family.p_orth(), &min.p_min] {
            let expected = p.l1_norm() + Rational::one() - Rational::from_integer(2) * &trace;
            if complement_norm(p) != expected {
                return Err(Error::IdentityViolation(format!(
                    "‖I - P‖₁ = {} but ‖P‖₁ + 1 - 2 dim Z/|E| = {expected}",
                    complement_norm(p)
                )));
            }
        }
        (Some(i_minus_p_min.clone()), Some(trace))
    } else {
        (None, None)
    };
    let dbm_lower = match &lambda_exact {
        Some(l) => l.clone().max(lambda_lower.clone()),
        None => lambda_lower.clone(),
    };
    Ok(ProjectionReport {
        dimension: family.dimension(),
        p_orth_norm,
        i_minus_p_orth,
        p_min_norm: min.norm,
        c1_upper: i_minus_p_min.clone(),
        i_minus_p_min,
        unique_minimizer: min.unique,
        params: min.params,
        lambda_lower,
        lambda_exact,
        dbm_lower,
        trace_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::torus_graph;
    use crate::invariant::commutant_family;
    use crate::rational::q;
    use crate::symmetry::torus_generators;

    #[test]
    fn torus_four_report() {
        let g = torus_graph(4, 2).unwrap();
        let f = commutant_family(&g, &torus_generators(4, 2).unwrap()).unwrap();
        let r = projection_report(&f).unwrap();
        assert_eq!(r.p_orth_norm, q(41, 16));
        assert_eq!(r.i_minus_p_orth, q(5, 2));
        assert_eq!(r.dimension, 0);
        assert_eq!(r.trace_value, Some(q(17, 32)));
        assert_eq!(r.lambda_exact, Some(q(5, 2)));
    }
}
