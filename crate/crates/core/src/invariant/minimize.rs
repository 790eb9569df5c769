use serde::Serialize;

use crate::error::Result;
use crate::linalg::RatMatrix;
use crate::lp::{LpProblem, Relation, Sense};
use crate::rational::Rational;

use super::ProjectionFamily;

/// Minimal-norm member of a projection family.
#[derive(Debug, Clone, Serialize)]
pub struct Minimizer {
    pub params: Vec<Rational>,
    #[serde(skip)]
    pub p_min: RatMatrix,
    pub norm: Rational,
    /// Whether the optimal parameter set is a single point.
    pub unique: bool,
}

/// Exact minimization of `‖P_orth + Σ xᵢ Mᵢ‖₁` over the family.
///
/// Invariance makes columns within an edge orbit equal in norm, so only one
/// column per orbit enters the objective: minimize `s` subject to
/// `s ≥ Σ_e t(r,e)` for each representative `r` and `t(r,e) ≥ |P(x)[e,r]|`.
/// Uniqueness is decided by fixing the optimal value and minimizing and
/// maximizing each parameter.
pub fn minimize_l1(family: &ProjectionFamily) -> Result<Minimizer> {
    let d = family.dimension();
    if d == 0 {
        let p = family.p_orth().clone();
        return Ok(Minimizer {
            params: Vec::new(),
            norm: p.l1_norm(),
            p_min: p,
            unique: true,
        });
    }
    let reps: Vec<usize> = family.edge_orbits().iter().map(|o| o[0]).collect();
    let base = build(family, &reps);
    let optimum = base.lp.solve()?;
    let params: Vec<Rational> = optimum.x[..d].to_vec();
    let value = optimum.value.clone();

    let mut unique = true;
    for i in 0..d {
        let mut lo = base.lp.clone();
        lo.add_constraint(base.objective_row.clone(), Relation::Le, value.clone());
        let mut hi = lo.clone();
        clear_objective(&mut lo, &base);
        clear_objective(&mut hi, &base);
        lo.set_objective(i, Rational::one());
        hi.set_objective(i, -Rational::one());
        let min = lo.solve()?.x[i].clone();
        let max = hi.solve()?.x[i].clone();
        if min != max {
            unique = false;
            break;
        }
    }

    let p_min = family.member(&params)?;
    let norm = p_min.l1_norm();
    debug_assert_eq!(norm, value);
    Ok(Minimizer {
        params,
        p_min,
        norm,
        unique,
    })
}

struct Built {
    lp: LpProblem,
    /// Objective as a constraint row, for pinning the optimal value.
    objective_row: Vec<(usize, Rational)>,
    objective_vars: Vec<usize>,
}

fn clear_objective(lp: &mut LpProblem, built: &Built) {
    for &v in &built.objective_vars {
        lp.set_objective(v, Rational::zero());
    }
}

fn build(family: &ProjectionFamily, reps: &[usize]) -> Built {
    let d = family.dimension();
    let e = family.edge_count();
    let p = family.p_orth();
    let basis = family.basis();

    // entries (r, row) that can be nonzero for some parameter value
    let mut cells = Vec::new();
    for (k, &r) in reps.iter().enumerate() {
        for row in 0..e {
            if !p[(row, r)].is_zero() || basis.iter().any(|m| !m[(row, r)].is_zero()) {
                cells.push((k, row, r));
            }
        }
    }
    let epigraph = reps.len() > 1;
    let t0 = d;
    let s = d + cells.len();
    let nvars = if epigraph { s + 1 } else { s };
    let mut lp = LpProblem::new(nvars, Sense::Minimize);
    for i in 0..d {
        lp.set_free(i);
    }
    for (c, &(_, row, r)) in cells.iter().enumerate() {
        let t = t0 + c;
        let coeffs: Vec<(usize, Rational)> = basis
            .iter()
            .enumerate()
            .filter(|(_, m)| !m[(row, r)].is_zero())
            .map(|(i, m)| (i, m[(row, r)].clone()))
            .collect();
        // t - Σ x_i M_i ≥ P  and  t + Σ x_i M_i ≥ -P
        let mut upper = vec![(t, Rational::one())];
        upper.extend(coeffs.iter().map(|(i, a)| (*i, -a)));
        lp.add_constraint(upper, Relation::Ge, p[(row, r)].clone());
        let mut lower = vec![(t, Rational::one())];
        lower.extend(coeffs.iter().cloned());
        lp.add_constraint(lower, Relation::Ge, -&p[(row, r)]);
    }
    let (objective_row, objective_vars) = if epigraph {
        for k in 0..reps.len() {
            let mut row = vec![(s, Rational::one())];
            row.extend(
                cells
                    .iter()
                    .enumerate()
                    .filter(|(_, cell)| cell.0 == k)
                    .map(|(c, _)| (t0 + c, -Rational::one())),
            );
            lp.add_constraint(row, Relation::Ge, Rational::zero());
        }
        lp.set_objective(s, Rational::one());
        (vec![(s, Rational::one())], vec![s])
    } else {
        let vars: Vec<usize> = (t0..s).collect();
        for &v in &vars {
            lp.set_objective(v, Rational::one());
        }
        (vars.iter().map(|&v| (v, Rational::one())).collect(), vars)
    };
    Built {
        lp,
        objective_row,
        objective_vars,
    }
}
