//! Exact two-phase simplex over rationals with Bland's anti-cycling rule.

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Linear program over `num_vars` variables; variables are nonnegative
/// unless marked free.
#[derive(Debug, Clone)]
pub struct LpProblem {
    num_vars: usize,
    sense: Sense,
    objective: Vec<Rational>,
    free: Vec<bool>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
}

impl LpProblem {
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        LpProblem {
            num_vars,
            sense,
            objective: vec![Rational::zero(); num_vars],
            free: vec![false; num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn set_objective(&mut self, var: usize, coeff: Rational) {
        self.objective[var] = coeff;
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        debug_assert!(coeffs.iter().all(|(v, _)| *v < self.num_vars));
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> Result<LpSolution> {
        // Column layout: one column per nonnegative variable, two per free
        // variable, then slack/surplus columns, then artificial columns.
        let mut col_of = Vec::with_capacity(self.num_vars);
        let mut ncols = 0;
        for &f in &self.free {
            col_of.push(ncols);
            ncols += if f { 2 } else { 1 };
        }
        let structural = ncols;
        let m = self.constraints.len();

        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut relations = Vec::with_capacity(m);
        for con in &self.constraints {
            let mut row = vec![Rational::zero(); structural];
            for (v, a) in &con.coeffs {
                row[col_of[*v]] += a;
                if self.free[*v] {
                    row[col_of[*v] + 1] -= a;
                }
            }
            let mut rhs = con.rhs.clone();
            let mut rel = con.relation;
            if rhs.is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
                rhs = -rhs;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            row.push(rhs);
            rows.push(row);
            relations.push(rel);
        }

        let slack_count = relations.iter().filter(|r| **r != Relation::Eq).count();
        let art_count = relations.iter().filter(|r| **r != Relation::Le).count();
        let total = structural + slack_count + art_count;
        let first_art = structural + slack_count;
        let mut basis = vec![0; m];
        let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let (mut s, mut a) = (structural, first_art);
        for (i, (row, rel)) in rows.into_iter().zip(&relations).enumerate() {
            let rhs = row[structural].clone();
            let mut full = row;
            full.truncate(structural);
            full.resize(total + 1, Rational::zero());
            full[total] = rhs;
            match rel {
                Relation::Le => {
                    full[s] = Rational::one();
                    basis[i] = s;
                    s += 1;
                }
                Relation::Ge => {
                    full[s] = -Rational::one();
                    s += 1;
                    full[a] = Rational::one();
                    basis[i] = a;
                    a += 1;
                }
                Relation::Eq => {
                    full[a] = Rational::one();
                    basis[i] = a;
                    a += 1;
                }
            }
            tableau.push(full);
        }

        let mut t = Tableau {
            rows: tableau,
            obj: Vec::new(),
            basis,
            width: total,
        };

        if art_count > 0 {
            let mut cost = vec![Rational::zero(); total];
            for c in cost.iter_mut().skip(first_art) {
                *c = Rational::one();
            }
            t.set_objective(&cost);
            let allowed = vec![true; total];
            t.run(&allowed)?;
            if !t.obj[total].is_zero() {
                return Err(Error::Infeasible);
            }
            t.drive_out_artificials(first_art);
        }

        let mut cost = vec![Rational::zero(); total];
        for (v, c) in self.objective.iter().enumerate() {
            let c = match self.sense {
                Sense::Minimize => c.clone(),
                Sense::Maximize => -c,
            };
            cost[col_of[v]] = c.clone();
            if self.free[v] {
                cost[col_of[v] + 1] = -c;
            }
        }
        t.set_objective(&cost);
        let allowed: Vec<bool> = (0..total).map(|j| j < first_art).collect();
        t.run(&allowed)?;

        let mut values = vec![Rational::zero(); total];
        for (i, &b) in t.basis.iter().enumerate() {
            values[b] = t.rows[i][total].clone();
        }
        let x: Vec<Rational> = (0..self.num_vars)
            .map(|v| {
                let c = col_of[v];
                if self.free[v] {
                    &values[c] - &values[c + 1]
                } else {
                    values[c].clone()
                }
            })
            .collect();
        let value: Rational = self
            .objective
            .iter()
            .zip(&x)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum();
        Ok(LpSolution { value, x })
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs followed by the negated objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn set_objective(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(&self.rows[i]) {
                if !x.is_zero() {
                    *o -= cb * x;
                }
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if !inv.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Minimizes the current objective, entering only allowed columns.
    fn run(&mut self, allowed: &[bool]) -> Result<()> {
        let w = self.width;
        loop {
            let Some(enter) = (0..w).find(|&j| allowed[j] && self.obj[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[enter];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((leave, _)) = best else {
                return Err(Error::Unbounded);
            };
            self.pivot(leave, enter);
        }
    }

    /// After a feasible phase one, pivots artificial columns out of the
    /// basis, dropping rows that turn out redundant.
    fn drive_out_artificials(&mut self, first_art: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= first_art {
                match (0..first_art).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    #[test]
    fn small_maximization() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
        let mut lp = LpProblem::new(2, Sense::Maximize);
        lp.set_objective(0, q(3, 1));
        lp.set_objective(1, q(2, 1));
        lp.add_constraint(vec![(0, q(1, 1)), (1, q(1, 1))], Relation::Le, q(4, 1));
        lp.add_constraint(vec![(0, q(1, 1)), (1, q(3, 1))], Relation::Le, q(6, 1));
        lp.add_constraint(vec![(0, q(1, 1))], Relation::Le, q(3, 1));
        let s = lp.solve().unwrap();
        assert_eq!(s.value, q(11, 1));
        assert_eq!(s.x, vec![q(3, 1), q(1, 1)]);
    }

    #[test]
    fn free_variable_and_equality() {
        // min |x - 1/3| written as min t, t >= x - 1/3, t >= 1/3 - x, with x = -2/3 fixed
        let mut lp = LpProblem::new(2, Sense::Minimize);
        lp.set_free(0);
        lp.set_objective(1, q(1, 1));
        lp.add_constraint(vec![(1, q(1, 1)), (0, q(-1, 1))], Relation::Ge, q(-1, 3));
        lp.add_constraint(vec![(1, q(1, 1)), (0, q(1, 1))], Relation::Ge, q(1, 3));
        lp.add_constraint(vec![(0, q(1, 1))], Relation::Eq, q(-2, 3));
        let s = lp.solve().unwrap();
        assert_eq!(s.value, q(1, 1));
        assert_eq!(s.x[0], q(-2, 3));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LpProblem::new(1, Sense::Minimize);
        lp.add_constraint(vec![(0, q(1, 1))], Relation::Le, q(-1, 1));
        assert_eq!(lp.solve(), Err(Error::Infeasible));

        let mut lp = LpProblem::new(1, Sense::Maximize);
        lp.set_objective(0, q(1, 1));
        lp.add_constraint(vec![(0, q(1, 1))], Relation::Ge, q(1, 1));
        assert_eq!(lp.solve(), Err(Error::Unbounded));
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let mut lp = LpProblem::new(2, Sense::Minimize);
        lp.set_objective(0, q(1, 1));
        lp.set_objective(1, q(2, 1));
        lp.add_constraint(vec![(0, q(1, 1)), (1, q(1, 1))], Relation::Eq, q(2, 1));
        lp.add_constraint(vec![(0, q(2, 1)), (1, q(2, 1))], Relation::Eq, q(4, 1));
        let s = lp.solve().unwrap();
        assert_eq!(s.value, q(2, 1));
    }

    proptest! {
        // Weak duality made tight: min c.x, Ax >= b, x >= 0 against
        // max b.y, A^T y <= c, y >= 0.
        #[test]
        fn strong_duality(a in proptest::collection::vec(0i64..=4, 6),
                          b in proptest::collection::vec(1i64..=5, 2),
                          c in proptest::collection::vec(1i64..=5, 3)) {
            let mut primal = LpProblem::new(3, Sense::Minimize);
            for (j, cj) in c.iter().enumerate() {
                primal.set_objective(j, q(*cj, 1));
            }
            for i in 0..2 {
                primal.add_constraint((0..3).map(|j| (j, q(a[i * 3 + j], 1))).collect(), Relation::Ge, q(b[i], 1));
            }
            let mut dual = LpProblem::new(2, Sense::Maximize);
            for (i, bi) in b.iter().enumerate() {
                dual.set_objective(i, q(*bi, 1));
            }
            for j in 0..3 {
                dual.add_constraint((0..2).map(|i| (i, q(a[i * 3 + j], 1))).collect(), Relation::Le, q(c[j], 1));
            }
            match (primal.solve(), dual.solve()) {
                (Ok(p), Ok(d)) => prop_assert_eq!(p.value, d.value),
                (Err(Error::Infeasible), Err(Error::Unbounded)) => {}
                other => prop_assert!(false, "unexpected pair {:?}", other),
            }
        }
    }
}
