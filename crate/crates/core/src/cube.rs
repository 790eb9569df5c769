//! The Hamming cube ℤ₂ⁿ: coefficients of `Q_n(e₀)` for the orthogonal
//! projection `Q_n` onto the cut space, from closed forms and a three-term
//! recurrence, and the norms they determine.
//!
//! Vertices are bit vectors with coordinate 1 in the lowest bit; `e₀` runs
//! from `(0,…,0)` to `(1,0,…,0)`. Writing `|v|` for the number of ones,
//! `a_k` is the coefficient on edges `w_k -> w_{k+1}` with first coordinate
//! 1, `b_k` on edges `v_k -> w_{k+1}` parallel to coordinate 1, and `c_k` on
//! edges `v_k -> v_{k+1}` with first coordinate 0, indexed by `|tail|`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{hamming_graph, Family};
use crate::invariant::{complement_norm, EdgeSpaces};
use crate::rational::Rational;
use crate::transport::{bounds_from_norms, TransportBounds};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeCoefficients {
    pub n: usize,
    /// `a[k - 1] = a_k` for `1 ≤ k ≤ n - 1`.
    pub a: Vec<Rational>,
    /// `b[k] = b_k` for `0 ≤ k ≤ n - 1`.
    pub b: Vec<Rational>,
    /// `c[k] = c_k` for `0 ≤ k ≤ n - 2`.
    pub c: Vec<Rational>,
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::UnsupportedParameter(format!("cube coefficients need n >= 3, got {n}")));
    }
    Ok(())
}

fn int(k: usize) -> Rational {
    Rational::from_integer(k as i64)
}

fn pow2(k: usize) -> Rational {
    Rational::from_bigint(BigInt::from(1u8) << k)
}

/// `C(n, k)` for `k = 0..=n`.
fn binomials(n: usize) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for k in 1..=n {
        let next = &row[k - 1] * &int(n + 1 - k) / int(k);
        row.push(next);
    }
    row
}

pub fn cube_coefficients(n: usize) -> Result<CubeCoefficients> {
    check_n(n)?;
    let nr = int(n);
    let b0 = Rational::from_integer(2) / &nr - (&nr * pow2(n - 1)).recip();
    let c0 = (Rational::one() - &b0) / int(n - 1);
    let mut b = vec![b0.clone(), &b0 - Rational::from_integer(2) * &c0];
    for k in 2..n {
        let next = (int(n + 1) * &b[k - 1] - int(k - 1) * &b[k - 2]) / int(n - k);
        b.push(next);
    }
    let a: Vec<Rational> = (1..n).map(|k| (&b[k] - &b[k - 1]) / Rational::from_integer(2)).collect();
    let c: Vec<Rational> = a.iter().map(|x| -x).collect();
    Ok(CubeCoefficients { n, a, b, c })
}

impl CubeCoefficients {
    pub fn a(&self, k: usize) -> &Rational {
        &self.a[k - 1]
    }

    pub fn b(&self, k: usize) -> &Rational {
        &self.b[k]
    }

    pub fn c(&self, k: usize) -> &Rational {
        &self.c[k]
    }

    /// `F(n) = Σ C(n-1,k) b_k`
    pub fn f_sum(&self) -> Rational {
        binomials(self.n - 1)
            .iter()
            .zip(&self.b)
            .fold(Rational::zero(), |acc, (binom, b)| acc + binom * b)
    }

    /// `G(n) = Σ (n-1-k) C(n-1,k) c_k`
    pub fn g_sum(&self) -> Rational {
        binomials(self.n - 1)
            .iter()
            .zip(&self.c)
            .enumerate()
            .fold(Rational::zero(), |acc, (k, (binom, c))| acc + int(self.n - 1 - k) * binom * c)
    }

    /// Verifies the structural relations between the coefficients.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n;
        let fail = |what: String| Err(Error::IdentityViolation(what));
        for k in 1..n {
            if *self.a(k) != -self.c(k - 1) {
                return fail(format!("a_{k} != -c_{}", k - 1));
            }
            if *self.a(k) != (self.b(k) - self.b(k - 1)) / Rational::from_integer(2) {
                return fail(format!("a_{k} != (b_{k} - b_{}) / 2", k - 1));
            }
            if !self.a(k).is_negative() {
                return fail(format!("a_{k} is not negative"));
            }
        }
        for k in 2..n {
            let lhs = int(n - k) * self.a(k) - int(k - 1) * self.a(k - 1) - self.b(k - 1);
            if !lhs.is_zero() {
                return fail(format!("cut relation at w_{k} fails"));
            }
        }
        if self.b.iter().any(|x| !x.is_positive()) {
            return fail("b_k not all positive".into());
        }
        if self.b.windows(2).any(|w| w[1] >= w[0]) {
            return fail("b_k not strictly decreasing".into());
        }
        if *self.b(n - 2) != int(n + 1) / int(n - 1) * self.b(n - 1) {
            return fail("b_{n-2} != (n+1)/(n-1) b_{n-1}".into());
        }
        if self.b(0) + int(n - 1) * self.c(0) != Rational::one() {
            return fail("b_0 + (n-1) c_0 != 1".into());
        }
        Ok(())
    }
}

/// `‖Q_n‖₁ = F(n) + 2G(n)`, checked against `F(n) = 1`, `G(n) = (n-1)/4`
/// and `(n+1)/2`.
pub fn q_norm(n: usize) -> Result<Rational> {
    let coeffs = cube_coefficients(n)?;
    coeffs.check_invariants()?;
    let f = coeffs.f_sum();
    if !f.is_one() {
        return Err(Error::IdentityViolation(format!("F({n}) = {f}, expected 1")));
    }
    let g = coeffs.g_sum();
    if g != int(n - 1) / int(4) {
        return Err(Error::IdentityViolation(format!("G({n}) = {g}, expected {}", int(n - 1) / int(4))));
    }
    let q = f + Rational::from_integer(2) * g;
    if q != int(n + 1) / int(2) {
        return Err(Error::IdentityViolation(format!("F + 2G = {q}, expected (n+1)/2")));
    }
    Ok(q)
}

/// `‖P_n‖₁ = (n+3)/2 - 4/n + 1/(n 2^{n-2})` for the orthogonal projection
/// onto the cycle space.
pub fn p_norm(n: usize) -> Result<Rational> {
    check_n(n)?;
    Ok(int(n + 3) / int(2) - int(4) / int(n) + (int(n) * pow2(n - 2)).recip())
}

/// Norms and derived constants for ℤ₂ⁿ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeReport {
    pub n: usize,
    pub q_norm: Rational,
    pub p_norm: Rational,
    pub b: Vec<Rational>,
    pub lambda_lip0: Rational,
    pub bm_bounds: (Rational, Rational),
    pub bounds: TransportBounds,
}

pub fn cube_report(n: usize) -> Result<CubeReport> {
    let q = q_norm(n)?;
    let p = p_norm(n)?;
    let coeffs = cube_coefficients(n)?;
    if p != &q + Rational::one() - Rational::from_integer(2) * coeffs.b(0) {
        return Err(Error::IdentityViolation("‖P_n‖₁ != ‖Q_n‖₁ + 1 - 2 b_0".into()));
    }
    let vertex_count = 1usize
        .checked_shl(n as u32)
        .ok_or_else(|| Error::UnsupportedParameter(format!("cube dimension {n} too large")))?;
    let bounds = bounds_from_norms(vertex_count, Family::Hamming { n: 2, m: n }, &p, &q, true);
    let lambda = bounds.lambda_lip0.clone().expect("edge-transitive");
    let upper = bounds.dbm_upper.clone().expect("cube upper bound");
    Ok(CubeReport {
        n,
        q_norm: q,
        p_norm: p,
        b: coeffs.b,
        bm_bounds: (bounds.dbm_lower.clone(), upper),
        lambda_lip0: lambda,
        bounds,
    })
}

/// Largest `n` accepted by [`cube_cross_check`].
pub const DENSE_CHECK_MAX: usize = 6;

/// Compares the recurrence path with the dense projection onto the cut space
/// of ℤ₂ⁿ: every coefficient, both norms, and
/// `Q_n(x_j) = 3/4 x_j + 1/4 (u_j + y_j - z_j)` for `j = 2..n`.
pub fn cube_cross_check(n: usize) -> Result<bool> {
    if n > DENSE_CHECK_MAX {
        return Err(Error::UnsupportedParameter(format!(
            "dense cross-check needs n <= {DENSE_CHECK_MAX}, got {n}"
        )));
    }
    let coeffs = cube_coefficients(n)?;
    let g = hamming_graph(2, n)?;
    let q = EdgeSpaces::new(&g, &Caps::default())?.p_b;
    let e0 = g.edge_between(0, 1).expect("e0 exists");
    let ones = |v: usize| v.count_ones() as usize;

    for (i, e) in g.edges().iter().enumerate() {
        let k = ones(e.tail);
        let expected = if (e.tail ^ e.head) == 1 {
            coeffs.b(k)
        } else if e.tail & 1 == 1 {
            coeffs.a(k)
        } else {
            coeffs.c(k)
        };
        if q[(i, e0)] != *expected {
            return Ok(false);
        }
    }
    if q.l1_norm() != q_norm(n)? || complement_norm(&q) != p_norm(n)? {
        return Ok(false);
    }

    let quarter = Rational::new(1, 4);
    for j in 1..n {
        let bit = 1 << j;
        let indicator = |keep: &dyn Fn(usize, usize) -> bool| -> Vec<Rational> {
            g.edges()
                .iter()
                .map(|e| if keep(e.tail, e.head) { Rational::one() } else { Rational::zero() })
                .collect()
        };
        let x = indicator(&|t, h| t ^ h == bit && t & 1 == 0);
        let u = indicator(&|t, h| t ^ h == bit && t & 1 == 1);
        let y = indicator(&|t, h| t ^ h == 1 && t & bit == 0);
        let z = indicator(&|t, h| t ^ h == 1 && t & bit != 0);
        let expected: Vec<Rational> = (0..g.edge_count())
            .map(|i| Rational::new(3, 4) * &x[i] + &quarter * (&u[i] + &y[i] - &z[i]))
            .collect();
        if q.mul_vec(&x) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
