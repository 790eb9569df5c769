use crate::error::{Error, Result};
use crate::graph::EdgeVector;
use crate::linalg::SparseEchelon;
use crate::rational::Rational;

/// Edge `(i,j) -> (i+1,j)` (axis 0) or `(i,j) -> (i,j+1)` (axis 1) of ℤₙ².
fn edge(n: usize, i: usize, j: usize, axis: usize) -> usize {
    2 * ((i % n) + n * (j % n)) + axis
}

/// Small square at `(i,j)`: `e^R(i,j) + e^C(i+1,j) - e^R(i,j+1) - e^C(i,j)`.
fn add_square(v: &mut [Rational], n: usize, i: usize, j: usize, coeff: i64) {
    let c = Rational::from_integer(coeff);
    v[edge(n, i, j, 0)] += &c;
    v[edge(n, i + 1, j, 1)] += &c;
    v[edge(n, i, j + 1, 0)] -= &c;
    v[edge(n, i, j, 1)] -= &c;
}

/// Cycle vectors of ℤₙ² fixed by the stabilizer of `(0,0)`: one
/// eight-square combination per orbit of admissible `(i,j)`, giving
/// `⌊n/2⌋(⌊n/2⌋-1)/2` vectors. Edge indices follow [`crate::graph::torus_graph`].
pub fn torus_invariant_basis(n: usize) -> Result<Vec<EdgeVector>> {
    if n < 5 {
        return Err(Error::UnsupportedParameter(format!("closed-form invariant vectors need n >= 5, got {n}")));
    }
    let e = 2 * n * n;
    let neg = |i: usize| (2 * n - i - 1) % n;
    let middle = (n % 2 == 1).then_some((n - 1) / 2);
    let mut echelon = SparseEchelon::new(e);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if j == i || j == neg(i) || middle.is_some_and(|k| i == k || j == k) {
                continue;
            }
            let mut v = vec![Rational::zero(); e];
            add_square(&mut v, n, i, j, 1);
            add_square(&mut v, n, neg(i), j, -1);
            add_square(&mut v, n, j, i, -1);
            add_square(&mut v, n, neg(j), i, 1);
            add_square(&mut v, n, i, neg(j), -1);
            add_square(&mut v, n, neg(i), neg(j), 1);
            add_square(&mut v, n, neg(j), neg(i), -1);
            add_square(&mut v, n, j, neg(i), 1);
            let sparse = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k, x.clone()))
                .collect();
            if echelon.insert(sparse) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Translate an edge vector of ℤₙ² by `(a,b)`.
fn translate(y: &[Rational], n: usize, a: usize, b: usize) -> EdgeVector {
    let mut out = vec![Rational::zero(); y.len()];
    for i in 0..n {
        for j in 0..n {
            for axis in 0..2 {
                let x = &y[edge(n, i, j, axis)];
                if !x.is_zero() {
                    out[edge(n, i + a, j + b, axis)] = x.clone();
                }
            }
        }
    }
    out
}

/// For each closed-form vector `Y`, the images `T_v(Y)` of the stars
/// `X(v)`, `v = 1..n²`.
pub(crate) fn closed_form_images(n: usize) -> Result<Vec<Vec<EdgeVector>>> {
    Ok(torus_invariant_basis(n)?
        .iter()
        .map(|y| {
            (1..n * n)
                .map(|v| translate(y, n, v % n, v / n))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{incidence_matrix, torus_graph, torus_index};

    #[test]
    fn dimensions() {
        for (n, d) in [(5, 1), (6, 3), (7, 3), (8, 6)] {
            assert_eq!(torus_invariant_basis(n).unwrap().len(), d, "n={n}");
        }
        assert!(torus_invariant_basis(4).is_err());
    }

    #[test]
    fn vectors_are_cycles_with_matching_edge_indices() {
        let n = 6;
        let g = torus_graph(n, 2).unwrap();
        for (i, j) in [(0, 0), (2, 5)] {
            let t = g.edge(edge(n, i, j, 0));
            assert_eq!((t.tail, t.head), (torus_index(&[i, j], n), torus_index(&[i + 1, j], n)));
            let t = g.edge(edge(n, i, j, 1));
            assert_eq!((t.tail, t.head), (torus_index(&[i, j], n), torus_index(&[i, j + 1], n)));
        }
        let d = incidence_matrix(&g);
        for v in torus_invariant_basis(n).unwrap() {
            assert!(d.mul_vec(&v).iter().all(Rational::is_zero));
        }
    }
}
