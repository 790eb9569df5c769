use crate::error::{Error, Result};
use crate::graph::{torus_coords, torus_index, EdgeVector, Family, OrientedGraph};

/// One move of a word in ℤₙᵐ: add `shift` (mod n) to coordinate `coord`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub coord: usize,
    pub shift: i64,
}

impl Step {
    pub fn new(coord: usize, shift: i64) -> Self {
        Step { coord, shift }
    }
}

/// Signed indicator of the closed walk traced by `word` from `base` on a
/// torus or Hamming graph, whose vertices are ℤₙᵐ.
pub fn relator_cycle_vector(g: &OrientedGraph, base: usize, word: &[Step]) -> Result<EdgeVector> {
    let (n, m) = match g.family() {
        Family::Torus { n, m } | Family::Hamming { n, m } => (n, m),
        Family::Generic => {
            return Err(Error::UnsupportedParameter(
                "relator words need a torus or Hamming graph".into(),
            ))
        }
    };
    if base >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            index: base,
            count: g.vertex_count(),
        });
    }
    let mut walk = vec![base];
    let mut c = torus_coords(base, n, m);
    for s in word {
        if s.coord >= m {
            return Err(Error::NotClosed(format!("coordinate {} out of range", s.coord)));
        }
        c[s.coord] = (c[s.coord] as i64 + s.shift).rem_euclid(n as i64) as usize;
        walk.push(torus_index(&c, n));
    }
    g.walk_vector(&walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_basis, hamming_graph, incidence_matrix, torus_graph};
    use crate::linalg::span_rank;
    use crate::rational::Rational;

    fn square(i: usize, j: usize, n: usize) -> (usize, Vec<Step>) {
        (
            torus_index(&[i, j], n),
            vec![Step::new(0, 1), Step::new(1, 1), Step::new(0, -1), Step::new(1, -1)],
        )
    }

    #[test]
    fn small_square_and_row() {
        let n = 5;
        let g = torus_graph(n, 2).unwrap();
        let (b, w) = square(0, 0, n);
        let s = relator_cycle_vector(&g, b, &w).unwrap();
        // e^R_{0,0} + e^C_{1,0} - e^R_{0,1} - e^C_{0,0}
        let e = |i: usize, j: usize, k: usize| g.edge_between(torus_index(&[i, j], n), torus_index(&[i + (k == 0) as usize, j + (k == 1) as usize], n)).unwrap();
        let mut expected = g.zero_vector();
        expected[e(0, 0, 0)] = Rational::one();
        expected[e(1, 0, 1)] = Rational::one();
        expected[e(0, 1, 0)] = -Rational::one();
        expected[e(0, 0, 1)] = -Rational::one();
        assert_eq!(s, expected);

        let row = relator_cycle_vector(&g, 0, &vec![Step::new(0, 1); n]).unwrap();
        assert_eq!(row.iter().filter(|x| x.is_one()).count(), n);
        assert!(incidence_matrix(&g).mul_vec(&row).iter().all(Rational::is_zero));
    }

    #[test]
    fn squares_row_and_column_span_the_cycle_space() {
        for n in 3..=6 {
            let g = torus_graph(n, 2).unwrap();
            let mut vs = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let (b, w) = square(i, j, n);
                    vs.push(relator_cycle_vector(&g, b, &w).unwrap());
                }
            }
            vs.push(relator_cycle_vector(&g, 0, &vec![Step::new(0, 1); n]).unwrap());
            vs.push(relator_cycle_vector(&g, 0, &vec![Step::new(1, 1); n]).unwrap());
            assert_eq!(span_rank(&vs), n * n + 1);
            assert_eq!(cycle_basis(&g).len(), n * n + 1);
        }
    }

    #[test]
    fn hamming_squares_and_triangles_span() {
        let (n, m) = (3, 3);
        let g = hamming_graph(n, m).unwrap();
        let mut vs = Vec::new();
        for v in 0..g.vertex_count() {
            for a in 0..m {
                vs.push(relator_cycle_vector(&g, v, &[Step::new(a, 1), Step::new(a, 1), Step::new(a, 1)]).unwrap());
                for b in a + 1..m {
                    vs.push(
                        relator_cycle_vector(&g, v, &[Step::new(a, 1), Step::new(b, 1), Step::new(a, -1), Step::new(b, -1)])
                            .unwrap(),
                    );
                }
            }
        }
        assert_eq!(span_rank(&vs), g.cycle_rank());
    }

    #[test]
    fn open_walks_are_rejected() {
        let g = torus_graph(5, 2).unwrap();
        assert!(matches!(relator_cycle_vector(&g, 0, &[Step::new(0, 1)]), Err(Error::NotClosed(_))));
        assert!(matches!(relator_cycle_vector(&g, 0, &[Step::new(0, 2), Step::new(0, 3)]), Err(Error::NotClosed(_))));
    }
}
