use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::rational::Rational;

use super::{Family, OrientedGraph};

/// Mixed-radix digits of `v` in base `n`, least significant first.
pub fn torus_coords(v: usize, n: usize, m: usize) -> Vec<usize> {
    let mut c = Vec::with_capacity(m);
    let mut x = v;
    for _ in 0..m {
        c.push(x % n);
        x /= n;
    }
    c
}

/// Inverse of [`torus_coords`]; coordinates are reduced mod `n`.
pub fn torus_index(coords: &[usize], n: usize) -> usize {
    coords.iter().rev().fold(0, |acc, &c| acc * n + c % n)
}

fn checked_power(n: usize, m: usize, limit: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..m {
        total = total.saturating_mul(n);
    }
    Caps::check("vertex count", total, limit)?;
    Ok(total)
}

fn coord_label(c: &[usize]) -> String {
    let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// The discrete torus ℤₙᵐ with edges `v -> v + e_k`.
///
/// `n = 2, m = 2` yields the 4-cycle with edges oriented toward the larger
/// coordinate; `n = 2, m > 2` is rejected.
pub fn torus_graph(n: usize, m: usize) -> Result<OrientedGraph> {
    torus_graph_capped(n, m, &Caps::default())
}

pub fn torus_graph_capped(n: usize, m: usize, caps: &Caps) -> Result<OrientedGraph> {
    if n < 2 || m < 2 {
        return Err(Error::UnsupportedParameter(format!("torus needs n >= 2 and m >= 2, got n={n}, m={m}")));
    }
    if n == 2 && m > 2 {
        return Err(Error::UnsupportedParameter(format!(
            "torus with n = 2 is a simple graph only for m = 2, got m={m}"
        )));
    }
    let count = checked_power(n, m, caps.max_vertices)?;
    let mut stride = 1;
    let mut strides = Vec::with_capacity(m);
    for _ in 0..m {
        strides.push(stride);
        stride *= n;
    }
    let mut edges = Vec::with_capacity(m * count);
    let mut labels = Vec::with_capacity(count);
    for v in 0..count {
        let c = torus_coords(v, n, m);
        labels.push(coord_label(&c));
        for k in 0..m {
            if n == 2 && c[k] == 1 {
                continue;
            }
            let w = v - c[k] * strides[k] + ((c[k] + 1) % n) * strides[k];
            edges.push((v, w, Rational::one()));
        }
    }
    OrientedGraph::new(labels, edges, Family::Torus { n, m })
}

/// Hamming graph on words of length `m` over an `n`-letter alphabet.
/// Each edge points from the smaller to the larger symbol in the coordinate
/// where its endpoints differ.
pub fn hamming_graph(n: usize, m: usize) -> Result<OrientedGraph> {
    hamming_graph_capped(n, m, &Caps::default())
}

pub fn hamming_graph_capped(n: usize, m: usize, caps: &Caps) -> Result<OrientedGraph> {
    if n < 2 || m < 1 {
        return Err(Error::UnsupportedParameter(format!("hamming graph needs n >= 2 and m >= 1, got n={n}, m={m}")));
    }
    let count = checked_power(n, m, caps.max_vertices)?;
    let mut edges = Vec::new();
    let mut labels = Vec::with_capacity(count);
    for v in 0..count {
        let c = torus_coords(v, n, m);
        labels.push(c.iter().map(ToString::to_string).collect::<Vec<_>>().join(""));
        let mut stride = 1;
        for &ck in &c {
            for s in ck + 1..n {
                edges.push((v, v + (s - ck) * stride, Rational::one()));
            }
            stride *= n;
        }
    }
    OrientedGraph::new(labels, edges, Family::Hamming { n, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cut_basis, cycle_basis, incidence_matrix};

    #[test]
    fn torus_sizes() {
        let g = torus_graph(3, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 18));
        assert_eq!(incidence_matrix(&g).rank(), 8);
        let g = torus_graph(6, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (36, 72));
        assert_eq!(cycle_basis(&g).len(), 37);
        assert_eq!(cut_basis(&g).len(), 35);
        let g = torus_graph(3, 3).unwrap();
        assert_eq!(g.edge_count(), 81);
    }

    #[test]
    fn torus_two_is_the_four_cycle() {
        let g = torus_graph(2, 2).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
        assert!(matches!(torus_graph(2, 3), Err(Error::UnsupportedParameter(_))));
    }

    #[test]
    fn torus_edges_increment_one_coordinate() {
        let (n, m) = (5, 3);
        let g = torus_graph(n, m).unwrap();
        for (i, e) in g.edges().iter().enumerate() {
            let t = torus_coords(e.tail, n, m);
            let h = torus_coords(e.head, n, m);
            let k = i % m;
            for j in 0..m {
                let expected = if j == k { (t[j] + 1) % n } else { t[j] };
                assert_eq!(h[j], expected);
            }
        }
    }

    #[test]
    fn hamming_sizes() {
        let g = hamming_graph(2, 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
        // brute-force count of Hamming-distance-one pairs
        let (n, m) = (4, 2);
        let g = hamming_graph(n, m).unwrap();
        let mut pairs = 0;
        for u in 0..16 {
            for v in u + 1..16 {
                let (a, b) = (torus_coords(u, n, m), torus_coords(v, n, m));
                if a.iter().zip(&b).filter(|(x, y)| x != y).count() == 1 {
                    pairs += 1;
                }
            }
        }
        assert_eq!(g.edge_count(), pairs);
        assert_eq!(pairs, 48);
    }

    #[test]
    fn cube_edges_point_from_zero_to_one() {
        let g = hamming_graph(2, 4).unwrap();
        for e in g.edges() {
            assert_eq!(e.head - e.tail, (e.head ^ e.tail));
            assert!(e.tail < e.head);
        }
        assert_eq!((g.edge(0).tail, g.edge(0).head), (0, 1));
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps {
            max_vertices: 100,
            ..Caps::default()
        };
        assert!(matches!(
            hamming_graph_capped(5, 3, &caps),
            Err(Error::SizeCapExceeded { requested: 125, .. })
        ));
        assert!(matches!(hamming_graph(2, 20), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn family_graphs_are_stable() {
        assert_eq!(torus_graph(4, 2).unwrap(), torus_graph(4, 2).unwrap());
        assert_eq!(torus_index(&torus_coords(37, 5, 3), 5), 37);
    }
}
