//! Graph automorphisms and their signed actions on edge vectors.

mod group;
mod relator;
mod search;

use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::linalg::RatMatrix;
use crate::rational::Rational;

pub use group::{closure, hamming_generators, torus_generators, GroupSpec};
pub(crate) use group::{hamming_generators_capped, torus_generators_capped};
pub use relator::{relator_cycle_vector, Step};
pub use search::find_automorphisms;

/// Vertex permutation `v -> perm[v]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphAutomorphism {
    perm: Vec<usize>,
}

impl GraphAutomorphism {
    pub fn identity(n: usize) -> Self {
        GraphAutomorphism { perm: (0..n).collect() }
    }

    /// Checks only that `perm` is a bijection; adjacency is checked by
    /// [`edge_action`].
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::NotAnAutomorphism);
            }
            seen[p] = true;
        }
        Ok(GraphAutomorphism { perm })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        GraphAutomorphism::new((0..n).map(f).collect())
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GraphAutomorphism) -> GraphAutomorphism {
        GraphAutomorphism {
            perm: other.perm.iter().map(|&v| self.perm[v]).collect(),
        }
    }

    pub fn inverse(&self) -> GraphAutomorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        GraphAutomorphism { perm: inv }
    }

    pub fn preserves(&self, g: &OrientedGraph) -> bool {
        self.perm.len() == g.vertex_count()
            && g.edges()
                .iter()
                .all(|e| g.edge_between(self.perm[e.tail], self.perm[e.head]).is_some())
    }
}

/// Signed permutation of edge coordinates: the basis vector of edge `e` is
/// sent to `sign[e]` times the basis vector of edge `image[e]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedEdgeMap {
    image: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedEdgeMap {
    pub fn identity(edges: usize) -> Self {
        SignedEdgeMap {
            image: (0..edges).collect(),
            sign: vec![1; edges],
        }
    }

    pub fn negation(edges: usize) -> Self {
        SignedEdgeMap {
            image: (0..edges).collect(),
            sign: vec![-1; edges],
        }
    }

    pub fn new(image: Vec<usize>, sign: Vec<i8>) -> Result<Self> {
        if image.len() != sign.len() {
            return Err(Error::DimensionMismatch("image and sign lengths differ".into()));
        }
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return Err(Error::DimensionMismatch("edge image is not a permutation".into()));
            }
            seen[i] = true;
        }
        if sign.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::DimensionMismatch("signs must be +1 or -1".into()));
        }
        Ok(SignedEdgeMap { image, sign })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self, e: usize) -> usize {
        self.image[e]
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.sign[e]
    }

    pub fn is_identity(&self) -> bool {
        self.sign.iter().all(|&s| s == 1) && self.image.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn is_negation(&self) -> bool {
        self.sign.iter().all(|&s| s == -1) && self.image.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); x.len()];
        for (e, v) in x.iter().enumerate() {
            if !v.is_zero() {
                out[self.image[e]] = if self.sign[e] == 1 { v.clone() } else { -v };
            }
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &SignedEdgeMap) -> SignedEdgeMap {
        SignedEdgeMap {
            image: other.image.iter().map(|&e| self.image[e]).collect(),
            sign: other
                .image
                .iter()
                .zip(&other.sign)
                .map(|(&e, &s)| self.sign[e] * s)
                .collect(),
        }
    }

    pub fn inverse(&self) -> SignedEdgeMap {
        let mut image = vec![0; self.image.len()];
        let mut sign = vec![1; self.image.len()];
        for (e, &p) in self.image.iter().enumerate() {
            image[p] = e;
            sign[p] = self.sign[e];
        }
        SignedEdgeMap { image, sign }
    }

    /// Trace of the map as a matrix: signed count of fixed edges.
    pub fn trace(&self) -> i64 {
        self.image
            .iter()
            .enumerate()
            .filter(|(e, &p)| *e == p)
            .map(|(e, _)| self.sign[e] as i64)
            .sum()
    }

    pub fn to_matrix(&self) -> RatMatrix {
        let n = self.image.len();
        let mut m = RatMatrix::zeros(n, n);
        for e in 0..n {
            m[(self.image[e], e)] = Rational::from_integer(self.sign[e] as i64);
        }
        m
    }

    /// `W⁻¹ P W`, computed entrywise as `s_a s_b P[π(a), π(b)]`.
    pub fn conjugate(&self, p: &RatMatrix) -> RatMatrix {
        RatMatrix::from_fn(p.rows(), p.cols(), |a, b| {
            let x = &p[(self.image[a], self.image[b])];
            if self.sign[a] == self.sign[b] {
                x.clone()
            } else {
                -x
            }
        })
    }

    /// Whether `W P = P W`.
    pub fn commutes_with(&self, p: &RatMatrix) -> bool {
        let n = self.image.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let x = &p[(self.image[a], self.image[b])];
                let y = &p[(a, b)];
                if self.sign[a] == self.sign[b] {
                    x == y
                } else {
                    *x == -y
                }
            })
        })
    }
}

/// Edge action `ĝ` of a vertex automorphism: edge `tail -> head` goes to the
/// edge joining `g(tail)` and `g(head)`, with sign `-1` when that edge is
/// oriented the other way.
pub fn edge_action(g: &GraphAutomorphism, graph: &OrientedGraph) -> Result<SignedEdgeMap> {
    if g.len() != graph.vertex_count() {
        return Err(Error::NotAnAutomorphism);
    }
    let mut image = Vec::with_capacity(graph.edge_count());
    let mut sign = Vec::with_capacity(graph.edge_count());
    for e in graph.edges() {
        let (t, h) = (g.apply(e.tail), g.apply(e.head));
        let f = graph.edge_between(t, h).ok_or(Error::NotAnAutomorphism)?;
        image.push(f);
        sign.push(if graph.edge(f).tail == t { 1 } else { -1 });
    }
    SignedEdgeMap::new(image, sign).map_err(|_| Error::NotAnAutomorphism)
}
