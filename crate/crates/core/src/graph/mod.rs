//! Oriented simple graphs, their incidence matrices, and spanning-tree
//! bases of the cycle and cut spaces.

mod families;
mod io;
mod metric;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::Rational;

pub use families::{
    hamming_graph, hamming_graph_capped, torus_coords, torus_graph, torus_graph_capped, torus_index,
};
pub use io::{GraphFile, MetricFile};
pub use metric::{canonical_graph, hop_distances, shortest_path_distances, MetricSpace};

/// Rational coefficients indexed by the edges of a graph, in edge order.
pub type EdgeVector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: Rational,
}

/// Which constructor produced a graph; lets the symmetry code pick
/// structured generators instead of a generic search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Generic,
    Torus { n: usize, m: usize },
    Hamming { n: usize, m: usize },
}

/// Simple connected graph with a fixed reference orientation and positive
/// rational edge weights. Edge indices follow construction order.
#[derive(Debug, Clone)]
pub struct OrientedGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    lookup: HashMap<(usize, usize), usize>,
    /// `(neighbor, edge)` pairs per vertex, in edge order.
    neighbors: Vec<Vec<(usize, usize)>>,
    family: Family,
}

impl PartialEq for OrientedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for OrientedGraph {}

/// Builds a graph keeping the given orientation and edge order.
pub fn build_graph(vertex_count: usize, edges: Vec<(usize, usize, Rational)>) -> Result<OrientedGraph> {
    let labels = (0..vertex_count).map(|v| v.to_string()).collect();
    OrientedGraph::new(labels, edges, Family::Generic)
}

impl OrientedGraph {
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize, Rational)>, family: Family) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut lookup = HashMap::with_capacity(edges.len());
        let mut neighbors = vec![Vec::new(); n];
        let mut stored = Vec::with_capacity(edges.len());
        for (i, (tail, head, weight)) in edges.into_iter().enumerate() {
            for index in [tail, head] {
                if index >= n {
                    return Err(Error::VertexOutOfRange { index, count: n });
                }
            }
            if tail == head {
                return Err(Error::SelfLoop(tail));
            }
            if !weight.is_positive() {
                return Err(Error::NonpositiveWeight(i));
            }
            let key = (tail.min(head), tail.max(head));
            if lookup.insert(key, i).is_some() {
                return Err(Error::ParallelEdge(key.0, key.1));
            }
            neighbors[tail].push((head, i));
            neighbors[head].push((tail, i));
            stored.push(Edge { tail, head, weight });
        }
        let graph = OrientedGraph {
            labels,
            edges: stored,
            lookup,
            neighbors,
            family,
        };
        if !graph.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        Ok(graph)
    }

    /// Same graph with every edge given unit weight.
    pub fn unweighted(&self) -> OrientedGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight = Rational::one();
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.labels.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Index of the edge joining `u` and `v` in either direction.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.lookup.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// `|E| - |V| + 1`
    pub fn cycle_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn cut_rank(&self) -> usize {
        self.vertex_count() - 1
    }

    pub fn zero_vector(&self) -> EdgeVector {
        vec![Rational::zero(); self.edge_count()]
    }

    /// Signed indicator of a closed walk given as a vertex sequence
    /// `v0, v1, ..., vk = v0`.
    pub fn walk_vector(&self, walk: &[usize]) -> Result<EdgeVector> {
        if walk.len() < 2 || walk.first() != walk.last() {
            return Err(Error::NotClosed(format!("walk {walk:?} does not return to its start")));
        }
        let mut v = self.zero_vector();
        for pair in walk.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let e = self
                .edge_between(a, b)
                .ok_or_else(|| Error::NotClosed(format!("no edge between {a} and {b}")))?;
            if self.edges[e].tail == a {
                v[e] += Rational::one();
            } else {
                v[e] -= Rational::one();
            }
        }
        Ok(v)
    }
}

/// `|V| x |E|` matrix with `+1` at the head and `-1` at the tail of each edge.
pub fn incidence_matrix(g: &OrientedGraph) -> RatMatrix {
    let mut d = RatMatrix::zeros(g.vertex_count(), g.edge_count());
    for (i, e) in g.edges.iter().enumerate() {
        d[(e.head, i)] = Rational::one();
        d[(e.tail, i)] = -Rational::one();
    }
    d
}

/// `D F` for an edge vector `F`: net inflow at every vertex.
pub fn divergence(g: &OrientedGraph, f: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); g.vertex_count()];
    for (e, x) in g.edges.iter().zip(f) {
        if !x.is_zero() {
            out[e.head] += x;
            out[e.tail] -= x;
        }
    }
    out
}

/// Breadth-first spanning tree rooted at vertex 0; neighbors are visited in
/// edge order.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    /// `(parent vertex, connecting edge)`; `None` at the root.
    pub parent: Vec<Option<(usize, usize)>>,
    pub depth: Vec<usize>,
    pub is_tree_edge: Vec<bool>,
    /// Edges outside the tree, in edge order. Each one closes a fundamental cycle.
    pub chords: Vec<usize>,
}

pub fn spanning_tree(g: &OrientedGraph) -> SpanningTree {
    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut is_tree_edge = vec![false; g.edge_count()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &(w, e) in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, e));
                depth[w] = depth[v] + 1;
                is_tree_edge[e] = true;
                queue.push_back(w);
            }
        }
    }
    let chords = (0..g.edge_count()).filter(|&e| !is_tree_edge[e]).collect();
    SpanningTree {
        parent,
        depth,
        is_tree_edge,
        chords,
    }
}

impl SpanningTree {
    /// Signed indicator of the fundamental cycle of `chord`, traversed along
    /// the chord's own orientation.
    pub fn fundamental_cycle(&self, g: &OrientedGraph, chord: usize) -> EdgeVector {
        let Edge { tail, head, .. } = *g.edge(chord);
        let mut z = g.zero_vector();
        z[chord] = Rational::one();
        // walk head -> lca -> tail
        let (mut a, mut b) = (head, tail);
        let mut down = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (p, e) = self.parent[a].expect("non-root has a parent");
                z[e] += sign_of(g, e, a);
                a = p;
            } else {
                let (p, e) = self.parent[b].expect("non-root has a parent");
                down.push((p, e));
                b = p;
            }
        }
        for (p, e) in down {
            z[e] += sign_of(g, e, p);
        }
        z
    }
}

/// `+1` if traversing `e` starting from `from` follows its orientation.
fn sign_of(g: &OrientedGraph, e: usize, from: usize) -> Rational {
    if g.edge(e).tail == from {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Fundamental cycles of the breadth-first spanning tree, one per chord.
pub fn cycle_basis(g: &OrientedGraph) -> Vec<EdgeVector> {
    let tree = spanning_tree(g);
    tree.chords
        .iter()
        .map(|&c| tree.fundamental_cycle(g, c))
        .collect()
}

/// Vertex star `X(v)`: `+1` on edges leaving `v`, `-1` on edges entering it.
pub fn star_vector(g: &OrientedGraph, v: usize) -> EdgeVector {
    let mut x = g.zero_vector();
    for &(_, e) in g.neighbors(v) {
        x[e] = sign_of(g, e, v);
    }
    x
}

/// Stars `X(v)` of every vertex except vertex 0.
pub fn cut_basis(g: &OrientedGraph) -> Vec<EdgeVector> {
    (1..g.vertex_count()).map(|v| star_vector(g, v)).collect()
}
