use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::{Family, OrientedGraph};

/// Finite metric space given by its full distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSpace {
    d: Vec<Vec<Rational>>,
}

impl MetricSpace {
    /// Checks symmetry, positivity off the diagonal, zero diagonal and the
    /// triangle inequality.
    pub fn new(d: Vec<Vec<Rational>>) -> Result<Self> {
        let n = d.len();
        if n == 0 {
            return Err(Error::InvalidMetric("no points".into()));
        }
        if d.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMetric("distance matrix is not square".into()));
        }
        for u in 0..n {
            if !d[u][u].is_zero() {
                return Err(Error::InvalidMetric(format!("d({u},{u}) is not zero")));
            }
            for v in 0..n {
                if d[u][v] != d[v][u] {
                    return Err(Error::InvalidMetric(format!("d({u},{v}) != d({v},{u})")));
                }
                if u != v && !d[u][v].is_positive() {
                    return Err(Error::InvalidMetric(format!("d({u},{v}) is not positive")));
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if d[u][v] > &d[u][w] + &d[w][v] {
                        return Err(Error::InvalidMetric(format!("triangle inequality fails for ({u},{w},{v})")));
                    }
                }
            }
        }
        Ok(MetricSpace { d })
    }

    /// Shortest-path metric of a graph.
    pub fn of_graph(g: &OrientedGraph) -> MetricSpace {
        MetricSpace {
            d: shortest_path_distances(g),
        }
    }

    pub fn point_count(&self) -> usize {
        self.d.len()
    }

    pub fn distance(&self, u: usize, v: usize) -> &Rational {
        &self.d[u][v]
    }

    pub fn distances(&self) -> &[Vec<Rational>] {
        &self.d
    }
}

/// Complete graph on the points minus every pair `uv` that has a point `w`
/// strictly between them (`d(u,w) + d(w,v) = d(u,v)`). Surviving edges carry
/// weight `d(u,v)` and point from the lower to the higher index.
pub fn canonical_graph(x: &MetricSpace) -> Result<OrientedGraph> {
    let n = x.point_count();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let duv = x.distance(u, v);
            let between = (0..n).any(|w| w != u && w != v && &(x.distance(u, w) + x.distance(w, v)) == duv);
            if !between {
                edges.push((u, v, duv.clone()));
            }
        }
    }
    let labels = (0..n).map(|v| v.to_string()).collect();
    OrientedGraph::new(labels, edges, Family::Generic)
}

/// All-pairs weighted shortest-path distances (Dijkstra from every vertex).
pub fn shortest_path_distances(g: &OrientedGraph) -> Vec<Vec<Rational>> {
    (0..g.vertex_count()).map(|s| dijkstra(g, s)).collect()
}

fn dijkstra(g: &OrientedGraph, source: usize) -> Vec<Rational> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(Rational::zero());
    heap.push(Reverse((Rational::zero(), source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &(w, e) in g.neighbors(v) {
            let cand = &d + &g.edge(e).weight;
            if dist[w].as_ref().is_none_or(|cur| cand < *cur) {
                dist[w] = Some(cand.clone());
                heap.push(Reverse((cand, w)));
            }
        }
    }
    dist.into_iter().map(|d| d.expect("graph is connected")).collect()
}

/// Unweighted breadth-first distances between all pairs.
pub fn hop_distances(g: &OrientedGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in g.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
        .collect()
}
