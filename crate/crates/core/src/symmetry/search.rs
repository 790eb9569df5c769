use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{hop_distances, OrientedGraph};

use super::GraphAutomorphism;

/// Complete automorphism group of the underlying unweighted graph, sorted
/// lexicographically by permutation.
///
/// Backtracking assigns vertices in breadth-first order; a candidate image
/// must share the vertex's degree and distance profile and preserve hop
/// distances to every vertex already placed.
pub fn find_automorphisms(g: &OrientedGraph, caps: &Caps) -> Result<Vec<GraphAutomorphism>> {
    let n = g.vertex_count();
    Caps::check("vertex count", n, caps.max_vertices)?;
    let dist = hop_distances(g);
    let profile: Vec<Vec<usize>> = dist
        .iter()
        .enumerate()
        .map(|(v, row)| {
            let mut hist = vec![0; n];
            for &d in row {
                hist[d] += 1;
            }
            hist.push(g.degree(v));
            hist
        })
        .collect();
    let order = bfs_order(g);

    let search = Search {
        dist: &dist,
        profile: &profile,
        order: &order,
        limit: caps.max_group,
        found: AtomicUsize::new(0),
        overflow: AtomicBool::new(false),
    };
    let first = order[0];
    let mut result: Vec<GraphAutomorphism> = (0..n)
        .into_par_iter()
        .filter(|&w| profile[w] == profile[first])
        .flat_map_iter(|w| {
            let mut image = vec![usize::MAX; n];
            let mut used = vec![false; n];
            image[first] = w;
            used[w] = true;
            let mut out = Vec::new();
            search.extend(1, &mut image, &mut used, &mut out);
            out
        })
        .collect();
    if search.overflow.load(Ordering::Relaxed) {
        return Err(Error::SizeCapExceeded {
            what: "automorphism group order",
            requested: search.found.load(Ordering::Relaxed),
            limit: caps.max_group,
        });
    }
    result.sort();
    Ok(result)
}

struct Search<'a> {
    dist: &'a [Vec<usize>],
    profile: &'a [Vec<usize>],
    order: &'a [usize],
    limit: usize,
    found: AtomicUsize,
    overflow: AtomicBool,
}

impl Search<'_> {
    fn extend(&self, k: usize, image: &mut [usize], used: &mut [bool], out: &mut Vec<GraphAutomorphism>) {
        if self.overflow.load(Ordering::Relaxed) {
            return;
        }
        if k == self.order.len() {
            if self.found.fetch_add(1, Ordering::Relaxed) + 1 > self.limit {
                self.overflow.store(true, Ordering::Relaxed);
                return;
            }
            out.push(GraphAutomorphism {
                perm: image.to_vec(),
            });
            return;
        }
        let v = self.order[k];
        let n = image.len();
        for w in 0..n {
            if used[w] || self.profile[w] != self.profile[v] {
                continue;
            }
            let consistent = self.order[..k]
                .iter()
                .all(|&u| self.dist[v][u] == self.dist[w][image[u]]);
            if !consistent {
                continue;
            }
            image[v] = w;
            used[w] = true;
            self.extend(k + 1, image, used, out);
            used[w] = false;
            image[v] = usize::MAX;
        }
    }
}

fn bfs_order(g: &OrientedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(w, _) in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}
