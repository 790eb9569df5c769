use std::collections::{HashSet, VecDeque};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{hamming_graph_capped, torus_coords, torus_graph_capped, torus_index, OrientedGraph};

use super::{edge_action, find_automorphisms, GraphAutomorphism, SignedEdgeMap};

/// A group of edge-space isometries preserving the cycle space, given by
/// vertex automorphism generators and optionally the global sign `-I`.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    vertex_generators: Vec<GraphAutomorphism>,
    generators: Vec<SignedEdgeMap>,
    elements: Option<Vec<GraphAutomorphism>>,
    includes_negation: bool,
    edge_transitive: bool,
}

impl GroupSpec {
    pub fn new(g: &OrientedGraph, vertex_generators: Vec<GraphAutomorphism>, includes_negation: bool) -> Result<Self> {
        let generators = vertex_generators
            .iter()
            .map(|a| edge_action(a, g))
            .collect::<Result<Vec<_>>>()?;
        let edge_transitive = edge_orbits(g.edge_count(), &generators).len() <= 1;
        Ok(GroupSpec {
            vertex_generators,
            generators,
            elements: None,
            includes_negation,
            edge_transitive,
        })
    }

    /// Full automorphism group of `g` (plus `-I`), with a small generating
    /// set picked greedily from the sorted element list.
    pub fn full(g: &OrientedGraph, caps: &Caps) -> Result<Self> {
        let elements = find_automorphisms(g, caps)?;
        let n = g.vertex_count();
        let mut gens: Vec<GraphAutomorphism> = Vec::new();
        let mut reached: HashSet<GraphAutomorphism> = HashSet::from([GraphAutomorphism::identity(n)]);
        for a in &elements {
            if reached.len() == elements.len() {
                break;
            }
            if !reached.contains(a) {
                gens.push(a.clone());
                reached = closure(&gens, n, caps.max_group)?.into_iter().collect();
            }
        }
        let mut spec = GroupSpec::new(g, gens, true)?;
        spec.elements = Some(elements);
        Ok(spec)
    }

    /// Enumerates the vertex group generated by the generators.
    pub fn enumerate(mut self, n: usize, caps: &Caps) -> Result<Self> {
        if self.elements.is_none() {
            self.elements = Some(closure(&self.vertex_generators, n, caps.max_group)?);
        }
        Ok(self)
    }

    pub fn vertex_generators(&self) -> &[GraphAutomorphism] {
        &self.vertex_generators
    }

    pub fn generators(&self) -> &[SignedEdgeMap] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[GraphAutomorphism]> {
        self.elements.as_deref()
    }

    pub fn includes_negation(&self) -> bool {
        self.includes_negation
    }

    pub fn edge_transitive(&self) -> bool {
        self.edge_transitive
    }

    /// Order of the vertex permutation group, when enumerated.
    pub fn vertex_order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    /// Order of the group acting on edge vectors, counting `-I` when it is
    /// not already induced by a vertex automorphism.
    pub fn signed_order(&self, g: &OrientedGraph) -> Result<usize> {
        let maps = self.element_edge_maps(g)?;
        let doubled = self.includes_negation && !maps.iter().any(SignedEdgeMap::is_negation);
        Ok(maps.len() * if doubled { 2 } else { 1 })
    }

    /// Edge actions of every enumerated element.
    pub fn element_edge_maps(&self, g: &OrientedGraph) -> Result<Vec<SignedEdgeMap>> {
        let elements = self.elements.as_ref().ok_or(Error::GroupNotEnumerated)?;
        elements.iter().map(|a| edge_action(a, g)).collect()
    }

    /// Orbits of the generated group on edges, each sorted, ordered by
    /// smallest member.
    pub fn edge_orbits(&self, edge_count: usize) -> Vec<Vec<usize>> {
        edge_orbits(edge_count, &self.generators)
    }

    pub fn is_vertex_transitive(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for a in &self.vertex_generators {
                let w = a.apply(v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }
}

fn edge_orbits(edge_count: usize, generators: &[SignedEdgeMap]) -> Vec<Vec<usize>> {
    let mut orbit_of = vec![usize::MAX; edge_count];
    let mut orbits = Vec::new();
    for start in 0..edge_count {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut i = 0;
        while i < members.len() {
            let e = members[i];
            for w in generators {
                let f = w.image(e);
                if orbit_of[f] == usize::MAX {
                    orbit_of[f] = id;
                    members.push(f);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

/// Breadth-first closure of a set of vertex permutations under composition,
/// sorted lexicographically.
pub fn closure(generators: &[GraphAutomorphism], n: usize, limit: usize) -> Result<Vec<GraphAutomorphism>> {
    let id = GraphAutomorphism::identity(n);
    let mut seen: HashSet<GraphAutomorphism> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for g in generators {
            let b = g.compose(&a);
            if !seen.contains(&b) {
                if seen.len() >= limit {
                    return Err(Error::SizeCapExceeded {
                        what: "group order",
                        requested: seen.len() + 1,
                        limit,
                    });
                }
                seen.insert(b.clone());
                queue.push_back(b);
            }
        }
    }
    let mut all: Vec<GraphAutomorphism> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

fn coordinate_map(n: usize, m: usize, f: impl Fn(&[usize]) -> Vec<usize>) -> GraphAutomorphism {
    let count = n.pow(m as u32);
    GraphAutomorphism::from_fn(count, |v| torus_index(&f(&torus_coords(v, n, m)), n))
        .expect("coordinate map is a bijection")
}

/// The exceptional involution of ℤ₄² that sends a small square onto a row
/// cycle; all other vertices are fixed.
fn exceptional_swap(c: (usize, usize)) -> (usize, usize) {
    const PAIRS: [((usize, usize), (usize, usize)); 4] = [((2, 0), (1, 3)), ((3, 0), (0, 3)), ((2, 1), (1, 2)), ((3, 1), (0, 2))];
    for (a, b) in PAIRS {
        if c == a {
            return b;
        }
        if c == b {
            return a;
        }
    }
    c
}

/// Translation by `e_0`, the reflection `i_0 -> -i_0`, adjacent coordinate
/// swaps and, for `n = 4`, the exceptional involution on the first two
/// coordinates; together with `-I`.
pub fn torus_generators(n: usize, m: usize) -> Result<GroupSpec> {
    torus_generators_capped(n, m, &Caps::default())
}

pub(crate) fn torus_generators_capped(n: usize, m: usize, caps: &Caps) -> Result<GroupSpec> {
    if n < 3 {
        return Err(Error::UnsupportedParameter(format!("torus generators need n >= 3, got {n}")));
    }
    let g = torus_graph_capped(n, m, caps)?;
    let mut gens = vec![
        coordinate_map(n, m, |c| {
            let mut c = c.to_vec();
            c[0] = (c[0] + 1) % n;
            c
        }),
        coordinate_map(n, m, |c| {
            let mut c = c.to_vec();
            c[0] = (n - c[0]) % n;
            c
        }),
    ];
    for k in 0..m - 1 {
        gens.push(coordinate_map(n, m, |c| {
            let mut c = c.to_vec();
            c.swap(k, k + 1);
            c
        }));
    }
    if n == 4 {
        gens.push(coordinate_map(n, m, |c| {
            let mut c = c.to_vec();
            let (a, b) = exceptional_swap((c[0], c[1]));
            c[0] = a;
            c[1] = b;
            c
        }));
    }
    GroupSpec::new(&g, gens, true)
}

/// Adjacent coordinate swaps and adjacent symbol transpositions in the first
/// coordinate; these generate the full wreath-product action on Aₙᵐ.
pub fn hamming_generators(n: usize, m: usize) -> Result<GroupSpec> {
    hamming_generators_capped(n, m, &Caps::default())
}

pub(crate) fn hamming_generators_capped(n: usize, m: usize, caps: &Caps) -> Result<GroupSpec> {
    let g = hamming_graph_capped(n, m, caps)?;
    let mut gens = Vec::new();
    for k in 0..m.saturating_sub(1) {
        gens.push(coordinate_map(n, m, |c| {
            let mut c = c.to_vec();
            c.swap(k, k + 1);
            c
        }));
    }
    for s in 0..n - 1 {
        gens.push(coordinate_map(n, m, |c| {
            let mut c = c.to_vec();
            if c[0] == s {
                c[0] = s + 1;
            } else if c[0] == s + 1 {
                c[0] = s;
            }
            c
        }));
    }
    GroupSpec::new(&g, gens, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{torus_graph, OrientedGraph};

    fn order(spec: &GroupSpec, g: &OrientedGraph) -> usize {
        closure(spec.vertex_generators(), g.vertex_count(), 1_000_000).unwrap().len()
    }

    #[test]
    fn torus_group_orders() {
        let g5 = torus_graph(5, 2).unwrap();
        let t5 = torus_generators(5, 2).unwrap();
        assert_eq!(order(&t5, &g5), 200);
        assert!(t5.edge_transitive());
        let g6 = torus_graph(6, 2).unwrap();
        let t6 = torus_generators(6, 2).unwrap().enumerate(36, &Caps::default()).unwrap();
        assert_eq!(t6.vertex_order(), Some(288));
        assert_eq!(t6.signed_order(&g6).unwrap(), 576);
    }

    #[test]
    fn torus_four_gains_the_exceptional_map() {
        let g = torus_graph(4, 2).unwrap();
        let spec = torus_generators(4, 2).unwrap();
        assert!(spec.vertex_generators().iter().all(|a| a.preserves(&g)));
        assert_eq!(order(&spec, &g), find_automorphisms(&g, &Caps::default()).unwrap().len());
        let square = [(0, 1), (1, 1), (1, 2), (0, 2), (0, 1)];
        let phi = spec.vertex_generators().last().unwrap();
        let image: Vec<usize> = square.iter().map(|&(i, j)| phi.apply(torus_index(&[i, j], 4))).collect();
        let row: Vec<usize> = [(0, 1), (1, 1), (2, 1), (3, 1), (0, 1)]
            .iter()
            .map(|&(i, j)| torus_index(&[i, j], 4))
            .collect();
        assert_eq!(image, row);
    }

    #[test]
    fn hamming_group_orders() {
        let g = crate::graph::hamming_graph(2, 3).unwrap();
        assert_eq!(order(&hamming_generators(2, 3).unwrap(), &g), 48);
        let g = crate::graph::hamming_graph(3, 2).unwrap();
        let spec = hamming_generators(3, 2).unwrap();
        assert_eq!(order(&spec, &g), 72);
        assert!(spec.edge_transitive());
    }

    #[test]
    fn full_group_uses_few_generators() {
        let g = torus_graph(5, 2).unwrap();
        let spec = GroupSpec::full(&g, &Caps::default()).unwrap();
        assert_eq!(spec.vertex_order(), Some(200));
        assert!(spec.vertex_generators().len() <= 8);
        assert_eq!(order(&spec, &g), 200);
        assert!(spec.is_vertex_transitive(25));
    }

    #[test]
    fn closure_cap() {
        let spec = torus_generators(5, 2).unwrap();
        assert!(matches!(closure(spec.vertex_generators(), 25, 50), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn unenumerated_group_has_no_elements() {
        let g = torus_graph(3, 2).unwrap();
        let spec = torus_generators(3, 2).unwrap();
        assert_eq!(spec.element_edge_maps(&g), Err(Error::GroupNotEnumerated));
    }
}
