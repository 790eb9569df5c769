use std::cell::OnceCell;
use std::collections::BTreeMap;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{divergence, EdgeVector, Family, OrientedGraph};
use crate::linalg::{nullspace, RatMatrix, SparseEchelon};
use crate::rational::Rational;
use crate::symmetry::{closure, edge_action, GraphAutomorphism, GroupSpec, SignedEdgeMap};

use super::torus::closed_form_images;
use super::EdgeSpaces;

/// Name that lets the registry pick a strategy.
pub const AUTO: &str = "auto";

/// Graph, group and caps shared by every strategy, with lazily computed
/// dense edge spaces and group elements.
pub struct CommutantInput<'a> {
    pub graph: &'a OrientedGraph,
    pub group: &'a GroupSpec,
    pub caps: &'a Caps,
    spaces: OnceCell<EdgeSpaces>,
    elements: OnceCell<Vec<GraphAutomorphism>>,
}

impl<'a> CommutantInput<'a> {
    pub fn new(graph: &'a OrientedGraph, group: &'a GroupSpec, caps: &'a Caps) -> Self {
        CommutantInput {
            graph,
            group,
            caps,
            spaces: OnceCell::new(),
            elements: OnceCell::new(),
        }
    }

    pub fn spaces(&self) -> Result<&EdgeSpaces> {
        if let Some(s) = self.spaces.get() {
            return Ok(s);
        }
        let s = EdgeSpaces::new(self.graph, self.caps)?;
        Ok(self.spaces.get_or_init(|| s))
    }

    /// Enumerated vertex group, computing the closure if the group spec
    /// does not carry it.
    pub fn elements(&self) -> Result<&[GraphAutomorphism]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let all = match self.group.elements() {
            Some(e) => e.to_vec(),
            None => closure(
                self.group.vertex_generators(),
                self.graph.vertex_count(),
                self.caps.max_averaging_group,
            )?,
        };
        Ok(self.elements.get_or_init(|| all))
    }

    fn elements_within_cap(&self) -> bool {
        match self.group.vertex_order() {
            Some(k) => k <= self.caps.max_averaging_group,
            None => self.elements().is_ok(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CommutantSolution {
    pub dimension: usize,
    /// Lifted maps `Aᵢ P_B`, present when a basis was requested.
    pub basis: Option<Vec<RatMatrix>>,
}

/// One way of computing the invariant maps `A: B -> Z` of a group action.
pub trait CommutantStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    fn provides_basis(&self) -> bool {
        true
    }

    /// `Err(StrategyNotApplicable)` when the strategy cannot handle the input.
    fn applicable(&self, input: &CommutantInput) -> Result<()>;

    fn solve(&self, input: &CommutantInput, want_basis: bool) -> Result<CommutantSolution>;
}

/// Strategies addressable by name, plus automatic selection.
pub struct StrategyRegistry {
    entries: Vec<Box<dyn CommutantStrategy>>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        StrategyRegistry::standard()
    }
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry { entries: Vec::new() }
    }

    pub fn standard() -> Self {
        let mut r = StrategyRegistry::empty();
        r.register(Box::new(OrbitalStrategy));
        r.register(Box::new(IntertwiningStrategy));
        r.register(Box::new(StabilizerStrategy));
        r.register(Box::new(CharacterStrategy));
        r.register(Box::new(TorusClosedFormStrategy));
        r
    }

    /// Adds a strategy, replacing any existing one with the same name.
    pub fn register(&mut self, strategy: Box<dyn CommutantStrategy>) {
        self.entries.retain(|s| s.name() != strategy.name());
        self.entries.push(strategy);
    }

    pub fn get(&self, name: &str) -> Option<&dyn CommutantStrategy> {
        self.entries.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }

    pub fn strategies(&self) -> impl Iterator<Item = &dyn CommutantStrategy> {
        self.entries.iter().map(|s| s.as_ref())
    }

    /// Automatic preference: the character formula when only a dimension is
    /// needed and the group is small enough to enumerate; otherwise orbit
    /// sums on small edge sets, the stabilizer reduction on larger
    /// vertex-transitive graphs, and the intertwining equations last.
    pub fn select(&self, input: &CommutantInput, want_basis: bool) -> Result<&dyn CommutantStrategy> {
        let e = input.graph.edge_count();
        let mut order: Vec<&str> = Vec::new();
        if !want_basis && input.elements_within_cap() {
            order.push("character");
        }
        if e <= 128 {
            order.push("orbital");
        }
        order.extend(["stabilizer", "orbital", "intertwining"]);
        for name in order {
            if let Some(s) = self.get(name) {
                if s.applicable(input).is_ok() {
                    return Ok(s);
                }
            }
        }
        Err(Error::StrategyNotApplicable(AUTO, "no registered strategy handles this input".into()))
    }

    pub fn run(&self, name: &str, input: &CommutantInput, want_basis: bool) -> Result<(&'static str, CommutantSolution)> {
        let strategy = if name == AUTO {
            self.select(input, want_basis)?
        } else {
            let s = self.get(name).ok_or_else(|| Error::UnknownStrategy(name.to_string()))?;
            s.applicable(input)?;
            s
        };
        if want_basis && !strategy.provides_basis() {
            return Err(Error::StrategyNotApplicable(
                strategy.name(),
                "it computes dimensions only".into(),
            ));
        }
        Ok((strategy.name(), strategy.solve(input, want_basis)?))
    }
}

fn from_basis(basis: Vec<RatMatrix>, want_basis: bool) -> CommutantSolution {
    CommutantSolution {
        dimension: basis.len(),
        basis: want_basis.then_some(basis),
    }
}

/// Keeps a maximal independent subfamily of matrices, in order.
fn independent_matrices(candidates: Vec<RatMatrix>) -> Vec<RatMatrix> {
    let Some(first) = candidates.first() else {
        return Vec::new();
    };
    let mut echelon = SparseEchelon::new(first.rows() * first.cols());
    candidates
        .into_iter()
        .filter(|m| {
            echelon.insert(
                m.entries()
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, x.clone()))
                    .collect(),
            )
        })
        .collect()
}

/// Signed orbit sums of elementary matrices `E_ab` under conjugation by the
/// generators span the commutant of the edge action; compressing each one
/// to `P_Z O P_B` spans the invariant maps.
pub struct OrbitalStrategy;

impl CommutantStrategy for OrbitalStrategy {
    fn name(&self) -> &'static str {
        "orbital"
    }

    fn summary(&self) -> &'static str {
        "signed orbit sums on edge pairs, compressed to maps B -> Z"
    }

    fn applicable(&self, input: &CommutantInput) -> Result<()> {
        let e = input.graph.edge_count();
        if e > input.caps.max_dense_edges {
            return Err(Error::StrategyNotApplicable(
                self.name(),
                format!("{e} edges exceed the dense cap {}", input.caps.max_dense_edges),
            ));
        }
        Ok(())
    }

    fn solve(&self, input: &CommutantInput, want_basis: bool) -> Result<CommutantSolution> {
        let spaces = input.spaces()?;
        let e = input.graph.edge_count();
        let orbits = signed_pair_orbits(e, input.group.generators());
        let candidates: Vec<RatMatrix> = orbits
            .into_iter()
            .filter_map(|orbit| {
                let mut o_pb = RatMatrix::zeros(e, e);
                for (a, b, s) in orbit {
                    let row = spaces.p_b.row(b);
                    for (c, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            if s > 0 {
                                o_pb[(a, c)] += x;
                            } else {
                                o_pb[(a, c)] -= x;
                            }
                        }
                    }
                }
                let m = spaces.p_orth.mul(&o_pb);
                (!m.is_zero()).then_some(m)
            })
            .collect();
        Ok(from_basis(independent_matrices(candidates), want_basis))
    }
}

/// Orbits of `(a, b)` under `(a, b) -> (π(a), π(b))` with sign `s_a s_b`,
/// omitting orbits that meet a pair with both signs.
fn signed_pair_orbits(e: usize, generators: &[SignedEdgeMap]) -> Vec<Vec<(usize, usize, i8)>> {
    let n = e * e;
    let mut parent: Vec<usize> = (0..n).collect();
    // parity of a node relative to its parent
    let mut parity = vec![0u8; n];
    let mut killed = vec![false; n];

    fn find(parent: &mut [usize], parity: &mut [u8], x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut r = x;
        while parent[r] != r {
            path.push(r);
            r = parent[r];
        }
        // compress, accumulating parity from the root downward
        let mut acc = 0u8;
        for &v in path.iter().rev() {
            acc ^= parity[v];
            parity[v] = acc;
            parent[v] = r;
        }
        (r, if path.is_empty() { 0 } else { parity[x] })
    }

    for w in generators {
        for a in 0..e {
            for b in 0..e {
                let x = a * e + b;
                let y = w.image(a) * e + w.image(b);
                let flip = u8::from(w.sign(a) != w.sign(b));
                let (rx, px) = find(&mut parent, &mut parity, x);
                let (ry, py) = find(&mut parent, &mut parity, y);
                if rx == ry {
                    if px ^ py != flip {
                        killed[rx] = true;
                    }
                } else {
                    parent[ry] = rx;
                    parity[ry] = px ^ py ^ flip;
                    killed[rx] |= killed[ry];
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<(usize, usize, i8)>> = BTreeMap::new();
    for x in 0..n {
        let (r, p) = find(&mut parent, &mut parity, x);
        if killed[r] {
            continue;
        }
        groups
            .entry(r)
            .or_default()
            .push((x / e, x % e, if p == 0 { 1 } else { -1 }));
    }
    let mut out: Vec<_> = groups.into_values().collect();
    out.sort_by_key(|o| (o[0].0, o[0].1));
    out
}

/// Solves `Q A_B(g) = A_Z(g) Q` for every generator, with `Q` written in the
/// fundamental-cycle and star coordinates.
pub struct IntertwiningStrategy;

impl CommutantStrategy for IntertwiningStrategy {
    fn name(&self) -> &'static str {
        "intertwining"
    }

    fn summary(&self) -> &'static str {
        "nullspace of the intertwining equations over the generators"
    }

    fn applicable(&self, input: &CommutantInput) -> Result<()> {
        let unknowns = input.graph.cycle_rank() * input.graph.cut_rank();
        Caps::check("intertwining unknowns", unknowns, input.caps.max_dense_edges.pow(2))
            .map_err(|e| Error::StrategyNotApplicable(self.name(), e.to_string()))
    }

    fn solve(&self, input: &CommutantInput, want_basis: bool) -> Result<CommutantSolution> {
        let g = input.graph;
        let tree = crate::graph::spanning_tree(g);
        let cycles: Vec<EdgeVector> = tree.chords.iter().map(|&c| tree.fundamental_cycle(g, c)).collect();
        let (dz, db) = (cycles.len(), g.cut_rank());
        let mut echelon = SparseEchelon::new(dz * db);
        let mut order: Vec<usize> = (0..g.vertex_count()).collect();
        order.sort_by_key(|&v| tree.depth[v]);
        for w in input.group.generators() {
            // A_Z: column k = chord coordinates of w(z_k); stored by rows
            let mut az_rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); dz];
            for (k, z) in cycles.iter().enumerate() {
                let image = w.apply(z);
                for (i, &c) in tree.chords.iter().enumerate() {
                    if !image[c].is_zero() {
                        az_rows[i].push((k, image[c].clone()));
                    }
                }
            }
            // A_B: column j = star coordinates of w(X(j+1)); stored by columns
            let mut ab_cols: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(db);
            for v in 1..g.vertex_count() {
                let image = w.apply(&crate::graph::star_vector(g, v));
                let phi = star_coordinates(g, &tree, &order, &image);
                ab_cols.push(
                    phi.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .collect(),
                );
            }
            for i in 0..dz {
                for (j, col) in ab_cols.iter().enumerate() {
                    let mut row: Vec<(usize, Rational)> = col.iter().map(|(k, a)| (i * db + k, a.clone())).collect();
                    row.extend(az_rows[i].iter().map(|(k, a)| (k * db + j, -a)));
                    echelon.insert(row);
                }
            }
        }
        let kernel = echelon.kernel();
        if !want_basis {
            return Ok(CommutantSolution {
                dimension: kernel.len(),
                basis: None,
            });
        }
        let spaces = input.spaces()?;
        let e = g.edge_count();
        let basis = kernel
            .into_iter()
            .map(|q| {
                let mut images = vec![vec![Rational::zero(); e]; db];
                for (idx, x) in q {
                    let (i, j) = (idx / db, idx % db);
                    for (edge, zc) in cycles[i].iter().enumerate() {
                        if !zc.is_zero() {
                            images[j][edge] += x.clone() * zc;
                        }
                    }
                }
                spaces.lift(&images)
            })
            .collect();
        Ok(from_basis(basis, true))
    }
}

/// Potentials `φ` with `φ(0) = 0` and `b = Σ φ(v) X(v)`, i.e.
/// `b(e) = φ(tail) - φ(head)`; returns `φ(1..)`. `order` lists vertices by
/// tree depth.
fn star_coordinates(g: &OrientedGraph, tree: &crate::graph::SpanningTree, order: &[usize], b: &[Rational]) -> Vec<Rational> {
    let mut phi = vec![Rational::zero(); g.vertex_count()];
    for &v in order {
        if let Some((p, e)) = tree.parent[v] {
            phi[v] = if g.edge(e).tail == p { &phi[p] - &b[e] } else { &phi[p] + &b[e] };
        }
    }
    phi.split_off(1)
}

/// For vertex-transitive groups an invariant map is fixed by `Y = A(X(0))`,
/// which ranges over cycle vectors fixed by the vertex stabilizer and
/// annihilated by `Σ_v ĝ_v`, where `g_v(0) = v`.
pub struct StabilizerStrategy;

impl CommutantStrategy for StabilizerStrategy {
    fn name(&self) -> &'static str {
        "stabilizer"
    }

    fn summary(&self) -> &'static str {
        "stabilizer-fixed cycle vectors at a base vertex (vertex-transitive groups)"
    }

    fn applicable(&self, input: &CommutantInput) -> Result<()> {
        let n = input.graph.vertex_count();
        if !input.group.is_vertex_transitive(n) {
            return Err(Error::StrategyNotApplicable(self.name(), "group is not vertex-transitive".into()));
        }
        input
            .elements()
            .map(|_| ())
            .map_err(|e| Error::StrategyNotApplicable(self.name(), e.to_string()))
    }

    fn solve(&self, input: &CommutantInput, want_basis: bool) -> Result<CommutantSolution> {
        let g = input.graph;
        let (n, e) = (g.vertex_count(), g.edge_count());
        let elements = input.elements()?;
        let mut coset: Vec<Option<SignedEdgeMap>> = vec![None; n];
        let mut stabilizer = Vec::new();
        for a in elements {
            let v = a.apply(0);
            if v == 0 {
                stabilizer.push(edge_action(a, g)?);
            }
            if coset[v].is_none() {
                coset[v] = Some(edge_action(a, g)?);
            }
        }
        let coset: Vec<SignedEdgeMap> = coset.into_iter().collect::<Option<_>>().ok_or_else(|| {
            Error::StrategyNotApplicable(self.name(), "group is not vertex-transitive".into())
        })?;

        // signed edge orbits of the stabilizer
        let mut assigned = vec![false; e];
        let mut orbit_vectors: Vec<EdgeVector> = Vec::new();
        for start in 0..e {
            if assigned[start] {
                continue;
            }
            let mut sign: Vec<i8> = vec![0; e];
            let mut consistent = true;
            for h in &stabilizer {
                let (f, s) = (h.image(start), h.sign(start));
                assigned[f] = true;
                if sign[f] == 0 {
                    sign[f] = s;
                } else if sign[f] != s {
                    consistent = false;
                }
            }
            if consistent {
                orbit_vectors.push(sign.iter().map(|&s| Rational::from_integer(s as i64)).collect());
            }
        }
        // fixed cycle vectors: combinations of orbit vectors in ker D
        let div = RatMatrix::from_columns(
            &orbit_vectors.iter().map(|o| divergence(g, o)).collect::<Vec<_>>(),
            n,
        );
        let fixed: Vec<EdgeVector> = nullspace(&div)
            .into_iter()
            .map(|c| combine(&orbit_vectors, &c, e))
            .collect();
        if fixed.is_empty() {
            return Ok(from_basis(Vec::new(), want_basis));
        }
        let sums: Vec<EdgeVector> = fixed
            .iter()
            .map(|y| {
                let mut acc = vec![Rational::zero(); e];
                for w in &coset {
                    for (a, x) in acc.iter_mut().zip(w.apply(y)) {
                        if !x.is_zero() {
                            *a += x;
                        }
                    }
                }
                acc
            })
            .collect();
        let kernel = nullspace(&RatMatrix::from_columns(&sums, e));
        if !want_basis {
            return Ok(CommutantSolution {
                dimension: kernel.len(),
                basis: None,
            });
        }
        let spaces = input.spaces()?;
        let basis = kernel
            .iter()
            .map(|d| {
                let y = combine(&fixed, d, e);
                let images: Vec<EdgeVector> = coset[1..].iter().map(|w| w.apply(&y)).collect();
                spaces.lift(&images)
            })
            .collect();
        Ok(from_basis(basis, true))
    }
}

fn combine(vectors: &[EdgeVector], coeffs: &[Rational], len: usize) -> EdgeVector {
    let mut out = vec![Rational::zero(); len];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// `dim Hom_G(B, Z) = (1/|G|) Σ χ_B(g) χ_Z(g)` with `χ_B(g) = fix(g) - 1`
/// and `χ_Z = χ_E - χ_B`. Dimension only.
pub struct CharacterStrategy;

impl CommutantStrategy for CharacterStrategy {
    fn name(&self) -> &'static str {
        "character"
    }

    fn summary(&self) -> &'static str {
        "character inner product over the enumerated group (dimension only)"
    }

    fn provides_basis(&self) -> bool {
        false
    }

    fn applicable(&self, input: &CommutantInput) -> Result<()> {
        input
            .elements()
            .map(|_| ())
            .map_err(|e| Error::StrategyNotApplicable(self.name(), e.to_string()))
    }

    fn solve(&self, input: &CommutantInput, _want_basis: bool) -> Result<CommutantSolution> {
        let g = input.graph;
        let elements = input.elements()?;
        let mut total: i128 = 0;
        for a in elements {
            let chi_e = edge_action(a, g)?.trace() as i128;
            let fixed = (0..g.vertex_count()).filter(|&v| a.apply(v) == v).count() as i128;
            let chi_b = fixed - 1;
            total += chi_b * (chi_e - chi_b);
        }
        let order = elements.len() as i128;
        if total % order != 0 || total < 0 {
            return Err(Error::IdentityViolation(format!(
                "character sum {total} is not a nonnegative multiple of the group order {order}"
            )));
        }
        Ok(CommutantSolution {
            dimension: (total / order) as usize,
            basis: None,
        })
    }
}

/// Explicit invariant vectors of ℤₙ² (n ≥ 5) built from eight signed small
/// squares, spread over the vertices by translations.
pub struct TorusClosedFormStrategy;

impl CommutantStrategy for TorusClosedFormStrategy {
    fn name(&self) -> &'static str {
        "torus-closed-form"
    }

    fn summary(&self) -> &'static str {
        "closed-form invariant vectors on the two-dimensional torus, n >= 5"
    }

    fn applicable(&self, input: &CommutantInput) -> Result<()> {
        let Family::Torus { n, m: 2 } = input.graph.family() else {
            return Err(Error::StrategyNotApplicable(self.name(), "graph is not a two-dimensional torus".into()));
        };
        if n < 5 {
            return Err(Error::StrategyNotApplicable(self.name(), format!("needs n >= 5, got {n}")));
        }
        let full = 8 * n * n;
        let order = match input.group.vertex_order() {
            Some(k) => k,
            None => closure(input.group.vertex_generators(), n * n, full + 1)
                .map(|c| c.len())
                .unwrap_or(full + 1),
        };
        if order != full {
            return Err(Error::StrategyNotApplicable(
                self.name(),
                format!("group order {order} is not the full order {full}"),
            ));
        }
        Ok(())
    }

    fn solve(&self, input: &CommutantInput, want_basis: bool) -> Result<CommutantSolution> {
        let Family::Torus { n, .. } = input.graph.family() else {
            unreachable!("checked by applicable")
        };
        let families = closed_form_images(n)?;
        if !want_basis {
            return Ok(CommutantSolution {
                dimension: families.len(),
                basis: None,
            });
        }
        let spaces = input.spaces()?;
        Ok(from_basis(families.iter().map(|images| spaces.lift(images)).collect(), true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{hamming_graph, torus_graph};
    use crate::symmetry::{hamming_generators, torus_generators};

    fn dims(g: &OrientedGraph, group: &GroupSpec) -> Vec<(&'static str, usize)> {
        let caps = Caps::default();
        let registry = StrategyRegistry::standard();
        let input = CommutantInput::new(g, group, &caps);
        registry
            .strategies()
            .filter(|s| s.applicable(&input).is_ok())
            .map(|s| (s.name(), s.solve(&input, false).unwrap().dimension))
            .collect()
    }

    #[test]
    fn strategies_agree_on_small_tori() {
        for (n, expected) in [(3, 0), (4, 0), (5, 1)] {
            let g = torus_graph(n, 2).unwrap();
            let group = torus_generators(n, 2).unwrap();
            let all = dims(&g, &group);
            assert!(all.len() >= 4, "{all:?}");
            assert!(all.iter().all(|(_, d)| *d == expected), "n={n}: {all:?}");
        }
    }

    #[test]
    fn strategies_agree_on_hamming_graphs() {
        for (n, m) in [(2, 2), (3, 2), (4, 2)] {
            let g = hamming_graph(n, m).unwrap();
            let all = dims(&g, &hamming_generators(n, m).unwrap());
            assert!(all.iter().all(|(_, d)| *d == 0), "A_{n}^{m}: {all:?}");
        }
    }

    #[test]
    fn registry_lookup() {
        let r = StrategyRegistry::standard();
        assert_eq!(
            r.names(),
            vec!["orbital", "intertwining", "stabilizer", "character", "torus-closed-form"]
        );
        assert!(r.get("nope").is_none());
        let g = torus_graph(3, 2).unwrap();
        let group = torus_generators(3, 2).unwrap();
        let caps = Caps::default();
        let input = CommutantInput::new(&g, &group, &caps);
        assert!(matches!(r.run("nope", &input, false), Err(Error::UnknownStrategy(_))));
        assert!(matches!(r.run("character", &input, true), Err(Error::StrategyNotApplicable(..))));
        assert!(matches!(
            r.run("torus-closed-form", &input, false),
            Err(Error::StrategyNotApplicable(..))
        ));
        assert_eq!(r.select(&input, false).unwrap().name(), "character");
        assert_eq!(r.select(&input, true).unwrap().name(), "orbital");
    }

    #[test]
    fn bases_span_the_same_space() {
        let g = torus_graph(5, 2).unwrap();
        let group = torus_generators(5, 2).unwrap();
        let caps = Caps::default();
        let input = CommutantInput::new(&g, &group, &caps);
        let r = StrategyRegistry::standard();
        let mut all = Vec::new();
        for name in ["orbital", "intertwining", "stabilizer", "torus-closed-form"] {
            let (_, sol) = r.run(name, &input, true).unwrap();
            let basis = sol.basis.unwrap();
            assert_eq!(basis.len(), 1, "{name}");
            all.extend(basis);
        }
        assert_eq!(independent_matrices(all).len(), 1);
    }
}
