use proptest::prelude::*;

use cyclespace::caps::Caps;
use cyclespace::graph::{
    build_graph, canonical_graph, cut_basis, cycle_basis, incidence_matrix, shortest_path_distances, GraphFile,
    MetricSpace, OrientedGraph,
};
use cyclespace::invariant::EdgeSpaces;
use cyclespace::linalg::{dot, span_rank};
use cyclespace::transport::{dual_certificate, flow_cost, tc_norm, TransportationProblem};
use cyclespace::Rational;

/// Connected graph on `n` vertices: a random tree plus extra chords, with
/// random orientations and weights.
fn graph_strategy() -> impl Strategy<Value = OrientedGraph> {
    (3usize..=7).prop_flat_map(|n| {
        let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
        let extra = proptest::collection::vec((0..n, 0..n), 0..8);
        let weights = proptest::collection::vec((1i64..=9, 1i64..=3), n + 8);
        let flips = proptest::collection::vec(any::<bool>(), n + 8);
        (Just(n), parents, extra, weights, flips).prop_map(|(n, parents, extra, weights, flips)| {
            let mut pairs: Vec<(usize, usize)> = parents.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            for (a, b) in extra {
                let (a, b) = (a.min(b), a.max(b));
                if a != b && !pairs.iter().any(|&(x, y)| (x.min(y), x.max(y)) == (a, b)) {
                    pairs.push((a, b));
                }
            }
            let edges = pairs
                .into_iter()
                .enumerate()
                .map(|(i, (a, b))| {
                    let (t, h) = if flips[i] { (b, a) } else { (a, b) };
                    (t, h, Rational::new(weights[i].0, weights[i].1))
                })
                .collect();
            build_graph(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cycle_and_cut_spaces_are_complementary(g in graph_strategy()) {
        let d = incidence_matrix(&g);
        let cycles = cycle_basis(&g);
        let cuts = cut_basis(&g);
        prop_assert_eq!(cycles.len(), g.edge_count() + 1 - g.vertex_count());
        prop_assert_eq!(span_rank(&cycles), cycles.len());
        prop_assert_eq!(span_rank(&cuts), cuts.len());
        for z in &cycles {
            prop_assert!(d.mul_vec(z).iter().all(Rational::is_zero));
            for x in &cuts {
                prop_assert!(dot(z, x).is_zero());
            }
        }
        let s = EdgeSpaces::new(&g, &Caps::default()).unwrap();
        prop_assert_eq!(s.p_orth.mul(&s.p_orth), s.p_orth.clone());
        prop_assert_eq!(s.p_orth.transpose(), s.p_orth.clone());
        prop_assert!(d.mul(&s.p_orth).is_zero());
        prop_assert_eq!(s.p_orth.trace(), Rational::from_integer(cycles.len() as i64));
    }

    #[test]
    fn point_masses_cost_their_distance(g in graph_strategy(), u in 0usize..7, v in 0usize..7) {
        let n = g.vertex_count();
        let (u, v) = (u % n, v % n);
        let d = shortest_path_distances(&g);
        let f = TransportationProblem::point_pair(u, v);
        let (norm, plan) = tc_norm(&f, &g).unwrap();
        prop_assert_eq!(&norm, &d[u][v]);
        prop_assert_eq!(flow_cost(&g, &plan.flow), norm.clone());
        let w = dual_certificate(&f, &g).unwrap();
        prop_assert!(w.is_valid(&g));
        prop_assert_eq!(w.pairing(&f.to_dense(n).unwrap()), norm);
    }

    #[test]
    fn homogeneity(g in graph_strategy(), u in 0usize..7, v in 0usize..7, k in -5i64..=5) {
        let n = g.vertex_count();
        let base = TransportationProblem::point_pair(u % n, v % n).to_dense(n).unwrap();
        let scaled: Vec<Rational> = base.iter().map(|x| x * Rational::new(k, 3)).collect();
        let lhs = tc_norm(&TransportationProblem::from_dense(&scaled).unwrap(), &g).unwrap().0;
        let rhs = tc_norm(&TransportationProblem::from_dense(&base).unwrap(), &g).unwrap().0 * Rational::new(k.abs(), 3);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_graph_recovers_the_metric(g in graph_strategy()) {
        let metric = MetricSpace::of_graph(&g);
        let c = canonical_graph(&metric).unwrap();
        prop_assert_eq!(shortest_path_distances(&c), metric.distances().to_vec());
        prop_assert!(c.edge_count() <= g.edge_count());
    }

    #[test]
    fn graph_files_round_trip(g in graph_strategy()) {
        let back = OrientedGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(GraphFile::from_graph(&back), GraphFile::from_graph(&g));
    }
}
