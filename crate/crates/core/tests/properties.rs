//! Randomized invariants over small connected multigraphs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use treedep_core::kirchhoff::{determinant_and_adjugate, reduced_laplacian};
use treedep_core::modular::edge_tree_counts;
use treedep_core::verify::{enumerate_spanning_trees, OracleBudget};
use treedep_core::{density_report, parse_graph, serialize_graph, tau, tau_edge, EdgeRef, Multigraph};

/// A random spanning tree on `n` vertices plus extra parallel or chord records.
fn connected_multigraph(max_n: usize, max_extra: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
        let tree_mult = proptest::collection::vec(1u64..=3, n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, 1u64..=2), 0..=max_extra);
        (Just(n), parents, tree_mult, extra).prop_map(|(n, parents, mults, extra)| {
            let mut g = Multigraph::new(n).unwrap();
            for (i, (&p, &m)) in parents.iter().zip(&mults).enumerate() {
                g.add_edge(i + 1, p, m).unwrap();
            }
            for (u, v, m) in extra {
                if u != v {
                    g.add_edge(u, v, m).unwrap();
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deletion_contraction(g in connected_multigraph(7, 6), pick in any::<prop::sample::Index>()) {
        let e = EdgeRef(pick.index(g.edges().len()));
        let deleted = g.delete(e).unwrap();
        let contracted = g.contract(e).unwrap();
        let m = g.edges()[e.0].multiplicity();
        // Splitting on one unit: trees avoiding it, plus trees through it.
        prop_assert_eq!(tau(&g), tau(&deleted) + tau_edge(&g, e).unwrap());
        prop_assert_eq!(tau_edge(&g, e).unwrap(), tau(&contracted));
        // Splitting on the whole bundle.
        let without = g.delete_bundle(e).unwrap();
        prop_assert_eq!(tau(&g), tau(&without) + tau(&contracted) * m);
    }

    #[test]
    fn foster_sum(g in connected_multigraph(8, 8)) {
        let r = density_report(&g).unwrap();
        let sum: BigRational = r
            .per_edge
            .iter()
            .zip(g.edges())
            .map(|(d, rec)| &d.density * BigInt::from(rec.multiplicity()))
            .sum();
        prop_assert_eq!(sum, BigRational::from_integer(BigInt::from(g.vertex_count() - 1)));
    }

    #[test]
    fn text_round_trip(g in connected_multigraph(8, 8)) {
        let back = parse_graph(&serialize_graph(&g)).unwrap();
        prop_assert_eq!(back.canonical_edges(), g.canonical_edges());
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
    }

    #[test]
    fn bundle_equals_separate_units(g in connected_multigraph(6, 5)) {
        let mut split = Multigraph::new(g.vertex_count()).unwrap();
        let mut origin = Vec::new();
        for (i, rec) in g.edges().iter().enumerate() {
            let (u, v) = rec.endpoints();
            for _ in 0..rec.multiplicity() {
                split.add_edge(u, v, 1).unwrap();
                origin.push(i);
            }
        }
        let bundled = density_report(&g).unwrap();
        let unrolled = density_report(&split).unwrap();
        prop_assert_eq!(&bundled.tau, &unrolled.tau);
        prop_assert_eq!(&bundled.dep, &unrolled.dep);
        for (d, &i) in unrolled.per_edge.iter().zip(&origin) {
            prop_assert_eq!(&d.density, &bundled.per_edge[i].density);
        }
    }

    #[test]
    fn contraction_drops_one_vertex(g in connected_multigraph(8, 8), pick in any::<prop::sample::Index>()) {
        let e = EdgeRef(pick.index(g.edges().len()));
        let c = g.contract(e).unwrap();
        prop_assert_eq!(c.vertex_count(), g.vertex_count() - 1);
        prop_assert!(c.is_connected());
        prop_assert_eq!(c.edge_units(), g.edge_units() - g.edges()[e.0].multiplicity()
            - parallel_units(&g, e));
    }

    #[test]
    fn report_matches_contraction(g in connected_multigraph(7, 7)) {
        let r = density_report(&g).unwrap();
        prop_assert_eq!(&r.tau, &tau(&g));
        for e in g.edge_refs() {
            prop_assert_eq!(r.tau_edge_of(e), &tau_edge(&g, e).unwrap());
        }
        prop_assert!(r.argmax.iter().all(|&e| r.density_of(e) == &r.dep));
    }

    #[test]
    fn enumeration_matches_determinant(g in connected_multigraph(7, 5)) {
        let budget = OracleBudget::default();
        prop_assume!(budget.admits(&g));
        prop_assert_eq!(enumerate_spanning_trees(&g, &budget).unwrap(), tau(&g));
    }

    #[test]
    fn modular_matches_exact_adjugate(g in connected_multigraph(9, 12)) {
        let (det, adj) = determinant_and_adjugate(&reduced_laplacian(&g)).unwrap();
        let ground = g.vertex_count() - 1;
        let entry = |i: usize, j: usize| {
            if i == ground || j == ground { BigInt::zero() } else { adj[i][j].clone() }
        };
        let (total, through) = edge_tree_counts(&g);
        prop_assert_eq!(BigInt::from(total), det);
        for (count, rec) in through.into_iter().zip(g.edges()) {
            let (u, v) = rec.endpoints();
            prop_assert_eq!(BigInt::from(count), entry(u, u) + entry(v, v) - entry(u, v) * 2);
        }
    }
}

/// Units on other records joining the same two endpoints as `e`; these
/// become loops under contraction.
fn parallel_units(g: &Multigraph, e: EdgeRef) -> u64 {
    let ends = g.edges()[e.0].endpoints();
    g.edges()
        .iter()
        .enumerate()
        .filter(|&(i, rec)| i != e.0 && rec.endpoints() == ends)
        .map(|(_, rec)| rec.multiplicity())
        .sum()
}
