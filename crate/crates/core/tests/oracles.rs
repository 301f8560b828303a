mod common;

use nbhdcx::complex::{
    closed_set_poset, closure, gamma, is_face, is_graph_face, lovasz_retract, neighborhood_complex,
};
use nbhdcx::graph::{Graph, VertexSet};
use nbhdcx::homology::{
    betti_field2, boundary_matrices, compute_homology, graph_homology, Coefficients,
    HomologyRoute,
};
use nbhdcx::Caps;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn full_dim(g: &Graph) -> usize {
    g.vertex_count().saturating_sub(1)
}

#[test]
fn pipeline_matches_naive_on_small_connected_graphs() {
    let graphs = common::small_connected_graphs();
    assert_eq!(graphs.len(), 31);
    for g in &graphs {
        let h = graph_homology(g, HomologyRoute::Direct, full_dim(g), Coefficients::Both, &Caps::default())
            .unwrap();
        common::check_against_oracle(g, &h.betti, &h.torsion).unwrap();
        assert_eq!(h.field2.as_ref().unwrap(), &common::naive_betti_mod(g, full_dim(g), 2));
    }
}

#[test]
fn known_complexes() {
    // KG(2,1) is the Petersen graph: chromatic number 3, so N[G] is
    // connected; the naive oracle pins down the rest
    let pet = nbhdcx::graph::make_named_graph(nbhdcx::graph::Family::Kneser, &[2, 1]).unwrap();
    let h = graph_homology(&pet, HomologyRoute::Retract, 3, Coefficients::Z, &Caps::default()).unwrap();
    assert_eq!(h.betti[0], 0);
    common::check_against_oracle(&pet, &h.betti, &h.torsion).unwrap();
    // a disjoint union of edges: N[G] is a set of points
    let m = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
    let h = graph_homology(&m, HomologyRoute::Direct, 0, Coefficients::Z, &Caps::default()).unwrap();
    assert_eq!(h.betti, vec![5]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn naive_oracle_agrees(g in arb_graph(7)) {
        let h = graph_homology(&g, HomologyRoute::Direct, full_dim(&g), Coefficients::Both, &Caps::default()).unwrap();
        prop_assert!(common::check_against_oracle(&g, &h.betti, &h.torsion).is_ok());
    }

    #[test]
    fn retract_route_agrees_with_direct(g in arb_graph(9)) {
        let d = full_dim(&g);
        let a = graph_homology(&g, HomologyRoute::Direct, d, Coefficients::Both, &Caps::default()).unwrap();
        let b = graph_homology(&g, HomologyRoute::Retract, d, Coefficients::Both, &Caps::default()).unwrap();
        prop_assert_eq!(&a.betti, &b.betti);
        prop_assert_eq!(&a.torsion, &b.torsion);
        prop_assert_eq!(&a.field2, &b.field2);
    }

    #[test]
    fn explicit_retract_complex_agrees(g in arb_graph(8)) {
        let caps = Caps::default();
        let p = closed_set_poset(&g, &caps).unwrap();
        let r = lovasz_retract(&p, &caps).unwrap();
        let d = full_dim(&g);
        let a = compute_homology(&r, d, Coefficients::Z, &caps).unwrap();
        let b = graph_homology(&g, HomologyRoute::Direct, d, Coefficients::Z, &caps).unwrap();
        prop_assert_eq!(a.betti, b.betti);
        prop_assert_eq!(a.torsion, b.torsion);
    }

    #[test]
    fn gamma_laws(g in arb_graph(10), a in any::<u16>(), b in any::<u16>()) {
        let n = g.vertex_count();
        let full = VertexSet::full(n).bits();
        let s = VertexSet::from_bits(a as u128 & full);
        let t = VertexSet::from_bits((a | b) as u128 & full);
        // order reversing
        prop_assert!(gamma(&g, t).unwrap().is_subset(gamma(&g, s).unwrap()));
        // extensive closure, idempotent, and Γ³ = Γ
        if !s.is_empty() && is_graph_face(&g, s).unwrap() {
            let c = closure(&g, s).unwrap();
            prop_assert!(s.is_subset(c));
            prop_assert_eq!(closure(&g, c).unwrap(), c);
        }
        let g1 = gamma(&g, s).unwrap();
        prop_assert_eq!(gamma(&g, gamma(&g, g1).unwrap()).unwrap(), g1);
    }

    #[test]
    fn faces_are_sets_with_common_neighbors(g in arb_graph(9), a in any::<u16>()) {
        let n = g.vertex_count();
        let s = VertexSet::from_bits(a as u128 & VertexSet::full(n).bits());
        let c = neighborhood_complex(&g).unwrap();
        let verts: Vec<u32> = s.iter().map(|v| v as u32).collect();
        let face = !s.is_empty() && is_graph_face(&g, s).unwrap();
        prop_assert_eq!(face, !verts.is_empty() && is_face(&c, &verts));
        prop_assert_eq!(face, !s.is_empty() && !gamma(&g, s).unwrap().is_empty());
    }

    #[test]
    fn universal_coefficients(g in arb_graph(9)) {
        let c = neighborhood_complex(&g).unwrap();
        let d = c.dimension().max(0) as usize;
        let data = boundary_matrices(&c, d, &Caps::default()).unwrap();
        let z = compute_homology(&c, d, Coefficients::Z, &Caps::default()).unwrap();
        let f2 = betti_field2(&data);
        for k in 0..=d {
            let even = |dim: usize| z.torsion[dim].iter().filter(|&&t| t % 2 == 0).count() as u64;
            let below = if k > 0 { even(k - 1) } else { 0 };
            prop_assert_eq!(f2[k], z.betti[k] + even(k) + below);
        }
    }

    #[test]
    fn truncation_is_a_prefix(g in arb_graph(9), cut in 0usize..4) {
        let d = full_dim(&g);
        let full = graph_homology(&g, HomologyRoute::Direct, d, Coefficients::Both, &Caps::default()).unwrap();
        let cut = cut.min(d);
        let part = graph_homology(&g, HomologyRoute::Direct, cut, Coefficients::Both, &Caps::default()).unwrap();
        prop_assert_eq!(&part.betti[..], &full.betti[..=cut]);
        prop_assert_eq!(&part.torsion[..], &full.torsion[..=cut]);
        let dim = neighborhood_complex(&g).unwrap().dimension();
        prop_assert_eq!(part.truncated, dim > cut as i64);
    }
}
