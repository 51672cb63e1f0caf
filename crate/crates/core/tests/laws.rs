//! Closure laws on randomly generated graphs and semi-simplicial sets.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use lawvere::closure::{classify, closure_recursive, closure_via_chi};
use lawvere::fincat::CategoryKind;
use lawvere::omega::OmegaObject;
use lawvere::presheaf::{FinitePresheaf, Subpresheaf};
use lawvere::topology::{construct_jw, parse_tag};
use proptest::prelude::*;

/// A graph with up to 4 vertices and 5 edges, plus a seed for a subobject.
fn arb_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<bool>)> {
    (1usize..=4).prop_flat_map(|v| {
        (Just(v), prop::collection::vec((0..v, 0..v), 0..=5), prop::collection::vec(any::<bool>(), 9))
    })
}

fn build(v: usize, edges: &[(usize, usize)]) -> FinitePresheaf {
    let c = CategoryKind::Graph.build().unwrap();
    let s = c.generator_by_name("s").unwrap();
    let mut actions = vec![Vec::new(); 2];
    actions[s] = edges.iter().map(|e| e.0).collect();
    actions[1 - s] = edges.iter().map(|e| e.1).collect();
    FinitePresheaf::from_sizes(c, &[v, edges.len()], actions).unwrap()
}

/// The subpresheaf generated by the chosen elements.
fn sub_from(p: &FinitePresheaf, pick: &[bool]) -> Subpresheaf {
    p.generated_by((0..p.total_size()).filter(|&i| pick[i % pick.len()]))
}

fn graph_omega() -> Arc<OmegaObject> {
    Arc::new(OmegaObject::new(&CategoryKind::Graph.build().unwrap()).unwrap())
}

proptest! {
    #[test]
    fn closure_is_extensive_idempotent_monotone((v, edges, pick) in arb_graph(), w in 0usize..4) {
        let p = build(v, &edges);
        let o = graph_omega();
        let tag = format!("{}{}", w >> 1, w & 1);
        let j = construct_jw(&o, &tag).unwrap();
        let a = sub_from(&p, &pick);
        let b = a.join(&sub_from(&p, &pick[3..]));
        let ca = closure_via_chi(&j, &p, &a).unwrap().closed;
        prop_assert!(a.is_subset(&ca));
        prop_assert_eq!(&closure_via_chi(&j, &p, &ca).unwrap().closed, &ca);
        prop_assert!(ca.is_subset(&closure_via_chi(&j, &p, &b).unwrap().closed));
        let bits = parse_tag(p.category(), &tag).unwrap().1;
        prop_assert_eq!(closure_recursive(&bits, &p, &a).unwrap().closed, ca);
    }

    #[test]
    fn closure_commutes_with_meets((v, edges, pick) in arb_graph(), w in 0usize..4) {
        let p = build(v, &edges);
        let j = construct_jw(&graph_omega(), &format!("{}{}", w >> 1, w & 1)).unwrap();
        let a = sub_from(&p, &pick);
        let b = sub_from(&p, &pick[4..]);
        let meet_then_close = closure_via_chi(&j, &p, &a.meet(&b)).unwrap().closed;
        let close_then_meet = closure_via_chi(&j, &p, &a).unwrap().closed.meet(&closure_via_chi(&j, &p, &b).unwrap().closed);
        prop_assert_eq!(meet_then_close, close_then_meet);
    }

    #[test]
    fn separated_means_no_parallel_edges((v, edges, _pick) in arb_graph()) {
        let p = build(v, &edges);
        let mut ends = edges.clone();
        ends.sort_unstable();
        ends.dedup();
        prop_assert_eq!(classify(&p, &[false, true]).unwrap().separated, ends.len() == edges.len());
        // j^01-complete: every ordered vertex pair has an edge.
        let complete = (0..v).all(|a| (0..v).all(|b| edges.contains(&(a, b))));
        prop_assert_eq!(classify(&p, &[false, true]).unwrap().complete, complete);
    }

    #[test]
    fn empty_and_full_are_closed_under_the_discrete_topology((v, edges, _pick) in arb_graph()) {
        let p = build(v, &edges);
        let j = construct_jw(&graph_omega(), "00").unwrap();
        let empty = p.subpresheaf(FixedBitSet::with_capacity(p.total_size())).unwrap();
        prop_assert_eq!(closure_via_chi(&j, &p, &empty).unwrap().closed, empty);
        let full = p.full_sub();
        prop_assert_eq!(closure_via_chi(&j, &p, &full).unwrap().closed, full);
    }
}
