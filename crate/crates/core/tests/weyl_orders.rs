use std::sync::Arc;

use latmon::*;

fn simple_roots(kind: StandardKind) -> VanishingSet {
    let l = Arc::new(Lattice::standard(&kind, -1).unwrap());
    let simple = (0..l.rank()).map(|i| LatticeVector::basis(l.rank(), i)).collect();
    VanishingSet::new(l, simple).unwrap()
}

#[test]
fn stabilizer_route_matches_enumeration() {
    for (kind, order) in [(StandardKind::A(2), 6u128), (StandardKind::A(4), 120), (StandardKind::D(4), 192), (StandardKind::D(5), 1920), (StandardKind::E(6), 51840)] {
        let d = simple_roots(kind.clone());
        assert_eq!(d.reflection_group_order_by_stabilizers().unwrap(), order, "{kind:?}");
        assert_eq!(d.reflection_group_order().unwrap() as u128, order, "{kind:?}");
    }
}

#[test]
fn e7_and_e8_by_stabilizers() {
    assert_eq!(simple_roots(StandardKind::E(7)).reflection_group_order_by_stabilizers().unwrap(), 2_903_040);
    let e8 = simple_roots(StandardKind::E(8));
    assert_eq!(e8.reflection_group_order_by_stabilizers().unwrap(), 696_729_600);
    // the same group from all 240 roots
    let l = Arc::clone(e8.lattice());
    let all = VanishingSet::new(Arc::clone(&l), l.vectors_of_square(&Int::from(-2)).unwrap()).unwrap();
    assert_eq!(all.reflection_group_order_by_stabilizers().unwrap(), 696_729_600);
}

#[test]
fn enumeration_cap_is_reported() {
    assert!(matches!(simple_roots(StandardKind::E(8)).reflection_group_order_capped(10_000), Err(LatticeError::Unsupported(_))));
}

/// Full element-by-element enumeration of W(E7); slow, run with `--ignored`.
#[test]
#[ignore]
fn e7_by_enumeration() {
    assert_eq!(simple_roots(StandardKind::E(7)).reflection_group_order_capped(3_000_000).unwrap(), 2_903_040);
}
