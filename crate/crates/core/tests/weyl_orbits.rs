use lambdag::weyl::{orbit, orbit_by_reflections, WeylGroup};
use lambdag::{RootSystem, RootType, Weight};
use proptest::prelude::*;

fn small_types() -> impl Strategy<Value = (RootType, usize)> {
    prop::sample::select(RootType::all_up_to_rank(4))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn reflection_orbit_matches_group_orbit((t, r) in small_types(), coords in prop::collection::vec(-3i64..=3, 4)) {
        let rs = RootSystem::new(t, r).unwrap();
        let w = WeylGroup::generate(&rs).unwrap();
        let mu = Weight::new(coords[..r].to_vec());
        let by_group = orbit(&w, &mu);
        let mut by_reflections = orbit_by_reflections(&rs, &mu);
        by_reflections.sort();
        prop_assert_eq!(by_group.into_iter().collect::<Vec<_>>(), by_reflections.clone());
        prop_assert_eq!(w.order % by_reflections.len(), 0);
        let (dom, _) = rs.dominant_rep(&mu);
        prop_assert!(dom.is_dominant());
        prop_assert_eq!(by_reflections.iter().filter(|x| x.is_dominant()).count(), 1);
        prop_assert!(by_reflections.contains(&dom));
    }

    #[test]
    fn inner_product_is_invariant((t, r) in small_types(), a in prop::collection::vec(-3i64..=3, 4), b in prop::collection::vec(-3i64..=3, 4), i in 0usize..4) {
        let rs = RootSystem::new(t, r).unwrap();
        let (a, b) = (Weight::new(a[..r].to_vec()), Weight::new(b[..r].to_vec()));
        let i = i % r;
        prop_assert_eq!(rs.inner(&rs.simple_reflect(i, &a), &rs.simple_reflect(i, &b)), rs.inner(&a, &b));
    }
}

#[test]
fn weyl_orders() {
    for (t, r, order) in [
        (RootType::A, 4, 120),
        (RootType::B, 4, 384),
        (RootType::D, 5, 1920),
        (RootType::E, 6, 51840),
        (RootType::F, 4, 1152),
        (RootType::G, 2, 12),
    ] {
        let rs = RootSystem::new(t, r).unwrap();
        assert_eq!(rs.weyl_order_from_exponents(), order);
        assert_eq!(WeylGroup::generate(&rs).unwrap().order as u128, order);
    }
}
