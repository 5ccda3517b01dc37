mod common;

use chromatic::classify::{expected_profile, Classification};
use chromatic::frobenius::{act, ClusterMap, EpsilonTable, FrobeniusAction};
use chromatic::model::build;
use chromatic::picture::{ChromaticClusterPicture, Colour, Depth, Index};
use chromatic::verify::GraphShape;
use proptest::prelude::*;
use rand::Rng;

fn picture() -> impl Strategy<Value = ChromaticClusterPicture> {
    any::<u64>().prop_map(|seed| common::random_picture(&mut common::rng(seed), 12, true))
}

fn random_eps(pic: &ChromaticClusterPicture, cls: &Classification<'_>, seed: u64) -> EpsilonTable {
    let mut r = common::rng(seed);
    let mut raw = EpsilonTable::new();
    for c in pic.proper_clusters() {
        let e1: i8 = if r.gen_bool(0.5) { 1 } else { -1 };
        let e2: i8 = if r.gen_bool(0.5) { 1 } else { -1 };
        raw.set(c, Index::One, Some(e1));
        raw.set(c, Index::Two, Some(e2));
        raw.set(c, Index::H, Some(e1 * e2));
    }
    // Values depend only on the star, as they do for a Galois element.
    let mut eps = EpsilonTable::new();
    for c in pic.proper_clusters() {
        for i in Index::ALL {
            eps.set(c, i, raw.entry(cls.star(c, i), i).unwrap());
        }
    }
    eps
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parity_profile_follows_colour(pic in picture()) {
        let cls = Classification::new(&pic);
        for c in pic.proper_clusters() {
            prop_assert_eq!(cls.parity_profile(c), expected_profile(cls.colour(c)));
        }
    }

    #[test]
    fn text_and_json_round_trip(pic in picture()) {
        let text = pic.to_text();
        prop_assert_eq!(ChromaticClusterPicture::parse(&text).unwrap().to_text(), text.clone());
        prop_assert_eq!(ChromaticClusterPicture::from_json(&pic.to_json()).unwrap().to_text(), text);
    }

    #[test]
    fn principality_matches_cover_oracle(pic in picture()) {
        let cls = Classification::new(&pic);
        for c in pic.proper_clusters() {
            let shape = common::cover_shape(&pic, c);
            prop_assert_eq!(cls.is_principal(c), shape.principal(), "{} in {}", pic.label(c), pic);
        }
    }

    #[test]
    fn vertices_match_cover_oracle(pic in picture()) {
        let Ok(graph) = build(&pic) else { return Ok(()) };
        for c in pic.proper_clusters().filter(|&c| Classification::new(&pic).is_principal(c)) {
            let shape = common::cover_shape(&pic, c);
            let vs = graph.vertices_of(c);
            prop_assert_eq!(vs.len(), shape.components, "{} in {}", pic.label(c), pic);
            for v in vs {
                prop_assert_eq!(i64::from(graph.vertices[v].genus), shape.genus);
            }
        }
    }

    #[test]
    fn genus_balance(pic in picture()) {
        let Ok(graph) = build(&pic) else { return Ok(()) };
        let n1 = pic.leaf_count(Colour::Red);
        let n2 = pic.leaf_count(Colour::Blue);
        let g = |n: usize| (n.max(1) - 1) as i64 / 2;
        let target = g(n1) + g(n2) + g(n1 + n2);
        prop_assert_eq!(graph.total_genus() as i64 + graph.betti(), target, "{}", pic);
        prop_assert_eq!(graph.components(), 1);
    }

    #[test]
    fn scaling_equivariance(pic in picture(), e in 2i64..=3) {
        let factor = Depth::from_integer(e);
        let scaled = pic.scaled(factor).unwrap();
        match (build(&pic), build(&scaled)) {
            (Ok(g), Ok(h)) => prop_assert_eq!(GraphShape::of(&g.with_lengths_scaled(factor)), GraphShape::of(&h)),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{}: {:?} vs {:?}", pic, a.err(), b.err()),
        }
    }

    #[test]
    fn identity_acts_trivially(pic in picture()) {
        let Ok(graph) = build(&pic) else { return Ok(()) };
        let cls = Classification::new(&pic);
        let auto = act(&cls, &graph, &FrobeniusAction::identity(&pic)).unwrap();
        prop_assert!(auto.is_identity());
    }

    #[test]
    fn action_is_functorial(pic in picture(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let Ok(graph) = build(&pic) else { return Ok(()) };
        let cls = Classification::new(&pic);
        let phi = FrobeniusAction { perm: ClusterMap::identity(), eps: random_eps(&pic, &cls, s1) };
        let psi = FrobeniusAction { perm: ClusterMap::identity(), eps: random_eps(&pic, &cls, s2) };
        let (Ok(a), Ok(b)) = (act(&cls, &graph, &phi), act(&cls, &graph, &psi)) else { return Ok(()) };
        let both = act(&cls, &graph, &phi.then(&psi, &cls)).unwrap();
        prop_assert_eq!(both, b.compose(&a));
        // ε values are signs, so every such action is an involution.
        prop_assert!(a.compose(&a).is_identity());
    }
}
