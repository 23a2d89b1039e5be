mod common;

use common::*;
use num_bigint::BigInt;
use pinchlink_core::{Attachment, Obstruction, SingularLinkDescription};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rechoose_parallels(rng: &mut impl Rng, s: &SingularLinkDescription) -> SingularLinkDescription {
    // l -> l + n·m keeps the meridian column
    let attachments = s
        .attachments()
        .iter()
        .map(|a| {
            let n = rng.gen_range(-4..=4);
            let [[x, y], [z, w]] = a.matrix;
            Attachment::new(
                a.curve.clone(),
                a.sheet,
                a.arrow.clone(),
                [[x, y + n * x], [z, w + n * z]],
            )
        })
        .collect();
    SingularLinkDescription::new(s.exterior().clone(), s.curves().to_vec(), attachments).unwrap()
}

proptest! {
    #[test]
    fn rank_at_least_extra_branches(seed in any::<u64>()) {
        let mut r = rng(seed);
        let degrees = random_degrees(&mut r, 6);
        let s = random_link(&mut r, degrees);
        let bound: usize = s.curves().iter().map(|c| c.branch_count() - 1).sum();
        let h1 = s.h1_singular_link();
        prop_assert!(h1.rank() >= bound, "{} < {}", h1, bound);
        let report = s.obstruction_report().unwrap();
        prop_assert_eq!(report.h1, h1);
    }

    #[test]
    fn order_at_least_degree(seed in any::<u64>(), d in 2usize..=9) {
        let mut r = rng(seed);
        let s = random_link(&mut r, vec![vec![d]]);
        let h1 = s.h1_singular_link();
        prop_assert!(h1.order().is_none_or(|o| o >= BigInt::from(d)), "{}", h1);
        let report = s.obstruction_report().unwrap();
        prop_assert_eq!(report.obstruction, Obstruction::OrderBound { curve: "c0".into(), bound: d });
    }

    #[test]
    fn ordering_does_not_matter(seed in any::<u64>()) {
        let mut r = rng(seed);
        let degrees = random_degrees(&mut r, 6);
        let s = random_link(&mut r, degrees);
        let t = shuffled(&mut r, &s);
        prop_assert_eq!(s.h1_singular_link(), t.h1_singular_link());
        prop_assert_eq!(s.is_topological_manifold(), t.is_topological_manifold());
        let (a, b) = (s.normalize().unwrap(), t.normalize().unwrap());
        prop_assert_eq!(a.h1(), b.h1());
        prop_assert_eq!(a.components.len(), b.components.len());
    }

    #[test]
    fn parallel_choice_is_irrelevant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let degrees = random_degrees(&mut r, 6);
        let s = random_link(&mut r, degrees);
        let t = rechoose_parallels(&mut r, &s);
        prop_assert_eq!(s.is_topological_manifold(), t.is_topological_manifold());
        let (rs, rt) = (s.obstruction_report().unwrap(), t.obstruction_report().unwrap());
        prop_assert_eq!(
            core::mem::discriminant(&rs.obstruction),
            core::mem::discriminant(&rt.obstruction)
        );
        // the parallel relation changes by a multiple of ψ(m) = 0
        prop_assert_eq!(rs.h1, rt.h1);
    }

    #[test]
    fn normalization_keeps_component_count(seed in any::<u64>()) {
        let mut r = rng(seed);
        let degrees = random_degrees(&mut r, 6);
        let s = random_link(&mut r, degrees);
        let n = s.normalize().unwrap();
        prop_assert_eq!(n.components.len(), s.exterior().component_count());
        for c in &n.components {
            prop_assert_eq!(c.reduction.graph.h1(), c.filled.h1());
        }
    }

    #[test]
    fn manifold_links_equal_their_normalization(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let degrees = (0..n).map(|_| vec![1]).collect();
        let s = random_link(&mut r, degrees);
        prop_assert!(s.is_topological_manifold());
        prop_assert_eq!(s.h1_singular_link(), s.normalize().unwrap().h1());
        prop_assert_eq!(s.obstruction_report().unwrap().obstruction, Obstruction::Manifold);
    }
}
