use proptest::prelude::*;

use plane_packing::constructions::{
    double_star_pack, three_trees, two_paths_traced, two_trees, zigzag_alternating_path, Side,
};
use plane_packing::crossing::{convex_position_family, crossing_family_greedy, max_crossing_family_exact};
use plane_packing::geom::{find_j_edge, halving_split, HalfPoint, Point, PointSet};
use plane_packing::io::{
    convex_points, packing_from_str, packing_to_string, pointset_from_str, pointset_to_string, random_points,
    PackingDoc, Provenance,
};
use plane_packing::packing::{verify_packing, Ground};
use plane_packing::wheel::{wheel_partition, wheel_zigzag_paths};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

fn left_of(a: Point, b: Point, c: Point) -> bool {
    (b.x - a.x) as i128 * (c.y - a.y) as i128 - (b.y - a.y) as i128 * (c.x - a.x) as i128 > 0
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn two_trees_verify(n in 4usize..40, seed in any::<u64>()) {
        let s = random_points(n, seed).unwrap();
        let p = two_trees(&s).unwrap();
        prop_assert_eq!(p.members.len(), 2);
        prop_assert!(verify_packing(&p, false).all_ok());
    }

    #[test]
    fn three_trees_verify(n in 6usize..30, seed in any::<u64>()) {
        let s = random_points(n, seed).unwrap();
        let p = three_trees(&s).unwrap();
        prop_assert_eq!(p.members.len(), 3);
        let r = verify_packing(&p, false);
        prop_assert!(r.all_ok(), "{}", r);
    }

    #[test]
    fn two_paths_verify(n in 4usize..40, seed in any::<u64>()) {
        let s = random_points(n, seed).unwrap();
        let o = two_paths_traced(&s).unwrap();
        prop_assert!(verify_packing(&o.packing, false).all_ok());
    }

    #[test]
    fn double_stars_from_greedy_family(n in 4usize..40, seed in any::<u64>()) {
        let s = random_points(n, seed).unwrap();
        let f = crossing_family_greedy(&s, 0);
        prop_assert!(f.is_valid(&s));
        let p = double_star_pack(&s, &f).unwrap();
        prop_assert_eq!(p.members.len(), f.len());
        prop_assert!(verify_packing(&p, false).all_ok());
    }

    #[test]
    fn convex_sets_take_half(m in 2usize..20, seed in any::<u64>()) {
        let s = convex_points(2 * m, seed).unwrap();
        let p = double_star_pack(&s, &convex_position_family(&s)).unwrap();
        prop_assert_eq!(p.members.len(), m);
        prop_assert!(verify_packing(&p, false).all_ok());
    }

    #[test]
    fn family_sizes_are_ordered(n in 4usize..10, seed in any::<u64>()) {
        let s = random_points(n, seed).unwrap();
        let exact = max_crossing_family_exact(&s, 10_000_000).unwrap().len();
        let greedy = crossing_family_greedy(&s, 0).len();
        let convex = convex_position_family(&s).len();
        prop_assert!(exact >= greedy && greedy >= convex, "{} {} {}", exact, greedy, convex);
    }

    #[test]
    fn zigzag_alternates(n in 4usize..30, seed in any::<u64>()) {
        let s = random_points(n, seed).unwrap();
        let o = two_paths_traced(&s).unwrap();
        let others: Vec<usize> = (0..n).filter(|&i| i != o.p).collect();
        let order = plane_packing::geom::clockwise_from_extreme(o.p, &s, &others);
        let (a, b) = order.split_at((n - 1) / 2);
        let z = zigzag_alternating_path(&s, a, b, o.p, Side::B).unwrap();
        prop_assert_eq!(z.vertices.len(), n);
        prop_assert!(b.contains(&z.q));
        for w in z.vertices[1..].windows(2) {
            prop_assert!(a.contains(&w[0]) != a.contains(&w[1]), "{:?} stays on one side", w);
        }
    }

    #[test]
    fn j_edge_has_j_points_left(n in 3usize..40, seed in any::<u64>(), frac in 0.0f64..1.0) {
        let s = random_points(n, seed).unwrap();
        let j = ((n - 2) as f64 * frac) as usize;
        let e = find_j_edge(&s, j).unwrap();
        let brute: Vec<usize> = (0..n)
            .filter(|&w| w != e.u && w != e.v && left_of(s.point(e.u), s.point(e.v), s.point(w)))
            .collect();
        prop_assert_eq!(&e.left, &brute);
        prop_assert_eq!(brute.len(), j);
    }

    #[test]
    fn halving_line_balances(n in 1usize..60, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let s = random_points(n + 1, seed).unwrap();
        let c = pick.index(n + 1);
        let pivot = HalfPoint::from_point(s.point(c));
        let r: Vec<Point> = (0..=n).filter(|&i| i != c).map(|i| s.point(i)).collect();
        let split = halving_split(pivot, &r);
        prop_assert_eq!(split.left.len() + split.right.len(), r.len());
        prop_assert!(split.left.len() <= r.len().div_ceil(2));
        prop_assert!(split.right.len() <= r.len().div_ceil(2));
        for &i in &split.left {
            prop_assert!(split.side(pivot, r[i]) > 0);
        }
        for &i in &split.right {
            prop_assert!(split.side(pivot, r[i]) < 0);
        }
    }

    #[test]
    fn codec_round_trips(n in 1usize..50, seed in any::<u64>()) {
        let s = random_points(n, seed).unwrap();
        let g = Ground::Points(s.clone());
        let text = pointset_to_string(&g);
        prop_assert_eq!(pointset_from_str(&text).unwrap(), g.clone());
        if n >= 4 {
            let doc = PackingDoc {
                packing: two_trees(&s).unwrap(),
                provenance: Provenance { method: "two-trees".into(), seed: Some(seed), ..Provenance::default() },
                points_file: None,
            };
            let text = packing_to_string(&doc);
            let back = packing_from_str(&text, None).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(packing_to_string(&back), text);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn wheel_outputs_verify(n in 3usize..40) {
        let r = verify_packing(&wheel_partition(n).unwrap(), true);
        prop_assert!(r.all_ok(), "{}", r);
        prop_assert!(verify_packing(&wheel_zigzag_paths(n).unwrap(), false).all_ok());
    }

    #[test]
    fn translation_keeps_counts(seed in any::<u64>(), dx in -1000i64..1000, dy in -1000i64..1000) {
        let s = random_points(9, seed).unwrap();
        let moved = PointSet::new(s.points().iter().map(|p| Point::new(p.x + dx, p.y + dy)).collect()).unwrap();
        prop_assert_eq!(
            max_crossing_family_exact(&s, 10_000_000).unwrap().len(),
            max_crossing_family_exact(&moved, 10_000_000).unwrap().len()
        );
        prop_assert_eq!(crossing_family_greedy(&s, 0), crossing_family_greedy(&moved, 0));
    }
}
