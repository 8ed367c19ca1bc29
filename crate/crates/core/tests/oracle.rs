//! Exact search checked against plain brute force on tiny instances.

use plane_packing::geom::{Point, PointSet};
use plane_packing::io::random_points;
use plane_packing::oracle::{
    enumerate_masks, enumerate_plane_spanning_structures, max_packing_exact_shuffled,
    max_path_packing_exact, max_tree_packing_exact, MaskSpace,
};
use plane_packing::packing::{
    all_edges, verify_spanning_path, verify_spanning_tree, EdgeRef, GraphStructure, Ground, StructureKind,
};
use plane_packing::wheel::WheelConfig;

fn pts(v: &[(i64, i64)]) -> PointSet {
    PointSet::new(v.iter().map(|&p| Point::from(p)).collect()).unwrap()
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    (b.x - a.x) as i128 * (c.y - a.y) as i128 - (b.y - a.y) as i128 * (c.x - a.x) as i128
}

fn cross(s: &PointSet, e: EdgeRef, f: EdgeRef) -> bool {
    if e.shares_endpoint(f) {
        return false;
    }
    let (a, b, c, d) = (s.point(e.a()), s.point(e.b()), s.point(f.a()), s.point(f.b()));
    orient(a, b, c).signum() * orient(a, b, d).signum() < 0 && orient(c, d, a).signum() * orient(c, d, b).signum() < 0
}

fn plane(s: &PointSet, edges: &[EdgeRef]) -> bool {
    edges.iter().enumerate().all(|(i, &e)| edges[i + 1..].iter().all(|&f| !cross(s, e, f)))
}

fn connected(n: usize, edges: &[EdgeRef]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in edges {
        let (a, b) = (find(&mut parent, e.a()), find(&mut parent, e.b()));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// Every (n-1)-subset of edges that is connected and crossing-free.
fn brute_trees(s: &PointSet) -> Vec<Vec<EdgeRef>> {
    let n = s.len();
    let edges = all_edges(n);
    let m = edges.len();
    let mut out = Vec::new();
    for mask in 0u64..(1 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let chosen: Vec<EdgeRef> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        if connected(n, &chosen) && plane(s, &chosen) {
            out.push(chosen);
        }
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn brute_paths(s: &PointSet) -> Vec<Vec<EdgeRef>> {
    let n = s.len();
    let mut out: Vec<Vec<EdgeRef>> = permutations(&(0..n).collect::<Vec<_>>())
        .into_iter()
        .filter(|p| p[0] < p[n - 1])
        .map(|p| {
            let mut e: Vec<EdgeRef> = p.windows(2).map(|w| EdgeRef::new(w[0], w[1])).collect();
            e.sort_unstable();
            e
        })
        .filter(|e| plane(s, e))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn disjoint(a: &[EdgeRef], b: &[EdgeRef]) -> bool {
    a.iter().all(|e| !b.contains(e))
}

/// Largest family of pairwise disjoint items, by plain recursion.
fn brute_max_disjoint(items: &[Vec<EdgeRef>]) -> usize {
    fn go(items: &[Vec<EdgeRef>], start: usize, chosen: &mut Vec<usize>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for i in start..items.len() {
            if chosen.iter().all(|&c| disjoint(&items[c], &items[i])) {
                chosen.push(i);
                go(items, i + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    go(items, 0, &mut Vec::new(), &mut best);
    best
}

#[test]
fn three_points_have_three_trees() {
    let g = Ground::Points(pts(&[(0, 0), (7, 1), (2, 5)]));
    let trees = enumerate_plane_spanning_structures(&g, StructureKind::Tree).unwrap();
    assert_eq!(trees.len(), 3);
    assert_eq!(max_tree_packing_exact(&g, 1_000).unwrap().count, 1);
}

#[test]
fn convex_quadrilateral_excludes_trees_with_both_diagonals() {
    let s = pts(&[(0, 0), (5, 1), (6, 6), (1, 5)]);
    // 16 labelled trees; 4 of them hold both diagonals plus one side
    assert_eq!(brute_trees(&s).len(), 16 - 4);
    let g = Ground::Points(s);
    assert_eq!(enumerate_plane_spanning_structures(&g, StructureKind::Tree).unwrap().len(), 12);
}

#[test]
fn enumeration_matches_brute_force() {
    for seed in 0..6 {
        for n in [5, 6] {
            let s = random_points(n, seed).unwrap();
            let g = Ground::Points(s.clone());
            let space = MaskSpace::new(&g).unwrap();

            let mut mine: Vec<Vec<EdgeRef>> = enumerate_masks(&space, StructureKind::Tree)
                .into_iter()
                .map(|m| space.edges_of(m))
                .collect();
            mine.sort();
            let mut brute = brute_trees(&s);
            brute.sort();
            assert_eq!(mine, brute, "trees, n = {n}, seed = {seed}");

            let mut mine: Vec<Vec<EdgeRef>> = enumerate_masks(&space, StructureKind::Path)
                .into_iter()
                .map(|m| space.edges_of(m))
                .collect();
            mine.sort();
            assert_eq!(mine, brute_paths(&s), "paths, n = {n}, seed = {seed}");
        }
    }
}

#[test]
fn enumerated_structures_verify() {
    let g = Ground::Points(random_points(6, 11).unwrap());
    for t in enumerate_plane_spanning_structures(&g, StructureKind::Tree).unwrap() {
        assert!(verify_spanning_tree(&g, &t));
    }
    for p in enumerate_plane_spanning_structures(&g, StructureKind::Path).unwrap() {
        assert!(verify_spanning_path(&g, &p));
    }
}

#[test]
fn max_packing_matches_brute_force() {
    for seed in 0..8 {
        let s = random_points(5, seed).unwrap();
        let g = Ground::Points(s.clone());
        assert_eq!(max_tree_packing_exact(&g, 1_000_000).unwrap().count, brute_max_disjoint(&brute_trees(&s)));
        assert_eq!(max_path_packing_exact(&g, 1_000_000).unwrap().count, brute_max_disjoint(&brute_paths(&s)));
    }
}

#[test]
fn count_never_exceeds_edge_ceiling() {
    for seed in 0..5 {
        for n in [4, 5, 6, 7] {
            let g = Ground::Points(random_points(n, seed).unwrap());
            let r = max_tree_packing_exact(&g, 10_000_000).unwrap();
            assert!(r.count <= n / 2);
            assert_eq!(r.packing.members.len(), r.count);
        }
    }
}

#[test]
fn relabeling_does_not_change_counts() {
    let s = random_points(7, 3).unwrap();
    let perm = [4, 0, 6, 2, 5, 1, 3];
    let mut moved = vec![Point::new(0, 0); 7];
    for (i, &p) in perm.iter().enumerate() {
        moved[p] = s.point(i);
    }
    let a = Ground::Points(s);
    let b = Ground::Points(PointSet::new(moved).unwrap());
    for kind in [StructureKind::Tree, StructureKind::Path] {
        assert_eq!(
            enumerate_plane_spanning_structures(&a, kind).unwrap().len(),
            enumerate_plane_spanning_structures(&b, kind).unwrap().len()
        );
    }
    assert_eq!(
        max_tree_packing_exact(&a, 50_000_000).unwrap().count,
        max_tree_packing_exact(&b, 50_000_000).unwrap().count
    );
}

#[test]
fn shuffled_search_agrees() {
    for seed in 0..3 {
        let g = Ground::Points(random_points(7, 100 + seed).unwrap());
        for kind in [StructureKind::Tree, StructureKind::Path] {
            let base = match kind {
                StructureKind::Path => max_path_packing_exact(&g, 50_000_000),
                _ => max_tree_packing_exact(&g, 50_000_000),
            }
            .unwrap();
            let shuffled = max_packing_exact_shuffled(&g, kind, 50_000_000, seed).unwrap();
            assert_eq!(base.count, shuffled.count);
        }
    }
}

#[test]
fn witness_members_are_disjoint() {
    let g = Ground::Points(random_points(7, 9).unwrap());
    let r = max_tree_packing_exact(&g, 50_000_000).unwrap();
    let members: Vec<&GraphStructure> = r.packing.members.iter().collect();
    for (i, a) in members.iter().enumerate() {
        assert!(verify_spanning_tree(&g, a));
        for b in &members[i + 1..] {
            assert!(disjoint(a.edges(), b.edges()));
        }
    }
}

#[test]
fn small_wheel_path_packing() {
    let g = Ground::Wheel(WheelConfig::new(3).unwrap());
    let n = g.vertex_count();
    let brute: Vec<Vec<EdgeRef>> = permutations(&(0..n).collect::<Vec<_>>())
        .into_iter()
        .filter(|p| p[0] < p[n - 1])
        .map(|p| p.windows(2).map(|w| EdgeRef::new(w[0], w[1])).collect::<Vec<_>>())
        .filter(|e| e.iter().enumerate().all(|(i, &a)| e[i + 1..].iter().all(|&b| !g.crosses(a, b))))
        .collect();
    let paths = enumerate_plane_spanning_structures(&g, StructureKind::Path).unwrap();
    assert_eq!(paths.len(), brute.len());
    let mut sorted: Vec<Vec<EdgeRef>> = brute
        .into_iter()
        .map(|mut e| {
            e.sort_unstable();
            e
        })
        .collect();
    sorted.sort();
    assert_eq!(max_path_packing_exact(&g, 10_000_000).unwrap().count, brute_max_disjoint(&sorted));
}
