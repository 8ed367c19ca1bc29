//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so the summary is always printed; exits
//! non-zero when any criterion fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use plane_packing::constructions::{
    double_star_pack, partition_k6_three_trees, three_trees_traced, two_paths_traced, two_trees,
    two_trees_traced, GreenExtension, TwoTreesCase,
};
use plane_packing::crossing::crossing_family_greedy;
use plane_packing::geom::{convex_hull, Point, PointSet};
use plane_packing::hierarchical::{cluster_bound, degree_bound, diameter_bound, hierarchical_pack_traced};
use plane_packing::io::codec::{packing_to_string, PackingDoc, Provenance};
use plane_packing::io::{random_points, render_svg};
use plane_packing::oracle::{max_path_packing_exact, max_tree_packing_exact};
use plane_packing::packing::{verify_packing, Ground, Packing, StructureKind};
use plane_packing::wheel::{wheel_partition, wheel_partition_path_impossibility, wheel_zigzag_paths};

const ORACLE_BUDGET: u64 = 50_000_000;
const WHEEL_BUDGET: u64 = 20_000_000_000;

type Outcome = Result<String, String>;

fn ps(v: &[(i64, i64)]) -> PointSet {
    PointSet::new(v.iter().map(|&p| Point::from(p)).collect()).unwrap()
}

fn isqrt(x: usize) -> usize {
    let mut r = (x as f64).sqrt() as usize;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

fn verified(p: &Packing, partition: bool, ctx: &str) -> Result<(), String> {
    let report = verify_packing(p, partition);
    if report.all_ok() {
        Ok(())
    } else {
        Err(format!("{ctx}: {}", report.first_failure().unwrap_or_default()))
    }
}

fn criterion_1() -> Outcome {
    let mut worst_margin = usize::MAX;
    for seed in 0..100u64 {
        let n = [12, 24, 48, 96][seed as usize % 4];
        let s = random_points(n, seed).map_err(|e| e.to_string())?;
        let h = convex_hull(&s).len();
        let f = crossing_family_greedy(&s, 0);
        let p = double_star_pack(&s, &f).map_err(|e| format!("seed {seed}: {e}"))?;
        verified(&p, false, &format!("seed {seed}"))?;
        let need = isqrt(n / 12).max(h / 2);
        if p.members.len() < need {
            return Err(format!("seed {seed}, n {n}: {} members < {need}", p.members.len()));
        }
        worst_margin = worst_margin.min(p.members.len() - need);
    }
    Ok(format!("100 sets, smallest surplus over the bound {worst_margin}"))
}

fn criterion_2() -> Outcome {
    for seed in 0..100u64 {
        let n = 4 + (seed as usize % 61);
        let s = random_points(n, 1000 + seed).map_err(|e| e.to_string())?;
        let p = two_trees(&s).map_err(|e| format!("seed {seed}: {e}"))?;
        verified(&p, false, &format!("seed {seed}"))?;
        if p.members.len() != 2 || p.edge_total() != 2 * (n - 1) {
            return Err(format!("seed {seed}: wrong member or edge count"));
        }
    }
    let convex = two_trees_traced(&ps(&[(0, 0), (4, 0), (5, 3), (1, 4)])).map_err(|e| e.to_string())?;
    let interior = two_trees_traced(&ps(&[(0, 0), (6, 0), (3, 5), (3, 1)])).map_err(|e| e.to_string())?;
    if convex.case != TwoTreesCase::Convex || interior.case != TwoTreesCase::Interior {
        return Err("four-point order types not both covered".into());
    }
    verified(&convex.packing, true, "convex four points")?;
    verified(&interior.packing, true, "four points with one inside")?;
    Ok("100 random sets and both four-point order types".into())
}

fn criterion_3() -> Outcome {
    for seed in 0..10_000u64 {
        let s = random_points(6, 20_000 + seed).map_err(|e| e.to_string())?;
        let p = partition_k6_three_trees(&s, None).map_err(|e| format!("seed {seed}: {e}"))?;
        verified(&p, true, &format!("seed {seed}"))?;
    }
    Ok("10000 six-point sets partitioned, zero failures".into())
}

fn three_tree_instance(s: &PointSet, label: &str, hits: &mut [usize; 3]) -> Result<(), String> {
    let o = three_trees_traced(s).map_err(|e| format!("{label}: {e}"))?;
    verified(&o.packing, false, label)?;
    if o.packing.members.len() != 3 || o.packing.edge_total() != 3 * (s.len() - 1) {
        return Err(format!("{label}: wrong member or edge count"));
    }
    let slot = match o.extension {
        GreenExtension::None => 0,
        GreenExtension::Crossing { .. } => 1,
        GreenExtension::HullEdge { .. } => 2,
    };
    hits[slot] += 1;
    Ok(())
}

/// Seven-point instances on which each green extension branch occurs.
fn three_tree_constructed() -> Vec<(&'static str, PointSet)> {
    vec![
        ("crossing case", ps(&[(6, 1), (2, 0), (8, 6), (1, 4), (0, 1), (7, 3), (2, 11)])),
        ("hull-edge case", ps(&[(8, 6), (9, 9), (3, 11), (0, 9), (10, 1), (3, 8), (1, 2)])),
    ]
}

fn criterion_4() -> Outcome {
    let mut random_hits = [0usize; 3];
    for seed in 0..100u64 {
        let n = 6 + (seed as usize % 59);
        let s = random_points(n, 40_000 + seed).map_err(|e| e.to_string())?;
        three_tree_instance(&s, &format!("seed {seed}"), &mut random_hits)?;
    }
    let mut hits = random_hits;
    for (label, s) in three_tree_constructed() {
        three_tree_instance(&s, label, &mut hits)?;
    }
    if hits[1] == 0 || hits[2] == 0 {
        return Err(format!("branches hit: crossing {}, hull edge {}", hits[1], hits[2]));
    }
    Ok(format!(
        "100 random sets (crossing {}, hull edge {}, core only {}); with constructed sets crossing {}, hull edge {}",
        random_hits[1], random_hits[2], random_hits[0], hits[1], hits[2]
    ))
}

fn criterion_5() -> Outcome {
    for n in 3..=12 {
        let t = Instant::now();
        let p = wheel_partition(n).map_err(|e| e.to_string())?;
        verified(&p, true, &format!("n {n}"))?;
        let report = verify_packing(&p, true);
        if !report.is_partition.ok {
            return Err(format!("n {n}: not a partition"));
        }
        if p.members[0].degree(0) != n {
            return Err(format!("n {n}: red hub degree {}", p.members[0].degree(0)));
        }
        if let Some(c) = (1..p.members.len()).find(|&c| p.members[c].degree(0) != 1) {
            return Err(format!("n {n}: colour {c} has hub degree {}", p.members[c].degree(0)));
        }
        if report.members.iter().any(|m| m.path.ok) {
            return Err(format!("n {n}: a member is a spanning path"));
        }
        if t.elapsed().as_secs_f64() >= 1.0 {
            return Err(format!("n {n}: took {:?}", t.elapsed()));
        }
    }
    Ok("n = 3..12 partitions verified, hub degrees n and 1, no path members".into())
}

fn criterion_6() -> Outcome {
    let r = wheel_partition_path_impossibility(3, WHEEL_BUDGET).map_err(|e| e.to_string())?;
    if r.partitions == 0 || r.max_path_members != 0 {
        return Err(format!("{} partitions, max path members {}", r.partitions, r.max_path_members));
    }
    Ok(format!(
        "{} plane spanning trees, {} partitions, max path members 0",
        r.plane_spanning_trees, r.partitions
    ))
}

fn criterion_7() -> Outcome {
    for n in 3..=12 {
        let p = wheel_zigzag_paths(n).map_err(|e| e.to_string())?;
        verified(&p, false, &format!("n {n}"))?;
        if p.members.len() != n - 1 || p.members.iter().any(|m| m.kind != StructureKind::Path) {
            return Err(format!("n {n}: expected {} path members", n - 1));
        }
    }
    Ok("n = 3..12, n - 1 verified paths each".into())
}

fn criterion_8() -> Outcome {
    let (mut first, mut last) = (0, 0);
    for seed in 0..100u64 {
        let n = 4 + (seed as usize * 37 % 197);
        let s = random_points(n, 60_000 + seed).map_err(|e| e.to_string())?;
        let o = two_paths_traced(&s).map_err(|e| format!("seed {seed}: {e}"))?;
        verified(&o.packing, false, &format!("seed {seed}"))?;
        let report = verify_packing(&o.packing, false);
        if o.packing.members.len() != 2 || !report.members.iter().all(|m| m.kind == StructureKind::Path && m.path.ok) {
            return Err(format!("seed {seed}: members are not two paths"));
        }
        if o.q_is_last {
            last += 1;
        } else {
            first += 1;
        }
    }
    if first == 0 || last == 0 {
        return Err(format!("branches hit: q not last {first}, q last {last}"));
    }
    Ok(format!("100 sets; q not last {first}, q last {last}"))
}

fn criterion_9() -> Outcome {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for (k, n) in [(2, 96), (2, 200), (2, 500), (1, 12), (1, 50)] {
        let s = random_points(n, 80_000 + n as u64).map_err(|e| e.to_string())?;
        let o = match hierarchical_pack_traced(&s, k) {
            Ok(o) => o,
            Err(e) => {
                failures.push(format!("k {k} n {n}: {e}"));
                continue;
            }
        };
        verified(&o.packing, false, &format!("k {k} n {n}"))?;
        let clusters = o.cluster_count();
        let big_n = cluster_bound(n, k);
        let (dmax, degmax) = (diameter_bound(big_n), degree_bound(k));
        let diam = o.metrics.iter().map(|m| m.diameter).max().unwrap_or(0);
        let deg = o.metrics.iter().map(|m| m.max_degree).max().unwrap_or(0);
        let line = format!(
            "k {k} n {n}: {clusters} clusters (N = {big_n}), diameter {diam} (bound {dmax}), degree {deg} (bound {degmax})"
        );
        if o.packing.members.len() != k || clusters > big_n || diam > dmax || deg > degmax {
            failures.push(line.clone());
        }
        lines.push(line);
    }
    if failures.is_empty() {
        Ok(lines.join("; "))
    } else {
        Err(format!("{}. All cases: {}", failures.join("; "), lines.join("; ")))
    }
}

fn criterion_10() -> Outcome {
    let mut summary = Vec::new();
    for n in 4..=7usize {
        let mut tree_min = usize::MAX;
        let mut path_min = usize::MAX;
        for seed in 0..50u64 {
            let s = random_points(n, 100_000 + 100 * n as u64 + seed).map_err(|e| e.to_string())?;
            let g = Ground::Points(s.clone());
            let trees = max_tree_packing_exact(&g, ORACLE_BUDGET).map_err(|e| format!("n {n} seed {seed}: {e}"))?;
            let paths = max_path_packing_exact(&g, ORACLE_BUDGET).map_err(|e| format!("n {n} seed {seed}: {e}"))?;
            verified(&trees.packing, false, "tree witness")?;
            verified(&paths.packing, false, "path witness")?;
            if n == 6 && trees.count != 3 {
                return Err(format!("n 6 seed {seed}: tree maximum {}", trees.count));
            }
            if n <= 5 && trees.count < 2 {
                return Err(format!("n {n} seed {seed}: tree maximum {}", trees.count));
            }
            if paths.count < 2 {
                return Err(format!("n {n} seed {seed}: path maximum {}", paths.count));
            }
            if trees.count > n / 2 {
                return Err(format!("n {n} seed {seed}: tree maximum above the edge ceiling"));
            }
            let mut constructed = vec![
                ("two-trees", two_trees(&s).map(|p| p.members.len()).map_err(|e| e.to_string())?, trees.count),
                ("two-paths", two_paths_traced(&s).map(|o| o.packing.members.len()).map_err(|e| e.to_string())?, paths.count),
            ];
            let fam = crossing_family_greedy(&s, 0);
            constructed.push(("double-star", double_star_pack(&s, &fam).map(|p| p.members.len()).map_err(|e| e.to_string())?, trees.count));
            if n >= 6 {
                constructed.push((
                    "three-trees",
                    three_trees_traced(&s).map(|o| o.packing.members.len()).map_err(|e| e.to_string())?,
                    trees.count,
                ));
            }
            if let Some((name, got, max)) = constructed.into_iter().find(|&(_, got, max)| got > max) {
                return Err(format!("n {n} seed {seed}: {name} built {got} > oracle {max}"));
            }
            tree_min = tree_min.min(trees.count);
            path_min = path_min.min(paths.count);
        }
        summary.push(format!("n {n}: min trees {tree_min}, min paths {path_min}"));
    }
    Ok(summary.join("; "))
}

/// Every artifact the suite can write, as (name, bytes).
fn artifacts() -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    let mut push = |name: String, p: Packing, method: &str, seed: Option<u64>| {
        let doc = PackingDoc {
            packing: p,
            provenance: Provenance { method: method.into(), seed, k: None, input: None },
            points_file: None,
        };
        out.push((format!("{name}.json"), packing_to_string(&doc)));
        out.push((format!("{name}.svg"), render_svg(&doc.packing, method)));
    };
    for seed in 0..5u64 {
        let s = random_points(30, seed).map_err(|e| e.to_string())?;
        let f = crossing_family_greedy(&s, 0);
        push(format!("double-star-{seed}"), double_star_pack(&s, &f).map_err(|e| e.to_string())?, "double-star", Some(seed));
        push(format!("two-trees-{seed}"), two_trees(&s).map_err(|e| e.to_string())?, "two-trees", Some(seed));
        push(format!("three-trees-{seed}"), three_trees_traced(&s).map_err(|e| e.to_string())?.packing, "three-trees", Some(seed));
        push(format!("two-paths-{seed}"), two_paths_traced(&s).map_err(|e| e.to_string())?.packing, "two-paths", Some(seed));
        let g = Ground::Points(random_points(6, seed).map_err(|e| e.to_string())?);
        push(format!("oracle-{seed}"), max_tree_packing_exact(&g, ORACLE_BUDGET).map_err(|e| e.to_string())?.packing, "oracle", Some(seed));
    }
    for n in 3..=6 {
        push(format!("wheel-partition-{n}"), wheel_partition(n).map_err(|e| e.to_string())?, "wheel-partition", None);
        push(format!("wheel-paths-{n}"), wheel_zigzag_paths(n).map_err(|e| e.to_string())?, "wheel-paths", None);
    }
    let s = random_points(96, 7).map_err(|e| e.to_string())?;
    push("hierarchical".into(), hierarchical_pack_traced(&s, 2).map_err(|e| e.to_string())?.packing, "hierarchical", Some(7));
    Ok(out)
}

fn write_all(dir: &Path, files: &[(String, String)]) -> Result<(), String> {
    for (name, text) in files {
        std::fs::write(dir.join(name), text).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    let (a, b) = (tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?);
    let first = artifacts()?;
    write_all(a.path(), &first)?;
    write_all(b.path(), &artifacts()?)?;
    for (name, _) in &first {
        let x = std::fs::read(a.path().join(name)).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.path().join(name)).map_err(|e| e.to_string())?;
        if x != y {
            return Err(format!("{name} differs between runs"));
        }
    }
    Ok(format!("{} files byte-identical across two runs", first.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("double stars over a crossing family", criterion_1),
        ("two plane spanning trees", criterion_2),
        ("six-point three-tree partitions", criterion_3),
        ("three plane spanning trees", criterion_4),
        ("wheel partition", criterion_5),
        ("wheel partition has no path member", criterion_6),
        ("wheel zigzag paths", criterion_7),
        ("two plane spanning paths", criterion_8),
        ("hierarchical packing bounds", criterion_9),
        ("oracle cross-validation", criterion_10),
        ("determinism", criterion_11),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let result = run();
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({secs:.1}s): {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
