//! The regular wheel: 2n-1 rim points on a circle plus the hub at its centre.
//!
//! Vertex 0 is the hub, vertex `r + 1` is rim point `r` (0-based). Rim points
//! are placed clockwise, so index arithmetic decides every predicate exactly.

use thiserror::Error;

use crate::geom::{GeomError, Orientation, Point, PointSet};
use crate::oracle::{enumerate_masks, MaskSpace};
use crate::packing::{
    verify_packing, EdgeRef, GraphStructure, Ground, Packing, StructureKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WheelConfig {
    n: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WheelError {
    #[error("wheel half-size must be at least 2, got {0}")]
    InvalidN(usize),
    #[error("wheel construction failed for n = {n}: {reason}")]
    ConstructionFailed { n: usize, reason: String },
    #[error("budget exhausted after {nodes} nodes ({partitions} partitions so far, max path members {max_paths})")]
    BudgetExceeded { nodes: u64, partitions: u64, max_paths: usize },
}

impl WheelConfig {
    pub fn new(n: usize) -> Result<Self, WheelError> {
        if n < 2 {
            return Err(WheelError::InvalidN(n));
        }
        Ok(WheelConfig { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rim_count(&self) -> usize {
        2 * self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn hub(&self) -> usize {
        0
    }

    /// Vertex id of rim point `r` (taken modulo the rim count).
    pub fn rim(&self, r: usize) -> usize {
        r % self.rim_count() + 1
    }

    fn rim_index(&self, v: usize) -> usize {
        v - 1
    }

    /// Length class of a rim chord, in `1..n`.
    pub fn length_class(&self, e: EdgeRef) -> Option<usize> {
        if e.a() == 0 {
            return None;
        }
        let m = self.rim_count();
        let d = self.rim_index(e.b()) - self.rim_index(e.a());
        Some(d.min(m - d))
    }

    pub fn is_radial(&self, e: EdgeRef) -> bool {
        e.a() == 0
    }

    fn fwd(&self, i: usize, j: usize) -> usize {
        let m = self.rim_count();
        (j + m - i) % m
    }

    /// Is rim index `x` strictly inside the shorter arc between rim indices `c` and `d`?
    fn in_minor_arc(&self, c: usize, d: usize, x: usize) -> bool {
        let (c, d) = if self.fwd(c, d) < self.n { (c, d) } else { (d, c) };
        let t = self.fwd(c, x);
        t > 0 && t < self.fwd(c, d)
    }

    /// Exact orientation of three distinct vertices.
    pub fn orientation(&self, a: usize, b: usize, c: usize) -> Orientation {
        if a == b || b == c || a == c {
            return Orientation::Collinear;
        }
        let (a, b, c) = if b == 0 {
            (b, c, a)
        } else if c == 0 {
            (c, a, b)
        } else {
            (a, b, c)
        };
        let clockwise = if a == 0 {
            self.fwd(self.rim_index(b), self.rim_index(c)) < self.n
        } else {
            let (i, j, k) = (self.rim_index(a), self.rim_index(b), self.rim_index(c));
            self.fwd(i, j) < self.fwd(i, k)
        };
        if clockwise {
            Orientation::Cw
        } else {
            Orientation::Ccw
        }
    }

    /// Proper crossing of two edges, decided by index arithmetic.
    pub fn crosses(&self, e: EdgeRef, f: EdgeRef) -> bool {
        if e.shares_endpoint(f) {
            return false;
        }
        match (e.a() == 0, f.a() == 0) {
            (true, true) => false,
            (true, false) => self.radial_crosses(e.b(), f),
            (false, true) => self.radial_crosses(f.b(), e),
            (false, false) => {
                let (c, d) = (self.rim_index(f.a()), self.rim_index(f.b()));
                let inside = |x: usize| x > c && x < d;
                inside(self.rim_index(e.a())) != inside(self.rim_index(e.b()))
            }
        }
    }

    fn radial_crosses(&self, rim_vertex: usize, chord: EdgeRef) -> bool {
        self.in_minor_arc(
            self.rim_index(chord.a()),
            self.rim_index(chord.b()),
            self.rim_index(rim_vertex),
        )
    }

    pub fn edges(&self) -> Vec<EdgeRef> {
        crate::packing::all_edges(self.vertex_count())
    }
}

/// Edge between rim indices `i` and `j`.
fn chord(w: &WheelConfig, i: usize, j: usize) -> EdgeRef {
    EdgeRef::new(w.rim(i), w.rim(j))
}

fn radial(w: &WheelConfig, i: usize) -> EdgeRef {
    EdgeRef::new(0, w.rim(i))
}

/// The fan at rim index `r`: one chord of each class 1..n-2, running clockwise.
fn fan(w: &WheelConfig, r: usize) -> Vec<EdgeRef> {
    (1..w.n - 1).map(|d| chord(w, r, r + d)).collect()
}

/// Longest chords and radials of each colour; colour 0 is red.
fn forced_edges(w: &WheelConfig) -> Vec<Vec<EdgeRef>> {
    let (n, m) = (w.n, w.rim_count());
    let walk: Vec<usize> = (0..=m).map(|t| t * (n - 1) % m).collect();
    let mut colours = vec![Vec::new(); n];
    for t in 0..n - 1 {
        let c = &mut colours[t + 1];
        c.push(chord(w, walk[2 * t], walk[2 * t + 1]));
        c.push(chord(w, walk[2 * t + 1], walk[2 * t + 2]));
        c.push(radial(w, walk[2 * t + 2]));
    }
    colours[0].push(chord(w, walk[2 * n - 2], walk[2 * n - 1]));
    colours[0].extend((0..n).map(|r| radial(w, r)));
    colours
}

/// Fan centres per colour in the fixed scheme.
fn fan_centres(w: &WheelConfig) -> Vec<Vec<usize>> {
    let (n, m) = (w.n, w.rim_count());
    let walk = |t: usize| t * (n - 1) % m;
    let mut centres = vec![vec![n]];
    for t in 0..n - 1 {
        centres.push(vec![walk(2 * t + 1), walk(2 * t)]);
    }
    centres
}

fn assemble(w: &WheelConfig, colours: Vec<Vec<EdgeRef>>) -> Packing {
    let members = colours
        .into_iter()
        .map(|edges| GraphStructure::new(StructureKind::Tree, edges))
        .collect();
    Packing::new(*w, members)
}

/// Partition of all wheel edges into `n` plane spanning trees.
pub fn wheel_partition(n: usize) -> Result<Packing, WheelError> {
    let w = WheelConfig::new(n)?;
    let mut colours = forced_edges(&w);
    for (c, centres) in fan_centres(&w).into_iter().enumerate() {
        for r in centres {
            colours[c].extend(fan(&w, r));
        }
    }
    let p = assemble(&w, colours);
    if verify_packing(&p, true).all_ok() {
        return Ok(p);
    }
    log::warn!("fixed wheel colouring failed verification for n = {n}; using backtracking");
    wheel_partition_backtracking(n)
}

/// Keeps the longest chords and radials of the fixed scheme and searches for
/// a fan assignment (red takes one fan, every other colour two).
pub fn wheel_partition_backtracking(n: usize) -> Result<Packing, WheelError> {
    let w = WheelConfig::new(n)?;
    let mut colours = forced_edges(&w);
    let m = w.rim_count();
    let mut capacity: Vec<usize> = (0..n).map(|c| if c == 0 { 1 } else { 2 }).collect();
    let fans: Vec<Vec<EdgeRef>> = (0..m).map(|r| fan(&w, r)).collect();
    if assign_fans(&w, &fans, 0, &mut colours, &mut capacity) {
        return Ok(assemble(&w, colours));
    }
    Err(WheelError::ConstructionFailed { n, reason: "no fan assignment verifies".into() })
}

fn assign_fans(
    w: &WheelConfig,
    fans: &[Vec<EdgeRef>],
    next: usize,
    colours: &mut [Vec<EdgeRef>],
    capacity: &mut [usize],
) -> bool {
    if next == fans.len() {
        return verify_packing(&assemble(w, colours.to_vec()), true).all_ok();
    }
    for c in 0..colours.len() {
        if capacity[c] == 0 {
            continue;
        }
        let clash = fans[next]
            .iter()
            .any(|&e| colours[c].iter().any(|&f| w.crosses(e, f)));
        if clash {
            continue;
        }
        let before = colours[c].len();
        colours[c].extend(fans[next].iter().copied());
        capacity[c] -= 1;
        if assign_fans(w, fans, next + 1, colours, capacity) {
            return true;
        }
        capacity[c] += 1;
        colours[c].truncate(before);
    }
    false
}

/// `n - 1` edge-disjoint plane spanning paths: rotated rim zigzags, each
/// routed through the hub in place of one longest chord.
pub fn wheel_zigzag_paths(n: usize) -> Result<Packing, WheelError> {
    let w = WheelConfig::new(n)?;
    let m = w.rim_count();
    let mut members = Vec::with_capacity(n - 1);
    for r in 0..n - 1 {
        let mut z = vec![r];
        for i in 1..n {
            z.push((r + i) % m);
            z.push((r + m - i) % m);
        }
        // z[n-2] -> z[n-1] is a longest chord; detour through the hub
        let mut vertices: Vec<usize> = z[..n - 1].iter().map(|&i| w.rim(i)).collect();
        vertices.push(0);
        vertices.extend(z[n - 1..].iter().map(|&i| w.rim(i)));
        members.push(GraphStructure::from_path(&vertices));
    }
    let p = Packing::new(w, members);
    if verify_packing(&p, false).all_ok() {
        Ok(p)
    } else {
        Err(WheelError::ConstructionFailed { n, reason: "zigzag paths failed verification".into() })
    }
}

/// Outcome of the exhaustive partition enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathImpossibility {
    pub n: usize,
    pub plane_spanning_trees: usize,
    pub partitions: u64,
    pub max_path_members: usize,
    /// `histogram[k]` = number of partitions with exactly `k` path members.
    pub histogram: Vec<u64>,
    pub nodes: u64,
}

/// Enumerates every partition of the wheel's edges into `n` plane spanning
/// trees and records how many members are paths.
pub fn wheel_partition_path_impossibility(
    n: usize,
    budget: u64,
) -> Result<PathImpossibility, WheelError> {
    let w = WheelConfig::new(n)?;
    let ground = Ground::Wheel(w);
    let space = MaskSpace::new(&ground).map_err(|e| WheelError::ConstructionFailed {
        n,
        reason: e.to_string(),
    })?;
    let trees = enumerate_masks(&space, StructureKind::Tree);
    let is_path: Vec<bool> = trees.iter().map(|&t| space.max_degree(t) <= 2).collect();
    // trees grouped by their lowest edge
    let e = space.edge_count();
    let mut by_low: Vec<Vec<usize>> = vec![Vec::new(); e];
    for (i, &t) in trees.iter().enumerate() {
        by_low[t.trailing_zeros() as usize].push(i);
    }
    let full: u128 = if e == 128 { u128::MAX } else { (1u128 << e) - 1 };
    let mut st = Enum {
        trees: &trees,
        is_path: &is_path,
        by_low: &by_low,
        histogram: vec![0; n + 1],
        nodes: 0,
        budget,
    };
    let done = st.go(full, n, 0);
    let partitions: u64 = st.histogram.iter().sum();
    let max_path_members = st.histogram.iter().rposition(|&c| c > 0).unwrap_or(0);
    if !done {
        return Err(WheelError::BudgetExceeded { nodes: st.nodes, partitions, max_paths: max_path_members });
    }
    Ok(PathImpossibility {
        n,
        plane_spanning_trees: trees.len(),
        partitions,
        max_path_members,
        histogram: st.histogram,
        nodes: st.nodes,
    })
}

struct Enum<'a> {
    trees: &'a [u128],
    is_path: &'a [bool],
    by_low: &'a [Vec<usize>],
    histogram: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl Enum<'_> {
    /// Returns false when the budget runs out.
    fn go(&mut self, remaining: u128, left: usize, paths: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if remaining == 0 {
            if left == 0 {
                self.histogram[paths] += 1;
            }
            return true;
        }
        if left == 0 {
            return true;
        }
        let low = remaining.trailing_zeros() as usize;
        for &i in &self.by_low[low] {
            let t = self.trees[i];
            if t & !remaining != 0 {
                continue;
            }
            if !self.go(remaining & !t, left - 1, paths + self.is_path[i] as usize) {
                return false;
            }
        }
        true
    }
}

/// Rounded coordinates for drawing, hub at the origin and rim point 0 at the
/// top. The flag reports whether every orientation agrees with the exact
/// combinatorial one.
pub fn wheel_coordinates(n: usize, radius: i64) -> Result<(PointSet, bool), GeomError> {
    let w = WheelConfig::new(n).map_err(|_| GeomError::Empty)?;
    let m = w.rim_count();
    let mut pts = vec![Point::new(0, 0)];
    for r in 0..m {
        let theta = std::f64::consts::FRAC_PI_2 - 2.0 * std::f64::consts::PI * r as f64 / m as f64;
        let x = (radius as f64 * theta.cos()).round() as i64;
        let y = (radius as f64 * theta.sin()).round() as i64;
        pts.push(Point::new(x, y));
    }
    let s = PointSet::new(pts)?;
    let v = w.vertex_count();
    let mut exact = true;
    'outer: for a in 0..v {
        for b in (a + 1)..v {
            for c in (b + 1)..v {
                if s.orientation(a, b, c) != w.orientation(a, b, c) {
                    exact = false;
                    break 'outer;
                }
            }
        }
    }
    Ok((s, exact))
}
