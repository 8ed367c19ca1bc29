//! Exact integer geometry: orientation, segment crossing, hulls, j-edges,
//! halving lines and angular orders.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible absolute coordinate value.
pub const COORD_LIMIT: i64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    fn from_sign(v: i128) -> Self {
        match v.cmp(&0) {
            Ordering::Greater => Orientation::Ccw,
            Ordering::Less => Orientation::Cw,
            Ordering::Equal => Orientation::Collinear,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("point set is empty")]
    Empty,
    #[error("point {index} = ({x}, {y}) exceeds the coordinate bound 2^30")]
    CoordinateOutOfRange { index: usize, x: i64, y: i64 },
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("points {0}, {1}, {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("j = {j} is out of range for {n} points")]
    InvalidJ { j: usize, n: usize },
    #[error("no {j}-edge has vertex {must_contain} strictly on its left")]
    NotFound { j: usize, must_contain: usize },
}

/// Twice the cross product of (b - a) and (c - a).
#[inline]
pub fn cross(a: Point, b: Point, c: Point) -> i128 {
    let (bx, by) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (cx, cy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    bx * cy - by * cx
}

pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    Orientation::from_sign(cross(a, b, c))
}

/// True iff the open segments `ab` and `cd` share a point.
pub fn segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let o1 = cross(a, b, c).signum();
    let o2 = cross(a, b, d).signum();
    let o3 = cross(c, d, a).signum();
    let o4 = cross(c, d, b).signum();
    if o1 == 0 && o2 == 0 {
        // collinear: open intervals overlap
        let key = |p: Point| if a.x != b.x { p.x } else { p.y };
        let (lo1, hi1) = minmax(key(a), key(b));
        let (lo2, hi2) = minmax(key(c), key(d));
        return lo1.max(lo2) < hi1.min(hi2);
    }
    o1 * o2 < 0 && o3 * o4 < 0
}

fn minmax(a: i64, b: i64) -> (i64, i64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Points in general position with bounded integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        if points.is_empty() {
            return Err(GeomError::Empty);
        }
        for (index, p) in points.iter().enumerate() {
            if p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT {
                return Err(GeomError::CoordinateOutOfRange { index, x: p.x, y: p.y });
            }
        }
        if let Some((first, second)) = first_duplicate(&points) {
            return Err(GeomError::DuplicatePoint { first, second });
        }
        if let Some((i, j, k)) = first_collinear_triple(&points) {
            return Err(GeomError::Collinear(i, j, k));
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    #[inline]
    pub fn cross(&self, i: usize, j: usize, k: usize) -> i128 {
        cross(self.points[i], self.points[j], self.points[k])
    }

    pub fn orientation(&self, i: usize, j: usize, k: usize) -> Orientation {
        orientation(self.points[i], self.points[j], self.points[k])
    }

    /// Proper crossing of the segments `ab` and `cd` given by vertex indices.
    pub fn crosses(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        if a == c || a == d || b == c || b == d {
            return false;
        }
        segments_properly_cross(self.points[a], self.points[b], self.points[c], self.points[d])
    }

    /// Subset of this set re-indexed from zero (order of `indices` preserved).
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet { points: indices.iter().map(|&i| self.points[i]).collect() }
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

fn first_duplicate(points: &[Point]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i], i));
    let mut best: Option<(usize, usize)> = None;
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            let pair = (w[0], w[1]);
            if best.is_none_or(|b| pair < b) {
                best = Some(pair);
            }
        }
    }
    best
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Lexicographically smallest collinear triple, if any.
fn first_collinear_triple(points: &[Point]) -> Option<(usize, usize, usize)> {
    let n = points.len();
    let mut groups: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for i in 0..n {
        groups.clear();
        for j in (i + 1)..n {
            let (mut dx, mut dy) = (points[j].x - points[i].x, points[j].y - points[i].y);
            let g = gcd(dx, dy);
            dx /= g;
            dy /= g;
            if dy < 0 || (dy == 0 && dx < 0) {
                dx = -dx;
                dy = -dy;
            }
            groups.entry((dx, dy)).or_default().push(j);
        }
        let best = groups.values().filter(|g| g.len() >= 2).map(|g| (g[0], g[1])).min();
        if let Some((j, k)) = best {
            return Some((i, j, k));
        }
    }
    None
}

/// Convex hull of the whole set, counterclockwise.
pub fn convex_hull(s: &PointSet) -> Vec<usize> {
    convex_hull_of(s, &s.all_indices())
}

/// Convex hull of a subset, counterclockwise, starting at the lexicographically
/// smallest point.
pub fn convex_hull_of(s: &PointSet, subset: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = subset.to_vec();
    idx.sort_by_key(|&i| s.point(i));
    idx.dedup();
    if idx.len() <= 2 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && s.cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && s.cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// A directed edge `u -> v` with exactly `left.len()` points strictly to its left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JEdge {
    pub u: usize,
    pub v: usize,
    pub left: Vec<usize>,
}

/// Full-turn angular comparison of vectors (counterclockwise from +x).
fn angle_cmp(a: (i128, i128), b: (i128, i128)) -> Ordering {
    let half = |v: (i128, i128)| if v.1 > 0 || (v.1 == 0 && v.0 > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.0 * b.1 - a.1 * b.0;
        0.cmp(&c)
    })
}

/// For a fixed `u`, the number of subset points strictly left of `u -> v` for
/// every other `v` in the subset (angular sweep).
fn left_counts_from(s: &PointSet, subset: &[usize], u: usize) -> Vec<(usize, usize)> {
    let pu = s.point(u);
    let mut others: Vec<(usize, (i128, i128))> = subset
        .iter()
        .filter(|&&v| v != u)
        .map(|&v| {
            let p = s.point(v);
            (v, ((p.x - pu.x) as i128, (p.y - pu.y) as i128))
        })
        .collect();
    others.sort_by(|a, b| angle_cmp(a.1, b.1));
    let m = others.len();
    let mut out = Vec::with_capacity(m);
    let mut k = 0usize;
    for i in 0..m {
        if k < i + 1 {
            k = i + 1;
        }
        let d = others[i].1;
        while k < i + m {
            let w = others[k % m].1;
            if d.0 * w.1 - d.1 * w.0 > 0 {
                k += 1;
            } else {
                break;
            }
        }
        out.push((others[i].0, k - i - 1));
    }
    out
}

fn left_side(s: &PointSet, subset: &[usize], u: usize, v: usize) -> Vec<usize> {
    let mut left: Vec<usize> =
        subset.iter().copied().filter(|&w| w != u && w != v && s.cross(u, v, w) > 0).collect();
    left.sort_unstable();
    left
}

/// Lexicographically smallest directed edge with exactly `j` points of the set
/// strictly on its left.
pub fn find_j_edge(s: &PointSet, j: usize) -> Result<JEdge, GeomError> {
    find_j_edge_in(s, &s.all_indices(), j)
}

pub fn find_j_edge_in(s: &PointSet, subset: &[usize], j: usize) -> Result<JEdge, GeomError> {
    search_j_edge(s, subset, j, None)
}

/// As [`find_j_edge`], with `must_contain` strictly left and not an endpoint.
pub fn find_j_edge_containing(
    s: &PointSet,
    j: usize,
    must_contain: usize,
) -> Result<JEdge, GeomError> {
    find_j_edge_containing_in(s, &s.all_indices(), j, must_contain)
}

pub fn find_j_edge_containing_in(
    s: &PointSet,
    subset: &[usize],
    j: usize,
    must_contain: usize,
) -> Result<JEdge, GeomError> {
    search_j_edge(s, subset, j, Some(must_contain))
}

fn search_j_edge(
    s: &PointSet,
    subset: &[usize],
    j: usize,
    must_contain: Option<usize>,
) -> Result<JEdge, GeomError> {
    let n = subset.len();
    if n < 2 || j > n - 2 {
        return Err(GeomError::InvalidJ { j, n });
    }
    let mut order = subset.to_vec();
    order.sort_unstable();
    for &u in &order {
        if Some(u) == must_contain {
            continue;
        }
        let best = left_counts_from(s, subset, u)
            .into_iter()
            .filter(|&(v, c)| {
                c == j
                    && must_contain.is_none_or(|m| m != v && s.cross(u, v, m) > 0)
            })
            .map(|(v, _)| v)
            .min();
        if let Some(v) = best {
            return Ok(JEdge { u, v, left: left_side(s, subset, u, v) });
        }
    }
    Err(GeomError::NotFound { j, must_contain: must_contain.unwrap_or(usize::MAX) })
}

/// An exact point with half-integer coordinates, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfPoint {
    pub x2: i64,
    pub y2: i64,
}

impl HalfPoint {
    pub fn midpoint(a: Point, b: Point) -> Self {
        HalfPoint { x2: a.x + b.x, y2: a.y + b.y }
    }

    pub fn from_point(p: Point) -> Self {
        HalfPoint { x2: 2 * p.x, y2: 2 * p.y }
    }

    /// Doubled offset vector from this point to `p`.
    pub fn offset(&self, p: Point) -> (i128, i128) {
        ((2 * p.x - self.x2) as i128, (2 * p.y - self.y2) as i128)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvingSplit {
    /// Indices into `r` strictly left of the directed line.
    pub left: Vec<usize>,
    /// Indices into `r` strictly right of the directed line.
    pub right: Vec<usize>,
    /// Direction of the line through the pivot.
    pub direction: (i128, i128),
}

impl HalvingSplit {
    /// Which side of the line a point lies on (positive = left).
    pub fn side(&self, pivot: HalfPoint, p: Point) -> i128 {
        let w = pivot.offset(p);
        (self.direction.0 * w.1 - self.direction.1 * w.0).signum()
    }
}

/// A line through `pivot` splitting `r` into two parts of size at most
/// `ceil(|r| / 2)`, with no point of `r` on it.
pub fn halving_split(pivot: HalfPoint, r: &[Point]) -> HalvingSplit {
    halving_split_avoiding(pivot, r, &[])
}

/// As [`halving_split`], additionally keeping every point of `avoid` off the line.
pub fn halving_split_avoiding(pivot: HalfPoint, r: &[Point], avoid: &[Point]) -> HalvingSplit {
    let fold = |v: (i128, i128)| if v.1 < 0 || (v.1 == 0 && v.0 < 0) { (-v.0, -v.1) } else { v };
    let mut dirs: Vec<(i128, i128)> = r
        .iter()
        .chain(avoid.iter())
        .map(|&p| pivot.offset(p))
        .filter(|&v| v != (0, 0))
        .map(fold)
        .collect();
    let cmp = |a: &(i128, i128), b: &(i128, i128)| 0.cmp(&(a.0 * b.1 - a.1 * b.0));
    dirs.sort_by(cmp);
    dirs.dedup_by(|a, b| a.0 * b.1 - a.1 * b.0 == 0);

    let candidates: Vec<(i128, i128)> = match dirs.len() {
        0 => vec![(1, 0)],
        1 => vec![(-dirs[0].1, dirs[0].0)],
        m => {
            let mut c: Vec<(i128, i128)> =
                dirs.windows(2).map(|w| (w[0].0 + w[1].0, w[0].1 + w[1].1)).collect();
            c.push((dirs[m - 1].0 - dirs[0].0, dirs[m - 1].1 - dirs[0].1));
            c
        }
    };
    let cap = r.len().div_ceil(2);
    let split_along = |d: (i128, i128)| {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, &p) in r.iter().enumerate() {
            let w = pivot.offset(p);
            if d.0 * w.1 - d.1 * w.0 > 0 {
                left.push(i);
            } else {
                right.push(i);
            }
        }
        HalvingSplit { left, right, direction: d }
    };
    let mut best: Option<HalvingSplit> = None;
    for &d in &candidates {
        let split = split_along(d);
        let worst = split.left.len().max(split.right.len());
        if worst <= cap {
            return split;
        }
        if best.as_ref().is_none_or(|b| worst < b.left.len().max(b.right.len())) {
            best = Some(split);
        }
    }
    // Only reachable when several points of `r` share a line through the
    // pivot; the caller checks the sizes it needs.
    best.expect("at least one candidate direction")
}

/// `subset` ordered clockwise around `center`, starting from the +x ray.
pub fn angular_order(center: usize, s: &PointSet, subset: &[usize]) -> Vec<usize> {
    let c = s.point(center);
    let vec_of = |i: usize| {
        let p = s.point(i);
        ((p.x - c.x) as i128, (p.y - c.y) as i128)
    };
    // clockwise from +x: half 0 is y < 0 or the +x ray itself
    let half = |v: (i128, i128)| if v.1 < 0 || (v.1 == 0 && v.0 > 0) { 0 } else { 1 };
    let mut out = subset.to_vec();
    out.sort_by(|&a, &b| {
        let (va, vb) = (vec_of(a), vec_of(b));
        let ha = half(va);
        let hb = half(vb);
        ha.cmp(&hb).then_with(|| {
            if ha == 0 && va.1 == 0 {
                return if vb.1 == 0 { Ordering::Equal } else { Ordering::Less };
            }
            if hb == 0 && vb.1 == 0 {
                return Ordering::Greater;
            }
            let cr = va.0 * vb.1 - va.1 * vb.0;
            // b clockwise after a  <=>  cross(a, b) < 0
            cr.cmp(&0)
        })
    });
    out
}

/// Clockwise order of `subset` around an extreme vertex `center` of the set,
/// starting at the edge of the empty wedge.
pub fn clockwise_from_extreme(center: usize, s: &PointSet, subset: &[usize]) -> Vec<usize> {
    let mut out = subset.to_vec();
    out.sort_by(|&a, &b| {
        if a == b {
            Ordering::Equal
        } else if s.cross(center, a, b) < 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    });
    out
}
