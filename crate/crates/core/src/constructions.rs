//! Constructive packings: double stars over a crossing family, two and three
//! trees from a j-edge, and two plane spanning paths.

use thiserror::Error;

use crate::crossing::CrossingFamily;
use crate::geom::{clockwise_from_extreme, convex_hull, convex_hull_of, find_j_edge, GeomError, PointSet};
use crate::oracle::{enumerate_masks, MaskSpace};
use crate::packing::{verify_packing, EdgeRef, GraphStructure, Ground, Packing, StructureKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("crossing family is empty")]
    EmptyFamily,
    #[error("edges {0} and {1} of the family do not cross")]
    NotCrossing(EdgeRef, EdgeRef),
    #[error("no partition of the six-point complete graph into three plane spanning trees")]
    NoPartition,
    #[error("construction failed: {0}")]
    Failed(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

type Result<T> = std::result::Result<T, ConstructionError>;

fn need(s: &PointSet, k: usize) -> Result<()> {
    if s.len() < k {
        Err(ConstructionError::TooFewPoints { need: k, got: s.len() })
    } else {
        Ok(())
    }
}

fn tree(edges: Vec<EdgeRef>) -> GraphStructure {
    GraphStructure::new(StructureKind::Tree, edges)
}

fn checked(p: Packing, what: &str) -> Result<Packing> {
    let report = verify_packing(&p, false);
    if report.all_ok() {
        Ok(p)
    } else {
        Err(ConstructionError::Failed(format!(
            "{what}: {}",
            report.first_failure().unwrap_or_default()
        )))
    }
}

/// Endpoints of `e` ordered so the direction tail -> head points into the
/// upper half plane (or along +x). Pairwise crossing edges oriented this way
/// give edge-disjoint double stars.
fn upward(s: &PointSet, e: EdgeRef) -> (usize, usize) {
    let (pa, pb) = (s.point(e.a()), s.point(e.b()));
    if pb.y > pa.y || (pb.y == pa.y && pb.x > pa.x) {
        (e.a(), e.b())
    } else {
        (e.b(), e.a())
    }
}

/// One double star per family edge `pq`: the edge itself, every point left
/// of `p -> q` joined to `p` and every point right of it joined to `q`.
pub fn double_star_pack(s: &PointSet, f: &CrossingFamily) -> Result<Packing> {
    if f.is_empty() {
        return Err(ConstructionError::EmptyFamily);
    }
    for (i, &e) in f.edges.iter().enumerate() {
        if let Some(&g) = f.edges[i + 1..].iter().find(|g| !s.crosses(e.a(), e.b(), g.a(), g.b())) {
            return Err(ConstructionError::NotCrossing(e, g));
        }
    }
    let members = f
        .edges
        .iter()
        .map(|&e| {
            let (p, q) = upward(s, e);
            let mut edges = vec![e];
            edges.extend(
                (0..s.len())
                    .filter(|&x| x != p && x != q)
                    .map(|x| if s.cross(p, q, x) > 0 { EdgeRef::new(p, x) } else { EdgeRef::new(q, x) }),
            );
            tree(edges)
        })
        .collect();
    checked(Packing::new(s.clone(), members), "double star packing")
}

/// Which configuration the four points of the 2-edge formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoTreesCase {
    /// `r, b, p, q` in convex position.
    Convex,
    /// `q` inside triangle `p r b`.
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTreesOutcome {
    pub packing: Packing,
    pub case: TwoTreesCase,
    /// `(r, b, p, q)`.
    pub roles: (usize, usize, usize, usize),
}

fn inside_triangle(s: &PointSet, x: usize, a: usize, b: usize, c: usize) -> bool {
    let (o1, o2, o3) = (s.cross(a, b, x), s.cross(b, c, x), s.cross(c, a, x));
    (o1 > 0 && o2 > 0 && o3 > 0) || (o1 < 0 && o2 < 0 && o3 < 0)
}

pub fn two_trees(s: &PointSet) -> Result<Packing> {
    two_trees_traced(s).map(|o| o.packing)
}

pub fn two_trees_traced(s: &PointSet) -> Result<TwoTreesOutcome> {
    need(s, 4)?;
    let je = find_j_edge(s, 2)?;
    let (r, b) = (je.u, je.v);
    let (x, y) = (je.left[0], je.left[1]);
    let (case, p, q) = if inside_triangle(s, x, y, r, b) {
        (TwoTreesCase::Interior, y, x)
    } else if inside_triangle(s, y, x, r, b) {
        (TwoTreesCase::Interior, x, y)
    } else if s.crosses(r, x, b, y) {
        (TwoTreesCase::Convex, x, y)
    } else {
        (TwoTreesCase::Convex, y, x)
    };
    let right: Vec<usize> = (0..s.len()).filter(|&v| ![r, b, p, q].contains(&v)).collect();
    let mut blue = vec![EdgeRef::new(q, r), EdgeRef::new(r, p), EdgeRef::new(p, b)];
    blue.extend(right.iter().map(|&v| EdgeRef::new(b, v)));
    let mut red = vec![EdgeRef::new(p, q), EdgeRef::new(q, b), EdgeRef::new(b, r)];
    red.extend(right.iter().map(|&v| EdgeRef::new(r, v)));
    let packing = checked(Packing::new(s.clone(), vec![tree(blue), tree(red)]), "two trees")?;
    Ok(TwoTreesOutcome { packing, case, roles: (r, b, p, q) })
}

/// Partition of the 15 edges spanned by six points into three plane spanning
/// trees, the first containing `forced` if given. Returns the
/// lexicographically first solution.
pub fn partition_k6_three_trees(s6: &PointSet, forced: Option<EdgeRef>) -> Result<Packing> {
    if s6.len() != 6 {
        return Err(ConstructionError::Failed(format!("expected 6 points, got {}", s6.len())));
    }
    let ground = Ground::Points(s6.clone());
    let space = MaskSpace::new(&ground).map_err(|e| ConstructionError::Failed(e.to_string()))?;
    let trees = enumerate_masks(&space, StructureKind::Tree);
    let full: u128 = (1u128 << space.edge_count()) - 1;
    let forced_bit = forced.map(|e| 1u128 << e.index(6));
    let lookup: std::collections::HashSet<u128> = trees.iter().copied().collect();
    for (i, &t1) in trees.iter().enumerate() {
        if forced_bit.is_some_and(|f| t1 & f == 0) {
            continue;
        }
        for &t2 in &trees {
            if t2 & t1 != 0 {
                continue;
            }
            let t3 = full & !(t1 | t2);
            if lookup.contains(&t3) {
                let members = [t1, t2, t3].iter().map(|&m| space.structure(m, StructureKind::Tree)).collect();
                log::debug!("six-point partition found at first tree {i}");
                return Ok(Packing::new(s6.clone(), members));
            }
        }
    }
    Err(ConstructionError::NoPartition)
}

/// How the green tree reached the points outside the six-point core.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreenExtension {
    /// Nothing outside the core (n = 6).
    None,
    /// `q q'` crosses `rb`; star at `q'`.
    Crossing { q: usize, q_prime: usize },
    /// Hull edge `a p` crossing the line through `rb`; star at `p`.
    HullEdge { a: usize, p: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTreesOutcome {
    pub packing: Packing,
    pub extension: GreenExtension,
    /// The 4-edge `(r, b)`.
    pub edge: (usize, usize),
}

pub fn three_trees(s: &PointSet) -> Result<Packing> {
    three_trees_traced(s).map(|o| o.packing)
}

pub fn three_trees_traced(s: &PointSet) -> Result<ThreeTreesOutcome> {
    need(s, 6)?;
    let je = find_j_edge(s, 4)?;
    let (r, b) = (je.u, je.v);
    let mut core = vec![r, b];
    core.extend(&je.left);
    core.sort_unstable();
    let local = |v: usize| core.iter().position(|&c| c == v).expect("core vertex");
    let k6 = partition_k6_three_trees(&s.subset(&core), Some(EdgeRef::new(local(r), local(b))))?;
    let lift = |g: &GraphStructure| -> Vec<EdgeRef> {
        g.edges().iter().map(|e| EdgeRef::new(core[e.a()], core[e.b()])).collect()
    };
    let mut red = lift(&k6.members[0]);
    let mut blue = lift(&k6.members[1]);
    let mut green = lift(&k6.members[2]);
    let outside: Vec<usize> = (0..s.len()).filter(|v| !core.contains(v)).collect();
    red.extend(outside.iter().map(|&v| EdgeRef::new(r, v)));
    blue.extend(outside.iter().map(|&v| EdgeRef::new(b, v)));

    let extension = if outside.is_empty() {
        GreenExtension::None
    } else {
        let t = plane_completion(s, &core, &green);
        let q = core
            .iter()
            .copied()
            .filter(|&v| v != r && v != b)
            .filter(|&v| t.contains(&EdgeRef::new(v, r)) && t.contains(&EdgeRef::new(v, b)))
            .find(|&v| core.iter().all(|&w| w == v || w == r || w == b || !inside_triangle(s, w, v, r, b)))
            .ok_or_else(|| ConstructionError::Failed("no empty triangle on rb in the completion".into()))?;
        let ext = match outside.iter().copied().find(|&x| s.crosses(q, x, r, b)) {
            Some(qp) => {
                green.push(EdgeRef::new(q, qp));
                green.extend(outside.iter().filter(|&&x| x != qp).map(|&x| EdgeRef::new(qp, x)));
                GreenExtension::Crossing { q, q_prime: qp }
            }
            None => {
                let hull = convex_hull(s);
                let h = hull.len();
                let (a, p) = (0..h)
                    .map(|i| (hull[i], hull[(i + 1) % h]))
                    .filter(|&(x, y)| s.cross(r, b, x).signum() * s.cross(r, b, y).signum() < 0)
                    .map(|(x, y)| if s.cross(r, b, x) > 0 { (x, y) } else { (y, x) })
                    .min_by_key(|&(x, y)| EdgeRef::new(x, y))
                    .ok_or_else(|| ConstructionError::Failed("no hull edge crosses the line rb".into()))?;
                green.push(EdgeRef::new(a, p));
                green.extend(outside.iter().filter(|&&x| x != p).map(|&x| EdgeRef::new(p, x)));
                GreenExtension::HullEdge { a, p }
            }
        };
        ext
    };
    let packing = checked(Packing::new(s.clone(), vec![tree(red), tree(blue), tree(green)]), "three trees")?;
    Ok(ThreeTreesOutcome { packing, extension, edge: (r, b) })
}

/// Greedy maximal plane graph on `core` containing `base`, inserting the
/// remaining edges in lexicographic order.
fn plane_completion(s: &PointSet, core: &[usize], base: &[EdgeRef]) -> Vec<EdgeRef> {
    let mut t = base.to_vec();
    for (i, &a) in core.iter().enumerate() {
        for &b in &core[i + 1..] {
            let e = EdgeRef::new(a, b);
            if !t.contains(&e) && t.iter().all(|f| !s.crosses(a, b, f.a(), f.b())) {
                t.push(e);
            }
        }
    }
    t
}

/// The side a zigzag vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl Side {
    fn flip(self) -> Self {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagPath {
    pub vertices: Vec<usize>,
    /// Second vertex of the path.
    pub q: usize,
}

impl ZigzagPath {
    pub fn structure(&self) -> GraphStructure {
        GraphStructure::from_path(&self.vertices)
    }
}

const ZIGZAG_EXHAUSTIVE_LIMIT: usize = 10;

/// Plane Hamiltonian path from `start` alternating between the two sides,
/// beginning with a vertex of `second_in`.
///
/// Each step looks at the hull of the unvisited points, takes the vertices
/// visible from the current point, and moves to the smallest one of the
/// wanted side that has a hull neighbour of the other side.
pub fn zigzag_alternating_path(
    s: &PointSet,
    a_side: &[usize],
    b_side: &[usize],
    start: usize,
    second_in: Side,
) -> Result<ZigzagPath> {
    let side_of = |v: usize| if a_side.contains(&v) { Side::A } else { Side::B };
    let path = bridge_walk(s, a_side, b_side, start, second_in, &side_of);
    let n = 1 + a_side.len() + b_side.len();
    if let Some(v) = path.filter(|v| path_is_plane(s, v)) {
        return Ok(ZigzagPath { q: v.get(1).copied().unwrap_or(start), vertices: v });
    }
    if n <= ZIGZAG_EXHAUSTIVE_LIMIT {
        log::warn!("zigzag bridge rule failed on {n} points; searching exhaustively");
        let mut rest: Vec<usize> = a_side.iter().chain(b_side).copied().collect();
        rest.sort_unstable();
        let mut seq = vec![start];
        if exhaustive_zigzag(s, &mut seq, &mut rest, second_in, &side_of) {
            return Ok(ZigzagPath { q: seq.get(1).copied().unwrap_or(start), vertices: seq });
        }
    }
    Err(ConstructionError::Failed(format!("no plane zigzag path from {start} on {n} points")))
}

fn bridge_walk(
    s: &PointSet,
    a_side: &[usize],
    b_side: &[usize],
    start: usize,
    second_in: Side,
    side_of: &dyn Fn(usize) -> Side,
) -> Option<Vec<usize>> {
    let mut unvisited: Vec<usize> = a_side.iter().chain(b_side).copied().collect();
    unvisited.sort_unstable();
    let (mut cur, mut want) = (start, second_in);
    let mut path = vec![start];
    while !unvisited.is_empty() {
        let next = if unvisited.len() == 1 {
            Some(unvisited[0]).filter(|&w| side_of(w) == want)
        } else {
            let hull = convex_hull_of(s, &unvisited);
            let h = hull.len();
            let visible: Vec<bool> = if h == 2 {
                vec![true; 2]
            } else {
                let mut vis = vec![false; h];
                for i in 0..h {
                    if s.cross(hull[i], hull[(i + 1) % h], cur) < 0 {
                        vis[i] = true;
                        vis[(i + 1) % h] = true;
                    }
                }
                vis
            };
            (0..h)
                .filter(|&i| visible[i] && side_of(hull[i]) == want)
                .filter(|&i| side_of(hull[(i + h - 1) % h]) != want || side_of(hull[(i + 1) % h]) != want)
                .map(|i| hull[i])
                .min()
        };
        let w = next?;
        path.push(w);
        unvisited.retain(|&x| x != w);
        cur = w;
        want = want.flip();
    }
    Some(path)
}

fn path_is_plane(s: &PointSet, v: &[usize]) -> bool {
    let edges: Vec<(usize, usize)> = v.windows(2).map(|w| (w[0], w[1])).collect();
    edges.iter().enumerate().all(|(i, &(a, b))| edges[i + 1..].iter().all(|&(c, d)| !s.crosses(a, b, c, d)))
}

fn exhaustive_zigzag(
    s: &PointSet,
    seq: &mut Vec<usize>,
    rest: &mut Vec<usize>,
    want: Side,
    side_of: &dyn Fn(usize) -> Side,
) -> bool {
    if rest.is_empty() {
        return true;
    }
    let last = *seq.last().unwrap();
    for i in 0..rest.len() {
        let w = rest[i];
        if side_of(w) != want {
            continue;
        }
        let clash = seq.windows(2).any(|e| s.crosses(e[0], e[1], last, w));
        if clash {
            continue;
        }
        rest.remove(i);
        seq.push(w);
        if exhaustive_zigzag(s, seq, rest, want.flip(), side_of) {
            return true;
        }
        seq.pop();
        rest.insert(i, w);
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPathsOutcome {
    pub packing: Packing,
    pub p: usize,
    pub q: usize,
    /// Whether `q` is the last point of `B` in clockwise order.
    pub q_is_last: bool,
}

pub fn two_paths(s: &PointSet) -> Result<Packing> {
    two_paths_traced(s).map(|o| o.packing)
}

/// Red is a zigzag from `p` across the split; blue runs clockwise through
/// `A` in reverse, then `p`, then through `B`, entering `B` at whichever end
/// avoids the red edge `pq`.
pub fn two_paths_traced(s: &PointSet) -> Result<TwoPathsOutcome> {
    need(s, 4)?;
    let n = s.len();
    let p = (0..n).min_by_key(|&i| s.point(i)).expect("nonempty");
    let others: Vec<usize> = (0..n).filter(|&i| i != p).collect();
    let order = clockwise_from_extreme(p, s, &others);
    let k = (n - 1) / 2;
    let (a, b) = order.split_at(k);
    let red = zigzag_alternating_path(s, a, b, p, Side::B)?;
    let q = red.q;
    let q_is_last = q == *b.last().expect("B is nonempty");
    let mut blue: Vec<usize> = a.iter().rev().copied().collect();
    blue.push(p);
    if q_is_last {
        blue.extend(b.iter().copied());
    } else {
        blue.extend(b.iter().rev().copied());
    }
    let members = vec![red.structure(), GraphStructure::from_path(&blue)];
    let packing = checked(Packing::new(s.clone(), members), "two paths")?;
    Ok(TwoPathsOutcome { packing, p, q, q_is_last })
}
