//! Edges, plane structures, packings and the verifier suite.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::geom::{Orientation, PointSet};
use crate::wheel::WheelConfig;

/// An undirected edge with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    a: usize,
    b: usize,
}

impl EdgeRef {
    /// Normalizes the endpoint order. Panics on a loop.
    pub fn new(u: usize, v: usize) -> Self {
        assert_ne!(u, v, "an edge needs two distinct endpoints");
        if u < v {
            EdgeRef { a: u, b: v }
        } else {
            EdgeRef { a: v, b: u }
        }
    }

    pub fn try_new(u: usize, v: usize) -> Option<Self> {
        (u != v).then(|| EdgeRef::new(u, v))
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    pub fn contains(self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn shares_endpoint(self, other: EdgeRef) -> bool {
        self.contains(other.a) || self.contains(other.b)
    }

    /// Position of this edge in the lexicographic list of all edges on `n` vertices.
    pub fn index(self, n: usize) -> usize {
        self.a * n - self.a * (self.a + 1) / 2 + (self.b - self.a - 1)
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// All edges of the complete graph on `n` vertices, lexicographically.
pub fn all_edges(n: usize) -> Vec<EdgeRef> {
    (0..n).flat_map(|a| ((a + 1)..n).map(move |b| EdgeRef { a, b })).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Tree,
    Path,
    Generic,
}

impl StructureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureKind::Tree => "tree",
            StructureKind::Path => "path",
            StructureKind::Generic => "generic",
        }
    }
}

impl std::str::FromStr for StructureKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tree" => Ok(StructureKind::Tree),
            "path" => Ok(StructureKind::Path),
            "generic" => Ok(StructureKind::Generic),
            other => Err(format!("unknown structure kind `{other}`")),
        }
    }
}

/// An edge set over a ground set, tagged with the kind it claims to be.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphStructure {
    pub kind: StructureKind,
    edges: Vec<EdgeRef>,
}

impl GraphStructure {
    /// Edges are stored sorted; duplicates are kept so the verifier can see them.
    pub fn new(kind: StructureKind, mut edges: Vec<EdgeRef>) -> Self {
        edges.sort_unstable();
        GraphStructure { kind, edges }
    }

    pub fn from_path(vertices: &[usize]) -> Self {
        let edges = vertices.windows(2).map(|w| EdgeRef::new(w[0], w[1])).collect();
        GraphStructure::new(StructureKind::Path, edges)
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for e in &self.edges {
            if e.b < n {
                deg[e.a] += 1;
                deg[e.b] += 1;
            }
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }
}

/// Where the vertices live: explicit points or the symbolic regular wheel.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ground {
    Points(PointSet),
    Wheel(WheelConfig),
}

impl Ground {
    pub fn vertex_count(&self) -> usize {
        match self {
            Ground::Points(s) => s.len(),
            Ground::Wheel(w) => w.vertex_count(),
        }
    }

    pub fn crosses(&self, e: EdgeRef, f: EdgeRef) -> bool {
        match self {
            Ground::Points(s) => s.crosses(e.a, e.b, f.a, f.b),
            Ground::Wheel(w) => w.crosses(e, f),
        }
    }

    pub fn orientation(&self, i: usize, j: usize, k: usize) -> Orientation {
        match self {
            Ground::Points(s) => s.orientation(i, j, k),
            Ground::Wheel(w) => w.orientation(i, j, k),
        }
    }

    pub fn as_points(&self) -> Option<&PointSet> {
        match self {
            Ground::Points(s) => Some(s),
            Ground::Wheel(_) => None,
        }
    }
}

impl From<PointSet> for Ground {
    fn from(s: PointSet) -> Self {
        Ground::Points(s)
    }
}

impl From<WheelConfig> for Ground {
    fn from(w: WheelConfig) -> Self {
        Ground::Wheel(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    pub ground: Ground,
    pub members: Vec<GraphStructure>,
}

impl Packing {
    pub fn new(ground: impl Into<Ground>, members: Vec<GraphStructure>) -> Self {
        Packing { ground: ground.into(), members }
    }

    pub fn vertex_count(&self) -> usize {
        self.ground.vertex_count()
    }

    pub fn edge_total(&self) -> usize {
        self.members.iter().map(GraphStructure::len).sum()
    }
}

/// A concrete reason for a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    CrossingPair(EdgeRef, EdgeRef),
    RepeatedEdge { edge: EdgeRef, first_member: usize, second_member: usize },
    UncoveredEdge(EdgeRef),
    DuplicateEdge(EdgeRef),
    Unreached(usize),
    CycleEdge(EdgeRef),
    EdgeCount { expected: usize, found: usize },
    Degree { vertex: usize, degree: usize },
    IndexOutOfRange(EdgeRef),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::CrossingPair(e, g) => write!(f, "edges {e} and {g} cross"),
            Witness::RepeatedEdge { edge, first_member, second_member } => {
                write!(f, "edge {edge} appears in members {first_member} and {second_member}")
            }
            Witness::UncoveredEdge(e) => write!(f, "edge {e} is not covered"),
            Witness::DuplicateEdge(e) => write!(f, "edge {e} is listed twice"),
            Witness::Unreached(v) => write!(f, "vertex {v} is not reached"),
            Witness::CycleEdge(e) => write!(f, "edge {e} closes a cycle"),
            Witness::EdgeCount { expected, found } => {
                write!(f, "expected {expected} edges, found {found}")
            }
            Witness::Degree { vertex, degree } => write!(f, "vertex {vertex} has degree {degree}"),
            Witness::IndexOutOfRange(e) => write!(f, "edge {e} references a missing vertex"),
        }
    }
}

/// A boolean verdict; `witness` is set exactly when `ok` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub ok: bool,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass() -> Self {
        Check { ok: true, witness: None }
    }

    pub fn fail(w: Witness) -> Self {
        Check { ok: false, witness: Some(w) }
    }

    fn from_option(w: Option<Witness>) -> Self {
        match w {
            None => Check::pass(),
            Some(w) => Check::fail(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberReport {
    pub kind: StructureKind,
    pub plane: Check,
    pub spanning: Check,
    pub tree: Check,
    pub path: Check,
    pub max_degree: usize,
    pub diameter: Option<usize>,
}

impl MemberReport {
    /// The flags this member's kind requires.
    pub fn ok(&self) -> bool {
        match self.kind {
            StructureKind::Generic => self.plane.ok,
            StructureKind::Tree => self.plane.ok && self.spanning.ok && self.tree.ok,
            StructureKind::Path => {
                self.plane.ok && self.spanning.ok && self.tree.ok && self.path.ok
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub members: Vec<MemberReport>,
    pub require_partition: bool,
    pub edge_disjoint: Check,
    pub is_partition: Check,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.members.iter().all(MemberReport::ok)
            && self.edge_disjoint.ok
            && (!self.require_partition || self.is_partition.ok)
    }

    /// First witness among the flags that matter, in report order.
    pub fn first_failure(&self) -> Option<String> {
        let require_partition = self.require_partition;
        for (i, m) in self.members.iter().enumerate() {
            if m.ok() {
                continue;
            }
            for (name, c) in
                [("plane", &m.plane), ("spanning", &m.spanning), ("tree", &m.tree), ("path", &m.path)]
            {
                if let Some(w) = &c.witness {
                    return Some(format!("member {i}: not {name}: {w}"));
                }
            }
        }
        if let Some(w) = &self.edge_disjoint.witness {
            return Some(format!("not edge-disjoint: {w}"));
        }
        if require_partition {
            if let Some(w) = &self.is_partition.witness {
                return Some(format!("not a partition: {w}"));
            }
        }
        None
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members.iter().enumerate() {
            let diam = m.diameter.map_or_else(|| "-".to_string(), |d| d.to_string());
            writeln!(
                f,
                "member {i} ({}): plane={} spanning={} tree={} path={} max_degree={} diameter={}",
                m.kind.as_str(),
                m.plane.ok,
                m.spanning.ok,
                m.tree.ok,
                m.path.ok,
                m.max_degree,
                diam
            )?;
            if !m.ok() {
                for c in [&m.plane, &m.spanning, &m.tree, &m.path] {
                    if let Some(w) = &c.witness {
                        writeln!(f, "  witness: {w}")?;
                    }
                }
            }
        }
        writeln!(f, "edge_disjoint={}", self.edge_disjoint.ok)?;
        if let Some(w) = &self.edge_disjoint.witness {
            writeln!(f, "  witness: {w}")?;
        }
        writeln!(f, "is_partition={}", self.is_partition.ok)?;
        if self.require_partition {
            if let Some(w) = &self.is_partition.witness {
                writeln!(f, "  witness: {w}")?;
            }
        }
        writeln!(f, "result: {}", if self.all_ok() { "ok" } else { "FAILED" })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackingError {
    #[error("structure is not a spanning tree: {0}")]
    NotATree(Witness),
}

fn out_of_range(n: usize, g: &GraphStructure) -> Option<Witness> {
    g.edges.iter().find(|e| e.b >= n).map(|&e| Witness::IndexOutOfRange(e))
}

/// Pairwise crossing scan; the witness is the first crossing pair in edge order.
pub fn verify_plane(ground: &Ground, g: &GraphStructure) -> Check {
    let n = ground.vertex_count();
    if let Some(w) = out_of_range(n, g) {
        return Check::fail(w);
    }
    let es = &g.edges;
    for i in 0..es.len() {
        for j in (i + 1)..es.len() {
            if ground.crosses(es[i], es[j]) {
                return Check::fail(Witness::CrossingPair(es[i], es[j]));
            }
        }
    }
    Check::pass()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

fn check_spanning(n: usize, g: &GraphStructure) -> Check {
    if let Some(w) = out_of_range(n, g) {
        return Check::fail(w);
    }
    let mut uf = UnionFind::new(n);
    for e in &g.edges {
        uf.union(e.a, e.b);
    }
    let root = uf.find(0);
    Check::from_option((1..n).find(|&v| uf.find(v) != root).map(Witness::Unreached))
}

fn check_tree(n: usize, g: &GraphStructure) -> Check {
    if let Some(w) = out_of_range(n, g) {
        return Check::fail(w);
    }
    if let Some(w) = g.edges.windows(2).find(|w| w[0] == w[1]) {
        return Check::fail(Witness::DuplicateEdge(w[0]));
    }
    let mut uf = UnionFind::new(n);
    for &e in &g.edges {
        if !uf.union(e.a, e.b) {
            return Check::fail(Witness::CycleEdge(e));
        }
    }
    if g.edges.len() != n.saturating_sub(1) {
        return Check::fail(Witness::EdgeCount { expected: n - 1, found: g.edges.len() });
    }
    Check::pass()
}

fn check_path_degrees(n: usize, g: &GraphStructure) -> Check {
    let deg = g.degrees(n);
    Check::from_option(
        deg.iter()
            .enumerate()
            .find(|&(_, &d)| d > 2)
            .map(|(vertex, &degree)| Witness::Degree { vertex, degree }),
    )
}

/// `|E| = n - 1` and the edges connect all vertices.
pub fn verify_spanning_tree(ground: &Ground, g: &GraphStructure) -> bool {
    let n = ground.vertex_count();
    check_spanning(n, g).ok && check_tree(n, g).ok
}

pub fn verify_spanning_path(ground: &Ground, g: &GraphStructure) -> bool {
    verify_spanning_tree(ground, g) && check_path_degrees(ground.vertex_count(), g).ok
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeMetrics {
    pub max_degree: usize,
    pub diameter: usize,
}

/// Exact maximum degree and diameter of a spanning tree (double BFS sweep).
pub fn tree_metrics(n: usize, g: &GraphStructure) -> Result<TreeMetrics, PackingError> {
    for c in [check_spanning(n, g), check_tree(n, g)] {
        if let Some(w) = c.witness {
            return Err(PackingError::NotATree(w));
        }
    }
    let mut adj = vec![Vec::new(); n];
    for e in &g.edges {
        adj[e.a].push(e.b);
        adj[e.b].push(e.a);
    }
    let bfs = |src: usize| {
        let mut dist = vec![usize::MAX; n];
        dist[src] = 0;
        let mut q = VecDeque::from([src]);
        let mut far = (0, src);
        while let Some(v) = q.pop_front() {
            if (dist[v], v) > far {
                far = (dist[v], v);
            }
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        far
    };
    let (_, end) = bfs(0);
    let (diameter, _) = bfs(end);
    let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
    Ok(TreeMetrics { max_degree, diameter })
}

fn member_report(ground: &Ground, g: &GraphStructure) -> MemberReport {
    let n = ground.vertex_count();
    let plane = verify_plane(ground, g);
    let spanning = check_spanning(n, g);
    let tree = check_tree(n, g);
    let path = if tree.ok { check_path_degrees(n, g) } else { tree.clone() };
    let max_degree = g.degrees(n).into_iter().max().unwrap_or(0);
    let diameter = if spanning.ok && tree.ok { tree_metrics(n, g).ok().map(|m| m.diameter) } else { None };
    MemberReport { kind: g.kind, plane, spanning, tree, path, max_degree, diameter }
}

/// Full verification of a packing.
pub fn verify_packing(p: &Packing, require_partition: bool) -> VerificationReport {
    let n = p.vertex_count();
    let members: Vec<MemberReport> = p.members.iter().map(|g| member_report(&p.ground, g)).collect();

    let mut owner: HashMap<EdgeRef, usize> = HashMap::new();
    let mut disjoint: Option<Witness> = None;
    let mut repeated: Option<Witness> = None;
    for (i, g) in p.members.iter().enumerate() {
        for &e in g.edges() {
            match owner.get(&e) {
                Some(&j) => {
                    let w = Witness::RepeatedEdge { edge: e, first_member: j, second_member: i };
                    if j != i && disjoint.is_none() {
                        disjoint = Some(w.clone());
                    }
                    if repeated.is_none() {
                        repeated = Some(w);
                    }
                }
                None => {
                    owner.insert(e, i);
                }
            }
        }
    }
    let mut partition = repeated;
    if partition.is_none() {
        if let Some(&e) = owner.keys().filter(|e| e.b >= n).min() {
            partition = Some(Witness::IndexOutOfRange(e));
        }
    }
    if partition.is_none() {
        partition = all_edges(n).into_iter().find(|e| !owner.contains_key(e)).map(Witness::UncoveredEdge);
    }
    VerificationReport {
        members,
        require_partition,
        edge_disjoint: Check::from_option(disjoint),
        is_partition: Check::from_option(partition),
    }
}
