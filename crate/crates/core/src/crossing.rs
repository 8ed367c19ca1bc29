//! Crossing families: sets of pairwise properly crossing edges.

use thiserror::Error;

use crate::geom::{convex_hull_of, PointSet};
use crate::packing::{all_edges, EdgeRef};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CrossingFamily {
    pub edges: Vec<EdgeRef>,
}

impl CrossingFamily {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Every pair of members properly crosses.
    pub fn is_valid(&self, s: &PointSet) -> bool {
        self.edges.iter().enumerate().all(|(i, e)| {
            self.edges[i + 1..].iter().all(|f| s.crosses(e.a(), e.b(), f.a(), f.b()))
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossingError {
    #[error("node budget exhausted; best family so far has {} edges", .best.len())]
    BudgetExceeded { best: CrossingFamily },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.words.iter().position(|&w| w != 0).map(|k| 64 * k + self.words[k].trailing_zeros() as usize)
    }

    fn remove_all(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }
}

/// Edges of the complete graph with the "properly crosses" adjacency.
pub struct CrossingGraph {
    pub edges: Vec<EdgeRef>,
    adjacency: Vec<BitSet>,
}

impl CrossingGraph {
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    /// Number of unordered crossing pairs.
    pub fn pair_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::count).sum::<usize>() / 2
    }
}

pub fn crossing_graph(s: &PointSet) -> CrossingGraph {
    let edges = all_edges(s.len());
    let m = edges.len();
    let mut adjacency = vec![BitSet::new(m); m];
    for i in 0..m {
        for j in (i + 1)..m {
            let (e, f) = (edges[i], edges[j]);
            if s.crosses(e.a(), e.b(), f.a(), f.b()) {
                adjacency[i].set(j);
                adjacency[j].set(i);
            }
        }
    }
    CrossingGraph { edges, adjacency }
}

struct Clique<'a> {
    g: &'a CrossingGraph,
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Clique<'_> {
    /// Greedy colouring of `cand` in index order; returns vertices with their
    /// colour bound, sorted by colour.
    fn colour(&self, cand: &BitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut left = cand.clone();
        let mut c = 0;
        while !left.is_empty() {
            c += 1;
            let mut q = left.clone();
            while let Some(v) = q.first() {
                q.clear(v);
                left.clear(v);
                q.remove_all(&self.g.adjacency[v]);
                out.push((v, c));
            }
        }
        out
    }

    fn expand(&mut self, mut cand: BitSet) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let order = self.colour(&cand);
        for &(v, c) in order.iter().rev() {
            if self.current.len() + c <= self.best.len() {
                return true;
            }
            self.current.push(v);
            let next = cand.and(&self.g.adjacency[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else if !self.expand(next) {
                self.current.pop();
                return false;
            }
            self.current.pop();
            cand.clear(v);
        }
        true
    }
}

fn family_from(g: &CrossingGraph, idx: &[usize]) -> CrossingFamily {
    let mut edges: Vec<EdgeRef> = idx.iter().map(|&i| g.edges[i]).collect();
    edges.sort_unstable();
    CrossingFamily { edges }
}

/// Maximum crossing family by branch and bound over the crossing graph.
pub fn max_crossing_family_exact(s: &PointSet, budget: u64) -> Result<CrossingFamily, CrossingError> {
    let g = crossing_graph(s);
    let m = g.edges.len();
    let mut all = BitSet::new(m);
    for i in 0..m {
        all.set(i);
    }
    let mut st = Clique { g: &g, current: Vec::new(), best: Vec::new(), nodes: 0, budget };
    if m > 0 {
        // any single edge is a family of size one
        st.best = vec![0];
    }
    let done = st.expand(all);
    let best = family_from(&g, &st.best);
    if done {
        Ok(best)
    } else {
        Err(CrossingError::BudgetExceeded { best })
    }
}

/// Exact search restricted to a vertex subset; edges are in global indices.
pub fn max_crossing_family_exact_in(
    s: &PointSet,
    subset: &[usize],
    budget: u64,
) -> Result<CrossingFamily, CrossingError> {
    let local = s.subset(subset);
    let map = |f: CrossingFamily| CrossingFamily {
        edges: {
            let mut e: Vec<EdgeRef> =
                f.edges.iter().map(|e| EdgeRef::new(subset[e.a()], subset[e.b()])).collect();
            e.sort_unstable();
            e
        },
    };
    match max_crossing_family_exact(&local, budget) {
        Ok(f) => Ok(map(f)),
        Err(CrossingError::BudgetExceeded { best }) => Err(CrossingError::BudgetExceeded { best: map(best) }),
    }
}

/// Pairs hull vertex `i` with hull vertex `i + floor(h/2)`.
pub fn convex_position_family(s: &PointSet) -> CrossingFamily {
    convex_position_family_in(s, &s.all_indices())
}

pub fn convex_position_family_in(s: &PointSet, subset: &[usize]) -> CrossingFamily {
    hull_pairing(&convex_hull_of(s, subset), 0)
}

fn hull_pairing(hull: &[usize], shift: usize) -> CrossingFamily {
    let h = hull.len();
    let half = h / 2;
    if h < 2 {
        return CrossingFamily::default();
    }
    let mut edges: Vec<EdgeRef> = (0..half)
        .map(|i| EdgeRef::new(hull[(i + shift) % h], hull[(i + shift + half) % h]))
        .collect();
    edges.sort_unstable();
    CrossingFamily { edges }
}

/// Largest of the hull-pairing seeds, each extended by one lexicographic pass
/// adding every edge that crosses all current members.
pub fn crossing_family_greedy(s: &PointSet, target: usize) -> CrossingFamily {
    crossing_family_greedy_in(s, &s.all_indices(), target)
}

pub fn crossing_family_greedy_in(s: &PointSet, subset: &[usize], target: usize) -> CrossingFamily {
    let mut verts = subset.to_vec();
    verts.sort_unstable();
    if verts.len() < 4 {
        // no two edges with four distinct endpoints
        return CrossingFamily::default();
    }
    let hull = convex_hull_of(s, &verts);
    let h = hull.len();
    let seeds = (h / 2).max(1);
    let mut best = CrossingFamily::default();
    for shift in 0..seeds {
        // a hull side crosses nothing, so a triangle seeds from scratch
        let mut fam = if h == 3 { Vec::new() } else { hull_pairing(&hull, shift).edges };
        for (ai, &a) in verts.iter().enumerate() {
            for &b in &verts[ai + 1..] {
                let e = EdgeRef::new(a, b);
                if fam.contains(&e) {
                    continue;
                }
                if fam.iter().all(|f| s.crosses(a, b, f.a(), f.b())) {
                    fam.push(e);
                }
            }
        }
        if fam.len() > best.len() {
            fam.sort_unstable();
            best = CrossingFamily { edges: fam };
        }
    }
    if target > 0 && best.len() > target {
        best.edges.truncate(target);
    }
    best
}
