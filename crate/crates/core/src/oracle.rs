//! Exhaustive enumeration of plane spanning trees and paths, and exact
//! maximum packings over them. Edge sets are `u128` masks, so `n <= 16`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::packing::{all_edges, EdgeRef, GraphStructure, Ground, Packing, StructureKind};

/// Largest vertex count the mask representation supports.
pub const MAX_ORACLE_N: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} vertices exceed the exact-search limit of 16")]
    TooLarge(usize),
    #[error("node budget exhausted; best packing found has {} members (lower bound)", .best.count)]
    BudgetExceeded { best: OracleResult },
}

/// Exact maximum and a witness packing attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub count: usize,
    pub packing: Packing,
    pub nodes: u64,
}

/// Edges of the complete graph over a ground set with per-edge crossing masks.
pub struct MaskSpace {
    n: usize,
    edges: Vec<EdgeRef>,
    crossing: Vec<u128>,
    index: Vec<Vec<usize>>,
}

impl MaskSpace {
    pub fn new(ground: &Ground) -> Result<Self, OracleError> {
        let n = ground.vertex_count();
        if n > MAX_ORACLE_N {
            return Err(OracleError::TooLarge(n));
        }
        let edges = all_edges(n);
        let mut crossing = vec![0u128; edges.len()];
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                if ground.crosses(edges[i], edges[j]) {
                    crossing[i] |= 1 << j;
                    crossing[j] |= 1 << i;
                }
            }
        }
        let mut index = vec![vec![usize::MAX; n]; n];
        for (i, e) in edges.iter().enumerate() {
            index[e.a()][e.b()] = i;
            index[e.b()][e.a()] = i;
        }
        Ok(MaskSpace { n, edges, crossing, index })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, i: usize) -> EdgeRef {
        self.edges[i]
    }

    pub fn edges_of(&self, mask: u128) -> Vec<EdgeRef> {
        bits(mask).map(|i| self.edges[i]).collect()
    }

    pub fn mask_of(&self, edges: &[EdgeRef]) -> u128 {
        edges.iter().fold(0, |m, e| m | 1u128 << e.index(self.n))
    }

    pub fn max_degree(&self, mask: u128) -> usize {
        let mut deg = vec![0usize; self.n];
        for i in bits(mask) {
            deg[self.edges[i].a()] += 1;
            deg[self.edges[i].b()] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub fn structure(&self, mask: u128, kind: StructureKind) -> GraphStructure {
        GraphStructure::new(kind, self.edges_of(mask))
    }
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Order masks by their sorted edge-index lists.
fn lex_key(mask: u128) -> Vec<usize> {
    bits(mask).collect()
}

/// Masks of all plane spanning trees (or paths), in lexicographic order of
/// their edge lists.
pub fn enumerate_masks(space: &MaskSpace, kind: StructureKind) -> Vec<u128> {
    let mut out = Vec::new();
    let n = space.n;
    if n == 1 {
        return vec![0];
    }
    match kind {
        StructureKind::Path => {
            let mut visited = vec![false; n];
            for s in 0..n {
                visited[s] = true;
                let mut seq = vec![s];
                path_dfs(space, &mut seq, &mut visited, 0, &mut out);
                visited[s] = false;
            }
        }
        _ => {
            let comp: Vec<u8> = (0..n as u8).collect();
            tree_rec(space, 0, 0, 0, &comp, &mut out);
        }
    }
    out.sort_by_cached_key(|&m| lex_key(m));
    out
}

fn tree_rec(space: &MaskSpace, next: usize, chosen: u128, count: usize, comp: &[u8], out: &mut Vec<u128>) {
    let need = space.n - 1;
    if count == need {
        out.push(chosen);
        return;
    }
    if space.edges.len() - next < need - count {
        return;
    }
    let e = space.edges[next];
    let (ca, cb) = (comp[e.a()], comp[e.b()]);
    if ca != cb && space.crossing[next] & chosen == 0 {
        let (lo, hi) = (ca.min(cb), ca.max(cb));
        let merged: Vec<u8> = comp.iter().map(|&c| if c == hi { lo } else { c }).collect();
        tree_rec(space, next + 1, chosen | 1 << next, count + 1, &merged, out);
    }
    tree_rec(space, next + 1, chosen, count, comp, out);
}

fn path_dfs(
    space: &MaskSpace,
    seq: &mut Vec<usize>,
    visited: &mut [bool],
    chosen: u128,
    out: &mut Vec<u128>,
) {
    let n = space.n;
    if seq.len() == n {
        if seq[0] < seq[n - 1] {
            out.push(chosen);
        }
        return;
    }
    let last = *seq.last().unwrap();
    for v in 0..n {
        if visited[v] {
            continue;
        }
        let i = space.index[last][v];
        if space.crossing[i] & chosen != 0 {
            continue;
        }
        visited[v] = true;
        seq.push(v);
        path_dfs(space, seq, visited, chosen | 1 << i, out);
        seq.pop();
        visited[v] = false;
    }
}

/// All plane spanning trees or paths of the complete geometric graph.
pub fn enumerate_plane_spanning_structures(
    ground: &Ground,
    kind: StructureKind,
) -> Result<Vec<GraphStructure>, OracleError> {
    let space = MaskSpace::new(ground)?;
    let kind = if kind == StructureKind::Generic { StructureKind::Tree } else { kind };
    Ok(enumerate_masks(&space, kind).into_iter().map(|m| space.structure(m, kind)).collect())
}

struct Search<'a> {
    items: &'a [u128],
    per_member: usize,
    ceiling: usize,
    budget: u64,
    nodes: u64,
    stack: Vec<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    /// Returns false when the budget runs out.
    fn go(&mut self, start: usize, used: u128, free_edges: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if self.stack.len() > self.best.len() {
            self.best = self.stack.clone();
        }
        if self.best.len() >= self.ceiling {
            return true;
        }
        for i in start..self.items.len() {
            if self.stack.len() + 1 + (free_edges - self.per_member) / self.per_member.max(1)
                <= self.best.len()
            {
                break;
            }
            let t = self.items[i];
            if t & used != 0 {
                continue;
            }
            self.stack.push(i);
            let ok = self.go(i + 1, used | t, free_edges - self.per_member);
            self.stack.pop();
            if !ok {
                return false;
            }
            if self.best.len() >= self.ceiling {
                return true;
            }
        }
        true
    }
}

fn max_packing(
    ground: &Ground,
    kind: StructureKind,
    budget: u64,
    shuffle: Option<u64>,
) -> Result<OracleResult, OracleError> {
    let space = MaskSpace::new(ground)?;
    let mut items = enumerate_masks(&space, kind);
    if let Some(seed) = shuffle {
        items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let n = space.n;
    let per_member = n.saturating_sub(1);
    let ceiling = space.edge_count().checked_div(per_member).unwrap_or(1);
    let mut s = Search {
        items: &items,
        per_member,
        ceiling,
        budget,
        nodes: 0,
        stack: Vec::new(),
        best: Vec::new(),
    };
    let done = s.go(0, 0, space.edge_count());
    let members = s.best.iter().map(|&i| space.structure(items[i], kind)).collect();
    let result = OracleResult {
        count: s.best.len(),
        packing: Packing::new(ground.clone(), members),
        nodes: s.nodes,
    };
    if done {
        Ok(result)
    } else {
        Err(OracleError::BudgetExceeded { best: result })
    }
}

/// Exact maximum number of edge-disjoint plane spanning trees.
pub fn max_tree_packing_exact(ground: &Ground, budget: u64) -> Result<OracleResult, OracleError> {
    max_packing(ground, StructureKind::Tree, budget, None)
}

/// Exact maximum number of edge-disjoint plane spanning paths.
pub fn max_path_packing_exact(ground: &Ground, budget: u64) -> Result<OracleResult, OracleError> {
    max_packing(ground, StructureKind::Path, budget, None)
}

/// The same search with the candidate list shuffled by `seed`; the count must
/// agree with the canonical run.
pub fn max_packing_exact_shuffled(
    ground: &Ground,
    kind: StructureKind,
    budget: u64,
    seed: u64,
) -> Result<OracleResult, OracleError> {
    max_packing(ground, kind, budget, Some(seed))
}
