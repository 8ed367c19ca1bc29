//! Cluster-recursive packing of `k` plane spanning trees with bounded degree
//! and logarithmic diameter.
//!
//! The set is cut into clusters of `12k^2` points (the last one on each
//! branch may be larger). Neighbouring clusters share a single connector
//! vertex, each cluster gets `k` double stars, and local tree `i` joins the
//! global tree `i`.

use thiserror::Error;

use crate::constructions::double_star_pack;
use crate::crossing::{crossing_family_greedy, max_crossing_family_exact, CrossingError, CrossingFamily};
use crate::geom::{find_j_edge_containing_in, find_j_edge_in, halving_split_avoiding, HalfPoint, PointSet};
use crate::packing::{tree_metrics, verify_packing, EdgeRef, GraphStructure, Packing, StructureKind, TreeMetrics};

/// Node budget for the exact fallback when the greedy family is too small.
const EXACT_FAMILY_BUDGET: u64 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HierarchicalError {
    #[error("k = {k} needs at least 12k^2 = {need} points, got {n}")]
    InvalidK { k: usize, n: usize, need: usize },
    #[error("cannot continue the decomposition: {0}")]
    InfeasibleStep(String),
    #[error("cluster {cluster} of {size} points has a crossing family of only {found} < {k} edges")]
    CrossingFamilyTooSmall { cluster: usize, size: usize, found: usize, k: usize },
    #[error("assembled trees failed verification: {0}")]
    Verification(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    /// Vertex shared with the parent cluster.
    pub connector: Option<usize>,
    pub parent: Option<usize>,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterDecomposition {
    pub k: usize,
    pub clusters: Vec<Cluster>,
}

impl ClusterDecomposition {
    /// Number of clusters on the longest root-to-leaf chain.
    pub fn depth(&self) -> usize {
        self.clusters.iter().map(|c| c.depth + 1).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// How many clusters contain each vertex.
    pub fn multiplicity(&self, n: usize) -> Vec<usize> {
        let mut m = vec![0; n];
        for c in &self.clusters {
            for &v in &c.vertices {
                m[v] += 1;
            }
        }
        m
    }
}

pub fn cluster_size(k: usize) -> usize {
    12 * k * k
}

struct Pending {
    /// Remaining points to cover (excluding the parent cluster).
    rest: Vec<usize>,
    parent: usize,
    /// Endpoints of the parent's defining edge.
    u: usize,
    v: usize,
}

pub fn decompose_clusters(s: &PointSet, k: usize) -> Result<ClusterDecomposition, HierarchicalError> {
    let n = s.len();
    let big_k = cluster_size(k);
    if k == 0 || big_k > n {
        return Err(HierarchicalError::InvalidK { k, n, need: big_k });
    }
    let infeasible = |e: crate::geom::GeomError| HierarchicalError::InfeasibleStep(e.to_string());
    let mut clusters: Vec<Cluster> = Vec::new();

    let root = find_j_edge_in(s, &s.all_indices(), big_k - 2).map_err(infeasible)?;
    let mut verts = root.left.clone();
    verts.extend([root.u, root.v]);
    verts.sort_unstable();
    let rest: Vec<usize> = (0..n).filter(|v| verts.binary_search(v).is_err()).collect();
    clusters.push(Cluster { vertices: verts, connector: None, parent: None, depth: 0 });
    let mut stack = vec![Pending { rest, parent: 0, u: root.u, v: root.v }];

    while let Some(job) = stack.pop() {
        if job.rest.is_empty() {
            continue;
        }
        if job.rest.len() < 2 * (big_k - 1) {
            let c = &mut clusters[job.parent];
            c.vertices.extend(&job.rest);
            c.vertices.sort_unstable();
            continue;
        }
        let pivot = HalfPoint::midpoint(s.point(job.u), s.point(job.v));
        let pts: Vec<_> = job.rest.iter().map(|&i| s.point(i)).collect();
        let split = halving_split_avoiding(pivot, &pts, &[s.point(job.u), s.point(job.v)]);
        let u_left = split.side(pivot, s.point(job.u)) > 0;
        let (u_part, v_part) = if u_left { (&split.left, &split.right) } else { (&split.right, &split.left) };
        let parent_depth = clusters[job.parent].depth;
        let mut children = Vec::new();
        for (connector, part) in [(job.u, u_part), (job.v, v_part)] {
            let mut subset: Vec<usize> = part.iter().map(|&i| job.rest[i]).collect();
            if subset.len() + 1 < big_k {
                return Err(HierarchicalError::InfeasibleStep(format!(
                    "halving line left only {} points beside connector {connector}",
                    subset.len()
                )));
            }
            subset.push(connector);
            subset.sort_unstable();
            let je = find_j_edge_containing_in(s, &subset, big_k - 2, connector).map_err(infeasible)?;
            let mut verts = je.left.clone();
            verts.extend([je.u, je.v]);
            verts.sort_unstable();
            let rest: Vec<usize> =
                subset.iter().copied().filter(|v| verts.binary_search(v).is_err()).collect();
            clusters.push(Cluster {
                vertices: verts,
                connector: Some(connector),
                parent: Some(job.parent),
                depth: parent_depth + 1,
            });
            children.push(Pending { rest, parent: clusters.len() - 1, u: je.u, v: je.v });
        }
        // process the u-side subtree first
        stack.extend(children.into_iter().rev());
    }
    Ok(ClusterDecomposition { k, clusters })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchicalOutcome {
    pub packing: Packing,
    pub decomposition: ClusterDecomposition,
    pub metrics: Vec<TreeMetrics>,
}

impl HierarchicalOutcome {
    pub fn cluster_count(&self) -> usize {
        self.decomposition.len()
    }
}

fn cluster_family(local: &PointSet, k: usize) -> Result<CrossingFamily, CrossingFamily> {
    let greedy = crossing_family_greedy(local, k);
    if greedy.len() >= k {
        return Ok(greedy);
    }
    let mut exact = match max_crossing_family_exact(local, EXACT_FAMILY_BUDGET) {
        Ok(f) => f,
        Err(CrossingError::BudgetExceeded { best }) => best,
    };
    if exact.len() >= k {
        exact.edges.truncate(k);
        Ok(exact)
    } else {
        Err(if exact.len() > greedy.len() { exact } else { greedy })
    }
}

pub fn hierarchical_pack(s: &PointSet, k: usize) -> Result<Packing, HierarchicalError> {
    hierarchical_pack_traced(s, k).map(|o| o.packing)
}

pub fn hierarchical_pack_traced(s: &PointSet, k: usize) -> Result<HierarchicalOutcome, HierarchicalError> {
    let decomposition = decompose_clusters(s, k)?;
    let mut colours: Vec<Vec<EdgeRef>> = vec![Vec::new(); k];
    for (ci, cluster) in decomposition.clusters.iter().enumerate() {
        let local = s.subset(&cluster.vertices);
        let family = cluster_family(&local, k).map_err(|f| HierarchicalError::CrossingFamilyTooSmall {
            cluster: ci,
            size: local.len(),
            found: f.len(),
            k,
        })?;
        let packing = double_star_pack(&local, &family)
            .map_err(|e| HierarchicalError::Verification(format!("cluster {ci}: {e}")))?;
        for (colour, member) in colours.iter_mut().zip(&packing.members) {
            colour.extend(
                member.edges().iter().map(|e| EdgeRef::new(cluster.vertices[e.a()], cluster.vertices[e.b()])),
            );
        }
    }
    let members: Vec<GraphStructure> =
        colours.into_iter().map(|e| GraphStructure::new(StructureKind::Tree, e)).collect();
    let packing = Packing::new(s.clone(), members);
    let report = verify_packing(&packing, false);
    if !report.all_ok() {
        return Err(HierarchicalError::Verification(report.first_failure().unwrap_or_default()));
    }
    let metrics = packing
        .members
        .iter()
        .map(|m| tree_metrics(s.len(), m).map_err(|e| HierarchicalError::Verification(e.to_string())))
        .collect::<Result<_, _>>()?;
    Ok(HierarchicalOutcome { packing, decomposition, metrics })
}

/// Upper bound `floor(n / (12k^2 - 1))` on the number of clusters.
pub fn cluster_bound(n: usize, k: usize) -> usize {
    n / (cluster_size(k) - 1)
}

/// `6 * ceil(log2 count)`.
pub fn diameter_bound(cluster_count: usize) -> usize {
    6 * (usize::BITS - cluster_count.saturating_sub(1).leading_zeros()) as usize
}

pub fn degree_bound(k: usize) -> usize {
    2 * (36 * k * k - 3)
}
