//! Shallow-low-light trees: augment a low-light tree with direct root
//! edges at break-points, then take the shortest-path tree.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::tree::RootedTree;

pub const DEFAULT_THETA: f64 = 0.5;

/// `theta` giving root distances within `1 + eps` of the metric.
pub fn theta_for_epsilon(eps: f64) -> Result<f64> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {eps}")));
    }
    Ok(eps / 2.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BreakpointSet {
    pub theta: f64,
    /// `B_1, ..., B_k` in scan order.
    pub points: Vec<usize>,
    /// `(rt, B_i, dist_M(rt, B_i))`, omitting the self-edge when `B_1 = rt`.
    pub star_edges: Vec<(usize, usize, f64)>,
}

impl BreakpointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn check_inputs(tree: &RootedTree, metric: &MetricSpace, rt: usize, theta: f64) -> Result<()> {
    if !(theta.is_finite() && theta > 0.0) {
        return Err(Error::Domain(format!("theta must be positive, got {theta}")));
    }
    if tree.len() != metric.len() {
        return Err(Error::InvalidSize(format!(
            "tree has {} vertices, metric has {}",
            tree.len(),
            metric.len()
        )));
    }
    if rt >= tree.len() {
        return Err(Error::VertexOutOfRange { vertex: rt, n: tree.len() });
    }
    Ok(())
}

/// `tree` as seen from `rt`: parent pointers, depths and weighted root
/// distances, plus the preorder (parent before children, children in
/// stored order, the old parent visited last).
struct Rerooted {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    dist: Vec<f64>,
    order: Vec<usize>,
}

impl Rerooted {
    fn new(tree: &RootedTree, rt: usize) -> Self {
        let n = tree.len();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut dist = vec![0.0; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut stack = vec![rt];
        seen[rt] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            let mut next: Vec<(usize, f64)> = tree.children(v).iter().map(|&c| (c, tree.edge_weight(c))).collect();
            if let Some(p) = tree.parent(v) {
                next.push((p, tree.edge_weight(v)));
            }
            for &(u, w) in next.iter().rev() {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    depth[u] = depth[v] + 1;
                    dist[u] = dist[v] + w;
                    stack.push(u);
                }
            }
        }
        Rerooted { parent, depth, dist, order }
    }

    fn tree_dist(&self, a: usize, b: usize) -> f64 {
        let (mut x, mut y) = (a, b);
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("deeper vertex has a parent");
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("deeper vertex has a parent");
        }
        while x != y {
            x = self.parent[x].expect("distinct vertices below the root");
            y = self.parent[y].expect("distinct vertices below the root");
        }
        self.dist[a] + self.dist[b] - 2.0 * self.dist[x]
    }
}

/// Scans the preorder of `tree` from `rt` once. `B_1` is its first vertex;
/// each later `B_i` is the first vertex `v` after `B_{i-1}` with
/// `dist_T(B_{i-1}, v) > theta * dist_M(rt, v)`.
pub fn breakpoints(tree: &RootedTree, metric: &MetricSpace, rt: usize, theta: f64) -> Result<BreakpointSet> {
    check_inputs(tree, metric, rt, theta)?;
    let view = Rerooted::new(tree, rt);
    Ok(scan(&view, metric, rt, theta))
}

fn scan(view: &Rerooted, metric: &MetricSpace, rt: usize, theta: f64) -> BreakpointSet {
    let mut points = vec![view.order[0]];
    for &v in &view.order[1..] {
        let last = *points.last().unwrap();
        if view.tree_dist(last, v) > theta * metric.dist(rt, v) {
            points.push(v);
        }
    }
    let star_edges = points
        .iter()
        .filter(|&&b| b != rt)
        .map(|&b| (rt, b, metric.dist(rt, b)))
        .collect();
    BreakpointSet { theta, points, star_edges }
}

/// Result of [`build_sllt`].
#[derive(Debug, Clone)]
pub struct Sllt {
    pub tree: RootedTree,
    pub breakpoints: BreakpointSet,
}

#[derive(PartialEq)]
struct Label {
    dist: f64,
    hops: usize,
    parent: usize,
    v: usize,
}

impl Eq for Label {}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap
        other
            .dist
            .total_cmp(&self.dist)
            .then(other.hops.cmp(&self.hops))
            .then(other.parent.cmp(&self.parent))
            .then(other.v.cmp(&self.v))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest-path tree from `root` of the graph on `n` vertices with the
/// given undirected edges. Ties go to fewer hops, then the smaller parent.
pub fn shortest_path_tree(n: usize, root: usize, edges: &[(usize, usize, f64)]) -> Result<RootedTree> {
    if root >= n {
        return Err(Error::VertexOutOfRange { vertex: root, n });
    }
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for &(a, b, w) in edges {
        if a >= n || b >= n {
            return Err(Error::VertexOutOfRange { vertex: a.max(b), n });
        }
        adj[a].push((b, w));
        adj[b].push((a, w));
    }
    let mut best: Vec<Option<(f64, usize, usize)>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    best[root] = Some((0.0, 0, usize::MAX));
    heap.push(Label { dist: 0.0, hops: 0, parent: usize::MAX, v: root });
    while let Some(Label { dist, hops, v, .. }) = heap.pop() {
        if std::mem::replace(&mut done[v], true) {
            continue;
        }
        for &(u, w) in &adj[v] {
            if done[u] {
                continue;
            }
            let cand = (dist + w, hops + 1, v);
            let better = match best[u] {
                None => true,
                Some(cur) => {
                    cand.0.total_cmp(&cur.0).then(cand.1.cmp(&cur.1)).then(cand.2.cmp(&cur.2)) == Ordering::Less
                }
            };
            if better {
                best[u] = Some(cand);
                heap.push(Label { dist: cand.0, hops: cand.1, parent: v, v: u });
            }
        }
    }
    let mut parent = vec![None; n];
    let mut weight = vec![0.0; n];
    for v in 0..n {
        if v == root {
            continue;
        }
        let (_, _, p) = best[v].ok_or_else(|| Error::Structure(format!("vertex {v} is unreachable")))?;
        parent[v] = Some(p);
        weight[v] = adj[v]
            .iter()
            .filter(|&&(u, _)| u == p)
            .map(|&(_, w)| w)
            .fold(f64::INFINITY, f64::min);
    }
    let tree = RootedTree::from_parents(root, &parent)?;
    Ok(tree.with_weights(|_, c| weight[c]))
}

/// `S(T)`: the shortest-path tree from `rt` of `T` plus the break-point
/// star edges. Edge weights of `T` are re-derived from `metric`.
///
/// For `T` of depth `h` rooted at `rt`: depth at most `2h - 1`, weight at
/// most `(1 + 2/theta) w(T)`, and every root distance at most
/// `(1 + 2 theta)` times the metric distance.
pub fn build_sllt(tree: &RootedTree, metric: &MetricSpace, rt: usize, theta: f64) -> Result<Sllt> {
    check_inputs(tree, metric, rt, theta)?;
    let tree = tree.reweighted(metric);
    let view = Rerooted::new(&tree, rt);
    let breakpoints = scan(&view, metric, rt, theta);
    let mut edges: Vec<(usize, usize, f64)> = tree.edges().collect();
    edges.extend(breakpoints.star_edges.iter().copied());
    let spt = shortest_path_tree(tree.len(), rt, &edges)?;
    Ok(Sllt { tree: spt, breakpoints })
}

/// `dist_T(rt, v) / dist_M(rt, v)` per vertex, 1 where the metric distance
/// is zero.
pub fn root_distance_ratios(tree: &RootedTree, metric: &MetricSpace) -> Vec<f64> {
    let rt = tree.root();
    tree.root_distances()
        .into_iter()
        .enumerate()
        .map(|(v, d)| {
            let m = metric.dist(rt, v);
            if m > 0.0 {
                d / m
            } else {
                1.0
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::line_metric;

    fn path_from(n: usize, root: usize) -> RootedTree {
        // path on the line rooted at `root`, toward both ends
        let parents: Vec<Option<usize>> = (0..n)
            .map(|v| match v.cmp(&root) {
                Ordering::Less => Some(v + 1),
                Ordering::Greater => Some(v - 1),
                Ordering::Equal => None,
            })
            .collect();
        RootedTree::from_parents(root, &parents).unwrap().with_line_weights()
    }

    #[test]
    fn path_from_first_vertex_has_one_breakpoint() {
        let m = line_metric(8).unwrap();
        let t = path_from(8, 0);
        for theta in [1.0, 2.0, 5.0] {
            let b = breakpoints(&t, &m, 0, theta).unwrap();
            assert_eq!(b.points, vec![0]);
            assert!(b.star_edges.is_empty());
        }
    }

    #[test]
    fn path_from_last_vertex() {
        let m = line_metric(5).unwrap();
        let t = path_from(5, 4);
        let b = breakpoints(&t, &m, 4, 0.5).unwrap();
        assert_eq!(b.points, vec![4, 3, 1]);
        assert_eq!(b.star_edges, vec![(4, 3, 1.0), (4, 1, 3.0)]);
        let s = build_sllt(&t, &m, 4, 0.5).unwrap();
        assert!(s.tree.weight() <= 5.0 * t.weight());
        // 4-3, 3-2 from the path; 4-1 by the star edge; 1-0
        assert_eq!(s.tree.weight(), 6.0);
        assert_eq!(s.tree.parent(1), Some(4));
        assert_eq!(s.tree.depth(), 2);
    }

    #[test]
    fn spt_input_keeps_its_distances() {
        let m = line_metric(6).unwrap();
        let t = path_from(6, 2);
        let s = build_sllt(&t, &m, 2, 1.0).unwrap();
        assert_eq!(s.tree.root_distances(), t.root_distances());
        assert!(root_distance_ratios(&s.tree, &m).iter().all(|&r| r == 1.0));
    }

    #[test]
    fn rerooting_scans_from_rt() {
        let m = line_metric(4).unwrap();
        let t = path_from(4, 0);
        let b = breakpoints(&t, &m, 3, 10.0).unwrap();
        assert_eq!(b.points, vec![3]);
    }

    #[test]
    fn rejects_bad_input() {
        let m = line_metric(4).unwrap();
        let t = path_from(4, 0);
        assert!(matches!(breakpoints(&t, &m, 0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(build_sllt(&t, &m, 0, f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(build_sllt(&t, &m, 9, 0.5), Err(Error::VertexOutOfRange { .. })));
        let m5 = line_metric(5).unwrap();
        assert!(build_sllt(&t, &m5, 0, 0.5).is_err());
    }

    #[test]
    fn spt_prefers_fewer_hops() {
        // 0-1-2 with unit edges and a direct 0-2 edge of length 2
        let t = shortest_path_tree(3, 0, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 2.0)]).unwrap();
        assert_eq!(t.parent(2), Some(0));
    }

    #[test]
    fn epsilon_form() {
        assert_eq!(theta_for_epsilon(0.5).unwrap(), 0.25);
        assert!(theta_for_epsilon(-1.0).is_err());
    }
}
