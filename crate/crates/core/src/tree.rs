//! Rooted spanning trees and everything measured on them.
//!
//! Vertices are always `0..n`. When a tree is read as a tree of the line
//! metric, vertex `i` sits at coordinate `i + 1`, so labels are a
//! permutation of `1..=n` by construction.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{LinearOrder, MetricSpace};
use crate::report::fmt_num;

/// An ordered rooted tree over vertices `0..n` with a weight on every
/// parent-child edge.
///
/// Child lists are ordered; for line trees the constructions in this crate
/// keep them sorted by coordinate (left to right).
#[derive(Debug, Clone, PartialEq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    /// `weight[v]` is the weight of the edge `(parent(v), v)`; zero at the root.
    weight: Vec<f64>,
}

impl RootedTree {
    pub fn singleton() -> Self {
        RootedTree {
            root: 0,
            parent: vec![None],
            children: vec![Vec::new()],
            weight: vec![0.0],
        }
    }

    /// Builds a tree from ordered child lists. Edge weights start at zero.
    pub fn from_children(root: usize, children: Vec<Vec<usize>>) -> Result<Self> {
        let n = children.len();
        if n == 0 {
            return Err(Error::InvalidSize("a tree needs at least one vertex".into()));
        }
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        let mut parent = vec![None; n];
        for (p, kids) in children.iter().enumerate() {
            for &c in kids {
                if c >= n {
                    return Err(Error::VertexOutOfRange { vertex: c, n });
                }
                if c == root {
                    return Err(Error::Structure(format!("root {root} listed as a child of {p}")));
                }
                if let Some(q) = parent[c] {
                    return Err(Error::Structure(format!("vertex {c} has two parents ({q} and {p})")));
                }
                parent[c] = Some(p);
            }
        }
        let tree = RootedTree {
            root,
            parent,
            children,
            weight: vec![0.0; n],
        };
        tree.check_connected()?;
        Ok(tree)
    }

    /// Builds a tree from a parent vector; children are listed in
    /// ascending index order.
    pub fn from_parents(root: usize, parent: &[Option<usize>]) -> Result<Self> {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match (*p, v == root) {
                (None, true) => {}
                (None, false) => return Err(Error::Structure(format!("vertex {v} has no parent"))),
                (Some(_), true) => return Err(Error::Structure("root has a parent".into())),
                (Some(p), false) => {
                    if p >= n {
                        return Err(Error::VertexOutOfRange { vertex: p, n });
                    }
                    children[p].push(v);
                }
            }
        }
        Self::from_children(root, children)
    }

    /// Builds a tree from `(parent, child, weight)` triples over `n` vertices.
    /// Children keep the order in which their edges appear.
    pub fn from_edges(n: usize, root: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if edges.len() + 1 != n {
            return Err(Error::Structure(format!(
                "{} edges cannot span {n} vertices",
                edges.len()
            )));
        }
        let mut children = vec![Vec::new(); n];
        let mut weight = vec![0.0; n];
        for &(p, c, w) in edges {
            if p >= n || c >= n {
                return Err(Error::VertexOutOfRange { vertex: p.max(c), n });
            }
            children[p].push(c);
            weight[c] = w;
        }
        let mut tree = Self::from_children(root, children)?;
        tree.weight = weight;
        Ok(tree)
    }

    fn check_connected(&self) -> Result<()> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![self.root];
        let mut count = 0;
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Structure(format!("cycle through vertex {v}")));
            }
            count += 1;
            stack.extend(self.children[v].iter().copied());
        }
        if count != self.len() {
            let missing = seen.iter().position(|s| !s).unwrap_or(0);
            return Err(Error::Structure(format!(
                "vertex {missing} is not reachable from root {}",
                self.root
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Weight of the edge joining `v` to its parent (zero for the root).
    pub fn edge_weight(&self, v: usize) -> f64 {
        self.weight[v]
    }

    /// `(parent, child, weight)` for every edge, children in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (p, c, self.weight[c])))
    }

    /// Re-derives every edge weight from `f(parent, child)`.
    pub fn with_weights(mut self, f: impl Fn(usize, usize) -> f64) -> Self {
        for c in 0..self.len() {
            self.weight[c] = self.parent[c].map_or(0.0, |p| f(p, c));
        }
        self
    }

    pub fn reweighted(&self, metric: &MetricSpace) -> Self {
        self.clone().with_weights(|p, c| metric.dist(p, c))
    }

    /// Line-metric weights `|i - j|`.
    pub fn with_line_weights(self) -> Self {
        self.with_weights(|p, c| p.abs_diff(c) as f64)
    }

    /// Exact total weight when read as a tree of the line metric.
    pub fn line_weight(&self) -> u64 {
        self.edges().map(|(p, c, _)| p.abs_diff(c) as u64).sum()
    }

    pub fn weight(&self) -> f64 {
        self.weight.iter().sum()
    }

    /// Hop distance of every vertex from the root.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for v in self.preorder() {
            for &c in &self.children[v] {
                depth[c] = depth[v] + 1;
            }
        }
        depth
    }

    /// Hop-radius from the root.
    pub fn depth(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Weighted distance of every vertex from the root.
    pub fn root_distances(&self) -> Vec<f64> {
        let mut dist = vec![0.0; self.len()];
        for v in self.preorder() {
            for &c in &self.children[v] {
                dist[c] = dist[v] + self.weight[c];
            }
        }
        dist
    }

    /// Vertices in preorder: parent first, children in stored order.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev().copied());
        }
        out
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        for v in self.preorder().into_iter().rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    /// Undirected adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for (p, c, _) in self.edges() {
            adj[p].push(c);
            adj[c].push(p);
        }
        adj
    }

    /// Exact hop-diameter: farthest vertex from an arbitrary start, then
    /// farthest from that one.
    pub fn hop_diameter(&self) -> usize {
        let adj = self.adjacency();
        let (far, _) = bfs_farthest(&adj, self.root);
        bfs_farthest(&adj, far).1
    }

    pub fn max_arity(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of tree edges incident to `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_binary(&self) -> bool {
        self.max_arity() <= 2
    }

    /// Renames vertex `v` to `map[v]`; `map` must be a permutation. Child
    /// order and weights are carried along.
    pub fn relabeled(&self, map: &[usize]) -> Result<Self> {
        let n = self.len();
        if map.len() != n {
            return Err(Error::Structure("relabeling map has the wrong length".into()));
        }
        let mut children = vec![Vec::new(); n];
        let mut weight = vec![0.0; n];
        for v in 0..n {
            children[map[v]] = self.children[v].iter().map(|&c| map[c]).collect();
            weight[map[v]] = self.weight[v];
        }
        let mut tree = Self::from_children(map[self.root], children)?;
        tree.weight = weight;
        Ok(tree)
    }

    /// Sorts each child list by vertex index (left to right on the line).
    pub fn sort_children(&mut self) {
        for kids in &mut self.children {
            kids.sort_unstable();
        }
    }

    /// Serializes as `root R` followed by one `parent child weight` line
    /// per edge in preorder.
    pub fn to_text(&self) -> String {
        let mut out = format!("root {}\n", self.root);
        for v in self.preorder() {
            for &c in &self.children[v] {
                let _ = writeln!(out, "{v} {c} {}", fmt_num(self.weight[c]));
            }
        }
        out
    }

    /// Parses the format written by [`RootedTree::to_text`]. The weight
    /// column may be omitted (read as zero). Blank lines and lines starting
    /// with `#` are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut root = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
            if fields[0] == "root" {
                if fields.len() != 2 {
                    return Err(bad("expected `root R`"));
                }
                if root.is_some() {
                    return Err(bad("duplicate root line"));
                }
                root = Some(fields[1].parse::<usize>().map_err(|_| bad("root is not an index"))?);
                continue;
            }
            if !(2..=3).contains(&fields.len()) {
                return Err(bad("expected `parent child [weight]`"));
            }
            let p = fields[0].parse::<usize>().map_err(|_| bad("parent is not an index"))?;
            let c = fields[1].parse::<usize>().map_err(|_| bad("child is not an index"))?;
            let w = match fields.get(2) {
                Some(f) => f.parse::<f64>().map_err(|_| bad("weight is not a number"))?,
                None => 0.0,
            };
            edges.push((p, c, w));
        }
        let root = root.ok_or(Error::Parse { line: 0, msg: "missing `root R` line".into() })?;
        Self::from_edges(edges.len() + 1, root, &edges)
    }
}

fn bfs_farthest(adj: &[Vec<usize>], start: usize) -> (usize, usize) {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    let mut best = (start, 0);
    while let Some(v) = queue.pop_front() {
        if dist[v] > best.1 {
            best = (v, dist[v]);
        }
        for &u in &adj[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    best
}

/// Per-edge load of a tree with respect to a linear order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoadProfile {
    /// `per_edge[q]` counts tree edges covering the `q`-th consecutive pair
    /// `(L[q], L[q+1])`.
    pub per_edge: Vec<u32>,
    /// Maximum over `per_edge`; zero for a single vertex.
    pub xi: u32,
}

/// Load of `tree` with respect to `order`.
pub fn load(tree: &RootedTree, order: &LinearOrder) -> Result<LoadProfile> {
    if tree.len() != order.len() {
        return Err(Error::Structure(format!(
            "tree has {} vertices but the order has {}",
            tree.len(),
            order.len()
        )));
    }
    Ok(load_by_position(tree, |v| order.position(v)))
}

/// Load of a line tree with respect to the identity order `1, 2, ..., n`.
pub fn line_load(tree: &RootedTree) -> LoadProfile {
    load_by_position(tree, |v| v)
}

fn load_by_position(tree: &RootedTree, pos: impl Fn(usize) -> usize) -> LoadProfile {
    let n = tree.len();
    let mut diff = vec![0i64; n];
    for (p, c, _) in tree.edges() {
        let (a, b) = minmax(pos(p), pos(c));
        diff[a] += 1;
        diff[b] -= 1;
    }
    let mut per_edge = Vec::with_capacity(n.saturating_sub(1));
    let mut run = 0i64;
    for d in diff.iter().take(n.saturating_sub(1)) {
        run += d;
        per_edge.push(run as u32);
    }
    let xi = per_edge.iter().copied().max().unwrap_or(0);
    LoadProfile { per_edge, xi }
}

/// Covering of every coordinate by a line tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringProfile {
    /// `per_vertex[v]` counts edges `(a, b)` with `a < v < b`.
    pub per_vertex: Vec<u32>,
    pub max: u32,
    pub total: u64,
}

pub fn covering(tree: &RootedTree) -> CoveringProfile {
    let n = tree.len();
    let mut diff = vec![0i64; n + 1];
    for (p, c, _) in tree.edges() {
        let (a, b) = minmax(p, c);
        if b > a + 1 {
            diff[a + 1] += 1;
            diff[b] -= 1;
        }
    }
    let mut per_vertex = Vec::with_capacity(n);
    let mut run = 0i64;
    for d in diff.iter().take(n) {
        run += d;
        per_vertex.push(run as u32);
    }
    let max = per_vertex.iter().copied().max().unwrap_or(0);
    let total = per_vertex.iter().map(|&x| u64::from(x)).sum();
    CoveringProfile { per_vertex, max, total }
}

fn minmax(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Everything measured on a spanning tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeMetrics {
    pub depth: usize,
    pub hop_diameter: usize,
    pub weight: f64,
    pub mst_weight: f64,
    /// `weight / mst_weight`; defined as 1 when the MST has zero weight.
    pub lightness: f64,
    /// Present when a linear order was supplied.
    pub load: Option<u32>,
    /// Present for trees of the line metric.
    pub max_covering: Option<u32>,
    /// Maximum number of children.
    pub max_arity: usize,
    /// Maximum number of incident edges (children plus parent).
    pub max_degree: usize,
}

/// Measures `tree` as a spanning tree of `metric`. Edge weights are taken
/// from the metric, not from the tree.
pub fn measure(tree: &RootedTree, metric: &MetricSpace, order: Option<&LinearOrder>) -> Result<TreeMetrics> {
    let mst_weight = crate::metric::minimum_spanning_tree(metric)?.weight();
    measure_with_mst(tree, metric, mst_weight, order)
}

/// [`measure`] with a precomputed MST weight.
pub fn measure_with_mst(
    tree: &RootedTree,
    metric: &MetricSpace,
    mst_weight: f64,
    order: Option<&LinearOrder>,
) -> Result<TreeMetrics> {
    if tree.len() != metric.len() {
        return Err(Error::Structure(format!(
            "tree has {} vertices but the metric has {}",
            tree.len(),
            metric.len()
        )));
    }
    let weight: f64 = tree.edges().map(|(p, c, _)| metric.dist(p, c)).sum();
    let lightness = if mst_weight > 0.0 { weight / mst_weight } else { 1.0 };
    let load = order.map(|l| load(tree, l)).transpose()?.map(|p| p.xi);
    let max_covering = metric.is_line().then(|| covering(tree).max);
    Ok(TreeMetrics {
        depth: tree.depth(),
        hop_diameter: tree.hop_diameter(),
        weight,
        mst_weight,
        lightness,
        load,
        max_covering,
        max_arity: tree.max_arity(),
        max_degree: tree.max_degree(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{hamiltonian_path, line_metric, minimum_spanning_tree};

    fn star(n: usize, center: usize) -> RootedTree {
        let parents: Vec<Option<usize>> = (0..n).map(|v| (v != center).then_some(center)).collect();
        RootedTree::from_parents(center, &parents).unwrap().with_line_weights()
    }

    fn path(n: usize) -> RootedTree {
        let parents: Vec<Option<usize>> = (0..n).map(|v| v.checked_sub(1)).collect();
        RootedTree::from_parents(0, &parents).unwrap().with_line_weights()
    }

    #[test]
    fn centered_star_on_seven_points() {
        // Root at coordinate 4, every other point a child.
        let t = star(7, 3);
        let m = line_metric(7).unwrap();
        let metrics = measure(&t, &m, None).unwrap();
        assert_eq!(metrics.depth, 1);
        assert_eq!(metrics.max_covering, Some(2));
        // coordinate 3 is covered by (4,1) and (4,2)
        assert_eq!(covering(&t).per_vertex[2], 2);
    }

    #[test]
    fn path_measures() {
        let m = line_metric(9).unwrap();
        let metrics = measure(&path(9), &m, None).unwrap();
        assert_eq!(metrics.depth, 8);
        assert_eq!(metrics.hop_diameter, 8);
        assert!((metrics.lightness - 1.0).abs() < 1e-12);
        assert_eq!(covering(&path(9)).max, 0);
    }

    #[test]
    fn path_has_unit_load() {
        let m = line_metric(6).unwrap();
        let mst = minimum_spanning_tree(&m).unwrap();
        let l = hamiltonian_path(&m, &mst, 0).unwrap();
        assert_eq!(load(&path(6), &l).unwrap().xi, 1);
    }

    #[test]
    fn star_load_profile() {
        let m = line_metric(5).unwrap();
        let mst = minimum_spanning_tree(&m).unwrap();
        let l = hamiltonian_path(&m, &mst, 0).unwrap();
        let p = load(&star(5, 0), &l).unwrap();
        assert_eq!(p.per_edge, vec![4, 3, 2, 1]);
        assert_eq!(p.xi, 4);
    }

    #[test]
    fn three_edges_straddle_a_pair() {
        // (1,5), (2,4) and (4,3) all cover the pair (3,4).
        let t = RootedTree::from_edges(6, 0, &[(0, 1, 1.0), (0, 4, 4.0), (1, 3, 2.0), (3, 2, 1.0), (4, 5, 1.0)]).unwrap();
        let p = line_load(&t);
        assert_eq!(p.per_edge[2], 3);
    }

    #[test]
    fn star_weight_matches_covering_identity() {
        let t = star(5, 2);
        let c = covering(&t);
        assert_eq!(t.line_weight(), 6);
        assert_eq!(c.total + 4, 6);
    }

    #[test]
    fn balanced_twelve_has_depth_three() {
        let t = crate::llt::build_balanced(12).unwrap();
        assert_eq!(t.depth(), 3);
        assert_eq!(t.root(), 5);
    }

    #[test]
    fn text_round_trip() {
        let t = star(4, 1).with_weights(|p, c| (p * 10 + c) as f64 / 3.0);
        let back = RootedTree::parse_text(&t.to_text()).unwrap();
        assert_eq!(back.root(), t.root());
        assert_eq!(back.parents(), t.parents());
        for v in 0..4 {
            assert!((back.edge_weight(v) - t.edge_weight(v)).abs() < 1e-9);
        }
    }

    #[test]
    fn structural_errors() {
        assert!(RootedTree::from_children(0, vec![vec![1], vec![0]]).is_err());
        assert!(RootedTree::from_children(0, vec![vec![1], vec![], vec![]]).is_err());
        assert!(RootedTree::from_children(0, vec![vec![1, 1], vec![]]).is_err());
        assert!(RootedTree::parse_text("0 1 1\n").is_err());
        let m = line_metric(3).unwrap();
        assert!(measure(&path(4), &m, None).is_err());
    }

    #[test]
    fn mismatched_order_is_rejected() {
        let m = line_metric(4).unwrap();
        let mst = minimum_spanning_tree(&m).unwrap();
        let l = hamiltonian_path(&m, &mst, 0).unwrap();
        assert!(load(&path(5), &l).is_err());
    }

    #[test]
    fn hop_diameter_bounds_depth() {
        let t = RootedTree::from_edges(6, 0, &[(0, 1, 1.0), (1, 2, 1.0), (0, 3, 1.0), (3, 4, 1.0), (4, 5, 1.0)]).unwrap();
        assert_eq!(t.depth(), 3);
        assert_eq!(t.hop_diameter(), 5);
    }
}
