//! Finite metric spaces, the dense MST and the MST-shortcut Hamiltonian
//! order.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result, Violation};
use crate::tree::RootedTree;

/// Absolute-plus-relative slack for the triangle inequality on real data.
pub const TRIANGLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum MetricKind {
    /// Points `1..=n` on a line.
    Line,
    Euclidean { dim: usize },
    Matrix,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Line,
    Points { dim: usize, coords: Vec<f64> },
    Matrix(Vec<f64>),
}

/// An `n`-point metric space.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace {
    n: usize,
    repr: Repr,
}

impl MetricSpace {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn kind(&self) -> MetricKind {
        match &self.repr {
            Repr::Line => MetricKind::Line,
            Repr::Points { dim, .. } => MetricKind::Euclidean { dim: *dim },
            Repr::Matrix(_) => MetricKind::Matrix,
        }
    }

    pub fn is_line(&self) -> bool {
        matches!(self.repr, Repr::Line)
    }

    /// Coordinates of point `i`, for Euclidean spaces.
    pub fn coords(&self, i: usize) -> Option<&[f64]> {
        match &self.repr {
            Repr::Points { dim, coords } => Some(&coords[i * dim..(i + 1) * dim]),
            _ => None,
        }
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match &self.repr {
            Repr::Line => i.abs_diff(j) as f64,
            Repr::Points { dim, coords } => {
                let a = &coords[i * dim..(i + 1) * dim];
                let b = &coords[j * dim..(j + 1) * dim];
                a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
            }
            Repr::Matrix(d) => d[i * self.n + j],
        }
    }

    /// Euclidean space from `n` points of dimension `dim`, row-major.
    pub fn from_points(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || coords.is_empty() || !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidSize(format!(
                "{} coordinates do not form points of dimension {dim}",
                coords.len()
            )));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSize("coordinates must be finite".into()));
        }
        Ok(MetricSpace {
            n: coords.len() / dim,
            repr: Repr::Points { dim, coords },
        })
    }

    /// Explicit distance matrix, validated against every metric axiom.
    pub fn from_matrix(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::InvalidSize(format!(
                "{} entries do not form a {n}x{n} matrix",
                entries.len()
            )));
        }
        let violations = matrix_violations(n, &entries);
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        Ok(MetricSpace { n, repr: Repr::Matrix(entries) })
    }

    /// Full distance matrix, row-major.
    pub fn to_matrix(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self.dist(i, j);
            }
        }
        out
    }
}

/// Every axiom violation in a distance matrix, in scan order.
pub fn matrix_violations(n: usize, d: &[f64]) -> Vec<Violation> {
    let mut out = Vec::new();
    let at = |i: usize, j: usize| d[i * n + j];
    for i in 0..n {
        for j in 0..n {
            let v = at(i, j);
            if !v.is_finite() {
                out.push(Violation::NotFinite { i, j });
            } else if v < 0.0 {
                out.push(Violation::Negative { i, j, value: v });
            }
        }
        if at(i, i) != 0.0 && at(i, i).is_finite() {
            out.push(Violation::NonZeroDiagonal { i, value: at(i, i) });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if at(i, j) != at(j, i) {
                out.push(Violation::Asymmetric { i, j, dij: at(i, j), dji: at(j, i) });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                let via = at(i, j) + at(j, k);
                let excess = at(i, k) - via;
                if excess > TRIANGLE_TOLERANCE * (1.0 + via) {
                    out.push(Violation::Triangle { i, j, k, excess });
                }
            }
        }
    }
    out
}

/// The line metric on coordinates `1..=n`.
pub fn line_metric(n: usize) -> Result<MetricSpace> {
    if n == 0 {
        return Err(Error::InvalidSize("line metric needs n >= 1".into()));
    }
    Ok(MetricSpace { n, repr: Repr::Line })
}

/// Parses one of the three text formats:
///
/// ```text
/// line N
///
/// points D
/// x1 y1 ...
///
/// matrix N
/// d11 d12 ...
/// ```
///
/// Blank lines and `#` comments are skipped.
pub fn parse_metric(text: &str) -> Result<MetricSpace> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty input".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    if fields.len() != 2 {
        return Err(bad(hline, "expected `line N`, `points D` or `matrix N`"));
    }
    let count: usize = fields[1].parse().map_err(|_| bad(hline, "size is not a non-negative integer"))?;
    let mut rows = Vec::new();
    for (no, l) in lines {
        let row = l
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| bad(no, &format!("`{t}` is not a number"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push((no, row));
    }
    match fields[0] {
        "line" => {
            if let Some((no, _)) = rows.first() {
                return Err(bad(*no, "`line N` takes no body"));
            }
            line_metric(count)
        }
        "points" => {
            let mut coords = Vec::new();
            for (no, row) in rows {
                if row.len() != count {
                    return Err(bad(no, &format!("expected {count} coordinates, found {}", row.len())));
                }
                coords.extend(row);
            }
            MetricSpace::from_points(count, coords)
        }
        "matrix" => {
            if rows.len() != count {
                return Err(bad(hline, &format!("expected {count} rows, found {}", rows.len())));
            }
            let mut entries = Vec::with_capacity(count * count);
            for (no, row) in rows {
                if row.len() != count {
                    return Err(bad(no, &format!("expected {count} entries, found {}", row.len())));
                }
                entries.extend(row);
            }
            MetricSpace::from_matrix(count, entries)
        }
        other => Err(bad(hline, &format!("unknown metric kind `{other}`"))),
    }
}

/// Loads a metric from a file, or from the shorthand `line_N` / `line:N`
/// when no file of that name exists.
pub fn load_metric(source: &str) -> Result<MetricSpace> {
    if !Path::new(source).exists() {
        if let Some(n) = source.strip_prefix("line_").or_else(|| source.strip_prefix("line:")) {
            let n = n
                .parse()
                .map_err(|_| Error::Parse { line: 0, msg: format!("bad line shorthand `{source}`") })?;
            return line_metric(n);
        }
    }
    parse_metric(&std::fs::read_to_string(source)?)
}

/// Orders edges by weight, then lexicographically by `(min, max)` endpoint.
fn edge_key(w: f64, a: usize, b: usize) -> (f64, usize, usize) {
    (w, a.min(b), a.max(b))
}

fn key_less(x: (f64, usize, usize), y: (f64, usize, usize)) -> bool {
    match x.0.total_cmp(&y.0) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => (x.1, x.2) < (y.1, y.2),
    }
}

/// Dense Prim, O(n^2), rooted at vertex 0.
///
/// Ties are broken by the lexicographically smallest `(i, j)` edge, which
/// makes the tree unique.
pub fn minimum_spanning_tree(metric: &MetricSpace) -> Result<RootedTree> {
    minimum_spanning_tree_rooted(metric, 0)
}

pub fn minimum_spanning_tree_rooted(metric: &MetricSpace, root: usize) -> Result<RootedTree> {
    let n = metric.len();
    if n == 0 {
        return Err(Error::InvalidSize("empty metric".into()));
    }
    if root >= n {
        return Err(Error::VertexOutOfRange { vertex: root, n });
    }
    // Grown from vertex 0 regardless of root; the MST itself does not depend
    // on the start under a strict edge order.
    let mut in_tree = vec![false; n];
    let mut best: Vec<(f64, usize, usize)> = vec![(f64::INFINITY, usize::MAX, usize::MAX); n];
    let mut link = vec![usize::MAX; n];
    let mut adj = vec![Vec::new(); n];
    in_tree[0] = true;
    for v in 1..n {
        best[v] = edge_key(metric.dist(0, v), 0, v);
        link[v] = 0;
    }
    for _ in 1..n {
        let mut next = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (next == usize::MAX || key_less(best[v], best[next])) {
                next = v;
            }
        }
        in_tree[next] = true;
        adj[next].push(link[next]);
        adj[link[next]].push(next);
        for v in 0..n {
            if !in_tree[v] {
                let cand = edge_key(metric.dist(next, v), next, v);
                if key_less(cand, best[v]) {
                    best[v] = cand;
                    link[v] = next;
                }
            }
        }
    }
    let parent = orient(&adj, root);
    Ok(RootedTree::from_parents(root, &parent)?.reweighted(metric))
}

fn orient(adj: &[Vec<usize>], root: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = Some(v);
                stack.push(u);
            }
        }
    }
    parent
}

/// A Hamiltonian vertex order with the distances between consecutive
/// vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearOrder {
    order: Vec<usize>,
    #[serde(skip)]
    position: Vec<usize>,
    edge_weights: Vec<f64>,
}

impl LinearOrder {
    /// Wraps a permutation of `0..metric.len()`.
    pub fn new(metric: &MetricSpace, order: Vec<usize>) -> Result<Self> {
        let n = metric.len();
        if order.len() != n {
            return Err(Error::Structure(format!("order has {} entries, metric has {n}", order.len())));
        }
        let mut position = vec![usize::MAX; n];
        for (q, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if position[v] != usize::MAX {
                return Err(Error::Structure(format!("vertex {v} appears twice in the order")));
            }
            position[v] = q;
        }
        let edge_weights = order.windows(2).map(|w| metric.dist(w[0], w[1])).collect();
        Ok(LinearOrder { order, position, edge_weights })
    }

    /// The identity order `0, 1, ..., n-1`.
    pub fn identity(metric: &MetricSpace) -> Self {
        Self::new(metric, (0..metric.len()).collect()).expect("identity is a permutation")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Vertex at 0-based position `q`.
    pub fn vertex_at(&self, q: usize) -> usize {
        self.order[q]
    }

    /// 0-based position of vertex `v`.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn edge_weights(&self) -> &[f64] {
        &self.edge_weights
    }

    pub fn weight(&self) -> f64 {
        self.edge_weights.iter().sum()
    }

    /// Weight of the closed tour `L[0], ..., L[n-1], L[0]`.
    pub fn cycle_weight(&self, metric: &MetricSpace) -> f64 {
        match (self.order.first(), self.order.last()) {
            (Some(&a), Some(&b)) => self.weight() + metric.dist(a, b),
            _ => 0.0,
        }
    }

    /// Cyclic rotation placing the current first vertex at position `q`.
    /// The result is a sub-path of the closed tour, so its weight never
    /// exceeds [`LinearOrder::cycle_weight`].
    pub fn rotated(&self, metric: &MetricSpace, q: usize) -> Self {
        let n = self.len();
        let order = (0..n).map(|k| self.order[(k + n - q % n) % n]).collect();
        Self::new(metric, order).expect("rotation of a permutation")
    }
}

/// Shortcut Euler tour of `mst` starting at `start`: vertices in order of
/// first occurrence, neighbors visited in ascending index.
///
/// Its weight is at most `2 * weight(mst)`; so is the closed tour.
pub fn hamiltonian_path(metric: &MetricSpace, mst: &RootedTree, start: usize) -> Result<LinearOrder> {
    let n = metric.len();
    if start >= n {
        return Err(Error::VertexOutOfRange { vertex: start, n });
    }
    if mst.len() != n {
        return Err(Error::Structure(format!("tree has {} vertices, metric has {n}", mst.len())));
    }
    let mut adj = mst.adjacency();
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        if std::mem::replace(&mut seen[v], true) {
            continue;
        }
        order.push(v);
        stack.extend(adj[v].iter().rev().filter(|&&u| !seen[u]));
    }
    LinearOrder::new(metric, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_distances() {
        let m = line_metric(7).unwrap();
        assert_eq!(m.dist(0, 6), 6.0);
        assert_eq!(m.dist(2, 3), 1.0);
        assert_eq!(line_metric(1).unwrap().len(), 1);
        assert!(matches!(line_metric(0), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn parse_formats() {
        assert_eq!(parse_metric("line 5").unwrap(), line_metric(5).unwrap());
        let m = parse_metric("points 2\n0 0\n3 0\n0 4\n").unwrap();
        assert_eq!(m.dist(1, 2), 5.0);
        let m = parse_metric("# comment\nmatrix 2\n0 1.5\n1.5 0\n").unwrap();
        assert_eq!(m.kind(), MetricKind::Matrix);
        assert_eq!(m.dist(0, 1), 1.5);
    }

    #[test]
    fn triangle_violation_names_the_triple() {
        let err = parse_metric("matrix 3\n0 1 10\n1 0 1\n10 1 0\n").unwrap_err();
        match err {
            Error::Validation(v) => {
                assert_eq!(v.len(), 1);
                assert!(matches!(v[0], Violation::Triangle { i: 0, j: 1, k: 2, .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn other_violations_are_all_reported() {
        let err = MetricSpace::from_matrix(3, vec![0.0, 1.0, -1.0, 2.0, 0.0, 1.0, -1.0, 1.0, 0.5]).unwrap_err();
        let Error::Validation(v) = err else { panic!() };
        assert!(v.iter().any(|x| matches!(x, Violation::Negative { i: 0, j: 2, .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::Asymmetric { i: 0, j: 1, .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::NonZeroDiagonal { i: 2, .. })));
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_metric("").is_err());
        assert!(parse_metric("points 2\n0 0 0\n").is_err());
        assert!(parse_metric("matrix 2\n0 1\n").is_err());
        assert!(parse_metric("cube 3").is_err());
        assert!(parse_metric("line 3\n1 2").is_err());
    }

    #[test]
    fn shorthand_without_file() {
        assert_eq!(load_metric("line_64").unwrap().len(), 64);
        assert_eq!(load_metric("line:3").unwrap().len(), 3);
    }

    #[test]
    fn mst_of_line_is_the_path() {
        let t = minimum_spanning_tree(&line_metric(5).unwrap()).unwrap();
        assert_eq!(t.weight(), 4.0);
        for v in 1..5 {
            assert_eq!(t.parent(v), Some(v - 1));
        }
    }

    #[test]
    fn mst_of_collinear_points() {
        let m = MetricSpace::from_points(2, vec![0.0, 0.0, 1.0, 0.0, 10.0, 0.0]).unwrap();
        let t = minimum_spanning_tree(&m).unwrap();
        assert_eq!(t.weight(), 10.0);
        assert_eq!(t.parent(1), Some(0));
        assert_eq!(t.parent(2), Some(1));
    }

    #[test]
    fn mst_ties_take_smallest_edge() {
        // Four corners of a unit square: all sides tie.
        let m = MetricSpace::from_points(2, vec![0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0]).unwrap();
        let t = minimum_spanning_tree(&m).unwrap();
        let mut edges: Vec<(usize, usize)> = t.edges().map(|(p, c, _)| (p.min(c), p.max(c))).collect();
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn path_on_line_is_identity() {
        let m = line_metric(5).unwrap();
        let t = minimum_spanning_tree(&m).unwrap();
        let l = hamiltonian_path(&m, &t, 0).unwrap();
        assert_eq!(l.order(), &[0, 1, 2, 3, 4]);
        assert_eq!(l.weight(), 4.0);
        assert!(hamiltonian_path(&m, &t, 9).is_err());
    }

    #[test]
    fn star_metric_tour() {
        // center 0, k leaves at distance 1 from it and 2 from each other
        let k = 6;
        let n = k + 1;
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    d[i * n + j] = if i == 0 || j == 0 { 1.0 } else { 2.0 };
                }
            }
        }
        let m = MetricSpace::from_matrix(n, d).unwrap();
        let t = minimum_spanning_tree(&m).unwrap();
        assert_eq!(t.weight(), k as f64);
        let l = hamiltonian_path(&m, &t, 0).unwrap();
        assert_eq!(l.weight(), 1.0 + 2.0 * (k as f64 - 1.0));
        assert!(l.weight() <= 2.0 * t.weight());
    }

    #[test]
    fn rotation_stays_within_closed_tour() {
        let m = MetricSpace::from_points(1, vec![0.0, 5.0, 1.0, 7.0, 3.0]).unwrap();
        let t = minimum_spanning_tree(&m).unwrap();
        let l = hamiltonian_path(&m, &t, 0).unwrap();
        for q in 0..m.len() {
            let r = l.rotated(&m, q);
            assert_eq!(r.vertex_at(q), l.vertex_at(0));
            assert!(r.weight() <= l.cycle_weight(&m) + 1e-12);
        }
    }
}
