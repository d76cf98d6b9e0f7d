//! Low-light tree constructions.
//!
//! Every construction first builds a template tree on the line metric
//! (vertex `i` at coordinate `i + 1`), trims it to exactly `n` vertices and
//! then maps coordinate `i` to the `i`-th vertex of a Hamiltonian order of
//! the target metric. Depth and load carry over unchanged, and since the
//! order weighs at most twice the MST, lightness is at most twice the load.

use std::collections::{BinaryHeap, HashMap};

use log::warn;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{hamiltonian_path, minimum_spanning_tree_rooted, LinearOrder, MetricSpace};
use crate::tree::RootedTree;

/// Largest template the builders will allocate.
pub const MAX_TEMPLATE_SIZE: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Attaches `sub` as a subtree of vertex `v` of `base`, both trees of the
/// line metric.
///
/// With [`Side::Right`] the coordinates of `sub` are inserted immediately to
/// the right of `v`: vertices of `base` up to `v` keep their coordinates,
/// `sub` is shifted by `v`'s coordinate and the rest of `base` by `|sub|`.
/// [`Side::Left`] inserts immediately to the left of `v`.
pub fn compose(base: &RootedTree, v: usize, sub: &RootedTree, side: Side) -> Result<RootedTree> {
    let n1 = base.len();
    let n2 = sub.len();
    if v >= n1 {
        return Err(Error::VertexOutOfRange { vertex: v, n: n1 });
    }
    // first coordinate index taken by `sub`
    let start = match side {
        Side::Right => v + 1,
        Side::Left => v,
    };
    let base_map = |x: usize| if x < start { x } else { x + n2 };
    let sub_map = |x: usize| x + start;
    let mut children = vec![Vec::new(); n1 + n2];
    for x in 0..n1 {
        children[base_map(x)] = base.children(x).iter().map(|&c| base_map(c)).collect();
    }
    for x in 0..n2 {
        children[sub_map(x)] = sub.children(x).iter().map(|&c| sub_map(c)).collect();
    }
    children[base_map(v)].push(sub_map(sub.root()));
    children[base_map(v)].sort_unstable();
    Ok(RootedTree::from_children(base_map(base.root()), children)?.with_line_weights())
}

/// Sizes `N(xi, h)` of the load-`xi`, depth-`h` trees, for all
/// `xi <= max_xi` and `h <= max_h`.
///
/// `N(1, h) = h + 1` and
/// `N(xi, h) = h + 1 + sum_{i=1..h} N(min(xi - 1, h - i + 1), h - i)`,
/// defined for `h >= xi - 1`. Values saturate at `u64::MAX`.
#[derive(Debug, Clone)]
pub struct HighSizeTable {
    max_h: usize,
    /// `rows[xi - 1][h]`, zero where undefined.
    rows: Vec<Vec<u64>>,
}

impl HighSizeTable {
    pub fn new(max_xi: usize, max_h: usize) -> Self {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(max_xi);
        // diag[k] = N(k + 1, k), the j < xi - 2 terms of the sum
        let mut diag_prefix: Vec<u64> = vec![0];
        for xi in 1..=max_xi {
            let mut row = vec![0u64; max_h + 1];
            if xi == 1 {
                for (h, slot) in row.iter_mut().enumerate() {
                    *slot = h as u64 + 1;
                }
            } else {
                let prev = &rows[xi - 2];
                // sum_{j = xi-2}^{h-1} N(xi - 1, j), grown one term per h
                let mut tail: u64 = 0;
                let head = diag_prefix[xi - 2];
                for h in (xi - 1)..=max_h {
                    tail = tail.saturating_add(prev[h - 1]);
                    row[h] = (h as u64 + 1).saturating_add(head).saturating_add(tail);
                }
            }
            if xi - 1 <= max_h {
                let d = row[xi - 1];
                let last = *diag_prefix.last().unwrap();
                diag_prefix.push(last.saturating_add(d));
            } else {
                diag_prefix.push(u64::MAX);
            }
            rows.push(row);
        }
        HighSizeTable { max_h, rows }
    }

    pub fn max_xi(&self) -> usize {
        self.rows.len()
    }

    pub fn max_h(&self) -> usize {
        self.max_h
    }

    pub fn get(&self, xi: usize, h: usize) -> Result<u64> {
        check_high_domain(xi, h)?;
        if xi > self.rows.len() || h > self.max_h {
            return Err(Error::Domain(format!("N({xi},{h}) is outside the table")));
        }
        Ok(self.rows[xi - 1][h])
    }
}

fn check_high_domain(xi: usize, h: usize) -> Result<()> {
    if xi == 0 {
        return Err(Error::Domain("load parameter must be at least 1".into()));
    }
    if h + 1 < xi {
        return Err(Error::Domain(format!("T({xi},{h}) needs h >= xi - 1")));
    }
    Ok(())
}

/// `N(xi, h)`, the number of vertices of `T(xi, h)`.
pub fn size_high(xi: usize, h: usize) -> Result<u64> {
    check_high_domain(xi, h)?;
    HighSizeTable::new(xi, h).get(xi, h)
}

/// The binary tree `T(xi, h)` on `N(xi, h)` coordinates: depth exactly `h`,
/// load exactly `xi`, rooted at coordinate 1.
///
/// Layout is `v_1, T''_1, v_2, T''_2, ..., v_h, T''_h, v_{h+1}` where the
/// `v_i` form a path and `T''_i = T(min(xi - 1, h - i + 1), h - i)` hangs off
/// `v_i` as its right subtree.
pub fn build_high_tree(xi: usize, h: usize) -> Result<RootedTree> {
    let table = HighSizeTable::new(xi, h);
    let n = table.get(xi, h)?;
    if n > MAX_TEMPLATE_SIZE {
        return Err(Error::Resource(format!("T({xi},{h}) has {n} vertices")));
    }
    let mut parent = vec![None; n as usize];
    lay_high(&table, xi, h, 0, &mut parent);
    Ok(RootedTree::from_parents(0, &parent)?.with_line_weights())
}

/// Writes `T(xi, h)` into `parent[offset..]`; its root is `offset`.
fn lay_high(table: &HighSizeTable, xi: usize, h: usize, offset: usize, parent: &mut [Option<usize>]) {
    let mut spine_prev: Option<usize> = None;
    let mut pos = offset;
    for i in 1..=h + 1 {
        let v = pos;
        if let Some(p) = spine_prev {
            parent[v] = Some(p);
        }
        spine_prev = Some(v);
        pos += 1;
        if i <= h && xi >= 2 {
            let sub_xi = (xi - 1).min(h - i + 1);
            let sub_h = h - i;
            let size = table.rows[sub_xi - 1][sub_h] as usize;
            lay_high(table, sub_xi, sub_h, pos, parent);
            parent[pos] = Some(v);
            pos += size;
        }
    }
}

/// `T(xi, h)` assembled literally by repeated [`compose`] calls. Quadratic;
/// kept as an independent route for cross-checking [`build_high_tree`].
pub fn build_high_tree_by_composition(xi: usize, h: usize) -> Result<RootedTree> {
    check_high_domain(xi, h)?;
    let mut memo = HashMap::new();
    compose_high(xi, h, &mut memo)
}

fn compose_high(xi: usize, h: usize, memo: &mut HashMap<(usize, usize), RootedTree>) -> Result<RootedTree> {
    if let Some(t) = memo.get(&(xi, h)) {
        return Ok(t.clone());
    }
    let spine: Vec<Option<usize>> = (0..=h).map(|v| v.checked_sub(1)).collect();
    let mut tree = RootedTree::from_parents(0, &spine)?.with_line_weights();
    if xi >= 2 {
        // current coordinate index of spine vertex v'_i
        let mut at = 0;
        for i in 1..=h {
            let sub = compose_high((xi - 1).min(h - i + 1), h - i, memo)?;
            tree = compose(&tree, at, &sub, Side::Right)?;
            at += sub.len() + 1;
        }
    }
    memo.insert((xi, h), tree.clone());
    Ok(tree)
}

/// The full balanced binary tree on coordinates `1..=n`: root `ceil(n/2)`,
/// halves built recursively.
pub fn build_balanced(n: usize) -> Result<RootedTree> {
    if n == 0 {
        return Err(Error::InvalidSize("balanced tree needs n >= 1".into()));
    }
    let mut parent = vec![None; n];
    let root = lay_balanced(0, n, &mut parent);
    Ok(RootedTree::from_parents(root, &parent)?.with_line_weights())
}

/// Lays out coordinates `[lo, hi)`; returns the root index.
fn lay_balanced(lo: usize, hi: usize, parent: &mut [Option<usize>]) -> usize {
    let len = hi - lo;
    let root = lo + len.div_ceil(2) - 1;
    if root > lo {
        let l = lay_balanced(lo, root, parent);
        parent[l] = Some(root);
    }
    if root + 1 < hi {
        let r = lay_balanced(root + 1, hi, parent);
        parent[r] = Some(root);
    }
    root
}

/// `sum_{i=0..h} d^i`, the size of `T~(d, h)`.
pub fn low_tree_size(d: usize, h: usize) -> Result<u64> {
    let d = d as u64;
    let mut total: u64 = 0;
    let mut term: u64 = 1;
    for i in 0..=h {
        total = total.checked_add(term).ok_or_else(|| Error::Resource(format!("N~({d},{h}) overflows")))?;
        if i < h {
            term = term.checked_mul(d).ok_or_else(|| Error::Resource(format!("N~({d},{h}) overflows")))?;
        }
    }
    Ok(total)
}

/// The `d`-ary tree `T~(d, h)`: `ceil(d/2)` copies of `T~(d, h-1)` to the
/// left of the root and the remaining copies to its right.
pub fn build_low_tree(d: usize, h: usize) -> Result<RootedTree> {
    if d < 2 {
        return Err(Error::Domain(format!("arity {d} < 2")));
    }
    let n = low_tree_size(d, h)?;
    if n > MAX_TEMPLATE_SIZE {
        return Err(Error::Resource(format!("T~({d},{h}) has {n} vertices")));
    }
    let mut parent = vec![None; n as usize];
    lay_low(d, h, 0, &mut parent);
    let mut tree = RootedTree::from_parents(root_of_low(d, h), &parent)?.with_line_weights();
    tree.sort_children();
    Ok(tree)
}

fn root_of_low(d: usize, h: usize) -> usize {
    if h == 0 {
        0
    } else {
        d.div_ceil(2) * low_tree_size(d, h - 1).expect("sizes checked by caller") as usize
    }
}

fn lay_low(d: usize, h: usize, offset: usize, parent: &mut [Option<usize>]) {
    if h == 0 {
        return;
    }
    let sub = low_tree_size(d, h - 1).expect("sizes checked by caller") as usize;
    let sub_root = root_of_low(d, h - 1);
    let left = d.div_ceil(2);
    let root = offset + left * sub;
    for k in 0..d {
        let start = if k < left { offset + k * sub } else { root + 1 + (k - left) * sub };
        lay_low(d, h - 1, start, parent);
        parent[start + sub_root] = Some(root);
    }
}

/// Removes leaves one at a time (deepest first, ties to the largest
/// coordinate) until `n` vertices remain, then renumbers the survivors to
/// `1..=n` preserving their order on the line.
///
/// Removing a leaf never raises the depth, arity or any load.
pub fn trim_to_size(tree: &RootedTree, n: usize) -> Result<RootedTree> {
    let total = tree.len();
    if n == 0 || n > total {
        return Err(Error::InvalidSize(format!("cannot trim {total} vertices to {n}")));
    }
    let depth = tree.depths();
    let mut remaining_children: Vec<usize> = (0..total).map(|v| tree.children(v).len()).collect();
    let mut alive = vec![true; total];
    let mut heap: BinaryHeap<(usize, usize)> = (0..total)
        .filter(|&v| remaining_children[v] == 0 && v != tree.root())
        .map(|v| (depth[v], v))
        .collect();
    let mut count = total;
    while count > n {
        let (_, leaf) = heap.pop().expect("a tree with two or more vertices has a non-root leaf");
        alive[leaf] = false;
        count -= 1;
        let p = tree.parent(leaf).expect("non-root leaf has a parent");
        remaining_children[p] -= 1;
        if remaining_children[p] == 0 && p != tree.root() {
            heap.push((depth[p], p));
        }
    }
    let mut rank = vec![usize::MAX; total];
    let mut next = 0;
    for v in 0..total {
        if alive[v] {
            rank[v] = next;
            next += 1;
        }
    }
    let mut children = vec![Vec::new(); n];
    for v in (0..total).filter(|&v| alive[v]) {
        children[rank[v]] = tree.children(v).iter().filter(|&&c| alive[c]).map(|&c| rank[c]).collect();
    }
    Ok(RootedTree::from_children(rank[tree.root()], children)?.with_line_weights())
}

pub fn floor_log2(n: usize) -> usize {
    debug_assert!(n >= 1);
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

pub fn ceil_log2(n: usize) -> usize {
    debug_assert!(n >= 1);
    if n <= 1 {
        0
    } else {
        floor_log2(n - 1) + 1
    }
}

/// Smallest integer `k >= 1` with `k^h >= n`, i.e. `ceil(n^(1/h))`.
pub fn ceil_root(n: usize, h: usize) -> usize {
    assert!(h >= 1);
    let n = n as u128;
    let pow_at_least = |k: u128| {
        let mut acc: u128 = 1;
        for _ in 0..h {
            acc = acc.saturating_mul(k);
            if acc >= n {
                return true;
            }
        }
        acc >= n
    };
    let mut k: u128 = ((n as f64).powf(1.0 / h as f64).floor() as u128).max(1);
    while k > 1 && pow_at_least(k - 1) {
        k -= 1;
    }
    while !pow_at_least(k) {
        k += 1;
    }
    k as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `h >= n - 1`: the Hamiltonian path itself.
    Path,
    /// `h < ceil(log2 n)`: trimmed `T~(d, h)`.
    Low,
    /// `ceil(log2 n) <= h < 2 ceil(log2 n)`: the balanced tree.
    Mid,
    /// `h >= 2 ceil(log2 n)`: trimmed `T(xi, h)`.
    High,
}

/// Which template `build_llt` uses and the parameters it chose.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionPlan {
    pub n: usize,
    pub h: usize,
    pub regime: Regime,
    /// Load parameter of `T(xi, h)` (high regime).
    pub xi: Option<usize>,
    /// Arity of `T~(d, h)` (low regime).
    pub d: Option<usize>,
    /// Template size before trimming.
    pub template_size: u64,
    /// Depth of the template; at most `h`.
    pub template_depth: usize,
    /// Load the construction guarantees.
    pub load_bound: u64,
}

/// Chooses the template for `n` points and depth budget `h`.
pub fn plan(n: usize, h: usize) -> Result<ConstructionPlan> {
    if n == 0 {
        return Err(Error::InvalidSize("no points".into()));
    }
    if h == 0 && n > 1 {
        return Err(Error::Domain(format!("depth 0 cannot span {n} points")));
    }
    let mut p = ConstructionPlan {
        n,
        h,
        regime: Regime::Path,
        xi: None,
        d: None,
        template_size: n as u64,
        template_depth: n - 1,
        load_bound: 1,
    };
    if h >= n - 1 {
        return Ok(p);
    }
    let lg = ceil_log2(n);
    if h < lg {
        // smallest d >= 2 with n < N~(d, h); then N~(d-1, h) <= n
        let mut d = 2;
        while low_tree_size(d, h)? <= n as u64 {
            d += 1;
        }
        p.regime = Regime::Low;
        p.d = Some(d);
        p.template_size = low_tree_size(d, h)?;
        p.template_depth = h;
        p.load_bound = (d * h) as u64;
    } else if h < 2 * lg {
        p.regime = Regime::Mid;
        p.template_depth = floor_log2(n);
        p.load_bound = floor_log2(n) as u64;
    } else {
        let table = HighSizeTable::new(h + 1, h);
        let xi = (1..=h + 1)
            .find(|&xi| table.rows[xi - 1][h] > n as u64)
            .ok_or_else(|| Error::Domain(format!("no T(xi,{h}) exceeds {n} vertices")))?;
        // shallowest template of this load that still has more than n vertices
        let depth = (xi - 1..=h)
            .find(|&t| table.rows[xi - 1][t] > n as u64)
            .expect("h itself qualifies");
        p.regime = Regime::High;
        p.xi = Some(xi);
        p.template_size = table.rows[xi - 1][depth];
        p.template_depth = depth;
        p.load_bound = xi as u64;
    }
    Ok(p)
}

/// Builds the plan's template, trimmed to `plan.n` coordinates.
pub fn template(plan: &ConstructionPlan) -> Result<RootedTree> {
    let full = match plan.regime {
        Regime::Path => {
            let parents: Vec<Option<usize>> = (0..plan.n).map(|v| v.checked_sub(1)).collect();
            return Ok(RootedTree::from_parents(0, &parents)?.with_line_weights());
        }
        Regime::Mid => return build_balanced(plan.n),
        Regime::Low => build_low_tree(plan.d.expect("low plan has d"), plan.h)?,
        Regime::High => build_high_tree(plan.xi.expect("high plan has xi"), plan.template_depth)?,
    };
    trim_to_size(&full, plan.n)
}

/// A low-light tree together with how it was made.
#[derive(Debug, Clone)]
pub struct Llt {
    pub tree: RootedTree,
    pub plan: ConstructionPlan,
    /// The Hamiltonian order the template was embedded along.
    pub order: LinearOrder,
    /// The trimmed line template before embedding.
    pub template: RootedTree,
}

/// Reusable per-metric state: MST and base Hamiltonian order.
#[derive(Debug, Clone)]
pub struct LltBuilder<'a> {
    metric: &'a MetricSpace,
    root: usize,
    mst_weight: f64,
    base_order: LinearOrder,
}

impl<'a> LltBuilder<'a> {
    /// `root` defaults to vertex 0.
    pub fn new(metric: &'a MetricSpace, root: Option<usize>) -> Result<Self> {
        let root = root.unwrap_or(0);
        let mst = minimum_spanning_tree_rooted(metric, root)?;
        let base_order = hamiltonian_path(metric, &mst, root)?;
        Ok(LltBuilder {
            metric,
            root,
            mst_weight: mst.weight(),
            base_order,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn mst_weight(&self) -> f64 {
        self.mst_weight
    }

    /// The shortcut tour starting at the root.
    pub fn base_order(&self) -> &LinearOrder {
        &self.base_order
    }

    /// Spanning tree of depth at most `h` rooted at the designated root.
    ///
    /// The base order is rotated cyclically so that the root lands on the
    /// template root's coordinate; any rotation of the closed shortcut tour
    /// still weighs at most twice the MST.
    pub fn build(&self, h: usize) -> Result<Llt> {
        let n = self.metric.len();
        let h = if n > 1 && h > n - 1 {
            warn!("depth budget {h} exceeds n - 1 = {}; returning the path", n - 1);
            n - 1
        } else {
            h
        };
        let plan = plan(n, h)?;
        let template = template(&plan)?;
        let order = self.base_order.rotated(self.metric, template.root());
        let map: Vec<usize> = (0..n).map(|i| order.vertex_at(i)).collect();
        let tree = template.relabeled(&map)?.reweighted(self.metric);
        Ok(Llt { tree, plan, order, template })
    }
}

/// One-shot [`LltBuilder::build`].
pub fn build_llt(metric: &MetricSpace, h: usize, root: Option<usize>) -> Result<Llt> {
    LltBuilder::new(metric, root)?.build(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::line_metric;
    use crate::tree::{covering, line_load};

    fn path(n: usize) -> RootedTree {
        let parents: Vec<Option<usize>> = (0..n).map(|v| v.checked_sub(1)).collect();
        RootedTree::from_parents(0, &parents).unwrap().with_line_weights()
    }

    #[test]
    fn compose_singletons() {
        let s = RootedTree::singleton();
        let t = compose(&s, 0, &s, Side::Right).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.root(), 0);
        assert_eq!(t.parent(1), Some(0));
        let t = compose(&s, 0, &s, Side::Left).unwrap();
        assert_eq!(t.root(), 1);
        assert_eq!(t.parent(0), Some(1));
        assert!(compose(&s, 3, &s, Side::Left).is_err());
    }

    #[test]
    fn compose_shifts_coordinates() {
        // inserting a 3-vertex tree right of v'_2 of P_4 moves v'_3 to coordinate 6
        let base = path(4);
        let sub = path(3);
        let t = compose(&base, 1, &sub, Side::Right).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.parent(5), Some(1)); // v'_3, now coordinate 6
        assert_eq!(t.parent(2), Some(1)); // root of the inserted tree
        assert_eq!(t.parent(6), Some(5));
    }

    #[test]
    fn high_sizes() {
        for h in 0..20 {
            assert_eq!(size_high(1, h).unwrap(), h as u64 + 1);
        }
        assert_eq!(size_high(2, 2).unwrap(), 6);
        assert_eq!(size_high(2, 3).unwrap(), 10);
        assert_eq!(size_high(3, 3).unwrap(), 14);
        assert!(matches!(size_high(4, 2), Err(Error::Domain(_))));
        assert!(matches!(size_high(0, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn high_table_matches_plain_recurrence() {
        fn rec(xi: usize, h: usize) -> u64 {
            if xi == 1 {
                return h as u64 + 1;
            }
            h as u64 + 1 + (1..=h).map(|i| rec((xi - 1).min(h - i + 1), h - i)).sum::<u64>()
        }
        let table = HighSizeTable::new(6, 12);
        for xi in 1..=6 {
            for h in xi - 1..=12 {
                assert_eq!(table.get(xi, h).unwrap(), rec(xi, h), "N({xi},{h})");
            }
        }
    }

    #[test]
    fn small_high_trees() {
        let t = build_high_tree(1, 3).unwrap();
        assert_eq!(t, path(4));
        assert_eq!(line_load(&t).xi, 1);

        let t = build_high_tree(3, 3).unwrap();
        assert_eq!(t.len(), 14);
        assert_eq!(t.depth(), 3);
        assert_eq!(line_load(&t).xi, 3);
        assert!(t.is_binary());

        let t = build_high_tree(2, 2).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.depth(), 2);
        assert_eq!(line_load(&t).xi, 2);
    }

    #[test]
    fn layout_equals_composition() {
        for xi in 1..=4 {
            for h in xi - 1..=7 {
                assert_eq!(
                    build_high_tree(xi, h).unwrap(),
                    build_high_tree_by_composition(xi, h).unwrap(),
                    "T({xi},{h})"
                );
            }
        }
    }

    #[test]
    fn balanced_trees() {
        let t = build_balanced(12).unwrap();
        assert_eq!(t.root(), 5);
        assert_eq!(t.depth(), 3);
        assert_eq!(build_balanced(1).unwrap().depth(), 0);
        let t = build_balanced(15).unwrap();
        assert_eq!(t.depth(), 3);
        assert!(line_load(&t).xi <= 3);
        assert!(build_balanced(0).is_err());
    }

    #[test]
    fn low_trees() {
        assert_eq!(build_low_tree(4, 0).unwrap().len(), 1);
        assert_eq!(low_tree_size(2, 3).unwrap(), 15);
        assert_eq!(low_tree_size(3, 2).unwrap(), 13);
        let t = build_low_tree(3, 2).unwrap();
        assert_eq!(t.len(), 13);
        assert_eq!(t.depth(), 2);
        assert_eq!(t.max_arity(), 3);
        // [two copies of T~(3,1)] root [one copy]
        assert_eq!(t.root(), 8);
        assert!(build_low_tree(1, 3).is_err());
    }

    #[test]
    fn trimming() {
        let t = build_high_tree(3, 3).unwrap();
        assert_eq!(trim_to_size(&t, 14).unwrap(), t);
        assert_eq!(trim_to_size(&t, 1).unwrap().len(), 1);
        assert!(trim_to_size(&t, 15).is_err());

        let t = build_low_tree(2, 3).unwrap();
        let before = line_load(&t).xi;
        let s = trim_to_size(&t, 12).unwrap();
        assert_eq!(s.len(), 12);
        assert!(s.depth() <= 3);
        assert!(line_load(&s).xi <= before);
        assert!(covering(&s).max <= covering(&t).max);
    }

    #[test]
    fn integer_helpers() {
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(12), 3);
        assert_eq!(ceil_log2(12), 4);
        assert_eq!(ceil_log2(16), 4);
        assert_eq!(ceil_log2(17), 5);
        assert_eq!(ceil_root(64, 4), 3);
        assert_eq!(ceil_root(81, 4), 3);
        assert_eq!(ceil_root(82, 4), 4);
        assert_eq!(ceil_root(1, 3), 1);
        assert_eq!(ceil_root(1000, 3), 10);
        assert_eq!(ceil_root(1001, 3), 11);
    }

    #[test]
    fn plans_by_regime() {
        assert_eq!(plan(12, 3).unwrap().regime, Regime::Low);
        assert_eq!(plan(12, 4).unwrap().regime, Regime::Mid);
        assert_eq!(plan(12, 11).unwrap().regime, Regime::Path);
        let p = plan(64, 20).unwrap();
        assert_eq!(p.regime, Regime::High);
        let xi = p.xi.unwrap();
        let below = if p.template_depth > xi - 1 { size_high(xi, p.template_depth - 1).unwrap() } else { 0 };
        assert!(below <= 64 && 64 < p.template_size);
        let p = plan(64, 4).unwrap();
        let d = p.d.unwrap();
        assert!(low_tree_size(d - 1, 4).unwrap() <= 64 && 64 < low_tree_size(d, 4).unwrap());
        assert!(d <= ceil_root(64, 4));
        assert!(plan(5, 0).is_err());
        assert_eq!(plan(1, 0).unwrap().regime, Regime::Path);
    }

    #[test]
    fn line_llt_is_the_path_at_full_depth() {
        let m = line_metric(9).unwrap();
        let llt = build_llt(&m, 8, None).unwrap();
        assert_eq!(llt.tree.weight(), 8.0);
        assert_eq!(llt.tree.depth(), 8);
    }

    #[test]
    fn twelve_point_line_in_two_regimes() {
        let m = line_metric(12).unwrap();
        for h in [3, 4] {
            let llt = build_llt(&m, h, None).unwrap();
            assert!(llt.tree.depth() <= h);
            assert_eq!(llt.tree.root(), 0);
        }
    }

    #[test]
    fn oversized_budget_clamps() {
        let m = line_metric(4).unwrap();
        let llt = build_llt(&m, 10, Some(2)).unwrap();
        assert_eq!(llt.plan.regime, Regime::Path);
        assert_eq!(llt.tree.root(), 2);
        assert!(build_llt(&m, 0, None).is_err());
    }
}
