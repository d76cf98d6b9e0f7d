//! Exhaustive enumeration of rooted labeled trees on the line.
//!
//! A rooted tree is generated layer by layer: after the root, each layer is
//! a nonempty subset of the unused vertices, and every member picks a
//! parent in the previous layer. Every tree arises exactly once, so the
//! unrestricted count is `n^(n-1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::Caps;
use crate::par::Exec;

/// Hard limit of the bitmask representation.
const MAX_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stat {
    Weight,
    Covering,
}

/// Calls `f(parent, depth)` for every tree rooted at `root` with depth at
/// most `max_depth` and at most `max_arity` children per vertex. `parent`
/// is indexed by vertex; vertex `i` sits at coordinate `i + 1`.
pub fn for_each_line_tree<F>(n: usize, root: usize, max_depth: usize, max_arity: usize, mut f: F)
where
    F: FnMut(&[Option<usize>], usize),
{
    assert!(n <= MAX_N && root < n);
    let mut g = Gen {
        max_depth,
        max_arity,
        parent: vec![None; n],
        kids: vec![0; n],
        f: &mut f,
    };
    let all = (1u32 << n) - 1;
    g.layer(&[root], all & !(1 << root), 0);
}

struct Gen<'a, F> {
    max_depth: usize,
    max_arity: usize,
    parent: Vec<Option<usize>>,
    kids: Vec<usize>,
    f: &'a mut F,
}

impl<F: FnMut(&[Option<usize>], usize)> Gen<'_, F> {
    fn layer(&mut self, prev: &[usize], remaining: u32, depth: usize) {
        if remaining == 0 {
            (self.f)(&self.parent, depth);
            return;
        }
        if depth == self.max_depth {
            return;
        }
        let mut s = remaining;
        while s != 0 {
            let members: Vec<usize> = (0..32).filter(|&b| s >> b & 1 == 1).collect();
            if members.len() <= prev.len() * self.max_arity {
                self.assign(prev, &members, 0, remaining & !s, depth);
            }
            s = (s - 1) & remaining;
        }
    }

    fn assign(&mut self, prev: &[usize], members: &[usize], k: usize, rest: u32, depth: usize) {
        if k == members.len() {
            self.layer(members, rest, depth + 1);
            return;
        }
        let v = members[k];
        for &p in prev {
            if self.kids[p] < self.max_arity {
                self.kids[p] += 1;
                self.parent[v] = Some(p);
                self.assign(prev, members, k + 1, rest, depth);
                self.parent[v] = None;
                self.kids[p] -= 1;
            }
        }
    }
}

/// `sum |i - parent(i)|`, the weight on the line.
pub fn line_tree_weight(parent: &[Option<usize>]) -> u64 {
    parent
        .iter()
        .enumerate()
        .filter_map(|(v, p)| p.map(|p| v.abs_diff(p) as u64))
        .sum()
}

/// Maximum number of edges strictly straddling a vertex.
pub fn line_tree_covering(parent: &[Option<usize>]) -> u32 {
    let n = parent.len();
    let mut diff = vec![0i32; n + 1];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            let (a, b) = (v.min(p), v.max(p));
            if b > a + 1 {
                diff[a + 1] += 1;
                diff[b] -= 1;
            }
        }
    }
    let mut run = 0;
    let mut best = 0;
    for d in &diff[..n] {
        run += d;
        best = best.max(run);
    }
    best as u32
}

fn line_tree_max_degree(parent: &[Option<usize>]) -> usize {
    let mut deg = vec![0usize; parent.len()];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            deg[v] += 1;
            deg[p] += 1;
        }
    }
    deg.into_iter().max().unwrap_or(0)
}

/// Per exact depth: number of trees and minimum weight and covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthTable {
    pub n: usize,
    pub max_arity: usize,
    pub count: Vec<u64>,
    pub min_weight: Vec<Option<u64>>,
    pub min_covering: Vec<Option<u32>>,
    /// Whether every tree satisfied `2 covering >= max degree - 2`.
    pub degree_bound_holds: bool,
}

impl DepthTable {
    fn empty(n: usize, max_arity: usize) -> Self {
        DepthTable {
            n,
            max_arity,
            count: vec![0; n],
            min_weight: vec![None; n],
            min_covering: vec![None; n],
            degree_bound_holds: true,
        }
    }

    fn merge(mut self, other: DepthTable) -> Self {
        for d in 0..self.n {
            self.count[d] += other.count[d];
            self.min_weight[d] = min_opt(self.min_weight[d], other.min_weight[d]);
            self.min_covering[d] = min_opt(self.min_covering[d], other.min_covering[d]);
        }
        self.degree_bound_holds &= other.degree_bound_holds;
        self
    }

    pub fn total(&self) -> u64 {
        self.count.iter().sum()
    }

    /// Minimum over all trees of depth at most `h`.
    pub fn min_up_to(&self, h: usize, stat: Stat) -> Option<u64> {
        let h = h.min(self.n - 1);
        (0..=h)
            .filter_map(|d| match stat {
                Stat::Weight => self.min_weight[d],
                Stat::Covering => self.min_covering[d].map(u64::from),
            })
            .min()
    }
}

fn min_opt<T: Ord>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Enumerates every line tree on `n` vertices (optionally with arity at
/// most `max_arity`), partitioned by root.
pub fn depth_table(n: usize, max_arity: Option<usize>, caps: &Caps, exec: Exec) -> Result<DepthTable> {
    if n == 0 {
        return Err(Error::InvalidSize("no vertices".into()));
    }
    caps.check_line(n)?;
    if n > MAX_N {
        return Err(Error::Resource(format!("enumeration supports at most {MAX_N} vertices")));
    }
    let arity = max_arity.unwrap_or(n);
    let parts = exec.map_range(n, |root| {
        let mut t = DepthTable::empty(n, arity);
        for_each_line_tree(n, root, n - 1, arity, |parent, depth| {
            t.count[depth] += 1;
            let w = line_tree_weight(parent);
            let c = line_tree_covering(parent);
            t.min_weight[depth] = min_opt(t.min_weight[depth], Some(w));
            t.min_covering[depth] = min_opt(t.min_covering[depth], Some(c));
            if 2 * c as usize + 2 < line_tree_max_degree(parent) {
                t.degree_bound_holds = false;
            }
        });
        t
    });
    Ok(parts.into_iter().fold(DepthTable::empty(n, arity), DepthTable::merge))
}

fn check_depth(n: usize, h: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidSize("no vertices".into()));
    }
    if h == 0 && n > 1 {
        return Err(Error::Domain(format!("no tree of depth 0 spans {n} vertices")));
    }
    Ok(())
}

/// `W(n, h)` or `chi(n, h)`: the exact minimum over all line trees of depth
/// at most `h`.
pub fn exhaustive_min(n: usize, h: usize, stat: Stat, caps: &Caps, exec: Exec) -> Result<u64> {
    check_depth(n, h)?;
    let table = depth_table(n, None, caps, exec)?;
    Ok(table.min_up_to(h, stat).expect("the path has depth n - 1"))
}

/// `Bin(n, h)`: minimum weight over line trees with at most two children
/// per vertex and depth at most `h`.
pub fn exhaustive_bin(n: usize, h: usize, caps: &Caps, exec: Exec) -> Result<Option<u64>> {
    check_depth(n, h)?;
    Ok(depth_table(n, Some(2), caps, exec)?.min_up_to(h, Stat::Weight))
}

/// Covering of the star centred at coordinate `c + 1`.
pub fn star_covering(n: usize, c: usize) -> u32 {
    // all but one left edge straddle the left neighbour of c
    let left = c.saturating_sub(1);
    let right = (n - 1 - c).saturating_sub(1);
    left.max(right) as u32
}

/// `chi(n, 1)`: depth 1 forces a star, so this is the best star centre.
pub fn star_min_covering(n: usize) -> u32 {
    (0..n).map(|c| star_covering(n, c)).min().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn counts_are_cayley() {
        for n in 1..=6 {
            let t = depth_table(n, None, &caps(), Exec::Sequential).unwrap();
            assert_eq!(t.total(), (n as u64).pow(n as u32 - 1), "n = {n}");
        }
    }

    #[test]
    fn binary_counts() {
        // rooted labeled trees with at most two ordered-free children: 1, 2, 9, 60
        let expect = [1, 2, 9, 60];
        for (i, &e) in expect.iter().enumerate() {
            let t = depth_table(i + 1, Some(2), &caps(), Exec::Sequential).unwrap();
            assert_eq!(t.total(), e);
        }
    }

    #[test]
    fn known_minima() {
        let c = caps();
        for n in 2..=6 {
            assert_eq!(exhaustive_min(n, n - 1, Stat::Weight, &c, Exec::Sequential).unwrap(), n as u64 - 1);
        }
        assert_eq!(exhaustive_min(5, 1, Stat::Weight, &c, Exec::Sequential).unwrap(), 6);
        assert_eq!(exhaustive_min(7, 1, Stat::Covering, &c, Exec::Parallel).unwrap(), 2);
        assert_eq!(exhaustive_min(1, 0, Stat::Weight, &c, Exec::Sequential).unwrap(), 0);
        assert!(exhaustive_min(3, 0, Stat::Weight, &c, Exec::Sequential).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let c = Caps { line: 5, shapes: 12 };
        assert!(matches!(
            exhaustive_min(6, 2, Stat::Weight, &c, Exec::Sequential),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn star_closed_form() {
        for n in 3..=7 {
            let t = depth_table(n, None, &caps(), Exec::Sequential).unwrap();
            assert_eq!(t.min_covering[1], Some(star_min_covering(n)));
            assert_eq!(star_min_covering(n) as usize, (n - 3).div_ceil(2));
        }
        assert_eq!(star_min_covering(32), 15);
    }

    #[test]
    fn covering_of_small_trees() {
        assert_eq!(line_tree_covering(&[None, Some(0), Some(0)]), 1);
        assert_eq!(line_tree_covering(&[None, Some(0), Some(1)]), 0);
        assert_eq!(line_tree_weight(&[None, Some(0), Some(0)]), 3);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = depth_table(6, None, &caps(), Exec::Sequential).unwrap();
        let b = depth_table(6, None, &caps(), Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
