//! Binary tree shapes: the cost function, right-adjustment and exhaustive
//! minima `R(n, h)`.

use crate::error::{Error, Result};
use crate::oracle::Caps;
use crate::par::Exec;
use crate::tree::RootedTree;

/// A binary tree with distinguished left and right children.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryTree {
    root: usize,
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl BinaryTree {
    pub fn new(root: usize, left: Vec<Option<usize>>, right: Vec<Option<usize>>) -> Result<Self> {
        let n = left.len();
        if right.len() != n {
            return Err(Error::Structure("left and right tables differ in length".into()));
        }
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            children[v].extend(left[v]);
            children[v].extend(right[v]);
        }
        RootedTree::from_children(root, children)?;
        Ok(BinaryTree { root, left, right })
    }

    /// Reads the first child as left and the second as right; a lone child
    /// is a left child.
    pub fn from_rooted(tree: &RootedTree) -> Result<Self> {
        let n = tree.len();
        let mut left = vec![None; n];
        let mut right = vec![None; n];
        for v in 0..n {
            match tree.children(v) {
                [] => {}
                [a] => left[v] = Some(*a),
                [a, b] => {
                    left[v] = Some(*a);
                    right[v] = Some(*b);
                }
                kids => return Err(Error::Structure(format!("vertex {v} has {} children", kids.len()))),
            }
        }
        Ok(BinaryTree { root: tree.root(), left, right })
    }

    pub fn to_rooted(&self) -> RootedTree {
        let children = (0..self.len())
            .map(|v| self.left[v].into_iter().chain(self.right[v]).collect())
            .collect();
        RootedTree::from_children(self.root, children).expect("valid binary tree")
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn left(&self, v: usize) -> Option<usize> {
        self.left[v]
    }

    pub fn right(&self, v: usize) -> Option<usize> {
        self.right[v]
    }

    /// Vertices with parents before children.
    fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.right[v]);
            stack.extend(self.left[v]);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        for v in self.preorder().into_iter().rev() {
            size[v] += self.left[v].map_or(0, |c| size[c]) + self.right[v].map_or(0, |c| size[c]);
        }
        size
    }

    pub fn depth(&self) -> usize {
        let mut depth = vec![0; self.len()];
        let mut best = 0;
        for v in self.preorder() {
            for c in self.left[v].into_iter().chain(self.right[v]) {
                depth[c] = depth[v] + 1;
                best = best.max(depth[c]);
            }
        }
        best
    }

    /// `Cost'(T)`: the sum over vertices of the smaller child-subtree size.
    pub fn cost_prime(&self) -> u64 {
        let size = self.sizes();
        let side = |c: Option<usize>| c.map_or(0, |c| size[c]);
        (0..self.len())
            .map(|v| side(self.left[v]).min(side(self.right[v])) as u64)
            .sum()
    }

    /// Number of internal (non-leaf) vertices.
    pub fn internal_count(&self) -> u64 {
        (0..self.len())
            .filter(|&v| self.left[v].is_some() || self.right[v].is_some())
            .count() as u64
    }

    /// `Cost(T) = sum over internal v of (min(|v.left|, |v.right|) + 1)`.
    pub fn cost(&self) -> u64 {
        self.cost_prime() + self.internal_count()
    }

    pub fn is_right_adjusted(&self) -> bool {
        let size = self.sizes();
        let side = |c: Option<usize>| c.map_or(0, |c| size[c]);
        (0..self.len()).all(|v| side(self.right[v]) <= side(self.left[v]))
    }

    /// Swaps children wherever the right subtree is larger. Cost' and depth
    /// are unchanged.
    pub fn right_adjusted(&self) -> Self {
        let size = self.sizes();
        let side = |c: Option<usize>| c.map_or(0, |c| size[c]);
        let mut t = self.clone();
        for v in 0..t.len() {
            if side(t.right[v]) > side(t.left[v]) {
                std::mem::swap(&mut t.left[v], &mut t.right[v]);
            }
        }
        t
    }

    pub fn mirrored(&self) -> Self {
        BinaryTree {
            root: self.root,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// The word of each vertex: root is empty, a left step appends `0`,
    /// a right step appends `1`. Indexed by vertex.
    pub fn words(&self) -> Vec<String> {
        let mut words = vec![String::new(); self.len()];
        for v in self.preorder() {
            if let Some(c) = self.left[v] {
                words[c] = format!("{}0", words[v]);
            }
            if let Some(c) = self.right[v] {
                words[c] = format!("{}1", words[v]);
            }
        }
        words
    }
}

/// `(Cost', Cost)` of a binary rooted tree.
pub fn tree_cost(tree: &RootedTree) -> Result<(u64, u64)> {
    let b = BinaryTree::from_rooted(tree)?;
    Ok((b.cost_prime(), b.cost()))
}

/// Preorder flags `(has_left, has_right)` of the first few vertices.
pub type Prefix = Vec<(bool, bool)>;

const FLAGS: [(bool, bool); 4] = [(false, false), (true, false), (false, true), (true, true)];

/// Calls `f` for every binary shape with `n` vertices and depth at most
/// `max_depth` whose preorder starts with `prefix`. Vertices are numbered
/// in preorder.
pub fn for_each_shape_with_prefix<F: FnMut(&BinaryTree)>(n: usize, max_depth: usize, prefix: &[(bool, bool)], mut f: F) {
    if n == 0 {
        return;
    }
    let mut g = ShapeGen {
        n,
        max_depth,
        prefix,
        tree: BinaryTree {
            root: 0,
            left: vec![None; n],
            right: vec![None; n],
        },
        open: vec![Slot { parent: None, right: false, depth: 0 }],
        placed: 0,
        f: &mut f,
    };
    g.step();
}

pub fn for_each_shape<F: FnMut(&BinaryTree)>(n: usize, max_depth: usize, f: F) {
    for_each_shape_with_prefix(n, max_depth, &[], f);
}

#[derive(Clone, Copy)]
struct Slot {
    parent: Option<usize>,
    right: bool,
    depth: usize,
}

struct ShapeGen<'a, F> {
    n: usize,
    max_depth: usize,
    prefix: &'a [(bool, bool)],
    tree: BinaryTree,
    open: Vec<Slot>,
    placed: usize,
    f: &'a mut F,
}

impl<F: FnMut(&BinaryTree)> ShapeGen<'_, F> {
    fn step(&mut self) {
        let Some(slot) = self.open.pop() else {
            if self.placed == self.n {
                (self.f)(&self.tree);
            }
            return;
        };
        let v = self.placed;
        self.placed += 1;
        match slot.parent {
            Some(p) if slot.right => self.tree.right[p] = Some(v),
            Some(p) => self.tree.left[p] = Some(v),
            None => {}
        }
        let forced = self.prefix.get(v).copied();
        for (l, r) in FLAGS {
            if forced.is_some_and(|fl| fl != (l, r)) {
                continue;
            }
            let need = usize::from(l) + usize::from(r);
            if self.placed + self.open.len() + need > self.n || (need > 0 && slot.depth == self.max_depth) {
                continue;
            }
            let child = |right| Slot { parent: Some(v), right, depth: slot.depth + 1 };
            if r {
                self.open.push(child(true));
            }
            if l {
                self.open.push(child(false));
            }
            self.step();
            self.open.truncate(self.open.len() - need);
        }
        match slot.parent {
            Some(p) if slot.right => self.tree.right[p] = None,
            Some(p) => self.tree.left[p] = None,
            None => {}
        }
        self.placed -= 1;
        self.open.push(slot);
    }
}

/// Prefixes of length two that split the shape space into parallel parts.
pub fn partition_prefixes(n: usize) -> Vec<Prefix> {
    if n <= 1 {
        return vec![Vec::new()];
    }
    let mut out = vec![vec![(false, false)]];
    for root in FLAGS.into_iter().skip(1) {
        for next in FLAGS {
            out.push(vec![root, next]);
        }
    }
    out
}

/// Catalan number `C_n`, the number of binary shapes on `n` vertices.
pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// `R(n, h)` by exhaustive enumeration of shapes.
pub fn exhaustive_min_cost(n: usize, h: usize, caps: &Caps, exec: Exec) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidSize("no vertices".into()));
    }
    caps.check_shapes(n)?;
    let parts = exec.map(partition_prefixes(n), |prefix| {
        let mut best = u64::MAX;
        for_each_shape_with_prefix(n, h, &prefix, |t| best = best.min(t.cost_prime()));
        best
    });
    let best = parts.into_iter().min().unwrap_or(u64::MAX);
    if best == u64::MAX {
        return Err(Error::Domain(format!("no binary tree on {n} vertices has depth {h}")));
    }
    Ok(best)
}

/// `R(n, h)` for all `n <= max_n` by the split recurrence
/// `R(n, h) = min_{a + b = n - 1} R(a, h - 1) + R(b, h - 1) + min(a, b)`.
/// Entries are `None` where no tree of that depth exists.
pub fn min_cost_table(max_n: usize, h: usize) -> Vec<Option<u64>> {
    // prev[k] = R(k, d - 1); R(0, .) = 0 for the empty subtree
    let mut prev: Vec<Option<u64>> = (0..=max_n).map(|k| (k <= 1).then_some(0)).collect();
    for _ in 1..=h {
        let mut cur = vec![None; max_n + 1];
        cur[0] = Some(0);
        for (k, slot) in cur.iter_mut().enumerate().skip(1) {
            *slot = (0..k)
                .filter_map(|a| {
                    let b = k - 1 - a;
                    Some(prev[a]? + prev[b]? + a.min(b) as u64)
                })
                .min();
        }
        prev = cur;
    }
    prev
}

pub fn min_cost(n: usize, h: usize) -> Result<u64> {
    min_cost_table(n, h)[n].ok_or_else(|| Error::Domain(format!("no binary tree on {n} vertices has depth {h}")))
}
