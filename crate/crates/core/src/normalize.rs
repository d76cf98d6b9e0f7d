//! Arity reduction and the depth-raising transform for line trees.

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::tree::RootedTree;

/// Children of `v` by descending subtree size, ties to the smaller label.
fn sorted_children(tree: &RootedTree, sizes: &[usize], v: usize) -> Vec<usize> {
    let mut kids = tree.children(v).to_vec();
    kids.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
    kids
}

/// Rebuilds the tree from per-vertex "own" and "inherited" child lists;
/// each vertex lists its own children first.
fn assemble(
    tree: &RootedTree,
    own: Vec<Vec<usize>>,
    inherited: Vec<Vec<usize>>,
    metric: &MetricSpace,
) -> Result<RootedTree> {
    let children = own
        .into_iter()
        .zip(inherited)
        .map(|(mut a, b)| {
            a.extend(b);
            a
        })
        .collect();
    Ok(RootedTree::from_children(tree.root(), children)?.reweighted(metric))
}

/// Replaces every star `v -> c_1..c_k` (children by descending subtree
/// size) by the binary heap layout: `c_1, c_2` stay under `v` and
/// `c_{2i+1}, c_{2i+2}` move under `c_i`.
///
/// Every vertex ends with at most four children and the root with at most
/// two. Depth grows by at most `log2 n`; weight at most triples.
pub fn four_extension(tree: &RootedTree, metric: &MetricSpace) -> Result<RootedTree> {
    check_sizes(tree, metric)?;
    let n = tree.len();
    let sizes = tree.subtree_sizes();
    let mut own = vec![Vec::new(); n];
    let mut inherited = vec![Vec::new(); n];
    for (v, mine) in own.iter_mut().enumerate() {
        let kids = sorted_children(tree, &sizes, v);
        for (j, &c) in kids.iter().enumerate() {
            if j < 2 {
                mine.push(c);
            } else {
                inherited[kids[j / 2 - 1]].push(c);
            }
        }
    }
    assemble(tree, own, inherited, metric)
}

/// Replaces every star `v -> c_1..c_k` (`k <= 4`, stored order) by the path
/// `v, c_1, ..., c_k`. The output is binary and the root has one child.
pub fn bin_extension(tree: &RootedTree, metric: &MetricSpace) -> Result<RootedTree> {
    check_sizes(tree, metric)?;
    let arity = tree.max_arity();
    if arity > 4 {
        return Err(Error::Domain(format!("input has a vertex with {arity} children")));
    }
    let n = tree.len();
    let mut own = vec![Vec::new(); n];
    let mut inherited = vec![Vec::new(); n];
    for (v, mine) in own.iter_mut().enumerate() {
        let kids = tree.children(v);
        if let Some(&first) = kids.first() {
            mine.push(first);
        }
        for pair in kids.windows(2) {
            inherited[pair[0]].push(pair[1]);
        }
    }
    assemble(tree, own, inherited, metric)
}

/// [`bin_extension`] of [`four_extension`].
pub fn to_binary(tree: &RootedTree, metric: &MetricSpace) -> Result<RootedTree> {
    bin_extension(&four_extension(tree, metric)?, metric)
}

fn check_sizes(tree: &RootedTree, metric: &MetricSpace) -> Result<()> {
    if tree.len() != metric.len() {
        return Err(Error::InvalidSize(format!(
            "tree has {} vertices, metric has {}",
            tree.len(),
            metric.len()
        )));
    }
    Ok(())
}

/// Raises the depth of a line tree by exactly one without raising its
/// covering.
///
/// Takes `v`, the rightmost vertex at maximum depth, removes the
/// smallest-coordinate leaf off the root-to-`v` path, hangs a new leaf
/// just beside `v` on the side away from its parent and renumbers all
/// coordinates to `1..=n`.
pub fn deepen(tree: &RootedTree) -> Result<RootedTree> {
    let n = tree.len();
    if n < 2 {
        return Err(Error::Domain("a single vertex cannot be deepened".into()));
    }
    let depths = tree.depths();
    let h = *depths.iter().max().unwrap();
    if h + 1 >= n {
        return Err(Error::Domain(format!("depth {h} is already n - 1")));
    }
    let v = (0..n).rev().find(|&u| depths[u] == h).unwrap();
    let mut on_path = vec![false; n];
    let mut x = Some(v);
    while let Some(u) = x {
        on_path[u] = true;
        x = tree.parent(u);
    }
    let leaf = (0..n)
        .find(|&u| !on_path[u] && tree.children(u).is_empty())
        .expect("depth below n - 1 leaves a leaf off any root path");
    let pv = tree.parent(v).expect("deepest vertex is not the root");

    // doubled coordinates: old vertex u at 2u, the new leaf at 2v -+ 1
    let new_coord = if v < pv { 2 * v as isize - 1 } else { 2 * v as isize + 1 };
    let mut coords: Vec<isize> = (0..n).filter(|&u| u != leaf).map(|u| 2 * u as isize).collect();
    coords.push(new_coord);
    coords.sort_unstable();
    let rank = |c: isize| coords.binary_search(&c).expect("coordinate present");
    let mut parent = vec![None; n];
    for u in (0..n).filter(|&u| u != leaf && u != tree.root()) {
        let p = tree.parent(u).unwrap();
        parent[rank(2 * u as isize)] = Some(rank(2 * p as isize));
    }
    parent[rank(new_coord)] = Some(rank(2 * v as isize));
    let root = rank(2 * tree.root() as isize);
    Ok(RootedTree::from_parents(root, &parent)?.with_line_weights())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::llt::build_balanced;
    use crate::metric::line_metric;
    use crate::tree::covering;

    fn star(n: usize, center: usize) -> RootedTree {
        let parents: Vec<Option<usize>> = (0..n).map(|v| (v != center).then_some(center)).collect();
        RootedTree::from_parents(center, &parents).unwrap().with_line_weights()
    }

    #[test]
    fn full_layout_of_a_star() {
        let m = line_metric(6).unwrap();
        let t = four_extension(&star(6, 0), &m).unwrap();
        assert_eq!(t.children(0), &[1, 2]);
        assert_eq!(t.children(1), &[3, 4]);
        assert_eq!(t.children(2), &[5]);
    }

    #[test]
    fn binary_input_stays_binary() {
        let m = line_metric(12).unwrap();
        let t = build_balanced(12).unwrap();
        let f = four_extension(&t, &m).unwrap();
        assert!(f.is_binary());
        assert_eq!(f.depth(), t.depth());
        assert_eq!(f.weight(), t.weight());
        let s = RootedTree::singleton();
        assert_eq!(four_extension(&s, &line_metric(1).unwrap()).unwrap(), s);
    }

    #[test]
    fn path_layout_of_a_star() {
        let m = line_metric(4).unwrap();
        let t = bin_extension(&star(4, 0), &m).unwrap();
        assert_eq!(t.children(0), &[1]);
        assert_eq!(t.children(1), &[2]);
        assert_eq!(t.children(2), &[3]);
        assert!(bin_extension(&star(6, 0), &line_metric(6).unwrap()).is_err());
    }

    #[test]
    fn path_input_is_unchanged() {
        let m = line_metric(5).unwrap();
        let parents: Vec<Option<usize>> = (0..5).map(|v: usize| v.checked_sub(1)).collect();
        let p = RootedTree::from_parents(0, &parents).unwrap().with_line_weights();
        assert_eq!(bin_extension(&p, &m).unwrap(), p);
    }

    #[test]
    fn star_to_binary() {
        let m = line_metric(17).unwrap();
        let t = star(17, 8);
        let b = to_binary(&t, &m).unwrap();
        assert!(b.is_binary());
        assert!(b.depth() <= 8);
        assert!(b.weight() <= 6.0 * t.weight());
    }

    #[test]
    fn composite_depth_needs_a_high_tree() {
        // a star is as low as it gets; 64 leaves end up 10 hops deep
        let m = line_metric(65).unwrap();
        let b = to_binary(&star(65, 0), &m).unwrap();
        assert_eq!(b.depth(), 10);
    }

    #[test]
    fn centered_star_deepens() {
        let t = star(7, 3);
        assert_eq!(covering(&t).max, 2);
        let d = deepen(&t).unwrap();
        assert_eq!(d.root(), 2);
        assert_eq!(d.depth(), 2);
        assert_eq!(covering(&d).max, 2);
    }

    #[test]
    fn deepen_to_the_path() {
        let mut t = star(6, 2);
        for h in 2..6 {
            let next = deepen(&t).unwrap();
            assert_eq!(next.depth(), h);
            assert!(covering(&next).max <= covering(&t).max);
            t = next;
        }
        assert!(matches!(deepen(&t), Err(Error::Domain(_))));
        assert!(deepen(&RootedTree::singleton()).is_err());
    }
}
