//! Seeded random instances for tests, benches and `selftest`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metric::MetricSpace;
use crate::tree::RootedTree;

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points uniform in the unit cube of dimension `dim`.
pub fn random_points(n: usize, dim: usize, rng: &mut impl Rng) -> MetricSpace {
    let coords = (0..n * dim).map(|_| rng.gen::<f64>()).collect();
    MetricSpace::from_points(dim, coords).expect("finite coordinates")
}

/// Shortest-path metric of a complete graph with weights uniform in
/// `[1, 10)`. Usually far from Euclidean.
pub fn random_graph_metric(n: usize, rng: &mut impl Rng) -> MetricSpace {
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.gen_range(1.0..10.0);
            d[i * n + j] = w;
            d[j * n + i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i * n + k] + d[k * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    MetricSpace::from_matrix(n, d).expect("shortest-path closure is a metric")
}

/// Uniform random labeled tree (via a Prüfer sequence) rooted at a uniform
/// vertex. Children are in ascending order; weights are zero.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> RootedTree {
    assert!(n >= 1);
    let root = rng.gen_range(0..n);
    if n <= 2 {
        let parents: Vec<Option<usize>> = (0..n).map(|v| (v != root).then_some(root)).collect();
        return RootedTree::from_parents(root, &parents).expect("valid");
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut adj = vec![Vec::new(); n];
    for (a, b) in prufer_edges(n, &code) {
        adj[a].push(b);
        adj[b].push(a);
    }
    orient(root, &adj)
}

fn prufer_edges(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let a = leaves.pop_first().unwrap();
    let b = leaves.pop_first().unwrap();
    edges.push((a, b));
    edges
}

fn orient(root: usize, adj: &[Vec<usize>]) -> RootedTree {
    let n = adj.len();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = Some(v);
                stack.push(u);
            }
        }
    }
    RootedTree::from_parents(root, &parent).expect("spanning")
}

/// Random recursive tree over a random labeling: each vertex picks its
/// parent uniformly among those inserted before it. Depth is logarithmic
/// in expectation.
pub fn random_recursive_tree(n: usize, rng: &mut impl Rng) -> RootedTree {
    random_bounded_tree(n, usize::MAX, rng)
}

/// Like [`random_recursive_tree`] but a vertex accepts at most `arity`
/// children.
pub fn random_bounded_tree(n: usize, arity: usize, rng: &mut impl Rng) -> RootedTree {
    assert!(n >= 1 && arity >= 1);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut parent = vec![None; n];
    let mut kids = vec![0usize; n];
    let mut open: Vec<usize> = vec![labels[0]];
    for &v in &labels[1..] {
        let k = rng.gen_range(0..open.len());
        let p = open[k];
        parent[v] = Some(p);
        kids[p] += 1;
        if kids[p] == arity {
            open.swap_remove(k);
        }
        open.push(v);
    }
    RootedTree::from_parents(labels[0], &parent).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = random_tree(30, &mut rng(7));
        let b = random_tree(30, &mut rng(7));
        assert_eq!(a, b);
        assert_eq!(random_points(5, 2, &mut rng(1)), random_points(5, 2, &mut rng(1)));
    }

    #[test]
    fn shapes() {
        let mut r = rng(3);
        for n in 1..40 {
            assert_eq!(random_tree(n, &mut r).len(), n);
            let t = random_bounded_tree(n, 4, &mut r);
            assert!(t.max_arity() <= 4);
        }
        let m = random_graph_metric(12, &mut r);
        assert_eq!(m.len(), 12);
    }

    #[test]
    fn prufer_of_a_star() {
        let mut e: Vec<(usize, usize)> = prufer_edges(4, &[0, 0]).into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        assert_eq!(e, vec![(0, 1), (0, 2), (0, 3)]);
    }
}
