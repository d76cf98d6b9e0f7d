//! The path-plus-star graph: a path `v_1..v_{n-1}` of unit edges and a hub
//! `z` joined to every path vertex by an edge of weight `W`.
//!
//! A spanning tree either keeps most of the path (hop-diameter about `n`)
//! or pays `W` several times (lightness about the number of hub edges),
//! so lightness times hop-diameter grows linearly.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Exec;

/// Largest graph the spanning-tree scan accepts.
pub const SCAN_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardGraph {
    pub n: usize,
    pub w: u64,
    /// `(a, b, weight)`; vertices `0..n-1` form the path, `n - 1` is the hub.
    pub edges: Vec<(usize, usize, u64)>,
}

pub fn hard_graph(n: usize, w: u64) -> Result<HardGraph> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("the graph needs n >= 3, got {n}")));
    }
    let hub = n - 1;
    let mut edges: Vec<(usize, usize, u64)> = (0..n - 2).map(|i| (i, i + 1, 1)).collect();
    edges.extend((0..n - 1).map(|i| (i, hub, w)));
    Ok(HardGraph { n, w, edges })
}

impl HardGraph {
    /// The path plus the cheapest hub edge.
    pub fn mst_weight(&self) -> u64 {
        (self.n - 2) as u64 + self.w
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardGraphScan {
    pub n: usize,
    pub w: u64,
    pub mst_weight: u64,
    pub spanning_trees: u64,
    /// Minimum of `hop_diameter * weight / mst_weight`, as `(num, den)`.
    pub min_product: (u64, u64),
    pub min_product_value: f64,
    /// Hop-diameter and weight of a minimizing tree.
    pub argmin: (usize, u64),
    /// Smallest hop-diameter among trees using exactly one hub edge.
    pub min_hop_diameter_one_hub_edge: usize,
}

#[derive(Clone)]
struct Partial {
    trees: u64,
    best: Option<(Ratio<u64>, usize, u64)>,
    one_hub: usize,
}

impl Partial {
    fn merge(mut self, o: Partial) -> Partial {
        self.trees += o.trees;
        self.one_hub = self.one_hub.min(o.one_hub);
        self.best = match (self.best, o.best) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, None) => a,
            (None, b) => b,
        };
        self
    }
}

/// Scans every spanning tree (every acyclic `(n-1)`-subset of edges).
pub fn scan(n: usize, w: u64, exec: Exec) -> Result<HardGraphScan> {
    if n > SCAN_CAP {
        return Err(Error::Resource(format!("spanning-tree scan capped at n = {SCAN_CAP}")));
    }
    let g = hard_graph(n, w)?;
    let m = g.edges.len();
    let mst = g.mst_weight();
    let empty = Partial { trees: 0, best: None, one_hub: usize::MAX };
    let firsts: Vec<usize> = (0..m).collect();
    let total = exec.map_reduce(
        firsts,
        empty.clone(),
        |first| {
            let mut acc = empty.clone();
            let mut chosen = vec![first];
            extend(&g, first + 1, &mut chosen, &mut |set| {
                let Some((diam, weight, hubs)) = evaluate(&g, set) else { return };
                acc.trees += 1;
                let prod = Ratio::new(diam as u64 * weight, mst);
                if acc.best.as_ref().is_none_or(|b| prod < b.0) {
                    acc.best = Some((prod, diam, weight));
                }
                if hubs == 1 {
                    acc.one_hub = acc.one_hub.min(diam);
                }
            });
            acc
        },
        Partial::merge,
    );
    let (prod, diam, weight) = total.best.expect("the graph is connected");
    Ok(HardGraphScan {
        n,
        w,
        mst_weight: mst,
        spanning_trees: total.trees,
        min_product: (*prod.numer(), *prod.denom()),
        min_product_value: *prod.numer() as f64 / *prod.denom() as f64,
        argmin: (diam, weight),
        min_hop_diameter_one_hub_edge: total.one_hub,
    })
}

fn extend(g: &HardGraph, from: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if chosen.len() == g.n - 1 {
        visit(chosen);
        return;
    }
    let need = g.n - 1 - chosen.len();
    for e in from..=g.edges.len().saturating_sub(need) {
        chosen.push(e);
        extend(g, e + 1, chosen, visit);
        chosen.pop();
    }
}

/// `(hop diameter, weight, hub edges)` if `set` is a spanning tree.
fn evaluate(g: &HardGraph, set: &[usize]) -> Option<(usize, u64, usize)> {
    let n = g.n;
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut adj = vec![Vec::new(); n];
    let mut weight = 0;
    let mut hubs = 0;
    for &e in set {
        let (a, b, w) = g.edges[e];
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra == rb {
            return None;
        }
        uf[ra] = rb;
        adj[a].push(b);
        adj[b].push(a);
        weight += w;
        hubs += usize::from(b == n - 1);
    }
    let (far, _) = bfs_far(&adj, 0);
    let (_, diam) = bfs_far(&adj, far);
    Some((diam, weight, hubs))
}

fn bfs_far(adj: &[Vec<usize>], s: usize) -> (usize, usize) {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    let mut last = (s, 0);
    while let Some(v) = q.pop_front() {
        last = (v, dist[v]);
        for &u in &adj[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
        }
    }
    last
}
