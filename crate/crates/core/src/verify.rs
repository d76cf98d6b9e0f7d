//! The desk-scale property suite behind `selftest` and the acceptance
//! tests. Each criterion is a self-contained check with a time budget.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::llt::{build_balanced, build_high_tree, build_low_tree, ceil_root, floor_log2, HighSizeTable, LltBuilder, Regime};
use crate::metric::{hamiltonian_path, minimum_spanning_tree, MetricSpace};
use crate::normalize::{bin_extension, deepen, four_extension};
use crate::oracle::binomial::{binomial, partial_row_sum, pascal_column_sum, pascal_ratio};
use crate::oracle::bounds::{analytic_bounds, evaluate_bounds, BoundKind};
use crate::oracle::enumerate::{depth_table, for_each_line_tree, line_tree_covering, DepthTable};
use crate::oracle::hamming::{all_words, greedy_hamming_cost, hamming_weight, min_hamming_cost, vocabulary};
use crate::oracle::hardgraph;
use crate::oracle::shapes::{exhaustive_min_cost, for_each_shape_with_prefix, partition_prefixes};
use crate::oracle::Caps;
use crate::par::Exec;
use crate::random::{random_graph_metric, random_points, random_recursive_tree, random_tree, rng};
use crate::sllt::build_sllt;
use crate::tree::{covering, line_load, load, RootedTree};

/// Relative slack for floating-point inequalities.
pub const TOLERANCE: f64 = 1e-9;

fn le(a: f64, b: f64) -> bool {
    a <= b + TOLERANCE * b.abs().max(1.0)
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub exec: Exec,
    pub caps: Caps,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 2009,
            exec: Exec::default(),
            caps: Caps::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
    pub elapsed_secs: f64,
    pub limit_secs: f64,
}

impl CriterionOutcome {
    pub fn within_time(&self) -> bool {
        self.elapsed_secs <= self.limit_secs
    }

    pub fn passed(&self) -> bool {
        self.ok && self.within_time()
    }

    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {:<28} {:>8.3}s / {:>4}s  {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_secs,
            self.limit_secs,
            self.detail
        )
    }
}

type Check = fn(&VerifyConfig) -> std::result::Result<String, String>;

pub const CRITERIA: [(u8, &str, u64, Check); 14] = [
    (1, "construction exactness", 10, high_trees),
    (2, "size bound", 1, size_bound),
    (3, "balanced trees", 30, balanced_trees),
    (4, "low trees", 10, low_trees),
    (5, "end-to-end llt", 120, end_to_end),
    (6, "hamiltonian shortcut", 10, shortcut),
    (7, "covering identity", 5, covering_identity),
    (8, "sllt triple bound", 60, sllt_bounds),
    (9, "normalization bounds", 60, normalization),
    (10, "monotonicity", 300, monotonicity),
    (11, "lower-bound equivalences", 300, equivalences),
    (12, "bound sanity", 60, bound_sanity),
    (13, "hard graph", 120, hard_graph),
    (14, "binomial facts", 1, binomial_facts),
];

pub fn run_criterion(id: u8, cfg: &VerifyConfig) -> Option<CriterionOutcome> {
    let &(id, name, limit, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let result = check(cfg);
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionOutcome {
        id,
        name,
        ok,
        detail,
        elapsed_secs: elapsed.as_secs_f64(),
        limit_secs: Duration::from_secs(limit).as_secs_f64(),
    })
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0, cfg)).collect()
}

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, String> {
    Err(msg.into())
}

fn first_error(errors: Vec<Option<String>>) -> std::result::Result<(), String> {
    match errors.into_iter().flatten().next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn e2s(e: crate::Error) -> String {
    e.to_string()
}

const HIGH_GRID_LIMIT: u64 = 5000;

/// Every `(xi, h)` with `N(xi, h) <= 5000`.
fn high_grid() -> (HighSizeTable, Vec<(usize, usize)>) {
    let table = HighSizeTable::new(13, HIGH_GRID_LIMIT as usize);
    let mut pairs = Vec::new();
    for xi in 1..=13 {
        for h in xi - 1..=HIGH_GRID_LIMIT as usize {
            if table.get(xi, h).unwrap() > HIGH_GRID_LIMIT {
                break;
            }
            pairs.push((xi, h));
        }
    }
    (table, pairs)
}

fn high_trees(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    let (_, pairs) = high_grid();
    let count = pairs.len();
    let errors = cfg.exec.map(pairs, |(xi, h)| {
        let t = match build_high_tree(xi, h) {
            Ok(t) => t,
            Err(e) => return Some(format!("T({xi},{h}): {e}")),
        };
        // a single vertex has load 1 by convention
        let xi_measured = if t.len() == 1 { 1 } else { line_load(&t).xi as usize };
        (t.depth() != h || xi_measured != xi || !t.is_binary() || t.root() != 0).then(|| {
            format!("T({xi},{h}): depth {} load {xi_measured} arity {}", t.depth(), t.max_arity())
        })
    });
    first_error(errors)?;
    Ok(format!("{count} pairs"))
}

fn size_bound(_: &VerifyConfig) -> std::result::Result<String, String> {
    let (table, pairs) = high_grid();
    for &(xi, h) in &pairs {
        let size = table.get(xi, h).map_err(e2s)?;
        if binomial(h as u64, xi as u64) > size.into() {
            return fail(format!("N({xi},{h}) = {size} < C({h},{xi})"));
        }
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn balanced_trees(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    let errors = cfg.exec.map_range(4096, |i| {
        let n = i + 1;
        let t = build_balanced(n).ok()?;
        let lg = floor_log2(n);
        let xi = line_load(&t).xi as usize;
        (t.depth() > lg || xi > lg || !t.is_binary()).then(|| format!("T_{n}: depth {} load {xi}", t.depth()))
    });
    first_error(errors)?;
    Ok("n = 1..4096".into())
}

fn low_trees(_: &VerifyConfig) -> std::result::Result<String, String> {
    for d in 2..=6 {
        for h in 0..=6 {
            let t = build_low_tree(d, h).map_err(e2s)?;
            let expect: u64 = (0..=h as u32).map(|i| (d as u64).pow(i)).sum();
            let xi = line_load(&t).xi as usize;
            if t.len() as u64 != expect || t.depth() != h || xi > d * h {
                return fail(format!("T~({d},{h}): size {} depth {} load {xi}", t.len(), t.depth()));
            }
        }
    }
    Ok("d = 2..6, h = 0..6".into())
}

fn end_to_end(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    let sizes = [16usize, 64, 256];
    let seeds: Vec<(usize, u64)> = (0..50).map(|i| (sizes[i % 3], cfg.seed.wrapping_add(i as u64))).collect();
    let results = cfg.exec.map(seeds, |(n, seed)| -> std::result::Result<usize, String> {
        let mut r = rng(seed);
        let m = random_points(n, 2, &mut r);
        let root = r.gen_range(0..n);
        let builder = LltBuilder::new(&m, Some(root)).map_err(e2s)?;
        let mst = builder.mst_weight();
        for h in 1..n {
            let llt = builder.build(h).map_err(e2s)?;
            let t = &llt.tree;
            let xi = load(t, &llt.order).map_err(e2s)?.xi;
            let light = t.weight() / mst;
            let low_ok = llt.plan.regime != Regime::Low || t.max_arity() <= ceil_root(n, h);
            let ok = t.len() == n
                && t.edges().count() == n - 1
                && t.root() == root
                && t.depth() <= h
                && u64::from(xi) <= llt.plan.load_bound
                && le(light, 2.0 * f64::from(xi))
                && le(llt.order.weight(), 2.0 * mst)
                && low_ok;
            if !ok {
                return Err(format!(
                    "seed {seed} n {n} h {h}: depth {} load {xi} lightness {light} arity {}",
                    t.depth(),
                    t.max_arity()
                ));
            }
        }
        Ok(n - 1)
    });
    let mut builds = 0;
    for r in results {
        builds += r?;
    }
    Ok(format!("50 instances, {builds} trees"))
}

/// Kruskal's algorithm, used only to cross-check the dense Prim.
fn kruskal_weight(m: &MetricSpace) -> f64 {
    let n = m.len();
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((m.dist(i, j), i, j));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut total = 0.0;
    for (w, a, b) in edges {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra != rb {
            uf[ra] = rb;
            total += w;
        }
    }
    total
}

fn shortcut(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    let seeds: Vec<u64> = (0..100).map(|i| cfg.seed.wrapping_add(1000 + i)).collect();
    let errors = cfg.exec.map(seeds, |seed| {
        let mut r = rng(seed);
        let n = r.gen_range(2..=120);
        let m = match seed % 3 {
            0 => random_points(n, 2, &mut r),
            1 => random_points(n, 3, &mut r),
            _ => random_graph_metric(n, &mut r),
        };
        let mst = minimum_spanning_tree(&m).ok()?;
        let reference = kruskal_weight(&m);
        let start = r.gen_range(0..n);
        let order = hamiltonian_path(&m, &mst, start).ok()?;
        let ok = (mst.weight() - reference).abs() <= TOLERANCE * reference.max(1.0)
            && le(order.weight(), 2.0 * reference)
            && le(order.cycle_weight(&m), 2.0 * reference);
        (!ok).then(|| format!("seed {seed}: tour {} mst {reference}", order.weight()))
    });
    first_error(errors)?;
    Ok("100 metrics".into())
}

fn covering_identity(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    let mut r = rng(cfg.seed.wrapping_add(2000));
    for _ in 0..1000 {
        let n = r.gen_range(1..=50);
        let t = random_tree(n, &mut r).with_line_weights();
        // straddling pairs counted directly
        let chi: u64 = t
            .edges()
            .map(|(p, c, _)| (p.max(c) - p.min(c)).saturating_sub(1) as u64)
            .sum();
        if t.line_weight() != chi + n as u64 - 1 || covering(&t).total != chi {
            return fail(format!("n {n}: weight {} covering sum {chi}", t.line_weight()));
        }
    }
    Ok("1000 trees".into())
}

/// Root distances in the graph of `edges` by Bellman-Ford.
fn reference_distances(n: usize, root: usize, edges: &[(usize, usize, f64)]) -> Vec<f64> {
    let mut d = vec![f64::INFINITY; n];
    d[root] = 0.0;
    loop {
        let mut changed = false;
        for &(a, b, w) in edges {
            if d[a] + w < d[b] {
                d[b] = d[a] + w;
                changed = true;
            }
            if d[b] + w < d[a] {
                d[a] = d[b] + w;
                changed = true;
            }
        }
        if !changed {
            return d;
        }
    }
}

/// Weighted tree distance from `s` to every vertex.
fn tree_distances(t: &RootedTree, s: usize) -> Vec<f64> {
    let n = t.len();
    let mut adj = vec![Vec::new(); n];
    for (p, c, w) in t.edges() {
        adj[p].push((c, w));
        adj[c].push((p, w));
    }
    let mut d = vec![f64::NAN; n];
    d[s] = 0.0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &(u, w) in &adj[v] {
            if d[u].is_nan() {
                d[u] = d[v] + w;
                q.push_back(u);
            }
        }
    }
    d
}

fn sllt_bounds(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    let thetas = [0.1, 0.5, 1.0];
    let cases: Vec<(u64, f64)> = (0..50).map(|i| (cfg.seed.wrapping_add(3000 + i), thetas[i as usize % 3])).collect();
    let errors = cfg.exec.map(cases, |(seed, theta)| -> Option<String> {
        let mut r = rng(seed);
        let n = r.gen_range(2..=200);
        let m = random_points(n, 2, &mut r);
        let rt = r.gen_range(0..n);
        let h = r.gen_range(1..n);
        let res = (|| -> Result<Option<String>> {
            let t = LltBuilder::new(&m, Some(rt))?.build(h)?.tree;
            let s = build_sllt(&t, &m, rt, theta)?;
            let ht = t.depth();
            let mut edges: Vec<_> = t.edges().collect();
            edges.extend(s.breakpoints.star_edges.iter().copied());
            let reference = reference_distances(n, rt, &edges);
            let dist = s.tree.root_distances();
            let spt = (0..n).all(|v| (dist[v] - reference[v]).abs() <= TOLERANCE * reference[v].max(1.0));
            let stretch = (0..n).all(|v| le(dist[v], (1.0 + 2.0 * theta) * m.dist(rt, v)));
            let mut scan_sum = 0.0;
            for pair in s.breakpoints.points.windows(2) {
                scan_sum += tree_distances(&t, pair[0])[pair[1]];
            }
            let ok = s.tree.depth() < 2 * ht
                && le(s.tree.weight(), (1.0 + 2.0 / theta) * t.weight())
                && stretch
                && spt
                && le(scan_sum, 2.0 * t.weight())
                && s.breakpoints.points.first() == Some(&rt);
            Ok((!ok).then(|| {
                format!(
                    "seed {seed} n {n} theta {theta}: depth {} vs {ht}, weight {} vs {}, stretch {stretch}, spt {spt}",
                    s.tree.depth(),
                    s.tree.weight(),
                    t.weight()
                )
            }))
        })();
        res.unwrap_or_else(|e| Some(e.to_string()))
    });
    first_error(errors)?;
    Ok("50 instances".into())
}

fn normalization(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    let seeds: Vec<u64> = (0..100).map(|i| cfg.seed.wrapping_add(4000 + i)).collect();
    let results = cfg.exec.map(seeds, |seed| -> std::result::Result<bool, String> {
        let mut r = rng(seed);
        let n = r.gen_range(2..=200);
        let m = random_points(n, 2, &mut r);
        let t = if seed % 2 == 0 { random_tree(n, &mut r) } else { random_recursive_tree(n, &mut r) };
        let t = t.reweighted(&m);
        let lg = (n as f64).log2();
        let h = t.depth();
        let t4 = four_extension(&t, &m).map_err(e2s)?;
        let t2 = bin_extension(&t4, &m).map_err(e2s)?;
        let (h4, h2) = (t4.depth(), t2.depth());
        let high = h as f64 >= lg;
        let ok = t4.len() == n
            && t4.max_arity() <= 4
            && t4.children(t4.root()).len() <= 2
            && h <= h4
            && h4 as f64 <= h as f64 + lg + TOLERANCE
            && le(t4.weight(), 3.0 * t.weight())
            && t2.is_binary()
            && t2.children(t2.root()).len() <= 1
            && h4 <= h2
            && h2 <= 4 * h4
            && le(t2.weight(), 2.0 * t4.weight())
            && le(t2.weight(), 6.0 * t.weight())
            && h2 as f64 <= 4.0 * (h as f64 + lg) + TOLERANCE
            && h2 <= 8 * h;
        if !ok {
            return Err(format!("seed {seed} n {n}: depths {h} -> {h4} -> {h2}"));
        }
        Ok(high)
    });
    let mut high = 0;
    for r in results {
        high += usize::from(r?);
    }
    Ok(format!("100 trees ({high} with depth >= log2 n)"))
}

fn non_increasing<T: PartialOrd + Copy>(xs: &[T]) -> bool {
    xs.windows(2).all(|w| w[1] <= w[0])
}

fn tables(cfg: &VerifyConfig, arity: Option<usize>) -> std::result::Result<Vec<DepthTable>, String> {
    (1..=8.min(cfg.caps.line)).map(|n| depth_table(n, arity, &cfg.caps, cfg.exec).map_err(e2s)).collect()
}

fn monotonicity(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    for t in tables(cfg, None)? {
        let n = t.n;
        if t.total() != (n as u64).pow(n as u32 - 1) {
            return fail(format!("n {n}: enumerated {} trees", t.total()));
        }
        let chi: Vec<u32> = t.min_covering[1.min(n - 1)..].iter().map(|c| c.unwrap()).collect();
        let w: Vec<u64> = t.min_weight[1.min(n - 1)..].iter().map(|c| c.unwrap()).collect();
        if !non_increasing(&chi) || !non_increasing(&w) {
            return fail(format!("n {n}: chi {chi:?} W {w:?}"));
        }
    }
    let mut deepened = 0u64;
    for n in 2..=7usize {
        let counts = cfg.exec.map_range(n, |root| -> std::result::Result<u64, String> {
            let mut count = 0;
            let mut err = None;
            for_each_line_tree(n, root, n - 2, n, |parent, depth| {
                if err.is_some() {
                    return;
                }
                let t = RootedTree::from_parents(root, parent).expect("enumerated tree").with_line_weights();
                match deepen(&t) {
                    Ok(d) if d.depth() == depth + 1 && covering(&d).max <= line_tree_covering(parent) => count += 1,
                    Ok(d) => err = Some(format!("n {n}: deepen gave depth {} covering {}", d.depth(), covering(&d).max)),
                    Err(e) => err = Some(e.to_string()),
                }
            });
            err.map_or(Ok(count), Err)
        });
        for c in counts {
            deepened += c?;
        }
    }
    Ok(format!("n <= 8 sequences, {deepened} trees deepened"))
}

/// Full subset search for `H(n, h)`.
fn subset_hamming(n: usize, h: usize) -> u64 {
    let weights: Vec<u64> = all_words(h).iter().map(|w| hamming_weight(w)).collect();
    let m = weights.len();
    let mut best = u64::MAX;
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize == n {
            let s = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| weights[i]).sum();
            best = best.min(s);
        }
    }
    best
}

fn equivalences(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    // vocabulary of the right-adjusted tree costs exactly Cost'
    let mut shapes = 0u64;
    for n in 1..=12.min(cfg.caps.shapes) {
        let parts = cfg.exec.map(partition_prefixes(n), |prefix| {
            let mut count = 0u64;
            let mut bad = None;
            for_each_shape_with_prefix(n, n, &prefix, |t| {
                count += 1;
                let a = t.right_adjusted();
                if !a.is_right_adjusted() || a.depth() != t.depth() || vocabulary(&a).hcost() != t.cost_prime() {
                    bad.get_or_insert_with(|| format!("shape {t:?}"));
                }
            });
            (count, bad)
        });
        for (c, bad) in parts {
            if let Some(b) = bad {
                return fail(b);
            }
            shapes += c;
        }
    }
    for h in 0..=3usize {
        for n in 1..=8usize.min((1 << (h + 1)) - 1) {
            if subset_hamming(n, h) != greedy_hamming_cost(n, h).map_err(e2s)? {
                return fail(format!("greedy is not optimal at H({n},{h})"));
            }
        }
    }
    for h in 0..=6u64 {
        for n in 1..=20u64.min((1 << (h + 1)) - 1) {
            let closed = min_hamming_cost(n, h).map_err(e2s)?.value;
            if closed != greedy_hamming_cost(n as usize, h as usize).map_err(e2s)? {
                return fail(format!("closed form differs at H({n},{h})"));
            }
        }
    }
    let mut pairs = 0;
    for n in 1..=10usize {
        let mut prev_h = None;
        for h in 0..n {
            let Ok(r) = exhaustive_min_cost(n, h, &cfg.caps, cfg.exec) else { continue };
            let hm = min_hamming_cost(n as u64, h as u64).map_err(e2s)?.value;
            if hm > r || prev_h.is_some_and(|p| hm > p) {
                return fail(format!("H({n},{h}) = {hm}, R = {r}"));
            }
            prev_h = Some(hm);
            pairs += 1;
        }
    }
    for t in tables(cfg, Some(2))? {
        let n = t.n;
        for h in 1..n.max(2) {
            let (Some(bin), Ok(r)) = (t.min_up_to(h, crate::oracle::enumerate::Stat::Weight), exhaustive_min_cost(n, h, &cfg.caps, cfg.exec)) else {
                continue;
            };
            if 2 * bin < r {
                return fail(format!("Bin({n},{h}) = {bin} < R/2 = {r}/2"));
            }
        }
    }
    Ok(format!("{shapes} shapes, {pairs} (n,h) pairs for H <= R"))
}

fn bound_sanity(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    let work = analytic_bounds(32, 1, &cfg.caps, cfg.exec).map_err(e2s)?;
    let w = work.iter().find(|b| b.bound_kind == BoundKind::WorkCovering).unwrap();
    if !(w.applicable && w.exhaustive_value == Some(15) && (w.analytic_bound - 1.6).abs() < 1e-12 && w.holds() == Some(true)) {
        return fail(format!("work bound at (32,1): {w:?}"));
    }
    let mut checked = 0;
    let mut vacuous = 0;
    for t in tables(cfg, None)? {
        if !t.degree_bound_holds {
            return fail(format!("degree bound fails for some tree on {} vertices", t.n));
        }
        let n = t.n;
        for h in 1..n {
            let chi = t.min_up_to(h, crate::oracle::enumerate::Stat::Covering);
            let cost = crate::oracle::shapes::min_cost(n, h).ok();
            for b in evaluate_bounds(n, h, chi, cost).map_err(e2s)? {
                if b.applicable && !b.vacuous && b.holds() == Some(false) {
                    return fail(format!("{b:?}"));
                }
                checked += usize::from(b.applicable && !b.vacuous && b.holds().is_some());
            }
        }
    }
    for n in 1..=12usize.min(cfg.caps.shapes) {
        for h in 1..n {
            let cost = crate::oracle::shapes::min_cost(n, h).ok();
            for b in evaluate_bounds(n, h, None, cost).map_err(e2s)? {
                let cost_bound = matches!(b.bound_kind, BoundKind::CostLogFloor | BoundKind::CostBinomial);
                if cost_bound && b.applicable {
                    if !b.vacuous {
                        return fail(format!("cost bound not vacuous at ({n},{h}): {}", b.analytic_bound));
                    }
                    vacuous += 1;
                }
            }
        }
    }
    Ok(format!("{checked} non-vacuous comparisons, {vacuous} cost bounds vacuous as expected"))
}

fn hard_graph(cfg: &VerifyConfig) -> std::result::Result<String, String> {
    let mut prev: Option<(u64, u64)> = None;
    let mut series = Vec::new();
    for n in 4..=8 {
        let s = hardgraph::scan(n, 100, cfg.exec).map_err(e2s)?;
        if s.mst_weight != (n as u64 - 2) + 100 || s.min_hop_diameter_one_hub_edge < n - 2 {
            return fail(format!("n {n}: mst {} one-hub diameter {}", s.mst_weight, s.min_hop_diameter_one_hub_edge));
        }
        if let Some((a, b)) = prev {
            // a/b < c/d exactly
            let (c, d) = s.min_product;
            if u128::from(a) * u128::from(d) >= u128::from(c) * u128::from(b) {
                return fail(format!("n {n}: min product {c}/{d} does not exceed {a}/{b}"));
            }
        }
        prev = Some(s.min_product);
        series.push(format!("{}/{}", s.min_product.0, s.min_product.1));
    }
    Ok(format!("min products {}", series.join(", ")))
}

fn binomial_facts(_: &VerifyConfig) -> std::result::Result<String, String> {
    let mut count = 0;
    for n in 0..=40u64 {
        for k in 0..=n {
            let a = pascal_column_sum(n, k).map_err(e2s)?;
            let mut ok = a.holds;
            if k < n {
                ok &= pascal_ratio(n, k).map_err(e2s)?.holds;
            }
            if k <= n / 4 {
                ok &= partial_row_sum(n, k).map_err(e2s)?.holds;
            }
            if !ok {
                return fail(format!("fact fails at n = {n}, k = {k}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} (n,k) pairs"))
}
