use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use log::info;
use serde::Serialize;

use lowlight::llt::{ceil_root, Llt, LltBuilder, Regime};
use lowlight::metric::{hamiltonian_path, line_metric, load_metric, minimum_spanning_tree_rooted, LinearOrder, MetricSpace};
use lowlight::normalize::{deepen, four_extension, to_binary};
use lowlight::oracle::bounds::{evaluate_bounds, BoundKind, BoundReport};
use lowlight::oracle::enumerate::{depth_table, exhaustive_min, star_min_covering, Stat};
use lowlight::oracle::hamming::{min_hamming_cost, HammingMin};
use lowlight::oracle::shapes::{exhaustive_min_cost, min_cost};
use lowlight::oracle::{hardgraph, Caps};
use lowlight::report::{round12, BoundCheck, RunReport};
use lowlight::sllt::{build_sllt, root_distance_ratios, theta_for_epsilon};
use lowlight::tree::{covering, load, measure_with_mst, TreeMetrics};
use lowlight::verify::{run_criterion, VerifyConfig, CRITERIA, TOLERANCE};
use lowlight::{Exec, RootedTree};

use crate::{BuildArgs, Cli, Command, HardgraphArgs, MetricsArgs, Mode, NormalizeArgs, OracleArgs, OracleStat, SelftestArgs, SlltArgs, TradeoffArgs};

/// Runs one command. `Ok(false)` means a checked inequality failed.
pub fn run(cli: Cli) -> Result<bool> {
    let start = Instant::now();
    let timing = cli.timing;
    let out = match cli.command {
        Command::Build(a) => build(a),
        Command::Sllt(a) => sllt(a),
        Command::Normalize(a) => normalize(a),
        Command::Metrics(a) => metrics(a),
        Command::Oracle(a) => oracle(a),
        Command::Tradeoff(a) => return tradeoff(a),
        Command::Hardgraph(a) => hard_graph(a),
        Command::Selftest(a) => return selftest(a, timing),
    }?;
    let Output { mut report, details, dest } = out;
    if timing {
        report.timing = Some(round12(start.elapsed().as_secs_f64()));
    }
    for c in report.failures() {
        eprintln!("invariant failed: {} ({} vs {})", c.name, c.lhs, c.rhs);
    }
    emit(&report, details, dest.as_deref())?;
    Ok(report.all_hold())
}

struct Output {
    report: RunReport,
    details: Option<serde_json::Value>,
    dest: Option<std::path::PathBuf>,
}

#[derive(Serialize)]
struct FullReport<'a> {
    #[serde(flatten)]
    base: &'a RunReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    details: Option<serde_json::Value>,
}

fn emit(report: &RunReport, details: Option<serde_json::Value>, dest: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(&FullReport { base: report, details })? + "\n";
    write_or_print(dest, &text)
}

fn write_or_print(dest: Option<&Path>, text: &str) -> Result<()> {
    match dest {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_tree(dest: Option<&Path>, tree: &RootedTree) -> Result<()> {
    if let Some(p) = dest {
        fs::write(p, tree.to_text()).with_context(|| format!("writing {}", p.display()))?;
        info!("wrote tree to {}", p.display());
    }
    Ok(())
}

fn read_tree(path: &Path) -> Result<RootedTree> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    RootedTree::parse_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn metric(source: &str) -> Result<MetricSpace> {
    load_metric(source).with_context(|| format!("loading metric {source}"))
}

fn kv(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "default".into(), T::to_string)
}

/// The reference order: the identity on the line, otherwise the shortcut
/// tour from `root`.
fn reference_order(m: &MetricSpace, root: usize) -> Result<LinearOrder> {
    if m.is_line() {
        return Ok(LinearOrder::identity(m));
    }
    let mst = minimum_spanning_tree_rooted(m, root)?;
    Ok(hamiltonian_path(m, &mst, root)?)
}

fn mst_weight(m: &MetricSpace) -> Result<f64> {
    Ok(minimum_spanning_tree_rooted(m, 0)?.weight())
}

fn llt_checks(llt: &Llt, metrics: &TreeMetrics, h: usize, mst: f64) -> Vec<BoundCheck> {
    let n = llt.tree.len();
    let xi = f64::from(metrics.load.unwrap_or(0));
    let mut checks = vec![
        BoundCheck::at_most("depth <= h", metrics.depth as f64, h as f64, 0.0),
        BoundCheck::at_most("load <= construction load", xi, llt.plan.load_bound as f64, 0.0),
        BoundCheck::at_most("order weight <= 2 * mst weight", llt.order.weight(), 2.0 * mst, TOLERANCE),
    ];
    if n >= 2 {
        checks.push(BoundCheck::at_most("lightness <= 2 * load", metrics.lightness, 2.0 * xi, TOLERANCE));
    }
    match llt.plan.regime {
        Regime::Low => checks.push(BoundCheck::at_most(
            "max arity <= ceil(n^(1/h))",
            metrics.max_arity as f64,
            ceil_root(n, llt.plan.h) as f64,
            0.0,
        )),
        Regime::High | Regime::Mid => {
            checks.push(BoundCheck::at_most("max arity <= 2", metrics.max_arity as f64, 2.0, 0.0))
        }
        Regime::Path => {}
    }
    checks
}

fn build(a: BuildArgs) -> Result<Output> {
    let m = metric(&a.input)?;
    let builder = LltBuilder::new(&m, a.root)?;
    let llt = builder.build(a.h)?;
    let metrics = measure_with_mst(&llt.tree, &m, builder.mst_weight(), Some(&llt.order))?;
    let mut report = RunReport::new(
        "build",
        kv(&[("input", a.input.clone()), ("h", a.h.to_string()), ("root", opt(&a.root))]),
    );
    report.push_checks(llt_checks(&llt, &metrics, a.h, builder.mst_weight()));
    report.plan = Some(llt.plan.clone());
    let report = report.with_metrics(metrics);
    write_tree(a.out.as_deref(), &llt.tree)?;
    Ok(Output { report, details: None, dest: a.report })
}

#[derive(Serialize)]
struct SlltDetails {
    theta: f64,
    llt_metrics: TreeMetrics,
    breakpoints: Vec<usize>,
    root_distance_ratios: Vec<f64>,
}

fn sllt(a: SlltArgs) -> Result<Output> {
    let theta = match a.epsilon {
        Some(eps) => theta_for_epsilon(eps)?,
        None => a.theta,
    };
    let m = metric(&a.input)?;
    let builder = LltBuilder::new(&m, a.root)?;
    let rt = builder.root();
    let llt = builder.build(a.h)?;
    let s = build_sllt(&llt.tree, &m, rt, theta)?;
    let mst = builder.mst_weight();
    let t_metrics = lowlight::report::round_metrics(measure_with_mst(&llt.tree, &m, mst, Some(&llt.order))?);
    let s_metrics = measure_with_mst(&s.tree, &m, mst, Some(&llt.order))?;
    let ratios = root_distance_ratios(&s.tree, &m);
    let max_ratio = ratios.iter().copied().fold(1.0, f64::max);
    let ht = llt.tree.depth();

    let mut report = RunReport::new(
        "sllt",
        kv(&[
            ("input", a.input.clone()),
            ("h", a.h.to_string()),
            ("theta", theta.to_string()),
            ("root", opt(&a.root)),
        ]),
    );
    report.push_checks(llt_checks(&llt, &t_metrics, a.h, mst));
    if ht >= 1 {
        report.push_checks([BoundCheck::at_most(
            "sllt depth <= 2 * llt depth - 1",
            s_metrics.depth as f64,
            (2 * ht - 1) as f64,
            0.0,
        )]);
    }
    report.push_checks([
        BoundCheck::at_most(
            "sllt weight <= (1 + 2/theta) * llt weight",
            s_metrics.weight,
            (1.0 + 2.0 / theta) * t_metrics.weight,
            TOLERANCE,
        ),
        BoundCheck::at_most("root distance ratio <= 1 + 2 theta", max_ratio, 1.0 + 2.0 * theta, TOLERANCE),
    ]);
    report.plan = Some(llt.plan.clone());
    let report = report.with_metrics(s_metrics);
    write_tree(a.out.as_deref(), &s.tree)?;
    let details = SlltDetails {
        theta,
        llt_metrics: t_metrics,
        breakpoints: s.breakpoints.points.clone(),
        root_distance_ratios: ratios.into_iter().map(round12).collect(),
    };
    Ok(Output { report, details: Some(serde_json::to_value(details)?), dest: a.report })
}

fn normalize(a: NormalizeArgs) -> Result<Output> {
    let m = metric(&a.metric)?;
    let tree = read_tree(&a.input)?.reweighted(&m);
    if tree.len() != m.len() {
        bail!("tree has {} vertices but the metric has {}", tree.len(), m.len());
    }
    let n = tree.len();
    let lg = (n as f64).log2();
    let (h, w) = (tree.depth() as f64, tree.weight());
    let (mode, out, checks) = match a.mode {
        Mode::FourAry => {
            let t = four_extension(&tree, &m)?;
            let checks = vec![
                BoundCheck::at_most("max arity <= 4", t.max_arity() as f64, 4.0, 0.0),
                BoundCheck::at_most("root children <= 2", t.children(t.root()).len() as f64, 2.0, 0.0),
                BoundCheck::at_most("input depth <= depth", h, t.depth() as f64, 0.0),
                BoundCheck::at_most("depth <= input depth + log2 n", t.depth() as f64, h + lg, TOLERANCE),
                BoundCheck::at_most("weight <= 3 * input weight", t.weight(), 3.0 * w, TOLERANCE),
            ];
            ("4ary", t, checks)
        }
        Mode::Binary => {
            let t = to_binary(&tree, &m)?;
            let mut checks = vec![
                BoundCheck::at_most("max arity <= 2", t.max_arity() as f64, 2.0, 0.0),
                BoundCheck::at_most("input depth <= depth", h, t.depth() as f64, 0.0),
                BoundCheck::at_most("depth <= 4 * (input depth + log2 n)", t.depth() as f64, 4.0 * (h + lg), TOLERANCE),
                BoundCheck::at_most("weight <= 6 * input weight", t.weight(), 6.0 * w, TOLERANCE),
            ];
            if h >= lg {
                checks.push(BoundCheck::at_most("depth <= 8 * input depth", t.depth() as f64, 8.0 * h, 0.0));
            }
            ("binary", t, checks)
        }
        Mode::Deepen => {
            if !m.is_line() {
                bail!("deepen works on trees of the line metric");
            }
            let t = deepen(&tree)?;
            let checks = vec![
                BoundCheck::exact("depth = input depth + 1", t.depth() as f64, h + 1.0, t.depth() as f64 == h + 1.0),
                BoundCheck::at_most(
                    "covering <= input covering",
                    f64::from(covering(&t).max),
                    f64::from(covering(&tree).max),
                    0.0,
                ),
            ];
            ("deepen", t, checks)
        }
    };
    let order = reference_order(&m, out.root())?;
    let metrics = measure_with_mst(&out, &m, mst_weight(&m)?, Some(&order))?;
    let input_metrics = lowlight::report::round_metrics(measure_with_mst(&tree, &m, metrics.mst_weight, Some(&order))?);
    let mut report = RunReport::new(
        "normalize",
        kv(&[
            ("input", a.input.display().to_string()),
            ("metric", a.metric.clone()),
            ("mode", mode.to_string()),
        ]),
    );
    report.push_checks(checks);
    let report = report.with_metrics(metrics);
    write_tree(a.out.as_deref(), &out)?;
    Ok(Output {
        report,
        details: Some(serde_json::json!({ "input_metrics": input_metrics })),
        dest: a.report,
    })
}

fn metrics(a: MetricsArgs) -> Result<Output> {
    let m = metric(&a.metric)?;
    let tree = read_tree(&a.input)?.reweighted(&m);
    if tree.len() != m.len() {
        bail!("tree has {} vertices but the metric has {}", tree.len(), m.len());
    }
    let order = reference_order(&m, tree.root())?;
    let metrics = measure_with_mst(&tree, &m, mst_weight(&m)?, Some(&order))?;
    let mut report = RunReport::new(
        "metrics",
        kv(&[("input", a.input.display().to_string()), ("metric", a.metric.clone())]),
    );
    let mut details = None;
    if m.is_line() {
        let cov = covering(&tree);
        let rhs = cov.total as f64 + tree.len() as f64 - 1.0;
        report.push_checks([BoundCheck::exact(
            "weight = total covering + n - 1",
            tree.weight(),
            rhs,
            tree.line_weight() as f64 == rhs,
        )]);
        details = Some(serde_json::json!({ "covering_per_vertex": cov.per_vertex }));
    }
    Ok(Output { report: report.with_metrics(metrics), details, dest: a.report })
}

#[derive(Serialize)]
struct OracleDetails {
    stat: &'static str,
    value: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    hamming: Option<HammingMin>,
    bounds: Vec<BoundReport>,
}

fn bound_name(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::CostLogFloor => "cost >= (2/3) n floor(log2(n)/8)",
        BoundKind::CostBinomial => "cost > (2/3) n (f(h) - 2)",
        BoundKind::WorkCovering => "covering > h n^(1/h) / 20",
        BoundKind::Degree => "covering >= (forced degree - 2) / 2",
    }
}

fn oracle(a: OracleArgs) -> Result<Output> {
    let mut caps = Caps::default();
    let exec = Exec::default();
    let (n, h) = (a.n, a.h);
    let (stat, value, hamming) = match a.stat {
        OracleStat::Weight | OracleStat::Covering => {
            if let Some(c) = a.cap {
                caps.line = c;
            }
            let (name, stat) = match a.stat {
                OracleStat::Weight => ("weight", Stat::Weight),
                _ => ("covering", Stat::Covering),
            };
            (name, exhaustive_min(n, h, stat, &caps, exec)?, None)
        }
        OracleStat::Cost => {
            if let Some(c) = a.cap {
                caps.shapes = c;
            }
            ("cost", exhaustive_min_cost(n, h, &caps, exec)?, None)
        }
        OracleStat::Hamming => {
            let hm = min_hamming_cost(n as u64, h as u64)?;
            ("hamming", hm.value, Some(hm))
        }
    };
    let covering_value = match a.stat {
        OracleStat::Covering => Some(value),
        _ if h == 1 => Some(u64::from(star_min_covering(n))),
        _ => None,
    };
    let cost_value = match a.stat {
        OracleStat::Cost => Some(value),
        _ if n <= 256 => min_cost(n, h).ok(),
        _ => None,
    };
    let bounds: Vec<BoundReport> = evaluate_bounds(n, h, covering_value, cost_value)?
        .into_iter()
        .map(|mut b| {
            b.analytic_bound = round12(b.analytic_bound);
            b
        })
        .collect();
    let mut report = RunReport::new(
        "oracle",
        kv(&[("n", n.to_string()), ("h", h.to_string()), ("stat", stat.to_string())]),
    );
    report.push_checks(
        bounds
            .iter()
            .filter(|b| b.applicable && !b.vacuous)
            .filter_map(|b| {
                let holds = b.holds()?;
                Some(BoundCheck::exact(bound_name(b.bound_kind), b.analytic_bound, b.exhaustive_value? as f64, holds))
            }),
    );
    let details = OracleDetails { stat, value, hamming, bounds };
    Ok(Output { report, details: Some(serde_json::to_value(details)?), dest: a.report })
}

fn tradeoff(a: TradeoffArgs) -> Result<bool> {
    let n = a.n;
    if n < 2 {
        bail!("tradeoff needs n >= 2");
    }
    let mut caps = Caps::default();
    if let Some(c) = a.cap {
        caps.line = c;
    }
    let m = line_metric(n)?;
    let builder = LltBuilder::new(&m, None)?;
    let table = if n <= caps.line { Some(depth_table(n, None, &caps, Exec::default())?) } else { None };
    let mut csv = String::from("h,regime,load_bound,load,covering,lower_bound,lower_bound_kind,exhaustive_covering\n");
    let mut ok = true;
    for h in 1..n {
        let llt = builder.build(h)?;
        let xi = load(&llt.tree, &llt.order)?.xi;
        let cov = covering(&llt.tree).max;
        let exhaustive = table
            .as_ref()
            .and_then(|t| t.min_up_to(h, Stat::Covering))
            .or_else(|| (h == 1).then(|| u64::from(star_min_covering(n))));
        let best = evaluate_bounds(n, h, exhaustive, None)?
            .into_iter()
            .filter(|b| matches!(b.bound_kind, BoundKind::WorkCovering | BoundKind::Degree))
            .filter(|b| b.applicable && !b.vacuous)
            .max_by(|x, y| x.analytic_bound.total_cmp(&y.analytic_bound));
        let (lb, kind) = match &best {
            Some(b) => (lowlight::report::fmt_num(b.analytic_bound), serde_json::to_value(b.bound_kind)?.as_str().unwrap_or("").to_string()),
            None => (String::new(), String::new()),
        };
        if let Some(e) = exhaustive {
            if e > u64::from(cov) || best.as_ref().and_then(|b| b.holds()) == Some(false) {
                eprintln!("invariant failed at h = {h}: exhaustive {e}, construction {cov}, bound {lb}");
                ok = false;
            }
        }
        let regime = serde_json::to_value(llt.plan.regime)?;
        let _ = writeln!(
            csv,
            "{h},{},{},{xi},{cov},{lb},{kind},{}",
            regime.as_str().unwrap_or(""),
            llt.plan.load_bound,
            exhaustive.map_or_else(String::new, |e| e.to_string())
        );
    }
    write_or_print(a.out.as_deref(), &csv)?;
    Ok(ok)
}

fn hard_graph(a: HardgraphArgs) -> Result<Output> {
    let s = hardgraph::scan(a.n, a.w, Exec::default())?;
    let mut report = RunReport::new("hardgraph", kv(&[("n", a.n.to_string()), ("W", a.w.to_string())]));
    report.push_checks([
        BoundCheck::exact(
            "mst weight = n - 2 + W",
            s.mst_weight as f64,
            (a.n - 2) as f64 + a.w as f64,
            s.mst_weight == (a.n as u64 - 2) + a.w,
        ),
        BoundCheck::at_most(
            "n - 2 <= hop diameter with one hub edge",
            (a.n - 2) as f64,
            s.min_hop_diameter_one_hub_edge as f64,
            0.0,
        ),
    ]);
    let mut s = s;
    s.min_product_value = round12(s.min_product_value);
    Ok(Output { report, details: Some(serde_json::to_value(s)?), dest: a.report })
}

#[derive(Serialize)]
struct SelftestEntry {
    id: u8,
    name: &'static str,
    passed: bool,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_secs: Option<f64>,
}

fn selftest(a: SelftestArgs, timing: bool) -> Result<bool> {
    let cfg = VerifyConfig {
        seed: a.seed,
        exec: if a.sequential { Exec::Sequential } else { Exec::default() },
        caps: Caps::from_env()?,
    };
    let ids: Vec<u8> = if a.only.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { a.only.clone() };
    let mut entries = Vec::new();
    for id in ids {
        let Some(o) = run_criterion(id, &cfg) else {
            bail!("no criterion {id}; valid ids are 1..={}", CRITERIA.len());
        };
        eprintln!("{}", o.line());
        entries.push(SelftestEntry {
            id: o.id,
            name: o.name,
            passed: o.passed(),
            detail: o.detail.clone(),
            elapsed_secs: timing.then(|| round12(o.elapsed_secs)),
        });
    }
    let all = entries.iter().all(|e| e.passed);
    let mut report = RunReport::new("selftest", kv(&[("seed", a.seed.to_string())]));
    report.push_checks(
        entries
            .iter()
            .map(|e| BoundCheck::exact(format!("criterion {}: {}", e.id, e.name), 0.0, 0.0, e.passed)),
    );
    let details = serde_json::to_value(&entries)?;
    if let Some(p) = a.report.as_deref() {
        emit(&report, Some(details), Some(p))?;
    }
    Ok(all)
}
