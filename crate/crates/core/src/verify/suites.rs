use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::conjugacy::ConjugacyPair;
use super::corpus::{Cell, Corpus};
use super::report::{Status, VerificationReport, Witness};
use crate::combinatorics::{
    count_candidates, max_separated, sandwich_check, solve, Bounds, CandidateGraph,
    OrbitDistanceMatrix, SandwichStatus, SeparationResult, SolverConfig, Want,
};
use crate::eps::Dyadic;
use crate::error::{Error, Result};
use crate::estimation::{estimate, with_pool, Estimate, EstimationGrid, Trend, DEFAULT_TAU};
use crate::systems::{resolve, InvariantSubset, MetricPair, Point, ShiftSft, SystemModel};

/// Candidate sets above this size are not counted by the exact suites.
pub const MAX_EXACT_CANDIDATES: usize = 1 << 16;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub corpus: Corpus,
    /// Exponents for the power suite; `m = 1` checks equality.
    pub m_values: Vec<usize>,
    pub tau: f64,
    pub solver: SolverConfig,
    pub threads: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            corpus: Corpus::default(),
            m_values: vec![1, 2],
            tau: DEFAULT_TAU,
            solver: SolverConfig::default(),
            threads: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Sandwich,
    Power,
    Product,
    Subsystem,
    Metric,
    Conjugacy,
    Dimension,
    SCurve,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Sandwich,
        Suite::Power,
        Suite::Product,
        Suite::Subsystem,
        Suite::Metric,
        Suite::Conjugacy,
        Suite::Dimension,
        Suite::SCurve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sandwich => "sandwich",
            Suite::Power => "power",
            Suite::Product => "product",
            Suite::Subsystem => "subsystem",
            Suite::Metric => "metric",
            Suite::Conjugacy => "conjugacy",
            Suite::Dimension => "dimension",
            Suite::SCurve => "s-curve",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s || (s == "s_curve" && *suite == Suite::SCurve))
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::config(format!(
                    "unknown suite {s:?}; expected one of {} or all",
                    names.join(", ")
                ))
            })
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<VerificationReport> {
    with_pool(cfg.threads, || match suite {
        Suite::Sandwich => sandwich(cfg),
        Suite::Power => power(cfg),
        Suite::Product => product(cfg),
        Suite::Subsystem => subsystem(cfg),
        Suite::Metric => metric(cfg),
        Suite::Conjugacy => conjugacy(cfg),
        Suite::Dimension => dimension(cfg),
        Suite::SCurve => s_curve(cfg),
    })
}

pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    Suite::ALL.iter().map(|&s| run_suite(s, cfg)).collect()
}

fn preimages(sys: &SystemModel, x: &Point, k: usize) -> Result<Option<Vec<Point>>> {
    if sys.preimage_count_bound(x, k) > MAX_EXACT_CANDIDATES as u128 {
        return Ok(None);
    }
    sys.preimage_set(x, k).map(Some)
}

// `None` when the count needs more comparisons than the solver allows
fn separated(
    sys: &SystemModel,
    pts: &[Point],
    n: usize,
    eps: Dyadic,
    cfg: &SolverConfig,
) -> Result<Option<Bounds>> {
    match count_candidates(sys, pts, n, eps, Want::Separated, cfg) {
        Ok(res) => Ok(res.r),
        Err(Error::TooDense { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn separation_graph(
    sys: &SystemModel,
    pts: &[Point],
    n: usize,
    eps: Dyadic,
    cfg: &SolverConfig,
) -> Result<Option<CandidateGraph>> {
    match CandidateGraph::build_within(sys, pts, n, eps, cfg.max_pairs) {
        Ok(g) => Ok(Some(g)),
        Err(Error::TooDense { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

// Greedy and clique-cover bounds first; the budgeted search runs only on a
// side whose bounds leave the relation open.
fn staged(
    lhs: Option<(&CandidateGraph, usize)>,
    rhs: Option<(&CandidateGraph, usize)>,
    eps: Dyadic,
    rel: Rel,
    cfg: &SolverConfig,
) -> (Option<Bounds>, Option<Bounds>) {
    let quick = SolverConfig { budget: 0, ..*cfg };
    let run = |side: Option<(&CandidateGraph, usize)>, c: &SolverConfig| {
        side.and_then(|(g, n)| solve(g, n, eps, Want::Separated, c).r)
    };
    let (a, b) = (run(lhs, &quick), run(rhs, &quick));
    if decide(a, b, rel) != Status::Inconclusive {
        return (a, b);
    }
    let refine = |side, cur: Option<Bounds>| {
        if cur.is_some_and(|x| x.exact) {
            cur
        } else {
            run(side, cfg)
        }
    };
    (refine(lhs, a), refine(rhs, b))
}

fn both(
    sys: &SystemModel,
    pts: &[Point],
    n: usize,
    eps: Dyadic,
    cfg: &SolverConfig,
) -> Result<SeparationResult> {
    count_candidates(sys, pts, n, eps, Want::Both, cfg)
}

fn witness(cell: &Cell) -> Witness {
    Witness::cell(&cell.system, &cell.x.to_string(), cell.n, cell.k, cell.eps)
}

fn too_large(report: &mut VerificationReport, relation: &str, cell: &Cell) {
    let w = witness(cell).value("candidate_cap", MAX_EXACT_CANDIDATES as f64);
    report.record(relation, Status::Inconclusive, w);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Le,
    Eq,
}

/// Decides `lhs ≤ rhs` or `lhs = rhs` from certified intervals: `Pass` when
/// the intervals prove it, `Fail` when they refute it.
fn decide(lhs: Option<Bounds>, rhs: Option<Bounds>, rel: Rel) -> Status {
    let (Some(a), Some(b)) = (lhs, rhs) else {
        return Status::Inconclusive;
    };
    let disjoint = a.upper < b.lower || b.upper < a.lower;
    match rel {
        Rel::Le if a.upper <= b.lower => Status::Pass,
        Rel::Le if a.lower > b.upper => Status::Fail,
        Rel::Eq if a.exact && b.exact && a.lower == b.lower => Status::Pass,
        Rel::Eq if disjoint => Status::Fail,
        _ => Status::Inconclusive,
    }
}

fn with_bounds(w: Witness, name: &str, b: Option<Bounds>) -> Witness {
    match b {
        Some(b) if b.exact => w.value(name, b.lower as f64),
        Some(b) => w
            .value(&format!("{name}_lower"), b.lower as f64)
            .value(&format!("{name}_upper"), b.upper as f64),
        None => w.value(name, f64::NAN),
    }
}

fn compare(
    report: &mut VerificationReport,
    relation: &str,
    lhs: Option<Bounds>,
    rhs: Option<Bounds>,
    rel: Rel,
    w: Witness,
) {
    let w = with_bounds(with_bounds(w, "lhs", lhs), "rhs", rhs);
    report.record(relation, decide(lhs, rhs, rel), w);
}

fn mul(a: Option<Bounds>, b: Option<Bounds>) -> Option<Bounds> {
    let (a, b) = (a?, b?);
    Some(Bounds {
        lower: a.lower * b.lower,
        upper: a.upper * b.upper,
        exact: a.exact && b.exact,
    })
}

// Runs `f` on every cell of every corpus system in parallel, merging the
// per-cell reports in corpus order.
fn over_cells<F>(
    cfg: &VerifyConfig,
    suite: &str,
    systems: &[(String, SystemModel)],
    f: F,
) -> Result<VerificationReport>
where
    F: Fn(&SystemModel, &Cell, &mut VerificationReport) -> Result<()> + Sync,
{
    let cells: Vec<(usize, Cell)> = systems
        .iter()
        .enumerate()
        .flat_map(|(i, (id, sys))| {
            cfg.corpus
                .cells_for(id, sys)
                .into_iter()
                .map(move |c| (i, c))
        })
        .collect();
    let parts: Vec<VerificationReport> = cells
        .par_iter()
        .map(|(i, cell)| {
            let mut part = VerificationReport::new(suite, cfg.corpus.version);
            f(&systems[*i].1, cell, &mut part)?;
            Ok(part)
        })
        .collect::<Result<_>>()?;
    let mut report = VerificationReport::new(suite, cfg.corpus.version);
    for p in parts {
        report.merge(p);
    }
    Ok(report)
}

fn sandwich(cfg: &VerifyConfig) -> Result<VerificationReport> {
    const REL: &str = "s(n,eps) <= r(n,eps) <= s(n,eps/2)";
    let systems = cfg.corpus.models()?;
    over_cells(cfg, "sandwich", &systems, |sys, cell, report| {
        let Some(pts) = preimages(sys, &cell.x, cell.k)? else {
            too_large(report, REL, cell);
            return Ok(());
        };
        let at = both(sys, &pts, cell.n, cell.eps, &cfg.solver)?;
        let half = count_candidates(
            sys,
            &pts,
            cell.n,
            cell.eps.half(),
            Want::Spanning,
            &cfg.solver,
        )?;
        let opt = |v: Option<u64>| v.map_or(f64::NAN, |v| v as f64);
        let w = witness(cell)
            .value("s", opt(at.s_exact()))
            .value("r", opt(at.r_exact()))
            .value("s_half", opt(half.s_exact()));
        let status = match sandwich_check(&at, &half) {
            SandwichStatus::Holds => Status::Pass,
            SandwichStatus::Violated => Status::Fail,
            SandwichStatus::Inconclusive => Status::Inconclusive,
        };
        report.record(REL, status, w);
        Ok(())
    })
}

fn power(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let systems = cfg.corpus.models()?;
    let mut report = VerificationReport::new("power", cfg.corpus.version);
    for &m in &cfg.m_values {
        let rel = if m == 1 {
            "r(n,eps,T^-k x,T^1) = r(n,eps,T^-k x,T)".to_string()
        } else {
            format!("r(n,eps,(T^{m})^-k x,T^{m}) <= r({m}n,eps,T^-{m}k x,T)")
        };
        let part = over_cells(cfg, "power", &systems, |sys, cell, report| {
            let pow = SystemModel::power(sys.clone(), m)?;
            let Some(pts) = preimages(&pow, &cell.x, cell.k)? else {
                too_large(report, &rel, cell);
                return Ok(());
            };
            let g_pow = separation_graph(&pow, &pts, cell.n, cell.eps, &cfg.solver)?;
            let g_base = separation_graph(sys, &pts, m * cell.n, cell.eps, &cfg.solver)?;
            let r = if m == 1 { Rel::Eq } else { Rel::Le };
            let (lhs, rhs) = staged(
                g_pow.as_ref().map(|g| (g, cell.n)),
                g_base.as_ref().map(|g| (g, m * cell.n)),
                cell.eps,
                r,
                &cfg.solver,
            );
            compare(
                report,
                &rel,
                lhs,
                rhs,
                r,
                witness(cell).value("m", m as f64),
            );
            Ok(())
        })?;
        report.merge(part);
    }
    Ok(report)
}

const PRODUCTS: [&str; 5] = [
    "shift:2*shift:2",
    "shift:2*point",
    "golden-mean*point",
    "rotation-finite*identity8",
    "golden-mean*contraction-half",
];

fn product(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("product", cfg.corpus.version);

    // the worked instance: n = k = 3, eps = 1/2 on the full 2-shift squared
    let sigma = resolve("shift:2")?;
    let sq = SystemModel::product(sigma.clone(), sigma.clone());
    let half = Dyadic::inverse_power_of_two(1);
    let x = sigma.default_samples()[0].clone();
    let pts = sigma.preimage_set(&x, 3)?;
    let r1 = separated(&sigma, &pts, 3, half, &cfg.solver)?;
    let pair = Point::pair(x.clone(), x.clone());
    let r12 = separated(&sq, &sq.preimage_set(&pair, 3)?, 3, half, &cfg.solver)?;
    let w = Witness::cell("shift:2*shift:2", &pair.to_string(), 3, 3, half);
    compare(
        &mut report,
        "r_product = 64",
        r12,
        Some(Bounds::exact(64)),
        Rel::Eq,
        w.clone(),
    );
    compare(
        &mut report,
        "r_product = r1 * r2",
        r12,
        mul(r1, r1),
        Rel::Eq,
        w,
    );

    let mut systems: Vec<(String, SystemModel)> = PRODUCTS
        .iter()
        .map(|s| Ok((s.to_string(), resolve(s)?)))
        .collect::<Result<_>>()?;
    for (id, sys) in cfg.corpus.models()? {
        if matches!(sys, SystemModel::Product(..)) && !PRODUCTS.contains(&id.as_str()) {
            systems.push((id, sys));
        }
    }
    let part = over_cells(cfg, "product", &systems, |sys, cell, report| {
        let SystemModel::Product(a, b) = sys else {
            return Ok(());
        };
        let (x1, x2) = cell.x.as_pair().expect("product sample");
        let Some(pts) = preimages(sys, &cell.x, cell.k)? else {
            too_large(report, "r1 * r2 <= r_product", cell);
            return Ok(());
        };
        let (p1, p2) = (a.preimage_set(x1, cell.k)?, b.preimage_set(x2, cell.k)?);
        let whole = separated(sys, &pts, cell.n, cell.eps, &cfg.solver)?;
        let f1 = both(a, &p1, cell.n, cell.eps, &cfg.solver)?;
        let f2 = both(b, &p2, cell.n, cell.eps, &cfg.solver)?;
        let lower = mul(f1.r, f2.r);
        compare(
            report,
            "r1 * r2 <= r_product",
            lower,
            whole,
            Rel::Le,
            witness(cell),
        );
        let s1 = count_candidates(a, &p1, cell.n, cell.eps.half(), Want::Spanning, &cfg.solver)?;
        let s2 = count_candidates(b, &p2, cell.n, cell.eps.half(), Want::Spanning, &cfg.solver)?;
        let upper = mul(s1.s, s2.s);
        compare(
            report,
            "r_product <= s1(eps/2) * s2(eps/2)",
            whole,
            upper,
            Rel::Le,
            witness(cell),
        );
        if matches!(**b, SystemModel::Finite(ref f) if f.len() == 1) {
            compare(
                report,
                "r(X x point) = r(X)",
                whole,
                f1.r,
                Rel::Eq,
                witness(cell),
            );
        }
        Ok(())
    })?;
    report.merge(part);
    Ok(report)
}

fn subsystem(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("subsystem", cfg.corpus.version);
    let full = SystemModel::full_shift(2)?;
    let golden_sub = SystemModel::restrict(
        full.clone(),
        InvariantSubset::SubShift {
            transitions: vec![vec![1, 1], vec![1, 0]],
        },
    )?;
    let whole_sub = SystemModel::restrict(
        full.clone(),
        InvariantSubset::SubShift {
            transitions: vec![vec![1, 1], vec![1, 1]],
        },
    )?;
    let fixed_finite = SystemModel::restrict(
        resolve("identity8")?,
        InvariantSubset::Points { indices: vec![0] },
    )?;
    let fixed_interval = SystemModel::restrict(
        resolve("contraction-half")?,
        InvariantSubset::Interval { lo: 0.0, hi: 0.0 },
    )?;
    let golden = SystemModel::golden_mean();

    // (id, subsystem, ambient, relation, equality expected)
    let cases = [
        (
            "golden-mean in shift:2",
            golden_sub.clone(),
            full.clone(),
            false,
        ),
        (
            "golden-mean restriction vs golden-mean",
            golden_sub,
            golden,
            true,
        ),
        ("shift:2 restricted to itself", whole_sub, full, true),
        (
            "fixed point in identity8",
            fixed_finite,
            resolve("identity8")?,
            false,
        ),
        (
            "fixed point in contraction-half",
            fixed_interval,
            resolve("contraction-half")?,
            false,
        ),
    ];
    for (id, sub, ambient, equal) in cases {
        let rel = if equal {
            "r(K, T|Y) = r(K, S)"
        } else {
            "r(K, T|Y) <= r(K', T)"
        };
        let systems = vec![(id.to_string(), sub)];
        let part = over_cells(cfg, "subsystem", &systems, |sys, cell, report| {
            let Some(inner) = preimages(sys, &cell.x, cell.k)? else {
                too_large(report, rel, cell);
                return Ok(());
            };
            let Some(outer) = preimages(&ambient, &cell.x, cell.k)? else {
                too_large(report, rel, cell);
                return Ok(());
            };
            let lhs = separated(sys, &inner, cell.n, cell.eps, &cfg.solver)?;
            let rhs = separated(&ambient, &outer, cell.n, cell.eps, &cfg.solver)?;
            compare(
                report,
                rel,
                lhs,
                rhs,
                if equal { Rel::Eq } else { Rel::Le },
                witness(cell),
            );
            Ok(())
        })?;
        report.merge(part);
    }
    Ok(report)
}

fn separated_under(
    pair: &MetricPair,
    pts: &[Point],
    n: usize,
    eps: Dyadic,
    cfg: &SolverConfig,
) -> Result<Option<Bounds>> {
    let sys = &pair.system;
    let d = OrbitDistanceMatrix::build_with(pts.to_vec(), n, |x, y| {
        sys.bowen_distance_with(x, y, n, |a, b| pair.alternate_distance(a, b))
    })?;
    Ok(max_separated(&d, eps, cfg).r)
}

fn metric(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("metric", cfg.corpus.version);
    let pairs = vec![
        ("shift:2", MetricPair::identity(resolve("shift:2")?)),
        ("tent", MetricPair::identity(resolve("tent")?)),
        (
            "golden-mean",
            MetricPair::scaled(resolve("golden-mean")?, 1),
        ),
        ("doubling", MetricPair::scaled(resolve("doubling")?, 2)),
        (
            "shift:2",
            MetricPair::first_disagreement(resolve("shift:2")?)?,
        ),
        (
            "shift:3",
            MetricPair::first_disagreement(resolve("shift:3")?)?,
        ),
    ];
    for (id, pair) in pairs {
        let label = format!("{id} [{}]", pair.label());
        let systems = vec![(label, pair.system.clone())];
        let identity = pair.label() == "identity";
        let part = over_cells(cfg, "metric", &systems, |sys, cell, report| {
            let Some(pts) = preimages(sys, &cell.x, cell.k)? else {
                too_large(report, "r_d2(eps) <= r_d1(delta(eps)/2)", cell);
                return Ok(());
            };
            if let Some((x, y)) = pair.find_violation(&pts, cell.eps)? {
                let w = Witness {
                    x: Some(format!("{x}, {y}")),
                    ..witness(cell)
                };
                report.record("d1 < delta(eps) implies d2 < eps", Status::Fail, w);
                return Ok(());
            }
            let alt = separated_under(&pair, &pts, cell.n, cell.eps, &cfg.solver)?;
            let delta = pair.modulus(cell.eps).half();
            let own = separated(sys, &pts, cell.n, delta, &cfg.solver)?;
            compare(
                report,
                "r_d2(eps) <= r_d1(delta(eps)/2)",
                alt,
                own,
                Rel::Le,
                witness(cell),
            );
            if identity {
                let same = separated(sys, &pts, cell.n, cell.eps, &cfg.solver)?;
                compare(
                    report,
                    "r_d2(eps) = r_d1(eps) for d2 = d1",
                    alt,
                    same,
                    Rel::Eq,
                    witness(cell),
                );
            }
            Ok(())
        })?;
        report.merge(part);
    }
    Ok(report)
}

fn conjugacy(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("conjugacy", cfg.corpus.version);
    let full2 = ShiftSft::full(2)?;
    let golden = ShiftSft::golden_mean();
    let pairs = vec![
        ConjugacyPair::identity(resolve("shift:2")?),
        ConjugacyPair::symbol_swap(&full2, 0, 1)?,
        ConjugacyPair::symbol_swap(&golden, 0, 1)?,
        ConjugacyPair::symbol_swap(&ShiftSft::full(3)?, 0, 2)?,
        ConjugacyPair::identity(resolve("rotation-finite")?),
    ];
    for pair in pairs {
        let systems = vec![(pair.label.clone(), pair.source.clone())];
        let rel = if pair.isometric {
            "r(n,eps,K,T) = r(n,eps,pi K,S)"
        } else {
            "r(n,eps,K,T) <= r(n,delta(eps),pi K,S)"
        };
        let part = over_cells(cfg, "conjugacy", &systems, |sys, cell, report| {
            let Some(pts) = preimages(sys, &cell.x, cell.k)? else {
                too_large(report, rel, cell);
                return Ok(());
            };
            if let Some(bad) = pair.find_violation(&pts)? {
                let w = Witness {
                    x: Some(bad.to_string()),
                    ..witness(cell)
                };
                report.record("pi T = S pi", Status::Fail, w);
                return Ok(());
            }
            let mut image: Vec<Point> =
                pts.iter().map(|p| pair.forward(p)).collect::<Result<_>>()?;
            let px = pair.forward(&cell.x)?;
            let mut direct = pair.target.preimage_set(&px, cell.k)?;
            let key = |p: &Point| p.to_string();
            image.sort_by_key(key);
            direct.sort_by_key(key);
            report.check("pi(T^-k x) = S^-k(pi x)", image == direct, witness(cell));
            let lhs = separated(sys, &pts, cell.n, cell.eps, &cfg.solver)?;
            let rhs = separated(
                &pair.target,
                &image,
                cell.n,
                pair.modulus(cell.eps),
                &cfg.solver,
            )?;
            let kind = if pair.isometric { Rel::Eq } else { Rel::Le };
            compare(report, rel, lhs, rhs, kind, witness(cell));
            Ok(())
        })?;
        report.merge(part);
    }
    Ok(report)
}

fn eps_pair() -> Vec<Dyadic> {
    vec![
        Dyadic::inverse_power_of_two(1),
        Dyadic::inverse_power_of_two(2),
    ]
}

fn run_estimate(
    expr: &str,
    ns: std::ops::RangeInclusive<usize>,
    cfg: &VerifyConfig,
) -> Result<Estimate> {
    let mut grid = EstimationGrid::new(ns.collect(), eps_pair());
    grid.solver = cfg.solver;
    grid.tau = cfg.tau;
    grid.spanning_proxy = false;
    estimate(&resolve(expr)?, expr, &grid)
}

fn dimension_of(est: &Estimate) -> Option<f64> {
    est.dimension.as_ref().map(|d| d.slope)
}

fn dimension(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("dimension", cfg.corpus.version);
    let tau = cfg.tau;
    let sigma = run_estimate("shift:2", 3..=10, cfg)?;
    let sigma2 = run_estimate("shift:2^2", 2..=5, cfg)?;
    let square = run_estimate("shift:2*shift:2", 2..=5, cfg)?;
    let golden = run_estimate("golden-mean", 4..=12, cfg)?;
    let ident = run_estimate("identity8", 1..=6, cfg)?;

    let mut relate = |rel: &str, a: &Estimate, b: &Estimate, holds: &dyn Fn(f64, f64) -> bool| {
        let w = Witness::at(&format!("{} vs {}", a.system_id, b.system_id));
        match (dimension_of(a), dimension_of(b)) {
            (Some(da), Some(db)) => {
                report.check(rel, holds(da, db), w.value("lhs", da).value("rhs", db))
            }
            _ => report.record(rel, Status::Inconclusive, w),
        }
    };
    relate(
        &format!("|D(T^2) - D(T)| <= {tau}"),
        &sigma2,
        &sigma,
        &|a, b| (a - b).abs() <= tau,
    );
    relate(
        &format!("|D(T x T) - D(T)| <= {tau}"),
        &square,
        &sigma,
        &|a, b| (a - b).abs() <= tau,
    );
    relate(
        &format!("D(golden-mean) <= D(shift:2) + {tau}"),
        &golden,
        &sigma,
        &|a, b| a <= b + tau,
    );
    relate("D(identity8) = 0", &ident, &ident, &|a, _| a == 0.0);
    let (h1, h2) = (sigma.entropy.value, sigma2.entropy.value);
    let w = Witness::at("shift:2^2 vs shift:2")
        .value("lhs", h2)
        .value("rhs", 2.0 * h1);
    report.check("|h(T^2) - 2 h(T)| <= 0.1", (h2 - 2.0 * h1).abs() <= 0.1, w);
    Ok(report)
}

fn s_curve(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("s-curve", cfg.corpus.version);
    let mut grid =
        EstimationGrid::new((3..=10).collect(), eps_pair()).with_s_values(vec![0.5, 1.0, 2.0]);
    grid.solver = cfg.solver;
    grid.tau = cfg.tau;
    grid.spanning_proxy = false;
    let est = estimate(&resolve("shift:2")?, "shift:2", &grid)?;
    let smallest = *grid.eps.last().expect("nonempty");
    for (s, want) in [
        (0.5, Trend::Increasing),
        (1.0, Trend::Finite),
        (2.0, Trend::Decreasing),
    ] {
        let got = est
            .curve
            .iter()
            .find(|p| p.s == s && p.eps == smallest)
            .map(|p| p.class);
        let w = Witness::at("shift:2").value("s", s);
        report.check(&format!("class at s={s} is {want}"), got == Some(want), w);
    }
    // a_n / n^s is strictly decreasing in s whenever a_n > 0 and n >= 2
    let s_grid: Vec<f64> = (1..=40).map(|i| i as f64 * 0.1).collect();
    for (e, &eps) in est.series.eps.iter().enumerate() {
        let (ns, a) = est.series.a_n(e);
        for (&n, &v) in ns.iter().zip(&a) {
            if n < 2 || v <= 0.0 {
                continue;
            }
            let vals: Vec<f64> = s_grid.iter().map(|&s| v / (n as f64).powf(s)).collect();
            let holds = vals.windows(2).all(|w| w[1] < w[0]);
            let w = Witness {
                n: Some(n),
                eps: Some(eps),
                ..Witness::at("shift:2")
            }
            .value("a_n", v);
            report.check("a_n / n^s strictly decreasing in s", holds, w);
        }
    }
    Ok(report)
}
