use std::f64::consts::PI;

use crofton_core::algebra::{Field, HermitianSpace};
use crofton_core::crofton::{
    anchored_pair, estimate_horosphere_crofton, estimate_m, estimate_symmetric_difference,
    projective_crofton_estimate, ratios_agree, sphere_halfspace_crofton, CroftonEstimate, McConfig,
};
use crofton_core::kernels::configs::{
    addendum_points, addendum_sums, projective_coefficients, projective_configuration,
};
use crofton_core::kernels::{
    build_distance_matrix, hypermetric_scan_with, negative_type_witness, quadratic_form_raw,
    sqrt_embed, top_direction, DistanceMatrix, Metric, Point, ScanOptions, SearchConfig,
    SearchSpace,
};
use crofton_core::spaces::{PPoint, SPoint};
use crofton_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{
    Cli, Command, CroftonKind, Expect, Global, KernelInput, MetricArg, PointInput, Reproduction,
    SeedConfig, SpaceKind,
};
use crate::input::{build_points, inline_points, read_matrix, read_points};
use crate::report::{row, ConfigEcho, Report, Verdict};
use crate::CliError;

const SIGMAS: f64 = 3.0;

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Dist(input) => dist(g, input),
        Command::CheckNegtype { input, expect } => check_negtype(g, input, *expect),
        Command::ScanHypermetric { input, expect } => scan_hypermetric(g, input, *expect),
        Command::Embed { input } => embed(g, input),
        Command::Crofton {
            kind,
            pairs,
            margin,
        } => crofton(g, *kind, pairs, *margin),
        Command::Reproduce { which } => match which {
            Reproduction::Addendum => reproduce_addendum(g),
            Reproduction::Projective => reproduce_projective(g),
        },
        Command::SearchViolations {
            space,
            size,
            trials,
            seed_config,
            jitter,
        } => search(g, *space, *size, *trials, *seed_config, *jitter),
    }
}

/// Points plus what is known about the space they came from.
struct Loaded {
    points: Vec<Point<f64>>,
    metric: Metric,
    field: Field,
}

fn load_points(g: &Global, input: &PointInput) -> Result<Loaded, CliError> {
    let rows = match &input.points {
        Some(path) => read_points(path)?,
        None if !input.point.is_empty() => inline_points(&input.point, g.field, g.dim)?,
        None => {
            return Err(CliError::Input(
                "give --points FILE or at least one --point".into(),
            ))
        }
    };
    let metric = Metric::from(input.metric);
    let points = build_points(&rows, metric)?;
    Ok(Loaded {
        points,
        metric,
        field: rows.field,
    })
}

/// Whether metric on field is known to be of negative type. `None` for a bare matrix.
fn negtype_claim(loaded: &Option<Loaded>) -> Option<bool> {
    loaded.as_ref().map(|l| {
        l.metric.claims_negative_type()
            && !(l.metric == Metric::Hyperbolic && l.field == Field::Quaternion)
    })
}

/// Real hyperbolic space, spheres and Euclidean distances embed in L1, so every hypermetric inequality holds.
fn hypermetric_claim(loaded: &Option<Loaded>) -> Option<bool> {
    loaded.as_ref().map(|l| match l.metric {
        Metric::Hyperbolic => l.field == Field::Real,
        Metric::Sphere | Metric::JordanTrace => true,
        Metric::Projective => false,
    })
}

fn load_matrix(
    g: &Global,
    input: &KernelInput,
) -> Result<(DistanceMatrix<f64>, Option<Loaded>), CliError> {
    if let Some(path) = &input.matrix {
        return Ok((read_matrix(path)?, None));
    }
    let loaded = load_points(g, &input.points)?;
    let d = build_distance_matrix(&loaded.points, loaded.metric)?;
    Ok((d, Some(loaded)))
}

fn input_params(input: &KernelInput) -> Value {
    json!({
        "metric": input.points.metric,
        "points": input.points.points,
        "point": input.points.point,
        "matrix": input.matrix,
    })
}

fn dist(g: &Global, input: &PointInput) -> Result<Report, CliError> {
    let loaded = load_points(g, input)?;
    let d = build_distance_matrix(&loaded.points, loaded.metric)?;
    let mut results = Vec::new();
    for i in 0..d.len() {
        for j in (i + 1)..d.len() {
            results.push(json!({ "i": i, "j": j, "d": d.get(i, j) }));
        }
    }
    let params = json!({ "metric": input.metric, "points": input.points, "point": input.point });
    let msg = format!("{} points, {} pairs", d.len(), results.len());
    Ok(Report::new(
        "dist",
        ConfigEcho::new(g, params),
        results,
        Verdict::info(msg),
    ))
}

/// Compare an observed outcome with the expectation, falling back to an informational verdict.
fn judge(expect: Option<Expect>, holds: bool, what: &str) -> Verdict {
    let observed = if holds {
        format!("{what} holds")
    } else {
        format!("{what} fails")
    };
    match expect {
        None => Verdict::info(observed),
        Some(e) => {
            let wanted = e == Expect::Holds;
            Verdict::check(
                holds == wanted,
                format!("{observed} as expected"),
                format!("{observed}, expected otherwise"),
            )
        }
    }
}

fn check_negtype(
    g: &Global,
    input: &KernelInput,
    expect: Option<Expect>,
) -> Result<Report, CliError> {
    let (d, loaded) = load_matrix(g, input)?;
    if d.len() < 2 {
        return Err(CliError::Input("need at least two points".into()));
    }
    let top = top_direction(&d)?;
    let witness = negative_type_witness(&d, g.tol)?;
    // Subsets of spaces that are not of negative type may still be, so only a positive claim sets a default.
    let expect = expect.or(match negtype_claim(&loaded) {
        Some(true) => Some(Expect::Holds),
        _ => None,
    });
    let results = vec![json!({
        "points": d.len(),
        "top_eigenvalue": top.eigenvalue,
        "q": top.q,
        "max_abs": d.max_abs(),
        "witness": witness.as_ref().map(|w| w.t.values().to_vec()),
    })];
    let mut params = input_params(input);
    params["expect"] = json!(expect);
    let verdict = judge(expect, witness.is_none(), "negative type");
    Ok(Report::new(
        "check-negtype",
        ConfigEcho::new(g, params),
        results,
        verdict,
    ))
}

fn scan_hypermetric(
    g: &Global,
    input: &KernelInput,
    expect: Option<Expect>,
) -> Result<Report, CliError> {
    let (d, loaded) = load_matrix(g, input)?;
    let opts = ScanOptions {
        tol: g.tol,
        ..ScanOptions::default()
    };
    let violations = hypermetric_scan_with(&d, g.bound, &opts)?;
    let expect = expect.or(match hypermetric_claim(&loaded) {
        Some(true) => Some(Expect::Holds),
        _ => None,
    });
    let results = violations.iter().map(row).collect();
    let mut params = input_params(input);
    params["expect"] = json!(expect);
    let mut verdict = judge(expect, violations.is_empty(), "hypermetric inequality");
    verdict.message = format!(
        "{} ({} violations at bound {})",
        verdict.message,
        violations.len(),
        g.bound
    );
    Ok(Report::new(
        "scan-hypermetric",
        ConfigEcho::new(g, params),
        results,
        verdict,
    ))
}

fn embed(g: &Global, input: &KernelInput) -> Result<Report, CliError> {
    let (d, _) = load_matrix(g, input)?;
    let params = input_params(input);
    let (results, verdict) = match sqrt_embed(&d) {
        Ok(e) => {
            let msg = format!(
                "rank {}, radius {:.6}, residual {:.2e}",
                e.rank, e.radius, e.max_distance_residual
            );
            (vec![row(&e)], Verdict::pass(msg))
        }
        Err(Error::NotNegativeType { eigenvalue }) => (
            vec![json!({ "eigenvalue": eigenvalue })],
            Verdict::fail(format!(
                "not of negative type: Gram eigenvalue {eigenvalue:.6e}"
            )),
        ),
        Err(e) => return Err(e.into()),
    };
    Ok(Report::new(
        "embed",
        ConfigEcho::new(g, params),
        results,
        verdict,
    ))
}

#[derive(Serialize)]
struct EstimateRow<'a> {
    d: f64,
    estimate: f64,
    stderr: f64,
    ratio: f64,
    ratio_stderr: f64,
    total_measure: f64,
    mean_count: f64,
    samples: u64,
    seed: u64,
    count0: u64,
    count1: u64,
    count2: u64,
    boundary: u64,
    flag: Option<&'a str>,
}

impl<'a> From<&'a CroftonEstimate> for EstimateRow<'a> {
    fn from(e: &'a CroftonEstimate) -> Self {
        Self {
            d: e.d,
            estimate: e.estimate,
            stderr: e.stderr,
            ratio: e.ratio,
            ratio_stderr: e.ratio_stderr(),
            total_measure: e.total_measure,
            mean_count: e.mean_count,
            samples: e.samples,
            seed: e.seed,
            count0: e.histogram[0],
            count1: e.histogram[1],
            count2: e.histogram[2],
            boundary: e.boundary,
            flag: e.flag.map(|f| match f {
                crofton_core::crofton::EstimateFlag::CutLocus => "cut-locus",
                crofton_core::crofton::EstimateFlag::Antipodal => "antipodal",
            }),
        }
    }
}

/// `e₀` and `cos d·e₀ + sin d·e₁` in `R^{n+1}`.
fn great_circle_pair(n: usize, d: f64) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n + 1];
    let mut y = vec![0.0; n + 1];
    x[0] = 1.0;
    y[0] = d.cos();
    y[1] = d.sin();
    (x, y)
}

fn crofton(g: &Global, kind: CroftonKind, pairs: &[f64], margin: f64) -> Result<Report, CliError> {
    if pairs.is_empty() {
        return Err(CliError::Input(
            "--pairs needs at least one distance".into(),
        ));
    }
    let real_only = matches!(
        kind,
        CroftonKind::Hyperplane
            | CroftonKind::Halfspace
            | CroftonKind::Projective
            | CroftonKind::Sphere
    );
    if real_only && g.field != Field::Real {
        return Err(CliError::Input(format!(
            "{kind:?} estimates need --field r"
        )));
    }
    let max_d = match kind {
        CroftonKind::Projective => PI / 2.0,
        CroftonKind::Sphere => PI,
        _ => f64::INFINITY,
    };
    if let Some(bad) = pairs.iter().find(|&&d| !(d > 0.0 && d <= max_d)) {
        return Err(CliError::Input(format!(
            "distance {bad} outside (0, {max_d}]"
        )));
    }
    let mut estimates = Vec::with_capacity(pairs.len());
    for (i, &d) in pairs.iter().enumerate() {
        let cfg = McConfig::new(g.samples, g.seed.wrapping_add(i as u64))
            .with_workers(g.workers)
            .with_margin(margin);
        let est = match kind {
            CroftonKind::Projective | CroftonKind::Sphere => {
                let (x, y) = great_circle_pair(g.dim, d);
                if kind == CroftonKind::Projective {
                    projective_crofton_estimate(&PPoint::new(x)?, &PPoint::new(y)?, &cfg)?
                } else {
                    sphere_halfspace_crofton(&SPoint::new(x)?, &SPoint::new(y)?, &cfg)?
                }
            }
            _ => {
                let space = HermitianSpace::new(g.field, g.dim)?;
                let (x, y) = anchored_pair::<f64>(space, d)?;
                match kind {
                    CroftonKind::Hyperplane => estimate_m(&x, &y, &cfg)?,
                    CroftonKind::Halfspace => estimate_symmetric_difference(&x, &y, &cfg)?,
                    _ => estimate_horosphere_crofton(&x, &y, &cfg)?,
                }
            }
        };
        estimates.push(est);
    }
    if let Some(path) = &g.emit_csv {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["d", "estimate", "stderr"])?;
        for e in &estimates {
            w.write_record([
                e.d.to_string(),
                e.estimate.to_string(),
                e.stderr.to_string(),
            ])?;
        }
        w.flush()?;
    }
    let agree = ratios_agree(&estimates, SIGMAS);
    let mut verdict = Verdict::check(
        agree,
        format!(
            "ratios agree within {SIGMAS}σ across {} pairs",
            estimates.len()
        ),
        format!("ratios differ by more than {SIGMAS}σ"),
    );
    if agree && matches!(kind, CroftonKind::Projective | CroftonKind::Sphere) {
        let off = estimates
            .iter()
            .find(|e| (e.estimate - e.d / PI).abs() > SIGMAS * e.stderr.max(1e-12));
        if let Some(e) = off {
            verdict = Verdict::fail(format!(
                "estimate {:.6} at d = {} is more than {SIGMAS}σ from d/π",
                e.estimate, e.d
            ));
        } else {
            verdict.message.push_str(", each within 3σ of d/π");
        }
    }
    let results = estimates
        .iter()
        .map(|e| row(EstimateRow::from(e)))
        .collect();
    let params = json!({ "kind": kind, "pairs": pairs, "margin": margin });
    Ok(Report::new(
        "crofton",
        ConfigEcho::new(g, params),
        results,
        verdict,
    ))
}

/// Published two-decimal values of the within-group and cross-group sums.
const ADDENDUM_WITHIN: f64 = 417.03;
const ADDENDUM_CROSS: f64 = 415.77;
const ADDENDUM_TOL: f64 = 0.02;

fn reproduce_addendum(g: &Global) -> Result<Report, CliError> {
    let sums = addendum_sums::<f64>()?;
    let (pts, t) = addendum_points::<f64>();
    let d = build_distance_matrix(&pts, Metric::Hyperbolic)?;
    let q = quadratic_form_raw(&d, &t)?;
    let witness = negative_type_witness(&d, g.tol)?;
    let near = |v: f64, want: f64| (v - want).abs() <= ADDENDUM_TOL;
    let results = vec![
        json!({ "quantity": "within", "value": sums.within, "expected": ADDENDUM_WITHIN, "ok": near(sums.within, ADDENDUM_WITHIN) }),
        json!({ "quantity": "cross", "value": sums.cross, "expected": ADDENDUM_CROSS, "ok": near(sums.cross, ADDENDUM_CROSS) }),
        json!({ "quantity": "difference", "value": sums.difference, "ok": sums.difference > 0.0 }),
        json!({ "quantity": "q", "value": q, "ok": q > 0.0 }),
        json!({ "quantity": "witness_q", "value": witness.as_ref().map(|w| w.q), "ok": witness.is_some() }),
    ];
    // Q sums ordered pairs, so it is twice the unordered difference.
    let consistent = (q - 2.0 * sums.difference).abs() <= 1e-9 * sums.cross;
    let all_ok = results.iter().all(|r| r["ok"] == true);
    let verdict = Verdict::check(
        all_ok && consistent,
        format!("violation confirmed: Q = {q:.6} > 0 for 24 points of H²_H"),
        format!(
            "not reproduced: within {:.4}, cross {:.4}, Q = {q:.6}",
            sums.within, sums.cross
        ),
    );
    Ok(Report::new(
        "reproduce addendum",
        ConfigEcho::new(g, json!({ "which": "addendum" })),
        results,
        verdict,
    ))
}

/// `π/k` label for the distances in the projective table.
fn pi_fraction(v: f64) -> String {
    (1..=12)
        .find(|&k| (v - PI / k as f64).abs() < 1e-12)
        .map_or_else(String::new, |k| {
            if k == 1 {
                "π".into()
            } else {
                format!("π/{k}")
            }
        })
}

fn reproduce_projective(g: &Global) -> Result<Report, CliError> {
    let labels = ["p1", "p2", "p3", "q1", "q2", "q3"];
    let pts: Vec<Point<f64>> = projective_configuration()
        .into_iter()
        .map(Point::Projective)
        .collect();
    let d = build_distance_matrix(&pts, Metric::Projective)?;
    let t = projective_coefficients::<f64>();
    let q = quadratic_form_raw(&d, &t)?;
    let mut results = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            let v = d.get(i, j);
            results.push(json!({ "pair": format!("{}-{}", labels[i], labels[j]), "d": v, "exact": pi_fraction(v) }));
        }
    }
    results.push(json!({ "pair": "Q", "d": q, "exact": pi_fraction(q) }));
    let verdict = Verdict::check(
        q > g.tol * d.max_abs() && (q - PI / 3.0).abs() < 1e-12,
        format!("violation confirmed: Q = {q:.6} = π/3 for six points of P²_R"),
        format!("expected Q = π/3, got {q:.6}"),
    );
    Ok(Report::new(
        "reproduce projective",
        ConfigEcho::new(g, json!({ "which": "projective" })),
        results,
        verdict,
    ))
}

fn search(
    g: &Global,
    space: SpaceKind,
    size: usize,
    trials: usize,
    seed_config: Option<SeedConfig>,
    jitter: f64,
) -> Result<Report, CliError> {
    let (space, field, dim, seeded, size) = match seed_config {
        Some(SeedConfig::Addendum) => {
            let hs = HermitianSpace::new(Field::Quaternion, 2)?;
            (
                SearchSpace::Hyperbolic { space: hs },
                Field::Quaternion,
                2,
                Some(addendum_points::<f64>().0),
                24,
            )
        }
        Some(SeedConfig::Projective) => {
            let pts = projective_configuration()
                .into_iter()
                .map(Point::Projective)
                .collect();
            (
                SearchSpace::Projective { n: 2 },
                Field::Real,
                2,
                Some(pts),
                6,
            )
        }
        None => {
            let s = match space {
                SpaceKind::Hyperbolic => SearchSpace::Hyperbolic {
                    space: HermitianSpace::new(g.field, g.dim)?,
                },
                SpaceKind::Projective => SearchSpace::Projective { n: g.dim },
                SpaceKind::Sphere => SearchSpace::Sphere { n: g.dim },
            };
            if space != SpaceKind::Hyperbolic && g.field != Field::Real {
                return Err(CliError::Input(format!("{space:?} search needs --field r")));
            }
            (s, g.field, g.dim, None, size)
        }
    };
    let mut cfg = SearchConfig::new(space, size, trials, g.radius, g.seed);
    cfg.seed_configuration = seeded;
    cfg.jitter = jitter;
    cfg.workers = g.workers;
    cfg.tol = g.tol;
    let out = crofton_core::kernels::violation_search(&cfg)?;
    let metric = space.metric();
    let claimed = metric.claims_negative_type()
        && !(metric == Metric::Hyperbolic && field == Field::Quaternion);
    let results = vec![json!({
        "trial": out.trial,
        "q": out.q,
        "violation": out.violation,
        "verified": out.verified,
        "trials_with_violation": out.trials_with_violation,
        "t": out.t,
    })];
    let verdict = if out.violation && !out.verified {
        Verdict::fail(format!(
            "violation at trial {} did not survive re-verification",
            out.trial
        ))
    } else if out.violation && claimed {
        Verdict::fail(format!(
            "violation Q = {:.6e} at trial {} on a space of negative type",
            out.q, out.trial
        ))
    } else if out.violation {
        Verdict::pass(format!(
            "violation found at trial {}: Q = {:.6e}, {} of {trials} trials violate",
            out.trial, out.q, out.trials_with_violation
        ))
    } else {
        Verdict::pass(format!(
            "no violation in {trials} trials; best Q = {:.6e}",
            out.q
        ))
    };
    let params = json!({
        "space": cfg.space,
        "field": field.symbol(),
        "dim": dim,
        "size": size,
        "trials": trials,
        "seed_config": seed_config,
        "jitter": jitter,
        "metric": MetricArg::from_metric(metric),
    });
    Ok(Report::new(
        "search-violations",
        ConfigEcho::new(g, params),
        results,
        verdict,
    ))
}

impl MetricArg {
    fn from_metric(m: Metric) -> Self {
        match m {
            Metric::Hyperbolic => MetricArg::Hyperbolic,
            Metric::Projective => MetricArg::Projective,
            Metric::Sphere => MetricArg::Sphere,
            Metric::JordanTrace => MetricArg::JordanTrace,
        }
    }
}
