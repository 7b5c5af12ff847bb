//! Command implementations behind the CLI. Every command produces a Report;
//! the construction commands also emit a JSON artifact that can be written
//! with --out and read back with --system.

use std::collections::BTreeSet;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{FkmError, Result};
use crate::exact::vector::{self, Q};
use crate::exact::ExactMatrix;
use crate::focal::{
    condition_a, level_point, minimal_level, mminus_point, mplus_point,
    nplus_membership, numeric, reconstruct_eplus, shape_spectrum, sigma_minus,
    sigma_plus, FocalPoint,
};
use crate::poly::FkmPolynomial;
use crate::rep::{delta, irreducible_generators, verify_rep};
use crate::report::{fmt_f64, Report, RunConfig};
use crate::sample::Sampler;
use crate::scenario::run_scenarios;
use crate::system::{
    enumerate_classes, sum_of_irreducibles, verify_system, CliffordSystem,
    SphereElement,
};
use crate::tol;

/// Where a command gets its system from.
#[derive(Clone, Debug)]
pub enum SystemSource {
    Spec { m: u32, k: usize, signs: Option<Vec<i8>> },
    File(std::path::PathBuf),
}

impl SystemSource {
    pub fn describe(&self) -> String {
        match self {
            SystemSource::Spec { m, k, signs } => {
                let signs = match signs {
                    Some(s) => s
                        .iter()
                        .map(|v| if *v == 1 { '+' } else { '-' })
                        .collect::<String>(),
                    None => "+".repeat(*k),
                };
                format!("m={m} k={k} signs={signs}")
            }
            SystemSource::File(p) => p.display().to_string(),
        }
    }
}

/// Ambient dimensions past this are no longer desk-scale; exact products
/// get slow and the dimensions grow by Bott periodicity anyway.
pub const MAX_REP_M: u32 = 16;
pub const MAX_SYSTEM_L: usize = 64;

pub fn load_system(source: &SystemSource) -> Result<CliffordSystem> {
    match source {
        SystemSource::Spec { m, k, signs } => {
            if *k == 0 {
                return Err(FkmError::Parse("k must be at least 1".into()));
            }
            if *m == 0 || *m > MAX_REP_M {
                return Err(FkmError::Parse(format!(
                    "m must be between 1 and {MAX_REP_M}, got {m}"
                )));
            }
            let signs = match signs {
                Some(s) => {
                    if s.len() != *k {
                        return Err(FkmError::Parse(format!(
                            "got {} signs for k = {k}",
                            s.len()
                        )));
                    }
                    s.clone()
                }
                None => vec![1; *k],
            };
            if (delta(*m) as usize) * *k > MAX_SYSTEM_L {
                return Err(FkmError::Parse(format!(
                    "system would act on R^{}, the cap is R^{}",
                    2 * delta(*m) as usize * *k,
                    2 * MAX_SYSTEM_L
                )));
            }
            sum_of_irreducibles(*m, &signs)
        }
        SystemSource::File(path) => read_system_artifact(path),
    }
}

#[derive(Serialize, Deserialize)]
pub struct RepArtifact {
    pub m: u32,
    pub dim: usize,
    pub generators: Vec<ExactMatrix>,
}

#[derive(Serialize, Deserialize)]
pub struct SystemArtifact {
    pub m: u32,
    pub l: usize,
    pub m1: i64,
    pub m2: i64,
    pub degenerate: bool,
    pub summand_signs: Vec<i8>,
    pub product_trace: String,
    pub matrices: Vec<ExactMatrix>,
}

impl SystemArtifact {
    pub fn from_system(s: &CliffordSystem) -> Self {
        SystemArtifact {
            m: s.m,
            l: s.l,
            m1: s.m1(),
            m2: s.m2(),
            degenerate: s.is_degenerate(),
            summand_signs: s.summand_signs.clone(),
            product_trace: s.product_trace().to_string(),
            matrices: s.matrices.clone(),
        }
    }
}

pub fn read_system_artifact(path: &Path) -> Result<CliffordSystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FkmError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let artifact: SystemArtifact = serde_json::from_str(&text)
        .map_err(|e| FkmError::Parse(format!("bad system file {}: {e}", path.display())))?;
    let s = CliffordSystem {
        m: artifact.m,
        l: artifact.l,
        matrices: artifact.matrices,
        summand_signs: artifact.summand_signs,
    };
    let violations = verify_system(&s);
    if !violations.is_empty() {
        return Err(FkmError::Parse(format!(
            "system file {} fails {} identity checks",
            path.display(),
            violations.len()
        )));
    }
    if s.matrices.len() != s.m as usize + 1
        || s.matrices.first().map(|p| p.rows()) != Some(2 * s.l)
    {
        return Err(FkmError::Parse(format!(
            "system file {} metadata does not match its matrices",
            path.display()
        )));
    }
    Ok(s)
}

#[derive(Debug)]
pub struct CommandOutput {
    pub report: Report,
    /// Pretty JSON of the construction artifact, when the command has one.
    pub artifact: Option<String>,
}

fn artifact_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact serializes");
    s.push('\n');
    s
}

pub fn cmd_rep(m: u32, seed: u64) -> Result<CommandOutput> {
    if m == 0 || m > MAX_REP_M {
        return Err(FkmError::Parse(format!(
            "m must be between 1 and {MAX_REP_M}, got {m}"
        )));
    }
    let rep = irreducible_generators(m);
    let mut report = Report::new(
        "rep",
        RunConfig { seed, system: Some(format!("m={m}")), ..Default::default() },
    );
    let violations = verify_rep(&rep);
    report.check(
        "representation-identities",
        "0 violations",
        format!("{} violations", violations.len()),
        violations.is_empty(),
    );
    report.check(
        "dimension",
        format!("{}", delta(m)),
        format!("{}", rep.dim),
        rep.dim as u64 == delta(m),
    );
    let artifact = artifact_json(&RepArtifact {
        m: rep.m,
        dim: rep.dim,
        generators: rep.generators.clone(),
    });
    Ok(CommandOutput { report, artifact: Some(artifact) })
}

pub fn cmd_system(source: &SystemSource, seed: u64) -> Result<CommandOutput> {
    let s = load_system(source)?;
    let mut report = Report::new(
        "system",
        RunConfig { seed, system: Some(source.describe()), ..Default::default() },
    );
    let violations = verify_system(&s);
    report.check(
        "system-identities",
        "0 violations",
        format!("{} violations", violations.len()),
        violations.is_empty(),
    );
    report.check(
        "multiplicities",
        format!("({}, {})", s.m1(), s.m2()),
        format!("({}, {})", s.m1(), s.m2()),
        true,
    );
    let trace = s.product_trace();
    report.check("product-trace", trace.to_string(), trace.to_string(), true);
    let artifact = artifact_json(&SystemArtifact::from_system(&s));
    Ok(CommandOutput { report, artifact: Some(artifact) })
}

#[derive(Serialize)]
pub struct TableRow {
    pub m: u32,
    pub k: usize,
    pub delta: usize,
    pub l: usize,
    pub m1: i64,
    pub m2: i64,
    pub classes: usize,
    pub abs_traces: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn cmd_table(m_max: u32, k_max: usize, seed: u64) -> Result<CommandOutput> {
    if m_max == 0 || k_max == 0 {
        return Err(FkmError::Parse("table bounds must be at least 1".into()));
    }
    let mut report = Report::new(
        "table",
        RunConfig {
            seed,
            system: Some(format!("m <= {m_max}, k <= {k_max}")),
            ..Default::default()
        },
    );
    let mut rows = Vec::new();
    for m in 1..=m_max {
        for k in 1..=k_max {
            let d = delta(m) as usize;
            let l = k * d;
            let m2 = l as i64 - m as i64 - 1;
            let reps = enumerate_classes(m, k)?;
            let expected_classes =
                if m % 4 == 0 { k / 2 + 1 } else { 1 };
            let note = if m2 < 0 {
                Some("degenerate: polynomial is constant on the sphere".to_string())
            } else if m2 == 0 {
                Some("two-level family".to_string())
            } else {
                None
            };
            report.check(
                format!("classes-m{m}-k{k}"),
                format!("{expected_classes}"),
                format!("{}", reps.len()),
                reps.len() == expected_classes,
            );
            rows.push(TableRow {
                m,
                k,
                delta: d,
                l,
                m1: m as i64,
                m2,
                classes: reps.len(),
                abs_traces: reps.iter().map(|r| r.abs_trace.to_string()).collect(),
                note,
            });
        }
    }
    let artifact = artifact_json(&serde_json::json!({ "rows": rows }));
    Ok(CommandOutput { report, artifact: Some(artifact) })
}

pub fn cmd_verify(
    source: &SystemSource,
    samples: usize,
    tolerance: f64,
    seed: u64,
) -> Result<CommandOutput> {
    let s = load_system(source)?;
    let mut report = Report::new(
        "verify",
        RunConfig {
            seed,
            system: Some(source.describe()),
            samples: Some(samples),
            tolerance: Some(tolerance),
            ..Default::default()
        },
    );
    let poly = FkmPolynomial::new(&s);
    let n = s.ambient_dim();
    let mut sampler = Sampler::new(seed);

    let violations = verify_system(&s);
    report.check(
        "system-identities",
        "0 violations",
        format!("{} violations", violations.len()),
        violations.is_empty(),
    );
    let rep = irreducible_generators(s.m);
    let rep_violations = verify_rep(&rep);
    report.check(
        "representation-identities",
        "0 violations",
        format!("{} violations", rep_violations.len()),
        rep_violations.is_empty(),
    );

    // Exact quartic identities at random rational points.
    let mut grad_bad = None;
    let mut lap_bad = None;
    let mut euler_bad = None;
    for round in 0..samples {
        let x = sampler.rational_vector(n);
        let (grad_res, lap_res) = poly.identity_residuals(&x)?;
        if !grad_res.is_zero() && grad_bad.is_none() {
            grad_bad = Some((round, grad_res));
        }
        if !lap_res.is_zero() && lap_bad.is_none() {
            lap_bad = Some((round, lap_res));
        }
        let g = poly.gradient(&x)?;
        let four_f = Q::from_integer(4.into()) * poly.eval(&x)?;
        if vector::dot(&g, &x) != four_f && euler_bad.is_none() {
            euler_bad = Some((round, vector::dot(&g, &x) - four_f));
        }
    }
    let exact_check = |bad: Option<(usize, Q)>, samples: usize| match bad {
        None => (format!("0 (exact at {samples} points)"), true),
        Some((round, res)) => (format!("residual {res} at point {round}"), false),
    };
    let (computed, pass) = exact_check(grad_bad, samples);
    report.check("gradient-norm-identity", "0", computed, pass);
    let (computed, pass) = exact_check(lap_bad, samples);
    report.check("laplacian-identity", "0", computed, pass);
    let (computed, pass) = exact_check(euler_bad, samples);
    report.check("euler-identity", "0", computed, pass);

    // Hessian symmetry at one rational point.
    let x = sampler.rational_vector(n);
    let h = poly.hessian(&x)?;
    report.check(
        "hessian-symmetry",
        "symmetric",
        if h.is_symmetric() { "symmetric" } else { "asymmetric" }.to_string(),
        h.is_symmetric(),
    );

    // Tangency of the rotational directions P_i P_j x to the level sets.
    let mut killing_bad = None;
    let killing_points = samples.clamp(1, 5);
    'outer: for round in 0..killing_points {
        let x = sampler.rational_vector(n);
        for i in 0..s.matrices.len() {
            for j in i + 1..s.matrices.len() {
                if !poly.killing_tangency(&x, i, j)?.is_zero() {
                    killing_bad = Some((round, i, j));
                    break 'outer;
                }
            }
        }
    }
    report.check(
        "rotation-tangency",
        "0",
        match killing_bad {
            None => format!("0 (exact at {killing_points} points, all pairs)"),
            Some((round, i, j)) => format!("nonzero for pair ({i},{j}) at point {round}"),
        },
        killing_bad.is_none(),
    );

    // Sphere identities of the span.
    let pairing_points = samples.clamp(1, 20);
    let mut pairing_ok = true;
    'pairing: for _ in 0..pairing_points {
        let x = sampler.rational_vector(n);
        let pc = sampler.unit_rational_vector(s.matrices.len());
        let qc = sampler.unit_rational_vector(s.matrices.len());
        let p = s.combination(&pc)?;
        let qm = s.combination(&qc)?;
        let lhs = vector::dot(&p.matvec(&x), &qm.matvec(&x));
        let inner = p.mul(&qm).trace() / Q::from_integer((n as i64).into());
        let rhs = inner * vector::norm_sq(&x);
        if lhs != rhs {
            pairing_ok = false;
            break 'pairing;
        }
    }
    report.check(
        "span-pairing-identity",
        "exact",
        if pairing_ok {
            format!("exact at {pairing_points} random pairs")
        } else {
            "violated".to_string()
        },
        pairing_ok,
    );

    let mut pattern_ok = true;
    let mut pattern_note = String::new();
    for r in 1..=s.matrices.len().min(5) {
        let factors: Vec<&ExactMatrix> = s.matrices[..r].iter().collect();
        let prod = ExactMatrix::product_of(&factors);
        let want_symmetric = r % 4 == 0 || r % 4 == 1;
        let got = if want_symmetric { prod.is_symmetric() } else { prod.is_skew() };
        if !got {
            pattern_ok = false;
            pattern_note = format!("wrong symmetry for a product of {r}");
            break;
        }
    }
    report.check(
        "product-symmetry-pattern",
        "symmetric for r = 0,1 mod 4, skew otherwise",
        if pattern_ok { "matches".to_string() } else { pattern_note },
        pattern_ok,
    );

    let mut h_invariant = true;
    for _ in 0..pairing_points {
        let x = sampler.rational_vector(n);
        let pc = sampler.unit_rational_vector(s.matrices.len());
        let p = s.combination(&pc)?;
        let px = p.matvec(&x);
        let moment_sum = |v: &[Q]| -> Q {
            let mut acc = Q::zero();
            for i in 0..s.matrices.len() {
                let m = poly.moment(v, i);
                acc += &m * &m;
            }
            acc
        };
        if moment_sum(&x) != moment_sum(&px) {
            h_invariant = false;
            break;
        }
    }
    report.check(
        "moment-sum-invariance",
        "exact",
        if h_invariant {
            format!("exact at {pairing_points} points")
        } else {
            "violated".to_string()
        },
        h_invariant,
    );

    // Float identity for the spherical restriction.
    let mut max_sphere_err: f64 = 0.0;
    for _ in 0..samples {
        let x = sampler.unit_f64_vector(n);
        let f = poly.eval_f64(&x);
        let g = poly.gradient_f64(&x);
        let radial: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
        let tangential_sq: f64 =
            g.iter().zip(&x).map(|(a, b)| (a - radial * b).powi(2)).sum();
        let err = (tangential_sq - 16.0 * (1.0 - f * f)).abs();
        max_sphere_err = max_sphere_err.max(err);
    }
    report.check(
        "sphere-gradient-identity",
        format!("|err| < {}", fmt_f64(tolerance)),
        format!("max |err| = {}", fmt_f64(max_sphere_err)),
        max_sphere_err < tolerance,
    );

    // Range of the spherical restriction.
    let range_points = 10_000;
    let mut min_f = f64::INFINITY;
    let mut max_f = f64::NEG_INFINITY;
    for _ in 0..range_points {
        let x = sampler.unit_f64_vector(n);
        let f = poly.eval_f64(&x);
        min_f = min_f.min(f);
        max_f = max_f.max(f);
    }
    let in_range = min_f >= -1.0 - 1e-9 && max_f <= 1.0 + 1e-9;
    report.check(
        "value-range",
        "[-1, 1]",
        format!("[{}, {}]", fmt_f64(min_f), fmt_f64(max_f)),
        in_range,
    );

    if s.m2() < 0 {
        // The quartic collapses: every sphere point sits on the minus level.
        let mut constant = true;
        for _ in 0..samples.clamp(1, 20) {
            let x = sampler.rational_vector(n);
            let r2 = vector::norm_sq(&x);
            if poly.eval(&x)? != -(&r2 * &r2) {
                constant = false;
                break;
            }
        }
        report.check(
            "degenerate-collapse",
            "F = -<x,x>^2 identically",
            if constant { "holds exactly" } else { "violated" }.to_string(),
            constant,
        );
    } else {
        // Both extreme levels are attained by constructed points.
        let p0 = SphereElement::basis(0, s.matrices.len());
        let seed_vec = vector::unit(n, 0);
        let minus_ok = mminus_point(&s, &p0, &seed_vec).is_ok();
        report.check(
            "minus-level-attained",
            "constructed point at level -1",
            if minus_ok { "constructed" } else { "construction failed" }.to_string(),
            minus_ok,
        );
        let plus_ok = first_plus_point(&s).is_some();
        report.check(
            "plus-level-attained",
            "constructed point at level +1",
            if plus_ok { "constructed" } else { "construction failed" }.to_string(),
            plus_ok,
        );
    }

    Ok(CommandOutput { report, artifact: None })
}

/// Walk (element, eigenbasis index, normal index) triples until the balanced
/// plus-point construction succeeds.
fn first_plus_point(s: &CliffordSystem) -> Option<FocalPoint> {
    let k = s.matrices.len();
    for p_index in 0..k.min(3) {
        let p = SphereElement::basis(p_index, k);
        for y_index in 0..s.l.min(6) {
            for normal_index in 0..3 {
                if let Ok(pt) = mplus_point(s, &p, y_index, normal_index) {
                    return Some(pt);
                }
            }
        }
    }
    None
}

/// Distinct plus points, deduplicated by their primitive coordinates.
pub fn collect_plus_points(s: &CliffordSystem, want: usize) -> Result<Vec<FocalPoint>> {
    let k = s.matrices.len();
    let mut out: Vec<FocalPoint> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for p_index in 0..k {
        let p = SphereElement::basis(p_index, k);
        for y_index in 0..s.l {
            for normal_index in 0..4 {
                if out.len() >= want {
                    return Ok(out);
                }
                if let Ok(pt) = mplus_point(s, &p, y_index, normal_index) {
                    let key = pt
                        .x
                        .iter()
                        .map(|q| q.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    if seen.insert(key) {
                        out.push(pt);
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(FkmError::NotExactlyRepresentable(
            "no exactly balanced plus point was found".into(),
        ));
    }
    Ok(out)
}

pub fn cmd_spectrum(
    source: &SystemSource,
    levels: &[f64],
    seed: u64,
) -> Result<CommandOutput> {
    let s = load_system(source)?;
    if s.m2() < 0 {
        return Err(FkmError::DegenerateSystem { m2: s.m2() });
    }
    let mut report = Report::new(
        "spectrum",
        RunConfig {
            seed,
            system: Some(source.describe()),
            levels: Some(levels.to_vec()),
            ..Default::default()
        },
    );
    let points_per_level = 10;
    let bases = collect_plus_points(&s, points_per_level)?;
    let expected_clusters = if s.m2() == 0 { 2 } else { 4 };
    for &level in levels {
        let mut max_err: f64 = 0.0;
        let mut all_match = true;
        let mut cluster_count = None;
        let mut drift: f64 = 0.0;
        let mut reference: Option<Vec<f64>> = None;
        for base in &bases {
            let p = SphereElement::basis(0, s.matrices.len());
            let pt = level_point(&s, base, &p, level)?;
            let shape = shape_spectrum(&s, &pt)?;
            max_err = max_err.max(shape.max_value_error);
            all_match &= shape.multiplicities_match;
            let means: Vec<f64> = shape.clusters.iter().map(|c| c.0).collect();
            cluster_count = Some(means.len());
            match &reference {
                None => reference = Some(means),
                Some(r) => {
                    if r.len() == means.len() {
                        for (a, b) in r.iter().zip(&means) {
                            drift = drift.max((a - b).abs());
                        }
                    } else {
                        all_match = false;
                    }
                }
            }
        }
        report.check(
            format!("clusters-at-{level}"),
            format!("{expected_clusters} clusters, |err| < {}", fmt_f64(tol::SPECTRUM_VALUE)),
            format!(
                "{} clusters, max |err| = {}",
                cluster_count.unwrap_or(0),
                fmt_f64(max_err)
            ),
            all_match
                && cluster_count == Some(expected_clusters)
                && max_err < tol::SPECTRUM_VALUE,
        );
        report.check(
            format!("stability-at-{level}"),
            format!("constant across {} points", bases.len()),
            format!("max drift = {}", fmt_f64(drift)),
            drift < tol::SPECTRUM_VALUE,
        );
    }
    if s.m2() > 0 {
        let minimal = minimal_level(&s)?;
        let p = SphereElement::basis(0, s.matrices.len());
        let pt = level_point(&s, &bases[0], &p, minimal.level)?;
        let shape = shape_spectrum(&s, &pt)?;
        report.check(
            "minimal-level-trace",
            format!("|trace| < 1e-6 at level {}", fmt_f64(minimal.level)),
            format!("|trace| = {}", fmt_f64(shape.trace.abs())),
            shape.trace.abs() < 1e-6,
        );
    }
    Ok(CommandOutput { report, artifact: None })
}

pub fn cmd_invariants(scenario: Option<&str>, seed: u64) -> Result<CommandOutput> {
    let mut report = Report::new(
        "invariants",
        RunConfig {
            seed,
            scenario: Some(scenario.unwrap_or("all").to_string()),
            ..Default::default()
        },
    );
    for check in run_scenarios(scenario, seed)? {
        report.push(check);
    }
    Ok(CommandOutput { report, artifact: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FocalOp {
    Spectrum,
    Sigma,
    ConditionA,
    Reconstruct,
    Minimal,
}

impl std::str::FromStr for FocalOp {
    type Err = FkmError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "spectrum" => FocalOp::Spectrum,
            "sigma" => FocalOp::Sigma,
            "condition-a" => FocalOp::ConditionA,
            "reconstruct" => FocalOp::Reconstruct,
            "minimal" => FocalOp::Minimal,
            other => {
                return Err(FkmError::Parse(format!(
                    "unknown focal op {other}; expected spectrum|sigma|condition-a|reconstruct|minimal"
                )))
            }
        })
    }
}

pub fn cmd_focal(
    source: &SystemSource,
    op: FocalOp,
    seed: u64,
) -> Result<CommandOutput> {
    let s = load_system(source)?;
    let mut report = Report::new(
        "focal",
        RunConfig { seed, system: Some(source.describe()), ..Default::default() },
    );
    match op {
        FocalOp::Spectrum => {
            return cmd_spectrum(source, &[-0.5, 0.0, 0.5], seed);
        }
        FocalOp::Minimal => {
            if s.is_degenerate() {
                return Err(FkmError::DegenerateSystem { m2: s.m2() });
            }
            let minimal = minimal_level(&s)?;
            let closed_form = 0.5 * ((s.m1() as f64 / s.m2() as f64).sqrt()).atan();
            report.check(
                "minimal-angle",
                format!("t* = {}", fmt_f64(closed_form)),
                format!("t* = {}", fmt_f64(minimal.t)),
                (minimal.t - closed_form).abs() < 1e-9,
            );
            let bases = collect_plus_points(&s, 1)?;
            let p = SphereElement::basis(0, s.matrices.len());
            let pt = level_point(&s, &bases[0], &p, minimal.level)?;
            let shape = shape_spectrum(&s, &pt)?;
            report.check(
                "trace-at-minimal",
                "|trace| < 1e-6",
                format!("|trace| = {}", fmt_f64(shape.trace.abs())),
                shape.trace.abs() < 1e-6,
            );
        }
        FocalOp::Sigma => {
            if s.m2() < 0 {
                return Err(FkmError::DegenerateSystem { m2: s.m2() });
            }
            let plus = collect_plus_points(&s, 1)?.remove(0);
            let sp = sigma_plus(&s, &plus)?;
            let bound = s.matrices.len() * (s.matrices.len() - 1) / 2;
            report.check(
                "sigma-plus-bounded",
                format!("<= {bound}"),
                format!("{sp}"),
                sp <= bound,
            );
            let p0 = SphereElement::basis(0, s.matrices.len());
            let seed_vec = vector::unit(s.ambient_dim(), 0);
            let minus = mminus_point(&s, &p0, &seed_vec)?;
            let sm = sigma_minus(&s, &minus, seed)?;
            let minus_bound = sm.tangent_dim.saturating_sub(s.m1() as usize);
            report.check(
                "sigma-minus-bounded",
                format!("<= {minus_bound}"),
                format!("{} (core dim {})", sm.sigma, sm.common_core_dim),
                sm.sigma <= minus_bound && sm.stabilized,
            );
        }
        FocalOp::ConditionA => {
            if s.m2() < 0 {
                return Err(FkmError::DegenerateSystem { m2: s.m2() });
            }
            let plus = collect_plus_points(&s, 1)?.remove(0);
            let r = condition_a(&s, &plus, seed)?;
            report.check(
                "common-kernel-bounded",
                format!("<= {}", s.m1()),
                format!("{} ({} rounds)", r.dim, r.rounds),
                r.dim <= s.m1() as usize && r.stabilized,
            );
            let membership = nplus_membership(&s, &plus)?;
            report.check(
                "four-product-membership",
                "decided",
                format!("{}", membership.member),
                true,
            );
            // scripted eigenvector points can carry a large common kernel,
            // but a random point of the manifold has none at all; the
            // exception is m2 = 0, where every shape operator vanishes and
            // the kernel is the whole tangent space at every point
            let mut sampler = Sampler::new(seed);
            let mut min_d = usize::MAX;
            let mut max_d = 0usize;
            let sweep = 100;
            for _ in 0..sweep {
                let x = numeric::random_plus_point(&s, &mut sampler)?;
                let d = numeric::condition_a_dim_f64(&s, &x);
                min_d = min_d.min(d);
                max_d = max_d.max(d);
            }
            let computed = format!("min {min_d}, max {max_d} over {sweep} points");
            if s.m2() == 0 {
                let m1 = s.m1() as usize;
                report.check(
                    "generic-kernel-dim",
                    format!("constant {m1} (two-level family)"),
                    computed,
                    min_d == m1 && max_d == m1,
                );
            } else {
                report.check(
                    "generic-kernel-dim",
                    "min 0 over random points",
                    computed,
                    min_d == 0,
                );
            }
        }
        FocalOp::Reconstruct => {
            if s.m2() < 0 {
                return Err(FkmError::DegenerateSystem { m2: s.m2() });
            }
            let p0 = SphereElement::basis(0, s.matrices.len());
            let seed_vec = vector::unit(s.ambient_dim(), 0);
            let minus = mminus_point(&s, &p0, &seed_vec)?;
            if s.m1() <= s.m2() {
                let r = reconstruct_eplus(&s, &minus, seed)?;
                report.check(
                    "eigenspace-recovered",
                    "exact match",
                    format!(
                        "match = {} (dim {} of {})",
                        r.matches,
                        r.reconstructed.dim(),
                        r.expected.dim()
                    ),
                    r.matches,
                );
            } else {
                let err = reconstruct_eplus(&s, &minus, seed)
                    .err()
                    .map(|e| e.to_string())
                    .unwrap_or_else(|| "no error".into());
                report.check(
                    "obstruction-reported",
                    "kernels too small when m1 > m2",
                    err.clone(),
                    err.contains("m1"),
                );
            }
        }
    }
    Ok(CommandOutput { report, artifact: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rep_and_system_commands_pass() {
        let out = cmd_rep(3, 1).unwrap();
        assert!(out.report.pass);
        assert!(out.artifact.is_some());
        let src = SystemSource::Spec { m: 3, k: 2, signs: None };
        let out = cmd_system(&src, 1).unwrap();
        assert!(out.report.pass);
    }

    #[test]
    fn system_file_round_trip() {
        let src = SystemSource::Spec { m: 2, k: 2, signs: Some(vec![1, -1]) };
        let out = cmd_system(&src, 1).unwrap();
        let dir = std::env::temp_dir().join("fkm-pipeline-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("system.json");
        std::fs::write(&path, out.artifact.unwrap()).unwrap();
        let s = read_system_artifact(&path).unwrap();
        assert_eq!(s.m, 2);
        assert_eq!(s.l, 4);
        let direct = load_system(&src).unwrap();
        assert_eq!(s.product_trace(), direct.product_trace());
    }

    #[test]
    fn corrupt_system_file_is_a_parse_error() {
        let dir = std::env::temp_dir().join("fkm-pipeline-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("corrupt.json");
        std::fs::write(&path, "{\"m\": 1}").unwrap();
        match read_system_artifact(&path) {
            Err(FkmError::Parse(_)) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn verify_passes_on_small_systems() {
        for (m, k, signs) in [(1u32, 2usize, None), (3, 2, None), (4, 1, None)] {
            let src = SystemSource::Spec { m, k, signs };
            let out = cmd_verify(&src, 20, tol::VERIFY_DEFAULT, 5).unwrap();
            assert!(out.report.pass, "verify failed for m={m} k={k}: {:#?}",
                out.report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        }
    }

    #[test]
    fn spectrum_rejects_degenerate_systems() {
        let src = SystemSource::Spec { m: 4, k: 1, signs: None };
        match cmd_spectrum(&src, &[0.0], 5) {
            Err(FkmError::DegenerateSystem { m2 }) => assert_eq!(m2, -1),
            other => panic!("expected degenerate rejection, got {other:?}"),
        }
    }
}
