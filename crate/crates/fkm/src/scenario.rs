//! Named constructions of systems and distinguished focal points, driven by
//! a declarative description embedded in the crate. Each scenario builds one
//! system, derives labeled points on the focal cones, and checks rank and
//! dimension invariants against frozen expected values.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Deserialize;

use crate::error::{FkmError, Result};
use crate::exact::vector::{self, Q};
use crate::exact::{involution_eigenspace, ExactMatrix};
use crate::focal::{
    balance, condition_a, invariants, nplus_membership, reconstruct_eplus,
    sigma_minus, sigma_plus, tangent_space_plus, FocalPoint, FocalSide, Witness,
};
use crate::poly::{condition_b_component, FkmPolynomial};
use crate::report::CheckResult;
use crate::sample::Sampler;
use crate::system::{
    definite_system_with_extension, indefinite_system_with_extension,
    irreducible_system, sum_of_irreducibles, CliffordSystem, SphereElement,
};

#[derive(Clone, Debug, Deserialize)]
pub struct ScenarioSet {
    pub scenarios: Vec<Scenario>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub summary: String,
    pub system: SystemDef,
    #[serde(default)]
    pub points: Vec<PointDef>,
    pub checks: Vec<CheckDef>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemDef {
    Irreducible { m: u32 },
    Sum { m: u32, signs: Vec<i8> },
    /// Zero-trace (8,7) system on R^32 with one extension element.
    IndefiniteEight,
    /// |trace| = 32 system (8,7) on R^32 with two leftover elements.
    DefiniteEight,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PointDef {
    pub label: String,
    #[serde(flatten)]
    pub build: PointBuild,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointBuild {
    /// Joint eigenvector of products of the named elements. Tokens "p0",
    /// "p1", ... name system elements, "e0", "e1", ... extension elements.
    /// The point is a seeded rational combination of the joint eigenspace
    /// basis, so it is generic in the eigenspace for the rank invariants.
    JointEigenvector {
        products: Vec<Vec<String>>,
        side: FocalSide,
        #[serde(default)]
        prefer: Option<Vec<i8>>,
        #[serde(default)]
        witness: Option<WitnessFromOp>,
    },
    /// y = x + P_element x for an existing plus point x.
    PlusToMinus { from: String, element: usize },
    /// Projection of a coordinate vector onto E₊(P_element).
    MinusBasis { element: usize, seed_index: usize },
    /// Balanced sum u + w with u in E₊(V) ∩ E₊(P_split) and w in
    /// E₊(V) ∩ E₋(P_split), V the product of the plane elements.
    BalancedSplit { plane: Vec<String>, split: String },
}

/// Minus-side witness: the basis element with the sign realized by the
/// sign_from-th product operator.
#[derive(Clone, Copy, Debug, Deserialize)]
pub struct WitnessFromOp {
    pub basis: usize,
    pub sign_from: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CheckDef {
    pub name: String,
    #[serde(flatten)]
    pub op: CheckOp,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum CheckOp {
    SigmaPlus {
        point: String,
        #[serde(flatten)]
        expect: Expect,
    },
    SigmaMinus {
        point: String,
        #[serde(flatten)]
        expect: Expect,
    },
    ConditionADim { point: String, eq: usize },
    ConditionAMinus { point: String, eq: bool },
    LocusMember { point: String, eq: bool },
    Reconstruct { point: String, matches: bool },
    /// Σ_i ⟨P_i x, x⟩² = ⟨x,x⟩² at random rational points.
    SquareSumIdentity { samples: usize },
    /// The polynomials of the first `split` and the remaining elements
    /// negate each other.
    SubfamilyNegation { split: usize, samples: usize },
    /// Polarization extraction of the mixed quartic component equals its
    /// closed form at random (N, k, b) triples.
    ConditionB { point: String, triples: usize },
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum Expect {
    Eq { eq: i64 },
    Gt { gt: i64 },
}

impl Expect {
    fn judge(&self, got: i64) -> (String, bool) {
        match self {
            Expect::Eq { eq } => (format!("{eq}"), got == *eq),
            Expect::Gt { gt } => (format!("> {gt}"), got > *gt),
        }
    }
}

/// The scenario file compiled into the crate.
pub fn builtin_scenarios() -> ScenarioSet {
    serde_json::from_str(include_str!("scenarios.json"))
        .expect("embedded scenario file parses")
}

pub fn find_scenario(name: &str) -> Result<Scenario> {
    builtin_scenarios()
        .scenarios
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| FkmError::Parse(format!("no scenario named {name}")))
}

pub fn build_scenario_system(def: &SystemDef) -> Result<(CliffordSystem, Vec<ExactMatrix>)> {
    Ok(match def {
        SystemDef::Irreducible { m } => (irreducible_system(*m), vec![]),
        SystemDef::Sum { m, signs } => (sum_of_irreducibles(*m, signs)?, vec![]),
        SystemDef::IndefiniteEight => indefinite_system_with_extension(),
        SystemDef::DefiniteEight => definite_system_with_extension(),
    })
}

fn resolve_element<'a>(
    system: &'a CliffordSystem,
    extension: &'a [ExactMatrix],
    token: &str,
) -> Result<&'a ExactMatrix> {
    let parse = |rest: &str, limit: usize| -> Result<usize> {
        let i: usize = rest
            .parse()
            .map_err(|_| FkmError::Parse(format!("bad element token {token}")))?;
        if i >= limit {
            return Err(FkmError::IndexOutOfRange { index: i, limit });
        }
        Ok(i)
    };
    if let Some(rest) = token.strip_prefix('p') {
        let i = parse(rest, system.matrices.len())?;
        Ok(&system.matrices[i])
    } else if let Some(rest) = token.strip_prefix('e') {
        let i = parse(rest, extension.len())?;
        Ok(&extension[i])
    } else {
        Err(FkmError::Parse(format!("bad element token {token}")))
    }
}

fn product_of_tokens(
    system: &CliffordSystem,
    extension: &[ExactMatrix],
    tokens: &[String],
) -> Result<ExactMatrix> {
    if tokens.is_empty() {
        return Err(FkmError::Parse("empty product".into()));
    }
    let factors: Vec<&ExactMatrix> = tokens
        .iter()
        .map(|t| resolve_element(system, extension, t))
        .collect::<Result<_>>()?;
    Ok(ExactMatrix::product_of(&factors))
}

fn build_point(
    system: &CliffordSystem,
    extension: &[ExactMatrix],
    points: &BTreeMap<String, FocalPoint>,
    def: &PointDef,
    seed: u64,
) -> Result<FocalPoint> {
    match &def.build {
        PointBuild::JointEigenvector { products, side, prefer, witness } => {
            let ops: Vec<ExactMatrix> = products
                .iter()
                .map(|p| product_of_tokens(system, extension, p))
                .collect::<Result<_>>()?;
            let prefer = match prefer {
                Some(p) => p.clone(),
                None => vec![1; ops.len()],
            };
            let (space, signs) = invariants::special_eigenspace(&ops, &prefer)?;
            let mut sampler = Sampler::new(seed);
            let coeffs = sampler.rational_vector(space.dim());
            let mut sum = vector::zeros(system.ambient_dim());
            for (c, b) in coeffs.iter().zip(space.basis()) {
                sum = vector::add(&sum, &vector::scale(b, c));
            }
            let x = vector::primitive_integer_vector(&sum);
            let witness = match witness {
                Some(w) => {
                    let k = system.matrices.len();
                    let mut coeffs = vector::zeros(k);
                    coeffs[w.basis] = vector::qi(signs[w.sign_from] as i64);
                    Some(Witness::Element(SphereElement::new(coeffs)?))
                }
                None => None,
            };
            Ok(FocalPoint { side: *side, x, witness })
        }
        PointBuild::PlusToMinus { from, element } => {
            let base = points.get(from).ok_or_else(|| {
                FkmError::Parse(format!("point {from} is not defined yet"))
            })?;
            if *element >= system.matrices.len() {
                return Err(FkmError::IndexOutOfRange {
                    index: *element,
                    limit: system.matrices.len(),
                });
            }
            let image = system.matrices[*element].matvec(&base.x);
            let y = vector::add(&base.x, &image);
            if vector::is_zero(&y) {
                return Err(FkmError::ZeroProjection);
            }
            let p = SphereElement::basis(*element, system.matrices.len());
            Ok(FocalPoint {
                side: FocalSide::Minus,
                x: vector::primitive_integer_vector(&y),
                witness: Some(Witness::Element(p)),
            })
        }
        PointBuild::MinusBasis { element, seed_index } => {
            let p = SphereElement::basis(*element, system.matrices.len());
            let seed = vector::unit(system.ambient_dim(), *seed_index);
            crate::focal::mminus_point(system, &p, &seed)
        }
        PointBuild::BalancedSplit { plane, split } => {
            let vol = product_of_tokens(system, extension, plane)?;
            let sp = resolve_element(system, extension, split)?.clone();
            let both = involution_eigenspace(&vol, 1)?;
            let up = both.intersect(&involution_eigenspace(&sp, 1)?)?;
            let down = both.intersect(&involution_eigenspace(&sp, -1)?)?;
            for u in up.basis() {
                for w in down.basis() {
                    if let Some((a, b)) = balance(u, w) {
                        return Ok(FocalPoint {
                            side: FocalSide::Plus,
                            x: vector::add(&a, &b),
                            witness: Some(Witness::Pair { y: a, n: b }),
                        });
                    }
                }
            }
            Err(FkmError::NotExactlyRepresentable(
                "no balanced pair in the split eigenspaces".into(),
            ))
        }
    }
}

fn get_point<'a>(
    points: &'a BTreeMap<String, FocalPoint>,
    label: &str,
) -> Result<&'a FocalPoint> {
    points
        .get(label)
        .ok_or_else(|| FkmError::Parse(format!("no point labeled {label}")))
}

fn run_check(
    system: &CliffordSystem,
    points: &BTreeMap<String, FocalPoint>,
    def: &CheckDef,
    seed: u64,
) -> Result<CheckResult> {
    let name = def.name.clone();
    Ok(match &def.op {
        CheckOp::SigmaPlus { point, expect } => {
            let v = sigma_plus(system, get_point(points, point)?)? as i64;
            let (want, pass) = expect.judge(v);
            CheckResult::new(name, want, v.to_string(), pass)
        }
        CheckOp::SigmaMinus { point, expect } => {
            let r = sigma_minus(system, get_point(points, point)?, seed)?;
            let (want, pass) = expect.judge(r.sigma as i64);
            let pass = pass && r.stabilized;
            CheckResult::new(
                name,
                want,
                format!("{} (core dim {})", r.sigma, r.common_core_dim),
                pass,
            )
        }
        CheckOp::ConditionADim { point, eq } => {
            let r = condition_a(system, get_point(points, point)?, seed)?;
            CheckResult::new(
                name,
                eq.to_string(),
                r.dim.to_string(),
                r.dim == *eq && r.stabilized,
            )
        }
        CheckOp::ConditionAMinus { point, eq } => {
            let r = sigma_minus(system, get_point(points, point)?, seed)?;
            CheckResult::new(
                name,
                eq.to_string(),
                format!("{} (kernel dim {})", r.condition_a, r.min_kernel_dim),
                r.condition_a == *eq && r.stabilized,
            )
        }
        CheckOp::LocusMember { point, eq } => {
            let r = nplus_membership(system, get_point(points, point)?)?;
            let computed = match r.witness {
                Some((idx, sign)) => format!(
                    "{} (product {:?}, sign {sign:+})",
                    r.member, idx
                ),
                None => r.member.to_string(),
            };
            CheckResult::new(name, eq.to_string(), computed, r.member == *eq)
        }
        CheckOp::Reconstruct { point, matches } => {
            let r = reconstruct_eplus(system, get_point(points, point)?, seed)?;
            CheckResult::new(
                name,
                format!("matches = {matches}"),
                format!(
                    "matches = {} (dim {} of {})",
                    r.matches,
                    r.reconstructed.dim(),
                    r.expected.dim()
                ),
                r.matches == *matches,
            )
        }
        CheckOp::SquareSumIdentity { samples } => {
            let mut sampler = Sampler::new(seed);
            let n = system.ambient_dim();
            let poly = FkmPolynomial::new(system);
            let mut failed = None;
            for round in 0..*samples {
                let x = sampler.rational_vector(n);
                let r2 = vector::norm_sq(&x);
                let mut sum = Q::zero();
                for i in 0..system.matrices.len() {
                    let m = poly.moment(&x, i);
                    sum += &m * &m;
                }
                if sum != &r2 * &r2 {
                    failed = Some(round);
                    break;
                }
            }
            CheckResult::new(
                name,
                format!("identity at {samples} points"),
                match failed {
                    None => format!("identity at {samples} points"),
                    Some(round) => format!("failed at point {round}"),
                },
                failed.is_none(),
            )
        }
        CheckOp::SubfamilyNegation { split, samples } => {
            if *split == 0 || *split >= system.matrices.len() {
                return Err(FkmError::IndexOutOfRange {
                    index: *split,
                    limit: system.matrices.len(),
                });
            }
            let mut sampler = Sampler::new(seed);
            let n = system.ambient_dim();
            let poly = FkmPolynomial::new(system);
            let part = |x: &[Q], range: std::ops::Range<usize>| -> Q {
                let r2 = vector::norm_sq(x);
                let mut sum = &r2 * &r2;
                for i in range {
                    let m = poly.moment(x, i);
                    sum -= Q::from_integer(2.into()) * &m * &m;
                }
                sum
            };
            let mut failed = None;
            for round in 0..*samples {
                let x = sampler.rational_vector(n);
                let front = part(&x, 0..*split);
                let back = part(&x, *split..system.matrices.len());
                if front != -back {
                    failed = Some(round);
                    break;
                }
            }
            CheckResult::new(
                name,
                format!("negation at {samples} points"),
                match failed {
                    None => format!("negation at {samples} points"),
                    Some(round) => format!("failed at point {round}"),
                },
                failed.is_none(),
            )
        }
        CheckOp::ConditionB { point, triples } => {
            let x = get_point(points, point)?;
            let kernel = condition_a(system, x, seed)?.kernel;
            let tangent = tangent_space_plus(system, &x.x);
            if kernel.dim() == 0 || tangent.dim() == 0 {
                return Err(FkmError::Precondition(
                    "condition B needs a nonzero kernel and tangent space".into(),
                ));
            }
            let poly = FkmPolynomial::new(system);
            let mut sampler = Sampler::new(seed);
            let combo = |basis: &[Vec<Q>], coeffs: &[Q]| -> Vec<Q> {
                let mut acc = vector::zeros(x.x.len());
                for (c, b) in coeffs.iter().zip(basis) {
                    acc = vector::add(&acc, &vector::scale(b, c));
                }
                acc
            };
            let frame = crate::focal::normal_frame(system, &x.x);
            let mut exact = 0usize;
            for _ in 0..*triples {
                let nv = combo(&frame, &sampler.rational_vector(frame.len()));
                let kv = combo(kernel.basis(), &sampler.rational_vector(kernel.dim()));
                let bv = combo(tangent.basis(), &sampler.rational_vector(tangent.dim()));
                let (polarized, closed) = condition_b_component(&poly, &x.x, &nv, &kv, &bv)?;
                if polarized == closed {
                    exact += 1;
                }
            }
            CheckResult::new(
                name,
                format!("{triples}/{triples} exact"),
                format!("{exact}/{triples} exact"),
                exact == *triples,
            )
        }
    })
}

/// Build the system and points, then run every check. Point construction
/// failures surface as an error for the whole scenario.
/// Build one labeled point of a named scenario, returning the system and
/// extension elements alongside it so the invariant functions can be driven
/// directly at the scripted points.
pub fn scenario_point(
    scenario: &str,
    label: &str,
    seed: u64,
) -> Result<(CliffordSystem, Vec<ExactMatrix>, FocalPoint)> {
    let sc = find_scenario(scenario)?;
    let (system, extension) = build_scenario_system(&sc.system)?;
    let mut points = BTreeMap::new();
    for pd in &sc.points {
        let fp = build_point(&system, &extension, &points, pd, seed)?;
        fp.verify(&system)?;
        if pd.label == label {
            return Ok((system, extension, fp));
        }
        points.insert(pd.label.clone(), fp);
    }
    Err(FkmError::Parse(format!(
        "scenario {scenario} has no point labeled {label}"
    )))
}

pub fn run_scenario(sc: &Scenario, seed: u64) -> Result<Vec<CheckResult>> {
    let (system, extension) = build_scenario_system(&sc.system)?;
    let mut points = BTreeMap::new();
    for pd in &sc.points {
        let fp = build_point(&system, &extension, &points, pd, seed)?;
        fp.verify(&system)?;
        points.insert(pd.label.clone(), fp);
    }
    sc.checks
        .iter()
        .map(|cd| run_check(&system, &points, cd, seed))
        .collect()
}

/// Run one scenario by name, or all of them in file order. Check names are
/// prefixed with the scenario name; a scenario that fails to set up becomes
/// a single failed check.
pub fn run_scenarios(name: Option<&str>, seed: u64) -> Result<Vec<CheckResult>> {
    let list = match name {
        Some(n) => vec![find_scenario(n)?],
        None => builtin_scenarios().scenarios,
    };
    let mut out = Vec::new();
    for sc in &list {
        match run_scenario(sc, seed) {
            Ok(results) => {
                for mut r in results {
                    r.name = format!("{}/{}", sc.name, r.name);
                    out.push(r);
                }
            }
            Err(e) => out.push(CheckResult::new(
                format!("{}/setup", sc.name),
                "scenario builds",
                format!("error: {e}"),
                false,
            )),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_file_parses_and_names_are_unique() {
        let set = builtin_scenarios();
        assert!(!set.scenarios.is_empty());
        let mut names: Vec<&str> =
            set.scenarios.iter().map(|s| s.name.as_str()).collect();
        names.sort_unstable();
        let before = names.len();
        names.dedup();
        assert_eq!(before, names.len());
        for sc in &set.scenarios {
            assert!(!sc.checks.is_empty(), "{} has no checks", sc.name);
        }
    }

    #[test]
    fn unknown_scenario_is_an_error() {
        assert!(find_scenario("no-such-scenario").is_err());
    }

    #[test]
    fn locus_scenario_runs_clean() {
        let sc = find_scenario("four-product-locus").unwrap();
        let results = run_scenario(&sc, 11).unwrap();
        assert!(results.iter().all(|r| r.pass), "{results:?}");
    }

    // sigma at a +1-eigenvector u of the extension element is capped one
    // below the eigenspace dimension: every P_iP_j is skew, so P_iP_ju is
    // orthogonal to u, and the extension element fixes P_iP_ju (it commutes
    // with each product and fixes u). The span therefore sits inside the
    // 15-dimensional orthogonal complement of u within the eigenspace, for
    // any u whatsoever. 16 is unreachable; 15 is the generic value.
    #[test]
    fn extension_eigenvector_sigma_is_sharp() {
        let (system, ext) = crate::system::indefinite_system_with_extension();
        let e0 = &ext[0];
        let (space, _) =
            invariants::special_eigenspace(std::slice::from_ref(e0), &[1]).unwrap();
        assert_eq!(space.dim(), 16);

        let mut sampler = Sampler::new(3);
        let coeffs = sampler.rational_vector(space.dim());
        let mut u = vector::zeros(system.ambient_dim());
        for (c, b) in coeffs.iter().zip(space.basis()) {
            u = vector::add(&u, &vector::scale(b, c));
        }

        for i in 0..system.matrices.len() {
            for j in (i + 1)..system.matrices.len() {
                let w = system.matrices[i].matvec(&system.matrices[j].matvec(&u));
                assert!(vector::dot(&w, &u).is_zero(), "span vector not orthogonal to u");
                assert_eq!(e0.matvec(&w), w, "span vector left the eigenspace");
            }
        }

        let point = FocalPoint { side: FocalSide::Plus, x: u, witness: None };
        point.verify(&system).unwrap();
        assert_eq!(invariants::sigma_plus(&system, &point).unwrap(), 15);
    }
}
