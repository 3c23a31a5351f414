//! Report builders behind each CLI subcommand.
//!
//! Builders return `Err(InputError)` for anything the user must fix (bad
//! polynomial text, invalid configuration, missing data). Failed relations
//! are not errors: they appear as failing checks in the report.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::defspace::DefSpaceMap;
use crate::dualcomplex::{
    build_dual_complex, classify, deformation_dims, h2_lower_bound, link_invariant,
    semistable_ell_check, to_dot, DivisorConfiguration, DualComplex, DualComplexError,
    SemistableKind, SurfaceKind, Verdict,
};
use crate::localalg::{
    germ_standard_basis, quasi_homogeneous_weights, stabilized_oracle_dim, LocalIdeal,
    QuotientDimension,
};
use crate::polycore::{parse_polynomial, Ambient, Polynomial, Rational};
use crate::report::{Check, Report};
use crate::smallres::{raw_invariants, relation_checks, threefold_weights, CompoundCA, GermSpec};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct InputError(pub String);

fn input(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

pub const DEFAULT_VARS: [&str; 4] = ["x", "y", "z", "w"];

/// Largest truncation degree tried by the oracle cross-check.
pub const DEFAULT_MAX_CUTOFF: u32 = 16;

fn value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Which quotient of the local ring to measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Germ {
    Tjurina,
    Milnor,
}

/// `tau` or `mu` of `f`, with the standard basis, the weight detector and,
/// when `max_cutoff` is set, the truncated-Macaulay cross-check.
pub fn germ_report(
    kind: Germ,
    f: &str,
    vars: &[String],
    max_cutoff: Option<u32>,
) -> Result<Report, InputError> {
    let ambient = Ambient::new(vars).map_err(input)?;
    let p = parse_polynomial(f, &ambient)
        .map_err(|e| InputError(format!("cannot parse polynomial: {e}")))?;
    if p.is_zero() {
        return Err(InputError(
            "the zero polynomial has no Milnor or Tjurina number".into(),
        ));
    }
    if !num_traits::Zero::is_zero(&p.constant_term()) {
        return Err(InputError(format!("{p} does not vanish at the origin")));
    }
    let (command, key, ideal, formula) = match kind {
        Germ::Tjurina => (
            "tjurina",
            "tau",
            LocalIdeal::tjurina(&p),
            "dim O/(f, df/dx_1, ..., df/dx_n)",
        ),
        Germ::Milnor => (
            "milnor",
            "mu",
            LocalIdeal::jacobian(&p),
            "dim O/(df/dx_1, ..., df/dx_n)",
        ),
    };
    let inputs = json!({ "f": f, "vars": vars });
    let weights = quasi_homogeneous_weights(&p);
    let Some(ideal) = ideal else {
        let results = json!({
            key: 0,
            "smooth": true,
            "weights": weights,
            "derivations": { key: "a partial derivative is a unit; the quotient is zero" },
        });
        return Ok(Report::new(command, inputs, results));
    };
    let sb = germ_standard_basis(&p, &ideal);
    let dim = crate::localalg::quotient_dim(&sb);
    let mut leads: Vec<String> = sb
        .leading_monomials()
        .iter()
        .map(|m| {
            Polynomial::monomial(&ambient, m.clone(), Rational::from_integer(1.into())).to_string()
        })
        .collect();
    leads.sort();
    let mut report = Report::new(
        command,
        inputs,
        json!({
            key: dim,
            "smooth": false,
            "standard_basis_size": sb.basis().len(),
            "leading_monomials": leads,
            "weights": weights,
            "derivations": {
                key: format!("{formula}, counted as standard monomials of a standard basis under negative degrevlex"),
            },
        }),
    );
    report.checks.push(Check::equal(
        "standard basis reduces generators and s-polynomials to 0",
        true,
        sb.verify(),
    ));
    match dim {
        QuotientDimension::Infinite => {
            report.warnings.push(format!(
                "{key} is infinite: the singularity at the origin is not isolated"
            ));
        }
        QuotientDimension::Finite(d) => {
            if let Some(cutoff) = max_cutoff {
                match stabilized_oracle_dim(&ideal, cutoff) {
                    Some(st) => {
                        report.results["oracle"] =
                            json!({ "cutoff": st.cutoff, "dimension": st.dimension });
                        report.checks.push(Check::equal(
                            format!(
                                "{key} = truncated oracle at cutoffs {} and {}",
                                st.cutoff,
                                st.cutoff + 1
                            ),
                            d,
                            st.dimension,
                        ));
                    }
                    None => report.warnings.push(format!(
                        "truncated oracle did not stabilize below cutoff {cutoff}"
                    )),
                }
            }
        }
    }
    Ok(report)
}

pub fn smallres_report(spec: &GermSpec) -> Result<Report, InputError> {
    let s = CompoundCA::from_spec(spec).map_err(input)?;
    let inv = raw_invariants(&s).map_err(input)?;
    let weights = threefold_weights(&s);
    let mut results = value(&inv);
    let extra = json!({
        "equation": s.threefold_equation().to_string(),
        "branches": s.branches(),
        "h2c_omega2": inv.h2c_omega2(),
        "h0_r1_tangent": inv.h0_r1_tangent(),
        "weights": weights,
        "derivations": {
            "tau": "dim O/(f, df/dx_i) for f = x^2+y^2+g",
            "mu": "dim O/(df/dx_i)",
            "delta": "(mu(g) + branches - 1)/2",
            "r": "number of exceptional curves of the small resolution, from the family",
            "b": "delta - r",
            "a": "2b + r - tau",
            "du_bois_b11": "b",
            "du_bois_b21": "b - a",
            "ell21": "r",
            "is_odp": "b = 0",
            "h2c_omega2": "b + r",
            "h0_r1_tangent": "b - a",
        },
    });
    results
        .as_object_mut()
        .expect("record is an object")
        .extend(extra.as_object().expect("object").clone());
    let mut report = Report::new("smallres", value(spec), results);
    report.checks = relation_checks(&s, &inv);
    if weights.is_some() {
        report
            .checks
            .push(Check::equal("weighted homogeneous implies a = 0", 0, inv.a));
        report.checks.push(Check::equal(
            "weighted homogeneous implies tau = mu",
            inv.mu,
            inv.tau,
        ));
    } else if inv.a == 0 {
        report.warnings.push(
            "a = 0 but no weights were found in these coordinates; the detector is coordinate dependent".into(),
        );
    }
    Ok(report)
}

pub fn parse_config(text: &str) -> Result<DivisorConfiguration, InputError> {
    DivisorConfiguration::from_json(text).map_err(input)
}

fn complex_summary(cx: &DualComplex) -> Value {
    json!({
        "vertices": cx.vertices.len(),
        "edges": cx.edges.len(),
        "triangles": cx.triangles.len(),
        "connected": cx.connected,
        "euler_characteristic": cx.euler_characteristic,
        "h1_rank": cx.h1_rank,
        "h2_rank": cx.h2_rank,
    })
}

fn topology_checks(cx: &DualComplex) -> Vec<Check> {
    vec![
        Check::equal("dual complex is connected", true, cx.connected),
        Check::equal("euler characteristic = 1", 1, cx.euler_characteristic),
        Check::equal("first homology vanishes", 0, cx.h1_rank),
        Check::equal("second homology vanishes", 0, cx.h2_rank),
    ]
}

/// Link invariant, deformation dimensions and the `H^2` bound.
pub fn dualcomplex_invariants_report(
    config: &DivisorConfiguration,
    n: usize,
    semistable: Option<SemistableKind>,
) -> Result<Report, InputError> {
    let link = link_invariant(config).map_err(input)?;
    let dims = deformation_dims(config, n).map_err(input)?;
    let cx = build_dual_complex(config).map_err(input)?;
    let class = classify(config).map_err(input)?;
    let mut warnings = link.warnings.clone();
    let bound = match h2_lower_bound(config, &class) {
        Ok(b) => Some(b),
        Err(e @ (DualComplexError::Unclassified | DualComplexError::MissingArithmeticGenus)) => {
            warnings.push(format!("no H^2(T(-E)) bound: {e}"));
            None
        }
        Err(e) => return Err(input(e)),
    };
    let mut results = json!({
        "r": link.r,
        "n_double": link.n_double,
        "b2E": link.b2_e,
        "ell": link.ell,
        "b2E_by_rank": link.b2_e_by_rank,
        "h0T1": dims.h0_t1,
        "h1T1": dims.h1_t1,
        "dimT2": dims.dim_t2,
        "h2TminusE_lower_bound": bound,
        "verdict": class.verdict,
        "dual_complex": complex_summary(&cx),
        "derivations": {
            "b2E": "sum b2(E_i) - #double curves",
            "b2E_by_rank": "sum b2(E_i) - rank of the generic restriction matrix",
            "ell": "b2E - r",
            "h0T1": format!("sum h^(0,{})(E_i)", n - 2),
            "h1T1": if n == 3 { "r - 1".to_string() } else { format!("sum h^(0,{})(E_i)", n - 3) },
            "dimT2": "h1T1",
            "h2TminusE_lower_bound": "r - 1 (Type II), 0 (Type III_1), pa_d (Type III_2)",
        },
    });
    let mut checks = vec![
        Check::equal(
            "b2E agrees with the incidence rank count",
            link.b2_e,
            link.b2_e_by_rank,
        ),
        Check::equal("dimT2 = h1T1", dims.h1_t1, dims.dim_t2),
    ];
    if n == 3 {
        checks.push(Check::equal("h1T1 = r - 1", link.r - 1, dims.h1_t1));
    }
    if config
        .components
        .iter()
        .all(|c| c.kind == SurfaceKind::Rational)
    {
        checks.push(Check::equal(
            "h0T1 = 0 for rational components",
            0,
            dims.h0_t1,
        ));
    }
    if class.verdict == Verdict::TypeII && n == 3 {
        let elliptic = config
            .components
            .iter()
            .filter(|c| c.kind == SurfaceKind::EllipticRuled)
            .count();
        checks.push(Check::equal(
            "h0T1 = #elliptic ruled components",
            elliptic,
            dims.h0_t1,
        ));
    }
    if class.verdict != Verdict::Unclassified {
        checks.extend(topology_checks(&cx));
    }
    if let Some(kind) = semistable {
        let e = semistable_ell_check(config, kind).map_err(input)?;
        let name = match kind {
            SemistableKind::SimpleElliptic { .. } => "ell = 9 - m with m <= 9",
            SemistableKind::Cusp { .. } => "ell = 9 - m + s with m <= 9 + s",
        };
        results["semistable"] = json!({ "section": kind, "expected": e.expected, "actual": e.actual,
            "smoothability_bound": e.smoothability_bound, "pass": e.pass });
        checks.push(Check::with_outcome(name, e.expected, e.actual, e.pass));
    }
    let mut report = Report::new(
        "dualcomplex-invariants",
        json!({ "config": config, "n": n }),
        results,
    );
    report.checks = checks;
    report.warnings = warnings;
    Ok(report)
}

/// Classification report together with the DOT rendering of the complex.
pub fn dualcomplex_classify_report(
    config: &DivisorConfiguration,
) -> Result<(Report, String), InputError> {
    let cx = build_dual_complex(config).map_err(input)?;
    let class = classify(config).map_err(input)?;
    let mut report = Report::new(
        "dualcomplex-classify",
        json!({ "config": config }),
        json!({
            "verdict": class.verdict,
            "labeling": class.labeling,
            "clauses": class.clauses,
            "failed_clauses": class.failed_clauses,
            "diagnostics": class.diagnostics,
            "dual_complex": complex_summary(&cx),
        }),
    );
    if class.verdict != Verdict::Unclassified {
        report.checks = topology_checks(&cx);
        let own_failures = class
            .failed_clauses
            .iter()
            .filter(|c| c.kind == class.verdict)
            .count();
        report.checks.push(Check::equal(
            "no failed clause for the verdict",
            0,
            own_failures,
        ));
    }
    Ok((report, to_dot(config, &cx)))
}

pub fn defspace_verify_report(n: usize, seed: u64, trials: usize) -> Result<Report, InputError> {
    if trials == 0 {
        return Err(InputError("--trials must be at least 1".into()));
    }
    let map = DefSpaceMap::build(n).map_err(input)?;
    let t = map.transcript(trials, seed);
    let mut results = value(&t);
    results["p"] = json!(map.p().to_string());
    results["inverse_t"] = json!(map
        .inverse_t()
        .iter()
        .map(Polynomial::to_string)
        .collect::<Vec<_>>());
    let samples_pass = t.samples.iter().all(|s| s.pass);
    let mut report = Report::new(
        "defspace-verify",
        json!({ "n": n, "seed": seed, "trials": trials }),
        results,
    );
    report.checks = vec![
        Check::equal(
            "P(w; Phi(lambda, t)) = (w - lambda) Q",
            true,
            t.factor_identity,
        ),
        Check::equal(
            "Phi(lambda, t(lambda, b)) = b modulo P(lambda; b)",
            true,
            t.inverse_composition,
        ),
        Check::equal("det dPhi = +-Q(lambda; lambda, t)", true, t.jacobian),
        Check::equal(
            "P'(lambda) = Q(lambda) symbolically",
            true,
            t.ramification_symbolic,
        ),
        Check::equal(
            "P'(lambda) = Q(lambda) at sampled points",
            true,
            samples_pass,
        ),
    ];
    Ok(report)
}

fn parse_rational(s: &str) -> Result<Rational, InputError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| InputError(format!("`{s}` is not a rational number")))
}

/// Fiber of `Phi` over `b = (b_{n-2}, ..., b_0)`.
pub fn defspace_fiber_report(n: usize, b: &[String]) -> Result<Report, InputError> {
    let map = DefSpaceMap::build(n).map_err(input)?;
    let point: Vec<Rational> = b
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_, _>>()?;
    let fiber = map.fiber_count(&point).map_err(input)?;
    let p = map.p_at(&point).map_err(input)?;
    let points: Vec<Value> = fiber
        .points
        .iter()
        .map(|fp| json!({ "lambda": fp.lambda.to_string(), "t": fp.t.iter().map(Rational::to_string).collect::<Vec<_>>() }))
        .collect();
    let mut report = Report::new(
        "defspace-fiber",
        json!({ "n": n, "b": point.iter().map(Rational::to_string).collect::<Vec<_>>() }),
        json!({
            "p": p.to_polynomial(map.ambient(), 0).to_string(),
            "count": fiber.count,
            "is_generic": fiber.is_generic,
            "discriminant_nonzero": fiber.discriminant_nonzero,
            "roots_enumerated": fiber.roots_enumerated,
            "points": points,
            "derivations": { "count": "n - deg gcd(P, P')" },
        }),
    );
    report.checks.push(Check::with_outcome(
        "count <= n",
        n,
        fiber.count,
        fiber.count <= n,
    ));
    report.checks.push(Check::equal(
        "count = n iff discriminant != 0",
        fiber.discriminant_nonzero,
        fiber.is_generic,
    ));
    let expected: Vec<String> = point.iter().map(Rational::to_string).collect();
    for fp in &fiber.points {
        let image: Vec<String> = map
            .phi_at(&fp.lambda, &fp.t)
            .iter()
            .map(Rational::to_string)
            .collect();
        report.checks.push(Check::equal(
            format!("Phi(lambda = {}, t) = b", fp.lambda),
            &expected,
            image,
        ));
    }
    if !fiber.roots_enumerated {
        report
            .warnings
            .push("rational roots were not enumerated; the count alone certifies the fiber".into());
    }
    Ok(report)
}
