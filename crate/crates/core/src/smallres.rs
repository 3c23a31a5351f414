//! Invariants of compound `A_n` germs `x^2 + y^2 + g(z, w)` that admit a
//! small resolution.
//!
//! The numbers `tau`, `mu` and `delta` are computed from the equation; the
//! curve count `r` comes from the family. Everything else follows from the
//! relations `b = delta - r` and `tau = 2b - a + r`, and the remaining
//! identities are checked rather than assumed.
//!
//! Note on naming: the group of dimension `b + r` is reported as
//! `h2c_omega2` (compactly supported `H^2` of `Omega^2` on the resolution).
//! Some sources write this group with superscript 1; the value is the same.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::localalg::{
    milnor_number, quasi_homogeneous_weights, tjurina_number, LocalAlgError,
    QuasiHomogeneousWeights, QuotientDimension,
};
use crate::polycore::{parse_polynomial, Ambient, PolyError, Polynomial, UniPoly};
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SmallResError {
    #[error("cannot parse g: {0}")]
    Parse(#[from] PolyError),
    #[error(transparent)]
    LocalAlg(#[from] LocalAlgError),
    #[error("{0} has a non-isolated singularity at the origin")]
    NonIsolated(String),
    #[error("missing field `{0}` for this family")]
    MissingField(&'static str),
    #[error("g does not belong to the declared family: {0}")]
    FamilyMismatch(String),
    #[error("mu(g) + branches - 1 = {mu} + {branches} - 1 is odd; the branch count is wrong")]
    Parity { mu: u64, branches: u64 },
    #[error("relation `{relation}` fails: {detail}")]
    Relation { relation: String, detail: String },
}

/// Germ description as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermSpec {
    pub g: String,
    pub family: FamilyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_override: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    DistinctLines,
    A1Times,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `g` a product of `n` distinct lines through the origin.
    DistinctLines(u32),
    /// `g = z^2 + w^(2n)`.
    A1Times(u32),
    Custom,
}

/// The germ `x^2 + y^2 + g(z, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompoundCA {
    g: Polynomial,
    family: Family,
    branches: u64,
    r_override: Option<u64>,
}

pub fn plane_ambient() -> Ambient {
    Ambient::new(&["z", "w"]).expect("valid names")
}

pub fn threefold_ambient() -> Ambient {
    Ambient::new(&["x", "y", "z", "w"]).expect("valid names")
}

impl CompoundCA {
    /// Validates `g` against the family. `branches` is required for
    /// `Custom` only.
    pub fn new(
        g: Polynomial,
        family: Family,
        branches: Option<u64>,
        r_override: Option<u64>,
    ) -> Result<Self, SmallResError> {
        if g.ambient() != &plane_ambient() {
            return Err(SmallResError::FamilyMismatch(
                "g must be a polynomial in z, w".into(),
            ));
        }
        if g.is_zero() {
            return Err(LocalAlgError::ZeroPolynomial.into());
        }
        if !num_traits::Zero::is_zero(&g.constant_term()) {
            return Err(LocalAlgError::NotThroughOrigin.into());
        }
        let branches = match family {
            Family::DistinctLines(n) => {
                check_distinct_lines(&g, n)?;
                n as u64
            }
            Family::A1Times(n) => {
                let expected = parse_polynomial(&format!("z^2+w^{}", 2 * n), &plane_ambient())?;
                if n == 0 || g != expected {
                    return Err(SmallResError::FamilyMismatch(format!(
                        "expected z^2+w^{}",
                        2 * n
                    )));
                }
                2
            }
            Family::Custom => branches.ok_or(SmallResError::MissingField("branches"))?,
        };
        if branches == 0 {
            return Err(SmallResError::FamilyMismatch(
                "branch count must be positive".into(),
            ));
        }
        if family == Family::Custom && r_override.is_none() {
            return Err(SmallResError::MissingField("r_override"));
        }
        Ok(CompoundCA {
            g,
            family,
            branches,
            r_override,
        })
    }

    pub fn from_spec(spec: &GermSpec) -> Result<Self, SmallResError> {
        let g = parse_polynomial(&spec.g, &plane_ambient())?;
        let family = match spec.family {
            FamilyKind::DistinctLines => {
                Family::DistinctLines(spec.n.ok_or(SmallResError::MissingField("n"))?)
            }
            FamilyKind::A1Times => Family::A1Times(spec.n.ok_or(SmallResError::MissingField("n"))?),
            FamilyKind::Custom => Family::Custom,
        };
        Self::new(g, family, spec.branches, spec.r_override)
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn branches(&self) -> u64 {
        self.branches
    }

    /// `x^2 + y^2 + g` in the ambient `x, y, z, w`.
    pub fn threefold_equation(&self) -> Polynomial {
        let amb = threefold_ambient();
        let squares = parse_polynomial("x^2+y^2", &amb).expect("literal parses");
        squares + self.g.embed(&amb).expect("z, w embed")
    }
}

/// Homogeneous of degree `n` and squarefree, i.e. `n` distinct lines.
fn check_distinct_lines(g: &Polynomial, n: u32) -> Result<(), SmallResError> {
    if n < 2 {
        return Err(SmallResError::FamilyMismatch(
            "need at least two lines".into(),
        ));
    }
    if !g.is_homogeneous() || g.total_degree() != Some(n) {
        return Err(SmallResError::FamilyMismatch(format!(
            "g is not a form of degree {n}"
        )));
    }
    // dehomogenize at w = 1; the line w = 0 appears as a drop in degree
    let (z, w) = (0, 1);
    let one = Polynomial::one(g.ambient());
    let affine = g.substitute_var(w, &one);
    let u = UniPoly::from_polynomial(&affine, z)?;
    let deg = u.degree().unwrap_or(0) as u32;
    let squarefree = u.gcd(&u.derivative()).degree() == Some(0) && deg + 1 >= n;
    if !squarefree {
        return Err(SmallResError::FamilyMismatch(
            "g has a repeated line".into(),
        ));
    }
    Ok(())
}

/// `delta = (mu(g) + branches - 1) / 2`.
pub fn plane_delta_invariant(g: &Polynomial, branches: u64) -> Result<u64, SmallResError> {
    let mu = match milnor_number(g)? {
        QuotientDimension::Finite(m) => m,
        QuotientDimension::Infinite => return Err(SmallResError::NonIsolated(g.to_string())),
    };
    let twice = mu + branches - 1;
    if !twice.is_multiple_of(2) {
        return Err(SmallResError::Parity { mu, branches });
    }
    Ok(twice / 2)
}

/// Number of exceptional curves of the small resolution.
pub fn exceptional_curve_count(s: &CompoundCA) -> Result<u64, SmallResError> {
    match s.family {
        Family::DistinctLines(n) => Ok(n as u64 - 1),
        Family::A1Times(_) => Ok(1),
        Family::Custom => s
            .r_override
            .ok_or(SmallResError::MissingField("r_override")),
    }
}

/// `b`, `a` and `du_bois_b21` are signed so that inconsistent input can be
/// reported; in a validated record they are nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallResInvariants {
    pub tau: u64,
    pub mu: u64,
    pub r: u64,
    pub delta: u64,
    pub b: i64,
    pub a: i64,
    pub du_bois_b11: i64,
    pub du_bois_b21: i64,
    pub ell21: u64,
    pub is_odp: bool,
}

impl SmallResInvariants {
    /// `dim H^2_C(Omega^2) = b + r`.
    pub fn h2c_omega2(&self) -> i64 {
        self.b + self.r as i64
    }

    /// `dim H^0(R^1 p_* T) = b - a`.
    pub fn h0_r1_tangent(&self) -> i64 {
        self.b - self.a
    }
}

/// Computes the record without enforcing the relations between its fields.
pub fn raw_invariants(s: &CompoundCA) -> Result<SmallResInvariants, SmallResError> {
    let f = s.threefold_equation();
    let finite = |d: QuotientDimension| {
        d.finite()
            .ok_or_else(|| SmallResError::NonIsolated(f.to_string()))
    };
    let tau = finite(tjurina_number(&f)?)?;
    let mu = finite(milnor_number(&f)?)?;
    let delta = plane_delta_invariant(&s.g, s.branches)?;
    let r = exceptional_curve_count(s)?;
    let b = delta as i64 - r as i64;
    let a = 2 * b + r as i64 - tau as i64;
    Ok(SmallResInvariants {
        tau,
        mu,
        r,
        delta,
        b,
        a,
        du_bois_b11: b,
        du_bois_b21: b - a,
        ell21: r,
        is_odp: b == 0,
    })
}

/// Every relation the record must satisfy, evaluated on `inv`.
pub fn relation_checks(s: &CompoundCA, inv: &SmallResInvariants) -> Vec<Check> {
    let (tau, r, delta) = (inv.tau as i64, inv.r as i64, inv.delta as i64);
    let (b, a) = (inv.b, inv.a);
    let mut checks = vec![
        Check::with_outcome("b >= 0", 0, b, b >= 0),
        Check::with_outcome("a >= 0", 0, a, a >= 0),
        Check::with_outcome("b - a >= 0", 0, b - a, b >= a),
        Check::equal("delta = b + r", delta, b + r),
        Check::equal("tau = 2b - a + r", tau, 2 * b - a + r),
        Check::with_outcome(
            "b + r <= tau <= 2b + r",
            serde_json::json!({ "min": b + r, "max": 2 * b + r }),
            tau,
            b + r <= tau && tau <= 2 * b + r,
        ),
        Check::equal(
            "tau = b11 + b21 + l21",
            tau,
            inv.du_bois_b11 + inv.du_bois_b21 + inv.ell21 as i64,
        ),
        Check::equal("is_odp iff b = 0", inv.is_odp, b == 0),
        Check::with_outcome("tau <= mu", inv.mu, inv.tau, inv.tau <= inv.mu),
    ];
    if inv.is_odp {
        checks.push(Check::equal(
            "odp has tau = r = delta = 1",
            [1, 1, 1],
            [inv.tau, inv.r, inv.delta],
        ));
    }
    if let Family::DistinctLines(n) = s.family {
        let n = n as u64;
        checks.push(Check::equal("delta = n(n-1)/2", n * (n - 1) / 2, inv.delta));
    }
    checks
}

/// The validated invariant record; fails naming the first violated relation.
pub fn small_res_invariants(s: &CompoundCA) -> Result<SmallResInvariants, SmallResError> {
    let inv = raw_invariants(s)?;
    if let Some(c) = relation_checks(s, &inv).into_iter().find(|c| !c.pass) {
        return Err(SmallResError::Relation {
            detail: format!("expected {}, got {}", c.expected, c.actual),
            relation: c.name,
        });
    }
    Ok(inv)
}

/// True exactly for the ordinary double point; errors if `b = 0` without
/// `tau = r = delta = 1`.
pub fn is_ordinary_double_point(inv: &SmallResInvariants) -> Result<bool, SmallResError> {
    if inv.b != 0 {
        return Ok(false);
    }
    if (inv.tau, inv.r, inv.delta) != (1, 1, 1) {
        return Err(SmallResError::Relation {
            relation: "odp has tau = r = delta = 1".into(),
            detail: format!(
                "b = 0 but (tau, r, delta) = ({}, {}, {})",
                inv.tau, inv.r, inv.delta
            ),
        });
    }
    Ok(true)
}

/// Weights of `x^2 + y^2 + g` in the given coordinates, used to cross-check
/// `a = 0`.
pub fn threefold_weights(s: &CompoundCA) -> Option<QuasiHomogeneousWeights> {
    quasi_homogeneous_weights(&s.threefold_equation())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(g: &str, family: Family, branches: Option<u64>, r: Option<u64>) -> CompoundCA {
        let g = parse_polynomial(g, &plane_ambient()).unwrap();
        CompoundCA::new(g, family, branches, r).unwrap()
    }

    fn tuple(inv: &SmallResInvariants) -> (u64, u64, u64, i64, i64) {
        (inv.tau, inv.r, inv.delta, inv.b, inv.a)
    }

    #[test]
    fn delta_examples() {
        let p = |s| parse_polynomial(s, &plane_ambient()).unwrap();
        assert_eq!(plane_delta_invariant(&p("z*w"), 2), Ok(1));
        assert_eq!(plane_delta_invariant(&p("z^5-w^5"), 5), Ok(10));
        assert_eq!(plane_delta_invariant(&p("z^2-w^3"), 1), Ok(1));
        assert_eq!(
            plane_delta_invariant(&p("z^2-w^3"), 2),
            Err(SmallResError::Parity { mu: 2, branches: 2 })
        );
        assert!(matches!(
            plane_delta_invariant(&p("z^2"), 1),
            Err(SmallResError::NonIsolated(_))
        ));
    }

    #[test]
    fn curve_counts() {
        let lines = germ("z^5-w^5", Family::DistinctLines(5), None, None);
        assert_eq!(exceptional_curve_count(&lines), Ok(4));
        let a1 = germ("z^2+w^6", Family::A1Times(3), None, None);
        assert_eq!(exceptional_curve_count(&a1), Ok(1));
        let custom = germ("z^2-w^4", Family::Custom, Some(2), Some(2));
        assert_eq!(exceptional_curve_count(&custom), Ok(2));
    }

    #[test]
    fn custom_needs_override() {
        let g = parse_polynomial("z^2-w^4", &plane_ambient()).unwrap();
        assert_eq!(
            CompoundCA::new(g, Family::Custom, Some(2), None),
            Err(SmallResError::MissingField("r_override"))
        );
    }

    #[test]
    fn family_validation() {
        let p = |s| parse_polynomial(s, &plane_ambient()).unwrap();
        assert!(CompoundCA::new(p("z^3-z*w^2"), Family::DistinctLines(3), None, None).is_ok());
        assert!(CompoundCA::new(p("z^2*w-w^3"), Family::DistinctLines(3), None, None).is_ok());
        // repeated line
        assert!(CompoundCA::new(p("z^2*w"), Family::DistinctLines(3), None, None).is_err());
        assert!(CompoundCA::new(p("z*w^2"), Family::DistinctLines(3), None, None).is_err());
        assert!(CompoundCA::new(p("z^2+w^4"), Family::A1Times(3), None, None).is_err());
    }

    #[test]
    fn five_lines() {
        let inv =
            small_res_invariants(&germ("z^5-w^5", Family::DistinctLines(5), None, None)).unwrap();
        assert_eq!(tuple(&inv), (16, 4, 10, 6, 0));
        assert_eq!(
            (inv.mu, inv.du_bois_b11, inv.du_bois_b21, inv.ell21),
            (16, 6, 6, 4)
        );
        assert_eq!(inv.h0_r1_tangent(), 6);
        assert_eq!(inv.h2c_omega2(), 10);
        assert_eq!(is_ordinary_double_point(&inv), Ok(false));
    }

    #[test]
    fn a1_times_three() {
        let inv = small_res_invariants(&germ("z^2+w^6", Family::A1Times(3), None, None)).unwrap();
        assert_eq!(tuple(&inv), (5, 1, 3, 2, 0));
        assert_eq!(inv.h0_r1_tangent(), 2);
    }

    #[test]
    fn ordinary_double_point() {
        let inv = small_res_invariants(&germ("z^2+w^2", Family::A1Times(1), None, None)).unwrap();
        assert_eq!(tuple(&inv), (1, 1, 1, 0, 0));
        assert!(inv.is_odp);
        assert_eq!(is_ordinary_double_point(&inv), Ok(true));
    }

    #[test]
    fn deformed_five_lines() {
        let s = germ("z^5-w^5+z^3*w^3", Family::Custom, Some(5), Some(4));
        let inv = small_res_invariants(&s).unwrap();
        assert_eq!(tuple(&inv), (15, 4, 10, 6, 1));
        assert!(threefold_weights(&s).is_none());
    }

    #[test]
    fn wrong_override_is_reported() {
        // r = 11 > delta makes b negative
        let s = germ("z^5-w^5", Family::Custom, Some(5), Some(11));
        match small_res_invariants(&s) {
            Err(SmallResError::Relation { relation, .. }) => assert_eq!(relation, "b >= 0"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn odp_inconsistency_detected() {
        let bogus = SmallResInvariants {
            tau: 2,
            mu: 2,
            r: 1,
            delta: 1,
            b: 0,
            a: 0,
            du_bois_b11: 0,
            du_bois_b21: 0,
            ell21: 1,
            is_odp: true,
        };
        assert!(is_ordinary_double_point(&bogus).is_err());
    }

    #[test]
    fn spec_parsing() {
        let spec: GermSpec =
            serde_json::from_str(r#"{"g":"z^5-w^5","family":"distinct_lines","n":5}"#).unwrap();
        let s = CompoundCA::from_spec(&spec).unwrap();
        assert_eq!(s.branches(), 5);
        let bad: GermSpec =
            serde_json::from_str(r#"{"g":"z^5-w^5","family":"distinct_lines"}"#).unwrap();
        assert_eq!(
            CompoundCA::from_spec(&bad),
            Err(SmallResError::MissingField("n"))
        );
    }
}
