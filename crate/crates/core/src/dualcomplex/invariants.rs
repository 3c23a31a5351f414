use serde::{Deserialize, Serialize};

use super::classify::{ClassificationResult, Verdict};
use super::complex::restriction_rank;
use super::config::DivisorConfiguration;
use super::DualComplexError;

/// `b2(E) = sum b2(E_i) - #double curves` and `ell = b2(E) - r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkInvariant {
    pub r: u64,
    pub n_double: u64,
    #[serde(rename = "b2E")]
    pub b2_e: i64,
    pub ell: i64,
    /// `sum b2 - rank` of a generic restriction matrix; equals `b2E` when
    /// the classes can separate every double curve.
    #[serde(rename = "b2E_by_rank")]
    pub b2_e_by_rank: i64,
    pub warnings: Vec<String>,
}

pub fn link_invariant(config: &DivisorConfiguration) -> Result<LinkInvariant, DualComplexError> {
    config.validate()?;
    let mut sum = 0i64;
    for c in &config.components {
        sum +=
            c.b2.ok_or_else(|| DualComplexError::MissingB2(c.id.clone()))? as i64;
    }
    let r = config.components.len() as u64;
    let n_double = config.double_curves.len() as u64;
    let b2_e = sum - n_double as i64;
    let ell = b2_e - r as i64;
    let rank = restriction_rank(config).expect("b2 present") as i64;
    let mut warnings = Vec::new();
    if ell < 0 {
        warnings.push(format!(
            "ell = {ell} is negative; the b2 data is inconsistent"
        ));
    }
    if rank != n_double as i64 {
        warnings.push(format!(
            "restriction rank {rank} is below the {n_double} double curves; some component has too few classes"
        ));
    }
    Ok(LinkInvariant {
        r,
        n_double,
        b2_e,
        ell,
        b2_e_by_rank: sum - rank,
        warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationDims {
    #[serde(rename = "h0T1")]
    pub h0_t1: u64,
    #[serde(rename = "h1T1")]
    pub h1_t1: u64,
    #[serde(rename = "dimT2")]
    pub dim_t2: u64,
}

/// First-order deformation dimensions of `E` inside an `n`-dimensional
/// resolution: `h0T1 = sum h^{0,n-2}(E_i)`, and `h1T1 = dimT2` equal to
/// `r - 1` for `n = 3`, `sum h^{0,n-3}(E_i)` above.
pub fn deformation_dims(
    config: &DivisorConfiguration,
    n: usize,
) -> Result<DeformationDims, DualComplexError> {
    config.validate()?;
    if n < 3 {
        return Err(DualComplexError::InvalidDimension(n));
    }
    let r = config.components.len() as u64;
    let hodge = |q: usize| -> Result<u64, DualComplexError> {
        config
            .components
            .iter()
            .map(|c| {
                let v = if q == 1 {
                    c.h01()
                } else {
                    c.h0q.as_ref().and_then(|h| h.get(q).copied())
                };
                v.ok_or_else(|| DualComplexError::MissingHodge {
                    component: c.id.clone(),
                    q,
                })
            })
            .sum()
    };
    let h0_t1 = hodge(n - 2)?;
    let h1_t1 = if n == 3 {
        r.saturating_sub(1)
    } else {
        hodge(n - 3)?
    };
    Ok(DeformationDims {
        h0_t1,
        h1_t1,
        dim_t2: h1_t1,
    })
}

/// Lower bound for `dim H^2(T(-E))`: `r - 1` for Type II, `0` for Type
/// III_1, the declared `p_a(D)` for Type III_2.
pub fn h2_lower_bound(
    config: &DivisorConfiguration,
    classification: &ClassificationResult,
) -> Result<u64, DualComplexError> {
    match classification.verdict {
        Verdict::TypeII => Ok(config.components.len() as u64 - 1),
        Verdict::TypeIII1 => Ok(0),
        Verdict::TypeIII2 => config.pa_d.ok_or(DualComplexError::MissingArithmeticGenus),
        Verdict::Unclassified => Err(DualComplexError::Unclassified),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SemistableKind {
    SimpleElliptic { m: i64 },
    Cusp { m: i64, s: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllCheck {
    pub pass: bool,
    pub expected: i64,
    pub actual: i64,
    /// `m <= 9`, resp. `m <= 9 + s`.
    pub smoothability_bound: bool,
}

/// Compares `ell` with `9 - m` (simple elliptic) or `9 - m + s` (cusp).
pub fn semistable_ell_check(
    config: &DivisorConfiguration,
    kind: SemistableKind,
) -> Result<EllCheck, DualComplexError> {
    let actual = link_invariant(config)?.ell;
    let (expected, bound) = match kind {
        SemistableKind::SimpleElliptic { m } => (9 - m, m <= 9),
        SemistableKind::Cusp { m, s } => (9 - m + s, m <= 9 + s),
    };
    Ok(EllCheck {
        pass: expected == actual && bound,
        expected,
        actual,
        smoothability_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(json: &str) -> DivisorConfiguration {
        DivisorConfiguration::from_json(json).unwrap()
    }

    fn cubic() -> DivisorConfiguration {
        cfg(r#"{"components":[{"id":"S","kind":"rational","b2":7}]}"#)
    }

    #[test]
    fn cubic_surface_link() {
        let l = link_invariant(&cubic()).unwrap();
        assert_eq!((l.r, l.n_double, l.b2_e, l.ell), (1, 0, 7, 6));
        assert!(l.warnings.is_empty());
    }

    #[test]
    fn small_links() {
        let one = cfg(r#"{"components":[{"id":"S","kind":"rational","b2":1}]}"#);
        assert_eq!(link_invariant(&one).unwrap().ell, 0);
        let two = cfg(
            r#"{"components":[{"id":"A","kind":"rational","b2":2},{"id":"B","kind":"rational","b2":3}],
                "double_curves":[{"id":"ab","between":["A","B"],"genus":0}]}"#,
        );
        let l = link_invariant(&two).unwrap();
        assert_eq!((l.b2_e, l.ell, l.b2_e_by_rank), (4, 2, 4));
    }

    #[test]
    fn negative_ell_warns() {
        let c = cfg(
            r#"{"components":[{"id":"A","kind":"rational","b2":1},{"id":"B","kind":"rational","b2":1}],
                "double_curves":[{"id":"ab","between":["A","B"],"genus":0}]}"#,
        );
        let l = link_invariant(&c).unwrap();
        assert_eq!(l.ell, -1);
        assert_eq!(l.warnings.len(), 1);
    }

    #[test]
    fn missing_b2() {
        let c = cfg(r#"{"components":[{"id":"S","kind":"rational"}]}"#);
        assert_eq!(
            link_invariant(&c),
            Err(DualComplexError::MissingB2("S".into()))
        );
    }

    #[test]
    fn deformation_dimensions() {
        let chain = cfg(
            r#"{"components":[{"id":"E1","kind":"elliptic_ruled"},{"id":"E2","kind":"elliptic_ruled"},
                {"id":"E3","kind":"rational"}],
                "double_curves":[{"id":"D12","between":["E1","E2"],"genus":1},
                                 {"id":"D23","between":["E2","E3"],"genus":1}]}"#,
        );
        let d = deformation_dims(&chain, 3).unwrap();
        assert_eq!((d.h0_t1, d.h1_t1, d.dim_t2), (2, 2, 2));
        let single = cfg(r#"{"components":[{"id":"S","kind":"rational"}]}"#);
        assert_eq!(deformation_dims(&single, 3).unwrap().h0_t1, 0);
        assert_eq!(deformation_dims(&single, 3).unwrap().h1_t1, 0);
        assert!(matches!(
            deformation_dims(&single, 4),
            Err(DualComplexError::MissingHodge { q: 2, .. })
        ));
        let other = cfg(r#"{"components":[{"id":"S","kind":"other"}]}"#);
        assert!(deformation_dims(&other, 3).is_err());
    }

    #[test]
    fn higher_dimension_uses_h0q() {
        let c = cfg(r#"{"components":[{"id":"S","kind":"other","h0q":[1,0,2]}]}"#);
        let d = deformation_dims(&c, 4).unwrap();
        assert_eq!((d.h0_t1, d.h1_t1), (2, 0));
    }

    #[test]
    fn semistable_checks() {
        let c = semistable_ell_check(&cubic(), SemistableKind::SimpleElliptic { m: 3 }).unwrap();
        assert!(c.pass);
        let one = cfg(r#"{"components":[{"id":"S","kind":"rational","b2":1}]}"#);
        assert!(
            semistable_ell_check(&one, SemistableKind::SimpleElliptic { m: 9 })
                .unwrap()
                .pass
        );
        let five = cfg(r#"{"components":[{"id":"S","kind":"rational","b2":6}]}"#);
        assert!(
            semistable_ell_check(&five, SemistableKind::Cusp { m: 6, s: 2 })
                .unwrap()
                .pass
        );
        assert!(
            !semistable_ell_check(&five, SemistableKind::SimpleElliptic { m: 3 })
                .unwrap()
                .pass
        );
    }
}
