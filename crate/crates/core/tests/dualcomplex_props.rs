use std::path::PathBuf;

use cdv_core::dualcomplex::{
    build_dual_complex, classify, deformation_dims, h2_lower_bound, link_invariant, semistable_ell_check,
    to_dot, ClauseStatus, DivisorConfiguration, Id, SemistableKind, SurfaceKind, Verdict,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

fn config(name: &str) -> DivisorConfiguration {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/configs").join(format!("{name}.json"));
    DivisorConfiguration::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const CANONICAL: [(&str, Verdict); 4] = [
    ("cubic_cone", Verdict::TypeII),
    ("type_ii_chain", Verdict::TypeII),
    ("type_iii1_segment", Verdict::TypeIII1),
    ("type_iii2_disk", Verdict::TypeIII2),
];

/// `sum (b2 - 1) - #double curves`, from the raw data.
fn ell_oracle(c: &DivisorConfiguration) -> i64 {
    c.components.iter().map(|s| s.b2.unwrap() as i64 - 1).sum::<i64>() - c.double_curves.len() as i64
}

#[test]
fn canonical_configurations_classify() {
    for (name, want) in CANONICAL {
        let c = config(name);
        let result = classify(&c).unwrap();
        assert_eq!(result.verdict, want, "{name}: {:?}", result.failed_clauses);
        assert!(result.failed_clauses.iter().all(|cl| cl.kind != want), "{name}");
        assert_eq!(link_invariant(&c).unwrap().ell, ell_oracle(&c), "{name}");
    }
}

#[test]
fn h2_bounds_by_type() {
    let bound = |name| {
        let c = config(name);
        h2_lower_bound(&c, &classify(&c).unwrap()).unwrap()
    };
    assert_eq!(bound("cubic_cone"), 0);
    assert_eq!(bound("type_ii_chain"), 2);
    assert_eq!(bound("type_iii1_segment"), 0);
    assert_eq!(bound("type_iii2_disk"), 1);
}

#[test]
fn missing_d0_fails_type_ii_iv() {
    let c = config("missing_d0");
    let result = classify(&c).unwrap();
    assert_eq!(result.verdict, Verdict::Unclassified);
    assert!(result
        .failed_clauses
        .iter()
        .any(|cl| cl.kind == Verdict::TypeII && cl.clause == "(iv)" && cl.status == ClauseStatus::Failed));
}

#[test]
fn cubic_cone_link() {
    let c = config("cubic_cone");
    let l = link_invariant(&c).unwrap();
    assert_eq!((l.r, l.n_double, l.b2_e, l.ell), (1, 0, 7, 6));
    let check = semistable_ell_check(&c, SemistableKind::SimpleElliptic { m: 3 }).unwrap();
    assert!(check.pass);
    assert_eq!((check.expected, check.actual), (6, 6));
    assert!(!semistable_ell_check(&c, SemistableKind::SimpleElliptic { m: 4 }).unwrap().pass);
}

#[test]
fn deformation_dims_count_elliptic_components() {
    for (name, _) in CANONICAL {
        let c = config(name);
        let d = deformation_dims(&c, 3).unwrap();
        let elliptic = c.components.iter().filter(|s| s.kind == SurfaceKind::EllipticRuled).count() as u64;
        let r = c.components.len() as u64;
        assert_eq!(d.h0_t1, elliptic, "{name}");
        assert_eq!((d.h1_t1, d.dim_t2), (r - 1, r - 1), "{name}");
    }
}

#[test]
fn dot_lists_every_component_and_curve() {
    for (name, _) in CANONICAL {
        let c = config(name);
        let dot = to_dot(&c, &build_dual_complex(&c).unwrap());
        assert!(dot.starts_with("graph dual_complex {"));
        assert_eq!(dot.matches(" -- ").count() - dot.matches("style=dashed").count(), c.double_curves.len());
        for s in &c.components {
            assert!(dot.contains(&format!("\"{}\" [label=", s.id)), "{name}");
        }
    }
}

/// Shuffles every list and renames the components.
fn scramble(c: &DivisorConfiguration, rng: &mut ChaCha8Rng) -> DivisorConfiguration {
    let mut out = c.relabeled(|id| Id(format!("x_{}", id.0.to_lowercase())));
    out.components.shuffle(rng);
    out.double_curves.shuffle(rng);
    out.triple_points.shuffle(rng);
    for d in &mut out.double_curves {
        d.between.shuffle(rng);
    }
    for t in &mut out.triple_points {
        t.components.shuffle(rng);
    }
    out.marked.c_curves.shuffle(rng);
    out
}

#[test]
fn classification_is_invariant_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, _) in CANONICAL.iter().chain(&[("missing_d0", Verdict::Unclassified)]) {
        let c = config(name);
        let base = classify(&c).unwrap();
        let base_ell = link_invariant(&c).unwrap().ell;
        let failed = |r: &cdv_core::dualcomplex::ClassificationResult| {
            let mut v: Vec<(Verdict, String)> = r.failed_clauses.iter().map(|c| (c.kind, c.clause.clone())).collect();
            v.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
            v
        };
        for _ in 0..100 {
            let s = scramble(&c, &mut rng);
            let result = classify(&s).unwrap();
            assert_eq!(result.verdict, base.verdict, "{name}");
            assert_eq!(failed(&result), failed(&base), "{name}");
            assert_eq!(link_invariant(&s).unwrap().ell, base_ell, "{name}");
            assert_eq!(result.labeling.len(), base.labeling.len(), "{name}");
        }
    }
}

/// Type II chain of `r` components: elliptic ruled `E1..E_{r-1}` ending in
/// a rational `E_r`, with `D0` on `E1`.
fn chain(b2: &[u64]) -> DivisorConfiguration {
    let r = b2.len();
    let link = |i: usize| format!("D{i}_{}", i + 1);
    let components: Vec<_> = (1..=r)
        .map(|i| {
            let mut boundary = Vec::new();
            boundary.push(if i == 1 { "D0".to_string() } else { link(i - 1) });
            if i < r {
                boundary.push(link(i));
            }
            json!({
                "id": format!("E{i}"),
                "kind": if i == r { "rational" } else { "elliptic_ruled" },
                "b2": b2[i - 1],
                "anticanonical_boundary": boundary,
            })
        })
        .collect();
    let curves: Vec<_> = (1..r)
        .map(|i| json!({"id": link(i), "between": [format!("E{i}"), format!("E{}", i + 1)], "genus": 1}))
        .collect();
    let text = json!({
        "components": components,
        "double_curves": curves,
        "marked": {"d0_curve": {"id": "D0", "component": "E1", "genus": 1}},
    });
    DivisorConfiguration::from_json(&text.to_string()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_type_ii_chains(b2 in prop::collection::vec(2u64..=10, 1..=7), seed in any::<u64>()) {
        let c = chain(&b2);
        let r = b2.len() as u64;
        let ell = b2.iter().map(|&b| b as i64 - 1).sum::<i64>() - (r as i64 - 1);
        let s = scramble(&c, &mut ChaCha8Rng::seed_from_u64(seed));
        for cfg in [&c, &s] {
            let result = classify(cfg).unwrap();
            prop_assert_eq!(result.verdict, Verdict::TypeII);
            prop_assert_eq!(link_invariant(cfg).unwrap().ell, ell);
            let d = deformation_dims(cfg, 3).unwrap();
            prop_assert_eq!((d.h0_t1, d.h1_t1, d.dim_t2), (r - 1, r - 1, r - 1));
            prop_assert_eq!(h2_lower_bound(cfg, &result).unwrap(), r - 1);
        }
        let labels: Vec<String> = classify(&c).unwrap().labeling.iter().map(|i| i.0.clone()).collect();
        let expected: Vec<String> = (1..=r).map(|i| format!("E{i}")).collect();
        prop_assert_eq!(labels, expected);
    }
}
