//! Acceptance criteria, one line of output per criterion. Runs without the
//! libtest harness so that the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cdv_core::corpus::{parse_corpus, Task, BUNDLED_CORPUS};
use cdv_core::defspace::{DefSpaceMap, PassFail, Sign};
use cdv_core::dualcomplex::{
    classify, deformation_dims, link_invariant, semistable_ell_check, DivisorConfiguration, Id, SemistableKind,
    SurfaceKind, Verdict,
};
use cdv_core::localalg::{
    milnor_number, stabilized_oracle_dim, tjurina_number, LocalIdeal, QuotientDimension,
};
use cdv_core::polycore::{parse_polynomial, rat, Ambient, Polynomial, Rational};
use cdv_core::smallres::{
    is_ordinary_double_point, plane_ambient, raw_invariants, threefold_weights, CompoundCA, Family,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn threefold(s: &str) -> Polynomial {
    let a = Ambient::new(&["x", "y", "z", "w"]).unwrap();
    parse_polynomial(s, &a).unwrap()
}

fn plane(s: &str) -> Polynomial {
    parse_polynomial(s, &plane_ambient()).unwrap()
}

fn config(name: &str) -> DivisorConfiguration {
    let path = format!("{}/../../data/configs/{name}.json", env!("CARGO_MANIFEST_DIR"));
    DivisorConfiguration::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn tau_regression() -> Outcome {
    let mut cases: Vec<(String, u64)> = Vec::new();
    for n in 1..=4u64 {
        cases.push((format!("x^2+y^2+z^2+w^{}", 2 * n), 2 * n - 1));
    }
    for n in 3..=5u64 {
        cases.push((format!("x^2+y^2+z^{n}-w^{n}"), (n - 1) * (n - 1)));
    }
    cases.push(("x^3+y^3+z^3+w^3".into(), 16));
    cases.push(("x^3+y^3+z^3+w^3+x*y*z*w".into(), 15));
    cases.push(("x^2+y^2+z^5-w^5+z^3*w^3".into(), 15));
    let mut slowest = Duration::ZERO;
    for (f, want) in &cases {
        let start = Instant::now();
        let got = tjurina_number(&threefold(f)).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure(got == QuotientDimension::Finite(*want), format!("tau({f}) = {got:?}, expected {want}"))?;
        ensure(took < Duration::from_secs(10), format!("tau({f}) took {took:?}"))?;
    }
    Ok(format!("{} germs, slowest {:.2?}", cases.len(), slowest))
}

/// Threefold germs of the bundled corpus with the ideal each entry asks for.
fn corpus_germs() -> Vec<(String, LocalIdeal, QuotientDimension)> {
    let mut out = Vec::new();
    for entry in parse_corpus(BUNDLED_CORPUS).unwrap() {
        let (f, milnor) = match &entry.task {
            Task::Tjurina { f, vars: None } => (threefold(f), false),
            Task::Milnor { f, vars: None } => (threefold(f), true),
            Task::Smallres { germ } => (CompoundCA::from_spec(germ).unwrap().threefold_equation(), false),
            _ => continue,
        };
        let (ideal, dim) = if milnor {
            (LocalIdeal::jacobian(&f).unwrap(), milnor_number(&f).unwrap())
        } else {
            (LocalIdeal::tjurina(&f).unwrap(), tjurina_number(&f).unwrap())
        };
        out.push((entry.id, ideal, dim));
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let germs = corpus_germs();
    for (id, ideal, dim) in &germs {
        let stable = stabilized_oracle_dim(ideal, 24).ok_or(format!("{id}: oracle did not stabilize"))?;
        ensure(
            *dim == QuotientDimension::Finite(stable.dimension),
            format!("{id}: standard basis {dim:?}, oracle {} at cutoff {}", stable.dimension, stable.cutoff),
        )?;
    }
    Ok(format!("{} corpus germs agree with the truncated oracle", germs.len()))
}

fn corpus_smallres() -> Vec<(String, CompoundCA)> {
    parse_corpus(BUNDLED_CORPUS)
        .unwrap()
        .into_iter()
        .filter_map(|e| match &e.task {
            Task::Smallres { germ } => Some((e.id.clone(), CompoundCA::from_spec(germ).unwrap())),
            _ => None,
        })
        .collect()
}

fn invariant_package() -> Outcome {
    let lines = CompoundCA::new(plane("z^5-w^5"), Family::DistinctLines(5), None, None).unwrap();
    let a1 = CompoundCA::new(plane("z^2+w^6"), Family::A1Times(3), None, None).unwrap();
    let odp = CompoundCA::new(plane("z^2+w^2"), Family::A1Times(1), None, None).unwrap();
    let l = raw_invariants(&lines).map_err(|e| e.to_string())?;
    ensure((l.r, l.delta, l.b, l.a) == (4, 10, 6, 0), format!("lines: {l:?}"))?;
    ensure(l.b - l.a == 5 * 4 / 2 - 4, "lines: b - a != (n-1)(n-2)/2")?;
    let s = raw_invariants(&a1).map_err(|e| e.to_string())?;
    ensure((s.r, s.delta, s.b, s.a) == (1, 3, 2, 0), format!("a1: {s:?}"))?;
    ensure(s.b - s.a == 3 - 1, "a1: b - a != n - 1")?;
    let o = raw_invariants(&odp).map_err(|e| e.to_string())?;
    ensure(o.b == 0 && is_ordinary_double_point(&o).map_err(|e| e.to_string())?, "odp not detected")?;
    let mut all = corpus_smallres();
    all.extend([("lines".into(), lines), ("a1".into(), a1), ("odp".into(), odp)]);
    for (id, germ) in &all {
        let inv = raw_invariants(germ).map_err(|e| e.to_string())?;
        let (r, tau, delta, b, a) = (inv.r as i64, inv.tau as i64, inv.delta as i64, inv.b, inv.a);
        ensure(delta == b + r, format!("{id}: delta != b + r"))?;
        ensure(tau == 2 * b - a + r, format!("{id}: tau != 2b - a + r"))?;
        ensure(b + r <= tau && tau <= 2 * b + r, format!("{id}: b + r <= tau <= 2b + r fails"))?;
        ensure(
            tau == inv.du_bois_b11 + inv.du_bois_b21 + inv.ell21 as i64,
            format!("{id}: tau != b11 + b21 + l21"),
        )?;
    }
    Ok(format!("worked examples match, relations hold on {} germs", all.len()))
}

fn quasi_homogeneity() -> Outcome {
    let mut germs = corpus_smallres();
    for t in [1, 2] {
        let g = plane(&format!("z^5-w^5+{t}*z^3*w^3"));
        germs.push((format!("deformed t={t}"), CompoundCA::new(g, Family::Custom, Some(5), Some(4)).unwrap()));
    }
    let mut deformed = 0;
    for (id, germ) in &germs {
        let inv = raw_invariants(germ).map_err(|e| e.to_string())?;
        let weights = threefold_weights(germ);
        ensure((inv.a == 0) == weights.is_some(), format!("{id}: a = {} but weights {weights:?}", inv.a))?;
        if weights.is_none() {
            ensure(inv.a == 1, format!("{id}: deformed germ has a = {}", inv.a))?;
            deformed += 1;
        }
    }
    ensure(deformed >= 2, "fewer than two deformed germs")?;
    Ok(format!("{} germs, {deformed} without weights", germs.len()))
}

fn type_ii_chain(b2: &[u64]) -> DivisorConfiguration {
    let r = b2.len();
    let link = |i: usize| format!("D{i}");
    let components: Vec<_> = (1..=r)
        .map(|i| {
            let mut boundary = vec![if i == 1 { "D0".to_string() } else { link(i - 1) }];
            if i < r {
                boundary.push(link(i));
            }
            json!({"id": format!("E{i}"), "kind": if i == r { "rational" } else { "elliptic_ruled" },
                   "b2": b2[i - 1], "anticanonical_boundary": boundary})
        })
        .collect();
    let curves: Vec<_> = (1..r)
        .map(|i| json!({"id": link(i), "between": [format!("E{i}"), format!("E{}", i + 1)], "genus": 1}))
        .collect();
    let text = json!({"components": components, "double_curves": curves,
                      "marked": {"d0_curve": {"id": "D0", "component": "E1", "genus": 1}}});
    DivisorConfiguration::from_json(&text.to_string()).unwrap()
}

fn link_invariant_checks() -> Outcome {
    let cubic = config("cubic_cone");
    let ell = link_invariant(&cubic).map_err(|e| e.to_string())?.ell;
    ensure(ell == 6, format!("cubic cone ell = {ell}"))?;
    let check = semistable_ell_check(&cubic, SemistableKind::SimpleElliptic { m: 3 }).map_err(|e| e.to_string())?;
    ensure(check.pass, "cubic cone fails SIMPLE_ELLIPTIC(3)")?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let b2: Vec<u64> = (0..rng.gen_range(1..=8)).map(|_| rng.gen_range(1..=12)).collect();
        let c = type_ii_chain(&b2);
        let want = b2.iter().map(|&b| b as i64 - 1).sum::<i64>() - (b2.len() as i64 - 1);
        let got = link_invariant(&c).map_err(|e| e.to_string())?.ell;
        ensure(got == want, format!("chain {b2:?}: ell = {got}, expected {want}"))?;
    }
    Ok("cubic cone ell = 6, 100 random chains".into())
}

fn classifier() -> Outcome {
    let canonical = [
        ("cubic_cone", Verdict::TypeII),
        ("type_ii_chain", Verdict::TypeII),
        ("type_iii1_segment", Verdict::TypeIII1),
        ("type_iii2_disk", Verdict::TypeIII2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, want) in canonical {
        let c = config(name);
        let got = classify(&c).map_err(|e| e.to_string())?.verdict;
        ensure(got == want, format!("{name}: {got:?}, expected {want:?}"))?;
        for k in 0..100 {
            let mut s = c.relabeled(|id| Id(format!("v{k}_{id}")));
            s.components.shuffle(&mut rng);
            s.double_curves.shuffle(&mut rng);
            s.triple_points.shuffle(&mut rng);
            let got = classify(&s).map_err(|e| e.to_string())?.verdict;
            ensure(got == want, format!("{name} shuffle {k}: {got:?}"))?;
        }
        let d = deformation_dims(&c, 3).map_err(|e| e.to_string())?;
        let elliptic = c.components.iter().filter(|s| s.kind == SurfaceKind::EllipticRuled).count() as u64;
        let r = c.components.len() as u64;
        ensure(
            d.h0_t1 == elliptic && d.h1_t1 == r - 1 && d.dim_t2 == r - 1,
            format!("{name}: deformation dims {d:?}"),
        )?;
    }
    Ok("four verdicts, 400 shuffles, deformation dims".into())
}

fn symbolic_identities() -> Outcome {
    let start = Instant::now();
    let mut signs = Vec::new();
    for n in 2..=8 {
        let m = DefSpaceMap::build(n).map_err(|e| e.to_string())?;
        ensure(m.verify_factor_identity(), format!("n = {n}: factor identity"))?;
        let jac = m.jacobian_identity();
        ensure(jac.holds, format!("n = {n}: jacobian identity"))?;
        signs.push(format!("{n}:{}", if jac.sign == Some(Sign::Plus) { "+" } else { "-" }));
        ensure(m.ramification_check(8, n as u64).holds(), format!("n = {n}: ramification"))?;
        ensure(m.composition_residues().iter().all(Polynomial::is_zero), format!("n = {n}: inverse composition"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(30), format!("took {took:?}"))?;
    Ok(format!("n = 2..8 in {took:.2?}, signs {}", signs.join(" ")))
}

fn fiber_degree() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut generic = 0;
    for n in 2..=6 {
        let m = DefSpaceMap::build(n).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            // a split polynomial half the time, so that rational preimages occur
            let b: Vec<Rational> = if rng.gen_bool(0.5) {
                let mut roots: Vec<Rational> = (0..n - 1).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
                let sum: Rational = roots.iter().sum();
                roots.push(-sum);
                let lambda = roots[0].clone();
                let mut q = vec![rat(1, 1)];
                for r in &roots[1..] {
                    let mut next = vec![rat(0, 1); q.len() + 1];
                    for (i, a) in q.iter().enumerate() {
                        next[i + 1] += a;
                        next[i] -= a * r;
                    }
                    q = next;
                }
                // Q has leading 1 then lambda; the t-slots are the lower coefficients
                let t: Vec<Rational> = (0..n - 2).rev().map(|i| q[i].clone()).collect();
                m.phi_at(&lambda, &t)
            } else {
                (0..n - 1).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect()
            };
            let fiber = m.fiber_count(&b).map_err(|e| e.to_string())?;
            ensure(
                (fiber.count == n) == fiber.discriminant_nonzero,
                format!("n = {n}, b = {b:?}: count {} vs discriminant", fiber.count),
            )?;
            if fiber.count == n {
                generic += 1;
            }
            for p in &fiber.points {
                ensure(m.phi_at(&p.lambda, &p.t) == b, format!("n = {n}, b = {b:?}: preimage does not map back"))?;
            }
        }
    }
    Ok(format!("500 points, {generic} generic fibers"))
}

fn with_term_sign_flipped(p: &Polynomial, k: usize) -> Polynomial {
    Polynomial::from_terms(
        p.ambient(),
        p.terms().enumerate().map(|(i, (m, c))| (m.clone(), if i == k { -c.clone() } else { c.clone() })),
    )
}

fn mutation_sensitivity() -> Outcome {
    let mut mutants = 0;
    for n in 2..=5 {
        let m = DefSpaceMap::build(n).map_err(|e| e.to_string())?;
        for i in 0..m.phi().len() {
            for k in 0..m.phi()[i].terms().count() {
                let bad = m.with_phi(i, with_term_sign_flipped(&m.phi()[i], k)).map_err(|e| e.to_string())?;
                ensure(!bad.verify_factor_identity(), format!("n = {n}: phi[{i}] term {k} flip not caught"))?;
                // P'(w) never involves b_0, so only the transcript as a whole must fail
                ensure(
                    bad.transcript(4, 1).identity == PassFail::Fail,
                    format!("n = {n}: phi[{i}] term {k} transcript"),
                )?;
                mutants += 1;
            }
        }
        for k in 0..m.q().terms().count() {
            let bad = m.with_q(with_term_sign_flipped(m.q(), k)).map_err(|e| e.to_string())?;
            ensure(!bad.verify_factor_identity(), format!("n = {n}: Q term {k} flip not caught"))?;
            ensure(!bad.ramification_check(4, 1).holds(), format!("n = {n}: Q term {k} ramification"))?;
            ensure(!bad.jacobian_identity().holds, format!("n = {n}: Q term {k} jacobian"))?;
            mutants += 1;
        }
    }
    Ok(format!("{mutants} single-sign mutants rejected"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Tjurina regression", tau_regression),
        ("oracle equivalence", oracle_equivalence),
        ("invariant package", invariant_package),
        ("quasi-homogeneity iff a = 0", quasi_homogeneity),
        ("link invariant", link_invariant_checks),
        ("classifier", classifier),
        ("symbolic identities", symbolic_identities),
        ("fiber degree", fiber_degree),
        ("mutation sensitivity", mutation_sensitivity),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
