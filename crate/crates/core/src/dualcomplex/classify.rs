//! Clause-by-clause test of the three combinatorial types.
//!
//! Every clause is PASSED or FAILED from the incidence data alone, or
//! ASSUMED when it is a statement about line bundles or positivity that a
//! finite description cannot decide. Declared anticanonical boundaries are
//! compared with the sets each type requires; a component without a
//! declaration makes that comparison ASSUMED.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::complex::{build_dual_complex, DualComplex};
use super::config::{CCurve, D0Curve, DivisorConfiguration, Id, SurfaceKind};
use super::DualComplexError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "TYPE_II")]
    TypeII,
    #[serde(rename = "TYPE_III_1")]
    TypeIII1,
    #[serde(rename = "TYPE_III_2")]
    TypeIII2,
    #[serde(rename = "UNCLASSIFIED")]
    Unclassified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClauseStatus {
    Passed,
    Failed,
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    #[serde(rename = "type")]
    pub kind: Verdict,
    pub clause: String,
    pub status: ClauseStatus,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    /// Every evaluated clause of every type.
    pub clauses: Vec<Clause>,
    pub failed_clauses: Vec<Clause>,
    /// Component ids in the order `E_1, E_2, ...` of the winning type.
    pub labeling: Vec<Id>,
    pub diagnostics: Vec<String>,
}

struct Evaluation {
    clauses: Vec<Clause>,
    labeling: Vec<Id>,
    diagnostics: Vec<String>,
}

impl Evaluation {
    fn new() -> Self {
        Evaluation {
            clauses: Vec::new(),
            labeling: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn push(
        &mut self,
        kind: Verdict,
        clause: &str,
        status: ClauseStatus,
        reason: impl Into<String>,
    ) {
        self.clauses.push(Clause {
            kind,
            clause: clause.to_string(),
            status,
            reason: reason.into(),
        });
    }

    fn check(&mut self, kind: Verdict, clause: &str, failure: Option<String>, ok: &str) {
        match failure {
            None => self.push(kind, clause, ClauseStatus::Passed, ok),
            Some(why) => self.push(kind, clause, ClauseStatus::Failed, why),
        }
    }

    fn passes(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.status != ClauseStatus::Failed)
    }
}

pub fn classify(config: &DivisorConfiguration) -> Result<ClassificationResult, DualComplexError> {
    let cx = build_dual_complex(config)?;
    let d0 = config.marked.d0()?;
    let evals = [
        (Verdict::TypeII, type_ii(config, &cx, d0)),
        (Verdict::TypeIII1, type_iii_1(config, &cx)),
        (Verdict::TypeIII2, type_iii_2(config, &cx)),
    ];
    let winners: Vec<Verdict> = evals
        .iter()
        .filter(|(_, e)| e.passes())
        .map(|(v, _)| *v)
        .collect();
    if winners.len() > 1 {
        return Err(DualComplexError::AmbiguousClassification(
            winners.iter().map(|v| format!("{v:?}")).collect(),
        ));
    }
    let verdict = winners.first().copied().unwrap_or(Verdict::Unclassified);
    let mut clauses = Vec::new();
    let mut labeling = Vec::new();
    let mut diagnostics = Vec::new();
    for (v, e) in evals {
        if v == verdict {
            labeling = e.labeling;
            diagnostics = e.diagnostics;
        }
        clauses.extend(e.clauses);
    }
    let failed_clauses = clauses
        .iter()
        .filter(|c| c.status == ClauseStatus::Failed)
        .cloned()
        .collect();
    Ok(ClassificationResult {
        verdict,
        clauses,
        failed_clauses,
        labeling,
        diagnostics,
    })
}

fn kind_of(config: &DivisorConfiguration, id: &Id) -> SurfaceKind {
    config.component(id).expect("validated").kind
}

/// Compares declared anticanonical boundaries with `expected`.
fn anticanonical(
    ev: &mut Evaluation,
    kind: Verdict,
    clause: &str,
    config: &DivisorConfiguration,
    expected: &[(Id, BTreeSet<Id>)],
) {
    let mut undeclared = Vec::new();
    let mut mismatches = Vec::new();
    for (comp, want) in expected {
        match &config
            .component(comp)
            .expect("validated")
            .anticanonical_boundary
        {
            None => undeclared.push(comp.to_string()),
            Some(got) => {
                let got: BTreeSet<Id> = got.iter().cloned().collect();
                if &got != want {
                    mismatches.push(format!(
                        "{comp}: declared {{{}}}, expected {{{}}}",
                        join(&got),
                        join(want)
                    ));
                }
            }
        }
    }
    if !mismatches.is_empty() {
        ev.push(kind, clause, ClauseStatus::Failed, mismatches.join("; "));
    } else if !undeclared.is_empty() {
        ev.push(
            kind,
            clause,
            ClauseStatus::Assumed,
            format!(
                "no anticanonical boundary declared on {}",
                undeclared.join(", ")
            ),
        );
    } else {
        ev.push(
            kind,
            clause,
            ClauseStatus::Passed,
            "declared anticanonical boundaries match",
        );
    }
}

fn join(s: &BTreeSet<Id>) -> String {
    s.iter().map(Id::to_string).collect::<Vec<_>>().join(", ")
}

fn set<'a>(ids: impl IntoIterator<Item = &'a Id>) -> BTreeSet<Id> {
    ids.into_iter().cloned().collect()
}

fn type_ii(config: &DivisorConfiguration, cx: &DualComplex, d0: Option<&D0Curve>) -> Evaluation {
    let t = Verdict::TypeII;
    let mut ev = Evaluation::new();
    let r = cx.vertices.len();
    let n_rational = config
        .components
        .iter()
        .filter(|c| c.kind == SurfaceKind::Rational)
        .count();
    let n_elliptic = config
        .components
        .iter()
        .filter(|c| c.kind == SurfaceKind::EllipticRuled)
        .count();

    let mut order = cx.path_order().filter(|_| cx.triangles.is_empty());
    if let Some(o) = &mut order {
        let rational_at = |v: usize| kind_of(config, &cx.vertices[v]) == SurfaceKind::Rational;
        let last = *o.last().unwrap();
        let first = o[0];
        let d0_on = |v: usize| d0.is_some_and(|d| d.component == cx.vertices[v]);
        if !rational_at(last) && (rational_at(first) || d0_on(last)) {
            o.reverse();
        }
    }

    let kinds_ok = n_rational == 1 && n_elliptic == r - 1;
    let clause_i = if !kinds_ok {
        Some(format!(
            "need {} elliptic ruled and 1 rational component, found {n_elliptic} and {n_rational}",
            r - 1
        ))
    } else if let Some(o) = &order {
        (kind_of(config, &cx.vertices[*o.last().unwrap()]) != SurfaceKind::Rational)
            .then(|| "the rational component is not an end of the segment".to_string())
    } else {
        None
    };
    ev.check(
        t,
        "(i)",
        clause_i,
        "E_1..E_{r-1} elliptic ruled, E_r rational",
    );
    ev.push(
        t,
        "(i) -K_{E_r} nef and big",
        ClauseStatus::Assumed,
        "positivity is not combinatorial",
    );

    let clause_ii = if order.is_some() {
        None
    } else if !cx.triangles.is_empty() {
        Some(format!("{} triple points present", cx.triangles.len()))
    } else {
        Some("dual complex is not a line segment".into())
    };
    ev.check(
        t,
        "(ii)",
        clause_ii,
        "dual complex is a point or a line segment",
    );

    let bad_genus: Vec<String> = cx
        .edges
        .iter()
        .filter(|e| e.genus != 1)
        .map(|e| e.id.to_string())
        .collect();
    ev.check(
        t,
        "(iii)",
        (!bad_genus.is_empty())
            .then(|| format!("double curves of genus 0: {}", bad_genus.join(", "))),
        "every double curve is elliptic",
    );

    let e1 = order.as_ref().map(|o| cx.vertices[o[0]].clone());
    let clause_iv = match (d0, &e1) {
        (None, _) => Some("no marked D0 curve".to_string()),
        (Some(d), _) if d.genus != 1 => Some(format!("D0 curve {} has genus {}", d.id, d.genus)),
        (Some(_), None) => Some("E_1 is undefined without a segment".to_string()),
        (Some(d), Some(e1)) if &d.component != e1 => {
            Some(format!("D0 lies on {}, not on E_1 = {e1}", d.component))
        }
        _ => None,
    };
    ev.check(t, "(iv)", clause_iv, "elliptic D0 marked on E_1");

    if let (Some(o), Some(d)) = (&order, d0) {
        let link: Vec<Id> = o
            .windows(2)
            .map(|w| {
                cx.edges[cx.edge_between(w[0], w[1]).expect("simple path")]
                    .id
                    .clone()
            })
            .collect();
        let expected: Vec<(Id, BTreeSet<Id>)> = (0..r)
            .map(|i| {
                let mut s = BTreeSet::new();
                if i == 0 {
                    s.insert(d.id.clone());
                } else {
                    s.insert(link[i - 1].clone());
                }
                if i + 1 < r {
                    s.insert(link[i].clone());
                }
                (cx.vertices[o[i]].clone(), s)
            })
            .collect();
        anticanonical(&mut ev, t, "(iv) K_{E_i}", config, &expected);
        ev.labeling = o.iter().map(|&v| cx.vertices[v].clone()).collect();
    }
    ev.push(
        t,
        "(v)",
        ClauseStatus::Assumed,
        "O_E(E) = omega_E = O_E(-D0) is a line bundle statement",
    );
    ev
}

fn c_curves_on<'a>(config: &'a DivisorConfiguration, comp: &Id) -> Vec<&'a CCurve> {
    config
        .marked
        .c_curves
        .iter()
        .filter(|c| &c.component == comp)
        .collect()
}

/// `meets` as a map from double curve to total multiplicity.
fn meetings(c: &CCurve) -> HashMap<&Id, u32> {
    let mut m = HashMap::new();
    for x in &c.meets {
        *m.entry(&x.double_curve).or_insert(0) += x.multiplicity;
    }
    m
}

fn type_iii_1(config: &DivisorConfiguration, cx: &DualComplex) -> Evaluation {
    let t = Verdict::TypeIII1;
    let mut ev = Evaluation::new();
    let r = cx.vertices.len();
    let non_rational: Vec<String> = config
        .components
        .iter()
        .filter(|c| c.kind != SurfaceKind::Rational)
        .map(|c| c.id.to_string())
        .collect();
    ev.check(
        t,
        "(i)",
        (!non_rational.is_empty()).then(|| format!("not rational: {}", non_rational.join(", "))),
        "all components rational",
    );

    let order = cx.path_order().filter(|_| cx.triangles.is_empty());
    ev.check(
        t,
        "(ii)",
        order
            .is_none()
            .then(|| "dual complex is not a point or a line segment".to_string()),
        "dual complex is a point or a line segment",
    );

    let Some(order) = order else {
        ev.push(
            t,
            "(iii)",
            ClauseStatus::Failed,
            "needs a segment to label the components",
        );
        ev.push(
            t,
            "(iv)",
            ClauseStatus::Assumed,
            "O_E(E) = omega_E = O_E(-C)",
        );
        return ev;
    };
    let ids: Vec<Id> = order.iter().map(|&v| cx.vertices[v].clone()).collect();

    if r == 1 {
        let cs = c_curves_on(config, &ids[0]);
        ev.check(
            t,
            "(iv) C on E_1",
            cs.is_empty()
                .then(|| "no C curve marked on the single component".to_string()),
            "anticanonical cycle C marked",
        );
        if !cs.is_empty() {
            anticanonical(
                &mut ev,
                t,
                "(iv) K_{E_1}",
                config,
                &[(ids[0].clone(), set(cs.iter().map(|c| &c.id)))],
            );
        }
    } else {
        let link: Vec<Id> = order
            .windows(2)
            .map(|w| {
                cx.edges[cx.edge_between(w[0], w[1]).expect("simple path")]
                    .id
                    .clone()
            })
            .collect();
        let bad_genus: Vec<String> = cx
            .edges
            .iter()
            .filter(|e| e.genus != 0)
            .map(|e| e.id.to_string())
            .collect();
        ev.check(
            t,
            "(iii) D_{i,i+1}",
            (!bad_genus.is_empty())
                .then(|| format!("double curves of positive genus: {}", bad_genus.join(", "))),
            "every double curve is rational",
        );

        let mut problems = Vec::new();
        let mut expected = Vec::new();
        for (i, comp) in ids.iter().enumerate() {
            let cs = c_curves_on(config, comp);
            let mut boundary = BTreeSet::new();
            if i > 0 {
                boundary.insert(link[i - 1].clone());
            }
            if i + 1 < r {
                boundary.insert(link[i].clone());
            }
            if i == 0 || i + 1 == r {
                let d = if i == 0 { &link[0] } else { &link[r - 2] };
                let want: HashMap<&Id, u32> = [(d, 2)].into_iter().collect();
                if cs.len() != 1 || meetings(cs[0]) != want {
                    problems.push(format!(
                        "{comp} needs one C curve meeting {d} with multiplicity 2"
                    ));
                }
            } else {
                let want: HashMap<&Id, u32> =
                    [(&link[i - 1], 1), (&link[i], 1)].into_iter().collect();
                if cs.len() != 2 || cs.iter().any(|c| meetings(c) != want) {
                    problems.push(format!(
                        "{comp} needs two C curves each meeting {} and {} once",
                        link[i - 1],
                        link[i]
                    ));
                }
            }
            boundary.extend(cs.iter().map(|c| c.id.clone()));
            expected.push((comp.clone(), boundary));
        }
        ev.check(
            t,
            "(iii) C curves",
            (!problems.is_empty()).then(|| problems.join("; ")),
            "C curves meet the double curves as required",
        );
        anticanonical(&mut ev, t, "(iii) K_{E_i}", config, &expected);
        ev.push(
            t,
            "(iii) C Cartier, self-intersection 0",
            ClauseStatus::Assumed,
            "intersection numbers on the surfaces are not modeled",
        );
    }
    ev.push(
        t,
        "(iv)",
        ClauseStatus::Assumed,
        "O_E(E) = omega_E = O_E(-C)",
    );
    ev.labeling = ids;
    ev
}

fn type_iii_2(config: &DivisorConfiguration, cx: &DualComplex) -> Evaluation {
    let t = Verdict::TypeIII2;
    let mut ev = Evaluation::new();
    let non_rational: Vec<String> = config
        .components
        .iter()
        .filter(|c| c.kind != SurfaceKind::Rational)
        .map(|c| c.id.to_string())
        .collect();
    ev.check(
        t,
        "(i)",
        (!non_rational.is_empty()).then(|| format!("not rational: {}", non_rational.join(", "))),
        "all components rational",
    );

    // distinguished components are those carrying C curves
    let dist: Vec<usize> = (0..cx.vertices.len())
        .filter(|&v| !c_curves_on(config, &cx.vertices[v]).is_empty())
        .collect();
    let r = dist.len();
    let cycle = distinguished_cycle(cx, &dist);
    let clause_ii = if r < 2 {
        Some(format!("{r} components carry C curves; need at least 2"))
    } else if cycle.is_none() {
        Some("components carrying C curves do not form a cycle".to_string())
    } else {
        None
    };
    ev.check(
        t,
        "(ii) cycle",
        clause_ii,
        "distinguished components form a cycle",
    );

    if let Some(cycle) = &cycle {
        if r == 2 {
            ev.diagnostics.push(
                "r = 2: the boundary cycle is two components joined by two double curves".into(),
            );
        }
        let mut problems = Vec::new();
        for (i, &v) in cycle.iter().enumerate() {
            let comp = &cx.vertices[v];
            let cs = c_curves_on(config, comp);
            if cs.len() != 1 {
                problems.push(format!(
                    "{comp} carries {} C curves, expected one chain",
                    cs.len()
                ));
                continue;
            }
            let next = cycle[(i + 1) % r];
            let prev = cycle[(i + r - 1) % r];
            let allowed: Vec<usize> = cx
                .edges_between(v, next)
                .into_iter()
                .chain(cx.edges_between(v, prev))
                .collect();
            let m = meetings(cs[0]);
            for (d, mult) in &m {
                let e = cx
                    .edges
                    .iter()
                    .position(|e| &e.id == *d)
                    .expect("validated");
                if !allowed.contains(&e) {
                    problems.push(format!(
                        "{} meets {d}, which does not join neighbouring boundary components",
                        cs[0].id
                    ));
                } else if *mult != 1 {
                    problems.push(format!("{} meets {d} with multiplicity {mult}", cs[0].id));
                }
            }
            for nb in [next, prev] {
                if !cx
                    .edges_between(v, nb)
                    .iter()
                    .any(|e| m.contains_key(&cx.edges[*e].id))
                {
                    problems.push(format!("{} does not reach {}", cs[0].id, cx.vertices[nb]));
                }
                // C_i and C_j cut the shared curves in the same points
                let other = c_curves_on(config, &cx.vertices[nb]);
                if let [oc] = other.as_slice() {
                    let om = meetings(oc);
                    for e in cx.edges_between(v, nb) {
                        let id = &cx.edges[e].id;
                        if m.contains_key(id) != om.contains_key(id) {
                            problems
                                .push(format!("{} and {} meet {id} differently", cs[0].id, oc.id));
                        }
                    }
                }
            }
        }
        problems.dedup();
        ev.check(
            t,
            "(ii) C curves",
            (!problems.is_empty()).then(|| problems.join("; ")),
            "each C_i meets exactly the curves towards its two neighbours, once each",
        );
        ev.labeling = cycle
            .iter()
            .chain(
                (0..cx.vertices.len())
                    .filter(|v| !cycle.contains(v))
                    .collect::<Vec<_>>()
                    .iter(),
            )
            .map(|&v| cx.vertices[v].clone())
            .collect();
    }

    let bad_genus: Vec<String> = cx
        .edges
        .iter()
        .filter(|e| e.genus != 0)
        .map(|e| e.id.to_string())
        .collect();
    ev.check(
        t,
        "(iii) D_i rational",
        (!bad_genus.is_empty())
            .then(|| format!("double curves of positive genus: {}", bad_genus.join(", "))),
        "every double curve is rational",
    );
    let on = config.curves_on();
    let expected: Vec<(Id, BTreeSet<Id>)> = config
        .components
        .iter()
        .map(|c| {
            let mut s = set(on[&c.id].iter().copied());
            s.extend(c_curves_on(config, &c.id).iter().map(|x| x.id.clone()));
            (c.id.clone(), s)
        })
        .collect();
    anticanonical(&mut ev, t, "(iii) K_{E_i}", config, &expected);
    ev.push(
        t,
        "(iii) cycles",
        ClauseStatus::Assumed,
        "C_i + D_i forming a cycle is not modeled",
    );

    let clause_iv = match cx.disk_boundary() {
        Err(why) => Some(format!("not a triangulated disk: {why}")),
        Ok(b) => {
            let boundary: BTreeSet<usize> = b.vertices.iter().copied().collect();
            let wanted: BTreeSet<usize> = dist.iter().copied().collect();
            (boundary != wanted || b.vertices.len() != r).then(|| {
                let names = |s: &BTreeSet<usize>| {
                    s.iter()
                        .map(|&v| cx.vertices[v].to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                format!(
                    "boundary vertices {{{}}} differ from the components carrying C curves {{{}}}",
                    names(&boundary),
                    names(&wanted)
                )
            })
        }
    };
    ev.check(
        t,
        "(iv)",
        clause_iv,
        "triangulated disk with the distinguished components on the boundary",
    );
    ev.push(
        t,
        "(v)",
        ClauseStatus::Assumed,
        "O_E(E) = omega_E = O_E(-sum C_i)",
    );
    ev
}

/// Cyclic order of `dist` if the components meet only cyclic neighbours
/// among themselves and form one cycle. For two components, at least two
/// double curves must join them.
fn distinguished_cycle(cx: &DualComplex, dist: &[usize]) -> Option<Vec<usize>> {
    let r = dist.len();
    if r < 2 {
        return None;
    }
    if r == 2 {
        return (cx.edges_between(dist[0], dist[1]).len() >= 2).then(|| dist.to_vec());
    }
    let nbrs = |v: usize| -> Vec<usize> {
        dist.iter()
            .copied()
            .filter(|&u| u != v && !cx.edges_between(u, v).is_empty())
            .collect()
    };
    if dist.iter().any(|&v| nbrs(v).len() != 2) {
        return None;
    }
    let mut order = vec![dist[0]];
    let mut prev = None;
    loop {
        let v = *order.last().unwrap();
        let next = nbrs(v).into_iter().find(|&u| Some(u) != prev)?;
        if next == dist[0] {
            break;
        }
        if order.contains(&next) {
            return None;
        }
        prev = Some(v);
        order.push(next);
    }
    (order.len() == r).then_some(order)
}
