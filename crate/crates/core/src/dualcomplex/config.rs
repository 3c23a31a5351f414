use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use super::DualComplexError;

/// Identifier of a component or curve. JSON accepts strings and integers;
/// integers are kept as their decimal text.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Id(pub String);

impl<'de> Deserialize<'de> for Id {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(i64),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Text(s) => Id(s),
            Raw::Number(n) => Id(n.to_string()),
        })
    }
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Id {
    fn from(s: &str) -> Self {
        Id(s.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    Rational,
    EllipticRuled,
    Other,
}

impl SurfaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceKind::Rational => "rational",
            SurfaceKind::EllipticRuled => "elliptic_ruled",
            SurfaceKind::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceComponent {
    pub id: Id,
    pub kind: SurfaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<u64>,
    /// Defaults to 0 for rational and 1 for elliptic ruled components.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h01: Option<u64>,
    /// `h0q[q] = h^{0,q}`, needed for ambient dimension above 3.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0q: Option<Vec<u64>>,
    /// Curves declared to make up `-K` of this component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anticanonical_boundary: Option<Vec<Id>>,
}

impl SurfaceComponent {
    /// Declared `h^{0,1}`, or the value forced by the kind.
    pub fn h01(&self) -> Option<u64> {
        self.h01.or(match self.kind {
            SurfaceKind::Rational => Some(0),
            SurfaceKind::EllipticRuled => Some(1),
            SurfaceKind::Other => self.h0q.as_ref().and_then(|h| h.get(1).copied()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleCurve {
    pub id: Id,
    pub between: [Id; 2],
    pub genus: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriplePoint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<Id>,
    pub components: [Id; 3],
    /// The three double curves through the point; required when some pair
    /// of its components meets in more than one curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curves: Option<[Id; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct D0Curve {
    pub id: Id,
    pub component: Id,
    pub genus: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meeting {
    pub double_curve: Id,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CCurve {
    pub id: Id,
    pub component: Id,
    #[serde(default)]
    pub meets: Vec<Meeting>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d0_curve: Option<OneOrMany<D0Curve>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c_curves: Vec<CCurve>,
}

impl MarkedData {
    /// The unique marked `D_0`; several candidates are an error.
    pub fn d0(&self) -> Result<Option<&D0Curve>, DualComplexError> {
        match &self.d0_curve {
            None => Ok(None),
            Some(OneOrMany::One(d)) => Ok(Some(d)),
            Some(OneOrMany::Many(v)) => match v.as_slice() {
                [] => Ok(None),
                [d] => Ok(Some(d)),
                _ => Err(DualComplexError::AmbiguousMarked(format!(
                    "{} candidate D0 curves",
                    v.len()
                ))),
            },
        }
    }

    fn d0_all(&self) -> Vec<&D0Curve> {
        match &self.d0_curve {
            None => Vec::new(),
            Some(OneOrMany::One(d)) => vec![d],
            Some(OneOrMany::Many(v)) => v.iter().collect(),
        }
    }
}

/// Combinatorial description of a simple normal crossings divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorConfiguration {
    pub components: Vec<SurfaceComponent>,
    #[serde(default)]
    pub double_curves: Vec<DoubleCurve>,
    #[serde(default)]
    pub triple_points: Vec<TriplePoint>,
    #[serde(default)]
    pub marked: MarkedData,
    /// Declared arithmetic genus of the anticanonical cycle, used by the
    /// `H^2` bound for the disk type.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pa_d: Option<u64>,
}

impl DivisorConfiguration {
    pub fn from_json(text: &str) -> Result<Self, DualComplexError> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| DualComplexError::Json(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn component(&self, id: &Id) -> Option<&SurfaceComponent> {
        self.components.iter().find(|c| &c.id == id)
    }

    pub fn double_curve(&self, id: &Id) -> Option<&DoubleCurve> {
        self.double_curves.iter().find(|d| &d.id == id)
    }

    /// Structural checks: unique ids, references resolve, genus and Hodge
    /// data agree with the declared kinds, triple points sit on curves.
    pub fn validate(&self) -> Result<(), DualComplexError> {
        let mut seen = HashSet::new();
        for c in &self.components {
            if !seen.insert(&c.id) {
                return Err(DualComplexError::DuplicateId(c.id.clone()));
            }
            let forced = match c.kind {
                SurfaceKind::Rational => Some(0),
                SurfaceKind::EllipticRuled => Some(1),
                SurfaceKind::Other => None,
            };
            let declared = c
                .h01
                .or_else(|| c.h0q.as_ref().and_then(|h| h.get(1).copied()));
            if let (Some(f), Some(d)) = (forced, declared) {
                if f != d {
                    return Err(DualComplexError::KindMismatch {
                        id: c.id.clone(),
                        reason: format!("{} surface must have h01 = {f}, got {d}", c.kind.as_str()),
                    });
                }
            }
            if let (Some(h), Some(q)) = (c.h01, c.h0q.as_ref().and_then(|h| h.get(1))) {
                if h != *q {
                    return Err(DualComplexError::KindMismatch {
                        id: c.id.clone(),
                        reason: format!("h01 = {h} disagrees with h0q[1] = {q}"),
                    });
                }
            }
        }
        let comp = |id: &Id, context: &str| -> Result<&SurfaceComponent, DualComplexError> {
            self.component(id)
                .ok_or_else(|| DualComplexError::UnknownComponent {
                    id: id.clone(),
                    context: context.to_string(),
                })
        };

        let mut curve_ids = HashSet::new();
        for d in &self.double_curves {
            if !curve_ids.insert(&d.id) || seen.contains(&d.id) {
                return Err(DualComplexError::DuplicateId(d.id.clone()));
            }
            let context = format!("double curve {}", d.id);
            let a = comp(&d.between[0], &context)?;
            let b = comp(&d.between[1], &context)?;
            if a.id == b.id {
                return Err(DualComplexError::SelfIntersection(d.id.clone()));
            }
            if d.genus > 1 {
                return Err(DualComplexError::InvalidGenus {
                    id: d.id.clone(),
                    genus: d.genus,
                });
            }
            if d.genus == 1 && (a.kind == SurfaceKind::Other || b.kind == SurfaceKind::Other) {
                return Err(DualComplexError::KindMismatch {
                    id: d.id.clone(),
                    reason: "genus 1 double curves must join rational or elliptic ruled components"
                        .into(),
                });
            }
        }

        for (k, t) in self.triple_points.iter().enumerate() {
            let name = t.id.as_ref().map_or_else(|| format!("#{k}"), Id::to_string);
            let context = format!("triple point {name}");
            for id in &t.components {
                comp(id, &context)?;
            }
            let [a, b, c] = &t.components;
            if a == b || b == c || a == c {
                return Err(DualComplexError::TriplePoint(format!(
                    "{context} repeats a component"
                )));
            }
            for (x, y) in [(a, b), (a, c), (b, c)] {
                if !self.double_curves.iter().any(|d| joins(d, x, y)) {
                    return Err(DualComplexError::TriplePoint(format!(
                        "{context}: {x} and {y} share no double curve"
                    )));
                }
            }
            if let Some(curves) = &t.curves {
                let mut pairs: Vec<(&Id, &Id)> = vec![(a, b), (a, c), (b, c)];
                for cid in curves {
                    let d =
                        self.double_curve(cid)
                            .ok_or_else(|| DualComplexError::UnknownCurve {
                                id: cid.clone(),
                                context: context.clone(),
                            })?;
                    let Some(pos) = pairs.iter().position(|(x, y)| joins(d, x, y)) else {
                        return Err(DualComplexError::TriplePoint(format!(
                            "{context}: curve {cid} does not join two of its components"
                        )));
                    };
                    pairs.remove(pos);
                }
            }
        }

        let mut marked_ids = HashSet::new();
        for d0 in self.marked.d0_all() {
            if !marked_ids.insert(&d0.id) || curve_ids.contains(&d0.id) || seen.contains(&d0.id) {
                return Err(DualComplexError::DuplicateId(d0.id.clone()));
            }
            comp(&d0.component, &format!("D0 curve {}", d0.id))?;
            if d0.genus > 1 {
                return Err(DualComplexError::InvalidGenus {
                    id: d0.id.clone(),
                    genus: d0.genus,
                });
            }
        }
        for c in &self.marked.c_curves {
            if !marked_ids.insert(&c.id) || curve_ids.contains(&c.id) || seen.contains(&c.id) {
                return Err(DualComplexError::DuplicateId(c.id.clone()));
            }
            let context = format!("C curve {}", c.id);
            comp(&c.component, &context)?;
            for m in &c.meets {
                let d = self.double_curve(&m.double_curve).ok_or_else(|| {
                    DualComplexError::UnknownCurve {
                        id: m.double_curve.clone(),
                        context: context.clone(),
                    }
                })?;
                if !d.between.contains(&c.component) {
                    return Err(DualComplexError::Marked(format!(
                        "{context} lies on {} but meets {}, which misses that component",
                        c.component, d.id
                    )));
                }
            }
        }

        for c in &self.components {
            for b in c.anticanonical_boundary.iter().flatten() {
                let known = curve_ids.contains(b) || marked_ids.contains(b);
                if !known {
                    return Err(DualComplexError::UnknownCurve {
                        id: b.clone(),
                        context: format!("anticanonical boundary of {}", c.id),
                    });
                }
            }
        }
        Ok(())
    }

    /// Copy with every component id passed through `rename`; curve ids are
    /// kept.
    pub fn relabeled<F: Fn(&Id) -> Id>(&self, rename: F) -> Self {
        let mut out = self.clone();
        for c in &mut out.components {
            c.id = rename(&c.id);
        }
        for d in &mut out.double_curves {
            d.between = [rename(&d.between[0]), rename(&d.between[1])];
        }
        for t in &mut out.triple_points {
            t.components = [
                rename(&t.components[0]),
                rename(&t.components[1]),
                rename(&t.components[2]),
            ];
        }
        match &mut out.marked.d0_curve {
            Some(OneOrMany::One(d)) => d.component = rename(&d.component),
            Some(OneOrMany::Many(v)) => v
                .iter_mut()
                .for_each(|d| d.component = rename(&d.component)),
            None => {}
        }
        for c in &mut out.marked.c_curves {
            c.component = rename(&c.component);
        }
        out
    }

    /// Double curves incident to each component id.
    pub(crate) fn curves_on(&self) -> HashMap<&Id, Vec<&Id>> {
        let mut out: HashMap<&Id, Vec<&Id>> = self
            .components
            .iter()
            .map(|c| (&c.id, Vec::new()))
            .collect();
        for d in &self.double_curves {
            for e in &d.between {
                out.get_mut(e).expect("validated").push(&d.id);
            }
        }
        out
    }
}

pub(crate) fn joins(d: &DoubleCurve, x: &Id, y: &Id) -> bool {
    (&d.between[0] == x && &d.between[1] == y) || (&d.between[0] == y && &d.between[1] == x)
}
