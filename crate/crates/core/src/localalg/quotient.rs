use std::fmt;

use serde::{Serialize, Serializer};

use crate::polycore::Monomial;

/// Dimension of a quotient of the local ring; `Infinite` for ideals that are
/// not zero-dimensional at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDimension::Finite(n) => Some(n),
            QuotientDimension::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, QuotientDimension::Finite(_))
    }
}

impl fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDimension::Finite(n) => write!(f, "{n}"),
            QuotientDimension::Infinite => write!(f, "infinite"),
        }
    }
}

/// Serialized as a number, or the string `"infinite"`.
impl Serialize for QuotientDimension {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            QuotientDimension::Finite(n) => s.serialize_u64(*n),
            QuotientDimension::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Monomials outside the ideal generated by `leads`, or `None` when that
/// set is infinite (some variable has no pure power among `leads`).
pub(crate) fn standard_monomials(leads: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    if leads.iter().any(Monomial::is_one) {
        return Some(Vec::new());
    }
    let mut bounds = Vec::with_capacity(nvars);
    for v in 0..nvars {
        let pure = leads
            .iter()
            .filter(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| i == v || e == 0)
            })
            .map(|m| m.exponent(v))
            .min()?;
        bounds.push(pure);
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    collect(leads, &bounds, 0, &mut current, &mut out);
    Some(out)
}

fn collect(
    leads: &[Monomial],
    bounds: &[u32],
    var: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if var == bounds.len() {
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in 0..bounds[var] {
        current[var] = e;
        // the complement of a monomial ideal is closed under division, so
        // the first exponent that lands in the ideal ends this branch
        let probe = Monomial::new(current.clone());
        if leads.iter().any(|l| l.divides(&probe)) {
            break;
        }
        collect(leads, bounds, var + 1, current, out);
    }
    current[var] = 0;
}

/// Colength of the monomial ideal generated by `leads` in `nvars` variables.
pub fn monomial_quotient_dim(leads: &[Monomial], nvars: usize) -> QuotientDimension {
    match standard_monomials(leads, nvars) {
        Some(s) => QuotientDimension::Finite(s.len() as u64),
        None => QuotientDimension::Infinite,
    }
}
