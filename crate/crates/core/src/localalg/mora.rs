//! Standard bases in the localization at the origin under a local degree
//! ordering.
//!
//! The basis is computed modulo `m^(N+1)` for growing `N`. There every
//! reduction step strictly lowers the leading monomial among the finitely
//! many monomials of degree at most `N`, so plain reduction terminates and
//! Mora's ecart bookkeeping is not needed. The leading ideal of
//! `I + m^(N+1)` agrees with that of `I` up to degree `N`, so once its
//! standard monomials all sit below degree `N` the answer is exact. If `I`
//! has finite colength it is at most `d^n` for generators of degree at most
//! `d` in `n` variables, hence `m^(d^n)` lies in `I`; failing to certify at
//! `N = d^n` proves the colength infinite.
//!
//! Once the leading ideal of the partial basis has finite colength with
//! highest standard-monomial degree `D < N`, every monomial of degree `D + 1`
//! lies in `I` (Nakayama), so the working bound drops to `D`.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::lazard;
use super::order::LPoly;
use super::quotient::standard_monomials;
use super::{LocalIdeal, StandardBasis};
use crate::polycore::{Monomial, Rational};

pub(crate) struct MoraEngine {
    nvars: usize,
    basis: Vec<LPoly>,
    degree_bound: u32,
}

impl MoraEngine {
    /// Engine working modulo `m^(cutoff+1)`.
    pub fn truncated(nvars: usize, cutoff: u32) -> Self {
        MoraEngine {
            nvars,
            basis: Vec::new(),
            degree_bound: cutoff,
        }
    }

    /// Engine over a finished basis: modulo `m^(cutoff+1)` for a basis of
    /// infinite colength, otherwise above the top standard degree.
    pub fn with_basis(nvars: usize, basis: Vec<LPoly>, cutoff: Option<u32>) -> Self {
        let leads: Vec<Monomial> = basis.iter().map(|g| g.lm().clone()).collect();
        let degree_bound = cutoff
            .or_else(|| top_standard_degree(&leads, nvars))
            .expect("a certified basis has finite colength");
        MoraEngine {
            nvars,
            basis,
            degree_bound,
        }
    }

    /// Reduces the leading term of `h` until no basis lead divides it.
    pub fn normal_form(&self, mut h: LPoly) -> LPoly {
        h.truncate(self.degree_bound);
        while !h.is_zero() {
            let lm = h.lm().clone();
            let Some(g) = self
                .basis
                .iter()
                .filter(|g| g.lm().divides(&lm))
                .min_by_key(|g| g.terms.len())
            else {
                break;
            };
            let shift = lm.div(g.lm()).expect("divisibility checked");
            let coef: Rational = h.lc() / g.lc();
            h = h.sub_scaled(g, &shift, &coef);
            h.truncate(self.degree_bound);
        }
        h
    }

    fn spoly(&self, i: usize, j: usize) -> LPoly {
        let (f, g) = (&self.basis[i], &self.basis[j]);
        let lcm = f.lm().lcm(g.lm());
        let sf = lcm.div(f.lm()).unwrap();
        let sg = lcm.div(g.lm()).unwrap();
        // both basis elements are monic
        let zero = LPoly { terms: Vec::new() };
        let fpart = zero.sub_scaled(f, &sf, &-Rational::from_integer(1.into()));
        fpart.sub_scaled(g, &sg, &Rational::from_integer(1.into()))
    }

    fn refresh_degree_bound(&mut self) {
        let leads: Vec<Monomial> = self.basis.iter().map(|g| g.lm().clone()).collect();
        if let Some(d) = top_standard_degree(&leads, self.nvars) {
            if d < self.degree_bound {
                self.degree_bound = d;
                for g in &mut self.basis {
                    g.truncate_tail(d);
                }
            }
        }
    }

    pub fn run(mut self, generators: Vec<LPoly>) -> Vec<LPoly> {
        let mut pending: Vec<LPoly> = generators;
        let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
        loop {
            let next = if let Some(h) = pending.pop() {
                Some(h)
            } else if let Some(&key) = pairs.iter().next() {
                pairs.remove(&key);
                let (_, i, j) = key;
                if self.basis[i].lm().is_coprime(self.basis[j].lm()) {
                    continue;
                }
                Some(self.spoly(i, j))
            } else {
                None
            };
            let Some(h) = next else { break };
            let mut h = self.normal_form(h);
            if h.is_zero() {
                continue;
            }
            h.make_monic();
            let idx = self.basis.len();
            for (i, g) in self.basis.iter().enumerate() {
                let key = g.lm().lcm(h.lm()).degree();
                pairs.insert((key, i, idx));
            }
            self.basis.push(h);
            self.refresh_degree_bound();
        }
        minimize(self.basis)
    }
}

/// Keeps one element per minimal leading monomial.
pub(crate) fn minimize(basis: Vec<LPoly>) -> Vec<LPoly> {
    let mut keep: Vec<LPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, other)| {
            j != i && other.lm().divides(g.lm()) && (other.lm() != g.lm() || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep
}

fn top_standard_degree(leads: &[Monomial], nvars: usize) -> Option<u32> {
    standard_monomials(leads, nvars).map(|s| s.iter().map(Monomial::degree).max().unwrap_or(0))
}

/// Largest cutoff tried before switching to the exact computation.
pub(crate) const DEEPENING_LIMIT: u32 = 32;

/// `d^n`, saturating.
pub(crate) fn colength_bound(max_degree: u32, nvars: usize) -> u32 {
    (0..nvars).fold(1u32, |acc, _| acc.saturating_mul(max_degree))
}

pub fn standard_basis(ideal: &LocalIdeal) -> StandardBasis {
    standard_basis_within(ideal, None)
}

/// True when every generator vanishes along some coordinate axis, which
/// puts a curve through the origin inside the zero set.
fn vanishes_on_an_axis(gens: &[LPoly], nvars: usize) -> bool {
    (0..nvars).any(|i| {
        gens.iter().all(|g| {
            g.terms.iter().all(|(m, _)| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .any(|(j, &e)| j != i && e > 0)
            })
        })
    })
}

/// Outcome of the truncated computations.
pub(crate) enum Deepening {
    /// Exact basis of `I`, which has finite colength.
    Finite(Vec<LPoly>),
    /// Basis of `I + m^(N+1)`; `I` has infinite colength.
    Infinite(Vec<LPoly>, u32),
    /// Basis of `I + m^(N+1)`, undecided.
    Open(Vec<LPoly>, u32),
}

fn local_generators(ideal: &LocalIdeal) -> Vec<LPoly> {
    ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .map(LPoly::from_polynomial)
        .rev()
        .collect()
}

fn max_degree(ideal: &LocalIdeal) -> u32 {
    ideal
        .generators()
        .iter()
        .filter_map(|g| g.total_degree())
        .max()
        .unwrap_or(0)
}

/// Truncated computations at doubling cutoffs, up to `limit`. `bound`
/// caps the colength of `I` whenever it is finite.
pub(crate) fn deepen(ideal: &LocalIdeal, bound: u32, limit: u32) -> Deepening {
    let nvars = ideal.ambient().len();
    let gens = local_generators(ideal);
    let bound = bound.max(1);
    let mut cutoff = (max_degree(ideal) + 2).min(bound);
    loop {
        let basis = MoraEngine::truncated(nvars, cutoff).run(gens.clone());
        let leads: Vec<Monomial> = basis.iter().map(|g| g.lm().clone()).collect();
        let certified = standard_monomials(&leads, nvars)
            .is_some_and(|s| s.iter().all(|m| m.degree() < cutoff));
        if certified {
            return Deepening::Finite(basis);
        }
        if cutoff >= bound || vanishes_on_an_axis(&gens, nvars) {
            return Deepening::Infinite(basis, cutoff);
        }
        if cutoff >= limit {
            return Deepening::Open(basis, cutoff);
        }
        cutoff = cutoff.saturating_mul(2).min(bound);
    }
}

/// Exact basis by homogenization. With infinite colength it is returned as
/// a basis of `I + m^(N+1)` for `N` the top leading degree.
pub(crate) fn exact(ideal: &LocalIdeal) -> StandardBasis {
    let nvars = ideal.ambient().len();
    let mut basis = lazard::standard_basis(&local_generators(ideal), nvars);
    let leads: Vec<Monomial> = basis.iter().map(|g| g.lm().clone()).collect();
    if standard_monomials(&leads, nvars).is_some() {
        return StandardBasis::from_parts(ideal.clone(), basis, None);
    }
    let cutoff = leads.iter().map(Monomial::degree).max().unwrap_or(0);
    for g in &mut basis {
        g.truncate(cutoff);
    }
    StandardBasis::from_parts(ideal.clone(), basis, Some(cutoff))
}

/// Standard basis given an upper bound on the colength whenever it is
/// finite; `None` uses `d^n`.
pub(crate) fn standard_basis_within(ideal: &LocalIdeal, colength: Option<u32>) -> StandardBasis {
    let bound =
        colength.unwrap_or_else(|| colength_bound(max_degree(ideal), ideal.ambient().len()));
    match deepen(ideal, bound, DEEPENING_LIMIT) {
        Deepening::Finite(basis) => StandardBasis::from_parts(ideal.clone(), basis, None),
        Deepening::Infinite(basis, cutoff) => {
            StandardBasis::from_parts(ideal.clone(), basis, Some(cutoff))
        }
        Deepening::Open(..) => exact(ideal),
    }
}

pub(crate) fn reduce_against(
    basis: &[LPoly],
    nvars: usize,
    cutoff: Option<u32>,
    p: LPoly,
) -> LPoly {
    let engine = MoraEngine::with_basis(nvars, basis.to_vec(), cutoff);
    let out = engine.normal_form(p);
    debug_assert!(out.terms.iter().all(|(_, c)| !c.is_zero()));
    out
}
