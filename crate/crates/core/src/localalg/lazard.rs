//! Exact standard bases by Lazard's homogenization.
//!
//! A polynomial `p` tagged with a degree `D >= deg p` stands for the
//! homogeneous `t^D p(x/t)`. Buchberger's algorithm on these, degree by
//! degree, with leading terms taken in the local order inside each degree,
//! dehomogenizes to a standard basis of the ideal in the local ring. Every
//! reduction stays inside a single degree, so it terminates without Mora's
//! ecart bookkeeping, and the whole computation terminates for any ideal.

use super::order::LPoly;
use super::quotient::standard_monomials;
use crate::polycore::{Monomial, Rational};

#[derive(Clone, Debug)]
struct Tagged {
    p: LPoly,
    deg: u32,
}

impl Tagged {
    /// Power of `t` in the leading term.
    fn excess(&self) -> u32 {
        self.deg - self.p.lm().degree()
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

impl Pair {
    fn key(&self) -> (u32, usize, usize) {
        (self.lcm.degree(), self.i, self.j)
    }
}

/// Leading term of the homogenization, with the power of `t` appended.
fn homogeneous_lead(g: &Tagged) -> Monomial {
    let mut e = g.p.lm().exponents().to_vec();
    e.push(g.excess());
    Monomial::new(e)
}

struct Lazard {
    nvars: usize,
    basis: Vec<Tagged>,
    leads: Vec<Monomial>,
    /// Elements whose leading term is divisible by a later one's.
    redundant: Vec<bool>,
    pairs: Vec<Pair>,
    /// Top standard degree once the leading ideal has finite colength;
    /// terms above it lie in the ideal and are dropped.
    high_corner: Option<u32>,
}

impl Lazard {
    /// Active element whose homogenized leading term divides the term
    /// `m` of a polynomial of degree `deg`.
    fn reducer(&self, m: &Monomial, deg: u32) -> Option<&Tagged> {
        let e = deg - m.degree();
        self.basis
            .iter()
            .zip(&self.redundant)
            .filter(|(g, &r)| !r && g.excess() <= e && g.p.lm().divides(m))
            .map(|(g, _)| g)
            .min_by_key(|g| g.p.terms.len())
    }

    /// Full reduction inside the degree of `h`: every term, not only the
    /// leading one, is reduced while some homogenized lead divides it.
    fn reduce(&self, mut h: Tagged) -> Tagged {
        self.truncate(&mut h.p);
        let mut at = 0;
        while at < h.p.terms.len() {
            let (m, c) = h.p.terms[at].clone();
            match self.reducer(&m, h.deg) {
                Some(g) => {
                    let shift = m.div(g.p.lm()).expect("divisibility checked");
                    h.p = h.p.sub_scaled(&g.p, &shift, &(c / g.p.lc()));
                    self.truncate(&mut h.p);
                }
                None => at += 1,
            }
        }
        h
    }

    fn truncate(&self, p: &mut LPoly) {
        if let Some(d) = self.high_corner {
            p.truncate(d);
        }
    }

    fn spoly(&self, pair: &Pair) -> Tagged {
        let (f, g) = (&self.basis[pair.i], &self.basis[pair.j]);
        let lcm = f.p.lm().lcm(g.p.lm());
        let zero = LPoly { terms: Vec::new() };
        let one = Rational::from_integer(1.into());
        let p = zero
            .sub_scaled(&f.p, &lcm.div(f.p.lm()).unwrap(), &-one.clone())
            .sub_scaled(&g.p, &lcm.div(g.p.lm()).unwrap(), &one);
        Tagged {
            p,
            deg: pair.lcm.degree(),
        }
    }

    /// Adds `h` and updates the pair set with the Gebauer-Moeller criteria.
    fn insert(&mut self, h: Tagged) {
        let k = self.basis.len();
        let lead = homogeneous_lead(&h);
        self.pairs.retain(|p| {
            !(lead.divides(&p.lcm)
                && self.leads[p.i].lcm(&lead) != p.lcm
                && self.leads[p.j].lcm(&lead) != p.lcm)
        });
        let mut fresh: Vec<(Pair, bool)> = (0..k)
            .filter(|&i| !self.redundant[i])
            .map(|i| {
                let coprime = self.leads[i].is_coprime(&lead);
                (
                    Pair {
                        i,
                        j: k,
                        lcm: self.leads[i].lcm(&lead),
                    },
                    coprime,
                )
            })
            .collect();
        let snapshot: Vec<Monomial> = fresh.iter().map(|(p, _)| p.lcm.clone()).collect();
        fresh.retain(|(p, _)| !snapshot.iter().any(|l| l != &p.lcm && l.divides(&p.lcm)));
        fresh.sort_by(|a, b| a.0.lcm.cmp(&b.0.lcm).then(b.1.cmp(&a.1)));
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for (p, coprime) in fresh {
            match kept.last() {
                Some((q, _)) if q.lcm == p.lcm => {}
                _ => kept.push((p, coprime)),
            }
        }
        self.pairs.extend(
            kept.into_iter()
                .filter(|(_, coprime)| !coprime)
                .map(|(p, _)| p),
        );
        for i in 0..k {
            if lead.divides(&self.leads[i]) {
                self.redundant[i] = true;
            }
        }
        self.basis.push(h);
        self.leads.push(lead);
        self.redundant.push(false);
        self.refresh_high_corner();
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let (idx, _) = self.pairs.iter().enumerate().min_by_key(|(_, p)| p.key())?;
        Some(self.pairs.swap_remove(idx))
    }

    fn refresh_high_corner(&mut self) {
        let leads: Vec<Monomial> = self.basis.iter().map(|g| g.p.lm().clone()).collect();
        let Some(stds) = standard_monomials(&leads, self.nvars) else {
            return;
        };
        let d = stds.iter().map(Monomial::degree).max().unwrap_or(0);
        if self.high_corner.is_none_or(|c| d < c) {
            self.high_corner = Some(d);
            for g in &mut self.basis {
                g.p.truncate_tail(d);
            }
        }
    }
}

/// Exact standard basis of the ideal generated by `gens`, dehomogenized
/// and reduced to one element per minimal leading monomial.
pub(crate) fn standard_basis(gens: &[LPoly], nvars: usize) -> Vec<LPoly> {
    let mut engine = Lazard {
        nvars,
        basis: Vec::new(),
        leads: Vec::new(),
        redundant: Vec::new(),
        pairs: Vec::new(),
        high_corner: None,
    };
    let mut inputs: Vec<Tagged> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Tagged {
            p: g.clone(),
            deg: top_degree(g),
        })
        .collect();
    inputs.sort_by_key(|g| std::cmp::Reverse(g.deg));
    loop {
        let pair_deg = engine.pairs.iter().map(|p| p.lcm.degree()).min();
        let input_deg = inputs.last().map(|g| g.deg);
        let h = match (input_deg, pair_deg) {
            (None, None) => break,
            (Some(a), b) if b.is_none_or(|b| a <= b) => inputs.pop().unwrap(),
            _ => {
                let pair = engine.next_pair().expect("a pair is queued");
                engine.spoly(&pair)
            }
        };
        let mut h = engine.reduce(h);
        if h.p.is_zero() {
            continue;
        }
        h.p.make_monic();
        // t^k H lies in the ideal, so H does too after saturating by t
        h.deg = top_degree(&h.p);
        engine.insert(h);
    }
    let kept = engine
        .basis
        .into_iter()
        .zip(engine.redundant)
        .filter(|(_, r)| !r)
        .map(|(g, _)| g.p)
        .collect();
    super::mora::minimize(kept)
}

fn top_degree(p: &LPoly) -> u32 {
    p.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
}
