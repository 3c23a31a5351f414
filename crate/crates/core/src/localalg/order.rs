use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::polycore::{Ambient, Monomial, Polynomial, Rational};

/// Negative degree reverse lexicographic order (`ds`): lower total degree
/// is larger, so `1` is the largest monomial; ties are broken by degrevlex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LocalOrder;

impl LocalOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (da, db) = (a.degree(), b.degree());
        if da != db {
            return db.cmp(&da);
        }
        for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    }

    /// Leading monomial of `p` under this order.
    pub fn leading_monomial(&self, p: &Polynomial) -> Option<Monomial> {
        p.terms()
            .map(|(m, _)| m)
            .max_by(|a, b| self.cmp(a, b))
            .cloned()
    }
}

/// Polynomial stored as terms sorted descending in the local order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LPoly {
    pub terms: Vec<(Monomial, Rational)>,
}

impl LPoly {
    pub fn from_polynomial(p: &Polynomial) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| LocalOrder.cmp(&b.0, &a.0));
        LPoly { terms }
    }

    pub fn to_polynomial(&self, ambient: &Ambient) -> Polynomial {
        Polynomial::from_terms(ambient, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    pub fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = Rational::one() / self.lc();
        for (_, c) in &mut self.terms {
            *c *= &inv;
        }
    }

    /// Drops every term of total degree above `bound`.
    pub fn truncate(&mut self, bound: u32) {
        self.terms.retain(|(m, _)| m.degree() <= bound);
    }

    /// Drops non-leading terms of total degree above `bound`.
    pub fn truncate_tail(&mut self, bound: u32) {
        if let Some((lead, rest)) = self.terms.split_first() {
            let mut kept = vec![lead.clone()];
            kept.extend(rest.iter().filter(|(m, _)| m.degree() <= bound).cloned());
            self.terms = kept;
        }
    }

    /// `self - coef * shift * other`, merging the two sorted term lists.
    pub fn sub_scaled(&self, other: &LPoly, shift: &Monomial, coef: &Rational) -> LPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(m, c)| (m.mul(shift), c * coef))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, -c));
                }
                (Some((ma, _)), Some((mb, _))) => match LocalOrder.cmp(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m, -c));
                    }
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap().clone();
                        let (_, cb) = b.next().unwrap();
                        let c = ca - cb;
                        if !c.is_zero() {
                            out.push((m, c));
                        }
                    }
                },
            }
        }
        LPoly { terms: out }
    }
}
