use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Ambient, Monomial, PolyError, Rational};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by monomial; zero coefficients are never
/// stored, so the zero polynomial has an empty map. Binary operators panic
/// when the operands live in different ambients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ambient: Ambient,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ambient: &Ambient) -> Self {
        Polynomial {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &Ambient) -> Self {
        Self::constant(ambient, Rational::one())
    }

    pub fn constant(ambient: &Ambient, c: Rational) -> Self {
        Self::monomial(ambient, Monomial::one(ambient.len()), c)
    }

    pub fn from_int(ambient: &Ambient, c: i64) -> Self {
        Self::constant(ambient, Rational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(ambient: &Ambient, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ambient.len(), "monomial length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ambient: ambient.clone(),
            terms,
        }
    }

    pub fn var(ambient: &Ambient, index: usize) -> Self {
        Self::monomial(
            ambient,
            Monomial::var(ambient.len(), index),
            Rational::one(),
        )
    }

    /// The variable called `name`; panics if the ambient lacks it.
    pub fn named(ambient: &Ambient, name: &str) -> Self {
        let i = ambient
            .index_of(name)
            .unwrap_or_else(|| panic!("no variable `{name}` in {ambient:?}"));
        Self::var(ambient, i)
    }

    /// Builds a polynomial from possibly repeated terms, merging equal monomials.
    pub fn from_terms<I>(ambient: &Ambient, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ambient);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ambient.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Indices of variables that occur in some term.
    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.ambient.len())
            .filter(|&v| self.involves(v))
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ambient);
        }
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ambient);
        }
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ambient);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.ambient.len() {
            return Err(PolyError::VariableIndexOutOfRange {
                index: var,
                nvars: self.ambient.len(),
            });
        }
        let mut out = Self::zero(&self.ambient);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(
                    m.with_exponent(var, e - 1),
                    c * Rational::from_integer(e.into()),
                );
            }
        }
        Ok(out)
    }

    /// Composes `self` with the given assignment, producing a polynomial over
    /// `target`. Variables without an assignment map to the same-named
    /// variable of `target`.
    pub fn substitute(
        &self,
        assignment: &HashMap<String, Polynomial>,
        target: &Ambient,
    ) -> Result<Self, PolyError> {
        let mut images = Vec::with_capacity(self.ambient.len());
        for name in self.ambient.names() {
            let img = match assignment.get(name) {
                Some(p) => {
                    if p.ambient != *target {
                        return Err(PolyError::AmbientMismatch {
                            expected: format!("{target:?}"),
                            found: format!("{:?}", p.ambient),
                        });
                    }
                    p.clone()
                }
                None => match target.index_of(name) {
                    Some(i) => Self::var(target, i),
                    None => {
                        return Err(PolyError::UnmappedVariable(name.clone()));
                    }
                },
            };
            images.push(img);
        }
        for key in assignment.keys() {
            if self.ambient.index_of(key).is_none() {
                return Err(PolyError::UnknownVariable(key.clone()));
            }
        }

        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Self::one(target), p.clone()])
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out = out + term;
        }
        Ok(out)
    }

    /// Substitutes a single variable by a polynomial in the same ambient.
    pub fn substitute_var(&self, var: usize, value: &Polynomial) -> Self {
        assert_eq!(self.ambient, value.ambient, "ambient mismatch");
        let mut map = HashMap::new();
        map.insert(self.ambient.name(var).to_string(), value.clone());
        self.substitute(&map, &self.ambient)
            .expect("same-ambient substitution cannot fail")
    }

    /// Evaluates at a rational point given in ambient order.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ambient.len(), "point dimension mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-expresses `self` in a larger ambient containing every variable name.
    pub fn embed(&self, target: &Ambient) -> Result<Self, PolyError> {
        let map: Vec<usize> = self
            .ambient
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| PolyError::UnmappedVariable(n.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] = x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, itself a polynomial in the remaining variables.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.ambient); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(var) as usize;
            out[k].add_term(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.ambient, divisor.ambient, "ambient mismatch");
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.ambient);
        while let Some((m, c)) = rem.leading_term() {
            let q = m.div(&lm)?;
            let qc = c / &lc;
            rem = rem - divisor.mul_monomial(&q, &qc);
            quot.add_term(q, qc);
        }
        Some(quot)
    }

    /// Remainder of `self` on division by `divisor`, which must be monic in
    /// `var` (leading coefficient 1 as a polynomial in `var`).
    pub fn rem_monic(&self, var: usize, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        assert_eq!(self.ambient, divisor.ambient, "ambient mismatch");
        let coeffs = divisor.coefficients_in(var);
        let d = coeffs.len() - 1;
        if !(coeffs[d].is_constant() && coeffs[d].constant_term().is_one()) || divisor.is_zero() {
            return Err(PolyError::NotMonic);
        }
        let mut rem = self.clone();
        // every term with var-degree >= d is rewritten using the divisor
        loop {
            let top = match rem.degree_in(var) {
                Some(k) if k as usize >= d => k,
                _ => break,
            };
            let lead = rem.coefficients_in(var).swap_remove(top as usize);
            let shift = Monomial::var(self.ambient.len(), var);
            let mut mult = lead;
            for _ in 0..(top as usize - d) {
                mult = mult.mul_monomial(&shift, &Rational::one());
            }
            rem = rem - &mult * divisor;
        }
        Ok(rem)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.ambient)
    }
}

/// Prints in descending graded-lex order using the input grammar, e.g.
/// `x^2-3/2*x*y+1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ambient.name(v).to_string()),
                    _ => factors.push(format!("{}^{}", self.ambient.name(v), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.clone() + rhs
    }
}

impl Add<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ambient, rhs.ambient, "ambient mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        if self.terms.len() >= rhs.terms.len() {
            self + &rhs
        } else {
            rhs + &self
        }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.clone() - rhs
    }
}

impl Sub<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ambient, rhs.ambient, "ambient mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ambient, rhs.ambient, "ambient mismatch");
        let mut out = Polynomial::zero(&self.ambient);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, rat};

    fn amb(names: &[&str]) -> Ambient {
        Ambient::new(names).unwrap()
    }

    fn p(s: &str, a: &Ambient) -> Polynomial {
        parse_polynomial(s, a).unwrap()
    }

    #[test]
    fn power_rule() {
        let a = amb(&["w"]);
        assert_eq!(p("w^6", &a).differentiate(0).unwrap(), p("6*w^5", &a));
    }

    #[test]
    fn partial_derivatives() {
        let a = amb(&["z", "w"]);
        assert_eq!(p("z^5-w^5", &a).differentiate(0).unwrap(), p("5*z^4", &a));
        let a = amb(&["x", "y", "z", "w"]);
        assert_eq!(
            p("x^3+y^3+z^3+w^3+x*y*z*w", &a).differentiate(0).unwrap(),
            p("3*x^2+y*z*w", &a)
        );
    }

    #[test]
    fn derivative_index_out_of_range() {
        let a = amb(&["x"]);
        assert!(matches!(
            p("x", &a).differentiate(3),
            Err(PolyError::VariableIndexOutOfRange { index: 3, nvars: 1 })
        ));
    }

    #[test]
    fn substitution_examples() {
        let src = amb(&["w", "b0"]);
        let tgt = amb(&["w", "lambda"]);
        let mut map = HashMap::new();
        map.insert("b0".to_string(), p("-lambda^2", &tgt));
        let out = p("w^2+b0", &src).substitute(&map, &tgt).unwrap();
        assert_eq!(out, p("w^2-lambda^2", &tgt));

        let a = amb(&["z", "w"]);
        let f = p("z^5-w^5", &a);
        assert_eq!(f.substitute(&HashMap::new(), &a).unwrap(), f);
        let mut map = HashMap::new();
        map.insert("z".to_string(), p("w", &a));
        assert!(f.substitute(&map, &a).unwrap().is_zero());
    }

    #[test]
    fn substitution_ambient_mismatch() {
        let a = amb(&["z", "w"]);
        let other = amb(&["u"]);
        let mut map = HashMap::new();
        map.insert("z".to_string(), p("u", &other));
        assert!(matches!(
            p("z+w", &a).substitute(&map, &a),
            Err(PolyError::AmbientMismatch { .. })
        ));
        // w has no image in the target
        assert!(matches!(
            p("z+w", &a).substitute(&map, &other),
            Err(PolyError::UnmappedVariable(_))
        ));
    }

    #[test]
    fn exact_division() {
        let a = amb(&["x", "y"]);
        let f = p("x^2-y^2", &a);
        assert_eq!(f.div_exact(&p("x-y", &a)), Some(p("x+y", &a)));
        assert_eq!(f.div_exact(&p("x+2", &a)), None);
    }

    #[test]
    fn monic_remainder() {
        let a = amb(&["l", "b"]);
        // l^3 mod (l^2 + b) = -b*l
        let r = p("l^3", &a).rem_monic(0, &p("l^2+b", &a)).unwrap();
        assert_eq!(r, p("-b*l", &a));
        assert!(matches!(
            p("l", &a).rem_monic(0, &p("2*l", &a)),
            Err(PolyError::NotMonic)
        ));
    }

    #[test]
    fn evaluation_and_embedding() {
        let a = amb(&["z", "w"]);
        let f = p("z^2-3*w+1/2", &a);
        assert_eq!(f.evaluate(&[rat(2, 1), rat(1, 3)]), rat(7, 2));
        let big = amb(&["x", "y", "z", "w"]);
        let g = f.embed(&big).unwrap();
        assert_eq!(g, p("z^2-3*w+1/2", &big));
    }

    #[test]
    fn display_is_grammar() {
        let a = amb(&["x", "y"]);
        assert_eq!(p("1 - 3/2*x*y + x^2", &a).to_string(), "x^2-3/2*x*y+1");
        assert_eq!(p("-x", &a).to_string(), "-x");
        assert_eq!(Polynomial::zero(&a).to_string(), "0");
    }
}
