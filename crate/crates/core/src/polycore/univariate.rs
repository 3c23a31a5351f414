use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Ambient, Monomial, PolyError, PolyMatrix, Polynomial, Rational};

/// Dense univariate polynomial over the rationals, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

/// Above this bound the divisor enumeration in [`UniPoly::rational_roots`]
/// gives up.
const ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Reads `p` as a polynomial in `var` alone; any other variable is an error.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Result<Self, PolyError> {
        if let Some(other) = p.variables_used().into_iter().find(|&v| v != var) {
            return Err(PolyError::MultivariateInput(
                p.ambient().name(other).to_string(),
            ));
        }
        let mut coeffs = vec![Rational::zero(); p.degree_in(var).unwrap_or(0) as usize + 1];
        for (m, c) in p.terms() {
            coeffs[m.exponent(var) as usize] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    pub fn to_polynomial(&self, ambient: &Ambient, var: usize) -> Polynomial {
        Polynomial::from_terms(
            ambient,
            self.coeffs.iter().enumerate().map(|(k, c)| {
                let mut m = Monomial::one(ambient.len());
                if k > 0 {
                    m = m.with_exponent(var, k as u32);
                }
                (m, c.clone())
            }),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => Self::new(self.coeffs.iter().map(|c| c / lc).collect()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lc;
            if !q.is_zero() {
                for (k, c) in divisor.coeffs.iter().enumerate() {
                    r[top - dd + k] -= &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Number of distinct complex roots.
    pub fn distinct_root_count(&self) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(d) => d - self.gcd(&self.derivative()).degree().unwrap_or(0),
        }
    }

    /// All distinct rational roots, ascending. `None` if the integer
    /// coefficients are too large for exhaustive divisor search.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        if self.degree().unwrap_or(0) == 0 {
            return Some(Vec::new());
        }
        // primitive integer form, with the factor w^k removed
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        if ints[0].is_zero() {
            roots.push(Rational::zero());
            while ints[0].is_zero() {
                ints.remove(0);
            }
        }
        if ints.len() > 1 {
            let c0 = ints[0].abs().to_u64().filter(|&v| v <= ROOT_SEARCH_LIMIT)?;
            let cn = ints
                .last()
                .unwrap()
                .abs()
                .to_u64()
                .filter(|&v| v <= ROOT_SEARCH_LIMIT)?;
            for p in divisors(c0) {
                for q in divisors(cn) {
                    for sign in [1i64, -1] {
                        let cand = Rational::new(BigInt::from(p) * sign, BigInt::from(q));
                        if self.eval(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Monic gcd of two polynomials that involve only `var`.
pub fn univariate_gcd(p: &Polynomial, q: &Polynomial, var: usize) -> Result<Polynomial, PolyError> {
    let a = UniPoly::from_polynomial(p, var)?;
    let b = UniPoly::from_polynomial(q, var)?;
    Ok(a.gcd(&b).to_polynomial(p.ambient(), var))
}

/// Sylvester matrix of `p` and `q` viewed as polynomials in `var`, entries
/// polynomial in the remaining variables.
pub fn sylvester_matrix(
    p: &Polynomial,
    q: &Polynomial,
    var: usize,
) -> Result<PolyMatrix, PolyError> {
    let a = p.coefficients_in(var);
    let b = q.coefficients_in(var);
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return Err(PolyError::DegreeTooLow);
    }
    let zero = Polynomial::zero(p.ambient());
    let mut entries = vec![zero; size * size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            entries[r * size + r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            entries[(n + r) * size + r + k] = c.clone();
        }
    }
    PolyMatrix::new(size, size, entries)
}

pub fn resultant(p: &Polynomial, q: &Polynomial, var: usize) -> Result<Polynomial, PolyError> {
    sylvester_matrix(p, q, var)?.determinant()
}

/// `(-1)^(d(d-1)/2) * Res(p, p') / lc(p)` with `d = deg_var(p)`; coefficients
/// of `p` may involve other variables.
pub fn discriminant(p: &Polynomial, var: usize) -> Result<Polynomial, PolyError> {
    let d = match p.degree_in(var) {
        Some(d) if d >= 1 => d,
        _ => return Err(PolyError::DegreeTooLow),
    };
    let dp = p.differentiate(var)?;
    let res = resultant(p, &dp, var)?;
    let lead = p.coefficients_in(var).swap_remove(d as usize);
    let q = res.div_exact(&lead).ok_or(PolyError::NotMonic)?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}
