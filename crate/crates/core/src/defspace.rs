//! The finite map `Phi: (lambda, t) -> b` relating deformations of the
//! `A_{2n-1}` germ with those of its small resolution.
//!
//! With `P(w; b) = w^n + sum_{i <= n-2} b_i w^i` and
//! `Q(w; lambda, t) = w^(n-1) + lambda w^(n-2) + sum_{i <= n-3} t_i w^i`,
//! `Phi` is the coefficient map of `(w - lambda) Q`. All identities are
//! checked as exact polynomial equalities in one shared ambient
//! `w, lambda, t_{n-3}, ..., t_0, b_{n-2}, ..., b_0`.
//!
//! For `n = 2` there are no `t` variables, `Phi(lambda) = -lambda^2` and
//! `Q = w + lambda`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::polycore::{discriminant, Ambient, PolyMatrix, Polynomial, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefSpaceError {
    #[error("n must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("expected {expected} values for b, got {found}")]
    WrongPointLength { expected: usize, found: usize },
    #[error("component index {index} out of range for {len} components")]
    ComponentOutOfRange { index: usize, len: usize },
    #[error("replacement polynomial lives in a different ambient")]
    AmbientMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefSpaceMap {
    n: usize,
    ambient: Ambient,
    p: Polynomial,
    q: Polynomial,
    /// Images of `b_{n-2}, ..., b_0`, in that order.
    phi: Vec<Polynomial>,
}

impl DefSpaceMap {
    pub fn build(n: usize) -> Result<Self, DefSpaceError> {
        if n < 2 {
            return Err(DefSpaceError::DegreeTooSmall(n));
        }
        let mut names = vec!["w".to_string(), "lambda".to_string()];
        names.extend((0..n - 2).rev().map(|i| format!("t{i}")));
        names.extend((0..n - 1).rev().map(|i| format!("b{i}")));
        let ambient = Ambient::new(&names).expect("generated names are valid");
        let mut m = DefSpaceMap {
            n,
            p: Polynomial::zero(&ambient),
            q: Polynomial::zero(&ambient),
            phi: Vec::new(),
            ambient,
        };
        let w = m.w();
        let mut p = w.pow(n as u32);
        for i in 0..n - 1 {
            p = p + &m.b(i) * &w.pow(i as u32);
        }
        // Q: the t_i together with t_{n-2} = lambda and the leading 1
        let mut q = w.pow(n as u32 - 1) + &m.lambda() * &w.pow(n as u32 - 2);
        for i in 0..n.saturating_sub(2) {
            q = q + &m.t(i) * &w.pow(i as u32);
        }
        // b_i = t_{i-1} - lambda t_i with t_{n-2} = lambda, t_{-1} = 0
        let phi = (0..n - 1)
            .rev()
            .map(|i| {
                let lower = if i == 0 {
                    m.zero()
                } else {
                    m.extended_t(i - 1)
                };
                lower - &m.lambda() * &m.extended_t(i)
            })
            .collect();
        m.p = p;
        m.q = q;
        m.phi = phi;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    /// Components of `Phi`, ordered `b_{n-2}, ..., b_0`.
    pub fn phi(&self) -> &[Polynomial] {
        &self.phi
    }

    /// Replaces the component at `index` (0 is the `b_{n-2}` slot).
    pub fn with_phi(&self, index: usize, value: Polynomial) -> Result<Self, DefSpaceError> {
        if index >= self.phi.len() {
            return Err(DefSpaceError::ComponentOutOfRange {
                index,
                len: self.phi.len(),
            });
        }
        if value.ambient() != &self.ambient {
            return Err(DefSpaceError::AmbientMismatch);
        }
        let mut m = self.clone();
        m.phi[index] = value;
        Ok(m)
    }

    pub fn with_q(&self, value: Polynomial) -> Result<Self, DefSpaceError> {
        if value.ambient() != &self.ambient {
            return Err(DefSpaceError::AmbientMismatch);
        }
        let mut m = self.clone();
        m.q = value;
        Ok(m)
    }

    fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.ambient)
    }

    pub fn w(&self) -> Polynomial {
        Polynomial::var(&self.ambient, 0)
    }

    pub fn lambda(&self) -> Polynomial {
        Polynomial::var(&self.ambient, 1)
    }

    fn t_index(&self, i: usize) -> usize {
        assert!(i + 2 < self.n, "t{i} does not exist for n = {}", self.n);
        2 + (self.n - 3 - i)
    }

    fn b_index(&self, i: usize) -> usize {
        assert!(i + 1 < self.n, "b{i} does not exist for n = {}", self.n);
        self.n + (self.n - 2 - i)
    }

    pub fn t(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ambient, self.t_index(i))
    }

    pub fn b(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ambient, self.b_index(i))
    }

    /// `t_i` with the convention `t_{n-2} = lambda`.
    fn extended_t(&self, i: usize) -> Polynomial {
        if i == self.n - 2 {
            self.lambda()
        } else {
            self.t(i)
        }
    }

    fn b_names(&self) -> impl Iterator<Item = String> {
        (0..self.n - 1).rev().map(|i| format!("b{i}"))
    }

    /// `P(w; Phi(lambda, t))`.
    pub fn p_after_phi(&self) -> Polynomial {
        let map: HashMap<String, Polynomial> =
            self.b_names().zip(self.phi.iter().cloned()).collect();
        self.p
            .substitute(&map, &self.ambient)
            .expect("same ambient")
    }

    /// `P(w; Phi) = (w - lambda) Q` exactly.
    pub fn verify_factor_identity(&self) -> bool {
        self.p_after_phi() == &(self.w() - self.lambda()) * &self.q
    }

    /// `t_i(lambda, b) = lambda^(n-1-i) + sum_{j=i+1}^{n-2} b_j lambda^(j-i-1)`,
    /// ordered `t_{n-3}, ..., t_0`.
    pub fn inverse_t(&self) -> Vec<Polynomial> {
        let lam = self.lambda();
        (0..self.n.saturating_sub(2))
            .rev()
            .map(|i| {
                let mut t = lam.pow((self.n - 1 - i) as u32);
                for j in i + 1..=self.n - 2 {
                    t = t + &self.b(j) * &lam.pow((j - i - 1) as u32);
                }
                t
            })
            .collect()
    }

    fn substitute_inverse(&self, p: &Polynomial) -> Polynomial {
        let map: HashMap<String, Polynomial> = (0..self.n.saturating_sub(2))
            .rev()
            .map(|i| format!("t{i}"))
            .zip(self.inverse_t())
            .collect();
        p.substitute(&map, &self.ambient).expect("same ambient")
    }

    /// `P(lambda; b)`, monic of degree `n` in `lambda`.
    pub fn p_at_lambda(&self) -> Polynomial {
        self.p.substitute_var(0, &self.lambda())
    }

    /// `Phi(lambda, t(lambda, b))_j - b_j` before reduction; the `b_0` slot
    /// equals `-P(lambda; b)`.
    pub fn composition_differences(&self) -> Vec<Polynomial> {
        self.phi
            .iter()
            .zip((0..self.n - 1).rev())
            .map(|(c, i)| self.substitute_inverse(c) - self.b(i))
            .collect()
    }

    /// Each composition difference reduced modulo `P(lambda; b)` in `lambda`.
    pub fn composition_residues(&self) -> Vec<Polynomial> {
        let rel = self.p_at_lambda();
        self.composition_differences()
            .iter()
            .map(|d| d.rem_monic(1, &rel).expect("P is monic in lambda"))
            .collect()
    }

    pub fn verify_inverse_composition(&self) -> bool {
        self.composition_residues().iter().all(Polynomial::is_zero)
    }

    /// Partials of the `Phi` components (rows `b_{n-2}, ..., b_0`) with
    /// respect to `lambda, t_{n-3}, ..., t_0` (columns).
    pub fn jacobian(&self) -> PolyMatrix {
        let cols: Vec<usize> = (1..self.n).collect();
        let rows = self
            .phi
            .iter()
            .map(|c| {
                cols.iter()
                    .map(|&v| c.differentiate(v).expect("in range"))
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(rows).expect("square by construction")
    }

    /// `Q(lambda; lambda, t)`.
    pub fn q_at_lambda(&self) -> Polynomial {
        self.q.substitute_var(0, &self.lambda())
    }

    pub fn jacobian_identity(&self) -> JacobianOutcome {
        let det = self.jacobian().determinant().expect("square");
        let q = self.q_at_lambda();
        let sign = if det == q {
            Some(Sign::Plus)
        } else if det == -q {
            Some(Sign::Minus)
        } else {
            None
        };
        JacobianOutcome {
            holds: sign.is_some(),
            sign,
            determinant: det.to_string(),
        }
    }

    /// `P'(lambda)` after `b -> Phi`, which should equal `Q(lambda; lambda, t)`.
    pub fn p_prime_at_lambda(&self) -> Polynomial {
        let map: HashMap<String, Polynomial> =
            self.b_names().zip(self.phi.iter().cloned()).collect();
        self.p
            .differentiate(0)
            .expect("w is variable 0")
            .substitute(&map, &self.ambient)
            .expect("same ambient")
            .substitute_var(0, &self.lambda())
    }

    /// Checks `P'(lambda) = Q(lambda)` symbolically and at `trials` seeded
    /// random rational points `(lambda, t)`.
    pub fn ramification_check(&self, trials: usize, seed: u64) -> RamificationOutcome {
        let lhs = self.p_prime_at_lambda();
        let rhs = self.q_at_lambda();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples: Vec<RamificationSample> = (0..trials)
            .map(|_| {
                let lambda = random_rational(&mut rng);
                let t: Vec<Rational> = (0..self.n - 2).map(|_| random_rational(&mut rng)).collect();
                let pt = self.point(
                    &Rational::zero(),
                    &lambda,
                    &t,
                    &vec![Rational::zero(); self.n - 1],
                );
                let (p_prime, q) = (lhs.evaluate(&pt), rhs.evaluate(&pt));
                RamificationSample {
                    lambda: lambda.to_string(),
                    t: t.iter().map(Rational::to_string).collect(),
                    pass: p_prime == q,
                    p_prime: p_prime.to_string(),
                    q: q.to_string(),
                }
            })
            .collect();
        RamificationOutcome {
            symbolic: lhs == rhs,
            samples_pass: samples.iter().all(|s| s.pass),
            samples,
        }
    }

    /// Full ambient point from its blocks; `t` ordered `t_{n-3}, ..., t_0`
    /// and `b` ordered `b_{n-2}, ..., b_0`.
    fn point(
        &self,
        w: &Rational,
        lambda: &Rational,
        t: &[Rational],
        b: &[Rational],
    ) -> Vec<Rational> {
        let mut pt = vec![w.clone(), lambda.clone()];
        pt.extend_from_slice(t);
        pt.extend_from_slice(b);
        pt
    }

    /// `P(w; b)` as a univariate in `w`; `b` ordered `b_{n-2}, ..., b_0`.
    pub fn p_at(&self, b: &[Rational]) -> Result<UniPoly, DefSpaceError> {
        if b.len() != self.n - 1 {
            return Err(DefSpaceError::WrongPointLength {
                expected: self.n - 1,
                found: b.len(),
            });
        }
        let mut coeffs = vec![Rational::zero(); self.n + 1];
        coeffs[self.n] = Rational::one();
        for (k, v) in b.iter().enumerate() {
            coeffs[self.n - 2 - k] = v.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    /// `Phi(lambda, t)` at a rational point, ordered `b_{n-2}, ..., b_0`.
    pub fn phi_at(&self, lambda: &Rational, t: &[Rational]) -> Vec<Rational> {
        let pt = self.point(
            &Rational::zero(),
            lambda,
            t,
            &vec![Rational::zero(); self.n - 1],
        );
        self.phi.iter().map(|c| c.evaluate(&pt)).collect()
    }

    /// The fiber of `Phi` over `b`: its size is the number of distinct roots
    /// of `P(w; b)`; rational roots give explicit preimages.
    pub fn fiber_count(&self, b: &[Rational]) -> Result<Fiber, DefSpaceError> {
        let p = self.p_at(b)?;
        let count = p.distinct_root_count();
        let disc_poly = discriminant(&p.to_polynomial(&self.ambient, 0), 0).expect("degree >= 2");
        let disc = disc_poly.constant_term();
        let roots = p.rational_roots();
        let inverse = self.inverse_t();
        let points = roots
            .clone()
            .unwrap_or_default()
            .into_iter()
            .map(|lambda| {
                let pt = self.point(
                    &Rational::zero(),
                    &lambda,
                    &vec![Rational::zero(); self.n - 2],
                    b,
                );
                let t: Vec<Rational> = inverse.iter().map(|ti| ti.evaluate(&pt)).collect();
                FiberPoint { lambda, t }
            })
            .collect();
        Ok(Fiber {
            count,
            is_generic: count == self.n,
            discriminant_nonzero: !disc.is_zero(),
            roots_enumerated: roots.is_some(),
            points,
        })
    }

    /// Runs every identity and returns a serializable transcript.
    pub fn transcript(&self, trials: usize, seed: u64) -> Transcript {
        let factor = self.verify_factor_identity();
        let inverse = self.verify_inverse_composition();
        let jac = self.jacobian_identity();
        let ram = self.ramification_check(trials, seed);
        let all = factor && inverse && jac.holds && ram.symbolic && ram.samples_pass;
        Transcript {
            n: self.n,
            identity: if all { PassFail::Pass } else { PassFail::Fail },
            factor_identity: factor,
            inverse_composition: inverse,
            jacobian: jac.holds,
            jacobian_sign: jac.sign,
            determinant: jac.determinant,
            ramification_symbolic: ram.symbolic,
            phi: self.phi.iter().map(Polynomial::to_string).collect(),
            q: self.q.to_string(),
            seed,
            samples: ram.samples,
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=5);
    Rational::new(num.into(), den.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PassFail {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianOutcome {
    pub holds: bool,
    /// `Plus` when `det = Q(lambda)`, `Minus` when `det = -Q(lambda)`.
    pub sign: Option<Sign>,
    pub determinant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationSample {
    pub lambda: String,
    pub t: Vec<String>,
    pub p_prime: String,
    pub q: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationOutcome {
    pub symbolic: bool,
    pub samples_pass: bool,
    pub samples: Vec<RamificationSample>,
}

impl RamificationOutcome {
    pub fn holds(&self) -> bool {
        self.symbolic && self.samples_pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    pub lambda: Rational,
    /// Ordered `t_{n-3}, ..., t_0`.
    pub t: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    /// Number of distinct roots of `P(w; b)`.
    pub count: usize,
    pub is_generic: bool,
    pub discriminant_nonzero: bool,
    /// False when rational root search was skipped for large coefficients.
    pub roots_enumerated: bool,
    /// Preimages at the rational roots.
    pub points: Vec<FiberPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub n: usize,
    pub identity: PassFail,
    pub factor_identity: bool,
    pub inverse_composition: bool,
    pub jacobian: bool,
    pub jacobian_sign: Option<Sign>,
    pub determinant: String,
    pub ramification_symbolic: bool,
    pub phi: Vec<String>,
    pub q: String,
    pub seed: u64,
    pub samples: Vec<RamificationSample>,
}
