//! Computations in the local ring at the origin: standard bases under the
//! negative degree reverse lexicographic order, colengths of zero-dimensional
//! ideals, Milnor and Tjurina numbers, and weighted-homogeneity detection.

mod lazard;
mod mora;
mod oracle;
mod order;
mod quotient;
mod weights;

use thiserror::Error;

use crate::polycore::{Ambient, Monomial, Polynomial};

pub use mora::standard_basis;
pub use oracle::{stabilized_oracle_dim, truncated_dim_oracle, OracleStabilization};
pub use order::LocalOrder;
pub use quotient::{monomial_quotient_dim, QuotientDimension};
pub use weights::{quasi_homogeneous_weights, QuasiHomogeneousWeights};

use order::LPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalAlgError {
    #[error("an ideal needs at least one generator")]
    EmptyIdeal,
    #[error("generator {index} does not vanish at the origin")]
    UnitGenerator { index: usize },
    #[error("generator {index} lives in a different ambient")]
    AmbientMismatch { index: usize },
    #[error("the zero polynomial has no Milnor or Tjurina number")]
    ZeroPolynomial,
    #[error("the hypersurface does not pass through the origin")]
    NotThroughOrigin,
}

/// Ideal of the local ring at the origin, given by generators vanishing there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIdeal {
    ambient: Ambient,
    generators: Vec<Polynomial>,
}

impl LocalIdeal {
    pub fn new(ambient: &Ambient, generators: Vec<Polynomial>) -> Result<Self, LocalAlgError> {
        if generators.is_empty() {
            return Err(LocalAlgError::EmptyIdeal);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.ambient() != ambient {
                return Err(LocalAlgError::AmbientMismatch { index });
            }
            if !g.constant_term().eq(&num_traits::Zero::zero()) {
                return Err(LocalAlgError::UnitGenerator { index });
            }
        }
        Ok(LocalIdeal {
            ambient: ambient.clone(),
            generators,
        })
    }

    /// `(df/dx_1, ..., df/dx_n)`, or `None` when a partial is a unit (the
    /// germ is smooth and the quotient is zero).
    pub fn jacobian(f: &Polynomial) -> Option<Self> {
        let partials: Vec<Polynomial> = (0..f.ambient().len())
            .map(|v| f.differentiate(v).expect("index in range"))
            .collect();
        Self::new(f.ambient(), partials).ok()
    }

    /// `(f, df/dx_1, ..., df/dx_n)`, or `None` when the germ is smooth.
    pub fn tjurina(f: &Polynomial) -> Option<Self> {
        let mut gens = vec![f.clone()];
        gens.extend((0..f.ambient().len()).map(|v| f.differentiate(v).expect("index in range")));
        Self::new(f.ambient(), gens).ok()
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn with_generator(&self, g: Polynomial) -> Result<Self, LocalAlgError> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Self::new(&self.ambient, gens)
    }
}

/// Standard basis of a [`LocalIdeal`] under the local order, with a minimal set
/// of leading monomials.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    ideal: LocalIdeal,
    basis: Vec<LPoly>,
    /// `Some(N)` when the ideal has infinite colength and the basis is one
    /// of `I + m^(N+1)`.
    cutoff: Option<u32>,
}

impl StandardBasis {
    fn from_parts(ideal: LocalIdeal, basis: Vec<LPoly>, cutoff: Option<u32>) -> Self {
        StandardBasis {
            ideal,
            basis,
            cutoff,
        }
    }

    /// Truncation degree of a basis for an ideal of infinite colength.
    pub fn cutoff(&self) -> Option<u32> {
        self.cutoff
    }

    pub fn ideal(&self) -> &LocalIdeal {
        &self.ideal
    }

    pub fn basis(&self) -> Vec<Polynomial> {
        self.basis
            .iter()
            .map(|g| g.to_polynomial(&self.ideal.ambient))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self.basis.iter().map(|g| g.lm().clone()).collect();
        v.sort();
        v
    }

    /// Normal form of `p` against the basis. When the quotient is
    /// finite with top standard degree `D`, terms above `D` are dropped,
    /// since they lie in the ideal. For infinite colength the reduction is
    /// modulo `m^(N+1)` with `N` the cutoff.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let nvars = self.ideal.ambient.len();
        mora::reduce_against(&self.basis, nvars, self.cutoff, LPoly::from_polynomial(p))
            .to_polynomial(&self.ideal.ambient)
    }

    /// Checks that every generator and every S-polynomial of the basis
    /// reduces to zero and that no leading monomial divides another.
    pub fn verify(&self) -> bool {
        let leads = self.leading_monomials();
        for (i, a) in leads.iter().enumerate() {
            for (j, b) in leads.iter().enumerate() {
                if i != j && a.divides(b) {
                    return false;
                }
            }
        }
        if !self
            .ideal
            .generators
            .iter()
            .all(|g| self.reduce(g).is_zero())
        {
            return false;
        }
        let amb = &self.ideal.ambient;
        for j in 0..self.basis.len() {
            for i in 0..j {
                let (f, g) = (&self.basis[i], &self.basis[j]);
                let lcm = f.lm().lcm(g.lm());
                let fp = f.to_polynomial(amb);
                let gp = g.to_polynomial(amb);
                let s = fp
                    .mul_monomial(&lcm.div(f.lm()).unwrap(), &(num_traits::One::one()))
                    .scale(&(f.lc().recip()))
                    - gp.mul_monomial(&lcm.div(g.lm()).unwrap(), &g.lc().recip());
                if !self.reduce(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Number of monomials outside the leading ideal.
pub fn quotient_dim(sb: &StandardBasis) -> QuotientDimension {
    if sb.cutoff.is_some() {
        return QuotientDimension::Infinite;
    }
    monomial_quotient_dim(&sb.leading_monomials(), sb.ideal.ambient.len())
}

fn check_hypersurface(f: &Polynomial) -> Result<(), LocalAlgError> {
    if f.is_zero() {
        return Err(LocalAlgError::ZeroPolynomial);
    }
    if !num_traits::Zero::is_zero(&f.constant_term()) {
        return Err(LocalAlgError::NotThroughOrigin);
    }
    Ok(())
}

/// Standard basis of the Jacobian or Tjurina ideal of `f`. Both have
/// colength at most `(d-1)^n` when finite (`tau <= mu`, Bezout), and both
/// are finite exactly when the singularity is isolated. When the truncated
/// computation cannot decide the Jacobian ideal, finiteness is settled on
/// the Tjurina ideal, which is usually much cheaper.
pub fn germ_standard_basis(f: &Polynomial, ideal: &LocalIdeal) -> StandardBasis {
    let d = f.total_degree().unwrap_or(1).saturating_sub(1);
    let bound = mora::colength_bound(d, f.ambient().len()).max(1);
    let (basis, cutoff) = match mora::deepen(ideal, bound, mora::DEEPENING_LIMIT) {
        mora::Deepening::Finite(basis) => {
            return StandardBasis::from_parts(ideal.clone(), basis, None)
        }
        mora::Deepening::Infinite(basis, cutoff) => {
            return StandardBasis::from_parts(ideal.clone(), basis, Some(cutoff))
        }
        mora::Deepening::Open(basis, cutoff) => (basis, cutoff),
    };
    let tjurina = LocalIdeal::tjurina(f);
    match tjurina.filter(|t| t != ideal) {
        None => mora::exact(ideal),
        Some(t) => {
            if mora::standard_basis_within(&t, Some(bound))
                .cutoff()
                .is_some()
            {
                return StandardBasis::from_parts(ideal.clone(), basis, Some(cutoff));
            }
            // finite colength: the truncated computation certifies by `bound`
            match mora::deepen(ideal, bound, bound) {
                mora::Deepening::Finite(basis) => {
                    StandardBasis::from_parts(ideal.clone(), basis, None)
                }
                _ => mora::exact(ideal),
            }
        }
    }
}

/// `dim k[x]_(x) / (df/dx_i)`; `Infinite` for a non-isolated singularity.
pub fn milnor_number(f: &Polynomial) -> Result<QuotientDimension, LocalAlgError> {
    check_hypersurface(f)?;
    Ok(match LocalIdeal::jacobian(f) {
        Some(ideal) => quotient_dim(&germ_standard_basis(f, &ideal)),
        None => QuotientDimension::Finite(0),
    })
}

/// `dim k[x]_(x) / (f, df/dx_i)`; `Infinite` for a non-isolated singularity.
pub fn tjurina_number(f: &Polynomial) -> Result<QuotientDimension, LocalAlgError> {
    check_hypersurface(f)?;
    Ok(match LocalIdeal::tjurina(f) {
        Some(ideal) => quotient_dim(&germ_standard_basis(f, &ideal)),
        None => QuotientDimension::Finite(0),
    })
}
