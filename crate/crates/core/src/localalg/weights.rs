//! Detects a positive weight vector making a polynomial weighted homogeneous
//! in the given coordinates.
//!
//! Normalizing the weighted degree to 1 turns the question into the linear
//! system `<w, a> = 1` over the distinct exponent vectors `a`, plus the strict
//! inequalities `w_i > 0`. The system is reduced to echelon form and the
//! inequalities in the free parameters are decided by Fourier-Motzkin
//! elimination, all over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::polycore::{Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiHomogeneousWeights {
    /// Positive integer weights, one per ambient variable, with gcd 1
    /// together with `degree`.
    pub weights: Vec<u64>,
    pub degree: u64,
}

/// Strict inequality `coeffs . s + constant > 0`.
#[derive(Clone, Debug)]
struct Strict {
    coeffs: Vec<Rational>,
    constant: Rational,
}

pub fn quasi_homogeneous_weights(f: &Polynomial) -> Option<QuasiHomogeneousWeights> {
    let n = f.ambient().len();
    if f.is_zero() || f.terms().any(|(m, _)| m.is_one()) {
        return None;
    }
    // augmented rows [a_1 .. a_n | 1]
    let mut rows: Vec<Vec<Rational>> = f
        .terms()
        .map(|(m, _)| {
            m.exponents()
                .iter()
                .map(|&e| Rational::from_integer(e.into()))
                .chain(std::iter::once(Rational::one()))
                .collect()
        })
        .collect();
    let pivot_cols = rref(&mut rows, n);
    if rows
        .iter()
        .any(|r| r[..n].iter().all(Zero::is_zero) && !r[n].is_zero())
    {
        return None;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let k = free.len();

    // w_p = rhs_p - sum_f a_pf s_f for pivot columns, w_f = s_f for free ones
    let mut constraints = Vec::with_capacity(n);
    for (r, &pc) in pivot_cols.iter().enumerate() {
        let row = &rows[r];
        let coeffs = free.iter().map(|&fc| -row[fc].clone()).collect();
        constraints.push((
            pc,
            Strict {
                coeffs,
                constant: row[n].clone(),
            },
        ));
    }
    for (j, &fc) in free.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs[j] = Rational::one();
        constraints.push((
            fc,
            Strict {
                coeffs,
                constant: Rational::zero(),
            },
        ));
    }
    let system: Vec<Strict> = constraints.iter().map(|(_, s)| s.clone()).collect();
    let params = solve_strict(system, k)?;

    let mut w = vec![Rational::zero(); n];
    for (col, s) in &constraints {
        let mut v = s.constant.clone();
        for (c, x) in s.coeffs.iter().zip(&params) {
            v += c * x;
        }
        w[*col] = v;
    }
    if w.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let lcm = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = w
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    ints.push(lcm);
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints: Vec<u64> = ints
        .iter()
        .map(|x| (x / &g).to_u64().expect("weights fit in u64"))
        .collect();
    Some(QuasiHomogeneousWeights {
        degree: ints[n],
        weights: ints[..n].to_vec(),
    })
}

/// Reduced row echelon form over the first `ncols` columns; returns pivot
/// columns, row `i` holding pivot `i`.
fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(pivot_row) {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Finds a point satisfying every strict inequality, or `None`.
fn solve_strict(system: Vec<Strict>, nvars: usize) -> Option<Vec<Rational>> {
    // stages[v] holds the constraints involving only variables v..nvars
    let mut stages = vec![system];
    for v in 0..nvars {
        let cur = stages.last().unwrap();
        let (mut keep, mut lower, mut upper) = (Vec::new(), Vec::new(), Vec::new());
        for s in cur {
            if s.coeffs[v].is_positive() {
                lower.push(s.clone());
            } else if s.coeffs[v].is_negative() {
                upper.push(s.clone());
            } else {
                keep.push(s.clone());
            }
        }
        for lo in &lower {
            for up in &upper {
                // scale so the coefficients of v cancel
                let a = lo.coeffs[v].clone();
                let b = -up.coeffs[v].clone();
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(x, y)| x * &b + y * &a)
                    .collect();
                keep.push(Strict {
                    coeffs,
                    constant: &lo.constant * &b + &up.constant * &a,
                });
            }
        }
        stages.push(keep);
    }
    if stages[nvars].iter().any(|s| !s.constant.is_positive()) {
        return None;
    }
    let mut point = vec![Rational::zero(); nvars];
    for v in (0..nvars).rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for s in &stages[v] {
            let a = &s.coeffs[v];
            if a.is_zero() {
                continue;
            }
            let mut rest = s.constant.clone();
            for (c, x) in s.coeffs[v + 1..nvars].iter().zip(&point[v + 1..nvars]) {
                rest += c * x;
            }
            // a * x + rest > 0
            let bound = -rest / a;
            if a.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        point[v] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Rational::from_integer(2.into()),
            (Some(l), None) => l + Rational::one(),
            (None, Some(h)) => h - Rational::one(),
            (None, None) => Rational::one(),
        };
    }
    Some(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, Ambient};

    fn f(s: &str) -> Polynomial {
        let a = Ambient::new(&["x", "y", "z", "w"]).unwrap();
        parse_polynomial(s, &a).unwrap()
    }

    #[test]
    fn pure_power_sums() {
        let q = quasi_homogeneous_weights(&f("x^2+y^2+z^2+w^6")).unwrap();
        assert_eq!((q.weights, q.degree), (vec![3, 3, 3, 1], 6));
        let q = quasi_homogeneous_weights(&f("x^2+y^2+z^5-w^5")).unwrap();
        assert_eq!((q.weights, q.degree), (vec![5, 5, 2, 2], 10));
    }

    #[test]
    fn deformed_germs_have_no_weights() {
        assert!(quasi_homogeneous_weights(&f("x^2+y^2+z^5-w^5+z^3*w^3")).is_none());
        assert!(quasi_homogeneous_weights(&f("x^3+y^3+z^3+w^3+x*y*z*w")).is_none());
    }

    #[test]
    fn free_parameters_need_positivity() {
        // z^2 w + ... : weights satisfy 2 wz + ww = 1 only
        let q = quasi_homogeneous_weights(&f("x^2+y^2+z^2*w")).unwrap();
        let w = &q.weights;
        assert_eq!(2 * w[2] + w[3], q.degree);
        assert!(w.iter().all(|&x| x > 0));
        // x*y - x^2 forces wy = wx and x^2 y^2 then needs degree 4 wx = 2 wx
        assert!(quasi_homogeneous_weights(&f("x*y+x^2*y^2")).is_none());
    }

    #[test]
    fn constant_term_rejected() {
        assert!(quasi_homogeneous_weights(&f("1+x")).is_none());
    }
}
