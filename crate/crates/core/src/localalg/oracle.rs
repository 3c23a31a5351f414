//! Linear-algebra dimension of `k[x]/(I + m^N)`: the rank of the span of all
//! `monomial * generator` products below degree `N`, computed by exact sparse
//! elimination over the rationals. Independent of the standard-basis code.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::LocalIdeal;
use crate::polycore::{Monomial, Rational};

/// All exponent vectors in `nvars` variables with total degree `< cutoff`,
/// ascending by degree.
fn monomials_below(nvars: usize, cutoff: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..cutoff {
        let mut cur = vec![0u32; nvars];
        of_degree(nvars, 0, d, &mut cur, &mut out);
    }
    out
}

fn of_degree(nvars: usize, var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if nvars == 0 {
        if left == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    if var == nvars - 1 {
        cur[var] = left;
        out.push(Monomial::new(cur.clone()));
        cur[var] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[var] = e;
        of_degree(nvars, var + 1, left - e, cur, out);
    }
    cur[var] = 0;
}

pub fn truncated_dim_oracle(ideal: &LocalIdeal, cutoff: u32) -> u64 {
    let nvars = ideal.ambient().len();
    let columns = monomials_below(nvars, cutoff);
    let index: HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut pivots: HashMap<usize, BTreeMap<usize, Rational>> = HashMap::new();
    for g in ideal.generators() {
        let Some(ord) = g.order() else { continue };
        if ord >= cutoff {
            continue;
        }
        for mult in columns.iter().filter(|m| m.degree() + ord < cutoff) {
            let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
            for (m, c) in g.terms() {
                let prod = m.mul(mult);
                if let Some(&col) = index.get(&prod) {
                    row.insert(col, c.clone());
                }
            }
            insert_row(&mut pivots, row);
        }
    }
    (columns.len() - pivots.len()) as u64
}

/// Reduces `row` against the echelon set and stores it if independent.
fn insert_row(
    pivots: &mut HashMap<usize, BTreeMap<usize, Rational>>,
    mut row: BTreeMap<usize, Rational>,
) {
    while let Some((&lead, lc)) = row.iter().next() {
        match pivots.get(&lead) {
            None => {
                let inv = Rational::from_integer(1.into()) / lc;
                for v in row.values_mut() {
                    *v *= &inv;
                }
                pivots.insert(lead, row);
                return;
            }
            Some(p) => {
                let factor = lc.clone();
                for (col, v) in p {
                    let e = row.entry(*col).or_insert_with(Rational::zero);
                    *e -= &factor * v;
                    if e.is_zero() {
                        row.remove(col);
                    }
                }
            }
        }
    }
}

/// Smallest cutoff `N >= max generator degree + 2` with equal oracle
/// dimensions at `N` and `N + 1`, searched up to `max_cutoff`.
pub fn stabilized_oracle_dim(ideal: &LocalIdeal, max_cutoff: u32) -> Option<OracleStabilization> {
    let start = ideal
        .generators()
        .iter()
        .filter_map(|g| g.total_degree())
        .max()
        .unwrap_or(0)
        + 2;
    let mut prev = truncated_dim_oracle(ideal, start);
    for n in start..max_cutoff {
        let next = truncated_dim_oracle(ideal, n + 1);
        if next == prev {
            return Some(OracleStabilization {
                cutoff: n,
                dimension: prev,
            });
        }
        prev = next;
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleStabilization {
    /// First cutoff `N` whose dimension equals the one at `N + 1`.
    pub cutoff: u32,
    pub dimension: u64,
}
