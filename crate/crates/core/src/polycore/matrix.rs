use super::{Ambient, PolyError, Polynomial};

/// Dense row-major matrix of polynomials over one ambient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self, PolyError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(PolyError::MatrixShape {
                rows,
                cols,
                entries: entries.len(),
            });
        }
        let ambient = entries[0].ambient().clone();
        if let Some(bad) = entries.iter().find(|e| *e.ambient() != ambient) {
            return Err(PolyError::AmbientMismatch {
                expected: format!("{ambient:?}"),
                found: format!("{:?}", bad.ambient()),
            });
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, PolyError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(PolyError::MatrixShape {
                rows: nrows,
                cols: ncols,
                entries: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn identity(ambient: &Ambient, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Polynomial::one(ambient)
                } else {
                    Polynomial::zero(ambient)
                }
            })
            .collect();
        PolyMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ambient(&self) -> &Ambient {
        self.entries[0].ambient()
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    /// Exact determinant: cofactor expansion up to 4x4, fraction-free
    /// (Bareiss) elimination above.
    pub fn determinant(&self) -> Result<Polynomial, PolyError> {
        self.require_square()?;
        if self.rows <= 4 {
            Ok(self.determinant_cofactor())
        } else {
            self.determinant_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn determinant_cofactor(&self) -> Polynomial {
        let idx: Vec<usize> = (0..self.cols).collect();
        self.cofactor_rec(0, &idx)
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> Polynomial {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = Polynomial::zero(self.ambient());
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = &(entry * &self.cofactor_rec(row + 1, &rest));
            acc = if k % 2 == 0 { acc + minor } else { acc - minor };
        }
        acc
    }

    /// Bareiss fraction-free elimination; every intermediate division is exact.
    pub fn determinant_bareiss(&self) -> Result<Polynomial, PolyError> {
        self.require_square()?;
        let n = self.rows;
        let ambient = self.ambient().clone();
        let mut a: Vec<Vec<Polynomial>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut prev = Polynomial::one(&ambient);
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Polynomial::zero(&ambient)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
                }
                a[i][k] = Polynomial::zero(&ambient);
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    fn require_square(&self) -> Result<(), PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }
}
