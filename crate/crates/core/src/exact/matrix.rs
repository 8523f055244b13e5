use num_traits::{One, Signed, Zero};

use super::{QVector, Rational};
use crate::error::{Error, Result};

/// Dense rational matrix stored by rows. The column count is kept
/// explicitly so that matrices with zero rows still know their width.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QMatrix {
    ncols: usize,
    rows: Vec<QVector>,
}

impl QMatrix {
    pub fn new(ncols: usize, rows: Vec<QVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.dim(),
            });
        }
        Ok(QMatrix { ncols, rows })
    }

    /// Builds from nonempty rows; panics on ragged input.
    pub fn from_rows(rows: Vec<QVector>) -> Self {
        let ncols = rows.first().map_or(0, QVector::dim);
        Self::new(ncols, rows).expect("ragged matrix rows")
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| QVector::from_ints(r)).collect())
    }

    pub fn empty(ncols: usize) -> Self {
        QMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn identity(d: usize) -> Self {
        QMatrix {
            ncols: d,
            rows: (0..d).map(|i| QVector::unit(d, i)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<QVector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().all(QVector::is_integral)
    }

    pub fn transpose(&self) -> QMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        QMatrix {
            ncols: self.nrows(),
            rows,
        }
    }

    /// `M x` for a column vector `x` of length `ncols`.
    pub fn mul_vec(&self, x: &QVector) -> QVector {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    /// `x M` for a row vector `x` of length `nrows`.
    pub fn vec_mul(&self, x: &QVector) -> QVector {
        debug_assert_eq!(x.dim(), self.nrows());
        let mut out = QVector::zeros(self.ncols);
        for (xi, row) in x.iter().zip(&self.rows) {
            if xi.is_zero() {
                continue;
            }
            for (o, r) in out.entries_mut().iter_mut().zip(row.iter()) {
                *o += xi * r;
            }
        }
        out
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        QMatrix {
            ncols: other.ncols,
            rows: self.rows.iter().map(|r| other.vec_mul(r)).collect(),
        }
    }

    /// Reduced row echelon form: nonzero rows only, plus pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..self.ncols {
            if pr == a.len() {
                break;
            }
            let Some(p) = (pr..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(pr, p);
            let inv = a[pr][col].recip();
            for x in a[pr].iter_mut().skip(col) {
                *x *= &inv;
            }
            let pivot_row = a[pr].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == pr || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
            }
            pivots.push(col);
            pr += 1;
        }
        a.truncate(pr);
        let rows = a.into_iter().map(QVector::new).collect();
        (
            QMatrix {
                ncols: self.ncols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact determinant by Gaussian elimination. Square matrices only.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.ncols;
        let mut a: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let piv = a[col][col].clone();
            det *= &piv;
            let pivot_row = a[col].clone();
            for row in a.iter_mut().skip(col + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let f = &row[col] / &piv;
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.ncols;
        let aug = QMatrix {
            ncols: 2 * n,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut v = r.to_vec();
                    v.extend(QVector::unit(n, i).into_inner());
                    QVector::new(v)
                })
                .collect(),
        };
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(QMatrix {
            ncols: n,
            rows: r
                .rows
                .into_iter()
                .map(|row| QVector::new(row.into_inner().split_off(n)))
                .collect(),
        })
    }
}

/// One exact solution of `a x = b`, or `None` when inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(a: &QMatrix, b: &QVector) -> Option<QVector> {
    assert_eq!(a.nrows(), b.dim(), "row count must match right-hand side");
    let n = a.ncols();
    let aug = QMatrix {
        ncols: n + 1,
        rows: a
            .rows()
            .iter()
            .zip(b.iter())
            .map(|(r, bi)| {
                let mut v = r.to_vec();
                v.push(bi.clone());
                QVector::new(v)
            })
            .collect(),
    };
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = QVector::zeros(n);
    for (row, &p) in r.rows().iter().zip(&pivots) {
        x.entries_mut()[p] = row[n].clone();
    }
    Some(x)
}

/// Basis of the right null space `{x : a x = 0}`, one row per free column of
/// the reduced echelon form, each with its first nonzero entry positive.
pub fn kernel_basis(a: &QMatrix) -> QMatrix {
    let n = a.ncols();
    let (r, pivots) = a.rref();
    let mut rows = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = QVector::zeros(n);
        v.entries_mut()[f] = Rational::one();
        for (row, &p) in r.rows().iter().zip(&pivots) {
            v.entries_mut()[p] = -row[f].clone();
        }
        if v.leading_index().is_some_and(|i| v[i].is_negative()) {
            v = -&v;
        }
        rows.push(v);
    }
    QMatrix { ncols: n, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn solve_examples() {
        let id = QMatrix::identity(2);
        let b = QVector::new(vec![rat(1, 2), int(3)]);
        assert_eq!(solve_linear(&id, &b), Some(b.clone()));

        let a = QMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_linear(&a, &QVector::from_ints(&[1, 3])), None);
        let x = solve_linear(&a, &QVector::from_ints(&[1, 2])).unwrap();
        assert_eq!(&x[0] + &x[1], int(1));
        assert_eq!(solve_linear(&a, &QVector::from_ints(&[1, 2])), Some(x));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&QMatrix::identity(2)).nrows(), 0);
        let k = kernel_basis(&QMatrix::from_ints(&[&[1, 1]]));
        assert_eq!(k.rows(), &[QVector::from_ints(&[1, -1])]);
        let a = QMatrix::from_ints(&[&[1, 2, 3]]);
        let k = kernel_basis(&a);
        assert_eq!(k.nrows(), 2);
        assert_eq!(k.rank(), 2);
        for v in k.rows() {
            assert!(a.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn det_and_inverse() {
        let m = QMatrix::from_rows(vec![
            QVector::from_ints(&[1, 0]),
            QVector::new(vec![rat(1, 2), rat(1, 2)]),
        ]);
        assert_eq!(m.det(), rat(1, 2));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        assert!(QMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(QMatrix::from_ints(&[&[0, 1], &[1, 0]]).det(), int(-1));
    }

    #[test]
    fn rref_pivots() {
        let (r, p) = QMatrix::from_ints(&[&[0, 2, 4], &[0, 1, 2], &[1, 0, 1]]).rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.rows(), &[QVector::from_ints(&[1, 0, 1]), QVector::from_ints(&[0, 1, 2])]);
    }
}
