use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{QMatrix, QVector};
use crate::error::{Error, Result};

/// Row-style Hermite normal form of an integer matrix given as rows.
///
/// Returns only the nonzero rows: upper echelon, positive pivots, and every
/// entry above a pivot reduced into `[0, pivot)`. The integer row span is
/// unchanged.
pub fn hnf_int_rows(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut pr = 0;
    for col in 0..ncols {
        if pr == n {
            break;
        }
        while let Some(p) = (pr..n)
            .filter(|&i| !a[i][col].is_zero())
            .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()))
        {
            a.swap(pr, p);
            let mut clean = true;
            for i in pr + 1..n {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[pr][col]);
                sub_multiple(&mut a, i, pr, &q);
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[pr][col].is_zero() {
            continue;
        }
        if a[pr][col].is_negative() {
            for x in a[pr].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..pr {
            let q = a[i][col].div_floor(&a[pr][col]);
            if !q.is_zero() {
                sub_multiple(&mut a, i, pr, &q);
            }
        }
        pr += 1;
    }
    a.truncate(pr);
    a
}

fn sub_multiple(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = a[source].clone();
    for (x, s) in a[target].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

/// Hermite normal form of a matrix with integer entries. The result has the
/// same shape as the input, with zero rows at the bottom.
pub fn hnf(m: &QMatrix) -> Result<QMatrix> {
    if !m.is_integral() {
        return Err(Error::NonIntegerMatrix);
    }
    let rows: Vec<Vec<BigInt>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_integer()).collect())
        .collect();
    let mut h = hnf_int_rows(rows, m.ncols());
    h.resize(m.nrows(), vec![BigInt::zero(); m.ncols()]);
    QMatrix::new(m.ncols(), h.iter().map(|r| QVector::from_bigints(r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn already_reduced() {
        let m = QMatrix::from_ints(&[&[2, 0], &[0, 2]]);
        assert_eq!(hnf(&m).unwrap(), m);
        assert_eq!(hnf(&QMatrix::identity(3)).unwrap(), QMatrix::identity(3));
    }

    #[test]
    fn zero_matrix() {
        let z = QMatrix::from_ints(&[&[0, 0], &[0, 0]]);
        assert_eq!(hnf(&z).unwrap(), z);
    }

    #[test]
    fn rejects_fractions() {
        let m = QMatrix::from_rows(vec![QVector::new(vec![rat(1, 2)])]);
        assert!(matches!(hnf(&m), Err(Error::NonIntegerMatrix)));
    }

    #[test]
    fn reduces_above_pivots() {
        let h = hnf(&QMatrix::from_ints(&[&[3, 5, 7], &[0, 2, 9], &[0, 0, 4]])).unwrap();
        for (i, row) in h.rows().iter().enumerate() {
            let p = row.leading_index().unwrap();
            assert!(row[p] > rat(0, 1));
            for above in &h.rows()[..i] {
                assert!(above[p] >= rat(0, 1) && above[p] < row[p]);
            }
        }
    }
}
