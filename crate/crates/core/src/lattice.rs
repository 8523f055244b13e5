//! Full-rank rational lattices and cosets of `L + W` for rational subspaces `W`.
//!
//! Everything is done in lattice coordinates `c = v B^-1`, where `L` becomes
//! `Z^d` and `W` stays a rational subspace. Cosets of `Z^d + W` are reduced by
//! eliminating the RREF pivot coordinates of `W` and then reducing the
//! remaining free coordinates modulo the projected lattice, whose Hermite form
//! (after clearing denominators) defines a half-open fundamental box.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{common_denominator, floor_to_int, hnf_int_rows, QMatrix, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: QMatrix,
    inverse: QMatrix,
    det: Rational,
}

/// A coset of `L + W`: the canonical basis of `W` and the reduced representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetKey {
    pub direction: Vec<QVector>,
    pub rep: QVector,
}

/// Canonical basis of `span(rows)`: the RREF rows, each scaled to a primitive
/// integer vector (the pivot entry stays positive).
pub fn canonical_basis(rows: &QMatrix) -> QMatrix {
    let (r, _) = rows.rref();
    QMatrix::new(rows.ncols(), r.into_rows().into_iter().map(|v| v.primitive()).collect())
        .expect("rows keep their width")
}

impl Lattice {
    /// Lattice generated by the rows of `basis`.
    pub fn new(basis: QMatrix) -> Result<Self> {
        if !basis.is_square() || basis.nrows() == 0 {
            return Err(Error::NonInvertibleBasis);
        }
        let inverse = basis.inverse().ok_or(Error::NonInvertibleBasis)?;
        let det = basis.det().abs();
        Ok(Lattice { basis, inverse, det })
    }

    pub fn integer(d: usize) -> Self {
        Lattice::new(QMatrix::identity(d)).expect("identity is invertible")
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Lattice::new(QMatrix::from_ints(rows))
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    /// `|det B|`, the covolume.
    pub fn det(&self) -> &Rational {
        &self.det
    }

    /// Dual lattice, basis `(B^-1)^T`.
    pub fn dual(&self) -> Lattice {
        Lattice::new(self.inverse.transpose()).expect("inverse is invertible")
    }

    /// Lattice coordinates `v B^-1`.
    pub fn coords(&self, v: &QVector) -> QVector {
        self.inverse.vec_mul(v)
    }

    /// Point with lattice coordinates `c`.
    pub fn point(&self, c: &QVector) -> QVector {
        self.basis.vec_mul(c)
    }

    /// Lattice point with integer coordinates `c`.
    pub fn point_int(&self, c: &[i64]) -> QVector {
        self.point(&QVector::from_ints(c))
    }

    pub fn contains(&self, v: &QVector) -> bool {
        self.coords(v).is_integral()
    }

    /// Whether the two lattices coincide as sets.
    pub fn same_as(&self, other: &Lattice) -> bool {
        self.dim() == other.dim()
            && other.basis.rows().iter().all(|b| self.contains(b))
            && self.basis.rows().iter().all(|b| other.contains(b))
    }

    pub fn reducer(&self, w_basis: &QMatrix) -> CosetReducer {
        CosetReducer::new(self, w_basis)
    }

    /// `v in L + span(w_basis)`.
    pub fn coset_contains(&self, w_basis: &QMatrix, v: &QVector) -> bool {
        self.reducer(w_basis).contains(v)
    }

    /// Canonical representative of `v + L + span(w_basis)`.
    pub fn reduce_mod(&self, w_basis: &QMatrix, v: &QVector) -> QVector {
        self.reducer(w_basis).reduce(v)
    }

    /// All lattice points in the closed box `[lo, hi]`.
    pub fn enumerate_in_box(&self, lo: &QVector, hi: &QVector) -> Vec<QVector> {
        let d = self.dim();
        let ranges: Vec<(BigInt, BigInt)> = (0..d)
            .map(|j| {
                let mut cmin = Rational::zero();
                let mut cmax = Rational::zero();
                for i in 0..d {
                    let m = self.inverse.get(i, j);
                    let (a, b) = (&lo[i] * m, &hi[i] * m);
                    if a <= b {
                        cmin += a;
                        cmax += b;
                    } else {
                        cmin += b;
                        cmax += a;
                    }
                }
                (cmin.ceil().to_integer(), floor_to_int(&cmax))
            })
            .collect();
        if ranges.iter().any(|(a, b)| a > b) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur: Vec<BigInt> = ranges.iter().map(|(a, _)| a.clone()).collect();
        loop {
            let p = self.point(&QVector::from_bigints(&cur));
            if (0..d).all(|i| lo[i] <= p[i] && p[i] <= hi[i]) {
                out.push(p);
            }
            let mut k = 0;
            loop {
                if k == d {
                    out.sort();
                    return out;
                }
                cur[k] += 1;
                if cur[k] <= ranges[k].1 {
                    break;
                }
                cur[k] = ranges[k].0.clone();
                k += 1;
            }
        }
    }
}

/// Precomputed reduction data for cosets of one `L + W`.
#[derive(Clone, Debug)]
pub struct CosetReducer {
    basis: QMatrix,
    inverse: QMatrix,
    direction: QMatrix,
    /// RREF of `W` in lattice coordinates, with pivot columns.
    rref: Vec<QVector>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// Common denominator of the projected generators.
    denom: BigInt,
    /// Upper-triangular Hermite basis of `denom * (projected lattice)` on the
    /// free coordinates.
    hermite: Vec<Vec<BigInt>>,
}

impl CosetReducer {
    pub fn new(l: &Lattice, w_basis: &QMatrix) -> Self {
        let d = l.dim();
        let direction = canonical_basis(w_basis);
        let in_coords = QMatrix::from_rows(direction.rows().iter().map(|w| l.coords(w)).collect());
        let (r, pivots) = if direction.nrows() == 0 {
            (QMatrix::empty(d), Vec::new())
        } else {
            in_coords.rref()
        };
        let rref = r.into_rows();
        let free: Vec<usize> = (0..d).filter(|i| !pivots.contains(i)).collect();
        let denom = common_denominator(rref.iter().flat_map(|row| free.iter().map(move |&j| &row[j])));
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for k in 0..free.len() {
            let mut g = vec![BigInt::zero(); free.len()];
            g[k] = denom.clone();
            gens.push(g);
        }
        for row in &rref {
            gens.push(
                free.iter()
                    .map(|&j| -(&row[j] * Rational::from_integer(denom.clone())).to_integer())
                    .collect(),
            );
        }
        let hermite = hnf_int_rows(gens, free.len());
        debug_assert_eq!(hermite.len(), free.len());
        CosetReducer {
            basis: l.basis.clone(),
            inverse: l.inverse.clone(),
            direction,
            rref,
            pivots,
            free,
            denom,
            hermite,
        }
    }

    /// Canonical basis of `W`.
    pub fn direction(&self) -> &QMatrix {
        &self.direction
    }

    /// Reduced lattice coordinates on the free coordinates, scaled by the
    /// common denominator.
    fn reduced_free(&self, v: &QVector) -> Vec<Rational> {
        let mut c = self.inverse.vec_mul(v);
        for (row, &p) in self.rref.iter().zip(&self.pivots) {
            let f = c[p].clone();
            if !f.is_zero() {
                c = c.add_scaled(&-f, row);
            }
        }
        let scale = Rational::from_integer(self.denom.clone());
        let mut x: Vec<Rational> = self.free.iter().map(|&j| &c[j] * &scale).collect();
        for (k, h) in self.hermite.iter().enumerate() {
            let piv = Rational::from_integer(h[k].clone());
            let q = floor_to_int(&(&x[k] / &piv));
            if q.is_zero() {
                continue;
            }
            for (xj, hj) in x.iter_mut().zip(h).skip(k) {
                *xj -= Rational::from_integer(&q * hj);
            }
        }
        x
    }

    pub fn reduce(&self, v: &QVector) -> QVector {
        let x = self.reduced_free(v);
        let d = self.basis.ncols();
        let scale = Rational::from_integer(self.denom.clone());
        let mut c = QVector::zeros(d);
        for (k, &j) in self.free.iter().enumerate() {
            c.entries_mut()[j] = &x[k] / &scale;
        }
        self.basis.vec_mul(&c)
    }

    pub fn key(&self, v: &QVector) -> CosetKey {
        CosetKey {
            direction: self.direction.rows().to_vec(),
            rep: self.reduce(v),
        }
    }

    pub fn contains(&self, v: &QVector) -> bool {
        self.reduced_free(v).iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn q(xs: &[(i64, i64)]) -> QVector {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn half_basis() -> Lattice {
        Lattice::new(QMatrix::from_rows(vec![q(&[(1, 1), (0, 1)]), q(&[(1, 2), (1, 2)])])).unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(*Lattice::integer(2).det(), int(1));
        assert_eq!(*half_basis().det(), rat(1, 2));
        assert_eq!(*Lattice::from_ints(&[&[2, 0], &[0, 3]]).unwrap().det(), int(6));
        assert!(matches!(Lattice::from_ints(&[&[1, 1], &[2, 2]]), Err(Error::NonInvertibleBasis)));
    }

    #[test]
    fn duals() {
        assert!(Lattice::integer(3).dual().same_as(&Lattice::integer(3)));
        let l = Lattice::from_ints(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(l.dual().basis().rows(), &[q(&[(1, 2), (0, 1)]), q(&[(0, 1), (1, 3)])]);
        let l = Lattice::from_ints(&[&[1, 1], &[0, 1]]).unwrap();
        let dual = l.dual();
        for b in l.basis().rows() {
            for bs in dual.basis().rows() {
                assert!(b.dot(bs).is_integer());
            }
        }
        assert!(dual.dual().same_as(&l));
    }

    #[test]
    fn membership() {
        let z2 = Lattice::integer(2);
        assert!(z2.contains(&QVector::from_ints(&[3, -5])));
        assert!(!z2.contains(&q(&[(1, 2), (0, 1)])));
        assert!(half_basis().contains(&QVector::from_ints(&[0, 1])));
    }

    #[test]
    fn coset_membership() {
        let z2 = Lattice::integer(2);
        let diag = QMatrix::from_ints(&[&[1, 1]]);
        assert!(z2.coset_contains(&diag, &q(&[(1, 2), (1, 2)])));
        assert!(!z2.coset_contains(&diag, &q(&[(1, 2), (0, 1)])));
        let full = QMatrix::from_ints(&[&[1, 0], &[0, 1]]);
        assert!(z2.coset_contains(&full, &q(&[(1, 3), (-2, 7)])));
        assert!(half_basis().coset_contains(&QMatrix::empty(2), &QVector::from_ints(&[0, 1])));
    }

    #[test]
    fn reduction_examples() {
        let z2 = Lattice::integer(2);
        let none = QMatrix::empty(2);
        assert_eq!(z2.reduce_mod(&none, &q(&[(5, 4), (-1, 3)])), q(&[(1, 4), (2, 3)]));
        let diag = QMatrix::from_ints(&[&[2, 2]]);
        let v = q(&[(7, 3), (1, 5)]);
        let r = z2.reduce_mod(&diag, &v);
        assert_eq!(z2.reduce_mod(&diag, &r), r);
        assert_eq!(z2.reduce_mod(&diag, &(&v + &q(&[(3, 1), (-1, 1)]))), r);
        assert_eq!(z2.reduce_mod(&diag, &(&v + &q(&[(5, 7), (5, 7)]))), r);
        assert_eq!(z2.reduce_mod(&diag, &q(&[(3, 2), (5, 2)])), QVector::zeros(2));
        // a slanted direction whose projection has denominators
        let slope = QMatrix::from_ints(&[&[2, 3]]);
        let w = q(&[(1, 5), (0, 1)]);
        let r = z2.reduce_mod(&slope, &w);
        assert_eq!(z2.reduce_mod(&slope, &(&w + &q(&[(2, 3), (1, 1)]))), r);
        assert_eq!(z2.reduce_mod(&slope, &(&w + &q(&[(1, 1), (0, 1)]))), r);
        assert!(!z2.coset_contains(&slope, &w));
        assert!(z2.coset_contains(&slope, &q(&[(1, 3), (0, 1)])));
    }

    #[test]
    fn box_enumeration() {
        let z2 = Lattice::integer(2);
        let pts = z2.enumerate_in_box(&QVector::from_ints(&[0, 0]), &QVector::from_ints(&[1, 1]));
        assert_eq!(
            pts,
            vec![
                QVector::from_ints(&[0, 0]),
                QVector::from_ints(&[0, 1]),
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[1, 1])
            ]
        );
        assert!(z2.enumerate_in_box(&q(&[(1, 4), (1, 4)]), &q(&[(3, 4), (3, 4)])).is_empty());
        let two = Lattice::from_ints(&[&[2, 0], &[0, 2]]).unwrap();
        let pts = two.enumerate_in_box(&QVector::from_ints(&[0, 0]), &QVector::from_ints(&[3, 3]));
        assert_eq!(pts.len(), 4);
        assert!(pts.contains(&QVector::from_ints(&[2, 2])));
    }

    #[test]
    fn canonical_basis_is_primitive_rref() {
        let b = canonical_basis(&QMatrix::new(2, vec![q(&[(1, 2), (1, 3)]), q(&[(1, 1), (2, 3)])]).unwrap());
        assert_eq!(b.rows(), &[QVector::from_ints(&[3, 2])]);
        assert_eq!(canonical_basis(&QMatrix::empty(3)).nrows(), 0);
    }
}
