//! Simplices, polytopes (unions of interior-disjoint simplices) and elements
//! of the polytope group, with exact volumes, point location and boolean
//! operations.

mod boolean;
mod cell;
mod hull;

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

pub use boolean::{canonicalize, intersect, intersect_convex, intersection_volume, overlay, subtract};
pub use cell::{ConvexCell, HalfSpace};
pub use hull::{convex_hull, hull, ConvexHull, HullFacet};

use crate::error::{Error, Result};
use crate::exact::{int, QMatrix, QVector, Rational};
use crate::par::Exec;

/// Where a point sits relative to a closed simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// Value of an a.e.-defined integer function at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointValue {
    Value(i64),
    /// The point lies on some simplex boundary, where the function is only
    /// defined up to measure zero.
    Boundary,
}

/// Convex hull of `d + 1` affinely independent points in `R^d`.
///
/// The barycentric functionals and bounding box are computed once at
/// construction; equality, ordering and hashing only look at the vertex list.
#[derive(Clone, Debug)]
pub struct Simplex {
    vertices: Vec<QVector>,
    signed_det: Rational,
    /// `lambda_i(x) = a_i . x + c_i`
    bary: Vec<(QVector, Rational)>,
    lo: QVector,
    hi: QVector,
}

impl Simplex {
    pub fn new(vertices: Vec<QVector>) -> Result<Self> {
        let d = vertices.len().saturating_sub(1);
        if d == 0 {
            return Err(Error::InvalidSimplex(format!(
                "need at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(v) = vertices.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.dim(),
            });
        }
        let edges = QMatrix::from_rows(vertices[1..].iter().map(|v| v - &vertices[0]).collect());
        let signed_det = edges.det();
        if signed_det.is_zero() {
            return Err(Error::InvalidSimplex("vertices are affinely dependent".into()));
        }
        let inv = edges.inverse().expect("nonzero determinant");
        let mut bary = Vec::with_capacity(d + 1);
        let mut a0 = QVector::zeros(d);
        let mut c0 = Rational::one();
        for k in 0..d {
            let a: QVector = (0..d).map(|i| inv.get(i, k).clone()).collect();
            let c = -a.dot(&vertices[0]);
            a0 = &a0 - &a;
            c0 -= &c;
            bary.push((a, c));
        }
        bary.insert(0, (a0, c0));
        let (lo, hi) = bounding_box(vertices.iter()).expect("nonempty");
        Ok(Simplex {
            vertices,
            signed_det,
            bary,
            lo,
            hi,
        })
    }

    pub fn from_ints(vertices: &[&[i64]]) -> Result<Self> {
        Self::new(vertices.iter().map(|v| QVector::from_ints(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    /// Determinant of the edge matrix `(v_1 - v_0, ..., v_d - v_0)`.
    pub fn signed_det(&self) -> &Rational {
        &self.signed_det
    }

    /// `|det(v_1 - v_0, ..., v_d - v_0)| / d!`
    pub fn volume(&self) -> Rational {
        self.signed_det.abs() / factorial(self.dim())
    }

    pub fn barycentric(&self, x: &QVector) -> Vec<Rational> {
        self.bary.iter().map(|(a, c)| a.dot(x) + c).collect()
    }

    pub fn locate(&self, x: &QVector) -> Location {
        let mut on_boundary = false;
        for (a, c) in &self.bary {
            let l = a.dot(x) + c;
            if l.is_negative() {
                return Location::Outside;
            }
            if l.is_zero() {
                on_boundary = true;
            }
        }
        if on_boundary {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// Componentwise bounding box `(lo, hi)`.
    pub fn bbox(&self) -> (&QVector, &QVector) {
        (&self.lo, &self.hi)
    }

    /// Quick test that the bounding box contains `x`.
    pub fn bbox_contains(&self, x: &QVector) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(self.hi.iter()))
            .all(|(xi, (l, h))| l <= xi && xi <= h)
    }

    pub fn translate(&self, t: &QVector) -> Simplex {
        let vertices: Vec<QVector> = self.vertices.iter().map(|v| v + t).collect();
        let bary = self
            .bary
            .iter()
            .map(|(a, c)| (a.clone(), c - a.dot(t)))
            .collect();
        Simplex {
            vertices,
            signed_det: self.signed_det.clone(),
            bary,
            lo: &self.lo + t,
            hi: &self.hi + t,
        }
    }

    /// Applies `x -> x M` to every vertex (row-vector convention).
    pub fn transform(&self, m: &QMatrix) -> Result<Simplex> {
        Simplex::new(self.vertices.iter().map(|v| m.vec_mul(v)).collect())
    }

    /// Vertex index subsets spanning the `j`-dimensional faces.
    pub fn faces(&self, j: usize) -> Result<Vec<Vec<usize>>> {
        let d = self.dim();
        if j > d {
            return Err(Error::OutOfRange {
                what: "face dimension",
                value: j as i64,
                lo: 0,
                hi: d as i64,
            });
        }
        Ok((0..=d).combinations(j + 1).collect())
    }

    /// Half-spaces `lambda_i >= 0`, the `i`-th one opposite vertex `i`.
    pub fn halfspaces(&self) -> Vec<HalfSpace> {
        self.bary
            .iter()
            .map(|(a, c)| HalfSpace::new(-a, c.clone()))
            .collect()
    }

    pub fn centroid(&self) -> QVector {
        QVector::centroid(&self.vertices)
    }
}

impl PartialEq for Simplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Simplex {}

impl Hash for Simplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

pub fn bounding_box<'a>(points: impl IntoIterator<Item = &'a QVector>) -> Option<(QVector, QVector)> {
    let mut it = points.into_iter();
    let first = it.next()?;
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in it {
        for i in 0..p.dim() {
            if p[i] < lo[i] {
                lo.entries_mut()[i] = p[i].clone();
            }
            if p[i] > hi[i] {
                hi.entries_mut()[i] = p[i].clone();
            }
        }
    }
    Some((lo, hi))
}

/// Union of simplices with pairwise disjoint interiors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    simplices: Vec<Simplex>,
}

impl Polytope {
    /// Validates pairwise interior-disjointness (quadratic in the number of
    /// simplices).
    pub fn new(dim: usize, simplices: Vec<Simplex>) -> Result<Self> {
        let p = Self::new_unchecked(dim, simplices)?;
        p.validate(Exec::default())?;
        Ok(p)
    }

    /// Checks dimensions only; the caller vouches for disjointness.
    pub fn new_unchecked(dim: usize, simplices: Vec<Simplex>) -> Result<Self> {
        if let Some(s) = simplices.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.dim(),
            });
        }
        Ok(Polytope { dim, simplices })
    }

    pub fn empty(dim: usize) -> Self {
        Polytope {
            dim,
            simplices: Vec::new(),
        }
    }

    pub fn from_simplex(s: Simplex) -> Self {
        Polytope {
            dim: s.dim(),
            simplices: vec![s],
        }
    }

    pub fn validate(&self, exec: Exec) -> Result<()> {
        let pairs: Vec<(usize, usize)> = (0..self.simplices.len()).tuple_combinations().collect();
        let overlaps = exec.map(&pairs, |&(i, j)| {
            intersection_volume(&self.simplices[i], &self.simplices[j]).is_positive()
        });
        match pairs.iter().zip(overlaps).find(|(_, o)| *o) {
            Some((&(first, second), _)) => Err(Error::OverlappingSimplices { first, second }),
            None => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn into_simplices(self) -> Vec<Simplex> {
        self.simplices
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn volume(&self) -> Rational {
        self.simplices.iter().map(Simplex::volume).sum()
    }

    pub fn translate(&self, t: &QVector) -> Polytope {
        Polytope {
            dim: self.dim,
            simplices: self.simplices.iter().map(|s| s.translate(t)).collect(),
        }
    }

    pub fn bbox(&self) -> Option<(QVector, QVector)> {
        bounding_box(self.simplices.iter().flat_map(|s| [&s.lo, &s.hi]))
    }

    pub fn vertices(&self) -> Vec<QVector> {
        self.simplices
            .iter()
            .flat_map(|s| s.vertices.iter().cloned())
            .sorted()
            .dedup()
            .collect()
    }

    /// `Some(true)` inside, `Some(false)` outside, `None` on a simplex boundary.
    pub fn contains(&self, x: &QVector) -> Option<bool> {
        let mut hit = false;
        for s in self.simplices.iter().filter(|s| s.bbox_contains(x)) {
            match s.locate(x) {
                Location::Interior => hit = true,
                Location::Boundary => return None,
                Location::Outside => {}
            }
        }
        Some(hit)
    }
}

/// One term `coeff * [simplex]` of a polytope-group element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub coeff: i64,
    pub simplex: Simplex,
}

/// Formal integer combination of simplices: an element of the polytope group.
/// Two elements are the same group element when their indicator functions
/// agree almost everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    dim: usize,
    terms: Vec<Term>,
}

impl GroupElement {
    pub fn new(dim: usize, terms: Vec<Term>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.simplex.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: t.simplex.dim(),
            });
        }
        Ok(GroupElement {
            dim,
            terms: terms.into_iter().filter(|t| t.coeff != 0).collect(),
        })
    }

    pub fn zero(dim: usize) -> Self {
        GroupElement {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn from_polytope(p: &Polytope) -> Self {
        Self::from_polytope_scaled(p, 1)
    }

    pub fn from_polytope_scaled(p: &Polytope, coeff: i64) -> Self {
        GroupElement {
            dim: p.dim,
            terms: if coeff == 0 {
                Vec::new()
            } else {
                p.simplices
                    .iter()
                    .map(|s| Term {
                        coeff,
                        simplex: s.clone(),
                    })
                    .collect()
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term-list concatenation.
    pub fn add(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        GroupElement {
            dim: self.dim,
            terms,
        }
    }

    pub fn neg(&self) -> GroupElement {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> GroupElement {
        GroupElement {
            dim: self.dim,
            terms: if k == 0 {
                Vec::new()
            } else {
                self.terms
                    .iter()
                    .map(|t| Term {
                        coeff: t.coeff * k,
                        simplex: t.simplex.clone(),
                    })
                    .collect()
            },
        }
    }

    pub fn sub(&self, other: &GroupElement) -> GroupElement {
        self.add(&other.neg())
    }

    pub fn translate(&self, t: &QVector) -> GroupElement {
        GroupElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|term| Term {
                    coeff: term.coeff,
                    simplex: term.simplex.translate(t),
                })
                .collect(),
        }
    }

    /// `sum coeff * vol(simplex)`; may be negative or zero.
    pub fn volume(&self) -> Rational {
        self.terms
            .iter()
            .map(|t| t.simplex.volume() * int(t.coeff))
            .sum()
    }

    /// Value of the indicator function at `x`.
    pub fn indicator_value(&self, x: &QVector) -> PointValue {
        let mut total = 0;
        for t in self.terms.iter().filter(|t| t.simplex.bbox_contains(x)) {
            match t.simplex.locate(x) {
                Location::Interior => total += t.coeff,
                Location::Boundary => return PointValue::Boundary,
                Location::Outside => {}
            }
        }
        PointValue::Value(total)
    }

    pub fn bbox(&self) -> Option<(QVector, QVector)> {
        bounding_box(self.terms.iter().flat_map(|t| [&t.simplex.lo, &t.simplex.hi]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn tri() -> Simplex {
        Simplex::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
    }

    pub(crate) fn unit_square() -> Polytope {
        Polytope::new(
            2,
            vec![
                Simplex::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap(),
                Simplex::from_ints(&[&[1, 0], &[1, 1], &[0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn q(xs: &[(i64, i64)]) -> QVector {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn simplex_volumes() {
        assert_eq!(tri().volume(), rat(1, 2));
        let tet = Simplex::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(tet.volume(), rat(1, 6));
        let big = Simplex::from_ints(&[&[0, 0], &[2, 0], &[0, 3]]).unwrap();
        // shoelace: |0*0 - 2*0 + 2*3 - 0*0 + 0*0 - 0*3| / 2
        let shoelace = rat(2 * 3, 2);
        assert_eq!(big.volume(), shoelace);
    }

    #[test]
    fn degenerate_simplex_rejected() {
        assert!(matches!(
            Simplex::from_ints(&[&[0, 0], &[1, 1], &[2, 2]]),
            Err(Error::InvalidSimplex(_))
        ));
        assert!(Simplex::from_ints(&[&[0, 0], &[1, 1]]).is_err());
    }

    #[test]
    fn face_counts() {
        assert_eq!(tri().faces(0).unwrap().len(), 3);
        assert_eq!(tri().faces(1).unwrap().len(), 3);
        let tet = Simplex::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(tet.faces(2).unwrap().len(), 4);
        assert!(tri().faces(3).is_err());
    }

    #[test]
    fn point_location_examples() {
        let t = tri();
        assert_eq!(t.locate(&q(&[(1, 4), (1, 4)])), Location::Interior);
        assert_eq!(t.locate(&q(&[(1, 2), (0, 1)])), Location::Boundary);
        assert_eq!(t.locate(&q(&[(1, 1), (1, 1)])), Location::Outside);
    }

    #[test]
    fn translate_keeps_location() {
        let t = tri();
        let shift = q(&[(3, 2), (-5, 3)]);
        let moved = t.translate(&shift);
        assert_eq!(moved, Simplex::new(t.vertices().iter().map(|v| v + &shift).collect()).unwrap());
        let x = q(&[(1, 5), (2, 7)]);
        assert_eq!(moved.locate(&(&x + &shift)), t.locate(&x));
    }

    #[test]
    fn group_volumes() {
        let sq = GroupElement::from_polytope(&unit_square());
        assert_eq!(sq.volume(), rat(1, 1));
        assert_eq!(sq.sub(&sq).volume(), rat(0, 1));
        let two_tri = GroupElement::new(2, vec![Term { coeff: 2, simplex: tri() }]).unwrap();
        assert_eq!(two_tri.sub(&sq).volume(), rat(0, 1));
    }

    #[test]
    fn indicator_examples() {
        let sq = GroupElement::from_polytope(&unit_square());
        assert_eq!(sq.indicator_value(&q(&[(1, 3), (1, 3)])), PointValue::Value(1));
        assert_eq!(sq.indicator_value(&q(&[(2, 1), (2, 1)])), PointValue::Value(0));
        let shifted = sq.translate(&QVector::from_ints(&[1, 0]));
        // the square's center lies on the triangulation diagonal
        assert_eq!(sq.sub(&shifted).indicator_value(&q(&[(1, 2), (1, 2)])), PointValue::Boundary);
        assert_eq!(sq.sub(&shifted).indicator_value(&q(&[(1, 4), (1, 3)])), PointValue::Value(1));
        assert_eq!(sq.sub(&shifted).indicator_value(&q(&[(5, 4), (1, 3)])), PointValue::Value(-1));
    }

    #[test]
    fn overlapping_polytope_rejected() {
        let err = Polytope::new(2, vec![tri(), tri().translate(&q(&[(1, 4), (0, 1)]))]);
        assert!(matches!(err, Err(Error::OverlappingSimplices { first: 0, second: 1 })));
        let touching = Polytope::new(2, vec![tri(), tri().translate(&QVector::from_ints(&[1, 0]))]);
        assert!(touching.is_ok());
    }
}
