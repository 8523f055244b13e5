use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::{bounding_box, Simplex};
use crate::exact::{QMatrix, QVector, Rational};

/// Closed half-space `normal . x <= offset`, scaled so that `normal` is a
/// primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: QVector,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: QVector, offset: Rational) -> Self {
        let p = normal.primitive();
        let lead = normal.leading_index().expect("zero half-space normal");
        let factor = &p[lead] / &normal[lead];
        HalfSpace {
            normal: p,
            offset: offset * factor,
        }
    }

    /// Signed slack `normal . x - offset`; non-positive inside.
    pub fn eval(&self, x: &QVector) -> Rational {
        self.normal.dot(x) - &self.offset
    }

    /// The opposite closed half-space.
    pub fn complement(&self) -> HalfSpace {
        HalfSpace {
            normal: -&self.normal,
            offset: -self.offset.clone(),
        }
    }

    pub fn translate(&self, t: &QVector) -> HalfSpace {
        HalfSpace {
            normal: self.normal.clone(),
            offset: &self.offset + self.normal.dot(t),
        }
    }
}

/// Full-dimensional convex polytope held in both representations: an
/// irredundant list of facet half-spaces and its vertex list (sorted
/// lexicographically), plus for every vertex the facets tight at it.
#[derive(Clone, Debug)]
pub struct ConvexCell {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    vertices: Vec<QVector>,
    tight: Vec<Vec<usize>>,
}

impl ConvexCell {
    pub fn from_simplex(s: &Simplex) -> Self {
        Self::build(s.dim(), s.halfspaces(), s.vertices().to_vec())
            .expect("a simplex is full-dimensional")
    }

    /// Assembles a cell from half-spaces and the exact vertex set they
    /// cut out. Returns `None` unless the vertices span `R^dim`.
    pub fn build(dim: usize, halfspaces: Vec<HalfSpace>, vertices: Vec<QVector>) -> Option<Self> {
        let vertices: Vec<QVector> = vertices.into_iter().sorted().dedup().collect();
        if affine_dim(&vertices.iter().collect::<Vec<_>>()) != Some(dim) {
            return None;
        }
        let mut cell = ConvexCell {
            dim,
            halfspaces,
            vertices,
            tight: Vec::new(),
        };
        cell.prune();
        Some(cell)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn bbox(&self) -> (QVector, QVector) {
        bounding_box(&self.vertices).expect("cells have vertices")
    }

    /// Drops half-spaces that are not facets and recomputes tight sets.
    fn prune(&mut self) {
        let hs = std::mem::take(&mut self.halfspaces);
        let mut kept: Vec<HalfSpace> = Vec::new();
        for h in hs {
            if kept.contains(&h) {
                continue;
            }
            let on: Vec<&QVector> = self.vertices.iter().filter(|v| h.eval(v).is_zero()).collect();
            if on.len() >= self.dim && affine_dim(&on) == Some(self.dim - 1) {
                kept.push(h);
            }
        }
        self.tight = self
            .vertices
            .iter()
            .map(|v| {
                kept.iter()
                    .enumerate()
                    .filter(|(_, h)| h.eval(v).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        self.halfspaces = kept;
    }

    fn adjacent(&self, u: usize, w: usize) -> bool {
        let common: Vec<usize> = self.tight[u]
            .iter()
            .filter(|i| self.tight[w].contains(i))
            .copied()
            .collect();
        if common.len() + 1 < self.dim {
            return false;
        }
        if self.dim == 1 {
            return true;
        }
        let normals = QMatrix::from_rows(common.iter().map(|&i| self.halfspaces[i].normal.clone()).collect());
        normals.rank() == self.dim - 1
    }

    /// Intersection with a closed half-space; `None` when the result has
    /// empty interior.
    pub fn clip(&self, h: &HalfSpace) -> Option<ConvexCell> {
        let vals: Vec<Rational> = self.vertices.iter().map(|v| h.eval(v)).collect();
        if vals.iter().all(|x| !x.is_positive()) {
            return Some(self.clone());
        }
        if vals.iter().all(|x| !x.is_negative()) {
            return None;
        }
        let mut verts: Vec<QVector> = self
            .vertices
            .iter()
            .zip(&vals)
            .filter(|(_, x)| !x.is_positive())
            .map(|(v, _)| v.clone())
            .collect();
        for (u, w) in (0..self.vertices.len()).tuple_combinations() {
            let (fu, fw) = (&vals[u], &vals[w]);
            let crossing = (fu.is_negative() && fw.is_positive()) || (fu.is_positive() && fw.is_negative());
            if crossing && self.adjacent(u, w) {
                let t = fu / (fu - fw);
                let (pu, pw) = (&self.vertices[u], &self.vertices[w]);
                verts.push(pu.add_scaled(&t, &(pw - pu)));
            }
        }
        let mut hs = self.halfspaces.clone();
        hs.push(h.clone());
        ConvexCell::build(self.dim, hs, verts)
    }

    pub fn clip_all<'a>(&self, hs: impl IntoIterator<Item = &'a HalfSpace>) -> Option<ConvexCell> {
        let mut cur = self.clone();
        for h in hs {
            cur = cur.clip(h)?;
        }
        Some(cur)
    }

    /// Interior intersection with another cell, or `None` if measure zero.
    pub fn intersect(&self, other: &ConvexCell) -> Option<ConvexCell> {
        let (alo, ahi) = self.bbox();
        let (blo, bhi) = other.bbox();
        for i in 0..self.dim {
            if ahi[i] <= blo[i] || bhi[i] <= alo[i] {
                return None;
            }
        }
        self.clip_all(other.halfspaces())
    }

    /// `closure(self \ other)` as interior-disjoint convex slabs, carved off
    /// one facet of `other` at a time in facet order.
    pub fn subtract(&self, other: &ConvexCell) -> Vec<ConvexCell> {
        if self.intersect(other).is_none() {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        let mut cur = self.clone();
        for h in other.halfspaces() {
            if let Some(slab) = cur.clip(&h.complement()) {
                out.push(slab);
            }
            match cur.clip(h) {
                Some(c) => cur = c,
                None => break,
            }
        }
        out
    }

    pub fn translate(&self, t: &QVector) -> ConvexCell {
        ConvexCell {
            dim: self.dim,
            halfspaces: self.halfspaces.iter().map(|h| h.translate(t)).collect(),
            vertices: self.vertices.iter().map(|v| v + t).collect(),
            tight: self.tight.clone(),
        }
    }

    /// Fan triangulation: cone from the lexicographically least vertex over
    /// a recursive triangulation of every facet not containing it.
    pub fn triangulate(&self) -> Vec<Simplex> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.fan(&all, self.dim)
            .into_iter()
            .map(|idx| {
                Simplex::new(idx.into_iter().map(|i| self.vertices[i].clone()).collect())
                    .expect("fan simplices are nondegenerate")
            })
            .collect()
    }

    fn fan(&self, face: &[usize], fdim: usize) -> Vec<Vec<usize>> {
        if fdim == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for h in 0..self.halfspaces.len() {
            let sub: Vec<usize> = face.iter().copied().filter(|&v| self.tight[v].contains(&h)).collect();
            if sub.len() < fdim || sub.len() == face.len() || sub.contains(&apex) || facets.contains(&sub) {
                continue;
            }
            let pts: Vec<&QVector> = sub.iter().map(|&i| &self.vertices[i]).collect();
            if affine_dim(&pts) == Some(fdim - 1) {
                facets.push(sub);
            }
        }
        let mut out = Vec::new();
        for f in facets {
            for mut s in self.fan(&f, fdim - 1) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }

    pub fn volume(&self) -> Rational {
        self.triangulate().iter().map(Simplex::volume).sum()
    }

    pub fn contains_interior(&self, x: &QVector) -> bool {
        self.halfspaces.iter().all(|h| h.eval(x).is_negative())
    }
}

/// Affine dimension of a point set (`None` for the empty set).
pub(crate) fn affine_dim(points: &[&QVector]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    if rest.is_empty() {
        return Some(0);
    }
    Some(QMatrix::from_rows(rest.iter().map(|p| *p - *first).collect()).rank())
}
