//! Exact convex hulls in dimensions 1 to 3.
//!
//! The 3D hull is built incrementally: each new point that lies strictly
//! beyond some facet replaces the visible facets by cones from the point
//! over the horizon edges. Facets are kept as merged coplanar polygons, so
//! the facet/edge/vertex structure is the true face lattice.

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::{ConvexCell, HalfSpace, Polytope};
use crate::error::{Error, Result};
use crate::exact::{QVector, Rational};

/// A facet with outward primitive normal: `normal . x <= offset` on the hull.
/// For `d = 3` the vertices are in counter-clockwise order seen from outside;
/// for `d = 2` they are the two edge endpoints in counter-clockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullFacet {
    pub normal: QVector,
    pub offset: Rational,
    pub vertices: Vec<QVector>,
}

#[derive(Clone, Debug)]
pub struct ConvexHull {
    dim: usize,
    /// Counter-clockwise for `d = 2`, lexicographic otherwise.
    vertices: Vec<QVector>,
    facets: Vec<HullFacet>,
}

impl ConvexHull {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[HullFacet] {
        &self.facets
    }

    /// Edges as `(a, b)` with `a < b` lexicographically.
    pub fn edges(&self) -> Vec<(QVector, QVector)> {
        match self.dim {
            1 => vec![(self.vertices[0].clone(), self.vertices[1].clone())],
            2 => self.facets.iter().map(|f| ordered(&f.vertices[0], &f.vertices[1])).collect(),
            _ => self
                .facets
                .iter()
                .flat_map(|f| polygon_edges(&f.vertices))
                .sorted()
                .dedup()
                .collect(),
        }
    }

    pub fn to_cell(&self) -> ConvexCell {
        let hs = self
            .facets
            .iter()
            .map(|f| HalfSpace::new(f.normal.clone(), f.offset.clone()))
            .collect();
        ConvexCell::build(self.dim, hs, self.vertices.clone()).expect("hull is full-dimensional")
    }

    pub fn to_polytope(&self) -> Polytope {
        Polytope::new_unchecked(self.dim, self.to_cell().triangulate()).expect("dimensions agree")
    }

    pub fn volume(&self) -> Rational {
        self.to_cell().volume()
    }
}

fn ordered(a: &QVector, b: &QVector) -> (QVector, QVector) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Consecutive vertex pairs of a closed polygon, each ordered.
pub(crate) fn polygon_edges(cycle: &[QVector]) -> Vec<(QVector, QVector)> {
    (0..cycle.len())
        .map(|i| ordered(&cycle[i], &cycle[(i + 1) % cycle.len()]))
        .collect()
}

/// Triangulated convex hull of a point set spanning `R^d`, `d <= 3`.
pub fn convex_hull(points: &[QVector]) -> Result<Polytope> {
    Ok(hull(points)?.to_polytope())
}

/// Convex hull with its facet structure.
pub fn hull(points: &[QVector]) -> Result<ConvexHull> {
    let Some(d) = points.first().map(QVector::dim) else {
        return Err(Error::DegenerateInput("no points".into()));
    };
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.dim(),
        });
    }
    match d {
        1 => hull_1d(points),
        2 => hull_2d(points),
        3 => hull_3d(points),
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

fn hull_1d(points: &[QVector]) -> Result<ConvexHull> {
    let lo = points.iter().min().expect("nonempty").clone();
    let hi = points.iter().max().expect("nonempty").clone();
    if lo == hi {
        return Err(Error::DegenerateInput("points do not span R^1".into()));
    }
    Ok(ConvexHull {
        dim: 1,
        facets: vec![
            HullFacet {
                normal: QVector::from_ints(&[-1]),
                offset: -lo[0].clone(),
                vertices: vec![lo.clone()],
            },
            HullFacet {
                normal: QVector::from_ints(&[1]),
                offset: hi[0].clone(),
                vertices: vec![hi.clone()],
            },
        ],
        vertices: vec![lo, hi],
    })
}

fn cross2(o: &[Rational; 2], a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Monotone chain on 2D coordinates; returns indices of the strict hull
/// corners in counter-clockwise order (collinear points dropped).
fn chain_2d(pts: &[[Rational; 2]]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| pts[i].cmp(&pts[j]));
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && !cross2(&pts[lower[lower.len() - 2]], &pts[lower[lower.len() - 1]], &pts[i]).is_positive()
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && !cross2(&pts[upper[upper.len() - 2]], &pts[upper[upper.len() - 1]], &pts[i]).is_positive()
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull_2d(points: &[QVector]) -> Result<ConvexHull> {
    let pts: Vec<[Rational; 2]> = points.iter().map(|p| [p[0].clone(), p[1].clone()]).collect();
    let ring = chain_2d(&pts);
    if ring.len() < 3 {
        return Err(Error::DegenerateInput("points do not span R^2".into()));
    }
    let vertices: Vec<QVector> = ring.iter().map(|&i| points[i].clone()).collect();
    let n = vertices.len();
    let facets = (0..n)
        .map(|i| {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            let e = b - a;
            // outward normal of a counter-clockwise edge
            let normal = QVector::new(vec![e[1].clone(), -e[0].clone()]).primitive();
            let offset = normal.dot(a);
            HullFacet {
                normal,
                offset,
                vertices: vec![a.clone(), b.clone()],
            }
        })
        .collect();
    Ok(ConvexHull {
        dim: 2,
        vertices,
        facets,
    })
}

fn cross3(a: &QVector, b: &QVector) -> QVector {
    QVector::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// Plane through three points oriented so that `inside` is strictly below.
fn plane(a: &QVector, b: &QVector, c: &QVector, inside: &QVector) -> Option<(QVector, Rational)> {
    let n = cross3(&(b - a), &(c - a));
    if n.is_zero() {
        return None;
    }
    let n = n.primitive();
    let off = n.dot(a);
    if n.dot(inside) < off {
        Some((n, off))
    } else {
        Some((-&n, -off))
    }
}

/// Orders the coplanar points of a facet into its counter-clockwise corner
/// cycle (seen from the side `normal` points to).
fn facet_cycle(normal: &QVector, pts: &[QVector]) -> Vec<QVector> {
    let drop = (0..3).max_by_key(|&i| normal[i].abs()).expect("3 coords");
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let proj: Vec<[Rational; 2]> = pts.iter().map(|p| [p[keep[0]].clone(), p[keep[1]].clone()]).collect();
    let ring = chain_2d(&proj);
    let mut cycle: Vec<QVector> = ring.iter().map(|&i| pts[i].clone()).collect();
    if cycle.len() >= 3 {
        let turn = cross3(&(&cycle[1] - &cycle[0]), &(&cycle[2] - &cycle[0]));
        if turn.dot(normal).is_negative() {
            cycle.reverse();
        }
    }
    cycle
}

fn hull_3d(points: &[QVector]) -> Result<ConvexHull> {
    let pts: Vec<QVector> = points.iter().cloned().sorted().dedup().collect();
    let degenerate = || Error::DegenerateInput("points do not span R^3".into());
    let p0 = pts[0].clone();
    let i1 = (1..pts.len()).next().ok_or_else(degenerate)?;
    let i2 = (i1 + 1..pts.len())
        .find(|&i| !cross3(&(&pts[i1] - &p0), &(&pts[i] - &p0)).is_zero())
        .ok_or_else(degenerate)?;
    let n012 = cross3(&(&pts[i1] - &p0), &(&pts[i2] - &p0));
    let i3 = (i2 + 1..pts.len())
        .find(|&i| !n012.dot(&(&pts[i] - &p0)).is_zero())
        .ok_or_else(degenerate)?;
    let seed = [0, i1, i2, i3];
    let inside = QVector::centroid(seed.iter().map(|&i| &pts[i]));

    let mut facets: Vec<HullFacet> = seed
        .iter()
        .combinations(3)
        .map(|tri| {
            let (a, b, c) = (&pts[*tri[0]], &pts[*tri[1]], &pts[*tri[2]]);
            let (normal, offset) = plane(a, b, c, &inside).expect("seed is nondegenerate");
            let vertices = facet_cycle(&normal, &[a.clone(), b.clone(), c.clone()]);
            HullFacet {
                normal,
                offset,
                vertices,
            }
        })
        .collect();

    for (i, p) in pts.iter().enumerate() {
        if seed.contains(&i) {
            continue;
        }
        let visible: Vec<bool> = facets.iter().map(|f| f.normal.dot(p) > f.offset).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let hull_vertices: Vec<QVector> = facets
            .iter()
            .flat_map(|f| f.vertices.iter().cloned())
            .sorted()
            .dedup()
            .collect();

        let mut horizon: Vec<(QVector, QVector)> = Vec::new();
        for (fi, f) in facets.iter().enumerate().filter(|(k, _)| visible[*k]) {
            for (gi, g) in facets.iter().enumerate() {
                if visible[gi] || fi == gi {
                    continue;
                }
                let common: Vec<&QVector> = f.vertices.iter().filter(|v| g.vertices.contains(v)).collect();
                if common.len() >= 2 {
                    let lo = (*common.iter().min().expect("nonempty")).clone();
                    let hi = (*common.iter().max().expect("nonempty")).clone();
                    horizon.push((lo, hi));
                }
            }
        }

        let mut next: Vec<HullFacet> = facets
            .iter()
            .zip(&visible)
            .filter(|(_, v)| !**v)
            .map(|(f, _)| f.clone())
            .collect();
        for f in &mut next {
            if f.normal.dot(p) == f.offset {
                f.vertices.push(p.clone());
            }
        }
        for (u, w) in &horizon {
            let Some((normal, offset)) = plane(u, w, p, &inside) else {
                continue;
            };
            if next.iter().any(|f| f.normal == normal && f.offset == offset) {
                continue;
            }
            let mut on: Vec<QVector> = hull_vertices
                .iter()
                .filter(|v| normal.dot(v) == offset)
                .cloned()
                .collect();
            on.push(p.clone());
            next.push(HullFacet {
                normal,
                offset,
                vertices: on,
            });
        }
        for f in &mut next {
            f.vertices = facet_cycle(&f.normal, &f.vertices);
        }
        facets = next;
    }

    let vertices = facets
        .iter()
        .flat_map(|f| f.vertices.iter().cloned())
        .sorted()
        .dedup()
        .collect();
    Ok(ConvexHull {
        dim: 3,
        vertices,
        facets,
    })
}
