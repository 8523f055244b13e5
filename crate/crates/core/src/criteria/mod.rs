//! Low-dimensional tiling criteria, computed directly from the geometry
//! (edges, facets, symmetry) rather than from Hadwiger functionals, so they
//! can be cross-checked against the general engine.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{QMatrix, QVector, Rational};
use crate::geom::{hull, ConvexHull, Polytope};
use crate::lattice::Lattice;

/// Outcome of a criterion: the level when the criterion certifies a tiling,
/// and a description of every condition that failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CriterionReport {
    pub level: Option<i64>,
    pub failures: Vec<String>,
}

impl CriterionReport {
    fn finish(failures: Vec<String>, volume: &Rational, l: &Lattice) -> Result<Self> {
        let level = if failures.is_empty() { Some(level_of(volume, l)?) } else { None };
        Ok(CriterionReport { level, failures })
    }

    pub fn holds(&self) -> bool {
        self.level.is_some()
    }
}

fn level_of(volume: &Rational, l: &Lattice) -> Result<i64> {
    let ratio = volume / l.det();
    if !ratio.is_integer() {
        return Err(Error::Internal(format!("criterion holds but volume/det = {ratio} is not an integer")));
    }
    ratio
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Internal("level exceeds i64".into()))
}

fn span_of(v: &QVector) -> QMatrix {
    QMatrix::from_rows(vec![v.clone()])
}

/// Center of symmetry of a finite point set, if the set is centrally symmetric.
pub fn symmetry_center(points: &[QVector]) -> Option<QVector> {
    let c = QVector::centroid(points);
    let twice = c.scale(&Rational::from_integer(2.into()));
    let mut reflected: Vec<QVector> = points.iter().map(|p| &twice - p).collect();
    reflected.sort();
    let mut orig = points.to_vec();
    orig.sort();
    (reflected == orig).then_some(c)
}

fn check_dim(p: &Polytope, l: &Lattice, d: usize) -> Result<()> {
    if l.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: p.dim(),
        });
    }
    if p.dim() != d {
        return Err(Error::UnsupportedDimension(p.dim()));
    }
    Ok(())
}

/// Hull of a polytope that must itself be convex.
fn convex_hull_of(p: &Polytope) -> Result<ConvexHull> {
    let h = hull(&p.vertices())?;
    if h.volume() != p.volume() {
        return Err(Error::DegenerateInput("polytope is not convex".into()));
    }
    Ok(h)
}

/// Disjoint closed intervals on the line, sorted; touching intervals are merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    intervals: Vec<(Rational, Rational)>,
}

impl IntervalSet {
    pub fn new(mut intervals: Vec<(Rational, Rational)>) -> Result<Self> {
        if let Some((a, b)) = intervals.iter().find(|(a, b)| a >= b) {
            return Err(Error::DegenerateInput(format!("empty interval [{a}, {b}]")));
        }
        intervals.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for (a, b) in intervals {
            match merged.last_mut() {
                Some((_, hi)) if a < *hi => {
                    return Err(Error::DegenerateInput(format!("intervals overlap near {a}")));
                }
                Some((_, hi)) if a == *hi => *hi = b,
                _ => merged.push((a, b)),
            }
        }
        Ok(IntervalSet { intervals: merged })
    }

    pub fn from_polytope(p: &Polytope) -> Result<Self> {
        if p.dim() != 1 {
            return Err(Error::UnsupportedDimension(p.dim()));
        }
        IntervalSet::new(
            p.simplices()
                .iter()
                .map(|s| {
                    let (a, b) = (&s.vertices()[0][0], &s.vertices()[1][0]);
                    if a < b {
                        (a.clone(), b.clone())
                    } else {
                        (b.clone(), a.clone())
                    }
                })
                .collect(),
        )
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn length(&self) -> Rational {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }
}

/// Tiling test on the line: the left endpoints and the right endpoints must
/// agree as multisets of residues modulo `L`.
pub fn tiles_1d(s: &IntervalSet, l: &Lattice) -> Result<CriterionReport> {
    if l.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: l.dim(),
        });
    }
    let none = QMatrix::empty(1);
    let residues = |pick: fn(&(Rational, Rational)) -> &Rational| -> Vec<QVector> {
        s.intervals
            .iter()
            .map(|iv| l.reduce_mod(&none, &QVector::new(vec![pick(iv).clone()])))
            .sorted()
            .collect()
    };
    let left = residues(|iv| &iv.0);
    let right = residues(|iv| &iv.1);
    let mut failures = Vec::new();
    if left != right {
        failures.push(format!(
            "left endpoint residues {} differ from right endpoint residues {}",
            left.iter().join(" "),
            right.iter().join(" ")
        ));
    }
    CriterionReport::finish(failures, &s.length(), l)
}

/// Conditions for one pair of parallel edges `e` and `e + tau` of a polygon.
fn edge_pair_failures(label: &str, dir: &QVector, tau: &QVector, l: &Lattice) -> Vec<String> {
    let mut out = Vec::new();
    if !l.coset_contains(&span_of(dir), tau) {
        out.push(format!("{label}: no lattice translate of the edge lies on the line of its partner"));
    }
    if !l.contains(dir) && !l.contains(tau) {
        out.push(format!(
            "{label}: edge vector {dir} is not in L and the carrying vector {tau} is not in L"
        ));
    }
    out
}

/// Convex polygon test: central symmetry plus two lattice conditions per
/// pair of opposite edges.
pub fn bolle(p: &Polytope, l: &Lattice) -> Result<CriterionReport> {
    check_dim(p, l, 2)?;
    let h = convex_hull_of(p)?;
    let verts = h.vertices();
    let Some(center) = symmetry_center(verts) else {
        return Ok(CriterionReport {
            level: None,
            failures: vec!["polygon is not centrally symmetric".into()],
        });
    };
    let n = verts.len();
    let twice = center.scale(&Rational::from_integer(2.into()));
    let mut failures = Vec::new();
    for i in 0..n / 2 {
        let (a, b) = (&verts[i], &verts[(i + 1) % n]);
        let dir = b - a;
        let tau = &(&twice - a) - b;
        failures.extend(edge_pair_failures(&format!("edge [{a}, {b}]"), &dir, &tau, l));
    }
    CriterionReport::finish(failures, &h.volume(), l)
}

/// A maximal boundary segment of a planar polytope, oriented with the
/// interior on its left.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundaryEdge {
    pub from: QVector,
    pub to: QVector,
}

impl BoundaryEdge {
    pub fn vector(&self) -> QVector {
        &self.to - &self.from
    }

    pub fn midpoint(&self) -> QVector {
        (&self.from + &self.to).scale(&Rational::new(1.into(), 2.into()))
    }
}

/// Boundary edges of a planar polytope: triangle edges are accumulated with
/// signed multiplicity along each supporting line, interior edges cancel,
/// and what remains is merged into maximal segments.
pub fn boundary_edges(p: &Polytope) -> Result<Vec<BoundaryEdge>> {
    if p.dim() != 2 {
        return Err(Error::UnsupportedDimension(p.dim()));
    }
    // line (direction, offset) -> parameter -> coverage change
    let mut lines: BTreeMap<(QVector, Rational), BTreeMap<Rational, i64>> = BTreeMap::new();
    for s in p.simplices() {
        let mut v = s.vertices().to_vec();
        if s.signed_det().is_negative() {
            v.swap(1, 2);
        }
        for k in 0..3 {
            let (u, w) = (&v[k], &v[(k + 1) % 3]);
            let e = w - u;
            let dir = e.sign_normalized();
            let sign: i64 = if e.dot(&dir).is_positive() { 1 } else { -1 };
            let normal = QVector::new(vec![-dir[1].clone(), dir[0].clone()]);
            let events = lines.entry((dir.clone(), normal.dot(u))).or_default();
            let (tu, tw) = (dir.dot(u), dir.dot(w));
            let (lo, hi) = if tu < tw { (tu, tw) } else { (tw, tu) };
            *events.entry(lo).or_insert(0) += sign;
            *events.entry(hi).or_insert(0) -= sign;
        }
    }
    let mut edges = Vec::new();
    for ((dir, offset), events) in lines {
        let normal = QVector::new(vec![-dir[1].clone(), dir[0].clone()]);
        let nn = dir.dot(&dir);
        let foot = normal.scale(&(&offset / &nn));
        let at = |t: &Rational| foot.add_scaled(&(t / &nn), &dir);
        let mut cover = 0i64;
        let mut open: Option<(Rational, i64)> = None;
        for (t, delta) in events {
            let next = cover + delta;
            if next != cover {
                if let Some((start, c)) = open.take() {
                    if c > 0 {
                        edges.push(BoundaryEdge { from: at(&start), to: at(&t) });
                    } else {
                        edges.push(BoundaryEdge { from: at(&t), to: at(&start) });
                    }
                }
                if next != 0 {
                    open = Some((t.clone(), next));
                }
                cover = next;
            }
        }
    }
    edges.sort();
    Ok(edges)
}

/// Test for planar polygons in which every edge has at most one parallel
/// edge. Fails with [`Error::HypothesisNotMet`] otherwise.
pub fn kolountzakis(p: &Polytope, l: &Lattice) -> Result<CriterionReport> {
    check_dim(p, l, 2)?;
    let edges = boundary_edges(p)?;
    let mut by_dir: BTreeMap<QVector, Vec<&BoundaryEdge>> = BTreeMap::new();
    for e in &edges {
        by_dir.entry(e.vector().sign_normalized()).or_default().push(e);
    }
    if let Some((dir, group)) = by_dir.iter().find(|(_, g)| g.len() > 2) {
        return Err(Error::HypothesisNotMet(format!(
            "{} edges are parallel to {dir}; at most two are allowed",
            group.len()
        )));
    }
    let mut failures = Vec::new();
    for group in by_dir.values() {
        let e = group[0];
        let label = format!("edge [{}, {}]", e.from, e.to);
        let Some(partner) = group.get(1) else {
            failures.push(format!("{label}: no parallel edge"));
            continue;
        };
        let (v, w) = (e.vector(), partner.vector());
        if &v + &w != QVector::zeros(2) {
            failures.push(format!(
                "{label}: parallel edge [{}, {}] differs in length or bounds the polygon from the same side",
                partner.from, partner.to
            ));
            continue;
        }
        let tau = &partner.midpoint() - &e.midpoint();
        failures.extend(edge_pair_failures(&label, &v, &tau, l));
    }
    CriterionReport::finish(failures, &p.volume(), l)
}

/// Four parallel edges `e, e + tau1, e + tau2, e + tau1 + tau2`: `tau1`
/// carries the facet `F` containing `e` onto its opposite facet, `tau2`
/// carries `e` onto its opposite edge within `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourLeggedFrame {
    pub edge: (QVector, QVector),
    pub tau1: QVector,
    pub tau2: QVector,
    /// Canonical spanning vectors of the plane of `F`.
    pub facet_plane: QMatrix,
}

impl FourLeggedFrame {
    pub fn direction(&self) -> QVector {
        &self.edge.1 - &self.edge.0
    }

    /// The four edges, each as an ordered endpoint pair, sorted.
    pub fn legs(&self) -> Vec<(QVector, QVector)> {
        let (p, q) = &self.edge;
        let both = &self.tau1 + &self.tau2;
        [QVector::zeros(p.dim()), self.tau1.clone(), self.tau2.clone(), both]
            .iter()
            .map(|t| {
                let (a, b) = (p + t, q + t);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .sorted()
            .collect()
    }
}

fn facet_plane(f: &crate::geom::HullFacet) -> QMatrix {
    let o = &f.vertices[0];
    crate::lattice::canonical_basis(&QMatrix::from_rows(f.vertices[1..].iter().map(|v| v - o).collect()))
}

/// Frames of a centrally symmetric 3-polytope with symmetric facets, deduplicated
/// by the unordered quadruple of edges together with the plane of `F`. Fails with a description if a symmetry
/// requirement does not hold.
pub fn four_legged_frames(h: &ConvexHull) -> std::result::Result<Vec<FourLeggedFrame>, String> {
    let center = symmetry_center(h.vertices()).ok_or("polytope is not centrally symmetric")?;
    let two = Rational::from_integer(2.into());
    let mut frames: Vec<FourLeggedFrame> = Vec::new();
    let mut seen: Vec<(Vec<(QVector, QVector)>, QMatrix)> = Vec::new();
    for f in h.facets() {
        let tf = symmetry_center(&f.vertices)
            .ok_or_else(|| format!("facet with normal {} is not centrally symmetric", f.normal))?;
        let tau1 = (&center - &tf).scale(&two);
        let plane = facet_plane(f);
        let n = f.vertices.len();
        for i in 0..n {
            let (p, q) = (&f.vertices[i], &f.vertices[(i + 1) % n]);
            let tau2 = &(&tf.scale(&two) - p) - q;
            let frame = FourLeggedFrame {
                edge: (p.clone(), q.clone()),
                tau1: tau1.clone(),
                tau2,
                facet_plane: plane.clone(),
            };
            // the same four legs arise from both facets through `e`; each
            // facet pair carries its own plane condition
            let key = (frame.legs(), frame.facet_plane.clone());
            if !seen.contains(&key) {
                seen.push(key);
                frames.push(frame);
            }
        }
    }
    Ok(frames)
}

/// Convex 3-polytope test via four-legged frames.
pub fn frames_3d(p: &Polytope, l: &Lattice) -> Result<CriterionReport> {
    check_dim(p, l, 3)?;
    let h = convex_hull_of(p)?;
    let frames = match four_legged_frames(&h) {
        Ok(f) => f,
        Err(why) => {
            return Ok(CriterionReport {
                level: None,
                failures: vec![why],
            })
        }
    };
    let mut failures = Vec::new();
    for fr in &frames {
        let e = fr.direction();
        let label = format!("frame at edge [{}, {}]", fr.edge.0, fr.edge.1);
        if !l.coset_contains(&fr.facet_plane, &fr.tau1) {
            failures.push(format!("{label}: opposite facet plane is not a lattice translate"));
        }
        let line = span_of(&e);
        if !l.coset_contains(&line, &fr.tau1) && !l.coset_contains(&line, &fr.tau2) {
            failures.push(format!("{label}: no lattice translate of the edge is collinear with e' or e''"));
        }
        if !l.contains(&e) && !l.contains(&fr.tau1) && !l.contains(&fr.tau2) {
            let all = [(1, 1), (1, -1), (-1, 1), (-1, -1)].iter().all(|&(s1, s2)| {
                let v = e
                    .add_scaled(&Rational::from_integer(s1.into()), &fr.tau1)
                    .add_scaled(&Rational::from_integer(s2.into()), &fr.tau2);
                l.contains(&v)
            });
            if !all {
                failures.push(format!(
                    "{label}: none of e, tau', tau'' is in L and some e +- tau' +- tau'' is not"
                ));
            }
        }
    }
    CriterionReport::finish(failures, &h.volume(), l)
}

/// Sufficient condition for convex polytopes in dimension at most 3: central
/// symmetry, symmetric facets, and either every vertex in `L` (strict) or
/// every facet-carrying vector `2 (t - t_F)` in `L` (relaxed). An absent
/// level means inconclusive.
pub fn grs_sufficient(p: &Polytope, l: &Lattice, relaxed: bool) -> Result<CriterionReport> {
    if l.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: p.dim(),
        });
    }
    let h = convex_hull_of(p)?;
    let mut failures = Vec::new();
    let Some(center) = symmetry_center(h.vertices()) else {
        return Ok(CriterionReport {
            level: None,
            failures: vec!["polytope is not centrally symmetric".into()],
        });
    };
    let two = Rational::from_integer(2.into());
    for f in h.facets() {
        match symmetry_center(&f.vertices) {
            None => failures.push(format!("facet with normal {} is not centrally symmetric", f.normal)),
            Some(tf) if relaxed => {
                let carry = (&center - &tf).scale(&two);
                if !l.contains(&carry) {
                    failures.push(format!("facet-carrying vector {carry} is not in L"));
                }
            }
            Some(_) => {}
        }
    }
    if !relaxed {
        for v in h.vertices().iter().filter(|v| !l.contains(v)) {
            failures.push(format!("vertex {v} is not in L"));
        }
    }
    CriterionReport::finish(failures, &h.volume(), l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::geom::{convex_hull, Simplex};
    use crate::invariants::polytope_is_tiling;

    fn q(xs: &[(i64, i64)]) -> QVector {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn hull_of(pts: &[&[i64]]) -> Polytope {
        convex_hull(&pts.iter().map(|p| QVector::from_ints(p)).collect::<Vec<_>>()).unwrap()
    }

    fn half_lattice() -> Lattice {
        Lattice::new(QMatrix::from_rows(vec![QVector::from_ints(&[1, 0]), q(&[(1, 2), (1, 2)])])).unwrap()
    }

    #[test]
    fn one_dimensional_examples() {
        let z = Lattice::integer(1);
        let unit = IntervalSet::new(vec![(int(0), int(1))]).unwrap();
        assert_eq!(tiles_1d(&unit, &z).unwrap().level, Some(1));
        let halfz = Lattice::new(QMatrix::from_rows(vec![q(&[(1, 2)])])).unwrap();
        let two = IntervalSet::new(vec![(int(0), rat(1, 2)), (rat(5, 4), rat(7, 4))]).unwrap();
        assert_eq!(tiles_1d(&two, &halfz).unwrap().level, Some(2));
        let bad = IntervalSet::new(vec![(int(0), rat(1, 2)), (rat(3, 4), rat(5, 4))]).unwrap();
        let r = tiles_1d(&bad, &z).unwrap();
        assert!(!r.holds() && r.failures.len() == 1);
        assert!(IntervalSet::new(vec![(int(0), int(2)), (int(1), int(3))]).is_err());
        let touching = IntervalSet::new(vec![(int(0), rat(1, 2)), (rat(1, 2), int(1))]).unwrap();
        assert_eq!(touching.intervals().len(), 1);
    }

    #[test]
    fn bolle_examples() {
        let sq = hull_of(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(bolle(&sq, &Lattice::integer(2)).unwrap().level, Some(1));
        assert_eq!(bolle(&sq, &half_lattice()).unwrap().level, Some(2));
        let tri = hull_of(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(!bolle(&tri, &Lattice::integer(2)).unwrap().holds());
        // symmetric hexagon, but the lattice shears the opposite edges apart
        let hex = hull_of(&[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]]);
        let z2 = Lattice::integer(2);
        assert_eq!(bolle(&hex, &z2).unwrap().level, Some(3));
        let l = Lattice::from_ints(&[&[2, 0], &[0, 1]]).unwrap();
        let r = bolle(&hex, &l).unwrap();
        assert_eq!(r.holds(), polytope_is_tiling(&hex, &l).unwrap().tiles);
    }

    #[test]
    fn boundary_of_l_shape() {
        let l_shape = Polytope::new(
            2,
            vec![
                Simplex::from_ints(&[&[0, 0], &[2, 0], &[2, 1]]).unwrap(),
                Simplex::from_ints(&[&[0, 0], &[2, 1], &[0, 1]]).unwrap(),
                Simplex::from_ints(&[&[0, 1], &[1, 1], &[1, 2]]).unwrap(),
                Simplex::from_ints(&[&[0, 1], &[1, 2], &[0, 2]]).unwrap(),
            ],
        )
        .unwrap();
        let edges = boundary_edges(&l_shape).unwrap();
        assert_eq!(edges.len(), 6);
        let total: QVector = edges.iter().fold(QVector::zeros(2), |acc, e| &acc + &e.vector());
        assert!(total.is_zero());
        assert!(edges.contains(&BoundaryEdge {
            from: QVector::from_ints(&[0, 0]),
            to: QVector::from_ints(&[2, 0])
        }));
        let z2 = Lattice::integer(2);
        assert!(matches!(kolountzakis(&l_shape, &z2), Err(Error::HypothesisNotMet(_))));
        assert_eq!(polytope_is_tiling(&l_shape, &z2).unwrap().level, Some(3));
    }

    #[test]
    fn kolountzakis_on_nonconvex_polygon() {
        // a parallelogram-like hexagon with a notch: every direction has a single partner
        let z2 = Lattice::integer(2);
        let sq = hull_of(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(kolountzakis(&sq, &z2).unwrap().level, Some(1));
        let tri = hull_of(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(!kolountzakis(&tri, &z2).unwrap().holds());
        // two unit squares touching at a corner
        let a = hull_of(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let b = a.translate(&QVector::from_ints(&[1, 1]));
        let bow = Polytope::new(2, a.simplices().iter().chain(b.simplices()).cloned().collect()).unwrap();
        assert!(matches!(kolountzakis(&bow, &z2), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn frames_examples() {
        let cube = hull_of(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[1, 1, 0],
            &[0, 0, 1],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ]);
        let z3 = Lattice::integer(3);
        assert_eq!(frames_3d(&cube, &z3).unwrap().level, Some(1));
        let h = hull(&cube.vertices()).unwrap();
        // each edge direction lies in two facet pairs
        assert_eq!(four_legged_frames(&h).unwrap().len(), 6);
        // the unit cube has volume 1/2 against 2Z x Z x Z; the x-facets are
        // not lattice translates of each other
        let l = Lattice::from_ints(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let r = frames_3d(&cube, &l).unwrap();
        assert!(!r.holds() && r.failures.iter().any(|f| f.contains("facet plane")));
        let tall = hull_of(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[1, 1, 0],
            &[0, 0, 2],
            &[1, 0, 2],
            &[0, 1, 2],
            &[1, 1, 2],
        ]);
        assert_eq!(frames_3d(&tall, &z3).unwrap().level, Some(2));
        let tet = hull_of(&[&[0, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert!(!frames_3d(&tet, &z3).unwrap().holds());
    }

    #[test]
    fn grs_examples() {
        let z2 = Lattice::integer(2);
        let hex = hull_of(&[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]]);
        assert_eq!(grs_sufficient(&hex, &z2, false).unwrap().level, Some(3));
        let sq = hull_of(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).translate(&q(&[(1, 4), (0, 1)]));
        assert!(!grs_sufficient(&sq, &z2, false).unwrap().holds());
        assert_eq!(grs_sufficient(&sq, &z2, true).unwrap().level, Some(1));
        let tri = hull_of(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(!grs_sufficient(&tri, &z2, true).unwrap().holds());
    }

    #[test]
    fn non_convex_input_rejected() {
        let a = hull_of(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let b = a.translate(&QVector::from_ints(&[1, 1]));
        let bow = Polytope::new(2, a.simplices().iter().chain(b.simplices()).cloned().collect()).unwrap();
        assert!(matches!(bolle(&bow, &Lattice::integer(2)), Err(Error::DegenerateInput(_))));
    }
}
