use num_traits::Zero;

use super::{ConvexCell, GroupElement, Polytope, Simplex, Term};
use crate::exact::Rational;

/// Triangulated `s ∩ t`; empty when the intersection has no interior.
pub fn intersect_convex(s: &Simplex, t: &Simplex) -> Polytope {
    assert_eq!(s.dim(), t.dim(), "dimension mismatch");
    let cells = ConvexCell::from_simplex(s).intersect(&ConvexCell::from_simplex(t));
    Polytope::new_unchecked(s.dim(), cells.map(|c| c.triangulate()).unwrap_or_default())
        .expect("dimensions agree")
}

/// `vol(s ∩ t)`.
pub fn intersection_volume(s: &Simplex, t: &Simplex) -> Rational {
    if !boxes_overlap(s, t) {
        return Rational::zero();
    }
    ConvexCell::from_simplex(s)
        .intersect(&ConvexCell::from_simplex(t))
        .map(|c| c.volume())
        .unwrap_or_else(Rational::zero)
}

fn boxes_overlap(s: &Simplex, t: &Simplex) -> bool {
    let (slo, shi) = s.bbox();
    let (tlo, thi) = t.bbox();
    (0..s.dim()).all(|i| slo[i] < thi[i] && tlo[i] < shi[i])
}

/// Interior intersection of two polytopes, triangulated.
pub fn intersect(a: &Polytope, b: &Polytope) -> Polytope {
    assert_eq!(a.dim(), b.dim(), "dimension mismatch");
    let mut out = Vec::new();
    for s in a.simplices() {
        for t in b.simplices() {
            if boxes_overlap(s, t) {
                out.extend(intersect_convex(s, t).into_simplices());
            }
        }
    }
    Polytope::new_unchecked(a.dim(), out).expect("dimensions agree")
}

/// `closure(a \ b)`, triangulated; interiors of the pieces are disjoint.
pub fn subtract(a: &Polytope, b: &Polytope) -> Polytope {
    assert_eq!(a.dim(), b.dim(), "dimension mismatch");
    let b_cells: Vec<(ConvexCell, &Simplex)> =
        b.simplices().iter().map(|t| (ConvexCell::from_simplex(t), t)).collect();
    let mut out = Vec::new();
    for s in a.simplices() {
        let mut pieces = vec![ConvexCell::from_simplex(s)];
        for (bc, t) in &b_cells {
            if !boxes_overlap(s, t) {
                continue;
            }
            pieces = pieces.iter().flat_map(|p| p.subtract(bc)).collect();
            if pieces.is_empty() {
                break;
            }
        }
        out.extend(pieces.iter().flat_map(ConvexCell::triangulate));
    }
    Polytope::new_unchecked(a.dim(), out).expect("dimensions agree")
}

/// Overlays all terms into interior-disjoint convex cells, each carrying the
/// a.e. value of the indicator function there. Zero-valued cells are dropped.
pub fn overlay(p: &GroupElement) -> Vec<(i64, ConvexCell)> {
    let mut cells: Vec<(i64, ConvexCell)> = Vec::new();
    for term in p.terms() {
        let s = ConvexCell::from_simplex(&term.simplex);
        let mut rest = vec![s.clone()];
        let mut next = Vec::with_capacity(cells.len() + 1);
        for (c, cell) in cells {
            match cell.intersect(&s) {
                None => next.push((c, cell)),
                Some(inter) => {
                    next.push((c + term.coeff, inter));
                    next.extend(cell.subtract(&s).into_iter().map(|piece| (c, piece)));
                    rest = rest.iter().flat_map(|r| r.subtract(&cell)).collect();
                }
            }
        }
        next.extend(rest.into_iter().map(|r| (term.coeff, r)));
        cells = next;
    }
    cells.retain(|(c, _)| *c != 0);
    cells
}

/// Representation with interior-disjoint simplices whose coefficients are the
/// a.e. indicator value on each; terms sorted by coefficient, then simplex.
pub fn canonicalize(p: &GroupElement) -> GroupElement {
    let mut terms: Vec<Term> = overlay(p)
        .into_iter()
        .flat_map(|(coeff, cell)| {
            cell.triangulate()
                .into_iter()
                .map(move |simplex| Term { coeff, simplex })
        })
        .collect();
    terms.sort();
    GroupElement::new(p.dim(), terms).expect("dimensions agree")
}
