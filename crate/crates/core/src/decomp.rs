//! Constructive equidecompositions by lattice translations.
//!
//! [`equidecompose`] repeatedly picks the least `lambda` of the overlap set
//! `S(A, B) = { lambda in L : vol(A cap (B - lambda)) > 0 }`, moves the common
//! part `A cap (B - lambda)` by `lambda`, and continues on what is left of both
//! sides. Each round removes `lambda` from the overlap set for good, so the loop
//! ends after at most `|S(A, B)|` rounds.

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rat, QVector, Rational};
use crate::geom::{canonicalize, intersection_volume, ConvexCell, GroupElement, Polytope, Simplex, Term};
use crate::invariants::{hadwiger_accumulate, is_tiling};
use crate::lattice::Lattice;
use crate::par::Exec;

/// A simplex together with a lattice translation. As a move in the polytope
/// group it stands for `coeff * ([simplex] - [simplex + shift])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub simplex: Simplex,
    pub shift: QVector,
    pub coeff: i64,
}

impl Piece {
    pub fn moved(&self) -> Simplex {
        self.simplex.translate(&self.shift)
    }
}

/// Pieces of `A` whose translates by their shifts reassemble `B`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub pieces: Vec<Piece>,
}

impl DecompositionCertificate {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Distinct shifts in order of first use.
    pub fn shifts(&self) -> Vec<QVector> {
        self.pieces.iter().map(|p| p.shift.clone()).unique().collect()
    }
}

fn check_same_dim(a: &Polytope, b: &Polytope, l: &Lattice) -> Result<()> {
    for found in [a.dim(), b.dim()] {
        if found != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                found,
            });
        }
    }
    Ok(())
}

pub fn overlap_set(a: &Polytope, b: &Polytope, l: &Lattice) -> Vec<QVector> {
    overlap_set_with(a, b, l, Exec::default())
}

/// All `lambda in L` with `vol(a cap (b - lambda)) > 0`, sorted
/// lexicographically by lattice coordinates.
pub fn overlap_set_with(a: &Polytope, b: &Polytope, l: &Lattice, exec: Exec) -> Vec<QVector> {
    let (Some((alo, ahi)), Some((blo, bhi))) = (a.bbox(), b.bbox()) else {
        return Vec::new();
    };
    let candidates = l.enumerate_in_box(&(&blo - &ahi), &(&bhi - &alo));
    let hits = exec.map(&candidates, |lam| overlaps(a, b, lam));
    let mut out: Vec<(QVector, QVector)> = candidates
        .into_iter()
        .zip(hits)
        .filter(|(_, h)| *h)
        .map(|(lam, _)| (l.coords(&lam), lam))
        .collect();
    out.sort();
    out.into_iter().map(|(_, lam)| lam).collect()
}

fn overlaps(a: &Polytope, b: &Polytope, lam: &QVector) -> bool {
    let back = -lam;
    b.simplices().iter().any(|t| {
        let t = t.translate(&back);
        a.simplices().iter().any(|s| intersection_volume(s, &t).is_positive())
    })
}

/// Explains why `a` and `b` are not equidecomposable, or `None` if they are.
fn obstruction(a: &Polytope, b: &Polytope, l: &Lattice) -> Result<Option<String>> {
    let (va, vb) = (a.volume(), b.volume());
    if va != vb {
        return Ok(Some(format!("volumes differ: {va} vs {vb}")));
    }
    let diff = GroupElement::from_polytope(a).sub(&GroupElement::from_polytope(b));
    let report = hadwiger_accumulate(&diff, l)?;
    Ok(report.witness().map(|(k, v)| {
        format!(
            "Hadwiger functional differs by {v} on the r={} flag orbit anchored at {}",
            k.r(),
            k.anchor
        )
    }))
}

pub fn equidecompose(a: &Polytope, b: &Polytope, l: &Lattice) -> Result<DecompositionCertificate> {
    equidecompose_with(a, b, l, Exec::default())
}

pub fn equidecompose_with(a: &Polytope, b: &Polytope, l: &Lattice, exec: Exec) -> Result<DecompositionCertificate> {
    check_same_dim(a, b, l)?;
    if let Some(why) = obstruction(a, b, l)? {
        return Err(Error::NotEquidecomposable(why));
    }
    // The overlap set only shrinks as both sides are consumed, so walking the
    // initial set in order visits the least current element every round.
    let mut left = a.volume();
    let mut ca: Vec<ConvexCell> = a.simplices().iter().map(ConvexCell::from_simplex).collect();
    let mut cb: Vec<ConvexCell> = b.simplices().iter().map(ConvexCell::from_simplex).collect();
    let mut pieces = Vec::new();
    for lam in overlap_set_with(a, b, l, exec) {
        if left.is_zero() {
            break;
        }
        let back: Vec<ConvexCell> = cb.iter().map(|c| c.translate(&-&lam)).collect();
        let common: Vec<ConvexCell> =
            exec.map(&ca, |s| back.iter().filter_map(|t| s.intersect(t)).collect::<Vec<_>>()).into_iter().flatten().collect();
        if common.is_empty() {
            continue;
        }
        for c in &common {
            left -= c.volume();
            pieces.extend(c.triangulate().into_iter().map(|simplex| Piece {
                simplex,
                shift: lam.clone(),
                coeff: 1,
            }));
        }
        // a \ common = a \ (b - lam) and b \ (common + lam) = b \ (a + lam)
        let ahead: Vec<ConvexCell> = ca.iter().map(|c| c.translate(&lam)).collect();
        cb = subtract_cells(&cb, &ahead, exec);
        ca = subtract_cells(&ca, &back, exec);
    }
    if !left.is_zero() {
        return Err(Error::Internal(format!("overlap set exhausted with volume {left} left to match")));
    }
    if !cb.is_empty() {
        let rest: Rational = cb.iter().map(ConvexCell::volume).sum();
        return Err(Error::Internal(format!("unmatched volume {rest} in the target")));
    }
    Ok(DecompositionCertificate { pieces })
}

fn subtract_cells(xs: &[ConvexCell], ys: &[ConvexCell], exec: Exec) -> Vec<ConvexCell> {
    exec.map(xs, |x| {
        let mut pieces = vec![x.clone()];
        for y in ys {
            pieces = pieces.iter().flat_map(|p| p.subtract(y)).collect();
            if pieces.is_empty() {
                break;
            }
        }
        pieces
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Moves whose sum is `p`, for a group element tiling at level zero: the
/// relocation of every term copy into pairwise disjoint positions, followed by
/// an equidecomposition of the relocated positive part onto the relocated
/// negative part.
pub fn represent_zero_tiler(p: &GroupElement, l: &Lattice) -> Result<Vec<Piece>> {
    if p.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: p.dim(),
        });
    }
    let verdict = is_tiling(p, l)?;
    if verdict.level != Some(0) {
        return Err(Error::NotZeroTiler(match verdict.level {
            Some(k) => format!("tiles at level {k}, not 0"),
            None => "some Hadwiger functional is nonzero".into(),
        }));
    }
    let d = p.dim();
    let Some((lo, hi)) = p.bbox() else {
        return Ok(Vec::new());
    };
    let lam0 = l.basis().row(0).clone();
    let k = lam0.leading_index().expect("basis rows are nonzero");
    let extent = &hi[k] - &lo[k];
    let step = (extent / lam0[k].abs()).floor() + Rational::from_integer(1.into());
    let step_lam = lam0.scale(&step);

    let mut moves = Vec::new();
    let mut placed: [Vec<Simplex>; 2] = [Vec::new(), Vec::new()];
    for t in p.terms() {
        let side = usize::from(t.coeff < 0);
        for _ in 0..t.coeff.unsigned_abs() {
            let j = placed[side].len() as i64;
            let shift = step_lam.scale(&rat(j, 1));
            if !shift.is_zero() {
                moves.push(Piece {
                    simplex: t.simplex.clone(),
                    shift: shift.clone(),
                    coeff: t.coeff.signum(),
                });
            }
            placed[side].push(t.simplex.translate(&shift));
        }
    }
    let [pos, neg] = placed;
    let a = Polytope::new_unchecked(d, pos)?;
    let b = Polytope::new_unchecked(d, neg)?;
    moves.extend(equidecompose(&a, &b, l)?.pieces);
    Ok(moves)
}

/// `p - sum coeff * ([piece] - [piece + shift])`, canonicalized.
pub fn replay(p: &GroupElement, moves: &[Piece]) -> GroupElement {
    let mut terms: Vec<Term> = p.terms().to_vec();
    for m in moves {
        terms.push(Term {
            coeff: -m.coeff,
            simplex: m.simplex.clone(),
        });
        terms.push(Term {
            coeff: m.coeff,
            simplex: m.moved(),
        });
    }
    canonicalize(&GroupElement::new(p.dim(), terms).expect("dimensions agree"))
}

/// Outcome of checking a certificate against `a` and `b` without trusting
/// how it was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub pieces_disjoint: bool,
    pub moved_disjoint: bool,
    pub volume_matches_a: bool,
    pub volume_matches_b: bool,
    pub shifts_in_lattice: bool,
    /// Sample points (off all boundaries) where the indicators were compared.
    pub samples_a: usize,
    pub samples_b: usize,
    pub indicator_mismatches: usize,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.pieces_disjoint
            && self.moved_disjoint
            && self.volume_matches_a
            && self.volume_matches_b
            && self.shifts_in_lattice
            && self.indicator_mismatches == 0
    }
}

/// Interior-disjointness of every pair, swept along the first axis.
fn pairwise_disjoint(simplices: &[Simplex], exec: Exec) -> bool {
    let order: Vec<usize> = (0..simplices.len()).sorted_by(|&i, &j| simplices[i].bbox().0[0].cmp(&simplices[j].bbox().0[0])).collect();
    let faces: Vec<Vec<QVector>> = simplices.iter().map(|s| s.halfspaces().into_iter().map(|h| h.normal).collect()).collect();
    exec.map_range(order.len(), |a| {
        let i = order[a];
        let hi = &simplices[i].bbox().1[0];
        order[a + 1..]
            .iter()
            .take_while(|&&j| &simplices[j].bbox().0[0] < hi)
            .all(|&j| interiors_disjoint(&simplices[i], &simplices[j], &faces[i], &faces[j]))
    })
    .into_iter()
    .all(|ok| ok)
}

/// Separating-axis test. Up to `d = 3` the facets of `s - t` have normals among
/// the facet normals of `s` and `t` and the cross products of their edges, so
/// the test is exact there; beyond that it falls back to the intersection volume.
fn interiors_disjoint(s: &Simplex, t: &Simplex, s_faces: &[QVector], t_faces: &[QVector]) -> bool {
    let ((slo, shi), (tlo, thi)) = (s.bbox(), t.bbox());
    if (0..s.dim()).any(|i| shi[i] <= tlo[i] || thi[i] <= slo[i]) {
        return true;
    }
    let apart = |n: &QVector| {
        let span = |x: &Simplex| x.vertices().iter().map(|v| n.dot(v)).minmax().into_option().expect("simplices have vertices");
        let ((slo, shi), (tlo, thi)) = (span(s), span(t));
        shi <= tlo || thi <= slo
    };
    if s_faces.iter().chain(t_faces).any(apart) {
        return true;
    }
    match s.dim() {
        1 | 2 => false,
        3 => {
            let edges = |x: &Simplex| -> Vec<QVector> {
                x.vertices().iter().tuple_combinations().map(|(a, b)| b - a).collect()
            };
            let (es, et) = (edges(s), edges(t));
            es.iter().cartesian_product(&et).any(|(a, b)| {
                let n = QVector::new(vec![
                    &a[1] * &b[2] - &a[2] * &b[1],
                    &a[2] * &b[0] - &a[0] * &b[2],
                    &a[0] * &b[1] - &a[1] * &b[0],
                ]);
                !n.is_zero() && apart(&n)
            })
        }
        _ => intersection_volume(s, t).is_zero(),
    }
}

/// Uniform dyadic point (denominator `2^32`) in the box `[lo, hi]`.
fn point_in_box(rng: &mut ChaCha8Rng, lo: &QVector, hi: &QVector) -> QVector {
    let den = Rational::from_integer((1u64 << 32).into());
    lo.iter()
        .zip(hi.iter())
        .map(|(a, b)| a + (b - a) * Rational::from_integer(rng.gen_range(0u64..1 << 32).into()) / &den)
        .collect()
}

/// Compares `target` with `pieces` at `n` random points off all boundaries.
/// Returns (points used, mismatches).
fn compare_indicators(target: &Polytope, pieces: &Polytope, n: usize, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let Some((lo, hi)) = target.bbox() else {
        return (0, usize::from(!pieces.is_empty()));
    };
    let (mut used, mut bad, mut tries) = (0, 0, 0);
    while used < n && tries < 100 * n {
        tries += 1;
        let x = point_in_box(rng, &lo, &hi);
        if let (Some(u), Some(v)) = (target.contains(&x), pieces.contains(&x)) {
            used += 1;
            if u != v {
                bad += 1;
            }
        }
    }
    (used, bad)
}

/// Soundness check: disjointness on both sides, exact volumes, shifts in
/// `L`, and indicator agreement at `samples` points per side.
pub fn check_certificate(
    cert: &DecompositionCertificate,
    a: &Polytope,
    b: &Polytope,
    l: &Lattice,
    samples: usize,
    seed: u64,
) -> CertificateCheck {
    let exec = Exec::default();
    let d = a.dim();
    let src: Vec<Simplex> = cert.pieces.iter().map(|p| p.simplex.clone()).collect();
    let dst: Vec<Simplex> = cert.pieces.iter().map(Piece::moved).collect();
    let vol = |s: &[Simplex]| s.iter().map(Simplex::volume).sum::<Rational>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let src_poly = Polytope::new_unchecked(d, src.clone()).expect("dimensions agree");
    let dst_poly = Polytope::new_unchecked(d, dst.clone()).expect("dimensions agree");
    let (samples_a, bad_a) = compare_indicators(a, &src_poly, samples, &mut rng);
    let (samples_b, bad_b) = compare_indicators(b, &dst_poly, samples, &mut rng);
    CertificateCheck {
        pieces_disjoint: pairwise_disjoint(&src, exec),
        moved_disjoint: pairwise_disjoint(&dst, exec),
        volume_matches_a: vol(&src) == a.volume(),
        volume_matches_b: vol(&dst) == b.volume(),
        shifts_in_lattice: cert.pieces.iter().all(|p| l.contains(&p.shift)),
        samples_a,
        samples_b,
        indicator_mismatches: bad_a + bad_b,
    }
}
