//! Instance generators shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use multitile::exact::{int, rat};
use multitile::geom::{convex_hull, ConvexCell, HalfSpace};
use multitile::{GroupElement, Lattice, Polytope, QMatrix, QVector, Rational, Simplex};
use rand::seq::SliceRandom;
use rand::Rng;

/// Rational in `[-bound, bound]` with denominator 1, 2 or 3.
pub fn small_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    let den = rng.gen_range(1..=3);
    rat(rng.gen_range(-bound * den..=bound * den), den)
}

/// Random full-rank lattice with rational basis entries in `[-3, 3]`.
pub fn random_lattice(rng: &mut impl Rng, d: usize) -> Lattice {
    loop {
        let rows = (0..d).map(|_| (0..d).map(|_| small_rational(rng, 3)).collect()).collect();
        if let Ok(l) = Lattice::new(QMatrix::from_rows(rows)) {
            return l;
        }
    }
}

/// Sublattice of `(1/2) Z^d` with integer coefficient matrix entries in `[-3, 3]`.
pub fn random_half_sublattice(rng: &mut impl Rng, d: usize) -> Lattice {
    loop {
        let rows = (0..d)
            .map(|_| (0..d).map(|_| rat(rng.gen_range(-3..=3), 2)).collect())
            .collect();
        if let Ok(l) = Lattice::new(QMatrix::from_rows(rows)) {
            return l;
        }
    }
}

/// Triangulation of the unit cube into `d!` path simplices.
pub fn cube_simplices(d: usize) -> Vec<Vec<QVector>> {
    (0..d)
        .permutations(d)
        .map(|perm| {
            let mut v = QVector::zeros(d);
            let mut verts = vec![v.clone()];
            for i in perm {
                v = &v + &QVector::unit(d, i);
                verts.push(v.clone());
            }
            verts
        })
        .collect()
}

/// The half-open fundamental parallelepiped of `l`, translated by `l.point(c)`.
pub fn parallelepiped(l: &Lattice, c: &[i64]) -> Vec<Simplex> {
    let shift = l.point_int(c);
    cube_simplices(l.dim())
        .into_iter()
        .map(|verts| Simplex::new(verts.iter().map(|v| &l.basis().vec_mul(v) + &shift).collect()).unwrap())
        .collect()
}

/// Union of `k` distinct lattice translates of the fundamental parallelepiped.
pub fn fundamental_union(rng: &mut impl Rng, l: &Lattice, k: usize) -> Polytope {
    let d = l.dim();
    let mut coords: Vec<Vec<i64>> = Vec::new();
    while coords.len() < k {
        let c: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        if !coords.contains(&c) {
            coords.push(c);
        }
    }
    let simplices = coords.iter().flat_map(|c| parallelepiped(l, c)).collect();
    Polytope::new_unchecked(d, simplices).unwrap()
}

pub fn hull_of(points: &[QVector]) -> Polytope {
    convex_hull(points).unwrap()
}

pub fn ints(v: &[i64]) -> QVector {
    QVector::from_ints(v)
}

/// Centrally symmetric convex lattice polygon with `2m` edges, `2 <= m <= 5`.
pub fn symmetric_polygon(rng: &mut impl Rng) -> Polytope {
    let m = rng.gen_range(2..=5);
    let mut dirs: Vec<(i64, i64)> = Vec::new();
    while dirs.len() < m {
        let (x, y) = (rng.gen_range(-3..=3i64), rng.gen_range(0..=3i64));
        if (x, y) == (0, 0) || (y == 0 && x < 0) {
            continue;
        }
        // skip directions parallel to one already chosen
        if dirs.iter().any(|&(a, b)| a * y - b * x == 0) {
            continue;
        }
        dirs.push((x, y));
    }
    // sort by angle in the upper half plane
    dirs.sort_by(|&(a, b), &(c, d)| (c * b).cmp(&(a * d)));
    let origin = (rng.gen_range(-2..=2i64), rng.gen_range(-2..=2i64));
    let mut pts = vec![origin];
    let mut cur = origin;
    for &(x, y) in dirs.iter().chain(dirs.iter().map(|(x, y)| (-x, -y)).collect::<Vec<_>>().iter()) {
        cur = (cur.0 + x, cur.1 + y);
        pts.push(cur);
    }
    hull_of(&pts.iter().map(|&(x, y)| ints(&[x, y])).collect::<Vec<_>>())
}

/// Moves one vertex of `p` by a small integer vector; the hull of the result.
pub fn perturb(rng: &mut impl Rng, p: &Polytope) -> Polytope {
    let mut verts = multitile::geom::hull(&p.vertices()).unwrap().vertices().to_vec();
    let i = rng.gen_range(0..verts.len());
    let delta = loop {
        let v = ints(&[rng.gen_range(-1..=1), rng.gen_range(-1..=1)]);
        if !v.is_zero() {
            break v;
        }
    };
    verts[i] = &verts[i] + &delta;
    hull_of(&verts)
}

/// Splits `p` by the hyperplane `h`; either side may be empty.
pub fn cut(p: &Polytope, h: &HalfSpace) -> (Polytope, Polytope) {
    let side = |h: &HalfSpace| {
        let simplices = p
            .simplices()
            .iter()
            .filter_map(|s| ConvexCell::from_simplex(s).clip(h))
            .flat_map(|c| c.triangulate())
            .collect();
        Polytope::new_unchecked(p.dim(), simplices).unwrap()
    };
    (side(h), side(&h.complement()))
}

/// Hyperplane with a small integer normal and rational offset strictly
/// inside the extent of `p` along it.
pub fn random_cut_plane(rng: &mut impl Rng, p: &Polytope) -> HalfSpace {
    let d = p.dim();
    let normal = loop {
        let n: QVector = (0..d).map(|_| int(rng.gen_range(-2..=2))).collect();
        if !n.is_zero() {
            break n;
        }
    };
    let vals: Vec<Rational> = p.vertices().iter().map(|v| normal.dot(v)).collect();
    let lo = vals.iter().min().unwrap();
    let hi = vals.iter().max().unwrap();
    let t = rat(rng.gen_range(1..8), 8);
    HalfSpace::new(normal, lo + (hi - lo) * t)
}

/// Cuts `p` with `cuts` random hyperplanes and moves each piece by a random
/// lattice vector, keeping the pieces interior-disjoint. Returns the result
/// and the shifts used.
pub fn cut_and_shift(rng: &mut impl Rng, p: &Polytope, l: &Lattice, cuts: usize) -> (Polytope, Vec<QVector>) {
    let mut pieces = vec![p.clone()];
    for _ in 0..cuts {
        let h = random_cut_plane(rng, p);
        pieces = pieces
            .iter()
            .flat_map(|q| {
                let (a, b) = cut(q, &h);
                [a, b]
            })
            .filter(|q| !q.is_empty())
            .collect();
    }
    pieces.shuffle(rng);
    let d = p.dim();
    let mut placed: Vec<Simplex> = Vec::new();
    let mut shifts = Vec::new();
    for (j, piece) in pieces.iter().enumerate() {
        let mut attempt = 0;
        let moved = loop {
            let c: Vec<i64> = if attempt < 40 {
                (0..d).map(|_| rng.gen_range(-2..=2)).collect()
            } else {
                // far away along the first basis vector, always disjoint
                let mut c = vec![0; d];
                c[0] = 1000 * (j as i64 + 1);
                c
            };
            attempt += 1;
            let lam = l.point_int(&c);
            let moved = piece.translate(&lam);
            let trial = Polytope::new_unchecked(d, placed.iter().chain(moved.simplices()).cloned().collect()).unwrap();
            if trial.validate(multitile::Exec::default()).is_ok() {
                shifts.push(lam);
                break moved;
            }
        };
        placed.extend(moved.into_simplices());
    }
    (Polytope::new_unchecked(d, placed).unwrap(), shifts)
}

pub fn group(p: &Polytope) -> GroupElement {
    GroupElement::from_polytope(p)
}

/// Twice the signed area by the shoelace formula, for polygon vertices in order.
pub fn shoelace(verts: &[QVector]) -> Rational {
    let n = verts.len();
    (0..n)
        .map(|i| {
            let (a, b) = (&verts[i], &verts[(i + 1) % n]);
            &a[0] * &b[1] - &a[1] * &b[0]
        })
        .sum::<Rational>()
        / int(2)
}
