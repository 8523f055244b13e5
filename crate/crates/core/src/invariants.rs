//! Hadwiger functionals per flag orbit and the decisions built on them:
//! multi-tiling, lattice equidecomposability and equivalence of group elements.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{QMatrix, QVector, Rational};
use crate::flags::{ChainContribution, ChainEvaluator, DirectionFlag, FlagOrbitKey};
use crate::geom::{GroupElement, Polytope};
use crate::lattice::Lattice;
use crate::par::Exec;

/// Nonzero values `H_Phi(P, L)`, one per flag orbit. Absent keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadwigerReport {
    dim: usize,
    entries: BTreeMap<FlagOrbitKey, Rational>,
}

impl HadwigerReport {
    pub fn empty(dim: usize) -> Self {
        HadwigerReport {
            dim,
            entries: BTreeMap::new(),
        }
    }

    fn from_contributions(dim: usize, parts: impl IntoIterator<Item = ChainContribution>) -> Self {
        let mut entries: BTreeMap<FlagOrbitKey, Rational> = BTreeMap::new();
        for c in parts {
            *entries.entry(c.key).or_insert_with(Rational::zero) += c.value;
        }
        entries.retain(|_, v| !v.is_zero());
        HadwigerReport { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &BTreeMap<FlagOrbitKey, Rational> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, key: &FlagOrbitKey) -> Rational {
        self.entries.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Least key with a nonzero value.
    pub fn witness(&self) -> Option<(&FlagOrbitKey, &Rational)> {
        self.entries.iter().next()
    }

    /// Entrywise sum.
    pub fn add(&self, other: &HadwigerReport) -> HadwigerReport {
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            *entries.entry(k.clone()).or_insert_with(Rational::zero) += v;
        }
        entries.retain(|_, v| !v.is_zero());
        HadwigerReport { dim: self.dim, entries }
    }
}

fn check_dims(p: &GroupElement, l: &Lattice) -> Result<()> {
    if p.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: p.dim(),
        });
    }
    Ok(())
}

pub fn hadwiger_accumulate(p: &GroupElement, l: &Lattice) -> Result<HadwigerReport> {
    hadwiger_accumulate_with(p, l, Exec::default())
}

/// Folds every chain contribution of every term into its orbit; zero sums
/// are pruned only after all terms are in.
pub fn hadwiger_accumulate_with(p: &GroupElement, l: &Lattice, exec: Exec) -> Result<HadwigerReport> {
    check_dims(p, l)?;
    let per_term: Vec<Result<Vec<ChainContribution>>> = exec.map(p.terms(), |t| {
        ChainEvaluator::new(l).simplex_contributions(t.coeff, &t.simplex)
    });
    let mut all = Vec::new();
    for part in per_term {
        all.extend(part?);
    }
    Ok(HadwigerReport::from_contributions(p.dim(), all))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingVerdict {
    pub tiles: bool,
    pub level: Option<i64>,
    pub witness: Option<FlagOrbitKey>,
    pub witness_value: Option<Rational>,
}

pub fn is_tiling(p: &GroupElement, l: &Lattice) -> Result<TilingVerdict> {
    is_tiling_with(p, l, Exec::default())
}

pub fn is_tiling_with(p: &GroupElement, l: &Lattice, exec: Exec) -> Result<TilingVerdict> {
    let report = hadwiger_accumulate_with(p, l, exec)?;
    verdict_from(&report, p, l)
}

/// Verdict for `p` given its already computed report.
pub fn verdict_from(report: &HadwigerReport, p: &GroupElement, l: &Lattice) -> Result<TilingVerdict> {
    if let Some((k, v)) = report.witness() {
        return Ok(TilingVerdict {
            tiles: false,
            level: None,
            witness: Some(k.clone()),
            witness_value: Some(v.clone()),
        });
    }
    let ratio = p.volume() / l.det();
    if !ratio.is_integer() {
        return Err(Error::Internal(format!(
            "all Hadwiger functionals vanish but volume/det = {ratio} is not an integer"
        )));
    }
    let level = ratio
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Internal("tiling level exceeds i64".into()))?;
    Ok(TilingVerdict {
        tiles: true,
        level: Some(level),
        witness: None,
        witness_value: None,
    })
}

pub fn polytope_is_tiling(p: &Polytope, l: &Lattice) -> Result<TilingVerdict> {
    is_tiling(&GroupElement::from_polytope(p), l)
}

/// Equal volumes and `H_Phi(A) = H_Phi(B)` for every flag.
pub fn equidecomposable(a: &Polytope, b: &Polytope, l: &Lattice) -> Result<bool> {
    group_equivalent(&GroupElement::from_polytope(a), &GroupElement::from_polytope(b), l)
}

pub fn group_equivalent(p: &GroupElement, q: &GroupElement, l: &Lattice) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    if p.volume() != q.volume() {
        return Ok(false);
    }
    Ok(hadwiger_accumulate(&p.sub(q), l)?.is_empty())
}

/// An explicit affine flag `V_r < ... < V_{d-1}` through `point`, with one
/// vector per level pointing to the caller's positive side of `V_j` inside
/// `V_{j+1}`.
#[derive(Clone, Debug)]
pub struct FlagSpec {
    pub point: QVector,
    /// Spanning sets of the linear parts `W_r, ..., W_{d-1}`.
    pub spans: Vec<QMatrix>,
    pub positive: Vec<QVector>,
}

impl FlagSpec {
    /// Canonical direction flag and the sign relating the caller's
    /// orientation to the canonical one.
    pub fn resolve(&self) -> Result<(DirectionFlag, i64)> {
        let d = self.point.dim();
        let df = DirectionFlag::from_spans(d, &self.spans)?;
        if self.positive.len() != df.normals.len() {
            return Err(Error::InvalidFlag(format!(
                "expected {} orientation vectors, got {}",
                df.normals.len(),
                self.positive.len()
            )));
        }
        let whole = QMatrix::identity(d);
        let mut sign = 1;
        for (j, (v, n)) in self.positive.iter().zip(&df.normals).enumerate() {
            if v.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                });
            }
            let upper = df.bases.get(j + 1).unwrap_or(&whole);
            let joined = QMatrix::from_rows(upper.rows().iter().chain([v]).cloned().collect());
            if joined.rank() != upper.nrows() {
                return Err(Error::InvalidFlag(format!("orientation vector {j} leaves the next subspace")));
            }
            let s = v.dot(n);
            if s.is_zero() {
                return Err(Error::InvalidFlag(format!("orientation vector {j} lies in its hyperplane")));
            }
            if s.is_negative() {
                sign = -sign;
            }
        }
        Ok((df, sign))
    }
}

/// `H_Phi(p, L)` for an explicit flag, in the caller's orientation.
pub fn h_at_flag(p: &GroupElement, spec: &FlagSpec, l: &Lattice) -> Result<Rational> {
    check_dims(p, l)?;
    if spec.point.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: spec.point.dim(),
        });
    }
    let (df, sign) = spec.resolve()?;
    let key = ChainEvaluator::new(l).key_for(df, &spec.point);
    let report = hadwiger_accumulate(p, l)?;
    Ok(report.get(&key) * Rational::from_integer(sign.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::geom::{Simplex, Term};

    fn poly(simplices: &[&[&[i64]]]) -> Polytope {
        let d = simplices[0][0].len();
        Polytope::new(d, simplices.iter().map(|s| Simplex::from_ints(s).unwrap()).collect()).unwrap()
    }

    fn square() -> Polytope {
        poly(&[&[&[0, 0], &[1, 0], &[0, 1]], &[&[1, 0], &[1, 1], &[0, 1]]])
    }

    fn triangle() -> Polytope {
        poly(&[&[&[0, 0], &[1, 0], &[0, 1]]])
    }

    /// Kuhn triangulation of the unit cube `[0,1]^d`.
    fn cube(d: usize) -> Polytope {
        use itertools::Itertools;
        let simplices = (0..d)
            .permutations(d)
            .map(|perm| {
                let mut v = vec![0i64; d];
                let mut pts = vec![QVector::from_ints(&v)];
                for i in perm {
                    v[i] = 1;
                    pts.push(QVector::from_ints(&v));
                }
                Simplex::new(pts).unwrap()
            })
            .collect();
        Polytope::new(d, simplices).unwrap()
    }

    #[test]
    fn square_has_empty_report() {
        let g = GroupElement::from_polytope(&square());
        assert!(hadwiger_accumulate(&g, &Lattice::integer(2)).unwrap().is_empty());
    }

    #[test]
    fn triangle_has_hypotenuse_witness() {
        let g = GroupElement::from_polytope(&triangle());
        let rep = hadwiger_accumulate(&g, &Lattice::integer(2)).unwrap();
        let hyp = rep
            .entries()
            .keys()
            .find(|k| k.r() == 1 && k.direction.bases[0].rows() == [QVector::from_ints(&[1, -1])]);
        assert!(hyp.is_some());
        let v = is_tiling(&g, &Lattice::integer(2)).unwrap();
        assert!(!v.tiles && v.level.is_none() && v.witness.is_some());
        assert_eq!(v.witness.as_ref(), rep.witness().map(|(k, _)| k));
    }

    #[test]
    fn cubes_tile_at_level_one() {
        for d in 1..=3 {
            let v = polytope_is_tiling(&cube(d), &Lattice::integer(d)).unwrap();
            assert_eq!(v.level, Some(1), "d={d}");
        }
        let rect = poly(&[&[&[0, 0], &[2, 0], &[2, 1]], &[&[0, 0], &[2, 1], &[0, 1]]]);
        assert_eq!(polytope_is_tiling(&rect, &Lattice::integer(2)).unwrap().level, Some(2));
        let half = Lattice::new(QMatrix::from_rows(vec![
            QVector::from_ints(&[1, 0]),
            QVector::new(vec![rat(1, 2), rat(1, 2)]),
        ]))
        .unwrap();
        assert_eq!(polytope_is_tiling(&square(), &half).unwrap().level, Some(2));
    }

    #[test]
    fn modes_agree() {
        let g = GroupElement::from_polytope(&cube(3)).add(&GroupElement::from_polytope(
            &poly(&[&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]]).translate(&QVector::from_ints(&[3, 0, 0])),
        ));
        let l = Lattice::integer(3);
        assert_eq!(
            hadwiger_accumulate_with(&g, &l, Exec::Sequential).unwrap(),
            hadwiger_accumulate_with(&g, &l, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn equidecomposability_examples() {
        let z = Lattice::integer(1);
        let unit = poly(&[&[&[0], &[1]]]);
        let shifted = Polytope::new(
            1,
            vec![Simplex::new(vec![QVector::new(vec![rat(1, 4)]), QVector::new(vec![rat(5, 4)])]).unwrap()],
        )
        .unwrap();
        assert!(equidecomposable(&unit, &unit, &z).unwrap());
        assert!(equidecomposable(&unit, &shifted, &z).unwrap());
        let tri2 = poly(&[&[&[0, 0], &[2, 0], &[0, 1]]]);
        assert!(!equidecomposable(&square(), &tri2, &Lattice::integer(2)).unwrap());
    }

    #[test]
    fn group_equivalence_examples() {
        let l = Lattice::integer(2);
        let a = GroupElement::from_polytope(&triangle());
        let lam = QVector::from_ints(&[2, -1]);
        assert!(group_equivalent(&a.sub(&a.translate(&lam)), &GroupElement::zero(2), &l).unwrap());
        let sq = GroupElement::from_polytope(&square());
        assert!(!group_equivalent(&a, &a.add(&sq), &l).unwrap());
        let p = a.add(&sq);
        let q = a.translate(&lam).add(&sq);
        assert!(group_equivalent(&p, &q, &l).unwrap());
        // level zero tiler
        let v = is_tiling(&a.sub(&a.translate(&lam)), &l).unwrap();
        assert_eq!(v.level, Some(0));
    }

    #[test]
    fn explicit_flag_values() {
        let l = Lattice::integer(2);
        // vertices (0,0) and (1/2,0) are in different orbits, so the r=0 flag
        // at the origin along the x-axis sees only the chain 0 -> 1:
        // eps_0 = +1 (edge goes to +x), eps_1 = +1 (apex above the axis)
        let s = Simplex::new(vec![
            QVector::from_ints(&[0, 0]),
            QVector::new(vec![rat(1, 2), int(0)]),
            QVector::from_ints(&[0, 1]),
        ])
        .unwrap();
        let p = GroupElement::new(2, vec![Term { coeff: 1, simplex: s }]).unwrap();
        let spec = |px: i64, sx: i64, sy: i64| FlagSpec {
            point: QVector::from_ints(&[0, 0]),
            spans: vec![QMatrix::empty(2), QMatrix::from_ints(&[&[px, 0]])],
            positive: vec![QVector::from_ints(&[sx, 0]), QVector::from_ints(&[0, sy])],
        };
        assert_eq!(h_at_flag(&p, &spec(1, 1, 1), &l).unwrap(), int(1));
        assert_eq!(h_at_flag(&p, &spec(2, -1, 1), &l).unwrap(), int(-1));
        assert_eq!(h_at_flag(&p, &spec(1, -1, -1), &l).unwrap(), int(1));
        let away = FlagSpec {
            point: QVector::from_ints(&[0, 0]),
            spans: vec![QMatrix::from_ints(&[&[1, 3]])],
            positive: vec![QVector::from_ints(&[1, 0])],
        };
        assert_eq!(h_at_flag(&p, &away, &l).unwrap(), int(0));
        let bad = FlagSpec {
            point: QVector::from_ints(&[0, 0]),
            spans: vec![QMatrix::from_ints(&[&[1, 0]])],
            positive: vec![QVector::from_ints(&[1, 0])],
        };
        assert!(matches!(h_at_flag(&p, &bad, &l), Err(Error::InvalidFlag(_))));
    }
}
