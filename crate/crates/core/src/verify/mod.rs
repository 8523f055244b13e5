//! Independent oracles for the tiling equation `sum_lambda chi_P(x - lambda) = k`.
//!
//! Sampling works entirely in lattice coordinates, where `L` becomes `Z^d`:
//! points are exact dyadic rationals in the unit cube, so every membership
//! test is exact. The Fourier oracle lives in [`fourier`].

pub mod fourier;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{floor_to_int, QVector, Rational};
use crate::geom::{bounding_box, GroupElement, Location, PointValue, Simplex};
use crate::lattice::Lattice;
use crate::par::Exec;

pub use fourier::{fourier_check, fourier_check_with, fourier_transform, FourierReport, FourierValue};

/// Bits of the dyadic sample grid.
pub const SAMPLE_BITS: u32 = 40;
/// Consecutive boundary hits tolerated before giving up on a sample.
pub const RESAMPLE_CAP: usize = 1000;
/// Failures kept in a [`SampleReport`].
pub const MAX_LISTED_FAILURES: usize = 16;

/// `p` expressed in the lattice coordinates of `l`, ready for repeated
/// multiplicity queries.
#[derive(Clone, Debug)]
pub struct MultiplicityOracle {
    lattice: Lattice,
    terms: Vec<(i64, Simplex)>,
    lo: QVector,
    hi: QVector,
}

impl MultiplicityOracle {
    pub fn new(p: &GroupElement, l: &Lattice) -> Result<Self> {
        if p.dim() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                found: p.dim(),
            });
        }
        let inv = l.basis().inverse().expect("lattice bases are invertible");
        let terms: Vec<(i64, Simplex)> = p
            .terms()
            .iter()
            .map(|t| Ok((t.coeff, t.simplex.transform(&inv)?)))
            .collect::<Result<_>>()?;
        let d = p.dim();
        let (lo, hi) = bounding_box(terms.iter().flat_map(|(_, s)| s.vertices()))
            .unwrap_or_else(|| (QVector::zeros(d), QVector::zeros(d)));
        Ok(MultiplicityOracle {
            lattice: l.clone(),
            terms,
            lo,
            hi,
        })
    }

    /// Multiplicity at a point given in lattice coordinates.
    pub fn at_coords(&self, c: &QVector) -> PointValue {
        if self.terms.is_empty() {
            return PointValue::Value(0);
        }
        let d = c.dim();
        let ranges: Vec<(BigInt, BigInt)> = (0..d)
            .map(|i| ((&c[i] - &self.hi[i]).ceil().to_integer(), floor_to_int(&(&c[i] - &self.lo[i]))))
            .collect();
        if ranges.iter().any(|(a, b)| a > b) {
            return PointValue::Value(0);
        }
        let mut total = 0i64;
        let mut cur: Vec<BigInt> = ranges.iter().map(|(a, _)| a.clone()).collect();
        loop {
            let y = c - &QVector::from_bigints(&cur);
            for (coeff, s) in self.terms.iter().filter(|(_, s)| s.bbox_contains(&y)) {
                match s.locate(&y) {
                    Location::Interior => total += coeff,
                    Location::Boundary => return PointValue::Boundary,
                    Location::Outside => {}
                }
            }
            let mut k = 0;
            loop {
                if k == d {
                    return PointValue::Value(total);
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

    /// `sum_lambda chi_P(x - lambda)`.
    pub fn at(&self, x: &QVector) -> PointValue {
        self.at_coords(&self.lattice.coords(x))
    }
}

pub fn multiplicity_at(p: &GroupElement, l: &Lattice, x: &QVector) -> Result<PointValue> {
    Ok(MultiplicityOracle::new(p, l)?.at(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub samples: usize,
    pub resampled_boundary: usize,
    /// Multiplicity -> number of samples observing it.
    pub observed_levels: BTreeMap<i64, usize>,
    pub constant: bool,
    pub level: Option<i64>,
    /// Points (in ambient coordinates) whose multiplicity differs from the
    /// most frequent one; at most [`MAX_LISTED_FAILURES`] are kept.
    pub failures: Vec<(QVector, i64)>,
}

pub fn sample_tiling(p: &GroupElement, l: &Lattice, n: usize, seed: u64) -> Result<SampleReport> {
    sample_tiling_with(p, l, n, seed, Exec::default())
}

/// Draws `n` points uniformly from the fundamental parallelepiped of `l`.
/// Sample `i` uses its own stream of the seeded generator, so results do not
/// depend on the execution mode.
pub fn sample_tiling_with(p: &GroupElement, l: &Lattice, n: usize, seed: u64, exec: Exec) -> Result<SampleReport> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "sample count",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    let oracle = MultiplicityOracle::new(p, l)?;
    let d = p.dim();
    let den = Rational::from_integer(BigInt::from(1u64) << SAMPLE_BITS);
    let draws: Vec<Result<(QVector, i64, usize)>> = exec.map_range(n, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        for tries in 0..=RESAMPLE_CAP {
            let c: QVector = (0..d)
                .map(|_| Rational::from_integer(rng.gen_range(0u64..1 << SAMPLE_BITS).into()) / &den)
                .collect();
            if let PointValue::Value(v) = oracle.at_coords(&c) {
                return Ok((c, v, tries));
            }
        }
        Err(Error::DegenerateInput(format!(
            "sample {i} hit a boundary {RESAMPLE_CAP} times in a row"
        )))
    });
    let mut observed: BTreeMap<i64, usize> = BTreeMap::new();
    let mut points = Vec::with_capacity(n);
    let mut resampled = 0;
    for draw in draws {
        let (c, v, tries) = draw?;
        *observed.entry(v).or_insert(0) += 1;
        resampled += tries;
        points.push((c, v));
    }
    // most frequent level, ties broken towards the smaller value
    let mode = observed
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(k, _)| *k)
        .expect("n >= 1");
    let failures = points
        .into_iter()
        .filter(|(_, v)| *v != mode)
        .take(MAX_LISTED_FAILURES)
        .map(|(c, v)| (l.point(&c), v))
        .collect();
    let constant = observed.len() == 1;
    Ok(SampleReport {
        samples: n,
        resampled_boundary: resampled,
        level: constant.then_some(mode),
        constant,
        observed_levels: observed,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, QMatrix};
    use crate::geom::Polytope;

    fn poly(simplices: &[&[&[i64]]]) -> GroupElement {
        let d = simplices[0][0].len();
        GroupElement::from_polytope(
            &Polytope::new(d, simplices.iter().map(|s| Simplex::from_ints(s).unwrap()).collect()).unwrap(),
        )
    }

    fn square() -> GroupElement {
        poly(&[&[&[0, 0], &[1, 0], &[0, 1]], &[&[1, 0], &[1, 1], &[0, 1]]])
    }

    fn q(xs: &[(i64, i64)]) -> QVector {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn half_lattice() -> Lattice {
        Lattice::new(QMatrix::from_rows(vec![QVector::from_ints(&[1, 0]), q(&[(1, 2), (1, 2)])])).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        let z2 = Lattice::integer(2);
        assert_eq!(multiplicity_at(&square(), &z2, &q(&[(1, 3), (1, 4)])).unwrap(), PointValue::Value(1));
        let rect = poly(&[&[&[0, 0], &[2, 0], &[2, 1]], &[&[0, 0], &[2, 1], &[0, 1]]]);
        assert_eq!(multiplicity_at(&rect, &z2, &q(&[(1, 3), (1, 4)])).unwrap(), PointValue::Value(2));
        let tri = poly(&[&[&[0, 0], &[1, 0], &[0, 1]]]);
        assert_eq!(multiplicity_at(&tri, &z2, &q(&[(2, 3), (2, 3)])).unwrap(), PointValue::Value(0));
        assert_eq!(multiplicity_at(&tri, &z2, &q(&[(1, 5), (1, 5)])).unwrap(), PointValue::Value(1));
        assert_eq!(multiplicity_at(&tri, &z2, &q(&[(1, 2), (1, 2)])).unwrap(), PointValue::Boundary);
        let far = q(&[(1, 5), (1, 5)]);
        let moved = &far + &QVector::from_ints(&[7, -3]);
        assert_eq!(multiplicity_at(&tri, &z2, &moved).unwrap(), PointValue::Value(1));
    }

    #[test]
    fn sampling_examples() {
        let z2 = Lattice::integer(2);
        let r = sample_tiling(&square(), &z2, 1000, 0).unwrap();
        assert!(r.constant && r.failures.is_empty());
        assert_eq!(r.level, Some(1));
        let tri = poly(&[&[&[0, 0], &[1, 0], &[0, 1]]]);
        let r = sample_tiling(&tri, &z2, 1000, 0).unwrap();
        assert!(!r.constant && !r.failures.is_empty());
        assert!(r.observed_levels.contains_key(&0) && r.observed_levels.contains_key(&1));
        let r = sample_tiling(&square(), &half_lattice(), 1000, 0).unwrap();
        assert_eq!(r.level, Some(2));
    }

    #[test]
    fn sampling_is_deterministic_across_modes() {
        let tri = poly(&[&[&[0, 0], &[1, 0], &[0, 1]]]);
        let l = half_lattice();
        let a = sample_tiling_with(&tri, &l, 300, 9, Exec::Sequential).unwrap();
        let b = sample_tiling_with(&tri, &l, 300, 9, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_tiling(&tri, &l, 300, 10).unwrap());
        let total: usize = a.observed_levels.values().sum();
        assert_eq!(total, 300);
    }
}
