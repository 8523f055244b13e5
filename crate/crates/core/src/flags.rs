//! Face chains of simplices, their direction flags and flag-orbit keys.
//!
//! A chain at level `r` is a set `S_r` of `r + 1` vertices followed by the
//! vertices added one at a time until the full simplex is reached. Linear
//! parts of the spanned faces are stored by canonical bases, and every
//! hyperplane `V_j` inside `V_{j+1}` is oriented by a sign-normalized
//! primitive normal.

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{kernel_basis, QMatrix, QVector, Rational};
use crate::geom::{factorial, Simplex};
use crate::lattice::{canonical_basis, CosetReducer, Lattice};

/// A nested chain of faces `F_r < F_{r+1} < ... < F_d = simplex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceChain<'a> {
    simplex: &'a Simplex,
    /// Vertex indices of `F_r`, ascending.
    base: Vec<usize>,
    /// Vertex added at each level `r + 1, ..., d`.
    added: Vec<usize>,
}

impl<'a> FaceChain<'a> {
    pub fn new(simplex: &'a Simplex, base: Vec<usize>, added: Vec<usize>) -> Result<Self> {
        let n = simplex.dim() + 1;
        let all: Vec<usize> = base.iter().chain(&added).copied().sorted().collect();
        if base.is_empty() || all != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidFlag("chain must partition the simplex vertices".into()));
        }
        let mut base = base;
        base.sort_unstable();
        Ok(FaceChain { simplex, base, added })
    }

    pub fn simplex(&self) -> &'a Simplex {
        self.simplex
    }

    pub fn r(&self) -> usize {
        self.base.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.simplex.dim()
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn added(&self) -> &[usize] {
        &self.added
    }

    /// Vertex indices of `F_j`.
    pub fn face(&self, j: usize) -> Vec<usize> {
        assert!(self.r() <= j && j <= self.dim());
        self.base.iter().chain(&self.added[..j - self.r()]).copied().collect()
    }

    pub fn translate<'b>(&self, moved: &'b Simplex) -> FaceChain<'b> {
        FaceChain {
            simplex: moved,
            base: self.base.clone(),
            added: self.added.clone(),
        }
    }

    fn vertex(&self, i: usize) -> &QVector {
        &self.simplex.vertices()[i]
    }

    /// Lexicographically least vertex of `F_r`.
    pub fn anchor(&self) -> &QVector {
        self.base.iter().map(|&i| self.vertex(i)).min().expect("nonempty base")
    }
}

/// Number of chains of a `d`-simplex at level `r`: `(d+1)! / (r+1)!`.
pub fn chain_count(d: usize, r: usize) -> usize {
    (r + 2..=d + 1).product()
}

/// All face chains of `s` starting at an `r`-face.
pub fn face_chains(s: &Simplex, r: usize) -> Result<Vec<FaceChain<'_>>> {
    let d = s.dim();
    if r >= d {
        return Err(Error::OutOfRange {
            what: "flag level r",
            value: r as i64,
            lo: 0,
            hi: d as i64 - 1,
        });
    }
    let mut out = Vec::with_capacity(chain_count(d, r));
    for base in (0..=d).combinations(r + 1) {
        let rest: Vec<usize> = (0..=d).filter(|i| !base.contains(i)).collect();
        for added in rest.iter().copied().permutations(rest.len()) {
            out.push(FaceChain {
                simplex: s,
                base: base.clone(),
                added,
            });
        }
    }
    Ok(out)
}

/// Linear parts `W_r < ... < W_{d-1}` with oriented normals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectionFlag {
    pub r: usize,
    /// Canonical basis `U_j` of `W_j`, for `j = r..d-1`.
    pub bases: Vec<QMatrix>,
    /// `n_j` in `W_{j+1}`, orthogonal to `W_j`, primitive, first nonzero entry positive.
    pub normals: Vec<QVector>,
}

impl DirectionFlag {
    /// Builds the flag from spanning sets of `W_r, ..., W_{d-1}`, checking
    /// dimensions and nesting.
    pub fn from_spans(d: usize, spans: &[QMatrix]) -> Result<Self> {
        if spans.is_empty() || spans.len() > d {
            return Err(Error::InvalidFlag(format!(
                "expected between 1 and {d} subspaces, got {}",
                spans.len()
            )));
        }
        let r = d - spans.len();
        let mut bases = Vec::with_capacity(spans.len());
        for (k, span) in spans.iter().enumerate() {
            if span.ncols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: span.ncols(),
                });
            }
            let b = canonical_basis(span);
            if b.nrows() != r + k {
                return Err(Error::InvalidFlag(format!(
                    "subspace {k} has dimension {}, expected {}",
                    b.nrows(),
                    r + k
                )));
            }
            bases.push(b);
        }
        for (lo, hi) in bases.iter().tuple_windows() {
            let joined = QMatrix::from_rows(hi.rows().iter().chain(lo.rows()).cloned().collect());
            if joined.rank() != hi.nrows() {
                return Err(Error::InvalidFlag("subspaces are not nested".into()));
            }
        }
        Ok(Self::from_bases(d, r, bases))
    }

    fn from_bases(d: usize, r: usize, bases: Vec<QMatrix>) -> Self {
        let whole = QMatrix::identity(d);
        let normals = (0..bases.len())
            .map(|k| {
                let upper = bases.get(k + 1).unwrap_or(&whole);
                oriented_normal(&bases[k], upper)
            })
            .collect();
        DirectionFlag { r, bases, normals }
    }

    pub fn dim(&self) -> usize {
        self.normals[0].dim()
    }

    /// Canonical basis of `W_r`.
    pub fn base_space(&self) -> &QMatrix {
        &self.bases[0]
    }
}

/// The normal of `lower` inside `upper` (one dimension higher).
fn oriented_normal(lower: &QMatrix, upper: &QMatrix) -> QVector {
    // coefficients a with (a . U_upper) orthogonal to every row of U_lower
    let gram = QMatrix::new(
        upper.nrows(),
        lower
            .rows()
            .iter()
            .map(|u| upper.rows().iter().map(|w| u.dot(w)).collect())
            .collect(),
    )
    .expect("rows have one entry per upper basis vector");
    let ker = kernel_basis(&gram);
    debug_assert_eq!(ker.nrows(), 1);
    upper.vec_mul(ker.row(0)).sign_normalized()
}

pub fn direction_flag_of(c: &FaceChain) -> DirectionFlag {
    let d = c.dim();
    let origin = c.vertex(c.base[0]);
    let mut rows: Vec<QVector> = c.base[1..].iter().map(|&i| c.vertex(i) - origin).collect();
    let mut bases = Vec::with_capacity(d - c.r());
    bases.push(canonical_basis(&QMatrix::new(d, rows.clone()).expect("width d")));
    for &i in &c.added[..c.added.len() - 1] {
        rows.push(c.vertex(i) - origin);
        bases.push(canonical_basis(&QMatrix::new(d, rows.clone()).expect("width d")));
    }
    DirectionFlag::from_bases(d, c.r(), bases)
}

/// `eps_j` for `j = r..d-1`: whether `F_{j+1}` lies on the positive side of `V_j`.
pub fn epsilon_signs(c: &FaceChain, df: &DirectionFlag) -> Result<Vec<i8>> {
    let origin = c.vertex(c.base[0]);
    c.added
        .iter()
        .zip(&df.normals)
        .map(|(&i, n)| {
            let s = (c.vertex(i) - origin).dot(n);
            if s.is_positive() {
                Ok(1)
            } else if s.is_negative() {
                Ok(-1)
            } else {
                Err(Error::Internal("face chain leaves no side of its hyperplane".into()))
            }
        })
        .collect()
}

/// `r`-volume of `F_r` measured in the coordinates of the canonical basis `U_r`.
pub fn relative_volume(c: &FaceChain) -> Rational {
    relative_volume_in(c, direction_flag_of(c).base_space())
}

fn relative_volume_in(c: &FaceChain, u: &QMatrix) -> Rational {
    let r = c.r();
    if r == 0 {
        return Rational::one();
    }
    let pivots: Vec<usize> = u.rows().iter().map(|row| row.leading_index().expect("nonzero row")).collect();
    let origin = c.vertex(c.base[0]);
    let coords: Vec<QVector> = c.base[1..]
        .iter()
        .map(|&i| {
            let e = c.vertex(i) - origin;
            pivots.iter().zip(u.rows()).map(|(&p, row)| &e[p] / &row[p]).collect()
        })
        .collect();
    QMatrix::new(r, coords).expect("square").det().abs() / factorial(r)
}

/// Canonical identifier of a flag modulo translations by `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagOrbitKey {
    pub direction: DirectionFlag,
    /// Reduced representative of the flag's base point modulo `L + W_r`.
    pub anchor: QVector,
}

impl FlagOrbitKey {
    pub fn r(&self) -> usize {
        self.direction.r
    }
}

pub fn orbit_key(c: &FaceChain, l: &Lattice) -> FlagOrbitKey {
    let df = direction_flag_of(c);
    let anchor = l.reduce_mod(df.base_space(), c.anchor());
    FlagOrbitKey { direction: df, anchor }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainContribution {
    pub key: FlagOrbitKey,
    pub value: Rational,
}

pub fn chain_contribution(coeff: i64, c: &FaceChain, l: &Lattice) -> Result<ChainContribution> {
    ChainEvaluator::new(l).contribution(coeff, c)
}

/// Evaluates chain contributions against one lattice, caching a coset
/// reducer per subspace `W_r`.
pub struct ChainEvaluator<'l> {
    lattice: &'l Lattice,
    reducers: HashMap<QMatrix, CosetReducer>,
}

impl<'l> ChainEvaluator<'l> {
    pub fn new(lattice: &'l Lattice) -> Self {
        ChainEvaluator {
            lattice,
            reducers: HashMap::new(),
        }
    }

    pub fn lattice(&self) -> &'l Lattice {
        self.lattice
    }

    pub fn key_for(&mut self, direction: DirectionFlag, point: &QVector) -> FlagOrbitKey {
        let l = self.lattice;
        let reducer = self
            .reducers
            .entry(direction.base_space().clone())
            .or_insert_with_key(|w| l.reducer(w));
        let anchor = reducer.reduce(point);
        FlagOrbitKey { direction, anchor }
    }

    pub fn contribution(&mut self, coeff: i64, c: &FaceChain) -> Result<ChainContribution> {
        let df = direction_flag_of(c);
        let sign: i64 = epsilon_signs(c, &df)?.iter().map(|&e| e as i64).product();
        let value = relative_volume_in(c, df.base_space()) * Rational::from_integer((coeff * sign).into());
        let key = self.key_for(df, c.anchor());
        Ok(ChainContribution { key, value })
    }

    /// Contributions of every chain of `coeff * [s]` at every level `r < d`.
    pub fn simplex_contributions(&mut self, coeff: i64, s: &Simplex) -> Result<Vec<ChainContribution>> {
        let mut out = Vec::new();
        for r in 0..s.dim() {
            for c in face_chains(s, r)? {
                let cc = self.contribution(coeff, &c)?;
                if !cc.value.is_zero() {
                    out.push(cc);
                }
            }
        }
        Ok(out)
    }
}
