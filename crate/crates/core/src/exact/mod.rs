//! Exact rational scalars, vectors and matrices.
//!
//! Everything downstream (coordinates, volumes, orbit keys) is built on
//! [`Rational`], which is always kept in lowest terms with a positive
//! denominator. Equality and hashing are therefore structural.

mod hnf;
mod matrix;

use std::fmt;
use std::ops::{Add, Deref, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use hnf::{hnf, hnf_int_rows};
pub use matrix::{kernel_basis, solve_linear, QMatrix};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, reduced, denominator positive.
pub type Rational = BigRational;

/// Builds `num/den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"7"`, `"-3/4"` or `"2/4"` (non-reduced input is accepted and reduced).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        path: String::new(),
        msg: format!("invalid rational {s:?}"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse {
            path: String::new(),
            msg: format!("zero denominator in {s:?}"),
        });
    }
    Ok(Rational::new(num, den))
}

/// Serialized form: `num/den`, with the denominator omitted when it is 1.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn floor_to_int(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// A point or vector with exact rational coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(d: usize) -> Self {
        QVector(vec![Rational::zero(); d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = Self::zeros(d);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVector(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn from_bigints(xs: &[BigInt]) -> Self {
        QVector(xs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn entries_mut(&mut self) -> &mut [Rational] {
        &mut self.0
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: &Rational, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    /// Index of the first nonzero coordinate.
    pub fn leading_index(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }

    /// Rescales by a positive factor so the entries are coprime integers.
    /// The zero vector is returned unchanged.
    pub fn primitive(&self) -> QVector {
        if self.is_zero() {
            return self.clone();
        }
        let den = common_denominator(&self.0);
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        QVector::from_bigints(&ints.iter().map(|x| x / &g).collect::<Vec<_>>())
    }

    /// Primitive integer multiple whose first nonzero entry is positive.
    pub fn sign_normalized(&self) -> QVector {
        let p = self.primitive();
        match p.leading_index() {
            Some(i) if p.0[i].is_negative() => -&p,
            _ => p,
        }
    }

    /// Midpoint-style average of a nonempty set of points.
    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a QVector>) -> QVector {
        let mut it = points.into_iter();
        let first = it.next().expect("centroid of an empty point set").clone();
        let (sum, n) = it.fold((first, 1i64), |(s, n), p| (&s + p, n + 1));
        sum.scale(&rat(1, n))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational_to_f64).collect()
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl Deref for QVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for QVector {
    fn from(v: Vec<Rational>) -> Self {
        QVector(v)
    }
}

impl FromIterator<Rational> for QVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl Add<&QVector> for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&QVector> for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Rational> for &QVector {
    type Output = QVector;
    fn mul(self, rhs: &Rational) -> QVector {
        self.scale(rhs)
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(format_rational(&rat(3, -4)), "-3/4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn primitive_and_sign() {
        let v = QVector::new(vec![rat(-1, 2), rat(-3, 4)]);
        assert_eq!(v.sign_normalized(), QVector::from_ints(&[2, 3]));
        assert_eq!(QVector::from_ints(&[0, -4, 6]).sign_normalized(), QVector::from_ints(&[0, 2, -3]));
        assert!(QVector::zeros(3).primitive().is_zero());
    }

    #[test]
    fn vector_arithmetic() {
        let a = QVector::from_ints(&[1, 2]);
        let b = QVector::new(vec![rat(1, 2), rat(-1, 3)]);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(a.dot(&b), rat(1, 2) - rat(2, 3));
        assert_eq!(QVector::centroid([&a, &b]), QVector::new(vec![rat(3, 4), rat(5, 6)]));
    }
}
