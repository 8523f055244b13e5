//! High-precision Fourier transform of indicator functions of group elements.
//!
//! For a simplex with vertices `v_0..v_d` and `t_j = <xi, v_j>`,
//! `chi_hat(xi) = d! vol * G[t_0, ..., t_d]` with `G(t) = e^{-2 pi i t} / (-2 pi i)^d`,
//! a divided difference of order `d`. Nodes are exact rationals, so repeated
//! nodes are detected exactly and handled with `G^(k)(t) / k!`. Only this
//! module uses floating point.

use std::cell::RefCell;
use std::collections::HashMap;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{QVector, Rational};
use crate::geom::{factorial, GroupElement, Simplex};
use crate::lattice::Lattice;
use crate::par::Exec;

const RM: RoundingMode = RoundingMode::ToEven;
/// Extra binary digits carried beyond the requested decimal precision.
const GUARD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision in bits for `digits` significant decimal digits.
pub fn precision_bits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
}

fn big_int(n: &BigInt, p: usize) -> BigFloat {
    with_cc(|cc| BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, cc))
}

fn big_rational(q: &Rational, p: usize) -> BigFloat {
    big_int(q.numer(), p).div(&big_int(q.denom(), p), p, RM)
}

fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let s = with_cc(|cc| x.format(Radix::Dec, RM, cc)).expect("finite value formats");
    s.parse().unwrap_or(f64::NAN)
}

/// Complex number with `BigFloat` parts.
#[derive(Clone, Debug)]
pub struct FourierValue {
    pub re: BigFloat,
    pub im: BigFloat,
    p: usize,
}

impl FourierValue {
    fn zero(p: usize) -> Self {
        FourierValue {
            re: BigFloat::from_i64(0, p),
            im: BigFloat::from_i64(0, p),
            p,
        }
    }

    fn add(&self, o: &Self) -> Self {
        FourierValue {
            re: self.re.add(&o.re, self.p, RM),
            im: self.im.add(&o.im, self.p, RM),
            p: self.p,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        FourierValue {
            re: self.re.sub(&o.re, self.p, RM),
            im: self.im.sub(&o.im, self.p, RM),
            p: self.p,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        FourierValue {
            re: self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM),
            im: self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM),
            p,
        }
    }

    fn scale(&self, s: &BigFloat) -> Self {
        FourierValue {
            re: self.re.mul(s, self.p, RM),
            im: self.im.mul(s, self.p, RM),
            p: self.p,
        }
    }

    /// `|z|^2` at working precision.
    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.p;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs_f64(&self) -> f64 {
        to_f64(&self.norm_sqr()).sqrt()
    }

    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }
}

/// Per-frequency evaluation context: the constant `-2 pi i` and its
/// inverse powers, plus a cache of `e^{-2 pi i t}` keyed by `t mod 1`.
struct Evaluator {
    p: usize,
    d: usize,
    two_pi: BigFloat,
    /// `(-2 pi i)^{k - d} / k!` for `k = 0..=d`.
    deriv_factor: Vec<FourierValue>,
    exps: HashMap<Rational, FourierValue>,
}

impl Evaluator {
    fn new(d: usize, p: usize) -> Self {
        let pi = with_cc(|cc| cc.pi(p, RM));
        let two_pi = pi.mul(&BigFloat::from_i64(2, p), p, RM);
        let minus_two_pi_i = FourierValue {
            re: BigFloat::from_i64(0, p),
            im: two_pi.neg(),
            p,
        };
        // (-2 pi i)^{-1} = i / (2 pi)
        let inv = FourierValue {
            re: BigFloat::from_i64(0, p),
            im: BigFloat::from_i64(1, p).div(&two_pi, p, RM),
            p,
        };
        let mut pow_inv = vec![FourierValue {
            re: BigFloat::from_i64(1, p),
            im: BigFloat::from_i64(0, p),
            p,
        }];
        for _ in 0..d {
            let last = pow_inv.last().expect("nonempty").mul(&inv);
            pow_inv.push(last);
        }
        let mut deriv_factor = Vec::with_capacity(d + 1);
        for k in 0..=d {
            // (-2 pi i)^{k-d} = (-2 pi i)^k * (-2 pi i)^{-d}
            let mut v = pow_inv[d].clone();
            for _ in 0..k {
                v = v.mul(&minus_two_pi_i);
            }
            let kf = big_rational(&factorial(k), p);
            v = v.scale(&BigFloat::from_i64(1, p).div(&kf, p, RM));
            deriv_factor.push(v);
        }
        Evaluator {
            p,
            d,
            two_pi,
            deriv_factor,
            exps: HashMap::new(),
        }
    }

    /// `e^{-2 pi i t}`, reducing `t` modulo 1 exactly first.
    fn exp(&mut self, t: &Rational) -> FourierValue {
        let frac = t - t.floor();
        if let Some(v) = self.exps.get(&frac) {
            return v.clone();
        }
        let p = self.p;
        let angle = big_rational(&frac, p).mul(&self.two_pi, p, RM);
        let (c, s) = with_cc(|cc| (angle.cos(p, RM, cc), angle.sin(p, RM, cc)));
        let v = FourierValue { re: c, im: s.neg(), p };
        self.exps.insert(frac, v.clone());
        v
    }

    /// `G[t_0..t_d]` for sorted exact nodes.
    fn divided_difference(&mut self, nodes: &[Rational]) -> FourierValue {
        let n = nodes.len();
        debug_assert_eq!(n, self.d + 1);
        // table[i] holds G[t_i..t_{i+k}] after round k
        let mut table: Vec<FourierValue> = nodes.iter().map(|t| self.exp(t).mul(&self.deriv_factor[0])).collect();
        for k in 1..n {
            for i in 0..n - k {
                let (a, b) = (&nodes[i], &nodes[i + k]);
                table[i] = if a == b {
                    self.exp(a).mul(&self.deriv_factor[k])
                } else {
                    let gap = big_rational(&(b - a), self.p);
                    let inv = BigFloat::from_i64(1, self.p).div(&gap, self.p, RM);
                    table[i + 1].sub(&table[i]).scale(&inv)
                };
            }
        }
        table.swap_remove(0)
    }

    fn simplex(&mut self, s: &Simplex, xi: &QVector) -> FourierValue {
        let mut nodes: Vec<Rational> = s.vertices().iter().map(|v| v.dot(xi)).collect();
        nodes.sort();
        let weight = factorial(self.d) * s.volume();
        let w = big_rational(&weight, self.p);
        self.divided_difference(&nodes).scale(&w)
    }
}

/// `chi_hat_P(xi) = integral of chi_P(x) e^{-2 pi i <xi, x>} dx` with at least
/// `digits` significant decimal digits of working precision.
pub fn fourier_transform(p: &GroupElement, xi: &QVector, digits: usize) -> Result<FourierValue> {
    if xi.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: xi.dim(),
        });
    }
    let prec = precision_bits(digits);
    let mut ev = Evaluator::new(p.dim(), prec);
    let mut total = FourierValue::zero(prec);
    for t in p.terms() {
        let v = ev.simplex(&t.simplex, xi);
        total = total.add(&v.scale(&BigFloat::from_i64(t.coeff, prec)));
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourierReport {
    pub frequencies: Vec<QVector>,
    pub max_abs: f64,
    /// Frequency attaining `max_abs`.
    pub argmax: Option<QVector>,
    pub tol: f64,
    pub pass: bool,
}

pub fn fourier_check(p: &GroupElement, l: &Lattice, radius: u32, tol: f64, digits: usize) -> Result<FourierReport> {
    fourier_check_with(p, l, radius, tol, digits, Exec::default())
}

/// Evaluates `|chi_hat_P|` at every nonzero `xi = sum c_i b*_i` with
/// `|c_i| <= radius`, `b*` the dual basis.
pub fn fourier_check_with(
    p: &GroupElement,
    l: &Lattice,
    radius: u32,
    tol: f64,
    digits: usize,
    exec: Exec,
) -> Result<FourierReport> {
    if p.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: p.dim(),
        });
    }
    if radius == 0 {
        return Err(Error::OutOfRange {
            what: "Fourier radius",
            value: 0,
            lo: 1,
            hi: i64::from(u32::MAX),
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::DegenerateInput(format!("tolerance must be positive, got {tol}")));
    }
    let d = p.dim();
    let dual = l.dual();
    let r = radius as i64;
    let side = (2 * r + 1) as usize;
    let frequencies: Vec<QVector> = (0..side.pow(d as u32))
        .map(|mut idx| {
            let c: Vec<i64> = (0..d)
                .map(|_| {
                    let ci = (idx % side) as i64 - r;
                    idx /= side;
                    ci
                })
                .collect();
            dual.point_int(&c)
        })
        .filter(|xi| !xi.is_zero())
        .collect();
    let values = exec.map(&frequencies, |xi| -> Result<f64> { Ok(fourier_transform(p, xi, digits)?.abs_f64()) });
    let mut max_abs = 0.0f64;
    let mut argmax = None;
    for (xi, v) in frequencies.iter().zip(values) {
        let v = v?;
        if v > max_abs || argmax.is_none() {
            max_abs = v;
            argmax = Some(xi.clone());
        }
    }
    Ok(FourierReport {
        pass: max_abs <= tol,
        frequencies,
        max_abs,
        argmax,
        tol,
    })
}

/// `chi_hat(0)` must equal the volume; returns the relative error.
pub fn volume_consistency(p: &GroupElement, digits: usize) -> Result<f64> {
    let v = fourier_transform(p, &QVector::zeros(p.dim()), digits)?;
    let vol = p.volume();
    if vol.is_zero() {
        return Ok(v.abs_f64());
    }
    let prec = precision_bits(digits);
    let diff = v.re.sub(&big_rational(&vol, prec), prec, RM);
    let err = to_f64(&diff).abs().max(v.im_f64().abs());
    Ok(err / crate::exact::rational_to_f64(&vol).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::geom::Polytope;

    fn interval() -> GroupElement {
        GroupElement::from_polytope(&Polytope::from_simplex(Simplex::from_ints(&[&[0], &[1]]).unwrap()))
    }

    #[test]
    fn unit_interval_values() {
        let one = fourier_transform(&interval(), &QVector::from_ints(&[1]), 50).unwrap();
        assert!(one.abs_f64() < 1e-45);
        let half = fourier_transform(&interval(), &QVector::new(vec![rat(1, 2)]), 50).unwrap();
        // closed form (1 - e^{-pi i}) / (2 pi i xi) at xi = 1/2 is 2/(pi i) = -2i/pi
        assert!((half.abs_f64() - 2.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!(half.re_f64().abs() < 1e-40);
        assert!((half.im_f64() + 2.0 / std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn zero_frequency_is_volume() {
        let tri = GroupElement::from_polytope(&Polytope::from_simplex(
            Simplex::from_ints(&[&[0, 0], &[3, 1], &[1, 2]]).unwrap(),
        ));
        assert!(volume_consistency(&tri, 50).unwrap() < 1e-30);
        let v = fourier_transform(&tri, &QVector::zeros(2), 50).unwrap();
        assert!((v.re_f64() - 2.5).abs() < 1e-14);
    }

    #[test]
    fn square_passes_triangle_fails() {
        let z2 = Lattice::integer(2);
        let sq = GroupElement::from_polytope(
            &Polytope::new(
                2,
                vec![
                    Simplex::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap(),
                    Simplex::from_ints(&[&[1, 0], &[1, 1], &[0, 1]]).unwrap(),
                ],
            )
            .unwrap(),
        );
        let r = fourier_check(&sq, &z2, 5, 1e-30, 50).unwrap();
        assert!(r.pass, "max {}", r.max_abs);
        assert_eq!(r.frequencies.len(), 120);
        let tri = GroupElement::from_polytope(&Polytope::from_simplex(
            Simplex::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap(),
        ));
        let r = fourier_check(&tri, &z2, 3, 1e-6, 50).unwrap();
        assert!(!r.pass && r.max_abs > 1e-3);
    }

    #[test]
    fn modes_agree() {
        let tri = GroupElement::from_polytope(&Polytope::from_simplex(
            Simplex::from_ints(&[&[0, 0], &[2, 0], &[0, 1]]).unwrap(),
        ));
        let l = Lattice::integer(2);
        let a = fourier_check_with(&tri, &l, 2, 1e-20, 50, Exec::Sequential).unwrap();
        let b = fourier_check_with(&tri, &l, 2, 1e-20, 50, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
