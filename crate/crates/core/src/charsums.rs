//! Twisted Gauss sums `G_h^χ(l)`, the sine-weighted sums `F_h^χ(l, c)` and
//! products of sines and cosines at multiples of `π/p`.
//!
//! Closed forms are exact [`RadicalValue`]s; the `*_direct` functions sum the
//! defining series in floating point with ascending `k`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exact::{big_pow, neg_one_pow, RadicalValue, Rational, Unit};
use crate::numtheory::{delta_p, legendre, OddPrime};

/// The two characters of `Z_p` used here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterChoice {
    /// The trivial character.
    Chi0,
    /// The Legendre character.
    ChiP,
}

impl CharacterChoice {
    fn eval(self, k: i64, p: OddPrime) -> i64 {
        match self {
            CharacterChoice::Chi0 => i64::from(p.reduce(k) != 0),
            CharacterChoice::ChiP => legendre(k, p),
        }
    }
}

/// `sin` or `cos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    Sin,
    Cos,
}

fn delta_h2(h: u8) -> i64 {
    i64::from(h == 2)
}

/// `e^{π i m / p}` with `m` reduced mod `2p` first.
fn unit_root(m: i64, p: OddPrime) -> Complex64 {
    let two_p = 2 * p.as_i64();
    let m = m.rem_euclid(two_p);
    Complex64::from_polar(1.0, PI * m as f64 / p.as_i64() as f64)
}

/// `sin(π m / p)` with `m` reduced mod `2p` first.
fn sin_pi(m: i64, p: OddPrime) -> f64 {
    let two_p = 2 * p.as_i64();
    let m = m.rem_euclid(two_p);
    (PI * m as f64 / p.as_i64() as f64).sin()
}

fn radical(coeff: Rational, unit: Unit, p: OddPrime) -> RadicalValue {
    RadicalValue::new(coeff, unit, p.get())
}

/// The quadratic Gauss sum `G(l, p) = δ(p) (l/p) √p`.
pub fn gauss_g(l: i64, p: OddPrime) -> RadicalValue {
    radical(Rational::from(legendre(l, p)), delta_p(p), p)
}

/// `G_h^χ(l) = Σ_{k=1}^{p-1} (-1)^{k(h+1)} χ(k) e^{π i k (2l + δ_{h,2}) / p}`.
pub fn gauss_direct(h: u8, chi: CharacterChoice, l: i64, p: OddPrime) -> Complex64 {
    let shift = 2 * l + delta_h2(h);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..p.as_i64() {
        let sign = neg_one_pow((k * (h as i64 + 1)) as u64) as f64;
        let weight = sign * chi.eval(k, p) as f64;
        acc += unit_root(k * shift, p) * weight;
    }
    acc
}

/// `G_h^{χ_0}(l)`: `p - 1` on the resonant class, `-1` elsewhere.
pub fn g_h_chi0(h: u8, l: i64, p: OddPrime) -> i64 {
    let resonant = match h {
        1 => p.reduce(l) == 0,
        _ => p.reduce(2 * l + 1) == 0,
    };
    if resonant {
        p.as_i64() - 1
    } else {
        -1
    }
}

/// `G_h^{χ_p}(l)`.
pub fn g_h_chip(h: u8, l: i64, p: OddPrime) -> RadicalValue {
    let coeff = match h {
        1 => legendre(l, p),
        _ => legendre(2, p) * legendre(2 * l + 1, p),
    };
    radical(Rational::from(coeff), delta_p(p), p)
}

/// `F_h^{χ_0}(l, c)`, a purely imaginary rational.
pub fn f_h_chi0(h: u8, l: i64, c: i64, p: OddPrime) -> RadicalValue {
    let half_p = Rational::new(p.as_i64(), 2);
    let zero = RadicalValue::new(Rational::zero(), Unit::I, 1);
    if p.reduce(l) == 0 {
        return zero;
    }
    let (minus, plus) = match h {
        1 => (l - c, l + c),
        _ => (2 * (l - c) - 1, 2 * (l + c) + 1),
    };
    if p.reduce(minus) == 0 {
        RadicalValue::new(half_p, Unit::I, 1)
    } else if p.reduce(plus) == 0 {
        RadicalValue::new(-half_p, Unit::I, 1)
    } else {
        zero
    }
}

/// `F_h^{χ_p}(l, c)`.
pub fn f_h_chip(h: u8, l: i64, c: i64, p: OddPrime) -> RadicalValue {
    let diff = match h {
        1 => legendre(l - c, p) - legendre(l + c, p),
        _ => legendre(2, p) * (legendre(2 * (l - c) - 1, p) - legendre(2 * (l + c) + 1, p)),
    };
    // i·δ(p): δ = 1 gives i, δ = i gives -1.
    let (sign, unit) = Unit::I.times(delta_p(p));
    radical(Rational::new(sign * diff, 2), unit, p)
}

/// `F_h^χ(l, c) = Σ_{k=1}^{p-1} (-1)^{k(h+1)} χ(k) e^{2π i l k / p} sin(π k (2c + δ_{h,2}) / p)`.
pub fn f_direct(h: u8, chi: CharacterChoice, l: i64, c: i64, p: OddPrime) -> Complex64 {
    let shift = 2 * c + delta_h2(h);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..p.as_i64() {
        let sign = neg_one_pow((k * (h as i64 + 1)) as u64) as f64;
        let weight = sign * chi.eval(k, p) as f64 * sin_pi(k * shift, p);
        acc += unit_root(2 * l * k, p) * weight;
    }
    acc
}

/// `Π_{j=1}^{q} sin(jkπ/p)` or `Π_{j=1}^{q} cos(jkπ/p)` in closed form.
///
/// Panics if `k < 1`.
pub fn trig_prod(kind: TrigKind, k: i64, p: OddPrime) -> RadicalValue {
    assert!(k >= 1, "k must be positive");
    let q = p.q();
    let two_pow_q = Rational::from_integer(big_pow(2, q));
    let divisible = p.reduce(k) == 0;
    let gauss_sign = neg_one_pow((k as u64 - 1) * p.e8());
    match (kind, divisible) {
        (TrigKind::Sin, true) => RadicalValue::zero(),
        (TrigKind::Sin, false) => {
            let coeff = Rational::from(gauss_sign * legendre(k, p)) / &two_pow_q;
            radical(coeff, Unit::One, p)
        }
        (TrigKind::Cos, false) => RadicalValue::rational(Rational::from(gauss_sign) / &two_pow_q),
        (TrigKind::Cos, true) => {
            let quotient = k as u64 / p.get();
            RadicalValue::rational(Rational::from(neg_one_pow(quotient * q.div_ceil(2))))
        }
    }
}

/// `Π_{j=1}^{q}` of `sin` or `cos` at `jkπ/p`, evaluated in floating point.
pub fn trig_prod_direct(kind: TrigKind, k: i64, p: OddPrime) -> f64 {
    (1..=p.q() as i64)
        .map(|j| {
            let m = (j * k).rem_euclid(2 * p.as_i64());
            let x = PI * m as f64 / p.as_i64() as f64;
            match kind {
                TrigKind::Sin => x.sin(),
                TrigKind::Cos => x.cos(),
            }
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::radical_to_float;

    fn op(p: u64) -> OddPrime {
        OddPrime::new(p).unwrap()
    }

    fn rv(n: i64, d: i64, unit: Unit, r: u64) -> RadicalValue {
        RadicalValue::new(Rational::new(n, d), unit, r)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-8
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_g(1, op(5)), rv(1, 1, Unit::One, 5));
        assert_eq!(gauss_g(1, op(3)), rv(1, 1, Unit::I, 3));
        assert!(gauss_g(5, op(5)).is_zero());
        assert!(close(
            gauss_direct(1, CharacterChoice::Chi0, 0, op(7)),
            Complex64::new(6.0, 0.0)
        ));
        assert!(close(
            gauss_direct(1, CharacterChoice::ChiP, 1, op(5)),
            Complex64::new(5f64.sqrt(), 0.0)
        ));
        assert!(close(
            gauss_direct(2, CharacterChoice::Chi0, 3, op(7)),
            Complex64::new(6.0, 0.0)
        ));
    }

    #[test]
    fn g_h_examples() {
        assert_eq!(g_h_chi0(1, 0, op(7)), 6);
        assert_eq!(g_h_chi0(1, 3, op(7)), -1);
        assert_eq!(g_h_chi0(2, 3, op(7)), 6);
        assert_eq!(g_h_chip(1, 2, op(5)), rv(-1, 1, Unit::One, 5));
        assert!(g_h_chip(2, 3, op(7)).is_zero());
        assert_eq!(g_h_chip(2, 1, op(5)), rv(1, 1, Unit::One, 5));
    }

    #[test]
    fn f_h_examples() {
        assert_eq!(f_h_chi0(1, 2, 2, op(5)), rv(5, 2, Unit::I, 1));
        assert!(f_h_chi0(1, 1, 2, op(5)).is_zero());
        assert_eq!(f_h_chi0(2, 3, 2, op(11)), rv(-11, 2, Unit::I, 1));
        assert_eq!(f_h_chip(1, 1, 1, op(5)), rv(1, 2, Unit::I, 5));
        assert!(f_h_chip(1, 1, 5, op(5)).is_zero());
        assert_eq!(
            radical_to_float(&f_h_chip(1, 3, 1, op(3))),
            Complex64::new(3f64.sqrt(), 0.0)
        );
        assert!(close(
            f_direct(1, CharacterChoice::Chi0, 2, 2, op(5)),
            Complex64::new(0.0, 2.5)
        ));
        assert!(close(
            f_direct(1, CharacterChoice::ChiP, 1, 1, op(5)),
            Complex64::new(0.0, 5f64.sqrt() / 2.0)
        ));
        assert!(close(
            f_direct(1, CharacterChoice::Chi0, 1, 2, op(5)),
            Complex64::new(0.0, 0.0)
        ));
    }

    #[test]
    fn trig_examples() {
        assert!(trig_prod(TrigKind::Sin, 3, op(3)).is_zero());
        assert_eq!(trig_prod(TrigKind::Sin, 2, op(5)), rv(1, 4, Unit::One, 5));
        assert_eq!(
            trig_prod(TrigKind::Cos, 1, op(5)),
            RadicalValue::rational(Rational::new(1, 4))
        );
        assert!((trig_prod_direct(TrigKind::Sin, 1, op(3)) - 0.866_025_403_784).abs() < 1e-9);
        assert!((trig_prod_direct(TrigKind::Cos, 5, op(5)) + 1.0).abs() < 1e-12);
        assert!(trig_prod_direct(TrigKind::Sin, 3, op(3)).abs() < 1e-12);
    }

    #[test]
    fn f_chip_vanishes_on_multiples_of_p() {
        for p in [3u64, 5, 7, 11, 13, 17] {
            let p = op(p);
            for l in 0..p.as_i64() {
                for m in 1..4 {
                    assert!(f_h_chip(1, l, m * p.as_i64(), p).is_zero());
                }
            }
        }
    }
}
