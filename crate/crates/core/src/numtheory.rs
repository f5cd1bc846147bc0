//! Legendre symbols, class numbers and Legendre-weighted sums.
//!
//! Every sum here is evaluated by literal summation. Integer arguments are
//! reduced modulo `p` where the symbol is `p`-periodic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Unit;

/// An odd prime `p` with `q = (p - 1) / 2` and `t = floor(p / 4)` cached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "u64")]
pub struct OddPrime {
    p: u64,
    q: u64,
    t: u64,
}

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::NotOdd);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(OddPrime {
            p,
            q: (p - 1) / 2,
            t: p / 4,
        })
    }

    pub fn get(self) -> u64 {
        self.p
    }

    pub fn q(self) -> u64 {
        self.q
    }

    pub fn t(self) -> u64 {
        self.t
    }

    pub fn as_i64(self) -> i64 {
        self.p as i64
    }

    /// `p mod 4`, either 1 or 3.
    pub fn mod4(self) -> u64 {
        self.p % 4
    }

    /// `(p² - 1) / 8`.
    pub fn e8(self) -> u64 {
        (self.p * self.p - 1) / 8
    }

    /// Reduces `k` into `0..p`.
    pub fn reduce(self, k: i64) -> u64 {
        k.rem_euclid(self.p as i64) as u64
    }
}

impl From<OddPrime> for u64 {
    fn from(p: OddPrime) -> u64 {
        p.p
    }
}

impl TryFrom<u64> for OddPrime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        OddPrime::new(p)
    }
}

impl<'de> Deserialize<'de> for OddPrime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        OddPrime::new(p).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Display for OddPrime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.p.fmt(f)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &sp in &SMALL {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A choice of sign `±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// The Legendre symbol `(k/p)`, by Euler's criterion.
pub fn legendre(k: i64, p: OddPrime) -> i64 {
    let r = p.reduce(k);
    if r == 0 {
        return 0;
    }
    if pow_mod(r, p.q(), p.get()) == 1 {
        1
    } else {
        -1
    }
}

/// `δ(p)`: `1` if `p ≡ 1 (mod 4)`, `i` if `p ≡ 3 (mod 4)`.
pub fn delta_p(p: OddPrime) -> Unit {
    if p.mod4() == 1 {
        Unit::One
    } else {
        Unit::I
    }
}

/// `Σ_{j=0}^{p-1} (j/p) j`.
pub fn legendre_moment(p: OddPrime) -> i64 {
    (1..p.as_i64()).map(|j| legendre(j, p) * j).sum()
}

/// The class number of `Q(√-p)` via Dirichlet's formula.
pub fn class_number(p: OddPrime) -> Result<u64> {
    if p.mod4() != 3 {
        return Err(Error::ClassNumberDomain(p.get()));
    }
    let omega = if p.get() == 3 { 6 } else { 2 };
    let num = -omega * legendre_moment(p);
    let den = 2 * p.as_i64();
    debug_assert_eq!(num % den, 0);
    Ok((num / den) as u64)
}

/// `Σ_{j=1}^{p-1} ((kℓ ± j)/p)`.
pub fn sum_legendre_shift(ell: i64, k: i64, sign: Sign, p: OddPrime) -> i64 {
    let s = sign.as_i64();
    (1..p.as_i64()).map(|j| legendre(k * ell + s * j, p)).sum()
}

/// `Σ_{j=0}^{p-1} ((2ℓ ± (2j+1))/p)`.
pub fn sum_legendre_odd_shift(ell: i64, sign: Sign, p: OddPrime) -> i64 {
    let s = sign.as_i64();
    (0..p.as_i64())
        .map(|j| legendre(2 * ell + s * (2 * j + 1), p))
        .sum()
}

/// `Σ_{j=1}^{p-1} ((factor·ℓ ± j)/p) j`.
pub fn weighted_legendre_sum(ell: i64, factor: i64, sign: Sign, p: OddPrime) -> i64 {
    let s = sign.as_i64();
    (1..p.as_i64())
        .map(|j| legendre(factor * ell + s * j, p) * j)
        .sum()
}

/// `Σ_{j=0}^{p-1} ((2ℓ ± (2j+1))/p) j`.
pub fn odd_weighted_legendre_sum(ell: i64, sign: Sign, p: OddPrime) -> i64 {
    let s = sign.as_i64();
    (0..p.as_i64())
        .map(|j| legendre(2 * ell + s * (2 * j + 1), p) * j)
        .sum()
}

fn partial_legendre(upper: i64, p: OddPrime) -> i64 {
    (1..=upper).map(|j| legendre(j, p)).sum()
}

/// `S_h^±(ℓ, p)`. Empty ranges contribute 0; `ℓ` is reduced mod `p`.
pub fn s_h_pm(h: u8, sign: Sign, ell: i64, p: OddPrime) -> i64 {
    let pp = p.as_i64();
    let hl = h as i64 * p.reduce(ell) as i64;
    let fl = hl.div_euclid(pp);
    let first = partial_legendre(pp + fl * pp - hl - 1, p);
    let second = partial_legendre(hl - fl * pp - 1, p);
    first + sign.as_i64() * second
}

/// `S_1(ℓ, p)` (`which = 1`) or `S_2(ℓ, p)` (`which = 2`).
pub fn s_direct(which: u8, ell: i64, p: OddPrime) -> i64 {
    let pp = p.as_i64();
    let ell = p.reduce(ell) as i64;
    match which {
        1 => (1..pp)
            .map(|j| (legendre(ell - j, p) - legendre(ell + j, p)) * j)
            .sum(),
        _ => (0..pp)
            .map(|j| (legendre(2 * ell - 2 * j - 1, p) - legendre(2 * ell + 2 * j + 1, p)) * j)
            .sum(),
    }
}
