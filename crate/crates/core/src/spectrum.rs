//! Multiplicity differences `d⁺ − d⁻` of the twisted Dirac spectrum and
//! dimensions of harmonic spinors, each with a character-sum oracle.
//!
//! Half-integral `μ` is carried as the integer `2μ`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{big_pow, neg_one_pow};
use crate::manifold::{SpinStructure, ZpParams};
use crate::numtheory::legendre;

/// Tolerance used by the numeric oracles.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

/// An eigenvalue index `(ℓ, h, μ)` with `μ` stored as `2μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectralIndex {
    pub ell: i64,
    pub h: u8,
    pub twice_mu: u64,
}

impl SpectralIndex {
    /// Checks that `μ ∈ N` for `h = 1` and `μ ∈ N₀ + ½` for `h = 2`.
    pub fn new(ell: i64, h: u8, twice_mu: u64) -> Result<Self> {
        let ok = match h {
            1 => twice_mu > 0 && twice_mu % 2 == 0,
            2 => twice_mu % 2 == 1,
            _ => return Err(Error::InvalidPeriodicity(h as u64)),
        };
        if !ok {
            return Err(Error::InvalidMu { h, twice_mu });
        }
        Ok(SpectralIndex { ell, h, twice_mu })
    }

    /// The `c`-th admissible index (`c ≥ 1`): `μ = c` or `μ = c − ½`.
    pub fn nth(ell: i64, h: u8, c: u64) -> Result<Self> {
        let twice_mu = if h == 1 {
            2 * c
        } else {
            (2 * c).saturating_sub(1)
        };
        Self::new(ell, h, twice_mu)
    }

    /// `c_μ = μ − δ_{h,2}/2`.
    pub fn c_mu(&self) -> u64 {
        self.twice_mu / 2
    }
}

/// A multiplicity difference, flagged when it vanishes by symmetry of the
/// spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultDiff {
    #[serde(with = "crate::exact::big_string")]
    pub value: BigInt,
    pub symmetric: bool,
}

/// `m = ⌊n/2⌋` and `r = ⌊n/4⌋`.
fn m_r(params: &ZpParams) -> (u64, u64) {
    let n = params.n();
    (n / 2, n / 4)
}

/// `d⁺_{ℓ,μ,h} − d⁻_{ℓ,μ,h}`.
pub fn mult_diff(params: &ZpParams, idx: SpectralIndex) -> MultDiff {
    if !params.is_exceptional() {
        return MultDiff {
            value: BigInt::zero(),
            symmetric: true,
        };
    }
    let p = params.p;
    let a = params.a;
    let (_, r) = m_r(params);
    let ell = p.reduce(idx.ell) as i64;
    let tm = idx.twice_mu as i64;
    let value = if a % 2 == 0 {
        let mag = big_pow(p.get(), a / 2) * neg_one_pow(r);
        if ell == 0 {
            BigInt::zero()
        } else if p.reduce(2 * ell - tm) == 0 {
            mag
        } else if p.reduce(2 * ell + tm) == 0 {
            -mag
        } else {
            BigInt::zero()
        }
    } else {
        let sign = neg_one_pow(p.q() + r);
        let diff = legendre(2 * ell - tm, p) - legendre(2 * ell + tm, p);
        big_pow(p.get(), (a - 1) / 2) * (sign * diff)
    };
    MultDiff {
        value,
        symmetric: false,
    }
}

/// Floating-point evaluation of the character sum
/// `(−1)^{((p²−1)/8)a+1} i^{m+1} 2 p^{a/2−1} Σ_k (−1)^{k(h+1)} (k/p)^a e^{2πikℓ/p} sin(2πμk/p)`.
pub fn mult_diff_oracle(params: &ZpParams, idx: SpectralIndex) -> Result<f64> {
    if !params.is_exceptional() {
        return Ok(0.0);
    }
    let p = params.p;
    let pi = p.as_i64();
    let a = params.a;
    let (m, _) = m_r(params);
    let two_p = 2 * pi;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..pi {
        let sign = neg_one_pow((k * (idx.h as i64 + 1)) as u64) as f64;
        let chi = (legendre(k, p) as f64).powi(a as i32);
        let phase = (2 * idx.ell * k).rem_euclid(two_p) as f64 * PI / pi as f64;
        let sine = ((idx.twice_mu as i64 * k).rem_euclid(two_p) as f64 * PI / pi as f64).sin();
        sum += Complex64::from_polar(1.0, phase) * (sign * chi * sine);
    }
    let i_pow = match (m + 1) % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let sign = neg_one_pow(p.e8() * a + 1) as f64;
    let scale = 2.0 * (pi as f64).powf(a as f64 / 2.0 - 1.0);
    let value = i_pow * sum * (sign * scale);
    check_integral(value, "multiplicity difference")
}

fn check_integral(value: Complex64, what: &str) -> Result<f64> {
    let residual = (value.re - value.re.round()).abs();
    if value.im.abs() >= ORACLE_TOLERANCE || residual >= ORACLE_TOLERANCE {
        return Err(Error::OracleResidual(format!("{what} oracle gave {value}")));
    }
    Ok(value.re)
}

/// Dimension of the space of harmonic spinors for the twist `ℓ`.
pub fn dim_ker(params: &ZpParams, structure: &SpinStructure, ell: i64) -> Result<BigInt> {
    params.require_odd_dimension()?;
    if !structure.is_trivial_type() {
        return Ok(BigInt::zero());
    }
    let p = params.p;
    let ab = params.a + params.b;
    let delta = i64::from(p.reduce(ell) == 0);
    let correction = neg_one_pow(p.e8() * ab) * (p.as_i64() * delta - 1);
    let inner = big_pow(2, ab * p.q()) + correction;
    let numer = big_pow(2, (params.betti() - 1) / 2) * inner;
    let (quot, rem) = numer.div_rem(&BigInt::from(p.get()));
    if !rem.is_zero() {
        return Err(Error::NonIntegerKernel(format!(
            "{numer}/{p} for {params}, ell = {ell}"
        )));
    }
    Ok(quot)
}

/// `(2^m/p) Σ_{k=0}^{p−1} (−1)^{k⌊(q+1)/2⌋(a+b)} (Π_{j=1}^q cos(jkπ/p))^{a+b} e^{2πikℓ/p}`.
pub fn dim_ker_oracle(params: &ZpParams, ell: i64) -> Result<f64> {
    params.require_odd_dimension()?;
    let p = params.p;
    let pi = p.as_i64();
    let ab = params.a + params.b;
    let (m, _) = m_r(params);
    let half = p.q().div_ceil(2);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..pi {
        let sign = neg_one_pow(k as u64 * half * ab) as f64;
        let prod: f64 = (1..=p.q() as i64)
            .map(|j| ((j * k).rem_euclid(2 * pi) as f64 * PI / pi as f64).cos())
            .product();
        let phase = (2 * ell * k).rem_euclid(2 * pi) as f64 * PI / pi as f64;
        sum += Complex64::from_polar(1.0, phase) * (sign * prod.powi(ab as i32));
    }
    let value = sum * (2f64.powi(m as i32) / pi as f64);
    check_integral(value, "kernel dimension")
}

/// Converts an exact multiplicity difference to `f64` for comparisons.
pub fn mult_diff_f64(d: &MultDiff) -> f64 {
    d.value.to_f64().unwrap_or(f64::NAN)
}
