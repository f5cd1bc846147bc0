//! Eta series, eta invariants and reduced eta invariants of twisted Dirac
//! operators.
//!
//! For exceptional manifolds the eta series is a finite combination of
//! Hurwitz zeta functions `ζ(s, α)` times `(2πp)^{−s}`. Evaluating at `s = 0`
//! with `ζ(0, α) = ½ − α` gives the eta invariant.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{big_pow, neg_one_pow, reduce_mod_z, Rational, ResidueModZ};
use crate::manifold::{SpinStructure, ZpParams};
use crate::numtheory::{class_number, legendre, legendre_moment, s_h_pm, Sign};
use crate::spectrum::{dim_ker, mult_diff, SpectralIndex};

/// Number of leading terms summed directly in [`hurwitz_zeta`].
pub const HURWITZ_TERMS: u32 = 50;

/// `sign · scale · (2πp)^{−s} · Σ coeff · ζ(s, α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaClosedForm {
    #[serde(with = "crate::exact::big_string")]
    pub scale: BigInt,
    pub sign: i8,
    pub base_p: u64,
    pub terms: Vec<(Rational, i64)>,
}

impl EtaClosedForm {
    pub fn zero(base_p: u64) -> Self {
        EtaClosedForm {
            scale: BigInt::zero(),
            sign: 1,
            base_p,
            terms: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact value at `s = 0`.
    pub fn value_at_zero(&self) -> Rational {
        let half = Rational::new(1, 2);
        let sum: Rational = self
            .terms
            .iter()
            .map(|(alpha, k)| (&half - alpha) * Rational::from(*k))
            .sum();
        sum * Rational::from_integer(&self.scale * i64::from(self.sign))
    }
}

fn form(sign: i64, scale: BigInt, base_p: u64, terms: Vec<(Rational, i64)>) -> EtaClosedForm {
    let terms: Vec<_> = terms.into_iter().filter(|(_, k)| *k != 0).collect();
    if terms.is_empty() {
        return EtaClosedForm::zero(base_p);
    }
    EtaClosedForm {
        scale,
        sign: sign as i8,
        base_p,
        terms,
    }
}

fn check_h(h: u8) -> Result<()> {
    if h == 1 || h == 2 {
        Ok(())
    } else {
        Err(Error::InvalidPeriodicity(h as u64))
    }
}

/// The eta series `η_{ℓ,h}(s)` as a combination of Hurwitz zeta functions.
pub fn eta_series_closed_form(params: &ZpParams, h: u8, ell: i64) -> Result<EtaClosedForm> {
    params.require_odd_dimension()?;
    check_h(h)?;
    let p = params.p;
    let pp = p.as_i64();
    if !params.is_exceptional() {
        return Ok(EtaClosedForm::zero(p.get()));
    }
    let ell = p.reduce(ell) as i64;
    let a = params.a;
    let r = params.n() / 4;
    let frac = |n: i64, d: i64| Rational::new(n, d);
    let half = frac(1, 2);
    if a % 2 == 0 {
        if ell == 0 {
            return Ok(EtaClosedForm::zero(p.get()));
        }
        let scale = big_pow(p.get(), a / 2);
        let sign = neg_one_pow(r);
        let terms = match h {
            1 => vec![(frac(ell, pp), 1), (frac(pp - ell, pp), -1)],
            _ if ell as u64 <= p.q() => {
                vec![(&half + &frac(ell, pp), 1), (&half - &frac(ell, pp), -1)]
            }
            _ => vec![
                (&half - &frac(pp - ell, pp), 1),
                (&half + &frac(pp - ell, pp), -1),
            ],
        };
        return Ok(form(sign, scale, p.get(), terms));
    }
    let scale = big_pow(p.get(), (a - 1) / 2);
    let (sign, terms) = match h {
        1 => (
            neg_one_pow(p.t() + r),
            (1..pp)
                .map(|j| (frac(j, pp), legendre(ell - j, p) - legendre(ell + j, p)))
                .collect(),
        ),
        _ => (
            neg_one_pow(p.q() + r),
            (0..pp)
                .map(|j| {
                    let k = legendre(2 * ell - 2 * j - 1, p) - legendre(2 * ell + 2 * j + 1, p);
                    (frac(2 * j + 1, 2 * pp), k)
                })
                .collect(),
        ),
    };
    Ok(form(sign, scale, p.get(), terms))
}

/// `ζ(s, α)` for real `s > 1` by Euler–Maclaurin summation.
pub fn hurwitz_zeta(s: f64, alpha: &Rational) -> Result<f64> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::DomainError(s));
    }
    let a = alpha.to_f64();
    let n = HURWITZ_TERMS as f64;
    let head: f64 = (0..HURWITZ_TERMS)
        .rev()
        .map(|k| (k as f64 + a).powf(-s))
        .sum();
    let x = n + a;
    let tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s) + s * x.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * x.powf(-s - 3.0) / 720.0;
    Ok(head + tail)
}

/// Numeric value of a closed form at real `s > 1`.
pub fn eta_series_eval(form: &EtaClosedForm, s: f64) -> Result<f64> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::DomainError(s));
    }
    if form.is_zero() {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for (alpha, k) in &form.terms {
        sum += *k as f64 * hurwitz_zeta(s, alpha)?;
    }
    let prefactor = (2.0 * PI * form.base_p as f64).powf(-s);
    Ok(f64::from(form.sign) * form.scale.to_f64().unwrap_or(f64::NAN) * prefactor * sum)
}

/// `π^{−s} Σ_{c=1}^{N} (d⁺ − d⁻) / (2c − δ_{h,2})^s`, summed in ascending order.
pub fn eta_spectral_partial(params: &ZpParams, h: u8, ell: i64, s: f64, terms: u64) -> Result<f64> {
    check_h(h)?;
    if s.is_nan() || s <= 1.0 {
        return Err(Error::DomainError(s));
    }
    let mut sum = 0.0;
    for c in 1..=terms {
        let idx = SpectralIndex::nth(ell, h, c)?;
        let d = mult_diff(params, idx);
        if !d.value.is_zero() {
            sum += d.value.to_f64().unwrap_or(f64::NAN) / (idx.twice_mu as f64).powf(s);
        }
    }
    Ok(sum * PI.powf(-s))
}

/// Upper bound for the terms of [`eta_spectral_partial`] beyond `N`.
pub fn spectral_tail_bound(params: &ZpParams, s: f64, terms: u64) -> f64 {
    if !params.is_exceptional() {
        return 0.0;
    }
    let p = params.p.get() as f64;
    let a = params.a as f64;
    let d = if params.a % 2 == 0 {
        p.powf(a / 2.0)
    } else {
        2.0 * p.powf((a - 1.0) / 2.0)
    };
    let first = (2 * terms + 1) as f64;
    d * PI.powf(-s) * (first.powf(-s) + (first - 1.0).powf(1.0 - s) / (2.0 * (s - 1.0)))
}

/// `S_h^±` with `ℓ` reduced mod `p`.
fn aux(h: u8, sign: Sign, ell: i64, params: &ZpParams) -> Rational {
    Rational::from(s_h_pm(h, sign, ell, params.p))
}

/// The eta invariant `η_{ℓ,h}` in closed form.
pub fn eta_invariant(params: &ZpParams, h: u8, ell: i64) -> Result<Rational> {
    params.require_odd_dimension()?;
    check_h(h)?;
    if !params.is_exceptional() {
        return Ok(Rational::zero());
    }
    let p = params.p;
    let pp = p.as_i64();
    let ell = p.reduce(ell) as i64;
    let a = params.a;
    let r = params.n() / 4;
    if a % 2 == 0 {
        if ell == 0 {
            return Ok(Rational::zero());
        }
        let scale = Rational::new(big_pow(p.get(), a / 2), pp) * Rational::from(neg_one_pow(r));
        let body = match h {
            1 => pp - 2 * ell,
            _ => 2 * ((2 * ell / pp) * pp - ell),
        };
        return Ok(scale * Rational::from(body));
    }
    let scale = Rational::from_integer(big_pow(p.get(), (a - 1) / 2));
    let l2 = Rational::from(legendre(2, p));
    let one = Rational::one();
    if p.mod4() == 1 {
        let s1 = aux(1, Sign::Minus, ell, params);
        let value = match h {
            1 => Rational::from(neg_one_pow(p.t() + r + 1)) * s1,
            _ => {
                Rational::from(neg_one_pow(p.q() + r + 1))
                    * (aux(2, Sign::Minus, ell, params) - &l2 * &s1)
            }
        };
        return Ok(scale * value);
    }
    let s1 = aux(1, Sign::Plus, ell, params);
    let moment = Rational::new(2 * legendre_moment(p), pp);
    let value = match h {
        1 => Rational::from(neg_one_pow(p.t() + r)) * (s1 + &moment),
        _ => {
            let body = aux(2, Sign::Plus, ell, params) - &l2 * &s1 + (&one - &l2) * &moment;
            Rational::from(neg_one_pow(p.q() + r)) * body
        }
    };
    Ok(scale * value)
}

/// The eta invariant obtained by evaluating the eta series at `s = 0`.
pub fn eta_invariant_via_series(params: &ZpParams, h: u8, ell: i64) -> Result<Rational> {
    Ok(eta_series_closed_form(params, h, ell)?.value_at_zero())
}

/// Eta, kernel dimension and reduced eta for one twist and spin structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub ell: i64,
    pub structure: SpinStructure,
    pub eta: Rational,
    #[serde(with = "crate::exact::big_string")]
    pub dim_ker: BigInt,
    pub eta_bar: Rational,
    pub eta_bar_mod_z: ResidueModZ,
    pub relative_mod_z: ResidueModZ,
}

fn eta_bar_of(
    params: &ZpParams,
    structure: &SpinStructure,
    ell: i64,
) -> Result<(Rational, BigInt, Rational)> {
    let eta = eta_invariant(params, structure.h, ell)?;
    let d = dim_ker(params, structure, ell)?;
    let eta_bar = (&eta + &Rational::from_integer(d.clone())) * Rational::new(1, 2);
    Ok((eta, d, eta_bar))
}

/// `η̄_{ℓ} = ½(η_{ℓ} + dim ker)` together with its residues modulo `Z`.
pub fn reduced_eta(
    params: &ZpParams,
    structure: &SpinStructure,
    ell: i64,
) -> Result<InvariantRecord> {
    let ell = params.p.reduce(ell) as i64;
    let (_, _, base) = eta_bar_of(params, structure, 0)?;
    record_with_base(params, structure, ell, &base)
}

fn record_with_base(
    params: &ZpParams,
    structure: &SpinStructure,
    ell: i64,
    base: &Rational,
) -> Result<InvariantRecord> {
    let (eta, dim_ker, eta_bar) = eta_bar_of(params, structure, ell)?;
    Ok(InvariantRecord {
        ell,
        structure: structure.clone(),
        eta_bar_mod_z: reduce_mod_z(&eta_bar),
        relative_mod_z: reduce_mod_z(&(&eta_bar - base)),
        eta,
        dim_ker,
        eta_bar,
    })
}

/// Records for every `ℓ ∈ 0..p` of one spin structure.
pub fn invariant_records(
    params: &ZpParams,
    structure: &SpinStructure,
) -> Result<Vec<InvariantRecord>> {
    let (_, _, base) = eta_bar_of(params, structure, 0)?;
    (0..params.p.as_i64())
        .map(|ell| record_with_base(params, structure, ell, &base))
        .collect()
}

/// `η̄_{0}` of the untwisted operator in closed form.
pub fn untwisted_closed_form(params: &ZpParams, structure: &SpinStructure) -> Result<Rational> {
    params.require_odd_dimension()?;
    let p = params.p;
    let pp = p.as_i64();
    if !params.is_exceptional() {
        if !structure.is_trivial_type() {
            return Ok(Rational::zero());
        }
        let ab = params.a + params.b;
        let inner = big_pow(2, ab * p.q()) + neg_one_pow(p.e8() * ab) * (pp - 1);
        let value = Rational::new(inner * big_pow(2, (params.betti() - 3) / 2), pp);
        return Ok(value);
    }
    check_h(structure.h)?;
    let class_term = if params.a % 2 == 1 && p.mod4() == 3 {
        let omega = if p.get() == 3 { 6 } else { 2 };
        let hp = class_number(p)?;
        let sign = neg_one_pow((params.a - 1) / 2);
        Some(Rational::new(
            big_pow(p.get(), (params.a - 1) / 2) * 2 * hp * sign,
            omega,
        ))
    } else {
        None
    };
    match structure.h {
        1 => {
            let inner =
                big_pow(2, (params.n() - 1) / 2) + neg_one_pow(params.a * p.e8()) * (pp - 1);
            let base = Rational::new(inner, 2 * pp);
            Ok(match class_term {
                Some(t) => base - t,
                None => base,
            })
        }
        _ => Ok(match class_term {
            Some(t) => Rational::from(1 - legendre(2, p)) * t,
            None => Rational::zero(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::validate;
    use crate::numtheory::is_prime;

    fn params(p: u64, a: u64, b: u64, c: u64) -> ZpParams {
        validate(p, a, b, c).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn with_h(pr: &ZpParams, h: u8) -> SpinStructure {
        let mut s = SpinStructure::trivial(pr);
        s.h = h;
        s
    }

    #[test]
    fn closed_form_examples() {
        let t = params(3, 1, 0, 1);
        let f = eta_series_closed_form(&t, 1, 0).unwrap();
        assert_eq!(f.base_p, 3);
        let weighted: Vec<(Rational, i64)> = f
            .terms
            .iter()
            .map(|(al, k)| {
                (
                    al.clone(),
                    k * i64::from(f.sign) * f.scale.to_i64().unwrap(),
                )
            })
            .collect();
        assert_eq!(weighted, vec![(q(1, 3), -2), (q(2, 3), 2)]);
        assert_eq!(f.value_at_zero(), q(-2, 3));
        assert!(eta_series_closed_form(&params(5, 1, 1, 2), 1, 3)
            .unwrap()
            .is_zero());
        assert!(eta_series_closed_form(&params(5, 2, 0, 1), 1, 0)
            .unwrap()
            .is_zero());
        for p in [3u64, 5, 7, 11] {
            for a in 1..4 {
                for h in [1u8, 2] {
                    for ell in 0..p as i64 {
                        let f = eta_series_closed_form(&params(p, a, 0, 1), h, ell).unwrap();
                        for (alpha, _) in &f.terms {
                            assert!(alpha > &Rational::zero() && alpha <= &Rational::one());
                            assert_eq!(BigInt::from(2 * p) % alpha.denom(), BigInt::zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hurwitz_examples() {
        let pi2 = PI * PI;
        assert!((hurwitz_zeta(2.0, &q(1, 1)).unwrap() - pi2 / 6.0).abs() < 1e-10);
        assert!((hurwitz_zeta(2.0, &q(1, 2)).unwrap() - pi2 / 2.0).abs() < 1e-10);
        assert!(matches!(
            hurwitz_zeta(1.0, &q(1, 2)),
            Err(Error::DomainError(_))
        ));
        assert!(hurwitz_zeta(0.5, &q(1, 2)).is_err());
    }

    /// Direct summation with an integral tail, as an independent oracle.
    fn hurwitz_oracle(s: f64, alpha: f64) -> f64 {
        let n = 200_000u32;
        let head: f64 = (0..n).rev().map(|k| (k as f64 + alpha).powf(-s)).sum();
        let x = n as f64 + alpha;
        head + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s)
    }

    #[test]
    fn hurwitz_matches_direct_summation() {
        let v = hurwitz_zeta(4.0, &q(1, 3)).unwrap();
        assert!((v - 81.363_969_423_969_04).abs() < 1e-9, "{v}");
        for s in [2.0, 2.5, 3.0, 4.0, 6.0, 10.0] {
            for (n, d) in [
                (1, 1),
                (1, 2),
                (1, 3),
                (2, 3),
                (1, 7),
                (5, 7),
                (13, 26),
                (1, 10),
            ] {
                let exact = hurwitz_oracle(s, n as f64 / d as f64);
                let got = hurwitz_zeta(s, &q(n, d)).unwrap();
                assert!(
                    (got - exact).abs() <= 1e-10 * exact.abs().max(1.0),
                    "{s} {n}/{d}: {got} vs {exact}"
                );
            }
        }
        // ζ(2, 1/2) = 3ζ(2), ζ(4, 1) = π⁴/90.
        assert!((hurwitz_zeta(4.0, &q(1, 1)).unwrap() - PI.powi(4) / 90.0).abs() < 1e-12);
    }

    #[test]
    fn eta_examples() {
        let t = params(3, 1, 0, 1);
        assert_eq!(eta_invariant(&t, 1, 0).unwrap(), q(-2, 3));
        assert_eq!(eta_invariant(&t, 1, 1).unwrap(), q(1, 3));
        assert_eq!(eta_invariant(&t, 1, 2).unwrap(), q(1, 3));
        assert_eq!(eta_invariant(&t, 2, 0).unwrap(), q(4, 3));
        let s = params(7, 1, 0, 1);
        assert_eq!(eta_invariant(&s, 1, 0).unwrap(), q(-2, 1));
        assert_eq!(eta_invariant(&s, 2, 0).unwrap(), Rational::zero());
        assert_eq!(eta_invariant(&params(5, 2, 0, 1), 1, 1).unwrap(), q(3, 1));
        assert_eq!(
            eta_invariant_via_series(&params(5, 1, 0, 1), 1, 1).unwrap(),
            q(1, 1)
        );
        assert_eq!(
            eta_invariant(&params(5, 1, 1, 2), 2, 3).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn dual_paths_agree() {
        for p in (3..=31).filter(|&p| is_prime(p)) {
            for a in 1..=5 {
                let pr = params(p, a, 0, 1);
                for h in [1u8, 2] {
                    let mut total = Rational::zero();
                    for ell in 0..p as i64 {
                        let closed = eta_invariant(&pr, h, ell).unwrap();
                        assert_eq!(
                            closed,
                            eta_invariant_via_series(&pr, h, ell).unwrap(),
                            "{pr} h={h} ell={ell}"
                        );
                        total += &closed;
                    }
                    // The p-fold cover is a torus, whose spectrum is symmetric.
                    assert!(total.is_zero(), "{pr} h={h}");
                }
            }
        }
    }

    #[test]
    fn series_matches_spectral_sum() {
        for p in [3u64, 7] {
            let pr = params(p, 1, 0, 1);
            for h in [1u8, 2] {
                for ell in 0..p as i64 {
                    let form = eta_series_closed_form(&pr, h, ell).unwrap();
                    let closed = eta_series_eval(&form, 4.0).unwrap();
                    let spectral = eta_spectral_partial(&pr, h, ell, 4.0, 10_000).unwrap();
                    let bound = 1e-6 + spectral_tail_bound(&pr, 4.0, 10_000);
                    assert!(
                        (closed - spectral).abs() < bound,
                        "{pr} h={h} ell={ell}: {closed} vs {spectral}"
                    );
                }
            }
        }
        let t = params(3, 1, 0, 1);
        let v = eta_series_eval(&eta_series_closed_form(&t, 1, 0).unwrap(), 4.0).unwrap();
        assert!((v + 1.206e-3).abs() < 1e-6, "{v}");
        assert_eq!(
            eta_spectral_partial(&params(5, 2, 0, 1), 1, 0, 3.0, 500).unwrap(),
            0.0
        );
        assert_eq!(
            eta_spectral_partial(&params(5, 1, 1, 2), 1, 1, 3.0, 500).unwrap(),
            0.0
        );
        assert_eq!(eta_series_eval(&EtaClosedForm::zero(5), 3.0).unwrap(), 0.0);
    }

    #[test]
    fn reduced_examples() {
        let t = params(3, 1, 0, 1);
        let r = reduced_eta(&t, &SpinStructure::trivial(&t), 0).unwrap();
        assert_eq!(r.eta_bar, q(-1, 3));
        assert_eq!(r.eta_bar_mod_z.value(), &q(2, 3));
        let f = params(5, 1, 0, 1);
        let r = reduced_eta(&f, &SpinStructure::trivial(&f), 1).unwrap();
        assert_eq!(r.eta_bar, q(1, 1));
        assert!(r.eta_bar_mod_z.is_zero());
        let n = params(5, 1, 1, 2);
        assert_eq!(
            reduced_eta(&n, &SpinStructure::trivial(&n), 0)
                .unwrap()
                .eta_bar,
            q(4, 1)
        );
    }

    #[test]
    fn untwisted_examples() {
        let n = params(5, 1, 1, 2);
        assert_eq!(
            untwisted_closed_form(&n, &SpinStructure::trivial(&n)).unwrap(),
            q(4, 1)
        );
        let s = params(7, 1, 0, 1);
        assert_eq!(
            untwisted_closed_form(&s, &with_h(&s, 1)).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            untwisted_closed_form(&s, &with_h(&s, 2)).unwrap(),
            Rational::zero()
        );
        let t = params(3, 1, 0, 1);
        assert_eq!(untwisted_closed_form(&t, &with_h(&t, 1)).unwrap(), q(-1, 3));
        assert_eq!(untwisted_closed_form(&t, &with_h(&t, 2)).unwrap(), q(2, 3));
    }

    #[test]
    fn untwisted_matches_reduced() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 0..5 {
                for b in 0..4 {
                    for c in 1..5 {
                        let Ok(pr) = validate(p, a, b, c) else {
                            continue;
                        };
                        if pr.is_even_dimensional() {
                            continue;
                        }
                        for st in crate::manifold::structure_classes(&pr).unwrap() {
                            let s = st.representative;
                            let closed = untwisted_closed_form(&pr, &s).unwrap();
                            assert_eq!(
                                closed,
                                reduced_eta(&pr, &s, 0).unwrap().eta_bar,
                                "{pr} {s}"
                            );
                        }
                    }
                }
            }
        }
    }
}
