//! Verification suites over parameter sweeps.
//!
//! Each suite checks closed forms against exact or numeric oracles and
//! returns a [`Report`]. Work is split per parameter tuple and run on the
//! current rayon pool; results are merged in sweep order, so reports are
//! identical for any thread count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charsums::*;
use crate::error::{Error, Result};
use crate::eta::*;
use crate::exact::{radical_to_float, Rational};
use crate::manifold::*;
use crate::numtheory::*;
use crate::spectrum::*;

/// Tolerance for closed forms against floating-point character sums.
pub const CHARSUM_TOLERANCE: f64 = 1e-8;
/// Tolerance for trigonometric products.
pub const TRIG_TOLERANCE: f64 = 1e-9;
/// Largest `a` in the exceptional-manifold suites.
pub const EXCEPTIONAL_A_MAX: u64 = 5;
/// Spectral terms and evaluation point of the `series` suite.
pub const SERIES_TERMS: u64 = 10_000;
pub const SERIES_S: f64 = 4.0;

/// All valid parameters with `p ≤ p_max` and `n ≤ n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub p_max: u64,
    pub n_max: u64,
    pub include_even_n: bool,
}

impl SweepSpec {
    pub fn new(p_max: u64, n_max: u64) -> Self {
        SweepSpec {
            p_max,
            n_max,
            include_even_n: false,
        }
    }

    pub fn primes(&self) -> Vec<OddPrime> {
        (3..=self.p_max)
            .filter_map(|p| OddPrime::new(p).ok())
            .collect()
    }

    /// Parameters ordered by `(p, a, b, c)`.
    pub fn params(&self) -> Vec<ZpParams> {
        let mut out = Vec::new();
        for p in self.primes() {
            let pp = p.get();
            for a in 0..=self.n_max / (pp - 1) {
                for b in 0..=(self.n_max - a * (pp - 1)) / pp {
                    let used = a * (pp - 1) + b * pp;
                    for c in 1..=self.n_max.saturating_sub(used) {
                        if let Ok(params) = validate(pp, a, b, c) {
                            if self.include_even_n || !params.is_even_dimensional() {
                                out.push(params);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// The available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Integrality,
    Parity,
    Appendix,
    Oracles,
    Untwisted,
    Classnumber,
    Classrelation,
    Dualpath,
    Series,
    Dimker,
    Holonomy,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Integrality,
        Suite::Parity,
        Suite::Appendix,
        Suite::Oracles,
        Suite::Untwisted,
        Suite::Classnumber,
        Suite::Classrelation,
        Suite::Dualpath,
        Suite::Series,
        Suite::Dimker,
        Suite::Holonomy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Integrality => "integrality",
            Suite::Parity => "parity",
            Suite::Appendix => "appendix",
            Suite::Oracles => "oracles",
            Suite::Untwisted => "untwisted",
            Suite::Classnumber => "classnumber",
            Suite::Classrelation => "classrelation",
            Suite::Dualpath => "dualpath",
            Suite::Series => "series",
            Suite::Dimker => "dimker",
            Suite::Holonomy => "holonomy",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// One failed check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub params: Option<String>,
    pub structure: Option<String>,
    pub ell: Option<i64>,
    pub expected: String,
    pub got: String,
    pub check: String,
}

/// Outcome of a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cases: u64,
    pub passed: u64,
    pub failures: Vec<Failure>,
    pub expected_exceptions: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.cases == self.passed
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failures: Vec<Failure>,
    exceptions: Vec<String>,
}

/// Context attached to each check.
#[derive(Clone, Default)]
struct Ctx {
    params: Option<String>,
    structure: Option<String>,
    ell: Option<i64>,
}

impl Ctx {
    fn params(p: &ZpParams) -> Self {
        Ctx {
            params: Some(p.to_string()),
            ..Ctx::default()
        }
    }

    fn raw(label: String) -> Self {
        Ctx {
            params: Some(label),
            ..Ctx::default()
        }
    }

    fn with(&self, structure: Option<&SpinStructure>, ell: Option<i64>) -> Self {
        Ctx {
            params: self.params.clone(),
            structure: structure
                .map(|s| s.to_string())
                .or_else(|| self.structure.clone()),
            ell: ell.or(self.ell),
        }
    }
}

impl Tally {
    fn check(
        &mut self,
        ctx: &Ctx,
        ok: bool,
        check: &str,
        expected: impl fmt::Display,
        got: impl fmt::Display,
    ) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure {
                params: ctx.params.clone(),
                structure: ctx.structure.clone(),
                ell: ctx.ell,
                expected: expected.to_string(),
                got: got.to_string(),
                check: check.to_string(),
            });
        }
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, ctx: &Ctx, check: &str, expected: T, got: T) {
        let ok = expected == got;
        self.check(ctx, ok, check, expected, got);
    }

    fn close(&mut self, ctx: &Ctx, check: &str, expected: f64, got: f64, tol: f64) {
        let ok = (expected - got).abs() < tol;
        self.check(ctx, ok, check, expected, got);
    }

    fn result<T>(&mut self, ctx: &Ctx, check: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(ctx, false, check, "no error", e);
                None
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self.exceptions.extend(other.exceptions);
        self
    }

    fn into_report(self, suite: Suite) -> Report {
        Report {
            suite: suite.name().to_string(),
            cases: self.cases,
            passed: self.cases - self.failures.len() as u64,
            failures: self.failures,
            expected_exceptions: self.exceptions,
        }
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    let parts: Vec<Tally> = items.par_iter().map(f).collect();
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

/// Runs one suite on the current rayon pool.
pub fn run_suite(suite: Suite, sweep: &SweepSpec) -> Report {
    let tally = match suite {
        Suite::Integrality => integrality(sweep),
        Suite::Parity => parity(sweep),
        Suite::Appendix => appendix(sweep.p_max),
        Suite::Oracles => oracles(sweep),
        Suite::Untwisted => untwisted(sweep),
        Suite::Classnumber => classnumber(sweep.p_max),
        Suite::Classrelation => classrelation(),
        Suite::Dualpath => dualpath(sweep.p_max),
        Suite::Series => series(),
        Suite::Dimker => dimker(sweep),
        Suite::Holonomy => holonomy(sweep),
    };
    tally.into_report(suite)
}

fn odd_params(sweep: &SweepSpec) -> Vec<ZpParams> {
    sweep
        .params()
        .into_iter()
        .filter(|p| !p.is_even_dimensional())
        .collect()
}

fn integrality(sweep: &SweepSpec) -> Tally {
    let tricosm_residue = Rational::new(2, 3);
    par_tally(&odd_params(sweep), |params| {
        let mut t = Tally::default();
        let ctx = Ctx::params(params);
        let Some(classes) = t.result(&ctx, "structures", structure_classes(params)) else {
            return t;
        };
        if params.is_tricosm() {
            t.exceptions.push(params.to_string());
        }
        for class in classes {
            let s = &class.representative;
            let Some(records) = t.result(
                &ctx.with(Some(s), None),
                "records",
                invariant_records(params, s),
            ) else {
                continue;
            };
            for rec in records {
                let c = ctx.with(Some(s), Some(rec.ell));
                let expected = if params.is_tricosm() {
                    tricosm_residue.clone()
                } else {
                    Rational::zero()
                };
                t.eq(
                    &c,
                    "eta_bar_mod_z",
                    expected,
                    rec.eta_bar_mod_z.value().clone(),
                );
                t.eq(
                    &c,
                    "relative_mod_z",
                    Rational::zero(),
                    rec.relative_mod_z.value().clone(),
                );
            }
        }
        t
    })
}

fn parity(sweep: &SweepSpec) -> Tally {
    let items: Vec<ZpParams> = odd_params(sweep)
        .into_iter()
        .filter(|p| p.is_exceptional() && !p.is_tricosm())
        .collect();
    par_tally(&items, |params| {
        let mut t = Tally::default();
        let ctx = Ctx::params(params);
        for h in [1u8, 2] {
            for ell in 0..params.p.as_i64() {
                let c = ctx.with(None, Some(ell));
                let Some(eta) = t.result(&c, "eta", eta_invariant(params, h, ell)) else {
                    continue;
                };
                let want_odd = ell != 0 && h == 1;
                let parity_ok = eta.to_integer().is_some_and(|v| v.is_odd() == want_odd);
                let label = if want_odd {
                    "odd integer"
                } else {
                    "even integer"
                };
                t.check(&c, parity_ok, &format!("eta_{ell},{h} parity"), label, &eta);
            }
        }
        t
    })
}

fn legendre_prefix(upper: i64, p: OddPrime) -> i64 {
    (1..=upper).map(|j| legendre(j, p)).sum()
}

fn appendix(p_max: u64) -> Tally {
    let primes = SweepSpec::new(p_max, 0).primes();
    par_tally(&primes, |&p| {
        let mut t = Tally::default();
        let pp = p.as_i64();
        let ctx = Ctx::raw(format!("p={p}"));
        for k in 1..=3 * pp {
            let c = Ctx {
                ell: Some(k),
                ..ctx.clone()
            };
            for kind in [TrigKind::Sin, TrigKind::Cos] {
                let exact = radical_to_float(&trig_prod(kind, k, p)).re;
                t.close(
                    &c,
                    &format!("trig_prod {kind:?} k={k}"),
                    exact,
                    trig_prod_direct(kind, k, p),
                    TRIG_TOLERANCE,
                );
            }
        }
        for l in 0..pp {
            let c = ctx.with(None, Some(l));
            let g = radical_to_float(&gauss_g(l, p));
            t.close(
                &c,
                "gauss_g",
                0.0,
                (g - gauss_direct(1, CharacterChoice::ChiP, l, p)).norm(),
                CHARSUM_TOLERANCE,
            );
            for h in [1u8, 2] {
                let g0 = num_complex::Complex64::new(g_h_chi0(h, l, p) as f64, 0.0);
                let d0 = gauss_direct(h, CharacterChoice::Chi0, l, p);
                t.close(
                    &c,
                    &format!("G_{h} chi0"),
                    0.0,
                    (g0 - d0).norm(),
                    CHARSUM_TOLERANCE,
                );
                let gp = radical_to_float(&g_h_chip(h, l, p));
                let dp = gauss_direct(h, CharacterChoice::ChiP, l, p);
                t.close(
                    &c,
                    &format!("G_{h} chip"),
                    0.0,
                    (gp - dp).norm(),
                    CHARSUM_TOLERANCE,
                );
                for cc in 1..=2 * pp {
                    let f0 = radical_to_float(&f_h_chi0(h, l, cc, p));
                    let d0 = f_direct(h, CharacterChoice::Chi0, l, cc, p);
                    t.close(
                        &c,
                        &format!("F_{h} chi0 c={cc}"),
                        0.0,
                        (f0 - d0).norm(),
                        CHARSUM_TOLERANCE,
                    );
                    let fp = radical_to_float(&f_h_chip(h, l, cc, p));
                    let dp = f_direct(h, CharacterChoice::ChiP, l, cc, p);
                    t.close(
                        &c,
                        &format!("F_{h} chip c={cc}"),
                        0.0,
                        (fp - dp).norm(),
                        CHARSUM_TOLERANCE,
                    );
                }
            }
            legendre_identities(&mut t, &c, l, p);
        }
        t
    })
}

fn legendre_identities(t: &mut Tally, c: &Ctx, l: i64, p: OddPrime) {
    let pp = p.as_i64();
    let moment = legendre_moment(p);
    let minus_one = legendre(-1, p);
    let two = legendre(2, p);
    for k in 1..=pp {
        for sign in [Sign::Plus, Sign::Minus] {
            t.eq(
                c,
                &format!("shift sum k={k} {sign:?}"),
                -legendre(k * l, p),
                sum_legendre_shift(l, k, sign, p),
            );
        }
    }
    for sign in [Sign::Plus, Sign::Minus] {
        t.eq(
            c,
            &format!("odd shift sum {sign:?}"),
            0,
            sum_legendre_odd_shift(l, sign, p),
        );
    }
    let fl = (2 * l).div_euclid(pp);
    let rhs = [
        (1, Sign::Plus, pp * legendre_prefix(l - 1, p) + moment),
        (
            1,
            Sign::Minus,
            minus_one * (pp * legendre_prefix(pp - l - 1, p) + moment),
        ),
        (
            2,
            Sign::Plus,
            pp * legendre_prefix(2 * l - fl * pp - 1, p) + moment,
        ),
        (
            2,
            Sign::Minus,
            minus_one * (pp * legendre_prefix(pp + fl * pp - 2 * l - 1, p) + moment),
        ),
    ];
    for (factor, sign, expected) in rhs {
        t.eq(
            c,
            &format!("weighted sum {factor} {sign:?}"),
            expected,
            weighted_legendre_sum(l, factor, sign, p),
        );
    }
    for sign in [Sign::Plus, Sign::Minus] {
        let expected =
            weighted_legendre_sum(l, 2, sign, p) - two * weighted_legendre_sum(l, 1, sign, p);
        t.eq(
            c,
            &format!("odd weighted sum {sign:?}"),
            expected,
            odd_weighted_legendre_sum(l, sign, p),
        );
    }
    let (s1, s2) = if p.mod4() == 1 {
        let s1m = s_h_pm(1, Sign::Minus, l, p);
        (pp * s1m, pp * (s_h_pm(2, Sign::Minus, l, p) - two * s1m))
    } else {
        let s1p = s_h_pm(1, Sign::Plus, l, p);
        (
            -pp * s1p - 2 * moment,
            -pp * (s_h_pm(2, Sign::Plus, l, p) - two * s1p) + 2 * (two - 1) * moment,
        )
    };
    t.eq(c, "S_1", s1, s_direct(1, l, p));
    t.eq(c, "S_2", s2, s_direct(2, l, p));
}

fn exceptional_params(p_max: u64) -> Vec<ZpParams> {
    SweepSpec::new(p_max, 0)
        .primes()
        .into_iter()
        .flat_map(|p| (1..=EXCEPTIONAL_A_MAX).map(move |a| validate(p.get(), a, 0, 1).unwrap()))
        .collect()
}

fn oracles(sweep: &SweepSpec) -> Tally {
    let spectral = par_tally(&exceptional_params(sweep.p_max), |params| {
        let mut t = Tally::default();
        let ctx = Ctx::params(params);
        let p = params.p.get();
        for h in [1u8, 2] {
            for ell in 0..p as i64 {
                let c = ctx.with(None, Some(ell));
                for n in 1..=3 * p {
                    let idx = SpectralIndex::nth(ell, h, n).unwrap();
                    let exact = mult_diff(params, idx).value.to_f64().unwrap_or(f64::NAN);
                    let check = format!("mult_diff h={h} 2mu={}", idx.twice_mu);
                    if let Some(oracle) = t.result(&c, &check, mult_diff_oracle(params, idx)) {
                        t.close(&c, &check, oracle, exact, ORACLE_TOLERANCE);
                    }
                }
            }
        }
        t
    });
    spectral.merge(dimker_oracle(sweep))
}

fn dimker_oracle(sweep: &SweepSpec) -> Tally {
    par_tally(&odd_params(sweep), |params| {
        let mut t = Tally::default();
        let ctx = Ctx::params(params);
        let triv = SpinStructure::trivial(params);
        for ell in 0..params.p.as_i64() {
            let c = ctx.with(Some(&triv), Some(ell));
            let Some(d) = t.result(&c, "dim_ker", dim_ker(params, &triv, ell)) else {
                continue;
            };
            if let Some(oracle) = t.result(&c, "dim_ker oracle", dim_ker_oracle(params, ell)) {
                t.close(
                    &c,
                    "dim_ker oracle",
                    oracle,
                    d.to_f64().unwrap_or(f64::NAN),
                    ORACLE_TOLERANCE,
                );
            }
        }
        t
    })
}

fn untwisted(sweep: &SweepSpec) -> Tally {
    par_tally(&odd_params(sweep), |params| {
        let mut t = Tally::default();
        let ctx = Ctx::params(params);
        let Some(classes) = t.result(&ctx, "structures", structure_classes(params)) else {
            return t;
        };
        for class in classes {
            let s = &class.representative;
            let c = ctx.with(Some(s), Some(0));
            let closed = t.result(
                &c,
                "untwisted closed form",
                untwisted_closed_form(params, s),
            );
            let reduced = t.result(&c, "reduced eta", reduced_eta(params, s, 0));
            if let (Some(closed), Some(rec)) = (closed, reduced) {
                t.eq(&c, "untwisted", closed, rec.eta_bar);
            }
        }
        t
    })
}

/// Number of reduced primitive forms `ax² + bxy + cy²` of discriminant `disc < 0`.
pub fn reduced_form_count(disc: i64) -> u64 {
    let mut count = 0;
    let mut a = 1;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

fn classnumber(p_max: u64) -> Tally {
    let primes: Vec<OddPrime> = SweepSpec::new(p_max, 0)
        .primes()
        .into_iter()
        .filter(|p| p.mod4() == 3)
        .collect();
    par_tally(&primes, |&p| {
        let mut t = Tally::default();
        let ctx = Ctx::raw(format!("p={p}"));
        if let Some(h) = t.result(&ctx, "class_number", class_number(p)) {
            t.eq(&ctx, "class_number", reduced_form_count(-p.as_i64()), h);
        }
        t
    })
}

/// Primes and `a` values of the class-number relation suite.
pub const CLASS_RELATION_PRIMES: [u64; 4] = [7, 11, 19, 23];
pub const CLASS_RELATION_A: [u64; 2] = [1, 3];

fn classrelation() -> Tally {
    let mut t = Tally::default();
    for &p in &CLASS_RELATION_PRIMES {
        for &a in &CLASS_RELATION_A {
            let params = validate(p, a, 0, 1).unwrap();
            let ctx = Ctx::params(&params).with(None, Some(0));
            // The sign (−1)^{(a−1)/2} comes from (−1)^{t+r} with r = ⌊n/4⌋.
            let scale: BigInt =
                BigInt::from(p).pow((a as u32 - 1) / 2) * if a % 4 == 1 { 1 } else { -1 };
            let Some(hp) = t.result(&ctx, "class_number", class_number(params.p)) else {
                continue;
            };
            let eta1 = Rational::from_integer(-(&scale * 2u32 * hp));
            let eta2 = if p % 8 == 7 {
                Rational::zero()
            } else {
                Rational::from_integer(&scale * 4u32 * hp)
            };
            if let Some(got) = t.result(&ctx, "eta_0,1", eta_invariant(&params, 1, 0)) {
                t.eq(&ctx, "eta_0,1", eta1, got);
            }
            if let Some(got) = t.result(&ctx, "eta_0,2", eta_invariant(&params, 2, 0)) {
                t.eq(&ctx, "eta_0,2", eta2, got);
            }
        }
    }
    t
}

fn dualpath(p_max: u64) -> Tally {
    par_tally(&exceptional_params(p_max), |params| {
        let mut t = Tally::default();
        let ctx = Ctx::params(params);
        for h in [1u8, 2] {
            for ell in 0..params.p.as_i64() {
                let c = ctx.with(None, Some(ell));
                let closed = t.result(&c, "eta closed form", eta_invariant(params, h, ell));
                let series = t.result(
                    &c,
                    "eta via series",
                    eta_invariant_via_series(params, h, ell),
                );
                if let (Some(x), Some(y)) = (closed, series) {
                    t.eq(&c, &format!("eta_{ell},{h} dual path"), y, x);
                }
            }
        }
        t
    })
}

/// Parameters of the `series` suite.
pub const SERIES_PARAMS: [(u64, u64); 2] = [(3, 1), (7, 1)];

fn series() -> Tally {
    let items: Vec<ZpParams> = SERIES_PARAMS
        .iter()
        .map(|&(p, a)| validate(p, a, 0, 1).unwrap())
        .collect();
    par_tally(&items, |params| {
        let mut t = Tally::default();
        let ctx = Ctx::params(params);
        let bound = 1e-6 + spectral_tail_bound(params, SERIES_S, SERIES_TERMS);
        for h in [1u8, 2] {
            for ell in 0..params.p.as_i64() {
                let c = ctx.with(None, Some(ell));
                let closed = eta_series_closed_form(params, h, ell)
                    .and_then(|f| eta_series_eval(&f, SERIES_S));
                let spectral = eta_spectral_partial(params, h, ell, SERIES_S, SERIES_TERMS);
                let check = format!("series h={h}");
                if let (Some(x), Some(y)) =
                    (t.result(&c, &check, closed), t.result(&c, &check, spectral))
                {
                    t.close(&c, &check, x, y, bound);
                }
            }
        }
        t
    })
}

fn dimker(sweep: &SweepSpec) -> Tally {
    let shape = par_tally(&odd_params(sweep), |params| {
        let mut t = Tally::default();
        let ctx = Ctx::params(params);
        let Some(classes) = t.result(&ctx, "structures", structure_classes(params)) else {
            return t;
        };
        for class in classes {
            let s = &class.representative;
            for ell in 0..params.p.as_i64() {
                let c = ctx.with(Some(s), Some(ell));
                let Some(d) = t.result(&c, "dim_ker", dim_ker(params, s, ell)) else {
                    continue;
                };
                if !s.is_trivial_type() {
                    t.eq(&c, "dim_ker nontrivial", BigInt::zero(), d);
                    continue;
                }
                t.check(&c, !d.is_negative(), "dim_ker nonnegative", ">= 0", &d);
                let want_odd = params.betti() == 1 && ell != 0;
                let label = if want_odd { "odd" } else { "even" };
                t.check(&c, d.is_odd() == want_odd, "dim_ker parity", label, &d);
            }
        }
        t
    });
    shape.merge(dimker_oracle(sweep))
}

fn holonomy(sweep: &SweepSpec) -> Tally {
    par_tally(&sweep.params(), |params| {
        let mut t = Tally::default();
        let ctx = Ctx::params(params);
        let Some(m) = t.result(&ctx, "build_holonomy", build_holonomy(params)) else {
            return t;
        };
        let report = holonomy_checks(&m, params);
        t.check(
            &ctx,
            report.power_is_identity,
            "M^p = I",
            true,
            report.power_is_identity,
        );
        t.check(&ctx, report.order_is_p, "order p", true, report.order_is_p);
        t.check(&ctx, report.det_is_one, "det", 1, &report.det);
        t.check(
            &ctx,
            report.fixed_dim_ok,
            "fixed dimension",
            params.betti(),
            report.fixed_dim,
        );
        t.check(
            &ctx,
            report.char_poly_ok,
            "char poly",
            "expected product",
            report.char_poly.join(","),
        );
        t
    })
}
