//! Parameters `(p, a, b, c)` of flat manifolds with holonomy `Z_p`, their
//! homology, spin structures and integral holonomy representations.

mod linalg;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use linalg::{poly_mul, IntegerMatrix};

use crate::error::{Error, Result};
use crate::numtheory::{OddPrime, Sign};

/// The label of the principal ideal class.
pub const PRINCIPAL: &str = "principal";

/// Largest `b + c` for which spin structures are listed one by one.
pub const MAX_ENUMERATED_BETTI: u64 = 24;

/// Validated parameters of a `Z_p`-manifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZpParams {
    pub p: OddPrime,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub ideal_label: String,
}

impl ZpParams {
    /// `n = a(p − 1) + bp + c`.
    pub fn n(&self) -> u64 {
        self.a * (self.p.get() - 1) + self.b * self.p.get() + self.c
    }

    /// First Betti number `b + c`.
    pub fn betti(&self) -> u64 {
        self.b + self.c
    }

    /// `(b, c) = (0, 1)`.
    pub fn is_exceptional(&self) -> bool {
        self.b == 0 && self.c == 1
    }

    pub fn is_even_dimensional(&self) -> bool {
        self.betti() % 2 == 0
    }

    /// The tricosm `(3, 1, 0, 1)`.
    pub fn is_tricosm(&self) -> bool {
        self.p.get() == 3 && self.a == 1 && self.is_exceptional()
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64) {
        (self.p.get(), self.a, self.b, self.c)
    }

    /// Errors with [`Error::EvenDimension`] when `n` is even.
    pub fn require_odd_dimension(&self) -> Result<()> {
        if self.is_even_dimensional() {
            Err(Error::EvenDimension(self.betti()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for ZpParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.a, self.b, self.c)
    }
}

/// Validates raw parameters with the principal ideal label.
pub fn validate(p: u64, a: u64, b: u64, c: u64) -> Result<ZpParams> {
    validate_with_ideal(p, a, b, c, PRINCIPAL)
}

pub fn validate_with_ideal(p: u64, a: u64, b: u64, c: u64, ideal: &str) -> Result<ZpParams> {
    let p = OddPrime::new(p)?;
    if a + b == 0 {
        return Err(Error::ZeroHolonomyBlock);
    }
    if c == 0 {
        return Err(Error::TorsionViolation);
    }
    Ok(ZpParams {
        p,
        a,
        b,
        c,
        ideal_label: ideal.to_string(),
    })
}

/// First homology `Z_p^a ⊕ Z^{b+c}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub torsion_exponent: u64,
    pub free_rank: u64,
}

pub fn homology_h1(params: &ZpParams) -> Homology {
    Homology {
        torsion_exponent: params.a,
        free_rank: params.betti(),
    }
}

/// A spin structure, labelled by signs `δ_1 … δ_{b+c−1}` and `h ∈ {1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpinStructure {
    pub deltas: Vec<Sign>,
    pub h: u8,
}

impl SpinStructure {
    pub fn trivial(params: &ZpParams) -> Self {
        SpinStructure {
            deltas: vec![Sign::Plus; (params.betti() - 1) as usize],
            h: 1,
        }
    }

    pub fn is_trivial_type(&self) -> bool {
        self.h == 1 && self.deltas.iter().all(|&d| d == Sign::Plus)
    }

    /// The deltas as a string of `+` and `-`.
    pub fn delta_string(&self) -> String {
        self.deltas
            .iter()
            .map(|d| if *d == Sign::Plus { '+' } else { '-' })
            .collect()
    }
}

impl fmt::Display for SpinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]h{}", self.delta_string(), self.h)
    }
}

/// All `2^{b+c}` spin structures: deltas in lexicographic order with `+`
/// first, and for each delta vector `h = 1` then `h = 2`.
pub fn enumerate_spin_structures(params: &ZpParams) -> Result<Vec<SpinStructure>> {
    params.require_odd_dimension()?;
    let len = params.betti() - 1;
    if params.betti() > MAX_ENUMERATED_BETTI {
        return Err(Error::TooManyStructures(params.betti()));
    }
    let mut out = Vec::with_capacity(1 << params.betti());
    for mask in 0u64..(1 << len) {
        let deltas: Vec<Sign> = (0..len)
            .map(|i| {
                if mask >> (len - 1 - i) & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        for h in [1, 2] {
            out.push(SpinStructure {
                deltas: deltas.clone(),
                h,
            });
        }
    }
    Ok(out)
}

/// A representative spin structure standing for `count` structures whose
/// invariants coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureClass {
    pub representative: SpinStructure,
    #[serde(with = "crate::exact::big_string")]
    pub count: BigInt,
}

/// Spin structures grouped by invariants: the trivial-type structure, the
/// structure with all `δ = +` and `h = 2`, and (when `b + c > 1`) everything
/// else.
pub fn structure_classes(params: &ZpParams) -> Result<Vec<StructureClass>> {
    params.require_odd_dimension()?;
    let trivial = SpinStructure::trivial(params);
    let mut flipped = trivial.clone();
    flipped.h = 2;
    let mut out = vec![
        StructureClass {
            representative: trivial.clone(),
            count: BigInt::one(),
        },
        StructureClass {
            representative: flipped,
            count: BigInt::one(),
        },
    ];
    if params.betti() > 1 {
        let mut rest = trivial;
        rest.deltas[0] = Sign::Minus;
        let total: BigInt = BigInt::one() << params.betti();
        out.push(StructureClass {
            representative: rest,
            count: total - 2u32,
        });
    }
    Ok(out)
}

/// A diagonal block of the holonomy matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HolonomyBlock {
    /// The `(p−1)×(p−1)` companion matrix of the cyclotomic polynomial.
    Companion(u64),
    /// The `p×p` cyclic permutation matrix.
    Permutation(u64),
    /// A `1×1` identity block.
    Trivial,
}

impl HolonomyBlock {
    pub fn size(self) -> usize {
        match self {
            HolonomyBlock::Companion(p) => p as usize - 1,
            HolonomyBlock::Permutation(p) => p as usize,
            HolonomyBlock::Trivial => 1,
        }
    }
}

impl fmt::Display for HolonomyBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HolonomyBlock::Companion(p) => write!(f, "C_{p}"),
            HolonomyBlock::Permutation(p) => write!(f, "J_{p}"),
            HolonomyBlock::Trivial => write!(f, "1"),
        }
    }
}

impl Serialize for HolonomyBlock {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn holonomy_blocks(params: &ZpParams) -> Vec<HolonomyBlock> {
    let p = params.p.get();
    let mut out = Vec::new();
    out.extend((0..params.a).map(|_| HolonomyBlock::Companion(p)));
    out.extend((0..params.b).map(|_| HolonomyBlock::Permutation(p)));
    out.extend((0..params.c).map(|_| HolonomyBlock::Trivial));
    out
}

/// `C = diag(C_p, …, C_p, J_p, …, J_p, 1, …, 1)`.
pub fn build_holonomy(params: &ZpParams) -> Result<IntegerMatrix> {
    if params.ideal_label != PRINCIPAL {
        return Err(Error::UnsupportedIdeal(params.ideal_label.clone()));
    }
    let n = params.n() as usize;
    let mut m = IntegerMatrix::zeros(n);
    let mut offset = 0;
    for block in holonomy_blocks(params) {
        let size = block.size();
        match block {
            HolonomyBlock::Companion(_) => {
                for i in 1..size {
                    m.set(offset + i, offset + i - 1, BigInt::one());
                }
                for i in 0..size {
                    m.set(offset + i, offset + size - 1, BigInt::from(-1));
                }
            }
            HolonomyBlock::Permutation(_) => {
                for i in 1..size {
                    m.set(offset + i, offset + i - 1, BigInt::one());
                }
                m.set(offset, offset + size - 1, BigInt::one());
            }
            HolonomyBlock::Trivial => m.set(offset, offset, BigInt::one()),
        }
        offset += size;
    }
    Ok(m)
}

/// `Φ_p(x)^a (x^p − 1)^b (x − 1)^c`, constant term first.
pub fn expected_char_poly(params: &ZpParams) -> Vec<BigInt> {
    let p = params.p.get() as usize;
    let cyclotomic = vec![BigInt::one(); p];
    let mut x_p_minus_1 = vec![BigInt::zero(); p + 1];
    x_p_minus_1[0] = BigInt::from(-1);
    x_p_minus_1[p] = BigInt::one();
    let x_minus_1 = vec![BigInt::from(-1), BigInt::one()];
    let mut out = vec![BigInt::one()];
    for _ in 0..params.a {
        out = poly_mul(&out, &cyclotomic);
    }
    for _ in 0..params.b {
        out = poly_mul(&out, &x_p_minus_1);
    }
    for _ in 0..params.c {
        out = poly_mul(&out, &x_minus_1);
    }
    out
}

/// Results of the structural checks on a holonomy matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HolonomyReport {
    pub power_is_identity: bool,
    pub order_is_p: bool,
    pub det: String,
    pub det_is_one: bool,
    pub fixed_dim: usize,
    pub fixed_dim_ok: bool,
    pub char_poly: Vec<String>,
    pub char_poly_ok: bool,
}

impl HolonomyReport {
    pub fn all_passed(&self) -> bool {
        self.power_is_identity
            && self.order_is_p
            && self.det_is_one
            && self.fixed_dim_ok
            && self.char_poly_ok
    }

    /// Names of the checks that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.power_is_identity, "power_is_identity"),
            (self.order_is_p, "order_is_p"),
            (self.det_is_one, "det_is_one"),
            (self.fixed_dim_ok, "fixed_dim"),
            (self.char_poly_ok, "char_poly"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

pub fn holonomy_checks(m: &IntegerMatrix, params: &ZpParams) -> HolonomyReport {
    let p = params.p.get() as usize;
    let powers = m.powers(p);
    let power_is_identity = powers[p - 1].is_identity();
    let order_is_p = powers[..p - 1].iter().all(|pk| !pk.is_identity());
    let det = m.det();
    let fixed_dim = m.dim() - m.sub_scalar(1).rank();
    let char_poly = m.char_poly();
    let char_poly_ok = char_poly == expected_char_poly(params);
    HolonomyReport {
        power_is_identity,
        order_is_p,
        det_is_one: det.is_one(),
        det: det.to_string(),
        fixed_dim,
        fixed_dim_ok: fixed_dim as u64 == params.betti(),
        char_poly: char_poly.iter().map(|c| c.to_string()).collect(),
        char_poly_ok,
    }
}
