//! Dense integer matrices: products, fraction-free elimination and
//! characteristic polynomials via modular Hessenberg reduction and CRT.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numtheory::{is_prime, pow_mod};

/// A square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(n: usize) -> Self {
        IntegerMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics unless every row has length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntegerMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Rows as machine integers, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| *self.get(i, j) == BigInt::from(i64::from(i == j))))
    }

    /// `self − k·I`.
    pub fn sub_scalar(&self, k: i64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = m.get(i, i) - k;
            m.set(i, i, v);
        }
        m
    }

    fn to_i128(&self) -> Option<Vec<i128>> {
        self.entries.iter().map(|x| x.to_i128()).collect()
    }

    /// Largest absolute row sum; bounds every eigenvalue.
    pub fn max_row_norm(&self) -> BigInt {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum::<BigInt>())
            .max()
            .unwrap_or_default()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `[M, M², …, M^k]`.
    pub fn powers(&self, k: usize) -> Vec<IntegerMatrix> {
        if let Some(small) = self.powers_i128(k) {
            return small;
        }
        let mut out = Vec::with_capacity(k);
        let mut cur = self.clone();
        for _ in 0..k {
            out.push(cur.clone());
            cur = cur.mul(self);
        }
        out
    }

    fn powers_i128(&self, k: usize) -> Option<Vec<IntegerMatrix>> {
        let n = self.n;
        let m = self.to_i128()?;
        let nonzeros: Vec<(usize, usize, i128)> = (0..n * n)
            .filter(|&idx| m[idx] != 0)
            .map(|idx| (idx / n, idx % n, m[idx]))
            .collect();
        let mut out = Vec::with_capacity(k);
        let mut cur = m.clone();
        for step in 0..k {
            out.push(IntegerMatrix {
                n,
                entries: cur.iter().map(|&x| BigInt::from(x)).collect(),
            });
            if step + 1 == k {
                break;
            }
            let mut next = vec![0i128; n * n];
            for i in 0..n {
                for &(r, c, v) in &nonzeros {
                    let a = cur[i * n + r];
                    if a != 0 {
                        let slot = &mut next[i * n + c];
                        *slot = slot.checked_add(a.checked_mul(v)?)?;
                    }
                }
            }
            cur = next;
        }
        Some(out)
    }

    pub fn det(&self) -> BigInt {
        match self.to_i128().and_then(|m| bareiss_i128(m, self.n)) {
            Some((_, det)) => BigInt::from(det),
            None => bareiss_big(self.entries.clone(), self.n).1,
        }
    }

    pub fn rank(&self) -> usize {
        match self.to_i128().and_then(|m| bareiss_i128(m, self.n)) {
            Some((rank, _)) => rank,
            None => bareiss_big(self.entries.clone(), self.n).0,
        }
    }

    /// Coefficients of `det(xI − M)`, constant term first.
    pub fn char_poly(&self) -> Vec<BigInt> {
        let n = self.n;
        let bound = num_traits::pow(BigInt::one() + self.max_row_norm(), n);
        let need = bound * 2u32 + 1u32;
        let mut modulus = BigInt::one();
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
        for &prime in crt_primes() {
            if modulus > need {
                break;
            }
            let residues = self.char_poly_mod(prime);
            let pm = BigInt::from(prime);
            // Garner step: acc ≡ acc (mod modulus), acc ≡ r (mod prime).
            let inv = BigInt::from(pow_mod(
                (&modulus % &pm).to_u64().unwrap(),
                prime - 2,
                prime,
            ));
            for (a, r) in acc.iter_mut().zip(residues) {
                let diff = (BigInt::from(r) - &*a).mod_floor(&pm);
                let t = (diff * &inv).mod_floor(&pm);
                *a += &modulus * t;
            }
            modulus *= pm;
        }
        assert!(modulus > need, "not enough CRT primes");
        let half = &modulus >> 1;
        acc.into_iter()
            .map(|a| if a > half { a - &modulus } else { a })
            .collect()
    }

    fn char_poly_mod(&self, prime: u64) -> Vec<u64> {
        let n = self.n;
        let big_p = BigInt::from(prime);
        let mut h: Vec<u64> = self
            .entries
            .iter()
            .map(|x| x.mod_floor(&big_p).to_u64().unwrap())
            .collect();
        hessenberg_mod(&mut h, n, prime);
        hessenberg_char_poly(&h, n, prime)
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

/// In-place similarity reduction to upper Hessenberg form over `Z/p`.
fn hessenberg_mod(a: &mut [u64], n: usize, p: u64) {
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| a[i * n + m - 1] != 0) else {
            continue;
        };
        if piv != m {
            for j in 0..n {
                a.swap(piv * n + j, m * n + j);
            }
            for i in 0..n {
                a.swap(i * n + piv, i * n + m);
            }
        }
        let inv = pow_mod(a[m * n + m - 1], p - 2, p);
        for i in m + 1..n {
            if a[i * n + m - 1] == 0 {
                continue;
            }
            let u = mulm(a[i * n + m - 1], inv, p);
            for j in 0..n {
                let t = mulm(u, a[m * n + j], p);
                a[i * n + j] = subm(a[i * n + j], t, p);
            }
            for r in 0..n {
                let t = mulm(u, a[r * n + i], p);
                a[r * n + m] = addm(a[r * n + m], t, p);
            }
        }
    }
}

/// Characteristic polynomial of an upper Hessenberg matrix over `Z/p`.
fn hessenberg_char_poly(h: &[u64], n: usize, p: u64) -> Vec<u64> {
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut next = vec![0u64; k + 1];
        let diag = h[(k - 1) * n + k - 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = addm(next[d + 1], c, p);
            next[d] = subm(next[d], mulm(diag, c, p), p);
        }
        let mut t = 1u64;
        for i in (1..k).rev() {
            t = mulm(t, h[i * n + i - 1], p);
            if t == 0 {
                break;
            }
            let coef = mulm(h[(i - 1) * n + k - 1], t, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                next[d] = subm(next[d], mulm(coef, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn crt_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut cand = (1u64 << 62) - 1;
        while out.len() < 64 {
            if is_prime(cand) {
                out.push(cand);
            }
            cand -= 2;
        }
        out
    })
}

/// Fraction-free echelon form; returns `(rank, det)` or `None` on overflow.
fn bareiss_i128(mut a: Vec<i128>, n: usize) -> Option<(usize, i128)> {
    let mut prev: i128 = 1;
    let mut sign: i128 = 1;
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..n).find(|&i| a[i * n + col] != 0) else {
            continue;
        };
        if piv != row {
            for j in 0..n {
                a.swap(piv * n + j, row * n + j);
            }
            sign = -sign;
        }
        let pv = a[row * n + col];
        for i in row + 1..n {
            let lead = a[i * n + col];
            for j in col + 1..n {
                let v = pv
                    .checked_mul(a[i * n + j])?
                    .checked_sub(lead.checked_mul(a[row * n + j])?)?;
                a[i * n + j] = v / prev;
            }
            a[i * n + col] = 0;
        }
        prev = pv;
        row += 1;
    }
    let det = if row == n { sign * prev } else { 0 };
    Some((row, det))
}

fn bareiss_big(mut a: Vec<BigInt>, n: usize) -> (usize, BigInt) {
    let mut prev = BigInt::one();
    let mut negate = false;
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..n).find(|&i| !a[i * n + col].is_zero()) else {
            continue;
        };
        if piv != row {
            for j in 0..n {
                a.swap(piv * n + j, row * n + j);
            }
            negate = !negate;
        }
        let pv = a[row * n + col].clone();
        for i in row + 1..n {
            let lead = a[i * n + col].clone();
            for j in col + 1..n {
                let v = &pv * &a[i * n + j] - &lead * &a[row * n + j];
                a[i * n + j] = v / &prev;
            }
            a[i * n + col] = BigInt::zero();
        }
        prev = pv;
        row += 1;
    }
    let det = match (row == n, negate) {
        (false, _) => BigInt::zero(),
        (true, false) => prev,
        (true, true) => -prev,
    };
    (row, det)
}

/// Product of polynomials given constant term first.
pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
