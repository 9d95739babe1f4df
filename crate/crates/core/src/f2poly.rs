//! Polynomials over GF(2) packed into a `u128`, lowest degree in bit 0.
//!
//! Degrees up to 127 are representable. Everything the rest of the crate
//! needs stays below degree 64 (characteristic polynomials of at most
//! 64×64 matrices), and modular products reduce as they go.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::f2linalg::{BitMatrix, MAX_DIM};

pub const MAX_DEGREE: u32 = 127;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no factorization")]
    Zero,
    #[error("companion matrix needs a monic polynomial of positive degree")]
    NotMonic,
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(u32),
    #[error("degree must be positive")]
    NonPositiveDegree,
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
}

/// A polynomial over GF(2). The derived ordering compares the bit patterns,
/// which orders first by degree and then by the coefficients as an integer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2Poly(u128);

impl F2Poly {
    pub const ZERO: F2Poly = F2Poly(0);
    pub const ONE: F2Poly = F2Poly(1);
    pub const X: F2Poly = F2Poly(2);
    pub const X_PLUS_ONE: F2Poly = F2Poly(3);

    pub const fn from_bits(bits: u128) -> Self {
        F2Poly(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `X^k`.
    pub fn monomial(k: u32) -> Self {
        assert!(k <= MAX_DEGREE);
        F2Poly(1u128 << k)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(self) -> Option<u32> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros())
    }

    fn deg(self) -> i32 {
        self.degree().map_or(-1, |d| d as i32)
    }

    pub fn coeff(self, i: u32) -> bool {
        i <= MAX_DEGREE && (self.0 >> i) & 1 == 1
    }

    pub fn checked_mul(self, other: F2Poly) -> Option<F2Poly> {
        if self.is_zero() || other.is_zero() {
            return Some(F2Poly::ZERO);
        }
        if self.deg() + other.deg() > MAX_DEGREE as i32 {
            return None;
        }
        Some(F2Poly(clmul(self.0, other.0)))
    }

    /// Panics if the product exceeds degree 127.
    pub fn mul(self, other: F2Poly) -> F2Poly {
        self.checked_mul(other).expect("polynomial product exceeds degree 127")
    }

    pub fn checked_pow(self, e: u32) -> Option<F2Poly> {
        let mut acc = F2Poly::ONE;
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(self, divisor: F2Poly) -> (F2Poly, F2Poly) {
        let dd = divisor.deg();
        assert!(dd >= 0, "division by the zero polynomial");
        let mut rem = self.0;
        let mut quot = 0u128;
        while rem != 0 {
            let rd = 127 - rem.leading_zeros() as i32;
            if rd < dd {
                break;
            }
            let shift = (rd - dd) as u32;
            quot |= 1 << shift;
            rem ^= divisor.0 << shift;
        }
        (F2Poly(quot), F2Poly(rem))
    }

    pub fn rem(self, divisor: F2Poly) -> F2Poly {
        self.div_rem(divisor).1
    }

    pub fn gcd(self, other: F2Poly) -> F2Poly {
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            let r = a.rem(b);
            a = b;
            b = r;
        }
        a
    }

    /// `self · other mod modulus` without forming the full product.
    pub fn mul_mod(self, other: F2Poly, modulus: F2Poly) -> F2Poly {
        let md = modulus.deg();
        assert!(md >= 0);
        let a = self.rem(modulus);
        let b = other.rem(modulus);
        let mut acc = F2Poly::ZERO;
        for i in (0..=b.deg().max(0)).rev() {
            acc = F2Poly(acc.0 << 1);
            if acc.deg() == md {
                acc = F2Poly(acc.0 ^ modulus.0);
            }
            if b.coeff(i as u32) {
                acc = F2Poly(acc.0 ^ a.0);
            }
        }
        acc
    }

    pub fn square_mod(self, modulus: F2Poly) -> F2Poly {
        self.mul_mod(self, modulus)
    }

    /// Formal derivative: odd-degree terms drop one degree, even ones vanish.
    pub fn derivative(self) -> F2Poly {
        const ODD: u128 = 0xAAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA;
        F2Poly((self.0 & ODD) >> 1)
    }

    /// Square root of a polynomial with only even-degree terms.
    fn sqrt_even(self) -> F2Poly {
        let mut out = 0u128;
        let mut bits = self.0;
        while bits != 0 {
            let k = bits.trailing_zeros();
            debug_assert!(k % 2 == 0);
            out |= 1 << (k / 2);
            bits &= bits - 1;
        }
        F2Poly(out)
    }

    pub fn is_irreducible(self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(_) => {
                let f = self.factor().expect("nonzero");
                f.len() == 1 && f[0].1 == 1
            }
        }
    }

    /// Factorization into distinct monic irreducibles with exponents, sorted
    /// by the polynomial ordering. The constant polynomial 1 has the empty
    /// factorization.
    pub fn factor(self) -> Result<Vec<(F2Poly, u32)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Zero);
        }
        let mut out: BTreeMap<F2Poly, u32> = BTreeMap::new();
        for (part, mult) in square_free_parts(self) {
            for (g, d) in distinct_degree_parts(part) {
                for phi in equal_degree_split(g, d) {
                    *out.entry(phi).or_default() += mult;
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Lowest degree first, e.g. `"11"` for `1 + X`; `"0"` for zero.
    pub fn to_binary_string(self) -> String {
        match self.degree() {
            None => "0".into(),
            Some(d) => (0..=d).map(|i| if self.coeff(i) { '1' } else { '0' }).collect(),
        }
    }

    /// `M(self^r)`: multiplication by `X` modulo `self^r` in the basis
    /// `1, X, …`, with ones on the superdiagonal and the coefficients of
    /// `self^r` in the last row.
    pub fn companion_matrix(self, r: u32) -> Result<BitMatrix, PolyError> {
        let d = self.degree().ok_or(PolyError::NotMonic)?;
        if d == 0 || r == 0 {
            return Err(PolyError::NotMonic);
        }
        let size = d as u64 * r as u64;
        if size > MAX_DIM as u64 {
            return Err(PolyError::DegreeTooLarge(size.min(u32::MAX as u64) as u32));
        }
        let psi = self.checked_pow(r).ok_or(PolyError::DegreeTooLarge(size as u32))?;
        Ok(companion_of(psi))
    }
}

/// `M(psi)` for a monic `psi` of degree at most 64.
pub(crate) fn companion_of(psi: F2Poly) -> BitMatrix {
    let k = psi.degree().expect("nonzero") as usize;
    let mut rows = Vec::with_capacity(k);
    for i in 0..k.saturating_sub(1) {
        rows.push(1u64 << (i + 1));
    }
    if k > 0 {
        let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        rows.push(psi.0 as u64 & mask);
    }
    BitMatrix::from_rows(k, rows).expect("valid companion rows")
}

fn clmul(a: u128, b: u128) -> u128 {
    let mut out = 0u128;
    let mut bits = b;
    while bits != 0 {
        let k = bits.trailing_zeros();
        out ^= a << k;
        bits &= bits - 1;
    }
    out
}

fn square_free_parts(f: F2Poly) -> Vec<(F2Poly, u32)> {
    let mut parts = Vec::new();
    square_free_rec(f, 1, &mut parts);
    parts
}

fn square_free_rec(f: F2Poly, scale: u32, out: &mut Vec<(F2Poly, u32)>) {
    if f.deg() <= 0 {
        return;
    }
    let mut c = f.gcd(f.derivative());
    let mut w = f.div_rem(c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(c);
        let fac = w.div_rem(y).0;
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.div_rem(y).0;
        i += 1;
    }
    if !c.is_one() {
        square_free_rec(c.sqrt_even(), scale * 2, out);
    }
}

/// Splits a squarefree `f` into products of irreducibles of equal degree.
fn distinct_degree_parts(mut f: F2Poly) -> Vec<(F2Poly, u32)> {
    let mut out = Vec::new();
    let mut h = F2Poly::X;
    let mut d = 1;
    while f.deg() >= 2 * d as i32 {
        h = h.square_mod(f);
        let g = f.gcd(F2Poly(h.0 ^ F2Poly::X.0));
        if !g.is_one() {
            out.push((g, d));
            f = f.div_rem(g).0;
            h = h.rem(f);
        }
        d += 1;
    }
    if f.deg() > 0 {
        out.push((f, f.deg() as u32));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d` with the
/// characteristic-2 trace map `a + a² + a⁴ + … + a^{2^{d−1}}`.
fn equal_degree_split(g: F2Poly, d: u32) -> Vec<F2Poly> {
    let gd = g.deg() as u32;
    if gd == d {
        return vec![g];
    }
    // Trial elements X, X+1, X^2, ... in increasing order keep this deterministic.
    let mut a = 2u128;
    loop {
        let elem = F2Poly(a).rem(g);
        let mut term = elem;
        let mut trace = elem;
        for _ in 1..d {
            term = term.square_mod(g);
            trace = F2Poly(trace.0 ^ term.0);
        }
        let s = g.gcd(trace);
        if s.deg() > 0 && (s.deg() as u32) < gd {
            let mut parts = equal_degree_split(s, d);
            parts.extend(equal_degree_split(g.div_rem(s).0, d));
            return parts;
        }
        a += 1;
        debug_assert!(a < 1u128 << gd, "trace splitting exhausted candidates");
    }
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducible polynomials of degree `d` over GF(q):
/// `(1/d)·Σ_{e|d} μ(d/e)·q^e`. With `include_x = false` and `d = 1` the
/// polynomial `X` is left out, giving `q − 1`.
pub fn irreducible_count(q: u64, d: u32, include_x: bool) -> Result<BigUint, PolyError> {
    if d == 0 {
        return Err(PolyError::NonPositiveDegree);
    }
    if d == 1 && !include_x {
        return Ok(BigUint::from(q - 1));
    }
    let q = BigInt::from(q);
    let mut sum = BigInt::zero();
    for e in 1..=d {
        if d % e == 0 {
            let mu = mobius(u64::from(d / e));
            if mu != 0 {
                sum += BigInt::from(mu) * num_traits::pow(q.clone(), e as usize);
            }
        }
    }
    let (quot, rem) = (sum.clone() / BigInt::from(d), sum % BigInt::from(d));
    debug_assert!(rem.is_zero() && !quot.is_negative());
    Ok(quot.to_biguint().expect("nonnegative"))
}

/// Convenience for small degrees where the count fits a machine word.
pub fn irreducible_count_u64(d: u32) -> Option<u64> {
    irreducible_count(2, d, true).ok()?.to_u64()
}

impl fmt::Display for F2Poly {
    /// Human form, highest degree first: `X^2+X+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=d).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({self})")
    }
}

impl FromStr for F2Poly {
    type Err = PolyError;

    /// Accepts either a binary coefficient string, lowest degree first, or
    /// the human form with terms `1`, `X`, `X^k` joined by `+`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || PolyError::Parse(s.to_string());
        if t.is_empty() {
            return Err(err());
        }
        if t.chars().all(|c| c == '0' || c == '1') {
            if t.len() > MAX_DEGREE as usize + 1 {
                return Err(PolyError::DegreeTooLarge(t.len() as u32 - 1));
            }
            let bits = t.chars().enumerate().fold(0u128, |acc, (i, c)| acc | u128::from(c == '1') << i);
            return Ok(F2Poly(bits));
        }
        let mut bits = 0u128;
        for term in t.split('+') {
            let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let exp = match term.as_str() {
                "1" => 0,
                "X" | "x" => 1,
                _ => {
                    let rest = term.strip_prefix(['X', 'x']).and_then(|r| r.strip_prefix('^')).ok_or_else(err)?;
                    rest.parse::<u32>().map_err(|_| err())?
                }
            };
            if exp > MAX_DEGREE {
                return Err(PolyError::DegreeTooLarge(exp));
            }
            bits ^= 1 << exp;
        }
        Ok(F2Poly(bits))
    }
}
