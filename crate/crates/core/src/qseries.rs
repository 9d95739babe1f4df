//! Truncated power series over an exact coefficient domain, the
//! logarithmic-derivative product of many series powers, and the
//! multi-modular (CRT) reconstruction used by the modular backend.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term is not invertible")]
    NonUnitConstant,
    #[error("modulus {modulus} does not exceed the truncation order {order}")]
    ModulusTooSmall { modulus: u64, order: usize },
    #[error("factor known only to order {have}, need {need}")]
    OrderTooSmall { have: usize, need: usize },
    #[error("{0} is not invertible in the coefficient domain")]
    NotInvertible(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrtError {
    #[error("{residues} residues for {moduli} moduli")]
    LengthMismatch { residues: usize, moduli: usize },
    #[error("moduli must be distinct odd primes, got {0}")]
    BadModulus(u64),
    #[error("modulus product does not exceed the bound")]
    InsufficientModulus,
    #[error("residues reconstruct to a value above the bound")]
    Inconsistent,
}

/// An exact coefficient field.
pub trait Domain: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_biguint(&self, n: &BigUint) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `None` for characteristic zero.
    fn characteristic(&self) -> Option<u64>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Domain for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_biguint(&self, n: &BigUint) -> BigRational {
        BigRational::from_integer(BigInt::from(n.clone()))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }
}

/// Residues modulo an odd prime below 2^32.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < 1 << 32 && is_prime(p), "{p} is not an odd prime below 2^32");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Domain for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_biguint(&self, n: &BigUint) -> u64 {
        (n % self.p).to_u64().expect("residue fits")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a % self.p != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.p == 0
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.p)
    }
}

/// `c_0 + c_1 X + … + c_N X^N + O(X^{N+1})`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<D: Domain> {
    domain: D,
    coeffs: Vec<D::Elem>,
}

impl<D: Domain> fmt::Debug for TruncatedSeries<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries").field("order", &self.order()).field("coeffs", &self.coeffs).finish()
    }
}

impl<D: Domain> TruncatedSeries<D> {
    pub fn zero(domain: D, order: usize) -> Self {
        let coeffs = vec![domain.zero(); order + 1];
        TruncatedSeries { domain, coeffs }
    }

    pub fn one(domain: D, order: usize) -> Self {
        let mut s = Self::zero(domain, order);
        s.coeffs[0] = s.domain.one();
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(domain: D, mut coeffs: Vec<D::Elem>, order: usize) -> Self {
        coeffs.resize(order + 1, domain.zero());
        TruncatedSeries { domain, coeffs }
    }

    pub fn from_i64s(domain: D, coeffs: &[i64], order: usize) -> Self {
        let c = coeffs.iter().map(|&x| domain.from_i64(x)).collect();
        Self::from_coeffs(domain, c, order)
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &D::Elem {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[D::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<D::Elem> {
        self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, value: D::Elem) {
        self.coeffs[k] = value;
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.domain.clone(), self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let d = &self.domain;
        let c = (0..=order).map(|k| d.add(&self.coeffs[k], &other.coeffs[k])).collect();
        TruncatedSeries { domain: d.clone(), coeffs: c }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let d = &self.domain;
        let c = (0..=order).map(|k| d.sub(&self.coeffs[k], &other.coeffs[k])).collect();
        TruncatedSeries { domain: d.clone(), coeffs: c }
    }

    pub fn scale(&self, factor: &D::Elem) -> Self {
        let d = &self.domain;
        TruncatedSeries { domain: d.clone(), coeffs: self.coeffs.iter().map(|c| d.mul(c, factor)).collect() }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let d = &self.domain;
        let mut out = vec![d.zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if d.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !d.is_zero(b) {
                    out[i + j] = d.add(&out[i + j], &d.mul(a, b));
                }
            }
        }
        TruncatedSeries { domain: d.clone(), coeffs: out }
    }

    /// `self / divisor`; the divisor's constant term must be a unit.
    pub fn div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let order = self.order().min(divisor.order());
        let d = &self.domain;
        let inv0 = d.inv(&divisor.coeffs[0]).ok_or(SeriesError::NonUnitConstant)?;
        let mut q: Vec<D::Elem> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                let b = &divisor.coeffs[i];
                if !d.is_zero(b) {
                    acc = d.sub(&acc, &d.mul(b, &q[k - i]));
                }
            }
            q.push(d.mul(&acc, &inv0));
        }
        Ok(TruncatedSeries { domain: d.clone(), coeffs: q })
    }

    /// `f'`, known to one order less than `f`.
    pub fn derivative(&self) -> Self {
        let d = &self.domain;
        let order = self.order().saturating_sub(1);
        let c = (0..=order)
            .map(|k| match self.coeffs.get(k + 1) {
                Some(x) => d.mul(x, &d.from_i64(k as i64 + 1)),
                None => d.zero(),
            })
            .collect();
        TruncatedSeries { domain: d.clone(), coeffs: c }
    }

    /// Antiderivative with the given constant term, one order higher.
    pub fn integrate(&self, constant: D::Elem) -> Result<Self, SeriesError> {
        let d = &self.domain;
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(constant);
        for (k, x) in self.coeffs.iter().enumerate() {
            let inv = d.inv(&d.from_i64(k as i64 + 1)).ok_or(SeriesError::NotInvertible(k as u64 + 1))?;
            c.push(d.mul(x, &inv));
        }
        Ok(TruncatedSeries { domain: d.clone(), coeffs: c })
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.domain.clone(), self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Largest `s` such that the series is a series in `X^s` (0 for a constant).
    fn stride(&self) -> usize {
        let d = &self.domain;
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !d.is_zero(c))
            .fold(0, |g, (k, _)| g.gcd(&k))
    }

    /// `f'/f` to order `N − 1`, working in `Y = X^s` for a series in `X^s`.
    pub fn log_derivative(&self) -> Result<Self, SeriesError> {
        let d = &self.domain;
        let order = self.order();
        let out_order = order.saturating_sub(1);
        let s = self.stride();
        if s == 0 {
            if d.is_zero(&self.coeffs[0]) {
                return Err(SeriesError::NonUnitConstant);
            }
            return Ok(Self::zero(d.clone(), out_order));
        }
        let inner_order = order / s;
        let h = Self::from_coeffs(d.clone(), (0..=inner_order).map(|j| self.coeffs[j * s].clone()).collect(), inner_order);
        let ratio = if inner_order == 0 {
            Self::zero(d.clone(), 0)
        } else {
            h.derivative().div(&h.truncate(inner_order - 1))?
        };
        if d.inv(&h.coeffs[0]).is_none() {
            return Err(SeriesError::NonUnitConstant);
        }
        let scale = d.from_i64(s as i64);
        let mut out = Self::zero(d.clone(), out_order);
        for (j, r) in ratio.coeffs.iter().enumerate() {
            let m = s * (j + 1) - 1;
            if m <= out_order && order > 0 {
                out.coeffs[m] = d.mul(r, &scale);
            }
        }
        Ok(out)
    }
}

/// `∏ f_d^{n_d}` truncated at `order`, via `F'/F = Σ n_d f_d'/f_d` and the
/// recurrence `k·F_k = Σ_{j=1}^{k} g_{j−1}·F_{k−j}`, `F_0 = 1`.
pub fn big_product<D: Domain>(
    domain: &D,
    factors: &[(TruncatedSeries<D>, BigUint)],
    order: usize,
) -> Result<TruncatedSeries<D>, SeriesError> {
    if let Some(p) = domain.characteristic() {
        if p as usize <= order {
            return Err(SeriesError::ModulusTooSmall { modulus: p, order });
        }
    }
    let mut g = TruncatedSeries::zero(domain.clone(), order.saturating_sub(1));
    for (f, e) in factors {
        if f.order() < order {
            return Err(SeriesError::OrderTooSmall { have: f.order(), need: order });
        }
        if f.coeffs[0] != domain.one() {
            return Err(SeriesError::NonUnitConstant);
        }
        if e.is_zero() {
            continue;
        }
        let ld = f.truncate(order).log_derivative()?;
        let e = domain.from_biguint(e);
        for (k, c) in ld.coeffs.iter().enumerate() {
            if !domain.is_zero(c) {
                g.coeffs[k] = domain.add(&g.coeffs[k], &domain.mul(c, &e));
            }
        }
    }
    let mut out: Vec<D::Elem> = Vec::with_capacity(order + 1);
    out.push(domain.one());
    for k in 1..=order {
        let mut acc = domain.zero();
        for j in 1..=k {
            let gj = &g.coeffs[j - 1];
            if !domain.is_zero(gj) {
                acc = domain.add(&acc, &domain.mul(gj, &out[k - j]));
            }
        }
        let inv_k = domain.inv(&domain.from_i64(k as i64)).ok_or(SeriesError::NotInvertible(k as u64))?;
        out.push(domain.mul(&acc, &inv_k));
    }
    Ok(TruncatedSeries { domain: domain.clone(), coeffs: out })
}

/// Repeated-multiplication reference for [`big_product`]; exponents must fit
/// a `u64`.
pub fn naive_product<D: Domain>(domain: &D, factors: &[(TruncatedSeries<D>, u64)], order: usize) -> TruncatedSeries<D> {
    factors
        .iter()
        .fold(TruncatedSeries::one(domain.clone(), order), |acc, (f, e)| acc.mul(&f.truncate(order).pow(*e)))
}

/// `ϑ(z) = ∏_{k ≥ 1} (1 + z^{2k−1}) / (1 − z^{2k})` with integer coefficients.
pub fn theta_series(order: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::zero(); order + 1];
    c[0] = BigUint::one();
    for k in 1..=order.div_ceil(2) {
        let odd = 2 * k - 1;
        for i in (odd..=order).rev() {
            let t = c[i - odd].clone();
            c[i] += t;
        }
        let even = 2 * k;
        for i in even..=order {
            let t = c[i - even].clone();
            c[i] += t;
        }
    }
    c
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// True when `p` divides `2^k − 1` for some `1 ≤ k ≤ n`.
fn divides_mersenne_up_to(p: u64, n: usize) -> bool {
    let mut pw = 1u64;
    for _ in 1..=n {
        pw = pw * 2 % p;
        if pw == 1 {
            return true;
        }
    }
    false
}

/// Odd primes `p > n` with `p ∤ 2^k − 1` for `k ≤ n`, ascending from 3, until
/// their product exceeds `2^{n²}`.
pub fn select_crt_primes(n: usize) -> Vec<u64> {
    select_crt_primes_for(n, n)
}

/// As [`select_crt_primes`], additionally requiring `p > order` so the
/// product recurrence can divide by every `k ≤ order`.
pub fn select_crt_primes_for(n: usize, order: usize) -> Vec<u64> {
    let bound = BigUint::one() << (n * n);
    let floor = n.max(order) as u64;
    let mut product = BigUint::one();
    let mut primes = Vec::new();
    let mut candidate = 3u64;
    while product <= bound {
        if candidate > floor && is_prime(candidate) && !divides_mersenne_up_to(candidate, n) {
            product *= candidate;
            primes.push(candidate);
        }
        candidate += 2;
    }
    primes
}

/// The unique integer in `[0, bound]` with the given residues.
pub fn crt_reconstruct(residues: &[u64], moduli: &[u64], bound: &BigUint) -> Result<BigUint, CrtError> {
    if residues.len() != moduli.len() {
        return Err(CrtError::LengthMismatch { residues: residues.len(), moduli: moduli.len() });
    }
    for (i, &p) in moduli.iter().enumerate() {
        if p < 3 || p % 2 == 0 || p >= 1 << 32 || !is_prime(p) || moduli[..i].contains(&p) {
            return Err(CrtError::BadModulus(p));
        }
    }
    let mut x = BigUint::zero();
    let mut m = BigUint::one();
    for (&r, &p) in residues.iter().zip(moduli) {
        let field = PrimeField::new(p);
        let x_mod = (&x % p).to_u64().expect("fits");
        let m_mod = (&m % p).to_u64().expect("fits");
        let diff = field.sub(&(r % p), &x_mod);
        let t = field.mul(&diff, &field.inv(&m_mod).expect("distinct primes"));
        x += &m * t;
        m *= p;
    }
    if &m <= bound {
        return Err(CrtError::InsufficientModulus);
    }
    if &x > bound {
        return Err(CrtError::Inconsistent);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_matches_square_partition_counts() {
        let t = theta_series(24);
        assert_eq!(t[..6], [1u32, 1, 1, 2, 3, 4].map(BigUint::from));
        for (w, c) in t.iter().enumerate() {
            let n = crate::partitions::ClassFamily::Squares.enumerate(w).len();
            assert_eq!(c, &BigUint::from(n), "w = {w}");
        }
    }
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn square_of_one_plus_x() {
        let f = TruncatedSeries::from_i64s(Rationals, &[1, 1], 2);
        let p = big_product(&Rationals, &[(f, BigUint::from(2u32))], 2).unwrap();
        assert_eq!(p.coeffs(), &[q(1), q(2), q(1)]);
    }

    #[test]
    fn random_products_match_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let field = PrimeField::new(1_000_003);
        for _ in 0..100 {
            let order = rng.gen_range(1..=24);
            let count = rng.gen_range(1..=4);
            let mut rat = Vec::new();
            let mut modp = Vec::new();
            for _ in 0..count {
                let stride = rng.gen_range(1..=3);
                let mut c = vec![0i64; order + 1];
                c[0] = 1;
                for k in (stride..=order).step_by(stride) {
                    if rng.gen_bool(0.6) {
                        c[k] = rng.gen_range(-3..=3);
                    }
                }
                let e = rng.gen_range(1..=5u64);
                rat.push((TruncatedSeries::from_i64s(Rationals, &c, order), e));
                modp.push((TruncatedSeries::from_i64s(field, &c, order), e));
            }
            let big = |v: &[(TruncatedSeries<Rationals>, u64)]| {
                v.iter().map(|(f, e)| (f.clone(), BigUint::from(*e))).collect::<Vec<_>>()
            };
            assert_eq!(big_product(&Rationals, &big(&rat), order).unwrap(), naive_product(&Rationals, &rat, order));
            let bigp: Vec<_> = modp.iter().map(|(f, e)| (f.clone(), BigUint::from(*e))).collect();
            assert_eq!(big_product(&field, &bigp, order).unwrap(), naive_product(&field, &modp, order));
        }
    }

    #[test]
    fn rational_coefficients_match_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let order = 12;
            let mut c = vec![q(0); order + 1];
            c[0] = q(1);
            for x in c.iter_mut().skip(1) {
                *x = BigRational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=7).into());
            }
            let f = TruncatedSeries::from_coeffs(Rationals, c, order);
            let naive = naive_product(&Rationals, &[(f.clone(), 3)], order);
            assert_eq!(big_product(&Rationals, &[(f, 3u32.into())], order).unwrap(), naive);
        }
    }

    #[test]
    fn product_errors() {
        let field = PrimeField::new(7);
        let f = TruncatedSeries::from_i64s(field, &[1, 1], 8);
        assert_eq!(
            big_product(&field, &[(f, BigUint::one())], 8),
            Err(SeriesError::ModulusTooSmall { modulus: 7, order: 8 })
        );
        let g = TruncatedSeries::from_i64s(Rationals, &[2, 1], 4);
        assert_eq!(big_product(&Rationals, &[(g, BigUint::one())], 4), Err(SeriesError::NonUnitConstant));
        let h = TruncatedSeries::from_i64s(Rationals, &[1, 1], 2);
        assert_eq!(
            big_product(&Rationals, &[(h, BigUint::one())], 4),
            Err(SeriesError::OrderTooSmall { have: 2, need: 4 })
        );
    }

    #[test]
    fn derivative_integral_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let order = rng.gen_range(1..20);
            let c: Vec<i64> = (0..=order).map(|_| rng.gen_range(-9..=9)).collect();
            let f = TruncatedSeries::from_i64s(Rationals, &c, order);
            let back = f.derivative().integrate(f.coeff(0).clone()).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = TruncatedSeries::from_i64s(Rationals, &[3, 1, 4, 1, 5], 4);
        let b = TruncatedSeries::from_i64s(Rationals, &[2, 7, 1, 8, 2], 4);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        let z = TruncatedSeries::from_i64s(Rationals, &[0, 1], 4);
        assert_eq!(a.div(&z), Err(SeriesError::NonUnitConstant));
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_reconstruct(&[1, 2], &[3, 5], &BigUint::from(14u32)).unwrap(), BigUint::from(7u32));
        let primes = select_crt_primes(6);
        let zeros = vec![0; primes.len()];
        assert_eq!(crt_reconstruct(&zeros, &primes, &(BigUint::one() << 36)).unwrap(), BigUint::zero());
        assert_eq!(crt_reconstruct(&[1, 2], &[3, 5], &BigUint::from(15u32)), Err(CrtError::InsufficientModulus));
        // 14 ≡ 2 (mod 3), 4 (mod 5): above a bound of 10
        assert_eq!(crt_reconstruct(&[2, 4], &[3, 5], &BigUint::from(10u32)), Err(CrtError::Inconsistent));
        assert_eq!(crt_reconstruct(&[1], &[3, 5], &BigUint::one()), Err(CrtError::LengthMismatch { residues: 1, moduli: 2 }));
        assert_eq!(crt_reconstruct(&[1, 1], &[3, 3], &BigUint::one()), Err(CrtError::BadModulus(3)));
    }

    #[test]
    fn crt_random_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let primes = select_crt_primes(10);
        let bound = BigUint::one() << 100;
        for _ in 0..50 {
            let x: BigUint = (0..4).fold(BigUint::zero(), |acc, _| (acc << 25) + rng.gen::<u32>() % (1 << 25));
            let residues: Vec<u64> = primes.iter().map(|&p| (&x % p).to_u64().unwrap()).collect();
            assert_eq!(crt_reconstruct(&residues, &primes, &bound).unwrap(), x);
        }
    }

    #[test]
    fn prime_selection() {
        assert_eq!(select_crt_primes(1)[0], 3);
        let four = select_crt_primes(4);
        assert!(!four.contains(&5) && !four.contains(&7) && four.contains(&11));
        for n in 1..=12 {
            let primes = select_crt_primes(n);
            let mut product = BigUint::one();
            for &p in &primes {
                assert!(is_prime(p) && p > n as u64 && p % 2 == 1);
                for k in 1..=n as u32 {
                    assert_ne!((BigUint::from(2u32).pow(k) - 1u32) % p, BigUint::zero(), "p = {p}, k = {k}");
                }
                product *= p;
            }
            assert!(product > BigUint::one() << (n * n));
        }
        assert!(select_crt_primes_for(2, 30).iter().all(|&p| p > 30));
    }
}
