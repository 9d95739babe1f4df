//! The counting engine.
//!
//! A family `f` selects, for every irreducible `φ`, the allowed partitions
//! `Λ(φ) ∈ f`. Class sizes factor over `φ` through centralizer orders, so the
//! scaled element counts `|C_n| / |GL_n(2)|` are the coefficients of
//!
//! ```text
//! F_C(X) = ∏_{d ≥ 1} ( Σ_{λ ∈ f} X^{|λ|d} / C(λ, 2^d) )^{e_d}
//! ```
//!
//! with `e_d` the number of monic irreducibles of degree `d` (minus `X` for
//! invertible matrices). Dropping the centralizers gives the class-count
//! series `G_C`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::f2linalg::BitMatrix;
use crate::f2poly::{irreducible_count, F2Poly, PolyError};
use crate::partitions::{ClassFamily, Partition};
use crate::qseries::{
    big_product, crt_reconstruct, select_crt_primes_for, CrtError, Domain, PrimeField, Rationals, SeriesError,
    TruncatedSeries,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("division by zero in q-Pochhammer symbol")]
    DivisionByZero,
    #[error("series arithmetic failed: {0}")]
    Series(#[from] SeriesError),
    #[error("CRT reconstruction failed: {0}")]
    Crt(#[from] CrtError),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error("invalid class descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Mat,
    Gl,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Mat => "mat",
            Ring::Gl => "gl",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ring {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mat" => Ok(Ring::Mat),
            "gl" => Ok(Ring::Gl),
            _ => Err(format!("unknown ring `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Rational,
    Crt,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Crt => "crt",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

// ---------------------------------------------------------------------------
// Class descriptors

/// A conjugacy class of `Mat_n(GF(2))`: a partition for each irreducible that
/// occurs. Irreducibles absent from the map carry `∅`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ClassDescriptor {
    assignment: BTreeMap<F2Poly, Partition>,
}

impl ClassDescriptor {
    /// Entries with an empty partition are dropped; every key must be
    /// irreducible.
    pub fn new(assignment: impl IntoIterator<Item = (F2Poly, Partition)>) -> Result<Self, CountError> {
        let mut map = BTreeMap::new();
        for (phi, lambda) in assignment {
            if !phi.is_irreducible() {
                return Err(CountError::Descriptor(format!("{phi} is not irreducible")));
            }
            if lambda.is_empty() {
                continue;
            }
            if map.insert(phi, lambda).is_some() {
                return Err(CountError::Descriptor(format!("{phi} listed twice")));
            }
        }
        Ok(ClassDescriptor { assignment: map })
    }

    pub(crate) fn from_map_unchecked(assignment: BTreeMap<F2Poly, Partition>) -> Self {
        ClassDescriptor { assignment }
    }

    pub fn dimension(&self) -> usize {
        self.assignment.iter().map(|(phi, l)| l.weight() * phi.degree().unwrap() as usize).sum()
    }

    pub fn get(&self, phi: &F2Poly) -> Option<&Partition> {
        self.assignment.get(phi)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&F2Poly, &Partition)> {
        self.assignment.iter()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// `⊕_φ ⊕_i M(φ^{Λ(φ)_i})`, `φ` ascending and exponents descending.
    pub fn standard_representative(&self) -> Result<BitMatrix, CountError> {
        let mut blocks = Vec::new();
        for (phi, lambda) in &self.assignment {
            for &part in lambda.parts() {
                blocks.push(phi.companion_matrix(part as u32)?);
            }
        }
        Ok(BitMatrix::direct_sum(&blocks))
    }

    /// `∏_φ C(Λ(φ), 2^{deg φ})`.
    pub fn centralizer_order(&self) -> BigUint {
        self.assignment
            .iter()
            .map(|(phi, l)| centralizer_order_pow2(l, phi.degree().unwrap()))
            .product()
    }

    /// `|GL_n(2)| / |centralizer|`.
    pub fn class_size(&self) -> BigUint {
        gl_order(self.dimension(), 2) / self.centralizer_order()
    }

    pub fn is_in_family(&self, family: ClassFamily) -> bool {
        self.assignment.values().all(|l| family.contains(l))
    }

    /// Whether the class lies in `GL_n`, i.e. `X` does not occur.
    pub fn is_invertible(&self) -> bool {
        !self.assignment.contains_key(&F2Poly::X)
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (phi, l)) in self.assignment.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{phi}: {l}")?;
        }
        f.write_str("}")
    }
}

// ---------------------------------------------------------------------------
// Centralizers and group orders

/// `(a; q)_k`: `∏_{j<k}(1 − a q^j)` for `k > 0`, `1` for `k = 0`, and
/// `1 / (a q^k; q)_{−k}` for `k < 0`.
pub fn q_pochhammer(a: &BigRational, q: &BigRational, k: i64) -> Result<BigRational, CountError> {
    let one = BigRational::one();
    let rising = |a: BigRational, k: u64| {
        let mut acc = BigRational::one();
        let mut term = a;
        for _ in 0..k {
            acc *= &one - &term;
            term *= q;
        }
        acc
    };
    match k {
        0 => Ok(one),
        k if k > 0 => Ok(rising(a.clone(), k as u64)),
        k => {
            if q.is_zero() {
                return Err(CountError::DivisionByZero);
            }
            let shifted = a * q.pow(k as i32);
            let denom = rising(shifted, k.unsigned_abs());
            if denom.is_zero() {
                Err(CountError::DivisionByZero)
            } else {
                Ok(denom.recip())
            }
        }
    }
}

/// `C(λ, Q) = Q^{Σ (λ'_i)²} · ∏_i (Q^{−m_i}; Q)_{m_i}`, evaluated literally.
pub fn centralizer_order(lambda: &Partition, big_q: &BigRational) -> BigRational {
    if lambda.is_empty() {
        return BigRational::one();
    }
    let dim: i32 = lambda.conjugate().parts().iter().map(|&c| (c * c) as i32).sum();
    let mut acc = big_q.pow(dim);
    for &m in lambda.multiplicities().iter().filter(|&&m| m > 0) {
        let a = big_q.pow(-(m as i32));
        acc *= q_pochhammer(&a, big_q, m as i64).expect("positive index");
    }
    acc
}

/// Power of two and odd part of `C(λ, 2^d)`:
/// `2^{d(Σλ'² − Σ m_i(m_i+1)/2)} · ∏_i ∏_{j ≤ m_i} (2^{dj} − 1)`.
fn centralizer_shape(lambda: &Partition) -> (usize, Vec<usize>) {
    let sq: usize = lambda.conjugate().parts().iter().map(|c| c * c).sum();
    let mult: Vec<usize> = lambda.multiplicities().into_iter().filter(|&m| m > 0).collect();
    let tri: usize = mult.iter().map(|m| m * (m + 1) / 2).sum();
    (sq - tri, mult)
}

/// `C(λ, 2^d)` as an integer.
pub fn centralizer_order_pow2(lambda: &Partition, d: u32) -> BigUint {
    let (e, mult) = centralizer_shape(lambda);
    let mut acc = BigUint::one() << (d as usize * e);
    for m in mult {
        for j in 1..=m {
            acc *= (BigUint::one() << (d as usize * j)) - 1u32;
        }
    }
    acc
}

/// `|GL_n(q)| = ∏_{k<n} (q^n − q^k)`.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn = num_traits::pow(q.clone(), n);
    (0..n).map(|k| &qn - num_traits::pow(q.clone(), k)).product()
}

// ---------------------------------------------------------------------------
// Factor series

/// Coefficient domains that can sum reciprocal centralizer orders.
pub trait CountingDomain: Domain {
    /// `Σ_{λ ∈ parts} 1 / C(λ, 2^d)` for partitions of weight `w`.
    fn reciprocal_centralizer_sum(&self, parts: &[Partition], d: u32, w: usize) -> Result<Self::Elem, CountError>;
}

impl CountingDomain for Rationals {
    /// Sums the integer class sizes `|GL_w(2^d)| / C(λ, 2^d)` and divides once.
    fn reciprocal_centralizer_sum(&self, parts: &[Partition], d: u32, w: usize) -> Result<BigRational, CountError> {
        let d = d as usize;
        // prefix[k] = ∏_{j ≤ k} (2^{dj} − 1)
        let mut prefix = vec![BigUint::one()];
        for j in 1..=w {
            let next = &prefix[j - 1] * ((BigUint::one() << (d * j)) - 1u32);
            prefix.push(next);
        }
        let gl_two_power = d * w * w.saturating_sub(1) / 2;
        let class_size = |lambda: &Partition| -> Result<BigUint, CountError> {
            let (e, mult) = centralizer_shape(lambda);
            let odd_c: BigUint = mult.iter().map(|&m| &prefix[m]).product();
            let (odd, rem) = num_integer::Integer::div_rem(&prefix[w], &odd_c);
            if !rem.is_zero() || gl_two_power < d * e {
                return Err(CountError::Integrity(format!("centralizer of {lambda} does not divide |GL_{w}|")));
            }
            Ok(odd << (gl_two_power - d * e))
        };
        let total = if parts.len() > 256 {
            parts
                .par_iter()
                .map(class_size)
                .try_reduce(BigUint::zero, |a, b| Ok(a + b))?
        } else {
            parts.iter().map(class_size).try_fold(BigUint::zero(), |a, b| b.map(|b| a + b))?
        };
        let gl = &prefix[w] << gl_two_power;
        Ok(BigRational::new(BigInt::from(total), BigInt::from(gl)))
    }
}

impl CountingDomain for PrimeField {
    /// Reduces each centralizer order modulo `p` from its factored form and
    /// inverts it; a vanishing centralizer is an integrity failure.
    fn reciprocal_centralizer_sum(&self, parts: &[Partition], d: u32, w: usize) -> Result<u64, CountError> {
        let two_d = self.pow(2, u64::from(d));
        // prefix[k] = ∏_{j ≤ k} (2^{dj} − 1) mod p
        let mut prefix = vec![1u64];
        let mut pw = 1u64;
        for j in 1..=w {
            pw = self.mul(&pw, &two_d);
            let next = self.mul(&prefix[j - 1], &self.sub(&pw, &1));
            prefix.push(next);
        }
        let mut total = 0u64;
        for lambda in parts {
            let (e, mult) = centralizer_shape(lambda);
            let mut c = self.pow(two_d, e as u64);
            for m in mult {
                c = self.mul(&c, &prefix[m]);
            }
            let inv = self.inv(&c).ok_or_else(|| {
                CountError::Integrity(format!("C({lambda}, 2^{d}) vanishes modulo {}", self.modulus()))
            })?;
            total = self.add(&total, &inv);
        }
        Ok(total)
    }
}

/// `1 + Σ_{w ≥ 1, wd ≤ N} (Σ_{λ ∈ f, |λ| = w} 1/C(λ, 2^d)) X^{wd}`.
pub fn family_factor_series<D: CountingDomain>(
    domain: &D,
    family: ClassFamily,
    d: u32,
    order: usize,
) -> Result<TruncatedSeries<D>, CountError> {
    let mut series = TruncatedSeries::one(domain.clone(), order);
    for w in 1..=order / d as usize {
        let parts = family.enumerate(w);
        if !parts.is_empty() {
            series.set_coeff(w * d as usize, domain.reciprocal_centralizer_sum(&parts, d, w)?);
        }
    }
    Ok(series)
}

/// Exponent `e_d` of the degree-`d` factor.
pub fn factor_exponent(ring: Ring, d: u32) -> BigUint {
    irreducible_count(2, d, ring == Ring::Mat).expect("d >= 1")
}

/// Partitions of each weight `1..=order` in a family.
#[derive(Debug, Clone)]
pub struct FamilyTable {
    family: ClassFamily,
    per_weight: Vec<Vec<Partition>>,
}

impl FamilyTable {
    pub fn build(family: ClassFamily, order: usize) -> Self {
        let per_weight = (0..=order).map(|w| family.enumerate(w)).collect();
        FamilyTable { family, per_weight }
    }

    pub fn family(&self) -> ClassFamily {
        self.family
    }

    pub fn weight(&self, w: usize) -> &[Partition] {
        &self.per_weight[w]
    }

    pub fn order(&self) -> usize {
        self.per_weight.len() - 1
    }
}

/// Adds the weight-`w` partitions to every factor series `d = 1..=N/w`.
fn accumulate_weight<D: CountingDomain>(
    domain: &D,
    series: &mut [TruncatedSeries<D>],
    parts: &[Partition],
    w: usize,
    order: usize,
) -> Result<(), CountError> {
    if parts.is_empty() {
        return Ok(());
    }
    for d in 1..=order / w {
        let c = domain.reciprocal_centralizer_sum(parts, d as u32, w)?;
        series[d - 1].set_coeff(w * d, c);
    }
    Ok(())
}

fn assemble<D: CountingDomain>(
    domain: &D,
    series: Vec<TruncatedSeries<D>>,
    ring: Ring,
    order: usize,
) -> Result<TruncatedSeries<D>, CountError> {
    let factors: Vec<_> = series
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, factor_exponent(ring, i as u32 + 1)))
        .collect();
    Ok(big_product(domain, &factors, order)?)
}

/// Exact coefficients `c_0..c_N` of `F_C` for a family and ring.
pub fn element_series(family: ClassFamily, ring: Ring, order: usize) -> Result<Vec<BigRational>, CountError> {
    let mut series: Vec<_> = (0..order).map(|_| TruncatedSeries::one(Rationals, order)).collect();
    for w in 1..=order {
        let parts = family.enumerate(w);
        accumulate_weight(&Rationals, &mut series, &parts, w, order)?;
    }
    Ok(assemble(&Rationals, series, ring, order)?.into_coeffs())
}

/// `F_C` modulo one prime, from a prebuilt family table.
pub fn element_series_mod(table: &FamilyTable, ring: Ring, field: PrimeField) -> Result<Vec<u64>, CountError> {
    let order = table.order();
    let mut series: Vec<_> = (0..order).map(|_| TruncatedSeries::one(field, order)).collect();
    for w in 1..=order {
        accumulate_weight(&field, &mut series, table.weight(w), w, order)?;
    }
    Ok(assemble(&field, series, ring, order)?.into_coeffs())
}

/// One row of output: `a(n)`-style element count plus class count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub ring: Ring,
    pub family: &'static str,
    #[serde(serialize_with = "as_decimal")]
    pub element_count: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub class_count: BigUint,
    pub backend: Backend,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

impl CountReport {
    pub const CSV_HEADER: &'static str = "n,ring,family,element_count,class_count";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.n, self.ring, self.family, self.element_count, self.class_count)
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn rational_to_count(c: &BigRational, n: usize) -> Result<BigUint, CountError> {
    let scaled = c * BigRational::from_integer(BigInt::from(gl_order(n, 2)));
    if !scaled.is_integer() {
        return Err(CountError::Integrity(format!("element count for n = {n} is not an integer")));
    }
    scaled
        .to_integer()
        .to_biguint()
        .ok_or_else(|| CountError::Integrity(format!("negative element count for n = {n}")))
}

/// `|C_n|` for `n = 1..=N` plus class counts.
pub fn count_elements(
    family: ClassFamily,
    ring: Ring,
    max_n: usize,
    backend: Backend,
) -> Result<Vec<CountReport>, CountError> {
    let classes = count_classes(family, ring, max_n)?;
    let elements: Vec<BigUint> = match backend {
        Backend::Rational => {
            let coeffs = element_series(family, ring, max_n)?;
            (1..=max_n).map(|n| rational_to_count(&coeffs[n], n)).collect::<Result<_, _>>()?
        }
        Backend::Crt => element_counts_crt(family, ring, max_n)?,
    };
    let reports = elements
        .into_iter()
        .zip(classes)
        .enumerate()
        .map(|(i, (element_count, class_count))| CountReport {
            n: i + 1,
            ring,
            family: family.name(),
            element_count,
            class_count,
            backend,
        })
        .collect::<Vec<_>>();
    for r in &reports {
        if r.element_count > BigUint::one() << (r.n * r.n) {
            return Err(CountError::Integrity(format!("element count for n = {} exceeds 2^(n^2)", r.n)));
        }
    }
    Ok(reports)
}

/// Runs the pipeline modulo each selected prime and reconstructs every
/// `|C_n|` from its residues.
pub fn element_counts_crt(family: ClassFamily, ring: Ring, max_n: usize) -> Result<Vec<BigUint>, CountError> {
    let primes = select_crt_primes_for(max_n, max_n);
    let table = FamilyTable::build(family, max_n);
    let residues: Vec<Vec<u64>> = primes
        .par_iter()
        .map(|&p| {
            let field = PrimeField::new(p);
            let coeffs = element_series_mod(&table, ring, field)?;
            Ok((1..=max_n)
                .map(|n| field.mul(&coeffs[n], &field.from_biguint(&gl_order(n, 2))))
                .collect())
        })
        .collect::<Result<_, CountError>>()?;
    (1..=max_n)
        .map(|n| {
            let r: Vec<u64> = residues.iter().map(|row| row[n - 1]).collect();
            Ok(crt_reconstruct(&r, &primes, &(BigUint::one() << (n * n)))?)
        })
        .collect()
}

/// Coefficients `1..=N` of `G_C = ∏_d (Σ_{λ ∈ f} X^{|λ|d})^{e_d}`.
pub fn count_classes(family: ClassFamily, ring: Ring, max_n: usize) -> Result<Vec<BigUint>, CountError> {
    let sizes: Vec<i64> = (0..=max_n).map(|w| family.enumerate(w).len() as i64).collect();
    let factors: Vec<_> = (1..=max_n)
        .map(|d| {
            let mut c = vec![0i64; max_n + 1];
            for w in 0..=max_n / d {
                c[w * d] = sizes[w];
            }
            (TruncatedSeries::from_i64s(Rationals, &c, max_n), factor_exponent(ring, d as u32))
        })
        .collect();
    let product = big_product(&Rationals, &factors, max_n)?;
    product.coeffs()[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if !c.is_integer() {
                return Err(CountError::Integrity(format!("class count for n = {} is not an integer", i + 1)));
            }
            c.to_integer()
                .to_biguint()
                .ok_or_else(|| CountError::Integrity(format!("negative class count for n = {}", i + 1)))
        })
        .collect()
}

/// Class counts of squares from the closed-form products
/// `∏ (1 − 2z^{2n}) / ((1 − 2z^n)(1 − 2z^{4n}))`, times
/// `∏ (1 − z^{2n}) / (1 + z^{2n−1})` for `GL`.
pub fn euler_product_class_counts(ring: Ring, max_n: usize) -> Vec<BigUint> {
    let n = max_n;
    let binomial = |k: usize, c: i64| {
        let mut v = vec![0i64; n + 1];
        v[0] = 1;
        if k <= n {
            v[k] += c;
        }
        TruncatedSeries::from_i64s(Rationals, &v, n)
    };
    let mut acc = TruncatedSeries::one(Rationals, n);
    for k in 1..=n {
        acc = acc.mul(&binomial(2 * k, -2));
        acc = acc.div(&binomial(k, -2)).expect("unit constant");
        acc = acc.div(&binomial(4 * k, -2)).expect("unit constant");
        if ring == Ring::Gl {
            acc = acc.mul(&binomial(2 * k, -1));
            acc = acc.div(&binomial(2 * k - 1, 1)).expect("unit constant");
        }
    }
    acc.coeffs()[1..]
        .iter()
        .map(|c| {
            assert!(c.is_integer());
            c.to_integer().to_biguint().expect("nonnegative")
        })
        .collect()
}

pub fn to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(q_pochhammer(&rat(3, 7), &rat(2, 1), 0).unwrap(), rat(1, 1));
        assert_eq!(q_pochhammer(&rat(1, 2), &rat(2, 1), 1).unwrap(), rat(1, 2));
        assert_eq!(q_pochhammer(&rat(1, 4), &rat(2, 1), 2).unwrap(), rat(3, 8));
        // (a;q)_{-1} = 1/(a/q; q)_1 = 1/(1 - a/q)
        assert_eq!(q_pochhammer(&rat(1, 1), &rat(2, 1), -1).unwrap(), rat(2, 1));
        assert_eq!(q_pochhammer(&rat(2, 1), &rat(2, 1), -1), Err(CountError::DivisionByZero));
    }

    #[test]
    fn centralizer_examples() {
        let two = rat(2, 1);
        assert_eq!(centralizer_order(&p(&[1]), &two), rat(1, 1));
        assert_eq!(centralizer_order(&p(&[1, 1]), &two), rat(6, 1));
        assert_eq!(centralizer_order(&p(&[2]), &two), rat(2, 1));
        assert_eq!(centralizer_order(&Partition::empty(), &two), rat(1, 1));
    }

    #[test]
    fn integer_centralizer_matches_literal_formula() {
        for w in 0..=10 {
            for lambda in crate::partitions::all_partitions(w) {
                for d in 1..=3u32 {
                    let q = rat(1 << d, 1);
                    let lit = centralizer_order(&lambda, &q);
                    assert!(lit.is_integer());
                    assert_eq!(
                        BigRational::from_integer(centralizer_order_pow2(&lambda, d).into()),
                        lit,
                        "{lambda}, d = {d}"
                    );
                }
            }
        }
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(0, 2), big(1));
        assert_eq!(gl_order(1, 2), big(1));
        assert_eq!(gl_order(2, 2), big(6));
        assert_eq!(gl_order(3, 2), big(168));
        for n in 0..=12 {
            assert_eq!(centralizer_order_pow2(&Partition::ones(n), 1), gl_order(n, 2));
        }
        assert_eq!(gl_order(2, 4), centralizer_order_pow2(&Partition::ones(2), 2));
    }

    #[test]
    fn factor_series_examples() {
        let sep = family_factor_series(&Rationals, ClassFamily::Separable, 1, 4).unwrap();
        assert_eq!(sep.coeffs(), &[rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        let sq = family_factor_series(&Rationals, ClassFamily::Squares, 1, 2).unwrap();
        assert_eq!(sq.coeff(2), &rat(1, 6));
        let all = family_factor_series(&Rationals, ClassFamily::All, 1, 2).unwrap();
        assert_eq!(all.coeff(2), &rat(2, 3));
        let sq2 = family_factor_series(&Rationals, ClassFamily::Squares, 2, 5).unwrap();
        assert_eq!(sq2.coeff(1), &rat(0, 1));
        assert_eq!(sq2.coeff(2), &rat(1, 3));
    }

    #[test]
    fn modular_factor_series_agrees() {
        let field = PrimeField::new(101);
        for f in ClassFamily::ALL_FAMILIES {
            for d in 1..=3 {
                let r = family_factor_series(&Rationals, f, d, 9).unwrap();
                let m = family_factor_series(&field, f, d, 9).unwrap();
                for k in 0..=9 {
                    let c = r.coeff(k);
                    let expect = field.div(
                        &field.from_biguint(&c.numer().to_biguint().unwrap()),
                        &field.from_biguint(&c.denom().to_biguint().unwrap()),
                    );
                    assert_eq!(Some(*m.coeff(k)), expect);
                }
            }
        }
    }

    #[test]
    fn small_element_counts() {
        let mat = count_elements(ClassFamily::Squares, Ring::Mat, 2, Backend::Rational).unwrap();
        assert_eq!(mat[0].element_count, big(2));
        assert_eq!(mat[1].element_count, big(10));
        let gl = count_elements(ClassFamily::Squares, Ring::Gl, 2, Backend::Rational).unwrap();
        assert_eq!(gl[0].element_count, big(1));
        assert_eq!(gl[1].element_count, big(3));
    }

    #[test]
    fn normalization() {
        let mat = count_elements(ClassFamily::All, Ring::Mat, 8, Backend::Rational).unwrap();
        let gl = count_elements(ClassFamily::All, Ring::Gl, 8, Backend::Rational).unwrap();
        for n in 1..=8 {
            assert_eq!(mat[n - 1].element_count, BigUint::one() << (n * n));
            assert_eq!(gl[n - 1].element_count, gl_order(n, 2));
        }
        assert_eq!(mat[1].class_count, big(6));
    }

    #[test]
    fn lemma_product_identity() {
        let order = 40;
        let factors: Vec<_> = (1..=order)
            .map(|d| {
                let mut c = vec![0i64; order + 1];
                c[0] = 1;
                c[d] = -1;
                (TruncatedSeries::from_i64s(Rationals, &c, order), factor_exponent(Ring::Mat, d as u32))
            })
            .collect();
        let prod = big_product(&Rationals, &factors, order).unwrap();
        assert_eq!(prod, TruncatedSeries::from_i64s(Rationals, &[1, -2], order));
    }

    #[test]
    fn class_counts_small() {
        let mat = count_classes(ClassFamily::Squares, Ring::Mat, 6).unwrap();
        assert_eq!(mat, [2u64, 4, 10, 22, 46, 96].map(big).to_vec());
        let gl = count_classes(ClassFamily::Squares, Ring::Gl, 6).unwrap();
        assert_eq!(gl, [1u64, 2, 5, 10, 20, 41].map(big).to_vec());
        assert_eq!(euler_product_class_counts(Ring::Mat, 4), [2u64, 4, 10, 22].map(big).to_vec());
        assert_eq!(euler_product_class_counts(Ring::Gl, 4), [1u64, 2, 5, 10].map(big).to_vec());
    }

    #[test]
    fn crt_backend_small() {
        for family in [ClassFamily::Squares, ClassFamily::All] {
            for ring in [Ring::Mat, Ring::Gl] {
                let a = count_elements(family, ring, 8, Backend::Rational).unwrap();
                let b = count_elements(family, ring, 8, Backend::Crt).unwrap();
                for (x, y) in a.iter().zip(&b) {
                    assert_eq!(x.element_count, y.element_count);
                }
            }
        }
    }

    #[test]
    fn descriptor_basics() {
        let phi2: F2Poly = "X^2+X+1".parse().unwrap();
        let d = ClassDescriptor::new([(F2Poly::X, p(&[2])), (phi2, p(&[1])), (F2Poly::X_PLUS_ONE, Partition::empty())])
            .unwrap();
        assert_eq!(d.dimension(), 4);
        assert_eq!(d.len(), 2);
        assert_eq!(d.to_string(), "{X: (2), X^2+X+1: (1)}");
        assert_eq!(d.standard_representative().unwrap().to_string(), "0100\n0000\n0001\n0011\n");
        assert!(!d.is_invertible());
        assert!(ClassDescriptor::new([(F2Poly::from_bits(0b101), p(&[1]))]).is_err());
    }

    #[test]
    fn report_serialization() {
        let r = &count_elements(ClassFamily::Squares, Ring::Mat, 2, Backend::Rational).unwrap()[1];
        assert_eq!(r.csv_row(), "2,mat,squares,10,4");
        assert_eq!(
            r.json_line(),
            r#"{"n":2,"ring":"mat","family":"squares","element_count":"10","class_count":"4","backend":"rational"}"#
        );
    }
}
