//! Leading constants of the element-count series and the ratio sequences
//! `|c_j − ĉ|^{−1/j}` that locate the next singularity.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::classcount::{element_series, CountError, Ring};
use crate::partitions::ClassFamily;

pub const DEFAULT_TERMS: usize = 70;
pub const DEFAULT_PRECISION_BITS: u32 = 4096;
pub const MIN_ESTIMATE_BITS: u32 = 256;
pub const MIN_GAMMA_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error("precision of {have} bits is below the minimum of {min}")]
    PrecisionTooLow { have: u32, min: u32 },
    #[error("need at least {min} coefficients, got {have}")]
    TooFewTerms { have: usize, min: usize },
    #[error(transparent)]
    Count(#[from] CountError),
}

/// `mantissa · 2^{−bits}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedReal {
    pub mantissa: BigInt,
    pub bits: u32,
}

impl FixedReal {
    /// `⌊x · 2^bits⌋ · 2^{−bits}`.
    pub fn from_rational(x: &BigRational, bits: u32) -> Self {
        let scaled: BigInt = x.numer() << bits as usize;
        FixedReal { mantissa: scaled.div_floor(x.denom()), bits }
    }

    pub fn to_f64(&self) -> f64 {
        let (sign, mag) = (self.mantissa.sign(), self.mantissa.magnitude());
        if mag.is_zero() {
            return 0.0;
        }
        let shift = mag.bits().saturating_sub(64);
        let top = (mag >> shift).to_f64().expect("fits in 64 bits");
        let v = top * (shift as f64 - f64::from(self.bits)).exp2();
        if sign == Sign::Minus {
            -v
        } else {
            v
        }
    }

    /// Truncated decimal expansion with `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.mantissa.is_negative();
        let mag = self.mantissa.magnitude();
        let int = mag >> self.bits as usize;
        let frac = mag - (&int << self.bits as usize);
        let scaled = (frac * num_traits::pow(BigUint::from(10u32), digits)) >> self.bits as usize;
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&int.to_string());
        if digits > 0 {
            s.push('.');
            s.push_str(&format!("{:0>width$}", scaled.to_string(), width = digits));
        }
        s
    }

    /// Decimal places justified by the binary precision.
    pub fn significant_places(&self) -> usize {
        (f64::from(self.bits) * std::f64::consts::LOG10_2).floor() as usize
    }
}

impl fmt::Display for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.significant_places()))
    }
}

/// `log₂ x` for a positive big integer, accurate to double precision.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let b = x.bits();
    let shift = b.saturating_sub(64);
    let top = (x >> shift).to_f64().expect("fits in 64 bits");
    top.log2() + shift as f64
}

fn log2_abs_rational(x: &BigRational) -> f64 {
    log2_biguint(x.numer().magnitude()) - log2_biguint(x.denom().magnitude())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioSeries {
    pub tag: Option<(ClassFamily, Ring)>,
    pub estimate: FixedReal,
    /// `(j, |c_j − estimate|^{−1/j})`, omitting `j` where the difference vanishes.
    pub ratios: Vec<(usize, f64)>,
    pub precision_bits: u32,
}

impl RatioSeries {
    /// `estimate,<decimal>` followed by one `j,ratio` line per entry.
    pub fn to_csv(&self) -> String {
        let mut out = format!("estimate,{}\n", self.estimate);
        for (j, r) in &self.ratios {
            out.push_str(&format!("{j},{r}\n"));
        }
        out
    }
}

/// Exact `c_0..c_J` of the element-count series.
pub fn coefficient_prefix(family: ClassFamily, ring: Ring, terms: usize) -> Result<Vec<BigRational>, AsymptoticsError> {
    if terms < 1 {
        return Err(AsymptoticsError::TooFewTerms { have: terms, min: 1 });
    }
    Ok(element_series(family, ring, terms)?)
}

/// Takes `c_J` (the last coefficient) as the estimate of the limit.
pub fn estimate_constant(coeffs: &[BigRational], precision_bits: u32) -> Result<RatioSeries, AsymptoticsError> {
    if precision_bits < MIN_ESTIMATE_BITS {
        return Err(AsymptoticsError::PrecisionTooLow { have: precision_bits, min: MIN_ESTIMATE_BITS });
    }
    if coeffs.len() < 2 {
        return Err(AsymptoticsError::TooFewTerms { have: coeffs.len(), min: 2 });
    }
    let last = coeffs.len() - 1;
    let estimate = FixedReal::from_rational(&coeffs[last], precision_bits);
    let est_rational = BigRational::new(estimate.mantissa.clone(), BigInt::from(1) << precision_bits as usize);
    let ratios = (1..last)
        .filter_map(|j| {
            let diff = &coeffs[j] - &est_rational;
            (!diff.is_zero()).then(|| (j, (-log2_abs_rational(&diff) / j as f64).exp2()))
        })
        .collect();
    Ok(RatioSeries { tag: None, estimate, ratios, precision_bits })
}

pub fn ratio_series(
    family: ClassFamily,
    ring: Ring,
    terms: usize,
    precision_bits: u32,
) -> Result<RatioSeries, AsymptoticsError> {
    if precision_bits < MIN_ESTIMATE_BITS {
        return Err(AsymptoticsError::PrecisionTooLow { have: precision_bits, min: MIN_ESTIMATE_BITS });
    }
    if terms < 2 {
        return Err(AsymptoticsError::TooFewTerms { have: terms, min: 2 });
    }
    let coeffs = coefficient_prefix(family, ring, terms)?;
    let mut series = estimate_constant(&coeffs, precision_bits)?;
    series.tag = Some((family, ring));
    Ok(series)
}

/// `∏_{k ≥ 1} (1 − 2^{−k})` truncated after `bits + 2` factors, computed with
/// guard bits and returned with `bits` fractional bits.
pub fn gamma2(bits: u32) -> Result<FixedReal, AsymptoticsError> {
    if bits < MIN_GAMMA_BITS {
        return Err(AsymptoticsError::PrecisionTooLow { have: bits, min: MIN_GAMMA_BITS });
    }
    const GUARD: u32 = 32;
    let work = (bits + GUARD) as usize;
    let mut x = BigUint::from(1u32) << work;
    for k in 1..=(bits as usize + 2) {
        let t = &x >> k;
        x -= t;
    }
    Ok(FixedReal { mantissa: BigInt::from(x >> GUARD as usize), bits })
}

/// `count / (γ₂ · 2^{n²})` in double precision.
pub fn normalized_count(count: &BigUint, n: usize, gamma: &FixedReal) -> f64 {
    (log2_biguint(count) - (n * n) as f64).exp2() / gamma.to_f64()
}
