//! Dense GF(2) matrices packed one row per `u64`, and the exhaustive
//! Gray-code census of squares.
//!
//! Entry `(i, j)` of a [`BitMatrix`] is bit `j` of `rows[i]`. The census works
//! on a second, single-word encoding for `n ≤ 8`: entry `(i, j)` is bit
//! `n·i + j` of one `u64`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const MAX_DIM: usize = 64;

/// Largest census size that runs without the long-run override.
pub const CENSUS_DEFAULT_MAX: usize = 5;
/// Largest census size that runs at all (2^36 steps, two 8 GiB tables).
pub const CENSUS_LONG_MAX: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    TooLarge(usize),
    #[error("census for n = {0} needs the long-run override")]
    CensusNeedsOverride(usize),
    #[error("census for n = {0} is out of range (supported: 1..={CENSUS_LONG_MAX})")]
    CensusOutOfRange(usize),
    #[error("malformed matrix text: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<u64>,
}

#[inline]
fn row_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl BitMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        BitMatrix { n, rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<Self, LinalgError> {
        if n > MAX_DIM {
            return Err(LinalgError::TooLarge(n));
        }
        if rows.len() != n || rows.iter().any(|r| r & !row_mask(n) != 0) {
            return Err(LinalgError::Parse(format!("{n} rows of width {n} expected")));
        }
        Ok(BitMatrix { n, rows })
    }

    /// Decodes the single-word layout (bit `n·i + j` is entry `(i, j)`).
    pub fn from_packed(n: usize, word: u64) -> Self {
        assert!(n * n <= 64);
        let mask = row_mask(n);
        let rows = (0..n).map(|i| (word >> (n * i)) & mask).collect();
        BitMatrix { n, rows }
    }

    pub fn to_packed(&self) -> u64 {
        assert!(self.n * self.n <= 64);
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | (r << (self.n * i)))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        self.check_dim(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect();
        Ok(BitMatrix { n: self.n, rows })
    }

    pub fn multiply(&self, other: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut bits = v;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            out ^= self.rows[k];
            bits &= bits - 1;
        }
        out
    }

    pub(crate) fn mul_unchecked(&self, other: &BitMatrix) -> BitMatrix {
        let rows = self.rows.iter().map(|&r| other.apply_row(r)).collect();
        BitMatrix { n: self.n, rows }
    }

    pub fn square(&self) -> BitMatrix {
        self.mul_unchecked(self)
    }

    pub fn pow(&self, mut e: u64) -> BitMatrix {
        let mut base = self.clone();
        let mut acc = BitMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zero(self.n);
        for (i, &r) in self.rows.iter().enumerate() {
            let mut bits = r;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                t.rows[j] |= 1 << i;
                bits &= bits - 1;
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.rows.clone())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(BitMatrix { n, rows: inv })
    }

    /// Block-diagonal sum of the given square blocks, in order.
    pub fn direct_sum<'a>(blocks: impl IntoIterator<Item = &'a BitMatrix>) -> BitMatrix {
        let blocks: Vec<&BitMatrix> = blocks.into_iter().collect();
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = BitMatrix::zero(n);
        let mut offset = 0;
        for b in blocks {
            for (i, &r) in b.rows.iter().enumerate() {
                m.rows[offset + i] = r << offset;
            }
            offset += b.n;
        }
        m
    }

    /// Basis of `{ v : v·self = 0 }` as row vectors.
    pub fn left_kernel(&self) -> Vec<u64> {
        // Reduce the augmented rows [self | I]; combinations that vanish on
        // the left half span the kernel.
        let n = self.n;
        let mut aug: Vec<(u64, u64)> = self.rows.iter().enumerate().map(|(i, &r)| (r, 1u64 << i)).collect();
        let mut pivot_row = 0;
        for col in 0..n {
            if let Some(p) = (pivot_row..n).find(|&r| aug[r].0 >> col & 1 == 1) {
                aug.swap(pivot_row, p);
                let (pr, pc) = aug[pivot_row];
                for (r, entry) in aug.iter_mut().enumerate() {
                    if r != pivot_row && entry.0 >> col & 1 == 1 {
                        entry.0 ^= pr;
                        entry.1 ^= pc;
                    }
                }
                pivot_row += 1;
            }
        }
        aug[pivot_row..].iter().map(|&(_, c)| c).collect()
    }

    fn check_dim(&self, other: &BitMatrix) -> Result<(), LinalgError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch(self.n, other.n))
        }
    }
}

pub(crate) fn rank_of_rows(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let r = rows[i];
        if r == 0 {
            continue;
        }
        rank += 1;
        let low = r & r.wrapping_neg();
        for other in rows.iter_mut().skip(i + 1) {
            if *other & low != 0 {
                *other ^= r;
            }
        }
    }
    rank
}

/// Renders the matrix text format: `n` lines of `n` characters in `{0,1}`,
/// row-major, each newline-terminated.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &r in &self.rows {
            for j in 0..self.n {
                f.write_str(if r >> j & 1 == 1 { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{})\n{}", self.n, self.n, self)
    }
}

impl FromStr for BitMatrix {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lines: Vec<&str> = s.lines().map(|l| l.trim_end_matches('\r')).collect();
        let lines: Vec<&str> = match lines.iter().rposition(|l| !l.is_empty()) {
            Some(last) => lines[..=last].to_vec(),
            None => Vec::new(),
        };
        let n = lines.len();
        if n == 0 {
            return Err(LinalgError::Parse("empty matrix".into()));
        }
        if n > MAX_DIM {
            return Err(LinalgError::TooLarge(n));
        }
        let mut rows = Vec::with_capacity(n);
        for (i, line) in lines.iter().enumerate() {
            if line.chars().count() != n {
                return Err(LinalgError::Parse(format!(
                    "line {} has {} characters, expected {n}",
                    i + 1,
                    line.chars().count()
                )));
            }
            let mut r = 0u64;
            for (j, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => r |= 1 << j,
                    other => {
                        return Err(LinalgError::Parse(format!("unexpected character {other:?} on line {}", i + 1)))
                    }
                }
            }
            rows.push(r);
        }
        Ok(BitMatrix { n, rows })
    }
}

// ---------------------------------------------------------------------------
// Single-word kernels for the census.

/// Masks for the single-word layout: the low row and the first column.
#[derive(Debug, Clone, Copy)]
pub struct PackedMasks {
    pub row: u64,
    pub col: u64,
}

impl PackedMasks {
    pub fn new(n: usize) -> Self {
        assert!((1..=8).contains(&n));
        let row = (1u64 << n) - 1;
        let col = (0..n).fold(0u64, |acc, t| acc | 1 << (n * t));
        PackedMasks { row, col }
    }
}

pub fn packed_multiply(a: u64, b: u64, n: usize) -> u64 {
    let rm = (1u64 << n) - 1;
    let mut out = 0u64;
    for i in 0..n {
        let mut ai = (a >> (n * i)) & rm;
        let mut acc = 0u64;
        while ai != 0 {
            let k = ai.trailing_zeros() as usize;
            acc ^= (b >> (n * k)) & rm;
            ai &= ai - 1;
        }
        out |= acc << (n * i);
    }
    out
}

pub fn packed_is_invertible(a: u64, n: usize) -> bool {
    let rm = (1u64 << n) - 1;
    let mut rows = [0u64; 8];
    for (i, r) in rows.iter_mut().enumerate().take(n) {
        *r = (a >> (n * i)) & rm;
    }
    rank_small(&mut rows[..n]) == n
}

fn rank_small(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let r = rows[i];
        if r == 0 {
            continue;
        }
        rank += 1;
        let low = r & r.wrapping_neg();
        for other in rows[i + 1..].iter_mut() {
            if *other & low != 0 {
                *other ^= r;
            }
        }
    }
    rank
}

/// Walks every `n×n` matrix in binary-reflected Gray-code order, keeping the
/// square up to date with one row move, one column move and at most three
/// XORs per step.
///
/// Yields `(A, A²)` in the single-word layout, starting with `(0, 0)`.
#[derive(Debug, Clone)]
pub struct GrayWalk {
    n: usize,
    masks: PackedMasks,
    step: u64,
    total: u64,
    a: u64,
    b: u64,
}

impl GrayWalk {
    pub fn new(n: usize) -> Self {
        assert!((1..=8).contains(&n) && n * n < 64);
        GrayWalk { n, masks: PackedMasks::new(n), step: 0, total: 1u64 << (n * n), a: 0, b: 0 }
    }

    /// `A ← A + E_{ij}` with `B ← B + E_{ij}A + AE_{ij} (+ E_{ij} if i = j)`.
    #[inline]
    fn flip(&mut self, k: usize) {
        let n = self.n;
        let (i, j) = (k / n, k % n);
        // E_{ij}A: row i becomes row j of A. AE_{ij}: column j becomes column i of A.
        self.b ^= ((self.a >> (n * j)) & self.masks.row) << (n * i);
        self.b ^= ((self.a >> i) & self.masks.col) << j;
        let e = 1u64 << k;
        if i == j {
            self.b ^= e;
        }
        self.a ^= e;
    }
}

impl Iterator for GrayWalk {
    type Item = (u64, u64);

    #[inline]
    fn next(&mut self) -> Option<(u64, u64)> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            self.flip(self.step.trailing_zeros() as usize);
        }
        self.step += 1;
        Some((self.a, self.b))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

/// Flat occurrence bitmap over `2^{n²}` matrices.
struct OccurrenceTable {
    words: Vec<u64>,
}

impl OccurrenceTable {
    fn new(bits: u64) -> Self {
        OccurrenceTable { words: vec![0; bits.div_ceil(64) as usize] }
    }

    #[inline]
    fn set(&mut self, index: u64) {
        self.words[(index >> 6) as usize] |= 1 << (index & 63);
    }

    fn count(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }
}

/// Distinct squares over all matrices and over invertible matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    pub squares: u64,
    pub invertible_squares: u64,
}

fn check_census_size(n: usize, allow_long: bool) -> Result<(), LinalgError> {
    match n {
        1..=CENSUS_DEFAULT_MAX => Ok(()),
        CENSUS_LONG_MAX if allow_long => Ok(()),
        CENSUS_LONG_MAX => Err(LinalgError::CensusNeedsOverride(n)),
        _ => Err(LinalgError::CensusOutOfRange(n)),
    }
}

/// One Gray-code sweep tallying both censuses.
pub fn gray_code_census_both(n: usize, allow_long: bool) -> Result<Census, LinalgError> {
    check_census_size(n, allow_long)?;
    let size = 1u64 << (n * n);
    let mut all = OccurrenceTable::new(size);
    let mut invertible = OccurrenceTable::new(size);
    for (a, b) in GrayWalk::new(n) {
        all.set(b);
        if packed_is_invertible(a, n) {
            invertible.set(b);
        }
    }
    Ok(Census { squares: all.count(), invertible_squares: invertible.count() })
}

/// Number of distinct `A²` as `A` ranges over all `n×n` matrices, or over
/// invertible ones.
pub fn gray_code_census(n: usize, invertible_only: bool, allow_long: bool) -> Result<u64, LinalgError> {
    check_census_size(n, allow_long)?;
    if invertible_only {
        return Ok(gray_code_census_both(n, allow_long)?.invertible_squares);
    }
    let mut table = OccurrenceTable::new(1u64 << (n * n));
    for (_, b) in GrayWalk::new(n) {
        table.set(b);
    }
    Ok(table.count())
}
