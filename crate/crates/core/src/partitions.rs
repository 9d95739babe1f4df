//! Integer partitions, the squaring map on partitions, and the restricted
//! partition families that drive the class counts.
//!
//! A partition is stored as its list of parts in non-increasing order.
//! Multiplicity vectors and conjugates are computed on demand; the weights
//! handled here stay below a few hundred.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive and non-increasing, got {0:?}")]
    InvalidParts(Vec<usize>),
    #[error("{0} is not in the image of the squaring map")]
    NotASquareClass(Partition),
}

/// A non-increasing sequence of positive integers. The empty sequence is the
/// empty partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(PartitionError::InvalidParts(parts))
        }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `1^m`.
    pub fn ones(m: usize) -> Self {
        Partition { parts: vec![1; m] }
    }

    /// Builds the partition with `m_i = mult[i - 1]`.
    pub fn from_multiplicities(mult: &[usize]) -> Self {
        let mut parts = Vec::with_capacity(mult.iter().sum());
        for (i, &m) in mult.iter().enumerate().rev() {
            parts.extend(std::iter::repeat(i + 1).take(m));
        }
        Partition { parts }
    }

    /// Caller guarantees `parts` is non-increasing and positive.
    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn largest_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ'_j = #{ i : λ_i ≥ j }`.
    pub fn conjugate(&self) -> Partition {
        let mut conj = vec![0usize; self.largest_part()];
        for &p in &self.parts {
            for c in conj.iter_mut().take(p) {
                *c += 1;
            }
        }
        Partition { parts: conj }
    }

    /// `(m_1, …, m_{λ_1})` with `m_i` the number of parts equal to `i`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut mult = vec![0usize; self.largest_part()];
        for &p in &self.parts {
            mult[p - 1] += 1;
        }
        mult
    }

    /// `m_i`, zero for `i` outside `1..=λ_1`.
    pub fn multiplicity(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// The squaring map: `m_i(Δλ) = 2·m_{2i}(λ) + m_{2i−1}(λ) + m_{2i+1}(λ)`.
    ///
    /// Each part `r` splits into `⌈r/2⌉` and `⌊r/2⌋` (dropping a zero).
    pub fn delta(&self) -> Partition {
        let mut parts = Vec::with_capacity(2 * self.parts.len());
        for &r in &self.parts {
            parts.push(r.div_ceil(2));
            if r / 2 > 0 {
                parts.push(r / 2);
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// True iff every odd part of the conjugate occurs at most once.
    pub fn is_in_delta_image(&self) -> bool {
        odd_parts_distinct(self.conjugate().parts())
    }

    /// The canonical preimage under [`Partition::delta`]: odd multiplicities
    /// `b_{2i−1} ≡ μ'_i (mod 2)` in `{0, 1}` and even multiplicities
    /// `b_{2i} = (m_i(μ) − b_{2i−1} − b_{2i+1}) / 2`.
    pub fn delta_preimage(&self) -> Result<Partition, PartitionError> {
        if !self.is_in_delta_image() {
            return Err(PartitionError::NotASquareClass(self.clone()));
        }
        let conj = self.conjugate();
        let mu_mult = self.multiplicities();
        let top = conj.len();
        // odd[i - 1] = b_{2i-1}
        let odd: Vec<usize> = (0..=top).map(|i| conj.parts.get(i).map_or(0, |c| c % 2)).collect();
        let mut mult = vec![0usize; 2 * top + 1];
        for i in 1..=top {
            mult[2 * i - 2] = odd[i - 1];
            let m = mu_mult.get(i - 1).copied().unwrap_or(0);
            let even = m - odd[i - 1] - odd[i];
            debug_assert!(even % 2 == 0);
            mult[2 * i - 1] = even / 2;
        }
        Ok(Partition::from_multiplicities(&mult))
    }
}

fn odd_parts_distinct(parts: &[usize]) -> bool {
    parts.windows(2).all(|w| !(w[0] == w[1] && w[0] % 2 == 1))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A set of partitions, always containing `∅`, that selects a
/// partition-uniform union of conjugacy classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassFamily {
    /// Classes of squares: `m_{2i−1}(λ') ≤ 1` for all `i`.
    Squares,
    /// Minimal polynomial squarefree: `λ = 1^m`.
    Semisimple,
    /// Characteristic polynomial squarefree: `λ ∈ {∅, (1)}`.
    Separable,
    All,
}

impl ClassFamily {
    pub const ALL_FAMILIES: [ClassFamily; 4] =
        [ClassFamily::Squares, ClassFamily::Semisimple, ClassFamily::Separable, ClassFamily::All];

    pub fn name(self) -> &'static str {
        match self {
            ClassFamily::Squares => "squares",
            ClassFamily::Semisimple => "semisimple",
            ClassFamily::Separable => "separable",
            ClassFamily::All => "all",
        }
    }

    pub fn contains(self, lambda: &Partition) -> bool {
        match self {
            ClassFamily::Squares => lambda.is_in_delta_image(),
            ClassFamily::Semisimple => lambda.parts.iter().all(|&p| p == 1),
            ClassFamily::Separable => matches!(lambda.parts.as_slice(), [] | [1]),
            ClassFamily::All => true,
        }
    }

    /// All members of weight `w`, each exactly once.
    ///
    /// For `Squares` this walks the conjugate side (partitions whose odd parts
    /// are distinct) by increasing largest part, then by increasing
    /// multiplicity of that part, then recursively on the remainder, and
    /// returns the conjugates in that order. `All` uses the same
    /// largest-part recursion without the odd-part restriction.
    pub fn enumerate(self, w: usize) -> Vec<Partition> {
        if w == 0 {
            return vec![Partition::empty()];
        }
        match self {
            ClassFamily::Squares => {
                let mut out = Vec::new();
                let mut stack = Vec::new();
                for k in 1..=w {
                    largest_part_walk(w, k, true, &mut stack, &mut |p| {
                        out.push(Partition::from_sorted_unchecked(p.to_vec()).conjugate())
                    });
                }
                out
            }
            ClassFamily::Semisimple => vec![Partition::ones(w)],
            ClassFamily::Separable => {
                if w == 1 {
                    vec![Partition::ones(1)]
                } else {
                    Vec::new()
                }
            }
            ClassFamily::All => {
                let mut out = Vec::new();
                let mut stack = Vec::new();
                for k in 1..=w {
                    largest_part_walk(w, k, false, &mut stack, &mut |p| {
                        out.push(Partition::from_sorted_unchecked(p.to_vec()))
                    });
                }
                out
            }
        }
    }
}

impl fmt::Display for ClassFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ClassFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClassFamily::ALL_FAMILIES
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// Partitions of `n` with largest part exactly `k`; with `odd_distinct` the
/// odd parts occur at most once.
fn largest_part_walk(
    n: usize,
    k: usize,
    odd_distinct: bool,
    stack: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if k == 0 {
        if n == 0 {
            emit(stack);
        }
        return;
    }
    if n < k {
        return;
    }
    let max_m = if odd_distinct && k % 2 == 1 { 1 } else { n / k };
    for m in 1..=max_m {
        let base = stack.len();
        stack.extend(std::iter::repeat(k).take(m));
        let rest = n - m * k;
        if rest == 0 {
            emit(stack);
        } else {
            for j in 1..k.min(rest + 1) {
                largest_part_walk(rest, j, odd_distinct, stack, emit);
            }
        }
        stack.truncate(base);
    }
}

/// Every partition of `w`, in the same order as `ClassFamily::All.enumerate`.
pub fn all_partitions(w: usize) -> Vec<Partition> {
    ClassFamily::All.enumerate(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(p(&[3, 1, 1]).multiplicities(), vec![2, 0, 1]);
        assert_eq!(Partition::ones(5).multiplicities(), vec![5]);
        assert!(Partition::empty().multiplicities().is_empty());
        assert_eq!(p(&[3, 1, 1]).multiplicity(2), 0);
        assert_eq!(p(&[3, 1, 1]).multiplicity(7), 0);
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(p(&[1]).delta(), p(&[1]));
        assert_eq!(p(&[2]).delta(), p(&[1, 1]));
        assert_eq!(p(&[3]).delta(), p(&[2, 1]));
        assert_eq!(Partition::empty().delta(), Partition::empty());
    }

    #[test]
    fn delta_matches_multiplicity_formula() {
        for w in 0..=14 {
            for lambda in all_partitions(w) {
                let mu = lambda.delta();
                let top = lambda.largest_part() + 2;
                for i in 1..=top {
                    let expect = 2 * lambda.multiplicity(2 * i)
                        + lambda.multiplicity(2 * i - 1)
                        + lambda.multiplicity(2 * i + 1);
                    assert_eq!(mu.multiplicity(i), expect, "{lambda} -> {mu}, i = {i}");
                }
            }
        }
    }

    #[test]
    fn image_examples() {
        assert!(p(&[1, 1]).is_in_delta_image());
        assert!(!p(&[2]).is_in_delta_image());
        assert!(Partition::empty().is_in_delta_image());
    }

    #[test]
    fn preimage_examples() {
        assert_eq!(p(&[1, 1]).delta_preimage().unwrap(), p(&[2]));
        assert_eq!(p(&[2, 1]).delta_preimage().unwrap(), p(&[3]));
        assert_eq!(p(&[1]).delta_preimage().unwrap(), p(&[1]));
        assert_eq!(
            p(&[2]).delta_preimage(),
            Err(PartitionError::NotASquareClass(p(&[2])))
        );
    }

    #[test]
    fn image_test_matches_brute_force() {
        for w in 0..=15 {
            let image: HashSet<Partition> = all_partitions(w).iter().map(Partition::delta).collect();
            for mu in all_partitions(w) {
                assert_eq!(mu.is_in_delta_image(), image.contains(&mu), "{mu}");
                if mu.is_in_delta_image() {
                    assert_eq!(mu.delta_preimage().unwrap().delta(), mu);
                }
            }
        }
    }

    #[test]
    fn delta_lands_in_image() {
        for w in 0..=20 {
            for lambda in all_partitions(w) {
                let mu = lambda.delta();
                assert_eq!(mu.weight(), w);
                assert!(mu.is_in_delta_image());
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=12).map(|w| all_partitions(w).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn family_examples() {
        let sq3: HashSet<_> = ClassFamily::Squares.enumerate(3).into_iter().collect();
        assert_eq!(sq3, [p(&[2, 1]), p(&[1, 1, 1])].into_iter().collect());
        assert!(ClassFamily::Separable.enumerate(5).is_empty());
        assert_eq!(ClassFamily::Separable.enumerate(1), vec![p(&[1])]);
        for f in ClassFamily::ALL_FAMILIES {
            assert_eq!(f.enumerate(0), vec![Partition::empty()]);
            assert!(f.contains(&Partition::empty()));
        }
    }

    #[test]
    fn a006950_prefix() {
        let counts: Vec<usize> = (1..=16).map(|w| ClassFamily::Squares.enumerate(w).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 4, 5, 7, 10, 13, 16, 21, 28, 35, 43, 55, 70]);
    }

    #[test]
    fn enumerators_agree_with_membership() {
        for w in 0..=16 {
            let all = all_partitions(w);
            for f in ClassFamily::ALL_FAMILIES {
                let listed = f.enumerate(w);
                let set: HashSet<_> = listed.iter().cloned().collect();
                assert_eq!(set.len(), listed.len(), "{f} duplicates at {w}");
                let filtered: HashSet<_> = all.iter().filter(|l| f.contains(l)).cloned().collect();
                assert_eq!(set, filtered, "{f} at weight {w}");
            }
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in ClassFamily::ALL_FAMILIES {
            assert_eq!(f.name().parse::<ClassFamily>().unwrap(), f);
        }
        assert!("cubes".parse::<ClassFamily>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_partition() -> impl Strategy<Value = Partition> {
            prop::collection::vec(1usize..12, 0..10).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                Partition::new(v).unwrap()
            })
        }

        proptest! {
            #[test]
            fn conjugation_is_an_involution(l in arb_partition()) {
                let c = l.conjugate();
                prop_assert_eq!(c.weight(), l.weight());
                prop_assert_eq!(c.conjugate(), l.clone());
                let m = l.multiplicities();
                for i in 1..=l.largest_part() {
                    let ci = c.parts().get(i - 1).copied().unwrap_or(0);
                    let cn = c.parts().get(i).copied().unwrap_or(0);
                    prop_assert_eq!(m[i - 1], ci - cn);
                }
            }

            #[test]
            fn preimage_inverts_delta(l in arb_partition()) {
                let mu = l.delta();
                prop_assert_eq!(mu.delta_preimage().unwrap().delta(), mu);
            }
        }
    }
}
