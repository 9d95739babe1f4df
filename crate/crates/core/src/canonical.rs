//! Rational canonical form, square detection and explicit square roots.
//!
//! Matrices act on row vectors (`v ↦ vA`). For each irreducible factor `φ`
//! of the characteristic polynomial the partition `Λ(φ)` is read off the
//! kernel dimensions of `φ(A)^k`; the transform comes from a cyclic
//! decomposition of each `φ`-primary component.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::classcount::ClassDescriptor;
use crate::f2linalg::BitMatrix;
use crate::f2poly::F2Poly;
use crate::partitions::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("not a square: {partition} at {phi} is not in the image of the squaring map")]
    NotSquare { phi: F2Poly, partition: Partition },
}

/// `A = transform · standard · transform⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RcfDecomposition {
    pub descriptor: ClassDescriptor,
    pub standard: BitMatrix,
    pub transform: BitMatrix,
}

/// Row-echelon span keyed by leading bit.
#[derive(Clone)]
struct Span {
    pivots: [u64; 64],
    dim: usize,
}

impl Span {
    fn new() -> Self {
        Span { pivots: [0; 64], dim: 0 }
    }

    fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let b = self.pivots[63 - v.leading_zeros() as usize];
            if b == 0 {
                break;
            }
            v ^= b;
        }
        v
    }

    fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.pivots[63 - r.leading_zeros() as usize] = r;
        self.dim += 1;
        true
    }
}

/// Characteristic polynomial as a product of the relation polynomials of
/// successive Krylov chains, each taken modulo the span of the earlier ones.
pub fn characteristic_polynomial(a: &BitMatrix) -> F2Poly {
    let n = a.dim();
    let mut span = Span::new();
    let mut result = F2Poly::ONE;
    let mut next_unit = 0;
    while span.dim < n {
        let start = loop {
            let e = 1u64 << next_unit;
            next_unit += 1;
            if !span.contains(e) {
                break e;
            }
        };
        // tags[p]: which chain vectors make up the pivot row p, modulo earlier chains
        let mut tags = [0u128; 64];
        let mut v = start;
        let mut k = 0;
        loop {
            let mut r = v;
            let mut tag = 1u128 << k;
            while r != 0 {
                let p = 63 - r.leading_zeros() as usize;
                if span.pivots[p] == 0 {
                    break;
                }
                r ^= span.pivots[p];
                tag ^= tags[p];
            }
            if r == 0 {
                result = result.mul(F2Poly::from_bits(tag));
                break;
            }
            let p = 63 - r.leading_zeros() as usize;
            span.pivots[p] = r;
            span.dim += 1;
            tags[p] = tag;
            k += 1;
            v = a.apply_row(v);
        }
    }
    result
}

/// `p(A)` by Horner's rule.
pub fn evaluate(a: &BitMatrix, p: F2Poly) -> BitMatrix {
    let n = a.dim();
    let id = BitMatrix::identity(n);
    let mut acc = BitMatrix::zero(n);
    if let Some(d) = p.degree() {
        for i in (0..=d).rev() {
            acc = acc.mul_unchecked(a);
            if p.coeff(i) {
                acc = acc.add(&id).expect("same dimension");
            }
        }
    }
    acc
}

struct Primary {
    phi: F2Poly,
    degree: usize,
    n_phi: BitMatrix,
    /// `kernels[k]` is a basis of the left kernel of `φ(A)^k`.
    kernels: Vec<Vec<u64>>,
    partition: Partition,
}

fn primary_components(a: &BitMatrix) -> Vec<Primary> {
    let n = a.dim();
    let factors = characteristic_polynomial(a).factor().expect("characteristic polynomial is nonzero");
    factors
        .into_iter()
        .map(|(phi, mult)| {
            let d = phi.degree().expect("irreducible") as usize;
            let n_phi = evaluate(a, phi);
            let target = d * mult as usize;
            let mut kernels: Vec<Vec<u64>> = vec![Vec::new()];
            let mut power = BitMatrix::identity(n);
            while kernels.last().unwrap().len() < target {
                power = power.mul_unchecked(&n_phi);
                let k = power.left_kernel();
                assert!(k.len() > kernels.last().unwrap().len(), "kernel chain stalled below the primary dimension");
                kernels.push(k);
            }
            let conj: Vec<usize> = kernels.windows(2).map(|w| (w[1].len() - w[0].len()) / d).collect();
            let partition = Partition::new(conj).expect("kernel jumps are non-increasing").conjugate();
            Primary { phi, degree: d, n_phi, kernels, partition }
        })
        .collect()
}

/// Similarity class of `A`.
pub fn class_descriptor(a: &BitMatrix) -> ClassDescriptor {
    ClassDescriptor::from_map_unchecked(primary_components(a).into_iter().map(|p| (p.phi, p.partition)).collect())
}

pub fn rcf(a: &BitMatrix) -> RcfDecomposition {
    let n = a.dim();
    let components = primary_components(a);
    let mut basis = Vec::with_capacity(n);
    for comp in &components {
        let d = comp.degree;
        let top = comp.kernels.len() - 1;
        let mut generators = Vec::new();
        for k in (1..=top).rev() {
            let layer = &comp.kernels[k];
            let mut s = Span::new();
            for &v in &comp.kernels[k - 1] {
                s.insert(v);
            }
            if k < top {
                for &v in &comp.kernels[k + 1] {
                    s.insert(comp.n_phi.apply_row(v));
                }
            }
            for &w in layer {
                if s.dim == layer.len() {
                    break;
                }
                if s.contains(w) {
                    continue;
                }
                let mut x = w;
                for _ in 0..d {
                    s.insert(x);
                    x = a.apply_row(x);
                }
                generators.push((w, k));
            }
        }
        for (w, k) in generators {
            let mut x = w;
            for _ in 0..d * k {
                basis.push(x);
                x = a.apply_row(x);
            }
        }
    }
    let descriptor =
        ClassDescriptor::from_map_unchecked(components.into_iter().map(|p| (p.phi, p.partition)).collect());
    let standard = descriptor.standard_representative().expect("blocks fit the input dimension");
    let p = BitMatrix::from_rows(n, basis).expect("one basis row per dimension");
    let transform = p.inverse().expect("cyclic generators span the whole space");
    RcfDecomposition { descriptor, standard, transform }
}

/// `Λ ↦ Δ ∘ Λ`: the class of `A²` from the class of `A`.
pub fn square_class(descriptor: &ClassDescriptor) -> ClassDescriptor {
    ClassDescriptor::from_map_unchecked(descriptor.iter().map(|(phi, l)| (*phi, l.delta())).collect())
}

/// First `(φ, Λ(φ))` outside the image of `Δ`, if any.
pub fn square_witness(descriptor: &ClassDescriptor) -> Option<(F2Poly, Partition)> {
    descriptor.iter().find(|(_, l)| !l.is_in_delta_image()).map(|(phi, l)| (*phi, l.clone()))
}

pub fn is_square(a: &BitMatrix) -> bool {
    square_witness(&class_descriptor(a)).is_none()
}

/// The root induced by the canonical `Δ`-preimage of each `Λ(φ)`.
pub fn sqrt(a: &BitMatrix) -> Result<BitMatrix, CanonicalError> {
    let dec = rcf(a);
    let mut pre = BTreeMap::new();
    for (phi, l) in dec.descriptor.iter() {
        let root = l
            .delta_preimage()
            .map_err(|_| CanonicalError::NotSquare { phi: *phi, partition: l.clone() })?;
        pre.insert(*phi, root);
    }
    let s = ClassDescriptor::from_map_unchecked(pre)
        .standard_representative()
        .expect("same dimension as the input");
    let squared = rcf(&s.square());
    debug_assert_eq!(squared.descriptor, dec.descriptor);
    let v_inv = squared.transform.inverse().expect("transform is invertible");
    let conj = dec.transform.mul_unchecked(&v_inv);
    let conj_inv = conj.inverse().expect("transform is invertible");
    Ok(conj.mul_unchecked(&s).mul_unchecked(&conj_inv))
}

/// Monic irreducibles of degree at most `max_degree`, in ascending order.
pub fn irreducibles_up_to(max_degree: u32) -> Vec<F2Poly> {
    (2u128..1 << (max_degree + 1)).map(F2Poly::from_bits).filter(|p| p.is_irreducible()).collect()
}

/// Every similarity class of `n × n` matrices.
pub fn descriptors_of_dimension(n: usize) -> Vec<ClassDescriptor> {
    fn rec(
        irr: &[F2Poly],
        start: usize,
        remaining: usize,
        current: &mut Vec<(F2Poly, Partition)>,
        out: &mut Vec<ClassDescriptor>,
    ) {
        if remaining == 0 {
            out.push(ClassDescriptor::from_map_unchecked(current.iter().cloned().collect()));
            return;
        }
        for i in start..irr.len() {
            let d = irr[i].degree().unwrap() as usize;
            for w in 1..=remaining / d {
                for l in crate::partitions::all_partitions(w) {
                    current.push((irr[i], l));
                    rec(irr, i + 1, remaining - w * d, current, out);
                    current.pop();
                }
            }
        }
    }
    let irr = irreducibles_up_to(n as u32);
    let mut out = Vec::new();
    rec(&irr, 0, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2linalg::packed_multiply;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn desc(entries: &[(&str, &[usize])]) -> ClassDescriptor {
        ClassDescriptor::new(entries.iter().map(|(phi, l)| (phi.parse().unwrap(), p(l)))).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> BitMatrix {
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        BitMatrix::from_rows(n, (0..n).map(|_| rng.gen::<u64>() & mask).collect()).unwrap()
    }

    fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> BitMatrix {
        loop {
            let m = random_matrix(rng, n);
            if m.is_invertible() {
                return m;
            }
        }
    }

    fn check_decomposition(a: &BitMatrix) -> RcfDecomposition {
        let dec = rcf(a);
        let u = &dec.transform;
        let rebuilt = u.mul_unchecked(&dec.standard).mul_unchecked(&u.inverse().unwrap());
        assert_eq!(&rebuilt, a);
        assert_eq!(dec.descriptor.dimension(), a.dim());
        dec
    }

    #[test]
    fn examples() {
        for n in 1..=5 {
            assert_eq!(class_descriptor(&BitMatrix::identity(n)), desc(&[("X+1", &vec![1; n])]));
            assert_eq!(class_descriptor(&BitMatrix::zero(n)), desc(&[("X", &vec![1; n])]));
        }
        let m: BitMatrix = "01\n11\n".parse().unwrap();
        assert_eq!(class_descriptor(&m), desc(&[("X^2+X+1", &[1])]));
        let shift: BitMatrix = "01\n00\n".parse().unwrap();
        assert!(!is_square(&shift));
        assert_eq!(sqrt(&shift), Err(CanonicalError::NotSquare { phi: F2Poly::X, partition: p(&[2]) }));
        let diag: BitMatrix = "100\n000\n001\n".parse().unwrap();
        assert!(is_square(&diag));
        assert!(is_square(&BitMatrix::identity(4)));
    }

    #[test]
    fn square_class_examples() {
        assert_eq!(square_class(&desc(&[("X", &[2])])), desc(&[("X", &[1, 1])]));
        let id = desc(&[("X+1", &[1, 1, 1])]);
        assert_eq!(square_class(&id), id);
        let phi2_cubed = desc(&[("X^2+X+1", &[3])]);
        let m = phi2_cubed.standard_representative().unwrap();
        assert_eq!(class_descriptor(&m.square()), desc(&[("X^2+X+1", &[2, 1])]));
        assert_eq!(square_class(&phi2_cubed), desc(&[("X^2+X+1", &[2, 1])]));
    }

    #[test]
    fn charpoly_of_companions() {
        for bits in 2u128..256 {
            let psi = F2Poly::from_bits(bits);
            let m = crate::f2poly::companion_of(psi);
            assert_eq!(characteristic_polynomial(&m), psi);
        }
    }

    #[test]
    fn sqrt_of_zero_square_class() {
        let a = BitMatrix::zero(2);
        let b = sqrt(&a).unwrap();
        assert_eq!(b.square(), a);
        assert_eq!(class_descriptor(&b), desc(&[("X", &[2])]));
        let id = BitMatrix::identity(3);
        assert_eq!(sqrt(&id).unwrap().square(), id);
    }

    #[test]
    fn round_trip_all_descriptors() {
        use crate::classcount::{count_classes, Ring};
        use crate::partitions::ClassFamily;
        let expected_counts = count_classes(ClassFamily::All, Ring::Mat, 6).unwrap();
        for n in 1..=6 {
            let all = descriptors_of_dimension(n);
            assert_eq!(all.len().to_string(), expected_counts[n - 1].to_string());
            for d in all {
                let m = d.standard_representative().unwrap();
                let dec = check_decomposition(&m);
                assert_eq!(dec.descriptor, d);
                assert_eq!(dec.standard, m);
            }
        }
    }

    #[test]
    fn similarity_invariance_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let n = rng.gen_range(1..=8);
            let a = random_matrix(&mut rng, n);
            let q = random_invertible(&mut rng, n);
            let conj = q.mul_unchecked(&a).mul_unchecked(&q.inverse().unwrap());
            let da = check_decomposition(&a);
            let dc = check_decomposition(&conj);
            assert_eq!(da.descriptor, dc.descriptor);
            assert_eq!(da.standard, dc.standard);
            assert_eq!(class_descriptor(&a.square()), square_class(&da.descriptor));
        }
    }

    #[test]
    fn large_random_decompositions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [16, 33, 63, 64] {
            let a = random_matrix(&mut rng, n);
            check_decomposition(&a);
            let s = a.square();
            let b = sqrt(&s).unwrap();
            assert_eq!(b.square(), s);
        }
        // many repeated factors
        let d = desc(&[("X", &[3, 3, 1]), ("X+1", &[4, 2, 2, 1]), ("X^2+X+1", &[2, 2, 1]), ("X^3+X+1", &[2, 1])]);
        let m = d.standard_representative().unwrap();
        let q = random_invertible(&mut rng, m.dim());
        let a = q.mul_unchecked(&m).mul_unchecked(&q.inverse().unwrap());
        assert_eq!(check_decomposition(&a).descriptor, d);
    }

    #[test]
    fn exhaustive_n3() {
        let n = 3;
        let total = 1u64 << (n * n);
        let mut squares = vec![false; total as usize];
        for x in 0..total {
            squares[packed_multiply(x, x, n) as usize] = true;
        }
        let mut sizes: BTreeMap<ClassDescriptor, u64> = BTreeMap::new();
        for x in 0..total {
            let a = BitMatrix::from_packed(n, x);
            let d = check_decomposition(&a).descriptor;
            assert_eq!(is_square(&a), squares[x as usize]);
            if squares[x as usize] {
                let b = sqrt(&a).unwrap();
                assert_eq!(b.square(), a);
                assert_eq!(b.is_invertible(), a.is_invertible());
            }
            *sizes.entry(d).or_default() += 1;
        }
        assert_eq!(sizes.len(), descriptors_of_dimension(n).len());
        for (d, count) in sizes {
            assert_eq!(d.class_size(), count.into(), "{d}");
        }
    }
}
