//! Permutations, cycle statistics, Catalan/Möbius combinatorics, and the
//! genus census of the symmetric group relative to the canonical full cycle.
//!
//! Everything here is exact: permutations are small integer arrays, counts are
//! big integers, and the genus census has two independent implementations
//! (closed formula and brute-force enumeration) that are checked against each
//! other in the test suite.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymGroupError {
    #[error("images {0:?} are not a bijection on 0..{1}")]
    NotABijection(Vec<usize>, usize),
    #[error("cycle entry {0} out of range 1..={1}")]
    CycleEntryOutOfRange(usize, usize),
    #[error("cycle repeats element {0}")]
    RepeatedCycleElement(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("brute-force census capped at n = 10, got n = {0}")]
    BruteForceTooLarge(usize),
    #[error("Catalan bounds require k >= 1")]
    CatalanBoundsDomain,
    #[error("degree must be >= 1")]
    EmptyDegree,
}

/// A permutation of `{0, 1, …, n−1}` stored as its image table.
///
/// Public cycle I/O is 1-indexed (the usual way cycles are written);
/// everything internal is 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Build from an image table: `images[i]` is σ(i), 0-indexed.
    pub fn from_images(images: Vec<usize>) -> Result<Self, SymGroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(SymGroupError::NotABijection(images.clone(), n));
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles written 1-indexed, e.g. `(1 2)(3 4 5)` as
    /// `&[vec![1, 2], vec![3, 4, 5]]`. Elements not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, SymGroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let a = cycle[window];
                let b = cycle[(window + 1) % cycle.len()];
                if a == 0 || a > n {
                    return Err(SymGroupError::CycleEntryOutOfRange(a, n));
                }
                if b == 0 || b > n {
                    return Err(SymGroupError::CycleEntryOutOfRange(b, n));
                }
                if used[a - 1] {
                    return Err(SymGroupError::RepeatedCycleElement(a));
                }
                used[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    /// The canonical full cycle τ = (1 2 … n).
    pub fn full_cycle(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + 1) % n.max(1)).collect(),
        }
    }

    /// τ_{α,s}: the product of canonical full cycles on each of `s` blocks of
    /// `α` symbols, acting on `s·α` symbols total.
    pub fn block_full_cycles(alpha: usize, s: usize) -> Self {
        let n = alpha * s;
        let mut images = vec![0usize; n];
        for r in 0..s {
            for j in 0..alpha {
                images[r * alpha + j] = r * alpha + (j + 1) % alpha;
            }
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Function composition: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0usize; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Permutation { images }
    }

    /// Disjoint cycles, 1-indexed, each starting at its smallest element,
    /// sorted by first element. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle type as a partition of n (descending cycle lengths).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// ξ(σ): the number of disjoint cycles, counting fixed points.
    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
            }
        }
        count
    }

    /// |σ|: the minimal number of transpositions whose product is σ,
    /// which equals n − ξ(σ).
    pub fn transposition_distance(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    /// Parity: true iff σ is a product of an even number of transpositions.
    pub fn is_even(&self) -> bool {
        self.transposition_distance() % 2 == 0
    }

    /// Genus relative to the canonical full cycle:
    /// δ(σ) = (n + 1 − ξ(σ) − ξ(στ)) / 2, a nonnegative integer.
    pub fn genus(&self) -> usize {
        let n = self.degree();
        let tau = Permutation::full_cycle(n);
        let joint = self.cycle_count() + self.compose(&tau).cycle_count();
        debug_assert!(joint <= n + 1, "cycle inequality violated");
        debug_assert_eq!((n + 1 - joint) % 2, 0, "genus parity violated");
        (n + 1 - joint) / 2
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut result = BigUint::one();
    for i in 0..k.min(n - k) {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

/// The k-th Catalan number (2k)! / (k!(k+1)!), exact.
pub fn catalan(k: usize) -> BigUint {
    binomial(2 * k, k) / BigUint::from(k + 1)
}

pub fn catalan_f64(k: usize) -> f64 {
    catalan(k).to_f64().unwrap_or(f64::INFINITY)
}

/// Strict bounds 4^k/(√π (k+1)^{3/2}) < Cat_k < 4^k/(√π k^{3/2}), valid
/// for every k ≥ 1. Returns `(lower, upper)`.
pub fn catalan_bounds(k: usize) -> Result<(f64, f64), SymGroupError> {
    if k == 0 {
        return Err(SymGroupError::CatalanBoundsDomain);
    }
    let kf = k as f64;
    let four_k = 4f64.powi(k as i32);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let lower = four_k / (sqrt_pi * (kf + 1.0).powf(1.5));
    let upper = four_k / (sqrt_pi * kf.powf(1.5));
    Ok((lower, upper))
}

/// Möbius function on permutations: the product over disjoint cycles C of
/// (−1)^{len(C)−1} · Cat_{len(C)−1}. Fixed points contribute 1; a
/// transposition contributes −1; a 3-cycle contributes +2.
///
/// This is the leading coefficient of the large-dimension Weingarten
/// asymptotics: d^{n+|σ|}·Wg(d,σ) → Moeb(σ).
pub fn moebius(p: &Permutation) -> BigInt {
    let mut result = BigInt::one();
    for cycle in p.cycles() {
        let m = cycle.len() - 1;
        let cat = BigInt::from(catalan(m));
        result *= if m % 2 == 0 { cat } else { -cat };
    }
    result
}

/// |Moeb(σ)| as a big integer, for bound checks.
pub fn moebius_abs(p: &Permutation) -> BigUint {
    moebius(p).abs().to_biguint().expect("abs is nonnegative")
}

/// Visit every element of S_n exactly once (lexicographic order of image
/// tables). The callback borrows a scratch `Permutation`, so no per-element
/// allocation beyond the first.
pub fn for_each_permutation<F: FnMut(&Permutation)>(n: usize, mut f: F) {
    let mut p = Permutation::identity(n);
    loop {
        f(&p);
        // Standard next-permutation on the image table.
        let a = &mut p.images;
        if n < 2 {
            return;
        }
        let mut i = n - 1;
        while i > 0 && a[i - 1] >= a[i] {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        let mut j = n - 1;
        while a[j] <= a[i - 1] {
            j -= 1;
        }
        a.swap(i - 1, j);
        a[i..].reverse();
    }
}

/// Collect all of S_n. Intended for n ≤ 8 (40 320 elements).
pub fn enumerate(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_permutation(n, |p| out.push(p.clone()));
    out
}

/// How a genus census should be computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    /// Closed-form genus distribution (exact rational arithmetic).
    ExactFormula,
    /// Enumerate S_n and bucket by genus. Capped at n = 10.
    BruteForce,
}

/// Number of σ ∈ S_n with genus g, for g = 0, 1, …, ⌊(n−1)/2⌋.
///
/// Invariants: entry 0 equals Cat_n, and the entries sum to n!.
pub fn genus_census(n: usize, mode: CensusMode) -> Result<Vec<BigUint>, SymGroupError> {
    if n == 0 {
        return Err(SymGroupError::EmptyDegree);
    }
    match mode {
        CensusMode::BruteForce => {
            if n > 10 {
                return Err(SymGroupError::BruteForceTooLarge(n));
            }
            let gmax = (n - 1) / 2;
            let mut counts = vec![0u64; gmax + 1];
            let tau = Permutation::full_cycle(n);
            for_each_permutation(n, |p| {
                let joint = p.cycle_count() + p.compose(&tau).cycle_count();
                let g = (n + 1 - joint) / 2;
                counts[g] += 1;
            });
            Ok(counts.into_iter().map(BigUint::from).collect())
        }
        CensusMode::ExactFormula => {
            let gmax = (n - 1) / 2;
            (0..=gmax).map(|g| genus_count_formula(g, n)).collect()
        }
    }
}

/// Falling factorial (x)_k = x(x−1)⋯(x−k+1) over rationals.
fn falling(x: i64, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc *= BigRational::from(BigInt::from(x - i as i64));
    }
    acc
}

/// a_{g,ℓ} = Σ_{γ ⊢ g, ℓ(γ)=ℓ} ∏_j 1/(c_j! (2j+1)^{c_j}),
/// where c_j is the multiplicity of part j in γ. a_{0,0} = 1.
fn census_weight(g: usize, l: usize) -> BigRational {
    if g == 0 {
        return if l == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        };
    }
    let mut total = BigRational::zero();
    for part in integer_partitions(g) {
        if part.len() != l {
            continue;
        }
        let mut mult: HashMap<usize, usize> = HashMap::new();
        for &j in &part {
            *mult.entry(j).or_insert(0) += 1;
        }
        let mut denom = BigUint::one();
        for (&j, &cj) in &mult {
            let mut fact = BigUint::one();
            for i in 1..=cj {
                fact *= BigUint::from(i);
            }
            denom *= fact * BigUint::from(2 * j + 1).pow(cj as u32);
        }
        total += BigRational::new(BigInt::one(), BigInt::from(denom));
    }
    total
}

/// Closed-form count of genus-g elements of S_n (exact).
fn genus_count_formula(g: usize, n: usize) -> Result<BigUint, SymGroupError> {
    if n == 0 {
        return Err(SymGroupError::EmptyDegree);
    }
    let n_i = n as i64;
    let prefactor = falling(n_i + 1, 2 * g)
        / (BigRational::from(BigInt::from(n_i + 1)) * BigRational::from(BigInt::from(1i64 << (2 * g))));
    let mut total = BigRational::zero();
    for g1 in 0..=g {
        let g2 = g - g1;
        for l1 in 0..=g1 {
            for l2 in 0..=g2 {
                let w = census_weight(g1, l1) * census_weight(g2, l2);
                if w.is_zero() {
                    continue;
                }
                let lower = n_i - 2 * g1 as i64 - l1 as i64;
                if lower < 0 {
                    continue;
                }
                let upper = 2 * n - 2 * g - l1 - l2;
                let binom = BigRational::from(BigInt::from(binomial(upper, lower as usize)));
                total += w * falling(n_i + 1 - 2 * g as i64, l1 + l2) * binom;
            }
        }
    }
    let result = prefactor * total;
    debug_assert!(result.is_integer(), "genus count must be an integer");
    result
        .to_integer()
        .to_biguint()
        .ok_or(SymGroupError::EmptyDegree)
}

/// All partitions of n into descending parts, in reverse-lexicographic order
/// starting from [n]. `integer_partitions(0)` is `[[]]`.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        let top = remaining.min(max_part);
        for part in (1..=top).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// n! as a big integer.
pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Number of permutations in S_n with the given cycle type:
/// n! / ∏(ℓ_i) / ∏(m_j!) where m_j are the part multiplicities.
pub fn conjugacy_class_size(cycle_type: &[usize]) -> BigUint {
    let n: usize = cycle_type.iter().sum();
    let mut denom = BigUint::one();
    let mut mult: HashMap<usize, usize> = HashMap::new();
    for &len in cycle_type {
        denom *= BigUint::from(len);
        *mult.entry(len).or_insert(0) += 1;
    }
    for (_, m) in mult {
        denom *= factorial(m);
    }
    factorial(n) / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_roundtrip() {
        let p = Permutation::from_cycles(5, &[vec![1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 2], vec![3, 4, 5]]);
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert_eq!(p.cycle_count(), 2);
        assert_eq!(p.transposition_distance(), 3);
    }

    #[test]
    fn composition_convention() {
        // (self ∘ other)(i) = self(other(i)).
        let s = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let t = Permutation::full_cycle(3); // 0→1→2→0
        let st = s.compose(&t);
        // st(0) = s(t(0)) = s(1) = 0 → fixed point.
        assert_eq!(st.apply(0), 0);
        assert_eq!(st.apply(1), 2);
        assert_eq!(st.apply(2), 1);
    }

    #[test]
    fn catalan_small_values() {
        let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (k, &v) in expected.iter().enumerate() {
            assert_eq!(catalan(k), BigUint::from(v));
        }
    }

    #[test]
    fn moebius_small_values() {
        let id = Permutation::identity(3);
        assert_eq!(moebius(&id), BigInt::from(1));
        let t = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert_eq!(moebius(&t), BigInt::from(-1));
        let c3 = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(moebius(&c3), BigInt::from(2));
        let double = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(moebius(&double), BigInt::from(1));
    }

    #[test]
    fn census_modes_agree_small() {
        for n in 1..=7 {
            let brute = genus_census(n, CensusMode::BruteForce).unwrap();
            let formula = genus_census(n, CensusMode::ExactFormula).unwrap();
            assert_eq!(brute, formula, "census mismatch at n = {n}");
            assert_eq!(brute[0], catalan(n));
            let total: BigUint = brute.iter().sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn partitions_count() {
        let counts = [1usize, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &c) in counts.iter().enumerate() {
            assert_eq!(integer_partitions(n).len(), c, "p({n})");
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 1..=6 {
            let total: BigUint = integer_partitions(n)
                .iter()
                .map(|t| conjugacy_class_size(t))
                .sum();
            assert_eq!(total, factorial(n));
        }
    }
}
