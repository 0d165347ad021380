//! Exact Weingarten calculus over the unitary group via symmetric-group
//! characters.
//!
//! `weingarten(d, σ)` returns the exact rational value
//!
//! ```text
//! Wg(d, σ) = (1/(α!)²) · Σ_{λ ⊢ α} (f^λ)² · χ^λ(σ) / s_λ(1^d)
//! ```
//!
//! where f^λ is the symmetric-group irrep dimension (hook lengths), χ^λ the
//! character (Murnaghan–Nakayama), and s_λ(1^d) the dimension of the
//! associated unitary-group irrep (hook contents). The domain is restricted
//! to d ≥ α so every irrep dimension is strictly positive; the rank-deficient
//! pseudo-inverse regime is deliberately out of scope.

use crate::symgroup::{factorial, integer_partitions, moebius, Permutation};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeingartenError {
    #[error("Weingarten domain requires d >= degree: d = {d}, degree = {degree}")]
    DimensionTooSmall { d: usize, degree: usize },
    #[error("lambda {0:?} and mu {1:?} are partitions of different integers")]
    MismatchedPartitions(Vec<usize>, Vec<usize>),
    #[error("{0:?} is not a valid partition (parts must be positive and nonincreasing)")]
    InvalidPartition(Vec<usize>),
}

/// All partitions of n (descending parts). Re-exported from the
/// combinatorics layer so callers of this module find it where expected.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    integer_partitions(n)
}

fn check_partition(p: &[usize]) -> Result<(), WeingartenError> {
    for w in p.windows(2) {
        if w[0] < w[1] {
            return Err(WeingartenError::InvalidPartition(p.to_vec()));
        }
    }
    if p.iter().any(|&x| x == 0) {
        return Err(WeingartenError::InvalidPartition(p.to_vec()));
    }
    Ok(())
}

/// Character χ^λ of S_n evaluated on the conjugacy class with cycle type μ,
/// by the Murnaghan–Nakayama rule on beta-numbers (first-column hook
/// encoding). Exact integer.
pub fn sym_character(lambda: &[usize], mu: &[usize]) -> Result<BigInt, WeingartenError> {
    check_partition(lambda)?;
    check_partition(mu)?;
    let n: usize = lambda.iter().sum();
    let m: usize = mu.iter().sum();
    if n != m {
        return Err(WeingartenError::MismatchedPartitions(
            lambda.to_vec(),
            mu.to_vec(),
        ));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    // Beta-numbers: β_i = λ_i + (r − 1 − i) for the r rows, strictly
    // decreasing. Removing a border strip of length t replaces some β by
    // β − t when the result is a fresh nonnegative value; the sign is
    // (−1)^{#β strictly between β − t and β}.
    let r = lambda.len();
    let mut beta: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &li)| li + (r - 1 - i))
        .collect();
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let mut memo: HashMap<(Vec<usize>, usize), BigInt> = HashMap::new();
    Ok(mn_rec(&beta, mu, 0, &mut memo))
}

fn mn_rec(
    beta: &[usize],
    mu: &[usize],
    idx: usize,
    memo: &mut HashMap<(Vec<usize>, usize), BigInt>,
) -> BigInt {
    if idx == mu.len() {
        // All strips removed; the remaining beta-set is necessarily the
        // staircase, i.e. the empty diagram.
        return BigInt::one();
    }
    if let Some(v) = memo.get(&(beta.to_vec(), idx)) {
        return v.clone();
    }
    let t = mu[idx];
    let mut total = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        if b < t {
            continue;
        }
        let target = b - t;
        if beta.contains(&target) {
            continue;
        }
        let height = beta
            .iter()
            .filter(|&&c| c > target && c < b)
            .count();
        let mut next: Vec<usize> = beta.to_vec();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sub = mn_rec(&next, mu, idx + 1, memo);
        if height % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.insert((beta.to_vec(), idx), total.clone());
    total
}

/// Hook lengths of every cell of λ, row-major.
fn hook_lengths(lambda: &[usize]) -> Vec<BigUint> {
    let rows = lambda.len();
    let cols = lambda.first().copied().unwrap_or(0);
    let mut conj = vec![0usize; cols];
    for &li in lambda {
        for c in conj.iter_mut().take(li) {
            *c += 1;
        }
    }
    let mut hooks = Vec::new();
    for i in 0..rows {
        for j in 0..lambda[i] {
            let h = lambda[i] - j + conj[j] - i - 1;
            hooks.push(BigUint::from(h));
        }
    }
    hooks
}

/// Dimension f^λ of the S_n irrep (hook length formula), exact.
pub fn sym_irrep_dim(lambda: &[usize]) -> Result<BigUint, WeingartenError> {
    check_partition(lambda)?;
    let n: usize = lambda.iter().sum();
    let mut denom = BigUint::one();
    for h in hook_lengths(lambda) {
        denom *= h;
    }
    Ok(factorial(n) / denom)
}

/// Dimension of the U(d) irrep with highest weight λ (hook content formula):
/// ∏_{(i,j)∈λ} (d + j − i) / hook(i,j). Zero when λ has more than d rows.
pub fn unitary_irrep_dim(lambda: &[usize], d: usize) -> Result<BigUint, WeingartenError> {
    check_partition(lambda)?;
    if lambda.len() > d {
        return Ok(BigUint::zero());
    }
    let hooks = hook_lengths(lambda);
    let mut num = BigInt::one();
    let mut k = 0usize;
    for (i, &li) in lambda.iter().enumerate() {
        for j in 0..li {
            num *= BigInt::from(d as i64 + j as i64 - i as i64);
            k += 1;
        }
    }
    debug_assert_eq!(k, hooks.len());
    let mut denom = BigInt::one();
    for h in hooks {
        denom *= BigInt::from(h);
    }
    let ratio = BigRational::new(num, denom);
    debug_assert!(ratio.is_integer());
    Ok(ratio
        .to_integer()
        .to_biguint()
        .expect("unitary irrep dimension is nonnegative"))
}

static WG_CACHE: Lazy<Mutex<HashMap<(usize, Vec<usize>), BigRational>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Exact Weingarten function of U(d) on the conjugacy class with the given
/// cycle type (a partition of the degree α). Requires d ≥ α. Cached.
pub fn weingarten_by_type(d: usize, cycle_type: &[usize]) -> Result<BigRational, WeingartenError> {
    check_partition(cycle_type)?;
    let degree: usize = cycle_type.iter().sum();
    if d < degree {
        return Err(WeingartenError::DimensionTooSmall { d, degree });
    }
    let key = (d, cycle_type.to_vec());
    if let Some(v) = WG_CACHE.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let mut total = BigRational::zero();
    for lambda in integer_partitions(degree) {
        let f = BigInt::from(sym_irrep_dim(&lambda)?);
        let chi = sym_character(&lambda, cycle_type)?;
        let s_dim = BigInt::from(unitary_irrep_dim(&lambda, d)?);
        debug_assert!(!s_dim.is_zero(), "d >= degree keeps all irreps alive");
        total += BigRational::new(&f * &f * chi, s_dim);
    }
    let fact = BigInt::from(factorial(degree));
    let result = total / BigRational::from(&fact * &fact);
    WG_CACHE.lock().unwrap().insert(key, result.clone());
    Ok(result)
}

/// Exact Weingarten function Wg(d, σ). A class function: only the cycle type
/// of σ matters.
pub fn weingarten(d: usize, sigma: &Permutation) -> Result<BigRational, WeingartenError> {
    weingarten_by_type(d, &sigma.cycle_type())
}

/// Leading-order large-d approximation Moeb(σ) / d^{α+|σ|}, whose relative
/// error is O(d⁻²).
pub fn weingarten_asymptotic(d: usize, sigma: &Permutation) -> f64 {
    let alpha = sigma.degree();
    let dist = sigma.transposition_distance();
    let moeb = moebius(sigma).to_f64().unwrap_or(f64::NAN);
    moeb / (d as f64).powi((alpha + dist) as i32)
}
