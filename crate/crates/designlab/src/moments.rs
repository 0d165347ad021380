//! Exact ensemble-averaged trace-power moments and analytic bound reports.
//!
//! Two exact engines, both in rational arithmetic with no floating point:
//!
//! * **Channels.** For U Haar on U(d) with input split A ⊗ B and output
//!   split C ⊗ D, the average of (tr ρ_AC^α)^s is a double sum over the
//!   symmetric group S_{sα}:
//!
//!   ```text
//!   (1/d^{sα}) Σ_{σ,γ} d_A^{ξ(στ)} d_B^{ξ(σ)} d_C^{ξ(γτ)} d_D^{ξ(γ)} Wg(d, σγ⁻¹)
//!   ```
//!
//!   where τ is a product of s disjoint α-cycles and ξ counts cycles.
//!
//! * **States.** For ψ Haar on the unit sphere of C^{d_A d_B}, the average
//!   of tr ρ_A^α is a single sum over S_α divided by α! times the dimension
//!   of the symmetric subspace:
//!
//!   ```text
//!   (1/(α!·binom(d_A d_B + α − 1, α))) Σ_σ d_A^{ξ(στ)} d_B^{ξ(σ)}
//!   ```
//!
//! Every analytic inequality exposed by [`bound_suite`] is reported as a
//! [`BoundReport`] carrying the bound value, whether its preconditions are
//! met, and a self-contained formula anchor.

use crate::entropy::ChoiPartition;
use crate::symgroup::{
    binomial, catalan_f64, enumerate, factorial, integer_partitions, Permutation,
};
use crate::weingarten::{weingarten_by_type, WeingartenError};
use nalgebra::{DMatrix, DVector};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MomentsError {
    #[error("trace-power order must satisfy 1 <= alpha (got {0})")]
    AlphaRange(usize),
    #[error("outer power must satisfy s >= 1 (got {0})")]
    PowerRange(usize),
    #[error("total symmetric-group degree s*alpha = {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("state moments support alpha <= {max} (got {alpha})")]
    StateAlphaTooLarge { alpha: usize, max: usize },
    #[error(transparent)]
    Weingarten(#[from] WeingartenError),
    #[error("need 1 <= d_A <= d_B (got d_A = {d_a}, d_B = {d_b})")]
    BadStateDims { d_a: usize, d_b: usize },
    #[error("moment must lie in (0, 1] (got {0})")]
    MomentRange(f64),
    #[error("entropy order must satisfy alpha >= 2 for this floor (got {0})")]
    FloorOrder(usize),
}

/// Maximum symmetric-group degree for the channel engine (|S_6| = 720, so
/// the double sum stays at ~5·10⁵ pairs).
pub const MAX_CHOI_DEGREE: usize = 6;
/// Maximum order for the state engine (single sum over |S_8| = 40320).
pub const MAX_STATE_ALPHA: usize = 8;

/// Which random object is being averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Setting {
    /// Choi state of a Haar unitary with the given input/output splits.
    Choi(ChoiPartition),
    /// Haar-random pure state on C^{d_A} ⊗ C^{d_B}, reduced to A.
    State { d_a: usize, d_b: usize },
}

/// A fully specified exact-moment request: E[(tr ρ^α)^s].
#[derive(Debug, Clone, Copy)]
pub struct MomentQuery {
    pub setting: Setting,
    pub alpha: usize,
    pub s: usize,
}

impl MomentQuery {
    pub fn new(setting: Setting, alpha: usize, s: usize) -> Self {
        MomentQuery { setting, alpha, s }
    }
}

/// Exact value of the queried moment. Channel queries require
/// s·α ≤ [`MAX_CHOI_DEGREE`] and d ≥ s·α; state queries require s = 1 and
/// α ≤ [`MAX_STATE_ALPHA`].
pub fn exact_moment(query: &MomentQuery) -> Result<BigRational, MomentsError> {
    match query.setting {
        Setting::Choi(part) => haar_choi_moment_power(&part, query.alpha, query.s),
        Setting::State { d_a, d_b } => {
            if query.s != 1 {
                return Err(MomentsError::PowerRange(query.s));
            }
            haar_state_moment(d_a, d_b, query.alpha)
        }
    }
}

fn pow_biguint(base: usize, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// Haar average of tr ρ_AC^α for the Choi state of a random unitary.
pub fn haar_choi_moment(part: &ChoiPartition, alpha: usize) -> Result<BigRational, MomentsError> {
    haar_choi_moment_power(part, alpha, 1)
}

/// Haar average of (tr ρ_AC^α)^s, the s-th power of the order-α trace power.
pub fn haar_choi_moment_power(
    part: &ChoiPartition,
    alpha: usize,
    s: usize,
) -> Result<BigRational, MomentsError> {
    if alpha == 0 {
        return Err(MomentsError::AlphaRange(alpha));
    }
    if s == 0 {
        return Err(MomentsError::PowerRange(s));
    }
    let degree = alpha * s;
    if degree > MAX_CHOI_DEGREE {
        return Err(MomentsError::DegreeTooLarge {
            degree,
            max: MAX_CHOI_DEGREE,
        });
    }
    let d = part.total();
    if d < degree {
        return Err(MomentsError::Weingarten(
            WeingartenError::DimensionTooSmall { d, degree },
        ));
    }

    let tau = Permutation::block_full_cycles(alpha, s);
    let perms = enumerate(degree);
    let n = perms.len();
    let inverses: Vec<Permutation> = perms.iter().map(|p| p.inverse()).collect();
    // Weight carried by each permutation on the input side (A, B) and the
    // output side (C, D); ξ(στ) is computed with the same τ on both sides.
    let mut factor_in = Vec::with_capacity(n);
    let mut factor_out = Vec::with_capacity(n);
    for p in &perms {
        let xi_tau = p.compose(&tau).cycle_count();
        let xi = p.cycle_count();
        factor_in.push(pow_biguint(part.d_a, xi_tau) * pow_biguint(part.d_b, xi));
        factor_out.push(pow_biguint(part.d_c, xi_tau) * pow_biguint(part.d_d, xi));
    }

    let classes = integer_partitions(degree);
    let class_index: std::collections::HashMap<Vec<usize>, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();

    // Accumulate the (huge, exact) integer coefficient of each Weingarten
    // class value. Threads own disjoint σ ranges; elementwise summation of
    // the per-thread vectors is order-independent because the arithmetic is
    // exact.
    let zero = || vec![BigUint::zero(); classes.len()];
    let coeffs: Vec<BigUint> = (0..n)
        .into_par_iter()
        .fold(zero, |mut acc, i| {
            for j in 0..n {
                let rel = perms[i].compose(&inverses[j]);
                let class = class_index[&rel.cycle_type()];
                acc[class] += &factor_in[i] * &factor_out[j];
            }
            acc
        })
        .reduce(zero, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });

    let mut total = BigRational::zero();
    for (class, coeff) in classes.iter().zip(coeffs) {
        if coeff.is_zero() {
            continue;
        }
        total += BigRational::from(BigInt::from(coeff)) * weingarten_by_type(d, class)?;
    }
    Ok(total / BigRational::from(BigInt::from(pow_biguint(d, degree))))
}

/// Dimension binom(d + t − 1, t) of the totally symmetric subspace of
/// (C^d)^{⊗t}.
pub fn sym_subspace_dim(d: usize, t: usize) -> BigUint {
    binomial(d + t - 1, t)
}

/// Haar average of tr ρ_A^α for a random pure state on C^{d_A} ⊗ C^{d_B}.
/// Valid for any positive dimensions; no Weingarten domain restriction.
pub fn haar_state_moment(
    d_a: usize,
    d_b: usize,
    alpha: usize,
) -> Result<BigRational, MomentsError> {
    if alpha == 0 {
        return Err(MomentsError::AlphaRange(alpha));
    }
    if alpha > MAX_STATE_ALPHA {
        return Err(MomentsError::StateAlphaTooLarge {
            alpha,
            max: MAX_STATE_ALPHA,
        });
    }
    if d_a == 0 || d_b == 0 {
        return Err(MomentsError::BadStateDims { d_a, d_b });
    }
    let tau = Permutation::full_cycle(alpha);
    let mut sum = BigUint::zero();
    crate::symgroup::for_each_permutation(alpha, |p| {
        let xi_tau = p.compose(&tau).cycle_count();
        let xi = p.cycle_count();
        sum += pow_biguint(d_a, xi_tau) * pow_biguint(d_b, xi);
    });
    let denom = factorial(alpha) * sym_subspace_dim(d_a * d_b, alpha);
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(denom)))
}

/// Jensen floor on the ensemble-averaged order-α Rényi entropy, in bits:
/// E S^(α) ≥ (1/(1−α))·log₂ E[tr ρ^α] for α ≥ 2.
pub fn jensen_renyi_floor(moment: f64, alpha: usize) -> Result<f64, MomentsError> {
    if alpha < 2 {
        return Err(MomentsError::FloorOrder(alpha));
    }
    if !(moment > 0.0 && moment <= 1.0) {
        return Err(MomentsError::MomentRange(moment));
    }
    Ok(-moment.log2() / (alpha as f64 - 1.0))
}

/// Exact average von Neumann entropy (in bits) of the A-reduction of a Haar
/// pure state on C^{d_A} ⊗ C^{d_B} with d_A ≤ d_B:
/// (Σ_{j=d_B+1}^{d_A d_B} 1/j − (d_A−1)/(2 d_B)) / ln 2.
pub fn page_average_entropy(d_a: usize, d_b: usize) -> Result<f64, MomentsError> {
    if d_a == 0 || d_b == 0 || d_a > d_b {
        return Err(MomentsError::BadStateDims { d_a, d_b });
    }
    let harmonic: f64 = (d_b + 1..=d_a * d_b).map(|j| 1.0 / j as f64).sum();
    Ok((harmonic - (d_a as f64 - 1.0) / (2.0 * d_b as f64)) / std::f64::consts::LN_2)
}

// ---------------------------------------------------------------------------
// Permutation-contraction oracles
// ---------------------------------------------------------------------------

/// The contraction of tr ρ_AC^α against copies of U is implemented by a
/// permutation operator Y on (C^d)^{⊗2α}; this returns the permutation π
/// with Y = Σ_j |π(j)⟩⟨j|. Basis indices are big-endian over the 2α factors.
/// Even factors (0-based) carry input pairs (a, b), odd factors carry output
/// pairs (c, e); the image wires factor 2i to the output pair
/// (c_{i−1}, e_i) and factor 2i+1 to the input pair (a_{i+1}, b_i).
pub fn choi_contraction_permutation(part: &ChoiPartition, alpha: usize) -> Vec<usize> {
    let d = part.total();
    let (db, dd) = (part.d_b, part.d_d);
    let dim = d.pow(2 * alpha as u32);
    let mut pi = vec![0usize; dim];
    let mut digits = vec![0usize; 2 * alpha];
    for (j, target) in pi.iter_mut().enumerate() {
        let mut rest = j;
        for f in (0..2 * alpha).rev() {
            digits[f] = rest % d;
            rest /= d;
        }
        let mut row = 0usize;
        for i in 0..alpha {
            let prev = (i + alpha - 1) % alpha;
            let next = (i + 1) % alpha;
            let (c_prev, e_i) = (digits[2 * prev + 1] / dd, digits[2 * i + 1] % dd);
            let (a_next, b_i) = (digits[2 * next] / db, digits[2 * i] % db);
            row = row * d + (c_prev * dd + e_i);
            row = row * d + (a_next * db + b_i);
        }
        *target = row;
    }
    pi
}

/// tr ρ_AC^α evaluated by contracting α copies of U and α copies of U*
/// against the permutation operator from [`choi_contraction_permutation`],
/// without forming ρ_AC: (1/d^α)·Σ_j ∏_f M_f[j_f, π(j)_f] with M = Uᵀ on
/// even factors and U* on odd factors.
pub fn choi_trace_power_via_contraction(
    part: &ChoiPartition,
    u: &DMatrix<Complex64>,
    alpha: usize,
) -> Complex64 {
    let d = part.total();
    let dim = d.pow(2 * alpha as u32);
    let pi = choi_contraction_permutation(part, alpha);
    let mut total = Complex64::new(0.0, 0.0);
    let mut col = vec![0usize; 2 * alpha];
    let mut row = vec![0usize; 2 * alpha];
    for j in 0..dim {
        let mut rest = j;
        for f in (0..2 * alpha).rev() {
            col[f] = rest % d;
            rest /= d;
        }
        let mut rest = pi[j];
        for f in (0..2 * alpha).rev() {
            row[f] = rest % d;
            rest /= d;
        }
        let mut prod = Complex64::new(1.0, 0.0);
        for f in 0..2 * alpha {
            prod *= if f % 2 == 0 {
                u[(row[f], col[f])]
            } else {
                u[(col[f], row[f])].conj()
            };
        }
        total += prod;
    }
    total / (d as f64).powi(alpha as i32)
}

/// The analogous contraction permutation for pure-state trace powers:
/// Q = Σ_j |π(j)⟩⟨j| on (C^{d_A d_B})^{⊗α}, where factor i carrying (a_i,
/// b_i) maps to (a_{i+1}, b_i) — the cyclic shift of the A-labels.
pub fn state_contraction_permutation(d_a: usize, d_b: usize, alpha: usize) -> Vec<usize> {
    let d = d_a * d_b;
    let dim = d.pow(alpha as u32);
    let mut pi = vec![0usize; dim];
    let mut digits = vec![0usize; alpha];
    for (j, target) in pi.iter_mut().enumerate() {
        let mut rest = j;
        for f in (0..alpha).rev() {
            digits[f] = rest % d;
            rest /= d;
        }
        let mut row = 0usize;
        for i in 0..alpha {
            let a_next = digits[(i + 1) % alpha] / d_b;
            let b_i = digits[i] % d_b;
            row = row * d + (a_next * d_b + b_i);
        }
        *target = row;
    }
    pi
}

/// tr ρ_A^α for a pure state ψ on C^{d_A d_B}, evaluated through the
/// cyclic-shift contraction: Σ_j ∏_i ψ[j_i]·conj(ψ[π(j)_i]).
pub fn state_trace_power_via_contraction(
    d_a: usize,
    d_b: usize,
    psi: &DVector<Complex64>,
    alpha: usize,
) -> Complex64 {
    let d = d_a * d_b;
    let dim = d.pow(alpha as u32);
    let pi = state_contraction_permutation(d_a, d_b, alpha);
    let mut total = Complex64::new(0.0, 0.0);
    let mut col = vec![0usize; alpha];
    let mut row = vec![0usize; alpha];
    for j in 0..dim {
        let mut rest = j;
        for f in (0..alpha).rev() {
            col[f] = rest % d;
            rest /= d;
        }
        let mut rest = pi[j];
        for f in (0..alpha).rev() {
            row[f] = rest % d;
            rest /= d;
        }
        let mut prod = Complex64::new(1.0, 0.0);
        for f in 0..alpha {
            prod *= psi[col[f]] * psi[row[f]].conj();
        }
        total += prod;
    }
    total
}

// ---------------------------------------------------------------------------
// Analytic bounds
// ---------------------------------------------------------------------------

/// One analytic bound instantiated at concrete parameters.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    /// Stable machine-readable identifier.
    pub name: String,
    /// The bound's numerical value (an upper bound on a moment or a lower
    /// bound on an entropy, depending on the name).
    pub value: f64,
    /// Whether every hypothesis of the bound holds at these parameters.
    /// Reports with unmet preconditions are informational only.
    pub preconditions_met: bool,
    /// Self-contained formula describing the bound.
    pub cited: String,
}

/// h(q) = 1 + 2q/(3(1−q)), the geometric-tail factor that controls
/// subleading genus contributions to cycle sums; requires q < 1.
pub fn h_of_q(q: f64) -> f64 {
    1.0 + 2.0 * q / (3.0 * (1.0 - q))
}

/// m_d = min{7, 4·(8√d)^{1/√d}}, the constant in the operator-norm bound
/// E‖ρ_AC‖ ≤ m_d/d for Haar channels.
pub fn m_d(d: usize) -> f64 {
    let rd = (d as f64).sqrt();
    (4.0 * (8.0 * rd).powf(1.0 / rd)).min(7.0)
}

/// Upper bound on the Haar channel moment E tr ρ_AC^α for the equal split
/// (all four subsystem dimensions √d):
/// (a_α·Cat_α·d^{1−α}/8)·h(q)·(7 + cosh(2α(α−1)/d)) with q = α³/(32d²) and
/// a_α = 1/(1 − 6α^{7/2}/d²). Hypothesis: d > √6·α^{7/4}.
pub fn choi_trace_power_ceiling(d: usize, alpha: usize) -> BoundReport {
    let df = d as f64;
    let af = alpha as f64;
    let q = af.powi(3) / (32.0 * df * df);
    let denom = 1.0 - 6.0 * af.powf(3.5) / (df * df);
    let pre = df > 6.0_f64.sqrt() * af.powf(1.75) && q < 1.0 && denom > 0.0;
    let a_alpha = 1.0 / denom;
    let value = a_alpha * catalan_f64(alpha) * df.powf(1.0 - af) / 8.0
        * h_of_q(q)
        * (7.0 + (2.0 * af * (af - 1.0) / df).cosh());
    BoundReport {
        name: "choi-trace-power-ceiling".into(),
        value,
        preconditions_met: pre,
        cited: "E tr rho_AC^alpha <= (a_alpha*Cat_alpha*d^(1-alpha)/8)*h(alpha^3/(32 d^2))*(7+cosh(2 alpha(alpha-1)/d)) for d > sqrt(6)*alpha^(7/4)".into(),
    }
}

/// Rényi-entropy floor implied by [`choi_trace_power_ceiling`] through the
/// convexity (Jensen) step: E S^(α)(ρ_AC) ≥ (1/(1−α))·log₂(ceiling).
pub fn choi_renyi_entropy_floor(d: usize, alpha: usize) -> BoundReport {
    let ceiling = choi_trace_power_ceiling(d, alpha);
    let value = if alpha >= 2 {
        -ceiling.value.log2() / (alpha as f64 - 1.0)
    } else {
        f64::NAN
    };
    BoundReport {
        name: "choi-renyi-entropy-floor".into(),
        value,
        preconditions_met: ceiling.preconditions_met && alpha >= 2,
        cited: "E S^(alpha)(rho_AC) >= log2(1/ceiling)/(alpha-1), ceiling from choi-trace-power-ceiling".into(),
    }
}

/// Upper bound on the input-side cycle sum Σ_σ d_A^{ξ(στ)}·d_B^{ξ(σ)} over
/// S_α: h(q)·Cat_α·d_A·d_B^α with q = α³/(32 d_B²), for d_A ≤ d_B, q < 1.
pub fn cycle_sum_ceiling(d_a: usize, d_b: usize, alpha: usize) -> BoundReport {
    let q = (alpha as f64).powi(3) / (32.0 * (d_b as f64).powi(2));
    let pre = d_a <= d_b && q < 1.0;
    let value = h_of_q(q) * catalan_f64(alpha) * d_a as f64 * (d_b as f64).powi(alpha as i32);
    BoundReport {
        name: "cycle-sum-ceiling".into(),
        value,
        preconditions_met: pre,
        cited: "sum_sigma d_A^(xi(sigma tau))*d_B^(xi(sigma)) <= h(alpha^3/(32 d_B^2))*Cat_alpha*d_A*d_B^alpha for d_A <= d_B".into(),
    }
}

/// Upper bound on the Haar state moment E tr ρ_A^α: h(q)·Cat_α·d_A^{1−α}
/// with q = α³/(32 d_B²), for d_A ≤ d_B and q < 1.
pub fn state_trace_power_ceiling(d_a: usize, d_b: usize, alpha: usize) -> BoundReport {
    let q = (alpha as f64).powi(3) / (32.0 * (d_b as f64).powi(2));
    let pre = d_a <= d_b && q < 1.0;
    let value = h_of_q(q) * catalan_f64(alpha) * (d_a as f64).powf(1.0 - alpha as f64);
    BoundReport {
        name: "state-trace-power-ceiling".into(),
        value,
        preconditions_met: pre,
        cited: "E tr rho_A^alpha <= h(alpha^3/(32 d_B^2))*Cat_alpha*d_A^(1-alpha) for d_A <= d_B".into(),
    }
}

/// Rényi floor implied by [`state_trace_power_ceiling`] with the Catalan
/// number replaced by its strict upper bound 4^α/(√π·α^{3/2}):
/// E S^(α)(ρ_A) ≥ log₂ d_A − [2α − (3/2)log₂ α + log₂ h(q) − (1/2)log₂ π]/(α−1).
pub fn state_renyi_entropy_floor(d_a: usize, d_b: usize, alpha: usize) -> BoundReport {
    let q = (alpha as f64).powi(3) / (32.0 * (d_b as f64).powi(2));
    let pre = d_a <= d_b && q < 1.0 && alpha >= 2;
    let af = alpha as f64;
    let penalty = (2.0 * af - 1.5 * af.log2() + h_of_q(q).log2() - 0.5 * std::f64::consts::PI.log2())
        / (af - 1.0);
    BoundReport {
        name: "state-renyi-entropy-floor".into(),
        value: (d_a as f64).log2() - penalty,
        preconditions_met: pre,
        cited: "E S^(alpha)(rho_A) >= log2(d_A) - [2 alpha - (3/2) log2 alpha + log2 h(q) - (1/2) log2 pi]/(alpha-1)".into(),
    }
}

/// Min-entropy floor for Haar channels: E S_min(ρ_AC) ≥ log₂ d − log₂ m_d,
/// from E‖ρ_AC‖ ≤ m_d/d.
pub fn choi_min_entropy_floor(d: usize) -> BoundReport {
    BoundReport {
        name: "choi-min-entropy-floor".into(),
        value: (d as f64).log2() - m_d(d).log2(),
        preconditions_met: d >= 2,
        cited: "E S_min(rho_AC) >= log2 d - log2 m_d, m_d = min{7, 4*(8*sqrt(d))^(1/sqrt(d))}".into(),
    }
}

/// Min-entropy floor tuned through the order α = ⌈log₂(d)/a⌉:
/// E S_min(ρ_AC) ≥ log₂ d − 2 − a, valid while 1 ≤ α ≤ √d/2.
pub fn choi_log_order_floor(d: usize, a: f64) -> BoundReport {
    let alpha = ((d as f64).log2() / a).ceil();
    let pre = a > 0.0 && alpha >= 1.0 && alpha <= (d as f64).sqrt() / 2.0;
    BoundReport {
        name: "choi-log-order-min-entropy-floor".into(),
        value: (d as f64).log2() - 2.0 - a,
        preconditions_met: pre,
        cited: "E S_min(rho_AC) >= log2 d - 2 - a at alpha = ceil(log2(d)/a), needs alpha <= sqrt(d)/2".into(),
    }
}

/// State analogue of the tuned floor: at α = ⌈log₂(d_A)/a⌉ with 0 < a ≤ 1
/// and α ≤ (16 d_B²)^{1/3}, E S_min(ρ_A) ≥ log₂ d_A − 2 − a.
pub fn state_log_order_floor(d_a: usize, d_b: usize, a: f64) -> BoundReport {
    let alpha = ((d_a as f64).log2() / a).ceil().max(1.0);
    let pre = a > 0.0
        && a <= 1.0
        && d_a <= d_b
        && alpha <= (16.0 * (d_b as f64).powi(2)).powf(1.0 / 3.0);
    BoundReport {
        name: "state-log-order-min-entropy-floor".into(),
        value: (d_a as f64).log2() - 2.0 - a,
        preconditions_met: pre,
        cited: "E S_min(rho_A) >= log2 d_A - 2 - a at alpha = ceil(log2(d_A)/a), needs alpha <= (16 d_B^2)^(1/3), 0 < a <= 1".into(),
    }
}

/// Universal Rényi floor for Haar states, every order α ≥ 0 at once:
/// E S^(α)(ρ_A) ≥ log₂ d_A − 2 for d_A ≤ d_B.
pub fn state_renyi_floor_universal(d_a: usize, d_b: usize) -> BoundReport {
    BoundReport {
        name: "state-renyi-floor-universal".into(),
        value: (d_a as f64).log2() - 2.0,
        preconditions_met: d_a <= d_b,
        cited: "E S^(alpha)(rho_A) >= log2 d_A - 2 for all alpha >= 0, d_A <= d_B".into(),
    }
}

/// Von Neumann floor for Haar states via the square-root norm bound:
/// E S(ρ_A) ≥ log₂ d_A − 2·log₂(1+√(d_A/d_B)) − log₂ c with c = 2 for
/// complex amplitudes (c = 1 for real).
pub fn state_vn_floor_root_ratio(d_a: usize, d_b: usize, complex_field: bool) -> BoundReport {
    let c: f64 = if complex_field { 2.0 } else { 1.0 };
    let ratio = (d_a as f64 / d_b as f64).sqrt();
    BoundReport {
        name: "state-entropy-floor-root-ratio".into(),
        value: (d_a as f64).log2() - 2.0 * (1.0 + ratio).log2() - c.log2(),
        preconditions_met: d_a <= d_b,
        cited: "E S(rho_A) >= log2 d_A - 2 log2(1+sqrt(d_A/d_B)) - log2 c, from E sqrt(||rho_A||) <= sqrt(c)(1/sqrt(d_A)+1/sqrt(d_B))".into(),
    }
}

/// Ceiling on E‖ρ_A‖^α for Haar states: (4/d_A)^α while
/// α ≤ ⌊(29 d_B²)^{1/3}⌋ and d_A ≤ d_B.
pub fn state_norm_power_ceiling(d_a: usize, d_b: usize, alpha: usize) -> BoundReport {
    let pre = d_a <= d_b && (alpha as f64) <= (29.0 * (d_b as f64).powi(2)).powf(1.0 / 3.0);
    BoundReport {
        name: "state-norm-power-ceiling".into(),
        value: (4.0 / d_a as f64).powi(alpha as i32),
        preconditions_met: pre,
        cited: "E ||rho_A||^alpha <= (4/d_A)^alpha for alpha <= (29 d_B^2)^(1/3), d_A <= d_B".into(),
    }
}

/// Ceiling on E√‖ρ_A‖ for Haar states: √c·(1/√d_A + 1/√d_B).
pub fn state_root_norm_ceiling(d_a: usize, d_b: usize, complex_field: bool) -> BoundReport {
    let c: f64 = if complex_field { 2.0 } else { 1.0 };
    let value = c.sqrt() * (1.0 / (d_a as f64).sqrt() + 1.0 / (d_b as f64).sqrt());
    BoundReport {
        name: "state-root-norm-ceiling".into(),
        value,
        preconditions_met: d_a <= d_b,
        cited: "E sqrt(||rho_A||) <= sqrt(c)*(1/sqrt(d_A)+1/sqrt(d_B))".into(),
    }
}

/// Entropy floor for an ensemble whose monomial averages each deviate from
/// the Haar value by at most ε: E S^(α) ≥ (1/(1−α))·log₂(moment + d^α·ε).
pub fn approx_design_entropy_floor(
    moment: f64,
    d: usize,
    alpha: usize,
    eps: f64,
) -> Result<BoundReport, MomentsError> {
    if alpha < 2 {
        return Err(MomentsError::FloorOrder(alpha));
    }
    if !(moment > 0.0 && moment <= 1.0) {
        return Err(MomentsError::MomentRange(moment));
    }
    let shifted = moment + (d as f64).powi(alpha as i32) * eps;
    Ok(BoundReport {
        name: "approx-design-entropy-floor".into(),
        value: -shifted.log2() / (alpha as f64 - 1.0),
        preconditions_met: eps >= 0.0 && shifted > 0.0,
        cited: "per-monomial deviation eps adds at most d^alpha*eps to the moment; floor = log2(1/(moment+d^alpha*eps))/(alpha-1)".into(),
    })
}

/// Entropy floor for an ensemble whose order-α frame operator deviates from
/// the Haar one by at most λ in trace norm: the moment shifts by at most
/// λ/d^α (channels) or λ/binom(d+α−1, α) (states).
pub fn frame_deviation_entropy_floor(
    moment: f64,
    d: usize,
    alpha: usize,
    lambda: f64,
    setting_is_state: bool,
) -> Result<BoundReport, MomentsError> {
    if alpha < 2 {
        return Err(MomentsError::FloorOrder(alpha));
    }
    if !(moment > 0.0 && moment <= 1.0) {
        return Err(MomentsError::MomentRange(moment));
    }
    let denom = if setting_is_state {
        sym_subspace_dim(d, alpha).to_f64().unwrap_or(f64::INFINITY)
    } else {
        (d as f64).powi(alpha as i32)
    };
    let shifted = moment + lambda / denom;
    Ok(BoundReport {
        name: if setting_is_state {
            "state-frame-deviation-entropy-floor".into()
        } else {
            "choi-frame-deviation-entropy-floor".into()
        },
        value: -shifted.log2() / (alpha as f64 - 1.0),
        preconditions_met: lambda >= 0.0,
        cited: "trace-norm frame deviation lambda shifts the moment by at most lambda/d^alpha (channels) or lambda/binom(d+alpha-1,alpha) (states)".into(),
    })
}

/// Exact Haar value γ(t, d) of the unitary frame potential
/// E|tr U|^{2t} = Σ_{λ ⊢ t, ℓ(λ) ≤ d} (f^λ)², which reduces to t! when
/// t ≤ d (all partitions contribute).
pub fn haar_unitary_frame_potential(t: usize, d: usize) -> BigUint {
    let mut total = BigUint::zero();
    for lambda in integer_partitions(t) {
        if lambda.len() > d {
            continue;
        }
        let f = crate::weingarten::sym_irrep_dim(&lambda).expect("valid partition");
        total += &f * &f;
    }
    total
}

/// Haar floor of the unitary frame potential: Φ_t ≥ γ(t, d) =
/// Σ_{λ ⊢ t, ℓ(λ) ≤ d} (f^λ)² (= t! when t ≤ d); equality characterizes
/// unitary t-designs.
pub fn unitary_frame_floor(t: usize, d: usize) -> BoundReport {
    debug_assert!(
        t > d || haar_unitary_frame_potential(t, d) == factorial(t),
        "gamma(t,d) must reduce to t! for t <= d"
    );
    let value = haar_unitary_frame_potential(t, d)
        .to_f64()
        .unwrap_or(f64::INFINITY);
    BoundReport {
        name: "unitary-frame-potential-floor".into(),
        value,
        preconditions_met: true,
        cited: "Phi_t = E|tr(U V^dagger)|^(2t) >= gamma(t,d) = sum over partitions of t with <= d rows of (f^lambda)^2 (= t! for t <= d); equality iff unitary t-design".into(),
    }
}

/// Haar floor of the projective frame potential: Φ_t ≥ 1/binom(d+t−1, t)
/// in the normalization Φ_t = E|⟨ψ|φ⟩|^{2t}; equality characterizes
/// projective t-designs.
pub fn projective_frame_floor(t: usize, d: usize) -> BoundReport {
    let value = 1.0 / sym_subspace_dim(d, t).to_f64().unwrap_or(f64::INFINITY);
    BoundReport {
        name: "projective-frame-potential-floor".into(),
        value,
        preconditions_met: true,
        cited: "Phi_t = E|<psi|phi>|^(2t) >= 1/binom(d+t-1,t), with equality iff the ensemble is a projective t-design".into(),
    }
}

/// All analytic bounds applicable to the given setting at order α, each
/// instantiated with the documented defaults: a = log₂(dim)/α for tuned
/// floors, ε = dim^{−3α} for per-monomial deviations, λ = d (channels) or
/// d_A (states) for frame deviations.
pub fn bound_suite(setting: &Setting, alpha: usize) -> Vec<BoundReport> {
    let mut reports = Vec::new();
    match *setting {
        Setting::Choi(part) => {
            let d = part.total();
            reports.push(choi_trace_power_ceiling(d, alpha));
            reports.push(choi_renyi_entropy_floor(d, alpha));
            let (lo, hi) = if part.d_a <= part.d_b {
                (part.d_a, part.d_b)
            } else {
                (part.d_b, part.d_a)
            };
            reports.push(cycle_sum_ceiling(lo, hi, alpha));
            reports.push(choi_min_entropy_floor(d));
            let a = ((d as f64).log2() / alpha as f64).max(f64::MIN_POSITIVE);
            reports.push(choi_log_order_floor(d, a));
            if alpha >= 2 {
                if let Ok(moment) = haar_choi_moment(&part, alpha) {
                    let m = moment.to_f64().unwrap();
                    let eps = (d as f64).powi(-3 * alpha as i32);
                    if let Ok(r) = approx_design_entropy_floor(m, d, alpha, eps) {
                        reports.push(r);
                    }
                    if let Ok(r) = frame_deviation_entropy_floor(m, d, alpha, d as f64, false) {
                        reports.push(r);
                    }
                }
            }
            reports.push(unitary_frame_floor(alpha, d));
        }
        Setting::State { d_a, d_b } => {
            let (lo, hi) = if d_a <= d_b { (d_a, d_b) } else { (d_b, d_a) };
            reports.push(state_trace_power_ceiling(lo, hi, alpha));
            reports.push(state_renyi_entropy_floor(lo, hi, alpha));
            reports.push(state_renyi_floor_universal(lo, hi));
            reports.push(state_vn_floor_root_ratio(lo, hi, true));
            reports.push(state_norm_power_ceiling(lo, hi, alpha));
            reports.push(state_root_norm_ceiling(lo, hi, true));
            let a = ((lo as f64).log2() / alpha as f64).clamp(f64::MIN_POSITIVE, 1.0);
            reports.push(state_log_order_floor(lo, hi, a));
            if alpha >= 2 {
                if let Ok(moment) = haar_state_moment(d_a, d_b, alpha) {
                    let m = moment.to_f64().unwrap();
                    let lambda = lo as f64;
                    if let Ok(r) =
                        frame_deviation_entropy_floor(m, d_a * d_b, alpha, lambda, true)
                    {
                        reports.push(r);
                    }
                }
            }
            reports.push(projective_frame_floor(alpha, d_a * d_b));
        }
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rational(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn choi_alpha_one_is_exactly_one() {
        for (da, db) in [(2usize, 2usize), (3, 2), (2, 4)] {
            let part = ChoiPartition::symmetric(da, db).unwrap();
            assert_eq!(haar_choi_moment(&part, 1).unwrap(), BigRational::one());
        }
    }

    #[test]
    fn choi_power_of_unit_trace_is_one() {
        // (tr ρ)^s = 1 identically, so the S_{s}-engine must return 1; this
        // exercises the block-cycle τ and the Gram/Weingarten pairing.
        let part = ChoiPartition::symmetric(2, 3).unwrap();
        for s in 1..=6 {
            assert_eq!(
                haar_choi_moment_power(&part, 1, s).unwrap(),
                BigRational::one(),
                "s = {s}"
            );
        }
    }

    #[test]
    fn choi_trivial_environment_is_pure() {
        // d_B = d_D = 1 ⇒ ρ_AC is the pure Choi state: all moments 1.
        let part = ChoiPartition::new(4, 1, 4, 1).unwrap();
        for alpha in 1..=4 {
            assert_eq!(haar_choi_moment(&part, alpha).unwrap(), BigRational::one());
        }
    }

    #[test]
    fn choi_trivial_a_gives_maximally_mixed_c() {
        // d_A = 1 ⇒ ρ_AC = ρ_C = I/d_C exactly: moment d_C^{1−α}.
        let part = ChoiPartition::new(1, 6, 3, 2).unwrap();
        for alpha in 1..=4usize {
            assert_eq!(
                haar_choi_moment(&part, alpha).unwrap(),
                rational(1, 3i64.pow(alpha as u32 - 1)),
            );
        }
    }

    #[test]
    fn choi_equal_split_order_two() {
        // Equal split (√d per factor): E tr ρ_AC² = 2/(d+1).
        for root in 2..=6usize {
            let part = ChoiPartition::symmetric(root, root).unwrap();
            let d = (root * root) as i64;
            assert_eq!(haar_choi_moment(&part, 2).unwrap(), rational(2, d + 1));
        }
    }

    #[test]
    fn state_lubkin_order_two() {
        for (da, db) in [(2usize, 2usize), (2, 8), (4, 4), (3, 9), (8, 8)] {
            let got = haar_state_moment(da, db, 2).unwrap();
            let expect = rational((da + db) as i64, (da * db + 1) as i64);
            assert_eq!(got, expect, "({da},{db})");
        }
    }

    #[test]
    fn state_trivial_environment_is_pure() {
        for alpha in 1..=6 {
            assert_eq!(haar_state_moment(5, 1, alpha).unwrap(), BigRational::one());
        }
    }

    #[test]
    fn page_value_two_by_two() {
        let got = page_average_entropy(2, 2).unwrap();
        assert!((got - (1.0 / 3.0) / std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn contraction_matches_reduction_trace() {
        use crate::entropy::choi_reduced_ac;
        // Fourier matrix on d = 4 with the (2,2) split.
        let d = 4usize;
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / d as f64);
        let u = DMatrix::<Complex64>::from_fn(d, d, |j, k| {
            omega.powu((j * k) as u32) / (d as f64).sqrt()
        });
        let part = ChoiPartition::symmetric(2, 2).unwrap();
        let rho = choi_reduced_ac(&part, &u).unwrap();
        let spec = rho.spectrum().unwrap();
        for alpha in 1..=3usize {
            let direct: f64 = spec.trace_power(alpha as f64);
            let contracted = choi_trace_power_via_contraction(&part, &u, alpha);
            assert!(contracted.im.abs() < 1e-10);
            assert!(
                (contracted.re - direct).abs() < 1e-10,
                "alpha {alpha}: {} vs {direct}",
                contracted.re
            );
        }
    }

    #[test]
    fn state_contraction_matches_reduction() {
        use crate::entropy::state_reduced_a;
        let (da, db) = (2usize, 3usize);
        let mut psi = DVector::<Complex64>::zeros(da * db);
        for (i, v) in psi.iter_mut().enumerate() {
            *v = Complex64::new(1.0 + i as f64, (i as f64) * 0.5 - 1.0);
        }
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        psi /= Complex64::new(norm, 0.0);
        let spec = state_reduced_a(da, db, &psi).unwrap().spectrum().unwrap();
        for alpha in 1..=4usize {
            let direct = spec.trace_power(alpha as f64);
            let contracted = state_trace_power_via_contraction(da, db, &psi, alpha);
            assert!(contracted.im.abs() < 1e-10);
            assert!((contracted.re - direct).abs() < 1e-10, "alpha {alpha}");
        }
    }

    #[test]
    fn unitary_frame_floor_values() {
        // Unrestricted row count: gamma(t, d) = t! whenever t <= d.
        for t in 1..=5 {
            for d in t..=8 {
                assert_eq!(haar_unitary_frame_potential(t, d), factorial(t));
            }
        }
        // Row-restricted values at d = 2: these are the Catalan numbers,
        // since E|tr U|^{2t} over U(2) counts Dyck paths.
        assert_eq!(haar_unitary_frame_potential(1, 2), BigUint::from(1u32));
        assert_eq!(haar_unitary_frame_potential(2, 2), BigUint::from(2u32));
        assert_eq!(haar_unitary_frame_potential(3, 2), BigUint::from(5u32));
        assert_eq!(haar_unitary_frame_potential(4, 2), BigUint::from(14u32));
        assert_eq!(haar_unitary_frame_potential(5, 2), BigUint::from(42u32));
        assert_eq!(crate::symgroup::catalan(4), BigUint::from(14u32));
    }

    #[test]
    fn bound_constants() {
        // m_256 = 4·(8·16)^{1/16}.
        assert!((m_d(256) - 4.0 * 128.0_f64.powf(1.0 / 16.0)).abs() < 1e-12);
        assert!((m_d(4) - 7.0).abs() < 1e-12); // small d saturates the cap
        assert!((h_of_q(0.0) - 1.0).abs() < 1e-15);
        assert!((h_of_q(0.5) - (1.0 + 2.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn suite_is_populated_and_finite_when_preconditions_hold() {
        let part = ChoiPartition::symmetric(4, 4).unwrap();
        for report in bound_suite(&Setting::Choi(part), 2) {
            if report.preconditions_met {
                assert!(report.value.is_finite(), "{}", report.name);
            }
        }
        for report in bound_suite(&Setting::State { d_a: 4, d_b: 16 }, 3) {
            if report.preconditions_met {
                assert!(report.value.is_finite(), "{}", report.name);
            }
        }
    }
}
