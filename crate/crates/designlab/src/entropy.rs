//! Unified entropy families on spectra and density matrices, plus the
//! Choi-state reductions of a unitary and related structural helpers
//! (majorization, mutual informations, continuity bounds).
//!
//! All entropies are reported in **bits** (base-2 logarithms). The unified
//! family is indexed by an order α ≥ 0 (possibly ∞) and a family parameter
//! s ≥ 0:
//!
//! * s = 0 is the Rényi entropy (1/(1−α))·log₂ Σλ^α,
//! * s = 1 is the Tsallis entropy, rescaled by 1/ln 2 so its α → 1 limit is
//!   the von Neumann entropy in bits,
//! * general s > 0 is [(Σλ^α)^s − 1]/(s(1−α) ln 2), which recovers the two
//!   cases above in the s → 0 and s = 1 limits.
//!
//! Limit conventions: α = 1 returns the von Neumann entropy for every s;
//! α = 0 returns the Hartley entropy log₂ rank; α = ∞ returns the min
//! entropy −log₂ λ_max for every s (the literal iterated limit of the s > 0
//! expression at fixed s degenerates to 0, so the operationally meaningful
//! min entropy is used instead).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EntropyError {
    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |ρ − ρ†| element = {deviation}")]
    NotHermitian { deviation: f64 },
    #[error("matrix trace is not 1: trace = {trace}")]
    TraceNotOne { trace: f64 },
    #[error("matrix is not unitary: max |U†U − I| element = {deviation}")]
    NotUnitary { deviation: f64 },
    #[error("eigenvalue {value} is negative beyond tolerance")]
    NegativeEigenvalue { value: f64 },
    #[error("spectrum entries must sum to 1 (got {sum})")]
    SpectrumSum { sum: f64 },
    #[error("spectrum must be nonempty")]
    EmptySpectrum,
    #[error("entropy order requires alpha >= 0 and s >= 0 (got alpha = {alpha}, s = {s})")]
    InvalidOrder { alpha: f64, s: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subsystem dimensions must be positive and consistent")]
    BadPartition,
    #[error("parameter out of range: {0}")]
    ParameterRange(&'static str),
}

/// Hermiticity / trace tolerance for density-matrix validation.
pub const MATRIX_TOL: f64 = 1e-10;
/// Tail tolerance for spectra: sums must match 1 to this accuracy and
/// entries may be clamped up from at most this far below zero.
pub const SPECTRUM_TOL: f64 = 1e-12;
/// Eigenvalues below this threshold do not count toward the rank.
pub const RANK_CUTOFF: f64 = 1e-12;

/// A validated probability spectrum, stored in nonincreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Validate entries (each ≥ −1e−12, clamped to [0, 1]; sum within
    /// 1e−12 of 1), sort nonincreasing, and renormalize exactly to sum 1.
    pub fn new(mut values: Vec<f64>) -> Result<Self, EntropyError> {
        if values.is_empty() {
            return Err(EntropyError::EmptySpectrum);
        }
        for v in &mut values {
            if *v < -SPECTRUM_TOL {
                return Err(EntropyError::NegativeEigenvalue { value: *v });
            }
            *v = v.clamp(0.0, 1.0);
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SPECTRUM_TOL {
            return Err(EntropyError::SpectrumSum { sum });
        }
        for v in &mut values {
            *v /= sum;
        }
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(Spectrum { values })
    }

    /// Uniform spectrum on d outcomes.
    pub fn uniform(d: usize) -> Self {
        Spectrum {
            values: vec![1.0 / d as f64; d],
        }
    }

    /// Deterministic (pure-state) spectrum on d outcomes.
    pub fn pure(d: usize) -> Self {
        let mut values = vec![0.0; d];
        values[0] = 1.0;
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    /// Σ λ^α for α > 0 (entries equal to zero contribute zero).
    pub fn trace_power(&self, alpha: f64) -> f64 {
        self.values
            .iter()
            .filter(|&&v| v > 0.0)
            .map(|&v| v.powf(alpha))
            .sum()
    }

    /// Number of entries above the rank cutoff.
    pub fn rank(&self) -> usize {
        self.values.iter().filter(|&&v| v > RANK_CUTOFF).count()
    }

    /// Spectrum of a tensor product: all pairwise products.
    pub fn tensor(&self, other: &Spectrum) -> Spectrum {
        let mut values: Vec<f64> = self
            .values
            .iter()
            .flat_map(|&a| other.values.iter().map(move |&b| a * b))
            .collect();
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Spectrum { values }
    }
}

/// Order of a unified entropy: α ∈ [0, ∞] and family parameter s ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyOrder {
    pub alpha: f64,
    pub s: f64,
}

impl EntropyOrder {
    pub fn new(alpha: f64, s: f64) -> Result<Self, EntropyError> {
        if alpha.is_nan() || s.is_nan() || alpha < 0.0 || s < 0.0 || s.is_infinite() {
            return Err(EntropyError::InvalidOrder { alpha, s });
        }
        Ok(EntropyOrder { alpha, s })
    }

    pub fn renyi(alpha: f64) -> Result<Self, EntropyError> {
        Self::new(alpha, 0.0)
    }

    pub fn tsallis(alpha: f64) -> Result<Self, EntropyError> {
        Self::new(alpha, 1.0)
    }

    pub fn von_neumann() -> Self {
        EntropyOrder { alpha: 1.0, s: 0.0 }
    }

    pub fn min() -> Self {
        EntropyOrder {
            alpha: f64::INFINITY,
            s: 0.0,
        }
    }

    pub fn hartley() -> Self {
        EntropyOrder { alpha: 0.0, s: 0.0 }
    }
}

/// Unified entropy of a spectrum, in bits. See the module docs for the
/// branch conventions at α ∈ {0, 1, ∞}.
pub fn unified_entropy(order: EntropyOrder, spectrum: &Spectrum) -> f64 {
    let alpha = order.alpha;
    if alpha.is_infinite() {
        return -spectrum.max().log2();
    }
    if alpha == 0.0 {
        return (spectrum.rank() as f64).log2();
    }
    if (alpha - 1.0).abs() < 1e-12 {
        return von_neumann_entropy(spectrum);
    }
    let t = spectrum.trace_power(alpha);
    if order.s == 0.0 {
        t.log2() / (1.0 - alpha)
    } else {
        (t.powf(order.s) - 1.0) / (order.s * (1.0 - alpha) * std::f64::consts::LN_2)
    }
}

/// Rényi entropy of order α, in bits.
pub fn renyi_entropy(alpha: f64, spectrum: &Spectrum) -> f64 {
    unified_entropy(
        EntropyOrder::renyi(alpha).expect("alpha must be nonnegative"),
        spectrum,
    )
}

/// Shannon / von Neumann entropy in bits.
pub fn von_neumann_entropy(spectrum: &Spectrum) -> f64 {
    -spectrum
        .values()
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.log2())
        .sum::<f64>()
}

/// Min entropy −log₂ λ_max in bits.
pub fn min_entropy(spectrum: &Spectrum) -> f64 {
    -spectrum.max().log2()
}

/// The spectrum with one peak λ₁ = d^{−(α̃−1)/α̃} and the remaining weight
/// spread uniformly: the extremal profile that keeps the order-α̃ Rényi
/// entropy within one bit of log₂ d while collapsing the min entropy to
/// ((α̃−1)/α̃)·log₂ d.
pub fn single_peak_spectrum(d: usize, alpha_tilde: f64) -> Result<Spectrum, EntropyError> {
    if d == 0 {
        return Err(EntropyError::EmptySpectrum);
    }
    if !(alpha_tilde > 1.0) || alpha_tilde.is_infinite() {
        return Err(EntropyError::ParameterRange("alpha_tilde must be in (1, ∞)"));
    }
    let df = d as f64;
    let peak = df.powf(-(alpha_tilde - 1.0) / alpha_tilde);
    let mut values = vec![0.0; d];
    values[0] = peak;
    if d > 1 {
        let rest = (1.0 - peak) / (d as f64 - 1.0);
        for v in values.iter_mut().skip(1) {
            *v = rest;
        }
    }
    Spectrum::new(values)
}

/// Exact reduced spectrum of the two-group invariant construction: the
/// largest ensemble-averaged eigenvalue compatible with the order-2
/// trace-power constraint tr ρ_A² = (d_A + d_B)/(d_A d_B + 1), with the
/// remaining d_A − 1 eigenvalues equal.
pub fn gap_design_spectrum(d_a: usize, d_b: usize) -> Result<Spectrum, EntropyError> {
    if d_a == 0 || d_b == 0 {
        return Err(EntropyError::BadPartition);
    }
    let (da, db) = (d_a as f64, d_b as f64);
    let n = da * db + 1.0;
    let root = ((da + 1.0) * n).sqrt();
    let lam1 = (n + (da - 1.0) * root) / (da * n);
    let rest = (n - root) / (da * n);
    let mut values = vec![rest; d_a];
    values[0] = lam1;
    Spectrum::new(values)
}

/// A validated density matrix (Hermitian, unit trace).
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: DMatrix<Complex64>,
}

fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let adj = m.adjoint();
    m.iter()
        .zip(adj.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

impl DensityMatrix {
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self, EntropyError> {
        if mat.nrows() != mat.ncols() {
            return Err(EntropyError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let dev = hermitian_deviation(&mat);
        if dev > MATRIX_TOL {
            return Err(EntropyError::NotHermitian { deviation: dev });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > MATRIX_TOL || tr.im.abs() > MATRIX_TOL {
            return Err(EntropyError::TraceNotOne { trace: tr.re });
        }
        Ok(DensityMatrix { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Eigenvalues as a validated spectrum. Small negative eigenvalues from
    /// floating-point roundoff (above −1e−10) are clamped to zero before
    /// renormalization; anything lower is an error.
    ///
    /// The tridiagonal QL solver can emit non-finite values on matrices with
    /// large exactly-degenerate blocks; in that case the spectrum is
    /// recovered from the singular values, which coincide with the
    /// eigenvalues for these positive-semidefinite matrices.
    pub fn spectrum(&self) -> Result<Spectrum, EntropyError> {
        let eig = self.mat.clone().symmetric_eigen();
        let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        if values.iter().any(|v| !v.is_finite()) {
            let svd = self.mat.clone().svd(false, false);
            values = svd.singular_values.iter().copied().collect();
        }
        for v in &mut values {
            if *v < -1e-10 {
                return Err(EntropyError::NegativeEigenvalue { value: *v });
            }
            *v = v.clamp(0.0, 1.0);
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(EntropyError::SpectrumSum { sum });
        }
        for v in &mut values {
            *v /= sum;
        }
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(Spectrum { values })
    }
}

/// Max-element deviation of U from unitarity, max |(U†U − I)_{ij}|.
pub fn unitarity_deviation(u: &DMatrix<Complex64>) -> f64 {
    let d = u.ncols();
    let gram = u.adjoint() * u;
    let mut dev: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let expect = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            dev = dev.max((gram[(i, j)] - expect).norm());
        }
    }
    dev
}

fn check_unitary(u: &DMatrix<Complex64>) -> Result<(), EntropyError> {
    if u.nrows() != u.ncols() {
        return Err(EntropyError::NotSquare {
            rows: u.nrows(),
            cols: u.ncols(),
        });
    }
    let dev = unitarity_deviation(u);
    if dev > MATRIX_TOL {
        return Err(EntropyError::NotUnitary { deviation: dev });
    }
    Ok(())
}

/// Tensor factorizations of the input space (A ⊗ B) and output space
/// (C ⊗ D) of a d-dimensional unitary, with d = d_A·d_B = d_C·d_D.
///
/// The fields are public (and deserializable) for convenience; every
/// function consuming a partition re-checks d_A·d_B = d_C·d_D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ChoiPartition {
    pub d_a: usize,
    pub d_b: usize,
    pub d_c: usize,
    pub d_d: usize,
}

impl ChoiPartition {
    pub fn new(d_a: usize, d_b: usize, d_c: usize, d_d: usize) -> Result<Self, EntropyError> {
        if d_a == 0 || d_b == 0 || d_c == 0 || d_d == 0 || d_a * d_b != d_c * d_d {
            return Err(EntropyError::BadPartition);
        }
        Ok(ChoiPartition { d_a, d_b, d_c, d_d })
    }

    /// Same split on both sides: C ≅ A, D ≅ B.
    pub fn symmetric(d_a: usize, d_b: usize) -> Result<Self, EntropyError> {
        Self::new(d_a, d_b, d_a, d_b)
    }

    /// Total dimension d = d_A d_B = d_C d_D.
    pub fn total(&self) -> usize {
        self.d_a * self.d_b
    }
}

/// Reduced state on A ⊗ C of the Choi state of U. Input basis |k l⟩ with
/// k ∈ A, l ∈ B (index k·d_B + l); output basis |m o⟩ with m ∈ C, o ∈ D
/// (index m·d_D + o). Computed as (1/d)·M M† with
/// M[(k·d_C + m), (l·d_D + o)] = U[(m·d_D + o), (k·d_B + l)].
pub fn choi_reduced_ac(
    part: &ChoiPartition,
    u: &DMatrix<Complex64>,
) -> Result<DensityMatrix, EntropyError> {
    let d = part.total();
    if part.d_c * part.d_d != d || part.d_a == 0 || part.d_c == 0 {
        return Err(EntropyError::BadPartition);
    }
    if u.nrows() != d {
        return Err(EntropyError::DimensionMismatch {
            expected: d,
            got: u.nrows(),
        });
    }
    check_unitary(u)?;
    let (da, db, dc, dd) = (part.d_a, part.d_b, part.d_c, part.d_d);
    let m = DMatrix::<Complex64>::from_fn(da * dc, db * dd, |row, col| {
        let (k, mm) = (row / dc, row % dc);
        let (l, o) = (col / dd, col % dd);
        u[(mm * dd + o, k * db + l)]
    });
    let rho = (&m * m.adjoint()).map(|z| z / d as f64);
    DensityMatrix::new(rho)
}

/// Reduced state on A ⊗ D of the Choi state of U (same conventions as
/// `choi_reduced_ac`).
pub fn choi_reduced_ad(
    part: &ChoiPartition,
    u: &DMatrix<Complex64>,
) -> Result<DensityMatrix, EntropyError> {
    let d = part.total();
    if part.d_c * part.d_d != d || part.d_a == 0 || part.d_c == 0 {
        return Err(EntropyError::BadPartition);
    }
    if u.nrows() != d {
        return Err(EntropyError::DimensionMismatch {
            expected: d,
            got: u.nrows(),
        });
    }
    check_unitary(u)?;
    let (da, db, dc, dd) = (part.d_a, part.d_b, part.d_c, part.d_d);
    let m = DMatrix::<Complex64>::from_fn(da * dd, db * dc, |row, col| {
        let (k, o) = (row / dd, row % dd);
        let (l, mm) = (col / dc, col % dc);
        u[(mm * dd + o, k * db + l)]
    });
    let rho = (&m * m.adjoint()).map(|z| z / d as f64);
    DensityMatrix::new(rho)
}

/// Reduced state on A of a pure bipartite state vector ψ ∈ C^{d_A d_B}
/// (basis |a b⟩ at index a·d_B + b): ρ_A = Ψ Ψ† with Ψ the d_A × d_B
/// reshape of ψ.
pub fn state_reduced_a(
    d_a: usize,
    d_b: usize,
    psi: &DVector<Complex64>,
) -> Result<DensityMatrix, EntropyError> {
    if d_a == 0 || d_b == 0 {
        return Err(EntropyError::BadPartition);
    }
    if psi.len() != d_a * d_b {
        return Err(EntropyError::DimensionMismatch {
            expected: d_a * d_b,
            got: psi.len(),
        });
    }
    let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm2 - 1.0).abs() > 1e-12 {
        return Err(EntropyError::TraceNotOne { trace: norm2 });
    }
    let m = DMatrix::<Complex64>::from_fn(d_a, d_b, |a, b| psi[a * d_b + b]);
    DensityMatrix::new(&m * m.adjoint())
}

/// Which tensor factor of a bipartite system to keep under a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Partial trace of a (d_a·d_b)-dimensional matrix over one factor
/// (basis |a b⟩ at index a·d_b + b).
pub fn partial_trace(
    rho: &DMatrix<Complex64>,
    d_a: usize,
    d_b: usize,
    keep: Keep,
) -> Result<DMatrix<Complex64>, EntropyError> {
    if rho.nrows() != d_a * d_b || rho.ncols() != d_a * d_b {
        return Err(EntropyError::DimensionMismatch {
            expected: d_a * d_b,
            got: rho.nrows(),
        });
    }
    match keep {
        Keep::First => {
            let mut out = DMatrix::<Complex64>::zeros(d_a, d_a);
            for a in 0..d_a {
                for ap in 0..d_a {
                    let mut sum = Complex64::new(0.0, 0.0);
                    for b in 0..d_b {
                        sum += rho[(a * d_b + b, ap * d_b + b)];
                    }
                    out[(a, ap)] = sum;
                }
            }
            Ok(out)
        }
        Keep::Second => {
            let mut out = DMatrix::<Complex64>::zeros(d_b, d_b);
            for b in 0..d_b {
                for bp in 0..d_b {
                    let mut sum = Complex64::new(0.0, 0.0);
                    for a in 0..d_a {
                        sum += rho[(a * d_b + b, a * d_b + bp)];
                    }
                    out[(b, bp)] = sum;
                }
            }
            Ok(out)
        }
    }
}

/// Von Neumann mutual informations of the Choi state of a unitary, in bits.
/// The global state is pure and both marginals ρ_AB and ρ_CD are maximally
/// mixed, so I(A:CD) = 2·log₂ d_A exactly and the other informations reduce
/// to subsystem entropies of the computed reductions.
#[derive(Debug, Clone, Copy)]
pub struct ChannelMutualInfo {
    pub i_ac: f64,
    pub i_ad: f64,
    pub i_acd: f64,
    /// −I₃ = I(A:CD) − I(A:C) − I(A:D); positive values witness scrambling.
    pub neg_tripartite: f64,
}

pub fn choi_mutual_info(
    part: &ChoiPartition,
    u: &DMatrix<Complex64>,
) -> Result<ChannelMutualInfo, EntropyError> {
    let s_ac = von_neumann_entropy(&choi_reduced_ac(part, u)?.spectrum()?);
    let s_ad = von_neumann_entropy(&choi_reduced_ad(part, u)?.spectrum()?);
    let i_ac = ((part.d_a * part.d_c) as f64).log2() - s_ac;
    let i_ad = ((part.d_a * part.d_d) as f64).log2() - s_ad;
    let i_acd = 2.0 * (part.d_a as f64).log2();
    Ok(ChannelMutualInfo {
        i_ac,
        i_ad,
        i_acd,
        neg_tripartite: i_acd - i_ac - i_ad,
    })
}

/// Does x majorize y? Both are probability spectra (already sorted
/// nonincreasing); checks every prefix sum with additive tolerance 1e−10.
pub fn majorizes(x: &Spectrum, y: &Spectrum) -> bool {
    let n = x.dim().max(y.dim());
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..n {
        cx += x.values().get(i).copied().unwrap_or(0.0);
        cy += y.values().get(i).copied().unwrap_or(0.0);
        if cx < cy - 1e-10 {
            return false;
        }
    }
    true
}

/// Continuity bound for unified entropies of order α > 1 in bits: two
/// states at trace distance ε on a d-dimensional space satisfy
/// |S − S′| ≤ χ_s·[ε^α·ln_α(d−1) + H^(α)(ε, 1−ε)] / ln 2, where
/// ln_α(x) = (x^{1−α} − 1)/(1−α) and H^(α) is the binary order-α Tsallis
/// entropy. The prefactor χ_s is 1 for s ≥ 1 and the conservative envelope
/// d^{2(α−1)} for 0 ≤ s < 1 (which covers the Rényi case).
pub fn fannes_bound(alpha: f64, s: f64, d: usize, eps: f64) -> Result<f64, EntropyError> {
    if !(alpha > 1.0) || alpha.is_infinite() {
        return Err(EntropyError::ParameterRange("alpha must be in (1, ∞)"));
    }
    if s < 0.0 || !(0.0..=1.0).contains(&eps) || d < 2 {
        return Err(EntropyError::ParameterRange(
            "need s >= 0, eps in [0,1], d >= 2",
        ));
    }
    let df = d as f64;
    let ln_alpha = |x: f64| (x.powf(1.0 - alpha) - 1.0) / (1.0 - alpha);
    let h_alpha = (eps.powf(alpha) + (1.0 - eps).powf(alpha) - 1.0) / (1.0 - alpha);
    let chi = if s >= 1.0 {
        1.0
    } else {
        df.powf(2.0 * (alpha - 1.0))
    };
    Ok(chi * (eps.powf(alpha) * ln_alpha(df - 1.0) + h_alpha) / std::f64::consts::LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn entropy_limits_agree() {
        let p = spec(&[0.5, 0.25, 0.125, 0.125]);
        // Rényi at α close to 1 approaches the von Neumann value.
        let vn = von_neumann_entropy(&p);
        let near = renyi_entropy(1.0 + 1e-9, &p);
        assert!((vn - near).abs() < 1e-6);
        // s → 0 limit of the s-family approaches the Rényi value.
        let r2 = renyi_entropy(2.0, &p);
        let s_small = unified_entropy(EntropyOrder::new(2.0, 1e-9).unwrap(), &p);
        assert!((r2 - s_small).abs() < 1e-6);
        // Large α approaches the min entropy.
        let mn = min_entropy(&p);
        let big = renyi_entropy(200.0, &p);
        assert!((mn - big).abs() < 0.02);
    }

    #[test]
    fn uniform_spectrum_values() {
        let p = Spectrum::uniform(8);
        for alpha in [0.0, 0.5, 1.0, 2.0, 5.0] {
            let h = unified_entropy(EntropyOrder::renyi(alpha).unwrap(), &p);
            assert!((h - 3.0).abs() < 1e-12, "alpha {alpha}: {h}");
        }
        assert!((min_entropy(&p) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn tsallis_of_uniform() {
        // s = 1, α = 2 on uniform(d): (1 − 1/d)/ln 2 … scaled Tsallis.
        let d = 4usize;
        let p = Spectrum::uniform(d);
        let t = unified_entropy(EntropyOrder::tsallis(2.0).unwrap(), &p);
        let expect = (1.0 - 1.0 / d as f64) / std::f64::consts::LN_2;
        assert!((t - expect).abs() < 1e-12);
    }

    #[test]
    fn single_peak_properties() {
        let d = 64usize;
        let at = 2.0;
        let p = single_peak_spectrum(d, at).unwrap();
        // Min entropy collapses to ((α̃−1)/α̃) log₂ d.
        let expect_min = (at - 1.0) / at * (d as f64).log2();
        assert!((min_entropy(&p) - expect_min).abs() < 1e-9);
        // Order-α̃ Rényi entropy stays within one bit of log₂ d.
        assert!(renyi_entropy(at, &p) >= (d as f64).log2() - 1.0);
    }

    #[test]
    fn gap_spectrum_purity() {
        for (da, db) in [(2usize, 2usize), (2, 8), (4, 4), (3, 27), (8, 64)] {
            let p = gap_design_spectrum(da, db).unwrap();
            let purity = p.trace_power(2.0);
            let expect = (da + db) as f64 / (da * db + 1) as f64;
            assert!(
                (purity - expect).abs() < 1e-12,
                "({da},{db}): {purity} vs {expect}"
            );
        }
    }

    #[test]
    fn identity_choi_reductions() {
        // For U = I with the symmetric split, ρ_AC is the pure maximally
        // entangled state between A and C (perfect correlation, S(AC) = 0);
        // ρ_AD is maximally mixed.
        let part = ChoiPartition::symmetric(2, 3).unwrap();
        let u = DMatrix::<Complex64>::identity(6, 6);
        let ac = choi_reduced_ac(&part, &u).unwrap().spectrum().unwrap();
        assert_eq!(ac.rank(), 1);
        assert!((ac.max() - 1.0).abs() < 1e-12);
        let ad = choi_reduced_ad(&part, &u).unwrap().spectrum().unwrap();
        assert_eq!(ad.rank(), 6);
        assert!((ad.max() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn swap_choi_reductions() {
        // For d_A = d_B = d_C = d_D and U = SWAP, the A↔D correlation is
        // maximal instead: ρ_AD is pure, ρ_AC is maximally mixed.
        let part = ChoiPartition::symmetric(2, 2).unwrap();
        let mut u = DMatrix::<Complex64>::zeros(4, 4);
        for a in 0..2 {
            for b in 0..2 {
                u[(b * 2 + a, a * 2 + b)] = Complex64::new(1.0, 0.0);
            }
        }
        let ac = choi_reduced_ac(&part, &u).unwrap().spectrum().unwrap();
        assert_eq!(ac.rank(), 4);
        let ad = choi_reduced_ad(&part, &u).unwrap().spectrum().unwrap();
        assert_eq!(ad.rank(), 1);
        let info = choi_mutual_info(&part, &u).unwrap();
        assert!((info.i_ad - 2.0).abs() < 1e-9);
        assert!(info.i_ac.abs() < 1e-9);
        assert!((info.i_acd - 2.0).abs() < 1e-12);
    }

    #[test]
    fn state_reduction_bell() {
        let z = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let psi = DVector::from_vec(vec![z, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), z]);
        let rho = state_reduced_a(2, 2, &psi).unwrap();
        let s = rho.spectrum().unwrap();
        assert!((s.max() - 0.5).abs() < 1e-12);
        assert!((von_neumann_entropy(&s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn majorization_basics() {
        let top = spec(&[1.0, 0.0]);
        let uni = Spectrum::uniform(2);
        assert!(majorizes(&top, &uni));
        assert!(!majorizes(&uni, &top));
        assert!(majorizes(&uni, &uni));
    }

    #[test]
    fn partial_trace_consistency() {
        // ρ = |φ⟩⟨φ| for product φ = x ⊗ y: both partial traces are pure.
        let x = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let y = [
            Complex64::new(0.5, 0.5),
            Complex64::new(0.5, -0.5),
        ];
        let mut psi = DVector::<Complex64>::zeros(4);
        for a in 0..2 {
            for b in 0..2 {
                psi[a * 2 + b] = x[a] * y[b];
            }
        }
        let rho = &psi * psi.adjoint();
        let ra = partial_trace(&rho, 2, 2, Keep::First).unwrap();
        let rb = partial_trace(&rho, 2, 2, Keep::Second).unwrap();
        let pa = DensityMatrix::new(ra).unwrap().spectrum().unwrap();
        let pb = DensityMatrix::new(rb).unwrap().spectrum().unwrap();
        assert!((pa.max() - 1.0).abs() < 1e-12);
        assert!((pb.max() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fannes_bound_on_binary_flip() {
        // Diagonal qubit states (1,0) and (1−ε, ε), trace distance ε.
        let alpha = 2.0;
        let eps = 0.01;
        let a = spec(&[1.0, 0.0]);
        let b = spec(&[0.99, 0.01]);
        let gap = (renyi_entropy(alpha, &a) - renyi_entropy(alpha, &b)).abs();
        let bound = fannes_bound(alpha, 0.0, 2, eps).unwrap();
        assert!(gap <= bound, "gap {gap} bound {bound}");
        let t_gap = (unified_entropy(EntropyOrder::tsallis(alpha).unwrap(), &a)
            - unified_entropy(EntropyOrder::tsallis(alpha).unwrap(), &b))
        .abs();
        let t_bound = fannes_bound(alpha, 1.0, 2, eps).unwrap();
        assert!(t_gap <= t_bound, "gap {t_gap} bound {t_bound}");
    }
}
