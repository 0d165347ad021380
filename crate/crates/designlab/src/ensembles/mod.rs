//! Seeded ensemble samplers and Monte Carlo estimation.
//!
//! The exact layers compute group-theoretic averages in closed form; this
//! module produces the matching empirical numbers.  It provides
//!   * samplers for Haar-random unitaries and states, uniform Pauli and
//!     Clifford operators, shallow local random circuits, and a "partial
//!     scrambler" that randomizes only a corner subspace,
//!   * a deterministic, parallel Monte Carlo driver (`mc_run`) whose output
//!     is a function of the seed alone, independent of worker count,
//!   * frame potentials Φ_t measuring how far an ensemble is from the Haar
//!     measure, with dense, pairwise-sampled, group-collapsed, and exact
//!     variants.
//!
//! Reproducibility contract: sample `i` of a run with seed `s` is generated
//! from a dedicated ChaCha stream (`seed_from_u64(s)` + `set_stream(i)`), so
//! results are bitwise identical for any thread count.

pub mod clifford;
pub mod cyclotomic;
pub mod symplectic;

use crate::entropy::{ChoiPartition, EntropyOrder, Spectrum};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnsemblesError {
    #[error("ensemble dimension {ensemble} does not match region dimension {region}")]
    DimensionMismatch { ensemble: usize, region: usize },
    #[error("a state ensemble needs a state region and a unitary ensemble a channel region")]
    RegionKindMismatch,
    #[error("sample count {0} is below the minimum of 2")]
    TooFewSamples(usize),
    #[error("dimension {0} is not a perfect square")]
    NotPerfectSquare(usize),
    #[error("inner side {inner} exceeds the lattice side {side}")]
    InnerTooLarge { inner: usize, side: usize },
    #[error("local circuits need at least 2 qubits, got {0}")]
    ChainTooShort(usize),
    #[error("qubit count {0} too large for dense simulation (limit {1})")]
    TooManyQubits(usize, usize),
    #[error("dense frame operator dimension {0} exceeds the limit {1}")]
    FrameOperatorTooLarge(usize, usize),
    #[error("frame potential order must be in 1..=4")]
    OrderOutOfRange(usize),
    #[error("empty ensemble")]
    EmptyEnsemble,
    #[error("observable has invalid parameters")]
    InvalidObservable,
}

/// Description of a random ensemble, serializable for CLI round trips.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EnsembleSpec {
    /// Haar-random unitary on a d-dimensional space.
    HaarUnitary { d: usize },
    /// Haar-random pure state on a d-dimensional space.
    HaarState { d: usize },
    /// Uniformly random n-qubit Pauli operator (modulo phase).
    Pauli { n: usize },
    /// Uniformly random n-qubit Clifford operator (modulo phase).
    Clifford { n: usize },
    /// Brickwork-free local circuit: `depth` two-site Haar gates, each on a
    /// uniformly random adjacent pair of an n-qubit open chain.
    LocalCircuit { n: usize, depth: usize },
    /// Identity except for a draw of the inner ensemble on the corner
    /// subspace spanned by |m⟩|o⟩ with m, o < D, where D² is the inner
    /// ensemble's dimension and d = side² is bipartitioned into side × side.
    PartialScrambler { d: usize, inner: Box<EnsembleSpec> },
}

impl EnsembleSpec {
    /// Hilbert-space dimension of the sampled objects.
    pub fn dim(&self) -> usize {
        match *self {
            EnsembleSpec::HaarUnitary { d } | EnsembleSpec::HaarState { d } => d,
            EnsembleSpec::Pauli { n } | EnsembleSpec::Clifford { n } => 1 << n,
            EnsembleSpec::LocalCircuit { n, .. } => 1 << n,
            EnsembleSpec::PartialScrambler { d, .. } => d,
        }
    }

    pub fn is_state_ensemble(&self) -> bool {
        matches!(self, EnsembleSpec::HaarState { .. })
    }

    /// Validate static parameters (dense-simulation limits, square dims).
    pub fn validate(&self) -> Result<(), EnsemblesError> {
        match self {
            &EnsembleSpec::Pauli { n } => {
                if n == 0 || n > 6 {
                    return Err(EnsemblesError::TooManyQubits(n, 6));
                }
            }
            &EnsembleSpec::Clifford { n } => {
                if n == 0 || n > 5 {
                    return Err(EnsemblesError::TooManyQubits(n, 5));
                }
            }
            &EnsembleSpec::LocalCircuit { n, .. } => {
                if n < 2 {
                    return Err(EnsemblesError::ChainTooShort(n));
                }
                if n > 10 {
                    return Err(EnsemblesError::TooManyQubits(n, 10));
                }
            }
            EnsembleSpec::PartialScrambler { d, inner } => {
                let side = integer_sqrt(*d).ok_or(EnsemblesError::NotPerfectSquare(*d))?;
                if inner.is_state_ensemble() {
                    return Err(EnsemblesError::RegionKindMismatch);
                }
                inner.validate()?;
                let corner = integer_sqrt(inner.dim())
                    .ok_or(EnsemblesError::NotPerfectSquare(inner.dim()))?;
                if corner > side {
                    return Err(EnsemblesError::InnerTooLarge { inner: corner, side });
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Draw one sample with the given generator.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Sample {
        match self {
            &EnsembleSpec::HaarUnitary { d } => Sample::Unitary(sample_haar_unitary(d, rng)),
            &EnsembleSpec::HaarState { d } => Sample::State(sample_haar_state(d, rng)),
            &EnsembleSpec::Pauli { n } => Sample::Unitary(sample_pauli(n, rng)),
            &EnsembleSpec::Clifford { n } => Sample::Unitary(sample_clifford_dense(n, rng)),
            &EnsembleSpec::LocalCircuit { n, depth } => {
                Sample::Unitary(sample_local_circuit(n, depth, rng))
            }
            EnsembleSpec::PartialScrambler { d, inner } => {
                let corner = match inner.sample(rng) {
                    Sample::Unitary(u) => u,
                    Sample::State(_) => panic!("inner ensemble must be a unitary ensemble"),
                };
                Sample::Unitary(embed_corner_unitary(*d, &corner))
            }
        }
    }
}

/// One draw from an ensemble.
#[derive(Clone, Debug)]
pub enum Sample {
    Unitary(DMatrix<Complex64>),
    State(DVector<Complex64>),
}

/// Which reduced density matrix to analyze.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChoiSide {
    /// Input block A together with output block C.
    Ac,
    /// Input block A together with output block D.
    Ad,
}

/// The subsystem whose spectrum is analyzed for each sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Region {
    /// Reduced block of the Choi state of a unitary channel.
    Choi { part: ChoiPartition, side: ChoiSide },
    /// Reduced state of the first tensor factor of a bipartite pure state.
    State { d_a: usize, d_b: usize },
}

impl Region {
    pub fn total_dim(&self) -> usize {
        match *self {
            Region::Choi { part, .. } => part.total(),
            Region::State { d_a, d_b } => d_a * d_b,
        }
    }

    fn wants_state(&self) -> bool {
        matches!(self, Region::State { .. })
    }
}

/// Scalar functions of the reduced spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Observable {
    /// tr ρ^α.
    TracePower { alpha: usize },
    /// (tr ρ^α)^s.
    TracePowerPower { alpha: usize, s: usize },
    /// Rényi entropy of order α in bits (α = 1 gives von Neumann).
    RenyiEntropy { alpha: f64 },
    /// Shannon entropy of the spectrum in bits.
    VonNeumannEntropy,
    /// −log₂ of the largest eigenvalue.
    MinEntropy,
    /// Largest eigenvalue ‖ρ‖∞.
    OperatorNorm,
    /// √‖ρ‖∞.
    SqrtOperatorNorm,
}

impl Observable {
    /// Reject malformed parameters (e.g. a NaN or negative Rényi order)
    /// before any sampling starts.
    pub fn validate(&self) -> Result<(), EnsemblesError> {
        match *self {
            Observable::RenyiEntropy { alpha } => {
                EntropyOrder::renyi(alpha).map_err(|_| EnsemblesError::InvalidObservable)?;
            }
            Observable::TracePower { alpha } | Observable::TracePowerPower { alpha, .. } => {
                if alpha == 0 {
                    return Err(EnsemblesError::InvalidObservable);
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn evaluate(&self, spectrum: &Spectrum) -> f64 {
        match *self {
            Observable::TracePower { alpha } => spectrum.trace_power(alpha as f64),
            Observable::TracePowerPower { alpha, s } => {
                spectrum.trace_power(alpha as f64).powi(s as i32)
            }
            Observable::RenyiEntropy { alpha } => {
                let order = EntropyOrder::renyi(alpha).expect("validated before running");
                crate::entropy::unified_entropy(order, spectrum)
            }
            Observable::VonNeumannEntropy => {
                crate::entropy::unified_entropy(EntropyOrder::von_neumann(), spectrum)
            }
            Observable::MinEntropy => {
                crate::entropy::unified_entropy(EntropyOrder::min(), spectrum)
            }
            Observable::OperatorNorm => spectrum.max(),
            Observable::SqrtOperatorNorm => spectrum.max().sqrt(),
        }
    }
}

/// Monte Carlo estimate with its standard error.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
}

impl MomentEstimate {
    /// |mean − reference| in units of the standard error.  A zero standard
    /// error with a nonzero deviation reports infinity.
    pub fn z_score(&self, reference: f64) -> f64 {
        let dev = (self.mean - reference).abs();
        if self.stderr > 0.0 {
            dev / self.stderr
        } else if dev == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Integer square root when exact.
fn integer_sqrt(d: usize) -> Option<usize> {
    let r = (d as f64).sqrt().round() as usize;
    (r * r == d).then_some(r)
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-random unitary via QR of a complex Ginibre matrix, with the phase
/// convention that makes the R diagonal positive (this correction is what
/// turns plain QR into an exactly Haar-distributed draw).
pub fn sample_haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    assert!(d >= 1);
    let mut g = DMatrix::<Complex64>::zeros(d, d);
    for c in 0..d {
        for r in 0..d {
            g[(r, c)] = complex_gaussian(rng);
        }
    }
    let qr = g.qr();
    let r = qr.r();
    let mut u = qr.q();
    for i in 0..d {
        let rii = r[(i, i)];
        let norm = rii.norm();
        let phase = if norm > 0.0 {
            rii / norm
        } else {
            Complex64::new(1.0, 0.0)
        };
        for row in 0..d {
            u[(row, i)] *= phase;
        }
    }
    u
}

/// Haar-random pure state: normalized complex Gaussian vector.
pub fn sample_haar_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DVector<Complex64> {
    assert!(d >= 1);
    let mut v = DVector::<Complex64>::zeros(d);
    loop {
        for i in 0..d {
            v[i] = complex_gaussian(rng);
        }
        let norm = v.norm();
        if norm > 1e-12 {
            v /= Complex64::new(norm, 0.0);
            return v;
        }
    }
}

/// Dense n-qubit Pauli operator X^a Z^b: entries (X^a Z^b)[v⊕a, v] = (−1)^{b·v}.
pub fn pauli_dense(n: usize, a: usize, b: usize) -> DMatrix<Complex64> {
    let d = 1usize << n;
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for v in 0..d {
        let sign = if ((b & v).count_ones() & 1) == 1 { -1.0 } else { 1.0 };
        m[(v ^ a, v)] = Complex64::new(sign, 0.0);
    }
    m
}

/// Uniformly random n-qubit Pauli (modulo phase).
pub fn sample_pauli<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let d = 1usize << n;
    let a = rng.gen_range(0..d);
    let b = rng.gen_range(0..d);
    pauli_dense(n, a, b)
}

/// All 4^n Pauli operators (modulo phase), in (a, b) lexicographic order.
pub fn pauli_group_dense(n: usize) -> Vec<DMatrix<Complex64>> {
    assert!(n <= 6, "dense Pauli enumeration limited to n <= 6");
    let d = 1usize << n;
    let mut out = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            out.push(pauli_dense(n, a, b));
        }
    }
    out
}

/// Dense matrix of one elementary Clifford gate on n qubits.
/// Qubit j corresponds to bit position n−1−j (qubit 0 is the most
/// significant factor).
pub fn gate_dense(n: usize, gate: symplectic::Gate) -> DMatrix<Complex64> {
    use symplectic::Gate;
    let d = 1usize << n;
    let bit = |j: usize| n - 1 - j;
    match gate {
        Gate::H(j) => {
            let p = bit(j);
            let scale = std::f64::consts::FRAC_1_SQRT_2;
            DMatrix::from_fn(d, d, |r, c| {
                if (r & !(1 << p)) != (c & !(1 << p)) {
                    Complex64::new(0.0, 0.0)
                } else {
                    let rb = (r >> p) & 1;
                    let cb = (c >> p) & 1;
                    let sign = if rb == 1 && cb == 1 { -1.0 } else { 1.0 };
                    Complex64::new(sign * scale, 0.0)
                }
            })
        }
        Gate::S(j) => {
            let p = bit(j);
            DMatrix::from_fn(d, d, |r, c| {
                if r != c {
                    Complex64::new(0.0, 0.0)
                } else if (c >> p) & 1 == 1 {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(1.0, 0.0)
                }
            })
        }
        Gate::Cnot(ctl, tgt) => {
            let pc = bit(ctl);
            let pt = bit(tgt);
            DMatrix::from_fn(d, d, |r, c| {
                let flipped = if (c >> pc) & 1 == 1 { c ^ (1 << pt) } else { c };
                if r == flipped {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        }
        Gate::Cz(j, k) => {
            let pj = bit(j);
            let pk = bit(k);
            DMatrix::from_fn(d, d, |r, c| {
                if r != c {
                    Complex64::new(0.0, 0.0)
                } else if (c >> pj) & 1 == 1 && (c >> pk) & 1 == 1 {
                    Complex64::new(-1.0, 0.0)
                } else {
                    Complex64::new(1.0, 0.0)
                }
            })
        }
    }
}

/// Uniformly random n-qubit Clifford (modulo phase), as a dense matrix:
/// a uniform symplectic tableau synthesized into elementary gates, times a
/// uniform Pauli factor.
pub fn sample_clifford_dense<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let tableau = symplectic::sample_symplectic(n, rng);
    let gates = symplectic::synthesize_circuit(&tableau).expect("sampled tableau is symplectic");
    let d = 1usize << n;
    let mut u = DMatrix::<Complex64>::identity(d, d);
    for g in gates {
        u = gate_dense(n, g) * u;
    }
    sample_pauli(n, rng) * u
}

/// Shallow local random circuit on an open n-qubit chain: `depth` layers,
/// each applying an independent Haar 4×4 gate to a uniformly random adjacent
/// pair.  Depth 0 is the identity.
pub fn sample_local_circuit<R: Rng + ?Sized>(
    n: usize,
    depth: usize,
    rng: &mut R,
) -> DMatrix<Complex64> {
    assert!(n >= 2, "chain needs at least two qubits");
    let d = 1usize << n;
    let mut u = DMatrix::<Complex64>::identity(d, d);
    for _ in 0..depth {
        let site = rng.gen_range(0..n - 1);
        let g = sample_haar_unitary(4, rng);
        apply_two_site_gate(&g, &mut u, site, n);
    }
    u
}

/// Left-multiply `mat` by the embedding of a 4×4 gate on qubits
/// (site, site+1), contracting in groups of four rows instead of forming the
/// 2^n × 2^n embedding.
fn apply_two_site_gate(
    gate: &DMatrix<Complex64>,
    mat: &mut DMatrix<Complex64>,
    site: usize,
    n: usize,
) {
    debug_assert_eq!(gate.nrows(), 4);
    let d = mat.nrows();
    let hi = n - 1 - site; // bit of the first qubit of the pair
    let lo = hi - 1; // bit of the second qubit
    let mask = (1usize << hi) | (1usize << lo);
    for c in 0..d {
        for base in 0..d {
            if base & mask != 0 {
                continue;
            }
            let idx = [
                base,
                base | (1 << lo),
                base | (1 << hi),
                base | (1 << hi) | (1 << lo),
            ];
            let old = [mat[(idx[0], c)], mat[(idx[1], c)], mat[(idx[2], c)], mat[(idx[3], c)]];
            for s in 0..4 {
                let mut acc = Complex64::new(0.0, 0.0);
                for (t, &o) in old.iter().enumerate() {
                    acc += gate[(s, t)] * o;
                }
                mat[(idx[s], c)] = acc;
            }
        }
    }
}

/// Embed a D²-dimensional corner unitary into d = side² as a partial
/// scrambler: the result acts as `corner` on the subspace spanned by |m⟩|o⟩
/// with m, o < D (full index m·side + o, corner index m·D + o) and as the
/// identity elsewhere.
pub fn embed_corner_unitary(d: usize, corner: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let side = integer_sqrt(d).expect("dimension must be a perfect square");
    let inner = integer_sqrt(corner.nrows()).expect("corner dimension must be a perfect square");
    assert!(inner <= side, "corner side exceeds lattice side");
    let mut u = DMatrix::<Complex64>::identity(d, d);
    for m in 0..inner {
        for o in 0..inner {
            for m2 in 0..inner {
                for o2 in 0..inner {
                    u[(m * side + o, m2 * side + o2)] = corner[(m * inner + o, m2 * inner + o2)];
                }
            }
        }
    }
    u
}

/// Partial scrambler on d = side² with a Haar-random corner of side `inner`
/// (`inner` = 0 gives the identity, `inner` = side the fully Haar unitary).
pub fn sample_partial_scrambler<R: Rng + ?Sized>(
    d: usize,
    inner: usize,
    rng: &mut R,
) -> DMatrix<Complex64> {
    if inner == 0 {
        return DMatrix::identity(d, d);
    }
    let corner = sample_haar_unitary(inner * inner, rng);
    embed_corner_unitary(d, &corner)
}

// ---------------------------------------------------------------------------
// Reduction and Monte Carlo driver
// ---------------------------------------------------------------------------

/// Reduce one sample on a region to the spectrum of the reduced density
/// matrix.
pub fn reduce_sample(sample: &Sample, region: &Region) -> Result<Spectrum, EnsemblesError> {
    match (sample, region) {
        (Sample::Unitary(u), Region::Choi { part, side }) => {
            if u.nrows() != part.total() {
                return Err(EnsemblesError::DimensionMismatch {
                    ensemble: u.nrows(),
                    region: part.total(),
                });
            }
            let rho = match side {
                ChoiSide::Ac => crate::entropy::choi_reduced_ac(part, u),
                ChoiSide::Ad => crate::entropy::choi_reduced_ad(part, u),
            }
            .expect("dimensions validated");
            Ok(rho.spectrum().expect("reduced state is a density matrix"))
        }
        (Sample::State(psi), Region::State { d_a, d_b }) => {
            if psi.len() != d_a * d_b {
                return Err(EnsemblesError::DimensionMismatch {
                    ensemble: psi.len(),
                    region: d_a * d_b,
                });
            }
            let rho = crate::entropy::state_reduced_a(*d_a, *d_b, psi)
                .expect("dimensions validated");
            Ok(rho.spectrum().expect("reduced state is a density matrix"))
        }
        _ => Err(EnsemblesError::RegionKindMismatch),
    }
}

/// Deterministic parallel Monte Carlo: estimate E[obs(spectrum of region)]
/// over `n` independent samples.  Sample i uses ChaCha stream i of the seed,
/// and the mean/variance accumulation runs in index order, so the estimate
/// depends only on (spec, region, obs, n, seed).
pub fn mc_run(
    spec: &EnsembleSpec,
    region: &Region,
    obs: &Observable,
    n: usize,
    seed: u64,
) -> Result<MomentEstimate, EnsemblesError> {
    spec.validate()?;
    obs.validate()?;
    if n < 2 {
        return Err(EnsemblesError::TooFewSamples(n));
    }
    if spec.is_state_ensemble() != region.wants_state() {
        return Err(EnsemblesError::RegionKindMismatch);
    }
    if spec.dim() != region.total_dim() {
        return Err(EnsemblesError::DimensionMismatch {
            ensemble: spec.dim(),
            region: region.total_dim(),
        });
    }
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let sample = spec.sample(&mut rng);
            let spectrum = reduce_sample(&sample, region).expect("validated above");
            obs.evaluate(&spectrum)
        })
        .collect();
    Ok(summarize(&values, seed))
}

/// Welford accumulation of mean and standard error, in index order.
fn summarize(values: &[f64], seed: u64) -> MomentEstimate {
    let n = values.len();
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for (i, &v) in values.iter().enumerate() {
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
    }
    let var = if n > 1 { m2 / (n - 1) as f64 } else { 0.0 };
    let stderr = (var / n as f64).max(0.0).sqrt();
    MomentEstimate { mean, stderr, n_samples: n, seed }
}

/// E[(tr ρ^α)^s] over the ensemble.
pub fn mc_moment(
    spec: &EnsembleSpec,
    region: &Region,
    alpha: usize,
    s: usize,
    n: usize,
    seed: u64,
) -> Result<MomentEstimate, EnsemblesError> {
    let obs = if s == 1 {
        Observable::TracePower { alpha }
    } else {
        Observable::TracePowerPower { alpha, s }
    };
    mc_run(spec, region, &obs, n, seed)
}

/// Mean Rényi-α entropy (bits) over the ensemble; α = 1 is von Neumann and
/// α = ∞ is min-entropy.
pub fn mc_entropy(
    spec: &EnsembleSpec,
    region: &Region,
    alpha: f64,
    n: usize,
    seed: u64,
) -> Result<MomentEstimate, EnsemblesError> {
    mc_run(spec, region, &Observable::RenyiEntropy { alpha }, n, seed)
}

// ---------------------------------------------------------------------------
// Frame potentials
// ---------------------------------------------------------------------------

/// Exact-for-enumerable frame potential via the group-collapse identity:
/// for a group (modulo phase), Φ_t = E_{U,V}|tr(U V†)|^{2t} = E_W |tr W|^{2t}.
pub fn frame_potential_group_numeric(
    members: &[DMatrix<Complex64>],
    t: usize,
) -> Result<f64, EnsemblesError> {
    if t == 0 || t > 4 {
        return Err(EnsemblesError::OrderOutOfRange(t));
    }
    if members.is_empty() {
        return Err(EnsemblesError::EmptyEnsemble);
    }
    let total: f64 = members
        .iter()
        .map(|w| {
            let tr: Complex64 = w.trace();
            tr.norm_sqr().powi(t as i32)
        })
        .sum();
    Ok(total / members.len() as f64)
}

/// Frame potential from the dense frame operator: Φ_t = ‖E[U^{⊗t} ⊗ Ū^{⊗t}]‖_F².
/// Exact (up to float round-off) when `samples` enumerates the ensemble.
pub fn frame_potential_dense(
    samples: &[DMatrix<Complex64>],
    t: usize,
) -> Result<f64, EnsemblesError> {
    const MAX_DIM: usize = 4096;
    if t == 0 || t > 4 {
        return Err(EnsemblesError::OrderOutOfRange(t));
    }
    if samples.is_empty() {
        return Err(EnsemblesError::EmptyEnsemble);
    }
    let d = samples[0].nrows();
    let big = d
        .checked_pow(2 * t as u32)
        .filter(|&x| x <= MAX_DIM)
        .ok_or(EnsemblesError::FrameOperatorTooLarge(0, MAX_DIM))?;
    let mut acc = DMatrix::<Complex64>::zeros(big, big);
    for u in samples {
        let conj = u.map(|z| z.conj());
        let mut block = DMatrix::<Complex64>::identity(1, 1);
        for _ in 0..t {
            block = block.kronecker(u);
        }
        for _ in 0..t {
            block = block.kronecker(&conj);
        }
        acc += block;
    }
    acc /= Complex64::new(samples.len() as f64, 0.0);
    Ok(acc.iter().map(|z| z.norm_sqr()).sum())
}

/// Monte Carlo frame potential: E|tr(U V†)|^{2t} over independent pairs.
/// Pair i uses ChaCha streams 2i and 2i+1.
pub fn frame_potential_pairwise_mc(
    spec: &EnsembleSpec,
    t: usize,
    pairs: usize,
    seed: u64,
) -> Result<MomentEstimate, EnsemblesError> {
    spec.validate()?;
    if t == 0 || t > 4 {
        return Err(EnsemblesError::OrderOutOfRange(t));
    }
    if pairs < 2 {
        return Err(EnsemblesError::TooFewSamples(pairs));
    }
    if spec.is_state_ensemble() {
        return Err(EnsemblesError::RegionKindMismatch);
    }
    let values: Vec<f64> = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng_u = ChaCha8Rng::seed_from_u64(seed);
            rng_u.set_stream(2 * i as u64);
            let mut rng_v = ChaCha8Rng::seed_from_u64(seed);
            rng_v.set_stream(2 * i as u64 + 1);
            let u = match spec.sample(&mut rng_u) {
                Sample::Unitary(u) => u,
                Sample::State(_) => unreachable!("state ensembles rejected above"),
            };
            let v = match spec.sample(&mut rng_v) {
                Sample::Unitary(v) => v,
                Sample::State(_) => unreachable!("state ensembles rejected above"),
            };
            let tr: Complex64 = (u * v.adjoint()).trace();
            tr.norm_sqr().powi(t as i32)
        })
        .collect();
    Ok(summarize(&values, seed))
}

/// Projective frame potential of an enumerated family of pure states:
/// E over ordered pairs of |⟨ψ|φ⟩|^{2t}.
pub fn frame_potential_projective_exact(
    states: &[DVector<Complex64>],
    t: usize,
) -> Result<f64, EnsemblesError> {
    if t == 0 || t > 4 {
        return Err(EnsemblesError::OrderOutOfRange(t));
    }
    if states.is_empty() {
        return Err(EnsemblesError::EmptyEnsemble);
    }
    let n = states.len();
    let mut total = 0.0f64;
    for psi in states {
        for phi in states {
            let ip: Complex64 = psi.dotc(phi);
            total += ip.norm_sqr().powi(t as i32);
        }
    }
    Ok(total / (n * n) as f64)
}

/// The six single-qubit stabilizer states (±X, ±Y, ±Z eigenstates).
pub fn stabilizer_states_one_qubit() -> Vec<DVector<Complex64>> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    vec![
        DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]),
        DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]),
        DVector::from_vec(vec![c(r, 0.0), c(r, 0.0)]),
        DVector::from_vec(vec![c(r, 0.0), c(-r, 0.0)]),
        DVector::from_vec(vec![c(r, 0.0), c(0.0, r)]),
        DVector::from_vec(vec![c(r, 0.0), c(0.0, -r)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::unitarity_deviation;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut r = rng(1);
        for d in [1, 2, 3, 8, 16] {
            let u = sample_haar_unitary(d, &mut r);
            assert!(unitarity_deviation(&u) < 1e-10, "d = {d}");
        }
    }

    #[test]
    fn haar_state_is_normalized() {
        let mut r = rng(2);
        for d in [1, 2, 5, 32] {
            let psi = sample_haar_state(d, &mut r);
            assert!((psi.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pauli_matrices_are_unitary_and_self_inverse_up_to_phase() {
        for n in 1..=2 {
            for m in pauli_group_dense(n) {
                assert!(unitarity_deviation(&m) < 1e-12);
                // (X^a Z^b)² = ± I.
                let sq = &m * &m;
                let d = sq.nrows();
                let diag = sq[(0, 0)];
                assert!((diag.im).abs() < 1e-12);
                assert!((sq - DMatrix::identity(d, d) * diag).norm() < 1e-12);
            }
        }
        assert_eq!(pauli_group_dense(2).len(), 16);
    }

    #[test]
    fn gate_matrices_are_unitary_and_match_tableau_action() {
        use symplectic::Gate;
        let n = 2;
        let gates = [Gate::H(0), Gate::H(1), Gate::S(0), Gate::Cnot(0, 1), Gate::Cnot(1, 0), Gate::Cz(0, 1)];
        for g in gates {
            let u = gate_dense(n, g);
            assert!(unitarity_deviation(&u) < 1e-12, "{g:?}");
            // Conjugation of each Pauli generator matches the tableau image
            // up to phase.
            for gen_bit in 0..2 * n {
                let v = 1u32 << gen_bit;
                let (a_in, b_in) = sp_vec_to_pauli(n, v);
                let p_in = pauli_dense(n, a_in, b_in);
                let image = g.apply_vec(n, v);
                let (a_out, b_out) = sp_vec_to_pauli(n, image);
                let p_out = pauli_dense(n, a_out, b_out);
                let conj = &u * p_in * u.adjoint();
                assert!(
                    proportional(&conj, &p_out),
                    "{g:?} generator {gen_bit}"
                );
            }
        }
    }

    /// Map a symplectic bit vector to dense Pauli labels (a, b), with qubit j
    /// at matrix bit n−1−j.
    fn sp_vec_to_pauli(n: usize, v: u32) -> (usize, usize) {
        let mut a = 0usize;
        let mut b = 0usize;
        for j in 0..n {
            if (v >> j) & 1 == 1 {
                a |= 1 << (n - 1 - j);
            }
            if (v >> (n + j)) & 1 == 1 {
                b |= 1 << (n - 1 - j);
            }
        }
        (a, b)
    }

    fn proportional(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> bool {
        // x = phase · y for some unit phase.
        let mut phase = None;
        for (xe, ye) in x.iter().zip(y.iter()) {
            if ye.norm() > 1e-9 {
                phase = Some(xe / ye);
                break;
            }
        }
        let Some(phase) = phase else { return x.norm() < 1e-9 };
        if (phase.norm() - 1.0).abs() > 1e-9 {
            return false;
        }
        (x - y.map(|e| e * phase)).norm() < 1e-9
    }

    #[test]
    fn clifford_samples_are_unitary_and_conjugate_paulis_to_paulis() {
        let mut r = rng(3);
        for n in 1..=3 {
            for _ in 0..5 {
                let u = sample_clifford_dense(n, &mut r);
                assert!(unitarity_deviation(&u) < 1e-10);
                // U X_0 U† must be ± a Pauli.
                let x0 = pauli_dense(n, 1 << (n - 1), 0);
                let conj = &u * x0 * u.adjoint();
                let mut found = false;
                for a in 0..(1 << n) {
                    for b in 0..(1 << n) {
                        if proportional(&conj, &pauli_dense(n, a, b)) {
                            found = true;
                        }
                    }
                }
                assert!(found, "conjugate of X_0 is not a Pauli at n = {n}");
            }
        }
    }

    #[test]
    fn local_circuit_depth_zero_is_identity_and_gates_are_unitary() {
        let mut r = rng(4);
        let u0 = sample_local_circuit(3, 0, &mut r);
        assert!((u0 - DMatrix::<Complex64>::identity(8, 8)).norm() < 1e-14);
        let u = sample_local_circuit(4, 7, &mut r);
        assert!(unitarity_deviation(&u) < 1e-10);
    }

    #[test]
    fn two_site_application_matches_kronecker_embedding() {
        let mut r = rng(5);
        let n = 3;
        let d = 1 << n;
        let g = sample_haar_unitary(4, &mut r);
        let base = sample_haar_unitary(d, &mut r);
        for site in 0..n - 1 {
            let mut fast = base.clone();
            apply_two_site_gate(&g, &mut fast, site, n);
            // Reference: embed via Kronecker products (qubit 0 leftmost).
            let id = |k: usize| DMatrix::<Complex64>::identity(1 << k, 1 << k);
            let embedded = id(site).kronecker(&g).kronecker(&id(n - site - 2));
            let slow = embedded * &base;
            assert!((fast - slow).norm() < 1e-12, "site {site}");
        }
    }

    #[test]
    fn partial_scrambler_limits() {
        let mut r = rng(6);
        // inner = 0: identity.
        let u = sample_partial_scrambler(16, 0, &mut r);
        assert!((u - DMatrix::<Complex64>::identity(16, 16)).norm() < 1e-14);
        // inner = side: the whole space is scrambled (unitary, no identity
        // rows outside the corner remain).
        let u = sample_partial_scrambler(16, 4, &mut r);
        assert!(unitarity_deviation(&u) < 1e-10);
        // Intermediate: unitary, and basis states outside the corner are fixed.
        let u = sample_partial_scrambler(16, 2, &mut r);
        assert!(unitarity_deviation(&u) < 1e-10);
        // Full index 3 = (m=0, o=3) with o >= inner: fixed by the scrambler.
        let col = u.column(3);
        assert!((col[3] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((col.norm_squared() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mc_run_is_reproducible_across_thread_counts() {
        let spec = EnsembleSpec::HaarState { d: 12 };
        let region = Region::State { d_a: 3, d_b: 4 };
        let obs = Observable::TracePower { alpha: 2 };
        let a = mc_run(&spec, &region, &obs, 300, 42).unwrap();
        // Same seed: bitwise identical in a differently-sized thread pool.
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| mc_run(&spec, &region, &obs, 300, 42).unwrap());
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        // Different seed: different estimate.
        let c = mc_run(&spec, &region, &obs, 300, 43).unwrap();
        assert_ne!(a.mean.to_bits(), c.mean.to_bits());
    }

    #[test]
    fn mc_run_validates_inputs() {
        let spec = EnsembleSpec::HaarUnitary { d: 4 };
        let state_region = Region::State { d_a: 2, d_b: 2 };
        assert_eq!(
            mc_run(&spec, &state_region, &Observable::MinEntropy, 10, 0).unwrap_err(),
            EnsemblesError::RegionKindMismatch
        );
        let part = ChoiPartition::symmetric(3, 3).unwrap();
        let region = Region::Choi { part, side: ChoiSide::Ac };
        assert!(matches!(
            mc_run(&spec, &region, &Observable::MinEntropy, 10, 0).unwrap_err(),
            EnsemblesError::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn z_score_conventions() {
        let est = MomentEstimate { mean: 1.0, stderr: 0.0, n_samples: 10, seed: 0 };
        assert_eq!(est.z_score(1.0), 0.0);
        assert_eq!(est.z_score(0.9), f64::INFINITY);
        let est = MomentEstimate { mean: 1.0, stderr: 0.1, n_samples: 10, seed: 0 };
        assert!((est.z_score(0.8) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn frame_potential_identities() {
        // Singleton {I} on d = 2 at t = 1: Φ₁ = |tr I|² = 4.
        let id2 = vec![DMatrix::<Complex64>::identity(2, 2)];
        assert!((frame_potential_group_numeric(&id2, 1).unwrap() - 4.0).abs() < 1e-12);
        assert!((frame_potential_dense(&id2, 1).unwrap() - 4.0).abs() < 1e-12);
        // Pauli n = 1, t = 1: Φ₁ = 1 (a 1-design).
        let paulis = pauli_group_dense(1);
        assert!((frame_potential_group_numeric(&paulis, 1).unwrap() - 1.0).abs() < 1e-12);
        assert!((frame_potential_dense(&paulis, 1).unwrap() - 1.0).abs() < 1e-12);
        // Pauli n = 1, t = 2: Φ₂ = 4 > 2, not a 2-design.
        assert!((frame_potential_group_numeric(&paulis, 2).unwrap() - 4.0).abs() < 1e-12);
        // The two evaluation routes agree on a non-group set of samples too.
        let mut r = rng(7);
        let samples: Vec<_> = (0..6).map(|_| sample_haar_unitary(2, &mut r)).collect();
        let dense = frame_potential_dense(&samples, 2).unwrap();
        // Pairwise average over the same finite set, including U = V terms.
        let mut total = 0.0;
        for u in &samples {
            for v in &samples {
                let tr: Complex64 = (u * v.adjoint()).trace();
                total += tr.norm_sqr().powi(2);
            }
        }
        let pairwise = total / (samples.len() * samples.len()) as f64;
        assert!((dense - pairwise).abs() < 1e-9);
    }

    #[test]
    fn projective_frame_potential_of_stabilizer_states() {
        // The six single-qubit stabilizer states form a projective 3-design:
        // Φ_t = (1/6)(1 + 4·2^{-t}) equals 1/binom(t+1, t) for t ≤ 3 and
        // exceeds it at t = 4.
        let states = stabilizer_states_one_qubit();
        for (t, expected) in [(1, 0.5), (2, 1.0 / 3.0), (3, 0.25), (4, 5.0 / 24.0)] {
            let phi = frame_potential_projective_exact(&states, t).unwrap();
            assert!((phi - expected).abs() < 1e-12, "t = {t}");
            let haar = 1.0
                / crate::symgroup::binomial(2 + t - 1, t)
                    .to_string()
                    .parse::<f64>()
                    .unwrap();
            if t <= 3 {
                assert!((phi - haar).abs() < 1e-12);
            } else {
                assert!(phi > haar + 1e-3);
            }
        }
    }

    #[test]
    fn pairwise_mc_frame_potential_medians_near_exact_for_pauli() {
        // Pauli n = 1, t = 1: exact Φ₁ = 1; the pairwise MC estimator must
        // agree within a few standard errors.
        let est = frame_potential_pairwise_mc(&EnsembleSpec::Pauli { n: 1 }, 1, 4000, 9).unwrap();
        assert!(est.z_score(1.0) < 4.0, "z = {}", est.z_score(1.0));
    }
}
