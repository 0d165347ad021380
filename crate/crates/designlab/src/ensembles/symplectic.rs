//! The binary symplectic group Sp(2n, F₂) and its circuit synthesis.
//!
//! A Clifford unitary on n qubits is determined, up to a Pauli factor and a
//! global phase, by its conjugation action on the Pauli group modulo phase.
//! That action is a binary symplectic matrix: Pauli X^a Z^b maps to the bit
//! vector (a | b) ∈ F₂^{2n}, and conjugation preserves the symplectic form
//! ⟨u, v⟩ = u_x·v_z + u_z·v_x (mod 2).
//!
//! This module provides
//!   * bit-packed symplectic vectors and matrices,
//!   * the tableau action of the elementary gates H, S, CNOT, CZ,
//!   * exact-uniform sampling of Sp(2n, F₂) by drawing hyperbolic pairs,
//!   * synthesis of an elementary-gate circuit realizing a given tableau.
//!
//! Together with a uniformly random Pauli factor this yields a uniform sample
//! of the n-qubit Clifford group modulo phase at any n for which 2^n-dim
//! dense matrices are affordable.

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("qubit count {0} exceeds the bit-packed limit of 16")]
    TooManyQubits(usize),
}

/// A vector in F₂^{2n}: bit i (0 ≤ i < n) is the X-part on qubit i,
/// bit n+i is the Z-part on qubit i.
pub type SpVec = u32;

/// Symplectic inner product ⟨u, v⟩ = Σ_i (u_xi v_zi + u_zi v_xi) mod 2.
pub fn symplectic_form(n: usize, u: SpVec, v: SpVec) -> u8 {
    let mask = (1u32 << n) - 1;
    let ux = u & mask;
    let uz = u >> n;
    let vx = v & mask;
    let vz = v >> n;
    (((ux & vz) ^ (uz & vx)).count_ones() & 1) as u8
}

/// A 2n × 2n matrix over F₂ stored column-wise: `cols[j]` is the image of the
/// j-th standard basis vector (X_j for j < n, Z_{j-n} otherwise).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpMatrix {
    pub n: usize,
    pub cols: Vec<SpVec>,
}

impl SpMatrix {
    pub fn identity(n: usize) -> Self {
        SpMatrix { n, cols: (0..2 * n).map(|j| 1u32 << j).collect() }
    }

    pub fn apply(&self, v: SpVec) -> SpVec {
        let mut out = 0u32;
        let mut rest = v;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            out ^= self.cols[j];
            rest &= rest - 1;
        }
        out
    }

    pub fn compose(&self, o: &SpMatrix) -> SpMatrix {
        // (self ∘ o): first o, then self.
        SpMatrix { n: self.n, cols: o.cols.iter().map(|&c| self.apply(c)).collect() }
    }

    /// Check M^T J M = J, i.e. the form is preserved on all basis pairs.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        for j in 0..2 * n {
            for l in j..2 * n {
                let expected = if l == j + n && j < n { 1 } else { 0 };
                if symplectic_form(n, self.cols[j], self.cols[l]) != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Elementary Clifford gates, identified by their tableau action.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gate {
    /// Hadamard on qubit j: swaps X_j ↔ Z_j.
    H(usize),
    /// Phase gate on qubit j: X_j ↦ X_j Z_j (adds x_j into z_j).
    S(usize),
    /// CNOT with control c, target t: x_t += x_c, z_c += z_t.
    Cnot(usize, usize),
    /// CZ on qubits j, k: z_j += x_k, z_k += x_j.
    Cz(usize, usize),
}

impl Gate {
    /// Apply the gate's tableau action to a Pauli bit vector.
    pub fn apply_vec(&self, n: usize, v: SpVec) -> SpVec {
        let x = |j: usize| (v >> j) & 1;
        let z = |j: usize| (v >> (n + j)) & 1;
        match *self {
            Gate::H(j) => {
                // Swap bits j and n + j.
                let xb = x(j);
                let zb = z(j);
                let mut out = v & !((1 << j) | (1 << (n + j)));
                out |= zb << j;
                out |= xb << (n + j);
                out
            }
            Gate::S(j) => v ^ ((x(j)) << (n + j)),
            Gate::Cnot(c, t) => {
                let mut out = v;
                out ^= x(c) << t;
                out ^= z(t) << (n + c);
                out
            }
            Gate::Cz(j, k) => {
                let mut out = v;
                out ^= x(k) << (n + j);
                out ^= x(j) << (n + k);
                out
            }
        }
    }

    /// The gate's own symplectic matrix.
    pub fn matrix(&self, n: usize) -> SpMatrix {
        let id = SpMatrix::identity(n);
        SpMatrix { n, cols: id.cols.iter().map(|&c| self.apply_vec(n, c)).collect() }
    }
}

/// Tableau of a whole circuit (gates applied left to right in circuit order,
/// i.e. `gates[0]` acts first).
pub fn circuit_tableau(n: usize, gates: &[Gate]) -> SpMatrix {
    let mut cols = SpMatrix::identity(n).cols;
    for g in gates {
        for c in cols.iter_mut() {
            *c = g.apply_vec(n, *c);
        }
    }
    SpMatrix { n, cols }
}

/// Reduce a set of vectors to an F₂ basis of their span (Gaussian elimination
/// on bit masks).
fn f2_basis(vectors: impl IntoIterator<Item = SpVec>) -> Vec<SpVec> {
    let mut pivots: Vec<SpVec> = Vec::new();
    for mut v in vectors {
        for &p in &pivots {
            let pivot_bit = 31 - p.leading_zeros();
            if (v >> pivot_bit) & 1 == 1 {
                v ^= p;
            }
        }
        if v != 0 {
            pivots.push(v);
            pivots.sort_unstable_by_key(|p| std::cmp::Reverse(31 - p.leading_zeros()));
        }
    }
    pivots
}

/// Draw a uniformly random element of Sp(2n, F₂).
///
/// Builds a symplectic basis one hyperbolic pair at a time: at each stage the
/// remaining symplectic complement is tracked by an explicit basis, the next
/// `v` is uniform over its nonzero vectors, and the partner `w` is uniform
/// over the affine set {⟨v, w⟩ = 1}.  The stage sizes (4^m − 1)·2^{2m−1}
/// multiply to |Sp(2n, F₂)|, so the draw is exactly uniform.
pub fn sample_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpMatrix {
    assert!(n >= 1 && n <= 16, "qubit count out of range");
    let mut basis: Vec<SpVec> = SpMatrix::identity(n).cols;
    let mut cols = vec![0u32; 2 * n];
    for j in 0..n {
        let m2 = basis.len(); // 2m, dimension of the remaining complement
        debug_assert_eq!(m2, 2 * (n - j));
        // v: uniform nonzero combination of the complement basis.
        let v = loop {
            let coeffs: u32 = rng.gen_range(1..(1u64 << m2)) as u32;
            let mut v = 0u32;
            for (i, &b) in basis.iter().enumerate() {
                if (coeffs >> i) & 1 == 1 {
                    v ^= b;
                }
            }
            if v != 0 {
                break v;
            }
        };
        // Re-express the complement basis so exactly one element pairs with v.
        let mut paired: Option<SpVec> = None;
        let mut rest: Vec<SpVec> = Vec::with_capacity(m2 - 1);
        for &b in &basis {
            if symplectic_form(n, v, b) == 1 {
                match paired {
                    None => paired = Some(b),
                    Some(p) => rest.push(b ^ p),
                }
            } else {
                rest.push(b);
            }
        }
        let pivot = paired.expect("form is nondegenerate on the complement");
        // w: uniform over {pivot + u : u ∈ span(rest)} = all w with ⟨v,w⟩ = 1.
        let mut w = pivot;
        for &b in &rest {
            if rng.gen::<bool>() {
                w ^= b;
            }
        }
        cols[j] = v;
        cols[n + j] = w;
        // New complement: project the remaining basis off the pair (v, w)
        // and re-extract an independent set.
        let projected = rest
            .iter()
            .map(|&x| {
                let mut y = x;
                if symplectic_form(n, x, w) == 1 {
                    y ^= v;
                }
                if symplectic_form(n, x, v) == 1 {
                    y ^= w;
                }
                y
            })
            .filter(|&y| y != 0);
        basis = f2_basis(projected);
        debug_assert_eq!(basis.len(), m2 - 2);
    }
    let m = SpMatrix { n, cols };
    debug_assert!(m.is_symplectic());
    m
}

/// Synthesize an elementary-gate circuit whose tableau equals `target`.
///
/// Reduces the matrix to the identity column pair by column pair with gates
/// applied on the left; since every elementary tableau is an involution over
/// F₂, the recorded gate list read in order realizes the target.
pub fn synthesize_circuit(target: &SpMatrix) -> Result<Vec<Gate>, SymplecticError> {
    let n = target.n;
    if n > 16 {
        return Err(SymplecticError::TooManyQubits(n));
    }
    if !target.is_symplectic() {
        return Err(SymplecticError::NotSymplectic);
    }
    let mut m = target.clone();
    let mut gates: Vec<Gate> = Vec::new();
    let push = |m: &mut SpMatrix, gates: &mut Vec<Gate>, g: Gate| {
        for c in m.cols.iter_mut() {
            *c = g.apply_vec(n, *c);
        }
        gates.push(g);
    };
    let x_bit = |v: SpVec, j: usize| (v >> j) & 1 == 1;
    let z_bit = |v: SpVec, j: usize| (v >> (n + j)) & 1 == 1;
    for j in 0..n {
        // --- bring column j (image of X_j) to the basis vector X_j ---
        // 1. Create an X-part pivot at qubit j.
        let col = m.cols[j];
        if !x_bit(col, j) {
            if let Some(r) = (j..n).find(|&r| x_bit(col, r)) {
                // Swap qubits j and r via three CNOTs.
                push(&mut m, &mut gates, Gate::Cnot(j, r));
                push(&mut m, &mut gates, Gate::Cnot(r, j));
                push(&mut m, &mut gates, Gate::Cnot(j, r));
            } else {
                let r = (j..n)
                    .find(|&r| z_bit(col, r))
                    .expect("column of a symplectic matrix is nonzero on the residual block");
                push(&mut m, &mut gates, Gate::H(r));
                if r != j {
                    push(&mut m, &mut gates, Gate::Cnot(j, r));
                    push(&mut m, &mut gates, Gate::Cnot(r, j));
                    push(&mut m, &mut gates, Gate::Cnot(j, r));
                }
            }
        }
        // 2. Clear the other X-part bits of column j.
        for r in j + 1..n {
            if x_bit(m.cols[j], r) {
                push(&mut m, &mut gates, Gate::Cnot(j, r));
            }
        }
        // 3. Clear Z-part bits at qubits r > j.
        for r in j + 1..n {
            if z_bit(m.cols[j], r) {
                push(&mut m, &mut gates, Gate::Cz(j, r));
            }
        }
        // 4. Clear the Z-part bit at qubit j.
        if z_bit(m.cols[j], j) {
            push(&mut m, &mut gates, Gate::S(j));
        }
        debug_assert_eq!(m.cols[j], 1u32 << j);
        // --- bring column n+j (image of Z_j) to the basis vector Z_j ---
        // The symplectic form with column j already fixes its z_j bit to 1.
        debug_assert!(z_bit(m.cols[n + j], j));
        // 5. Move stray X-part bits (r > j) into the Z part.
        for r in j + 1..n {
            if x_bit(m.cols[n + j], r) {
                if z_bit(m.cols[n + j], r) {
                    push(&mut m, &mut gates, Gate::S(r));
                }
                push(&mut m, &mut gates, Gate::H(r));
            }
        }
        // 6. Clear Z-part bits at qubits r > j.
        for r in j + 1..n {
            if z_bit(m.cols[n + j], r) {
                push(&mut m, &mut gates, Gate::Cnot(r, j));
            }
        }
        // 7. Clear the X-part bit at qubit j (x_j += z_j, i.e. H·S·H).
        if x_bit(m.cols[n + j], j) {
            push(&mut m, &mut gates, Gate::H(j));
            push(&mut m, &mut gates, Gate::S(j));
            push(&mut m, &mut gates, Gate::H(j));
        }
        debug_assert_eq!(m.cols[j], 1u32 << j);
        debug_assert_eq!(m.cols[n + j], 1u32 << (n + j));
    }
    debug_assert_eq!(m, SpMatrix::identity(n));
    // The reduction applied T_{g_m}···T_{g_1}·M = I, so M = T_{g_1}···T_{g_m}
    // (every elementary tableau is its own inverse).  Read as a circuit whose
    // first gate acts first, that is the recorded list reversed.
    gates.reverse();
    Ok(gates)
}

/// Enumerate all of Sp(2n, F₂) by brute force (n ≤ 2 only: 2^{4n²} candidates).
pub fn enumerate_symplectic(n: usize) -> Vec<SpMatrix> {
    assert!(n <= 2, "brute-force enumeration is exponential");
    let dim = 2 * n;
    let total_bits = dim * dim;
    let mut out = Vec::new();
    for code in 0u64..(1u64 << total_bits) {
        let cols: Vec<SpVec> = (0..dim)
            .map(|j| ((code >> (j * dim)) & ((1 << dim) - 1)) as u32)
            .collect();
        let m = SpMatrix { n, cols };
        if m.is_symplectic() {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn form_is_alternating_and_standard_on_basis() {
        let n = 3;
        for j in 0..2 * n {
            let ej = 1u32 << j;
            assert_eq!(symplectic_form(n, ej, ej), 0);
            for l in 0..2 * n {
                let el = 1u32 << l;
                let expected = u8::from(l % n == j % n && l != j);
                assert_eq!(symplectic_form(n, ej, el), expected);
            }
        }
    }

    #[test]
    fn gate_tableaux_are_symplectic_involutions() {
        let n = 3;
        let gates = [
            Gate::H(0),
            Gate::H(2),
            Gate::S(1),
            Gate::Cnot(0, 2),
            Gate::Cnot(2, 1),
            Gate::Cz(0, 1),
        ];
        for g in gates {
            let m = g.matrix(n);
            assert!(m.is_symplectic(), "{g:?}");
            assert_eq!(m.compose(&m), SpMatrix::identity(n), "{g:?}");
        }
    }

    #[test]
    fn group_orders_by_enumeration() {
        // |Sp(2, F₂)| = 6 and |Sp(4, F₂)| = 720.
        assert_eq!(enumerate_symplectic(1).len(), 6);
        assert_eq!(enumerate_symplectic(2).len(), 720);
    }

    #[test]
    fn synthesis_round_trips_every_element_of_sp4() {
        for m in enumerate_symplectic(2) {
            let gates = synthesize_circuit(&m).expect("symplectic input");
            assert_eq!(circuit_tableau(2, &gates), m);
        }
        for m in enumerate_symplectic(1) {
            let gates = synthesize_circuit(&m).expect("symplectic input");
            assert_eq!(circuit_tableau(1, &gates), m);
        }
    }

    #[test]
    fn sampling_is_symplectic_and_covers_sp2_uniformly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // n = 3: validity of each sample.
        for _ in 0..50 {
            let m = sample_symplectic(3, &mut rng);
            assert!(m.is_symplectic());
        }
        // n = 1: all 6 elements appear with near-uniform frequency.
        let mut counts = std::collections::HashMap::new();
        let draws = 6000;
        for _ in 0..draws {
            let m = sample_symplectic(1, &mut rng);
            *counts.entry(m.cols.clone()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        for (_, c) in counts {
            let expected = draws as f64 / 6.0;
            assert!(
                (c as f64 - expected).abs() < 5.0 * expected.sqrt(),
                "count {c} too far from uniform"
            );
        }
        // n = 2: a large sample hits many distinct elements (720 total).
        let mut seen = std::collections::HashSet::new();
        for _ in 0..4000 {
            seen.insert(sample_symplectic(2, &mut rng).cols);
        }
        assert!(seen.len() > 700, "only {} of 720 elements seen", seen.len());
    }

    #[test]
    fn synthesized_circuits_match_random_tableaux() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5 {
            for _ in 0..40 {
                let m = sample_symplectic(n, &mut rng);
                let gates = synthesize_circuit(&m).expect("symplectic input");
                assert_eq!(circuit_tableau(n, &gates), m, "n = {n}");
            }
        }
    }

    #[test]
    fn rejects_non_symplectic_input() {
        let mut m = SpMatrix::identity(2);
        m.cols[0] = m.cols[1]; // degenerate
        assert_eq!(synthesize_circuit(&m), Err(SymplecticError::NotSymplectic));
    }
}
