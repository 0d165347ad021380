//! Exact enumeration of small Clifford groups and exact group averages.
//!
//! The n-qubit Clifford group modulo global phase is generated by Hadamard,
//! phase, and CNOT gates; its order is 4ⁿ·|Sp(2n, F₂)| (24 for n = 1, 11520
//! for n = 2).  Every element has matrix entries in Z[ζ₈]/√2^k, so breadth-
//! first closure over canonical phase-class representatives enumerates the
//! group with *exact* arithmetic — no tolerance anywhere.
//!
//! On top of the enumeration this module computes, exactly,
//!   * frame potentials Φ_t = (1/|G|) Σ_W |tr W|^{2t} (the group-collapse
//!     form of E|tr(U V†)|^{2t}),
//!   * group-averaged trace powers of reduced Choi blocks,
//! both as elements of Q + Q·√2 so that rationality is an assertion, not an
//! approximation.

use super::cyclotomic::{Cyc8, ExactUnitary, QuadraticReal};
use crate::entropy::ChoiPartition;
use num_rational::BigRational;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliffordError {
    #[error("exact enumeration supports 1 or 2 qubits, got {0}")]
    UnsupportedQubitCount(usize),
    #[error("partition total {part} does not match the group dimension {dim}")]
    DimensionMismatch { part: usize, dim: usize },
    #[error("group average is not real-rational as expected")]
    NotRational,
}

/// Exact elementary gates.
fn hadamard() -> ExactUnitary {
    ExactUnitary::from_rows(2, 1, vec![Cyc8::ONE, Cyc8::ONE, Cyc8::ONE, -Cyc8::ONE])
}

fn phase_gate() -> ExactUnitary {
    ExactUnitary::from_rows(2, 0, vec![Cyc8::ONE, Cyc8::ZERO, Cyc8::ZERO, Cyc8::I])
}

fn cnot(dim: usize, control_bit: usize, target_bit: usize) -> ExactUnitary {
    let mut entries = vec![Cyc8::ZERO; dim * dim];
    for c in 0..dim {
        let r = if (c >> control_bit) & 1 == 1 { c ^ (1 << target_bit) } else { c };
        entries[r * dim + c] = Cyc8::ONE;
    }
    ExactUnitary::from_rows(dim, 0, entries)
}

/// Generators of the n-qubit Clifford group (n = 1: H, S; n = 2 additionally
/// CNOTs both ways), embedded in dimension 2ⁿ.
fn generators(n: usize) -> Result<Vec<ExactUnitary>, CliffordError> {
    let h = hadamard();
    let s = phase_gate();
    let id = ExactUnitary::identity(2);
    match n {
        1 => Ok(vec![h, s]),
        2 => Ok(vec![
            h.kron(&id),
            id.kron(&h),
            s.kron(&id),
            id.kron(&s),
            // Qubit 0 is the most significant bit of the 4-dim index.
            cnot(4, 1, 0),
            cnot(4, 0, 1),
        ]),
        _ => Err(CliffordError::UnsupportedQubitCount(n)),
    }
}

/// Enumerate the full n-qubit Clifford group modulo global phase (n ≤ 2) as
/// canonical exact matrices.  |result| = 24 at n = 1, 11520 at n = 2.
pub fn clifford_group_exact(n: usize) -> Result<Vec<ExactUnitary>, CliffordError> {
    let gens = generators(n)?;
    let dim = 1usize << n;
    let start = ExactUnitary::identity(dim).canonical_mod_phase();
    let mut seen: HashSet<ExactUnitary> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    let mut members = Vec::new();
    while let Some(u) = frontier.pop() {
        members.push(u.clone());
        for g in &gens {
            let next = g.matmul(&u).canonical_mod_phase();
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    Ok(members)
}

/// Exact frame potential of an enumerated group (modulo phase):
/// Φ_t = (1/N) Σ_W |tr W|^{2t}, an element of Q + Q·√2.
pub fn frame_potential_group_exact(members: &[ExactUnitary], t: usize) -> QuadraticReal {
    let mut total = QuadraticReal::zero();
    for w in members {
        total = total.add(&w.abs_trace_sq().pow(t));
    }
    let n = BigRational::from_integer((members.len() as i64).into());
    total.scale(&n.recip())
}

/// Exact tr ρ^α of the reduced block ρ_AC (or ρ_AD with the swapped
/// partition) of the Choi state of an exact unitary: with the channel matrix
/// M[(k·d_C + m), (l·d_D + o)] = U[(m·d_D + o), (k·d_B + l)], the reduced
/// block is ρ = M M†/d and tr ρ^α is returned as an exact real.
pub fn exact_choi_trace_power(
    u: &ExactUnitary,
    part: &ChoiPartition,
    alpha: usize,
) -> Result<QuadraticReal, CliffordError> {
    let d = u.dim;
    if part.total() != d {
        return Err(CliffordError::DimensionMismatch { part: part.total(), dim: d });
    }
    let (d_a, d_b, d_c, d_d) = (part.d_a, part.d_b, part.d_c, part.d_d);
    let rows = d_a * d_c;
    let cols = d_b * d_d;
    // M as raw Cyc8 entries sharing the denominator √2^k of U.
    let mut m = vec![Cyc8::ZERO; rows * cols];
    for k in 0..d_a {
        for mm in 0..d_c {
            for l in 0..d_b {
                for o in 0..d_d {
                    m[(k * d_c + mm) * cols + (l * d_d + o)] =
                        u.entry(mm * d_d + o, k * d_b + l);
                }
            }
        }
    }
    // G_raw = M M† (integer Cyc8); actual G = G_raw / 2^k, ρ = G / d.
    let mut g = vec![Cyc8::ZERO; rows * rows];
    for r in 0..rows {
        for r2 in 0..rows {
            let mut acc = Cyc8::ZERO;
            for c in 0..cols {
                acc += m[r * cols + c] * m[r2 * cols + c].conj();
            }
            g[r * rows + r2] = acc;
        }
    }
    // tr(G_raw^alpha) by repeated multiplication.
    let mut power = g.clone();
    for _ in 1..alpha {
        let mut next = vec![Cyc8::ZERO; rows * rows];
        for r in 0..rows {
            for l in 0..rows {
                let x = power[r * rows + l];
                if x.is_zero() {
                    continue;
                }
                for c in 0..rows {
                    next[r * rows + c] += x * g[l * rows + c];
                }
            }
        }
        power = next;
    }
    let mut tr = Cyc8::ZERO;
    for r in 0..rows {
        tr += power[r * rows + r];
    }
    // tr ρ^α = tr(G_raw^α) / (2^{kα} · d^α).
    let real =
        QuadraticReal::from_real_cyc8(tr, 2 * u.k * alpha as u32).ok_or(CliffordError::NotRational)?;
    let d_pow = BigRational::from_integer((d as i64).into()).pow(alpha as i32);
    Ok(real.scale(&d_pow.recip()))
}

/// Exact group average of tr ρ_AC^α over an enumerated set of exact
/// unitaries.  Returns an element of Q + Q·√2; for Clifford groups at α ≤ 3
/// the √2 part cancels and the value is rational.
pub fn exact_average_choi_trace_power(
    members: &[ExactUnitary],
    part: &ChoiPartition,
    alpha: usize,
) -> Result<QuadraticReal, CliffordError> {
    let mut total = QuadraticReal::zero();
    for u in members {
        total = total.add(&exact_choi_trace_power(u, part, alpha)?);
    }
    let n = BigRational::from_integer((members.len() as i64).into());
    Ok(total.scale(&n.recip()))
}
