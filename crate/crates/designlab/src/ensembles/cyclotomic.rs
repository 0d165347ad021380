//! Exact arithmetic in the eighth cyclotomic ring Z[zeta], zeta = e^{i pi/4}.
//!
//! Every matrix entry of a Clifford-circuit unitary lies in Z[zeta] / sqrt(2)^k
//! for some k >= 0, because the generating gates (Hadamard, phase, controlled
//! gates) have entries 0, ±1, ±i, ±1/sqrt(2).  Representing entries this way
//! lets group closures, traces, and reduced-density-matrix moments be computed
//! with integer arithmetic and compared for *exact* equality, with no floating
//! point round-off anywhere in the pipeline.
//!
//! A ring element is stored as `a + b·zeta + c·zeta² + d·zeta³` with integer
//! coordinates; the relation `zeta⁴ = -1` closes multiplication.  Useful
//! identities: `zeta² = i` and `zeta - zeta³ = sqrt(2)`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element a + b·zeta + c·zeta² + d·zeta³ of Z[zeta], zeta = e^{i pi/4}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Cyc8 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Cyc8 {
    pub const ZERO: Cyc8 = Cyc8 { a: 0, b: 0, c: 0, d: 0 };
    pub const ONE: Cyc8 = Cyc8 { a: 1, b: 0, c: 0, d: 0 };
    /// The imaginary unit i = zeta².
    pub const I: Cyc8 = Cyc8 { a: 0, b: 0, c: 1, d: 0 };

    pub fn from_int(a: i64) -> Self {
        Cyc8 { a, b: 0, c: 0, d: 0 }
    }

    /// zeta^k for any integer k (k mod 8), using zeta⁴ = -1.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let sign = if k < 4 { 1 } else { -1 };
        let mut out = Cyc8::ZERO;
        match k % 4 {
            0 => out.a = sign,
            1 => out.b = sign,
            2 => out.c = sign,
            _ => out.d = sign,
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0 && self.d == 0
    }

    /// Multiplication by zeta: coordinates rotate with a sign from zeta⁴ = -1.
    pub fn mul_zeta(self) -> Self {
        Cyc8 { a: -self.d, b: self.a, c: self.b, d: self.c }
    }

    /// Complex conjugation: zeta -> zeta⁻¹ = -zeta³.
    pub fn conj(self) -> Self {
        Cyc8 { a: self.a, b: -self.d, c: -self.c, d: -self.b }
    }

    /// Multiplication by sqrt(2) = zeta - zeta³.
    pub fn times_sqrt2(self) -> Self {
        Cyc8 {
            a: self.b - self.d,
            b: self.a + self.c,
            c: self.b + self.d,
            d: self.c - self.a,
        }
    }

    /// Exact division by sqrt(2) when possible: (e · sqrt2) / 2 requires all
    /// four coordinates of e·sqrt2 to be even, i.e. a ≡ c and b ≡ d (mod 2).
    pub fn div_sqrt2(self) -> Option<Self> {
        if (self.a - self.c) % 2 != 0 || (self.b - self.d) % 2 != 0 {
            return None;
        }
        let t = self.times_sqrt2();
        Some(Cyc8 { a: t.a / 2, b: t.b / 2, c: t.c / 2, d: t.d / 2 })
    }

    /// Whether exact division by sqrt(2) is possible.
    pub fn divisible_by_sqrt2(&self) -> bool {
        (self.a - self.c) % 2 == 0 && (self.b - self.d) % 2 == 0
    }

    pub fn to_complex(self) -> Complex64 {
        const R: f64 = std::f64::consts::FRAC_1_SQRT_2;
        // zeta = (1+i)/sqrt2, zeta² = i, zeta³ = (-1+i)/sqrt2.
        Complex64::new(
            self.a as f64 + (self.b as f64 - self.d as f64) * R,
            self.c as f64 + (self.b as f64 + self.d as f64) * R,
        )
    }

    /// Decompose a *real* element as p + q·sqrt(2) with p, q integers.
    /// Returns `None` if the element has a nonzero imaginary part.
    ///
    /// Imaginary part = c + (b + d)/sqrt2, which vanishes over the exact ring
    /// only when c = 0 and b + d = 0; the real part is then a + b·sqrt2.
    pub fn real_sqrt2_parts(self) -> Option<(i64, i64)> {
        if self.c != 0 || self.b + self.d != 0 {
            return None;
        }
        Some((self.a, self.b))
    }
}

impl Add for Cyc8 {
    type Output = Cyc8;
    fn add(self, o: Cyc8) -> Cyc8 {
        Cyc8 { a: self.a + o.a, b: self.b + o.b, c: self.c + o.c, d: self.d + o.d }
    }
}

impl AddAssign for Cyc8 {
    fn add_assign(&mut self, o: Cyc8) {
        self.a += o.a;
        self.b += o.b;
        self.c += o.c;
        self.d += o.d;
    }
}

impl Sub for Cyc8 {
    type Output = Cyc8;
    fn sub(self, o: Cyc8) -> Cyc8 {
        Cyc8 { a: self.a - o.a, b: self.b - o.b, c: self.c - o.c, d: self.d - o.d }
    }
}

impl Neg for Cyc8 {
    type Output = Cyc8;
    fn neg(self) -> Cyc8 {
        Cyc8 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }
}

impl Mul for Cyc8 {
    type Output = Cyc8;
    fn mul(self, o: Cyc8) -> Cyc8 {
        // Convolution of coefficient vectors with wrap sign from zeta⁴ = -1.
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (o.a, o.b, o.c, o.d);
        Cyc8 {
            a: a1 * a2 - b1 * d2 - c1 * c2 - d1 * b2,
            b: a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2,
            c: a1 * c2 + b1 * b2 + c1 * a2 - d1 * d2,
            d: a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2,
        }
    }
}

/// A real number p + q·sqrt(2) with rational p, q — the totally real subfield
/// in which squared trace moduli and Hermitian trace powers live.  Keeping the
/// sqrt(2) part explicit lets group averages be asserted *exactly* rational
/// (q = 0) rather than numerically small.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticReal {
    pub rational: BigRational,
    pub sqrt2_coeff: BigRational,
}

impl QuadraticReal {
    pub fn zero() -> Self {
        QuadraticReal { rational: BigRational::zero(), sqrt2_coeff: BigRational::zero() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        QuadraticReal { rational: r, sqrt2_coeff: BigRational::zero() }
    }

    /// Build from a real Cyc8 element divided by sqrt(2)^k.
    /// Returns `None` if the element is not real.
    pub fn from_real_cyc8(value: Cyc8, k: u32) -> Option<Self> {
        let (p, q) = value.real_sqrt2_parts()?;
        // Divide p + q*sqrt2 by sqrt2^k: for even k divide both by 2^{k/2};
        // for odd k additionally divide by sqrt2, which swaps the parts:
        // (p + q*sqrt2)/sqrt2 = q + (p/2)*sqrt2.
        let (mut p, mut q) = (
            BigRational::from_integer(p.into()),
            BigRational::from_integer(q.into()),
        );
        let two = BigRational::from_integer(2.into());
        if k % 2 == 1 {
            let new_p = q;
            let new_q = p / &two;
            p = new_p;
            q = new_q;
        }
        let halvings = (k / 2) as usize;
        for _ in 0..halvings {
            p = p / &two;
            q = q / &two;
        }
        Some(QuadraticReal { rational: p, sqrt2_coeff: q })
    }

    pub fn add(&self, o: &QuadraticReal) -> QuadraticReal {
        QuadraticReal {
            rational: &self.rational + &o.rational,
            sqrt2_coeff: &self.sqrt2_coeff + &o.sqrt2_coeff,
        }
    }

    pub fn mul(&self, o: &QuadraticReal) -> QuadraticReal {
        let two = BigRational::from_integer(2.into());
        QuadraticReal {
            rational: &self.rational * &o.rational + two * &self.sqrt2_coeff * &o.sqrt2_coeff,
            sqrt2_coeff: &self.rational * &o.sqrt2_coeff + &self.sqrt2_coeff * &o.rational,
        }
    }

    pub fn scale(&self, r: &BigRational) -> QuadraticReal {
        QuadraticReal {
            rational: &self.rational * r,
            sqrt2_coeff: &self.sqrt2_coeff * r,
        }
    }

    pub fn pow(&self, e: usize) -> QuadraticReal {
        let mut out = QuadraticReal::from_rational(BigRational::from_integer(1.into()));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exactly rational (sqrt2 coefficient vanishes)?
    pub fn is_rational(&self) -> bool {
        self.sqrt2_coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.rational.to_f64().unwrap_or(f64::NAN)
            + std::f64::consts::SQRT_2 * self.sqrt2_coeff.to_f64().unwrap_or(f64::NAN)
    }
}

/// A square matrix over Q(zeta) with a shared denominator sqrt(2)^k:
/// the represented matrix is `entries / sqrt(2)^k` (row-major).
///
/// `reduce` keeps k minimal, which makes the representation canonical and
/// hashable; equality of `ExactUnitary` values is then exact matrix equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactUnitary {
    pub dim: usize,
    pub k: u32,
    pub entries: Vec<Cyc8>,
}

impl ExactUnitary {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Cyc8::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Cyc8::ONE;
        }
        ExactUnitary { dim, k: 0, entries }
    }

    pub fn from_rows(dim: usize, k: u32, entries: Vec<Cyc8>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        let mut m = ExactUnitary { dim, k, entries };
        m.reduce();
        m
    }

    pub fn entry(&self, r: usize, c: usize) -> Cyc8 {
        self.entries[r * self.dim + c]
    }

    /// Divide out common sqrt(2) factors so that k is minimal.
    fn reduce(&mut self) {
        while self.k > 0 && self.entries.iter().all(Cyc8::divisible_by_sqrt2) {
            for e in self.entries.iter_mut() {
                *e = e.div_sqrt2().expect("divisibility checked");
            }
            self.k -= 1;
        }
        // A zero matrix never arises for unitaries; normalize anyway.
        if self.entries.iter().all(Cyc8::is_zero) {
            self.k = 0;
        }
    }

    pub fn matmul(&self, o: &ExactUnitary) -> ExactUnitary {
        assert_eq!(self.dim, o.dim);
        let n = self.dim;
        let mut entries = vec![Cyc8::ZERO; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = self.entries[i * n + l];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += x * o.entries[l * n + j];
                }
            }
        }
        let mut m = ExactUnitary { dim: n, k: self.k + o.k, entries };
        m.reduce();
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ExactUnitary {
        let n = self.dim;
        let mut entries = vec![Cyc8::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        ExactUnitary { dim: n, k: self.k, entries }
    }

    /// Kronecker product (self ⊗ other).
    pub fn kron(&self, o: &ExactUnitary) -> ExactUnitary {
        let n1 = self.dim;
        let n2 = o.dim;
        let n = n1 * n2;
        let mut entries = vec![Cyc8::ZERO; n * n];
        for i1 in 0..n1 {
            for j1 in 0..n1 {
                let x = self.entries[i1 * n1 + j1];
                if x.is_zero() {
                    continue;
                }
                for i2 in 0..n2 {
                    for j2 in 0..n2 {
                        entries[(i1 * n2 + i2) * n + (j1 * n2 + j2)] = x * o.entries[i2 * n2 + j2];
                    }
                }
            }
        }
        let mut m = ExactUnitary { dim: n, k: self.k + o.k, entries };
        m.reduce();
        m
    }

    /// Trace as (Cyc8 value, sqrt2 exponent).
    pub fn trace(&self) -> (Cyc8, u32) {
        let mut t = Cyc8::ZERO;
        for i in 0..self.dim {
            t += self.entries[i * self.dim + i];
        }
        (t, self.k)
    }

    /// |tr|² as an exact element of Q + Q·sqrt2.
    pub fn abs_trace_sq(&self) -> QuadraticReal {
        let (t, k) = self.trace();
        QuadraticReal::from_real_cyc8(t * t.conj(), 2 * k)
            .expect("t * conj(t) is always real")
    }

    /// Canonical representative of the phase class {zeta^j · U : j = 0..7}.
    /// Two unitaries that differ by an eighth-root-of-unity phase map to the
    /// same representative, so hashing canonical forms enumerates the group
    /// modulo global phase.
    pub fn canonical_mod_phase(&self) -> ExactUnitary {
        let mut best: Option<Vec<Cyc8>> = None;
        let mut current = self.entries.clone();
        for _ in 0..8 {
            let better = match &best {
                None => true,
                Some(b) => current < *b,
            };
            if better {
                best = Some(current.clone());
            }
            for e in current.iter_mut() {
                *e = e.mul_zeta();
            }
        }
        ExactUnitary { dim: self.dim, k: self.k, entries: best.expect("eight candidates") }
    }

    pub fn to_complex_matrix(&self) -> nalgebra::DMatrix<Complex64> {
        let scale = std::f64::consts::SQRT_2.powi(-(self.k as i32));
        nalgebra::DMatrix::from_fn(self.dim, self.dim, |r, c| {
            self.entries[r * self.dim + c].to_complex() * scale
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_relations() {
        let zeta = Cyc8::zeta_pow(1);
        // zeta^8 = 1, zeta^4 = -1, zeta^2 = i.
        let mut p = Cyc8::ONE;
        for _ in 0..8 {
            p = p * zeta;
        }
        assert_eq!(p, Cyc8::ONE);
        assert_eq!(Cyc8::zeta_pow(4), -Cyc8::ONE);
        assert_eq!(Cyc8::zeta_pow(2), Cyc8::I);
        // sqrt2² = 2.
        let sqrt2 = Cyc8::ONE.times_sqrt2();
        assert_eq!(sqrt2 * sqrt2, Cyc8::from_int(2));
        // conj is an involution compatible with numeric conjugation.
        let x = Cyc8 { a: 3, b: -2, c: 5, d: 7 };
        assert_eq!(x.conj().conj(), x);
        let xc = x.conj().to_complex();
        assert!((xc - x.to_complex().conj()).norm() < 1e-12);
        // |x|² is real.
        assert!((x * x.conj()).real_sqrt2_parts().is_some());
    }

    #[test]
    fn multiplication_matches_numeric() {
        let x = Cyc8 { a: 1, b: 2, c: -1, d: 3 };
        let y = Cyc8 { a: -2, b: 0, c: 4, d: 1 };
        let z = x * y;
        let numeric = x.to_complex() * y.to_complex();
        assert!((z.to_complex() - numeric).norm() < 1e-10);
    }

    #[test]
    fn sqrt2_division() {
        let x = Cyc8 { a: 1, b: 0, c: 1, d: 0 }; // 1 + i = sqrt2·zeta
        assert_eq!(x.div_sqrt2(), Some(Cyc8::zeta_pow(1)));
        let odd = Cyc8 { a: 1, b: 0, c: 0, d: 0 };
        assert_eq!(odd.div_sqrt2(), None);
        // Round trip: (x·sqrt2)/sqrt2 = x for arbitrary x.
        let x = Cyc8 { a: 5, b: -3, c: 2, d: 9 };
        assert_eq!(x.times_sqrt2().div_sqrt2(), Some(x));
    }

    #[test]
    fn quadratic_real_decomposition() {
        // (1 + zeta - zeta³) = 1 + sqrt2.
        let x = Cyc8 { a: 1, b: 1, c: 0, d: -1 };
        let (p, q) = x.real_sqrt2_parts().unwrap();
        assert_eq!((p, q), (1, 1));
        let qr = QuadraticReal::from_real_cyc8(x, 0).unwrap();
        assert!((qr.to_f64() - (1.0 + 2.0_f64.sqrt())).abs() < 1e-12);
        // Dividing by sqrt2 once swaps the parts: (1 + sqrt2)/sqrt2 = 1 + sqrt2/2.
        let qr = QuadraticReal::from_real_cyc8(x, 1).unwrap();
        assert!((qr.to_f64() - (1.0 + 2.0_f64.sqrt()) / 2.0_f64.sqrt()).abs() < 1e-12);
        // (1+sqrt2)² = 3 + 2·sqrt2.
        let sq = QuadraticReal::from_real_cyc8(x, 0).unwrap().pow(2);
        assert_eq!(sq.rational, BigRational::from_integer(3.into()));
        assert_eq!(sq.sqrt2_coeff, BigRational::from_integer(2.into()));
        // Imaginary elements refuse to decompose.
        assert!(Cyc8::I.real_sqrt2_parts().is_none());
    }

    #[test]
    fn exact_matrix_basics() {
        // Hadamard: (1/sqrt2)·[[1,1],[1,-1]].
        let h = ExactUnitary::from_rows(
            2,
            1,
            vec![Cyc8::ONE, Cyc8::ONE, Cyc8::ONE, -Cyc8::ONE],
        );
        // H² = I exactly.
        assert_eq!(h.matmul(&h), ExactUnitary::identity(2));
        // H is self-adjoint.
        assert_eq!(h.adjoint(), h);
        // Phase gate S = diag(1, i); S⁴ = I.
        let s = ExactUnitary::from_rows(
            2,
            0,
            vec![Cyc8::ONE, Cyc8::ZERO, Cyc8::ZERO, Cyc8::I],
        );
        let s2 = s.matmul(&s);
        let s4 = s2.matmul(&s2);
        assert_eq!(s4, ExactUnitary::identity(2));
        // (HS)³ differs from I only by a phase: canonical forms agree.
        let hs = h.matmul(&s);
        let hs3 = hs.matmul(&hs).matmul(&hs);
        assert_ne!(hs3, ExactUnitary::identity(2));
        assert_eq!(
            hs3.canonical_mod_phase(),
            ExactUnitary::identity(2).canonical_mod_phase()
        );
        // Numeric round trip.
        let dense = h.to_complex_matrix();
        assert!((dense[(0, 0)].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        // Kron: (H⊗H)² = I₄.
        let hh = h.kron(&h);
        assert_eq!(hh.matmul(&hh), ExactUnitary::identity(4));
        assert_eq!(hh.k, 2);
        // |tr H|² = 0; |tr S|² = |1+i|² = 2.
        assert_eq!(h.abs_trace_sq().to_f64(), 0.0);
        assert_eq!(s.abs_trace_sq().rational, BigRational::from_integer(2.into()));
        assert!(s.abs_trace_sq().is_rational());
    }
}
