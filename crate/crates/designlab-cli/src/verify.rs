//! Deterministic self-check suites behind `designlab verify <suite>`.
//!
//! Every check is a single record with status pass/fail. The exact suites
//! (combinatorics, weingarten, moments) are seed-independent; the ensembles
//! suite runs seeded Monte Carlo closures whose acceptance bands are
//! `band = 4 × --tolerance-scale` standard errors, so it passes
//! deterministically for any fixed seed (the default seed is known-good).

use designlab::ensembles::clifford::{clifford_group_exact, frame_potential_group_exact};
use designlab::ensembles::{
    frame_potential_group_numeric, frame_potential_projective_exact, mc_entropy, mc_moment,
    pauli_group_dense, stabilizer_states_one_qubit, ChoiSide, EnsembleSpec, Region,
};
use designlab::entropy::ChoiPartition;
use designlab::moments::{
    haar_choi_moment, haar_choi_moment_power, haar_state_moment, haar_unitary_frame_potential,
    jensen_renyi_floor, page_average_entropy, projective_frame_floor,
};
use designlab::symgroup::{
    catalan, catalan_bounds, catalan_f64, conjugacy_class_size, enumerate, factorial,
    for_each_permutation, genus_census, moebius, CensusMode, Permutation,
};
use designlab::weingarten::{partitions, sym_character, sym_irrep_dim, weingarten,
    weingarten_by_type};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::report::{Provenance, Record};

/// Which self-check suite to run.
#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Cycle inequality census, genus census, Catalan bounds.
    Combinatorics,
    /// Gram-inverse identity, closed-form tables, character orthogonality.
    Weingarten,
    /// Closed-form channel/state moments, Catalan trends, mean entropies.
    Moments,
    /// Exact frame potentials and seeded Monte Carlo closures.
    Ensembles,
    /// All of the above.
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Combinatorics => "combinatorics",
            Suite::Weingarten => "weingarten",
            Suite::Moments => "moments",
            Suite::Ensembles => "ensembles",
            Suite::All => "all",
        }
    }
}

pub struct VerifyCtx {
    pub seed: u64,
    /// Acceptance band for Monte Carlo closures, in standard errors.
    pub band: f64,
}

pub fn run_suite(suite: Suite, ctx: &VerifyCtx) -> Vec<Record> {
    match suite {
        Suite::Combinatorics => suite_combinatorics(),
        Suite::Weingarten => suite_weingarten(),
        Suite::Moments => suite_moments(),
        Suite::Ensembles => suite_ensembles(ctx),
        Suite::All => {
            let mut out = suite_combinatorics();
            out.extend(suite_weingarten());
            out.extend(suite_moments());
            out.extend(suite_ensembles(ctx));
            out
        }
    }
}

fn br(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn br_int(num: &BigUint) -> BigRational {
    BigRational::from(BigInt::from(num.clone()))
}

// ---------------------------------------------------------------------------
// combinatorics
// ---------------------------------------------------------------------------

fn suite_combinatorics() -> Vec<Record> {
    let mut out = Vec::new();

    // Cycle inequality census: ξ(σ) + ξ(στ) ≤ α + 1 for every σ ∈ S_α with
    // τ the full cycle, and the saturators are counted by Cat_α.
    for alpha in 1..=8usize {
        let tau = Permutation::full_cycle(alpha);
        let mut inequality_ok = true;
        let mut saturators: u64 = 0;
        for_each_permutation(alpha, |p| {
            let joint = p.cycle_count() + p.compose(&tau).cycle_count();
            if joint > alpha + 1 {
                inequality_ok = false;
            } else if joint == alpha + 1 {
                saturators += 1;
            }
        });
        let cat = catalan(alpha);
        let ok = inequality_ok && BigUint::from(saturators) == cat;
        out.push(
            Record::new(
                "cycle-lemma-census",
                Provenance::Exact,
                "xi(sigma) + xi(sigma tau) <= alpha + 1 over all of S_alpha (tau = full cycle); saturator count = Cat_alpha",
            )
            .dims(format!("S_{alpha}"))
            .alpha(alpha as f64)
            .exact_rational(&br_int(&cat))
            .value(saturators as f64)
            .pass_fail(ok),
        );
    }

    // Genus census: brute-force bucket counts equal the closed-form census,
    // the genus-0 head is Cat_n, and the buckets exhaust S_n.
    for n in 1..=8usize {
        let brute = genus_census(n, CensusMode::BruteForce).expect("n <= 10");
        let formula = genus_census(n, CensusMode::ExactFormula).expect("closed-form census");
        let total: BigUint = brute.iter().cloned().sum();
        let ok = brute == formula && brute[0] == catalan(n) && total == factorial(n);
        let counts = brute
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        out.push(
            Record::new(
                "genus-census",
                Provenance::Exact,
                "counts of sigma in S_n by genus (n + 1 - xi(sigma) - xi(sigma tau))/2: brute force = closed form, genus-0 head = Cat_n, buckets sum to n!",
            )
            .dims(format!("S_{n}"))
            .exact_rational(&br_int(&catalan(n)))
            .detail(format!("counts by genus: {counts}"))
            .pass_fail(ok),
        );
    }

    // Two-sided Catalan bounds.
    {
        let mut ok = true;
        for k in 1..=20usize {
            let (lower, upper) = catalan_bounds(k).expect("k >= 1");
            let c = catalan_f64(k);
            if !(lower < c && c < upper) {
                ok = false;
            }
        }
        out.push(
            Record::new(
                "catalan-bounds",
                Provenance::Exact,
                "4^k/(sqrt(pi) (k+1)^(3/2)) < Cat_k < 4^k/(sqrt(pi) k^(3/2)) for 1 <= k <= 20",
            )
            .dims("k in 1..=20")
            .pass_fail(ok),
        );
    }

    out
}

// ---------------------------------------------------------------------------
// weingarten
// ---------------------------------------------------------------------------

fn is_identity(p: &Permutation) -> bool {
    p.transposition_distance() == 0
}

/// Σ_σ Wg(d, σ)·d^{ξ(σ⁻¹ρ)} as an exact rational.
fn gram_row(perms: &[Permutation], wg: &[BigRational], d: usize, rho: &Permutation) -> BigRational {
    let mut total = BigRational::zero();
    for (sigma, w) in perms.iter().zip(wg) {
        let cycles = sigma.inverse().compose(rho).cycle_count();
        total += w * br_int(&BigUint::from(d).pow(cycles as u32));
    }
    total
}

/// Canonical representative of the conjugacy class with the given cycle
/// type: disjoint cycles on consecutive points (1-indexed cycle notation).
fn class_representative(n: usize, cycle_type: &[usize]) -> Permutation {
    let mut cycles = Vec::new();
    let mut next = 1usize;
    for &len in cycle_type {
        cycles.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    Permutation::from_cycles(n, &cycles).expect("cycle type partitions n")
}

fn suite_weingarten() -> Vec<Record> {
    let mut out = Vec::new();

    // Defining identity of the Weingarten function, exhaustively over both
    // group elements for degrees 1..=4.
    for n in 1..=4usize {
        let perms = enumerate(n);
        let mut ok = true;
        for d in n..=8usize {
            let wg: Vec<BigRational> = perms
                .iter()
                .map(|s| weingarten(d, s).expect("d >= n"))
                .collect();
            for rho in &perms {
                let expected = if is_identity(rho) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                if gram_row(&perms, &wg, d, rho) != expected {
                    ok = false;
                }
            }
        }
        out.push(
            Record::new(
                "gram-inverse-identity",
                Provenance::Exact,
                "sum_sigma Wg(d, sigma) d^(xi(sigma^-1 rho)) = [rho = id] for every rho in S_n",
            )
            .dims(format!("S_{n}, d in {n}..=8"))
            .pass_fail(ok),
        );
    }

    // Degree 5 at one representative per conjugacy class (both sides of the
    // identity are class functions, so this is equivalent to the full check).
    {
        let n = 5usize;
        let perms = enumerate(n);
        let mut ok = true;
        for d in [5usize, 6] {
            let wg: Vec<BigRational> = perms
                .iter()
                .map(|s| weingarten(d, s).expect("d >= n"))
                .collect();
            for cycle_type in partitions(n) {
                let rho = class_representative(n, &cycle_type);
                let expected = if is_identity(&rho) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                if gram_row(&perms, &wg, d, &rho) != expected {
                    ok = false;
                }
            }
        }
        out.push(
            Record::new(
                "gram-inverse-identity-degree-5",
                Provenance::Exact,
                "sum_sigma Wg(d, sigma) d^(xi(sigma^-1 rho)) = [rho = id], one rho per conjugacy class of S_5 (both sides are class functions)",
            )
            .dims("S_5, d in {5, 6}")
            .pass_fail(ok),
        );
    }

    // Closed-form Weingarten tables for degrees 2 and 3 at ten dimensions.
    {
        let mut ok2 = true;
        let mut ok3 = true;
        for d in 3..=12usize {
            let di = d as i128;
            ok2 &= weingarten_by_type(d, &[1, 1]).expect("d >= 2") == br(1, di * di - 1);
            ok2 &= weingarten_by_type(d, &[2]).expect("d >= 2") == br(-1, di * (di * di - 1));
            let d3 = di * (di * di - 1) * (di * di - 4);
            ok3 &= weingarten_by_type(d, &[1, 1, 1]).expect("d >= 3")
                == br(di * di - 2, d3);
            ok3 &= weingarten_by_type(d, &[2, 1]).expect("d >= 3")
                == br(-1, (di * di - 1) * (di * di - 4));
            ok3 &= weingarten_by_type(d, &[3]).expect("d >= 3") == br(2, d3);
        }
        out.push(
            Record::new(
                "weingarten-closed-form-degree-2",
                Provenance::Exact,
                "Wg(id) = 1/(d^2-1), Wg(transposition) = -1/(d(d^2-1))",
            )
            .dims("d in 3..=12")
            .pass_fail(ok2),
        );
        out.push(
            Record::new(
                "weingarten-closed-form-degree-3",
                Provenance::Exact,
                "Wg(id) = (d^2-2)/(d(d^2-1)(d^2-4)), Wg(2-cycle) = -1/((d^2-1)(d^2-4)), Wg(3-cycle) = 2/(d(d^2-1)(d^2-4))",
            )
            .dims("d in 3..=12")
            .pass_fail(ok3),
        );
    }

    // First orthogonality of symmetric-group characters.
    {
        let mut ok = true;
        for n in 1..=5usize {
            let lambdas = partitions(n);
            for la in &lambdas {
                for mu in &lambdas {
                    let mut total = BigInt::zero();
                    for class in &lambdas {
                        let size = BigInt::from(conjugacy_class_size(class));
                        let chi_la = sym_character(la, class).expect("valid partition pair");
                        let chi_mu = sym_character(mu, class).expect("valid partition pair");
                        total += size * chi_la * chi_mu;
                    }
                    let expected = if la == mu {
                        BigInt::from(factorial(n))
                    } else {
                        BigInt::zero()
                    };
                    if total != expected {
                        ok = false;
                    }
                }
            }
        }
        out.push(
            Record::new(
                "character-orthogonality",
                Provenance::Exact,
                "sum over classes |C| chi_lambda(C) chi_mu(C) = n! [lambda = mu]",
            )
            .dims("S_n, n in 1..=5")
            .pass_fail(ok),
        );
    }

    // Irrep dimensions square-sum to the group order.
    {
        let mut ok = true;
        for n in 1..=8usize {
            let mut total = BigUint::zero();
            for la in partitions(n) {
                let f = sym_irrep_dim(&la).expect("valid partition");
                total += &f * &f;
            }
            if total != factorial(n) {
                ok = false;
            }
        }
        out.push(
            Record::new(
                "irrep-dimension-square-sum",
                Provenance::Exact,
                "sum over partitions of n of (f^lambda)^2 = n!",
            )
            .dims("n in 1..=8")
            .pass_fail(ok),
        );
    }

    // Leading-order asymptotics: d^{n+|σ|}·Wg(d, σ) → Moeb(σ), with the
    // residual shrinking like 1/d².
    {
        let n = 3usize;
        let mut ok = true;
        for sigma in enumerate(n) {
            let moeb = moebius(&sigma).to_f64().expect("small integer");
            let mut residuals = Vec::new();
            for d in [50usize, 100, 200] {
                let wg = weingarten(d, &sigma).expect("d >= n");
                let scale =
                    br_int(&BigUint::from(d).pow((n + sigma.transposition_distance()) as u32));
                let scaled = (wg * scale).to_f64().expect("moderate rational");
                residuals.push((scaled - moeb).abs());
            }
            if !(residuals[2] <= residuals[1] && residuals[1] <= residuals[0]) {
                ok = false;
            }
            if residuals[2] > 1e-3 * moeb.abs().max(1.0) {
                ok = false;
            }
        }
        out.push(
            Record::new(
                "weingarten-moebius-asymptotics",
                Provenance::Exact,
                "d^(n+|sigma|) Wg(d, sigma) -> Moeb(sigma) with O(1/d^2) residual, checked at d = 50, 100, 200",
            )
            .dims("S_3")
            .pass_fail(ok),
        );
    }

    out
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

/// Independent recomputation of the mean entanglement entropy in bits:
/// (Σ_{j=d_B+1}^{d_A d_B} 1/j − (d_A−1)/(2 d_B)) / ln 2.
fn page_recompute(d_a: usize, d_b: usize) -> f64 {
    let harmonic: f64 = (d_b + 1..=d_a * d_b).map(|j| 1.0 / j as f64).sum();
    (harmonic - (d_a as f64 - 1.0) / (2.0 * d_b as f64)) / std::f64::consts::LN_2
}

fn suite_moments() -> Vec<Record> {
    let mut out = Vec::new();
    let squares: Vec<usize> = (2..=8).collect(); // d = root² in {4, ..., 64}

    // Equal-split channel moments, order 2.
    {
        let mut ok = true;
        for &root in &squares {
            let d = (root * root) as i128;
            let part = ChoiPartition::symmetric(root, root).expect("square split");
            ok &= haar_choi_moment(&part, 2).expect("degree 2") == br(2, d + 1);
        }
        out.push(
            Record::new(
                "choi-moment-order-2",
                Provenance::Exact,
                "E tr rho_AC^2 = 2/(d+1) for the equal split d_A = d_B = d_C = d_D = sqrt(d)",
            )
            .dims("d in {4, 9, 16, 25, 36, 49, 64}")
            .alpha(2.0)
            .pass_fail(ok),
        );
    }

    // Equal-split channel moments, order 3.
    {
        let mut ok = true;
        for &root in &squares {
            let d = (root * root) as i128;
            let part = ChoiPartition::symmetric(root, root).expect("square split");
            let expected = br(
                5 * d * d * d - 7 * d * d - 6 * d + 2,
                d * d * (d + 1) * (d * d - 4),
            );
            ok &= haar_choi_moment(&part, 3).expect("degree 3") == expected;
        }
        out.push(
            Record::new(
                "choi-moment-order-3",
                Provenance::Exact,
                "E tr rho_AC^3 = (5d^3 - 7d^2 - 6d + 2)/(d^2 (d+1)(d^2-4)) for the equal split",
            )
            .dims("d in {4, 9, 16, 25, 36, 49, 64}")
            .alpha(3.0)
            .pass_fail(ok),
        );
    }

    // Bipartite state purity (order 2) on a grid plus large spot checks.
    {
        let mut ok = true;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for d_a in 2..=8 {
            for d_b in 2..=8 {
                pairs.push((d_a, d_b));
            }
        }
        pairs.extend([(16, 16), (32, 32), (64, 64), (17, 64), (64, 17)]);
        for (d_a, d_b) in pairs {
            let expected = br((d_a + d_b) as i128, (d_a * d_b + 1) as i128);
            ok &= haar_state_moment(d_a, d_b, 2).expect("order 2") == expected;
        }
        out.push(
            Record::new(
                "state-moment-order-2",
                Provenance::Exact,
                "E tr rho_A^2 = (d_A + d_B)/(d_A d_B + 1)",
            )
            .dims("d_A, d_B in 2..=8 plus (16,16), (32,32), (64,64), (17,64), (64,17)")
            .alpha(2.0)
            .pass_fail(ok),
        );
    }

    // Bipartite state third moment, general dimensions.
    {
        let mut ok = true;
        for d_a in 2..=8usize {
            for d_b in 2..=8usize {
                let (a, b) = (d_a as i128, d_b as i128);
                let n = a * b;
                let expected = br(a * a + b * b + 3 * a * b + 1, (n + 1) * (n + 2));
                ok &= haar_state_moment(d_a, d_b, 3).expect("order 3") == expected;
            }
        }
        for d in [16usize, 32, 64] {
            let a = d as i128;
            let n = a * a;
            let expected = br(5 * a * a + 1, (n + 1) * (n + 2));
            ok &= haar_state_moment(d, d, 3).expect("order 3") == expected;
        }
        out.push(
            Record::new(
                "state-moment-order-3",
                Provenance::Exact,
                "E tr rho_A^3 = (d_A^2 + d_B^2 + 3 d_A d_B + 1)/((d_A d_B + 1)(d_A d_B + 2))",
            )
            .dims("d_A, d_B in 2..=8 plus equal dims 16, 32, 64")
            .alpha(3.0)
            .pass_fail(ok),
        );
    }

    // Equal-dimension fourth moment.
    {
        let mut ok = true;
        for d in [2usize, 4, 8, 16, 32, 64] {
            let a = d as i128;
            let n = a * a;
            let expected = br(14 * a * a * a + 10 * a, (n + 1) * (n + 2) * (n + 3));
            ok &= haar_state_moment(d, d, 4).expect("order 4") == expected;
        }
        out.push(
            Record::new(
                "state-moment-order-4-equal-dims",
                Provenance::Exact,
                "E tr rho_A^4 = (14 d^3 + 10 d)/((d^2+1)(d^2+2)(d^2+3)) at d_A = d_B = d",
            )
            .dims("d in {2, 4, 8, 16, 32, 64}")
            .alpha(4.0)
            .pass_fail(ok),
        );
    }

    // Catalan trend of the rescaled channel moments.
    for alpha in [2usize, 3] {
        let cat = catalan_f64(alpha);
        let mut vals = Vec::new();
        for &root in &squares[2..] {
            // d in {16, 25, 36, 49, 64}
            let d = root * root;
            let part = ChoiPartition::symmetric(root, root).expect("square split");
            let m = haar_choi_moment(&part, alpha)
                .expect("degree <= 3")
                .to_f64()
                .expect("moderate rational");
            vals.push((d as f64).powi(alpha as i32 - 1) * m);
        }
        let monotone = vals.windows(2).all(|w| w[1] > w[0]);
        let final_dev = (vals.last().unwrap() - cat).abs() / cat;
        out.push(
            Record::new(
                "choi-moment-catalan-trend",
                Provenance::Exact,
                "d^(alpha-1) E tr rho_AC^alpha increases toward Cat_alpha along d in {16, 25, 36, 49, 64}; final deviation < 10%",
            )
            .dims("d in {16, 25, 36, 49, 64}")
            .alpha(alpha as f64)
            .value(*vals.last().unwrap())
            .reference(cat)
            .detail(format!("final relative deviation {final_dev:.4}"))
            .pass_fail(monotone && final_dev < 0.10),
        );
    }

    // Catalan trend of the rescaled state moments at equal dimensions.
    for alpha in [2usize, 3, 4] {
        let cat = catalan_f64(alpha);
        let mut vals = Vec::new();
        for d in 4..=12usize {
            let m = haar_state_moment(d, d, alpha)
                .expect("alpha <= 8")
                .to_f64()
                .expect("moderate rational");
            vals.push((d as f64).powi(alpha as i32 - 1) * m);
        }
        let monotone = vals.windows(2).all(|w| w[1] > w[0]);
        let final_dev = (vals.last().unwrap() - cat).abs() / cat;
        out.push(
            Record::new(
                "state-moment-catalan-trend",
                Provenance::Exact,
                "d^(alpha-1) E tr rho_A^alpha increases toward Cat_alpha along d_A = d_B = d in 4..=12; final deviation < 10%",
            )
            .dims("d_A = d_B in 4..=12")
            .alpha(alpha as f64)
            .value(*vals.last().unwrap())
            .reference(cat)
            .detail(format!("final relative deviation {final_dev:.4}"))
            .pass_fail(monotone && final_dev < 0.10),
        );
    }

    // Mean entanglement entropy.
    {
        let third_over_ln2 = (1.0 / 3.0) / std::f64::consts::LN_2;
        let v22 = page_average_entropy(2, 2).expect("valid dims");
        let mut ok = (v22 - third_over_ln2).abs() < 1e-12;
        for (d_a, d_b) in [(2usize, 4usize), (4, 4), (8, 8), (4, 64)] {
            let v = page_average_entropy(d_a, d_b).expect("valid dims");
            ok &= (v - page_recompute(d_a, d_b)).abs() < 1e-12;
            ok &= v > 0.0 && v < (d_a as f64).log2();
        }
        out.push(
            Record::new(
                "page-mean-entropy",
                Provenance::Exact,
                "E S(rho_A) = (sum_{j=d_B+1}^{d_A d_B} 1/j - (d_A-1)/(2 d_B))/ln 2; at (2,2) this is (1/3)/ln 2",
            )
            .dims("(2,2), (2,4), (4,4), (8,8), (4,64)")
            .alpha(1.0)
            .value(v22)
            .reference(third_over_ln2)
            .pass_fail(ok),
        );
    }

    // Consistency of the power-moment engine: s = 1 reduces to the plain
    // moment, order 1 gives exactly 1, and Var(tr rho^2) >= 0.
    {
        let mut ok = true;
        for (d_a, d_b) in [(2usize, 2usize), (3, 2), (2, 4)] {
            let part = ChoiPartition::symmetric(d_a, d_b).expect("valid split");
            let d = part.total();
            for alpha in 1..=6usize.min(d) {
                ok &= haar_choi_moment_power(&part, alpha, 1).expect("degree <= d")
                    == haar_choi_moment(&part, alpha).expect("degree <= d");
            }
            for s in 1..=4usize.min(d) {
                ok &= haar_choi_moment_power(&part, 1, s).expect("degree <= d")
                    == BigRational::one();
            }
        }
        for (d_a, d_b) in [(2usize, 2usize), (3, 2)] {
            let part = ChoiPartition::symmetric(d_a, d_b).expect("valid split");
            let mean = haar_choi_moment_power(&part, 2, 1).expect("degree 2");
            let second = haar_choi_moment_power(&part, 2, 2).expect("degree 4");
            ok &= second - &mean * &mean > BigRational::zero();
        }
        out.push(
            Record::new(
                "choi-power-moment-consistency",
                Provenance::Exact,
                "E[(tr rho_AC^alpha)^1] = E tr rho_AC^alpha; E[(tr rho_AC)^s] = 1; E[(tr rho_AC^2)^2] - (E tr rho_AC^2)^2 > 0",
            )
            .dims("splits (2,2), (3,2), (2,4)")
            .pass_fail(ok),
        );
    }

    // Jensen floor from the exact purity.
    {
        let m = haar_state_moment(4, 4, 2)
            .expect("order 2")
            .to_f64()
            .expect("moderate rational");
        let floor = jensen_renyi_floor(m, 2).expect("valid moment");
        let expected = (17.0f64 / 8.0).log2();
        let ok = (floor - expected).abs() < 1e-12 && floor > 0.0 && floor < 2.0;
        out.push(
            Record::new(
                "jensen-renyi-floor",
                Provenance::Exact,
                "E S^(2)(rho_A) >= -log2(E tr rho_A^2) by convexity; at (4,4) the floor is log2(17/8)",
            )
            .dims("(4,4)")
            .alpha(2.0)
            .value(floor)
            .reference(expected)
            .pass_fail(ok),
        );
    }

    out
}

// ---------------------------------------------------------------------------
// ensembles
// ---------------------------------------------------------------------------

fn choi_region(d_a: usize, d_b: usize) -> Region {
    Region::Choi {
        part: ChoiPartition::symmetric(d_a, d_b).expect("valid split"),
        side: ChoiSide::Ac,
    }
}

fn suite_ensembles(ctx: &VerifyCtx) -> Vec<Record> {
    let mut out = Vec::new();
    let band = ctx.band;
    let seed = ctx.seed;

    // Single-qubit Clifford frame potentials, in exact arithmetic over all
    // 24 elements: Phi_t = 1, 2, 5, 15 against the Haar floors
    // gamma(t, 2) = 1, 2, 5, 14 — an exact 3-design that is not a 4-design.
    {
        let members = clifford_group_exact(1).expect("single qubit supported");
        let expected = [1i64, 2, 5, 15];
        for t in 1..=4usize {
            let phi = frame_potential_group_exact(&members, t);
            let gamma = br_int(&haar_unitary_frame_potential(t, 2));
            let phi_expected = BigRational::from(BigInt::from(expected[t - 1]));
            let phi_ok = phi.is_rational() && phi.rational == phi_expected;
            let design_ok = if t <= 3 {
                phi.rational == gamma
            } else {
                phi.rational > gamma
            };
            out.push(
                Record::new(
                    "clifford-1q-frame-potential",
                    Provenance::Exact,
                    "Phi_t = mean |tr W|^(2t) over the 24 single-qubit Clifford elements; Haar floor gamma(t, d) = sum_{lambda |- t, <= d rows} (f^lambda)^2, equality iff t-design",
                )
                .dims("n = 1 (d = 2)")
                .alpha(t as f64)
                .exact_rational(&phi.rational)
                .reference(gamma.to_f64().expect("small integer"))
                .verdict(if t <= 3 { "attains-floor" } else { "exceeds-floor" })
                .pass_fail(phi_ok && design_ok),
            );
        }
    }

    // Pauli frame potentials: a 1-design (Phi_1 = 1) that badly fails the
    // 2-design floor (Phi_2 = 4^n against gamma = 2).
    for n in [1usize, 2] {
        let members = pauli_group_dense(n);
        let phi1 = frame_potential_group_numeric(&members, 1).expect("t = 1");
        let phi2 = frame_potential_group_numeric(&members, 2).expect("t = 2");
        let expected2 = (members.len()) as f64; // 4^n
        let ok = (phi1 - 1.0).abs() < 1e-9
            && (phi2 - expected2).abs() < 1e-6 * expected2
            && phi2 > 2.0 + 1.0;
        out.push(
            Record::new(
                "pauli-frame-potential",
                Provenance::Exact,
                "the n-qubit Pauli ensemble has Phi_1 = 1 (unitary 1-design) and Phi_2 = 4^n >> 2 = gamma(2, 2^n) (not a 2-design)",
            )
            .dims(format!("n = {n} (d = {})", 1usize << n))
            .value(phi2)
            .reference(2.0)
            .verdict("exceeds-floor")
            .pass_fail(ok),
        );
    }

    // Six single-qubit stabilizer states: a projective 3-design that is not
    // a projective 4-design.
    {
        let states = stabilizer_states_one_qubit();
        let mut ok = true;
        for t in 1..=3usize {
            let phi = frame_potential_projective_exact(&states, t).expect("t <= 4");
            let floor = projective_frame_floor(t, 2).value;
            ok &= (phi - floor).abs() < 1e-12;
        }
        let phi4 = frame_potential_projective_exact(&states, 4).expect("t = 4");
        let floor4 = projective_frame_floor(4, 2).value;
        ok &= phi4 > floor4 + 1e-3;
        out.push(
            Record::new(
                "stabilizer-projective-design",
                Provenance::Exact,
                "mean |<psi|phi>|^(2t) over the 6 stabilizer states attains 1/binom(t+1, t) for t <= 3 and exceeds it at t = 4",
            )
            .dims("d = 2, 6 states")
            .value(phi4)
            .reference(floor4)
            .pass_fail(ok),
        );
    }

    // Monte Carlo closure against the exact channel moment.
    {
        let exact = br(1, 5).to_f64().unwrap(); // 2/(9+1)
        let est = mc_moment(
            &EnsembleSpec::HaarUnitary { d: 9 },
            &choi_region(3, 3),
            2,
            1,
            2000,
            seed,
        )
        .expect("valid Monte Carlo request");
        let z = est.z_score(exact);
        out.push(
            Record::new(
                "mc-haar-unitary-closure",
                Provenance::MonteCarlo,
                "sampled mean of tr rho_AC^2 over Haar unitaries matches the exact 2/(d+1) within the acceptance band",
            )
            .dims("choi(3,3|3,3):ac")
            .alpha(2.0)
            .value(est.mean)
            .stderr(est.stderr)
            .reference(exact)
            .z(z)
            .detail(format!("n = {}", est.n_samples))
            .pass_fail(z <= band),
        );
    }

    // Monte Carlo closure against the exact state moment.
    {
        let exact = br(3, 5).to_f64().unwrap(); // (3+3)/(9+1)
        let est = mc_moment(
            &EnsembleSpec::HaarState { d: 9 },
            &Region::State { d_a: 3, d_b: 3 },
            2,
            1,
            4000,
            seed,
        )
        .expect("valid Monte Carlo request");
        let z = est.z_score(exact);
        out.push(
            Record::new(
                "mc-haar-state-closure",
                Provenance::MonteCarlo,
                "sampled mean of tr rho_A^2 over Haar states matches the exact (d_A + d_B)/(d_A d_B + 1) within the acceptance band",
            )
            .dims("state(3,3)")
            .alpha(2.0)
            .value(est.mean)
            .stderr(est.stderr)
            .reference(exact)
            .z(z)
            .detail(format!("n = {}", est.n_samples))
            .pass_fail(z <= band),
        );
    }

    // Two-qubit Clifford ensemble is a 2-design: its order-2 channel moment
    // matches the Haar value.
    {
        let exact = br(2, 5).to_f64().unwrap(); // 2/(4+1)
        let est = mc_moment(
            &EnsembleSpec::Clifford { n: 2 },
            &choi_region(2, 2),
            2,
            1,
            2000,
            seed,
        )
        .expect("valid Monte Carlo request");
        let z = est.z_score(exact);
        out.push(
            Record::new(
                "mc-clifford-design-transfer",
                Provenance::MonteCarlo,
                "order-2 moments of a unitary 2-design equal the Haar values, so the sampled Clifford mean of tr rho_AC^2 must close on 2/(d+1)",
            )
            .dims("choi(2,2|2,2):ac")
            .alpha(2.0)
            .value(est.mean)
            .stderr(est.stderr)
            .reference(exact)
            .z(z)
            .detail(format!("n = {}", est.n_samples))
            .pass_fail(z <= band),
        );
    }

    // Pauli ensemble keeps input-output correlations perfectly: every sample
    // has tr rho_AC^2 = 1, far from the Haar reference.
    {
        let exact = br(2, 5).to_f64().unwrap();
        let est = mc_moment(
            &EnsembleSpec::Pauli { n: 2 },
            &choi_region(2, 2),
            2,
            1,
            500,
            seed,
        )
        .expect("valid Monte Carlo request");
        let z = est.z_score(exact);
        let ok = (est.mean - 1.0).abs() < 1e-12 && est.stderr < 1e-12 && z > 10.0;
        out.push(
            Record::new(
                "mc-pauli-non-scrambling",
                Provenance::MonteCarlo,
                "every Pauli channel has a pure A⊗C reduction (tr rho_AC^2 = 1 exactly), so the Haar reference is rejected by construction",
            )
            .dims("choi(2,2|2,2):ac")
            .alpha(2.0)
            .value(est.mean)
            .stderr(est.stderr)
            .reference(exact)
            .z(z)
            .verdict("reference mismatch expected")
            .pass_fail(ok),
        );
    }

    // Bitwise reproducibility of the sampler.
    {
        let run = || {
            mc_moment(
                &EnsembleSpec::HaarState { d: 9 },
                &Region::State { d_a: 3, d_b: 3 },
                2,
                1,
                1000,
                seed,
            )
            .expect("valid Monte Carlo request")
        };
        let a = run();
        let b = run();
        let ok = a.mean == b.mean && a.stderr == b.stderr;
        out.push(
            Record::new(
                "mc-reproducibility",
                Provenance::MonteCarlo,
                "sample i uses ChaCha8 stream i of the seed and the summary is accumulated in index order, so repeated runs are bit-identical",
            )
            .dims("state(3,3)")
            .value(a.mean)
            .reference(b.mean)
            .detail(format!("seed = {seed}, n = 1000"))
            .pass_fail(ok),
        );
    }

    // A partial scrambler acting on a corner of the space leaves a large
    // entropy gap to the ceiling log2(d).
    {
        let spec = EnsembleSpec::PartialScrambler {
            d: 16,
            inner: Box::new(EnsembleSpec::HaarUnitary { d: 4 }),
        };
        let est = mc_entropy(&spec, &choi_region(4, 4), 3.0, 400, seed)
            .expect("valid Monte Carlo request");
        let gap = 4.0 - est.mean;
        out.push(
            Record::new(
                "mc-partial-scrambler-gap",
                Provenance::MonteCarlo,
                "a unitary scrambling only a 2x2 corner of a d = 16 space keeps S_R^(3)(rho_AC) far below the ceiling log2 d",
            )
            .dims("choi(4,4|4,4):ac, corner 2")
            .alpha(3.0)
            .value(est.mean)
            .stderr(est.stderr)
            .reference(4.0)
            .detail(format!("gap to ceiling = {gap:.3} bits"))
            .pass_fail(gap > 2.0),
        );
    }

    // Local circuits scramble with depth: purity falls from shallow to deep
    // and the deep value closes on the Haar moment.
    {
        let exact = br(2, 17).to_f64().unwrap(); // 2/(16+1)
        let shallow = mc_moment(
            &EnsembleSpec::LocalCircuit { n: 4, depth: 2 },
            &choi_region(4, 4),
            2,
            1,
            600,
            seed,
        )
        .expect("valid Monte Carlo request");
        let deep = mc_moment(
            &EnsembleSpec::LocalCircuit { n: 4, depth: 40 },
            &choi_region(4, 4),
            2,
            1,
            600,
            seed,
        )
        .expect("valid Monte Carlo request");
        let separated = deep.mean < shallow.mean - 3.0 * (shallow.stderr + deep.stderr);
        let close = (deep.mean - exact).abs() <= 0.1 * exact + band * deep.stderr;
        out.push(
            Record::new(
                "mc-local-circuit-depth-scrambling",
                Provenance::MonteCarlo,
                "mean tr rho_AC^2 of a random local circuit decreases with depth and approaches the Haar value 2/(d+1)",
            )
            .dims("choi(4,4|4,4):ac, n = 4")
            .alpha(2.0)
            .value(deep.mean)
            .stderr(deep.stderr)
            .reference(exact)
            .detail(format!(
                "depth 2 mean = {:.5}, depth 40 mean = {:.5}",
                shallow.mean, deep.mean
            ))
            .pass_fail(separated && close),
        );
    }

    out
}
