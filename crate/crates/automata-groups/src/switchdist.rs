//! The run-count model behind convolution powers of the projected measure.
//!
//! Because the subgroup-uniform measures are idempotent, the `n`-th power of
//! `(d-1)/d mu_A + 1/d mu_B` collapses to a convex combination of alternating
//! products `mu_A mu_B ..` and `mu_B mu_A ..`. The coefficient of the
//! length-`i` product starting with `A` is the probability that an i.i.d.
//! `{A, B}` sequence with `P(A) = (d-1)/d` starts with `A` and contains
//! exactly `i` runs (equivalently `i - 1` switch times). This module computes
//! that distribution exactly and verifies the decomposition as an identity of
//! measures with rational weights, total variation zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::measure::Measure;
use crate::mother::MotherGenerators;
use crate::walks::{mu_tilde, subgroup_measures};

/// Exact run-count probabilities: `p_a[i-1]` is the probability of starting
/// with `A` and seeing exactly `i` runs in `n` symbols.
#[derive(Debug, Clone)]
pub struct SwitchDistribution {
    pub n: usize,
    pub d: usize,
    pub p_a: Vec<BigRational>,
    pub p_b: Vec<BigRational>,
}

impl SwitchDistribution {
    /// `p_i = p_{A,i} + p_{B,i}`.
    pub fn amalgamated(&self) -> Vec<BigRational> {
        self.p_a.iter().zip(&self.p_b).map(|(a, b)| a + b).collect()
    }

    /// Expected number of runs; equals `(n-1) * 2(d-1)/d^2 + 1`.
    pub fn mean(&self) -> BigRational {
        self.amalgamated()
            .iter()
            .enumerate()
            .map(|(idx, p)| BigRational::from(BigInt::from(idx as i64 + 1)) * p)
            .sum()
    }

    /// The closed form for the mean.
    pub fn expected_mean(n: usize, d: usize) -> BigRational {
        let switch = BigRational::new(
            BigInt::from(2 * (d as i64 - 1)),
            BigInt::from((d * d) as i64),
        );
        BigRational::from(BigInt::from(n as i64 - 1)) * switch + BigRational::one()
    }

    pub fn total_mass(&self) -> BigRational {
        self.p_a.iter().sum::<BigRational>() + self.p_b.iter().sum::<BigRational>()
    }
}

/// Exact dynamic program over (first symbol, current symbol, runs).
#[allow(clippy::needless_range_loop)] // indices name the DP coordinates
pub fn switch_distribution(n: usize, d: usize) -> SwitchDistribution {
    assert!(n >= 1 && d >= 2);
    let p_sym = [
        BigRational::new(BigInt::from(d as i64 - 1), BigInt::from(d as i64)), // A
        BigRational::new(BigInt::one(), BigInt::from(d as i64)),              // B
    ];
    // state[first][cur][runs - 1]
    let mut state = vec![vec![vec![BigRational::zero(); n]; 2]; 2];
    for first in 0..2 {
        state[first][first][0] = p_sym[first].clone();
    }
    for _ in 1..n {
        let mut next = vec![vec![vec![BigRational::zero(); n]; 2]; 2];
        for first in 0..2 {
            for cur in 0..2 {
                for runs in 0..n {
                    let w = &state[first][cur][runs];
                    if w.is_zero() {
                        continue;
                    }
                    for sym in 0..2 {
                        let new_runs = if sym == cur { runs } else { runs + 1 };
                        next[first][sym][new_runs] += w * &p_sym[sym];
                    }
                }
            }
        }
        state = next;
    }
    let collect = |first: usize| -> Vec<BigRational> {
        (0..n).map(|runs| &state[first][0][runs] + &state[first][1][runs]).collect()
    };
    SwitchDistribution { n, d, p_a: collect(0), p_b: collect(1) }
}

/// Outcome of checking the convex decomposition of the `n`-th power of the
/// projected measure, as an exact identity.
#[derive(Debug, Serialize)]
pub struct ConvexDecompositionReport {
    pub n: usize,
    pub d: usize,
    pub lhs_support: usize,
    pub rhs_support: usize,
    /// total variation distance as an exact rational, rendered as a string
    pub total_variation: String,
    pub exact_match: bool,
}

/// Check `mu_tilde^n = sum_i p_{A,i} mu_{A,i} + sum_i p_{B,i} mu_{B,i}`
/// with exact rational arithmetic.
pub fn verify_convex_decomposition(
    gens: &MotherGenerators,
    n: usize,
) -> ConvexDecompositionReport {
    let d = gens.alphabet().size();
    let (mu_a, mu_b) = subgroup_measures(gens);
    let lhs = mu_tilde(gens).power(n);

    let dist = switch_distribution(n, d);
    // alternating products of length i, starting with A and with B
    let mut alt_a: Vec<Measure> = Vec::with_capacity(n);
    let mut alt_b: Vec<Measure> = Vec::with_capacity(n);
    alt_a.push(mu_a.clone());
    alt_b.push(mu_b.clone());
    for i in 2..=n {
        let next_a = if i % 2 == 1 { &mu_a } else { &mu_b };
        let next_b = if i % 2 == 1 { &mu_b } else { &mu_a };
        alt_a.push(alt_a[i - 2].convolve(next_a));
        alt_b.push(alt_b[i - 2].convolve(next_b));
    }
    let mut parts: Vec<(BigRational, &Measure)> = Vec::with_capacity(2 * n);
    for i in 0..n {
        parts.push((dist.p_a[i].clone(), &alt_a[i]));
        parts.push((dist.p_b[i].clone(), &alt_b[i]));
    }
    let rhs = Measure::mix(&parts);

    let tv = lhs.total_variation(&rhs);
    ConvexDecompositionReport {
        n,
        d,
        lhs_support: lhs.support_size(),
        rhs_support: rhs.support_size(),
        exact_match: tv.is_zero() && lhs == rhs,
        total_variation: tv.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::measure::ratio;
    use crate::mother::mother_generators;

    #[test]
    fn single_symbol_distribution() {
        let dist = switch_distribution(1, 3);
        assert_eq!(dist.p_a, vec![ratio(2, 3)]);
        assert_eq!(dist.p_b, vec![ratio(1, 3)]);
        assert!(dist.total_mass().is_one());
    }

    #[test]
    fn mean_matches_closed_form() {
        for d in [2usize, 3] {
            for n in 1..=32 {
                let dist = switch_distribution(n, d);
                assert!(dist.total_mass().is_one(), "mass at n={n}, d={d}");
                assert_eq!(
                    dist.mean(),
                    SwitchDistribution::expected_mean(n, d),
                    "mean at n={n}, d={d}"
                );
            }
        }
    }

    #[test]
    fn matches_brute_force_enumeration() {
        // enumerate all {A,B}^n sequences with exact weights
        for (n, d) in [(10usize, 2usize), (16, 2), (8, 3)] {
            let dist = switch_distribution(n, d);
            let p_sym = [ratio(d as i64 - 1, d as i64), ratio(1, d as i64)];
            let mut brute_a = vec![BigRational::zero(); n];
            let mut brute_b = vec![BigRational::zero(); n];
            for mask in 0usize..(1 << n) {
                let sym = |i: usize| (mask >> i) & 1;
                let mut weight = BigRational::one();
                let mut runs = 1usize;
                for i in 0..n {
                    weight *= &p_sym[sym(i)];
                    if i > 0 && sym(i) != sym(i - 1) {
                        runs += 1;
                    }
                }
                if sym(0) == 0 {
                    brute_a[runs - 1] += weight;
                } else {
                    brute_b[runs - 1] += weight;
                }
            }
            assert_eq!(dist.p_a, brute_a, "p_A at n={n}, d={d}");
            assert_eq!(dist.p_b, brute_b, "p_B at n={n}, d={d}");
        }
    }

    #[test]
    fn convex_decomposition_is_exact() {
        let gens2 = mother_generators(Alphabet::new(2)).unwrap();
        // n = 1 is the definition of mu_tilde
        for n in 1..=6 {
            let report = verify_convex_decomposition(&gens2, n);
            assert!(report.exact_match, "d=2, n={n}: TV = {}", report.total_variation);
        }
        let gens3 = mother_generators(Alphabet::new(3)).unwrap();
        for n in 1..=3 {
            let report = verify_convex_decomposition(&gens3, n);
            assert!(report.exact_match, "d=3, n={n}: TV = {}", report.total_variation);
        }
    }
}
