//! Monte Carlo return probabilities of the projected walk against the
//! reference bound curves, plus the entropy exponents they come from.
//!
//! The collision estimator draws pairs of independent n-step walks; for a
//! symmetric measure the collision probability equals the return probability
//! at time 2n. Small horizons are cross-checked against the exact value.
//!
//! Run with `cargo run --release --example return_profile`.

use automata_groups::alphabet::Alphabet;
use automata_groups::measure::ratio_to_f64;
use automata_groups::mother::mother_generators;
use automata_groups::walks::{
    alpha_exponent, alpha_exponent_power, mu_tilde, profile_bound_curves,
    return_probability_exact, return_probability_mc,
};

fn main() {
    println!("entropy exponents:");
    for d in [2usize, 3, 4] {
        println!("  alpha({d}) = {:.12}", alpha_exponent(d));
    }
    println!(
        "  subgroup embedded over X^3 with d = 2: alpha = {:.12} (= alpha(8))",
        alpha_exponent_power(2, 3)
    );

    let gens = mother_generators(Alphabet::new(2)).unwrap();
    let m = mu_tilde(&gens);
    let seed = 42u64;

    println!("\nexact vs Monte Carlo at small horizons (1e5 pairs):");
    for n in [1usize, 2, 3] {
        let exact = ratio_to_f64(&return_probability_exact(&m, n));
        let (estimate, stderr) = return_probability_mc(&m, n, 100_000, seed + n as u64).unwrap();
        println!("  n = {n}: exact {exact:.6}, estimate {estimate:.6} +- {stderr:.6}");
    }

    let ns = [5usize, 10, 20, 40, 80];
    println!("\nreturn profile estimates (2e5 pairs per horizon, seed {seed}):");
    let curves = profile_bound_curves(2, 0.1, &ns);
    println!("  n    estimate   stderr     exp(-n^(alpha+eps))");
    for (i, &n) in ns.iter().enumerate() {
        let (estimate, stderr) = return_probability_mc(&m, n, 200_000, seed + n as u64).unwrap();
        println!(
            "  {:<4} {:<10.6} {:<10.6} {:<10.6}",
            n, estimate, stderr, curves[i].rho_bound
        );
    }
    println!("(the curve is the shape of the lower bound, with constants 1)");
}
