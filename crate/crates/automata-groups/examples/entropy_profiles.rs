//! Exact entropy profiles of the mother-group walks, the row inequality
//! between the step walk and the projected walk, the convex decomposition of
//! projected powers through the run-count distribution, and the sandwich
//! report.
//!
//! Run with `cargo run --release --example entropy_profiles`.

use automata_groups::alphabet::Alphabet;
use automata_groups::checks::{first_inequality_sweep, sandwich_report};
use automata_groups::mother::mother_generators;
use automata_groups::switchdist::{switch_distribution, verify_convex_decomposition, SwitchDistribution};
use automata_groups::walks::{entropy_profile, mu_step, mu_tilde, Budget};

fn main() {
    let gens = mother_generators(Alphabet::new(2)).unwrap();
    let budget = Budget { max_atoms: 200_000, max_seconds: 20.0 };

    println!("exact entropy profiles for d = 2 (nats):");
    let f = entropy_profile(&mu_step(&gens), 16, budget);
    let ft = entropy_profile(&mu_tilde(&gens), 16, budget);
    println!("  n    F(n)      support   F~(n)     support   F~(n)/n");
    for (row_f, row_ft) in f.rows.iter().zip(&ft.rows) {
        println!(
            "  {:<4} {:<9.5} {:<9} {:<9.5} {:<9} {:.5}",
            row_f.n,
            row_f.entropy,
            row_f.support,
            row_ft.entropy,
            row_ft.support,
            row_ft.entropy / row_ft.n as f64
        );
    }

    println!(
        "\nobserved entropy rate at the deepest horizon (an estimate, not a limit): {:.5}",
        ft.slope_estimate().unwrap()
    );

    println!("\nrow bound F(n) <= d F~(n) + d log d, with slack:");
    for row in first_inequality_sweep(&gens, 10, budget) {
        println!(
            "  n = {:<3} F = {:<8.5} bound = {:<8.5} slack = {:.5} {}",
            row.n,
            row.f_n,
            row.bound,
            row.slack,
            if row.holds { "ok" } else { "VIOLATED" }
        );
    }

    println!("\nrun-count distribution (d = 2):");
    for n in [4usize, 8, 16] {
        let dist = switch_distribution(n, 2);
        println!(
            "  n = {n:<3} mean runs = {} (closed form {})",
            dist.mean(),
            SwitchDistribution::expected_mean(n, 2)
        );
    }

    println!("\nexact convex decomposition of projected powers:");
    for n in 1..=6 {
        let report = verify_convex_decomposition(&gens, n);
        println!(
            "  n = {n}: support {} vs {}, total variation {} => exact = {}",
            report.lhs_support, report.rhs_support, report.total_variation, report.exact_match
        );
    }

    println!("\nsandwich report (informative, claimed only for large n):");
    let report = sandwich_report(&gens, 12, 0.1, budget);
    for row in report.rows.iter().take(12) {
        println!(
            "  n = {:<3} F~(n) = {:<8.5} vs F({}) + log(2n) = {:<8.5} holds = {}",
            row.n, row.f_tilde_n, row.argument, row.rhs, row.holds
        );
    }
}
