//! Command-line front end. Every subcommand is a thin adapter over the
//! library; outputs are the library results serialized as CSV or JSON with a
//! reproducibility header. Exit codes: 0 success, 1 assertion violation,
//! 2 usage or parse error.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use automata_groups::checks::{entropy_oracle_suite, first_inequality_sweep, sandwich_report};
use automata_groups::classify::{classify, directed_info, growth_profile};
use automata_groups::element::Element;
use automata_groups::embed::{embed_bounded_subgroup, verify_embedding};
use automata_groups::mother::mother_generators;
use automata_groups::parse::parse_machine;
use automata_groups::report::{fmt_f64, render_csv, render_json, RunHeader};
use automata_groups::switchdist::verify_convex_decomposition;
use automata_groups::walks::{
    ball_isoperimetric, entropy_profile, mu_step, mu_tilde, profile_bound_curves,
    return_probability_mc, Budget,
};
use automata_groups::Alphabet;

#[derive(Parser)]
#[command(name = "automata-groups", version, about = "Groups generated by finite automata: exact algebra, classification, embeddings, and random-walk experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum MeasureKind {
    /// uniform(A) * uniform(B)
    Step,
    /// (d-1)/d uniform(A) + 1/d uniform(B)
    #[default]
    Tilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// randomized entropy-inequality oracles
    Appendix,
    /// exact convex decomposition of powers of the projected measure
    Convex,
    /// the row bound F(n) <= d F~(n) + d log d
    First,
    /// the sandwich report (informative, never asserted)
    Sandwich,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every state of a definition file by activity growth
    Classify {
        #[arg(long)]
        file: PathBuf,
        /// classify a single state instead of all
        #[arg(long)]
        state: Option<String>,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a state to a word and print the image word
    Act {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        state: String,
        /// input word in alphabet symbols (may be empty)
        #[arg(default_value = "")]
        word: String,
    },
    /// Print the root permutation and sections of a state
    Decompose {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the mother-group generators as a definition file
    Mother {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embed the states of a definition file into the mother group over a
    /// power alphabet and verify the embedding
    Embed {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        word_length: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact entropies of convolution powers
    EntropyProfile {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t)]
        measure: MeasureKind,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget_atoms: usize,
        #[arg(long, default_value_t = 60.0)]
        budget_seconds: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo return probabilities of the projected walk
    ReturnProfile {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 16)]
        nmax: usize,
        /// sample pairs per horizon
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// also emit reference bound curves with this epsilon
        #[arg(long, requires = "curves_out")]
        epsilon: Option<f64>,
        #[arg(long, requires = "epsilon")]
        curves_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Breadth-first Cayley balls and boundary ratios for the states of a
    /// definition file
    BallProfile {
        #[arg(long)]
        file: PathBuf,
        /// ball radius
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget_atoms: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an inequality suite and emit a JSON report
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// required for stochastic suites
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Violation(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Violation(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Violation(m) => m,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.code());
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(file: &PathBuf) -> Result<automata_groups::ParsedMachine, CliError> {
    let text = fs::read_to_string(file)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", file.display())))?;
    parse_machine(&text).map_err(usage)
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Classify { file, state, nmax, out } => {
            let parsed = load(&file)?;
            let targets: Vec<(String, Element)> = match &state {
                Some(name) => {
                    let g = parsed
                        .element(name)
                        .ok_or_else(|| CliError::Usage(format!("unknown state `{name}`")))?;
                    vec![(name.clone(), g)]
                }
                None => parsed.elements(),
            };
            #[derive(Serialize)]
            struct StateReport {
                state: String,
                #[serde(flatten)]
                class: automata_groups::classify::ActivityClass,
                #[serde(skip_serializing_if = "Option::is_none")]
                period: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                spine: Option<String>,
                growth: Vec<u64>,
            }
            let mut reports = Vec::new();
            for (name, g) in targets {
                let growth = growth_profile(&g, nmax).map_err(usage)?;
                let info = directed_info(&g);
                reports.push(StateReport {
                    state: name,
                    class: classify(&g),
                    period: info.as_ref().map(|i| i.period),
                    spine: info.map(|i| parsed.format_word(&i.spine)),
                    growth,
                });
            }
            let header = RunHeader::new(
                "classify",
                &format!("file={} state={state:?} nmax={nmax}", file.display()),
                None,
            );
            emit(&out, &render_json(&header, &reports))
        }

        Command::Act { file, state, word } => {
            let parsed = load(&file)?;
            let g = parsed
                .element(&state)
                .ok_or_else(|| CliError::Usage(format!("unknown state `{state}`")))?;
            let letters = parsed.word(&word).map_err(usage)?;
            println!("{}", parsed.format_word(&g.act(&letters)));
            Ok(())
        }

        Command::Decompose { file, state, out } => {
            let parsed = load(&file)?;
            let g = parsed
                .element(&state)
                .ok_or_else(|| CliError::Usage(format!("unknown state `{state}`")))?;
            let dec = g.decompose();
            // refer to sections by declared names where possible
            let named = parsed.elements();
            let name_of = |e: &Element| -> String {
                if e.is_trivial() {
                    return "1".to_string();
                }
                named
                    .iter()
                    .find(|(_, g)| g == e)
                    .map(|(n, _)| n.clone())
                    .unwrap_or_else(|| {
                        automata_groups::render_machines(
                            parsed.symbols(),
                            &[("section".to_string(), *e)],
                        )
                    })
            };
            let data = json!({
                "state": state,
                "root_perm": dec.root.images().iter().map(|&y| parsed.symbols()[y].clone()).collect::<Vec<_>>(),
                "sections": (0..dec.sections.len()).map(|x| json!({
                    "letter": parsed.symbols()[x],
                    "section": name_of(&dec.sections[x]),
                })).collect::<Vec<_>>(),
            });
            let header = RunHeader::new(
                "decompose",
                &format!("file={} state={state}", file.display()),
                None,
            );
            emit(&out, &render_json(&header, &data))
        }

        Command::Mother { d, out } => {
            if d < 2 {
                return Err(CliError::Usage("alphabet size must be at least 2".into()));
            }
            let gens = mother_generators(Alphabet::new(d)).map_err(usage)?;
            let mut file = String::new();
            let _ = writeln!(
                file,
                "# mother group generators for d = {d}: {} rooted (a*), {} directed (b*)",
                gens.a_elements().len(),
                gens.b_elements().len()
            );
            file.push_str(&gens.render_file());
            emit(&out, &file)
        }

        Command::Embed { file, word_length, depth, out } => {
            let parsed = load(&file)?;
            let generators = parsed.elements();
            if generators.is_empty() {
                return Err(CliError::Usage("file declares no states".into()));
            }
            let plan = embed_bounded_subgroup(&generators).map_err(usage)?;
            let verification = verify_embedding(&plan, word_length, depth);
            let header = RunHeader::new(
                "embed",
                &format!(
                    "file={} word_length={word_length} depth={depth}",
                    file.display()
                ),
                None,
            );
            let doc = json!({
                "plan": plan.report(),
                "verification": verification,
            });
            emit(&out, &render_json(&header, &doc))?;
            if !verification.passed() {
                return Err(CliError::Violation("embedding verification failed".into()));
            }
            Ok(())
        }

        Command::EntropyProfile {
            d,
            measure,
            nmax,
            budget_atoms,
            budget_seconds,
            format,
            out,
        } => {
            let gens = mother_generators(Alphabet::new(d)).map_err(usage)?;
            let m = match measure {
                MeasureKind::Step => mu_step(&gens),
                MeasureKind::Tilde => mu_tilde(&gens),
            };
            let budget = Budget { max_atoms: budget_atoms, max_seconds: budget_seconds };
            let profile = entropy_profile(&m, nmax, budget);
            let header = RunHeader::new(
                "entropy-profile",
                &format!(
                    "d={d} measure={} nmax={nmax} budget_atoms={budget_atoms} budget_seconds={budget_seconds}",
                    match measure { MeasureKind::Step => "step", MeasureKind::Tilde => "tilde" },
                ),
                None,
            );
            match format {
                Format::Json => emit(&out, &render_json(&header, &profile)),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = profile
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.n.to_string(),
                                fmt_f64(r.entropy),
                                r.support.to_string(),
                                fmt_f64(r.seconds),
                            ]
                        })
                        .collect();
                    let mut notes = vec!["H from exact convolution powers, in nats"];
                    if profile.truncated {
                        notes.push("truncated: budget exhausted before nmax");
                    }
                    emit(&out, &render_csv(&header, &notes, &["n", "H", "support", "seconds"], &rows))
                }
            }
        }

        Command::ReturnProfile {
            d,
            nmax,
            samples,
            seed,
            epsilon,
            curves_out,
            format,
            out,
        } => {
            if samples == 0 {
                return Err(CliError::Usage("--samples must be positive".into()));
            }
            let gens = mother_generators(Alphabet::new(d)).map_err(usage)?;
            let m = mu_tilde(&gens);
            let header = RunHeader::new(
                "return-profile",
                &format!("d={d} nmax={nmax} samples={samples}"),
                Some(seed),
            );
            let mut rows = Vec::new();
            for n in 1..=nmax {
                // decorrelate horizons with a per-horizon seed
                let seed_n = seed.wrapping_add((n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let (estimate, stderr) =
                    return_probability_mc(&m, n, samples, seed_n).map_err(usage)?;
                rows.push((n, estimate, stderr, seed_n));
            }
            match format {
                Format::Json => {
                    let data: Vec<_> = rows
                        .iter()
                        .map(|(n, est, err, s)| {
                            json!({"n": n, "estimate": est, "stderr": err, "samples": samples, "seed": s})
                        })
                        .collect();
                    emit(&out, &render_json(&header, &data))?;
                }
                Format::Csv => {
                    let csv_rows: Vec<Vec<String>> = rows
                        .iter()
                        .map(|(n, est, err, s)| {
                            vec![
                                n.to_string(),
                                fmt_f64(*est),
                                fmt_f64(*err),
                                samples.to_string(),
                                s.to_string(),
                            ]
                        })
                        .collect();
                    emit(
                        &out,
                        &render_csv(
                            &header,
                            &["collision estimator: pairs of independent walks"],
                            &["n", "estimate", "stderr", "samples", "seed"],
                            &csv_rows,
                        ),
                    )?;
                }
            }
            if let (Some(eps), Some(curves_path)) = (epsilon, curves_out) {
                let ns: Vec<usize> = (1..=nmax).collect();
                let curves = profile_bound_curves(d, eps, &ns);
                let curve_header = RunHeader::new(
                    "return-profile/bounds",
                    &format!("d={d} nmax={nmax} epsilon={eps}"),
                    None,
                );
                let curve_rows: Vec<Vec<String>> = curves
                    .iter()
                    .map(|r| {
                        vec![r.n.to_string(), fmt_f64(r.rho_bound), fmt_f64(r.iso_bound)]
                    })
                    .collect();
                emit(
                    &Some(curves_path),
                    &render_csv(
                        &curve_header,
                        &["reference curves with implicit constants C = a = 1"],
                        &["n", "rho_bound", "iso_bound"],
                        &curve_rows,
                    ),
                )?;
            }
            Ok(())
        }

        Command::BallProfile { file, nmax, budget_atoms, format, out } => {
            let parsed = load(&file)?;
            let generators: Vec<Element> =
                parsed.elements().into_iter().map(|(_, g)| g).collect();
            if generators.is_empty() {
                return Err(CliError::Usage("file declares no states".into()));
            }
            let profile = ball_isoperimetric(&generators, nmax, budget_atoms);
            let header = RunHeader::new(
                "ball-profile",
                &format!("file={} radius={nmax} budget_atoms={budget_atoms}", file.display()),
                None,
            );
            match format {
                Format::Json => emit(&out, &render_json(&header, &profile)),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = profile
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.radius.to_string(),
                                r.ball.to_string(),
                                r.boundary.to_string(),
                                fmt_f64(r.ratio),
                            ]
                        })
                        .collect();
                    let notes = if profile.truncated {
                        vec!["truncated: element budget exhausted"]
                    } else {
                        vec![]
                    };
                    emit(
                        &out,
                        &render_csv(&header, &notes, &["r", "ball", "boundary", "ratio"], &rows),
                    )
                }
            }
        }

        Command::Check { suite, trials, seed, d, nmax, epsilon, out } => {
            let header_cfg =
                format!("suite={} trials={trials} d={d} nmax={nmax} epsilon={epsilon}",
                    match suite {
                        Suite::Appendix => "appendix",
                        Suite::Convex => "convex",
                        Suite::First => "first",
                        Suite::Sandwich => "sandwich",
                    });
            match suite {
                Suite::Appendix => {
                    let seed = seed.ok_or_else(|| {
                        CliError::Usage("--seed is required for the appendix suite".into())
                    })?;
                    let report = entropy_oracle_suite(trials, seed);
                    let header = RunHeader::new("check", &header_cfg, Some(seed));
                    emit(&out, &render_json(&header, &report))?;
                    if !report.passed() {
                        return Err(CliError::Violation(format!(
                            "{} oracle violations",
                            report.violations.len()
                        )));
                    }
                    Ok(())
                }
                Suite::Convex => {
                    let gens = mother_generators(Alphabet::new(d)).map_err(usage)?;
                    let reports: Vec<_> =
                        (1..=nmax).map(|n| verify_convex_decomposition(&gens, n)).collect();
                    let header = RunHeader::new("check", &header_cfg, None);
                    emit(&out, &render_json(&header, &reports))?;
                    if let Some(bad) = reports.iter().find(|r| !r.exact_match) {
                        return Err(CliError::Violation(format!(
                            "convex decomposition differs at n = {}",
                            bad.n
                        )));
                    }
                    Ok(())
                }
                Suite::First => {
                    let gens = mother_generators(Alphabet::new(d)).map_err(usage)?;
                    let rows = first_inequality_sweep(&gens, nmax, Budget::default());
                    let header = RunHeader::new("check", &header_cfg, None);
                    emit(&out, &render_json(&header, &rows))?;
                    if let Some(bad) = rows.iter().find(|r| !r.holds) {
                        return Err(CliError::Violation(format!(
                            "row bound violated at n = {}",
                            bad.n
                        )));
                    }
                    Ok(())
                }
                Suite::Sandwich => {
                    let gens = mother_generators(Alphabet::new(d)).map_err(usage)?;
                    let report = sandwich_report(&gens, nmax, epsilon, Budget::default());
                    let header = RunHeader::new("check", &header_cfg, None);
                    emit(&out, &render_json(&header, &report))
                }
            }
        }
    }
}
