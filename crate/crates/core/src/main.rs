use std::io::Read as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;

use linkalg::config::RunConfig;
use linkalg::diagram::{
    is_alternating_writhes, make_alternating, parse_diagram, parse_diagram_lenient, random_moves,
    validate, LinkDiagram,
};
use linkalg::distinguish::{compare, link_fingerprint};
use linkalg::error::Error;
use linkalg::fixtures;
use linkalg::quandle::{count_colorings, count_colorings_brute, AffineQuandleSpec};

/// Exact link-invariant computations from combinatorial diagrams.
#[derive(Parser)]
#[command(name = "linkalg", version, about)]
struct Cli {
    /// Path to a JSON run configuration (defaults to $LINKALG_CONFIG, then
    /// built-in defaults).
    #[arg(long, global = true)]
    config: Option<String>,
    /// Seed recorded in outputs and driving the fuzzer.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full invariant bundle of a diagram.
    Invariants {
        /// Diagram path, `-` for stdin, or `fixture:NAME`.
        input: String,
    },
    /// Compare two links and report which invariant separates them.
    Distinguish {
        input_a: String,
        input_b: String,
        /// Sweep all permutations of the second link's component indices.
        #[arg(long)]
        permutations: bool,
        /// Human-readable table instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Count colorings by an affine quandle target.
    Colorings {
        input: String,
        #[arg(short = 'n', long)]
        modulus: u64,
        #[arg(short = 'u', long)]
        unit: u64,
        /// Also run the brute-force enumeration and assert agreement.
        #[arg(long)]
        brute: bool,
    },
    /// Rewrite a diagram into alternating-writhes form.
    Alternating {
        input: String,
        /// Output path for the rewritten diagram (stdout when absent).
        #[arg(short = 'o', long)]
        output: Option<String>,
    },
    /// Apply random Reidemeister moves and assert the bundle is stable.
    Fuzz {
        input: String,
        #[arg(long, default_value_t = 20)]
        moves: usize,
    },
    /// Validate a diagram and report violations.
    Validate { input: String },
    /// Re-emit a diagram in canonical JSON form.
    Render { input: String },
}

fn load_diagram(spec: &str) -> Result<LinkDiagram, Error> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        return fixtures::resolve(name);
    }
    let text = if spec == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(spec)?
    };
    parse_diagram(&text)
}

fn load_config(path_flag: &Option<String>, seed: Option<u64>) -> Result<RunConfig, Error> {
    let path = path_flag.clone().or_else(|| std::env::var("LINKALG_CONFIG").ok());
    let mut cfg = match path {
        Some(p) => RunConfig::from_json(&std::fs::read_to_string(p)?)?,
        None => RunConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

/// Field-by-field bundle comparison, naming every drifted invariant.
fn bundle_drift(
    a: &linkalg::distinguish::TauFingerprint,
    b: &linkalg::distinguish::TauFingerprint,
) -> Vec<String> {
    let mut out = Vec::new();
    if a.mu != b.mu {
        out.push("component-count".into());
    }
    if a.rational != b.rational {
        out.push("rational-invariant-factors".into());
    }
    if a.deltas != b.deltas {
        out.push("alexander-deltas".into());
    }
    if a.nu != b.nu {
        out.push("nu-fingerprint".into());
    }
    if a.ideals != b.ideals {
        out.push("ideal-fingerprints".into());
    }
    if a.colorings != b.colorings {
        out.push("coloring-counts".into());
    }
    if a.orbit_count != b.orbit_count {
        out.push("orbit-count".into());
    }
    if a.displacement != b.displacement {
        out.push("displacement-rational-factors".into());
    }
    out
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CapExceeded(_) | Error::Usage(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let cfg = load_config(&cli.config, cli.seed)?;
    match cli.command {
        Command::Invariants { input } => {
            let d = load_diagram(&input)?;
            let fp = link_fingerprint(&d, &cfg)?;
            println!("{}", serde_json::to_string_pretty(&fp.render_json(&cfg))?);
            Ok(0)
        }
        Command::Distinguish { input_a, input_b, permutations, table } => {
            let a = load_diagram(&input_a)?;
            let b = load_diagram(&input_b)?;
            let report = compare(&a, &b, permutations, &cfg)?;
            if table {
                print!("{}", report.render_table());
            } else {
                println!("{}", serde_json::to_string_pretty(&report.render_json())?);
            }
            Ok(if report.distinguished() { 10 } else { 0 })
        }
        Command::Colorings { input, modulus, unit, brute } => {
            let d = load_diagram(&input)?;
            let spec = AffineQuandleSpec::new(modulus, unit)?;
            let count = count_colorings(&d, &spec)?;
            if brute {
                let brute_count = count_colorings_brute(&d, &spec, cfg.brute_budget)?;
                if brute_count != count {
                    eprintln!(
                        "brute-force count {} disagrees with Smith-form count {}",
                        brute_count, count
                    );
                    return Ok(1);
                }
                println!("{} (brute-force agrees)", count);
            } else {
                println!("{}", count);
            }
            Ok(0)
        }
        Command::Alternating { input, output } => {
            let d = load_diagram(&input)?;
            let before = link_fingerprint(&d, &cfg)?;
            let alt = make_alternating(&d)?;
            if !is_alternating_writhes(&alt) {
                return Err(Error::Internal("alternating predicate failed".into()));
            }
            let after = link_fingerprint(&alt, &cfg)?;
            let drift = bundle_drift(&before, &after);
            if !drift.is_empty() {
                eprintln!("invariant drift after alternating rewrite: {}", drift.join(", "));
                return Ok(1);
            }
            let rendered = alt.render_json();
            match output {
                Some(path) => {
                    std::fs::write(path, rendered)?;
                }
                None => println!("{}", rendered),
            }
            eprintln!(
                "alternating-writhes predicate holds; invariant bundle preserved ({} crossings)",
                alt.crossings.len()
            );
            Ok(0)
        }
        Command::Fuzz { input, moves } => {
            let d = load_diagram(&input)?;
            let before = link_fingerprint(&d, &cfg)?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
            let (out, taken) = random_moves(&d, moves, &mut rng)?;
            let after = link_fingerprint(&out, &cfg)?;
            let drift = bundle_drift(&before, &after);
            if !drift.is_empty() {
                eprintln!("seed {}: moves {:?}", cfg.seed, taken);
                eprintln!("invariant drift: {}", drift.join(", "));
                return Ok(1);
            }
            println!("bundle stable after {} moves (seed {})", taken.len(), cfg.seed);
            Ok(0)
        }
        Command::Validate { input } => {
            let d = if let Some(name) = input.strip_prefix("fixture:") {
                fixtures::resolve(name)?
            } else if input == "-" {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf)?;
                parse_diagram_lenient(&buf)?
            } else {
                parse_diagram_lenient(&std::fs::read_to_string(&input)?)?
            };
            let violations = validate(&d);
            if violations.is_empty() {
                println!("valid");
                Ok(0)
            } else {
                for v in &violations {
                    eprintln!("{}", v);
                }
                Ok(1)
            }
        }
        Command::Render { input } => {
            let d = load_diagram(&input)?;
            println!("{}", d.render_json());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code_for(&e))
        }
    }
}
