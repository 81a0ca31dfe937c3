//! Command-line frontend: generation, verification, decoding and table
//! reproduction for de Bruijn rings and almost perfect maps.
//!
//! Exit codes: 0 success, 1 semantic failure (verification failed, window
//! not in map, malformed data), 2 argument error, 3 resource budget
//! exceeded. The `DBMAP_BUDGET` environment variable overrides the default
//! window and edge budgets.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use debruijn_rings::composer::{
    build_almost_perfect, plan_composition, plan_composition_untrimmed, CompositionSpec,
};
use debruijn_rings::cyclic_map::CyclicMap;
use debruijn_rings::decoder::build_index;
use debruijn_rings::patterns2d::Pattern;
use debruijn_rings::ring_builder::{build_ring, trim_ring};
use debruijn_rings::stats::{table1, table1_csv, table1_text, table2, table2_csv, table2_text};
use debruijn_rings::verifier::verify;
use debruijn_rings::words::{debruijn_sequence, Alphabet};
use debruijn_rings::{Budget, Error, Result};

#[derive(Parser)]
#[command(name = "dbmap", version, about = "de Bruijn rings and almost perfect maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a de Bruijn sequence over k letters with window length n.
    Seq {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u32,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build an (m, n)_k de Bruijn ring, optionally trimmed.
    Ring {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Remove this many stair-pattern columns (at most m-1).
        #[arg(long, default_value_t = 0)]
        trim: usize,
        /// Re-verify the built ring and fail if it is not sub-perfect.
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the composed almost perfect map over alphabet k1*k2.
    Map {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        /// Stack the rings without coprimality trimming.
        #[arg(long)]
        no_trim: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the composition parameters as JSON.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Scan all cyclic windows of a map file and report (sub-)perfectness.
    Verify {
        file: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decode the absolute position of a window in a composed map.
    Decode {
        /// Map file the window was observed in.
        #[arg(long = "map")]
        map_path: PathBuf,
        /// Sidecar JSON written by `map --sidecar`.
        #[arg(long)]
        sidecar: PathBuf,
        /// Window as m lines of n symbols (or a DBMAP file); stdin when
        /// omitted.
        #[arg(long)]
        window: Option<PathBuf>,
    },
    /// Reproduce the counting tables with exact arithmetic.
    Stats {
        /// Row-aperiodic pattern ratios per (m, n, k).
        #[arg(long, conflicts_with = "table2")]
        table1: bool,
        /// Square-map sizes and coverage percentages per (k, n).
        #[arg(long)]
        table2: bool,
        #[arg(long, default_value_t = 2)]
        m_min: u64,
        #[arg(long, default_value_t = 6)]
        m_max: u64,
        #[arg(long, default_value_t = 2)]
        n_min: u64,
        #[arg(long, default_value_t = 6)]
        n_max: u64,
        #[arg(long, default_value_t = 2)]
        k_min: u64,
        #[arg(long, default_value_t = 5)]
        k_max: u64,
        #[arg(long)]
        csv: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidArgument(_) => ExitCode::from(2),
                Error::BudgetExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn budget() -> Result<Budget> {
    match std::env::var("DBMAP_BUDGET") {
        Ok(text) => {
            let limit = text.parse::<u64>().map_err(|_| {
                Error::InvalidArgument(format!("DBMAP_BUDGET must be an integer, got {text:?}"))
            })?;
            Ok(Budget::uniform(limit))
        }
        Err(_) => Ok(Budget::default()),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Seq { k, n, output } => {
            if k > 62 {
                return Err(Error::InvalidArgument(
                    "alphabet size exceeds the 62-symbol text ramp".into(),
                ));
            }
            let word = debruijn_sequence(k, n)?;
            let mut line: String = word
                .letters()
                .iter()
                .map(|&c| Alphabet::symbol_char(c).expect("k <= 62"))
                .collect();
            line.push('\n');
            emit(&line, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ring {
            m,
            n,
            k,
            trim,
            verify: check,
            output,
        } => {
            let budget = budget()?;
            let ring = build_ring(m, n, k, &budget)?;
            let ring = trim_ring(&ring, trim)?;
            if check {
                let report = verify(&ring, m, n, &budget)?;
                if !report.is_sub_perfect {
                    eprintln!("{}", report.to_text());
                    return Ok(ExitCode::from(1));
                }
            }
            emit(&ring.to_dbmap_string()?, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Map {
            m,
            n,
            k1,
            k2,
            no_trim,
            output,
            sidecar,
        } => {
            let spec = if no_trim {
                plan_composition_untrimmed(m, n, k1, k2)?
            } else {
                plan_composition(m, n, k1, k2)?
            };
            let product = build_almost_perfect(&spec, &budget()?)?;
            if let Some(path) = sidecar {
                std::fs::write(path, spec.to_json())?;
            }
            emit(&product.map.to_dbmap_string()?, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file, m, n, json } => {
            let map = CyclicMap::read_dbmap(&file)?;
            let report = verify(&map, m, n, &budget()?)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.is_sub_perfect {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Decode {
            map_path,
            sidecar,
            window,
        } => {
            let spec = CompositionSpec::from_json(&std::fs::read_to_string(&sidecar)?)?;
            let map = CyclicMap::read_dbmap(&map_path)?;
            let product = build_almost_perfect(&spec, &budget()?)?;
            if product.map != map {
                return Err(Error::Parse(
                    "map file does not match the sidecar parameters".into(),
                ));
            }
            let text = match window {
                Some(path) => std::fs::read_to_string(path)?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin().read_to_string(&mut buf)?;
                    buf
                }
            };
            let window = parse_window(&text, spec.m, spec.n, spec.product_alphabet())?;
            let idx = build_index(&product)?;
            let position = idx.decode(&window)?;
            println!("{} {}", position.row, position.col);
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats {
            table1: want_t1,
            table2: want_t2,
            m_min,
            m_max,
            n_min,
            n_max,
            k_min,
            k_max,
            csv,
        } => {
            if want_t1 == want_t2 {
                return Err(Error::InvalidArgument(
                    "pass exactly one of --table1 or --table2".into(),
                ));
            }
            let text = if want_t1 {
                let rows = table1((m_min, m_max), (n_min, n_max), (k_min, k_max));
                if csv {
                    table1_csv(&rows)
                } else {
                    table1_text(&rows)
                }
            } else {
                let rows = table2((k_min, k_max), (n_min, n_max))?;
                if csv {
                    table2_csv(&rows)
                } else {
                    table2_text(&rows)
                }
            };
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Accepts either a DBMAP file or bare rows of symbol characters.
fn parse_window(text: &str, m: usize, n: usize, k: usize) -> Result<Pattern> {
    if text.starts_with("DBMAP") {
        let map = CyclicMap::from_dbmap_str(text)?;
        if (map.height(), map.width()) != (m, n) {
            return Err(Error::InvalidArgument(format!(
                "window must be {m} x {n}, file is {} x {}",
                map.height(),
                map.width()
            )));
        }
        return Pattern::new(m, n, map.cells().to_vec(), Alphabet::new(k)?);
    }
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if rows.len() != m {
        return Err(Error::InvalidArgument(format!(
            "window must have {m} rows, got {}",
            rows.len()
        )));
    }
    let mut cells = Vec::with_capacity(m * n);
    for row in rows {
        let row = row.trim();
        if row.chars().count() != n {
            return Err(Error::InvalidArgument(format!(
                "window rows must have {n} symbols, got {row:?}"
            )));
        }
        for ch in row.chars() {
            cells.push(
                Alphabet::symbol_value(ch)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad symbol {ch:?}")))?,
            );
        }
    }
    Pattern::new(m, n, cells, Alphabet::new(k)?)
}
