//! `rgw`: exact genus-0 real and complex Gromov-Witten invariants of
//! projective spaces, with identity verification suites, a gluing-sign
//! check, and a persistent value cache.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rgw_core::gluing::{sign_grid, SignCheckSettings};
use rgw_core::{
    complex_invariant, count_sign, real_bracket, run_verification_suite, valid_odd_tuples,
    ComplexKey, InsertionMultiset, Involution, MemoStore, RealKey, SuiteRanges,
};

use output::{
    render_sign_grid_json, render_sign_grid_text, render_verification_json,
    render_verification_text, Format, InvariantRecord,
};

#[derive(Parser)]
#[command(
    name = "rgw",
    version,
    about = "exact curve counts in projective spaces"
)]
struct Cli {
    /// Cache file; loaded before and saved after computing commands.
    #[arg(long, global = true, env = "RGW_CACHE", value_name = "PATH")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complex genus-0 invariant of P^m.
    Complex {
        /// Target projective space dimension m (>= 2).
        #[arg(short)]
        m: u32,
        /// Degree.
        #[arg(short)]
        d: u32,
        /// Comma-separated constraint codimensions, e.g. 2,2,3.
        #[arg(short = 'c', value_delimiter = ',', allow_hyphen_values = true)]
        insertions: Vec<i64>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Real genus-0 invariant of P^{2n-1}: bracket and signed count.
    Real {
        /// Half-dimension parameter n (target is P^{2n-1}).
        #[arg(short)]
        n: u32,
        /// Degree (>= 1).
        #[arg(short)]
        d: u32,
        /// Involution: tau (fixes RP^{2n-1}) or eta (fixed-point free).
        #[arg(long = "phi", default_value = "tau")]
        involution: String,
        #[arg(short = 'c', value_delimiter = ',', allow_hyphen_values = true)]
        insertions: Vec<i64>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// All nonvanishing real invariants up to a degree bound.
    Table {
        #[arg(short)]
        n: u32,
        /// Largest degree to enumerate (odd degrees only contribute).
        #[arg(long)]
        d_max: u32,
        /// Cap on the number of insertions per tuple.
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        #[arg(long = "phi", default_value = "tau")]
        involution: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Run the exact identity suites (exchange, divisor, pivots, signs).
    Verify {
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 5)]
        d_max: u32,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        #[arg(long, default_value_t = 7)]
        c_max: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Machine-readable report.
        #[arg(long)]
        json: bool,
    },
    /// Check the gluing orientation sign over an (n, d1, d2) grid.
    Signcheck {
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        d1_max: usize,
        #[arg(long, default_value_t = 3)]
        d2_max: usize,
        /// Accepted samples required per grid cell.
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative finite-difference step.
        #[arg(long, default_value_t = 1e-6)]
        step: f64,
        /// Determinant rejection floor relative to the row-norm product.
        #[arg(long, default_value_t = 1e-8)]
        det_floor: f64,
        #[arg(long)]
        json: bool,
    },
    /// Cache maintenance.
    Cache {
        #[command(subcommand)]
        op: CacheOp,
    },
}

#[derive(Subcommand)]
enum CacheOp {
    /// Write the configured cache to a file, or stdout when no output given.
    Export(ExportArgs),
    /// Validate a cache file and merge it into the configured cache.
    Import { file: PathBuf },
}

#[derive(Args)]
struct ExportArgs {
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn load_store(path: Option<&Path>) -> Result<MemoStore, String> {
    match path {
        Some(path) if path.exists() => {
            let text =
                fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
            MemoStore::import_string(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
        _ => Ok(MemoStore::new()),
    }
}

fn save_store(path: Option<&Path>, store: &MemoStore) -> Result<(), String> {
    if let Some(path) = path {
        fs::write(path, store.export_string())
            .map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    Ok(())
}

fn parse_insertions(raw: &[i64]) -> Result<InsertionMultiset, String> {
    InsertionMultiset::canonicalize(raw).map_err(|e| e.to_string())
}

fn real_record(key: &RealKey, store: &mut MemoStore) -> InvariantRecord {
    let bracket = real_bracket(key, store);
    let count = if key.d.is_multiple_of(2) {
        BigInt::from(0)
    } else {
        BigInt::from(count_sign(key.n, key.d)) * &bracket
    };
    InvariantRecord {
        parameter: key.n,
        degree: key.d,
        involution: Some(key.involution),
        insertions: key.insertions.clone(),
        bracket,
        count: Some(count),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let cache_path = cli.cache.as_deref();
    match cli.command {
        Command::Complex {
            m,
            d,
            insertions,
            format,
        } => {
            let insertions = parse_insertions(&insertions)?;
            let key = ComplexKey::new(m, d, insertions).map_err(|e| e.to_string())?;
            let mut store = load_store(cache_path)?;
            let value = complex_invariant(&key, &mut store);
            let record = InvariantRecord {
                parameter: m,
                degree: d,
                involution: None,
                insertions: key.insertions.clone(),
                bracket: value,
                count: None,
            };
            match format {
                Format::Human => println!("{}", record.bracket),
                Format::Csv => println!("{}", record.csv_line()),
                Format::Jsonl => println!("{}", record.json_line()),
            }
            save_store(cache_path, &store)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Real {
            n,
            d,
            involution,
            insertions,
            format,
        } => {
            let involution = Involution::parse(&involution).map_err(|e| e.to_string())?;
            let insertions = parse_insertions(&insertions)?;
            let key = RealKey::new(n, d, involution, insertions).map_err(|e| e.to_string())?;
            let mut store = load_store(cache_path)?;
            let record = real_record(&key, &mut store);
            match format {
                Format::Human => {
                    println!("bracket = {}", record.bracket);
                    println!("N = {}", record.count.as_ref().unwrap());
                }
                Format::Csv => println!("{}", record.csv_line()),
                Format::Jsonl => println!("{}", record.json_line()),
            }
            save_store(cache_path, &store)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            n,
            d_max,
            k_max,
            involution,
            format,
        } => {
            let involution = Involution::parse(&involution).map_err(|e| e.to_string())?;
            let mut store = load_store(cache_path)?;
            if format == Format::Human {
                println!(" d  k  insertions                  bracket            N");
            }
            let mut degree = 1;
            while degree <= d_max {
                for k in 1..=k_max {
                    for tuple in valid_odd_tuples(n, degree, k) {
                        let key = RealKey::new(n, degree, involution, tuple)
                            .map_err(|e| e.to_string())?;
                        let record = real_record(&key, &mut store);
                        match format {
                            Format::Human => println!("{}", record.table_row()),
                            Format::Csv => println!("{}", record.csv_line()),
                            Format::Jsonl => println!("{}", record.json_line()),
                        }
                    }
                }
                degree += 2;
            }
            save_store(cache_path, &store)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            n_max,
            d_max,
            k_max,
            c_max,
            samples,
            seed,
            json,
        } => {
            let ranges = SuiteRanges {
                n_max,
                d_max,
                k_max,
                c_max,
            };
            let mut store = load_store(cache_path)?;
            let reports = run_verification_suite(&ranges, samples, seed, &mut store);
            if json {
                println!("{}", render_verification_json(&reports, seed));
            } else {
                print!("{}", render_verification_text(&reports));
            }
            save_store(cache_path, &store)?;
            Ok(if reports.iter().all(|r| r.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Signcheck {
            n_max,
            d1_max,
            d2_max,
            samples,
            seed,
            step,
            det_floor,
            json,
        } => {
            let settings = SignCheckSettings { step, det_floor };
            let grid = sign_grid(n_max, d1_max, d2_max, samples, seed, settings)
                .map_err(|e| e.to_string())?;
            if json {
                println!("{}", render_sign_grid_json(&grid, seed));
            } else {
                print!("{}", render_sign_grid_text(&grid));
            }
            Ok(if grid.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Cache { op } => match op {
            CacheOp::Export(args) => {
                let store = load_store(cache_path)?;
                let text = store.export_string();
                match args.output {
                    Some(path) => fs::write(&path, text)
                        .map_err(|e| format!("writing {}: {e}", path.display()))?,
                    None => print!("{text}"),
                }
                Ok(ExitCode::SUCCESS)
            }
            CacheOp::Import { file } => {
                let text = fs::read_to_string(&file)
                    .map_err(|e| format!("reading {}: {e}", file.display()))?;
                let incoming = MemoStore::import_string(&text)
                    .map_err(|e| format!("{}: {e}", file.display()))?;
                let path =
                    cache_path.ok_or("no cache configured: pass --cache or set RGW_CACHE")?;
                let mut store = load_store(Some(path))?;
                store.merge(incoming).map_err(|e| e.to_string())?;
                save_store(Some(path), &store)?;
                println!(
                    "cache now holds {} complex and {} real entries",
                    store.complex_len(),
                    store.real_len()
                );
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}
