//! Command-line front end: list rings and maps, run searches, compute
//! enumerators and distances, census two-sided multiples, test dual
//! cyclicity, and emit count/distance tables.

use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::code::{CodeSpec, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::maps::{
    derivation_by_name, endomorphism_by_name, enumerate_derivations, enumerate_endomorphisms,
    hermitian_involutions, inner_witnesses, validate_sigma, RingMap,
};
use crate::ring::{resolve_ring, Ring, BUILTIN_NAMES};
use crate::search::{
    best_distance_cell, count_table_row, dual_is_cyclic, f_census, find_dual_containing,
    format_distance_cell, SearchEngine,
};
use crate::skew::{parse_poly, SkewContext};

/// Exit status: 0 success, 1 error, 2 completed search with no solution.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "skewcode",
    about = "Cyclic module (theta, delta)-codes over finite Frobenius rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker thread count (0 = automatic). Output is independent of it.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InnerProduct {
    Euclidean,
    Hermitian,
}

#[derive(Debug, Args)]
pub struct RingOpts {
    /// Builtin ring name (F2, F4, F2v, F2u, Z4, GR42) or a name defined
    /// in --ring-file.
    #[arg(long)]
    pub ring: String,
    /// JSON file holding a ring specification (structure constants).
    #[arg(long)]
    pub ring_file: Option<PathBuf>,
}

impl RingOpts {
    fn resolve(&self) -> Result<Arc<Ring>> {
        Ok(Arc::new(resolve_ring(&self.ring, self.ring_file.as_deref())?))
    }
}

#[derive(Debug, Args)]
pub struct ContextOpts {
    #[command(flatten)]
    pub ring: RingOpts,
    /// Endomorphism label, e.g. theta2.
    #[arg(long, default_value = "theta1")]
    pub theta: String,
    /// Derivation label, e.g. delta3 (delta1 is the zero derivation).
    #[arg(long, default_value = "delta1")]
    pub delta: String,
}

impl ContextOpts {
    fn resolve(&self) -> Result<Arc<SkewContext>> {
        let ring = self.ring.resolve()?;
        let theta = endomorphism_by_name(&ring, &self.theta)?;
        let delta = derivation_by_name(&ring, &theta, &self.delta)?;
        SkewContext::new(ring, theta, delta)
    }
}

#[derive(Debug, Args)]
pub struct SigmaOpts {
    /// Inner product for duality.
    #[arg(long, value_enum, default_value_t = InnerProduct::Euclidean)]
    pub ip: InnerProduct,
    /// Explicit sigma (an order-2 automorphism label) for the Hermitian
    /// inner product; defaults to the first involution of the ring.
    #[arg(long)]
    pub sigma: Option<String>,
}

impl SigmaOpts {
    fn resolve(&self, ring: &Ring) -> Result<Option<RingMap>> {
        match self.ip {
            InnerProduct::Euclidean => Ok(None),
            InnerProduct::Hermitian => {
                let sigma = match &self.sigma {
                    Some(label) => endomorphism_by_name(ring, label)?,
                    None => hermitian_involutions(ring)
                        .into_iter()
                        .find(|m| m.order == Some(2))
                        .ok_or(Error::BadSigma)?,
                };
                validate_sigma(ring, &sigma)?;
                Ok(Some(sigma))
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct CommonOpts {
    #[arg(long, value_enum, default_value_t = Emit::Text)]
    pub emit: Emit,
    /// Write the artifact to this path instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Enumeration budget (number of assignments/codewords); the
    /// SKEWCODE_BUDGET environment variable overrides the default.
    #[arg(long)]
    pub budget: Option<u128>,
}

impl CommonOpts {
    fn budget(&self) -> u128 {
        self.budget
            .or_else(|| {
                std::env::var("SKEWCODE_BUDGET")
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or(DEFAULT_BUDGET)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List builtin rings.
    Rings,
    /// List the endomorphisms and derivations of a ring.
    ListMaps {
        #[command(flatten)]
        ring: RingOpts,
        /// Print generator images alongside labels.
        #[arg(long)]
        show_images: bool,
    },
    /// Find all dual-containing codes for (ring, theta, delta, sigma, n, k).
    Search {
        #[command(flatten)]
        ctx: ContextOpts,
        #[command(flatten)]
        sigma: SigmaOpts,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// groebner (prime coordinate field) or exhaustive (any ring);
        /// defaults to whichever suits the ring.
        #[arg(long)]
        engine: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// List all monic f with g as a two-sided divisor.
    Census {
        #[command(flatten)]
        ctx: ContextOpts,
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Test whether the dual of the code generated by g is again a
    /// cyclic module code.
    DualCyclic {
        #[command(flatten)]
        ctx: ContextOpts,
        #[command(flatten)]
        sigma: SigmaOpts,
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Weight enumerator and minimum distance of the code generated by g.
    Enumerate {
        #[command(flatten)]
        ctx: ContextOpts,
        #[command(flatten)]
        sigma: SigmaOpts,
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: usize,
        /// Weight function: hamming, lee, euclidean, or bachoc
        /// (availability depends on the ring).
        #[arg(long, default_value = "hamming")]
        weight: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Aggregate tables over all (theta, delta) contexts of a ring.
    Table {
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        sigma: SigmaOpts,
        /// counts (dual-containing / cyclic-dual per context) or
        /// distances (best distances per weight).
        #[arg(long)]
        kind: String,
        /// Cells as "n,k" pairs separated by ';', e.g. "4,3;6,4".
        #[arg(long)]
        cells: String,
        /// Comma-separated weight list for kind=distances.
        #[arg(long, default_value = "hamming")]
        weights: String,
        #[arg(long)]
        engine: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn engine_for(ring: &Ring, requested: Option<&str>) -> Result<SearchEngine> {
    match requested {
        Some(text) => SearchEngine::from_str(text),
        None => Ok(crate::search::auto_engine(ring)),
    }
}

fn parse_cells(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let mut it = pair.split(',').map(|x| x.trim().parse::<usize>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(n)), Some(Ok(k)), None) => Ok((n, k)),
                _ => Err(Error::Parse(format!("bad cell {pair:?}; expected n,k"))),
            }
        })
        .collect()
}

fn deliver(common: &CommonOpts, artifact: String) -> Result<()> {
    match &common.output {
        Some(path) => {
            std::fs::write(path, artifact)?;
        }
        None => println!("{artifact}"),
    }
    Ok(())
}

fn format_enumerator(counts: &[u64]) -> String {
    let mut parts = Vec::new();
    for (w, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        parts.push(match (w, c) {
            (0, c) => c.to_string(),
            (1, 1) => "w".to_string(),
            (1, c) => format!("{c}w"),
            (w, 1) => format!("w^{w}"),
            (w, c) => format!("{c}w^{w}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Run a parsed command; the integer is the process exit status.
pub fn run(cli: Cli) -> Result<i32> {
    if cli.jobs > 0 {
        // Ignore failure: the global pool may already be initialized.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    match cli.command {
        Command::Rings => {
            for name in BUILTIN_NAMES {
                let ring = crate::ring::builtin_ring(name)?;
                println!(
                    "{name}: order {}, characteristic {}, rank {}",
                    ring.order(),
                    ring.characteristic(),
                    ring.rank()
                );
            }
            Ok(EXIT_OK)
        }
        Command::ListMaps { ring, show_images } => {
            let ring = ring.resolve()?;
            for theta in enumerate_endomorphisms(&ring) {
                let kind = if theta.is_automorphism {
                    "automorphism"
                } else {
                    "endomorphism"
                };
                if show_images {
                    println!("{} ({kind}): {}", theta.label, theta.describe(&ring));
                } else {
                    println!("{} ({kind})", theta.label);
                }
                for delta in enumerate_derivations(&ring, &theta)? {
                    let inner = if inner_witnesses(&ring, &theta, &delta).is_empty() {
                        ""
                    } else {
                        " [inner]"
                    };
                    if show_images {
                        println!("  {}{inner}: {}", delta.label, delta.describe(&ring));
                    } else {
                        println!("  {}{inner}", delta.label);
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Search {
            ctx,
            sigma,
            n,
            k,
            engine,
            common,
        } => {
            let ctx = ctx.resolve()?;
            let sigma = sigma.resolve(&ctx.ring)?;
            let engine = engine_for(&ctx.ring, engine.as_deref())?;
            let result = find_dual_containing(&ctx, sigma.as_ref(), n, k, engine, common.budget())?;
            let artifact = match common.emit {
                Emit::Json => {
                    serde_json::to_string_pretty(&result.records())?
                }
                Emit::Csv => {
                    let mut lines = vec!["g,witnesses".to_string()];
                    for c in &result.codes {
                        lines.push(format!("\"{}\",{}", c.g.format(), c.witnesses.len()));
                    }
                    lines.join("\n")
                }
                Emit::Text => {
                    let mut lines = vec![format!(
                        "{} [{n},{k}] {}: {} dual-containing code(s)",
                        ctx.label(),
                        engine.as_str(),
                        result.codes.len()
                    )];
                    for c in &result.codes {
                        lines.push(format!(
                            "  g = {} ({} witness(es))",
                            c.g.format(),
                            c.witnesses.len()
                        ));
                    }
                    lines.join("\n")
                }
            };
            deliver(&common, artifact)?;
            Ok(if result.codes.is_empty() {
                EXIT_NO_SOLUTION
            } else {
                EXIT_OK
            })
        }
        Command::Census { ctx, g, n, common } => {
            let ctx = ctx.resolve()?;
            let g = parse_poly(&ctx, &g)?;
            let census = f_census(&g, n)?;
            let artifact = match common.emit {
                Emit::Json => {
                    let rows: Vec<serde_json::Value> = census
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "f": r.f.format(),
                                "h": r.h.format(),
                                "hbar_count": r.hbars.len(),
                                "hbars": r.hbars.iter().map(|p| p.format()).collect::<Vec<_>>(),
                                "central": r.central,
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&rows)?
                }
                Emit::Csv => {
                    let mut lines = vec!["f,h,hbar_count,central".to_string()];
                    for r in &census {
                        lines.push(format!(
                            "\"{}\",\"{}\",{},{}",
                            r.f.format(),
                            r.h.format(),
                            r.hbars.len(),
                            r.central
                        ));
                    }
                    lines.join("\n")
                }
                Emit::Text => {
                    let mut lines = vec![format!(
                        "{} two-sided multiples of {} at degree {n}",
                        census.len(),
                        g.format()
                    )];
                    for r in &census {
                        lines.push(format!(
                            "  f = {} | h = {} | {} hbar(s) | central: {}",
                            r.f.format(),
                            r.h.format(),
                            r.hbars.len(),
                            r.central
                        ));
                    }
                    lines.join("\n")
                }
            };
            deliver(&common, artifact)?;
            Ok(if census.is_empty() {
                EXIT_NO_SOLUTION
            } else {
                EXIT_OK
            })
        }
        Command::DualCyclic {
            ctx,
            sigma,
            g,
            n,
            common,
        } => {
            let ctx = ctx.resolve()?;
            let sigma = sigma.resolve(&ctx.ring)?;
            let g = parse_poly(&ctx, &g)?;
            let code = CodeSpec::from_generator(&ctx, n, g, sigma.clone())?;
            let result = dual_is_cyclic(&code, sigma.as_ref(), common.budget())?;
            let artifact = match common.emit {
                Emit::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "g": code.g.format(),
                    "dual_generator": result.as_ref().map(|p| p.format()),
                }))
                ?,
                _ => match &result {
                    Some(p) => format!("dual generator: {}", p.format()),
                    None => "dual is not a cyclic module code".to_string(),
                },
            };
            deliver(&common, artifact)?;
            Ok(if result.is_some() {
                EXIT_OK
            } else {
                EXIT_NO_SOLUTION
            })
        }
        Command::Enumerate {
            ctx,
            sigma,
            g,
            n,
            weight,
            common,
        } => {
            let ctx = ctx.resolve()?;
            let sigma = sigma.resolve(&ctx.ring)?;
            let g = parse_poly(&ctx, &g)?;
            let code = CodeSpec::from_generator(&ctx, n, g, sigma)?;
            let counts = code.weight_enumerator(&weight, common.budget())?;
            let dist = code.min_distance(&weight, common.budget())?;
            let artifact = match common.emit {
                Emit::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "g": code.g.format(),
                    "weight": weight,
                    "enumerator": counts,
                    "min_distance": dist,
                }))
                ?,
                _ => format!(
                    "g = {} | {weight} enumerator: {} | min distance {dist}",
                    code.g.format(),
                    format_enumerator(&counts)
                ),
            };
            deliver(&common, artifact)?;
            Ok(EXIT_OK)
        }
        Command::Table {
            ring,
            sigma,
            kind,
            cells,
            weights,
            engine,
            common,
        } => {
            let ring = ring.resolve()?;
            let sigma = sigma.resolve(&ring)?;
            let engine = engine_for(&ring, engine.as_deref())?;
            let cells = parse_cells(&cells)?;
            let sep = if common.emit == Emit::Csv { "," } else { " | " };
            let mut lines = Vec::new();
            match kind.as_str() {
                "counts" => {
                    for (n, k) in cells {
                        let row =
                            count_table_row(&ring, sigma.as_ref(), n, k, engine, common.budget())?;
                        let header: Vec<String> = row
                            .iter()
                            .map(|c| format!("({},{})", c.theta, c.delta))
                            .collect();
                        if lines.is_empty() {
                            lines.push(format!("[n,k]{sep}{}", header.join(sep)));
                        }
                        let counts: Vec<String> = row
                            .iter()
                            .map(|c| format!("{}/{}", c.dual_containing, c.cyclic_dual))
                            .collect();
                        lines.push(format!("[{n},{k}]{sep}{}", counts.join(sep)));
                    }
                }
                "distances" => {
                    let weights: Vec<&str> = weights.split(',').map(|w| w.trim()).collect();
                    lines.push(format!("[n,k]{sep}{}", weights.join(",")));
                    for (n, k) in cells {
                        let cell = best_distance_cell(
                            &ring,
                            sigma.as_ref(),
                            n,
                            k,
                            &weights,
                            engine,
                            common.budget(),
                        )?;
                        lines.push(format!("[{n},{k}]{sep}{}", format_distance_cell(&cell)));
                    }
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unknown table kind {other:?}; expected counts or distances"
                    )))
                }
            }
            deliver(&common, lines.join("\n"))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parse arguments and run; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage/help text and status.
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).unwrap()
    }

    #[test]
    fn search_command_parses() {
        let cli = parse(&[
            "skewcode", "search", "--ring", "F2v", "--theta", "theta2", "--delta", "delta2",
            "--n", "4", "--k", "3", "--ip", "euclidean", "--engine", "groebner", "--emit", "json",
        ]);
        assert!(matches!(cli.command, Command::Search { .. }));
        assert_eq!(run(cli).unwrap(), EXIT_OK);
    }

    #[test]
    fn empty_search_exits_with_status_two() {
        let cli = parse(&[
            "skewcode", "search", "--ring", "F2v", "--theta", "theta1", "--delta", "delta1",
            "--n", "5", "--k", "3",
        ]);
        assert_eq!(run(cli).unwrap(), EXIT_NO_SOLUTION);
    }

    #[test]
    fn bad_cells_are_rejected() {
        assert!(parse_cells("4,3;6,4").is_ok());
        assert!(parse_cells("4;3").is_err());
        assert!(parse_cells("a,b").is_err());
    }

    #[test]
    fn unknown_engine_is_an_error() {
        let ring = crate::ring::builtin_ring("F2").unwrap();
        assert!(engine_for(&ring, Some("magic")).is_err());
        assert_eq!(engine_for(&ring, None).unwrap(), SearchEngine::Groebner);
    }

    #[test]
    fn dual_cyclic_command_round_trip() {
        let cli = parse(&[
            "skewcode", "dual-cyclic", "--ring", "F2v", "--theta", "theta2", "--delta", "delta2",
            "--g", "X+1", "--n", "4",
        ]);
        assert_eq!(run(cli).unwrap(), EXIT_OK);
        let cli = parse(&[
            "skewcode", "dual-cyclic", "--ring", "F2v", "--theta", "theta2", "--delta", "delta2",
            "--g", "X+v", "--n", "4",
        ]);
        assert_eq!(run(cli).unwrap(), EXIT_NO_SOLUTION);
    }

    #[test]
    fn enumerator_formatting() {
        assert_eq!(format_enumerator(&[1, 0, 6, 0, 9]), "1 + 6w^2 + 9w^4");
        assert_eq!(format_enumerator(&[1, 1]), "1 + w");
        assert_eq!(format_enumerator(&[0]), "0");
    }

    #[test]
    fn json_search_output_round_trips() {
        let dir = std::env::temp_dir().join("skewcode-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("search.json");
        let cli = parse(&[
            "skewcode", "search", "--ring", "F2v", "--theta", "theta2", "--delta", "delta2",
            "--n", "4", "--k", "3", "--emit", "json", "--output", path.to_str().unwrap(),
        ]);
        assert_eq!(run(cli).unwrap(), EXIT_OK);
        let text = std::fs::read_to_string(&path).unwrap();
        let records: Vec<crate::code::CodeRecord> = serde_json::from_str(&text).unwrap();
        assert_eq!(records.len(), 3);
        for rec in &records {
            let code = CodeSpec::from_record(rec).unwrap();
            assert!(code.is_dual_containing(None).unwrap());
        }
    }
}
