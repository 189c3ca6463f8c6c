//! `kalmanson`: checks, decompositions and best-fit PC-trees for
//! dissimilarity maps read from square matrix files.
//!
//! Exit status is 0 on success, 1 when the input fails a check (the witness
//! is printed) and 2 on usage errors.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kalmanson::rational::format_rational;
use kalmanson::{
    best_fit_pc_tree, parse_newick, verify_diagram, CircularOrdering, DiagramCheck, DissimilarityMap, Error,
    QuartetWitness, Rooting, Tree, RING_SEARCH_LIMIT,
};

#[derive(Parser)]
#[command(name = "kalmanson", version, about = "Kalmanson maps, split systems and best-fit PC-trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Matrix file; standard input when absent.
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Circular ordering of the taxa, e.g. `1,2,3,4`. Searched for when
    /// absent, up to 10 taxa.
    #[arg(long, global = true, value_name = "a,b,c,...")]
    ordering: Option<String>,

    /// Base taxon r; defaults to the last taxon of the ordering.
    #[arg(long, global = true, value_name = "LABEL")]
    base: Option<String>,

    /// Write the main output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Also write a Graphviz rendering of the tree (pctree only).
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Four-point and Kalmanson conditions.
    Check,
    /// Gromov product at the base taxon.
    Gromov,
    /// Weighted circular split system of the map.
    Decompose,
    /// Indexed pyramid of maximally linked sets.
    Pyramid,
    /// Best-fit PC-tree.
    Pctree,
    /// Every identity of the commuting diagram.
    Verify,
    /// Graphviz rendering of the best-fit tree, or of a tree file.
    ExportDot,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Format {
    Text,
    Splits,
    Newick,
}

/// A problem with the invocation rather than with the data.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(message: impl Into<String>) -> anyhow::Error {
    Usage(message.into()).into()
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() || e.downcast_ref::<io::Error>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(
            Error::Parse { .. }
            | Error::Entry { .. }
            | Error::Asymmetric { .. }
            | Error::InvalidLabel(_)
            | Error::DuplicateLabel(_)
            | Error::TooManyTaxa(_)
            | Error::TooFewTaxa { .. }
            | Error::UnknownTaxon(_)
            | Error::InvalidOrdering(_)
            | Error::TaxaMismatch
            | Error::SearchRefused { .. },
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("reading standard input")?;
            Ok(text)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn format_or(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(usage(format!("--format {f:?} is not available here").to_lowercase()))
    }
}

fn witness_text(d: &DissimilarityMap, w: &QuartetWitness) -> String {
    let labels: Vec<&str> = w.taxa.iter().map(|&i| d.taxa().label(i)).collect();
    let sums: Vec<String> = w.sums.iter().map(format_rational).collect();
    format!("quartet {} with pair sums {}", labels.join(","), sums.join(" "))
}

fn given_ring(cli: &Cli, d: &DissimilarityMap) -> Result<Option<CircularOrdering>> {
    cli.ordering
        .as_deref()
        .map(|text| CircularOrdering::parse(d.taxa(), text))
        .transpose()
        .map_err(Into::into)
}

/// The ring to work along: the given one, or a searched one.
fn ring(cli: &Cli, d: &DissimilarityMap) -> Result<CircularOrdering> {
    match given_ring(cli, d)? {
        Some(r) => {
            d.require_kalmanson(&r)?;
            Ok(r)
        }
        None => Ok(d
            .find_kalmanson_ordering(RING_SEARCH_LIMIT)?
            .ok_or(Error::NoKalmansonOrdering)?),
    }
}

fn base(cli: &Cli, d: &DissimilarityMap, ring: Option<&CircularOrdering>) -> Result<usize> {
    match &cli.base {
        Some(label) => Ok(d.taxa().require(label)?),
        None => Ok(ring.and_then(CircularOrdering::last).unwrap_or(d.len() - 1)),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    if cli.dot.is_some() && !matches!(cli.command, Command::Pctree) {
        return Err(usage("--dot is only accepted by pctree"));
    }
    let text = read_input(cli.input.as_deref())?;
    if let Command::ExportDot = cli.command {
        if text.trim_end().ends_with(';') {
            let dot = match parse_newick(&text, None)? {
                Tree::Pq(t) => t.to_dot(),
                Tree::Pc(t) => t.to_dot(&[]),
            };
            emit(cli.out.as_deref(), &dot)?;
            return Ok(true);
        }
    }
    let d = DissimilarityMap::parse(&text)?;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Check => check(cli, &d),
        Command::Gromov => {
            format_or(cli, Format::Text, &[Format::Text])?;
            let ring = given_ring(cli, &d)?;
            let rooting = Rooting::new(d.taxa(), base(cli, &d, ring.as_ref())?)?;
            emit(out, &d.gromov_product(&rooting)?.to_string())?;
            Ok(true)
        }
        Command::Decompose => {
            format_or(cli, Format::Splits, &[Format::Text, Format::Splits])?;
            let ring = ring(cli, &d)?;
            emit(out, &d.kalmanson_decompose(&ring)?.to_string())?;
            Ok(true)
        }
        Command::Pyramid => {
            let f = format_or(cli, Format::Text, &[Format::Text, Format::Splits, Format::Newick])?;
            let ring = ring(cli, &d)?;
            let r = base(cli, &d, Some(&ring))?;
            let rooting = Rooting::new(d.taxa(), r)?;
            let pyramid = d.gromov_product(&rooting)?.maximally_linked_sets(&rooting.cut(&ring)?)?;
            let text = match f {
                Format::Text => pyramid.to_string(),
                Format::Splits => pyramid.to_weighted_splits(&rooting)?.to_string(),
                Format::Newick => {
                    let report = best_fit_pc_tree(&d, Some(r), Some(&ring))?;
                    format!("{}\n", report.tree.root_at(r)?)
                }
            };
            emit(out, &text)?;
            Ok(true)
        }
        Command::Pctree => {
            let f = format_or(cli, Format::Newick, &[Format::Text, Format::Splits, Format::Newick])?;
            let ring = ring(cli, &d)?;
            let r = base(cli, &d, Some(&ring))?;
            let report = best_fit_pc_tree(&d, Some(r), Some(&ring))?;
            let text = match f {
                Format::Text => report.to_string(),
                Format::Splits => report.tree.beta().to_string(),
                Format::Newick => format!("{}\n", report.tree),
            };
            emit(out, &text)?;
            if let Some(path) = &cli.dot {
                fs::write(path, report.to_dot()).with_context(|| format!("writing {}", path.display()))?;
            }
            report_failures(&report.checks);
            Ok(report.all_passed())
        }
        Command::Verify => {
            format_or(cli, Format::Text, &[Format::Text])?;
            let ring = ring(cli, &d)?;
            let r = base(cli, &d, Some(&ring))?;
            let checks = verify_diagram(&d, Some(r), Some(&ring))?;
            let mut text = String::new();
            for c in &checks {
                match &c.witness {
                    None => text.push_str(&format!("{}: pass\n", c.name)),
                    Some(w) => text.push_str(&format!("{}: fail: {w}\n", c.name)),
                }
            }
            emit(out, &text)?;
            Ok(checks.iter().all(|c| c.passed))
        }
        Command::ExportDot => {
            format_or(cli, Format::Text, &[Format::Text])?;
            let ring = ring(cli, &d)?;
            let r = base(cli, &d, Some(&ring))?;
            emit(out, &best_fit_pc_tree(&d, Some(r), Some(&ring))?.to_dot())?;
            Ok(true)
        }
    }
}

fn report_failures(checks: &[DiagramCheck]) {
    for c in checks.iter().filter(|c| !c.passed) {
        eprintln!("check failed: {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
    }
}

fn check(cli: &Cli, d: &DissimilarityMap) -> Result<bool> {
    format_or(cli, Format::Text, &[Format::Text])?;
    let mut text = match d.four_point_check() {
        Ok(()) => "four-point: yes\n".to_string(),
        Err(w) => format!("four-point: no ({})\n", witness_text(d, &w)),
    };
    let ok = match given_ring(cli, d)? {
        Some(ring) => match d.kalmanson_check(&ring) {
            Ok(()) => {
                text.push_str(&format!("kalmanson: yes (ring {})\n", ring.format(d.taxa())));
                true
            }
            Err(w) => {
                text.push_str(&format!("kalmanson: no (ring {}: {})\n", ring.format(d.taxa()), witness_text(d, &w)));
                false
            }
        },
        None => match d.find_kalmanson_ordering(RING_SEARCH_LIMIT)? {
            Some(ring) => {
                text.push_str(&format!("kalmanson: yes (ring {})\n", ring.format(d.taxa())));
                true
            }
            None => {
                text.push_str("kalmanson: no (no circular ordering works)\n");
                false
            }
        },
    };
    emit(cli.out.as_deref(), &text)?;
    Ok(ok)
}
