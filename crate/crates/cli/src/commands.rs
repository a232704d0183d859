//! Command-line surface. Every command writes its report to the given
//! writer and returns the process exit code.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use powcov_core::io::save_cayley_file;
use powcov_core::{build_group, classify_small, Family, FiniteGroup, Limits};

use crate::analysis::{solve_family, witness_summary, Value};
use crate::cache::{lattice_for, LatticeCache};
use crate::catalog::resolve_catalog;
use crate::descriptor::parse_descriptor;
use crate::error::{CliError, Result};
use crate::sweep::{markdown_summary, run_sweep, violations, CsvSink, SweepOptions};
use crate::verify::{run_suite, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
/// Infeasible single query, failed theorem check or conjecture counterexample.
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "powcov",
    version,
    about = "Covering numbers of finite p-groups by restricted subgroup families"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Lattice cache directory (default: $POWCOV_CACHE_DIR or the user cache dir).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Do not read or write the lattice cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Covering number of one group for one subgroup family.
    Sigma {
        descriptor: String,
        /// all, abelian, powerful or pe.
        family: Family,
    },
    /// Subgroup lattice statistics.
    Lattice {
        descriptor: String,
        /// List every subgroup with its flags.
        #[arg(long)]
        list: bool,
    },
    /// Write a group's Cayley table to a file.
    Construct {
        descriptor: String,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[arg(long, value_name = "N")]
        max_n: Option<u32>,
        #[arg(long, value_name = "M")]
        max_order: Option<usize>,
        /// Catalog file, or `builtin`.
        #[arg(long, value_name = "PATH")]
        catalog: Option<PathBuf>,
    },
    /// Covering numbers of a whole catalog as CSV plus a Markdown summary.
    Sweep {
        /// Catalog file, or `builtin`.
        #[arg(long, value_name = "PATH")]
        catalog: Option<PathBuf>,
        /// Comma-separated families.
        #[arg(
            long,
            value_name = "LIST",
            value_delimiter = ',',
            default_value = "all,abelian,powerful,pe"
        )]
        families: Vec<Family>,
        /// CSV output; the summary goes next to it with extension `.md`.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Record per-entry wall-clock time (output is then not reproducible).
        #[arg(long)]
        timing: bool,
        /// Skip the search for maximal subgroups with larger sigma_P.
        #[arg(long)]
        no_subgroup_search: bool,
    },
}

impl GlobalArgs {
    fn cache(&self) -> Option<LatticeCache> {
        if self.no_cache {
            None
        } else {
            Some(
                self.cache_dir
                    .clone()
                    .map_or_else(LatticeCache::from_env, LatticeCache::new),
            )
        }
    }
}

/// Runs a parsed command line; errors become exit code 2 with a message on stderr.
pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let limits = Limits::from_env();
    let cache = cli.global.cache();
    let io = |e| CliError::io("<stdout>", e);
    match cli.command {
        Command::Sigma { descriptor, family } => {
            let g = build(&descriptor, &limits)?;
            sigma(&g, family, &limits, cache.as_ref(), out)
        }
        Command::Lattice { descriptor, list } => {
            let g = build(&descriptor, &limits)?;
            lattice(&g, list, &limits, cache.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Construct { descriptor, out: path } => {
            let g = build(&descriptor, &limits)?;
            save_cayley_file(&g, &path)?;
            writeln!(
                out,
                "wrote {} (order {}) to {}",
                g.descriptor(),
                g.order(),
                path.display()
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            max_n,
            max_order,
            catalog,
        } => {
            let opts = VerifyOptions {
                max_n,
                max_order,
                catalog,
                limits,
                cache,
            };
            let report = run_suite(suite, &opts)?;
            write!(out, "{report}").map_err(io)?;
            Ok(report.exit_code())
        }
        Command::Sweep {
            catalog,
            families,
            out: path,
            timing,
            no_subgroup_search,
        } => {
            let opts = SweepOptions {
                families: dedup(families),
                timing,
                subgroup_search: !no_subgroup_search,
                limits,
                cache,
            };
            sweep(catalog.as_deref(), &path, &opts, out)
        }
    }
}

fn dedup(families: Vec<Family>) -> Vec<Family> {
    Family::ALL.into_iter().filter(|f| families.contains(f)).collect()
}

fn build(descriptor: &str, limits: &Limits) -> Result<FiniteGroup> {
    Ok(build_group(&parse_descriptor(descriptor)?, limits)?)
}

fn sigma(
    g: &FiniteGroup,
    family: Family,
    limits: &Limits,
    cache: Option<&LatticeCache>,
    out: &mut dyn Write,
) -> Result<i32> {
    let l = lattice_for(g, limits, cache)?;
    let o = solve_family(g, &l, family);
    let io = |e| CliError::io("<stdout>", e);
    match o.value {
        Value::NotApplicable => Err(CliError::Usage(format!(
            "{} is only defined for p-groups; {} has order {}",
            family.symbol(),
            g.descriptor(),
            g.order()
        ))),
        Value::Infeasible => {
            let why = if g.is_cyclic() {
                "cyclic group has no proper-subgroup cover".to_string()
            } else {
                format!("no cover by proper {} subgroups exists", family.name())
            };
            writeln!(out, "{} = INF ({why})", family.symbol()).map_err(io)?;
            writeln!(out, "group: {} (order {})", g.descriptor(), g.order()).map_err(io)?;
            Ok(EXIT_NEGATIVE)
        }
        Value::Size(k) => {
            writeln!(out, "{} = {k}", family.symbol()).map_err(io)?;
            writeln!(out, "group: {} (order {})", g.descriptor(), g.order()).map_err(io)?;
            writeln!(out, "witness: {}", witness_summary(g, &o.witness)).map_err(io)?;
            for w in &o.witness {
                writeln!(out, "  {:<8} {w}", classify_small(g, w).to_string()).map_err(io)?;
            }
            if let Some(r) = &o.result {
                writeln!(out, "search nodes: {}", r.nodes_explored).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn lattice(
    g: &FiniteGroup,
    list: bool,
    limits: &Limits,
    cache: Option<&LatticeCache>,
    out: &mut dyn Write,
) -> Result<()> {
    let l = lattice_for(g, limits, cache)?;
    let c = l.counts();
    let io = |e| CliError::io("<stdout>", e);
    let p = l.prime.map_or("none".to_string(), |p| p.to_string());
    writeln!(out, "lattice of {} (order {}, p = {p})", g.descriptor(), g.order()).map_err(io)?;
    for (name, k) in [
        ("subgroups", c.total),
        ("proper", c.proper),
        ("abelian", c.abelian),
        ("powerful", c.powerful),
        ("powerfully embedded", c.powerfully_embedded),
        ("normal", c.normal),
        ("maximal", c.maximal),
    ] {
        writeln!(out, "{name:<20} {k}").map_err(io)?;
    }
    writeln!(out, "by order:").map_err(io)?;
    let mut by_order = std::collections::BTreeMap::new();
    for s in &l.subgroups {
        *by_order.entry(s.order).or_insert(0usize) += 1;
    }
    for (o, k) in by_order {
        writeln!(out, "  {o:>4}: {k}").map_err(io)?;
    }
    if list {
        for (i, s) in l.subgroups.iter().enumerate() {
            let flags: String = [
                (s.is_abelian, 'A'),
                (s.is_powerful, 'P'),
                (s.is_powerfully_embedded, 'E'),
                (s.is_normal, 'N'),
                (s.is_maximal, 'M'),
            ]
            .iter()
            .map(|&(on, ch)| if on { ch } else { '-' })
            .collect();
            let kind = classify_small(g, &s.elements).to_string();
            writeln!(out, "{i:>5} {flags} {kind:<16} {}", s.elements).map_err(io)?;
        }
    }
    Ok(())
}

/// `report.csv` -> `report.md`; a `.md` CSV path gets `.summary.md` instead.
pub fn summary_path(csv: &Path) -> PathBuf {
    let md = csv.with_extension("md");
    if md == csv {
        PathBuf::from(format!("{}.summary.md", csv.display()))
    } else {
        md
    }
}

fn sweep(catalog: Option<&Path>, path: &Path, opts: &SweepOptions, out: &mut dyn Write) -> Result<i32> {
    let records = resolve_catalog(catalog)?;
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut sink = CsvSink::new(BufWriter::new(file))?;
    let rows = run_sweep(&records, opts, |row| sink.push(row))?;
    sink.finish()?;
    let md_path = summary_path(path);
    std::fs::write(&md_path, markdown_summary(&rows, opts)).map_err(|e| CliError::io(&md_path, e))?;

    let v = violations(&rows);
    let errors = rows.iter().filter(|r| r.error.is_some()).count();
    let io = |e| CliError::io("<stdout>", e);
    writeln!(
        out,
        "swept {} entries ({errors} with errors) -> {}, {}",
        rows.len(),
        path.display(),
        md_path.display()
    )
    .map_err(io)?;
    writeln!(
        out,
        "chain violations: {}; sigma_P bound violations: {}; maximal subgroups with larger sigma_P: {}",
        v.chain.len(),
        v.powerful_bound.len(),
        v.monotonicity.len()
    )
    .map_err(io)?;
    Ok(if v.chain.is_empty() && v.powerful_bound.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}
