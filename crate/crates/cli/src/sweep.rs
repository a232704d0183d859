//! Covering numbers of every catalog entry, as CSV plus a Markdown summary.
//!
//! Entries are processed on a worker pool; rows are written in input order
//! as soon as every earlier row is done. Without `timing` the output is a
//! pure function of the catalog and the families, byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::sync::mpsc;
use std::time::Instant;

use powcov_core::{Family, Limits};
use rayon::prelude::*;

use crate::analysis::{dihedral_bound, profile, witness_summary, Value};
use crate::cache::LatticeCache;
use crate::catalog::CatalogRecord;
use crate::error::Result;
use crate::verify::subgroup_increases;

pub const CSV_COLUMNS: [&str; 11] = [
    "id", "order", "p", "class", "coclass", "sigma", "sigma_A", "sigma_P", "sigma_PE", "time_ms", "error",
];

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub families: Vec<Family>,
    /// Fill the `time_ms` column. Timings make the output non-reproducible.
    pub timing: bool,
    /// Also look for maximal subgroups with a larger `σ_P` than the group.
    pub subgroup_search: bool,
    pub limits: Limits,
    pub cache: Option<LatticeCache>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            families: Family::ALL.to_vec(),
            timing: false,
            subgroup_search: true,
            limits: Limits::default(),
            cache: None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepRow {
    pub id: String,
    pub order: Option<usize>,
    pub prime: Option<u64>,
    pub class: Option<usize>,
    pub coclass: Option<usize>,
    pub values: Vec<(Family, Value)>,
    pub witnesses: Vec<(Family, String)>,
    pub time_ms: Option<u128>,
    pub error: Option<String>,
    /// Maximal subgroups whose `σ_P` exceeds the group's.
    pub subgroup_increases: Vec<String>,
}

impl SweepRow {
    pub fn value(&self, f: Family) -> Option<Value> {
        self.values.iter().find(|(g, _)| *g == f).map(|(_, v)| *v)
    }

    fn size(&self, f: Family) -> Option<usize> {
        self.value(f).and_then(Value::size)
    }

    /// `σ ≤ σ_P ≤ σ_A` when all three are finite; `None` otherwise.
    pub fn chain_holds(&self) -> Option<bool> {
        let (s, sp, sa) = (
            self.size(Family::All),
            self.size(Family::Powerful),
            self.size(Family::Abelian),
        );
        Some(s? <= sp? && sp? <= sa?)
    }

    /// `σ_P ≤ 2^{n-1}+1` for a noncyclic 2-group of order `2^{n+1} ≥ 8`.
    pub fn powerful_bound_holds(&self) -> Option<bool> {
        if self.prime != Some(2) {
            return None;
        }
        let bound = dihedral_bound(self.order?)?;
        match self.value(Family::Powerful)? {
            Value::Size(k) => Some(k <= bound),
            // cyclic groups have no cover at all
            Value::Infeasible if self.value(Family::All) == Some(Value::Infeasible) => None,
            _ => Some(false),
        }
    }
}

pub fn sweep_entry(record: &CatalogRecord, opts: &SweepOptions) -> SweepRow {
    let start = Instant::now();
    let mut row = SweepRow {
        id: record.id.clone(),
        ..SweepRow::default()
    };
    let result = (|| -> Result<()> {
        let entry = record.build(&opts.limits)?;
        let g = &entry.group;
        row.order = Some(g.order());
        let p = profile(g, &opts.families, &opts.limits, opts.cache.as_ref())?;
        row.prime = p.prime;
        row.class = p.class;
        row.coclass = p.coclass;
        for o in &p.outcomes {
            row.values.push((o.family, o.value));
            if o.value.size().is_some() {
                row.witnesses.push((o.family, witness_summary(g, &o.witness)));
            }
        }
        if opts.subgroup_search && p.prime.is_some() && !g.is_cyclic() {
            if let Some(sp) = p.value(Family::Powerful) {
                row.subgroup_increases = subgroup_increases(&entry, sp, &opts.limits, opts.cache.as_ref())?;
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        row.error = Some(e.to_string());
    }
    if opts.timing {
        row.time_ms = Some(start.elapsed().as_millis());
    }
    row
}

/// Runs the sweep, handing each row to `emit` in catalog order.
pub fn run_sweep(
    records: &[CatalogRecord],
    opts: &SweepOptions,
    mut emit: impl FnMut(&SweepRow) -> Result<()>,
) -> Result<Vec<SweepRow>> {
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|s| {
        s.spawn(move || {
            records.par_iter().enumerate().for_each_with(tx, |tx, (i, r)| {
                let _ = tx.send((i, sweep_entry(r, opts)));
            });
        });
        let mut pending = BTreeMap::new();
        let mut rows = Vec::with_capacity(records.len());
        for (i, row) in rx {
            pending.insert(i, row);
            while let Some(row) = pending.remove(&rows.len()) {
                emit(&row)?;
                rows.push(row);
            }
        }
        Ok(rows)
    })
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn csv_record(row: &SweepRow) -> [String; 11] {
    let v = |f| opt(row.value(f));
    [
        row.id.clone(),
        opt(row.order),
        opt(row.prime),
        opt(row.class),
        opt(row.coclass),
        v(Family::All),
        v(Family::Abelian),
        v(Family::Powerful),
        v(Family::PowerfullyEmbedded),
        opt(row.time_ms),
        row.error.clone().unwrap_or_default(),
    ]
}

/// Streams rows as CSV into `out`, header first.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W) -> Result<Self> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(CSV_COLUMNS)?;
        writer.flush().map_err(csv::Error::from)?;
        Ok(CsvSink { writer })
    }

    pub fn push(&mut self, row: &SweepRow) -> Result<()> {
        self.writer.write_record(csv_record(row))?;
        self.writer.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn finish(self) -> Result<W> {
        self.writer
            .into_inner()
            .map_err(|e| csv::Error::from(e.into_error()).into())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Violations {
    pub chain: Vec<String>,
    pub powerful_bound: Vec<String>,
    pub monotonicity: Vec<String>,
}

impl Violations {
    pub fn is_empty(&self) -> bool {
        self.chain.is_empty() && self.powerful_bound.is_empty() && self.monotonicity.is_empty()
    }
}

pub fn violations(rows: &[SweepRow]) -> Violations {
    let mut v = Violations::default();
    for r in rows {
        let vals = |fs: &[Family]| {
            fs.iter()
                .map(|&f| format!("{}={}", f.symbol(), opt(r.value(f))))
                .collect::<Vec<_>>()
                .join(" ")
        };
        if r.chain_holds() == Some(false) {
            v.chain.push(format!(
                "{}: {}",
                r.id,
                vals(&[Family::All, Family::Powerful, Family::Abelian])
            ));
        }
        if r.powerful_bound_holds() == Some(false) {
            let bound = r.order.and_then(dihedral_bound).unwrap_or_default();
            v.powerful_bound
                .push(format!("{}: {} > {bound}", r.id, vals(&[Family::Powerful])));
        }
        v.monotonicity.extend(r.subgroup_increases.iter().cloned());
    }
    v
}

pub fn markdown_summary(rows: &[SweepRow], opts: &SweepOptions) -> String {
    let mut md = String::new();
    let families: Vec<&str> = opts.families.iter().map(|f| f.name()).collect();
    let _ = writeln!(md, "# Covering-number sweep\n");
    let _ = writeln!(md, "{} entries; families: {}.\n", rows.len(), families.join(", "));
    let _ = writeln!(
        md,
        "| id | order | p | class | coclass | sigma | sigma_A | sigma_P | sigma_PE | sigma_P witness | error |"
    );
    let _ = writeln!(md, "|---|---|---|---|---|---|---|---|---|---|---|");
    for r in rows {
        let c = csv_record(r);
        let witness = r
            .witnesses
            .iter()
            .find(|(f, _)| *f == Family::Powerful)
            .map(|(_, w)| w.as_str())
            .unwrap_or("");
        let _ = writeln!(
            md,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7], c[8], witness, c[10]
        );
    }
    let v = violations(rows);
    let section = |md: &mut String, title: &str, items: &[String]| {
        let _ = writeln!(md, "\n### {title}\n");
        if items.is_empty() {
            let _ = writeln!(md, "None.");
        }
        for i in items {
            let _ = writeln!(md, "- {i}");
        }
    };
    let _ = writeln!(md, "\n## Violations");
    section(&mut md, "Chain sigma <= sigma_P <= sigma_A", &v.chain);
    section(
        &mut md,
        "sigma_P <= 2^(n-1)+1 for noncyclic 2-groups of order 2^(n+1) >= 8",
        &v.powerful_bound,
    );
    section(
        &mut md,
        "Maximal subgroups with larger sigma_P than the group",
        &v.monotonicity,
    );
    let _ = writeln!(
        md,
        "\nAbsence of violations is confirmed on this catalog only; it is not a proof for all groups."
    );
    md
}
