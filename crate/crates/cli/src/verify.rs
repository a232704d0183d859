//! Named verification suites over dihedral ranges and catalogs.
//!
//! Theorem suites end in PASS or FAIL. Conjecture suites end in
//! CONFIRMED-ON-RANGE or COUNTEREXAMPLE and only ever speak about the groups
//! they actually checked.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use powcov_core::dihedral::{counting_bound_check, explicit_powerful_cover, nf_embed};
use powcov_core::{
    build_group, classify_small, is_powerful, maximal_subgroups, verify_witness, ElementSet, Family, FiniteGroup,
    GroupDescriptor, Limits, SmallType,
};
use rayon::prelude::*;

use crate::analysis::{dihedral_bound, dihedral_index, profile, profile_with, solve_family, witness_summary, Value};
use crate::cache::{lattice_for, LatticeCache};
use crate::catalog::{resolve_catalog, CatalogEntry, BUILTIN_MAX_ORDER};
use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    MainTheorem,
    SigmaEqualsPPlusOne,
    Chain,
    Quotient,
    ProductPowerful,
    Conjecture1,
    Conjecture2,
    PeD32,
    Monotonicity,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::MainTheorem,
        Suite::SigmaEqualsPPlusOne,
        Suite::Chain,
        Suite::Quotient,
        Suite::ProductPowerful,
        Suite::Conjecture1,
        Suite::Conjecture2,
        Suite::PeD32,
        Suite::Monotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainTheorem => "main-theorem",
            Suite::SigmaEqualsPPlusOne => "sigma-equals-p-plus-1",
            Suite::Chain => "chain",
            Suite::Quotient => "quotient",
            Suite::ProductPowerful => "product-powerful",
            Suite::Conjecture1 => "conjecture1",
            Suite::Conjecture2 => "conjecture2",
            Suite::PeD32 => "pe-d32",
            Suite::Monotonicity => "monotonicity",
        }
    }

    pub fn is_conjecture(self) -> bool {
        matches!(self, Suite::Conjecture1 | Suite::Conjecture2)
    }

    fn uses_catalog(self) -> bool {
        matches!(
            self,
            Suite::SigmaEqualsPPlusOne
                | Suite::Chain
                | Suite::Quotient
                | Suite::Conjecture1
                | Suite::Conjecture2
                | Suite::Monotonicity
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite `{s}` (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Largest dihedral index `n` (order `2^{n+1}`); default 6.
    pub max_n: Option<u32>,
    /// Largest group order taken from a catalog; default 128.
    pub max_order: Option<usize>,
    /// Catalog file; the built-in catalog when absent.
    pub catalog: Option<PathBuf>,
    pub limits: Limits,
    pub cache: Option<LatticeCache>,
}

impl VerifyOptions {
    fn max_n(&self) -> u32 {
        self.max_n.unwrap_or(6)
    }

    fn max_order(&self) -> usize {
        self.max_order.unwrap_or(BUILTIN_MAX_ORDER)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub subject: String,
    pub detail: String,
    pub status: CheckStatus,
}

impl Check {
    fn new(subject: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            subject: subject.into(),
            detail: detail.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        }
    }

    fn skip(subject: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            subject: subject.into(),
            detail: detail.into(),
            status: CheckStatus::Skip,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    ConfirmedOnRange,
    Counterexample,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::ConfirmedOnRange => "CONFIRMED-ON-RANGE",
            Verdict::Counterexample => "COUNTEREXAMPLE",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Free-form findings that do not affect the verdict.
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl Report {
    fn new(suite: Suite, checks: Vec<Check>, notes: Vec<String>) -> Self {
        let failed = checks.iter().any(|c| c.status == CheckStatus::Fail);
        let verdict = match (suite.is_conjecture(), failed) {
            (false, false) => Verdict::Pass,
            (false, true) => Verdict::Fail,
            (true, false) => Verdict::ConfirmedOnRange,
            (true, true) => Verdict::Counterexample,
        };
        Report {
            suite,
            checks,
            notes,
            verdict,
        }
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// 0 on PASS or CONFIRMED-ON-RANGE, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass | Verdict::ConfirmedOnRange => 0,
            Verdict::Fail | Verdict::Counterexample => 1,
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.suite)?;
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skip => "SKIP",
            };
            writeln!(f, "{tag:<5} {:<34} {}", c.subject, c.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        let (pass, fail, skip) = (
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Fail),
            self.count(CheckStatus::Skip),
        );
        write!(
            f,
            "{}: {} ({pass} passed, {fail} failed, {skip} skipped)",
            self.suite, self.verdict
        )?;
        if self.suite.is_conjecture() && self.verdict == Verdict::ConfirmedOnRange {
            write!(f, "; confirmed on the groups checked, not proved")?;
        }
        writeln!(f)
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    if !suite.uses_catalog() && opts.catalog.is_some() {
        eprintln!("warning: suite {suite} does not read a catalog; --catalog ignored");
    }
    match suite {
        Suite::MainTheorem => main_theorem(opts),
        Suite::SigmaEqualsPPlusOne => sigma_p_plus_one(opts),
        Suite::Chain => chain(opts),
        Suite::Quotient => quotient(opts),
        Suite::ProductPowerful => product_powerful(opts),
        Suite::Conjecture1 => conjecture(opts, Suite::Conjecture1),
        Suite::Conjecture2 => conjecture(opts, Suite::Conjecture2),
        Suite::PeD32 => pe_d32(opts),
        Suite::Monotonicity => monotonicity(opts),
    }
}

fn dihedral(order: usize, limits: &Limits) -> Result<FiniteGroup> {
    Ok(build_group(&GroupDescriptor::Dihedral(order), limits)?)
}

fn dihedral_range(opts: &VerifyOptions) -> Result<Vec<u32>> {
    let max_n = opts.max_n();
    let order = 1usize << (max_n + 1).min(31);
    if max_n < 2 || order > opts.limits.lattice_max_order {
        return Err(CliError::Usage(format!(
            "--max-n must be between 2 and {} with the current lattice cap of {}",
            opts.limits.lattice_max_order.ilog2().saturating_sub(1),
            opts.limits.lattice_max_order
        )));
    }
    Ok((2..=max_n).collect())
}

type Profiled = (CatalogEntry, crate::analysis::Profile);

/// Builds and profiles every catalog group up to the order bound, keeping
/// catalog order. Entries that fail to build become SKIP checks.
fn catalog_profiles(opts: &VerifyOptions, families: &[Family]) -> Result<(Vec<Profiled>, Vec<Check>)> {
    let max_order = opts.max_order();
    let records: Vec<_> = resolve_catalog(opts.catalog.as_deref())?
        .into_iter()
        .filter(|r| r.declared_order().is_none_or(|o| o <= max_order))
        .collect();
    let results: Vec<_> = records
        .par_iter()
        .map(|r| -> Result<_> {
            let entry = r.build(&opts.limits)?;
            if entry.group.order() > max_order {
                return Ok(None);
            }
            let p = profile(&entry.group, families, &opts.limits, opts.cache.as_ref())?;
            Ok(Some((entry, p)))
        })
        .collect();
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for (res, rec) in results.into_iter().zip(&records) {
        match res {
            Ok(Some(x)) => out.push(x),
            Ok(None) => {}
            Err(e) => skipped.push(Check::skip(&rec.id, format!("error: {e}"))),
        }
    }
    Ok((out, skipped))
}

fn main_theorem(opts: &VerifyOptions) -> Result<Report> {
    let rows: Vec<Result<Check>> = dihedral_range(opts)?
        .into_par_iter()
        .map(|n| {
            let order = 1usize << (n + 1);
            let g = dihedral(order, &opts.limits)?;
            let lattice = lattice_for(&g, &opts.limits, opts.cache.as_ref())?;
            let p = profile_with(&g, &lattice, &[Family::Powerful, Family::Abelian]);
            let expected = (1usize << (n - 1)) + 1;
            let (sp, sa) = (p.size(Family::Powerful), p.size(Family::Abelian));

            let (embedded, map) = nf_embed(n, &opts.limits).map_err(|e| CliError::Usage(e.to_string()))?;
            let cover = explicit_powerful_cover(n).map_err(|e| CliError::Usage(e.to_string()))?;
            let sets: Vec<ElementSet> = cover.iter().map(|s| s.to_element_set(&map)).collect();
            let explicit_ok = verify_witness(&embedded, Family::Powerful, &sets);
            let bound = counting_bound_check(n, &cover).map_err(|e| CliError::Usage(e.to_string()))?;

            let ok = sp == Some(expected) && sa == sp && explicit_ok && bound.holds && bound.is_cover();
            let witness = witness_summary(&g, &p.outcome(Family::Powerful).unwrap().witness);
            Ok(Check::new(
                format!("n={n} dihedral:{order}"),
                ok,
                format!(
                    "sigma_P={} sigma_A={} expected={expected} witness [{witness}]; explicit cover of {} {}",
                    p.value(Family::Powerful).unwrap(),
                    p.value(Family::Abelian).unwrap(),
                    cover.len(),
                    if explicit_ok { "verified" } else { "REJECTED" },
                ),
            ))
        })
        .collect();
    let checks = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Report::new(Suite::MainTheorem, checks, Vec::new()))
}

fn sigma_p_plus_one(opts: &VerifyOptions) -> Result<Report> {
    let (profiles, mut checks) = catalog_profiles(opts, &[Family::All])?;
    for (e, p) in &profiles {
        let Some(prime) = p.prime else {
            checks.push(Check::skip(&e.id, "not a p-group"));
            continue;
        };
        if e.group.is_cyclic() {
            checks.push(Check::skip(&e.id, "cyclic, no cover exists"));
            continue;
        }
        let want = prime as usize + 1;
        let got = p.value(Family::All).unwrap();
        checks.push(Check::new(
            &e.id,
            got == Value::Size(want),
            format!("sigma={got} p+1={want}"),
        ));
    }
    Ok(Report::new(Suite::SigmaEqualsPPlusOne, checks, Vec::new()))
}

fn chain(opts: &VerifyOptions) -> Result<Report> {
    let (profiles, mut checks) = catalog_profiles(opts, &[Family::All, Family::Powerful, Family::Abelian])?;
    for (e, p) in &profiles {
        let (s, sp, sa) = (p.size(Family::All), p.size(Family::Powerful), p.size(Family::Abelian));
        let values = format!(
            "sigma={} sigma_P={} sigma_A={}",
            p.value(Family::All).unwrap(),
            p.value(Family::Powerful).unwrap(),
            p.value(Family::Abelian).unwrap()
        );
        match (s, sp, sa) {
            (Some(s), Some(sp), Some(sa)) => checks.push(Check::new(&e.id, s <= sp && sp <= sa, values)),
            _ => checks.push(Check::skip(&e.id, values)),
        }
    }
    Ok(Report::new(Suite::Chain, checks, Vec::new()))
}

fn is_dihedral_type(g: &FiniteGroup) -> bool {
    matches!(
        classify_small(g, &g.full_set()),
        SmallType::Dihedral(_) | SmallType::Klein
    )
}

fn quotient(opts: &VerifyOptions) -> Result<Report> {
    let (profiles, mut checks) = catalog_profiles(opts, &[Family::Powerful])?;
    let mut notes = Vec::new();
    let dihedral: Vec<_> = profiles.iter().filter(|(e, _)| is_dihedral_type(&e.group)).collect();
    let rows: Vec<Result<Vec<Check>>> = dihedral
        .par_iter()
        .map(|(e, p)| {
            let g = &e.group;
            let sp = p.value(Family::Powerful).unwrap();
            let lattice = lattice_for(g, &opts.limits, opts.cache.as_ref())?;
            let mut out = Vec::new();
            for n in lattice.normal_subgroups().filter(|s| s.is_proper && s.order > 1) {
                let q = g.quotient_group(&n.elements, &opts.limits)?.group;
                if is_powerful(&q, &q.full_set())? {
                    continue;
                }
                let ql = lattice_for(&q, &opts.limits, None)?;
                let sq = solve_family(&q, &ql, Family::Powerful).value;
                let ok = match (sq, sp) {
                    (Value::Size(a), Value::Size(b)) => a <= b,
                    _ => false,
                };
                out.push(Check::new(
                    format!("{} / N(order {})", e.id, n.order),
                    ok,
                    format!(
                        "quotient {} of order {}: sigma_P(K)={sq} <= sigma_P(G)={sp}",
                        classify_small(&q, &q.full_set()),
                        q.order()
                    ),
                ));
            }
            Ok(out)
        })
        .collect();
    for r in rows {
        checks.extend(r?);
    }
    if dihedral.is_empty() {
        notes.push("no dihedral groups in range".into());
    }
    Ok(Report::new(Suite::Quotient, checks, notes))
}

/// `(G, K)` pairs with `G` non-powerful and `K` powerful.
pub const PRODUCT_PAIRS: [(&str, &str); 12] = [
    ("dihedral:8", "cyclic:2"),
    ("dihedral:8", "cyclic:4"),
    ("dihedral:8", "elementary:2^2"),
    ("dihedral:8", "cyclic:8"),
    ("quaternion:8", "cyclic:2"),
    ("quaternion:8", "cyclic:4"),
    ("dihedral:16", "cyclic:2"),
    ("dihedral:16", "cyclic:4"),
    ("quaternion:16", "cyclic:2"),
    ("semidihedral:16", "cyclic:2"),
    ("dihedral:32", "cyclic:2"),
    ("dihedral:64", "cyclic:2"),
];

fn product_powerful(opts: &VerifyOptions) -> Result<Report> {
    let max_order = opts.max_order();
    let rows: Vec<Result<Check>> = PRODUCT_PAIRS
        .par_iter()
        .map(|&(a, b)| {
            let da = crate::descriptor::parse_descriptor(a)?;
            let db = crate::descriptor::parse_descriptor(b)?;
            let label = format!("{a} x {b}");
            let order = da.order().unwrap() * db.order().unwrap();
            if order > max_order {
                return Ok(Check::skip(label, format!("order {order} above --max-order")));
            }
            let g = build_group(&da, &opts.limits)?;
            let k = build_group(&db, &opts.limits)?;
            let same_prime = g.is_p_group().is_some() && g.is_p_group() == k.is_p_group();
            if !same_prime || g.is_cyclic() || is_powerful(&g, &g.full_set())? || !is_powerful(&k, &k.full_set())? {
                return Ok(Check::skip(label, "hypotheses not met"));
            }
            let gk = build_group(
                &GroupDescriptor::DirectProduct(Box::new(da), Box::new(db)),
                &opts.limits,
            )?;
            let sg = profile(&g, &[Family::Powerful], &opts.limits, opts.cache.as_ref())?;
            let sgk = profile(&gk, &[Family::Powerful], &opts.limits, opts.cache.as_ref())?;
            let (x, y) = (
                sgk.value(Family::Powerful).unwrap(),
                sg.value(Family::Powerful).unwrap(),
            );
            Ok(Check::new(
                label,
                x == y && x.size().is_some(),
                format!("sigma_P(GxK)={x} sigma_P(G)={y}"),
            ))
        })
        .collect();
    let checks = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Report::new(Suite::ProductPowerful, checks, Vec::new()))
}

fn conjecture(opts: &VerifyOptions, suite: Suite) -> Result<Report> {
    let (profiles, mut checks) = catalog_profiles(opts, &[Family::Powerful])?;
    let mut considered = 0;
    for (e, p) in &profiles {
        let g = &e.group;
        if p.prime != Some(2) || g.order() < 8 || g.is_cyclic() {
            continue;
        }
        let bound = dihedral_bound(g.order()).unwrap();
        let n = dihedral_index(g.order()).unwrap();
        let sp = p.value(Family::Powerful).unwrap();
        match suite {
            Suite::Conjecture1 => {
                if p.coclass != Some(1) {
                    continue;
                }
                considered += 1;
                checks.push(Check::new(
                    &e.id,
                    sp == Value::Size(bound),
                    format!("n={n} coclass 1: sigma_P={sp} 2^(n-1)+1={bound}"),
                ));
            }
            _ => {
                considered += 1;
                checks.push(Check::new(
                    &e.id,
                    sp.size().is_some_and(|k| k <= bound),
                    format!("n={n}: sigma_P={sp} <= 2^(n-1)+1={bound}"),
                ));
            }
        }
    }
    let notes = vec![format!(
        "{considered} noncyclic 2-groups of order 8..={} from the catalog were checked",
        opts.max_order()
    )];
    Ok(Report::new(suite, checks, notes))
}

fn pe_d32(opts: &VerifyOptions) -> Result<Report> {
    let g = dihedral(32, &opts.limits)?;
    let lattice = lattice_for(&g, &opts.limits, opts.cache.as_ref())?;
    let p = profile_with(&g, &lattice, &[Family::PowerfullyEmbedded, Family::Powerful]);
    let pe = p.value(Family::PowerfullyEmbedded).unwrap();
    let admitted: Vec<String> = lattice
        .subgroups
        .iter()
        .filter(|s| s.is_proper && s.is_powerfully_embedded)
        .map(|s| classify_small(&g, &s.elements).to_string())
        .collect();
    let checks = vec![Check::new(
        "dihedral:32",
        pe == Value::Infeasible,
        format!(
            "sigma_PE={pe} (sigma_P={}); powerfully embedded proper subgroups: {}",
            p.value(Family::Powerful).unwrap(),
            admitted.join(", ")
        ),
    )];
    Ok(Report::new(Suite::PeD32, checks, Vec::new()))
}

fn monotonicity(opts: &VerifyOptions) -> Result<Report> {
    // Along the surjections D(2^{n+2}) -> D(2^{n+1}) the powerful covering
    // number strictly grows.
    let range = dihedral_range(opts)?;
    let values: Vec<Result<(FiniteGroup, Value)>> = range
        .par_iter()
        .map(|&n| {
            let g = dihedral(1 << (n + 1), &opts.limits)?;
            let p = profile(&g, &[Family::Powerful], &opts.limits, opts.cache.as_ref())?;
            Ok((g, p.value(Family::Powerful).unwrap()))
        })
        .collect();
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();
    for (w, pair) in values.windows(2).zip(range.windows(2)) {
        let (big, small) = (&w[1], &w[0]);
        let q = big.0.quotient_group(&big.0.center(), &opts.limits)?.group;
        let image_is_smaller = q.order() == small.0.order() && is_dihedral_type(&q);
        let grows = matches!((big.1, small.1), (Value::Size(a), Value::Size(b)) if a > b);
        checks.push(Check::new(
            format!("dihedral:{} -> dihedral:{}", big.0.order(), small.0.order()),
            grows && image_is_smaller,
            format!(
                "n={}: sigma_P={} > sigma_P={} of its quotient by the centre",
                pair[1], big.1, small.1
            ),
        ));
    }

    // Subgroups with a larger powerful covering number than the whole group.
    let (profiles, skipped) = catalog_profiles(opts, &[Family::Powerful])?;
    checks.extend(skipped);
    let found: Vec<Result<Vec<String>>> = profiles
        .par_iter()
        .filter(|(e, p)| p.prime.is_some() && !e.group.is_cyclic())
        .map(|(e, p)| subgroup_increases(e, p.value(Family::Powerful).unwrap(), &opts.limits, opts.cache.as_ref()))
        .collect();
    let mut notes = Vec::new();
    let mut examples = 0;
    for f in found {
        let f = f?;
        examples += f.len();
        notes.extend(f);
    }
    notes.push(format!(
        "{examples} maximal subgroup(s) H with sigma_P(H) > sigma_P(G) found among catalog groups of order <= {}",
        opts.max_order()
    ));
    Ok(Report::new(Suite::Monotonicity, checks, notes))
}

/// Maximal noncyclic subgroups `H` of `e.group` with `σ_P(H) > σ_P(G)`.
pub(crate) fn subgroup_increases(
    e: &CatalogEntry,
    sp: Value,
    limits: &Limits,
    cache: Option<&LatticeCache>,
) -> Result<Vec<String>> {
    let g = &e.group;
    let lattice = lattice_for(g, limits, cache)?;
    let mut out = Vec::new();
    for m in maximal_subgroups(&lattice) {
        let (h, _) = g.subgroup_as_group(&m.elements, limits)?;
        if h.is_cyclic() {
            continue;
        }
        let hl = lattice_for(&h, limits, None)?;
        let sh = solve_family(&h, &hl, Family::Powerful).value;
        let larger = match (sh, sp) {
            (Value::Size(a), Value::Size(b)) => a > b,
            (Value::Size(_), Value::Infeasible) => true,
            _ => false,
        };
        if larger {
            out.push(format!(
                "{}: maximal subgroup {} of order {} has sigma_P={sh} > sigma_P(G)={sp}",
                e.id,
                classify_small(g, &m.elements),
                m.order
            ));
        }
    }
    Ok(out)
}
