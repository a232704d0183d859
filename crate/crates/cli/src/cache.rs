//! On-disk store of enumerated subgroup lattices.
//!
//! Entries are TOML files named by a SHA-256 key over the format version,
//! the group's descriptor and its Cayley table. Each file repeats the
//! version and the table digest, so an entry written under another version
//! or for another table is treated as a miss and overwritten. Writes go to a
//! temporary file that is then renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use powcov_core::{enumerate_subgroups, ElementSet, FiniteGroup, Lattice, Limits, Subgroup};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bumped whenever the lattice layout or any cached flag changes meaning.
pub const CACHE_FORMAT: u32 = 1;

pub const CACHE_DIR_ENV: &str = "POWCOV_CACHE_DIR";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeDoc {
    format: u32,
    kind: String,
    descriptor: String,
    order: usize,
    table_sha256: String,
    prime: Option<u64>,
    subgroup: Vec<SubgroupDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubgroupDoc {
    elements: String,
    generators: Vec<usize>,
    abelian: bool,
    powerful: bool,
    powerfully_embedded: bool,
    normal: bool,
    maximal: bool,
}

pub fn table_digest(g: &FiniteGroup) -> String {
    let mut h = Sha256::new();
    h.update((g.order() as u64).to_le_bytes());
    for x in g.table() {
        h.update((x as u16).to_le_bytes());
    }
    hex::encode(h.finalize())
}

pub fn cache_key(g: &FiniteGroup) -> String {
    let mut h = Sha256::new();
    h.update(format!("powcov-lattice/{CACHE_FORMAT}\n{}\n", g.descriptor()));
    h.update(table_digest(g));
    hex::encode(h.finalize())
}

pub fn serialize_lattice(g: &FiniteGroup, lattice: &Lattice) -> String {
    let doc = LatticeDoc {
        format: CACHE_FORMAT,
        kind: "lattice".into(),
        descriptor: g.descriptor().to_string(),
        order: g.order(),
        table_sha256: table_digest(g),
        prime: lattice.prime,
        subgroup: lattice
            .subgroups
            .iter()
            .map(|s| SubgroupDoc {
                elements: s.elements.to_hex(),
                generators: s.generators.clone(),
                abelian: s.is_abelian,
                powerful: s.is_powerful,
                powerfully_embedded: s.is_powerfully_embedded,
                normal: s.is_normal,
                maximal: s.is_maximal,
            })
            .collect(),
    };
    toml::to_string(&doc).expect("lattice documents always serialize")
}

/// Parses a cached lattice for `g`, rejecting anything that does not belong
/// to this group and version or whose sets are not subgroups.
pub fn deserialize_lattice(g: &FiniteGroup, text: &str) -> Result<Lattice, String> {
    let doc: LatticeDoc = toml::from_str(text).map_err(|e| e.to_string())?;
    if doc.format != CACHE_FORMAT {
        return Err(format!("format {} (expected {CACHE_FORMAT})", doc.format));
    }
    if doc.kind != "lattice" || doc.order != g.order() || doc.table_sha256 != table_digest(g) {
        return Err("entry belongs to a different group".into());
    }
    let n = g.order();
    let mut subgroups = Vec::with_capacity(doc.subgroup.len());
    for s in doc.subgroup {
        let elements = ElementSet::from_hex(n, &s.elements).ok_or("malformed element set")?;
        if !g.is_subgroup(&elements) || s.generators.iter().any(|&x| x >= n || !elements.contains(x)) {
            return Err("cached set is not a subgroup".into());
        }
        subgroups.push(Subgroup {
            order: elements.len(),
            is_proper: elements.len() < n,
            elements,
            generators: s.generators,
            is_abelian: s.abelian,
            is_powerful: s.powerful,
            is_powerfully_embedded: s.powerfully_embedded,
            is_normal: s.normal,
            is_maximal: s.maximal,
        });
    }
    let bracketed = subgroups.first().is_some_and(|s| s.order == 1) && subgroups.last().is_some_and(|s| s.order == n);
    if !bracketed || subgroups.windows(2).any(|w| w[0].order > w[1].order) {
        return Err("subgroups out of order".into());
    }
    Ok(Lattice {
        group_order: n,
        prime: doc.prime,
        subgroups,
    })
}

/// How a lattice was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// An entry existed but was unusable; the reason is attached.
    Replaced(String),
}

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        LatticeCache { dir: dir.into() }
    }

    /// `$POWCOV_CACHE_DIR`, else `$XDG_CACHE_HOME/powcov`, else
    /// `$HOME/.cache/powcov`, else a directory under the system temp dir.
    pub fn from_env() -> Self {
        let var = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
        let dir = var(CACHE_DIR_ENV)
            .or_else(|| var("XDG_CACHE_HOME").map(|d| d.join("powcov")))
            .or_else(|| var("HOME").map(|d| d.join(".cache").join("powcov")))
            .unwrap_or_else(|| std::env::temp_dir().join("powcov-cache"));
        LatticeCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, g: &FiniteGroup) -> PathBuf {
        self.dir.join(format!("{}.lattice.toml", cache_key(g)))
    }

    /// `Ok(None)` when there is no entry, `Err` with a reason when the entry
    /// exists but cannot be used.
    pub fn get(&self, g: &FiniteGroup) -> Result<Option<Lattice>, String> {
        match fs::read_to_string(self.path_for(g)) {
            Ok(text) => deserialize_lattice(g, &text).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.to_string()),
        }
    }

    pub fn put(&self, g: &FiniteGroup, lattice: &Lattice) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path_for(g);
        let tmp = self.dir.join(format!(".{}.{}.tmp", cache_key(g), std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serialize_lattice(g, lattice).as_bytes())?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, &target).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }

    /// Cached lattice when usable, otherwise enumerates and stores it. Cache
    /// I/O problems only produce a warning on stderr.
    pub fn lattice(&self, g: &FiniteGroup, limits: &Limits) -> powcov_core::Result<(Lattice, CacheOutcome)> {
        let outcome = match self.get(g) {
            Ok(Some(l)) => return Ok((l, CacheOutcome::Hit)),
            Ok(None) => CacheOutcome::Miss,
            Err(reason) => {
                eprintln!(
                    "warning: discarding cache entry {}: {reason}",
                    self.path_for(g).display()
                );
                CacheOutcome::Replaced(reason)
            }
        };
        let lattice = enumerate_subgroups(g, limits)?;
        if let Err(e) = self.put(g, &lattice) {
            eprintln!("warning: could not write lattice cache in {}: {e}", self.dir.display());
        }
        Ok((lattice, outcome))
    }
}

/// Enumerates through the cache when one is given.
pub fn lattice_for(g: &FiniteGroup, limits: &Limits, cache: Option<&LatticeCache>) -> powcov_core::Result<Lattice> {
    match cache {
        Some(c) => c.lattice(g, limits).map(|(l, _)| l),
        None => enumerate_subgroups(g, limits),
    }
}
