//! Named collections of groups to sweep or verify over.
//!
//! A catalog file is TOML:
//!
//! ```toml
//! format = 1
//!
//! [[entry]]
//! id = "d16"
//! descriptor = "dihedral:16"
//!
//! [[entry]]
//! id = "order64-no138"
//! permutation = "perms/64_138.toml"
//! ```
//!
//! Each entry names exactly one of `descriptor`, `cayley` or `permutation`.
//! File paths are relative to the catalog file.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};

use powcov_core::io::{load_cayley_file, load_permutation_generators, FORMAT_VERSION};
use powcov_core::{build_group, FiniteGroup, GroupDescriptor, Limits};
use serde::Deserialize;

use crate::descriptor::parse_descriptor;
use crate::error::{CliError, Result};

/// Where a catalog group comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Descriptor(GroupDescriptor),
    CayleyFile(PathBuf),
    PermutationFile(PathBuf),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Descriptor(d) => write!(f, "{d}"),
            Source::CayleyFile(p) => write!(f, "cayley:{}", p.display()),
            Source::PermutationFile(p) => write!(f, "permutation:{}", p.display()),
        }
    }
}

/// A catalog line before its group is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRecord {
    pub id: String,
    pub source: Source,
}

impl CatalogRecord {
    pub fn build(&self, limits: &Limits) -> Result<CatalogEntry> {
        let group = match &self.source {
            Source::Descriptor(d) => build_group(d, limits)?,
            Source::CayleyFile(p) => load_cayley_file(p, limits)?,
            Source::PermutationFile(p) => load_permutation_generators(p, limits)?,
        };
        Ok(CatalogEntry {
            id: self.id.clone(),
            source: self.source.clone(),
            group,
        })
    }

    /// Order known without building, for descriptor sources.
    pub fn declared_order(&self) -> Option<usize> {
        match &self.source {
            Source::Descriptor(d) => d.order(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub source: Source,
    pub group: FiniteGroup,
}

/// Orders of the built-in catalog stop here.
pub const BUILTIN_MAX_ORDER: usize = 128;

/// Every built-in family group of order at most 128, except the elementary
/// abelian group of order 128, plus a selection of direct products.
pub fn builtin_catalog() -> Vec<CatalogRecord> {
    let mut specs: Vec<String> = Vec::new();
    for p in [2usize, 3, 5, 7] {
        let mut m = p;
        while m <= BUILTIN_MAX_ORDER {
            specs.push(format!("cyclic:{m}"));
            m *= p;
        }
    }
    let two_powers =
        |min: usize| std::iter::successors(Some(min), |m| Some(m * 2)).take_while(|&m| m <= BUILTIN_MAX_ORDER);
    specs.extend(two_powers(4).map(|m| format!("dihedral:{m}")));
    specs.extend(two_powers(8).map(|m| format!("quaternion:{m}")));
    specs.extend(two_powers(16).map(|m| format!("semidihedral:{m}")));
    specs.extend(two_powers(16).map(|m| format!("modular:{m}")));
    for (p, ranks) in [(2, 2..=6), (3, 2..=4), (5, 2..=3), (7, 2..=2), (11, 2..=2)] {
        specs.extend(ranks.map(|k| format!("elementary:{p}^{k}")));
    }
    for (a, b) in [
        ("cyclic:4", "cyclic:2"),
        ("cyclic:4", "cyclic:4"),
        ("cyclic:8", "cyclic:2"),
        ("cyclic:9", "cyclic:3"),
        ("dihedral:8", "cyclic:2"),
        ("dihedral:8", "cyclic:4"),
        ("dihedral:8", "elementary:2^2"),
        ("quaternion:8", "cyclic:2"),
        ("quaternion:8", "cyclic:4"),
        ("dihedral:16", "cyclic:2"),
        ("quaternion:16", "cyclic:2"),
        ("semidihedral:16", "cyclic:2"),
        ("modular:16", "cyclic:2"),
        ("dihedral:8", "dihedral:8"),
        ("dihedral:8", "quaternion:8"),
        ("quaternion:8", "quaternion:8"),
        ("dihedral:32", "cyclic:2"),
        ("dihedral:64", "cyclic:2"),
    ] {
        specs.push(format!("product:({a},{b})"));
    }
    specs
        .into_iter()
        .map(|s| CatalogRecord {
            source: Source::Descriptor(parse_descriptor(&s).expect("built-in descriptor parses")),
            id: s,
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    format: u32,
    #[serde(default)]
    entry: Vec<EntryFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    id: String,
    descriptor: Option<String>,
    cayley: Option<PathBuf>,
    permutation: Option<PathBuf>,
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_catalog(&text, path.parent().unwrap_or(Path::new(".")), path)
}

/// Parses catalog text; relative file paths are joined onto `base`.
pub fn parse_catalog(text: &str, base: &Path, origin: &Path) -> Result<Vec<CatalogRecord>> {
    let fail = |reason: String| CliError::Catalog {
        path: origin.to_path_buf(),
        reason,
    };
    let file: CatalogFile = toml::from_str(text).map_err(|e| fail(e.to_string()))?;
    if file.format != FORMAT_VERSION {
        return Err(fail(format!(
            "unsupported format {} (expected {FORMAT_VERSION})",
            file.format
        )));
    }
    let mut seen = HashSet::new();
    let mut records = Vec::with_capacity(file.entry.len());
    for e in file.entry {
        if !seen.insert(e.id.clone()) {
            return Err(fail(format!("duplicate id `{}`", e.id)));
        }
        let source = match (e.descriptor, e.cayley, e.permutation) {
            (Some(d), None, None) => {
                let d = parse_descriptor(&d)?;
                Source::Descriptor(rebase_descriptor(d, base))
            }
            (None, Some(p), None) => Source::CayleyFile(base.join(p)),
            (None, None, Some(p)) => Source::PermutationFile(base.join(p)),
            _ => {
                return Err(fail(format!(
                    "entry `{}` must set exactly one of descriptor, cayley, permutation",
                    e.id
                )))
            }
        };
        records.push(CatalogRecord { id: e.id, source });
    }
    Ok(records)
}

fn rebase_descriptor(d: GroupDescriptor, base: &Path) -> GroupDescriptor {
    match d {
        GroupDescriptor::File(p) => GroupDescriptor::File(base.join(p)),
        GroupDescriptor::DirectProduct(a, b) => GroupDescriptor::DirectProduct(
            Box::new(rebase_descriptor(*a, base)),
            Box::new(rebase_descriptor(*b, base)),
        ),
        other => other,
    }
}

/// The built-in catalog for `None` or `"builtin"`, otherwise the file.
pub fn resolve_catalog(path: Option<&Path>) -> Result<Vec<CatalogRecord>> {
    match path {
        None => Ok(builtin_catalog()),
        Some(p) if p.as_os_str() == "builtin" => Ok(builtin_catalog()),
        Some(p) => load_catalog(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_ids_are_unique_and_in_range() {
        let cat = builtin_catalog();
        let ids: HashSet<&str> = cat.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids.len(), cat.len());
        for r in &cat {
            assert!(r.declared_order().unwrap() <= BUILTIN_MAX_ORDER, "{}", r.id);
        }
        assert!(ids.contains("dihedral:128"));
        assert!(ids.contains("modular:16"));
        assert!(!ids.contains("elementary:2^7"));
    }

    #[test]
    fn parses_all_source_kinds() {
        let text = r#"
format = 1
[[entry]]
id = "a"
descriptor = "product:(cyclic:2,file:x.toml)"
[[entry]]
id = "b"
cayley = "t.toml"
[[entry]]
id = "c"
permutation = "/abs/p.toml"
"#;
        let recs = parse_catalog(text, Path::new("/cat"), Path::new("/cat/c.toml")).unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[0].source.to_string(), "product:(cyclic:2,file:/cat/x.toml)");
        assert_eq!(recs[1].source, Source::CayleyFile("/cat/t.toml".into()));
        assert_eq!(recs[2].source, Source::PermutationFile("/abs/p.toml".into()));
    }

    #[test]
    fn rejects_bad_catalogs() {
        let base = Path::new(".");
        let dup = "format = 1\n[[entry]]\nid = \"a\"\ndescriptor = \"cyclic:2\"\n[[entry]]\nid = \"a\"\ndescriptor = \"cyclic:4\"\n";
        assert!(parse_catalog(dup, base, base)
            .unwrap_err()
            .to_string()
            .contains("duplicate"));
        let two = "format = 1\n[[entry]]\nid = \"a\"\ndescriptor = \"cyclic:2\"\ncayley = \"x\"\n";
        assert!(parse_catalog(two, base, base).is_err());
        let version = "format = 2\n";
        assert!(parse_catalog(version, base, base)
            .unwrap_err()
            .to_string()
            .contains("format"));
        let bad = "format = 1\n[[entry]]\nid = \"a\"\ndescriptor = \"quaternion:6\"\n";
        assert!(parse_catalog(bad, base, base).is_err());
    }
}
