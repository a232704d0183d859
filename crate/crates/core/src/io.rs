//! Text file formats for groups.
//!
//! Both formats are TOML documents with a mandatory `format` version and a
//! `kind` tag. A Cayley file:
//!
//! ```toml
//! format = 1
//! kind = "cayley"
//! order = 2
//! names = ["e", "t"]   # optional
//! table = [
//!     "0 1",
//!     "1 0",
//! ]
//! ```
//!
//! Rows hold 0-based element indices separated by whitespace or commas. A
//! permutation file lists generators in image notation on `0..degree`:
//!
//! ```toml
//! format = 1
//! kind = "permutation"
//! degree = 4
//! generators = ["1 2 3 0", "0 3 2 1"]
//! ```

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::limits::Limits;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CayleyDoc {
    format: u32,
    kind: String,
    order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    table: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct PermutationDoc {
    format: u32,
    kind: String,
    degree: usize,
    generators: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct Header {
    format: Option<u32>,
    kind: Option<String>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| GroupError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_row(row: &str) -> Result<Vec<usize>> {
    row.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| GroupError::Format(format!("`{t}` is not a nonnegative integer")))
        })
        .collect()
}

fn check_header(format: u32, kind: &str, expected: &str) -> Result<()> {
    if format != FORMAT_VERSION {
        return Err(GroupError::Format(format!(
            "unsupported format version {format} (expected {FORMAT_VERSION})"
        )));
    }
    if kind != expected {
        return Err(GroupError::Format(format!(
            "expected kind `{expected}`, found `{kind}`"
        )));
    }
    Ok(())
}

/// Loads whichever kind of group file `path` holds.
pub fn load_group_file(path: &Path, limits: &Limits) -> Result<FiniteGroup> {
    let text = read(path)?;
    let header: Header = toml::from_str(&text).map_err(|e| GroupError::Format(e.to_string()))?;
    if header.format.is_none() {
        return Err(GroupError::Format("missing `format` version field".into()));
    }
    match header.kind.as_deref() {
        Some("cayley") => parse_cayley(&text, &path.display().to_string(), limits),
        Some("permutation") => parse_permutations(&text, &path.display().to_string(), limits),
        Some(other) => Err(GroupError::Format(format!("unknown file kind `{other}`"))),
        None => Err(GroupError::Format("missing `kind` field".into())),
    }
}

pub fn load_cayley_file(path: &Path, limits: &Limits) -> Result<FiniteGroup> {
    parse_cayley(&read(path)?, &path.display().to_string(), limits)
}

/// Parses a Cayley document. `label` becomes the group's descriptor.
pub fn parse_cayley(text: &str, label: &str, limits: &Limits) -> Result<FiniteGroup> {
    let doc: CayleyDoc = toml::from_str(text).map_err(|e| GroupError::Format(e.to_string()))?;
    check_header(doc.format, &doc.kind, "cayley")?;
    let n = doc.order;
    if n > limits.max_order {
        return Err(GroupError::CapExceeded {
            order: n,
            cap: limits.max_order,
        });
    }
    if doc.table.len() != n {
        return Err(GroupError::Shape(format!(
            "order {n} but {} table rows",
            doc.table.len()
        )));
    }
    if let Some(names) = &doc.names {
        if names.len() != n {
            return Err(GroupError::Shape(format!("order {n} but {} names", names.len())));
        }
    }
    let mut table = Vec::with_capacity(n * n);
    for (r, row) in doc.table.iter().enumerate() {
        let entries = parse_row(row)?;
        if entries.len() != n {
            return Err(GroupError::Shape(format!(
                "row {r} has {} entries, expected {n}",
                entries.len()
            )));
        }
        table.extend(entries);
    }
    FiniteGroup::from_table(n, table, format!("file:{label}"), limits)
}

/// Serialises the Cayley table of `g`.
pub fn cayley_to_string(g: &FiniteGroup, names: Option<Vec<String>>) -> String {
    let n = g.order();
    let doc = CayleyDoc {
        format: FORMAT_VERSION,
        kind: "cayley".into(),
        order: n,
        names,
        table: (0..n)
            .map(|r| g.row(r).map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect(),
    };
    toml::to_string_pretty(&doc).expect("cayley document serialises")
}

pub fn save_cayley_file(g: &FiniteGroup, path: &Path) -> Result<()> {
    fs::write(path, cayley_to_string(g, None)).map_err(|source| GroupError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_permutation_generators(path: &Path, limits: &Limits) -> Result<FiniteGroup> {
    parse_permutations(&read(path)?, &path.display().to_string(), limits)
}

/// Closes a set of permutation generators under composition.
///
/// Element 0 is the identity permutation; the rest are numbered in
/// breadth-first discovery order. The product `a·b` is the composition
/// `x ↦ a(b(x))`.
pub fn parse_permutations(text: &str, label: &str, limits: &Limits) -> Result<FiniteGroup> {
    let doc: PermutationDoc = toml::from_str(text).map_err(|e| GroupError::Format(e.to_string()))?;
    check_header(doc.format, &doc.kind, "permutation")?;
    let d = doc.degree;
    let mut gens = Vec::with_capacity(doc.generators.len());
    for (k, g) in doc.generators.iter().enumerate() {
        let perm = parse_row(g)?;
        let mut seen = vec![false; d];
        if perm.len() != d || perm.iter().any(|&x| x >= d || std::mem::replace(&mut seen[x], true)) {
            return Err(GroupError::NotPermutation(format!("generator {k} `{g}` on degree {d}")));
        }
        gens.push(perm);
    }
    permutation_group(d, &gens, format!("file:{label}"), limits)
}

/// Cayley table of the group generated by `gens` acting on `0..degree`.
pub fn permutation_group(degree: usize, gens: &[Vec<usize>], label: String, limits: &Limits) -> Result<FiniteGroup> {
    let compose = |a: &[usize], b: &[usize]| b.iter().map(|&x| a[x]).collect::<Vec<_>>();
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut next = 0;
    while next < elements.len() {
        for g in gens {
            let y = compose(&elements[next], g);
            if !index.contains_key(&y) {
                if elements.len() == limits.max_order {
                    return Err(GroupError::CapExceeded {
                        order: elements.len() + 1,
                        cap: limits.max_order,
                    });
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        next += 1;
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            table.push(index[&compose(a, b)]);
        }
    }
    FiniteGroup::from_table(n, table, label, limits)
}
