use std::fs;

use powcov::cache::{cache_key, deserialize_lattice, serialize_lattice, CacheOutcome, LatticeCache};
use powcov::parse_descriptor;
use powcov_core::{build_group, enumerate_subgroups, FiniteGroup, Limits};

fn group(s: &str) -> FiniteGroup {
    build_group(&parse_descriptor(s).unwrap(), &Limits::default()).unwrap()
}

#[test]
fn miss_then_byte_identical_hit() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path());
    let g = group("dihedral:32");
    let (first, outcome) = cache.lattice(&g, &Limits::default()).unwrap();
    assert_eq!(outcome, CacheOutcome::Miss);
    let bytes = fs::read(cache.path_for(&g)).unwrap();

    let (second, outcome) = cache.lattice(&g, &Limits::default()).unwrap();
    assert_eq!(outcome, CacheOutcome::Hit);
    assert_eq!(first, second);
    assert_eq!(first, enumerate_subgroups(&g, &Limits::default()).unwrap());
    assert_eq!(fs::read(cache.path_for(&g)).unwrap(), bytes);
    // no temporary files left behind
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn put_then_get_returns_the_same_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path().join("nested").join("dir"));
    for s in ["quaternion:16", "elementary:3^3", "product:(dihedral:8,cyclic:2)"] {
        let g = group(s);
        let l = enumerate_subgroups(&g, &Limits::default()).unwrap();
        assert_eq!(cache.get(&g).unwrap(), None);
        cache.put(&g, &l).unwrap();
        assert_eq!(cache.get(&g).unwrap(), Some(l.clone()), "{s}");
        assert_eq!(deserialize_lattice(&g, &serialize_lattice(&g, &l)).unwrap(), l);
    }
}

#[test]
fn corrupted_entry_is_recomputed_and_rewritten() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path());
    let g = group("semidihedral:16");
    let (good, _) = cache.lattice(&g, &Limits::default()).unwrap();
    let path = cache.path_for(&g);
    let bytes = fs::read(&path).unwrap();

    fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
    let (l, outcome) = cache.lattice(&g, &Limits::default()).unwrap();
    assert!(matches!(outcome, CacheOutcome::Replaced(_)));
    assert_eq!(l, good);
    assert_eq!(fs::read(&path).unwrap(), bytes);

    // a syntactically valid entry whose sets are not subgroups
    let text = String::from_utf8(bytes.clone()).unwrap();
    let tampered = text.replacen("elements = \"", "elements = \"f", 2);
    assert_ne!(tampered, text);
    fs::write(&path, tampered).unwrap();
    let (l, outcome) = cache.lattice(&g, &Limits::default()).unwrap();
    assert!(matches!(outcome, CacheOutcome::Replaced(_)));
    assert_eq!(l, good);
}

#[test]
fn other_versions_and_other_groups_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path());
    let g = group("modular:16");
    let h = group("dihedral:16");
    let l = enumerate_subgroups(&g, &Limits::default()).unwrap();
    let text = serialize_lattice(&g, &l);

    let old = text.replacen("format = 1", "format = 0", 1);
    assert_ne!(old, text);
    fs::write(cache.path_for(&g), old).unwrap();
    assert!(cache.get(&g).unwrap_err().contains("format"));
    let (_, outcome) = cache.lattice(&g, &Limits::default()).unwrap();
    assert!(matches!(outcome, CacheOutcome::Replaced(_)));
    assert_eq!(cache.get(&g).unwrap(), Some(l.clone()));

    // a lattice of another group of the same order stored under this key
    assert_ne!(cache_key(&g), cache_key(&h));
    fs::write(cache.path_for(&h), &text).unwrap();
    assert!(cache.get(&h).is_err());
    let (lh, outcome) = cache.lattice(&h, &Limits::default()).unwrap();
    assert!(matches!(outcome, CacheOutcome::Replaced(_)));
    assert_eq!(lh, enumerate_subgroups(&h, &Limits::default()).unwrap());
}

#[test]
fn keys_depend_on_descriptor_and_table() {
    let a = group("dihedral:8");
    let b = group("quaternion:8");
    assert_ne!(cache_key(&a), cache_key(&b));
    assert_eq!(cache_key(&a), cache_key(&group("dihedral:8")));
    assert_eq!(cache_key(&a).len(), 64);
}
