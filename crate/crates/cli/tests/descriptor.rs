use powcov::parse_descriptor;
use powcov_core::GroupDescriptor;
use proptest::prelude::*;

fn descriptor() -> impl Strategy<Value = GroupDescriptor> {
    let pow2 = |lo: u32| (lo..=9u32).prop_map(|k| 1usize << k);
    let leaf = prop_oneof![
        (1usize..600).prop_map(GroupDescriptor::Cyclic),
        pow2(2).prop_map(GroupDescriptor::Dihedral),
        pow2(3).prop_map(GroupDescriptor::Quaternion),
        pow2(4).prop_map(GroupDescriptor::Semidihedral),
        pow2(4).prop_map(GroupDescriptor::Modular),
        (prop::sample::select(vec![2usize, 3, 5, 7, 11]), 1u32..6)
            .prop_map(|(p, rank)| GroupDescriptor::ElementaryAbelian { p, rank }),
        "[a-z][a-z0-9_/]{0,12}\\.toml".prop_map(|s| GroupDescriptor::File(s.into())),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| GroupDescriptor::DirectProduct(Box::new(a), Box::new(b)))
    })
}

proptest! {
    #[test]
    fn display_then_parse_is_identity(d in descriptor()) {
        let text = d.to_string();
        prop_assert_eq!(parse_descriptor(&text).unwrap(), d);
    }

    #[test]
    fn parser_never_panics(s in "[a-z:(),0-9^ ]{0,30}") {
        if let Err(e) = parse_descriptor(&s) {
            prop_assert!(e.position <= s.len());
        }
    }
}
