use std::collections::BTreeSet;

use powcov_core::dihedral::{
    counting_bound_check, explicit_powerful_cover, klein_subgroups_nf, nf_elements, nf_embed, nf_multiply, nf_order,
    rotation_subgroup, CountingBound, DihedralElement, DihedralError, NfLabel, MAX_INDEX,
};
use powcov_core::oracle;
use powcov_core::{
    build_group, build_instance, covering_number, enumerate_subgroups, solve_exact, verify_witness, ElementSet, Family,
    GroupDescriptor, Limits,
};

fn el(n: u32, j: u64, k: u8) -> DihedralElement {
    DihedralElement::new(n, j, k).unwrap()
}

#[test]
fn embedding_is_a_homomorphism() {
    for n in 2..=6 {
        let (g, map) = nf_embed(n, &Limits::default()).unwrap();
        assert_eq!(g.order(), 1 << (n + 1));
        let image: BTreeSet<usize> = map.iter().copied().collect();
        assert_eq!(image.len(), g.order());
        for x in nf_elements(n).unwrap() {
            assert_eq!(
                map[x.index()] == g.identity(),
                x == DihedralElement::identity(n).unwrap()
            );
        }
    }
}

#[test]
fn rotation_order_matches_cayley_powers() {
    for n in 2..=5 {
        let (g, map) = nf_embed(n, &Limits::default()).unwrap();
        for x in nf_elements(n).unwrap() {
            let brute = oracle::order_by_powers(&g, map[x.index()]) as u64;
            assert_eq!(nf_order(x), brute, "n={n} x={x}");
        }
        // the generator ab has order 2^n
        assert_eq!(nf_order(el(n, 1, 0)), 1 << n);
    }
}

#[test]
fn klein_condition_matches_cayley_closure() {
    for n in 2..=5u32 {
        let (g, map) = nf_embed(n, &Limits::default()).unwrap();
        let m = 1u64 << n;
        let half = m / 2;
        let mut insufficient_old_condition = false;
        for s in 0..m {
            for t in 0..m {
                if s == t {
                    continue;
                }
                let gens = [map[el(n, s, 1).index()], map[el(n, t, 1).index()]];
                let size = oracle::closure_by_multiplication(&g, &gens).count_ones();
                let klein = size == 4;
                assert_eq!(klein, (s + m - t) % m == half, "n={n} s={s} t={t}");
                if (s + t) % m == half && !klein {
                    insufficient_old_condition = true;
                }
            }
        }
        if n >= 3 {
            assert!(insufficient_old_condition, "n={n}");
        }
    }
}

#[test]
fn klein_subgroups_match_cayley_lattice() {
    for n in 2..=5u32 {
        let (g, map) = nf_embed(n, &Limits::default()).unwrap();
        let l = enumerate_subgroups(&g, &Limits::default()).unwrap();
        let from_lattice: BTreeSet<u128> = l
            .subgroups
            .iter()
            .filter(|s| s.order == 4 && s.elements.iter().all(|x| g.element_order(x) <= 2))
            .map(|s| oracle::mask_of(&s.elements))
            .collect();
        let kleins = klein_subgroups_nf(n).unwrap();
        assert_eq!(kleins.len(), 1 << (n - 1));
        let from_nf: BTreeSet<u128> = kleins
            .iter()
            .map(|k| oracle::mask_of(&k.to_element_set(&map)))
            .collect();
        assert_eq!(from_nf, from_lattice, "n={n}");
        for (r, k) in kleins.iter().enumerate() {
            assert_eq!(k.label, NfLabel::Klein(r as u64));
            assert!(k.is_closed() && k.is_abelian());
            assert!(k.contains(&DihedralElement::half_turn(n).unwrap()));
        }
    }
}

#[test]
fn explicit_cover_is_a_powerful_cover() {
    for n in 2..=6u32 {
        let (g, map) = nf_embed(n, &Limits::default()).unwrap();
        let cover = explicit_powerful_cover(n).unwrap();
        assert_eq!(cover.len() as u64, (1 << (n - 1)) + 1);
        let sets: Vec<ElementSet> = cover.iter().map(|s| s.to_element_set(&map)).collect();
        assert!(verify_witness(&g, Family::Powerful, &sets), "n={n}");
        assert!(verify_witness(&g, Family::Abelian, &sets), "n={n}");
        let bound = counting_bound_check(n, &cover).unwrap();
        assert!(bound.holds && bound.is_cover() && bound.can_cover());
        assert_eq!(bound.max_outside_rotations, 2);
        assert_eq!(bound.members as u64, CountingBound::minimum_members(n));
    }
}

#[test]
fn counting_bound_fails_with_one_member_fewer() {
    for n in 2..=8u32 {
        let mut cover = explicit_powerful_cover(n).unwrap();
        cover.pop();
        let bound = counting_bound_check(n, &cover).unwrap();
        assert!(bound.holds);
        assert!(!bound.can_cover());
        assert!(!bound.is_cover());
    }
    let kleins = klein_subgroups_nf(3).unwrap();
    assert_eq!(
        counting_bound_check(3, &kleins),
        Err(DihedralError::MissingRotationSubgroup)
    );
    let mixed = vec![rotation_subgroup(3).unwrap(), rotation_subgroup(4).unwrap()];
    assert_eq!(
        counting_bound_check(3, &mixed),
        Err(DihedralError::MismatchedIndex(3, 4))
    );
}

#[test]
fn involution_census() {
    for n in 2..=10u32 {
        let elems = nf_elements(n).unwrap();
        assert_eq!(elems.len(), 1 << (n + 1));
        let involutions = elems.iter().filter(|&&x| nf_order(x) == 2).count();
        assert_eq!(involutions, (1 << n) + 1, "n={n}");
        let half = DihedralElement::half_turn(n).unwrap();
        for &x in &elems {
            assert_eq!(nf_multiply(half, x).unwrap(), nf_multiply(x, half).unwrap());
        }
    }
}

#[test]
fn membership_scan() {
    for n in 2..=6u32 {
        let cover = explicit_powerful_cover(n).unwrap();
        for x in nf_elements(n).unwrap() {
            let hits = cover.iter().filter(|s| s.contains(&x)).count();
            // e and the half-turn lie in every member, anything else in exactly one
            let central = x == DihedralElement::identity(n).unwrap() || x == DihedralElement::half_turn(n).unwrap();
            let expected = if central { cover.len() } else { 1 };
            assert_eq!(hits, expected, "n={n} x={x}");
        }
    }
}

#[test]
fn index_bounds() {
    assert_eq!(DihedralElement::new(1, 0, 0), Err(DihedralError::IndexOutOfRange(1)));
    assert_eq!(
        DihedralElement::new(MAX_INDEX + 1, 0, 0),
        Err(DihedralError::IndexOutOfRange(MAX_INDEX + 1))
    );
    assert!(nf_multiply(el(3, 1, 0), el(4, 1, 0)).is_err());
    assert_eq!(el(3, 9, 3), el(3, 1, 1));
    assert_eq!(el(3, 5, 1).to_string(), "(ab)^5a");
    assert_eq!(el(3, 0, 1).to_string(), "a");
}

#[test]
fn nf_multiply_is_associative() {
    for n in 2..=4u32 {
        let elems = nf_elements(n).unwrap();
        for &x in &elems {
            for &y in &elems {
                for &z in &elems {
                    let l = nf_multiply(nf_multiply(x, y).unwrap(), z).unwrap();
                    let r = nf_multiply(x, nf_multiply(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }
}

#[test]
fn powerful_covering_numbers_of_dihedral_groups() {
    for n in 2..=6u32 {
        let g = build_group(&GroupDescriptor::Dihedral(1 << (n + 1)), &Limits::default()).unwrap();
        let r = covering_number(&g, Family::Powerful, &Limits::default()).unwrap();
        assert_eq!(r.size, Some((1 << (n - 1)) + 1), "n={n}");
    }
}

#[test]
fn every_optimal_powerful_cover_contains_the_rotations() {
    for n in 2..=6u32 {
        let (g, map) = nf_embed(n, &Limits::default()).unwrap();
        let rot = rotation_subgroup(n).unwrap().to_element_set(&map);
        let l = enumerate_subgroups(&g, &Limits::default()).unwrap();
        let inst = build_instance(&g, &l, Family::Powerful);
        let r = solve_exact(&inst);
        assert!(r.witness.iter().any(|&i| inst.candidates[i] == rot), "n={n}");
        // without the rotations the remaining candidates need strictly more members
        let mut reduced = inst.clone();
        let pos = reduced.candidates.iter().position(|c| *c == rot).unwrap();
        reduced.candidates.remove(pos);
        reduced.provenance.remove(pos);
        let without = solve_exact(&reduced);
        assert!(without.size.is_none_or(|k| k > r.size.unwrap()), "n={n}");
    }
}

#[test]
fn powerful_covering_number_grows_along_quotients() {
    let mut prev = 0;
    for n in 2..=6u32 {
        let g = build_group(&GroupDescriptor::Dihedral(1 << (n + 1)), &Limits::default()).unwrap();
        let k = covering_number(&g, Family::Powerful, &Limits::default())
            .unwrap()
            .size
            .unwrap();
        assert!(k > prev);
        // the quotient by the centre is the dihedral group one size down
        if n >= 3 {
            let q = g.quotient_group(&g.center(), &Limits::default()).unwrap();
            let kq = covering_number(&q.group, Family::Powerful, &Limits::default())
                .unwrap()
                .size
                .unwrap();
            assert_eq!(kq, prev);
            assert!(kq < k);
        }
        prev = k;
    }
}
