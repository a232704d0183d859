use powcov_core::oracle;
use powcov_core::{build_group, direct_product, ElementSet, FiniteGroup, GroupDescriptor, Limits};

use GroupDescriptor::*;

fn build(d: GroupDescriptor) -> FiniteGroup {
    build_group(&d, &Limits::default()).unwrap()
}

fn set(g: &FiniteGroup, xs: &[usize]) -> ElementSet {
    ElementSet::from_indices(g.order(), xs.iter().copied())
}

fn small_two_groups() -> Vec<FiniteGroup> {
    [
        Dihedral(4),
        Dihedral(8),
        Dihedral(16),
        Dihedral(32),
        Quaternion(8),
        Quaternion(16),
        Quaternion(32),
        Semidihedral(16),
        Semidihedral(32),
        Modular(16),
        Modular(32),
        ElementaryAbelian { p: 2, rank: 4 },
        Cyclic(16),
        DirectProduct(Box::new(Dihedral(8)), Box::new(Cyclic(2))),
        DirectProduct(Box::new(Quaternion(8)), Box::new(Cyclic(4))),
    ]
    .into_iter()
    .map(build)
    .collect()
}

/// 2x2 complex matrices with exact-enough float comparison.
type Mat = [[(f64, f64); 2]; 2];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let cmul = |x: (f64, f64), y: (f64, f64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let mut out = [[(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let p = cmul(a[i][k], b[k][j]);
                out[i][j].0 += p.0;
                out[i][j].1 += p.1;
            }
        }
    }
    out
}

fn mat_eq(a: &Mat, b: &Mat) -> bool {
    (0..2).all(|i| (0..2).all(|j| (a[i][j].0 - b[i][j].0).abs() < 1e-9 && (a[i][j].1 - b[i][j].1).abs() < 1e-9))
}

/// Element-order histogram of the generalized quaternion group of order `2m`
/// realised as `⟨diag(ζ, ζ̄), [[0,-1],[1,0]]⟩` with `ζ = e^{2πi/m}`.
fn quaternion_matrix_orders(m: usize) -> std::collections::BTreeMap<usize, usize> {
    let t = 2.0 * std::f64::consts::PI / m as f64;
    let x: Mat = [[(t.cos(), t.sin()), (0.0, 0.0)], [(0.0, 0.0), (t.cos(), -t.sin())]];
    let y: Mat = [[(0.0, 0.0), (-1.0, 0.0)], [(1.0, 0.0), (0.0, 0.0)]];
    let id: Mat = [[(1.0, 0.0), (0.0, 0.0)], [(0.0, 0.0), (1.0, 0.0)]];
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for gen in [x, y] {
            let p = mat_mul(&elems[i], &gen);
            if !elems.iter().any(|e| mat_eq(e, &p)) {
                elems.push(p);
            }
        }
        i += 1;
    }
    let mut hist = std::collections::BTreeMap::new();
    for e in &elems {
        let mut p = *e;
        let mut k = 1;
        while !mat_eq(&p, &id) {
            p = mat_mul(&p, e);
            k += 1;
        }
        *hist.entry(k).or_insert(0) += 1;
    }
    hist
}

#[test]
fn quaternion_sixteen_matches_matrix_presentation() {
    let oracle = quaternion_matrix_orders(8);
    // frozen from the matrix oracle
    let expected: std::collections::BTreeMap<usize, usize> = [(1, 1), (2, 1), (4, 10), (8, 4)].into();
    assert_eq!(oracle, expected);
    let g = build(Quaternion(16));
    assert_eq!(g.order(), 16);
    let mut hist = std::collections::BTreeMap::new();
    for o in g.element_orders() {
        *hist.entry(o).or_insert(0) += 1;
    }
    assert_eq!(hist, expected);
    assert_eq!(g.element_orders().filter(|&o| o == 2).count(), 1);
}

#[test]
fn quaternion_family_matches_matrices() {
    for m in [4, 16, 32] {
        let g = build(Quaternion(2 * m));
        let mut hist = std::collections::BTreeMap::new();
        for o in g.element_orders() {
            *hist.entry(o).or_insert(0) += 1;
        }
        assert_eq!(hist, quaternion_matrix_orders(m), "Q{}", 2 * m);
    }
}

#[test]
fn construction_invariants_hold_for_all_families() {
    for g in small_two_groups() {
        let n = g.order();
        let e = g.identity();
        for i in 0..n {
            assert_eq!(g.mul(e, i), i);
            assert_eq!(g.mul(i, e), i);
            assert_eq!(g.mul(i, g.inv(i)), e);
            assert_eq!(n % g.element_order(i), 0);
            assert_eq!(g.element_order(i), oracle::order_by_powers(&g, i));
            let row: std::collections::BTreeSet<usize> = g.row(i).collect();
            assert_eq!(row.len(), n);
        }
    }
}

#[test]
fn dihedral_sixteen_has_sixteen_elements() {
    assert_eq!(build(Dihedral(16)).order(), 16);
}

#[test]
fn elementary_orders_are_p() {
    for (p, rank) in [(2, 3), (3, 2), (5, 2), (3, 4)] {
        let g = build(ElementaryAbelian { p, rank });
        assert!((0..g.order())
            .filter(|&x| x != g.identity())
            .all(|x| g.element_order(x) == p));
    }
}

#[test]
fn direct_product_examples() {
    let lim = Limits::default();
    let c2 = build(Cyclic(2));
    let klein = direct_product(&c2, &c2, &lim).unwrap();
    assert_eq!(klein.order(), 4);
    assert!((1..4).all(|x| klein.element_order(x) == 2));

    let d8c2 = direct_product(&build(Dihedral(8)), &c2, &lim).unwrap();
    assert_eq!(d8c2.order(), 16);

    // (z, τ) in C4 × C2 sits at index 1·2 + 1 = 3; order 4 by repeated multiplication.
    let c4c2 = direct_product(&build(Cyclic(4)), &c2, &lim).unwrap();
    assert_eq!(oracle::order_by_powers(&c4c2, 3), 4);
    assert_eq!(c4c2.element_order(3), 4);
}

#[test]
fn direct_product_orders_are_lcm() {
    let lim = Limits::default();
    let pairs = [
        (Dihedral(8), Cyclic(4)),
        (Quaternion(8), Cyclic(2)),
        (Cyclic(3), Cyclic(4)),
    ];
    for (a, b) in pairs {
        let (ga, gb) = (build(a), build(b));
        let p = direct_product(&ga, &gb, &lim).unwrap();
        assert_eq!(p.order(), ga.order() * gb.order());
        for x in 0..p.order() {
            let (oa, ob) = (ga.element_order(x / gb.order()), gb.element_order(x % gb.order()));
            let lcm = oa / gcd(oa, ob) * ob;
            assert_eq!(p.element_order(x), lcm);
        }
    }
    let big = build(Dihedral(256));
    assert!(direct_product(&big, &big, &lim).is_err());
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn closure_examples() {
    let g = build(Dihedral(8));
    // rotation r = 1, reflection a = 4, b = a·r = 5 (another reflection)
    let rot = g.closure(&set(&g, &[1]));
    let expected = oracle::closure_by_multiplication(&g, &[1]);
    assert_eq!(oracle::mask_of(&rot), expected);
    assert_eq!(rot, set(&g, &[0, 1, 2, 3]));
    assert_eq!(g.closure(&ElementSet::empty(8)), set(&g, &[0]));
    assert_eq!(g.closure(&set(&g, &[4, 5])), g.full_set());
}

#[test]
fn closure_is_idempotent_and_minimal() {
    for g in small_two_groups() {
        for x in 0..g.order() {
            for y in [0, g.order() / 2, g.order() - 1] {
                let s = set(&g, &[x, y]);
                let c = g.closure(&s);
                assert_eq!(g.closure(&c), c);
                assert_eq!(oracle::mask_of(&c), oracle::closure_by_multiplication(&g, &[x, y]));
            }
        }
    }
}

#[test]
fn commutator_subgroup_examples() {
    let c4 = build(Cyclic(4));
    assert_eq!(c4.commutator_subgroup(&c4.full_set(), &c4.full_set()).unwrap().len(), 1);

    let d8 = build(Dihedral(8));
    let full = oracle::full_mask(8);
    let expected = oracle::commutator_closure(&d8, full, full);
    assert_eq!(expected, 0b101); // {e, r²}
    let got = d8.commutator_subgroup(&d8.full_set(), &d8.full_set()).unwrap();
    assert_eq!(oracle::mask_of(&got), expected);

    let q8 = build(Quaternion(8));
    let expected = oracle::commutator_closure(&q8, full, full);
    assert_eq!(expected, 0b101); // {1, -1}; -1 = x² at index 2
    assert_eq!(
        oracle::mask_of(&q8.commutator_subgroup(&q8.full_set(), &q8.full_set()).unwrap()),
        expected
    );
}

#[test]
fn dihedral_derived_subgroup_is_square_of_rotation() {
    for n in 2..=6u32 {
        let m = 1usize << n;
        let g = build(Dihedral(2 * m));
        let derived = g.commutator_subgroup(&g.full_set(), &g.full_set()).unwrap();
        assert_eq!(derived.len(), m / 2);
        assert_eq!(derived, g.closure(&set(&g, &[2])));
        assert!(g.is_normal(&derived).unwrap());
    }
}

#[test]
fn power_subgroup_examples() {
    // modular:16, z = 1, τ = 8
    let g = build(Modular(16));
    let g4 = g.power_subgroup(&g.full_set(), 4).unwrap();
    assert!(g4.contains(g.pow(1, 4)));
    assert!(g4.contains(g.commutator(8, 1)));

    let d8 = build(Dihedral(8));
    let fourth = d8.power_subgroup(&d8.full_set(), 4).unwrap();
    assert_eq!(oracle::power_closure(&d8, oracle::full_mask(8), 4), 1);
    assert_eq!(fourth, d8.trivial_set());

    let h = set(&d8, &[0, 2, 4, 6]);
    assert_eq!(d8.power_subgroup(&h, 1).unwrap(), h);
}

#[test]
fn power_subgroups_are_normal() {
    for g in small_two_groups() {
        for k in 1..=8 {
            let gk = g.power_subgroup(&g.full_set(), k).unwrap();
            assert!(g.is_normal(&gk).unwrap(), "{} k={k}", g.descriptor());
        }
    }
}

#[test]
fn center_examples() {
    let c8 = build(Cyclic(8));
    assert_eq!(c8.center(), c8.full_set());
    let d8 = build(Dihedral(8));
    assert_eq!(oracle::center(&d8), 0b101);
    assert_eq!(d8.center(), set(&d8, &[0, 2]));
    for n in 2..=6u32 {
        let m = 1usize << n;
        let g = build(Dihedral(2 * m));
        assert!(g.center().contains(m / 2), "half-turn central in order {}", 2 * m);
    }
    for g in small_two_groups() {
        assert_eq!(oracle::mask_of(&g.center()), oracle::center(&g));
    }
}

#[test]
fn normal_closure_examples() {
    let d8 = build(Dihedral(8));
    assert_eq!(d8.normal_closure(&d8.full_set()).unwrap(), d8.full_set());
    let a = set(&d8, &[0, 4]);
    let expected = oracle::normal_closure(&d8, oracle::mask_of(&a));
    // Klein group {e, r², a, a r²}
    assert_eq!(expected, 0b0101_0101);
    assert_eq!(oracle::mask_of(&d8.normal_closure(&a).unwrap()), expected);
    let rot = set(&d8, &[0, 1, 2, 3]);
    assert!(d8.is_normal(&rot).unwrap());
    assert!(!d8.is_normal(&a).unwrap());
}

#[test]
fn normal_closure_agrees_with_conjugation_oracle() {
    for g in small_two_groups().into_iter().filter(|g| g.order() <= 32) {
        for x in 0..g.order() {
            let c = g.closure(&set(&g, &[x]));
            let want = oracle::normal_closure(&g, oracle::mask_of(&c));
            assert_eq!(oracle::mask_of(&g.normal_closure(&c).unwrap()), want);
        }
    }
}

#[test]
fn quotient_examples() {
    let lim = Limits::default();
    let d16 = build(Dihedral(16));
    let q = d16.quotient_group(&d16.center(), &lim).unwrap();
    assert_eq!(q.group.order(), 8);
    // dihedral: two involution cosets whose product has order 4 generate it
    let invs: Vec<usize> = (0..8).filter(|&x| q.group.element_order(x) == 2).collect();
    let generated = invs.iter().any(|&s| {
        invs.iter().any(|&t| {
            q.group.element_order(q.group.mul(s, t)) == 4
                && q.group.closure(&ElementSet::from_indices(8, [s, t])).is_full()
        })
    });
    assert!(generated);
    assert!(!q.group.is_abelian());

    let whole = d16.quotient_group(&d16.full_set(), &lim).unwrap();
    assert_eq!(whole.group.order(), 1);

    let c4 = build(Cyclic(4));
    let c2 = c4.quotient_group(&set(&c4, &[0, 2]), &lim).unwrap();
    assert_eq!(c2.group.order(), 2);

    let not_normal = set(&d16, &[0, 8]);
    assert!(d16.quotient_group(&not_normal, &lim).is_err());
}

#[test]
fn quotient_projection_is_homomorphism() {
    let lim = Limits::default();
    for g in small_two_groups() {
        let normals: Vec<ElementSet> = (0..g.order())
            .map(|x| g.normal_closure(&g.closure(&set(&g, &[x]))).unwrap())
            .collect();
        for n in normals {
            let q = g.quotient_group(&n, &lim).unwrap();
            assert_eq!(q.group.order() * n.len(), g.order());
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(q.projection[g.mul(a, b)], q.group.mul(q.projection[a], q.projection[b]));
                }
            }
        }
    }
}

#[test]
fn nilpotence_and_coclass() {
    assert_eq!(build(Cyclic(8)).nilpotence_class(), Some(1));
    assert_eq!(build(ElementaryAbelian { p: 3, rank: 2 }).nilpotence_class(), Some(1));
    let q8 = build(Quaternion(8));
    // lower central series by the commutator oracle: Q8 > {±1} > 1
    let full = oracle::full_mask(8);
    let g1 = oracle::commutator_closure(&q8, full, full);
    let g2 = oracle::commutator_closure(&q8, g1, full);
    assert_eq!((g1.count_ones(), g2.count_ones()), (2, 1));
    assert_eq!(q8.nilpotence_class(), Some(2));
    assert_eq!(build(Dihedral(16)).coclass().unwrap(), 1);
    for m in [16, 32, 64] {
        for d in [Dihedral(m), Quaternion(m), Semidihedral(m)] {
            assert_eq!(build(d).coclass().unwrap(), 1);
        }
    }
}

#[test]
fn is_p_group_examples() {
    assert_eq!(build(Dihedral(16)).is_p_group(), Some(2));
    assert_eq!(build(ElementaryAbelian { p: 3, rank: 4 }).is_p_group(), Some(3));
    assert_eq!(build(Cyclic(12)).is_p_group(), None);
    assert_eq!(build(Cyclic(1)).is_p_group(), None);
}

#[test]
fn two_involutions_generate_dihedral_or_klein() {
    for g in small_two_groups() {
        let invs: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) == 2).collect();
        for &s in &invs {
            for &t in &invs {
                if s != t {
                    let h = g.closure(&set(&g, &[s, t]));
                    assert_eq!(h.len(), 2 * g.element_order(g.mul(s, t)), "{}", g.descriptor());
                }
            }
        }
    }
}

#[test]
fn subgroup_as_group_keeps_structure() {
    let g = build(Dihedral(32));
    let rot = g.closure(&set(&g, &[1]));
    let (h, embed) = g.subgroup_as_group(&rot, &Limits::default()).unwrap();
    assert_eq!(h.order(), 16);
    assert!(h.is_cyclic());
    for a in 0..16 {
        for b in 0..16 {
            assert_eq!(embed[h.mul(a, b)], g.mul(embed[a], embed[b]));
        }
    }
}
