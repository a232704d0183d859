//! Brute-force reference computations for tests.
//!
//! Everything here works from the Cayley table alone, on plain `u128` masks
//! (groups of order at most 128), and shares no code with the lattice
//! enumerator, the predicates or the cover solver.

use std::collections::BTreeSet;

use crate::element_set::ElementSet;
use crate::group::FiniteGroup;

pub fn mask_of(set: &ElementSet) -> u128 {
    set.iter().fold(0u128, |m, i| m | 1 << i)
}

pub fn set_of(n: usize, mask: u128) -> ElementSet {
    ElementSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

pub fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

pub fn members(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Identity plus everything reachable by right-multiplying by `gens`.
pub fn closure_by_multiplication(g: &FiniteGroup, gens: &[usize]) -> u128 {
    assert!(g.order() <= 128);
    let mut mask = 1u128 << g.identity();
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if mask >> y & 1 == 0 {
                mask |= 1 << y;
                queue.push(y);
            }
        }
    }
    mask
}

/// Closure of every subset of at most `max_size` elements, deduplicated.
pub fn subgroups_by_subsets(g: &FiniteGroup, max_size: usize) -> BTreeSet<u128> {
    let elems: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    fn rec(
        g: &FiniteGroup,
        elems: &[usize],
        start: usize,
        max_size: usize,
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<u128>,
    ) {
        out.insert(closure_by_multiplication(g, chosen));
        if chosen.len() == max_size {
            return;
        }
        for i in start..elems.len() {
            chosen.push(elems[i]);
            rec(g, elems, i + 1, max_size, chosen, out);
            chosen.pop();
        }
    }
    rec(g, &elems, 0, max_size, &mut chosen, &mut out);
    out
}

/// `ceil(log2 n)`, enough generators for any subgroup of a group of order `n`.
pub fn generator_bound(n: usize) -> usize {
    (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize
}

pub fn order_by_powers(g: &FiniteGroup, x: usize) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != g.identity() {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

pub fn commutes(g: &FiniteGroup, a: usize, b: usize) -> bool {
    g.mul(a, b) == g.mul(b, a)
}

pub fn commutator(g: &FiniteGroup, a: usize, b: usize) -> usize {
    g.mul(g.mul(inverse(g, a), inverse(g, b)), g.mul(a, b))
}

pub fn power(g: &FiniteGroup, x: usize, k: usize) -> usize {
    (0..k).fold(g.identity(), |acc, _| g.mul(acc, x))
}

/// `⟨[h, k] : h ∈ H, k ∈ K⟩`.
pub fn commutator_closure(g: &FiniteGroup, h: u128, k: u128) -> u128 {
    let mut gens = Vec::new();
    for a in members(h) {
        for b in members(k) {
            gens.push(commutator(g, a, b));
        }
    }
    closure_by_multiplication(g, &gens)
}

/// `⟨x^e : x ∈ H⟩`.
pub fn power_closure(g: &FiniteGroup, h: u128, e: usize) -> u128 {
    let gens: Vec<usize> = members(h).into_iter().map(|x| power(g, x, e)).collect();
    closure_by_multiplication(g, &gens)
}

/// Close, conjugate by every element, repeat until stable.
pub fn normal_closure(g: &FiniteGroup, h: u128) -> u128 {
    let mut cur = closure_by_multiplication(g, &members(h));
    loop {
        let mut gens = members(cur);
        for x in members(cur) {
            for y in 0..g.order() {
                gens.push(g.mul(inverse(g, y), g.mul(x, y)));
            }
        }
        let next = closure_by_multiplication(g, &gens);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn inverse(g: &FiniteGroup, x: usize) -> usize {
    (0..g.order()).find(|&y| g.mul(x, y) == g.identity()).unwrap()
}

pub fn center(g: &FiniteGroup) -> u128 {
    (0..g.order())
        .filter(|&z| (0..g.order()).all(|h| commutes(g, z, h)))
        .fold(0, |m, z| m | 1 << z)
}

pub fn is_abelian(g: &FiniteGroup, h: u128) -> bool {
    let xs = members(h);
    xs.iter().all(|&a| xs.iter().all(|&b| commutes(g, a, b)))
}

/// Powerful test straight from the definition, on all of `H`.
pub fn is_powerful(g: &FiniteGroup, h: u128, p: usize) -> bool {
    let e = if p == 2 { 4 } else { p };
    let derived = commutator_closure(g, h, h);
    derived & !power_closure(g, h, e) == 0
}

pub fn is_powerfully_embedded(g: &FiniteGroup, n: u128, p: usize) -> bool {
    let e = if p == 2 { 4 } else { p };
    let full = full_mask(g.order());
    normal_closure(g, n) == n && commutator_closure(g, n, full) & !power_closure(g, n, e) == 0
}

/// Fewest candidates whose union is `universe`, by trying every subset of
/// size 1, 2, ... in lexicographic order. Returns the size and the first
/// optimal subset found.
pub fn min_cover_exhaustive(candidates: &[u128], universe: u128) -> Option<(usize, Vec<usize>)> {
    let all = candidates.iter().fold(0, |m, c| m | c);
    if all & universe != universe {
        return None;
    }
    if universe == 0 {
        return Some((0, Vec::new()));
    }
    fn rec(cands: &[u128], universe: u128, k: usize, start: usize, acc: u128, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return acc & universe == universe;
        }
        for i in start..cands.len() {
            chosen.push(i);
            if rec(cands, universe, k, i + 1, acc | cands[i], chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    for k in 1..=candidates.len() {
        let mut chosen = Vec::new();
        if rec(candidates, universe, k, 0, 0, &mut chosen) {
            return Some((k, chosen));
        }
    }
    None
}
