//! Enumeration of all subgroups and the family predicates evaluated on them.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::element_set::ElementSet;
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::limits::Limits;

/// One subgroup of a lattice with its cached predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: ElementSet,
    pub order: usize,
    /// Generators in the order they were adjoined during enumeration.
    pub generators: Vec<usize>,
    pub is_abelian: bool,
    pub is_powerful: bool,
    pub is_powerfully_embedded: bool,
    pub is_normal: bool,
    pub is_maximal: bool,
    pub is_proper: bool,
}

/// All subgroups of a group, sorted by order and then by bit pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub group_order: usize,
    pub prime: Option<u64>,
    pub subgroups: Vec<Subgroup>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlagCounts {
    pub total: usize,
    pub proper: usize,
    pub abelian: usize,
    pub powerful: usize,
    pub powerfully_embedded: usize,
    pub normal: usize,
    pub maximal: usize,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn find(&self, elements: &ElementSet) -> Option<&Subgroup> {
        self.subgroups.iter().find(|s| s.elements == *elements)
    }

    pub fn counts(&self) -> FlagCounts {
        let mut c = FlagCounts::default();
        for s in &self.subgroups {
            c.total += 1;
            c.proper += s.is_proper as usize;
            c.abelian += s.is_abelian as usize;
            c.powerful += s.is_powerful as usize;
            c.powerfully_embedded += s.is_powerfully_embedded as usize;
            c.normal += s.is_normal as usize;
            c.maximal += s.is_maximal as usize;
        }
        c
    }

    pub fn normal_subgroups(&self) -> impl Iterator<Item = &Subgroup> {
        self.subgroups.iter().filter(|s| s.is_normal)
    }
}

/// Every subgroup of `g`.
///
/// Seeds with the trivial subgroup and all cyclic subgroups, then extends
/// each known subgroup `H` by each element outside it until no new subgroup
/// appears. Elements of one right coset `Hx` give the same extension, so
/// only one per coset is tried.
pub fn enumerate_subgroups(g: &FiniteGroup, limits: &Limits) -> Result<Lattice> {
    let n = g.order();
    if n > limits.lattice_max_order {
        return Err(GroupError::LatticeCapExceeded {
            order: n,
            cap: limits.lattice_max_order,
        });
    }

    let mut found: Vec<(ElementSet, Vec<usize>)> = Vec::new();
    let mut seen: HashMap<ElementSet, usize> = HashMap::new();
    let mut push = |set: ElementSet, gens: Vec<usize>, found: &mut Vec<_>| {
        if let Entry::Vacant(slot) = seen.entry(set) {
            slot.insert(found.len());
            found.push((set, gens));
        }
    };

    push(g.trivial_set(), Vec::new(), &mut found);
    for x in 0..n {
        if x != g.identity() {
            let (c, gens) = g.closure_with_generators(&ElementSet::from_indices(n, [x]));
            push(c, gens, &mut found);
        }
    }

    let mut next = 0;
    while next < found.len() {
        let (h, gens) = found[next].clone();
        next += 1;
        let h_elems: Vec<usize> = h.iter().collect();
        let mut tried = h;
        for x in 0..n {
            if tried.contains(x) {
                continue;
            }
            for &y in &h_elems {
                tried.insert(g.mul(y, x));
            }
            let k = g.extend_subgroup(&h, &gens, x);
            let mut k_gens = gens.clone();
            k_gens.push(x);
            push(k, k_gens, &mut found);
        }
    }

    found.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.lex_key().cmp(&b.lex_key())));

    let prime = g.is_p_group();
    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|(elements, generators)| {
            let is_abelian = commute_pairwise(g, &generators);
            let is_normal = g.is_normal_unchecked(&elements);
            let (is_powerful, is_powerfully_embedded) = match prime {
                Some(p) => (
                    is_abelian || powerful_unchecked(g, &elements, p),
                    is_normal && powerfully_embedded_unchecked(g, &elements, p),
                ),
                None => (false, false),
            };
            Subgroup {
                order: elements.len(),
                elements,
                generators,
                is_abelian,
                is_powerful,
                is_powerfully_embedded,
                is_normal,
                is_maximal: false,
                is_proper: elements.len() < n,
            }
        })
        .collect();

    let proper: Vec<ElementSet> = subgroups.iter().filter(|s| s.is_proper).map(|s| s.elements).collect();
    for s in subgroups.iter_mut().filter(|s| s.is_proper) {
        s.is_maximal = !proper.iter().any(|t| t.len() > s.order && s.elements.is_subset(t));
    }

    Ok(Lattice {
        group_order: n,
        prime,
        subgroups,
    })
}

fn commute_pairwise(g: &FiniteGroup, xs: &[usize]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, &a)| xs[i + 1..].iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// Exponent in the powerful condition: `p` for odd primes, 4 for `p = 2`.
pub fn powerful_exponent(p: u64) -> u64 {
    if p == 2 {
        4
    } else {
        p
    }
}

fn powerful_unchecked(g: &FiniteGroup, h: &ElementSet, p: u64) -> bool {
    let derived = g.commutator_subgroup_unchecked(h, h);
    derived.is_subset(&g.power_subgroup_unchecked(h, powerful_exponent(p)))
}

fn powerfully_embedded_unchecked(g: &FiniteGroup, n: &ElementSet, p: u64) -> bool {
    let comm = g.commutator_subgroup_unchecked(n, &g.full_set());
    comm.is_subset(&g.power_subgroup_unchecked(n, powerful_exponent(p)))
}

/// Whether `h`, as a group in its own right, is powerful:
/// `[H,H] ⊆ H^p` for odd `p`, `[H,H] ⊆ H^4` for `p = 2`.
pub fn is_powerful(g: &FiniteGroup, h: &ElementSet) -> Result<bool> {
    let p = g.is_p_group().ok_or(GroupError::NotPGroup { order: g.order() })?;
    if !g.is_subgroup(h) {
        return Err(GroupError::NotSubgroup("not closed under the group operation"));
    }
    Ok(powerful_unchecked(g, h, p))
}

/// Whether `n` is normal in `g` with `[N,G] ⊆ N^p` (`N^4` when `p = 2`).
pub fn is_powerfully_embedded(g: &FiniteGroup, n: &ElementSet) -> Result<bool> {
    let p = g.is_p_group().ok_or(GroupError::NotPGroup { order: g.order() })?;
    if !g.is_subgroup(n) {
        return Err(GroupError::NotSubgroup("not closed under the group operation"));
    }
    Ok(g.is_normal_unchecked(n) && powerfully_embedded_unchecked(g, n, p))
}

/// Proper subgroups contained in no other proper subgroup.
pub fn maximal_subgroups(lattice: &Lattice) -> Vec<&Subgroup> {
    let proper: Vec<&Subgroup> = lattice.subgroups.iter().filter(|s| s.is_proper).collect();
    proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.order > s.order && s.elements.is_subset(&t.elements))
        })
        .copied()
        .collect()
}

/// Isomorphism type of small subgroups, decided from element orders.
/// Orders are total orders: `Dihedral(8)` has 8 elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmallType {
    Trivial,
    Cyclic(usize),
    Klein,
    Dihedral(usize),
    QuaternionLike,
    Other,
}

impl std::fmt::Display for SmallType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SmallType::Trivial => write!(f, "trivial"),
            SmallType::Cyclic(m) => write!(f, "C{m}"),
            SmallType::Klein => write!(f, "C2xC2"),
            SmallType::Dihedral(m) => write!(f, "D{m}"),
            SmallType::QuaternionLike => write!(f, "quaternion-like"),
            SmallType::Other => write!(f, "other"),
        }
    }
}

pub fn classify_small(g: &FiniteGroup, h: &ElementSet) -> SmallType {
    let size = h.len();
    if size <= 1 {
        return SmallType::Trivial;
    }
    if h.iter().any(|x| g.element_order(x) == size) {
        return SmallType::Cyclic(size);
    }
    let involutions: Vec<usize> = h.iter().filter(|&x| g.element_order(x) == 2).collect();
    if size == 4 && involutions.len() == 3 {
        return SmallType::Klein;
    }
    for (i, &s) in involutions.iter().enumerate() {
        for &t in &involutions[i + 1..] {
            if size == 2 * g.element_order(g.mul(s, t)) && g.closure(&ElementSet::from_indices(g.order(), [s, t])) == *h
            {
                return SmallType::Dihedral(size);
            }
        }
    }
    let abelian = commute_pairwise(g, &g.subgroup_generators(h));
    if involutions.len() == 1 && !abelian {
        return SmallType::QuaternionLike;
    }
    SmallType::Other
}
