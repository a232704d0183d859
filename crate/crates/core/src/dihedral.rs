//! Closed-form arithmetic in the dihedral 2-group of order `2^{n+1}`.
//!
//! Elements are written `(ab)^j a^k` with `a`, `b` the two generating
//! reflections, `0 ≤ j < 2^n` and `k ∈ {0, 1}`. Nothing here touches a
//! Cayley table except [`nf_embed`], which maps normal forms into the
//! table-based group so the two can be cross-checked.
//!
//! Three facts that are easy to get wrong, each pinned by a regression test
//! against the Cayley-table group:
//! - the rotation `(ab)^j` has order `2^n / gcd(j, 2^n)`, not
//!   `2^{n-1} / gcd(j, 2^{n-1})` (which would give `ab` order `2^{n-1}`);
//! - two reflections `(ab)^s a`, `(ab)^t a` generate a Klein four-group iff
//!   `s ≡ t + 2^{n-1} (mod 2^n)`, since their product is `(ab)^{s-t}`;
//!   the condition `s + t = 2^{n-1}` is not sufficient;
//! - the Klein subgroups are `⟨(ab)^r a, (ab)^{r+2^{n-1}} a⟩` for
//!   `0 ≤ r < 2^{n-1}`; pairs `⟨(ab)^r a, (ab)^{2^n-r} a⟩` only give order 4
//!   for special `r`. There are still exactly `2^{n-1}` Klein subgroups and
//!   the explicit cover still has `2^{n-1} + 1` members.

use std::fmt;

use thiserror::Error;

use crate::element_set::ElementSet;
use crate::families::{build_group, GroupDescriptor};
use crate::group::FiniteGroup;
use crate::limits::Limits;

/// Largest index accepted; the group then has `2^25` elements.
pub const MAX_INDEX: u32 = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DihedralError {
    #[error("dihedral index n = {0} outside 2..={MAX_INDEX}")]
    IndexOutOfRange(u32),
    #[error("elements from different groups (n = {0} and n = {1})")]
    MismatchedIndex(u32, u32),
    #[error("cover does not contain the rotation subgroup <ab>")]
    MissingRotationSubgroup,
    #[error("normal-form embedding is not a homomorphism: {0}")]
    Homomorphism(String),
    #[error("could not build the Cayley group: {0}")]
    Build(String),
}

fn check_index(n: u32) -> Result<(), DihedralError> {
    if (2..=MAX_INDEX).contains(&n) {
        Ok(())
    } else {
        Err(DihedralError::IndexOutOfRange(n))
    }
}

/// `(ab)^j a^k` in the group of order `2^{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    n: u32,
    j: u64,
    k: u8,
}

impl DihedralElement {
    /// Reduces `j` mod `2^n` and `k` mod 2.
    pub fn new(n: u32, j: u64, k: u8) -> Result<Self, DihedralError> {
        check_index(n)?;
        Ok(DihedralElement {
            n,
            j: j & ((1 << n) - 1),
            k: k & 1,
        })
    }

    pub fn identity(n: u32) -> Result<Self, DihedralError> {
        Self::new(n, 0, 0)
    }

    /// The central rotation `(ab)^{2^{n-1}}`.
    pub fn half_turn(n: u32) -> Result<Self, DihedralError> {
        Self::new(n, 1 << (n - 1), 0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rotation_exponent(&self) -> u64 {
        self.j
    }

    pub fn is_reflection(&self) -> bool {
        self.k == 1
    }

    fn modulus(&self) -> u64 {
        1 << self.n
    }

    /// Position `j + k·2^n`, matching the element numbering of `dihedral:2^{n+1}`.
    pub fn index(&self) -> usize {
        (self.j + self.k as u64 * self.modulus()) as usize
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.j, self.k) {
            (0, 0) => write!(f, "e"),
            (0, _) => write!(f, "a"),
            (j, 0) => write!(f, "(ab)^{j}"),
            (j, _) => write!(f, "(ab)^{j}a"),
        }
    }
}

/// All `2^{n+1}` elements, rotations first.
pub fn nf_elements(n: u32) -> Result<Vec<DihedralElement>, DihedralError> {
    check_index(n)?;
    Ok((0..2u8)
        .flat_map(|k| (0..1u64 << n).map(move |j| DihedralElement { n, j, k }))
        .collect())
}

/// `(j1, k1)·(j2, k2) = (j1 + (-1)^{k1} j2, k1 ⊕ k2)`, from `a (ab)^j = (ab)^{-j} a`.
pub fn nf_multiply(x: DihedralElement, y: DihedralElement) -> Result<DihedralElement, DihedralError> {
    if x.n != y.n {
        return Err(DihedralError::MismatchedIndex(x.n, y.n));
    }
    let m = x.modulus();
    let j = if x.k == 0 { x.j + y.j } else { x.j + m - y.j } & (m - 1);
    Ok(DihedralElement {
        n: x.n,
        j,
        k: x.k ^ y.k,
    })
}

/// Element order: 2 for reflections, `2^n / gcd(j, 2^n)` for rotations.
pub fn nf_order(x: DihedralElement) -> u64 {
    if x.k == 1 {
        return 2;
    }
    let m = x.modulus();
    m / gcd(x.j, m)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NfLabel {
    /// Subgroup of the rotations of the given order.
    RotationCyclic(u64),
    /// `{e, (ab)^r a, (ab)^{r+2^{n-1}} a, (ab)^{2^{n-1}}}`.
    Klein(u64),
    Other,
}

/// A subgroup listed by normal forms, members sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfSubgroup {
    pub n: u32,
    pub members: Vec<DihedralElement>,
    pub label: NfLabel,
}

impl NfSubgroup {
    fn new(n: u32, mut members: Vec<DihedralElement>, label: NfLabel) -> Self {
        members.sort();
        members.dedup();
        NfSubgroup { n, members, label }
    }

    pub fn contains(&self, x: &DihedralElement) -> bool {
        self.members.binary_search(x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Closed under [`nf_multiply`].
    pub fn is_closed(&self) -> bool {
        self.members.iter().all(|&x| {
            self.members
                .iter()
                .all(|&y| nf_multiply(x, y).is_ok_and(|z| self.contains(&z)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.members
            .iter()
            .all(|&x| self.members.iter().all(|&y| nf_multiply(x, y) == nf_multiply(y, x)))
    }

    pub fn is_rotation_subgroup(&self) -> bool {
        self.members.len() == 1 << self.n && self.members.iter().all(|x| !x.is_reflection())
    }

    /// Image under an embedding from [`nf_embed`].
    pub fn to_element_set(&self, embedding: &[usize]) -> ElementSet {
        ElementSet::from_indices(embedding.len(), self.members.iter().map(|x| embedding[x.index()]))
    }
}

/// `⟨ab⟩`, all `2^n` rotations.
pub fn rotation_subgroup(n: u32) -> Result<NfSubgroup, DihedralError> {
    check_index(n)?;
    let members = (0..1u64 << n).map(|j| DihedralElement { n, j, k: 0 }).collect();
    Ok(NfSubgroup::new(n, members, NfLabel::RotationCyclic(1 << n)))
}

/// The `2^{n-1}` Klein four-subgroups, `klein(r)` for `0 ≤ r < 2^{n-1}`.
pub fn klein_subgroups_nf(n: u32) -> Result<Vec<NfSubgroup>, DihedralError> {
    check_index(n)?;
    let half = 1u64 << (n - 1);
    Ok((0..half)
        .map(|r| {
            let members = vec![
                DihedralElement { n, j: 0, k: 0 },
                DihedralElement { n, j: r, k: 1 },
                DihedralElement { n, j: r + half, k: 1 },
                DihedralElement { n, j: half, k: 0 },
            ];
            NfSubgroup::new(n, members, NfLabel::Klein(r))
        })
        .collect())
}

/// `⟨ab⟩` followed by the `2^{n-1}` Klein subgroups: an abelian cover with
/// `2^{n-1} + 1` members.
pub fn explicit_powerful_cover(n: u32) -> Result<Vec<NfSubgroup>, DihedralError> {
    let mut cover = vec![rotation_subgroup(n)?];
    cover.extend(klein_subgroups_nf(n)?);
    Ok(cover)
}

/// Arithmetic of the lower-bound argument for a cover containing `⟨ab⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingBound {
    /// Number of members `q`.
    pub members: usize,
    /// Largest number of elements outside `⟨ab⟩` contributed by one member.
    pub max_outside_rotations: usize,
    /// `2^n + 2(q - 1)`.
    pub union_bound: u64,
    pub union_size: u64,
    pub group_order: u64,
    /// Every member other than `⟨ab⟩` adds at most two elements and the
    /// union respects `union_bound`.
    pub holds: bool,
}

impl CountingBound {
    /// Whether a collection this size could reach every element.
    pub fn can_cover(&self) -> bool {
        self.union_bound >= self.group_order
    }

    pub fn is_cover(&self) -> bool {
        self.union_size == self.group_order
    }

    /// `2^{n-1} + 1`, the fewest members any cover satisfying the bound can have.
    pub fn minimum_members(n: u32) -> u64 {
        (1 << (n - 1)) + 1
    }
}

/// Checks the counting argument on a concrete collection: every member
/// besides `⟨ab⟩` contributes at most two elements outside `⟨ab⟩`, so `q`
/// members cover at most `2^n + 2(q - 1)` elements.
pub fn counting_bound_check(n: u32, cover: &[NfSubgroup]) -> Result<CountingBound, DihedralError> {
    check_index(n)?;
    if let Some(bad) = cover.iter().find(|s| s.n != n) {
        return Err(DihedralError::MismatchedIndex(n, bad.n));
    }
    let rot = cover
        .iter()
        .position(|s| s.is_rotation_subgroup())
        .ok_or(DihedralError::MissingRotationSubgroup)?;
    let max_outside = cover
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != rot)
        .map(|(_, s)| s.members.iter().filter(|x| x.is_reflection()).count())
        .max()
        .unwrap_or(0);
    let mut union: Vec<DihedralElement> = cover.iter().flat_map(|s| s.members.iter().copied()).collect();
    union.sort();
    union.dedup();
    let q = cover.len() as u64;
    let union_bound = (1u64 << n) + 2 * (q - 1);
    let union_size = union.len() as u64;
    Ok(CountingBound {
        members: cover.len(),
        max_outside_rotations: max_outside,
        union_bound,
        union_size,
        group_order: 1 << (n + 1),
        holds: max_outside <= 2 && union_size <= union_bound,
    })
}

/// Maps `(ab)^j a^k` to an element of `build_group(dihedral:2^{n+1})`.
///
/// `ab` is sent to the lowest-index element of order `2^n` and `a` to the
/// lowest-index involution outside the rotations. The map is checked to be a
/// bijective homomorphism on all pairs. Entry `x.index()` is the image of `x`.
pub fn nf_embed(n: u32, limits: &Limits) -> Result<(FiniteGroup, Vec<usize>), DihedralError> {
    check_index(n)?;
    let g = build_group(&GroupDescriptor::Dihedral(1 << (n + 1)), limits)
        .map_err(|e| DihedralError::Build(e.to_string()))?;
    let m = 1usize << n;
    let r = (0..g.order())
        .find(|&x| g.element_order(x) == m)
        .ok_or_else(|| DihedralError::Homomorphism("no element of order 2^n".into()))?;
    let rotations = g.closure(&ElementSet::from_indices(g.order(), [r]));
    let a = (0..g.order())
        .find(|&x| g.element_order(x) == 2 && !rotations.contains(x))
        .ok_or_else(|| DihedralError::Homomorphism("no reflection".into()))?;

    let elements = nf_elements(n)?;
    let mut map = vec![0usize; elements.len()];
    for x in &elements {
        let rot = g.pow(r, x.j);
        map[x.index()] = if x.k == 1 { g.mul(rot, a) } else { rot };
    }
    let image = ElementSet::from_indices(g.order(), map.iter().copied());
    if image.len() != g.order() {
        return Err(DihedralError::Homomorphism(
            "normal forms are not pairwise distinct".into(),
        ));
    }
    for &x in &elements {
        for &y in &elements {
            let xy = nf_multiply(x, y)?;
            if map[xy.index()] != g.mul(map[x.index()], map[y.index()]) {
                return Err(DihedralError::Homomorphism(format!("{x} * {y}")));
            }
        }
    }
    Ok((g, map))
}
