//! Finite groups given by Cayley tables, and the subgroup-generating and
//! verbal-subgroup primitives built on them.

use crate::element_set::{ElementSet, MAX_ORDER};
use crate::error::{GroupError, Result};
use crate::limits::Limits;

/// A finite group stored as its full multiplication table.
///
/// Immutable after construction. Every constructor goes through
/// [`FiniteGroup::from_table`], which checks the Latin-square property,
/// identity, inverses and associativity of all triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    identity: usize,
    inverses: Vec<u16>,
    orders: Vec<u32>,
    generators: Vec<usize>,
    descriptor: String,
}

impl FiniteGroup {
    /// Validates a row-major Cayley table (`table[i * n + j]` is the index of
    /// `g_i * g_j`) and builds the group.
    pub fn from_table(order: usize, table: Vec<usize>, descriptor: impl Into<String>, limits: &Limits) -> Result<Self> {
        let n = order;
        if n == 0 {
            return Err(GroupError::Shape("order must be positive".into()));
        }
        if n > limits.max_order || n > MAX_ORDER {
            return Err(GroupError::CapExceeded {
                order: n,
                cap: limits.max_order.min(MAX_ORDER),
            });
        }
        if table.len() != n * n {
            return Err(GroupError::Shape(format!(
                "expected {} entries for order {n}, found {}",
                n * n,
                table.len()
            )));
        }
        for (pos, &v) in table.iter().enumerate() {
            if v >= n {
                return Err(GroupError::OutOfRange {
                    row: pos / n,
                    col: pos % n,
                    value: v,
                });
            }
        }
        check_latin(n, &table)?;

        let identity = (0..n)
            .find(|&e| (0..n).all(|i| table[e * n + i] == i && table[i * n + e] == i))
            .ok_or(GroupError::NoIdentity)?;

        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        // Latin rows guarantee exactly one right inverse; associativity makes it two-sided.
        let inverses: Vec<u16> = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).unwrap() as u16)
            .collect();

        let orders: Vec<u32> = (0..n)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != identity {
                    x = table[x * n + a];
                    k += 1;
                }
                k
            })
            .collect();

        let mut group = FiniteGroup {
            order: n,
            table: table.into_iter().map(|v| v as u16).collect(),
            identity,
            inverses,
            orders,
            generators: Vec::new(),
            descriptor: descriptor.into(),
        };
        let (_, gens) = group.closure_with_generators(&ElementSet::full(n));
        group.generators = gens;
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Provenance label (canonical descriptor string for built-in families).
    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub(crate) fn with_descriptor(mut self, descriptor: impl Into<String>) -> Self {
        self.descriptor = descriptor.into();
        self
    }

    /// A small generating set, found greedily in index order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn element_orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.orders.iter().map(|&o| o as usize)
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.orders[a] as u64;
        (0..k).fold(self.identity, |x, _| self.mul(x, a))
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.inv(g), self.mul(x, g))
    }

    /// Row `a` of the Cayley table as element indices.
    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&v| v as usize)
    }

    /// Row-major table as plain indices.
    pub fn table(&self) -> Vec<usize> {
        self.table.iter().map(|&v| v as usize).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.commute_pairwise(&self.generators)
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&o| o as usize == self.order)
    }

    fn commute_pairwise(&self, xs: &[usize]) -> bool {
        xs.iter()
            .enumerate()
            .all(|(i, &a)| xs[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    pub fn trivial_set(&self) -> ElementSet {
        ElementSet::from_indices(self.order, [self.identity])
    }

    /// Adds `g` to the subgroup `h` (generated by `gens`) and closes.
    ///
    /// The result is built as a union of right cosets `H·y`; it is closed once
    /// every coset representative times every generator lands inside it.
    pub fn extend_subgroup(&self, h: &ElementSet, gens: &[usize], g: usize) -> ElementSet {
        if h.contains(g) {
            return *h;
        }
        let h_elems: Vec<usize> = h.iter().collect();
        let mut all_gens = gens.to_vec();
        all_gens.push(g);
        let mut k = *h;
        let mut reps = vec![self.identity];
        let mut next = 0;
        while next < reps.len() {
            let r = reps[next];
            next += 1;
            for &s in &all_gens {
                let y = self.mul(r, s);
                if !k.contains(y) {
                    for &x in &h_elems {
                        k.insert(self.mul(x, y));
                    }
                    reps.push(y);
                }
            }
        }
        k
    }

    /// `⟨S⟩` together with the generators (a subset of `S`) actually used.
    pub fn closure_with_generators(&self, s: &ElementSet) -> (ElementSet, Vec<usize>) {
        let mut h = self.trivial_set();
        let mut gens = Vec::new();
        for x in s.iter() {
            if !h.contains(x) {
                h = self.extend_subgroup(&h, &gens, x);
                gens.push(x);
            }
        }
        (h, gens)
    }

    /// The smallest subgroup containing `s`; `{e}` for the empty set.
    pub fn closure(&self, s: &ElementSet) -> ElementSet {
        self.closure_with_generators(s).0
    }

    /// True when `s` is nonempty and closed under products and inverses.
    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        s.universe_len() == self.order && s.contains(self.identity) && self.closure(s) == *s
    }

    fn require_subgroup(&self, s: &ElementSet) -> Result<()> {
        if s.universe_len() != self.order {
            return Err(GroupError::NotSubgroup(
                "element set belongs to a group of another order",
            ));
        }
        if !self.is_subgroup(s) {
            return Err(GroupError::NotSubgroup("not closed under the group operation"));
        }
        Ok(())
    }

    /// Generators of a subgroup, found greedily in index order.
    pub fn subgroup_generators(&self, h: &ElementSet) -> Vec<usize> {
        self.closure_with_generators(h).1
    }

    /// Whether the elements of `h` commute pairwise (assumes `h` a subgroup).
    pub fn is_abelian_subgroup(&self, h: &ElementSet) -> bool {
        self.commute_pairwise(&self.subgroup_generators(h))
    }

    /// `[H, K] = ⟨[h, k] : h ∈ H, k ∈ K⟩`.
    pub fn commutator_subgroup(&self, h: &ElementSet, k: &ElementSet) -> Result<ElementSet> {
        self.require_subgroup(h)?;
        self.require_subgroup(k)?;
        Ok(self.commutator_subgroup_unchecked(h, k))
    }

    pub(crate) fn commutator_subgroup_unchecked(&self, h: &ElementSet, k: &ElementSet) -> ElementSet {
        let mut comms = ElementSet::empty(self.order);
        let ks: Vec<usize> = k.iter().collect();
        for a in h.iter() {
            for &b in &ks {
                comms.insert(self.commutator(a, b));
            }
        }
        self.closure(&comms)
    }

    /// `H^k = ⟨h^k : h ∈ H⟩`.
    pub fn power_subgroup(&self, h: &ElementSet, k: u64) -> Result<ElementSet> {
        self.require_subgroup(h)?;
        Ok(self.power_subgroup_unchecked(h, k))
    }

    pub(crate) fn power_subgroup_unchecked(&self, h: &ElementSet, k: u64) -> ElementSet {
        let powers = ElementSet::from_indices(self.order, h.iter().map(|x| self.pow(x, k)));
        self.closure(&powers)
    }

    pub fn center(&self) -> ElementSet {
        ElementSet::from_indices(
            self.order,
            (0..self.order).filter(|&z| self.generators.iter().all(|&g| self.mul(z, g) == self.mul(g, z))),
        )
    }

    /// Smallest normal subgroup containing `h`.
    pub fn normal_closure(&self, h: &ElementSet) -> Result<ElementSet> {
        self.require_subgroup(h)?;
        Ok(self.normal_closure_unchecked(h))
    }

    pub(crate) fn normal_closure_unchecked(&self, h: &ElementSet) -> ElementSet {
        let (mut n, mut gens) = self.closure_with_generators(h);
        // Conjugating each generator of N by each generator of G must stay in N.
        let mut i = 0;
        while i < gens.len() {
            let x = gens[i];
            for &g in &self.generators {
                let y = self.conjugate(x, g);
                if !n.contains(y) {
                    n = self.extend_subgroup(&n, &gens, y);
                    gens.push(y);
                }
            }
            i += 1;
        }
        n
    }

    pub fn is_normal(&self, h: &ElementSet) -> Result<bool> {
        Ok(self.normal_closure(h)? == *h)
    }

    pub(crate) fn is_normal_unchecked(&self, h: &ElementSet) -> bool {
        self.normal_closure_unchecked(h) == *h
    }

    /// `G/N` on left cosets, numbered in order of their smallest member
    /// with the identity coset first.
    pub fn quotient_group(&self, n: &ElementSet, limits: &Limits) -> Result<QuotientGroup> {
        self.require_subgroup(n)?;
        if !self.is_normal_unchecked(n) {
            return Err(GroupError::NotNormal);
        }
        let unassigned = usize::MAX;
        let mut coset_of = vec![unassigned; self.order];
        let mut reps = Vec::new();
        let order_iter = std::iter::once(self.identity).chain((0..self.order).filter(|&g| g != self.identity));
        for g in order_iter {
            if coset_of[g] != unassigned {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for x in n.iter() {
                coset_of[self.mul(g, x)] = c;
            }
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b)]);
            }
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if coset_of[self.mul(a, b)] != table[coset_of[a] * m + coset_of[b]] {
                    return Err(GroupError::Homomorphism(format!("coset map does not preserve {a}*{b}")));
                }
            }
        }
        let label = format!("quotient:({}/{})", self.descriptor, n.to_hex());
        let group = FiniteGroup::from_table(m, table, label, limits)?;
        Ok(QuotientGroup {
            group,
            projection: coset_of,
        })
    }

    /// `H` as a group in its own right, elements renumbered in increasing
    /// index order. Returns the group and the embedding into `self`.
    pub fn subgroup_as_group(&self, h: &ElementSet, limits: &Limits) -> Result<(FiniteGroup, Vec<usize>)> {
        self.require_subgroup(h)?;
        let elems: Vec<usize> = h.iter().collect();
        let mut local = vec![usize::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            local[x] = i;
        }
        let table = elems
            .iter()
            .flat_map(|&a| elems.iter().map(move |&b| (a, b)))
            .map(|(a, b)| local[self.mul(a, b)])
            .collect();
        let label = format!("subgroup:({}/{})", self.descriptor, h.to_hex());
        Ok((FiniteGroup::from_table(elems.len(), table, label, limits)?, elems))
    }

    /// `p` when `|G| = p^a` with `a ≥ 1`.
    pub fn is_p_group(&self) -> Option<u64> {
        prime_power_base(self.order as u64)
    }

    /// Lower central series `G_0 = G, G_i = [G_{i-1}, G]` up to the first
    /// repeat or trivial term.
    pub fn lower_central_series(&self) -> Vec<ElementSet> {
        let full = self.full_set();
        let mut series = vec![full];
        loop {
            let last = *series.last().unwrap();
            if last.len() == 1 {
                break;
            }
            let next = self.commutator_subgroup_unchecked(&last, &full);
            if next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Least `i` with `G_i` trivial, or `None` when `G` is not nilpotent.
    pub fn nilpotence_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        (series.last().unwrap().len() == 1).then(|| series.len() - 1)
    }

    /// `log_p |G| - class` for a p-group.
    pub fn coclass(&self) -> Result<usize> {
        let p = self.is_p_group().ok_or(GroupError::NotPGroup { order: self.order })?;
        let log = log_base(self.order as u64, p);
        // p-groups are nilpotent
        let class = self.nilpotence_class().unwrap();
        Ok(log as usize - class)
    }
}

/// A quotient group together with its coset projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
}

impl QuotientGroup {
    /// Full preimage of a set of cosets.
    pub fn preimage(&self, k: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.projection.len(),
            self.projection
                .iter()
                .enumerate()
                .filter(|(_, &c)| k.contains(c))
                .map(|(g, _)| g),
        )
    }

    pub fn image(&self, h: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.group.order(), h.iter().map(|g| self.projection[g]))
    }
}

/// `G × H` with `(g, h)` stored at index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    let (a, b) = (g.order(), h.order());
    let n = a.saturating_mul(b);
    if n > limits.max_order || n > MAX_ORDER {
        return Err(GroupError::CapExceeded {
            order: n,
            cap: limits.max_order.min(MAX_ORDER),
        });
    }
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            table.push(g.mul(x / b, y / b) * b + h.mul(x % b, y % b));
        }
    }
    FiniteGroup::from_table(
        n,
        table,
        format!("product:({},{})", g.descriptor(), h.descriptor()),
        limits,
    )
}

fn check_latin(n: usize, table: &[usize]) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for r in 0..n {
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for c in 0..n {
            let v = table[r * n + c];
            if seen[v] != usize::MAX {
                return Err(GroupError::NotLatin {
                    axis: "row",
                    index: r,
                    value: v,
                    first: seen[v],
                    second: c,
                });
            }
            seen[v] = c;
        }
    }
    for c in 0..n {
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for r in 0..n {
            let v = table[r * n + c];
            if seen[v] != usize::MAX {
                return Err(GroupError::NotLatin {
                    axis: "column",
                    index: c,
                    value: v,
                    first: seen[v],
                    second: r,
                });
            }
            seen[v] = r;
        }
    }
    Ok(())
}

/// Smallest prime factor of `n` when `n` is a prime power greater than 1.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|&d| n.is_multiple_of(d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `log_p n`, assuming `n` is a power of `p`.
pub fn log_base(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n * n).map(|p| (p / n + p % n) % n).collect();
        FiniteGroup::from_table(n, table, format!("cyclic:{n}"), &Limits::default()).unwrap()
    }

    #[test]
    fn rejects_repeated_row_entry() {
        let table = vec![0, 1, 1, 0, 1, 0, 0, 1, 0];
        let err = FiniteGroup::from_table(3, table, "bad", &Limits::default()).unwrap_err();
        assert!(
            matches!(
                err,
                GroupError::NotLatin {
                    axis: "row",
                    index: 0,
                    value: 1,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn rejects_non_associative_loop() {
        // A Latin square with identity 0 that is not a group (order-5 loop).
        let rows = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let table = rows.iter().flatten().copied().collect();
        let err = FiniteGroup::from_table(5, table, "loop", &Limits::default()).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }), "{err}");
    }

    #[test]
    fn rejects_shape_and_range() {
        assert!(matches!(
            FiniteGroup::from_table(2, vec![0, 1, 1], "x", &Limits::default()),
            Err(GroupError::Shape(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(2, vec![0, 1, 1, 2], "x", &Limits::default()),
            Err(GroupError::OutOfRange {
                row: 1,
                col: 1,
                value: 2
            })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let limits = Limits::uniform(4);
        let err = FiniteGroup::from_table(5, vec![0; 25], "x", &limits).unwrap_err();
        assert!(matches!(err, GroupError::CapExceeded { order: 5, cap: 4 }));
    }

    #[test]
    fn trivial_group() {
        let g = cyclic(1);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.closure(&ElementSet::empty(1)), g.full_set());
        assert_eq!(g.is_p_group(), None);
        assert_eq!(g.nilpotence_class(), Some(0));
    }

    #[test]
    fn cyclic_basics() {
        let g = cyclic(12);
        assert!(g.is_abelian());
        assert!(g.is_cyclic());
        assert_eq!(g.element_order(8), 3);
        assert_eq!(g.center(), g.full_set());
        assert_eq!(g.is_p_group(), None);
        assert_eq!(g.nilpotence_class(), Some(1));
        assert!(matches!(g.coclass(), Err(GroupError::NotPGroup { order: 12 })));
        let c3 = g.closure(&ElementSet::from_indices(12, [4]));
        assert_eq!(c3.len(), 3);
        assert!(g.is_normal(&c3).unwrap());
    }

    #[test]
    fn closure_of_empty_is_identity() {
        let g = cyclic(8);
        assert_eq!(g.closure(&ElementSet::empty(8)), g.trivial_set());
    }

    #[test]
    fn non_subgroup_inputs_rejected() {
        let g = cyclic(4);
        let s = ElementSet::from_indices(4, [0, 1]);
        assert!(g.commutator_subgroup(&s, &g.full_set()).is_err());
        assert!(g.power_subgroup(&s, 2).is_err());
        assert!(g.normal_closure(&s).is_err());
        assert!(g.quotient_group(&s, &Limits::default()).is_err());
    }

    #[test]
    fn quotient_of_cyclic() {
        let g = cyclic(4);
        let n = ElementSet::from_indices(4, [0, 2]);
        let q = g.quotient_group(&n, &Limits::default()).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(q.group.is_cyclic());
        let whole = g.quotient_group(&g.full_set(), &Limits::default()).unwrap();
        assert_eq!(whole.group.order(), 1);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(16), Some(2));
        assert_eq!(prime_power_base(81), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
        assert_eq!(prime_power_base(7), Some(7));
        assert_eq!(log_base(81, 3), 4);
        assert!(is_prime(5) && !is_prime(9) && !is_prime(1));
    }
}
