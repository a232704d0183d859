//! Built-in group families and the descriptors that name them.
//!
//! Every size parameter is the TOTAL order of the group, so `dihedral:16` is
//! the symmetry group of the regular 8-gon, with 16 elements.

use std::fmt;
use std::path::PathBuf;

use crate::error::{GroupError, Result};
use crate::group::{direct_product, is_prime, FiniteGroup};
use crate::io;
use crate::limits::Limits;

/// Which group to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Cyclic(usize),
    /// Isometries of the regular `m/2`-gon; `Dihedral(4)` is `C2 × C2`.
    Dihedral(usize),
    /// Generalized quaternion group.
    Quaternion(usize),
    /// Semidihedral (quasi-dihedral) group.
    Semidihedral(usize),
    /// `C_{m/2} ⋊ C_2` with `z ↦ z^{m/4 + 1}`.
    Modular(usize),
    ElementaryAbelian {
        p: usize,
        rank: u32,
    },
    DirectProduct(Box<GroupDescriptor>, Box<GroupDescriptor>),
    /// A Cayley-table or permutation-generator file.
    File(PathBuf),
}

impl GroupDescriptor {
    /// Total order, when it follows from the descriptor alone.
    pub fn order(&self) -> Option<usize> {
        use GroupDescriptor::*;
        match self {
            Cyclic(m) | Dihedral(m) | Quaternion(m) | Semidihedral(m) | Modular(m) => Some(*m),
            ElementaryAbelian { p, rank } => p.checked_pow(*rank),
            DirectProduct(a, b) => a.order()?.checked_mul(b.order()?),
            File(_) => None,
        }
    }

    /// Checks the family-specific order constraints.
    pub fn validate(&self) -> Result<()> {
        use GroupDescriptor::*;
        let fail = |reason: String| {
            Err(GroupError::Descriptor {
                descriptor: self.to_string(),
                reason,
            })
        };
        let two_power = |m: usize, min: usize| m >= min && m.is_power_of_two();
        match self {
            Cyclic(m) if *m == 0 => fail("order must be positive".into()),
            Dihedral(m) if !two_power(*m, 4) => fail("dihedral order must be a power of 2, at least 4".into()),
            Quaternion(m) if !two_power(*m, 8) => fail("quaternion order must be a power of 2, at least 8".into()),
            Semidihedral(m) if !two_power(*m, 16) => {
                fail("semidihedral order must be a power of 2, at least 16".into())
            }
            Modular(m) if !two_power(*m, 16) => fail("modular order must be a power of 2, at least 16".into()),
            ElementaryAbelian { p, rank } => {
                if !is_prime(*p as u64) {
                    fail(format!("{p} is not prime"))
                } else if *rank == 0 {
                    fail("rank must be positive".into())
                } else if self.order().is_none() {
                    fail("order overflows".into())
                } else {
                    Ok(())
                }
            }
            DirectProduct(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupDescriptor::*;
        match self {
            Cyclic(m) => write!(f, "cyclic:{m}"),
            Dihedral(m) => write!(f, "dihedral:{m}"),
            Quaternion(m) => write!(f, "quaternion:{m}"),
            Semidihedral(m) => write!(f, "semidihedral:{m}"),
            Modular(m) => write!(f, "modular:{m}"),
            ElementaryAbelian { p, rank } => write!(f, "elementary:{p}^{rank}"),
            DirectProduct(a, b) => write!(f, "product:({a},{b})"),
            File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

/// Builds the group a descriptor names, labelled with the descriptor's
/// canonical string.
pub fn build_group(descriptor: &GroupDescriptor, limits: &Limits) -> Result<FiniteGroup> {
    use GroupDescriptor::*;
    descriptor.validate()?;
    if let Some(order) = descriptor.order() {
        if order > limits.max_order {
            return Err(GroupError::CapExceeded {
                order,
                cap: limits.max_order,
            });
        }
    }
    let label = descriptor.to_string();
    match descriptor {
        Cyclic(m) => cyclic(*m, label, limits),
        Dihedral(m) => metacyclic(m / 2, |j| (m / 2 - j) % (m / 2), 0, label, limits),
        Semidihedral(m) => {
            let n = m / 2;
            metacyclic(n, |j| j * (n / 2 - 1) % n, 0, label, limits)
        }
        Modular(m) => {
            let n = m / 2;
            metacyclic(n, |j| j * (n / 2 + 1) % n, 0, label, limits)
        }
        Quaternion(m) => {
            let n = m / 2;
            metacyclic(n, |j| (n - j) % n, n / 2, label, limits)
        }
        ElementaryAbelian { p, rank } => elementary(*p, *rank, label, limits),
        DirectProduct(a, b) => {
            let ga = build_group(a, limits)?;
            let gb = build_group(b, limits)?;
            Ok(direct_product(&ga, &gb, limits)?.with_descriptor(label))
        }
        File(path) => Ok(io::load_group_file(path, limits)?.with_descriptor(label)),
    }
}

fn cyclic(m: usize, label: String, limits: &Limits) -> Result<FiniteGroup> {
    let table = (0..m * m).map(|p| (p / m + p % m) % m).collect();
    FiniteGroup::from_table(m, table, label, limits)
}

/// Extension of `C_n = ⟨x⟩` by `y` of order dividing 2, with elements
/// `x^i y^k` stored at index `i + k·n`, `y x^j y⁻¹ = x^{act(j)}` and
/// `y² = x^{y_squared}`.
fn metacyclic(
    n: usize,
    act: impl Fn(usize) -> usize,
    y_squared: usize,
    label: String,
    limits: &Limits,
) -> Result<FiniteGroup> {
    let m = 2 * n;
    let mut table = Vec::with_capacity(m * m);
    for a in 0..m {
        let (i, k) = (a % n, a / n);
        for b in 0..m {
            let (j, l) = (b % n, b / n);
            // x^i y^k x^j y^l = x^{i + act^k(j)} y^{k+l}
            let moved = if k == 1 { act(j) } else { j };
            let mut e = (i + moved) % n;
            let mut y = k + l;
            if y == 2 {
                e = (e + y_squared) % n;
                y = 0;
            }
            table.push(e + y * n);
        }
    }
    FiniteGroup::from_table(m, table, label, limits)
}

fn elementary(p: usize, rank: u32, label: String, limits: &Limits) -> Result<FiniteGroup> {
    let n = p.pow(rank);
    let add = |mut a: usize, mut b: usize| {
        let (mut out, mut place) = (0, 1);
        for _ in 0..rank {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    };
    let table = (0..n * n).map(|pos| add(pos / n, pos % n)).collect();
    FiniteGroup::from_table(n, table, label, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element_set::ElementSet;

    fn build(d: GroupDescriptor) -> FiniteGroup {
        build_group(&d, &Limits::default()).unwrap()
    }

    fn order_counts(g: &FiniteGroup) -> std::collections::BTreeMap<usize, usize> {
        let mut m = std::collections::BTreeMap::new();
        for o in g.element_orders() {
            *m.entry(o).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn dihedral_sixteen() {
        let g = build(GroupDescriptor::Dihedral(16));
        assert_eq!(g.order(), 16);
        assert_eq!(g.descriptor(), "dihedral:16");
        // rotation by one step has order 8, reflections are involutions
        assert_eq!(g.element_order(1), 8);
        assert!((8..16).all(|i| g.element_order(i) == 2));
        // s r s = r^-1
        assert_eq!(g.conjugate(1, 8), 7);
    }

    #[test]
    fn dihedral_four_is_klein() {
        let g = build(GroupDescriptor::Dihedral(4));
        assert!(g.is_abelian());
        assert_eq!(order_counts(&g), [(1, 1), (2, 3)].into());
    }

    #[test]
    fn trivial_cyclic() {
        let g = build(GroupDescriptor::Cyclic(1));
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn quaternion_has_one_involution() {
        for m in [8, 16, 32, 64] {
            let g = build(GroupDescriptor::Quaternion(m));
            assert_eq!(g.element_orders().filter(|&o| o == 2).count(), 1, "Q{m}");
        }
    }

    #[test]
    fn modular_action() {
        // τ z τ = z^{2^{m-2}+1}; order 16: z ↦ z^5
        let g = build(GroupDescriptor::Modular(16));
        let (z, tau) = (1, 8);
        assert_eq!(g.conjugate(z, tau), 5);
        assert!(!g.is_abelian());
        assert_eq!(g.element_order(z), 8);
    }

    #[test]
    fn semidihedral_action() {
        let g = build(GroupDescriptor::Semidihedral(16));
        assert_eq!(g.conjugate(1, 8), 3);
        assert_eq!(order_counts(&g), [(1, 1), (2, 5), (4, 6), (8, 4)].into());
    }

    #[test]
    fn elementary_exponent() {
        let g = build(GroupDescriptor::ElementaryAbelian { p: 3, rank: 3 });
        assert_eq!(g.order(), 27);
        assert!(g.is_abelian());
        assert!(g.element_orders().skip(1).all(|o| o == 3));
    }

    #[test]
    fn invalid_descriptors() {
        let lim = Limits::default();
        for d in [
            GroupDescriptor::Quaternion(6),
            GroupDescriptor::Quaternion(4),
            GroupDescriptor::Dihedral(6),
            GroupDescriptor::Dihedral(2),
            GroupDescriptor::Semidihedral(8),
            GroupDescriptor::Modular(8),
            GroupDescriptor::Cyclic(0),
            GroupDescriptor::ElementaryAbelian { p: 4, rank: 2 },
        ] {
            assert!(
                matches!(build_group(&d, &lim), Err(GroupError::Descriptor { .. })),
                "{d}"
            );
        }
        assert!(matches!(
            build_group(&GroupDescriptor::Dihedral(1024), &lim),
            Err(GroupError::CapExceeded { order: 1024, .. })
        ));
    }

    #[test]
    fn product_descriptor_label() {
        let d = GroupDescriptor::DirectProduct(
            Box::new(GroupDescriptor::Dihedral(8)),
            Box::new(GroupDescriptor::Cyclic(2)),
        );
        let g = build(d);
        assert_eq!(g.order(), 16);
        assert_eq!(g.descriptor(), "product:(dihedral:8,cyclic:2)");
        assert_eq!(g.center().len(), 4);
        assert!(g.is_subgroup(&ElementSet::from_indices(16, [0, 1])));
    }
}
