//! Per-group covering-number profiles shared by `sigma`, `verify` and `sweep`.

use std::fmt;

use powcov_core::{
    build_instance, classify_small, solve_exact, CoverResult, ElementSet, Family, FiniteGroup, Lattice, Limits,
    SmallType,
};

use crate::cache::{lattice_for, LatticeCache};

/// One covering number as reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Size(usize),
    Infeasible,
    /// The family is only defined for p-groups.
    NotApplicable,
}

impl Value {
    pub fn size(self) -> Option<usize> {
        match self {
            Value::Size(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Size(k) => write!(f, "{k}"),
            Value::Infeasible => f.write_str("INF"),
            Value::NotApplicable => f.write_str("NA"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FamilyOutcome {
    pub family: Family,
    pub value: Value,
    /// Members of the optimal cover, in candidate order.
    pub witness: Vec<ElementSet>,
    pub result: Option<CoverResult>,
}

/// Solves one family over an already enumerated lattice.
pub fn solve_family(g: &FiniteGroup, lattice: &Lattice, family: Family) -> FamilyOutcome {
    let needs_p = matches!(family, Family::Powerful | Family::PowerfullyEmbedded);
    if needs_p && lattice.prime.is_none() {
        return FamilyOutcome {
            family,
            value: Value::NotApplicable,
            witness: Vec::new(),
            result: None,
        };
    }
    let inst = build_instance(g, lattice, family);
    let r = solve_exact(&inst);
    let value = r.size.map_or(Value::Infeasible, Value::Size);
    FamilyOutcome {
        family,
        value,
        witness: r.witness.iter().map(|&i| inst.candidates[i]).collect(),
        result: Some(r),
    }
}

/// Structural data and the requested covering numbers of one group.
#[derive(Clone, Debug)]
pub struct Profile {
    pub order: usize,
    pub prime: Option<u64>,
    pub class: Option<usize>,
    pub coclass: Option<usize>,
    pub outcomes: Vec<FamilyOutcome>,
}

impl Profile {
    pub fn outcome(&self, family: Family) -> Option<&FamilyOutcome> {
        self.outcomes.iter().find(|o| o.family == family)
    }

    pub fn value(&self, family: Family) -> Option<Value> {
        self.outcome(family).map(|o| o.value)
    }

    /// `Some(k)` only when the family was computed and is finite.
    pub fn size(&self, family: Family) -> Option<usize> {
        self.value(family).and_then(Value::size)
    }
}

pub fn profile(
    g: &FiniteGroup,
    families: &[Family],
    limits: &Limits,
    cache: Option<&LatticeCache>,
) -> powcov_core::Result<Profile> {
    let lattice = lattice_for(g, limits, cache)?;
    Ok(profile_with(g, &lattice, families))
}

pub fn profile_with(g: &FiniteGroup, lattice: &Lattice, families: &[Family]) -> Profile {
    let prime = g.is_p_group();
    Profile {
        order: g.order(),
        prime,
        class: g.nilpotence_class(),
        coclass: prime.and_then(|_| g.coclass().ok()),
        outcomes: families.iter().map(|&f| solve_family(g, lattice, f)).collect(),
    }
}

/// `2^{n-1} + 1` for a group of order `2^{n+1}` with `n ≥ 2`.
pub fn dihedral_bound(order: usize) -> Option<usize> {
    if order < 8 || !order.is_power_of_two() {
        return None;
    }
    let n = order.trailing_zeros() - 1;
    Some((1 << (n - 1)) + 1)
}

/// The index `n` with `order = 2^{n+1}`.
pub fn dihedral_index(order: usize) -> Option<u32> {
    (order >= 4 && order.is_power_of_two()).then(|| order.trailing_zeros() - 1)
}

/// Compact description of cover members, e.g. `C8 + 4xC2xC2`.
pub fn witness_summary(g: &FiniteGroup, witness: &[ElementSet]) -> String {
    let mut groups: Vec<(usize, String, usize)> = Vec::new();
    for w in witness {
        let t = classify_small(g, w);
        let name = match t {
            SmallType::Other | SmallType::QuaternionLike => format!("{t}({})", w.len()),
            _ => t.to_string(),
        };
        match groups.iter_mut().find(|(size, n, _)| *size == w.len() && *n == name) {
            Some(slot) => slot.2 += 1,
            None => groups.push((w.len(), name, 1)),
        }
    }
    groups.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    groups
        .into_iter()
        .map(|(_, name, k)| if k == 1 { name } else { format!("{k}x{name}") })
        .collect::<Vec<_>>()
        .join(" + ")
}
