//! Finite groups as Cayley tables, their subgroup lattices, and exact
//! covering numbers by restricted subgroup families.
//!
//! The covering number `σ(G)` is the fewest proper subgroups whose union is
//! `G`. Restricting members to abelian, powerful or powerfully embedded
//! subgroups gives `σ_A`, `σ_P` and `σ_PE`; see [`cover::Family`].

pub mod cover;
pub mod dihedral;
pub mod element_set;
pub mod error;
pub mod families;
pub mod group;
pub mod io;
pub mod lattice;
pub mod limits;

pub use cover::{
    build_instance, covering_number, covering_number_with, solve_exact, solve_greedy, verify_witness, CoverInstance,
    CoverResult, CoverStatus, Family,
};
pub use element_set::{ElementSet, MAX_ORDER};
pub use error::{GroupError, Result};
pub use families::{build_group, GroupDescriptor};
pub use group::{direct_product, FiniteGroup, QuotientGroup};
pub use lattice::{
    classify_small, enumerate_subgroups, is_powerful, is_powerfully_embedded, maximal_subgroups, Lattice, SmallType,
    Subgroup,
};
pub use limits::Limits;

#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
