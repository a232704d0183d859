//! Covering numbers as exact set cover over subgroup families.
//!
//! A cover of `G` is a collection of proper subgroups whose union is `G`.
//! Restricting the members to a [`Family`] gives `σ`, `σ_A`, `σ_P` and
//! `σ_PE`. The solver is a deterministic branch-and-bound seeded with a
//! greedy upper bound.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::element_set::ElementSet;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::lattice::{enumerate_subgroups, is_powerful, is_powerfully_embedded, Lattice, Subgroup};
use crate::limits::Limits;

/// Which subgroups may appear in a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    All,
    Abelian,
    Powerful,
    PowerfullyEmbedded,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::All,
        Family::Abelian,
        Family::Powerful,
        Family::PowerfullyEmbedded,
    ];

    pub fn admits(self, s: &Subgroup) -> bool {
        match self {
            Family::All => true,
            Family::Abelian => s.is_abelian,
            Family::Powerful => s.is_powerful,
            Family::PowerfullyEmbedded => s.is_powerfully_embedded,
        }
    }

    /// Name of the covering number: `sigma`, `sigma_A`, `sigma_P`, `sigma_PE`.
    pub fn symbol(self) -> &'static str {
        match self {
            Family::All => "sigma",
            Family::Abelian => "sigma_A",
            Family::Powerful => "sigma_P",
            Family::PowerfullyEmbedded => "sigma_PE",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::All => "all",
            Family::Abelian => "abelian",
            Family::Powerful => "powerful",
            Family::PowerfullyEmbedded => "pe",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all" | "sigma" => Ok(Family::All),
            "abelian" | "a" | "sigma_a" => Ok(Family::Abelian),
            "powerful" | "p" | "sigma_p" => Ok(Family::Powerful),
            "pe" | "powerfully-embedded" | "powerfully_embedded" | "sigma_pe" => Ok(Family::PowerfullyEmbedded),
            other => Err(format!(
                "unknown family `{other}` (expected all, abelian, powerful or pe)"
            )),
        }
    }
}

/// A set-cover instance: cover `universe` with as few `candidates` as possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverInstance {
    pub family: Family,
    pub universe: ElementSet,
    pub candidates: Vec<ElementSet>,
    /// Lattice index of each candidate.
    pub provenance: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct CoverResult {
    pub family: Family,
    pub status: CoverStatus,
    /// The covering number, present iff `status` is `Optimal`.
    pub size: Option<usize>,
    /// Candidate indices of an optimal cover, ascending.
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl CoverResult {
    pub fn is_feasible(&self) -> bool {
        self.status == CoverStatus::Optimal
    }

    /// `"5"` or `"INF"`.
    pub fn value_string(&self) -> String {
        self.size.map_or_else(|| "INF".to_string(), |s| s.to_string())
    }
}

/// Proper subgroups admitted by `family`, minus any contained in another
/// admitted subgroup. Candidates keep lattice order (ascending size).
pub fn build_instance(g: &FiniteGroup, lattice: &Lattice, family: Family) -> CoverInstance {
    let admitted: Vec<(usize, &Subgroup)> = lattice
        .subgroups
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_proper && family.admits(s))
        .collect();
    let (provenance, candidates) = admitted
        .iter()
        .filter(|(_, s)| {
            !admitted
                .iter()
                .any(|(_, t)| t.order > s.order && s.elements.is_subset(&t.elements))
        })
        .map(|(i, s)| (*i, s.elements))
        .unzip();
    CoverInstance {
        family,
        universe: g.full_set(),
        candidates,
        provenance,
    }
}

fn union_of(inst: &CoverInstance) -> ElementSet {
    inst.candidates
        .iter()
        .fold(ElementSet::empty(inst.universe.universe_len()), |acc, c| acc.union(c))
}

/// Largest-gain-first greedy cover; ties go to the lower index. `None` when
/// the candidates cannot cover the universe.
pub fn solve_greedy(inst: &CoverInstance) -> Option<(usize, Vec<usize>)> {
    if !inst.universe.is_subset(&union_of(inst)) {
        return None;
    }
    let mut uncovered = inst.universe;
    let mut picked = Vec::new();
    while !uncovered.is_empty() {
        let (best, _) = inst
            .candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.intersection_len(&uncovered)))
            .fold(
                (usize::MAX, 0),
                |acc, (i, gain)| if gain > acc.1 { (i, gain) } else { acc },
            );
        uncovered = uncovered.difference(&inst.candidates[best]);
        picked.push(best);
    }
    Some((picked.len(), picked))
}

struct Search<'a> {
    candidates: &'a [ElementSet],
    /// For each element, the candidates containing it, largest first.
    containing: Vec<Vec<usize>>,
    best_size: usize,
    best: Vec<usize>,
    /// Until the search finds its own solution, solutions as large as the
    /// greedy bound are still accepted, so the reported witness is the first
    /// optimum in search order rather than the greedy one.
    best_from_search: bool,
    chosen: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn exceeds_bound(&self, size: usize) -> bool {
        size > self.best_size || (size == self.best_size && self.best_from_search)
    }

    fn run(&mut self, uncovered: ElementSet) {
        self.nodes += 1;
        if uncovered.is_empty() {
            if !self.exceeds_bound(self.chosen.len()) {
                self.best_size = self.chosen.len();
                self.best = self.chosen.clone();
                self.best_from_search = true;
            }
            return;
        }
        let max_gain = self
            .candidates
            .iter()
            .map(|c| c.intersection_len(&uncovered))
            .max()
            .unwrap_or(0);
        if max_gain == 0 {
            return;
        }
        let lower = uncovered.len().div_ceil(max_gain);
        if self.exceeds_bound(self.chosen.len() + lower) {
            return;
        }
        let pivot = uncovered.iter().min_by_key(|&e| (self.containing[e].len(), e)).unwrap();
        for k in 0..self.containing[pivot].len() {
            let c = self.containing[pivot][k];
            self.chosen.push(c);
            self.run(uncovered.difference(&self.candidates[c]));
            self.chosen.pop();
        }
    }
}

/// Minimum-size cover by branch-and-bound.
///
/// Branches on the uncovered element lying in the fewest candidates, trying
/// candidates by descending size and then ascending index. Prunes with the
/// incumbent and with `ceil(uncovered / max gain)`. Identical instances give
/// identical witnesses.
pub fn solve_exact(inst: &CoverInstance) -> CoverResult {
    let start = Instant::now();
    let infeasible = |nodes| CoverResult {
        family: inst.family,
        status: CoverStatus::Infeasible,
        size: None,
        witness: Vec::new(),
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    };
    let Some((greedy_size, greedy)) = solve_greedy(inst) else {
        return infeasible(0);
    };

    let n = inst.universe.universe_len();
    let mut containing = vec![Vec::new(); n];
    for (i, c) in inst.candidates.iter().enumerate() {
        for e in c.iter() {
            containing[e].push(i);
        }
    }
    for list in &mut containing {
        list.sort_by_key(|&i| (std::cmp::Reverse(inst.candidates[i].len()), i));
    }

    let mut search = Search {
        candidates: &inst.candidates,
        containing,
        best_size: greedy_size,
        best: greedy,
        best_from_search: false,
        chosen: Vec::new(),
        nodes: 0,
    };
    search.run(inst.universe);
    let mut witness = search.best;
    witness.sort_unstable();
    CoverResult {
        family: inst.family,
        status: CoverStatus::Optimal,
        size: Some(search.best_size),
        witness,
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
    }
}

/// Enumerates the lattice, builds the instance and solves it exactly.
pub fn covering_number(g: &FiniteGroup, family: Family, limits: &Limits) -> Result<CoverResult> {
    let lattice = enumerate_subgroups(g, limits)?;
    Ok(covering_number_with(g, &lattice, family))
}

pub fn covering_number_with(g: &FiniteGroup, lattice: &Lattice, family: Family) -> CoverResult {
    solve_exact(&build_instance(g, lattice, family))
}

/// Checks a claimed cover from scratch, without consulting any lattice:
/// every member must be a proper subgroup in `family` and the union must
/// be all of `g`.
pub fn verify_witness(g: &FiniteGroup, family: Family, witness: &[ElementSet]) -> bool {
    let n = g.order();
    let mut union = ElementSet::empty(n);
    for w in witness {
        if w.universe_len() != n || !g.is_subgroup(w) || w.len() == n {
            return false;
        }
        let admitted = match family {
            Family::All => true,
            Family::Abelian => {
                let elems: Vec<usize> = w.iter().collect();
                elems.iter().all(|&a| elems.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            }
            Family::Powerful => is_powerful(g, w).unwrap_or(false),
            Family::PowerfullyEmbedded => is_powerfully_embedded(g, w).unwrap_or(false),
        };
        if !admitted {
            return false;
        }
        union = union.union(w);
    }
    union.is_full()
}
