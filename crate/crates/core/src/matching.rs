//! The lexicographic matching `ψ` on the Boolean lattice, its inverse `φ`,
//! the always-defined variant `ψ̃`, and the index of a subset inside a
//! bigger set.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::subsets::{lex_cmp, GroundSet, PathScan, Subset};

/// A defined value of one of the matchings together with the element that
/// was removed (`ψ`, `ψ̃`) or inserted (`φ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Match {
    pub value: Subset,
    pub pivot: usize,
}

/// `ψ(G) = G \ {ν(G)}`, deleting the first global maximum of the lattice
/// path. Undefined (`None`) when that maximum is the sentinel position 0.
pub fn psi(set: &Subset) -> Option<Match> {
    let scan = PathScan::of(set.n(), set.bits());
    (scan.nu > 0).then(|| Match { value: set.without(scan.nu), pivot: scan.nu })
}

/// `φ(G) = G ∪ {μ(G) + 1}`, defined iff `μ(G) < n`.
pub fn phi(set: &Subset) -> Option<Match> {
    let scan = PathScan::of(set.n(), set.bits());
    (scan.mu < set.n()).then(|| Match { value: set.with(scan.mu + 1), pivot: scan.mu + 1 })
}

/// `ψ̃(G)`: like `ψ` but the maximum is taken over `G` alone, so it is
/// defined for every non-empty `G`. Not injective.
pub fn psi_tilde(set: &Subset) -> Result<Match> {
    let scan = PathScan::of(set.n(), set.bits());
    if scan.alpha_tilde.is_none() {
        return Err(Error::EmptySubset);
    }
    Ok(Match { value: set.without(scan.nu_tilde), pivot: scan.nu_tilde })
}

/// `α̃(G)`, the maximum height of the lattice path over positions in `G`.
pub fn alpha_tilde(set: &Subset) -> Result<i32> {
    PathScan::of(set.n(), set.bits()).alpha_tilde.ok_or(Error::EmptySubset)
}

#[inline]
pub(crate) fn psi_bits(n: usize, bits: u32) -> Option<u32> {
    let nu = PathScan::of(n, bits).nu;
    (nu > 0).then(|| bits & !(1 << (nu - 1)))
}

#[inline]
pub(crate) fn phi_bits(n: usize, bits: u32) -> Option<u32> {
    let mu = PathScan::of(n, bits).mu;
    (mu < n).then(|| bits | (1 << mu))
}

fn require_subset(set: &Subset, within: &Subset) -> Result<()> {
    if set.n() != within.n() {
        return Err(Error::GroundMismatch { left: set.n(), right: within.n() });
    }
    if !set.is_subset(within) {
        return Err(Error::NotSubset { sub: set.to_string(), sup: within.to_string() });
    }
    Ok(())
}

/// `ind_M(G)`: the largest `i` such that `φ^i(G)` is defined and contained
/// in `M`.
pub fn index(set: &Subset, within: &Subset) -> Result<u32> {
    require_subset(set, within)?;
    Ok(index_bits(set.n(), set.bits(), within.bits()))
}

pub(crate) fn index_bits(n: usize, mut bits: u32, within: u32) -> u32 {
    let mut i = 0;
    while let Some(next) = phi_bits(n, bits) {
        if next & !within != 0 {
            break;
        }
        bits = next;
        i += 1;
    }
    i
}

/// `ind_M(G)` from its defining form: the largest `i` with `ψ^i(M') = G` for
/// some `M' ⊆ M`. Enumerates every `M' ⊆ M`, so it costs `2^|M|` path scans;
/// meant as an oracle for [`index`].
pub fn index_by_psi(set: &Subset, within: &Subset) -> Result<u32> {
    require_subset(set, within)?;
    let n = set.n();
    let target = set.bits();
    let mut best = 0;
    for candidate in within.subsets() {
        let mut bits = candidate.bits();
        if bits & target != target {
            continue;
        }
        let mut steps = 0;
        loop {
            if bits == target {
                best = best.max(steps);
                break;
            }
            match psi_bits(n, bits) {
                Some(next) if next & target == target => {
                    bits = next;
                    steps += 1;
                }
                _ => break,
            }
        }
    }
    Ok(best)
}

/// The original greedy description of `ψ` between levels `l + 1` and `l`:
/// the `(l+1)`-sets are visited in lexicographic order and each takes the
/// lexicographically smallest `l`-subset not yet taken.
///
/// Returns every `(l+1)`-set in visiting order with its assigned `l`-set, or
/// `None` when all of its `l`-subsets were already used.
pub fn greedy_lex_matching(ground: GroundSet, l: usize) -> Result<Vec<(Subset, Option<Subset>)>> {
    if l >= ground.n() {
        return Err(Error::InvalidArgument(format!("level {l} must be below n = {}", ground.n())));
    }
    let mut upper: Vec<Subset> = ground.level(l + 1).collect();
    upper.sort_by(lex_cmp);
    let mut used = HashSet::new();
    let assignments = upper
        .into_iter()
        .map(|set| {
            let mut candidates: Vec<Subset> = set.elements().map(|e| set.without(e)).collect();
            candidates.sort_by(lex_cmp);
            let chosen = candidates.into_iter().find(|c| !used.contains(c));
            if let Some(c) = chosen {
                used.insert(c);
            }
            (set, chosen)
        })
        .collect();
    Ok(assignments)
}
