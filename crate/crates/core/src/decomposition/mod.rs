//! Hilbert and Stanley decompositions of the syzygy module `M(n,k)` for
//! `⌊n/2⌋ ≤ k < n`.
//!
//! Every set `S ⊆ [n]` with `|S| − k` even and non-negative yields one
//! summand `K[Z_S] · m_S`:
//!
//! * `Z_S` is all of `[n]`, unless `S = ψ(S ∪ {s})` for some `s`, in which
//!   case `s` is removed;
//! * `m_S = X^{S∖G} ∂(e_G)` with `G = ψ^{|S|−k}(S)`.
//!
//! The checks that make this a Stanley decomposition live in [`verify`].

pub mod rank;
pub mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::koszul::{boundary_sign_bits, generator_m, KoszulChain, Multidegree};
use crate::matching::{index_bits, phi, psi, psi_tilde};
use crate::subsets::{GroundSet, Subset};

/// Rejects `(n, k)` outside `max(1, ⌊n/2⌋) ≤ k < n`.
pub fn check_range(n: usize, k: usize) -> Result<GroundSet> {
    let ground = GroundSet::new(n)?;
    if k == 0 || k < n / 2 || k >= n {
        return Err(Error::OutOfRange { n, k });
    }
    Ok(ground)
}

/// Every `(n, k)` in range with `n <= max_n`, ordered by `n` then `k`.
pub fn valid_pairs(max_n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_n).flat_map(|n| (1.max(n / 2)..n).map(move |k| (n, k)))
}

/// The degrees `S` of the summands: all subsets of size `k, k+2, k+4, …`,
/// levels ascending, squashed order inside each level.
pub fn summand_sets(n: usize, k: usize) -> Result<Vec<Subset>> {
    let ground = check_range(n, k)?;
    Ok((k..=n).step_by(2).flat_map(|size| ground.level(size)).collect())
}

/// The free-variable set `Z_S` and the removed variable, found through `φ`:
/// `S` is a `ψ`-image iff `φ(S)` is defined, and then `s = μ(S) + 1`.
pub fn compute_z(set: &Subset) -> (Subset, Option<usize>) {
    let full = Subset::full(set.ground());
    match phi(set) {
        Some(m) => (full.without(m.pivot), Some(m.pivot)),
        None => (full, None),
    }
}

/// [`compute_z`] by direct search for `s ∉ S` with `ψ(S ∪ {s}) = S`.
pub fn compute_z_by_search(set: &Subset) -> (Subset, Option<usize>) {
    let full = Subset::full(set.ground());
    let removed = set.complement().elements().find(|&s| psi(&set.with(s)).map(|m| m.value) == Some(*set));
    match removed {
        Some(s) => (full.without(s), Some(s)),
        None => (full, None),
    }
}

/// `ψ^{steps}(set)`, failing loudly if an intermediate value is undefined.
pub fn iterate_psi(set: &Subset, steps: usize) -> Result<Subset> {
    let mut cur = *set;
    for step in 0..steps {
        cur = psi(&cur)
            .ok_or_else(|| Error::Invariant(format!("ψ undefined at step {step} while iterating from {set}")))?
            .value;
    }
    Ok(cur)
}

/// One Stanley space `K[Z] · m` of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    /// The multidegree `S` (as a squarefree set).
    pub degree: Subset,
    /// `Z_S`.
    pub free_vars: Subset,
    pub removed: Option<usize>,
    /// `G(S) = ψ^{|S|−k}(S)`.
    pub generator: Subset,
    /// `m_S = X^{S∖G(S)} ∂(e_{G(S)})`.
    pub element: KoszulChain,
}

impl Summand {
    /// Whether `(K[Z_S] m_S)_m ≠ 0`: `m − χ_S ≥ 0` with support inside `Z_S`.
    pub fn contributes(&self, degree: &Multidegree) -> bool {
        if degree.ground() != self.degree.ground() {
            return false;
        }
        match degree.minus_subset(&self.degree) {
            Some(rest) => rest.support().is_subset(&self.free_vars),
            None => false,
        }
    }

    /// [`Summand::contributes`] for the squarefree multidegree `χ_support`.
    pub fn contributes_squarefree(&self, support: &Subset) -> bool {
        self.degree.n() == support.n()
            && self.degree.bits() & !support.bits() == 0
            && support.bits() & !self.free_vars.bits() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub k: usize,
    pub summands: Vec<Summand>,
}

pub fn build_decomposition(n: usize, k: usize) -> Result<Decomposition> {
    let summands = summand_sets(n, k)?
        .into_iter()
        .map(|degree| {
            let (free_vars, removed) = compute_z(&degree);
            let generator = iterate_psi(&degree, degree.len() - k)?;
            let element = generator_m(&degree, &generator)?;
            Ok(Summand { degree, free_vars, removed, generator, element })
        })
        .collect::<Result<_>>()?;
    Ok(Decomposition { n, k, summands })
}

impl Decomposition {
    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.n).expect("decomposition built from a valid ground set")
    }

    /// `min |Z_S|`, the depth of the decomposition.
    pub fn depth(&self) -> usize {
        self.summands.iter().map(|s| s.free_vars.len()).min().unwrap_or(self.n)
    }

    pub fn contributing(&self, degree: &Multidegree) -> impl Iterator<Item = &Summand> + '_ {
        let degree = degree.clone();
        self.summands.iter().filter(move |s| s.contributes(&degree))
    }

    pub fn to_record(&self) -> DecompositionRecord {
        DecompositionRecord {
            n: self.n,
            k: self.k,
            summands: self
                .summands
                .iter()
                .map(|s| SummandRecord {
                    degree: s.degree.to_vec(),
                    free_vars: s.free_vars.to_vec(),
                    removed: s.removed,
                    generator: s.generator.to_vec(),
                    element: s.element.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("records always serialize")
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "M({},{}): {} summands, depth {}", self.n, self.k, self.summands.len(), self.depth())?;
        for s in &self.summands {
            let removed = s.removed.map_or_else(|| "-".to_string(), |r| r.to_string());
            writeln!(f, "S={} Z={} removed={} G={} m={}", s.degree, s.free_vars, removed, s.generator, s.element)?;
        }
        Ok(())
    }
}

/// Serialized form: `{n, k, summands: [{S, Z, removed, G, m}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub n: usize,
    pub k: usize,
    pub summands: Vec<SummandRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandRecord {
    #[serde(rename = "S")]
    pub degree: Vec<usize>,
    #[serde(rename = "Z")]
    pub free_vars: Vec<usize>,
    pub removed: Option<usize>,
    #[serde(rename = "G")]
    pub generator: Vec<usize>,
    #[serde(rename = "m")]
    pub element: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyMember {
    pub set: Subset,
    pub index: u32,
}

/// `𝒢(M)`: the generators of the summands contributing in any multidegree
/// with support `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributionFamily {
    pub support: Subset,
    pub k: usize,
    /// Checked in this order by [`triangle_check`]; `family_g` returns them
    /// ascending in squashed order.
    pub members: Vec<FamilyMember>,
}

impl ContributionFamily {
    pub fn sets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().map(|m| m.set)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `{G(S) : S contributes in degree χ_M}`, read off the decomposition.
pub fn family_from_summands(decomp: &Decomposition, support: &Subset) -> Vec<Subset> {
    let mut sets: Vec<Subset> =
        decomp.summands.iter().filter(|s| s.contributes_squarefree(support)).map(|s| s.generator).collect();
    sets.sort();
    sets
}

/// `{G ∈ C(M, k) : ind_M(G) even}` with the indices.
pub fn family_by_index(support: &Subset, k: usize) -> Vec<FamilyMember> {
    let n = support.n();
    support
        .subsets_of_size(k)
        .map(|set| FamilyMember { set, index: index_bits(n, set.bits(), support.bits()) })
        .filter(|m| m.index % 2 == 0)
        .collect()
}

/// `𝒢(M)` computed from the summands and from index parity, failing if the
/// two disagree.
pub fn family_g(decomp: &Decomposition, support: &Subset) -> Result<ContributionFamily> {
    if support.n() != decomp.n {
        return Err(Error::GroundMismatch { left: decomp.n, right: support.n() });
    }
    if support.len() < decomp.k {
        return Err(Error::InvalidArgument(format!("support {support} has fewer than k = {} elements", decomp.k)));
    }
    let from_summands = family_from_summands(decomp, support);
    let members = family_by_index(support, decomp.k);
    if !from_summands.iter().copied().eq(members.iter().map(|m| m.set)) {
        return Err(Error::Invariant(format!(
            "family of {support} differs: summands give {from_summands:?}, index parity gives {:?}",
            members.iter().map(|m| m.set).collect::<Vec<_>>()
        )));
    }
    Ok(ContributionFamily { support: *support, k: decomp.k, members })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleViolation {
    pub set: Subset,
    pub distinguished: Subset,
    pub earlier: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleReport {
    /// `ψ̃(G)` for each member, in family order.
    pub distinguished: Vec<Subset>,
    pub violation: Option<TriangleViolation>,
}

impl TriangleReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that each member's `ψ̃(G)` lies in no earlier member, in the
/// order the members are listed.
pub fn triangle_check(family: &ContributionFamily) -> TriangleReport {
    let mut distinguished = Vec::with_capacity(family.len());
    let mut violation = None;
    for (i, member) in family.members.iter().enumerate() {
        let t = match psi_tilde(&member.set) {
            Ok(m) => m.value,
            Err(_) => {
                // Empty member: no (k−1)-subset exists at all.
                violation.get_or_insert(TriangleViolation {
                    set: member.set,
                    distinguished: member.set,
                    earlier: member.set,
                });
                distinguished.push(member.set);
                continue;
            }
        };
        distinguished.push(t);
        if violation.is_none() {
            if let Some(h) = family.members[..i].iter().find(|h| t.is_subset(&h.set)) {
                violation = Some(TriangleViolation { set: member.set, distinguished: t, earlier: h.set });
            }
        }
    }
    TriangleReport { distinguished, violation }
}

/// Coefficients of `∂(e_G)` for the members `G` of a family, over all
/// `(k−1)`-subsets of the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    pub rows: Vec<Subset>,
    pub cols: Vec<Subset>,
    pub entries: Vec<Vec<i64>>,
}

pub fn sign_matrix(family: &ContributionFamily) -> SignMatrix {
    let rows: Vec<Subset> = family.sets().collect();
    let cols: Vec<Subset> = match family.k {
        0 => Vec::new(),
        k => family.support.subsets_of_size(k - 1).collect(),
    };
    let entries = rows
        .iter()
        .map(|r| cols.iter().map(|c| boundary_sign_bits(r.bits(), c.bits()).map_or(0, |(s, _)| s as i64)).collect())
        .collect();
    SignMatrix { rows, cols, entries }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.cols.iter().map(|c| c.to_compact_string().len().max(1)).max().unwrap_or(1).max(2);
        let label = self.rows.iter().map(|r| r.to_compact_string().len()).max().unwrap_or(0);
        write!(f, "{:label$}", "")?;
        for c in &self.cols {
            let name = if c.is_empty() { "∅".to_string() } else { c.to_compact_string() };
            write!(f, " {name:>width$}")?;
        }
        writeln!(f)?;
        for (r, row) in self.rows.iter().zip(&self.entries) {
            write!(f, "{:>label$}", r.to_compact_string())?;
            for v in row {
                let cell = match v {
                    0 => ".".to_string(),
                    1 => "+".to_string(),
                    -1 => "-".to_string(),
                    v => v.to_string(),
                };
                write!(f, " {cell:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, elems: &[usize]) -> Subset {
        Subset::new(GroundSet::new(n).unwrap(), elems.iter().copied()).unwrap()
    }

    fn compact(sets: &[Subset]) -> Vec<String> {
        sets.iter().map(|s| if s.is_empty() { "∅".into() } else { s.to_compact_string() }).collect()
    }

    #[test]
    fn range_guard() {
        assert!(check_range(3, 1).is_ok());
        assert!(check_range(2, 1).is_ok());
        assert!(matches!(check_range(4, 1), Err(Error::OutOfRange { .. })));
        assert!(matches!(check_range(4, 4), Err(Error::OutOfRange { .. })));
        assert!(matches!(check_range(1, 0), Err(Error::OutOfRange { .. })));
        assert_eq!(valid_pairs(4).collect::<Vec<_>>(), vec![(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)]);
    }

    #[test]
    fn summand_set_examples() {
        assert_eq!(compact(&summand_sets(3, 1).unwrap()), vec!["1", "2", "3", "123"]);
        assert_eq!(compact(&summand_sets(2, 1).unwrap()), vec!["1", "2"]);
        let s = summand_sets(7, 3).unwrap();
        assert_eq!(s.len(), 57);
        assert_eq!(s.iter().filter(|s| s.len() == 3).count(), 35);
        assert_eq!(s.iter().filter(|s| s.len() == 5).count(), 21);
        assert!(summand_sets(4, 1).is_err());
    }

    #[test]
    fn compute_z_examples() {
        assert_eq!(compute_z(&set(3, &[1])), (set(3, &[1, 3]), Some(2)));
        assert_eq!(compute_z(&set(3, &[3])), (set(3, &[2, 3]), Some(1)));
        assert_eq!(compute_z(&set(3, &[1, 2, 3])), (set(3, &[1, 2, 3]), None));
        for n in 1..=10 {
            for s in GroundSet::new(n).unwrap().power_set() {
                assert_eq!(compute_z(&s), compute_z_by_search(&s));
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let d = build_decomposition(3, 1).unwrap();
        let got: Vec<_> = d.summands.iter().map(|s| (s.degree, s.free_vars, s.generator)).collect();
        assert_eq!(
            got,
            vec![
                (set(3, &[1]), set(3, &[1, 3]), set(3, &[1])),
                (set(3, &[2]), set(3, &[1, 2]), set(3, &[2])),
                (set(3, &[3]), set(3, &[2, 3]), set(3, &[3])),
                (set(3, &[1, 2, 3]), set(3, &[1, 2, 3]), set(3, &[1])),
            ]
        );
        assert_eq!(d.summands[3].element.to_string(), "+x1*x2*x3*e{}");
        assert_eq!(d.depth(), 2);

        let d = build_decomposition(7, 3).unwrap();
        let s = d.summands.iter().find(|s| s.degree == set(7, &[1, 2, 4, 5, 7])).unwrap();
        assert_eq!(s.generator, set(7, &[1, 4, 7]));

        let d = build_decomposition(2, 1).unwrap();
        let got: Vec<_> = d.summands.iter().map(|s| (s.degree, s.free_vars, s.removed)).collect();
        assert_eq!(got, vec![(set(2, &[1]), set(2, &[1]), Some(2)), (set(2, &[2]), set(2, &[1, 2]), None)]);
        assert_eq!(d.depth(), 1);
    }

    #[test]
    fn contributes_examples() {
        let d = build_decomposition(3, 1).unwrap();
        let md = |e: &[u32]| Multidegree::new(GroundSet::new(3).unwrap(), e.to_vec()).unwrap();
        let s2 = &d.summands[1];
        let s1 = &d.summands[0];
        assert!(s2.contributes(&md(&[1, 1, 0])));
        assert!(!s1.contributes(&md(&[1, 1, 0])));
        for s in &d.summands {
            assert!(s.contributes(&Multidegree::of_subset(&s.degree)));
        }
        for m in GroundSet::new(3).unwrap().power_set() {
            for s in &d.summands {
                assert_eq!(s.contributes(&Multidegree::of_subset(&m)), s.contributes_squarefree(&m));
            }
        }
    }

    #[test]
    fn worked_example_family() {
        let d = build_decomposition(7, 3).unwrap();
        let fam = family_g(&d, &set(7, &[1, 2, 4, 5, 7])).unwrap();
        let got: Vec<_> = fam.members.iter().map(|m| (m.set.to_compact_string(), m.index)).collect();
        let expected = [("125", 0), ("145", 0), ("245", 0), ("127", 0), ("147", 2), ("257", 0)];
        assert_eq!(got, expected.iter().map(|(s, i)| (s.to_string(), *i)).collect::<Vec<_>>());

        let report = triangle_check(&fam);
        assert!(report.passed());
        assert_eq!(compact(&report.distinguished), vec!["15", "45", "24", "17", "47", "57"]);

        let matrix = sign_matrix(&fam);
        assert_eq!((matrix.entries.len(), matrix.cols.len()), (6, 10));
        assert!(matrix.entries.iter().all(|row| row.iter().filter(|&&v| v != 0).count() == 3));
        assert!(rank::rank_full(&matrix.entries));
    }

    #[test]
    fn small_families() {
        let d = build_decomposition(3, 1).unwrap();
        let fam = family_g(&d, &set(3, &[1, 2, 3])).unwrap();
        assert_eq!(fam.members, vec![FamilyMember { set: set(3, &[1]), index: 2 }]);
        let m = sign_matrix(&fam);
        assert_eq!(m.cols, vec![set(3, &[])]);
        assert_eq!(m.entries, vec![vec![1]]);
        assert!(triangle_check(&fam).passed());

        let d = build_decomposition(7, 3).unwrap();
        let fam = family_g(&d, &set(7, &[2, 3, 6])).unwrap();
        assert_eq!(fam.members, vec![FamilyMember { set: set(7, &[2, 3, 6]), index: 0 }]);
        assert!(family_g(&d, &set(7, &[2, 3])).is_err());
    }

    #[test]
    fn triangle_violation_is_reported() {
        let fam = ContributionFamily {
            support: set(3, &[1, 2, 3]),
            k: 2,
            members: vec![
                FamilyMember { set: set(3, &[1, 3]), index: 0 },
                FamilyMember { set: set(3, &[1, 2]), index: 0 },
            ],
        };
        let report = triangle_check(&fam);
        assert_eq!(
            report.violation,
            Some(TriangleViolation { set: set(3, &[1, 2]), distinguished: set(3, &[1]), earlier: set(3, &[1, 3]) })
        );
    }

    #[test]
    fn json_shape() {
        let d = build_decomposition(3, 1).unwrap();
        let json = d.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["n"], 3);
        assert_eq!(value["k"], 1);
        assert_eq!(value["summands"][0]["S"], serde_json::json!([1]));
        assert_eq!(value["summands"][0]["Z"], serde_json::json!([1, 3]));
        assert_eq!(value["summands"][0]["removed"], 2);
        assert_eq!(value["summands"][3]["removed"], serde_json::Value::Null);
        assert_eq!(value["summands"][3]["G"], serde_json::json!([1]));
        assert_eq!(value["summands"][3]["m"], "+x1*x2*x3*e{}");
        let back: DecompositionRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d.to_record());
    }
}
