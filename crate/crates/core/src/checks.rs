//! Exhaustive property suites over all ground sets `[1] … [n]`, shared by the
//! `check` CLI command and the acceptance tests.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::decomposition::verify::{lemma_ind_sweep, LemmaCase};
use crate::error::{Error, Result};
use crate::matching::{greedy_lex_matching, index, index_by_psi, phi, psi};
use crate::subsets::{GroundSet, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// `φ∘ψ = id`, `ψ∘φ = id`, and `Im ψ = dom φ`.
    Inverse,
    /// `index = index_by_psi` for all `G ⊆ M`.
    IndexEq,
    /// The index lemma over all admissible triples.
    LemmaInd,
    /// The greedy lexicographic matching against the closed form of `ψ`.
    Greedy,
}

impl CheckKind {
    pub const ALL: [CheckKind; 4] = [CheckKind::Inverse, CheckKind::IndexEq, CheckKind::LemmaInd, CheckKind::Greedy];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Inverse => "inverse",
            CheckKind::IndexEq => "index-eq",
            CheckKind::LemmaInd => "lemma-ind",
            CheckKind::Greedy => "greedy",
        }
    }

    /// Largest `n` the suite is meant to be run at by default.
    pub fn default_limit(self) -> usize {
        match self {
            CheckKind::Inverse => 14,
            CheckKind::IndexEq => 10,
            CheckKind::LemmaInd => 9,
            CheckKind::Greedy => 12,
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Parse {
            input: s.into(),
            reason: "expected inverse, index-eq, lemma-ind or greedy".into(),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub max_n: usize,
    pub cases: u64,
    pub counterexamples: Vec<String>,
    /// Informational findings that are not counterexamples.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "check {} (n <= {}): {} cases, {} counterexamples",
            self.name,
            self.max_n,
            self.cases,
            self.counterexamples.len()
        )?;
        for c in &self.counterexamples {
            writeln!(f, "  counterexample: {c}")?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

pub fn run_check(kind: CheckKind, max_n: usize) -> Result<CheckReport> {
    GroundSet::new(max_n)?;
    let mut report = CheckReport { name: kind.name().into(), max_n, ..Default::default() };
    for n in 1..=max_n {
        let ground = GroundSet::new(n)?;
        match kind {
            CheckKind::Inverse => check_inverse(ground, &mut report),
            CheckKind::IndexEq => check_index_eq(ground, &mut report)?,
            CheckKind::LemmaInd => check_lemma(ground, &mut report)?,
            CheckKind::Greedy => check_greedy(ground, &mut report)?,
        }
    }
    Ok(report)
}

fn check_inverse(ground: GroundSet, report: &mut CheckReport) {
    let image: HashSet<Subset> = ground.power_set().filter_map(|g| psi(&g).map(|m| m.value)).collect();
    for g in ground.power_set() {
        report.cases += 1;
        if let Some(down) = psi(&g) {
            let back = phi(&down.value).map(|m| m.value);
            if back != Some(g) {
                report.counterexamples.push(format!("n={}: φ(ψ({g})) = {back:?}", ground.n()));
            }
        }
        if let Some(up) = phi(&g) {
            let back = psi(&up.value).map(|m| m.value);
            if back != Some(g) {
                report.counterexamples.push(format!("n={}: ψ(φ({g})) = {back:?}", ground.n()));
            }
        }
        if image.contains(&g) != phi(&g).is_some() {
            report.counterexamples.push(format!(
                "n={}: {g} in image of ψ: {}, φ defined: {}",
                ground.n(),
                image.contains(&g),
                phi(&g).is_some()
            ));
        }
    }
}

fn check_index_eq(ground: GroundSet, report: &mut CheckReport) -> Result<()> {
    let supports: Vec<Subset> = ground.power_set().collect();
    let per_support: Vec<Result<(u64, Vec<String>)>> = supports
        .par_iter()
        .map(|m| {
            let mut bad = Vec::new();
            let mut cases = 0;
            for g in m.subsets() {
                cases += 1;
                let fast = index(&g, m)?;
                let slow = index_by_psi(&g, m)?;
                if fast != slow {
                    bad.push(format!("n={}: ind_{m}({g}) via φ = {fast}, via ψ = {slow}", ground.n()));
                }
            }
            Ok((cases, bad))
        })
        .collect();
    for r in per_support {
        let (cases, bad) = r?;
        report.cases += cases;
        report.counterexamples.extend(bad);
    }
    Ok(())
}

fn check_lemma(ground: GroundSet, report: &mut CheckReport) -> Result<()> {
    let sweep = lemma_ind_sweep(ground.n())?;
    report.cases += sweep.admissible;
    report.notes.push(format!(
        "n={}: {} admissible triples of {} ({} with α̃(G) >= 0, {} with α̃(G) < 0)",
        ground.n(),
        sweep.admissible,
        sweep.triples,
        sweep.non_negative_case,
        sweep.negative_case
    ));
    if ground.n() % 2 == 1 && ground.n() > 1 && sweep.negative_case == 0 {
        report.counterexamples.push(format!("n={}: no instance of the α̃(G) < 0 case found", ground.n()));
    }
    let outside_pattern = sweep
        .failures
        .iter()
        .filter(|f| !(f.case == LemmaCase::Negative && f.h.contains(1) && f.index_g % 2 == 1))
        .count();
    if !sweep.failures.is_empty() {
        report.notes.push(format!(
            "n={}: {} failures, {} outside the pattern α̃(G) < 0, 1 ∈ H, ind_M(G) odd",
            ground.n(),
            sweep.failures.len(),
            outside_pattern
        ));
    }
    for f in sweep.failures {
        report.counterexamples.push(format!(
            "n={}: M={} G={} H={} {:?}: ind(G)={} ind(H)={}",
            ground.n(),
            f.support,
            f.g,
            f.h,
            f.case,
            f.index_g,
            f.index_h
        ));
    }
    Ok(())
}

/// Level `l + 1 → l` mismatches between the greedy matching and `ψ`.
pub fn greedy_mismatches(ground: GroundSet, l: usize) -> Result<(u64, Vec<String>)> {
    let assignments = greedy_lex_matching(ground, l)?;
    let mut bad = Vec::new();
    for (set, chosen) in &assignments {
        let closed = psi(set).map(|m| m.value);
        if *chosen != closed {
            let show = |s: Option<Subset>| s.map_or_else(|| "undefined".to_string(), |s| s.to_string());
            bad.push(format!("n={}: {set} greedy -> {}, ψ -> {}", ground.n(), show(*chosen), show(closed)));
        }
    }
    Ok((assignments.len() as u64, bad))
}

fn check_greedy(ground: GroundSet, report: &mut CheckReport) -> Result<()> {
    let n = ground.n();
    let threshold = (n + 2) / 2;
    let mut low_mismatch_levels = Vec::new();
    for l in 0..n {
        let (cases, bad) = greedy_mismatches(ground, l)?;
        report.cases += cases;
        if l + 1 >= threshold {
            report.counterexamples.extend(bad);
        } else if !bad.is_empty() {
            low_mismatch_levels.push(format!("{}->{} ({} sets)", l + 1, l, bad.len()));
        }
    }
    if low_mismatch_levels.is_empty() {
        report.notes.push(format!("n={n}: greedy and ψ also agree on every level below {threshold}"));
    } else {
        report
            .notes
            .push(format!("n={n}: below level {threshold} greedy and ψ differ on {}", low_mismatch_levels.join(", ")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_kind() {
        assert_eq!("lemma-ind".parse::<CheckKind>(), Ok(CheckKind::LemmaInd));
        assert!("nope".parse::<CheckKind>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        for kind in [CheckKind::Inverse, CheckKind::IndexEq, CheckKind::Greedy] {
            let r = run_check(kind, 6).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn lemma_check_reports_negative_case_counterexamples() {
        let r = run_check(CheckKind::LemmaInd, 5).unwrap();
        assert!(!r.passed());
        assert!(r.counterexamples.iter().any(|c| c.contains("n=3: M={1,2,3} G={3} H={1}")));
        assert!(r.notes.iter().any(|n| n.contains("0 outside the pattern")));
    }
}
