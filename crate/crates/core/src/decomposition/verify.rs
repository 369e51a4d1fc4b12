//! Exhaustive verification of the decomposition: dimension counts, the
//! triangle condition with ranks for every support, and the index lemma
//! behind the triangle condition.

use std::fmt;

use rayon::prelude::*;

use super::{build_decomposition, family_g, rank::rank_full, sign_matrix, triangle_check, Decomposition};
use crate::error::Result;
use crate::koszul::{binomial, dim_oracle, Multidegree};
use crate::matching::{alpha_tilde, index, psi_tilde};
use crate::subsets::{squashed_less, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbertMode {
    /// Every squarefree multidegree `χ_M`, `M ≠ ∅`.
    Squarefree,
    /// Every multidegree in `{0..=d}^n`.
    Box(u32),
}

impl fmt::Display for HilbertMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HilbertMode::Squarefree => f.write_str("squarefree"),
            HilbertMode::Box(d) => write!(f, "box(d={d})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFailure {
    pub degree: Multidegree,
    pub contributing: usize,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertReport {
    pub n: usize,
    pub k: usize,
    pub mode: HilbertMode,
    pub checked: usize,
    pub failures: Vec<HilbertFailure>,
}

impl HilbertReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the number of contributing summands with `dim M(n,k)_m` for
/// each multidegree of the chosen mode.
pub fn verify_hilbert(decomp: &Decomposition, mode: HilbertMode) -> Result<HilbertReport> {
    let ground = decomp.ground();
    let degrees: Vec<Multidegree> = match mode {
        HilbertMode::Squarefree => {
            ground.power_set().filter(|m| !m.is_empty()).map(|m| Multidegree::of_subset(&m)).collect()
        }
        HilbertMode::Box(d) => Multidegree::box_iter(ground, d).collect(),
    };
    let outcomes: Vec<Result<Option<HilbertFailure>>> = degrees
        .par_iter()
        .map(|m| {
            let contributing = decomp.contributing(m).count();
            let expected = dim_oracle(decomp.n, decomp.k, m)?;
            Ok((contributing as u64 != expected).then(|| HilbertFailure { degree: m.clone(), contributing, expected }))
        })
        .collect();
    let mut failures = Vec::new();
    for outcome in outcomes {
        if let Some(f) = outcome? {
            failures.push(f);
        }
    }
    Ok(HilbertReport { n: decomp.n, k: decomp.k, mode, checked: degrees.len(), failures })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StanleyOptions {
    pub check_rank: bool,
    pub box_depth: Option<u32>,
}

impl Default for StanleyOptions {
    fn default() -> Self {
        StanleyOptions { check_rank: true, box_depth: None }
    }
}

/// A failed check for one support `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFailure {
    pub support: Subset,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleyReport {
    pub n: usize,
    pub k: usize,
    pub summands: usize,
    pub hilbert: HilbertReport,
    pub box_hilbert: Option<HilbertReport>,
    pub supports_checked: usize,
    pub ranks_checked: usize,
    pub failures: Vec<SupportFailure>,
    /// `min |Z_S|`.
    pub depth: usize,
    /// Number of summands with `|Z_S| = n − 1`.
    pub deficient_summands: usize,
}

impl StanleyReport {
    pub fn passed(&self) -> bool {
        self.hilbert.passed()
            && self.box_hilbert.as_ref().is_none_or(HilbertReport::passed)
            && self.failures.is_empty()
            && self.depth + 1 == self.n
            && self.deficient_summands > 0
    }
}

impl fmt::Display for StanleyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(f, "M({},{}): {} summands", self.n, self.k, self.summands)?;
        writeln!(
            f,
            "  hilbert {}: {} multidegrees, {} failures [{}]",
            self.hilbert.mode,
            self.hilbert.checked,
            self.hilbert.failures.len(),
            verdict(self.hilbert.passed())
        )?;
        for fail in &self.hilbert.failures {
            writeln!(f, "    m={} contributing={} dim={}", fail.degree, fail.contributing, fail.expected)?;
        }
        if let Some(b) = &self.box_hilbert {
            writeln!(
                f,
                "  hilbert {}: {} multidegrees, {} failures [{}]",
                b.mode,
                b.checked,
                b.failures.len(),
                verdict(b.passed())
            )?;
            for fail in &b.failures {
                writeln!(f, "    m={} contributing={} dim={}", fail.degree, fail.contributing, fail.expected)?;
            }
        }
        writeln!(
            f,
            "  supports: {} checked (triangle + family size), {} rank checks, {} failures [{}]",
            self.supports_checked,
            self.ranks_checked,
            self.failures.len(),
            verdict(self.failures.is_empty())
        )?;
        for fail in &self.failures {
            writeln!(f, "    M={}: {}", fail.support, fail.reason)?;
        }
        writeln!(
            f,
            "  depth: min |Z_S| = {} ({} summands with |Z_S| = n-1) [{}]",
            self.depth,
            self.deficient_summands,
            verdict(self.depth + 1 == self.n && self.deficient_summands > 0)
        )?;
        if self.passed() {
            write!(
                f,
                "  sdepth M({n},{k}) >= {d} verified; = {d} by the upper bound hdepth M(n,k) <= n-1 \
                 of Bruns-Krattenthaler-Uliczka (cited, not verified here)",
                n = self.n,
                k = self.k,
                d = self.n - 1
            )
        } else {
            write!(f, "  verification FAILED")
        }
    }
}

/// Family size, triangle condition and (optionally) rank for one support.
/// Returns whether a rank was computed and every failure found.
fn check_support(decomp: &Decomposition, support: &Subset, check_rank: bool) -> (bool, Vec<String>) {
    let family = match family_g(decomp, support) {
        Ok(f) => f,
        Err(e) => return (false, vec![e.to_string()]),
    };
    let mut reasons = Vec::new();
    let expected = binomial(support.len() as u64 - 1, decomp.k as u64 - 1);
    if family.len() as u64 != expected {
        reasons.push(format!("family has {} members, expected {expected}", family.len()));
    }
    if let Some(v) = triangle_check(&family).violation {
        reasons.push(format!("triangle condition fails: ψ̃({}) = {} ⊆ {}", v.set, v.distinguished, v.earlier));
    }
    if check_rank && !rank_full(&sign_matrix(&family).entries) {
        reasons.push("sign matrix is not of full row rank".into());
    }
    (check_rank, reasons)
}

/// The full Stanley check for one `(n, k)`.
pub fn verify_stanley(n: usize, k: usize, options: StanleyOptions) -> Result<StanleyReport> {
    let decomp = build_decomposition(n, k)?;
    let hilbert = verify_hilbert(&decomp, HilbertMode::Squarefree)?;
    let box_hilbert = options.box_depth.map(|d| verify_hilbert(&decomp, HilbertMode::Box(d))).transpose()?;
    let supports: Vec<Subset> = decomp.ground().power_set().filter(|m| m.len() >= k).collect();
    let outcomes: Vec<(bool, Vec<String>)> =
        supports.par_iter().map(|m| check_support(&decomp, m, options.check_rank)).collect();
    let ranks_checked = outcomes.iter().filter(|(ranked, _)| *ranked).count();
    let failures = supports
        .iter()
        .zip(outcomes)
        .flat_map(|(m, (_, reasons))| reasons.into_iter().map(move |reason| SupportFailure { support: *m, reason }))
        .collect();
    let depth = decomp.depth();
    let deficient_summands = decomp.summands.iter().filter(|s| s.free_vars.len() + 1 == n).count();
    Ok(StanleyReport {
        n,
        k,
        summands: decomp.summands.len(),
        hilbert,
        box_hilbert,
        supports_checked: supports.len(),
        ranks_checked,
        failures,
        depth,
        deficient_summands,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaCase {
    /// `α̃(G) ≥ 0`: `ind_M(H) = ind_M(G) + 1`.
    NonNegative,
    /// `α̃(G) < 0`: `ind_M(H) = 1`.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaOutcome {
    /// The triple does not satisfy the hypotheses.
    Skipped,
    Holds(LemmaCase),
    Fails {
        case: LemmaCase,
        index_g: u32,
        index_h: u32,
    },
}

/// For `G, H ⊆ M` with `|G| = |H| ≥ ⌊n/2⌋`, `H ≺ G` and `ψ̃(G) ⊂ H`, checks
/// the index relation between `G` and `H`.
pub fn lemma_ind_check(support: &Subset, g: &Subset, h: &Subset) -> LemmaOutcome {
    let n = support.n();
    if !g.is_subset(support) || !h.is_subset(support) || g.len() != h.len() || g.is_empty() || g.len() < n / 2 {
        return LemmaOutcome::Skipped;
    }
    if !squashed_less(h, g).unwrap_or(false) {
        return LemmaOutcome::Skipped;
    }
    let Ok(distinguished) = psi_tilde(g) else {
        return LemmaOutcome::Skipped;
    };
    if !distinguished.value.is_subset(h) {
        return LemmaOutcome::Skipped;
    }
    let index_g = index(g, support).expect("G ⊆ M checked above");
    let index_h = index(h, support).expect("H ⊆ M checked above");
    let case = if alpha_tilde(g).expect("G non-empty") >= 0 { LemmaCase::NonNegative } else { LemmaCase::Negative };
    let holds = match case {
        LemmaCase::NonNegative => index_h == index_g + 1,
        LemmaCase::Negative => index_h == 1,
    };
    if holds {
        LemmaOutcome::Holds(case)
    } else {
        LemmaOutcome::Fails { case, index_g, index_h }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaFailure {
    pub support: Subset,
    pub g: Subset,
    pub h: Subset,
    pub case: LemmaCase,
    pub index_g: u32,
    pub index_h: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub n: usize,
    pub triples: u64,
    pub admissible: u64,
    pub non_negative_case: u64,
    pub negative_case: u64,
    pub failures: Vec<LemmaFailure>,
}

/// Runs [`lemma_ind_check`] on every triple `(M, G, H)` over `[n]`.
pub fn lemma_ind_sweep(n: usize) -> Result<LemmaReport> {
    let ground = crate::subsets::GroundSet::new(n)?;
    let supports: Vec<Subset> = ground.power_set().collect();
    let partial: Vec<LemmaReport> = supports
        .par_iter()
        .map(|m| {
            let mut r = LemmaReport { n, ..Default::default() };
            for size in (n / 2).max(1)..=m.len() {
                let level: Vec<Subset> = m.subsets_of_size(size).collect();
                for g in &level {
                    for h in &level {
                        r.triples += 1;
                        let outcome = lemma_ind_check(m, g, h);
                        let case = match outcome {
                            LemmaOutcome::Skipped => continue,
                            LemmaOutcome::Holds(case) | LemmaOutcome::Fails { case, .. } => case,
                        };
                        r.admissible += 1;
                        match case {
                            LemmaCase::NonNegative => r.non_negative_case += 1,
                            LemmaCase::Negative => r.negative_case += 1,
                        }
                        if let LemmaOutcome::Fails { index_g, index_h, .. } = outcome {
                            r.failures.push(LemmaFailure { support: *m, g: *g, h: *h, case, index_g, index_h });
                        }
                    }
                }
            }
            r
        })
        .collect();
    Ok(partial.into_iter().fold(LemmaReport { n, ..Default::default() }, |mut acc, r| {
        acc.triples += r.triples;
        acc.admissible += r.admissible;
        acc.non_negative_case += r.non_negative_case;
        acc.negative_case += r.negative_case;
        acc.failures.extend(r.failures);
        acc
    }))
}
