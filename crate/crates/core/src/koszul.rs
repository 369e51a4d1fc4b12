//! Multidegrees, the Koszul boundary map on wedge basis elements, the
//! generators `X^{S∖G} ∂(e_G)` of the syzygy modules, and an alternating-sum
//! formula for their graded dimensions.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::subsets::{GroundSet, Subset};

/// An exponent vector in `ℕ^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree {
    ground: GroundSet,
    exponents: Vec<u32>,
}

impl Multidegree {
    pub fn new(ground: GroundSet, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != ground.n() {
            return Err(Error::InvalidArgument(format!(
                "multidegree has {} entries, expected {}",
                exponents.len(),
                ground.n()
            )));
        }
        Ok(Multidegree { ground, exponents })
    }

    pub fn zero(ground: GroundSet) -> Self {
        Multidegree { ground, exponents: vec![0; ground.n()] }
    }

    /// The 0/1 vector of a subset.
    pub fn of_subset(set: &Subset) -> Self {
        let mut m = Multidegree::zero(set.ground());
        for e in set.elements() {
            m.exponents[e - 1] = 1;
        }
        m
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn support(&self) -> Subset {
        let bits = self.exponents.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u32, |acc, (i, _)| acc | (1 << i));
        Subset::from_bits_unchecked(self.ground.n(), bits)
    }

    pub fn total(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    /// `self + χ_set`.
    pub fn plus_subset(&self, set: &Subset) -> Self {
        let mut m = self.clone();
        for e in set.elements() {
            m.exponents[e - 1] += 1;
        }
        m
    }

    /// `self − χ_set`, or `None` if some coordinate would be negative.
    pub fn minus_subset(&self, set: &Subset) -> Option<Self> {
        let mut m = self.clone();
        for e in set.elements() {
            m.exponents[e - 1] = m.exponents[e - 1].checked_sub(1)?;
        }
        Some(m)
    }

    /// Every multidegree in the box `{0..=d}^n`, last coordinate fastest.
    pub fn box_iter(ground: GroundSet, d: u32) -> impl Iterator<Item = Multidegree> {
        let n = ground.n();
        let count = (d as u64 + 1).pow(n as u32);
        (0..count).map(move |mut code| {
            let mut exps = vec![0u32; n];
            for slot in exps.iter_mut().rev() {
                *slot = (code % (d as u64 + 1)) as u32;
                code /= d as u64 + 1;
            }
            Multidegree { ground, exponents: exps }
        })
    }

    /// Monomial text form, e.g. `x1^2*x3`; `1` for the zero vector.
    pub fn monomial_string(&self) -> String {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
            .collect();
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join("*")
        }
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// One signed monomial coefficient of a wedge basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub sign: i8,
    pub coefficient: Multidegree,
}

/// An element `Σ ±X^a e_T` of `⋀^{j} R^n` with one signed monomial per basis
/// element `e_T`. Terms are keyed by `T` and iterate in squashed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulChain {
    ground: GroundSet,
    terms: BTreeMap<Subset, Term>,
}

/// A general combination `Σ c · X^a e_T` with integer coefficients, keyed by
/// `(T, a)`. Zero coefficients are never stored.
pub type LinearCombination = BTreeMap<(Subset, Multidegree), i64>;

impl KoszulChain {
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Subset, &Term)> {
        self.terms.iter()
    }

    pub fn term(&self, basis: &Subset) -> Option<&Term> {
        self.terms.get(basis)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multidegree of each term: the coefficient's exponents plus `χ_T`.
    pub fn term_multidegrees(&self) -> impl Iterator<Item = Multidegree> + '_ {
        self.terms.iter().map(|(t, term)| term.coefficient.plus_subset(t))
    }

    /// The common multidegree of all terms, if the chain is homogeneous.
    pub fn multidegree(&self) -> Option<Multidegree> {
        let mut degrees = self.term_multidegrees();
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Applies `∂` term by term and collects like terms.
    pub fn apply_boundary(&self) -> LinearCombination {
        let mut out = LinearCombination::new();
        for (basis, term) in &self.terms {
            if basis.is_empty() {
                continue;
            }
            for (j, dropped) in basis.elements().enumerate() {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let mut coefficient = term.coefficient.clone();
                coefficient.exponents[dropped - 1] += 1;
                let key = (basis.without(dropped), coefficient);
                let entry = out.entry(key.clone()).or_insert(0);
                *entry += (term.sign as i64) * sign;
                if *entry == 0 {
                    out.remove(&key);
                }
            }
        }
        out
    }
}

impl fmt::Display for KoszulChain {
    /// `+x7*e{1,4} -x4*e{1,7} +x1*e{4,7}`; `0` for the empty chain.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (basis, term)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if term.sign > 0 { "+" } else { "-" })?;
            let mono = term.coefficient.monomial_string();
            if mono != "1" {
                write!(f, "{mono}*")?;
            }
            write!(f, "e{basis}")?;
        }
        Ok(())
    }
}

/// Sign and dropped element of `e_T` inside `∂(e_G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignEntry {
    pub set: Subset,
    pub face: Subset,
    pub sign: i8,
    pub dropped: usize,
}

/// `∂(e_{i_1} ∧ ⋯ ∧ e_{i_k}) = Σ_j (−1)^{j+1} X_{i_j} e_{G∖{i_j}}`.
pub fn boundary(set: &Subset) -> Result<KoszulChain> {
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    let ground = set.ground();
    let terms = set
        .elements()
        .enumerate()
        .map(|(j, dropped)| {
            let mut coefficient = Multidegree::zero(ground);
            coefficient.exponents[dropped - 1] = 1;
            (set.without(dropped), Term { sign: if j % 2 == 0 { 1 } else { -1 }, coefficient })
        })
        .collect();
    Ok(KoszulChain { ground, terms })
}

/// The coefficient sign of `e_T` in `∂(e_G)`, or `None` if `T ⊄ G`.
pub fn boundary_sign(set: &Subset, face: &Subset) -> Result<Option<SignEntry>> {
    if set.n() != face.n() {
        return Err(Error::GroundMismatch { left: set.n(), right: face.n() });
    }
    if face.len() + 1 != set.len() {
        return Err(Error::SizeMismatch { left: set.len(), right: face.len() });
    }
    Ok(boundary_sign_bits(set.bits(), face.bits()).map(|(sign, dropped)| SignEntry {
        set: *set,
        face: *face,
        sign,
        dropped,
    }))
}

#[inline]
pub(crate) fn boundary_sign_bits(set: u32, face: u32) -> Option<(i8, usize)> {
    if face & !set != 0 {
        return None;
    }
    let dropped_bit = set & !face;
    debug_assert_eq!(dropped_bit.count_ones(), 1);
    let rank = (set & (dropped_bit - 1)).count_ones();
    Some((if rank.is_multiple_of(2) { 1 } else { -1 }, dropped_bit.trailing_zeros() as usize + 1))
}

/// `m = X^{S∖G} ∂(e_G)`, homogeneous of multidegree `χ_S`.
pub fn generator_m(degree: &Subset, set: &Subset) -> Result<KoszulChain> {
    if degree.n() != set.n() {
        return Err(Error::GroundMismatch { left: degree.n(), right: set.n() });
    }
    if !set.is_subset(degree) {
        return Err(Error::NotSubset { sub: set.to_string(), sup: degree.to_string() });
    }
    let shift = degree.difference(set)?;
    let mut chain = boundary(set)?;
    for term in chain.terms.values_mut() {
        term.coefficient = term.coefficient.plus_subset(&shift);
    }
    Ok(chain)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim M(n,k)_m` from exactness of the Koszul complex: the alternating sum
/// `Σ_{j ≥ k} (−1)^{j−k} C(s, j)` of wedge-module dimensions in degree `m`,
/// where `s = |supp(m)|`.
pub fn dim_oracle(n: usize, k: usize, m: &Multidegree) -> Result<u64> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 0 < k <= n, got k = {k}, n = {n}")));
    }
    if m.ground().n() != n {
        return Err(Error::GroundMismatch { left: n, right: m.ground().n() });
    }
    let s = m.support().len() as u64;
    let k = k as u64;
    let sum: i64 = (k..=s)
        .map(|j| {
            let c = binomial(s, j) as i64;
            if (j - k).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
        .sum();
    debug_assert!(sum >= 0);
    Ok(sum as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::rank::rank_exact;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn set(n: usize, elems: &[usize]) -> Subset {
        Subset::new(g(n), elems.iter().copied()).unwrap()
    }

    fn md(exps: &[u32]) -> Multidegree {
        Multidegree::new(g(exps.len()), exps.to_vec()).unwrap()
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary(&set(3, &[1, 3])).unwrap().to_string(), "-x3*e{1} +x1*e{3}");
        assert_eq!(boundary(&set(4, &[1])).unwrap().to_string(), "+x1*e{}");
        assert_eq!(boundary(&set(3, &[1, 2, 3])).unwrap().to_string(), "+x3*e{1,2} -x2*e{1,3} +x1*e{2,3}");
        assert_eq!(boundary(&set(3, &[])), Err(Error::EmptySubset));
    }

    #[test]
    fn boundary_squares_to_zero() {
        for n in 1..=8 {
            for set in g(n).power_set().filter(|s| s.len() >= 2) {
                assert!(boundary(&set).unwrap().apply_boundary().is_empty(), "{set:?}");
            }
        }
    }

    #[test]
    fn boundary_sign_examples() {
        let e = boundary_sign(&set(4, &[1, 2, 3]), &set(4, &[1, 3])).unwrap().unwrap();
        assert_eq!((e.sign, e.dropped), (-1, 2));
        let e = boundary_sign(&set(4, &[1, 2, 3]), &set(4, &[2, 3])).unwrap().unwrap();
        assert_eq!((e.sign, e.dropped), (1, 1));
        assert_eq!(boundary_sign(&set(4, &[1, 2, 3]), &set(4, &[1, 4])).unwrap(), None);
        assert!(boundary_sign(&set(4, &[1, 2, 3]), &set(4, &[1])).is_err());
    }

    #[test]
    fn boundary_sign_matches_boundary() {
        for n in 1..=7 {
            for s in g(n).power_set().filter(|s| !s.is_empty()) {
                let chain = boundary(&s).unwrap();
                for t in g(n).level(s.len() - 1) {
                    let by_sign = boundary_sign(&s, &t).unwrap().map(|e| e.sign);
                    assert_eq!(by_sign, chain.term(&t).map(|term| term.sign));
                }
            }
        }
    }

    #[test]
    fn generator_examples() {
        let m = generator_m(&set(3, &[1, 2, 3]), &set(3, &[1])).unwrap();
        assert_eq!(m.to_string(), "+x1*x2*x3*e{}");
        let s = set(3, &[1, 3]);
        assert_eq!(generator_m(&s, &s).unwrap(), boundary(&s).unwrap());
        let m = generator_m(&set(7, &[1, 2, 4, 5, 7]), &set(7, &[1, 4, 7])).unwrap();
        assert_eq!(m.to_string(), "+x2*x5*x7*e{1,4} -x2*x4*x5*e{1,7} +x1*x2*x5*e{4,7}");
        assert_eq!(m.multidegree(), Some(md(&[1, 1, 0, 1, 1, 0, 1])));
        assert!(generator_m(&set(3, &[1]), &set(3, &[2])).is_err());
    }

    #[test]
    fn generators_are_homogeneous() {
        for n in 1..=7 {
            for s in g(n).power_set() {
                for gen in s.subsets().filter(|t| !t.is_empty()) {
                    let m = generator_m(&s, &gen).unwrap();
                    assert_eq!(m.multidegree(), Some(Multidegree::of_subset(&s)));
                }
            }
        }
    }

    /// `dim M(n,k)_m` as the rank of `∂` from `(⋀^k)_m` to `(⋀^{k−1})_m`.
    fn dim_by_rank(n: usize, k: usize, m: &Multidegree) -> usize {
        let supp = m.support();
        let rows: Vec<Subset> = supp.subsets_of_size(k).collect();
        let cols: Vec<Subset> = supp.subsets_of_size(k - 1).collect();
        assert!(rows.iter().all(|r| r.n() == n));
        let matrix: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| cols.iter().map(|c| boundary_sign(r, c).unwrap().map_or(0, |e| e.sign as i64)).collect())
            .collect();
        rank_exact(&matrix)
    }

    #[test]
    fn dim_oracle_examples() {
        assert_eq!(dim_oracle(3, 2, &md(&[1, 1, 1])), Ok(2));
        assert_eq!(dim_by_rank(3, 2, &md(&[1, 1, 1])), 2);
        assert_eq!(dim_oracle(3, 2, &md(&[2, 1, 1])), Ok(2));
        assert_eq!(dim_by_rank(3, 2, &md(&[2, 1, 1])), 2);
        assert_eq!(dim_oracle(2, 2, &md(&[2, 0])), Ok(0));
        assert!(dim_oracle(3, 0, &md(&[1, 1, 1])).is_err());
    }

    #[test]
    fn dim_oracle_identities() {
        for n in 1..=12u64 {
            for s in 0..=n {
                let bits = (1u32 << s) - 1;
                let m = Multidegree::of_subset(&Subset::from_bits(g(n as usize), bits).unwrap());
                for k in 1..=n {
                    let d = dim_oracle(n as usize, k as usize, &m).unwrap();
                    let expected = if s >= k { binomial(s - 1, k - 1) } else { 0 };
                    assert_eq!(d, expected, "n={n} s={s} k={k}");
                }
            }
        }
        for n in 1..=6 {
            for m in Multidegree::box_iter(g(n), 2) {
                for k in 1..=n {
                    assert_eq!(dim_oracle(n, k, &m).unwrap() as usize, dim_by_rank(n, k, &m));
                }
            }
        }
    }

    #[test]
    fn squarefree_dimension_equals_total_degree_binomial() {
        for n in 1..=8 {
            for s in g(n).power_set().filter(|s| !s.is_empty()) {
                let m = Multidegree::of_subset(&s);
                for k in 1..=n {
                    assert_eq!(dim_oracle(n, k, &m).unwrap(), binomial(m.total() - 1, k as u64 - 1));
                }
            }
        }
        // Outside the squarefree case the total-degree reading overcounts.
        assert_eq!(binomial(md(&[2, 1, 1]).total() - 1, 1), 3);
    }

    #[test]
    fn multidegree_helpers() {
        let m = md(&[2, 0, 1]);
        assert_eq!(m.support(), set(3, &[1, 3]));
        assert_eq!(m.total(), 3);
        assert_eq!(m.monomial_string(), "x1^2*x3");
        assert_eq!(m.minus_subset(&set(3, &[1, 3])), Some(md(&[1, 0, 0])));
        assert_eq!(m.minus_subset(&set(3, &[2])), None);
        assert_eq!(Multidegree::box_iter(g(3), 2).count(), 27);
        assert!(Multidegree::new(g(3), vec![1]).is_err());
    }
}
