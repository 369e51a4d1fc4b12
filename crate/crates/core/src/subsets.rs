//! Subsets of a fixed ground set `[n] = {1, ..., n}`, their lattice paths,
//! and the two linear orders used on each level of the Boolean lattice.
//!
//! A subset is stored as a bitmask (bit `i - 1` set iff `i` is an element)
//! together with its ground-set size. For subsets of equal size the squashed
//! (colex) order coincides with the numeric order of the masks, which is what
//! [`Subset`]'s `Ord` uses inside a level.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 31;

/// The ground set `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet(u8);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if (1..=MAX_N).contains(&n) {
            Ok(GroundSet(n as u8))
        } else {
            Err(Error::GroundSize(n))
        }
    }

    pub fn n(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn full_bits(self) -> u32 {
        (1u32 << self.0) - 1
    }

    /// Every subset of `[n]`, in increasing mask order.
    pub fn power_set(self) -> impl Iterator<Item = Subset> {
        (0..=self.full_bits()).map(move |bits| Subset { n: self.0, bits })
    }

    /// All `size`-subsets of `[n]` in ascending squashed order.
    pub fn level(self, size: usize) -> impl Iterator<Item = Subset> {
        Subset::full(self).subsets_of_size(size)
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// A subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    n: u8,
    bits: u32,
}

impl Subset {
    pub fn new<I: IntoIterator<Item = usize>>(ground: GroundSet, elements: I) -> Result<Self> {
        let mut bits = 0u32;
        for e in elements {
            if e == 0 || e > ground.n() {
                return Err(Error::ElementOutOfRange { element: e, n: ground.n() });
            }
            bits |= 1 << (e - 1);
        }
        Ok(Subset { n: ground.0, bits })
    }

    pub fn from_bits(ground: GroundSet, bits: u32) -> Result<Self> {
        if bits & !ground.full_bits() != 0 {
            let element = 32 - bits.leading_zeros() as usize;
            return Err(Error::ElementOutOfRange { element, n: ground.n() });
        }
        Ok(Subset { n: ground.0, bits })
    }

    pub(crate) fn from_bits_unchecked(n: usize, bits: u32) -> Self {
        debug_assert!(n <= MAX_N && (bits >> n) == 0);
        Subset { n: n as u8, bits }
    }

    pub fn empty(ground: GroundSet) -> Self {
        Subset { n: ground.0, bits: 0 }
    }

    pub fn full(ground: GroundSet) -> Self {
        Subset { n: ground.0, bits: ground.full_bits() }
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet(self.n)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, element: usize) -> bool {
        (1..=self.n()).contains(&element) && self.bits & (1 << (element - 1)) != 0
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> Elements {
        Elements { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    pub fn max_element(&self) -> Option<usize> {
        (self.bits != 0).then(|| 32 - self.bits.leading_zeros() as usize)
    }

    pub fn min_element(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize + 1)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.n == other.n && self.bits & !other.bits == 0
    }

    pub fn complement(&self) -> Subset {
        Subset { n: self.n, bits: self.ground().full_bits() & !self.bits }
    }

    /// `self ∪ {element}`. The element must lie in the ground set.
    pub fn with(&self, element: usize) -> Subset {
        assert!((1..=self.n()).contains(&element), "element {element} outside [{}]", self.n);
        Subset { n: self.n, bits: self.bits | (1 << (element - 1)) }
    }

    /// `self \ {element}`.
    pub fn without(&self, element: usize) -> Subset {
        assert!((1..=self.n()).contains(&element), "element {element} outside [{}]", self.n);
        Subset { n: self.n, bits: self.bits & !(1 << (element - 1)) }
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        same_ground(self, other)?;
        Ok(Subset { n: self.n, bits: self.bits | other.bits })
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        same_ground(self, other)?;
        Ok(Subset { n: self.n, bits: self.bits & !other.bits })
    }

    pub fn symmetric_difference(&self, other: &Subset) -> Result<Subset> {
        same_ground(self, other)?;
        Ok(Subset { n: self.n, bits: self.bits ^ other.bits })
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(&self) -> SubMasks {
        SubMasks { n: self.n, set: self.bits, next: Some(0) }
    }

    /// All `size`-subsets of `self` in ascending squashed order.
    pub fn subsets_of_size(&self, size: usize) -> impl Iterator<Item = Subset> {
        let this = *self;
        self.subsets().filter(move |s| s.len() == size).map(move |s| Subset { n: this.n, bits: s.bits })
    }

    /// Brace form, e.g. `{1,4,7}`.
    pub fn to_brace_string(&self) -> String {
        self.to_string()
    }

    /// Digit form, e.g. `147`; only meaningful for `n <= 9`.
    pub fn to_compact_string(&self) -> String {
        self.elements().map(|e| e.to_string()).collect()
    }

    /// Parses either the brace form `{1,4,7}` or, for `n <= 9`, the compact
    /// digit form `147`.
    pub fn parse(ground: GroundSet, input: &str) -> Result<Self> {
        let trimmed = input.trim();
        let parse_err = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let elements: Vec<usize> = if let Some(inner) = trimmed.strip_prefix('{') {
            let inner = inner.strip_suffix('}').ok_or_else(|| parse_err("missing closing brace"))?;
            if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|tok| tok.trim().parse::<usize>().map_err(|_| parse_err("expected integers")))
                    .collect::<Result<_>>()?
            }
        } else {
            if ground.n() > 9 {
                return Err(parse_err("compact digit form is only accepted for n <= 9; use {a,b,...}"));
            }
            if trimmed.is_empty() {
                return Err(parse_err("empty input; write {} for the empty set"));
            }
            trimmed
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| parse_err("expected digits")))
                .collect::<Result<_>>()?
        };
        let mut seen = 0u64;
        for &e in &elements {
            if e < 64 && seen & (1 << e) != 0 {
                return Err(parse_err("repeated element"));
            }
            if e < 64 {
                seen |= 1 << e;
            }
        }
        Subset::new(ground, elements)
    }
}

fn same_ground(a: &Subset, b: &Subset) -> Result<()> {
    if a.n != b.n {
        return Err(Error::GroundMismatch { left: a.n(), right: b.n() });
    }
    Ok(())
}

fn same_level(a: &Subset, b: &Subset) -> Result<()> {
    same_ground(a, b)?;
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

/// Ordered by ground set, then cardinality, then squashed order.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then(self.len().cmp(&other.len())).then(self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}⊆[{}]", self.n)
    }
}

/// Parses `n:{...}` or `n:digits`.
impl FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse { input: s.to_string(), reason: "expected `n:{...}`".into() })?;
        let n = n
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse { input: s.to_string(), reason: "bad ground set size".into() })?;
        Subset::parse(GroundSet::new(n)?, rest)
    }
}

/// Ascending iterator over the elements of a [`Subset`].
#[derive(Debug, Clone)]
pub struct Elements {
    bits: u32,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let e = self.bits.trailing_zeros() as usize + 1;
        self.bits &= self.bits - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

impl DoubleEndedIterator for Elements {
    fn next_back(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let top = 31 - self.bits.leading_zeros();
        self.bits &= !(1 << top);
        Some(top as usize + 1)
    }
}

/// Iterates the submasks of a mask in increasing order.
#[derive(Debug, Clone)]
pub struct SubMasks {
    n: u8,
    set: u32,
    next: Option<u32>,
}

impl Iterator for SubMasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.set { None } else { Some(cur.wrapping_sub(self.set) & self.set) };
        Some(Subset { n: self.n, bits: cur })
    }
}

/// `χ_G(j)`: `0` at the sentinel position `j = 0`, `+1` on elements, `-1`
/// elsewhere.
pub fn chi(set: &Subset, position: usize) -> Result<i8> {
    if position > set.n() {
        return Err(Error::PositionOutOfRange { position, n: set.n() });
    }
    Ok(match position {
        0 => 0,
        j if set.contains(j) => 1,
        _ => -1,
    })
}

/// The lattice path of a subset: heights `ρ(0..=n)` and the statistics of
/// its maxima over `G ∪ {0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    pub heights: Vec<i32>,
    /// Maximum height over `G ∪ {0}`.
    pub alpha: i32,
    /// First position of `G ∪ {0}` attaining `alpha`.
    pub nu: usize,
    /// Last position of `G ∪ {0}` attaining `alpha`.
    pub mu: usize,
}

impl LatticePath {
    /// Positions of `G ∪ {0}` at which the height equals `alpha`.
    pub fn argmax(&self, set: &Subset) -> Vec<usize> {
        std::iter::once(0).chain(set.elements()).filter(|&g| self.heights[g] == self.alpha).collect()
    }
}

pub fn lattice_path(set: &Subset) -> LatticePath {
    let mut heights = Vec::with_capacity(set.n() + 1);
    heights.push(0);
    let mut h = 0;
    for j in 1..=set.n() {
        h += if set.contains(j) { 1 } else { -1 };
        heights.push(h);
    }
    let scan = PathScan::of(set.n(), set.bits());
    LatticePath { heights, alpha: scan.alpha, nu: scan.nu, mu: scan.mu }
}

/// Allocation-free single pass over a lattice path, used by the matchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PathScan {
    pub alpha: i32,
    pub nu: usize,
    pub mu: usize,
    /// Maximum over `G` only; `None` when `G` is empty.
    pub alpha_tilde: Option<i32>,
    pub nu_tilde: usize,
}

impl PathScan {
    pub fn of(n: usize, bits: u32) -> Self {
        let (mut alpha, mut nu, mut mu) = (0, 0, 0);
        let mut alpha_tilde: Option<i32> = None;
        let mut nu_tilde = 0;
        let mut h = 0i32;
        for g in 1..=n {
            if bits & (1 << (g - 1)) == 0 {
                h -= 1;
                continue;
            }
            h += 1;
            if h > alpha {
                alpha = h;
                nu = g;
                mu = g;
            } else if h == alpha {
                mu = g;
            }
            if alpha_tilde.is_none_or(|a| h > a) {
                alpha_tilde = Some(h);
                nu_tilde = g;
            }
        }
        PathScan { alpha, nu, mu, alpha_tilde, nu_tilde }
    }
}

/// `a ≺ b` in the squashed order: `max(a Δ b) ∈ b`. False when `a == b`.
pub fn squashed_less(a: &Subset, b: &Subset) -> Result<bool> {
    same_level(a, b)?;
    Ok(a.bits < b.bits)
}

/// Lexicographic comparison of the ascending element sequences.
pub fn lex_less(a: &Subset, b: &Subset) -> Result<bool> {
    same_level(a, b)?;
    Ok(lex_cmp(a, b) == Ordering::Less)
}

pub(crate) fn lex_cmp(a: &Subset, b: &Subset) -> Ordering {
    a.elements().cmp(b.elements())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, elems: &[usize]) -> Subset {
        Subset::new(GroundSet::new(n).unwrap(), elems.iter().copied()).unwrap()
    }

    #[test]
    fn chi_values() {
        let g = set(3, &[1, 3]);
        assert_eq!(chi(&g, 0), Ok(0));
        assert_eq!(chi(&g, 2), Ok(-1));
        assert_eq!(chi(&g, 3), Ok(1));
        assert!(matches!(chi(&g, 4), Err(Error::PositionOutOfRange { .. })));
    }

    // Independent scalar loop over chi, not the bitmask scan.
    fn heights_by_loop(g: &Subset) -> Vec<i32> {
        let mut acc = 0;
        (0..=g.n())
            .map(|j| {
                acc += chi(g, j).unwrap() as i32;
                acc
            })
            .collect()
    }

    #[test]
    fn lattice_path_examples() {
        let p = lattice_path(&set(7, &[1, 2, 4, 5, 7]));
        assert_eq!(p.heights, vec![0, 1, 2, 1, 2, 3, 2, 3]);
        assert_eq!((p.alpha, p.nu, p.mu), (3, 5, 7));
        assert_eq!(p.heights, heights_by_loop(&set(7, &[1, 2, 4, 5, 7])));
        assert_eq!(p.argmax(&set(7, &[1, 2, 4, 5, 7])), vec![5, 7]);

        let p = lattice_path(&set(3, &[]));
        assert_eq!(p.heights, vec![0, -1, -2, -3]);
        assert_eq!((p.alpha, p.nu, p.mu), (0, 0, 0));

        for n in 1..=9 {
            let p = lattice_path(&Subset::full(GroundSet::new(n).unwrap()));
            assert_eq!(p.heights, (0..=n as i32).collect::<Vec<_>>());
            assert_eq!((p.alpha, p.nu, p.mu), (n as i32, n, n));
        }
    }

    #[test]
    fn lattice_path_invariants_exhaustive() {
        for n in 1..=10 {
            for g in GroundSet::new(n).unwrap().power_set() {
                let p = lattice_path(&g);
                assert_eq!(p.heights, heights_by_loop(&g));
                assert_eq!(p.heights[n], 2 * g.len() as i32 - n as i32);
                assert!(p.alpha >= p.heights[n] && p.alpha >= 0);
                let argmax = p.argmax(&g);
                assert!(!argmax.is_empty());
                assert_eq!(argmax[0], p.nu);
                assert_eq!(*argmax.last().unwrap(), p.mu);
                assert!(p.nu <= p.mu);
            }
        }
    }

    #[test]
    fn squashed_examples() {
        assert_eq!(squashed_less(&set(7, &[1, 2, 5]), &set(7, &[1, 4, 7])), Ok(true));
        assert_eq!(squashed_less(&set(7, &[1, 4, 5]), &set(7, &[1, 2, 5])), Ok(false));
        assert_eq!(squashed_less(&set(7, &[2, 3]), &set(7, &[2, 3])), Ok(false));
        assert!(matches!(squashed_less(&set(7, &[2, 3]), &set(7, &[2])), Err(Error::SizeMismatch { .. })));
        assert!(matches!(squashed_less(&set(7, &[2, 3]), &set(8, &[2, 3])), Err(Error::GroundMismatch { .. })));
    }

    #[test]
    fn squashed_is_strict_total_order_and_matches_definition() {
        for n in 1..=8 {
            let ground = GroundSet::new(n).unwrap();
            for size in 0..=n {
                let level: Vec<_> = ground.level(size).collect();
                for a in &level {
                    assert!(!squashed_less(a, a).unwrap());
                    for b in &level {
                        let by_def = a != b && {
                            let d = a.symmetric_difference(b).unwrap();
                            b.contains(d.max_element().unwrap())
                        };
                        assert_eq!(squashed_less(a, b).unwrap(), by_def);
                        if a != b {
                            assert_ne!(squashed_less(a, b).unwrap(), squashed_less(b, a).unwrap());
                        }
                        for c in &level {
                            if squashed_less(a, b).unwrap() && squashed_less(b, c).unwrap() {
                                assert!(squashed_less(a, c).unwrap());
                            }
                        }
                    }
                }
                assert!(level.windows(2).all(|w| squashed_less(&w[0], &w[1]).unwrap()));
            }
        }
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_less(&set(5, &[1, 2, 5]), &set(5, &[1, 3, 4])), Ok(true));
        assert_eq!(lex_less(&set(5, &[2, 3]), &set(5, &[2, 3])), Ok(false));
        assert_eq!(lex_less(&set(5, &[1, 4]), &set(5, &[1, 3])), Ok(false));
    }

    #[test]
    fn parse_and_display() {
        let g7 = GroundSet::new(7).unwrap();
        assert_eq!(Subset::parse(g7, "147").unwrap(), set(7, &[1, 4, 7]));
        assert_eq!(Subset::parse(g7, "{1, 4,7}").unwrap(), set(7, &[1, 4, 7]));
        assert_eq!(Subset::parse(g7, "{}").unwrap(), set(7, &[]));
        assert_eq!(set(7, &[1, 4, 7]).to_string(), "{1,4,7}");
        assert_eq!(set(7, &[]).to_string(), "{}");
        assert_eq!(set(7, &[1, 4, 7]).to_compact_string(), "147");
        assert!(Subset::parse(g7, "148").is_err());
        assert!(Subset::parse(g7, "{1,1}").is_err());
        assert!(Subset::parse(GroundSet::new(12).unwrap(), "12").is_err());
        assert_eq!(Subset::parse(GroundSet::new(12).unwrap(), "{10,12}").unwrap(), set(12, &[10, 12]));
        assert_eq!("7:{1,4,7}".parse::<Subset>().unwrap(), set(7, &[1, 4, 7]));
    }

    #[test]
    fn ground_set_limits() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(MAX_N).is_ok());
        assert!(GroundSet::new(MAX_N + 1).is_err());
        let g = Subset::full(GroundSet::new(MAX_N).unwrap());
        assert_eq!(g.len(), MAX_N);
        assert_eq!(g.max_element(), Some(MAX_N));
    }

    #[test]
    fn elements_and_submasks() {
        let g = set(9, &[2, 5, 9]);
        assert_eq!(g.to_vec(), vec![2, 5, 9]);
        assert_eq!(g.elements().rev().collect::<Vec<_>>(), vec![9, 5, 2]);
        assert_eq!(g.subsets().count(), 8);
        assert!(g.subsets().all(|s| s.is_subset(&g)));
        let pairs: Vec<_> = g.subsets_of_size(2).map(|s| s.to_compact_string()).collect();
        assert_eq!(pairs, vec!["25", "29", "59"]);
    }
}
