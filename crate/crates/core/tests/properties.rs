//! Randomised checks at ground-set sizes beyond the exhaustive sweeps.

use koszul_sdepth::decomposition::{compute_z, compute_z_by_search};
use koszul_sdepth::matching::{index, index_by_psi, phi, psi, psi_tilde};
use koszul_sdepth::{GroundSet, Subset};
use proptest::prelude::*;

fn subset_in(n: usize) -> impl Strategy<Value = Subset> {
    let full = (1u32 << n) - 1;
    any::<u32>().prop_map(move |b| Subset::from_bits(GroundSet::new(n).unwrap(), b & full).unwrap())
}

fn any_subset() -> impl Strategy<Value = Subset> {
    (1usize..=31).prop_flat_map(subset_in)
}

proptest! {
    #[test]
    fn psi_phi_are_mutually_inverse(g in any_subset()) {
        if let Some(m) = psi(&g) {
            prop_assert_eq!(m.value.len() + 1, g.len());
            prop_assert_eq!(phi(&m.value).map(|m| m.value), Some(g));
        }
        if let Some(m) = phi(&g) {
            prop_assert_eq!(psi(&m.value).map(|m| m.value), Some(g));
        }
    }

    #[test]
    fn psi_total_above_half(g in any_subset()) {
        if 2 * g.len() > g.n() {
            prop_assert!(psi(&g).is_some());
        }
        if !g.is_empty() {
            let t = psi_tilde(&g).unwrap();
            prop_assert!(t.value.is_subset(&g));
            prop_assert_eq!(t.value.len() + 1, g.len());
        }
    }

    #[test]
    fn index_forms_agree((m, keep) in (1usize..=16).prop_flat_map(|n| (subset_in(n), any::<u32>()))) {
        let g = Subset::from_bits(GroundSet::new(m.n()).unwrap(), m.bits() & keep).unwrap();
        prop_assert_eq!(index(&g, &m).unwrap(), index_by_psi(&g, &m).unwrap());
    }

    #[test]
    fn z_via_phi_matches_search(s in any_subset()) {
        prop_assert_eq!(compute_z(&s), compute_z_by_search(&s));
    }
}
