use std::collections::BTreeMap;

use ghost_slopes::chars::{EpsilonChar, WStarProfile};
use ghost_slopes::dims::{ModuleSpec, SParam};
use ghost_slopes::ghost::tent;
use ghost_slopes::zigzag::{
    canonical_tuple, direct_sum_compare, is_odd_dominant, partition, theorem_condition, witness_search, zigzag_check,
    ZigzagVerdict,
};
use proptest::prelude::*;

fn multisets(set: &[i64], u: usize) -> Vec<Vec<i64>> {
    if u == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for (i, &x) in set.iter().enumerate() {
        for mut rest in multisets(&set[i..], u - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn chars() -> Vec<EpsilonChar> {
    [7i64, 11].iter().flat_map(|&p| (2..=p).map(move |k0| EpsilonChar::new(p, 0, k0).unwrap())).collect()
}

proptest! {
    #[test]
    fn partitions_are_balanced_with_odd_suffix(n in 0u64..5000, u in 1u64..8) {
        let parts = partition(n, u).unwrap();
        prop_assert_eq!(parts.len() as u64, u);
        prop_assert_eq!(parts.iter().sum::<u64>(), n);
        let (lo, hi) = (*parts.iter().min().unwrap(), *parts.iter().max().unwrap());
        prop_assert!(hi - lo <= 1);
        let first_odd = parts.iter().position(|x| x % 2 == 1).unwrap_or(parts.len());
        prop_assert!(parts[first_odd..].iter().all(|x| x % 2 == 1));
    }
}

/// If one part falls below its threshold, no part exceeds its own.
#[test]
fn partitions_respect_dominant_thresholds() {
    for e in chars() {
        let s = e.s_set();
        for kb in 0..=200 {
            let phi: BTreeMap<i64, i64> =
                s.iter().map(|&x| (x, SParam::new(e, x).unwrap().d_dagger_kb(kb).0)).collect();
            assert_eq!(is_odd_dominant(&phi), Ok(()));
            for u in 1..=3 {
                for t in multisets(&s, u) {
                    for n in 0..=200 {
                        let parts = partition(n, u as u64).unwrap();
                        let below = parts.iter().zip(&t).any(|(&ni, si)| (ni as i64) < phi[si]);
                        if below {
                            assert!(parts.iter().zip(&t).all(|(&ni, si)| ni as i64 <= phi[si]), "kb={kb} {t:?} n={n}");
                        }
                    }
                }
            }
        }
    }
}

/// Exponent increments of dagger series alternate in order with parity of `n`.
#[test]
fn exponent_increments_alternate() {
    for e in chars() {
        let s = e.s_set();
        let sps: Vec<SParam> = s.iter().map(|&x| SParam::new(e, x).unwrap()).collect();
        for kb in 0..=200 {
            let m = |sp: &SParam, n: i64| {
                let (ur, iw) = sp.d_dagger_kb(kb);
                tent(n, ur, iw)
            };
            for i in 0..sps.len() {
                for j in i + 1..sps.len() {
                    for n in 0..=200 {
                        let di = m(&sps[i], n + 1) - m(&sps[i], n);
                        let dj = m(&sps[j], n + 1) - m(&sps[j], n);
                        let ok = if n % 2 == 1 { dj >= di } else { dj <= di };
                        assert!(ok, "p={} k0={} kb={kb} s=({},{}) n={n}", e.p(), e.k0(), s[i], s[j]);
                    }
                }
            }
        }
    }
}

#[test]
fn condition_examples() {
    let e = EpsilonChar::new(11, 0, 4).unwrap();
    let r = theorem_condition(&e, &[3, 3]).unwrap();
    assert!(r.holds && r.all_generic());
    assert!(theorem_condition(&e, &[3, 0]).unwrap().holds);
    assert!(!theorem_condition(&e, &[3, 4]).unwrap().holds);
    let r = theorem_condition(&e, &[2, 1]).unwrap();
    assert!(r.holds);
    assert_eq!(r.non_generic, vec![1, 2]);
    assert!(theorem_condition(&e, &[3, 10]).is_err());
}

#[test]
fn tuples_are_sorted_and_checked() {
    let e = EpsilonChar::new(11, 0, 4).unwrap();
    assert_eq!(canonical_tuple(&e, &[5, 3, 4]).unwrap(), (vec![3, 4, 5], true));
    assert_eq!(canonical_tuple(&e, &[3, 5]).unwrap(), (vec![3, 5], false));
    assert!(canonical_tuple(&e, &[0, 3]).is_err());
    assert!(canonical_tuple(&e, &[]).is_err());
}

#[test]
fn single_component_always_holds() {
    let e = EpsilonChar::new(7, 0, 7).unwrap();
    let w = WStarProfile::parse(&e, "origin:t=3/2").unwrap();
    assert!(matches!(zigzag_check(&e, &[4], &w, 60).unwrap(), ZigzagVerdict::Holds { .. }));
}

#[test]
fn equal_pair_merges() {
    let e = EpsilonChar::new(7, 0, 4).unwrap();
    let specs = [ModuleSpec::single(e, 3).unwrap(), ModuleSpec::single(e, 3).unwrap()];
    for w in ["origin:t=1/2", "k=16:t=5/2", "k=160:t=11/3"] {
        let w = WStarProfile::parse(&e, w).unwrap();
        let r = direct_sum_compare(&specs, &w, 100, false).unwrap();
        assert!(r.is_equal(), "{w}: {r:?}");
        assert!(r.confirmed_upto > 0);
        assert_eq!(r.s, vec![3, 3]);
    }
}

#[test]
fn empty_search_finds_nothing() {
    let e = EpsilonChar::new(7, 0, 7).unwrap();
    assert_eq!(witness_search(&e, &[4, 5], &[], 50).unwrap(), None);
    assert!(witness_search(&e, &[], &[], 50).is_err());
}
