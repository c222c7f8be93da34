//! Balanced partitions, odd dominance, the zigzag criterion, the pairing
//! condition on tuples, and direct-sum polygon comparison.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{EpsilonChar, WStarProfile};
use crate::dims::ModuleSpec;
use crate::error::{Error, Result};
use crate::ghost::coefficient;
use crate::newton::{merge, np_equal_upto, series_polygon, Agreement, NewtonPolygon};

/// Splits `n` into `u` parts differing by at most one, with odd parts at
/// the larger indices.
pub fn partition(n: u64, u: u64) -> Result<Vec<u64>> {
    if u == 0 {
        return Err(Error::OutOfRange { name: "u", value: 0, lo: 1, hi: i64::MAX });
    }
    let q = n / u;
    let mut parts = Vec::with_capacity(u as usize);
    if q % 2 == 0 {
        let small = u * (q + 1) - n;
        for i in 0..u {
            parts.push(if i < small { q } else { q + 1 });
        }
    } else {
        let big = n - u * q;
        for i in 0..u {
            parts.push(if i < big { q + 1 } else { q });
        }
    }
    Ok(parts)
}

/// Outcome of [`is_odd_dominant`]: `Err((s, s'))` names a failing pair.
pub type Dominance = std::result::Result<(), (i64, i64)>;

fn dominated(a: i64, b: i64) -> bool {
    (a - b).abs() <= 1 && (a == b || b.rem_euclid(2) == 1)
}

/// `φ` is odd dominant when for `s < s'`: `|φ(s) - φ(s')| ≤ 1`, and
/// `φ(s') ` is odd whenever the values differ. Consecutive pairs suffice.
pub fn is_odd_dominant(phi: &BTreeMap<i64, i64>) -> Dominance {
    let v: Vec<(i64, i64)> = phi.iter().map(|(&s, &x)| (s, x)).collect();
    for w in v.windows(2) {
        if !dominated(w[0].1, w[1].1) {
            return Err((w[0].0, w[1].0));
        }
    }
    Ok(())
}

/// The definition checked on every pair.
pub fn is_odd_dominant_all_pairs(phi: &BTreeMap<i64, i64>) -> Dominance {
    let v: Vec<(i64, i64)> = phi.iter().map(|(&s, &x)| (s, x)).collect();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if !dominated(v[i].1, v[j].1) {
                return Err((v[i].0, v[j].0));
            }
        }
    }
    Ok(())
}

/// A tuple sorted into nondecreasing order with all entries in `S`.
/// The flag records whether sorting changed the input.
pub fn canonical_tuple(eps: &EpsilonChar, s: &[i64]) -> Result<(Vec<i64>, bool)> {
    if s.is_empty() {
        return Err(Error::Empty("tuple"));
    }
    for &x in s {
        eps.check_s(x)?;
        if !eps.in_s(x) {
            return Err(Error::NotInS(x));
        }
    }
    let mut v = s.to_vec();
    v.sort_unstable();
    let reordered = v != s;
    Ok((v, reordered))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    /// First `n` where the joint map differs from the product of components.
    pub first_failure: Option<u64>,
    /// The input was not sorted and has been reordered.
    pub reordered: bool,
}

/// Compares the dagger coefficient of the joint spec of `s̄` with the
/// product of component coefficients at the balanced partition, for all `n ≤ N`.
pub fn factorization_check(eps: &EpsilonChar, s: &[i64], n_max: u64) -> Result<FactorizationReport> {
    let (s, reordered) = canonical_tuple(eps, s)?;
    let u = s.len() as u64;
    let joint = ModuleSpec::from_tuple(*eps, &s)?;
    let singles: Vec<ModuleSpec> = s.iter().map(|&x| ModuleSpec::single(*eps, x)).collect::<Result<_>>()?;
    // Component coefficients are reused across n.
    let mut cache: BTreeMap<(i64, u64), BTreeMap<i64, u64>> = BTreeMap::new();
    for n in 0..=n_max {
        let parts = partition(n, u)?;
        let mut product: BTreeMap<i64, u64> = BTreeMap::new();
        for (i, &ni) in parts.iter().enumerate() {
            let c = cache.entry((s[i], ni)).or_insert_with(|| coefficient(&singles[i], ni, true).factors);
            for (&k, &e) in c.iter() {
                *product.entry(k).or_insert(0) += e;
            }
        }
        if coefficient(&joint, n, true).factors != product {
            return Ok(FactorizationReport { first_failure: Some(n), reordered });
        }
    }
    Ok(FactorizationReport { first_failure: None, reordered })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum ZigzagVerdict {
    /// The inequalities hold for every `n` with `n + 1 ≤ checked_upto`.
    Holds { checked_upto: u64 },
    /// Failure at `n` between sorted positions `i < j` (0-based).
    Fails { n: u64, i: usize, j: usize },
}

/// `Δh` of each component's dagger polygon: entry `n` is `h_{n+1} - h_n`.
fn dagger_steps(
    eps: &EpsilonChar,
    s: &[i64],
    w: &WStarProfile,
    n_trunc: u64,
) -> Result<(Vec<Vec<crate::padic::Valuation>>, u64)> {
    let mut polys: BTreeMap<i64, NewtonPolygon> = BTreeMap::new();
    for &x in s {
        if let std::collections::btree_map::Entry::Vacant(slot) = polys.entry(x) {
            slot.insert(series_polygon(&ModuleSpec::single(*eps, x)?, w, n_trunc, true));
        }
    }
    let range = polys.values().map(|p| p.confirmed_upto()).min().unwrap_or(0);
    let steps = s.iter().map(|x| polys[x].slope_list()).collect();
    Ok((steps, range))
}

/// The zigzag criterion on the component dagger polygons, over the range
/// where every component is certified.
pub fn zigzag_check(eps: &EpsilonChar, s: &[i64], w: &WStarProfile, n_trunc: u64) -> Result<ZigzagVerdict> {
    let (s, _) = canonical_tuple(eps, s)?;
    let (steps, range) = dagger_steps(eps, &s, w, n_trunc)?;
    zigzag_on_steps(&s, &steps, range)
}

/// [`zigzag_check`] restricted to `n + 1 ≤ upto`.
pub fn zigzag_check_upto(
    eps: &EpsilonChar,
    s: &[i64],
    w: &WStarProfile,
    n_trunc: u64,
    upto: u64,
) -> Result<ZigzagVerdict> {
    let (s, _) = canonical_tuple(eps, s)?;
    let (steps, range) = dagger_steps(eps, &s, w, n_trunc)?;
    zigzag_on_steps(&s, &steps, range.min(upto))
}

fn zigzag_on_steps(s: &[i64], steps: &[Vec<crate::padic::Valuation>], range: u64) -> Result<ZigzagVerdict> {
    for n in 0..range {
        let idx = n as usize;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[i] == s[j] {
                    continue;
                }
                let (di, dj) = (&steps[i][idx], &steps[j][idx]);
                let ok = if n % 2 == 1 { dj >= di } else { dj <= di };
                if !ok {
                    return Ok(ZigzagVerdict::Fails { n, i, j });
                }
            }
        }
    }
    Ok(ZigzagVerdict::Holds { checked_upto: range })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// Every pair is equal or companion: `s_i + s_j ≡ k0 - 1 mod p - 1`.
    pub holds: bool,
    /// Entries with `a_s` outside `[1, p - 4]`.
    pub non_generic: Vec<i64>,
}

impl ConditionReport {
    pub fn all_generic(&self) -> bool {
        self.non_generic.is_empty()
    }
}

/// Pairing condition on a tuple of s-parameters, stated through
/// `s_i + s_j ≡ k0 - 1`, which on pairs reads `(a', b') = ({p-3-a}, {a+b+1})`.
pub fn theorem_condition(eps: &EpsilonChar, s: &[i64]) -> Result<ConditionReport> {
    for &x in s {
        eps.check_s(x)?;
    }
    let m = eps.p() - 1;
    let mut holds = true;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] != s[j] && (s[i] + s[j] - eps.k0() + 1).rem_euclid(m) != 0 {
                holds = false;
            }
        }
    }
    let mut non_generic: Vec<i64> = s.iter().copied().filter(|&x| !eps.is_generic(x)).collect();
    non_generic.sort_unstable();
    non_generic.dedup();
    Ok(ConditionReport { holds, non_generic })
}

/// Result of comparing the polygon of a direct sum with the merge of the parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    /// The joint tuple, flattened and sorted.
    pub s: Vec<i64>,
    pub agreement: Agreement,
    /// Range `[0, x]` on which both polygons are certified.
    pub confirmed_upto: u64,
}

impl CompareReport {
    pub fn is_equal(&self) -> bool {
        self.agreement == Agreement::Equal
    }
}

/// Polygon of the joint spec against the `#`-merge of component polygons,
/// compared over the range certified for both. Components are truncated at
/// `N`, the joint spec at `N` times the number of components.
pub fn direct_sum_compare(specs: &[ModuleSpec], w: &WStarProfile, n_trunc: u64, dagger: bool) -> Result<CompareReport> {
    direct_sum_compare_capped(specs, w, n_trunc, dagger, u64::MAX)
}

/// [`direct_sum_compare`] over at most `[0, cap]`.
pub fn direct_sum_compare_capped(
    specs: &[ModuleSpec],
    w: &WStarProfile,
    n_trunc: u64,
    dagger: bool,
    cap: u64,
) -> Result<CompareReport> {
    let joint = ModuleSpec::join(specs)?;
    let mut merged: Option<NewtonPolygon> = None;
    for sp in specs {
        let p = series_polygon(sp, w, n_trunc, dagger);
        merged = Some(match merged {
            None => p,
            Some(m) => merge(&m, &p),
        });
    }
    let merged = merged.expect("nonempty spec list");
    let jp = series_polygon(&joint, w, n_trunc * specs.len() as u64, dagger);
    let x = jp.confirmed_upto().min(merged.confirmed_upto()).min(cap);
    let agreement = np_equal_upto(&jp, &merged, x)?;
    Ok(CompareReport { s: joint.flatten(), agreement, confirmed_upto: x })
}

/// Scans `profiles` in order for the first one where the tuple's joint
/// polygon differs from the merge. Best effort: finding nothing proves nothing.
pub fn witness_search(
    eps: &EpsilonChar,
    s: &[i64],
    profiles: &[WStarProfile],
    n_trunc: u64,
) -> Result<Option<(WStarProfile, u64)>> {
    let specs: Vec<ModuleSpec> = s.iter().map(|&x| ModuleSpec::single(*eps, x)).collect::<Result<_>>()?;
    if specs.is_empty() {
        return Err(Error::Empty("tuple"));
    }
    profiles
        .par_iter()
        .find_map_first(|w| match direct_sum_compare(&specs, w, n_trunc, false) {
            Ok(CompareReport { agreement: Agreement::DivergesAt(x), .. }) => Some(Ok((w.clone(), x))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .transpose()
}
