//! Ghost series: exponents `m_n(k)`, coefficients as exponent maps, truncated
//! series, and valuations of their evaluations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::chars::{profile_eval, EpsilonChar, ProfileValue, WStarProfile, WeightK};
use crate::dims::ModuleSpec;
use crate::error::{Error, Result};
use crate::padic::Valuation;

/// Tent exponent for dims `(d_ur, d_iw)`.
pub fn tent(n: i64, ur: i64, iw: i64) -> i64 {
    if ur < n && n < iw - ur {
        (n - ur).min(iw - ur - n)
    } else {
        0
    }
}

/// Exponent of `(w - w_k)` in `g_n`.
pub fn m_exp(spec: &ModuleSpec, n: u64, k: &WeightK, dagger: bool) -> u64 {
    let (ur, iw) = spec.dims_kb(k.k_bullet(), dagger);
    tent(n as i64, ur, iw) as u64
}

/// `g_n = Π (w - w_k)^e`, stored as `k ↦ e` with every `e ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostCoefficient {
    pub n: u64,
    pub factors: BTreeMap<i64, u64>,
}

impl GhostCoefficient {
    pub fn degree(&self) -> u64 {
        self.factors.values().sum()
    }

    /// Exponent of `(w - w_k)`, zero off the support.
    pub fn exp_at(&self, k: i64) -> u64 {
        self.factors.get(&k).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct F {
            k: i64,
            e: u64,
        }
        #[derive(Serialize)]
        struct C {
            n: u64,
            factors: Vec<F>,
        }
        let c = C { n: self.n, factors: self.factors.iter().map(|(&k, &e)| F { k, e }).collect() };
        serde_json::to_string(&c).expect("plain data serializes")
    }
}

/// Calls `f(k•, d_ur, d_iw)` for every `k•` that can carry support at some
/// index `≤ n_max`. Stops three indices after `d_ur` first reaches `n_max`.
fn scan_support(spec: &ModuleSpec, n_max: i64, dagger: bool, mut f: impl FnMut(i64, i64, i64)) {
    let mut beyond = 0;
    let mut kb = 0;
    loop {
        let (ur, iw) = spec.dims_kb(kb, dagger);
        f(kb, ur, iw);
        if ur >= n_max {
            beyond += 1;
            if beyond > 3 {
                break;
            }
        }
        kb += 1;
    }
}

pub fn coefficient(spec: &ModuleSpec, n: u64, dagger: bool) -> GhostCoefficient {
    let eps = spec.eps();
    let mut factors = BTreeMap::new();
    scan_support(spec, n as i64, dagger, |kb, ur, iw| {
        let e = tent(n as i64, ur, iw);
        if e > 0 {
            factors.insert((eps.p() - 1) * kb + eps.k0(), e as u64);
        }
    });
    GhostCoefficient { n, factors }
}

/// The ghost series truncated at degree `N`.
#[derive(Debug, Clone)]
pub struct GhostSeries {
    spec: ModuleSpec,
    dagger: bool,
    coeffs: Vec<GhostCoefficient>,
}

impl GhostSeries {
    pub fn new(spec: &ModuleSpec, n_max: u64, dagger: bool) -> Self {
        let coeffs = (0..=n_max).map(|n| coefficient(spec, n, dagger)).collect();
        GhostSeries { spec: spec.clone(), dagger, coeffs }
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn dagger(&self) -> bool {
        self.dagger
    }

    pub fn n_max(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    pub fn coeffs(&self) -> &[GhostCoefficient] {
        &self.coeffs
    }

    pub fn coeff(&self, n: u64) -> Result<&GhostCoefficient> {
        self.coeffs.get(n as usize).ok_or(Error::OutOfRange {
            name: "n",
            value: n as i64,
            lo: 0,
            hi: self.n_max() as i64,
        })
    }

    /// `v_p(g_n(w⋆))` for each stored `n`, summed factor by factor.
    pub fn eval_valuations(&self, w: &WStarProfile) -> Vec<Valuation> {
        let eps = self.spec.eps();
        self.coeffs
            .iter()
            .map(|c| {
                let mut v = Valuation::zero();
                for (&k, &e) in &c.factors {
                    let k = WeightK::new(eps, k).expect("support lies in K");
                    v += &(&profile_eval(w, &k) * e as i64);
                }
                v
            })
            .collect()
    }
}

pub fn series(spec: &ModuleSpec, n_max: u64, dagger: bool) -> GhostSeries {
    GhostSeries::new(spec, n_max, dagger)
}

/// `Σ_k m_n(k)·weight(k•)` for all `n ≤ n_max` at once. Each tent is a second
/// difference with three breakpoints, so the cost is linear in the support
/// plus `n_max`. Weights are `(integer part, count of t)` pairs.
fn tent_sums(
    spec: &ModuleSpec,
    n_max: usize,
    dagger: bool,
    mut weight: impl FnMut(i64) -> (i64, i64),
) -> Vec<(i64, i64)> {
    let mut f0 = (0i64, 0i64);
    let mut d = vec![(0i64, 0i64); n_max + 1];
    scan_support(spec, n_max as i64, dagger, |kb, ur, iw| {
        let hi = iw - ur;
        if hi - ur < 2 || ur >= n_max as i64 {
            return;
        }
        let w = weight(kb);
        for (j, q) in [(ur, 1), (iw / 2, -2), (hi, 1)] {
            if j < 0 {
                f0.0 += q * w.0 * -j;
                f0.1 += q * w.1 * -j;
                d[0].0 += q * w.0;
                d[0].1 += q * w.1;
            } else if (j as usize) < n_max {
                d[j as usize].0 += q * w.0;
                d[j as usize].1 += q * w.1;
            }
        }
    });
    let mut out = Vec::with_capacity(n_max + 1);
    let mut cur = f0;
    let mut slope = (0i64, 0i64);
    out.push(cur);
    for step in d.iter().take(n_max) {
        slope.0 += step.0;
        slope.1 += step.1;
        cur.0 += slope.0;
        cur.1 += slope.1;
        out.push(cur);
    }
    out
}

/// `v_p(g_n(w⋆))` for `n = 0..=n_max`, as `(integer part, count of t)`:
/// the value is `int + count·t`.
pub fn valuation_parts(spec: &ModuleSpec, w: &WStarProfile, n_max: u64, dagger: bool) -> Vec<(i64, i64)> {
    let eps = spec.eps();
    tent_sums(spec, n_max as usize, dagger, |kb| match w.eval_split(&eps, (eps.p() - 1) * kb + eps.k0()) {
        ProfileValue::T => (0, 1),
        ProfileValue::Int(d) => (d, 0),
    })
}

/// Same values as [`GhostSeries::eval_valuations`] without building the
/// coefficient maps.
pub fn valuation_sequence(spec: &ModuleSpec, w: &WStarProfile, n_max: u64, dagger: bool) -> Vec<Valuation> {
    valuation_parts(spec, w, n_max, dagger).into_iter().map(|(i, c)| Valuation::int(i) + w.t() * c).collect()
}

/// `v_p(g_{n,k̂}(w_k))`: the valuation at `w_k` after removing the `(w - w_k)` factors.
pub fn eval_at_wk_hat(spec: &ModuleSpec, n: u64, k: &WeightK, dagger: bool) -> Valuation {
    let eps = spec.eps();
    let c = coefficient(spec, n, dagger);
    let mut v = 0i64;
    for (&k2, &e) in &c.factors {
        if k2 != k.k() {
            v += e as i64 * eps.wdist(k.k(), k2).expect("distinct weights") as i64;
        }
    }
    Valuation::int(v)
}

/// [`eval_at_wk_hat`] for every `n ≤ n_max` (integers).
pub fn wk_hat_sequence(spec: &ModuleSpec, k: &WeightK, n_max: u64, dagger: bool) -> Vec<i64> {
    let eps: EpsilonChar = spec.eps();
    let center = k.k();
    tent_sums(spec, n_max as usize, dagger, |kb| {
        let k2 = (eps.p() - 1) * kb + eps.k0();
        if k2 == center {
            (0, 0)
        } else {
            (eps.wdist(center, k2).expect("distinct weights") as i64, 0)
        }
    })
    .into_iter()
    .map(|x| x.0)
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{Anchor, EpsilonChar};

    fn e74() -> EpsilonChar {
        EpsilonChar::new(7, 0, 4).unwrap()
    }

    fn kmap(e: &EpsilonChar, pairs: &[(i64, u64)]) -> BTreeMap<i64, u64> {
        pairs.iter().map(|&(kb, x)| ((e.p() - 1) * kb + e.k0(), x)).collect()
    }

    #[test]
    fn exponent_examples() {
        let e = e74();
        let s3 = ModuleSpec::single(e, 3).unwrap();
        let w = |kb| e.weight_bullet(kb).unwrap();
        assert_eq!(m_exp(&s3, 2, &w(2), false), 2);
        assert_eq!(m_exp(&s3, 4, &w(4), false), 3);
        assert_eq!(m_exp(&s3, 1, &w(0), false), 0);
    }

    #[test]
    fn coefficient_examples() {
        let e = e74();
        let s3 = ModuleSpec::single(e, 3).unwrap();
        assert_eq!(coefficient(&s3, 1, false).factors, kmap(&e, &[(1, 1), (2, 1), (3, 1)]));
        let c2 = coefficient(&s3, 2, false);
        assert_eq!(c2.factors, kmap(&e, &[(2, 2), (3, 2), (4, 1), (5, 1), (6, 1), (7, 1)]));
        assert_eq!(
            c2.to_json(),
            r#"{"n":2,"factors":[{"k":16,"e":2},{"k":22,"e":2},{"k":28,"e":1},{"k":34,"e":1},{"k":40,"e":1},{"k":46,"e":1}]}"#
        );
        assert!(coefficient(&s3, 0, false).factors.is_empty());
        let s33 = ModuleSpec::new(e, &[(3, 2)]).unwrap();
        assert_eq!(coefficient(&s33, 2, false).factors, kmap(&e, &[(1, 2), (2, 2), (3, 2)]));
    }

    #[test]
    fn dagger_series_example() {
        let e = e74();
        let s3 = ModuleSpec::single(e, 3).unwrap();
        let g = series(&s3, 2, true);
        assert!(g.coeffs()[0].factors.is_empty());
        assert!(g.coeffs()[1].factors.is_empty());
        assert_eq!(g.coeffs()[2].factors, coefficient(&s3, 1, false).factors);
        assert!(g.coeff(3).is_err());
        assert_eq!(series(&s3, 0, false).coeffs().len(), 1);
    }

    #[test]
    fn evaluation_examples() {
        let e = e74();
        let s3 = ModuleSpec::single(e, 3).unwrap();
        let w = WStarProfile::new(Anchor::Origin, Valuation::ratio(1, 2)).unwrap();
        let v = series(&s3, 2, false).eval_valuations(&w);
        assert_eq!(v, vec![Valuation::int(0), Valuation::ratio(3, 2), Valuation::int(4)]);
        assert_eq!(valuation_sequence(&s3, &w, 2, false), v);
        let k16 = e.weight(16).unwrap();
        assert_eq!(eval_at_wk_hat(&s3, 2, &k16, false), Valuation::int(6));
        assert_eq!(eval_at_wk_hat(&s3, 1, &k16, false), Valuation::int(2));
        assert_eq!(eval_at_wk_hat(&s3, 0, &k16, false), Valuation::int(0));
        assert_eq!(&wk_hat_sequence(&s3, &k16, 2, false), &[0, 2, 6]);
    }
}
