//! The Δ′ invariants around a weight `k`: θ, A, B, Δ′ and their hull, the
//! closed-form increments, the chord slope `P_{k,ℓ}`, `F`, and near-Steinberg ranges.

use crate::chars::{profile_eval, EpsilonChar, WStarProfile, WeightK};
use crate::dims::{ModuleSpec, SParam};
use crate::error::{Error, Result};
use crate::ghost::wk_hat_sequence;
use crate::newton::{np_from_points, NewtonPolygon};
use crate::padic::Valuation;

/// `θ_{k,ℓ} = β_{k•-δ-ℓ} - β_{k•+1-δ-ℓ} + (p+1)/2`.
pub fn theta(sp: &SParam, k: &WeightK, l: i64) -> i64 {
    let n = k.k_bullet() - sp.delta() - l;
    sp.beta(n) - sp.beta(n + 1) + (sp.eps().p() + 1) / 2
}

/// Parity form of θ, valid for `s ∈ S`.
pub fn theta_closed(sp: &SParam, k: &WeightK, l: i64) -> Result<i64> {
    let eps = sp.eps();
    if !eps.in_s(sp.s()) {
        return Err(Error::NotInS(sp.s()));
    }
    Ok(if (k.k_bullet() + 1 - l).rem_euclid(2) == 0 {
        2 * sp.s() + 2 - eps.k0()
    } else {
        eps.p() - 1 - 2 * sp.s() + eps.k0()
    })
}

/// `(A_{k,ℓ}, B_{k,ℓ}) = ½(k - 2 ∓ (p+1)ℓ ± θ_{k,ℓ+1})`.
pub fn ab_values(sp: &SParam, k: &WeightK, l: i64) -> (i64, i64) {
    let p = sp.eps().p();
    let th = theta(sp, k, l + 1);
    let a2 = k.k() - 2 - (p + 1) * l + th;
    let b2 = k.k() - 2 + (p + 1) * l - th;
    assert!(a2 % 2 == 0 && b2 % 2 == 0, "A and B are integers");
    (a2 / 2, b2 / 2)
}

/// `d_new / 2` where `d_new = d_iw - 2 d_ur`.
pub fn half_d_new(sp: &SParam, k: &WeightK) -> i64 {
    (sp.d_iw(k) - 2 * sp.d_ur(k)) / 2
}

fn check_l(sp: &SParam, k: &WeightK, l: i64) -> Result<i64> {
    let half = half_d_new(sp, k);
    if l.abs() > half {
        return Err(Error::EllOutOfRange { l, half });
    }
    Ok(half)
}

/// `Δ′_{k,ℓ}`: valuation at `w_k` of `g_{½d_iw+ℓ}` without its `(w - w_k)`
/// factors, minus `(k-2)/2 · ℓ`.
pub fn delta_prime(sp: &SParam, k: &WeightK, l: i64) -> Result<Valuation> {
    check_l(sp, k, l)?;
    let n = (sp.d_iw(k) / 2 + l) as u64;
    let spec = ModuleSpec::single(sp.eps(), sp.s())?;
    let v = *wk_hat_sequence(&spec, k, n, false).last().expect("nonempty");
    Ok(Valuation::int(v) - Valuation::ratio((k.k() - 2) * l, 2))
}

/// Closed form of `Δ′_ℓ - Δ′_{ℓ-1}` for `s ∈ S`.
pub fn delta_increment(sp: &SParam, k: &WeightK, l: i64) -> Result<Valuation> {
    let half = check_l(sp, k, l)?;
    if l < 1 {
        return Err(Error::EllOutOfRange { l, half });
    }
    let eps = sp.eps();
    if !eps.in_s(sp.s()) {
        return Err(Error::NotInS(sp.s()));
    }
    let ctx = eps.ctx();
    let p = eps.p();
    let th = theta(sp, k, l);
    let (a, b) = ab_values(sp, k, l);
    let dig = |x: i64| ctx.dig_signed(x).map(|d| d as i64);
    let first = Valuation::ratio((p - 1) * (l - 1) + th, 2);
    let second = Valuation::ratio(th + dig(a)? + 2 * dig(l - 1)? - dig(b)?, p - 1);
    Ok(first + second)
}

/// `Δ′` on `|ℓ| ≤ ½d_new` and its lower convex hull.
#[derive(Debug, Clone)]
pub struct DeltaTable {
    pub sp: SParam,
    pub k: WeightK,
    pub half: i64,
    /// `values[ℓ + half] = Δ′_ℓ`.
    pub values: Vec<Valuation>,
    /// Hull over `x = ℓ + half`.
    pub hull: NewtonPolygon,
    /// First `ℓ > 0` with `Δ′_ℓ ≠ Δ′_{-ℓ}`, if any.
    pub asymmetry: Option<i64>,
}

impl DeltaTable {
    pub fn value(&self, l: i64) -> Result<&Valuation> {
        if l.abs() > self.half {
            return Err(Error::EllOutOfRange { l, half: self.half });
        }
        Ok(&self.values[(l + self.half) as usize])
    }

    /// Hull heights `Δ̄_ℓ` for `ℓ = -half..=half`.
    pub fn hull_values(&self) -> Vec<Valuation> {
        self.hull.h_values(2 * self.half as u64).expect("hull spans the table")
    }

    /// TSV with columns `l`, `delta`, `hull`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("l\tdelta\thull\n");
        for (i, (v, h)) in self.values.iter().zip(self.hull_values()).enumerate() {
            out.push_str(&format!("{}\t{}\t{}\n", i as i64 - self.half, v, h));
        }
        out
    }
}

pub fn delta_hull(sp: &SParam, k: &WeightK) -> Result<DeltaTable> {
    let half = half_d_new(sp, k);
    let iw2 = sp.d_iw(k) / 2;
    let spec = ModuleSpec::single(sp.eps(), sp.s())?;
    let raw = wk_hat_sequence(&spec, k, (iw2 + half).max(0) as u64, false);
    let values: Vec<Valuation> = (-half..=half)
        .map(|l| Valuation::int(raw[(iw2 + l) as usize]) - Valuation::ratio((k.k() - 2) * l, 2))
        .collect();
    let pts: Vec<(u64, Valuation)> = values.iter().cloned().enumerate().map(|(i, v)| (i as u64, v)).collect();
    let hull = np_from_points(&pts)?;
    let asymmetry = (1..=half).find(|&l| values[(half + l) as usize] != values[(half - l) as usize]);
    Ok(DeltaTable { sp: *sp, k: *k, half, values, hull, asymmetry })
}

/// `s_{k,ℓ}`: the smallest element of `S` when `k• + 1 - ℓ` is odd, the largest otherwise.
pub fn s_kl(eps: &EpsilonChar, k: &WeightK, l: i64) -> i64 {
    if (k.k_bullet() + 1 - l).rem_euclid(2) == 1 {
        (eps.k0() + 2) / 2
    } else {
        (eps.k0() + eps.p() - 4) / 2
    }
}

/// `P_{k,ℓ}`, the chord slope predicted around `ℓ`.
pub fn p_kl(eps: &EpsilonChar, k: &WeightK, l: i64) -> Result<Valuation> {
    if l < 1 {
        return Err(Error::OutOfRange { name: "l", value: l, lo: 1, hi: i64::MAX });
    }
    let p = eps.p();
    let sp = SParam::new(*eps, s_kl(eps, k, l))?;
    let ctx = eps.ctx();
    let dig = |x: i64| ctx.dig_signed(x).map(|d| d as i64);
    let (a0, b0) = ab_values(&sp, k, l);
    let (a1, b1) = ab_values(&sp, k, l + 1);
    let two_p = Valuation::ratio((p - 1) * (2 * l - 1) + p + 1, 2)
        + Valuation::ratio(p + 1 + 2 * (dig(l)? + dig(l - 1)?), p - 1)
        - Valuation::ratio(dig(b1)? - dig(a0)? + dig(b0)? - dig(a1)?, p - 1);
    Ok(two_p / 2)
}

/// `F(r) = Δ′_{c+r} - Δ′_{c+r-1} - (Δ′_{c-r+1} - Δ′_{c-r})` about the center `c`.
pub fn f_value(sp: &SParam, k: &WeightK, r: i64, center: i64) -> Result<Valuation> {
    let d = |l: i64| delta_prime(sp, k, l);
    Ok(d(center + r)? - d(center + r - 1)? - (d(center - r + 1)? - d(center - r)?))
}

/// Same as [`f_value`] on a precomputed table.
pub fn f_value_table(t: &DeltaTable, r: i64, center: i64) -> Result<Valuation> {
    let d = |l: i64| t.value(l).cloned();
    Ok(d(center + r)? - d(center + r - 1)? - (d(center - r + 1)? - d(center - r)?))
}

/// `L` and the open index range `(½d_iw† - L, ½d_iw† + L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NearSteinberg {
    pub l: i64,
    pub lo: i64,
    pub hi: i64,
}

/// Largest `L ≤ ½d_new` with `v_p(w⋆ - w_k) ≥ Δ̄_L - Δ̄_{L-1}`.
pub fn near_steinberg_from_table(t: &DeltaTable, v: &Valuation) -> Option<NearSteinberg> {
    let h = t.hull_values();
    let mid = t.k.k_bullet() + 1;
    (1..=t.half)
        .rev()
        .find(|&l| {
            let i = (l + t.half) as usize;
            v >= &(&h[i] - &h[i - 1])
        })
        .map(|l| NearSteinberg { l, lo: mid - l, hi: mid + l })
}

pub fn near_steinberg(sp: &SParam, k: &WeightK, w: &WStarProfile) -> Result<Option<NearSteinberg>> {
    let t = delta_hull(sp, k)?;
    Ok(near_steinberg_from_table(&t, &profile_eval(w, k)))
}
