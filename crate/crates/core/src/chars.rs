//! The character data `(p, c, k0)`, the weight class `K`, the s-parameter
//! dictionary and distances between ghost zeros and evaluation points.

use std::fmt;

use crate::error::{Error, Result};
use crate::padic::{PrimeContext, Valuation};

/// `ε = ω^c × ω^(c + k0 - 2)`, stored as `(c, k0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EpsilonChar {
    ctx: PrimeContext,
    c: i64,
    k0: i64,
}

/// Least non-negative residue.
pub fn modp(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

impl EpsilonChar {
    pub fn new(p: i64, c: i64, k0: i64) -> Result<Self> {
        let ctx = PrimeContext::new(p)?;
        if !(0..=p - 2).contains(&c) {
            return Err(Error::OutOfRange { name: "c", value: c, lo: 0, hi: p - 2 });
        }
        if !(2..=p).contains(&k0) {
            return Err(Error::OutOfRange { name: "k0", value: k0, lo: 2, hi: p });
        }
        Ok(EpsilonChar { ctx, c, k0 })
    }

    pub fn ctx(&self) -> PrimeContext {
        self.ctx
    }

    pub fn p(&self) -> i64 {
        self.ctx.p()
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn k0(&self) -> i64 {
        self.k0
    }

    pub(crate) fn check_s(&self, s: i64) -> Result<()> {
        let p = self.p();
        if !(0..=p - 2).contains(&s) {
            return Err(Error::OutOfRange { name: "s", value: s, lo: 0, hi: p - 2 });
        }
        Ok(())
    }

    /// `s ↦ (a, b)` with `a = {k0 - 2 - 2s}` and `b = {c + s}`.
    pub fn iota(&self, s: i64) -> Result<(i64, i64)> {
        self.check_s(s)?;
        let m = self.p() - 1;
        Ok((modp(self.k0 - 2 - 2 * s, m), modp(self.c + s, m)))
    }

    /// Inverse of [`iota`](Self::iota) on related pairs.
    pub fn iota_inv(&self, a: i64, b: i64) -> Result<i64> {
        let p = self.p();
        for (name, v) in [("a", a), ("b", b)] {
            if !(0..=p - 2).contains(&v) {
                return Err(Error::OutOfRange { name, value: v, lo: 0, hi: p - 2 });
            }
        }
        if modp(a + 2 * b - 2 * self.c - self.k0 + 2, p - 1) != 0 {
            return Err(Error::Unrelated { a, b });
        }
        Ok(modp(b - self.c, p - 1))
    }

    /// `s' ≡ k0 - 1 - s`. On pairs this is `(a, b) ↦ ({p-3-a}, {a+b+1})`.
    pub fn companion(&self, s: i64) -> Result<i64> {
        self.check_s(s)?;
        Ok(modp(self.k0 - 1 - s, self.p() - 1))
    }

    /// `a_s = {k0 - 2 - 2s}`.
    pub fn a_of(&self, s: i64) -> i64 {
        modp(self.k0 - 2 - 2 * s, self.p() - 1)
    }

    /// `s` is generic when `1 ≤ a_s ≤ p - 4`.
    pub fn is_generic(&self, s: i64) -> bool {
        let a = self.a_of(s);
        1 <= a && a <= self.p() - 4
    }

    /// The window `S = [⌈(k0+1)/2⌉, ⌊(k0-4+p)/2⌋]`.
    pub fn s_set(&self) -> Vec<i64> {
        let lo = (self.k0 + 2) / 2;
        let hi = (self.k0 - 4 + self.p()) / 2;
        (lo..=hi).collect()
    }

    pub fn in_s(&self, s: i64) -> bool {
        let lo = (self.k0 + 2) / 2;
        let hi = (self.k0 - 4 + self.p()) / 2;
        (lo..=hi).contains(&s)
    }

    pub fn weight(&self, k: i64) -> Result<WeightK> {
        WeightK::new(*self, k)
    }

    pub fn weight_bullet(&self, kb: i64) -> Result<WeightK> {
        WeightK::new(*self, (self.p() - 1) * kb + self.k0)
    }

    /// `v_p(w_k - w_k') = 1 + v_p(k - k')` for distinct `k, k'`.
    pub fn wdist(&self, k: i64, k2: i64) -> Result<u32> {
        Ok(1 + self.ctx.vp(k - k2)?)
    }
}

/// A weight `k = (p-1)·k• + k0` with `k• ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightK {
    eps: EpsilonChar,
    k: i64,
    k_bullet: i64,
}

impl WeightK {
    pub fn new(eps: EpsilonChar, k: i64) -> Result<Self> {
        let m = eps.p() - 1;
        if k < 2 || k < eps.k0 || modp(k - eps.k0, m) != 0 {
            return Err(Error::NotInClass { k, k0: eps.k0 });
        }
        Ok(WeightK { eps, k, k_bullet: (k - eps.k0) / m })
    }

    pub fn eps(&self) -> EpsilonChar {
        self.eps
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn k_bullet(&self) -> i64 {
        self.k_bullet
    }
}

pub fn wdist(k: &WeightK, k2: &WeightK) -> Result<Valuation> {
    Ok(Valuation::int(k.eps.wdist(k.k, k2.k)? as i64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Anchor {
    /// `w⋆` near `0 = w_2`.
    Origin,
    Weight(WeightK),
}

impl Anchor {
    /// The integer `k⋆` whose ghost zero the point is close to; `2` for the origin.
    pub fn center(&self) -> i64 {
        match self {
            Anchor::Origin => 2,
            Anchor::Weight(w) => w.k,
        }
    }
}

/// Value of `min(t, d)` where `d` is an integer distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileValue {
    T,
    Int(i64),
}

/// An evaluation point `w⋆`, known only through `v_p(w⋆ - w_k)` for `k ∈ K`:
/// it sits at distance `t` from the anchor's ghost zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WStarProfile {
    anchor: Anchor,
    t: Valuation,
    /// `⌊t⌋` and whether `t` is an integer, cached for the integer fast path.
    t_floor: i64,
    t_int: bool,
}

impl WStarProfile {
    pub fn new(anchor: Anchor, t: Valuation) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::NonPositiveT(t.to_string()));
        }
        let fl = t.floor();
        let t_floor = i64::try_from(fl).map_err(|_| Error::Parse(format!("t = {t} is too large")))?;
        let t_int = t.is_integer();
        Ok(WStarProfile { anchor, t, t_floor, t_int })
    }

    pub fn origin(t: Valuation) -> Result<Self> {
        Self::new(Anchor::Origin, t)
    }

    pub fn anchor(&self) -> &Anchor {
        &self.anchor
    }

    pub fn t(&self) -> &Valuation {
        &self.t
    }

    /// `v_p(w⋆ - w_k)` split as either `t` or an integer.
    pub fn eval_split(&self, eps: &EpsilonChar, k: i64) -> ProfileValue {
        let center = self.anchor.center();
        if k == center {
            return ProfileValue::T;
        }
        let d = 1 + eps.ctx().vp(k - center).expect("k differs from the center") as i64;
        // min(t, d): t wins ties, which is the same value.
        if d > self.t_floor || (d == self.t_floor && self.t_int) {
            ProfileValue::T
        } else {
            ProfileValue::Int(d)
        }
    }

    /// Parses `origin:t=<r>` or `k=<int>:t=<r>`.
    pub fn parse(eps: &EpsilonChar, s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad profile {s:?}: expected origin:t=<r> or k=<int>:t=<r>"));
        let (head, tail) = s.trim().split_once(':').ok_or_else(bad)?;
        let t = tail.strip_prefix("t=").ok_or_else(bad)?;
        let t: Valuation = t.parse()?;
        let anchor = if head == "origin" {
            Anchor::Origin
        } else {
            let k = head.strip_prefix("k=").ok_or_else(bad)?;
            let k: i64 = k.parse().map_err(|_| bad())?;
            Anchor::Weight(eps.weight(k)?)
        };
        Self::new(anchor, t)
    }
}

impl fmt::Display for WStarProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.anchor {
            Anchor::Origin => write!(f, "origin:t={}", self.t.to_ratio_string()),
            Anchor::Weight(w) => write!(f, "k={}:t={}", w.k, self.t.to_ratio_string()),
        }
    }
}

/// Expands a sweep such as `anchors=origin,kb:0..200;t=1/2..20/1:step1/2`
/// into profiles, anchors outermost. Anchor items are `origin`, `kb:<a>..<b>`,
/// `kb:<n>` and `k:<k>`; `t` is a range with a step or a comma list.
pub fn parse_profile_family(eps: &EpsilonChar, text: &str) -> Result<Vec<WStarProfile>> {
    let bad = |m: &str| Error::Parse(format!("bad profile family {text:?}: {m}"));
    let mut anchors_txt = None;
    let mut t_txt = None;
    for field in text.split(';') {
        match field.trim().split_once('=') {
            Some(("anchors", v)) => anchors_txt = Some(v.trim()),
            Some(("t", v)) => t_txt = Some(v.trim()),
            _ => return Err(bad("expected anchors=… and t=… separated by ';'")),
        }
    }
    let (anchors_txt, t_txt) =
        (anchors_txt.ok_or_else(|| bad("missing anchors"))?, t_txt.ok_or_else(|| bad("missing t"))?);

    let mut anchors = Vec::new();
    for item in anchors_txt.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if item == "origin" {
            anchors.push(Anchor::Origin);
        } else if let Some(r) = item.strip_prefix("kb:") {
            let (a, b) = match r.split_once("..") {
                Some((a, b)) => (a, b),
                None => (r, r),
            };
            let a: i64 = a.trim().parse().map_err(|_| bad(item))?;
            let b: i64 = b.trim().parse().map_err(|_| bad(item))?;
            for kb in a..=b {
                anchors.push(Anchor::Weight(eps.weight_bullet(kb)?));
            }
        } else if let Some(k) = item.strip_prefix("k:") {
            anchors.push(Anchor::Weight(eps.weight(k.trim().parse().map_err(|_| bad(item))?)?));
        } else {
            return Err(bad(item));
        }
    }

    let mut ts = Vec::new();
    if let Some((range, step)) = t_txt.split_once(":step") {
        let (lo, hi) = range.split_once("..").ok_or_else(|| bad("t range needs lo..hi"))?;
        let (lo, hi, step): (Valuation, Valuation, Valuation) = (lo.parse()?, hi.parse()?, step.parse()?);
        if !step.is_positive() {
            return Err(bad("step must be positive"));
        }
        let mut t = lo;
        while t <= hi {
            ts.push(t.clone());
            t += &step;
        }
    } else {
        for x in t_txt.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            ts.push(x.parse()?);
        }
    }

    let mut out = Vec::with_capacity(anchors.len() * ts.len());
    for a in &anchors {
        for t in &ts {
            out.push(WStarProfile::new(*a, t.clone())?);
        }
    }
    Ok(out)
}

/// `v_p(w⋆ - w_k)`, taking the generic value `min(t, v_p(w_anchor - w_k))`.
pub fn profile_eval(w: &WStarProfile, k: &WeightK) -> Valuation {
    match w.eval_split(&k.eps, k.k) {
        ProfileValue::T => w.t.clone(),
        ProfileValue::Int(d) => Valuation::int(d),
    }
}
