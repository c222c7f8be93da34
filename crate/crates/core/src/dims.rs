//! Dimension formulas: the `(δ, t1, t2)` table, `β_n`, `d^Iw`, `d^ur`, their
//! dagger normalizations, and sums over direct sums of modules.

use std::fmt;

use crate::chars::{modp, EpsilonChar, WeightK};
use crate::error::{Error, Result};

/// One s-parameter with its derived constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SParam {
    eps: EpsilonChar,
    s: i64,
    a: i64,
    b: i64,
    delta: i64,
    t1: i64,
    t2: i64,
}

impl SParam {
    pub fn new(eps: EpsilonChar, s: i64) -> Result<Self> {
        let (a, b) = eps.iota(s)?;
        let m = eps.p() - 1;
        let delta = (s + modp(a + s, m)) / m;
        let (t1, t2) =
            if a + s < m { (s + delta, a + s + delta + 2) } else { (modp(a + s, m) + delta + 1, s + delta + 1) };
        Ok(SParam { eps, s, a, b, delta, t1, t2 })
    }

    pub fn eps(&self) -> EpsilonChar {
        self.eps
    }
    pub fn s(&self) -> i64 {
        self.s
    }
    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn delta(&self) -> i64 {
        self.delta
    }
    pub fn t1(&self) -> i64 {
        self.t1
    }
    pub fn t2(&self) -> i64 {
        self.t2
    }
    pub fn is_generic(&self) -> bool {
        self.eps.is_generic(self.s)
    }

    /// `(δ_s, t1, t2)`.
    pub fn table_row(&self) -> (i64, i64, i64) {
        (self.delta, self.t1, self.t2)
    }

    /// `β_n`: `t1` for even `n`, `t2 - (p+1)/2` for odd `n`.
    pub fn beta(&self, n: i64) -> i64 {
        if n.rem_euclid(2) == 0 {
            self.t1
        } else {
            self.t2 - (self.eps.p() + 1) / 2
        }
    }

    pub fn d_iw_kb(&self, kb: i64) -> i64 {
        2 * kb + 2 - 2 * self.delta
    }

    pub fn d_ur_kb(&self, kb: i64) -> i64 {
        let q = self.eps.p() + 1;
        (kb - self.t1).div_euclid(q) + (kb - self.t2).div_euclid(q) + 2
    }

    /// `(d_ur + δ, 2k• + 2)`.
    pub fn d_dagger_kb(&self, kb: i64) -> (i64, i64) {
        (self.d_ur_kb(kb) + self.delta, 2 * kb + 2)
    }

    pub fn d_iw(&self, k: &WeightK) -> i64 {
        self.d_iw_kb(k.k_bullet())
    }

    pub fn d_ur(&self, k: &WeightK) -> i64 {
        self.d_ur_kb(k.k_bullet())
    }

    pub fn d_dagger(&self, k: &WeightK) -> (i64, i64) {
        self.d_dagger_kb(k.k_bullet())
    }
}

/// The four-row case table for `(δ_s, t1, t2)`, independent of the
/// closed-form construction in [`SParam::new`].
pub fn table_by_rows(eps: &EpsilonChar, s: i64) -> Result<(i64, i64, i64)> {
    eps.check_s(s)?;
    let (p, k0) = (eps.p(), eps.k0());
    Ok(if s <= (k0 - 2).div_euclid(2) {
        (0, s, k0 - s)
    } else if s <= k0 - 2 {
        (0, k0 - s - 1, s + 1)
    } else if s <= (k0 + p - 3) / 2 {
        (1, s + 1, p + k0 - s)
    } else {
        (1, k0 - s + p - 1, s + 2)
    })
}

/// A direct sum of modules, one per s-parameter with multiplicity. Always
/// sorted by `s` with equal entries merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleSpec {
    eps: EpsilonChar,
    components: Vec<(SParam, u32)>,
}

/// One summand of `r̄`: a pair `(a, b)` and whether the inertia restriction splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RbarPart {
    pub a: i64,
    pub b: i64,
    pub split: bool,
    pub mult: u32,
}

impl ModuleSpec {
    pub fn new(eps: EpsilonChar, parts: &[(i64, u32)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Empty("module spec"));
        }
        let mut v: Vec<(i64, u32)> = Vec::with_capacity(parts.len());
        for &(s, m) in parts {
            eps.check_s(s)?;
            if m == 0 {
                return Err(Error::OutOfRange { name: "multiplicity", value: 0, lo: 1, hi: u32::MAX as i64 });
            }
            v.push((s, m));
        }
        v.sort_by_key(|x| x.0);
        let mut components: Vec<(SParam, u32)> = Vec::new();
        for (s, m) in v {
            match components.last_mut() {
                Some((sp, mm)) if sp.s == s => *mm += m,
                _ => components.push((SParam::new(eps, s)?, m)),
            }
        }
        Ok(ModuleSpec { eps, components })
    }

    pub fn single(eps: EpsilonChar, s: i64) -> Result<Self> {
        Self::new(eps, &[(s, 1)])
    }

    /// Spec of the tuple `s̄`, one component per entry.
    pub fn from_tuple(eps: EpsilonChar, s: &[i64]) -> Result<Self> {
        let parts: Vec<(i64, u32)> = s.iter().map(|&x| (x, 1)).collect();
        Self::new(eps, &parts)
    }

    pub fn eps(&self) -> EpsilonChar {
        self.eps
    }

    pub fn components(&self) -> &[(SParam, u32)] {
        &self.components
    }

    /// The nondecreasing tuple of s-values, repeated by multiplicity.
    pub fn flatten(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for (sp, m) in &self.components {
            out.extend(std::iter::repeat(sp.s).take(*m as usize));
        }
        out
    }

    pub fn total_mult(&self) -> u64 {
        self.components.iter().map(|c| c.1 as u64).sum()
    }

    /// `Σ mult·δ_s`: the index shift between plain and dagger series.
    pub fn delta_sum(&self) -> i64 {
        self.components.iter().map(|(sp, m)| sp.delta * *m as i64).sum()
    }

    /// Union of several specs (sum of multisets).
    pub fn join(specs: &[ModuleSpec]) -> Result<Self> {
        let first = specs.first().ok_or(Error::Empty("spec list"))?;
        let mut parts = Vec::new();
        for sp in specs {
            if sp.eps != first.eps {
                return Err(Error::Parse("specs use different characters".into()));
            }
            parts.extend(sp.components.iter().map(|(x, m)| (x.s, *m)));
        }
        Self::new(first.eps, &parts)
    }

    /// `(d_ur, d_iw)` summed over components at `k•`.
    pub fn dims_kb(&self, kb: i64, dagger: bool) -> (i64, i64) {
        let mut ur = 0;
        let mut iw = 0;
        for (sp, m) in &self.components {
            let m = *m as i64;
            let (u, i) = if dagger { sp.d_dagger_kb(kb) } else { (sp.d_ur_kb(kb), sp.d_iw_kb(kb)) };
            ur += m * u;
            iw += m * i;
        }
        (ur, iw)
    }

    /// Parses `s:3x2+s:0` or `ab:2,3,split` (components joined by `+`,
    /// optional `x<mult>` suffix, `nonsplit` is the default).
    pub fn parse(eps: EpsilonChar, text: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("bad spec component {what:?}"));
        let mut plain = Vec::new();
        let mut rbar = Vec::new();
        for part in text.split('+') {
            let part = part.trim();
            let (body, mult) = match part.rsplit_once('x') {
                Some((b, m)) if !m.is_empty() && m.bytes().all(|c| c.is_ascii_digit()) => {
                    (b, m.parse::<u32>().map_err(|_| bad(part))?)
                }
                _ => (part, 1),
            };
            if let Some(s) = body.strip_prefix("s:") {
                plain.push((s.trim().parse::<i64>().map_err(|_| bad(part))?, mult));
            } else if let Some(ab) = body.strip_prefix("ab:") {
                let f: Vec<&str> = ab.split(',').map(str::trim).collect();
                let num = |x: &str| x.parse::<i64>().map_err(|_| bad(part));
                let split = match f.get(2).copied() {
                    None | Some("nonsplit") => false,
                    Some("split") => true,
                    _ => return Err(bad(part)),
                };
                if f.len() < 2 || f.len() > 3 {
                    return Err(bad(part));
                }
                rbar.push(RbarPart { a: num(f[0])?, b: num(f[1])?, split, mult });
            } else {
                return Err(bad(part));
            }
        }
        if !rbar.is_empty() {
            let from = spec_from_rbar(eps, &rbar)?;
            plain.extend(from.components.iter().map(|(x, m)| (x.s, *m)));
        }
        Self::new(eps, &plain)
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (sp, m)) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "s:{}", sp.s)?;
            if *m > 1 {
                write!(f, "x{m}")?;
            }
        }
        Ok(())
    }
}

/// Multiplicity-weighted `(d_ur, d_iw)` of a spec at `k`.
pub fn spec_dims(spec: &ModuleSpec, k: &WeightK, dagger: bool) -> (i64, i64) {
    spec.dims_kb(k.k_bullet(), dagger)
}

/// Expands `r̄` into s-parameters. A split part also contributes its
/// companion `({p-3-a}, {a+b+1})`.
pub fn spec_from_rbar(eps: EpsilonChar, parts: &[RbarPart]) -> Result<ModuleSpec> {
    let m = eps.p() - 1;
    let mut out = Vec::new();
    for part in parts {
        let s = eps.iota_inv(part.a, part.b)?;
        out.push((s, part.mult));
        if part.split {
            let s2 = eps.iota_inv(modp(eps.p() - 3 - part.a, m), modp(part.a + part.b + 1, m))?;
            out.push((s2, part.mult));
        }
    }
    ModuleSpec::new(eps, &out)
}
