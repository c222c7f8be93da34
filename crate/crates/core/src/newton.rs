//! Newton polygons of valuation sequences: lower convex hulls, the `#`-merge,
//! stretching, readout, comparison and truncation confirmation.

use std::cmp::Ordering;
use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::chars::WStarProfile;
use crate::dims::ModuleSpec;
use crate::error::{Error, Result};
use crate::ghost::valuation_parts;
use crate::padic::Valuation;

/// Lower convex hull of `(i, ys[i])`, as the indices of its vertices.
/// Collinear points are dropped.
pub fn lower_hull<T>(ys: &[T]) -> Vec<usize>
where
    T: Clone + Ord + From<i64>,
    for<'a> &'a T: Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let mut h: Vec<usize> = Vec::new();
    for j in 0..ys.len() {
        while h.len() >= 2 {
            let o = h[h.len() - 2];
            let a = h[h.len() - 1];
            let lhs = &T::from((a - o) as i64) * &(&ys[j] - &ys[o]);
            let rhs = &(&ys[a] - &ys[o]) * &T::from((j - o) as i64);
            if lhs <= rhs {
                h.pop();
            } else {
                break;
            }
        }
        h.push(j);
    }
    h
}

/// A lower convex hull starting at `x = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<(u64, Valuation)>,
    /// Strictly increasing slopes with their horizontal lengths.
    slopes: Vec<(Valuation, u64)>,
    confirmed_upto: u64,
    /// The points come from a truncated series: more slopes, each at least
    /// the last known one, may exist past the end.
    open_tail: bool,
}

/// Outcome of [`np_equal_upto`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Equal,
    /// Smallest `x` where the two hulls take different values.
    DivergesAt(u64),
}

#[derive(Serialize)]
struct PolygonJson<'a> {
    base: &'a Valuation,
    vertices: &'a [(u64, Valuation)],
    slopes: Vec<&'a Valuation>,
    confirmed_upto: u64,
}

impl NewtonPolygon {
    fn from_slopes(base: Valuation, slopes: Vec<(Valuation, u64)>, confirmed_upto: u64, open_tail: bool) -> Self {
        let mut vertices = vec![(0, base)];
        for (s, len) in &slopes {
            let (x, y) = vertices.last().expect("nonempty").clone();
            vertices.push((x + len, y + s * *len as i64));
        }
        NewtonPolygon { vertices, slopes, confirmed_upto, open_tail }
    }

    /// Hull of `(n, values[n] / den)` given integer numerators.
    fn from_scaled<T>(ys: &[T], den: &BigInt, to_big: impl Fn(&T) -> BigInt) -> Self
    where
        T: Clone + Ord + From<i64>,
        for<'a> &'a T: Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
    {
        let idx = lower_hull(ys);
        let val = |i: usize| Valuation(BigRational::new(to_big(&ys[i]), den.clone()));
        let mut slopes = Vec::with_capacity(idx.len().saturating_sub(1));
        for w in idx.windows(2) {
            let len = (w[1] - w[0]) as i64;
            let rise = to_big(&(&ys[w[1]] - &ys[w[0]]));
            slopes.push((Valuation(BigRational::new(rise, den * BigInt::from(len))), len as u64));
        }
        let last = ys.len() as u64 - 1;
        Self::from_slopes(val(0), slopes, last, false)
    }

    pub fn base(&self) -> &Valuation {
        &self.vertices[0].1
    }

    pub fn vertices(&self) -> &[(u64, Valuation)] {
        &self.vertices
    }

    /// Distinct slopes with their lengths.
    pub fn slope_groups(&self) -> &[(Valuation, u64)] {
        &self.slopes
    }

    /// Slope multiset, each slope repeated by its length.
    pub fn slope_list(&self) -> Vec<Valuation> {
        let mut out = Vec::new();
        for (s, len) in &self.slopes {
            out.extend(std::iter::repeat(s.clone()).take(*len as usize));
        }
        out
    }

    pub fn last_x(&self) -> u64 {
        self.vertices.last().expect("nonempty").0
    }

    pub fn confirmed_upto(&self) -> u64 {
        self.confirmed_upto
    }

    pub fn is_truncated(&self) -> bool {
        self.open_tail
    }

    /// Marks the polygon as a truncation whose prefix `[0, c]` is certified.
    pub fn with_confirmation(mut self, c: u64, open_tail: bool) -> Self {
        self.confirmed_upto = c.min(self.last_x());
        self.open_tail = open_tail;
        self
    }

    /// Slope of the unit step ending at `x` (`1 ≤ x ≤ last_x`).
    fn step_slope(&self, x: u64) -> &Valuation {
        let mut end = 0;
        for (s, len) in &self.slopes {
            end += len;
            if x <= end {
                return s;
            }
        }
        panic!("step {x} beyond the polygon")
    }

    /// Hull heights at `x = 0..=upto`.
    pub fn h_values(&self, upto: u64) -> Result<Vec<Valuation>> {
        if upto > self.last_x() {
            return Err(Error::OutOfRange { name: "x", value: upto as i64, lo: 0, hi: self.last_x() as i64 });
        }
        let mut out = Vec::with_capacity(upto as usize + 1);
        let mut y = self.base().clone();
        out.push(y.clone());
        'outer: for (s, len) in &self.slopes {
            for _ in 0..*len {
                if out.len() as u64 > upto {
                    break 'outer;
                }
                y += s;
                out.push(y.clone());
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let j = PolygonJson {
            base: self.base(),
            vertices: &self.vertices,
            slopes: self.slopes.iter().flat_map(|(s, l)| std::iter::repeat(s).take(*l as usize)).collect(),
            confirmed_upto: self.confirmed_upto,
        };
        serde_json::to_string(&j).expect("plain data serializes")
    }

    /// Number of leading unit steps on which two polygons agree, with equal bases.
    fn common_steps(&self, other: &NewtonPolygon) -> Option<u64> {
        if self.base() != other.base() {
            return None;
        }
        let (mut i, mut j) = (0, 0);
        let (mut ri, mut rj) = (self.slopes.first().map_or(0, |s| s.1), other.slopes.first().map_or(0, |s| s.1));
        let mut n = 0;
        while i < self.slopes.len() && j < other.slopes.len() {
            if self.slopes[i].0 != other.slopes[j].0 {
                break;
            }
            let take = ri.min(rj);
            n += take;
            ri -= take;
            rj -= take;
            if ri == 0 {
                i += 1;
                ri = self.slopes.get(i).map_or(0, |s| s.1);
            }
            if rj == 0 {
                j += 1;
                rj = other.slopes.get(j).map_or(0, |s| s.1);
            }
        }
        Some(n)
    }
}

/// Hull of points at `x = 0, 1, …, N`.
pub fn np_from_points(points: &[(u64, Valuation)]) -> Result<NewtonPolygon> {
    if points.is_empty() {
        return Err(Error::Empty("point list"));
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if *x != i as u64 {
            return Err(Error::Parse(format!("points must sit at x = 0..N; found x = {x} at position {i}")));
        }
    }
    let ys: Vec<&Valuation> = points.iter().map(|p| &p.1).collect();
    Ok(np_from_values(&ys))
}

fn np_from_values(ys: &[&Valuation]) -> NewtonPolygon {
    let den = ys.iter().fold(BigInt::one(), |l, y| l.lcm(y.denom()));
    let scaled: Vec<BigInt> = ys.iter().map(|y| y.numer() * (&den / y.denom())).collect();
    let small: Option<Vec<i128>> = scaled.iter().map(|v| v.to_i64().map(i128::from)).collect();
    match small {
        Some(s) => NewtonPolygon::from_scaled(&s, &den, |v| BigInt::from(*v)),
        None => NewtonPolygon::from_scaled(&scaled, &den, |v| v.clone()),
    }
}

/// Hull of values given as `int + count·t`.
fn np_from_parts(parts: &[(i64, i64)], t: &Valuation) -> NewtonPolygon {
    if let Some((num, den)) = t.to_i64_pair() {
        let ys: Option<Vec<i128>> = parts
            .iter()
            .map(|&(i, c)| (i as i128).checked_mul(den as i128)?.checked_add((c as i128).checked_mul(num as i128)?))
            .collect();
        if let Some(ys) = ys {
            return NewtonPolygon::from_scaled(&ys, &BigInt::from(den), |v| BigInt::from(*v));
        }
    }
    let vals: Vec<Valuation> = parts.iter().map(|&(i, c)| Valuation::int(i) + t * c).collect();
    let refs: Vec<&Valuation> = vals.iter().collect();
    np_from_values(&refs)
}

/// `A # B`: bases add, slope multisets are united.
///
/// The certified prefix of the result only keeps slopes that cannot be
/// preceded by unseen slopes from a truncated input: with `τ` the smallest
/// last-certified slope among inputs that may continue, it counts certified
/// steps of slope at most `τ`.
pub fn merge(a: &NewtonPolygon, b: &NewtonPolygon) -> NewtonPolygon {
    let mut slopes: Vec<(Valuation, u64)> = Vec::with_capacity(a.slopes.len() + b.slopes.len());
    let (mut i, mut j) = (0, 0);
    while i < a.slopes.len() || j < b.slopes.len() {
        let ord = match (a.slopes.get(i), b.slopes.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                slopes.push(a.slopes[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                slopes.push(b.slopes[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                slopes.push((a.slopes[i].0.clone(), a.slopes[i].1 + b.slopes[j].1));
                i += 1;
                j += 1;
            }
        }
    }

    let uncertain = |p: &NewtonPolygon| p.open_tail || p.confirmed_upto < p.last_x();
    let mut tau: Option<Option<&Valuation>> = None;
    for p in [a, b] {
        if uncertain(p) {
            // None stands for "nothing certified".
            let s = if p.confirmed_upto == 0 { None } else { Some(p.step_slope(p.confirmed_upto)) };
            tau = Some(match tau {
                None => s,
                Some(None) => None,
                Some(Some(cur)) => s.map(|s| if s < cur { s } else { cur }),
            });
        }
    }
    let certified = |p: &NewtonPolygon| -> u64 {
        match tau {
            None => p.confirmed_upto,
            Some(None) => 0,
            Some(Some(tau)) => {
                let mut n = 0;
                let mut end = 0;
                for (s, len) in &p.slopes {
                    if s > tau || end >= p.confirmed_upto {
                        break;
                    }
                    n += (*len).min(p.confirmed_upto - end);
                    end += len;
                }
                n
            }
        }
    };
    let confirmed = certified(a) + certified(b);
    NewtonPolygon::from_slopes(a.base() + b.base(), slopes, confirmed, a.open_tail || b.open_tail)
}

/// Scales both axes by `m`: every slope's length is multiplied by `m`.
pub fn stretch(a: &NewtonPolygon, m: u64) -> Result<NewtonPolygon> {
    if m == 0 {
        return Err(Error::OutOfRange { name: "m", value: 0, lo: 1, hi: i64::MAX });
    }
    let slopes = a.slopes.iter().map(|(s, l)| (s.clone(), l * m)).collect();
    Ok(NewtonPolygon::from_slopes(a.base() * m as i64, slopes, a.confirmed_upto * m, a.open_tail))
}

/// Compares two polygons as functions on `[0, x_max]`.
pub fn np_equal_upto(a: &NewtonPolygon, b: &NewtonPolygon, x_max: u64) -> Result<Agreement> {
    let c = a.confirmed_upto.min(b.confirmed_upto);
    if x_max > c {
        return Err(Error::Unconfirmed { requested: x_max, confirmed: c });
    }
    Ok(match a.common_steps(b) {
        None => Agreement::DivergesAt(0),
        Some(n) if n >= x_max => Agreement::Equal,
        Some(n) => Agreement::DivergesAt(n + 1),
    })
}

/// Newton polygon of the ghost series of `spec` at `w⋆`, truncated at `N`.
/// Its certified prefix is the range on which the hulls at truncation `N`
/// and `2N` coincide.
pub fn series_polygon(spec: &ModuleSpec, w: &WStarProfile, n_trunc: u64, dagger: bool) -> NewtonPolygon {
    let parts = valuation_parts(spec, w, 2 * n_trunc, dagger);
    let short = np_from_parts(&parts[..=n_trunc as usize], w.t());
    let long = np_from_parts(&parts, w.t());
    let agree = short.common_steps(&long).unwrap_or(0).min(n_trunc);
    short.with_confirmation(agree, true)
}

pub fn confirmed_prefix(spec: &ModuleSpec, w: &WStarProfile, n_trunc: u64, dagger: bool) -> u64 {
    series_polygon(spec, w, n_trunc, dagger).confirmed_upto
}

/// Prepends a horizontal segment of length `len` at height `base`.
/// The result is convex as long as the first slope is nonnegative.
pub fn prepend_horizontal(a: &NewtonPolygon, len: u64) -> NewtonPolygon {
    let zero = Valuation::zero();
    let mut slopes = Vec::with_capacity(a.slopes.len() + 1);
    if len > 0 {
        slopes.push((zero.clone(), len));
    }
    for (s, l) in &a.slopes {
        match slopes.last_mut() {
            Some((t, ll)) if t == s => *ll += l,
            _ => slopes.push((s.clone(), *l)),
        }
    }
    NewtonPolygon::from_slopes(a.base().clone(), slopes, a.confirmed_upto + len, a.open_tail)
}
