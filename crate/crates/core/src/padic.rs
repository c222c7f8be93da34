//! p-adic primitives: valuations, base-p digit sums and exact rational values.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A validated prime `p ≥ 7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u32,
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeContext {
    pub fn new(p: i64) -> Result<Self> {
        if p < 7 || p > u32::MAX as i64 || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(PrimeContext { p: p as u32 })
    }

    pub fn p(&self) -> i64 {
        self.p as i64
    }

    /// `v_p(n)`; zero has infinite valuation and is rejected.
    pub fn vp(&self, n: i64) -> Result<u32> {
        if n == 0 {
            return Err(Error::InfiniteValuation);
        }
        let p = self.p as u64;
        let mut m = n.unsigned_abs();
        let mut v = 0;
        while m % p == 0 {
            m /= p;
            v += 1;
        }
        Ok(v)
    }

    /// Sum of the base-p digits of `m`.
    pub fn dig(&self, m: u64) -> u64 {
        let p = self.p as u64;
        let mut m = m;
        let mut s = 0;
        while m > 0 {
            s += m % p;
            m /= p;
        }
        s
    }

    /// Digit sum of a signed integer, rejecting negatives.
    pub fn dig_signed(&self, m: i64) -> Result<u64> {
        if m < 0 {
            return Err(Error::NegativeDigits(m));
        }
        Ok(self.dig(m as u64))
    }

    /// `Σ_{m1 < i ≤ m2} v_p(i)` through Legendre's digit-sum formula.
    pub fn vp_range_sum(&self, m1: u64, m2: u64) -> Result<u64> {
        if m1 > m2 {
            return Err(Error::OutOfRange { name: "m1", value: m1 as i64, lo: 0, hi: m2 as i64 });
        }
        let f = |m: u64| (m - self.dig(m)) / (self.p as u64 - 1);
        Ok(f(m2) - f(m1))
    }
}

/// An exact rational valuation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(pub BigRational);

impl Valuation {
    pub fn zero() -> Self {
        Valuation(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        Valuation(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Valuation(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Numerator and denominator as machine integers, when they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.0.numer().to_i64()?, self.0.denom().to_i64()?))
    }

    /// Always `num/den`, even for integers.
    pub fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn one() -> Self {
        Valuation(BigRational::one())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Valuation {
    type Err = Error;

    /// Accepts `n`, `-n` and `n/d` with `d > 0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if !d.is_positive() {
            return Err(bad());
        }
        Ok(Valuation(BigRational::new(n, d)))
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, o: Valuation) -> Valuation {
        Valuation(self.0 + o.0)
    }
}

impl<'a> Add<&'a Valuation> for &'a Valuation {
    type Output = Valuation;
    fn add(self, o: &Valuation) -> Valuation {
        Valuation(&self.0 + &o.0)
    }
}

impl AddAssign<&Valuation> for Valuation {
    fn add_assign(&mut self, o: &Valuation) {
        self.0 += &o.0;
    }
}

impl Sub for Valuation {
    type Output = Valuation;
    fn sub(self, o: Valuation) -> Valuation {
        Valuation(self.0 - o.0)
    }
}

impl<'a> Sub<&'a Valuation> for &'a Valuation {
    type Output = Valuation;
    fn sub(self, o: &Valuation) -> Valuation {
        Valuation(&self.0 - &o.0)
    }
}

impl Neg for Valuation {
    type Output = Valuation;
    fn neg(self) -> Valuation {
        Valuation(-self.0)
    }
}

impl Mul<i64> for &Valuation {
    type Output = Valuation;
    fn mul(self, k: i64) -> Valuation {
        Valuation(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }
}

impl Mul<i64> for Valuation {
    type Output = Valuation;
    fn mul(self, k: i64) -> Valuation {
        &self * k
    }
}

impl Mul<&Valuation> for &Valuation {
    type Output = Valuation;
    fn mul(self, o: &Valuation) -> Valuation {
        Valuation(&self.0 * &o.0)
    }
}

impl Div<i64> for &Valuation {
    type Output = Valuation;
    fn div(self, k: i64) -> Valuation {
        Valuation(&self.0 / BigRational::from_integer(BigInt::from(k)))
    }
}

impl Div<i64> for Valuation {
    type Output = Valuation;
    fn div(self, k: i64) -> Valuation {
        &self / k
    }
}
