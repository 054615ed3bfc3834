//! Dyadic interval arithmetic with outward rounding.
//!
//! All certified numeric evaluation in this crate funnels through these
//! intervals: endpoints are arbitrary-precision dyadics `m * 2^e`, every
//! operation rounds the lower endpoint down and the upper endpoint up at a
//! caller-chosen working precision, so the true value is always enclosed.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Euclid, One, ToPrimitive, Zero};
use std::cmp::Ordering;

/// A dyadic rational `m * 2^e`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    pub m: BigInt,
    pub e: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { m: BigInt::zero(), e: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic { m: BigInt::from(n), e: 0 }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic { m: n, e: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    fn bits(&self) -> u64 {
        self.m.magnitude().bits()
    }

    /// Round toward negative infinity, keeping at most `prec` mantissa bits.
    pub fn round_down(&self, prec: u32) -> Dyadic {
        let b = self.bits();
        if b <= prec as u64 {
            return self.clone();
        }
        let d = (b - prec as u64) as u64;
        let mut q = &self.m >> d;
        // shifting truncates toward -inf for negative numbers only when the
        // dropped bits are zero; BigInt >> rounds toward -inf already.
        if self.m.sign() == Sign::Minus {
            let back = &q << d;
            if back > self.m {
                q -= 1;
            }
        }
        Dyadic { m: q, e: self.e + d as i64 }
    }

    /// Round toward positive infinity, keeping at most `prec` mantissa bits.
    pub fn round_up(&self, prec: u32) -> Dyadic {
        let b = self.bits();
        if b <= prec as u64 {
            return self.clone();
        }
        let d = (b - prec as u64) as u64;
        let q = &self.m >> d;
        let back = &q << d;
        let q = if back < self.m { q + 1 } else { q };
        Dyadic { m: q, e: self.e + d as i64 }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { m: -&self.m, e: self.e }
    }

    fn align(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
        if a.e >= b.e {
            (&a.m << (a.e - b.e) as u64, b.m.clone(), b.e)
        } else {
            (a.m.clone(), &b.m << (b.e - a.e) as u64, a.e)
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let (x, y, e) = Dyadic::align(self, other);
        Dyadic { m: x + y, e }
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic { m: &self.m * &other.m, e: self.e + other.e }
    }

    pub fn cmp(&self, other: &Dyadic) -> Ordering {
        let (x, y, _) = Dyadic::align(self, other);
        x.cmp(&y)
    }

    pub fn sign(&self) -> i8 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let b = self.bits();
        if b == 0 {
            return 0.0;
        }
        // keep 64 bits of mantissa, track the shifted-out exponent
        if b > 64 {
            let d = b - 64;
            let q = &self.m >> d;
            q.to_f64().unwrap_or(f64::NAN) * 2f64.powi((self.e + d as i64) as i32)
        } else {
            self.m.to_f64().unwrap_or(f64::NAN) * 2f64.powi(self.e.clamp(-2000, 2000) as i32)
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from(&self.m << self.e as u64)
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as u64)
        }
    }

    /// Largest dyadic with <= prec mantissa bits that is <= 1/self (self > 0).
    fn recip_down(&self, prec: u32) -> Dyadic {
        debug_assert!(self.sign() > 0);
        let b = self.bits() as i64;
        let s = b + prec as i64 + 2;
        let q = (BigInt::one() << s as u64) / &self.m;
        Dyadic { m: q, e: -s - self.e }
    }

    fn recip_up(&self, prec: u32) -> Dyadic {
        debug_assert!(self.sign() > 0);
        let b = self.bits() as i64;
        let s = b + prec as i64 + 2;
        let q = (BigInt::one() << s as u64) / &self.m + 1;
        Dyadic { m: q, e: -s - self.e }
    }

    /// Largest dyadic <= self^(1/n), for self >= 0.
    fn nth_root_down(&self, n: u32, prec: u32) -> Dyadic {
        debug_assert!(self.sign() >= 0);
        if self.is_zero() {
            return Dyadic::zero();
        }
        // shift so exponent divisible by n and mantissa wide enough
        let mut e = self.e;
        let mut m = self.m.clone();
        let want_bits = (prec as u64 + 2) * n as u64;
        let cur = m.magnitude().bits();
        let mut extra = want_bits.saturating_sub(cur) as i64;
        // make (e - extra) divisible by n
        let n64 = n as i64;
        let rem = (e - extra).rem_euclid(n64);
        extra += rem;
        m <<= extra as u64;
        e -= extra;
        let r = m.nth_root(n);
        Dyadic { m: r, e: e / n64 }
    }

    fn nth_root_up(&self, n: u32, prec: u32) -> Dyadic {
        let d = self.nth_root_down(n, prec);
        // (r+1)^n > m always when r = floor root
        Dyadic { m: d.m + 1, e: d.e }
    }
}

/// A closed interval with dyadic endpoints, guaranteed to contain the
/// represented real number.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn point(d: Dyadic) -> Self {
        Interval { lo: d.clone(), hi: d }
    }

    pub fn zero() -> Self {
        Interval::point(Dyadic::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Interval::point(Dyadic::from_int(n))
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        // m / d: compute floor(m * 2^s / d) with s large enough
        let num = r.numer();
        let den = r.denom();
        if den.is_one() {
            return Interval::point(Dyadic::from_bigint(num.clone()));
        }
        let s = den.magnitude().bits() as i64 + prec as i64 + 2;
        let scaled = num << s as u64;
        let q = scaled.div_euclid(den);
        let lo = Dyadic { m: q.clone(), e: -s };
        let hi = Dyadic { m: q + 1, e: -s };
        Interval { lo, hi }
    }

    pub fn endpoints(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo.cmp(&hi) != Ordering::Greater);
        Interval { lo, hi }
    }

    pub fn round(&self, prec: u32) -> Interval {
        Interval { lo: self.lo.round_down(prec), hi: self.hi.round_up(prec) }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.add(&other.lo).round_down(prec),
            hi: self.hi.add(&other.hi).round_up(prec),
        }
    }

    pub fn sub(&self, other: &Interval, prec: u32) -> Interval {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Interval, prec: u32) -> Interval {
        let cands = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c.cmp(&lo) == Ordering::Less {
                lo = c.clone();
            }
            if c.cmp(&hi) == Ordering::Greater {
                hi = c.clone();
            }
        }
        Interval { lo: lo.round_down(prec), hi: hi.round_up(prec) }
    }

    pub fn mul_int(&self, n: i64) -> Interval {
        let k = Dyadic::from_int(n);
        if n >= 0 {
            Interval { lo: self.lo.mul(&k), hi: self.hi.mul(&k) }
        } else {
            Interval { lo: self.hi.mul(&k), hi: self.lo.mul(&k) }
        }
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self, prec: u32) -> Interval {
        assert!(!self.contains_zero(), "interval reciprocal across zero");
        if self.lo.sign() > 0 {
            Interval { lo: self.hi.recip_down(prec), hi: self.lo.recip_up(prec) }
        } else {
            let p = self.neg().recip(prec);
            p.neg()
        }
    }

    pub fn div(&self, other: &Interval, prec: u32) -> Interval {
        self.mul(&other.recip(prec), prec)
    }

    /// Square root; lower endpoint clamped to zero if slightly negative.
    pub fn sqrt(&self, prec: u32) -> Interval {
        self.nth_root(2, prec)
    }

    pub fn nth_root(&self, n: u32, prec: u32) -> Interval {
        let lo = if self.lo.sign() < 0 { Dyadic::zero() } else { self.lo.nth_root_down(n, prec) };
        assert!(self.hi.sign() >= 0, "nth_root of negative interval");
        let hi = self.hi.nth_root_up(n, prec);
        Interval { lo, hi }
    }

    pub fn square(&self, prec: u32) -> Interval {
        let r = self.mul(self, prec);
        if self.contains_zero() {
            Interval { lo: Dyadic::zero(), hi: r.hi }
        } else {
            r
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.sign() >= 0 {
            self.clone()
        } else if self.hi.sign() <= 0 {
            self.neg()
        } else {
            let a = self.lo.neg();
            let hi = if a.cmp(&self.hi) == Ordering::Greater { a } else { self.hi.clone() };
            Interval { lo: Dyadic::zero(), hi }
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() <= 0 && self.hi.sign() >= 0
    }

    /// Definite sign of the enclosed value, if the interval determines one.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.sign() > 0 {
            Some(1)
        } else if self.hi.sign() < 0 {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Certified `self < other`, if decidable from the enclosures.
    pub fn lt(&self, other: &Interval) -> Option<bool> {
        if self.hi.cmp(&other.lo) == Ordering::Less {
            Some(true)
        } else if self.lo.cmp(&other.hi) != Ordering::Less {
            Some(false)
        } else {
            None
        }
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    pub fn width_f64(&self) -> f64 {
        self.hi.add(&self.lo.neg()).to_f64()
    }
}

/// A floating approximation with a certified error bound.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct RealApprox {
    pub value: f64,
    pub bound: f64,
}

impl RealApprox {
    pub fn exact_zero() -> Self {
        RealApprox { value: 0.0, bound: 0.0 }
    }
}

impl From<&Interval> for RealApprox {
    fn from(iv: &Interval) -> Self {
        RealApprox { value: iv.mid_f64(), bound: 0.5 * iv.width_f64().abs() + f64::EPSILON * iv.mid_f64().abs() }
    }
}
