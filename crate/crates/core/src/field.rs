//! Exact arithmetic in the real algebraic fields Q(Ω) of degree 2 and 3.
//!
//! Ω is never stored as a float: elements carry rational coordinates with
//! respect to the power basis (1, Ω[, Ω²]) and are reduced through the
//! minimal polynomial. Floats appear only at evaluation time, through
//! certified dyadic enclosures of Ω obtained by exact bisection.

use crate::dyadic::{Dyadic, Interval, RealApprox};
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::{Arc, RwLock};

/// Working-precision cap for sign certification, in bits.
pub const PREC_CAP: u32 = 4096;

/// A purely periodic continued fraction [a1, ..., am] with period word
/// repeated forever; the represented number lies in (0,1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    period: Vec<u32>,
}

impl ContinuedFraction {
    pub fn new(period: Vec<u32>) -> Result<Self, Error> {
        if period.is_empty() || period.iter().any(|&a| a == 0) {
            return Err(Error::InvalidPeriod);
        }
        Ok(ContinuedFraction { period })
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// Canonical representative: the primitive root of the word, rotated to
    /// its lexicographically least cyclic shift. Cyclic rotations and word
    /// repetitions represent equivalent numbers.
    pub fn canonical(&self) -> ContinuedFraction {
        let w = &self.period;
        let n = w.len();
        // primitive root: smallest divisor length d such that w is (w[..d])^{n/d}
        let mut root = w.clone();
        for d in 1..n {
            if n % d == 0 && (0..n).all(|i| w[i] == w[i % d]) {
                root = w[..d].to_vec();
                break;
            }
        }
        let m = root.len();
        let mut best = root.clone();
        for r in 1..m {
            let rot: Vec<u32> = (0..m).map(|i| root[(i + r) % m]).collect();
            if rot < best {
                best = rot;
            }
        }
        ContinuedFraction { period: best }
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.period.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Identifies the generator Ω of the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// Ω = [a1..am] purely periodic; minimal polynomial p[0] + p[1] x + p[2] x².
    Quadratic { cf: ContinuedFraction },
    /// Ω is the real root of x³ + x − 1 in (0,1).
    CubicGolden,
}

/// Shared context: minimal polynomial plus a cached bisection enclosure of Ω.
pub struct FieldCtx {
    kind: FieldKind,
    degree: usize,
    /// integer minimal polynomial, ascending powers, positive leading coeff
    poly: Vec<BigInt>,
    /// reduction row: Ω^degree = red[0] + red[1] Ω (+ red[2] Ω²)
    red: [BigRational; 3],
    /// bisection state: Ω ∈ [m, m+1] / 2^k
    cache: RwLock<(u64, BigInt)>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({:?})", self.kind)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl FieldCtx {
    /// Field of the quadratic irrational with the given purely periodic
    /// continued fraction.
    pub fn quadratic(cf: ContinuedFraction) -> Arc<FieldCtx> {
        // Fixed point of the period-word Möbius map: Ω = 1/(a1 + 1/(a2 + ...(am + Ω))).
        // The map x -> 1/(a+x) is the matrix [[0,1],[1,a]]; the word product P
        // yields P21 Ω² + (P22 - P11) Ω - P12 = 0.
        let (mut p11, mut p12, mut p21, mut p22) =
            (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
        for &a in cf.period() {
            let a = BigInt::from(a);
            let (n11, n12) = (p12.clone(), &p11 + &p12 * &a);
            let (n21, n22) = (p22.clone(), &p21 + &p22 * &a);
            p11 = n11;
            p12 = n12;
            p21 = n21;
            p22 = n22;
        }
        let a2 = p21;
        let a1 = &p22 - &p11;
        let a0 = -p12;
        debug_assert!(a2.is_positive());
        let red0 = BigRational::new(-&a0, a2.clone());
        let red1 = BigRational::new(-&a1, a2.clone());
        let ctx = FieldCtx {
            kind: FieldKind::Quadratic { cf },
            degree: 2,
            poly: vec![a0, a1, a2],
            red: [red0, red1, BigRational::zero()],
            cache: RwLock::new((0, BigInt::zero())),
        };
        debug_assert!(ctx.poly_sign_at(&BigInt::zero(), 0) * ctx.poly_sign_at(&BigInt::one(), 0) < 0);
        Arc::new(ctx)
    }

    /// Field of the cubic golden number, the real root of x³ + x − 1.
    pub fn cubic_golden() -> Arc<FieldCtx> {
        Arc::new(FieldCtx {
            kind: FieldKind::CubicGolden,
            degree: 3,
            poly: vec![BigInt::from(-1), BigInt::one(), BigInt::zero(), BigInt::one()],
            red: [BigRational::one(), -BigRational::one(), BigRational::zero()],
            cache: RwLock::new((0, BigInt::zero())),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    /// Sign of the minimal polynomial at the dyadic point m / 2^k, exactly.
    fn poly_sign_at(&self, m: &BigInt, k: u64) -> i8 {
        let d = self.poly.len() - 1;
        let mut acc = BigInt::zero();
        let mut mp = BigInt::one(); // m^i
        for (i, c) in self.poly.iter().enumerate() {
            acc += c * &mp << (k * (d - i) as u64);
            if i < d {
                mp *= m;
            }
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Dyadic enclosure of Ω with width 2^-prec, by exact bisection on (0,1).
    pub fn omega_enclosure(&self, prec: u32) -> Interval {
        let mut state = self.cache.write().unwrap();
        let (ref mut k, ref mut m) = *state;
        if *k < prec as u64 {
            let sign_hi = {
                // sign at the right end of the current bracket (initially x=1)
                let hi = &*m + 1;
                self.poly_sign_at(&hi, *k)
            };
            debug_assert!(sign_hi != 0);
            while *k < prec as u64 {
                let mid = (&*m << 1) + 1;
                let s = self.poly_sign_at(&mid, *k + 1);
                assert!(s != 0, "minimal polynomial has a dyadic root");
                *m <<= 1;
                if s == sign_hi {
                    // root is in the left half
                } else {
                    *m += 1;
                }
                *k += 1;
            }
        }
        let shift = *k - prec as u64;
        let lo = &*m >> shift;
        Interval::endpoints(
            Dyadic { m: lo.clone(), e: -(prec as i64) },
            Dyadic { m: lo + 2, e: -(prec as i64) },
        )
    }
}

/// An exact element of Q(Ω), coordinates in the power basis.
#[derive(Clone, Debug)]
pub struct FieldElement {
    ctx: Arc<FieldCtx>,
    c: [BigRational; 3],
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.c == other.c
    }
}

impl FieldElement {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        FieldElement { ctx: ctx.clone(), c: [BigRational::zero(), BigRational::zero(), BigRational::zero()] }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_rational(ctx, BigRational::one())
    }

    pub fn from_rational(ctx: &Arc<FieldCtx>, r: BigRational) -> Self {
        FieldElement { ctx: ctx.clone(), c: [r, BigRational::zero(), BigRational::zero()] }
    }

    pub fn from_int(ctx: &Arc<FieldCtx>, n: i64) -> Self {
        Self::from_rational(ctx, BigRational::from(BigInt::from(n)))
    }

    pub fn from_bigint(ctx: &Arc<FieldCtx>, n: &BigInt) -> Self {
        Self::from_rational(ctx, BigRational::from(n.clone()))
    }

    /// The generator Ω itself.
    pub fn omega(ctx: &Arc<FieldCtx>) -> Self {
        FieldElement { ctx: ctx.clone(), c: [BigRational::zero(), BigRational::one(), BigRational::zero()] }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    fn check_ctx(&self, other: &FieldElement) {
        assert!(self.ctx == other.ctx, "field elements from different fields");
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check_ctx(other);
        FieldElement {
            ctx: self.ctx.clone(),
            c: [&self.c[0] + &other.c[0], &self.c[1] + &other.c[1], &self.c[2] + &other.c[2]],
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.check_ctx(other);
        FieldElement {
            ctx: self.ctx.clone(),
            c: [&self.c[0] - &other.c[0], &self.c[1] - &other.c[1], &self.c[2] - &other.c[2]],
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { ctx: self.ctx.clone(), c: [-&self.c[0], -&self.c[1], -&self.c[2]] }
    }

    pub fn scale(&self, r: &BigRational) -> FieldElement {
        FieldElement { ctx: self.ctx.clone(), c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r] }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check_ctx(other);
        let d = self.ctx.degree;
        // raw convolution up to degree 2(d-1), then reduce from the top
        let mut raw = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for i in 0..d {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if other.c[j].is_zero() {
                    continue;
                }
                raw[i + j] += &self.c[i] * &other.c[j];
            }
        }
        // Ω^d = red[0] + red[1] Ω + red[2] Ω²
        for p in (d..=2 * (d - 1)).rev() {
            if raw[p].is_zero() {
                continue;
            }
            let coef = std::mem::replace(&mut raw[p], BigRational::zero());
            for t in 0..d {
                if !self.ctx.red[t].is_zero() {
                    raw[p - d + t] += &coef * &self.ctx.red[t];
                }
            }
        }
        FieldElement {
            ctx: self.ctx.clone(),
            c: [raw[0].clone(), raw[1].clone(), raw[2].clone()],
        }
    }

    pub fn square(&self) -> FieldElement {
        self.mul(self)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero field element");
        let d = self.ctx.degree;
        // columns of M are coordinates of self * Ω^j; solve M x = e0
        let mut cols: Vec<FieldElement> = Vec::with_capacity(d);
        let mut cur = self.clone();
        for _ in 0..d {
            cols.push(cur.clone());
            cur = cur.mul(&FieldElement::omega(&self.ctx));
        }
        let mut a = vec![vec![BigRational::zero(); d + 1]; d];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..d {
                a[i][j] = col.c[i].clone();
            }
        }
        a[0][d] = BigRational::one();
        // Gaussian elimination with exact rationals
        for col in 0..d {
            let piv = (col..d).find(|&r| !a[r][col].is_zero()).expect("singular multiplication matrix");
            a.swap(col, piv);
            let p = a[col][col].clone();
            for j in col..=d {
                a[col][j] = &a[col][j] / &p;
            }
            for r in 0..d {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..=d {
                        let v = &a[col][j] * &f;
                        a[r][j] = &a[r][j] - &v;
                    }
                }
            }
        }
        let mut c = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
        for (i, ci) in c.iter_mut().enumerate().take(d) {
            *ci = a[i][d].clone();
        }
        FieldElement { ctx: self.ctx.clone(), c }
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inv())
    }

    /// Certified enclosure of the real value at the given working precision.
    pub fn eval_interval(&self, prec: u32) -> Interval {
        let om = self.ctx.omega_enclosure(prec + 8);
        let d = self.ctx.degree;
        let mut acc = Interval::from_rational(&self.c[d - 1], prec + 8);
        for i in (0..d - 1).rev() {
            acc = acc.mul(&om, prec + 8);
            acc = acc.add(&Interval::from_rational(&self.c[i], prec + 8), prec + 8);
        }
        acc.round(prec)
    }

    /// Certified sign and absolute value, refining precision until the
    /// enclosure excludes zero (exact zero is detected up front).
    pub fn sign_and_abs(&self) -> Result<(i8, RealApprox), Error> {
        if self.is_zero() {
            return Ok((0, RealApprox::exact_zero()));
        }
        let mut prec = 64u32;
        loop {
            let iv = self.eval_interval(prec);
            if let Some(s) = iv.sign() {
                let abs = iv.abs();
                return Ok((s, RealApprox::from(&abs)));
            }
            if prec >= PREC_CAP {
                return Err(Error::PrecisionExhausted(PREC_CAP));
            }
            prec = (prec * 2).min(PREC_CAP);
        }
    }

    /// Certified sign only.
    pub fn sign(&self) -> Result<i8, Error> {
        self.sign_and_abs().map(|(s, _)| s)
    }

    /// |self| as an exact field element (sign-certified).
    pub fn abs_exact(&self) -> Result<FieldElement, Error> {
        Ok(if self.sign()? < 0 { self.neg() } else { self.clone() })
    }

    /// Midpoint f64 of a width-2^-prec enclosure.
    pub fn to_f64(&self, prec: u32) -> f64 {
        self.eval_interval(prec).mid_f64()
    }

    /// Certified strict comparison; exact equality is decided exactly.
    pub fn cmp_exact(&self, other: &FieldElement) -> Result<std::cmp::Ordering, Error> {
        let s = self.sub(other).sign()?;
        Ok(s.cmp(&0))
    }
}

/// Ω for a purely periodic continued fraction; the positive fixed point of
/// the period-word Möbius map, lying in (0,1).
pub fn quadratic_from_cf(cf: &ContinuedFraction) -> FieldElement {
    let ctx = FieldCtx::quadratic(cf.clone());
    FieldElement::omega(&ctx)
}

/// The cubic golden number: real root of x³ + x − 1 ≈ 0.6823.
pub fn cubic_golden() -> FieldElement {
    FieldElement::omega(&FieldCtx::cubic_golden())
}

/// Exact inner product ⟨k, ω⟩ with ω = (1, Ω[, Ω²]).
pub fn inner_product(k: &[BigInt], ctx: &Arc<FieldCtx>) -> FieldElement {
    assert_eq!(k.len(), ctx.degree(), "integer vector length must match field degree");
    let mut c = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for (i, ki) in k.iter().enumerate() {
        c[i] = BigRational::from(ki.clone());
    }
    FieldElement { ctx: ctx.clone(), c }
}
