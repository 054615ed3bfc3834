//! Iteration matrices T and U = (T⁻¹)ᵀ for quadratic and cubic golden
//! frequency vectors, with all eigen-derived constants.
//!
//! Everything downstream is scale-invariant in the eigenvectors, but we keep
//! the eigendata exact anyway: for the quadratic case the eigenvectors live
//! in ℚ(Ω); for the cubic golden case the complex pair splits as x + s·y with
//! x, y ∈ ℚ(Ω)-vectors and s = Im λ₂ > 0, where s² ∈ ℚ(Ω). No numerical
//! eigensolver is involved, so the "residual" identities hold exactly.

use crate::dyadic::Interval;
use crate::field::{ContinuedFraction, FieldCtx, FieldElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

pub fn fe_dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::zero(a[0].ctx());
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

fn int_matvec(m: &[Vec<BigInt>], k: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(k).map(|(a, b)| a * b).sum())
        .collect()
}

/// Quadratic eigendata, exact in ℚ(Ω).
///
/// u1, u2 are eigenvectors of U with eigenvalues 1/λ and σλ;
/// v2 is the second eigenvector of T, with eigenvalue σ/λ.
#[derive(Clone, Debug)]
pub struct QuadraticEigen {
    pub u1: Vec<FieldElement>,
    pub u2: Vec<FieldElement>,
    pub v2: Vec<FieldElement>,
}

impl QuadraticEigen {
    /// Same data under a different (arbitrary) eigenvector normalization.
    pub fn rescaled(&self, cu1: &BigRational, cu2: &BigRational, cv2: &BigRational) -> Self {
        assert!(!cu1.is_zero() && !cu2.is_zero() && !cv2.is_zero());
        QuadraticEigen {
            u1: self.u1.iter().map(|x| x.scale(cu1)).collect(),
            u2: self.u2.iter().map(|x| x.scale(cu2)).collect(),
            v2: self.v2.iter().map(|x| x.scale(cv2)).collect(),
        }
    }
}

/// Cubic eigendata for the complex pair, split into real and s-parts:
/// v3 = s·w_v3 and u3 = s·w_u3 with s = Im λ₂ = √d > 0.
#[derive(Clone, Debug)]
pub struct CubicEigen {
    pub u1: Vec<FieldElement>,
    pub u2: Vec<FieldElement>,
    pub w_u3: Vec<FieldElement>,
    pub v2: Vec<FieldElement>,
    pub w_v3: Vec<FieldElement>,
    /// Re λ₂ = (1−λ)/2
    pub re_l2: FieldElement,
    /// d = (Im λ₂)² = 1/λ − (Re λ₂)²
    pub d: FieldElement,
    /// Z₁ = (|u₂|² + |u₃|²)/2
    pub z1: FieldElement,
    /// Z₂² (Z₂ itself is irrational over ℚ(Ω))
    pub z2_sq: FieldElement,
    /// δ² = Z₂²/Z₁²
    pub delta_sq: FieldElement,
    /// φ = arg λ₂
    pub phi: f64,
    /// θ from Z₂cosθ = (|u₂|²−|u₃|²)/2, Z₂sinθ = ⟨u₂,u₃⟩
    pub theta: f64,
    pub delta: f64,
}

impl CubicEigen {
    fn derive(
        u1: Vec<FieldElement>,
        u2: Vec<FieldElement>,
        w_u3: Vec<FieldElement>,
        v2: Vec<FieldElement>,
        w_v3: Vec<FieldElement>,
        re_l2: FieldElement,
        d: FieldElement,
    ) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let uu = fe_dot(&u2, &u2);
        let ww = d.mul(&fe_dot(&w_u3, &w_u3)); // |u3|²
        let z1 = uu.add(&ww).scale(&half);
        let zc = uu.sub(&ww).scale(&half); // Z₂ cos θ
        let zs = fe_dot(&u2, &w_u3); // Z₂ sin θ = s · zs
        let z2_sq = zc.square().add(&d.mul(&zs.square()));
        let delta_sq = z2_sq.div(&z1.square());
        let prec = 128;
        let s = d.eval_interval(prec).sqrt(prec).mid_f64();
        let phi = s.atan2(re_l2.to_f64(prec));
        let theta = (s * zs.to_f64(prec)).atan2(zc.to_f64(prec));
        let delta = delta_sq.eval_interval(prec).sqrt(prec).mid_f64();
        CubicEigen { u1, u2, w_u3, v2, w_v3, re_l2, d, z1, z2_sq, delta_sq, phi, theta, delta }
    }

    pub fn rescaled(&self, cu1: &BigRational, cu23: &BigRational, cv23: &BigRational) -> Self {
        assert!(!cu1.is_zero() && !cu23.is_zero() && !cv23.is_zero());
        CubicEigen::derive(
            self.u1.iter().map(|x| x.scale(cu1)).collect(),
            self.u2.iter().map(|x| x.scale(cu23)).collect(),
            self.w_u3.iter().map(|x| x.scale(cu23)).collect(),
            self.v2.iter().map(|x| x.scale(cv23)).collect(),
            self.w_v3.iter().map(|x| x.scale(cv23)).collect(),
            self.re_l2.clone(),
            self.d.clone(),
        )
    }

    /// Certified enclosure of s = Im λ₂ > 0.
    pub fn s_interval(&self, prec: u32) -> Interval {
        self.d.eval_interval(prec).sqrt(prec)
    }

    /// Certified enclosure of δ = Z₂/Z₁.
    pub fn delta_interval(&self, prec: u32) -> Interval {
        self.delta_sq.eval_interval(prec).sqrt(prec)
    }
}

/// A frequency vector ω = (1, Ω[, Ω²]) together with its iteration matrices
/// and eigen-derived constants. Immutable after construction.
#[derive(Clone, Debug)]
pub struct IterationData {
    pub ell: usize,
    pub ctx: Arc<FieldCtx>,
    pub t: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    /// dominant eigenvalue of T, > 1
    pub lambda: FieldElement,
    /// det T = ±1
    pub sigma: i8,
    pub quad: Option<QuadraticEigen>,
    pub cubic: Option<CubicEigen>,
}

impl IterationData {
    /// ω = (1, Ω) or (1, Ω, Ω²) as exact field elements.
    pub fn omega(&self) -> Vec<FieldElement> {
        let om = FieldElement::omega(&self.ctx);
        let mut v = vec![FieldElement::one(&self.ctx), om.clone()];
        if self.ell == 3 {
            v.push(om.square());
        }
        v
    }

    pub fn apply_u(&self, k: &[BigInt]) -> Vec<BigInt> {
        int_matvec(&self.u, k)
    }

    /// U⁻¹ = Tᵀ.
    pub fn apply_u_inv(&self, k: &[BigInt]) -> Vec<BigInt> {
        (0..self.ell)
            .map(|j| (0..self.ell).map(|i| &self.t[i][j] * &k[i]).sum())
            .collect()
    }

    /// Uⁿ k, exact.
    pub fn apply_u_pow(&self, k: &[BigInt], n: u32) -> Vec<BigInt> {
        let mut v = k.to_vec();
        for _ in 0..n {
            v = self.apply_u(&v);
        }
        v
    }

    pub fn lambda_f64(&self) -> f64 {
        self.lambda.to_f64(128)
    }
}

fn det2(m: &[Vec<BigInt>]) -> BigInt {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// Build T as the ordered product of elementary continued-fraction matrices
/// [[a,1],[1,0]] over the period word, U = (T⁻¹)ᵀ, and exact eigendata.
pub fn build_quadratic(cf: &ContinuedFraction) -> IterationData {
    let ctx = FieldCtx::quadratic(cf.clone());
    let mut t = vec![
        vec![BigInt::one(), BigInt::zero()],
        vec![BigInt::zero(), BigInt::one()],
    ];
    for &a in cf.period() {
        let e = [[BigInt::from(a), BigInt::one()], [BigInt::one(), BigInt::zero()]];
        let mut nt = vec![vec![BigInt::zero(); 2]; 2];
        for (i, row) in nt.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = &t[i][0] * &e[0][j] + &t[i][1] * &e[1][j];
            }
        }
        t = nt;
    }
    let det = det2(&t);
    assert!(det.abs().is_one());
    let sigma: i8 = if det.is_negative() { -1 } else { 1 };
    let sg = BigInt::from(sigma);
    // U = (T⁻¹)ᵀ = σ · [[T22, −T21], [−T12, T11]]
    let u = vec![
        vec![&sg * &t[1][1], -(&sg * &t[1][0])],
        vec![-(&sg * &t[0][1]), &sg * &t[0][0]],
    ];
    // T (1,Ω) = λ (1,Ω) with λ = T11 + T12 Ω
    let om = FieldElement::omega(&ctx);
    let lambda = FieldElement::from_bigint(&ctx, &t[0][0])
        .add(&FieldElement::from_bigint(&ctx, &t[0][1]).mul(&om));
    let second = FieldElement::from_bigint(&ctx, &t[1][0])
        .add(&FieldElement::from_bigint(&ctx, &t[1][1]).mul(&om));
    assert!(second.sub(&lambda.mul(&om)).is_zero(), "eigen-equation violated");
    let inv_lambda = lambda.inv();
    let sig_rat = BigRational::from(BigInt::from(sigma));
    // eigenvector solves (M − μI)x = 0 with x = (M12, μ − M11); M12 ≠ 0 here
    let u1 = vec![
        FieldElement::from_bigint(&ctx, &u[0][1]),
        inv_lambda.sub(&FieldElement::from_bigint(&ctx, &u[0][0])),
    ];
    let u2 = vec![
        FieldElement::from_bigint(&ctx, &u[0][1]),
        lambda.scale(&sig_rat).sub(&FieldElement::from_bigint(&ctx, &u[0][0])),
    ];
    let v2 = vec![
        FieldElement::from_bigint(&ctx, &t[0][1]),
        inv_lambda.scale(&sig_rat).sub(&FieldElement::from_bigint(&ctx, &t[0][0])),
    ];
    IterationData {
        ell: 2,
        ctx,
        t,
        u,
        lambda,
        sigma,
        quad: Some(QuadraticEigen { u1, u2, v2 }),
        cubic: None,
    }
}

/// The cubic golden frequency vector (1, Ω, Ω²), Ω³ + Ω = 1.
pub fn build_cubic_golden() -> IterationData {
    let ctx = FieldCtx::cubic_golden();
    let om = FieldElement::omega(&ctx);
    let lambda = om.inv(); // λ = 1/Ω, root of x³ − x² − 1
    let t: Vec<Vec<BigInt>> = [[1, 0, 1], [1, 0, 0], [0, 1, 0]]
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let u: Vec<Vec<BigInt>> = [[0, 0, 1], [1, 0, -1], [0, 1, 0]]
        .iter()
        .map(|r| r.iter().map(|&x: &i64| BigInt::from(x)).collect())
        .collect();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let one = FieldElement::one(&ctx);
    // λ₂ + λ₃ = trace − λ = 1 − λ, λ₂λ₃ = |λ₂|² = det/λ = 1/λ
    let re_l2 = one.sub(&lambda).scale(&half);
    let d = om.sub(&re_l2.square()); // 1/λ = Ω
    // T-eigenvector for λ₂: (λ₂², λ₂, 1); Re λ₂² = (Re λ₂)² − d
    let re_l2sq = re_l2.square().sub(&d);
    let v2 = vec![re_l2sq.clone(), re_l2.clone(), one.clone()];
    let w_v3 = vec![re_l2.scale(&BigRational::from(BigInt::from(2))), one.clone(), FieldElement::zero(&ctx)];
    // U-eigenvector for ν = 1/λ₂ = λ·conj(λ₂): (1, ν², ν)
    let re_nu = lambda.mul(&re_l2);
    let lam_sq = lambda.square();
    let re_nusq = re_nu.square().sub(&lam_sq.mul(&d));
    let u1 = vec![one.clone(), om.square(), om.clone()];
    let u2 = vec![one, re_nusq, re_nu.clone()];
    let w_u3 = vec![
        FieldElement::zero(&ctx),
        lam_sq.mul(&re_l2).scale(&BigRational::from(BigInt::from(-2))),
        lambda.neg(),
    ];
    let eigen = CubicEigen::derive(u1, u2, w_u3, v2, w_v3, re_l2, d);
    IterationData {
        ell: 3,
        ctx,
        t,
        u,
        lambda,
        sigma: 1,
        quad: None,
        cubic: Some(eigen),
    }
}
