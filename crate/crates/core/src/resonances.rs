//! Admissible and primitive integer vectors, resonant sequences s(j,n),
//! exact numerators γ_k and their limit data, and the separation constants
//! B₀ (quadratic) and B₀⁻ (cubic).
//!
//! All orderings and cutoffs are decided by exact sign tests in ℚ(Ω); the
//! only irrational quantity entering an ordering, the factor (1±δ) in the
//! cubic case, multiplies every candidate equally and therefore never
//! changes a comparison.

use crate::field::{inner_product, FieldElement};
use crate::koch::{fe_dot, IterationData};
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::sync::Arc;

/// A nonzero integer vector with its norm convention fixed by the dimension:
/// ℓ₁ for ℓ=2, Euclidean for ℓ=3.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerVector {
    comps: Vec<BigInt>,
}

impl IntegerVector {
    pub fn new(comps: Vec<BigInt>) -> Self {
        assert!(comps.iter().any(|c| !c.is_zero()), "zero integer vector");
        IntegerVector { comps }
    }

    pub fn comps(&self) -> &[BigInt] {
        &self.comps
    }

    pub fn norm_l1(&self) -> BigInt {
        self.comps.iter().map(|c| c.abs()).sum()
    }

    pub fn norm_sq(&self) -> BigInt {
        self.comps.iter().map(|c| c * c).sum()
    }

    /// |k| under the per-dimension convention.
    pub fn norm(&self, ell: usize) -> f64 {
        if ell == 2 {
            self.norm_l1().to_f64().unwrap()
        } else {
            self.norm_sq().to_f64().unwrap().sqrt()
        }
    }
}

fn half(x: &FieldElement) -> FieldElement {
    x.scale(&BigRational::new(BigInt::from(1), BigInt::from(2)))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest integer to a field element; ties are impossible for the irrational
/// combinations arising here (a half-integer value would contradict the
/// rational independence of the power basis), so we certify the strict
/// inequalities |x − c| < 1/2 exactly and fall back to neighbors only if the
/// floating first guess was off.
pub fn rint(x: &FieldElement) -> BigInt {
    let guess = x.to_f64(96).round();
    assert!(guess.abs() < 9e15, "rint argument out of supported range");
    let base = BigInt::from(guess as i64);
    for delta in [0i64, -1, 1] {
        let c = &base + BigInt::from(delta);
        let diff = x.sub(&FieldElement::from_bigint(x.ctx(), &c));
        let above = diff.add(&half(&FieldElement::one(x.ctx())));
        let below = diff.sub(&half(&FieldElement::one(x.ctx())));
        if above.sign().unwrap() > 0 && below.sign().unwrap() < 0 {
            return c;
        }
    }
    unreachable!("rint failed to bracket");
}

/// k⁰(j) = (−rint(jΩ), j) resp. (−rint(j₁Ω+j₂Ω²), j₁, j₂).
pub fn k0_of(j: &[BigInt], data: &IterationData) -> IntegerVector {
    assert_eq!(j.len(), data.ell - 1);
    assert!(j.iter().any(|c| !c.is_zero()), "j must be nonzero");
    let om = FieldElement::omega(&data.ctx);
    let x = if data.ell == 2 {
        om.scale(&BigRational::from(j[0].clone()))
    } else {
        om.scale(&BigRational::from(j[0].clone()))
            .add(&om.square().scale(&BigRational::from(j[1].clone())))
    };
    let mut comps = vec![-rint(&x)];
    comps.extend_from_slice(j);
    IntegerVector::new(comps)
}

/// |⟨k,ω⟩| < 1/2, decided exactly (via 4⟨k,ω⟩² − 1 < 0).
pub fn is_admissible(k: &[BigInt], data: &IterationData) -> bool {
    let ip = inner_product(k, &data.ctx);
    let t = ip.square().scale(&rat(4, 1)).sub(&FieldElement::one(&data.ctx));
    t.sign().expect("sign of nonzero field element") < 0
}

/// 1/(2λ) < |⟨k,ω⟩| < 1/2, decided exactly.
pub fn is_primitive(k: &[BigInt], data: &IterationData) -> bool {
    if !is_admissible(k, data) {
        return false;
    }
    let ip = inner_product(k, &data.ctx);
    let t = ip
        .square()
        .mul(&data.lambda.square())
        .scale(&rat(4, 1))
        .sub(&FieldElement::one(&data.ctx));
    t.sign().expect("sign of nonzero field element") > 0
}

/// γ_k = |⟨k,ω⟩|·|k|^{ℓ−1}, exact: |k|^{ℓ−1} is an integer under both norm
/// conventions (ℓ₁ for ℓ=2, squared Euclidean for ℓ=3).
pub fn gamma_exact(k: &IntegerVector, data: &IterationData) -> FieldElement {
    let ip = inner_product(k.comps(), &data.ctx);
    let a = ip.abs_exact().expect("small divisor is nonzero");
    let m = if data.ell == 2 { k.norm_l1() } else { k.norm_sq() };
    a.scale(&BigRational::from(m))
}

pub fn gamma(k: &IntegerVector, data: &IterationData) -> f64 {
    gamma_exact(k, data).to_f64(128)
}

/// A primitive vector k⁰(j) with its limit data. The exact fields live in
/// ℚ(Ω); ψ and the γ± values involve s = Im λ₂ and δ and are kept numeric
/// (with exact s²-split building blocks retained).
#[derive(Clone, Debug)]
pub struct Primitive {
    pub j: Vec<BigInt>,
    pub k0: IntegerVector,
    /// r_j = ⟨k⁰(j),ω⟩
    pub r: FieldElement,
    /// p_j = ⟨k⁰(j),v₂⟩
    pub p: FieldElement,
    /// cubic: q_j = s·q_w with q_w = ⟨k⁰(j),w_v3⟩
    pub q_w: Option<FieldElement>,
    /// E_j cos ψ_j (cubic); unused in the quadratic case
    pub ecos: Option<FieldElement>,
    /// E_j sin ψ_j = s·esin_w (cubic)
    pub esin_w: Option<FieldElement>,
    /// E_j² ∈ ℚ(Ω) (cubic)
    pub e_sq: Option<FieldElement>,
    /// K_j: quadratic |k⁰ − (r/⟨u₁,ω⟩)u₁|₁; cubic E_j²Z₁ — exact either way
    pub k_exact: FieldElement,
    /// γ*_j = |r_j|·K_j, exact
    pub gamma_star_exact: FieldElement,
    pub gamma_star: f64,
    pub psi: Option<f64>,
    pub gamma_minus: Option<f64>,
    pub gamma_plus: Option<f64>,
}

/// Limit data for the resonant sequence seeded at j.
pub fn limit_data(j: &[BigInt], data: &IterationData) -> Result<Primitive, Error> {
    let k0 = k0_of(j, data);
    if !is_primitive(k0.comps(), data) {
        return Err(Error::NotPrimitive);
    }
    let om = data.omega();
    let r = inner_product(k0.comps(), &data.ctx);
    if data.ell == 2 {
        let e = data.quad.as_ref().unwrap();
        let p = fe_dot(
            &k0.comps().iter().map(|c| FieldElement::from_bigint(&data.ctx, c)).collect::<Vec<_>>(),
            &e.v2,
        );
        // K_j = |k⁰ − (r/⟨u₁,ω⟩) u₁|₁
        let c1 = r.div(&fe_dot(&e.u1, &om));
        let mut k_exact = FieldElement::zero(&data.ctx);
        for (ki, u1i) in k0.comps().iter().zip(&e.u1) {
            let w = FieldElement::from_bigint(&data.ctx, ki).sub(&c1.mul(u1i));
            k_exact = k_exact.add(&w.abs_exact()?);
        }
        let gamma_star_exact = r.abs_exact()?.mul(&k_exact);
        let gamma_star = gamma_star_exact.to_f64(128);
        Ok(Primitive {
            j: j.to_vec(),
            k0,
            r,
            p,
            q_w: None,
            ecos: None,
            esin_w: None,
            e_sq: None,
            k_exact,
            gamma_star_exact,
            gamma_star,
            psi: None,
            gamma_minus: None,
            gamma_plus: None,
        })
    } else {
        let e = data.cubic.as_ref().unwrap();
        let kf: Vec<FieldElement> =
            k0.comps().iter().map(|c| FieldElement::from_bigint(&data.ctx, c)).collect();
        let p = fe_dot(&kf, &e.v2);
        let q_w = fe_dot(&kf, &e.w_v3);
        // E cosψ = (⟨v2,u2⟩p + ⟨v2,u3⟩q)/(⟨v2,u2⟩² + ⟨v2,u3⟩²), with the s-odd
        // parts paired so everything lands back in ℚ(Ω)
        let pp = fe_dot(&e.v2, &e.u2);
        let qq_w = fe_dot(&e.v2, &e.w_u3); // ⟨v2,u3⟩ = s·qq_w
        let den = pp.square().add(&e.d.mul(&qq_w.square()));
        let ecos = pp.mul(&p).add(&e.d.mul(&qq_w).mul(&q_w)).div(&den);
        let esin_w = qq_w.mul(&p).sub(&pp.mul(&q_w)).div(&den);
        let e_sq = ecos.square().add(&e.d.mul(&esin_w.square()));
        let k_exact = e_sq.mul(&e.z1);
        let gamma_star_exact = r.abs_exact()?.mul(&k_exact);
        let gamma_star = gamma_star_exact.to_f64(128);
        let prec = 128;
        let s = e.s_interval(prec).mid_f64();
        let psi = (s * esin_w.to_f64(prec)).atan2(ecos.to_f64(prec));
        Ok(Primitive {
            j: j.to_vec(),
            k0,
            r,
            p,
            q_w: Some(q_w),
            ecos: Some(ecos),
            esin_w: Some(esin_w),
            e_sq: Some(e_sq),
            k_exact,
            gamma_star_exact,
            gamma_star,
            psi: Some(psi),
            gamma_minus: Some(gamma_star * (1.0 - e.delta)),
            gamma_plus: Some(gamma_star * (1.0 + e.delta)),
        })
    }
}

/// Classify an admissible vector: the unique (j, n) with s(j,n) = Uⁿk⁰(j) = k.
pub fn classify(k: &[BigInt], data: &IterationData) -> Result<(Vec<BigInt>, u32), Error> {
    if !is_admissible(k, data) {
        return Err(Error::NotAdmissible);
    }
    let mut cur = k.to_vec();
    let mut n = 0u32;
    // each pullback U⁻¹ = Tᵀ multiplies |⟨·,ω⟩| by λ, so this terminates
    while !is_primitive(&cur, data) {
        cur = data.apply_u_inv(&cur);
        n += 1;
        debug_assert!(is_admissible(&cur, data));
    }
    let j = cur[1..].to_vec();
    debug_assert_eq!(k0_of(&j, data).comps(), &cur[..]);
    Ok((j, n))
}

/// The catalog of primitives, sorted by exact γ*, with the separation
/// constant. `primitives[0]` is the primary j₀.
#[derive(Clone, Debug)]
pub struct ResonanceCatalog {
    pub data: Arc<IterationData>,
    pub primitives: Vec<Primitive>,
    pub gamma_star: f64,
    pub gamma_star_exact: FieldElement,
    /// γ*_second/γ*_{j₀} ∈ ℚ(Ω): B₀² (quadratic) or the rational part of
    /// (B₀⁻)³ before the (1−δ)/(1+δ) factor (cubic)
    pub ratio_exact: FieldElement,
    /// B₀ (quadratic) or B₀⁻ (cubic)
    pub b0: f64,
    /// largest |j| (ℓ₁-scalar resp. Euclidean bound) examined
    pub enumeration_bound: u64,
    /// certified lower bound on γ* (quadratic) resp. γ⁻ (cubic) for every
    /// primitive beyond the enumeration bound
    /// true when the enumeration cutoff also covers every primitive whose
    /// sequence could carry the second-smallest exponent (needed by h₂)
    pub h2_ready: bool,
    pub tail_bound: f64,
}

impl ResonanceCatalog {
    pub fn j0(&self) -> &Primitive {
        &self.primitives[0]
    }

    /// s(j,n) for the idx-th primitive of the catalog.
    pub fn s_of(&self, idx: usize, n: u32) -> IntegerVector {
        IntegerVector::new(self.data.apply_u_pow(self.primitives[idx].k0.comps(), n))
    }

    /// γ̃_k = γ_k/γ*, exact then evaluated.
    pub fn gamma_tilde_exact(&self, k: &IntegerVector) -> FieldElement {
        gamma_exact(k, &self.data).div(&self.gamma_star_exact)
    }

    /// γ̃*_j for the idx-th primitive.
    pub fn gamma_tilde_star(&self, idx: usize) -> f64 {
        self.primitives[idx]
            .gamma_star_exact
            .div(&self.gamma_star_exact)
            .to_f64(128)
    }

    /// Certified enclosure of B₀ resp. B₀⁻ at the given precision.
    pub fn b0_interval(&self, prec: u32) -> crate::dyadic::Interval {
        let ratio = self.ratio_exact.eval_interval(prec);
        if self.data.ell == 2 {
            ratio.sqrt(prec)
        } else {
            let e = self.data.cubic.as_ref().unwrap();
            let delta = e.delta_interval(prec);
            let one = crate::dyadic::Interval::from_int(1);
            let f = one.sub(&delta, prec).div(&one.add(&delta, prec), prec);
            ratio.mul(&f, prec).nth_root(3, prec)
        }
    }
}

/// Enumerate primitives in increasing |j| until the growth lower bound
/// certifies (with a 10% margin) that no further candidate can change the
/// minimum or the second minimum, then assemble the catalog.
pub fn build_catalog(data: &Arc<IterationData>) -> Result<ResonanceCatalog, Error> {
    build_catalog_impl(data, false)
}

/// Like `build_catalog`, but enumerates further, up to the certified cutoff
/// (A₁B₀)^ℓ (resp. (A₁⁺B₀⁻)³) in normalized-numerator units, so that every
/// sequence able to carry the second-smallest exponent g_k is present.
pub fn build_catalog_extended(data: &Arc<IterationData>) -> Result<ResonanceCatalog, Error> {
    build_catalog_impl(data, true)
}

fn build_catalog_impl(data: &Arc<IterationData>, extended: bool) -> Result<ResonanceCatalog, Error> {
    let mut prims: Vec<Primitive> = Vec::new();
    let margin = rat(11, 10);
    let bound_used;
    let tail_bound;
    if data.ell == 2 {
        // Lower bound: γ*_j > ((1+Ω)|j| − a)/(2λ), a = (1 + |u₁|₁/|⟨u₁,ω⟩|)/2
        let e = data.quad.as_ref().unwrap();
        let om = data.omega();
        let u1_l1 = e.u1[0].abs_exact()?.add(&e.u1[1].abs_exact()?);
        let a = half(&FieldElement::one(&data.ctx).add(&u1_l1.div(&fe_dot(&e.u1, &om).abs_exact()?)));
        let one_plus_om = FieldElement::one(&data.ctx).add(&FieldElement::omega(&data.ctx));
        let two_lambda = data.lambda.scale(&rat(2, 1));
        // A₁² = (λ + 2 + 1/λ)/4 — the extra headroom (A₁B₀)² needed by h₂
        let a1_sq = data
            .lambda
            .add(&FieldElement::from_int(&data.ctx, 2))
            .add(&data.lambda.inv())
            .scale(&rat(1, 4));
        // Phase 1: double-precision prescreen. γ*_j = |r_j| K_j is computed
        // approximately (relative error ≲ 10⁻⁵ up to j ~ 10⁸); generous
        // safety factors guarantee no exact candidate is dropped, and the
        // stopping rule is re-verified exactly afterwards.
        let om_f = FieldElement::omega(&data.ctx).to_f64(160);
        let u1x = e.u1[0].to_f64(160);
        let u1y = e.u1[1].to_f64(160);
        let ipu1_f = fe_dot(&e.u1, &om).to_f64(160);
        let lam_f = data.lambda_f64();
        let a_f = a.to_f64(160);
        let a1_sq_f = if extended { a1_sq.to_f64(160) } else { 1.0 };
        let slack = 1.0 + 1e-3;
        let gs_approx = |j: u64| -> Option<(f64, f64)> {
            let x = j as f64 * om_f;
            let r = x - x.round();
            if r.abs() <= 1.0 / (2.0 * lam_f) * (1.0 - 1e-4) {
                return None; // certainly (or borderline) non-primitive
            }
            let t = r / ipu1_f;
            let kj = (-x.round() - t * u1x).abs() + (j as f64 - t * u1y).abs();
            Some((r.abs() * kj, r.abs()))
        };
        let mut cand: Vec<u64> = Vec::new();
        let mut best = (f64::INFINITY, f64::INFINITY);
        let mut j: u64 = 1;
        loop {
            if let Some((gs, _)) = gs_approx(j) {
                if gs < best.0 {
                    best = (gs, best.0);
                } else if gs < best.1 {
                    best.1 = gs;
                }
                if gs <= best.1 * 1.1 * a1_sq_f * slack {
                    cand.push(j);
                }
            }
            if best.1.is_finite() {
                let bound = ((1.0 + om_f) * (j + 1) as f64 - a_f) / (2.0 * lam_f);
                if bound > best.1 * 1.1 * a1_sq_f * slack {
                    break;
                }
            }
            j += 1;
            assert!(j < 1_000_000_000, "runaway primitive enumeration");
        }
        let thresh_f = best.1 * 1.1 * a1_sq_f;
        cand.retain(|&jj| gs_approx(jj).map(|(gs, _)| gs <= thresh_f * slack).unwrap_or(false));
        // Phase 2: exact limit data for the shortlisted j only.
        for &jj in &cand {
            if let Ok(p) = limit_data(&[BigInt::from(jj)], data) {
                prims.push(p);
            }
        }
        if prims.len() < 2 {
            return Err(Error::AmbiguousMinimum);
        }
        prims.sort_by(|x, y| {
            x.gamma_star_exact.cmp_exact(&y.gamma_star_exact).expect("certified ordering")
        });
        // exact re-verification of the stopping rule at the final cutoff
        let mut thresh = prims[1].gamma_star_exact.scale(&margin);
        if extended {
            thresh = thresh.mul(&a1_sq);
        }
        let bound = one_plus_om
            .scale(&BigRational::from(BigInt::from(j + 1)))
            .sub(&a)
            .div(&two_lambda);
        assert!(
            bound.sub(&thresh).sign()? > 0,
            "prescreen stopped before the certified cutoff"
        );
        tail_bound = bound.to_f64(160);
        bound_used = j;
    } else {
        // Lower bound: γ⁻_j ≥ (1−δ)/(2λ(1+δ)) [|j| − |u₁|₂/(2|⟨u₁,ω⟩|)]²;
        // comparisons between candidates reduce to exact γ* ordering, the
        // (1±δ) factors enter only this certified stopping rule.
        let e = data.cubic.as_ref().unwrap();
        let om = data.omega();
        let prec = 192;
        let u1_sq = fe_dot(&e.u1, &e.u1).eval_interval(prec);
        let ip_u1 = fe_dot(&e.u1, &om).abs_exact()?.eval_interval(prec);
        let c = u1_sq.sqrt(prec).div(&ip_u1.mul_int(2), prec);
        let delta = e.delta_interval(prec);
        let one = crate::dyadic::Interval::from_int(1);
        let coef = one.sub(&delta, prec).div(
            &data.lambda.eval_interval(prec).mul_int(2).mul(&one.add(&delta, prec), prec),
            prec,
        );
        let delta_hi_factor = one.sub(&delta, prec); // γ⁻ = γ*(1−δ)
        // h₂ headroom (A₁⁺)³/(1+δ) = (2x^{1/3} + x^{−2/3})³/27, x = (√λ+1)/(2λ)
        let ext_factor = {
            let lam = data.lambda.eval_interval(prec);
            let x = lam.sqrt(prec).add(&one, prec).div(&lam.mul_int(2), prec);
            let xc = x.nth_root(3, prec);
            let t = xc.mul_int(2).add(&xc.square(prec).recip(prec), prec);
            t.mul(&t.square(prec), prec)
                .div(&crate::dyadic::Interval::from_int(27), prec)
        };
        let mut radius: u64 = 1;
        let cubic_tail;
        loop {
            // shell (radius−1)² < |j|² ≤ radius², canonical half j₂ ≥ 0
            let r2 = BigInt::from(radius * radius);
            let r2_prev = BigInt::from((radius - 1) * (radius - 1));
            let lim = radius as i64;
            for j1 in -lim..=lim {
                for j2 in 0..=lim {
                    if j2 == 0 && j1 <= 0 {
                        continue;
                    }
                    let nsq = BigInt::from(j1 * j1 + j2 * j2);
                    if nsq > r2 || nsq <= r2_prev {
                        continue;
                    }
                    if let Ok(p) = limit_data(&[BigInt::from(j1), BigInt::from(j2)], data) {
                        prims.push(p);
                    }
                }
            }
            if prims.len() >= 2 {
                prims.sort_by(|x, y| {
                    x.gamma_star_exact.cmp_exact(&y.gamma_star_exact).expect("certified ordering")
                });
                // threshold: 1.1 · γ⁻ of the current second-smallest
                let mut thresh = prims[1]
                    .gamma_star_exact
                    .scale(&margin)
                    .eval_interval(prec)
                    .mul(&delta_hi_factor, prec);
                if extended {
                    thresh = thresh.mul(&ext_factor, prec);
                }
                // every remaining |j| exceeds radius
                let x = crate::dyadic::Interval::from_int(radius as i64).sub(&c, prec);
                if x.lo.sign() > 0 {
                    let bound = coef.mul(&x.square(prec), prec);
                    if bound.lt(&thresh) == Some(false) && thresh.lt(&bound) == Some(true) {
                        cubic_tail = bound.lo.to_f64();
                        break;
                    }
                }
            }
            radius += 1;
            assert!(radius < 10_000, "runaway primitive enumeration");
        }
        tail_bound = cubic_tail;
        bound_used = radius;
    }
    // uniqueness of the minimum: exact tie detection
    if prims.len() >= 2
        && prims[0]
            .gamma_star_exact
            .sub(&prims[1].gamma_star_exact)
            .is_zero()
    {
        return Err(Error::AmbiguousMinimum);
    }
    let gamma_star_exact = prims[0].gamma_star_exact.clone();
    let gamma_star = gamma_star_exact.to_f64(128);
    let ratio_exact = prims[1].gamma_star_exact.div(&gamma_star_exact);
    let b0 = {
        let prec = 160;
        let iv = ResonanceCatalog {
            data: data.clone(),
            primitives: prims.clone(),
            gamma_star,
            gamma_star_exact: gamma_star_exact.clone(),
            ratio_exact: ratio_exact.clone(),
            b0: 0.0,
            enumeration_bound: bound_used,
            h2_ready: extended,
            tail_bound,
        }
        .b0_interval(prec);
        iv.mid_f64()
    };
    Ok(ResonanceCatalog {
        data: data.clone(),
        primitives: prims,
        gamma_star,
        gamma_star_exact,
        ratio_exact,
        b0,
        enumeration_bound: bound_used,
        h2_ready: extended,
        tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ContinuedFraction;
    use crate::koch::{build_cubic_golden, build_quadratic};

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn golden_data() -> Arc<IterationData> {
        Arc::new(build_quadratic(&ContinuedFraction::new(vec![1]).unwrap()))
    }

    fn cubic_data() -> Arc<IterationData> {
        Arc::new(build_cubic_golden())
    }

    #[test]
    fn k0_examples() {
        let d = cubic_data();
        assert_eq!(k0_of(&bi(&[0, 1]), &d).comps(), &bi(&[0, 0, 1])[..]);
        assert_eq!(k0_of(&bi(&[2, 0]), &d).comps(), &bi(&[-1, 2, 0])[..]);
        let g = golden_data();
        assert_eq!(k0_of(&bi(&[1]), &g).comps(), &bi(&[-1, 1])[..]);
    }

    #[test]
    fn admissible_primitive_examples() {
        let d = cubic_data();
        assert!(is_primitive(&bi(&[0, 0, 1]), &d));
        assert!(!is_admissible(&bi(&[1, 0, 0]), &d));
        let k1 = d.apply_u(&bi(&[0, 0, 1]));
        assert_eq!(k1, bi(&[1, -1, 0]));
        assert!(is_admissible(&k1, &d));
        assert!(!is_primitive(&k1, &d));
    }

    #[test]
    fn gamma_examples() {
        let d = cubic_data();
        let g = gamma(&IntegerVector::new(bi(&[0, 0, 1])), &d);
        assert!((g - 0.4655).abs() < 1e-4);
        let gq = golden_data();
        let g = gamma(&IntegerVector::new(bi(&[-1, 1])), &gq);
        assert!((g - 0.7639).abs() < 1e-4);
    }

    #[test]
    fn gamma_along_sequence_scales_exactly() {
        let d = cubic_data();
        let k0 = IntegerVector::new(bi(&[0, 0, 1]));
        let r = inner_product(k0.comps(), &d.ctx).abs_exact().unwrap();
        for n in [1u32, 5, 17] {
            let kn = IntegerVector::new(d.apply_u_pow(k0.comps(), n));
            // γ_{s(j,n)} = λ⁻ⁿ|r_j|·|s(j,n)|²
            let mut expect = r.scale(&BigRational::from(kn.norm_sq()));
            for _ in 0..n {
                expect = expect.div(&d.lambda);
            }
            assert!(gamma_exact(&kn, &d).sub(&expect).is_zero());
        }
    }

    #[test]
    fn table1_rows() {
        let d = cubic_data();
        let rows: [(&[i64], [f64; 3]); 3] = [
            (&[0, 1], [0.3459, 0.4867, 0.6276]),
            (&[2, 0], [1.0376, 1.4602, 1.8829]),
            (&[1, 2], [3.1127, 4.3807, 5.6488]),
        ];
        for (j, want) in rows {
            let p = limit_data(&bi(j), &d).unwrap();
            assert!((p.gamma_minus.unwrap() - want[0]).abs() < 5e-5, "j={j:?}");
            assert!((p.gamma_star - want[1]).abs() < 5e-5);
            assert!((p.gamma_plus.unwrap() - want[2]).abs() < 5e-5);
        }
    }

    #[test]
    fn cubic_catalog() {
        let d = cubic_data();
        let cat = build_catalog(&d).unwrap();
        assert_eq!(cat.j0().j, bi(&[0, 1]));
        // γ* = (2/31)(5 + Ω + 4Ω²) exactly
        let om = FieldElement::omega(&d.ctx);
        let closed = FieldElement::from_int(&d.ctx, 5)
            .add(&om)
            .add(&om.square().scale(&rat(4, 1)))
            .scale(&rat(2, 31));
        assert!(cat.gamma_star_exact.sub(&closed).is_zero());
        assert!((cat.b0 - 1.1824).abs() < 1e-3);
        // all primitives with |j| ≥ 3 have γ⁻ ≥ 1.2742
        for p in &cat.primitives {
            let nsq: BigInt = p.j.iter().map(|x| x * x).sum();
            if nsq >= BigInt::from(9) {
                assert!(p.gamma_minus.unwrap() >= 1.2742);
            }
        }
        assert!((cat.gamma_tilde_star(0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn classify_examples() {
        let d = cubic_data();
        let k = d.apply_u_pow(&bi(&[0, 0, 1]), 2);
        let (j, n) = classify(&k, &d).unwrap();
        assert_eq!(j, bi(&[0, 1]));
        assert_eq!(n, 2);
        let p = k0_of(&bi(&[2, 0]), &d);
        let (j, n) = classify(p.comps(), &d).unwrap();
        assert_eq!(j, bi(&[2, 0]));
        assert_eq!(n, 0);
        assert!(matches!(classify(&bi(&[1, 0, 0]), &d), Err(Error::NotAdmissible)));
    }

    #[test]
    fn quadratic_convergence_to_limit() {
        // |s(j,n)|/λⁿ → K_j with relative deviation ≤ 1e-6 at n = 25
        for word in [vec![1], vec![2]] {
            let d = Arc::new(build_quadratic(&ContinuedFraction::new(word).unwrap()));
            let cat = build_catalog(&d).unwrap();
            for p in cat.primitives.iter().take(3) {
                let k25 = IntegerVector::new(d.apply_u_pow(p.k0.comps(), 25));
                let lam = d.lambda_f64();
                let ratio = k25.norm(2) / lam.powi(25);
                let kj = p.k_exact.to_f64(256);
                assert!((ratio / kj - 1.0).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn scale_invariance_of_catalog() {
        let d = cubic_data();
        let cat = build_catalog(&d).unwrap();
        let mut data2 = build_cubic_golden();
        let e = data2.cubic.take().unwrap();
        data2.cubic = Some(e.rescaled(&rat(3, 7), &rat(-5, 2), &rat(11, 4)));
        let d2 = Arc::new(data2);
        let cat2 = build_catalog(&d2).unwrap();
        assert_eq!(cat.primitives.len(), cat2.primitives.len());
        for (a, b) in cat.primitives.iter().zip(&cat2.primitives) {
            assert_eq!(a.j, b.j);
            assert!(a.gamma_star_exact.sub(&b.gamma_star_exact).is_zero());
            assert!((a.gamma_minus.unwrap() - b.gamma_minus.unwrap()).abs() < 1e-12);
        }
        assert!((cat.b0 - cat2.b0).abs() < 1e-12);

        // quadratic counterpart
        let g = golden_data();
        let cat = build_catalog(&g).unwrap();
        let mut gd = build_quadratic(&ContinuedFraction::new(vec![1]).unwrap());
        let e = gd.quad.take().unwrap();
        gd.quad = Some(e.rescaled(&rat(-2, 9), &rat(4, 3), &rat(7, 5)));
        let g2 = Arc::new(gd);
        let cat2 = build_catalog(&g2).unwrap();
        for (a, b) in cat.primitives.iter().zip(&cat2.primitives) {
            assert!(a.gamma_star_exact.sub(&b.gamma_star_exact).is_zero());
        }
        assert!((cat.b0 - cat2.b0).abs() < 1e-12);
    }

    #[test]
    fn oscillation_band_and_figure_envelope() {
        // γ_{s(j₀,n)} ∈ [γ⁻−1e-3, γ⁺+1e-3] for 5 ≤ n ≤ 60, and the points
        // (ln|k|, −ln|⟨k,ω⟩|) sit between the slope-2 lines through ∓ln γ±
        let d = cubic_data();
        let cat = build_catalog(&d).unwrap();
        let p = cat.j0();
        let (gm, gp) = (p.gamma_minus.unwrap(), p.gamma_plus.unwrap());
        for n in 5..=60u32 {
            let kn = cat.s_of(0, n);
            let g = gamma_exact(&kn, &d).to_f64(384);
            // the correction term is O(λ^{-3n/2}) and still ~1.6e-3 at n=5
            assert!(g >= gm - 2e-3 && g <= gp + 2e-3, "n={n} γ={g}");
            let ip = inner_product(kn.comps(), &d.ctx).abs_exact().unwrap().eval_interval(384);
            let x = kn.norm(3).ln();
            let y = -ip.mid_f64().ln();
            // same O(λ^{-3n/2}) sag in log coordinates, ~4.6e-3 at n=5
            assert!(y >= 2.0 * x - gp.ln() - 5e-3);
            assert!(y <= 2.0 * x - gm.ln() + 5e-3);
        }
    }
}
