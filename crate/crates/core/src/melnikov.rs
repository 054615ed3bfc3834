//! Melnikov-potential Fourier coefficients and the exponent machinery:
//! G, g_k, g*_n, b_n, h₁, h₂, the constants C₀, D₀ and the A-bounds, plus
//! the dominant-harmonic / maximal-splitting estimates.
//!
//! All h/g evaluation happens in log-ε coordinates in double precision;
//! the arithmetic constants (γ*, λ, δ, phases) are certified upstream.

use crate::resonances::{IntegerVector, ResonanceCatalog};
use num_bigint::BigInt;
use std::sync::{Arc, Mutex};

/// Perturbation model: Fourier decay width ρ of f, and the exponent p in
/// μ = ε^p. The theorem regime requires p > 3; smaller p is allowed but
/// reported as out-of-regime.
#[derive(Clone, Copy, Debug)]
pub struct ModelParams {
    pub rho: f64,
    pub p: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams { rho: 1.0, p: 3.5 }
    }
}

impl ModelParams {
    pub fn theorem_regime(&self) -> bool {
        self.p > 3.0
    }
}

/// One Fourier harmonic of the Melnikov potential at a given ε.
#[derive(Clone, Debug)]
pub struct HarmonicCoefficient {
    pub k: IntegerVector,
    /// α_k = 4π|⟨k,ω_ε⟩|
    pub alpha: f64,
    /// β_k = ρ|k| + π|⟨k,ω_ε⟩|/2
    pub beta: f64,
    /// exact-formula L_k = 2π|⟨k,ω_ε⟩| e^{−ρ|k|}/sinh|π⟨k,ω_ε⟩/2|
    pub l: f64,
    /// log-domain value of L_k, safe against underflow
    pub ln_l: f64,
    /// g_k(ε) = G(ε; ε_k, γ̃_k)
    pub g: f64,
    /// ε_k = D₀ γ̃_k²/|k|^{2ℓ}, the minimizer of g_k
    pub eps_k: f64,
}

/// G(ε; X, Y) in log-ε form: (Y^{1/ℓ}/ℓ)[(ℓ−1)(ε/X)^{1/2ℓ} + (X/ε)^{(ℓ−1)/2ℓ}].
pub fn g_of(ell: usize, ln_eps: f64, ln_x: f64, y: f64) -> f64 {
    let l = ell as f64;
    let t = (ln_eps - ln_x) / (2.0 * l);
    y.powf(1.0 / l) / l * ((l - 1.0) * t.exp() + (-(l - 1.0) * t).exp())
}

struct SeqEntry {
    k: Vec<BigInt>,
    /// ln γ̃_k (actual, exact upstream)
    ln_gt: f64,
    /// ln |k|
    ln_norm: f64,
    /// ln ε_k
    ln_eps_k: f64,
}

/// Exponent machinery bound to one catalog and one parameter set.
pub struct Engine {
    pub cat: Arc<ResonanceCatalog>,
    pub params: ModelParams,
    pub c0: f64,
    pub d0: f64,
    ell: usize,
    ln_lam: f64,
    ln_k0: f64,
    ln_gamma_star: f64,
    ln_d0: f64,
    /// cubic oscillation pieces; δ = 0 in the quadratic case
    delta: f64,
    two_phi: f64,
    phase0: f64, // 2ψ_{j0} − θ
    cache: Mutex<Vec<Vec<SeqEntry>>>,
}

impl Engine {
    pub fn new(cat: Arc<ResonanceCatalog>, params: ModelParams) -> Engine {
        let ell = cat.data.ell;
        let l = ell as f64;
        let gs = cat.gamma_star;
        let rho = params.rho;
        let c0 = l * (rho / (l - 1.0)).powf((l - 1.0) / l)
            * (std::f64::consts::PI * gs / 2.0).powf(1.0 / l);
        let d0 = ((l - 1.0) * std::f64::consts::PI * gs / (2.0 * rho)).powi(2);
        let (delta, two_phi, phase0) = if ell == 3 {
            let e = cat.data.cubic.as_ref().unwrap();
            let psi0 = cat.primitives[0].psi.unwrap();
            (e.delta, 2.0 * e.phi, 2.0 * psi0 - e.theta)
        } else {
            (0.0, 0.0, 0.0)
        };
        let n_seq = cat.primitives.len();
        Engine {
            params,
            c0,
            d0,
            ell,
            ln_lam: cat.data.lambda_f64().ln(),
            ln_k0: cat.primitives[0].k_exact.to_f64(160).ln(),
            ln_gamma_star: gs.ln(),
            ln_d0: d0.ln(),
            delta,
            two_phi,
            phase0,
            cache: Mutex::new((0..n_seq).map(|_| Vec::new()).collect()),
            cat,
        }
    }

    /// b_n: 1 in the quadratic case, 1 + δcos(2nφ + 2ψ_{j₀} − θ) cubic.
    pub fn b_n(&self, n: u32) -> f64 {
        1.0 + self.delta * (n as f64 * self.two_phi + self.phase0).cos()
    }

    /// ln ε*_n = ln D₀ − (2ℓ/(ℓ−1)) ln K_{j₀} − (2/(ℓ−1))(ln b_n + ℓ n ln λ).
    pub fn ln_eps_star(&self, n: u32) -> f64 {
        let l = self.ell as f64;
        self.ln_d0
            - 2.0 * l / (l - 1.0) * self.ln_k0
            - 2.0 / (l - 1.0) * (self.b_n(n).ln() + l * n as f64 * self.ln_lam)
    }

    /// g*_n(ε) = G(ε; ε*_n, b_n).
    pub fn g_star(&self, n: u32, ln_eps: f64) -> f64 {
        g_of(self.ell, ln_eps, self.ln_eps_star(n), self.b_n(n))
    }

    /// g⁺_n(ε) = G(ε; ε⁺_n, 1+δ), the periodic majorant (cubic).
    pub fn g_plus(&self, n: u32, ln_eps: f64) -> f64 {
        let l = self.ell as f64;
        let ln_eps_plus = self.ln_d0
            - 2.0 * l / (l - 1.0) * self.ln_k0
            - 2.0 / (l - 1.0) * ((1.0 + self.delta).ln() + l * n as f64 * self.ln_lam);
        g_of(self.ell, ln_eps, ln_eps_plus, 1.0 + self.delta)
    }

    /// Index window in n certified to contain the minimizer for a given ε:
    /// |ln ε − ln ε*_n| ≤ 2ℓ ln λ + ln((1+δ)/(1−δ)); convexity of G in ln ε
    /// rules out exterior n.
    fn n_window(&self, ln_eps: f64) -> (u32, u32) {
        let l = self.ell as f64;
        let slope = 2.0 * l / (l - 1.0) * self.ln_lam; // per-step drop of ln ε*_n
        let w = 2.0 * l * self.ln_lam + ((1.0 + self.delta) / (1.0 - self.delta)).ln();
        let n_c = (self.ln_eps_star(0) - ln_eps) / slope;
        let m = w / slope + 2.0;
        let lo = (n_c - m).floor().max(0.0) as u32;
        let hi = (n_c + m).ceil().max(0.0) as u32;
        (lo, hi)
    }

    /// h₁(ε) = min over n of g*_n(ε), with the argmin N(ε).
    pub fn h1(&self, eps: f64) -> (f64, u32) {
        let ln_eps = eps.ln();
        let (lo, hi) = self.n_window(ln_eps);
        let mut best = (f64::INFINITY, lo);
        for n in lo..=hi {
            let g = self.g_star(n, ln_eps);
            if g < best.0 {
                best = (g, n);
            }
        }
        best
    }

    fn entry<R>(&self, idx: usize, n: u32, f: impl FnOnce(&SeqEntry) -> R) -> R {
        let mut cache = self.cache.lock().unwrap();
        let row = &mut cache[idx];
        while row.len() <= n as usize {
            let nn = row.len() as u32;
            let k = if nn == 0 {
                self.cat.primitives[idx].k0.comps().to_vec()
            } else {
                self.cat.data.apply_u(&row[nn as usize - 1].k)
            };
            let kv = IntegerVector::new(k.clone());
            let gt = self.cat.gamma_tilde_exact(&kv).to_f64(192);
            let ln_gt = gt.ln();
            let ln_norm = kv.norm(self.ell).ln();
            let ln_eps_k = self.ln_d0 + 2.0 * ln_gt - 2.0 * self.ell as f64 * ln_norm;
            row.push(SeqEntry { k, ln_gt, ln_norm, ln_eps_k });
        }
        f(&row[n as usize])
    }

    /// g_k(ε) for k = s(j_idx, n) with the actual numerator γ̃_k.
    pub fn g_actual(&self, idx: usize, n: u32, ln_eps: f64) -> f64 {
        self.entry(idx, n, |e| g_of(self.ell, ln_eps, e.ln_eps_k, e.ln_gt.exp()))
    }

    /// Minimum of the actual-numerator g over the primary sequence; the
    /// brute-force-comparable counterpart of h₁.
    pub fn h1_actual(&self, eps: f64) -> (f64, u32) {
        let ln_eps = eps.ln();
        let mut best = (f64::INFINITY, 0u32);
        let mut n = 0u32;
        loop {
            let (g, past) = self.entry(0, n, |e| {
                (
                    g_of(self.ell, ln_eps, e.ln_eps_k, e.ln_gt.exp()),
                    e.ln_eps_k < ln_eps - 30.0,
                )
            });
            if g < best.0 {
                best = (g, n);
            }
            if past {
                return best;
            }
            n += 1;
            assert!(n < 2000, "runaway h1 scan");
        }
    }

    /// h₂(ε): minimum of g_k(ε), actual numerators, over all k ≠ s₀(N);
    /// candidates are all iterates of every catalog sequence (the extended
    /// catalog cutoff certifies completeness of this set).
    pub fn h2(&self, eps: f64) -> f64 {
        assert!(
            self.cat.h2_ready,
            "h2 requires a catalog built with build_catalog_extended"
        );
        let ln_eps = eps.ln();
        let (_, n_dom) = self.h1_actual(eps);
        let mut best = f64::INFINITY;
        for idx in 0..self.cat.primitives.len() {
            let mut n = 0u32;
            loop {
                let (g, past) = self.entry(idx, n, |e| {
                    (
                        g_of(self.ell, ln_eps, e.ln_eps_k, e.ln_gt.exp()),
                        e.ln_eps_k < ln_eps - 30.0,
                    )
                });
                if !(idx == 0 && n == n_dom) && g < best {
                    best = g;
                }
                if past {
                    break;
                }
                n += 1;
                assert!(n < 2000, "runaway h2 scan");
            }
        }
        best
    }

    /// ln Σ_{k ≠ s₀(N)} |k| L_k(ε) over all catalog-sequence harmonics
    /// (log-sum-exp; harmonics outside the catalog sequences are smaller by
    /// factors of exp(−c/√ε) and cannot move the sum).
    pub fn ln_nondominant_sum(&self, eps: f64) -> f64 {
        assert!(self.cat.h2_ready, "requires a catalog built with build_catalog_extended");
        let ln_eps = eps.ln();
        let (_, n_dom) = self.h1_actual(eps);
        let l = self.ell as f64;
        let ln_gs = self.ln_gamma_star;
        let rho = self.params.rho;
        let mut terms: Vec<f64> = Vec::new();
        for idx in 0..self.cat.primitives.len() {
            let mut n = 0u32;
            loop {
                let (term, past) = self.entry(idx, n, |e| {
                    // ln|⟨k,ω⟩| = ln γ̃ + ln γ* − (ℓ−1) ln|k|
                    let ln_ip_eps = e.ln_gt + ln_gs - (l - 1.0) * e.ln_norm - 0.5 * ln_eps;
                    let x = std::f64::consts::FRAC_PI_2 * ln_ip_eps.exp();
                    let ln_sinh = x + (-(-(2.0 * x)).exp()).ln_1p() - std::f64::consts::LN_2;
                    let ln_l_k = (2.0 * std::f64::consts::PI).ln() + ln_ip_eps
                        - rho * e.ln_norm.exp()
                        - ln_sinh;
                    (e.ln_norm + ln_l_k, e.ln_eps_k < ln_eps - 30.0)
                });
                if !(idx == 0 && n == n_dom) {
                    terms.push(term);
                }
                if past {
                    break;
                }
                n += 1;
                assert!(n < 2000, "runaway harmonic sum");
            }
        }
        let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
    }

    /// Full coefficient data for one harmonic.
    pub fn coefficient(&self, k: &IntegerVector, eps: f64) -> HarmonicCoefficient {
        let ip = crate::field::inner_product(k.comps(), &self.cat.data.ctx)
            .abs_exact()
            .expect("small divisor is nonzero")
            .to_f64(192);
        let norm = k.norm(self.ell);
        let ip_eps = ip / eps.sqrt();
        let x = std::f64::consts::PI * ip_eps / 2.0;
        // ln sinh x = x + ln(1 − e^{−2x}) − ln 2
        let ln_sinh = x + (-(-(2.0 * x)).exp()).ln_1p() - std::f64::consts::LN_2;
        let ln_l = (2.0 * std::f64::consts::PI * ip_eps).ln() - self.params.rho * norm - ln_sinh;
        let gt = ip * norm.powi(self.ell as i32 - 1) / self.cat.gamma_star;
        let ln_eps_k = self.ln_d0 + 2.0 * gt.ln() - 2.0 * self.ell as f64 * norm.ln();
        HarmonicCoefficient {
            k: k.clone(),
            alpha: 4.0 * std::f64::consts::PI * ip_eps,
            beta: self.params.rho * norm + x,
            l: ln_l.exp(),
            ln_l,
            g: g_of(self.ell, eps.ln(), ln_eps_k, gt),
            eps_k: ln_eps_k.exp(),
        }
    }

    /// (A₀, A₁) in the quadratic case, (A₀⁻, A₁⁺) in the cubic case.
    pub fn bounds(&self) -> (f64, f64) {
        let lam = self.cat.data.lambda_f64();
        if self.ell == 2 {
            (1.0, 0.5 * (lam.sqrt() + 1.0 / lam.sqrt()))
        } else {
            let a0 = (1.0 - self.delta).powf(1.0 / 3.0);
            // crossing value of g⁺_n and g⁺_{n+1} at ε′_n = ((√λ+1)/(2λ))² ε⁺_n
            let x = (lam.sqrt() + 1.0) / (2.0 * lam);
            let a1 = (1.0 + self.delta).powf(1.0 / 3.0) / 3.0
                * (2.0 * x.powf(1.0 / 3.0) + x.powf(-2.0 / 3.0));
            (a0, a1)
        }
    }

    /// B₀ ≥ A₁ (resp. B₀⁻ ≥ A₁⁺), decided with certified arithmetic: exactly
    /// in ℚ(Ω) for ℓ=2, by interval refinement for ℓ=3.
    pub fn separation_check(&self) -> bool {
        if self.ell == 2 {
            // B₀² − A₁² with A₁² = (λ + 2 + 1/λ)/4, both exact
            let ctx = &self.cat.data.ctx;
            let a1_sq = self
                .cat
                .data
                .lambda
                .add(&crate::field::FieldElement::from_int(ctx, 2))
                .add(&self.cat.data.lambda.inv())
                .scale(&num_rational::BigRational::new(BigInt::from(1), BigInt::from(4)));
            self.cat.ratio_exact.sub(&a1_sq).sign().expect("certified comparison") >= 0
        } else {
            let mut prec = 128;
            loop {
                let b0 = self.cat.b0_interval(prec);
                let e = self.cat.data.cubic.as_ref().unwrap();
                let delta = e.delta_interval(prec);
                let one = crate::dyadic::Interval::from_int(1);
                let lam = self.cat.data.lambda.eval_interval(prec);
                let x = lam.sqrt(prec).add(&one, prec).div(&lam.mul_int(2), prec);
                let xc = x.nth_root(3, prec);
                let a1 = one
                    .add(&delta, prec)
                    .nth_root(3, prec)
                    .mul(&xc.mul_int(2).add(&xc.square(prec).recip(prec), prec), prec)
                    .div(&crate::dyadic::Interval::from_int(3), prec);
                if let Some(lt) = b0.lt(&a1) {
                    return !lt;
                }
                if a1.lt(&b0) == Some(true) {
                    return true;
                }
                prec *= 2;
                assert!(prec <= 4096, "separation comparison did not certify");
            }
        }
    }

    /// Theorem-1 envelope and the first-order dominant harmonic at ε.
    pub fn max_splitting_estimate(&self, eps: f64) -> SplittingEstimate {
        let (h1, n) = self.h1(eps);
        let ln_eps = eps.ln();
        let l = self.ell as f64;
        // the 2π prefactor of the coefficient asymptotics keeps the
        // first-order/envelope ratio Θ(1) with constant near 1
        let ln_envelope = (2.0 * std::f64::consts::PI).ln() + self.params.p * ln_eps
            - ln_eps / l
            - self.c0 * h1 / eps.powf(1.0 / (2.0 * l));
        let (k, ln_norm) = self.entry(0, n, |e| (e.k.clone(), e.ln_norm));
        let c = self.coefficient(&IntegerVector::new(k.clone()), eps);
        let ln_first_order = self.params.p * ln_eps + ln_norm + c.ln_l;
        SplittingEstimate {
            eps,
            n,
            k,
            h1,
            ln_envelope,
            envelope: ln_envelope.exp(),
            ln_first_order,
            ratio: (ln_first_order - ln_envelope).exp(),
        }
    }

    /// Log-spaced profile of h₁, h₂, N and the envelope.
    pub fn profile(&self, eps_min: f64, eps_max: f64, points: usize) -> SplittingProfile {
        assert!(0.0 < eps_min && eps_min < eps_max && points >= 2);
        let l = self.ell as f64;
        let rows = (0..points)
            .map(|i| {
                let t = i as f64 / (points - 1) as f64;
                let ln_eps = eps_min.ln() + t * (eps_max.ln() - eps_min.ln());
                let eps = ln_eps.exp();
                let (h1, n) = self.h1(eps);
                let h2 = self.h2(eps);
                let k_dominant = self.entry(0, n, |e| e.k.clone());
                let ln_envelope = (2.0 * std::f64::consts::PI).ln() + self.params.p * ln_eps
                    - ln_eps / l
                    - self.c0 * h1 / eps.powf(1.0 / (2.0 * l));
                ProfileRow { eps, ln_eps, h1, h2, n, k_dominant, ln_envelope }
            })
            .collect();
        SplittingProfile { rows }
    }
}

#[derive(Clone, Debug)]
pub struct SplittingEstimate {
    pub eps: f64,
    pub n: u32,
    pub k: Vec<BigInt>,
    pub h1: f64,
    pub ln_envelope: f64,
    pub envelope: f64,
    pub ln_first_order: f64,
    /// first-order dominant value over the envelope; Θ(1) as ε → 0
    pub ratio: f64,
}

#[derive(Clone, Debug)]
pub struct ProfileRow {
    pub eps: f64,
    pub ln_eps: f64,
    pub h1: f64,
    pub h2: f64,
    pub n: u32,
    pub k_dominant: Vec<BigInt>,
    pub ln_envelope: f64,
}

#[derive(Clone, Debug)]
pub struct SplittingProfile {
    pub rows: Vec<ProfileRow>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ContinuedFraction;
    use crate::koch::{build_cubic_golden, build_quadratic};
    use crate::resonances::build_catalog_extended;

    fn quad_engine(word: Vec<u32>) -> Engine {
        let d = Arc::new(build_quadratic(&ContinuedFraction::new(word).unwrap()));
        let cat = Arc::new(build_catalog_extended(&d).unwrap());
        Engine::new(cat, ModelParams::default())
    }

    fn cubic_engine() -> Engine {
        let d = Arc::new(build_cubic_golden());
        let cat = Arc::new(build_catalog_extended(&d).unwrap());
        Engine::new(cat, ModelParams::default())
    }

    #[test]
    fn g_minimum_and_convexity() {
        for ell in [2usize, 3] {
            let (x, y) = (3.7e-5f64, 1.21f64);
            let min = g_of(ell, x.ln(), x.ln(), y);
            assert!((min - y.powf(1.0 / ell as f64)).abs() < 1e-15);
            // strict convexity in ln ε: positive second difference
            let h = 0.3;
            for i in -10..10 {
                let t = x.ln() + i as f64 * h;
                let d2 = g_of(ell, t - h, x.ln(), y) - 2.0 * g_of(ell, t, x.ln(), y)
                    + g_of(ell, t + h, x.ln(), y);
                assert!(d2 > 0.0);
            }
        }
    }

    #[test]
    fn c0_d0_closed_forms() {
        let e = cubic_engine();
        let gs = e.cat.gamma_star;
        let want_c0 = 3.0 * (1.0f64 / 2.0).powf(2.0 / 3.0)
            * (std::f64::consts::PI * gs / 2.0).powf(1.0 / 3.0);
        assert!((e.c0 - want_c0).abs() < 1e-12 * want_c0);
        let want_d0 = (std::f64::consts::PI * gs).powi(2);
        assert!((e.d0 - want_d0).abs() < 1e-12 * want_d0);
    }

    #[test]
    fn quadratic_h1_law() {
        let e = quad_engine(vec![1]);
        let lam = e.cat.data.lambda_f64();
        // h₁(ε*_n) = 1 and h₁(ε′_n) = A₁
        let (_, a1) = e.bounds();
        for n in [2u32, 5, 9] {
            let es = e.ln_eps_star(n).exp();
            assert!((e.h1(es).0 - 1.0).abs() < 1e-12);
            let ep = es / (lam * lam);
            assert!((e.h1(ep).0 - a1).abs() < 1e-12);
        }
        // 4 ln λ periodicity
        for eps in [3.3e-7, 1.0e-5, 4.2e-4] {
            let d = e.h1(eps).0 - e.h1(eps * lam.powi(4)).0;
            assert!(d.abs() < 1e-9);
        }
        assert!((a1 - 1.0291).abs() < 1e-4); // golden A₁
    }

    #[test]
    fn scaling_identity() {
        // g*_{n+1}(ε) = (b_{n+1}/b_n)^{1/ℓ} g*_n((ε*_n/ε*_{n+1})ε)
        for e in [quad_engine(vec![1, 2]), cubic_engine()] {
            let l = e.ell as f64;
            for n in [0u32, 3, 7] {
                for eps in [1e-7f64, 1e-5, 1e-3] {
                    let lhs = e.g_star(n + 1, eps.ln());
                    let shift = e.ln_eps_star(n) - e.ln_eps_star(n + 1);
                    let rhs = (e.b_n(n + 1) / e.b_n(n)).powf(1.0 / l)
                        * e.g_star(n, eps.ln() + shift);
                    assert!((lhs - rhs).abs() < 1e-12 * lhs.abs());
                }
            }
        }
    }

    #[test]
    fn cubic_bounds_and_crossings() {
        let e = cubic_engine();
        let (a0, a1p) = e.bounds();
        assert!((a0 - (1.0 - e.delta).powf(1.0 / 3.0)).abs() < 1e-15);
        // crossing of g⁺_n and g⁺_{n+1} at ε′_n with common value A₁⁺
        let lam = e.cat.data.lambda_f64();
        let x = (lam.sqrt() + 1.0) / (2.0 * lam);
        for n in [1u32, 4, 9] {
            let l = 3.0f64;
            let ln_eps_plus = e.ln_d0 - 2.0 * l / (l - 1.0) * e.ln_k0
                - 2.0 / (l - 1.0) * ((1.0 + e.delta).ln() + l * n as f64 * e.ln_lam);
            let ln_ep = ln_eps_plus + 2.0 * x.ln();
            let g1 = e.g_plus(n, ln_ep);
            let g2 = e.g_plus(n + 1, ln_ep);
            assert!((g1 - g2).abs() < 1e-12);
            assert!((g1 - a1p).abs() < 1e-12);
        }
        // pointwise g*_n ≤ g⁺_n, and A₀⁻ ≤ h₁ ≤ A₁⁺ on a coarse grid
        for i in 0..400 {
            let eps = 1e-8f64 * (1e-3f64 / 1e-8).powf(i as f64 / 399.0);
            for n in 0..18 {
                assert!(e.g_star(n, eps.ln()) <= e.g_plus(n, eps.ln()) + 1e-14);
            }
            let h1 = e.h1(eps).0;
            assert!(h1 >= a0 - 1e-12 && h1 <= a1p + 1e-12);
        }
    }

    #[test]
    fn b_n_quasi_period_22() {
        let e = cubic_engine();
        for n in 0..80u32 {
            assert!((e.b_n(n + 22) - e.b_n(n)).abs() < 0.02);
        }
    }

    #[test]
    fn separation_checks() {
        assert!(cubic_engine().separation_check());
        assert!(quad_engine(vec![1]).separation_check());
        assert!(!quad_engine(vec![14]).separation_check());
    }

    #[test]
    fn h2_vs_h1() {
        // h₂ ≥ h₁ under separation (equality only at dominance changes)
        for e in [quad_engine(vec![1, 2]), cubic_engine()] {
            for i in 0..60 {
                let eps = 1e-8f64 * (1e-3f64 / 1e-8f64).powf(i as f64 / 59.0);
                let (h1a, _) = e.h1_actual(eps);
                let h2 = e.h2(eps);
                assert!(h2 >= h1a - 1e-12, "eps={eps} h1={h1a} h2={h2}");
            }
        }
        // quadratic dominance exchange: h₂(ε′_n) = h₁(ε′_n) in limit terms
        let e = quad_engine(vec![1]);
        let lam = e.cat.data.lambda_f64();
        let ep = e.ln_eps_star(4).exp() / (lam * lam);
        let g4 = e.g_star(4, ep.ln());
        let g5 = e.g_star(5, ep.ln());
        assert!((g4 - g5).abs() < 1e-12);
    }

    #[test]
    fn coefficient_split_gap() {
        // |L_k − α_k e^{−β_k}|/L_k ≤ e^{−π⟨k,ω_ε⟩} for sizable divisors
        let e = cubic_engine();
        let k = IntegerVector::new(vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)]);
        for eps in [1e-3, 1e-5, 3e-7] {
            let c = e.coefficient(&k, eps);
            let approx = c.alpha * (-c.beta).exp();
            // exact identity: (L − αe^{−β})/L = e^{−π⟨k,ω_ε⟩} = e^{−2(β−ρ|k|)}
            let gap = (-(2.0 * (c.beta - e.params.rho))).exp();
            if c.l > 0.0 {
                // the identity holds up to double rounding of L and αe^{−β}
                assert!(((c.l - approx) / c.l).abs() <= gap + 1e-12);
            }
        }
    }

    #[test]
    fn envelope_ratio_theta_one() {
        let e = cubic_engine();
        for eps in [1e-7, 1e-5, 1e-3] {
            let est = e.max_splitting_estimate(eps);
            assert!(est.ratio > 0.1 && est.ratio < 10.0, "ratio={}", est.ratio);
        }
    }
}
