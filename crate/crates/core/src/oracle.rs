//! Independent brute-force and quadrature oracles: exhaustive enumeration of
//! admissible vectors with classification, direct minimization for h₁/h₂ over
//! a norm ball, and numerical contour integration of the single-harmonic
//! Melnikov integral.

use crate::field::FieldElement;
use crate::koch::IterationData;
use crate::melnikov::{g_of, ModelParams};
use crate::resonances::{classify, gamma, is_admissible, IntegerVector, ResonanceCatalog};
use crate::Error;
use num_bigint::BigInt;
use rayon::prelude::*;
use std::sync::Arc;

/// One classified admissible harmonic from the enumeration.
#[derive(Clone, Debug)]
pub struct ClassifiedHarmonic {
    pub k: IntegerVector,
    pub gamma: f64,
    pub j: Vec<BigInt>,
    pub n: u32,
}

/// Exhaustive census of the half-space norm ball |k| ≤ K, k_ℓ ≥ 0.
#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub bound: i64,
    /// number of nonzero representative lattice points in the ball
    pub total: u64,
    pub admissible: usize,
    pub unclassified: usize,
    pub harmonics: Vec<ClassifiedHarmonic>,
}

fn omega_f64(data: &IterationData) -> (f64, f64) {
    let om = FieldElement::omega(&data.ctx);
    (om.to_f64(160), om.square().to_f64(160))
}

/// Tails of the half-space representatives: k₂ ≥ 1 plus the (k₁ > 0, 0) axis
/// for ℓ = 2; (k₂, k₃ ≥ 1), (k₂ ≥ 1, 0) plus the (k₁ > 0, 0, 0) axis for
/// ℓ = 3. The axis tail is handled separately by callers.
fn tails(ell: usize, k_bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if ell == 2 {
        for k2 in 1..=k_bound {
            out.push(vec![k2]);
        }
    } else {
        for k3 in 0..=k_bound {
            let lo = if k3 == 0 { 1 } else { -k_bound };
            for k2 in lo..=k_bound {
                if k2 * k2 + k3 * k3 <= k_bound * k_bound {
                    out.push(vec![k2, k3]);
                }
            }
        }
    }
    out
}

fn in_ball(ell: usize, k: &[i64], k_bound: i64) -> bool {
    if ell == 2 {
        k.iter().map(|c| c.abs()).sum::<i64>() <= k_bound
    } else {
        k.iter().map(|c| c * c).sum::<i64>() <= k_bound * k_bound
    }
}

/// Every nonzero representative k with |k| ≤ K, admissible ones classified.
/// A tail (k₂[,k₃]) admits at most one admissible head k₁ (the nearest
/// integer to −⟨tail, (Ω[,Ω²])⟩; any other head has |⟨k,ω⟩| > 1/2), so the
/// census is exhaustive without visiting every head.
pub fn enumerate(k_bound: i64, data: &Arc<IterationData>) -> EnumerationReport {
    assert!(k_bound >= 1);
    let ell = data.ell;
    let (om1, om2) = omega_f64(data);
    let tls = tails(ell, k_bound);

    let per_tail: Vec<(u64, Option<ClassifiedHarmonic>, bool)> = tls
        .par_iter()
        .map(|tail| {
            // head count inside the ball for the total census
            let reach = if ell == 2 {
                k_bound - tail[0]
            } else {
                ((k_bound * k_bound - tail[0] * tail[0] - tail[1] * tail[1]) as f64)
                    .sqrt()
                    .floor() as i64
            };
            let count = (2 * reach + 1) as u64;
            let target = if ell == 2 {
                -(tail[0] as f64) * om1
            } else {
                -(tail[0] as f64) * om1 - (tail[1] as f64) * om2
            };
            let k1 = target.round() as i64;
            let mut k = vec![k1];
            k.extend_from_slice(tail);
            if !in_ball(ell, &k, k_bound) {
                return (count, None, false);
            }
            let kb: Vec<BigInt> = k.iter().map(|&c| BigInt::from(c)).collect();
            if !is_admissible(&kb, data) {
                return (count, None, false);
            }
            match classify(&kb, data) {
                Ok((j, n)) => {
                    let kv = IntegerVector::new(kb);
                    let g = gamma(&kv, data);
                    (count, Some(ClassifiedHarmonic { k: kv, gamma: g, j, n }), false)
                }
                Err(_) => (count, None, true),
            }
        })
        .collect();

    let mut total = k_bound as u64; // pure-head axis (k₁ > 0, tail 0), never admissible
    let mut harmonics = Vec::new();
    let mut unclassified = 0usize;
    for (count, h, failed) in per_tail {
        total += count;
        if let Some(h) = h {
            harmonics.push(h);
        }
        if failed {
            unclassified += 1;
        }
    }
    EnumerationReport {
        bound: k_bound,
        total,
        admissible: harmonics.len() + unclassified,
        unclassified,
        harmonics,
    }
}

struct BfEntry {
    k: Vec<i64>,
    /// approximate γ̃ (relative error ≲ 10⁻⁶ at |k| ≤ 500)
    gt: f64,
    ln_eps_k: f64,
    ln_norm: f64,
}

/// Direct minimizer of g_k over a norm ball, with exact refinement of the
/// shortlisted candidates.
pub struct BruteForcer {
    cat: Arc<ResonanceCatalog>,
    k_bound: i64,
    ell: usize,
    ln_d0: f64,
    entries: Vec<BfEntry>,
}

#[derive(Clone, Debug)]
pub struct BruteResult {
    pub h1: f64,
    pub h2: f64,
    pub k1: IntegerVector,
    pub k2: IntegerVector,
}

impl BruteForcer {
    pub fn new(cat: Arc<ResonanceCatalog>, params: ModelParams, k_bound: i64) -> BruteForcer {
        let data = &cat.data;
        let ell = data.ell;
        let l = ell as f64;
        let d0 = ((l - 1.0) * std::f64::consts::PI * cat.gamma_star / (2.0 * params.rho)).powi(2);
        let ln_d0 = d0.ln();
        let (om1, om2) = omega_f64(data);
        let gs = cat.gamma_star;

        let entries: Vec<BfEntry> = tails(ell, k_bound)
            .par_iter()
            .flat_map_iter(|tail| {
                let target = if ell == 2 {
                    -(tail[0] as f64) * om1
                } else {
                    -(tail[0] as f64) * om1 - (tail[1] as f64) * om2
                };
                let k1c = target.round() as i64;
                // heads beyond nearest±1 have |⟨k,ω⟩| > 1 hence g far above
                // any attainable second minimum for ε ≤ 10⁻²; widen the
                // window for tiny tails where norms are small
                let w: i64 = if tail.iter().map(|c| c * c).sum::<i64>() <= 25 { 3 } else { 1 };
                let mut out = Vec::new();
                for d in -w..=w {
                    let k1 = k1c + d;
                    let mut k = vec![k1];
                    k.extend_from_slice(tail);
                    if !in_ball(ell, &k, k_bound) {
                        continue;
                    }
                    let ip = (k1 as f64 - target).abs().max(f64::MIN_POSITIVE);
                    let norm = if ell == 2 {
                        k.iter().map(|c| c.abs()).sum::<i64>() as f64
                    } else {
                        (k.iter().map(|c| (c * c) as f64).sum::<f64>()).sqrt()
                    };
                    let gt = ip * norm.powi(ell as i32 - 1) / gs;
                    let ln_eps_k = ln_d0 + 2.0 * gt.ln() - 2.0 * l * norm.ln();
                    out.push(BfEntry { k, gt, ln_eps_k, ln_norm: norm.ln() });
                }
                out
            })
            .collect();

        BruteForcer { cat, k_bound, ell, ln_d0, entries }
    }

    fn g_exact(&self, k: &[i64], ln_eps: f64) -> (f64, IntegerVector) {
        let kv = IntegerVector::new(k.iter().map(|&c| BigInt::from(c)).collect());
        let gt = self.cat.gamma_tilde_exact(&kv).to_f64(192);
        let ln_eps_k = self.ln_d0 + 2.0 * gt.ln() - 2.0 * self.ell as f64 * kv.norm(self.ell).ln();
        (g_of(self.ell, ln_eps, ln_eps_k, gt), kv)
    }

    /// Min and second-min of g_k(ε) over the ball, actual numerators.
    pub fn h(&self, eps: f64) -> Result<BruteResult, Error> {
        let ln_eps = eps.ln();
        // approximate pass to shortlist, then exact refinement
        let mut best = f64::INFINITY;
        let mut second = f64::INFINITY;
        for e in &self.entries {
            let g = g_of(self.ell, ln_eps, e.ln_eps_k, e.gt);
            if g < best {
                second = best;
                best = g;
            } else if g < second {
                second = g;
            }
        }
        let cutoff = second + 1e-4;
        let mut refined: Vec<(f64, IntegerVector, f64)> = self
            .entries
            .iter()
            .filter(|e| g_of(self.ell, ln_eps, e.ln_eps_k, e.gt) <= cutoff)
            .map(|e| {
                let (g, kv) = self.g_exact(&e.k, ln_eps);
                (g, kv, e.ln_norm)
            })
            .collect();
        refined.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert!(refined.len() >= 2, "degenerate shortlist");
        let boundary = (self.k_bound / 2) as f64;
        for (_, kv, _) in refined.iter().take(2) {
            if kv.norm(self.ell) > boundary {
                return Err(Error::BoundaryMinimizer(kv.norm(self.ell).round() as i64));
            }
        }
        Ok(BruteResult {
            h1: refined[0].0,
            h2: refined[1].0,
            k1: refined[0].1.clone(),
            k2: refined[1].1.clone(),
        })
    }
}

/// Result of numerically integrating the single-harmonic Melnikov integral
/// −∫(cos x₀(t) − 1) e^{−ρ|k|} cos(⟨k,ω_ε⟩ t − σ) dt with x₀ = 4 arctan eᵗ.
#[derive(Clone, Debug)]
pub struct QuadratureResult {
    /// coefficient of cos(⟨k,θ⟩ − σ_k)
    pub value: f64,
    pub ln_abs_value: f64,
    /// sine-quadrature residual (vanishes by parity)
    pub sine_component: f64,
    /// certified truncation tail bound on the contour integral
    pub tail_bound: f64,
}

/// Complex adaptive Simpson on f: ℝ → ℂ represented as (re, im).
fn simpson<F: Fn(f64) -> (f64, f64)>(
    f: &F,
    a: f64,
    b: f64,
    fa: (f64, f64),
    fm: (f64, f64),
    fb: (f64, f64),
    tol: f64,
    depth: u32,
) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let h = b - a;
    let whole_re = h / 6.0 * (fa.0 + 4.0 * fm.0 + fb.0);
    let whole_im = h / 6.0 * (fa.1 + 4.0 * fm.1 + fb.1);
    let left_re = h / 12.0 * (fa.0 + 4.0 * flm.0 + fm.0);
    let left_im = h / 12.0 * (fa.1 + 4.0 * flm.1 + fm.1);
    let right_re = h / 12.0 * (fm.0 + 4.0 * frm.0 + fb.0);
    let right_im = h / 12.0 * (fm.1 + 4.0 * frm.1 + fb.1);
    let err = (left_re + right_re - whole_re).abs() + (left_im + right_im - whole_im).abs();
    if depth == 0 || err < 15.0 * tol {
        (
            left_re + right_re + (left_re + right_re - whole_re) / 15.0,
            left_im + right_im + (left_im + right_im - whole_im) / 15.0,
        )
    } else {
        let (lr, li) = simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1);
        let (rr, ri) = simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
        (lr + rr, li + ri)
    }
}

pub fn melnikov_quadrature(
    k: &IntegerVector,
    eps: f64,
    rho: f64,
    _sigma: f64,
    data: &Arc<IterationData>,
) -> Result<QuadratureResult, Error> {
    let nu = crate::field::inner_product(k.comps(), &data.ctx)
        .abs_exact()
        .expect("small divisor is nonzero")
        .to_f64(192)
        / eps.sqrt();
    let norm = k.norm(data.ell);

    // The integrand 2 sech²t · e^{iνt} is analytic up to the double pole at
    // t = iπ/2; integrating along Im t = c < π/2 extracts the factor e^{−νc}
    // analytically, leaving an O(ν)-sized integral that double precision can
    // resolve. c = 0 suffices for small ν.
    let c: f64 = if nu <= 2.0 {
        0.0
    } else {
        std::f64::consts::FRAC_PI_2 - 1.0 / nu
    };
    // 2 sech²(s + ic) e^{iνs}; cosh(s+ic) = cosh s cos c + i sinh s sin c
    let integrand = move |s: f64| -> (f64, f64) {
        let (ch, sh) = (s.cosh(), s.sinh());
        let (re, im) = (ch * c.cos(), sh * c.sin());
        // 1/cosh² = conj(cosh²)/|cosh²|²
        let (c2r, c2i) = (re * re - im * im, 2.0 * re * im);
        let den = c2r * c2r + c2i * c2i;
        let (ir, ii) = (2.0 * c2r / den, -2.0 * c2i / den);
        let (cs, sn) = ((nu * s).cos(), (nu * s).sin());
        (ir * cs - ii * sn, ir * sn + ii * cs)
    };

    // |2 sech²(s+ic)| ≤ 8 e^{−2|s|}/(1 − e^{−2|s|}·…) ≤ 16 e^{−2|s|} past
    // |s| = 1 once |cosh|² ≥ sinh²s; pick T so the tail is ≪ the value scale
    let amp = if c == 0.0 { 1.0 } else { 1.0 / c.cos().powi(2) };
    let t_max = 20.0 + 0.5 * amp.ln().max(0.0);
    let tail_bound = 16.0 * (-2.0 * t_max).exp();
    // value scale of the slab integral: J = e^{νc}·2πν/sinh(πν/2)
    let ln_j = if nu > 0.0 {
        nu * c + (2.0 * std::f64::consts::PI * nu).ln()
            - (std::f64::consts::FRAC_PI_2 * nu
                + (-(-(std::f64::consts::PI * nu)).exp()).ln_1p()
                - std::f64::consts::LN_2)
    } else {
        return Err(Error::QuadratureTail(f64::INFINITY));
    };
    if tail_bound > 1e-10 * ln_j.exp() {
        return Err(Error::QuadratureTail(tail_bound));
    }

    let tol = 1e-13 * ln_j.exp().max(1e-3);
    // split at 0 to keep the peak at a panel boundary
    let f0 = integrand(0.0);
    let fl = integrand(-t_max);
    let fr = integrand(t_max);
    let (re_l, im_l) = simpson(
        &integrand,
        -t_max,
        0.0,
        fl,
        integrand(-0.5 * t_max),
        f0,
        tol,
        48,
    );
    let (re_r, im_r) = simpson(
        &integrand,
        0.0,
        t_max,
        f0,
        integrand(0.5 * t_max),
        fr,
        tol,
        48,
    );
    let j_re = re_l + re_r;
    let j_im = im_l + im_r;

    let ln_abs_value = -rho * norm - nu * c + j_re.abs().ln();
    Ok(QuadratureResult {
        value: j_re.signum() * ln_abs_value.exp(),
        ln_abs_value,
        sine_component: j_im * (-rho * norm - nu * c).exp(),
        tail_bound,
    })
}
