//! Sweep of quadratic frequency families against the separation condition
//! B₀ ≥ A₁, plus the frequency-spec parser and batch profile generation.

use crate::field::ContinuedFraction;
use crate::koch::{build_cubic_golden, build_quadratic, IterationData};
use crate::melnikov::{Engine, ModelParams, SplittingProfile};
use crate::resonances::{build_catalog, build_catalog_extended};
use crate::Error;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::str::FromStr;
use std::sync::Arc;

/// A parsed frequency selector: a quadratic continued-fraction word or the
/// cubic golden vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrequencySpec {
    Quadratic(ContinuedFraction),
    CubicGolden,
}

impl FromStr for FrequencySpec {
    type Err = Error;

    /// Accepts "golden", "silver", "cubic-golden", "omega:a[,b,...]", or a
    /// bare comma-separated period word like "1,2".
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s {
            "golden" => return Ok(FrequencySpec::Quadratic(ContinuedFraction::new(vec![1])?)),
            "silver" => return Ok(FrequencySpec::Quadratic(ContinuedFraction::new(vec![2])?)),
            "cubic-golden" => return Ok(FrequencySpec::CubicGolden),
            _ => {}
        }
        let word = s.strip_prefix("omega:").unwrap_or(s);
        let digits: Result<Vec<u32>, _> = word
            .split(',')
            .map(|d| d.trim().parse::<u32>())
            .collect();
        match digits {
            Ok(ds) if !ds.is_empty() => {
                Ok(FrequencySpec::Quadratic(ContinuedFraction::new(ds)?))
            }
            _ => Err(Error::InvalidSpec(s.to_string())),
        }
    }
}

impl FrequencySpec {
    pub fn build(&self) -> Arc<IterationData> {
        match self {
            FrequencySpec::Quadratic(cf) => Arc::new(build_quadratic(cf)),
            FrequencySpec::CubicGolden => Arc::new(build_cubic_golden()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            FrequencySpec::Quadratic(cf) => format!("{cf}"),
            FrequencySpec::CubicGolden => "cubic-golden".to_string(),
        }
    }
}

/// Outcome for one scanned period word.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub cf: ContinuedFraction,
    pub lambda: f64,
    pub b0: f64,
    pub a1: f64,
    /// B₀ − A₁
    pub margin: f64,
    /// None when |B₀ − A₁| < 10⁻⁶ (indeterminate at double scale)
    pub pass: Option<bool>,
    pub error: Option<String>,
}

/// All canonical period words with the given bounds, in deterministic order
/// (length, then lexicographic). Rotations and repetitions are collapsed via
/// `ContinuedFraction::canonical`.
pub fn candidate_words(period_max: u32, digit_max: u32) -> Vec<ContinuedFraction> {
    assert!(period_max >= 1 && digit_max >= 1);
    let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut word = Vec::new();
    fn rec(word: &mut Vec<u32>, len: usize, digit_max: u32, set: &mut BTreeSet<Vec<u32>>) {
        if word.len() == len {
            let cf = ContinuedFraction::new(word.clone()).unwrap().canonical();
            set.insert(cf.period().to_vec());
            return;
        }
        for d in 1..=digit_max {
            word.push(d);
            rec(word, len, digit_max, set);
            word.pop();
        }
    }
    for len in 1..=period_max as usize {
        rec(&mut word, len, digit_max, &mut set);
    }
    let mut words: Vec<Vec<u32>> = set.into_iter().collect();
    words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    words
        .into_iter()
        .map(|w| ContinuedFraction::new(w).unwrap())
        .collect()
}

fn scan_one(cf: &ContinuedFraction) -> ScanRow {
    let data = Arc::new(build_quadratic(cf));
    let lambda = data.lambda_f64();
    let a1 = 0.5 * (lambda.sqrt() + 1.0 / lambda.sqrt());
    match build_catalog(&data) {
        Ok(cat) => {
            let b0 = cat.b0;
            let margin = b0 - a1;
            // Decide B₀² vs A₁² = (λ + 2 + 1/λ)/4 exactly in ℚ(Ω): a double-
            // precision margin band would misjudge exact ties such as the
            // word [1,12], where B₀ = A₁ = 2 and the (non-strict) separation
            // condition holds. Indeterminate outcomes are reserved for rows
            // whose catalog could not be certified at all.
            let a1_sq = data
                .lambda
                .add(&crate::field::FieldElement::from_int(&data.ctx, 2))
                .add(&data.lambda.inv())
                .scale(&num_rational::BigRational::new(
                    num_bigint::BigInt::from(1),
                    num_bigint::BigInt::from(4),
                ));
            let d = cat.ratio_exact.sub(&a1_sq);
            let pass = if d.is_zero() {
                Some(true)
            } else {
                match d.sign() {
                    Ok(s) => Some(s >= 0),
                    Err(_) => None,
                }
            };
            ScanRow { cf: cf.clone(), lambda, b0, a1, margin, pass, error: None }
        }
        Err(e) => ScanRow {
            cf: cf.clone(),
            lambda,
            b0: f64::NAN,
            a1,
            margin: f64::NAN,
            pass: None,
            error: Some(e.to_string()),
        },
    }
}

/// Evaluate the separation condition for every canonical word within the
/// bounds. Parallel, deterministic output order.
pub fn scan_quadratic(period_max: u32, digit_max: u32) -> Vec<ScanRow> {
    candidate_words(period_max, digit_max)
        .par_iter()
        .map(scan_one)
        .collect()
}

/// Log-spaced h₁/h₂/envelope profile for any frequency spec.
pub fn profile(
    spec: &FrequencySpec,
    eps_min: f64,
    eps_max: f64,
    points: usize,
    params: ModelParams,
) -> Result<SplittingProfile, Error> {
    let data = spec.build();
    let cat = Arc::new(build_catalog_extended(&data)?);
    let engine = Engine::new(cat, params);
    Ok(engine.profile(eps_min, eps_max, points))
}
