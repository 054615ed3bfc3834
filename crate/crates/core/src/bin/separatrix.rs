//! Command-line front end: catalog analysis, splitting profiles, the
//! separation-condition scan, and the self-verification oracle suites.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 indeterminate
//! analysis (e.g. a tie in the minimal limit numerator).

use clap::{Args, Parser, Subcommand};
use separatrix::field::inner_product;
use separatrix::melnikov::{Engine, ModelParams};
use separatrix::oracle::{enumerate, melnikov_quadrature, BruteForcer};
use separatrix::resonances::{build_catalog, build_catalog_extended, IntegerVector, ResonanceCatalog};
use separatrix::scan::{profile, scan_quadratic, FrequencySpec};
use separatrix::Error;
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "separatrix", version, disable_help_subcommand = true)]
#[command(about = "Resonance catalogs and exponentially small splitting estimates \
for quadratic and cubic frequency vectors")]
struct Cli {
    /// JSON file with default values for long flags (command line wins)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Catalog constants and the per-primitive limit-numerator table
    Analyze(AnalyzeArgs),
    /// CSV profile of h1, h2, dominant index and envelope over a log-eps grid
    Profile(ProfileArgs),
    /// Sweep quadratic period words against the separation condition
    Scan(ScanArgs),
    /// Run the brute-force and quadrature oracle suites
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// frequency: golden | silver | cubic-golden | omega:a[,b,...] | a,b,...
    spec: String,
    /// machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProfileArgs {
    /// frequency: golden | silver | cubic-golden | omega:a[,b,...] | a,b,...
    spec: String,
    #[arg(long)]
    eps_min: Option<f64>,
    #[arg(long)]
    eps_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Fourier decay width of the perturbation
    #[arg(long)]
    rho: Option<f64>,
    /// exponent in mu = eps^p
    #[arg(long)]
    p: Option<f64>,
    /// write CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    period_max: Option<u32>,
    #[arg(long)]
    digit_max: Option<u32>,
    /// write CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// norm-ball radius for the brute-force suites
    #[arg(long)]
    k_max: Option<i64>,
    /// number of random eps samples for the h agreement suite
    #[arg(long)]
    eps_samples: Option<usize>,
    /// negative control: inject a perturbation so every suite must fail
    #[arg(long, hide = true)]
    perturb: bool,
}

/// Defaults loaded from an optional JSON config file; flags win.
struct Config(serde_json::Map<String, Value>);

impl Config {
    fn load(path: &Option<PathBuf>) -> Result<Config, String> {
        match path {
            None => Ok(Config(serde_json::Map::new())),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
                let v: Value = serde_json::from_str(&text)
                    .map_err(|e| format!("config {} is not valid JSON: {e}", p.display()))?;
                match v {
                    Value::Object(m) => Ok(Config(m)),
                    _ => Err(format!("config {} must be a JSON object", p.display())),
                }
            }
        }
    }

    fn f64(&self, key: &str, flag: Option<f64>, default: f64) -> f64 {
        flag.or_else(|| self.0.get(key).and_then(Value::as_f64)).unwrap_or(default)
    }

    fn u64(&self, key: &str, flag: Option<u64>, default: u64) -> u64 {
        flag.or_else(|| self.0.get(key).and_then(Value::as_u64)).unwrap_or(default)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match Config::load(&cli.config) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let code = match cli.cmd {
        Cmd::Analyze(a) => cmd_analyze(&a, &cfg),
        Cmd::Profile(a) => cmd_profile(&a, &cfg),
        Cmd::Scan(a) => cmd_scan(&a, &cfg),
        Cmd::Verify(a) => cmd_verify(&a, &cfg),
    };
    ExitCode::from(code)
}

fn usage_err(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    2
}

fn catalog_err(e: &Error) -> u8 {
    eprintln!("error: {e}");
    match e {
        Error::InvalidSpec(_) | Error::InvalidPeriod => 2,
        _ => 3,
    }
}

/// 17 significant digits, locale-free
fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

fn join_ints<T: std::fmt::Display>(v: &[T], sep: &str) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(sep)
}

fn cmd_analyze(a: &AnalyzeArgs, _cfg: &Config) -> u8 {
    let spec: FrequencySpec = match a.spec.parse() {
        Ok(s) => s,
        Err(e) => return catalog_err(&e),
    };
    let data = spec.build();
    let cat = match build_catalog(&data) {
        Ok(c) => c,
        Err(e) => return catalog_err(&e),
    };
    let cubic = data.ell == 3;
    let (delta, phi) = match data.cubic.as_ref() {
        Some(e) => (Some(e.delta), Some(e.phi)),
        None => (None, None),
    };
    if a.json {
        let prims: Vec<Value> = cat
            .primitives
            .iter()
            .map(|p| {
                json!({
                    "j": p.j.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "k0": p.k0.comps().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "gamma_minus": p.gamma_minus.unwrap_or(p.gamma_star),
                    "gamma_star": p.gamma_star,
                    "gamma_plus": p.gamma_plus.unwrap_or(p.gamma_star),
                    "psi": p.psi,
                })
            })
            .collect();
        let doc = json!({
            "frequency": spec.label(),
            "degree": data.ell,
            "lambda": data.lambda_f64(),
            "gamma_star": cat.gamma_star,
            "j0": cat.primitives[0].j.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "b0": cat.b0,
            "delta": delta,
            "phi": phi,
            "primitives": prims,
            "enumeration_bound": cat.enumeration_bound,
            "tail_bound": cat.tail_bound,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        return 0;
    }
    println!("frequency      {}", spec.label());
    println!("degree         {}", data.ell);
    println!("lambda         {:.4}", data.lambda_f64());
    println!("gamma*         {:.4}", cat.gamma_star);
    println!("j0             [{}]", join_ints(&cat.primitives[0].j, ","));
    println!("{:<15}{:.4}", if cubic { "B0-" } else { "B0" }, cat.b0);
    if let (Some(d), Some(f)) = (delta, phi) {
        println!("delta          {d:.4}");
        println!("phi            {f:.4}");
    }
    println!();
    println!("{:<16}{:<16}{:>10}{:>10}{:>10}", "j", "k0", "gamma-", "gamma*", "gamma+");
    for p in &cat.primitives {
        println!(
            "{:<16}{:<16}{:>10.4}{:>10.4}{:>10.4}",
            format!("[{}]", join_ints(&p.j, ",")),
            format!("[{}]", join_ints(p.k0.comps(), ",")),
            p.gamma_minus.unwrap_or(p.gamma_star),
            p.gamma_star,
            p.gamma_plus.unwrap_or(p.gamma_star),
        );
    }
    println!();
    println!(
        "certified: every sequence with |j| > {} has {} >= {:.4}",
        cat.enumeration_bound,
        if cubic { "gamma-" } else { "gamma*" },
        cat.tail_bound
    );
    0
}

fn cmd_profile(a: &ProfileArgs, cfg: &Config) -> u8 {
    let spec: FrequencySpec = match a.spec.parse() {
        Ok(s) => s,
        Err(e) => return catalog_err(&e),
    };
    let eps_min = cfg.f64("eps-min", a.eps_min, 1e-8);
    let eps_max = cfg.f64("eps-max", a.eps_max, 1e-2);
    let points = cfg.u64("points", a.points.map(|v| v as u64), 2000) as usize;
    let rho = cfg.f64("rho", a.rho, 1.0);
    let p = cfg.f64("p", a.p, 3.5);
    if !(eps_min > 0.0 && eps_min < eps_max) {
        return usage_err("need 0 < eps-min < eps-max");
    }
    if points < 2 {
        return usage_err("need points >= 2");
    }
    if !(rho > 0.0) {
        return usage_err("need rho > 0");
    }
    let prof = match profile(&spec, eps_min, eps_max, points, ModelParams { rho, p }) {
        Ok(p) => p,
        Err(e) => return catalog_err(&e),
    };
    let mut csv = String::from("eps,ln_eps,h1,h2,N,k_dominant,ln_envelope\n");
    for r in &prof.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            f17(r.eps),
            f17(r.ln_eps),
            f17(r.h1),
            f17(r.h2),
            r.n,
            join_ints(&r.k_dominant, ";"),
            f17(r.ln_envelope),
        ));
    }
    emit(&a.out, &csv)
}

fn emit(out: &Option<PathBuf>, text: &str) -> u8 {
    match out {
        None => {
            print!("{text}");
            0
        }
        Some(p) => match std::fs::File::create(p).and_then(|mut f| f.write_all(text.as_bytes())) {
            Ok(()) => 0,
            Err(e) => usage_err(&format!("cannot write {}: {e}", p.display())),
        },
    }
}

fn cmd_scan(a: &ScanArgs, cfg: &Config) -> u8 {
    let period_max = cfg.u64("period-max", a.period_max.map(u64::from), 2) as u32;
    let digit_max = cfg.u64("digit-max", a.digit_max.map(u64::from), 13) as u32;
    if period_max < 1 || digit_max < 1 {
        return usage_err("need period-max >= 1 and digit-max >= 1");
    }
    let rows = scan_quadratic(period_max, digit_max);
    let mut csv = String::from("word,lambda,b0,a1,margin,pass,error\n");
    for r in &rows {
        let word = format!("\"[{}]\"", join_ints(r.cf.period(), ","));
        let pass = match r.pass {
            Some(true) => "true",
            Some(false) => "false",
            None => "indeterminate",
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            word,
            f17(r.lambda),
            f17(r.b0),
            f17(r.a1),
            f17(r.margin),
            pass,
            r.error.as_deref().unwrap_or(""),
        ));
    }
    emit(&a.out, &csv)
}

fn verify_cases() -> Vec<(FrequencySpec, Arc<ResonanceCatalog>)> {
    ["golden", "cubic-golden"]
        .iter()
        .map(|s| {
            let spec: FrequencySpec = s.parse().unwrap();
            let data = spec.build();
            let cat = Arc::new(build_catalog_extended(&data).expect("certified catalog"));
            (spec, cat)
        })
        .collect()
}

fn cmd_verify(a: &VerifyArgs, cfg: &Config) -> u8 {
    let k_max = cfg.u64("k-max", a.k_max.map(|v| v as u64), 500) as i64;
    let eps_samples = cfg.u64("eps-samples", a.eps_samples.map(|v| v as u64), 100) as usize;
    if k_max < 1 {
        return usage_err("need k-max >= 1");
    }
    // the negative control inflates the analytic side by 10^-6, far beyond
    // every agreement tolerance
    let fudge = if a.perturb { 1.0 + 1e-6 } else { 1.0 };
    let cases = verify_cases();
    let mut all_ok = true;

    // Suite 1: enumeration coverage — every admissible vector classifies
    {
        let bound = k_max.min(200);
        let mut ok = true;
        for (spec, cat) in &cases {
            let rep = enumerate(bound, &cat.data);
            let unclassified = rep.unclassified + if a.perturb { 1 } else { 0 };
            if unclassified != 0 {
                ok = false;
            }
            println!(
                "coverage {:<14} |k| <= {}: {} admissible, {} unclassified",
                spec.label(),
                bound,
                rep.admissible,
                unclassified
            );
        }
        println!("suite coverage: {}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    }

    // Suite 2: h1/h2 brute-force agreement on random eps
    {
        let mut ok = true;
        for (spec, cat) in &cases {
            let engine = Engine::new(cat.clone(), ModelParams::default());
            let bf = BruteForcer::new(cat.clone(), ModelParams::default(), k_max);
            let mut state = 0x9e3779b97f4a7c15u64; // fixed seed: reproducible runs
            let mut checked = 0usize;
            let mut worst = 0f64;
            for _ in 0..eps_samples {
                let eps = 10f64.powf(-8.0 + 5.0 * splitmix_unit(&mut state));
                match bf.h(eps) {
                    Ok(r) => {
                        let (h1a, _) = engine.h1_actual(eps);
                        let h2a = engine.h2(eps);
                        let d = (r.h1 - h1a * fudge).abs().max((r.h2 - h2a * fudge).abs());
                        worst = worst.max(d);
                        checked += 1;
                        if d > 1e-9 {
                            ok = false;
                        }
                    }
                    Err(Error::BoundaryMinimizer(_)) => {} // ball too small: skip
                    Err(e) => {
                        eprintln!("brute-force error: {e}");
                        ok = false;
                    }
                }
            }
            println!(
                "h-agreement {:<11} {}/{} samples checked, worst |diff| = {:.3e}",
                spec.label(),
                checked,
                eps_samples,
                worst
            );
        }
        println!("suite h-agreement: {}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    }

    // Suite 3: quadrature vs closed form over <k, omega_eps> in [0.5, 50]
    {
        let mut ok = true;
        let mut worst = 0f64;
        let mut count = 0usize;
        for (_, cat) in &cases {
            let data = &cat.data;
            let k = cat.primitives[0].k0.clone();
            let ip = inner_product(k.comps(), &data.ctx).abs_exact().unwrap().to_f64(192);
            for i in 0..25 {
                let nu = 0.5 * (50.0f64 / 0.5).powf(i as f64 / 24.0);
                let eps = (ip / nu).powi(2);
                match melnikov_quadrature(&k, eps, 1.0, 0.0, data) {
                    Ok(q) => {
                        let ln_l = closed_form_ln_l(nu, k.norm(data.ell), 1.0) + fudge.ln();
                        let rel = (q.ln_abs_value - ln_l).abs();
                        worst = worst.max(rel);
                        count += 1;
                        if rel > 1e-8 {
                            ok = false;
                        }
                    }
                    Err(e) => {
                        eprintln!("quadrature error: {e}");
                        ok = false;
                    }
                }
            }
        }
        println!("quadrature: {count} pairs checked, worst ln-deviation = {worst:.3e}");
        println!("suite quadrature: {}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    }

    if all_ok {
        println!("verification: PASS");
        0
    } else {
        println!("verification: FAIL");
        1
    }
}

/// deterministic splitmix64 step mapped to [0,1)
fn splitmix_unit(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

/// ln of L = 2 pi nu e^{-rho|k|} / sinh(pi nu / 2)
fn closed_form_ln_l(nu: f64, norm: f64, rho: f64) -> f64 {
    (2.0 * std::f64::consts::PI * nu).ln()
        - rho * norm
        - (std::f64::consts::FRAC_PI_2 * nu
            + (-(-(std::f64::consts::PI * nu)).exp()).ln_1p()
            - std::f64::consts::LN_2)
}

// keep the helper referenced for both verify suites even when unusued fields change
#[allow(dead_code)]
fn _touch(_: &IntegerVector) {}
