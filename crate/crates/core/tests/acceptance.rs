//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use lpsi_core::bounds::{
    corollary_suite, duality_lower_s, fourier_upper, theorem1_bracket, theorem2_bracket, theorem3_bracket,
    theorem4_bracket, verify_inequality, BoundBracket, BoundSettings, CorollaryId, InequalityId, InequalityParams,
};
use lpsi_core::norms::{lp_norm, NormRequest};
use lpsi_core::trig::{convolve_with_kernel, f_lower, fejer_kernel, phi_lower, phi_star, vallee_poussin};
use lpsi_core::{PsiFamily, TrigPolynomial};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fam(spec: &str) -> PsiFamily {
    spec.parse().unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// `Σ_{k≥n} k^{-q}` for `n = 0..=top` (entry 0 unused), summed term by term
/// down from `2·10^6` on top of the midpoint integral of the rest.
fn brute_tails(q: f64, top: u64) -> Vec<f64> {
    const K: u64 = 2_000_000;
    let mut acc = (K as f64 + 0.5).powf(1.0 - q) / (q - 1.0);
    let mut out = vec![0.0; top as usize + 1];
    for k in (1..=K).rev() {
        acc += (k as f64).powf(-q);
        if k <= top {
            out[k as usize] = acc;
        }
    }
    out
}

fn c1_parseval_oracle() -> Outcome {
    let cfg = BoundSettings::default();
    let mut worst: f64 = 0.0;
    for r in [1.5, 2.0] {
        let f = PsiFamily::power(r).unwrap();
        let tails = brute_tails(2.0 * r, 32);
        for beta in [0.0, 1.0] {
            for n in 1..=32u64 {
                let got = fourier_upper(&f, 2.0, beta, n, &cfg).map_err(|e| e.to_string())?.value;
                let want = (tails[n as usize] / PI).sqrt();
                let rel = (got / want - 1.0).abs();
                worst = worst.max(rel);
                ensure(rel <= 1e-6, || format!("r={r} beta={beta} n={n}: {got} vs {want}"))?;
            }
        }
    }
    Ok(format!("128 cases, max rel err {worst:.1e}"))
}

fn c2_theorem1() -> Outcome {
    let f = PsiFamily::power(2.0).unwrap();
    let cfg = BoundSettings::default();
    let tails = brute_tails(4.0, 64);
    for n in 1..=64u64 {
        let b = theorem1_bracket(&f, 2.0, 0.0, n, &cfg).map_err(|e| e.to_string())?;
        let d = duality_lower_s(&f, 2.0, n, None, &cfg).map_err(|e| e.to_string())?;
        let w = fourier_upper(&f, 2.0, 0.0, n, &cfg).map_err(|e| e.to_string())?;
        ensure(d.lower.lo() <= w.hi() && w.lo() <= b.upper, || {
            format!("n={n}: {} <= {} <= {} fails", d.lower.value, w.value, b.upper)
        })?;
        ensure(b.holds(), || format!("n={n}: bracket check failed"))?;
        let t = tails[n as usize].sqrt();
        let (cl, cu) = (b.lower / t, b.upper / t);
        ensure((cl / 4.4525e-4 - 1.0).abs() < 1e-4 && (cu / 89.361 - 1.0).abs() < 1e-4, || {
            format!("n={n}: constants {cl:.6e}, {cu:.4}")
        })?;
    }
    Ok("n = 1..64, constants 4.4525e-4 / 89.361 within 1e-4".into())
}

fn find_check<'a>(b: &'a BoundBracket, suffix: &str) -> Option<&'a lpsi_core::bounds::CheckResult> {
    b.checks.iter().find(|c| c.id.ends_with(suffix))
}

fn c3_theorem2() -> Outcome {
    let cfg = BoundSettings::default();
    let tails = brute_tails(2.0, 64);
    for spec in ["power:r=2", "harmlog:gamma=2,K1=exp(2)"] {
        let f = fam(spec);
        for n in 1..=64u64 {
            let b = theorem2_bracket(&f, 0.0, n, &cfg).map_err(|e| format!("{spec} n={n}: {e}"))?;
            ensure(b.ordered(), || format!("{spec} n={n}: {} / {} / {}", b.lower, b.witness.value, b.upper))?;
            let nn = find_check(&b, "value_witness_exceeds_nn").ok_or(format!("{spec} n={n}: no nn check"))?;
            ensure(nn.pass && b.holds(), || format!("{spec} n={n}: auxiliary check failed"))?;
            if spec == "power:r=2" {
                // upper = T.hi/π with T certified to relative tol
                let t = tails[n as usize];
                let hi = b.upper * PI;
                ensure(hi >= t * (1.0 - 1e-12) && hi <= t * (1.0 + 2.0 * cfg.tol), || {
                    format!("n={n}: T.hi = {hi} vs {t}")
                })?;
            }
        }
    }
    Ok("2 families, n = 1..64, nn witness above (1-1/2n)T/4pi".into())
}

fn c4_theorems34() -> Outcome {
    let cfg = BoundSettings::default();
    let mut quad = 0;
    for spec in ["power:r=1.5", "harmloglog:gamma=1,delta=2,K1=20.09,K2=20.09"] {
        let f = fam(spec);
        for n in 1..=64u64 {
            let b3 = theorem3_bracket(&f, 0.0, n, &cfg).map_err(|e| format!("{spec} T3 n={n}: {e}"))?;
            let b4 = theorem4_bracket(&f, 1.0, n, &cfg).map_err(|e| format!("{spec} T4 n={n}: {e}"))?;
            for b in [&b3, &b4] {
                if let Some(c) = b.checks.iter().find(|c| !c.pass) {
                    return Err(format!("{spec} n={n}: {} failed ({} vs {})", c.id, c.lhs, c.rhs));
                }
                ensure(b.ordered(), || format!("{spec} n={n}: ordering"))?;
                quad += b.checks.iter().filter(|c| c.id.ends_with("_quadrature")).count();
            }
            let cap = (PI + 2.0) * f.eval(n as f64).unwrap() * n as f64;
            ensure(b4.witness.lo() * PI <= cap, || format!("{spec} n={n}: witness above (pi+2) psi(n) n"))?;
        }
    }
    ensure(quad > 0, || "no quadrature cross-check ran".into())?;
    Ok(format!("2 families, n = 1..64, {quad} quadrature agreements"))
}

fn c5_lemmas() -> Outcome {
    let cfg = BoundSettings::default();
    let mut rows = 0;
    let mut run = |id, spec: &str, params: InequalityParams| -> Result<(), String> {
        let out =
            verify_inequality(id, &fam(spec), &params, &cfg).map_err(|e| format!("{id} {spec} {params:?}: {e}"))?;
        rows += out.len();
        match out.iter().find(|c| !c.pass) {
            Some(c) => Err(format!("{spec} {params:?}: {} ({} > {})", c.id, c.lhs, c.rhs)),
            None => Ok(()),
        }
    };
    for spec in ["power:r=2", "power:r=1.5", "harmlog:gamma=2,K1=exp(2)"] {
        for p in [1.5, 2.0, 3.0] {
            for n in [1, 2, 4, 8, 16] {
                let params = InequalityParams { p, n, ..InequalityParams::default() };
                run(InequalityId::Lemma1, spec, params)?;
                run(InequalityId::Lemma2, spec, params)?;
            }
        }
    }
    for n in [1, 2, 4, 8, 16] {
        let params = InequalityParams { n, ..InequalityParams::default() };
        run(InequalityId::Lemma3, "power:r=1.5", params)?;
        run(InequalityId::Lemma3Lower, "power:r=1.5", params)?;
    }
    let spot = verify_inequality(
        InequalityId::Lemma3,
        &fam("power:r=1.5"),
        &InequalityParams { n: 4, ..Default::default() },
        &cfg,
    )
    .map_err(|e| e.to_string())?;
    let (lhs, rhs) = (spot[0].lhs, spot[0].rhs);
    ensure((lhs - 0.5).abs() < 1e-6 && (rhs - 0.5331865).abs() < 1e-6, || format!("spot value {lhs} vs {rhs}"))?;
    Ok(format!("{rows} rows; spot lhs {lhs:.7} rhs {rhs:.7}"))
}

fn l1(p: &TrigPolynomial) -> Result<f64, String> {
    lp_norm(&NormRequest::poly(p, 1.0, 1e-11)).map(|v| v.value).map_err(|e| e.to_string())
}

fn max_gap(a: &TrigPolynomial, b: &TrigPolynomial) -> f64 {
    let d = a - b;
    d.cos_coeffs().iter().chain(d.sin_coeffs()).fold(d.constant().abs(), |m, x| m.max(x.abs()))
}

fn c6_kernels() -> Outcome {
    let tol = 1e-9;
    for k in 1..=256usize {
        let fk = l1(&fejer_kernel(k))?;
        ensure((fk - PI).abs() <= 1e-8, || format!("||F_{k}||_1 = {fk}"))?;
        let v = vallee_poussin(k).unwrap();
        ensure(l1(&v)? <= 3.0 * PI + tol, || format!("||V_{k}||_1 > 3pi"))?;
        ensure(l1(&phi_lower(k).unwrap())? <= 1.0 + tol, || format!("||phi_{k}||_1 > 1"))?;
        ensure(l1(&phi_star(k).unwrap())? <= 1.0 + tol, || format!("||phi*_{k}||_1 > 1"))?;
        let id = &(&fejer_kernel(2 * k - 1) * 2.0) - &fejer_kernel(k - 1);
        ensure(max_gap(&v, &id) <= 4.0 * f64::EPSILON, || format!("V_{k} != 2F_(2k-1) - F_(k-1)"))?;
    }
    let (a, b) = (l1(&phi_lower(1).unwrap())?, l1(&phi_star(1).unwrap())?);
    ensure((a - 1.0 / PI).abs() <= 1e-8 && (b - 1.0 / PI).abs() <= 1e-8, || format!("phi_1: {a}, phi*_1: {b}"))?;
    let mut worst: f64 = 0.0;
    for spec in ["power:r=2", "power:r=1.5", "harmlog:gamma=2,K1=exp(2)"] {
        let f = fam(spec);
        for beta in [0.0, 0.5, 1.0, -0.3] {
            for m in [1, 2, 5, 64, 256] {
                let conv = convolve_with_kernel(&f, beta, &phi_lower(m).unwrap()).map_err(|e| e.to_string())?;
                worst = worst.max(max_gap(&f_lower(&f, beta, m).unwrap(), &conv));
            }
        }
    }
    ensure(worst <= 1e-12, || format!("convolution identity gap {worst:e}"))?;
    Ok(format!("orders 1..256; convolution gap {worst:.1e}"))
}

fn c7_loglog_order() -> Outcome {
    let f = PsiFamily::log_log(2.0, 1.0, 1.0, 1.72).unwrap();
    let ns: Vec<u64> = (4..=14).map(|e| 1u64 << e).collect();
    let rows = corollary_suite(CorollaryId::LogLogOrder, &f, 2.0, 0.0, &ns, &BoundSettings::default())
        .map_err(|e| e.to_string())?;
    let spread = rows.iter().find(|r| r.id.ends_with("loglog_spread")).ok_or("no spread row")?;
    ensure(spread.rhs <= 4.0, || format!("spread factor {} above 4", spread.rhs))?;
    if let Some(c) = rows.iter().find(|c| !c.pass) {
        return Err(format!("{} failed: {} > {}", c.id, c.lhs, c.rhs));
    }
    Ok(format!("spread {:.4} <= {}", spread.lhs, spread.rhs))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_cli(conf: &Path, out: &Path) -> Result<String, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_lpsi"))
        .arg("verify")
        .arg("--config")
        .arg(conf)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.code() == Some(0), || {
        format!("{}: exit {:?}: {}", conf.display(), status.status.code(), String::from_utf8_lossy(&status.stderr))
    })?;
    fs::read_to_string(out.join("report.csv")).map_err(|e| e.to_string())
}

fn c8_cli_determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut confs: Vec<PathBuf> = fs::read_dir(golden_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "conf"))
        .collect();
    confs.sort();
    ensure(confs.len() >= 7, || format!("expected one golden config per suite, found {}", confs.len()))?;
    for conf in &confs {
        let stem = conf.file_stem().unwrap().to_string_lossy().to_string();
        let a = run_cli(conf, &tmp.path().join(format!("{stem}-a")))?;
        let b = run_cli(conf, &tmp.path().join(format!("{stem}-b")))?;
        ensure(a == b, || format!("{stem}: two runs differ"))?;
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            fs::write(conf.with_extension("csv"), &a).map_err(|e| format!("{stem}: {e}"))?;
        }
        let golden = fs::read_to_string(conf.with_extension("csv")).map_err(|e| format!("{stem}: {e}"))?;
        ensure(a == golden, || format!("{stem}: output differs from golden file"))?;
    }
    Ok(format!("{} configs byte-identical across runs and to golden files", confs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("s=2 exact-value oracle", c1_parseval_oracle),
        ("Theorem 1 bracket, t^-2, s=2", c2_theorem1),
        ("Theorem 2 bracket and nn witness", c3_theorem2),
        ("Theorem 3/4 suites", c4_theorems34),
        ("lemma suite", c5_lemmas),
        ("kernel and extremal invariants", c6_kernels),
        ("Corollary 3 order spread", c7_loglog_order),
        ("CLI determinism and golden files", c8_cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {} PASS  {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
