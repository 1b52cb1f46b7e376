//! Experiment configuration, suite execution and CSV/Markdown reports.
//!
//! A configuration is a flat set of `key=value` entries (the same keys as the
//! command-line flags). [`run`] evaluates the selected suites, writes
//! `report.csv` and `report.md` into the output directory and maps the result
//! to an exit status:
//!
//! | status | meaning |
//! |---|---|
//! | 0 | every row passes |
//! | 1 | at least one check failed, or a numerical routine gave up |
//! | 2 | configuration error or empty suite selection |
//! | 3 | the family does not satisfy a selected suite's hypotheses |

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::{
    corollary_suite, theorem1_bracket, theorem2_bracket, theorem3_bracket, theorem4_bracket, verify_inequality,
    BoundBracket, BoundSettings, CheckResult, CorollaryId, InequalityId, InequalityParams,
};
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::norms::{lp_norm, NormRequest};
use crate::psi::PsiFamily;
use crate::trig::{convolve_with_kernel, f_lower, fejer_kernel, phi_lower, phi_star, vallee_poussin, TrigPolynomial};

pub const CSV_HEADER: [&str; 10] = ["suite", "psi", "s", "beta", "n", "lower", "witness", "upper", "cert_err", "pass"];
pub const CSV_FILE: &str = "report.csv";
pub const MARKDOWN_FILE: &str = "report.md";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Theorem1,
    Theorem2,
    Theorem3,
    Theorem4,
    Lemmas,
    Corollaries,
    Kernels,
}

impl Suite {
    pub const ALL: [Self; 7] = [
        Self::Theorem1,
        Self::Theorem2,
        Self::Theorem3,
        Self::Theorem4,
        Self::Lemmas,
        Self::Corollaries,
        Self::Kernels,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Theorem1 => "theorem1",
            Self::Theorem2 => "theorem2",
            Self::Theorem3 => "theorem3",
            Self::Theorem4 => "theorem4",
            Self::Lemmas => "lemmas",
            Self::Corollaries => "corollaries",
            Self::Kernels => "kernels",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown suite '{}'", s.trim())))
    }
}

/// Everything a run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Family spec, e.g. `power:r=2`.
    pub psi: String,
    /// Metric exponent; `f64::INFINITY` for the uniform metric.
    pub s: f64,
    pub beta: f64,
    /// Nonempty and strictly ascending.
    pub n_values: Vec<u64>,
    pub suites: BTreeSet<Suite>,
    pub tol: f64,
    pub l: Option<u64>,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub spread: Option<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let b = BoundSettings::default();
        Self {
            psi: String::new(),
            s: 2.0,
            beta: 0.0,
            n_values: (1..=16).collect(),
            suites: BTreeSet::new(),
            tol: b.tol,
            l: None,
            out_dir: PathBuf::from("lpsi-out"),
            seed: b.seed,
            spread: None,
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim().parse::<f64>().map_err(|_| Error::Parse(format!("{key}: expected a number, got {v:?}")))
}

fn parse_u64(key: &str, v: &str) -> Result<u64> {
    v.trim().parse::<u64>().map_err(|_| Error::Parse(format!("{key}: expected a nonnegative integer, got {v:?}")))
}

/// `a`, `2^a`.
fn parse_index(v: &str) -> Result<u64> {
    let v = v.trim();
    match v.split_once('^') {
        Some((b, e)) => {
            let b = parse_u64("n", b)?;
            let e: u32 =
                parse_u64("n", e)?.try_into().map_err(|_| Error::Parse(format!("n: exponent too large in {v:?}")))?;
            b.checked_pow(e).ok_or_else(|| Error::Parse(format!("n: {v} overflows")))
        }
        None => parse_u64("n", v),
    }
}

/// `a..b` (inclusive), `2^a..2^b` (powers of two), or a comma-separated list.
pub fn parse_n_values(spec: &str) -> Result<Vec<u64>> {
    let spec = spec.trim();
    let ns: Vec<u64> = if let Some((a, b)) = spec.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let dyadic = a.trim().starts_with("2^") && b.trim().starts_with("2^");
        let (lo, hi) = (parse_index(a)?, parse_index(b)?);
        if lo > hi {
            return Err(Error::Parse(format!("n: empty range {spec:?}")));
        }
        if dyadic {
            (0..64).map(|e| 1u64 << e).filter(|k| (lo..=hi).contains(k)).collect()
        } else {
            if hi - lo >= 1 << 20 {
                return Err(Error::Parse(format!("n: range {spec:?} is too long")));
            }
            (lo..=hi).collect()
        }
    } else {
        spec.split(',').map(parse_index).collect::<Result<_>>()?
    };
    if ns.is_empty() {
        return Err(Error::Parse("n: no values".into()));
    }
    if ns[0] == 0 {
        return Err(Error::Parse("n: values must be >= 1".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse(format!("n: values must be strictly ascending in {spec:?}")));
    }
    Ok(ns)
}

fn parse_suites(spec: &str) -> Result<BTreeSet<Suite>> {
    let mut out = BTreeSet::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "all" {
            out.extend(Suite::ALL);
        } else {
            out.insert(item.parse()?);
        }
    }
    Ok(out)
}

impl ExperimentConfig {
    /// Applies one `key=value` entry.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "psi" => self.psi = value.to_string(),
            "s" => {
                self.s = if value == "inf" { f64::INFINITY } else { parse_f64("s", value)? };
            }
            "beta" => self.beta = parse_f64("beta", value)?,
            "n" => self.n_values = parse_n_values(value)?,
            "suite" => self.suites = parse_suites(value)?,
            "l" => self.l = Some(parse_u64("l", value)?),
            "tol" => self.tol = parse_f64("tol", value)?,
            "out" => self.out_dir = PathBuf::from(value),
            "seed" => self.seed = parse_u64("seed", value)?,
            "spread" => self.spread = Some(parse_f64("spread", value)?),
            other => return Err(Error::Parse(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Applies a config file: one `key=value` per line, `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value, got {line:?}", i + 1)))?;
            self.set(k, v).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = Self::default();
        c.apply_text(text)?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.psi.trim().is_empty() {
            return Err(Error::Parse("psi: no family given".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Parse("suite: empty selection".into()));
        }
        if self.n_values.is_empty() || self.n_values[0] == 0 || self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("n: values must be nonempty, >= 1 and strictly ascending".into()));
        }
        if !(self.s > 1.0) || self.s.is_nan() {
            return Err(Error::Parse(format!("s must lie in (1, inf], got {}", self.s)));
        }
        if !self.beta.is_finite() {
            return Err(Error::Parse(format!("beta must be finite, got {}", self.beta)));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Parse(format!("tol must lie in (0, 1), got {}", self.tol)));
        }
        if self.l == Some(0) {
            return Err(Error::Parse("l must be >= 1".into()));
        }
        if self.spread.is_some_and(|f| !(f >= 1.0)) {
            return Err(Error::Parse("spread must be >= 1".into()));
        }
        Ok(())
    }

    pub fn family(&self) -> Result<PsiFamily> {
        self.psi.parse()
    }

    pub fn settings(&self) -> BoundSettings {
        BoundSettings { tol: self.tol, l: self.l, seed: self.seed, spread_factor: self.spread }
    }
}

/// One CSV line. Check rows carry `lhs` in `lower`, `rhs` in `upper`, no witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub suite: String,
    pub psi: String,
    pub s: f64,
    pub beta: f64,
    pub n: Option<u64>,
    pub lower: f64,
    pub witness: Option<f64>,
    pub upper: f64,
    pub cert_err: f64,
    pub pass: bool,
}

/// Computed rows plus everything that only goes into the Markdown summary.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub rows: Vec<Row>,
    /// Auxiliary checks of the theorem brackets, keyed by `suite.n`.
    pub internal: Vec<(String, CheckResult)>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn check_n_suffix(id: &str) -> Option<u64> {
    let (_, tail) = id.rsplit_once(".n")?;
    tail.parse().ok()
}

fn check_row(suite: &str, cfg: &ExperimentConfig, n: Option<u64>, c: &CheckResult) -> Row {
    Row {
        suite: format!("{suite}/{}", c.id),
        psi: cfg.psi.clone(),
        s: cfg.s,
        beta: cfg.beta,
        n: n.or_else(|| check_n_suffix(&c.id)),
        lower: c.lhs,
        witness: None,
        upper: c.rhs,
        cert_err: c.allowance,
        pass: c.pass,
    }
}

fn bracket_rows(suite: Suite, cfg: &ExperimentConfig, s: f64, brackets: Vec<BoundBracket>, report: &mut Report) {
    for b in brackets {
        for c in &b.checks {
            report.internal.push((format!("{suite}.n{}", b.context.n), c.clone()));
        }
        report.rows.push(Row {
            suite: suite.to_string(),
            psi: cfg.psi.clone(),
            s,
            beta: cfg.beta,
            n: Some(b.context.n),
            lower: b.lower,
            witness: Some(b.witness.value),
            upper: b.upper,
            cert_err: b.witness.error_bound,
            pass: b.holds(),
        });
    }
}

fn per_n<T: Send>(ns: &[u64], f: impl Fn(u64) -> Result<T> + Sync) -> Result<Vec<T>> {
    ns.par_iter().map(|&n| f(n)).collect()
}

fn lemma_rows(family: &PsiFamily, cfg: &ExperimentConfig, report: &mut Report) -> Result<()> {
    let p = if cfg.s.is_finite() { cfg.s } else { 2.0 };
    if cfg.s.is_infinite() {
        report.notes.push("lemmas: s = inf, exponent-dependent lemmas use p = 2".into());
    }
    let settings = cfg.settings();
    let ids = [
        InequalityId::Lemma1,
        InequalityId::Lemma2,
        InequalityId::Lemma3,
        InequalityId::Lemma3Lower,
        InequalityId::TailSandwich,
    ];
    let per: Vec<Vec<(u64, Option<CheckResult>)>> = per_n(&cfg.n_values, |n| {
        let params = InequalityParams { p, n, order: 1, gamma: -cfg.beta * PI / 2.0 };
        let mut out = Vec::new();
        for id in ids {
            match verify_inequality(id, family, &params, &settings) {
                Ok(rows) => out.extend(rows.into_iter().map(|c| (n, Some(c)))),
                Err(Error::Hypothesis(_)) if id == InequalityId::Lemma3Lower => out.push((n, None)),
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    })?;
    let mut skipped = Vec::new();
    for (n, c) in per.into_iter().flatten() {
        match c {
            Some(c) => report.rows.push(check_row("lemmas", cfg, Some(n), &c)),
            None => skipped.push(n),
        }
    }
    if !skipped.is_empty() {
        report
            .notes
            .push(format!("lemmas: lemma3_lower skipped (sup alpha unbounded) for {} value(s) of n", skipped.len()));
    }
    Ok(())
}

fn corollary_rows(family: &PsiFamily, cfg: &ExperimentConfig, report: &mut Report) -> Result<()> {
    let settings = cfg.settings();
    let mut ran = 0;
    for id in CorollaryId::ALL {
        let uniform =
            matches!(id, CorollaryId::UniformOrder | CorollaryId::UniformBoundedAlpha | CorollaryId::HarmonicLogOrder);
        if !uniform && cfg.s.is_infinite() {
            continue;
        }
        match corollary_suite(id, family, cfg.s, cfg.beta, &cfg.n_values, &settings) {
            Ok(rows) => {
                ran += 1;
                for c in &rows {
                    report.rows.push(check_row("corollaries", cfg, None, c));
                }
            }
            Err(Error::Hypothesis(m)) => report.notes.push(format!("corollaries: {id} not applicable: {m}")),
            Err(e) => return Err(e),
        }
    }
    if ran == 0 {
        return Err(Error::Hypothesis("no corollary applies to this family and metric".into()));
    }
    Ok(())
}

fn max_coeff_gap(a: &TrigPolynomial, b: &TrigPolynomial) -> f64 {
    let d = a - b;
    d.cos_coeffs().iter().chain(d.sin_coeffs()).fold(d.constant().abs(), |m, x| m.max(x.abs()))
}

fn kernel_checks(family: &PsiFamily, beta: f64, n: u64) -> Result<Vec<CheckResult>> {
    let m = n as usize;
    let mut out = Vec::new();
    for id in [InequalityId::FejerNorm, InequalityId::ValleePoussinNorm, InequalityId::SineBound] {
        let params = InequalityParams { order: m, ..InequalityParams::default() };
        out.extend(verify_inequality(id, family, &params, &BoundSettings::default())?);
    }
    let one = |p: &TrigPolynomial| lp_norm(&NormRequest::poly(p, 1.0, 1e-10));
    out.push(CheckResult::le("phi_norm", one(&phi_lower(m)?)?, CertifiedValue::exact(1.0)));
    out.push(CheckResult::le("phi_star_norm", one(&phi_star(m)?)?, CertifiedValue::exact(1.0)));
    let vp_fejer = &(&fejer_kernel(2 * m - 1) * 2.0) - &fejer_kernel(m - 1);
    out.push(CheckResult::close("vp_fejer_identity", max_coeff_gap(&vallee_poussin(m)?, &vp_fejer), 0.0, 1e-14));
    let conv = convolve_with_kernel(family, beta, &phi_lower(m)?)?;
    out.push(CheckResult::close("convolution_identity", max_coeff_gap(&f_lower(family, beta, m)?, &conv), 0.0, 1e-12));
    Ok(out)
}

/// Evaluates every selected suite; no I/O.
pub fn execute(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let family = cfg.family()?;
    let settings = cfg.settings();
    let ns = &cfg.n_values;
    let mut report = Report::default();
    for &suite in &cfg.suites {
        match suite {
            Suite::Theorem1 => {
                if cfg.s.is_infinite() {
                    return Err(Error::Parse("theorem1 needs a finite s".into()));
                }
                let bs = per_n(ns, |n| theorem1_bracket(&family, cfg.s, cfg.beta, n, &settings))?;
                bracket_rows(suite, cfg, cfg.s, bs, &mut report);
            }
            Suite::Theorem2 | Suite::Theorem3 | Suite::Theorem4 => {
                let f = match suite {
                    Suite::Theorem2 => theorem2_bracket,
                    Suite::Theorem3 => theorem3_bracket,
                    _ => theorem4_bracket,
                };
                let bs = per_n(ns, |n| f(&family, cfg.beta, n, &settings))?;
                bracket_rows(suite, cfg, f64::INFINITY, bs, &mut report);
            }
            Suite::Lemmas => lemma_rows(&family, cfg, &mut report)?,
            Suite::Corollaries => corollary_rows(&family, cfg, &mut report)?,
            Suite::Kernels => {
                let per = per_n(ns, |n| kernel_checks(&family, cfg.beta, n))?;
                for (checks, &n) in per.iter().zip(ns) {
                    for c in checks {
                        report.rows.push(check_row("kernels", cfg, Some(n), c));
                    }
                }
            }
        }
    }
    Ok(report)
}

fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

fn row_fields(r: &Row) -> [String; 10] {
    [
        r.suite.clone(),
        r.psi.clone(),
        fmt_real(r.s),
        fmt_real(r.beta),
        r.n.map(|n| n.to_string()).unwrap_or_default(),
        fmt_real(r.lower),
        r.witness.map(fmt_real).unwrap_or_default(),
        fmt_real(r.upper),
        fmt_real(r.cert_err),
        r.pass.to_string(),
    ]
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record(row_fields(r)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn render_markdown(cfg: &ExperimentConfig, report: &Report) -> String {
    let mut md = String::new();
    let failed = report.rows.iter().filter(|r| !r.pass).count();
    let suites: Vec<&str> = cfg.suites.iter().map(|s| s.name()).collect();
    let _ = writeln!(md, "# lpsi verification report\n");
    let _ = writeln!(md, "- psi: `{}`", cfg.psi);
    let _ = writeln!(md, "- s: {}, beta: {}", fmt_real(cfg.s), fmt_real(cfg.beta));
    let _ = writeln!(
        md,
        "- n: {} value(s), {}..{}",
        cfg.n_values.len(),
        cfg.n_values[0],
        cfg.n_values[cfg.n_values.len() - 1]
    );
    let _ = writeln!(md, "- suites: {}", suites.join(", "));
    let _ = writeln!(
        md,
        "- tol: {}, l: {}, seed: {}",
        fmt_real(cfg.tol),
        cfg.l.map_or("n".into(), |l| l.to_string()),
        cfg.seed
    );
    let _ = writeln!(md, "- result: {} of {} rows pass\n", report.rows.len() - failed, report.rows.len());
    let _ = writeln!(md, "| {} |", CSV_HEADER.join(" | "));
    let _ = writeln!(md, "|{}", "---|".repeat(CSV_HEADER.len()));
    for r in &report.rows {
        let cells: Vec<String> = row_fields(r).iter().map(|c| md_cell(c)).collect();
        let _ = writeln!(md, "| {} |", cells.join(" | "));
    }
    if !report.internal.is_empty() {
        let bad: Vec<_> = report.internal.iter().filter(|(_, c)| !c.pass).collect();
        let _ = writeln!(md, "\n## Bracket checks\n");
        let _ =
            writeln!(md, "{} of {} auxiliary checks pass.", report.internal.len() - bad.len(), report.internal.len());
        if !bad.is_empty() {
            let _ = writeln!(md, "\n| row | check | lhs | rhs | slack | allowance |\n|---|---|---|---|---|---|");
            for (key, c) in bad {
                let _ = writeln!(
                    md,
                    "| {key} | {} | {} | {} | {} | {} |",
                    c.id,
                    fmt_real(c.lhs),
                    fmt_real(c.rhs),
                    fmt_real(c.slack),
                    fmt_real(c.allowance)
                );
            }
        }
    }
    if !report.notes.is_empty() {
        let _ = writeln!(md, "\n## Notes\n");
        for n in &report.notes {
            let _ = writeln!(md, "- {n}");
        }
    }
    md
}

/// Writes `report.csv` and `report.md` into `dir`.
pub fn emit_table(cfg: &ExperimentConfig, report: &Report, dir: &Path) -> std::io::Result<(PathBuf, PathBuf)> {
    if report.rows.is_empty() {
        return Err(std::io::Error::new(std::io::ErrorKind::InvalidInput, "no rows to write"));
    }
    fs::create_dir_all(dir)?;
    let csv_path = dir.join(CSV_FILE);
    let md_path = dir.join(MARKDOWN_FILE);
    fs::write(&csv_path, render_csv(&report.rows))?;
    fs::write(&md_path, render_markdown(cfg, report))?;
    Ok((csv_path, md_path))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    CheckFailed = 1,
    Config = 2,
    Hypothesis = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::Hypothesis(_) => Self::Hypothesis,
            Error::Parse(_) | Error::Domain(_) | Error::Precondition(_) => Self::Config,
            _ => Self::CheckFailed,
        }
    }
}

/// Result of [`run`]: status, a one-line summary and the files written.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub message: String,
    pub files: Option<(PathBuf, PathBuf)>,
}

pub fn run(cfg: &ExperimentConfig) -> Outcome {
    let report = match execute(cfg) {
        Ok(r) => r,
        Err(e) => return Outcome { status: Status::of_error(&e), message: e.to_string(), files: None },
    };
    match emit_table(cfg, &report, &cfg.out_dir) {
        Ok(files) => {
            let failed = report.rows.iter().filter(|r| !r.pass).count();
            let status = if failed == 0 { Status::Pass } else { Status::CheckFailed };
            let message = format!("{} rows, {failed} failed; wrote {}", report.rows.len(), files.0.display());
            Outcome { status, message, files: Some(files) }
        }
        Err(e) if e.kind() == std::io::ErrorKind::InvalidInput => {
            Outcome { status: Status::Config, message: e.to_string(), files: None }
        }
        Err(e) => Outcome { status: Status::CheckFailed, message: format!("I/O error: {e}"), files: None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> ExperimentConfig {
        ExperimentConfig::from_text(text).unwrap()
    }

    #[test]
    fn n_value_grammar() {
        assert_eq!(parse_n_values("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_n_values("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_n_values("1, 2,8").unwrap(), vec![1, 2, 8]);
        assert_eq!(parse_n_values("2^4..2^6").unwrap(), vec![16, 32, 64]);
        assert_eq!(parse_n_values("2^3").unwrap(), vec![8]);
        for bad in ["", "0..3", "4..2", "3,2", "1,1", "a..b", "1..x"] {
            assert!(parse_n_values(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn config_text() {
        let c = cfg("# comment\npsi = power:r=2\ns=inf\nbeta=1 # odd\nn=1..3\nsuite=theorem2,kernels\nl=5\nseed=7\n");
        assert_eq!(c.psi, "power:r=2");
        assert!(c.s.is_infinite());
        assert_eq!(c.beta, 1.0);
        assert_eq!(c.n_values, vec![1, 2, 3]);
        assert_eq!(c.suites.iter().copied().collect::<Vec<_>>(), vec![Suite::Theorem2, Suite::Kernels]);
        assert_eq!((c.l, c.seed), (Some(5), 7));
        assert_eq!(cfg("suite=all").suites.len(), 7);
        assert!(ExperimentConfig::from_text("bogus=1").is_err());
        assert!(ExperimentConfig::from_text("psi").is_err());
        assert!(ExperimentConfig::from_text("suite=theorem9").is_err());
    }

    #[test]
    fn validation_maps_to_config_status() {
        let empty = cfg("psi=power:r=2");
        assert_eq!(Status::of_error(&execute(&empty).unwrap_err()), Status::Config);
        let bad_s = cfg("psi=power:r=2\nsuite=theorem1\ns=1");
        assert_eq!(Status::of_error(&execute(&bad_s).unwrap_err()), Status::Config);
        let bad_psi = cfg("psi=power:q=2\nsuite=theorem2");
        assert_eq!(Status::of_error(&execute(&bad_psi).unwrap_err()), Status::Config);
    }

    #[test]
    fn theorem2_row_values() {
        let c = cfg("psi=power:r=2\nsuite=theorem2\nn=1");
        let r = execute(&c).unwrap();
        assert_eq!(r.rows.len(), 1);
        let row = &r.rows[0];
        let z2 = PI * PI / 6.0;
        assert!((row.lower - z2 / (4.0 * PI)).abs() < 1e-8);
        assert!((row.upper - z2 / PI).abs() < 1e-8);
        assert!(row.pass);
        assert!(!r.internal.is_empty());
    }

    #[test]
    fn odd_beta_gates_theorem2() {
        let c = cfg("psi=power:r=2\ns=inf\nbeta=1\nsuite=theorem2\nn=1..2");
        assert_eq!(Status::of_error(&execute(&c).unwrap_err()), Status::Hypothesis);
    }

    #[test]
    fn csv_format() {
        let c = cfg("psi=loglog:sp=2,gamma=1,K1=1,K2=1.72\nsuite=kernels\nn=1");
        let r = execute(&c).unwrap();
        let text = render_csv(&r.rows);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        let first = lines.next().unwrap();
        assert!(
            first.starts_with("kernels/fejer_norm.le,\"loglog:sp=2,gamma=1,K1=1,K2=1.72\",2.0000000000000000e0,"),
            "{first}"
        );
        assert!(text.ends_with('\n'));
        let md = render_markdown(&c, &r);
        assert_eq!(md.lines().filter(|l| l.starts_with("| kernels/")).count(), r.rows.len());
    }

    #[test]
    fn kernel_rows_pass() {
        let c = cfg("psi=power:r=1.5\nbeta=0.5\nsuite=kernels\nn=1,2,7");
        let r = execute(&c).unwrap();
        assert!(r.passed(), "{:?}", r.rows.iter().find(|x| !x.pass));
        assert!(r.rows.iter().all(|x| x.n.is_some()));
    }

    #[test]
    fn real_formatting_is_fixed_width_mantissa() {
        assert_eq!(fmt_real(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_real(f64::INFINITY), "inf");
        assert_eq!(fmt_real(-2.0), "-2.0000000000000000e0");
    }
}
