//! Command implementations behind the CLI: each runs the requested decision
//! procedures, cross-checks them, and produces a deterministic report in
//! text, structured (JSON), or CSV form, plus a process exit code.
//!
//! Exit codes: 0 = relation holds / certificate found; 1 = refuted;
//! 2 = inconclusive or boundary (including internal cross-check
//! disagreements); 3 = input error.

use crate::dirichlet::{cm_test, gd_from_pair, rescale_into_domain, PiecewiseProfile};
use crate::error::TrumpingError;
use crate::instance::Instance;
use crate::means::{klimesh_f, power_mean};
use crate::poly::{divide_root_one, poly_from_pair};
use crate::scalar::{format_rational, Rational};
use crate::trumping::{
    catalyst_certificate, trumping_decision, GridConfig, TrumpingRelation, TrumpingVerdict,
};
use crate::vector::{catalyzes, majorizes, PositiveVector, Relation};
use serde::Serialize;
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct MajorizationSection {
    pub relation: String,
    /// Quotient coefficients after dividing the lattice polynomial by
    /// `(t-1)^2`, when the entries admit an integer lattice.
    pub quotient_coeffs: Option<Vec<String>>,
    pub quotient_holds: Option<bool>,
    /// Complete-monotonicity verdict of the order-2 profile test.
    pub mu2_is_cm: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct GridRow {
    pub nu: f64,
    pub a_nu_x: f64,
    pub a_nu_y: f64,
    pub f_nu_x: f64,
    pub f_nu_y: f64,
}

#[derive(Debug, Serialize)]
pub struct TrumpingSection {
    pub verdict: TrumpingVerdict,
    /// Exact direct-witness outcome when a catalyst `c` was supplied.
    pub direct_witness: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct CertificateSection {
    pub trivial: bool,
    pub alpha: f64,
    pub q: String,
    pub snapped_x: Vec<String>,
    pub snapped_y: Vec<String>,
    pub zeta2_coeffs: Vec<String>,
    pub product_coeffs: Vec<String>,
    pub polya_n: usize,
    pub catalyst: Option<Vec<String>>,
    pub catalyst_dimension: usize,
    pub max_rel_error: f64,
    /// Always true for an emitted certificate: the exact witness re-check.
    pub reverified: bool,
}

#[derive(Debug, Serialize)]
pub struct ProfileTable {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct RconvexSection {
    pub r: u32,
    pub quotient_holds: Option<bool>,
    pub quotient_coeffs: Option<Vec<String>>,
    pub remainders: Option<Vec<String>>,
    pub mu_is_cm: bool,
    pub moment_values: Vec<f64>,
    pub mu_profile: ProfileTable,
    pub spline: ProfileTable,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub regime: String,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub c: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub majorization: Option<MajorizationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trumping: Option<TrumpingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rconvex: Option<RconvexSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<GridRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disagreement: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Debug)]
pub struct CmdOutput {
    pub report: Report,
    pub exit_code: i32,
    pub rendered: String,
}

fn echo(v: &PositiveVector) -> Vec<String> {
    match v {
        PositiveVector::Exact(e) => e.iter().map(format_rational).collect(),
        PositiveVector::Float(e) => e.iter().map(|f| format!("{f}")).collect(),
    }
}

fn new_report(command: &str, inst: &Instance) -> Report {
    Report {
        command: command.to_string(),
        regime: if inst.exact { "exact" } else { "float" }.to_string(),
        x: echo(&inst.x),
        y: echo(&inst.y),
        c: inst.c.as_ref().map(echo),
        majorization: None,
        trumping: None,
        certificate: None,
        rconvex: None,
        grid: None,
        disagreement: None,
        error: None,
        elapsed_ms: 0.0,
    }
}

fn coeff_strings(coeffs: &[Rational]) -> Vec<String> {
    coeffs.iter().map(format_rational).collect()
}

/// Power mean extended by continuity: 0 for `nu <= 0` on vectors with zeros.
fn a_nu_ext(v: &PositiveVector, nu: f64) -> f64 {
    if nu <= 0.0 && v.first_nonpositive().is_some() {
        return 0.0;
    }
    power_mean(v, nu).unwrap_or(f64::NAN)
}

fn normalized(v: &PositiveVector) -> PositiveVector {
    let f = v.to_f64();
    let s: f64 = f.iter().sum();
    PositiveVector::Float(f.iter().map(|e| e / s).collect())
}

fn grid_rows(x: &PositiveVector, y: &PositiveVector, grid: &GridConfig) -> Vec<GridRow> {
    let xn = normalized(x);
    let yn = normalized(y);
    (0..grid.points)
        .map(|i| {
            let nu = grid.nu_min
                + (grid.nu_max - grid.nu_min) * i as f64 / (grid.points - 1) as f64;
            GridRow {
                nu,
                a_nu_x: a_nu_ext(&xn, nu),
                a_nu_y: a_nu_ext(&yn, nu),
                f_nu_x: klimesh_f(&xn, nu),
                f_nu_y: klimesh_f(&yn, nu),
            }
        })
        .collect()
}

fn profile_table(p: &PiecewiseProfile) -> ProfileTable {
    let breakpoints = p.breakpoints_f64();
    let values = breakpoints.iter().map(|&b| p.eval_f64(b)).collect();
    ProfileTable {
        breakpoints,
        values,
    }
}

fn finish(mut report: Report, exit_code: i32, format: Format, start: Instant) -> CmdOutput {
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let rendered = render(&report, format);
    CmdOutput {
        report,
        exit_code,
        rendered,
    }
}

fn input_error(command: &str, inst: &Instance, msg: String, format: Format) -> CmdOutput {
    let start = Instant::now();
    let mut report = new_report(command, inst);
    report.error = Some(msg);
    finish(report, 3, format, start)
}

pub fn cmd_majorize(inst: &Instance, format: Format) -> CmdOutput {
    let start = Instant::now();
    let mut report = new_report("majorize", inst);
    let verdict = match majorizes(&inst.x, &inst.y) {
        Ok(v) => v,
        Err(e) => return input_error("majorize", inst, e.to_string(), format),
    };
    let relation = verdict.relation;

    // Independent certificates where the machinery applies.
    let (quotient_coeffs, quotient_holds) = match poly_from_pair(&inst.x, &inst.y) {
        Ok(p) if p.is_zero() => (Some(Vec::new()), Some(true)),
        Ok(p) => match divide_root_one(&p, 2) {
            Ok(cert) => (Some(coeff_strings(cert.quotient.coeffs())), Some(cert.holds())),
            Err(_) => (None, None),
        },
        Err(_) => (None, None),
    };
    let mu2_is_cm = rescale_into_domain(&inst.x, &inst.y)
        .ok()
        .and_then(|(xr, yr, _)| gd_from_pair(&xr, &yr).ok())
        .map(|z| cm_test(&z, 2).is_cm);

    let expected = matches!(relation, Relation::XMajorizedByY | Relation::Equal);
    let mut disagreement = None;
    if let Some(h) = quotient_holds {
        if h != expected {
            disagreement = Some(format!(
                "partial sums report {relation:?} but the quotient certificate says {h}"
            ));
        }
    }
    if let Some(cm) = mu2_is_cm {
        if cm != expected && disagreement.is_none() {
            disagreement = Some(format!(
                "partial sums report {relation:?} but the order-2 profile test says {cm}"
            ));
        }
    }

    report.majorization = Some(MajorizationSection {
        relation: format!("{relation:?}"),
        quotient_coeffs,
        quotient_holds,
        mu2_is_cm,
    });
    report.disagreement = disagreement.clone();
    let exit = if disagreement.is_some() {
        2
    } else if expected {
        0
    } else {
        1
    };
    finish(report, exit, format, start)
}

pub fn cmd_trump(inst: &Instance, grid: &GridConfig, format: Format) -> CmdOutput {
    let start = Instant::now();
    let mut report = new_report("trump", inst);
    let verdict = match trumping_decision(&inst.x, &inst.y, grid) {
        Ok(v) => v,
        Err(TrumpingError::InternalDisagreement(msg)) => {
            let mut report = new_report("trump", inst);
            report.disagreement = Some(msg.clone());
            report.error = Some(msg);
            return finish(report, 2, format, start);
        }
        Err(e) => return input_error("trump", inst, e.to_string(), format),
    };
    let direct_witness = inst
        .c
        .as_ref()
        .and_then(|c| catalyzes(&inst.x, &inst.y, c).ok());
    let exit = match verdict.relation {
        TrumpingRelation::TrumpedStrictly
        | TrumpingRelation::Majorized
        | TrumpingRelation::Equal => 0,
        TrumpingRelation::NotTrumped => 1,
        TrumpingRelation::Boundary => 2,
    };
    report.grid = Some(grid_rows(&inst.x, &inst.y, grid));
    report.trumping = Some(TrumpingSection {
        verdict,
        direct_witness,
    });
    finish(report, exit, format, start)
}

pub fn cmd_certify(
    inst: &Instance,
    q: &Rational,
    n_max: usize,
    r: u32,
    format: Format,
) -> CmdOutput {
    let start = Instant::now();
    let mut report = new_report("certify", inst);
    match catalyst_certificate(&inst.x, &inst.y, q, n_max, r) {
        Ok(cert) => {
            let dimension = cert.catalyst.as_ref().map_or(0, |c| c.len());
            report.certificate = Some(CertificateSection {
                trivial: cert.trivial,
                alpha: cert.alpha,
                q: format_rational(&cert.q),
                snapped_x: echo(&cert.snapped_x),
                snapped_y: echo(&cert.snapped_y),
                zeta2_coeffs: coeff_strings(cert.zeta2.coeffs()),
                product_coeffs: coeff_strings(cert.product.coeffs()),
                polya_n: cert.polya_n,
                catalyst: cert.catalyst.as_ref().map(echo),
                catalyst_dimension: dimension,
                max_rel_error: cert.max_rel_error,
                reverified: true,
            });
            finish(report, 0, format, start)
        }
        Err(e) => {
            let exit = match &e {
                TrumpingError::NotTrumpedAfterSnap(_)
                | TrumpingError::DivisionNotExact(_) => 1,
                TrumpingError::PolyaSearchExhausted(_)
                | TrumpingError::InternalDisagreement(_) => 2,
                _ => 3,
            };
            report.error = Some(e.to_string());
            finish(report, exit, format, start)
        }
    }
}

pub fn cmd_rconvex(inst: &Instance, r: u32, format: Format) -> CmdOutput {
    let start = Instant::now();
    let mut report = new_report("rconvex", inst);
    if r < 1 {
        return input_error("rconvex", inst, "order r must be at least 1".into(), format);
    }

    let (quotient_coeffs, quotient_holds, remainders) = match poly_from_pair(&inst.x, &inst.y)
    {
        Ok(p) if p.is_zero() => (Some(Vec::new()), Some(true), Some(Vec::new())),
        Ok(p) => match divide_root_one(&p, r) {
            Ok(cert) => (
                Some(coeff_strings(cert.quotient.coeffs())),
                Some(cert.holds()),
                Some(cert.remainders.iter().map(format_rational).collect()),
            ),
            Err(_) => (None, None, None),
        },
        Err(_) => (None, None, None),
    };

    let dirichlet = rescale_into_domain(&inst.x, &inst.y)
        .map_err(|e| e.to_string())
        .and_then(|(xr, yr, _)| gd_from_pair(&xr, &yr).map_err(|e| e.to_string()));
    let zeta = match dirichlet {
        Ok(z) => z,
        Err(e) => return input_error("rconvex", inst, e, format),
    };
    let cm = cm_test(&zeta, r);
    let spline = crate::dirichlet::spline_rep(&zeta, r);

    let mut disagreement = None;
    if let Some(h) = quotient_holds {
        if h != cm.is_cm {
            disagreement = Some(format!(
                "quotient certificate says {h} but the order-{r} profile test says {}",
                cm.is_cm
            ));
        }
    }

    let holds = quotient_holds.unwrap_or(cm.is_cm) && cm.is_cm;
    report.rconvex = Some(RconvexSection {
        r,
        quotient_holds,
        quotient_coeffs,
        remainders,
        mu_is_cm: cm.is_cm,
        moment_values: cm.moment_values.clone(),
        mu_profile: profile_table(&cm.mu_profile),
        spline: profile_table(&spline),
    });
    report.disagreement = disagreement.clone();
    let exit = if disagreement.is_some() {
        2
    } else if holds {
        0
    } else {
        1
    };
    finish(report, exit, format, start)
}

pub fn cmd_grid(inst: &Instance, grid: &GridConfig, format: Format) -> CmdOutput {
    let start = Instant::now();
    let mut report = new_report("grid", inst);
    for (label, v) in [("x", &inst.x), ("y", &inst.y)] {
        if let Some(i) = v.to_f64().iter().position(|&e| e < 0.0) {
            return input_error(
                "grid",
                inst,
                format!("negative entry in {label} at position {i}"),
                format,
            );
        }
    }
    report.grid = Some(grid_rows(&inst.x, &inst.y, grid));
    finish(report, 0, format, start)
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut out = serde_json::to_string_pretty(report).unwrap();
            out.push('\n');
            out
        }
        Format::Csv => render_csv(report),
        Format::Text => render_text(report),
    }
}

fn render_csv(report: &Report) -> String {
    let mut out = String::new();
    if let Some(rows) = &report.grid {
        out.push_str("nu,A_nu_x,A_nu_y,f_nu_x,f_nu_y\n");
        for r in rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.nu, r.a_nu_x, r.a_nu_y, r.f_nu_x, r.f_nu_y
            );
        }
        return out;
    }
    // No grid data: fall back to key,value pairs of the main verdict.
    out.push_str("key,value\n");
    let _ = writeln!(out, "command,{}", report.command);
    if let Some(m) = &report.majorization {
        let _ = writeln!(out, "relation,{}", m.relation);
    }
    if let Some(t) = &report.trumping {
        let _ = writeln!(out, "relation,{:?}", t.verdict.relation);
    }
    if let Some(c) = &report.certificate {
        let _ = writeln!(out, "polya_n,{}", c.polya_n);
    }
    if let Some(e) = &report.error {
        let _ = writeln!(out, "error,{}", e.replace(',', ";"));
    }
    out
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    let _ = writeln!(out, "regime: {}", report.regime);
    let _ = writeln!(out, "x: {}", report.x.join(" "));
    let _ = writeln!(out, "y: {}", report.y.join(" "));
    if let Some(c) = &report.c {
        let _ = writeln!(out, "c: {}", c.join(" "));
    }
    if let Some(e) = &report.error {
        let _ = writeln!(out, "error: {e}");
        return out;
    }
    if let Some(m) = &report.majorization {
        let _ = writeln!(out, "relation: {}", m.relation);
        if let (Some(coeffs), Some(holds)) = (&m.quotient_coeffs, m.quotient_holds) {
            let _ = writeln!(
                out,
                "quotient certificate: {} (coefficients {})",
                if holds { "holds" } else { "fails" },
                coeffs.join(" ")
            );
        }
        if let Some(cm) = m.mu2_is_cm {
            let _ = writeln!(
                out,
                "order-2 profile test: {}",
                if cm { "completely monotone" } else { "not completely monotone" }
            );
        }
    }
    if let Some(t) = &report.trumping {
        let _ = writeln!(out, "relation: {:?}", t.verdict.relation);
        if !t.verdict.failures.is_empty() {
            let _ = writeln!(out, "failed strict inequalities:");
            for (nu, lhs, rhs) in &t.verdict.failures {
                let _ = writeln!(out, "  nu = {nu}: lhs = {lhs}, rhs = {rhs}");
            }
        }
        let l = &t.verdict.limits;
        let _ = writeln!(
            out,
            "limits: A_0 {:.6} vs {:.6}; sigma {:.6} vs {:.6}; max {:.6} vs {:.6}; min {:.6} vs {:.6}",
            l.a0_x, l.a0_y, l.sigma_x, l.sigma_y, l.max_x, l.max_y, l.min_x, l.min_y
        );
        if let Some(w) = t.direct_witness {
            let _ = writeln!(out, "direct witness with supplied c: {w}");
        }
    }
    if let Some(c) = &report.certificate {
        let _ = writeln!(out, "certificate: {}", if c.trivial { "trivial" } else { "lattice" });
        let _ = writeln!(out, "q: {} (alpha = {:.6})", c.q, c.alpha);
        let _ = writeln!(out, "snapped x: {}", c.snapped_x.join(" "));
        let _ = writeln!(out, "snapped y: {}", c.snapped_y.join(" "));
        let _ = writeln!(out, "max relative snap error: {:.3e}", c.max_rel_error);
        let _ = writeln!(out, "zeta2 coefficients: {}", c.zeta2_coeffs.join(" "));
        let _ = writeln!(out, "product coefficients: {}", c.product_coeffs.join(" "));
        let _ = writeln!(out, "polya n: {}", c.polya_n);
        if let Some(cat) = &c.catalyst {
            let _ = writeln!(out, "catalyst ({} entries): {}", c.catalyst_dimension, cat.join(" "));
        }
        let _ = writeln!(out, "reverified by exact witness check: {}", c.reverified);
    }
    if let Some(r) = &report.rconvex {
        let _ = writeln!(out, "order: {}", r.r);
        if let Some(h) = r.quotient_holds {
            let _ = writeln!(out, "quotient certificate: {}", if h { "holds" } else { "fails" });
        }
        let _ = writeln!(
            out,
            "profile test: {}",
            if r.mu_is_cm { "completely monotone" } else { "not completely monotone" }
        );
        let moments: Vec<String> = r.moment_values.iter().map(|v| format!("{v}")).collect();
        let _ = writeln!(out, "moment values: {}", moments.join(" "));
        let _ = writeln!(
            out,
            "profile breakpoints: {}",
            r.mu_profile
                .breakpoints
                .iter()
                .map(|b| format!("{b}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    if report.certificate.is_none() && report.majorization.is_none() && report.trumping.is_none()
    {
        if let Some(rows) = &report.grid {
            let _ = writeln!(out, "grid rows: {}", rows.len());
        }
    }
    if let Some(d) = &report.disagreement {
        let _ = writeln!(out, "internal disagreement: {d}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    fn worked_example() -> Instance {
        parse_instance("x: 5 5 5 5\ny: 2 2 6 10\n").unwrap()
    }

    #[test]
    fn majorize_worked_example() {
        let out = cmd_majorize(&worked_example(), Format::Text);
        assert_eq!(out.exit_code, 0);
        let m = out.report.majorization.as_ref().unwrap();
        assert_eq!(m.relation, "XMajorizedByY");
        assert_eq!(m.quotient_holds, Some(true));
        assert_eq!(
            m.quotient_coeffs.as_ref().unwrap().join(" "),
            "0 0 2 4 6 4 3 2 1"
        );
        assert_eq!(m.mu2_is_cm, Some(true));
        assert!(out.report.disagreement.is_none());
    }

    #[test]
    fn majorize_equal_zero_certificate() {
        let inst = parse_instance("x: 3 1\ny: 1 3\n").unwrap();
        let out = cmd_majorize(&inst, Format::Text);
        assert_eq!(out.exit_code, 0);
        let m = out.report.majorization.as_ref().unwrap();
        assert_eq!(m.relation, "Equal");
        assert_eq!(m.quotient_coeffs.as_deref(), Some(&[] as &[String]));
    }

    #[test]
    fn majorize_refuted_exit_code() {
        let inst = parse_instance("x: 2 2 6 10\ny: 5 5 5 5\n").unwrap();
        let out = cmd_majorize(&inst, Format::Text);
        assert_eq!(out.exit_code, 1);
    }

    #[test]
    fn trump_reports_majorized() {
        let out = cmd_trump(&worked_example(), &GridConfig::default(), Format::Structured);
        assert_eq!(out.exit_code, 0);
        let t = out.report.trumping.as_ref().unwrap();
        assert_eq!(t.verdict.relation, TrumpingRelation::Majorized);
        assert!(out.rendered.contains("\"Majorized\""));
    }

    #[test]
    fn trump_with_direct_witness() {
        let inst =
            parse_instance("x: 0.4 0.4 0.1 0.1\ny: 0.5 0.25 0.25 0.0\nc: 0.6 0.4\n").unwrap();
        let out = cmd_trump(&inst, &GridConfig::default(), Format::Text);
        let t = out.report.trumping.as_ref().unwrap();
        assert_eq!(t.direct_witness, Some(true));
    }

    #[test]
    fn certify_trivial_and_exhausted() {
        let out = cmd_certify(&worked_example(), &crate::scalar::rat_int(2), 16, 2, Format::Text);
        assert_eq!(out.exit_code, 0);
        assert!(out.report.certificate.as_ref().unwrap().trivial);

        let inst = parse_instance(
            "x: 8 16 16 32 256 512 512\ny: 4 4 64 64 64 128 1024\n",
        )
        .unwrap();
        let out = cmd_certify(&inst, &crate::scalar::rat_int(2), 0, 2, Format::Text);
        assert_eq!(out.exit_code, 2);
        assert!(out.report.error.as_ref().unwrap().contains("exhausted"));
    }

    #[test]
    fn rconvex_r2_worked_example() {
        let out = cmd_rconvex(&worked_example(), 2, Format::Text);
        assert_eq!(out.exit_code, 0);
        let r = out.report.rconvex.as_ref().unwrap();
        assert_eq!(r.quotient_holds, Some(true));
        assert!(r.mu_is_cm);
    }

    #[test]
    fn rconvex_r3_moment_failure() {
        // Generic pair with zeta(-2) != 0: both routes refute order 3.
        let out = cmd_rconvex(&worked_example(), 3, Format::Text);
        assert_eq!(out.exit_code, 1);
        let r = out.report.rconvex.as_ref().unwrap();
        assert_eq!(r.quotient_holds, Some(false));
        assert!(!r.mu_is_cm);
        assert!(r.moment_values.iter().any(|v| v.abs() > 1e-9));
    }

    #[test]
    fn grid_csv_columns() {
        let out = cmd_grid(&worked_example(), &GridConfig::default(), Format::Csv);
        assert_eq!(out.exit_code, 0);
        let mut lines = out.rendered.lines();
        assert_eq!(lines.next().unwrap(), "nu,A_nu_x,A_nu_y,f_nu_x,f_nu_y");
        assert_eq!(lines.count(), 201);
    }

    #[test]
    fn structured_report_is_deterministic_modulo_timing() {
        let a = cmd_majorize(&worked_example(), Format::Structured);
        let b = cmd_majorize(&worked_example(), Format::Structured);
        let strip = |s: &str| -> String {
            s.lines()
                .filter(|l| !l.contains("elapsed_ms"))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(strip(&a.rendered), strip(&b.rendered));
    }
}
