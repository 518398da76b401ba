//! One function per command, each returning a JSON report.

use std::cell::RefCell;
use std::time::Instant;

use hyperform_core::eisenstein::{e1_term_groups, DIRICHLET_SHIFT, SIGN_LEDGER};
use hyperform_core::hodge::{
    eigen_convergence_order, eigen_residual, eigen_residual_field, weitzenbock_check, OneFormField, StencilSpec,
};
use hyperform_core::integrals::{
    eisenstein_qexpansion, geodesic_components, geodesic_quadrature, horocycle_integral_as_printed,
    horocycle_integral_closed, horocycle_quadrature, integral_identity_suite, rankin_selberg_closed,
    rankin_selberg_lhs_oracle, GeodesicSegment,
};
use hyperform_core::numerics::quad_periodic;
use hyperform_core::{
    classical_direct, classical_fourier, e1_direct, e1_fourier, residue_at_one, zero_coefficient,
    zero_coefficient_reconciled, Complex64, Error, SeriesResult, UnitTangentPoint,
};
use serde_json::{json, Value};

use crate::config::{Command, OutputFormat, RunConfig};
use crate::output::render;
use crate::table::{table_csv, table_rows};
use crate::{CliError, Outcome, EXIT_CONVERGENCE, EXIT_OK};

/// Relative tail accepted by default for the geodesic φ₂ series, whose
/// c-tail decays slowly inside the strip.
const GEODESIC_DEFAULT_MAX_TAIL: f64 = 1e-3;

pub(crate) fn cjson(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn series_json(r: &SeriesResult) -> Value {
    json!({ "value": cjson(r.value), "tail_estimate": r.tail_estimate, "terms_used": r.terms_used })
}

pub(crate) fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn point(cfg: &RunConfig) -> Result<UnitTangentPoint, CliError> {
    let z = Complex64::new(cfg.x.unwrap_or(0.0), cfg.require_y()?);
    Ok(UnitTangentPoint::new(z, cfg.require_theta()?)?)
}

/// Runs the configured command and renders its report. Convergence failures
/// still produce a report (with the best value) and exit status 2.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.command == Command::Table && cfg.output_format() == OutputFormat::Csv {
        let (body, code) = table_csv(cfg)?;
        return Ok(Outcome { code, body });
    }
    let start = Instant::now();
    let (mut report, code) = match dispatch(cfg) {
        Ok(pair) => pair,
        Err(CliError::Core(Error::Convergence { what, best, estimate })) => (
            json!({
                "command": command_name(cfg.command),
                "status": "convergence_failure",
                "what": what,
                "best": cjson(best),
                "estimate": estimate,
            }),
            EXIT_CONVERGENCE,
        ),
        Err(e) => return Err(e),
    };
    if cfg.command != Command::Table && !cfg.no_timing {
        if let Value::Object(map) = &mut report {
            map.insert("elapsed_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
        }
    }
    Ok(Outcome { code, body: render(cfg, &report)? })
}

pub(crate) fn command_name(c: Command) -> &'static str {
    match c {
        Command::Eval => "eval",
        Command::Eval1 => "eval1",
        Command::Compare => "compare",
        Command::A0 => "a0",
        Command::Residue => "residue",
        Command::Horocycle => "horocycle",
        Command::Geodesic => "geodesic",
        Command::RankinSelberg => "rankin-selberg",
        Command::LaplacianCheck => "laplacian-check",
        Command::Identities => "identities",
        Command::Table => "table",
    }
}

fn ok(mut v: Value, command: Command) -> (Value, i32) {
    if let Value::Object(map) = &mut v {
        map.insert("command".into(), json!(command_name(command)));
        map.insert("status".into(), json!("ok"));
    }
    (v, EXIT_OK)
}

fn dispatch(cfg: &RunConfig) -> Result<(Value, i32), CliError> {
    let c = cfg.command;
    match c {
        Command::Eval => {
            let z = Complex64::new(cfg.x.unwrap_or(0.0), cfg.require_y()?);
            let s = cfg.s()?;
            let policy = cfg.policy()?;
            let d = classical_direct(z, s, &policy)?;
            let f = classical_fourier(z, s, &policy)?;
            Ok(ok(
                json!({
                    "x": z.re, "y": z.im, "s": cjson(s),
                    "direct": series_json(&d), "fourier": series_json(&f),
                    "rel_diff": rel_diff(d.value, f.value),
                }),
                c,
            ))
        }
        Command::Eval1 => {
            let p = point(cfg)?;
            let s = cfg.s()?;
            let policy = cfg.policy()?;
            let d = e1_direct(&p, s, &policy)?;
            let f = e1_fourier(&p, s, &policy)?;
            Ok(ok(
                json!({
                    "x": p.x(), "y": p.y(), "theta": p.theta(), "s": cjson(s),
                    "direct": series_json(&d), "fourier": series_json(&f),
                    "rel_diff": rel_diff(d.value, f.value),
                }),
                c,
            ))
        }
        Command::Compare => {
            let p = point(cfg)?;
            let s = cfg.s()?;
            let policy = cfg.policy()?;
            let groups = e1_term_groups(&p, s, &policy, DIRICHLET_SHIFT)?;
            let combined = groups.combine(&SIGN_LEDGER);
            let d = e1_direct(&p, s, &policy)?;
            Ok(ok(
                json!({
                    "x": p.x(), "y": p.y(), "theta": p.theta(), "s": cjson(s),
                    "groups": groups.groups.iter().map(|g| cjson(*g)).collect::<Vec<_>>(),
                    "signs": SIGN_LEDGER,
                    "dirichlet_shift": DIRICHLET_SHIFT,
                    "fourier": cjson(combined),
                    "direct": series_json(&d),
                    "rel_diff": rel_diff(d.value, combined),
                }),
                c,
            ))
        }
        Command::A0 => {
            let y = cfg.require_y()?;
            let theta = cfg.require_theta()?;
            let s = cfg.s()?;
            let policy = cfg.policy()?;
            let printed = zero_coefficient(y, theta, s)?;
            let reconciled = zero_coefficient_reconciled(y, theta, s)?;
            let first_error = RefCell::new(None);
            let average = quad_periodic(
                |x| {
                    match UnitTangentPoint::new(Complex64::new(x, y), theta).and_then(|p| e1_fourier(&p, s, &policy)) {
                        Ok(r) => r.value,
                        Err(e) => {
                            first_error.borrow_mut().get_or_insert(e);
                            Complex64::new(0.0, 0.0)
                        }
                    }
                },
                0.0,
                1.0,
                &cfg.quadrature(),
            )?;
            if let Some(e) = first_error.into_inner() {
                return Err(e.into());
            }
            Ok(ok(
                json!({
                    "y": y, "theta": theta, "s": cjson(s),
                    "zero_coefficient": cjson(printed),
                    "zero_coefficient_reconciled": cjson(reconciled),
                    "fourier_average": cjson(average.value),
                    "rel_diff_reconciled": rel_diff(average.value, reconciled),
                }),
                c,
            ))
        }
        Command::Residue => {
            let y = cfg.require_y()?;
            let theta = cfg.require_theta()?;
            let r = residue_at_one(y, theta)?;
            Ok(ok(
                json!({
                    "y": y, "theta": theta,
                    "residue": cjson(r),
                    "exact_limit": 0.75 * theta.sin() / y,
                }),
                c,
            ))
        }
        Command::Horocycle => {
            let y = cfg.require_y()?;
            let s = cfg.s()?;
            let policy = cfg.policy()?;
            let closed = horocycle_integral_closed(y, s)?;
            let printed = horocycle_integral_as_printed(y, s)?;
            let q = horocycle_quadrature(y, s, &policy, &cfg.quadrature())?;
            Ok(ok(
                json!({
                    "y": y, "s": cjson(s),
                    "closed": cjson(closed),
                    "as_printed": cjson(printed),
                    "quadrature": { "value": cjson(q.value), "error_estimate": q.error_estimate, "evaluations": q.evaluations },
                    "rel_diff": rel_diff(closed, q.value),
                }),
                c,
            ))
        }
        Command::Geodesic => {
            let y1 = cfg.y1.ok_or(CliError::Missing("--y1"))?;
            let y2 = cfg.y2.ok_or(CliError::Missing("--y2"))?;
            let seg = GeodesicSegment::new(y1, y2)?;
            let s = cfg.s()?;
            let mut policy = cfg.policy()?;
            if cfg.max_tail.is_none() {
                policy.max_rel_tail = GEODESIC_DEFAULT_MAX_TAIL;
            }
            let comps = geodesic_components(&seg, s, &policy, !cfg.allow_outside_strip)?;
            let q = geodesic_quadrature(&seg, s, &policy, &cfg.quadrature())?;
            Ok(ok(
                json!({
                    "y1": y1, "y2": y2, "s": cjson(s),
                    "lambda1": cjson(comps.lambda1),
                    "lambda2": cjson(comps.lambda2),
                    "phi2_sum": cjson(comps.phi2_sum),
                    "bracket1": cjson(comps.bracket1),
                    "bracket2": cjson(comps.bracket2),
                    "hypergeometric_terms": comps.hypergeometric_terms,
                    "closed": cjson(comps.value),
                    "quadrature": { "value": cjson(q.value), "error_estimate": q.error_estimate, "evaluations": q.evaluations },
                }),
                c,
            ))
        }
        Command::RankinSelberg => {
            let y = cfg.require_y()?;
            let theta = cfg.require_theta()?;
            let s = cfg.s()?;
            let f = eisenstein_qexpansion(cfg.weight, cfg.terms)?;
            let closed = rankin_selberg_closed(&f, y, theta, s)?;
            let lhs = rankin_selberg_lhs_oracle(&f, y, theta, s, &cfg.quadrature())?;
            Ok(ok(
                json!({
                    "weight": cfg.weight, "terms": cfg.terms, "y": y, "theta": theta, "s": cjson(s),
                    "closed": cjson(closed),
                    "lhs": cjson(lhs),
                    "rel_diff": rel_diff(closed, lhs),
                }),
                c,
            ))
        }
        Command::LaplacianCheck => {
            let z = Complex64::new(cfg.x.unwrap_or(0.0), cfg.require_y()?);
            let s = cfg.s()?;
            let spec = StencilSpec::new(cfg.h, cfg.order)?;
            let residual = eigen_residual(s, z, &spec)?;
            let diagonal = eigen_residual_field(&OneFormField::diagonal_eigenform(s), -s * (s + 1.0), z, &spec)?;
            let weitzenbock = weitzenbock_check(&OneFormField::eigenform(s), z, &spec)?;
            let steps = [cfg.h, cfg.h / 2.0, cfg.h / 4.0];
            let order = eigen_convergence_order(s, z, cfg.order, &steps).ok();
            Ok(ok(
                json!({
                    "x": z.re, "y": z.im, "s": cjson(s), "h": cfg.h, "order": cfg.order,
                    "eigen_residual": residual,
                    "diagonal_residual": diagonal,
                    "weitzenbock_difference": weitzenbock,
                    "measured_order": order,
                }),
                c,
            ))
        }
        Command::Identities => {
            let report = integral_identity_suite();
            let code = if report.all_pass() { EXIT_OK } else { EXIT_CONVERGENCE };
            let (mut v, _) = ok(json!({ "identities": report.identities, "all_pass": report.all_pass() }), c);
            if code != EXIT_OK {
                v["status"] = json!("failed");
            }
            Ok((v, code))
        }
        Command::Table => {
            let (rows, code) = table_rows(cfg)?;
            Ok((json!({ "rows": rows }), code))
        }
    }
}
