//! The `table` grid: E¹ by both routes over xs × ys × thetas × ss.

use hyperform_core::{e1_direct, e1_fourier, Complex64, Error, UnitTangentPoint};
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::rel_diff;
use crate::config::RunConfig;
use crate::{CliError, EXIT_CONVERGENCE, EXIT_OK};

pub const TABLE_HEADER: &str =
    "x,y,theta,s_re,s_im,e1_direct_re,e1_direct_im,e1_fourier_re,e1_fourier_im,rel_diff,terms_direct,terms_fourier";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub s_re: f64,
    pub s_im: f64,
    pub e1_direct_re: f64,
    pub e1_direct_im: f64,
    pub e1_fourier_re: f64,
    pub e1_fourier_im: f64,
    pub rel_diff: f64,
    pub terms_direct: u64,
    pub terms_fourier: u64,
    /// Set when either route stopped short of its tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence_failure: Option<String>,
}

impl TableRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.x,
            self.y,
            self.theta,
            self.s_re,
            self.s_im,
            self.e1_direct_re,
            self.e1_direct_im,
            self.e1_fourier_re,
            self.e1_fourier_im,
            self.rel_diff,
            self.terms_direct,
            self.terms_fourier
        )
    }
}

fn grid(cfg: &RunConfig) -> Result<Vec<(f64, f64, f64, Complex64)>, CliError> {
    let xs = if cfg.xs.is_empty() { vec![cfg.x.unwrap_or(0.0)] } else { cfg.xs.clone() };
    let ys = if cfg.ys.is_empty() { vec![cfg.require_y()?] } else { cfg.ys.clone() };
    let thetas = if cfg.thetas.is_empty() { vec![cfg.require_theta()?] } else { cfg.thetas.clone() };
    let ss = if cfg.ss.is_empty() { vec![cfg.s()?] } else { cfg.ss.clone() };
    let mut points = Vec::with_capacity(xs.len() * ys.len() * thetas.len() * ss.len());
    for &x in &xs {
        for &y in &ys {
            for &t in &thetas {
                for &s in &ss {
                    points.push((x, y, t, s));
                }
            }
        }
    }
    Ok(points)
}

/// (value, terms, failure) with convergence failures kept as best values.
fn route(r: hyperform_core::Result<hyperform_core::SeriesResult>) -> Result<(Complex64, u64, Option<String>), Error> {
    match r {
        Ok(v) => Ok((v.value, v.terms_used, None)),
        Err(e @ Error::Convergence { best, .. }) => Ok((best, 0, Some(e.to_string()))),
        Err(e) => Err(e),
    }
}

fn row(x: f64, y: f64, theta: f64, s: Complex64, cfg: &RunConfig) -> Result<TableRow, CliError> {
    let policy = cfg.policy()?;
    let p = UnitTangentPoint::new(Complex64::new(x, y), theta)?;
    let (d, td, fd) = route(e1_direct(&p, s, &policy))?;
    let (f, tf, ff) = route(e1_fourier(&p, s, &policy))?;
    Ok(TableRow {
        x,
        y,
        theta,
        s_re: s.re,
        s_im: s.im,
        e1_direct_re: d.re,
        e1_direct_im: d.im,
        e1_fourier_re: f.re,
        e1_fourier_im: f.im,
        rel_diff: rel_diff(d, f),
        terms_direct: td,
        terms_fourier: tf,
        convergence_failure: fd.or(ff),
    })
}

/// Evaluates the grid in parallel; rows come back in grid order, so the
/// output does not depend on the thread count.
pub fn table_rows(cfg: &RunConfig) -> Result<(Vec<TableRow>, i32), CliError> {
    let rows = grid(cfg)?
        .into_par_iter()
        .map(|(x, y, t, s)| row(x, y, t, s, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let code = if rows.iter().any(|r| r.convergence_failure.is_some()) { EXIT_CONVERGENCE } else { EXIT_OK };
    Ok((rows, code))
}

/// The grid as CSV text with header, plus the exit code.
pub fn table_csv(cfg: &RunConfig) -> Result<(String, i32), CliError> {
    let (rows, code) = table_rows(cfg)?;
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in &rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    Ok((out, code))
}
