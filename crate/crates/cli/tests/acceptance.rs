//! End-to-end acceptance: one line per criterion, each with its own oracle,
//! tolerance and runtime budget.
//!
//! Criterion 1 is a known red: the residue target 3 sin θ/(2y) is half of
//! the exact limit of (s−1)·a₀ (3 sin θ/(4y)) for the zero coefficient as
//! written. It is evaluated at the stated tolerance, reported, and excluded
//! from the final assertion.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use hyperform_core::hodge::{
    eigen_convergence_order, eigen_residual, eigen_residual_field, weitzenbock_check, OneFormField, StencilSpec,
};
use hyperform_core::integrals::{
    eisenstein_qexpansion, geodesic_boundary_terms, geodesic_components, geodesic_quadrature,
    horocycle_integral_closed, horocycle_quadrature, integral_identity_suite, lambda1, lambda2,
    rankin_selberg_closed, rankin_selberg_lhs_oracle, GeodesicSegment,
};
use hyperform_core::modular::{phi_n_closed, phi_split_truncated, ramanujan_sum};
use hyperform_core::numerics::{gamma, gcd, rgamma};
use hyperform_core::{
    classical_direct, classical_fourier, e1_direct, e1_fourier, residue_at_one, Complex64, QuadratureSpec,
    TruncationPolicy, UnitTangentPoint,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Steps for the convergence-order fit. At h ≤ 1e-3 the O(h²) error of the
/// eigenform residual (~1e-8) sits near the rounding floor ε/h², so the
/// slope is measured where truncation dominates.
const ORDER_STEPS: [f64; 3] = [0.04, 0.02, 0.01];

/// Criteria that are expected to fail; see the module doc.
const KNOWN_RED: [u32; 1] = [1];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

/// (id, name, runtime budget in seconds, check)
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn verdict(max_err: f64, tol: f64, what: &str) -> Outcome {
    Outcome { pass: max_err < tol, detail: format!("{what} {max_err:.2e} (tol {tol:.0e})") }
}

fn quad() -> QuadratureSpec {
    QuadratureSpec { abs_tol: 1e-14, rel_tol: 1e-12, max_levels: 12 }
}

fn residue() -> Outcome {
    let mut worst = 0.0f64;
    for y in [0.5, 1.0, 3.0] {
        for theta in [PI / 6.0, PI / 2.0, 1.25 * PI] {
            let r = residue_at_one(y, theta).expect("residue");
            worst = worst.max((r - c(1.5 * theta.sin() / y, 0.0)).norm());
        }
    }
    verdict(worst, 1e-4, "max |residue − 3 sin θ/(2y)|")
}

fn classical_two_routes() -> Outcome {
    let policy = TruncationPolicy::default();
    let mut worst = 0.0f64;
    for z in [c(0.1, 1.1), c(-0.35, 0.95), c(0.5, 2.0)] {
        for s in [c(2.0, 0.5), c(3.0, 0.0), c(4.0, -1.0)] {
            let d = classical_direct(z, s, &policy).expect("direct");
            let f = classical_fourier(z, s, &policy).expect("fourier");
            worst = worst.max(rel(d.value, f.value));
        }
    }
    verdict(worst, 1e-8, "max rel diff")
}

fn e1_two_routes() -> Outcome {
    let policy = TruncationPolicy::default();
    let mut worst = 0.0f64;
    for s in [2.0, 2.5, 3.0] {
        for theta in [PI / 6.0, PI / 2.0, 4.0 * PI / 3.0] {
            for y in [0.8, 1.5] {
                let p = UnitTangentPoint::new(c(0.1, y), theta).unwrap();
                let d = e1_direct(&p, c(s, 0.0), &policy).expect("direct");
                let f = e1_fourier(&p, c(s, 0.0), &policy).expect("fourier");
                worst = worst.max(rel(d.value, f.value));
            }
        }
    }
    verdict(worst, 1e-6, "max rel diff over 18 points")
}

fn identities() -> Outcome {
    let report = integral_identity_suite();
    let worst = report.identities.iter().map(|i| i.max_rel_err).fold(0.0, f64::max);
    let failing: Vec<&str> = report.identities.iter().filter(|i| !i.pass).map(|i| i.name.as_str()).collect();
    Outcome {
        pass: report.all_pass() && worst < 1e-7,
        detail: format!("{} identities, max rel err {worst:.2e} (tol 1e-7), failing {failing:?}", report.identities.len()),
    }
}

fn horocycle() -> Outcome {
    let policy = TruncationPolicy { c_max: 300, max_rel_tail: 1e-3, ..TruncationPolicy::default() };
    let spec = QuadratureSpec { abs_tol: 1e-12, rel_tol: 1e-9, max_levels: 8 };
    let mut worst = 0.0f64;
    for y0 in [0.8, 1.5, 3.0] {
        for s in [c(2.0, 0.0), c(2.5, 0.0), c(3.0, 0.5)] {
            let closed = horocycle_integral_closed(y0, s).expect("closed");
            let q = horocycle_quadrature(y0, s, &policy, &spec).expect("quadrature");
            worst = worst.max(rel(closed, q.value));
        }
    }
    verdict(worst, 1e-6, "max rel diff over 9 points")
}

fn geodesic() -> Outcome {
    let policy = TruncationPolicy { c_max: 400, max_rel_tail: 1e-2, ..TruncationPolicy::default() };
    let mut worst_abs = 0.0f64;
    for (y1, y2) in [(1.0, 2.0), (0.8, 3.0)] {
        let seg = GeodesicSegment::new(y1, y2).unwrap();
        for s in [c(1.3, 0.0), c(1.4, 0.3), c(1.7, 0.0)] {
            let closed = geodesic_components(&seg, s, &policy, true).expect("closed").value;
            let q = geodesic_quadrature(&seg, s, &policy, &quad()).expect("quadrature").value;
            worst_abs = worst_abs.max(closed.norm()).max(q.norm());
        }
    }
    // independent values: high-precision evaluations, and the reflection-
    // simplified Λ₁ composed from Γ alone
    let frozen_lambda = [
        (c(1.3, 0.0), c(3.050689823046544, 0.0), c(-0.14019128067542034, 0.0)),
        (c(1.7, 0.0), c(11.300805591070525, 0.0), c(0.06837570645700299, 0.0)),
        (c(1.4, 0.3), c(2.4331771636291075, 2.5179426481037463), c(-0.05106315572316746, -0.03768276398535902)),
    ];
    let mut worst_component = 0.0f64;
    for (s, l1, l2) in frozen_lambda {
        worst_component = worst_component.max(rel(lambda1(s).unwrap(), l1)).max(rel(lambda2(s).unwrap(), l2));
        let pow = (s * 2f64.ln() + (s - 0.5) * PI.ln()).exp();
        let reflected = pow * gamma(s + 0.5).unwrap() * rgamma(s + 2.0) / (2.0 - s);
        worst_component = worst_component.max(rel(lambda1(s).unwrap(), reflected));
    }
    let frozen_boundary = [
        (4.0, c(1.3, 0.0), c(-42.364406025431905, 0.0), c(956.7651999610129, 0.0)),
        (2.0, c(1.4, 0.3), c(0.8041168876174015, -0.1585512851749341), c(26.11469041245942, 5.014926460385277)),
    ];
    for (y, s, b1, b2) in frozen_boundary {
        let (v1, v2, _) = geodesic_boundary_terms(y, s).unwrap();
        worst_component = worst_component.max(rel(v1, b1)).max(rel(v2, b2));
    }
    Outcome {
        pass: worst_abs < 1e-8 && worst_component < 1e-8,
        detail: format!("max |integral| {worst_abs:.2e} (tol 1e-8), max component rel err {worst_component:.2e} (tol 1e-8)"),
    }
}

fn rankin_selberg() -> Outcome {
    let mut worst = 0.0f64;
    for k in [4, 6] {
        let f = eisenstein_qexpansion(k, 40).unwrap();
        for (y0, theta, s) in [(1.0, PI / 2.0, c(2.0, 0.0)), (1.5, PI / 3.0, c(2.5, 0.0))] {
            let closed = rankin_selberg_closed(&f, y0, theta, s).expect("closed");
            let lhs = rankin_selberg_lhs_oracle(&f, y0, theta, s, &quad()).expect("lhs");
            worst = worst.max(rel(closed, lhs));
        }
    }
    verdict(worst, 1e-8, "max rel diff")
}

/// A random smooth 1-form built from powers of y, oscillations in x and a
/// polynomial part.
fn random_field(rng: &mut StdRng) -> OneFormField {
    let mut coeff = || c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let (a1, a2, c1, c2) = (coeff(), coeff(), coeff(), coeff());
    let mut real = |lo: f64, hi: f64| rng.random_range(lo..hi);
    let (b1, b2, p1, p2) = (real(-3.0, 3.0), real(-3.0, 3.0), real(-1.5, 2.5), real(-1.5, 2.5));
    OneFormField::new(
        move |z: Complex64| a1 * c(0.0, b1 * z.re).exp() * z.im.powf(p1) + c1 * z.re * z.re,
        move |z: Complex64| a2 * c(0.0, b2 * z.re).exp() * z.im.powf(p2) + c2 * z.re * z.im,
    )
}

fn hodge() -> Outcome {
    let spec = StencilSpec::new(1e-3, 2).unwrap();
    let points = [c(0.0, 1.0), c(0.2, 1.3), c(-0.4, 2.5)];
    let mut worst_residual = 0.0f64;
    for s in [c(2.0, 0.0), c(1.5, 0.5)] {
        let lambda = -s * (s + 1.0);
        for z in points {
            worst_residual = worst_residual
                .max(eigen_residual(s, z, &spec).unwrap())
                .max(eigen_residual_field(&OneFormField::diagonal_eigenform(s), lambda, z, &spec).unwrap());
        }
    }
    // y² is reproduced exactly by the stencil at s = 2, so its residual has
    // no measurable order; the order is measured at s = 1.5 + 0.5i
    let orders: Vec<f64> = points
        .iter()
        .map(|&z| eigen_convergence_order(c(1.5, 0.5), z, 2, &ORDER_STEPS).unwrap())
        .collect();
    let mut rng = StdRng::seed_from_u64(0x5eed_1f0e);
    let mut worst_weitzenbock = 0.0f64;
    for _ in 0..10 {
        let w = random_field(&mut rng);
        let z = c(rng.random_range(-0.5..0.5), rng.random_range(0.8..2.0));
        worst_weitzenbock = worst_weitzenbock.max(weitzenbock_check(&w, z, &spec).unwrap());
    }
    let orders_ok = orders.iter().all(|o| (1.8..=2.2).contains(o));
    Outcome {
        pass: worst_residual < 1e-5 && orders_ok && worst_weitzenbock < 1e-5,
        detail: format!(
            "max residual {worst_residual:.2e} (tol 1e-5), orders {:?} (in [1.8, 2.2]), Weitzenbock max {worst_weitzenbock:.2e} (tol 1e-5)",
            orders.iter().map(|o| (o * 1000.0).round() / 1000.0).collect::<Vec<_>>()
        ),
    }
}

fn modular_arithmetic() -> Outcome {
    let mut mismatches = 0;
    for cc in 1..=50u64 {
        for n in -50..=50i64 {
            let brute: f64 = (0..cc as i64)
                .filter(|&d| gcd(d, cc as i64) == 1)
                .map(|d| (2.0 * PI * (n * d) as f64 / cc as f64).cos())
                .sum();
            if brute.round() as i64 != ramanujan_sum(cc, n) || (brute - brute.round()).abs() > 1e-9 {
                mismatches += 1;
            }
        }
    }
    let policy = TruncationPolicy { c_max: 2000, ..TruncationPolicy::default() };
    let mut worst = 0.0f64;
    for s in [c(2.0, 0.0), c(2.0, 0.7)] {
        for n in 1..=10 {
            let (phi1, _) = phi_split_truncated(n, s, &policy).expect("truncated");
            worst = worst.max(rel(phi1, phi_n_closed(n, s).unwrap()));
        }
    }
    Outcome {
        pass: mismatches == 0 && worst < 1e-6,
        detail: format!("{mismatches} Ramanujan-sum mismatches, φ(n,s) max rel err {worst:.2e} (tol 1e-6)"),
    }
}

fn determinism() -> Outcome {
    let args = [
        "table", "--xs", "-0.4,0.05,0.3", "--ys", "0.9,1.6", "--thetas", "0.5,4", "--ss", "2.5,3+0.25i",
        "--c-max", "300", "--max-tail", "1e-3",
    ];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_hyperform"))
            .args(args)
            .env("HYPERFORM_THREADS", threads)
            .output()
            .expect("binary runs")
    };
    let (one, eight) = (run("1"), run("8"));
    let rows = String::from_utf8_lossy(&one.stdout).lines().count().saturating_sub(1);
    Outcome {
        pass: one.status.success() && eight.status.success() && rows == 24 && one.stdout == eight.stdout,
        detail: format!("{rows} rows, byte-identical: {}", one.stdout == eight.stdout),
    }
}

/// Runs without the libtest harness so the per-criterion lines are always
/// printed; exits non-zero when a criterion outside `KNOWN_RED` fails.
fn main() {
    let criteria: [Criterion; 10] = [
        (1, "residue at s = 1", Some(5), residue),
        (2, "classical two-route agreement", Some(10), classical_two_routes),
        (3, "E¹ two-route agreement", Some(60), e1_two_routes),
        (4, "integral identity suite", Some(30), identities),
        (5, "horocycle integral", Some(60), horocycle),
        (6, "geodesic integral", Some(30), geodesic),
        (7, "Rankin–Selberg unfolding", Some(20), rankin_selberg),
        (8, "Hodge eigenform and Weitzenbock", Some(10), hodge),
        (9, "modular arithmetic", Some(10), modular_arithmetic),
        (10, "table determinism", None, determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_budget = budget.is_none_or(|b| elapsed < Duration::from_secs(b));
        let pass = outcome.pass && in_budget;
        let budget_note = budget.map_or(String::new(), |b| format!(" / {b} s"));
        let known = KNOWN_RED.contains(&id);
        let tag = match (pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known red)",
            (false, false) => "FAIL",
        };
        println!(
            "criterion {id:>2} {tag:<16} {name}: {} [{:.2} s{budget_note}]",
            outcome.detail,
            elapsed.as_secs_f64()
        );
        if !pass && !known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("acceptance: criteria failed: {unexpected:?}");
        std::process::exit(1);
    }
    println!("acceptance: all criteria outside the known-red set pass");
}
