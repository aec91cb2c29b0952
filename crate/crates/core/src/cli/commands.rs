use std::io::Write;

use super::output::{Cell, Table};
use super::sweep::SweepConfig;
use super::{
    Controls, EvalArgs, Method, SelftestArgs, SweepArgs, TableArgs, EXIT_CONVERGENCE, EXIT_OK,
    EXIT_SELFTEST, EXIT_USAGE,
};
use crate::error::{Error, Result};
use crate::nuttall::{
    consistency_deviation, homogeneous_table, nuttall_q, nuttall_q_homogeneous, nuttall_q_ladder,
    nuttall_q_series, MomentQuery,
};
use crate::quadrature::quadrature_q;

pub const SELFTEST_THRESHOLD: f64 = 1e-12;

/// The `(η, μ, x, y)` points of the moment reference table.
pub const TABLE1_POINTS: [[f64; 4]; 9] = [
    [1.0, 1.0, 0.1, 1.5],
    [5.0, 10.0, 0.1, 1.5],
    [50.0, 30.0, 0.1, 1.5],
    [1.0, 1.0, 1.2, 5.0],
    [5.0, 10.0, 1.2, 5.0],
    [50.0, 30.0, 1.2, 5.0],
    [1.0, 1.0, 5.0, 10.0],
    [5.0, 10.0, 5.0, 10.0],
    [50.0, 30.0, 5.0, 10.0],
];

/// Orders `N` of the recurrence table, at `η = 2`, `x = 2`, `y = 3`.
pub const TABLE2_ORDERS: [usize; 6] = [10, 20, 30, 40, 50, 60];

const RECORD_HEADERS: [&str; 8] = ["eta", "mu", "x", "y", "method", "value", "est_error", "terms"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub est_error: f64,
    pub terms: usize,
    pub converged: bool,
}

/// Splits `μ` into a ladder start in `(0, 1]` and the number of columns
/// needed to reach `μ`.
fn mu_ladder(mu: f64) -> (f64, usize) {
    let steps = (mu.ceil() - 1.0).max(0.0);
    (mu - steps, steps as usize + 1)
}

/// Evaluates `q` by `method`. For the recurrences the reported error is the
/// relative deviation from the series value.
pub fn evaluate(q: MomentQuery, method: Method, tol: f64, max_terms: usize) -> Result<Evaluation> {
    let series = || nuttall_q_series(q, tol, max_terms);
    match method {
        Method::Series => {
            let out = series()?;
            Ok(Evaluation {
                value: out.value,
                est_error: out.est_error,
                terms: out.terms_used,
                converged: out.converged,
            })
        }
        Method::Ladder | Method::Homogeneous => {
            let eta = q.integer_eta()?;
            let (mu_start, n_cols) = mu_ladder(q.mu);
            let table = if method == Method::Ladder {
                nuttall_q_ladder(eta, mu_start, n_cols, q.x, q.y)?
            } else {
                homogeneous_table(eta, mu_start, n_cols, q.x, q.y)?
            };
            let value = table.last();
            let reference = series()?.into_result()?;
            Ok(Evaluation {
                value,
                est_error: (1.0 - reference / value).abs(),
                terms: n_cols - 1,
                converged: true,
            })
        }
        Method::Quadrature => {
            let out = quadrature_q(&q)?;
            Ok(Evaluation {
                value: out.value,
                est_error: out.est_error,
                terms: out.nodes,
                converged: true,
            })
        }
    }
}

fn record(q: &MomentQuery, method: Method, e: &Evaluation) -> Vec<Cell> {
    vec![
        Cell::Num(q.eta),
        Cell::Num(q.mu),
        Cell::Num(q.x),
        Cell::Num(q.y),
        Cell::Text(method.name().into()),
        Cell::Num(e.value),
        Cell::Num(e.est_error),
        Cell::Int(e.terms),
    ]
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => EXIT_USAGE,
        Error::NotConverged { .. } => EXIT_CONVERGENCE,
    }
}

fn report(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    exit_code(e)
}

pub(super) fn eval(a: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Controls { tol, max_terms, format } = a.controls;
    let q = match MomentQuery::new(a.eta, a.mu, a.x, a.y) {
        Ok(q) => q,
        Err(e) => return report(err, &e),
    };
    let ev = match evaluate(q, a.method, tol, max_terms) {
        Ok(ev) => ev,
        Err(e) => return report(err, &e),
    };
    let mut t = Table::new(&RECORD_HEADERS);
    t.push(record(&q, a.method, &ev));
    let _ = out.write_all(t.render(format, true).as_bytes());
    if ev.converged {
        EXIT_OK
    } else {
        let _ = writeln!(err, "error: series stopped at the {max_terms}-term cap before reaching tol {tol:e}");
        EXIT_CONVERGENCE
    }
}

pub(super) fn table(a: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let rendered = match a.which {
        1 => table1(&a.controls),
        _ => table2().map(|t| t.render(a.controls.format, false)),
    };
    match rendered {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            EXIT_OK
        }
        Err(e) => report(err, &e),
    }
}

fn table1(c: &Controls) -> Result<String> {
    let mut t = Table::new(&RECORD_HEADERS);
    for [eta, mu, x, y] in TABLE1_POINTS {
        let q = MomentQuery::new(eta, mu, x, y)?;
        let ev = evaluate(q, Method::Series, c.tol, c.max_terms)?;
        if !ev.converged {
            return Err(Error::NotConverged {
                method: "series",
                iterations: ev.terms,
                est_error: ev.est_error,
            });
        }
        t.push(record(&q, Method::Series, &ev));
    }
    Ok(t.render(c.format, false))
}

/// `N`, the series value, the recurrence value and `|1 - series/recurrence|`
/// for each order of [`TABLE2_ORDERS`].
pub fn table2_rows() -> Result<Vec<(usize, f64, f64, f64)>> {
    let (eta, x, y) = (2usize, 2.0, 3.0);
    let n_cols = *TABLE2_ORDERS.iter().max().expect("non-empty");
    let prev = (1..=n_cols)
        .map(|m| nuttall_q(eta as f64 - 1.0, m as f64, x, y))
        .collect::<Result<Vec<f64>>>()?;
    let seed0 = nuttall_q(eta as f64, 1.0, x, y)?;
    let seed1 = nuttall_q(eta as f64, 2.0, x, y)?;
    let row = nuttall_q_homogeneous(eta, &prev, seed0, seed1, x, y, 1.0, n_cols)?;
    TABLE2_ORDERS
        .iter()
        .map(|&n| {
            let s = nuttall_q(eta as f64, n as f64, x, y)?;
            let r = row[n - 1];
            Ok((n, s, r, (1.0 - s / r).abs()))
        })
        .collect()
}

fn table2() -> Result<Table> {
    let mut t = Table::new(&["n", "series", "recurrence", "rel_error"]);
    for (n, s, r, e) in table2_rows()? {
        t.push(vec![Cell::Int(n), Cell::Num(s), Cell::Num(r), Cell::Num(e)]);
    }
    Ok(t)
}

pub(super) fn sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Controls { tol, max_terms, format } = a.controls;
    let g = &a.grid;
    let cfg = match SweepConfig::new([g.eta, g.mu, g.x, g.y], g.steps, a.method.clone(), tol) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let mut t = Table::new(&RECORD_HEADERS);
    let mut failures = 0usize;
    for [eta, mu, x, y] in cfg.points() {
        let q = match MomentQuery::new(eta, mu, x, y) {
            Ok(q) => q,
            Err(e) => return report(err, &e),
        };
        for &method in &cfg.methods {
            let recurrence = matches!(method, Method::Ladder | Method::Homogeneous);
            if recurrence && (x == 0.0 || eta.fract() != 0.0) {
                let _ = writeln!(
                    err,
                    "note: {} skipped at eta={eta} mu={mu} x={x} y={y} (needs x > 0 and integer eta)",
                    method.name()
                );
                continue;
            }
            match evaluate(q, method, cfg.tol, max_terms) {
                Ok(ev) => {
                    if !ev.converged {
                        failures += 1;
                    }
                    t.push(record(&q, method, &ev));
                }
                Err(e) => {
                    if exit_code(&e) == EXIT_CONVERGENCE {
                        failures += 1;
                    }
                    let _ = writeln!(err, "error at eta={eta} mu={mu} x={x} y={y} ({}): {e}", method.name());
                }
            }
        }
    }
    let _ = out.write_all(t.render(format, false).as_bytes());
    if failures > 0 {
        let _ = writeln!(err, "{failures} evaluation(s) failed to converge");
        EXIT_CONVERGENCE
    } else {
        EXIT_OK
    }
}

/// Outcome of the recurrence-identity check over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SelftestSummary {
    pub points: usize,
    pub failures: usize,
    pub max_deviation: f64,
    pub worst: Option<[f64; 4]>,
}

/// Runs [`consistency_deviation`] on every grid point. `η` is rounded to the
/// nearest integer, the identity couples η to η-1.
pub fn run_selftest(cfg: &SweepConfig, err: &mut dyn Write) -> SelftestSummary {
    let mut summary = SelftestSummary {
        points: 0,
        failures: 0,
        max_deviation: 0.0,
        worst: None,
    };
    for [eta, mu, x, y] in cfg.points() {
        let eta = eta.round().max(1.0);
        summary.points += 1;
        let dev = MomentQuery::new(eta, mu, x, y).and_then(consistency_deviation);
        match dev {
            Ok(d) if d.is_finite() => {
                if summary.worst.is_none() || d > summary.max_deviation {
                    summary.max_deviation = d;
                    summary.worst = Some([eta, mu, x, y]);
                }
            }
            Ok(d) => {
                summary.failures += 1;
                let _ = writeln!(err, "non-finite deviation {d} at eta={eta} mu={mu} x={x} y={y}");
            }
            Err(e) => {
                summary.failures += 1;
                let _ = writeln!(err, "error at eta={eta} mu={mu} x={x} y={y}: {e}");
            }
        }
    }
    summary
}

pub(super) fn selftest(a: &SelftestArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let g = &a.grid;
    let cfg = match SweepConfig::new([g.eta, g.mu, g.x, g.y], g.steps, vec![Method::Series], 1e-15) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let s = run_selftest(&cfg, err);
    let pass = s.failures == 0 && s.worst.is_some() && s.max_deviation <= a.threshold;
    let at = s.worst.unwrap_or([f64::NAN; 4]);
    let mut t = Table::new(&[
        "points", "failures", "max_deviation", "eta", "mu", "x", "y", "threshold", "status",
    ]);
    t.push(vec![
        Cell::Int(s.points),
        Cell::Int(s.failures),
        Cell::Num(s.max_deviation),
        Cell::Num(at[0]),
        Cell::Num(at[1]),
        Cell::Num(at[2]),
        Cell::Num(at[3]),
        Cell::Num(a.threshold),
        Cell::Text(if pass { "PASS" } else { "FAIL" }.into()),
    ]);
    let _ = out.write_all(t.render(a.format, true).as_bytes());
    if pass {
        EXIT_OK
    } else {
        EXIT_SELFTEST
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_split() {
        assert_eq!(mu_ladder(10.0), (1.0, 10));
        assert_eq!(mu_ladder(1.0), (1.0, 1));
        assert_eq!(mu_ladder(0.5), (0.5, 1));
        assert_eq!(mu_ladder(3.25), (0.25, 4));
    }

    #[test]
    fn methods_agree_at_one_point() {
        let q = MomentQuery::new(2.0, 5.0, 2.0, 3.0).unwrap();
        let s = evaluate(q, Method::Series, 1e-15, 10_000).unwrap().value;
        for m in [Method::Ladder, Method::Homogeneous, Method::Quadrature] {
            let v = evaluate(q, m, 1e-15, 10_000).unwrap().value;
            assert!(((v - s) / s).abs() < 1e-10, "{m:?}");
        }
    }

    #[test]
    fn recurrences_refuse_zero_x() {
        let q = MomentQuery::new(2.0, 5.0, 0.0, 3.0).unwrap();
        assert!(matches!(evaluate(q, Method::Ladder, 1e-15, 100), Err(Error::Domain(_))));
        assert!(matches!(evaluate(q, Method::Homogeneous, 1e-15, 100), Err(Error::Domain(_))));
    }
}
