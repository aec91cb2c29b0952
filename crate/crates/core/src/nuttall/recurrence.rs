//! Recurrences in μ for the moments.
//!
//! The inhomogeneous form
//!
//! ```text
//! Q_{η,μ+1} = Q_{η,μ} + η Q_{η-1,μ+1} + (y/x)^{μ/2} y^η e^{-(√x-√y)²} e^{-z} I_μ(z)
//! ```
//!
//! has only positive terms on the right and is run forward. Eliminating the
//! forcing term between two consecutive steps gives the homogeneous
//! three-term form whose coefficient is a Bessel ratio,
//!
//! ```text
//! Q_{η,μ+2} = (1+c) Q_{η,μ+1} - c Q_{η,μ} + η Q_{η-1,μ+2} - η c Q_{η-1,μ+1},
//! c = √(y/x) I_{μ+1}(z) / I_μ(z),   z = 2√(xy).
//! ```

use super::series::{marcum_q, nuttall_q};
use super::inhomogeneous_term;
use crate::bessel::bessel_ratio;
use crate::error::{domain, Result};

/// How the seed row and seed columns of a [`RecurrenceTable`] were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedMethod {
    /// Row 0 from the Marcum series, column 0 of each row from the series,
    /// the rest from the inhomogeneous recurrence.
    InhomogeneousLadder,
    /// Row 0 from the Marcum series, columns 0 and 1 of each row from the
    /// series, the rest from the homogeneous recurrence.
    HomogeneousLadder,
}

/// Grid of `Q_{e, mu_start + m}(x, y)` for `e ∈ [0, eta_max]`, `m ∈ [0, n_cols)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    pub eta_max: usize,
    pub mu_start: f64,
    pub n_cols: usize,
    pub x: f64,
    pub y: f64,
    /// Row-major, `values[e][m]`.
    pub values: Vec<Vec<f64>>,
    pub seed_method: SeedMethod,
}

impl RecurrenceTable {
    pub fn get(&self, eta: usize, col: usize) -> f64 {
        self.values[eta][col]
    }

    pub fn row(&self, eta: usize) -> &[f64] {
        &self.values[eta]
    }

    pub fn mu_at(&self, col: usize) -> f64 {
        self.mu_start + col as f64
    }

    /// The entry with the largest `e` and `m`.
    pub fn last(&self) -> f64 {
        self.values[self.eta_max][self.n_cols - 1]
    }
}

fn check_grid(mu_start: f64, n_cols: usize, x: f64, y: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return domain(format!(
            "the mu-recurrence divides by x^(mu/2) and needs x > 0 (got {x}); use the series"
        ));
    }
    if !(y >= 0.0 && y.is_finite()) {
        return domain(format!("y must be >= 0, got {y}"));
    }
    if !(mu_start > 0.0 && mu_start.is_finite()) {
        return domain(format!("mu_start must be > 0, got {mu_start}"));
    }
    if n_cols == 0 {
        return domain("a recurrence table needs at least one column");
    }
    Ok(())
}

fn marcum_row(mu_start: f64, n_cols: usize, x: f64, y: f64) -> Result<Vec<f64>> {
    (0..n_cols)
        .map(|m| marcum_q(mu_start + m as f64, x, y))
        .collect()
}

/// Fills the table by the inhomogeneous recurrence in scaled-Bessel form.
pub fn nuttall_q_ladder(
    eta_max: usize,
    mu_start: f64,
    n_cols: usize,
    x: f64,
    y: f64,
) -> Result<RecurrenceTable> {
    check_grid(mu_start, n_cols, x, y)?;
    let mut values = Vec::with_capacity(eta_max + 1);
    values.push(marcum_row(mu_start, n_cols, x, y)?);
    for e in 1..=eta_max {
        let ef = e as f64;
        let mut row = Vec::with_capacity(n_cols);
        row.push(nuttall_q(ef, mu_start, x, y)?);
        for m in 0..n_cols - 1 {
            let mu = mu_start + m as f64;
            let below = values[e - 1][m + 1];
            let forcing = inhomogeneous_term(ef, mu, x, y).to_f64();
            row.push(row[m] + ef * below + forcing);
        }
        values.push(row);
    }
    Ok(RecurrenceTable {
        eta_max,
        mu_start,
        n_cols,
        x,
        y,
        values,
        seed_method: SeedMethod::InhomogeneousLadder,
    })
}

/// Runs the homogeneous three-term recurrence along one η row.
///
/// `prev_row[m]` must hold `Q_{η-1, mu_start+m}` and the seeds are
/// `Q_{η, mu_start}` and `Q_{η, mu_start+1}`. The coefficients come from the
/// Bessel-ratio continued fraction, never from Bessel values.
#[allow(clippy::too_many_arguments)]
pub fn nuttall_q_homogeneous(
    eta: usize,
    prev_row: &[f64],
    seed0: f64,
    seed1: f64,
    x: f64,
    y: f64,
    mu_start: f64,
    n_cols: usize,
) -> Result<Vec<f64>> {
    check_grid(mu_start, n_cols, x, y)?;
    if eta == 0 {
        return domain("the homogeneous recurrence needs eta >= 1");
    }
    if prev_row.len() < n_cols {
        return domain(format!(
            "previous row has {} entries, {n_cols} needed",
            prev_row.len()
        ));
    }
    let ef = eta as f64;
    let z = 2.0 * (x * y).sqrt();
    let scale = (y / x).sqrt();
    let mut row = Vec::with_capacity(n_cols);
    row.push(seed0);
    if n_cols > 1 {
        row.push(seed1);
    }
    for m in 0..n_cols.saturating_sub(2) {
        let mu = mu_start + m as f64;
        let c = scale * bessel_ratio(mu, z);
        let next = (1.0 + c) * row[m + 1] - c * row[m] + ef * prev_row[m + 2]
            - ef * c * prev_row[m + 1];
        row.push(next);
    }
    Ok(row)
}

/// Builds a full table row by row with [`nuttall_q_homogeneous`].
pub fn homogeneous_table(
    eta_max: usize,
    mu_start: f64,
    n_cols: usize,
    x: f64,
    y: f64,
) -> Result<RecurrenceTable> {
    check_grid(mu_start, n_cols, x, y)?;
    let mut values = Vec::with_capacity(eta_max + 1);
    values.push(marcum_row(mu_start, n_cols, x, y)?);
    for e in 1..=eta_max {
        let ef = e as f64;
        let seed0 = nuttall_q(ef, mu_start, x, y)?;
        let seed1 = if n_cols > 1 {
            nuttall_q(ef, mu_start + 1.0, x, y)?
        } else {
            0.0
        };
        let row = nuttall_q_homogeneous(e, &values[e - 1], seed0, seed1, x, y, mu_start, n_cols)?;
        values.push(row);
    }
    Ok(RecurrenceTable {
        eta_max,
        mu_start,
        n_cols,
        x,
        y,
        values,
        seed_method: SeedMethod::HomogeneousLadder,
    })
}
