use std::str::FromStr;

use super::Method;

/// One grid axis as typed on the command line: `v`, `lo:hi` or `lo:hi:steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub lo: f64,
    pub hi: f64,
    pub steps: Option<usize>,
}

impl FromStr for AxisSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad axis value {p:?}: {e}"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Ok(AxisSpec { lo: v, hi: v, steps: Some(1) })
            }
            [lo, hi] => Ok(AxisSpec { lo: num(lo)?, hi: num(hi)?, steps: None }),
            [lo, hi, n] => {
                let steps = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| format!("bad step count {n:?}: {e}"))?;
                Ok(AxisSpec { lo: num(lo)?, hi: num(hi)?, steps: Some(steps) })
            }
            _ => Err(format!("axis {s:?} is not v, lo:hi or lo:hi:steps")),
        }
    }
}

/// `(lo, hi, steps)` with `lo <= hi` and `steps >= 1`.
pub type Range = (f64, f64, usize);

/// A rectangular grid of `(η, μ, x, y)` points plus the methods to run.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub eta_range: Range,
    pub mu_range: Range,
    pub x_range: Range,
    pub y_range: Range,
    pub methods: Vec<Method>,
    pub tol: f64,
}

impl SweepConfig {
    pub fn new(
        axes: [AxisSpec; 4],
        default_steps: usize,
        methods: Vec<Method>,
        tol: f64,
    ) -> Result<Self, String> {
        if methods.is_empty() {
            return Err("at least one method must be selected".into());
        }
        let names = ["eta", "mu", "x", "y"];
        let mut ranges = [(0.0, 0.0, 0); 4];
        for (i, axis) in axes.iter().enumerate() {
            let steps = axis.steps.unwrap_or(if axis.lo == axis.hi { 1 } else { default_steps });
            if !(axis.lo <= axis.hi) {
                return Err(format!("{} range has lo > hi", names[i]));
            }
            if steps == 0 {
                return Err(format!("{} range needs at least one step", names[i]));
            }
            ranges[i] = (axis.lo, axis.hi, steps);
        }
        Ok(SweepConfig {
            eta_range: ranges[0],
            mu_range: ranges[1],
            x_range: ranges[2],
            y_range: ranges[3],
            methods,
            tol,
        })
    }

    /// Grid points in fixed order, η varying slowest.
    pub fn points(&self) -> Vec<[f64; 4]> {
        let (etas, mus, xs, ys) = (
            axis_values(self.eta_range),
            axis_values(self.mu_range),
            axis_values(self.x_range),
            axis_values(self.y_range),
        );
        let mut out = Vec::with_capacity(etas.len() * mus.len() * xs.len() * ys.len());
        for &eta in &etas {
            for &mu in &mus {
                for &x in &xs {
                    for &y in &ys {
                        out.push([eta, mu, x, y]);
                    }
                }
            }
        }
        out
    }
}

pub fn axis_values((lo, hi, steps): Range) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    let span = hi - lo;
    (0..steps)
        .map(|k| {
            if k == steps - 1 {
                hi
            } else {
                lo + span * k as f64 / (steps - 1) as f64
            }
        })
        .collect()
}
