//! Frequency sweeps: evaluate network-matrix norms (and optionally full
//! matrices) over a frequency grid and emit CSV.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_complex::Complex64;
use telegrapher::line::{BoundParams, KappaGrid, LineConstants};
use telegrapher::matfun::spectral_norm;
use telegrapher::netparams::{abcd_direct, admittance, chain_matrix, impedance};
use telegrapher::ComplexMatrix;

use crate::{CliError, Quantity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub f_start: f64,
    pub f_stop: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub sigma: f64,
    pub d: f64,
    pub quantities: Vec<Quantity>,
    pub full_matrices: bool,
}

impl SweepSpec {
    fn needs_half_plane(&self) -> bool {
        self.quantities
            .iter()
            .any(|q| matches!(q, Quantity::Admittance | Quantity::Impedance))
    }

    fn needs_bounds(&self) -> bool {
        self.quantities.contains(&Quantity::Bounds)
    }

    pub fn validate(&self, line: &LineConstants) -> Result<(), CliError> {
        if self.points < 2 {
            return Err(CliError::Parse("a sweep needs at least 2 points".into()));
        }
        let ordered = matches!(
            self.f_start.partial_cmp(&self.f_stop),
            Some(std::cmp::Ordering::Less)
        );
        if !ordered {
            return Err(CliError::Parse(format!(
                "f_start ({}) must be below f_stop ({})",
                self.f_start, self.f_stop
            )));
        }
        if self.spacing == Spacing::Log && self.f_start <= 0.0 {
            return Err(CliError::Parse(
                "log spacing requires a strictly positive f_start".into(),
            ));
        }
        if self.needs_half_plane() {
            if self.d <= 0.0 {
                return Err(CliError::Domain(
                    "admittance/impedance sweeps need d > 0: a zero-length line is a short circuit"
                        .into(),
                ));
            }
            let alpha = line.accretivity_thresholds().alpha();
            if self.sigma <= alpha {
                return Err(CliError::Domain(format!(
                    "admittance/impedance sweeps need sigma > alpha = {alpha}, got sigma = {}",
                    self.sigma
                )));
            }
        } else if self.d < 0.0 {
            return Err(CliError::Parse("d must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn frequency(&self, index: usize) -> f64 {
        let t = index as f64 / (self.points - 1) as f64;
        match self.spacing {
            Spacing::Linear => self.f_start + (self.f_stop - self.f_start) * t,
            Spacing::Log => self.f_start * (self.f_stop / self.f_start).powf(t),
        }
    }

    /// Quantities in canonical column order, bounds excluded.
    fn matrix_quantities(&self) -> Vec<Quantity> {
        [
            Quantity::Chain,
            Quantity::Abcd,
            Quantity::Admittance,
            Quantity::Impedance,
        ]
        .into_iter()
        .filter(|q| self.quantities.contains(q))
        .collect()
    }
}

struct Row {
    f: f64,
    norms: Vec<f64>,
    envelope: Option<f64>,
    entries: Vec<Vec<(f64, f64)>>,
}

fn evaluate_matrix(
    line: &LineConstants,
    quantity: Quantity,
    s: Complex64,
    d: f64,
) -> Result<ComplexMatrix, CliError> {
    let result = match quantity {
        Quantity::Chain => chain_matrix(line, s, d),
        Quantity::Abcd => abcd_direct(line, s, d),
        Quantity::Admittance => admittance(line, s, d),
        Quantity::Impedance => impedance(line, s, d),
        Quantity::Bounds => unreachable!("bounds has no matrix"),
    };
    result.map(|p| p.value).map_err(|e| CliError::Domain(e.to_string()))
}

fn evaluate_row(
    line: &LineConstants,
    spec: &SweepSpec,
    params: Option<&BoundParams>,
    index: usize,
) -> Result<Row, CliError> {
    let f = spec.frequency(index);
    let s = Complex64::new(spec.sigma, 2.0 * std::f64::consts::PI * f);
    let mut norms = Vec::new();
    let mut entries = Vec::new();
    for quantity in spec.matrix_quantities() {
        let value = evaluate_matrix(line, quantity, s, spec.d)?;
        let norm = spectral_norm(&value).map_err(|e| CliError::Domain(e.to_string()))?;
        if !norm.is_finite() {
            return Err(CliError::Domain(format!(
                "norm of {quantity:?} overflowed at f = {f} Hz"
            )));
        }
        norms.push(norm);
        if spec.full_matrices {
            entries.push(value.iter().map(|z| (z.re, z.im)).collect());
        }
    }
    let envelope = params.map(|p| {
        p.kappa_upper * ((spec.d.abs() / p.nu_lower) * (spec.sigma.abs() + p.theta)).exp()
    });
    Ok(Row {
        f,
        norms,
        envelope,
        entries,
    })
}

/// Shortest float representation in scientific notation; round-trips exactly.
fn fmt(v: f64) -> String {
    format!("{v:e}")
}

pub fn run_sweep(
    line: &LineConstants,
    spec: &SweepSpec,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    spec.validate(line)?;
    let params = if spec.needs_bounds() {
        Some(
            line.bound_params(&KappaGrid::default())
                .map_err(|e| CliError::Domain(e.to_string()))?,
        )
    } else {
        None
    };

    // Evaluate rows concurrently in contiguous batches claimed off a shared
    // counter; results land in a slot table and are written in f-order.
    let slots: Vec<Mutex<Option<Result<Row, CliError>>>> =
        (0..spec.points).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8)
        .min(spec.points);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= spec.points {
                    break;
                }
                let row = evaluate_row(line, spec, params.as_ref(), index);
                *slots[index].lock().expect("slot lock") = Some(row);
            });
        }
    });

    let matrix_quantities = spec.matrix_quantities();
    let mut header: Vec<String> = vec!["f_hz".into()];
    for q in &matrix_quantities {
        header.push(format!("{}_norm", q.column_name()));
    }
    if spec.needs_bounds() {
        header.push("envelope".into());
    }
    if spec.full_matrices {
        let dim = 2 * line.n();
        for q in &matrix_quantities {
            for i in 0..dim {
                for j in 0..dim {
                    header.push(format!("{}_r{i}c{j}_re", q.column_name()));
                    header.push(format!("{}_r{i}c{j}_im", q.column_name()));
                }
            }
        }
    }
    writeln!(out, "{}", header.join(",")).map_err(|e| CliError::Io(e.to_string()))?;

    for slot in &slots {
        let row = slot
            .lock()
            .expect("slot lock")
            .take()
            .expect("all rows evaluated")?;
        let mut fields: Vec<String> = vec![fmt(row.f)];
        fields.extend(row.norms.iter().map(|v| fmt(*v)));
        if let Some(envelope) = row.envelope {
            fields.push(fmt(envelope));
        }
        for matrix in &row.entries {
            for (re, im) in matrix {
                fields.push(fmt(*re));
                fields.push(fmt(*im));
            }
        }
        writeln!(out, "{}", fields.join(",")).map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(())
}
