//! Central finite differences for verifying analytic derivatives.
//!
//! These are deliberately independent of every analytic derivative path in
//! the crate: they only ever call the black-box function they are given.
//! The test suites use them as the arbiter of record for gradient, Hessian
//! and Jacobian implementations.

use nalgebra::{DMatrix, DVector};

/// Central-difference gradient of a scalar function, step `h` per coordinate.
pub fn gradient<F>(f: F, at: &DVector<f64>, h: f64) -> DVector<f64>
where
    F: Fn(&DVector<f64>) -> f64,
{
    let mut g = DVector::zeros(at.len());
    let mut p = at.clone();
    for i in 0..at.len() {
        let x0 = at[i];
        p[i] = x0 + h;
        let fp = f(&p);
        p[i] = x0 - h;
        let fm = f(&p);
        p[i] = x0;
        g[i] = (fp - fm) / (2.0 * h);
    }
    g
}

/// Central-difference Jacobian of a vector-valued function.
///
/// Column `j` holds `(f(x + h e_j) - f(x - h e_j)) / 2h`.
pub fn jacobian<F>(f: F, at: &DVector<f64>, h: f64) -> DMatrix<f64>
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
{
    let rows = f(at).len();
    let mut jac = DMatrix::zeros(rows, at.len());
    let mut p = at.clone();
    for j in 0..at.len() {
        let x0 = at[j];
        p[j] = x0 + h;
        let fp = f(&p);
        p[j] = x0 - h;
        let fm = f(&p);
        p[j] = x0;
        for i in 0..rows {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}
