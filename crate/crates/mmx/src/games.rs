//! Payoff oracles for two-player zero-sum games on probability simplices.
//!
//! A game is described by a twice-differentiable payment function
//! `f(x, y)` (paid by the x-player to the y-player) that is convex in `x`
//! and concave in `y`. Oracles expose the value, both gradients and the
//! four Hessian blocks analytically; downstream spectral analysis needs
//! exact Hessians at a fixed point, so differencing is only ever used as
//! a cross-check in tests.
//!
//! Oracles evaluate on full-length ambient vectors. Simplex feasibility
//! is the caller's concern; support restriction happens in `spectral`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Default tolerance for simplex feasibility checks.
pub const DEFAULT_SIMPLEX_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum GameError {
    #[error("matrix contains non-finite entries")]
    NonFiniteMatrix,
    #[error("game dimensions must be at least 1 (got {n}x{m})")]
    InvalidDimension { n: usize, m: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vector violates simplex constraints beyond tolerance {tol}: {reason}")]
    SimplexViolation { tol: f64, reason: String },
    #[error("invalid game specification: {0}")]
    InvalidSpec(String),
    #[error("failed to read matrix from {path}: {reason}")]
    MatrixRead { path: String, reason: String },
}

/// A probability vector with tolerance-checked simplex invariants.
///
/// Construction clamps entries in `[-tol, 0)` to zero and renormalizes the
/// sum to exactly 1; anything worse than `tol` is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    probs: DVector<f64>,
    tol: f64,
}

impl SimplexPoint {
    pub fn new(probs: DVector<f64>, tol: f64) -> Result<Self, GameError> {
        if probs.is_empty() {
            return Err(GameError::SimplexViolation {
                tol,
                reason: "empty vector".into(),
            });
        }
        if probs.iter().any(|v| !v.is_finite()) {
            return Err(GameError::SimplexViolation {
                tol,
                reason: "non-finite entry".into(),
            });
        }
        if let Some(v) = probs.iter().find(|&&v| v < -tol) {
            return Err(GameError::SimplexViolation {
                tol,
                reason: format!("negative entry {v}"),
            });
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(GameError::SimplexViolation {
                tol,
                reason: format!("entries sum to {sum}"),
            });
        }
        let mut clamped = probs;
        for v in clamped.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = clamped.iter().sum();
        clamped /= sum;
        Ok(Self {
            probs: clamped,
            tol,
        })
    }

    /// Construct with the default tolerance.
    pub fn from_slice(p: &[f64]) -> Result<Self, GameError> {
        Self::new(DVector::from_row_slice(p), DEFAULT_SIMPLEX_TOL)
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            probs: DVector::from_element(n, 1.0 / n as f64),
            tol: DEFAULT_SIMPLEX_TOL,
        }
    }

    /// Dirichlet(1) sample: normalized unit exponentials drawn by inverse CDF.
    pub fn sample_dirichlet<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut e = DVector::from_fn(n, |_, _| {
            let u: f64 = rng.random();
            -(1.0 - u).ln()
        });
        let sum: f64 = e.iter().sum();
        if sum <= 0.0 {
            return Self::uniform(n);
        }
        e /= sum;
        Self {
            probs: e,
            tol: DEFAULT_SIMPLEX_TOL,
        }
    }

    /// Floor every entry at `min_prob` and renormalize.
    pub fn clamped(&self, min_prob: f64) -> Self {
        let mut p = self.probs.map(|v| v.max(min_prob));
        let sum: f64 = p.iter().sum();
        p /= sum;
        Self {
            probs: p,
            tol: self.tol,
        }
    }

    pub fn probs(&self) -> &DVector<f64> {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.probs.iter().all(|&v| v > 0.0)
    }

    pub fn min_entry(&self) -> f64 {
        self.probs.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Indices with probability above `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.probs[i] > threshold).collect()
    }

    pub(crate) fn new_unchecked(probs: DVector<f64>, tol: f64) -> Self {
        Self { probs, tol }
    }
}

/// The four dense Hessian blocks of the payment function.
#[derive(Debug, Clone)]
pub struct HessianBlocks {
    pub xx: DMatrix<f64>,
    pub xy: DMatrix<f64>,
    pub yx: DMatrix<f64>,
    pub yy: DMatrix<f64>,
}

/// Twice-differentiable convex-concave payoff oracle.
///
/// Implementations must be immutable after construction; evaluation is free
/// of hidden mutable state so oracles can be shared across workers.
pub trait GameOracle: Send + Sync {
    /// Size of the min player's simplex.
    fn dim_x(&self) -> usize;
    /// Size of the max player's simplex.
    fn dim_y(&self) -> usize;
    /// Payment of the x-player to the y-player.
    fn value(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64;
    fn grad_x(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64>;
    fn grad_y(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64>;
    fn hess(&self, x: &DVector<f64>, y: &DVector<f64>) -> HessianBlocks;
    /// The payoff matrix when the game is exactly bilinear, else `None`.
    ///
    /// Exposing this lets equilibrium routines use the closed-form duality
    /// gap and the LP solver instead of inner iterative solves.
    fn bilinear_payoff(&self) -> Option<&DMatrix<f64>> {
        None
    }
}

/// `x' A y + alpha (|x|^2 - |y|^2)`; plain bilinear when `alpha = 0`.
#[derive(Debug, Clone)]
pub struct RegularizedBilinear {
    a: DMatrix<f64>,
    alpha: f64,
}

impl RegularizedBilinear {
    pub fn payoff_matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl GameOracle for RegularizedBilinear {
    fn dim_x(&self) -> usize {
        self.a.nrows()
    }

    fn dim_y(&self) -> usize {
        self.a.ncols()
    }

    fn value(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        let bil = (x.transpose() * &self.a * y)[(0, 0)];
        bil + self.alpha * (x.norm_squared() - y.norm_squared())
    }

    fn grad_x(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        &self.a * y + 2.0 * self.alpha * x
    }

    fn grad_y(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.a.transpose() * x - 2.0 * self.alpha * y
    }

    fn hess(&self, _x: &DVector<f64>, _y: &DVector<f64>) -> HessianBlocks {
        let (n, m) = (self.dim_x(), self.dim_y());
        HessianBlocks {
            xx: DMatrix::identity(n, n) * (2.0 * self.alpha),
            xy: self.a.clone(),
            yx: self.a.transpose(),
            yy: DMatrix::identity(m, m) * (-2.0 * self.alpha),
        }
    }

    fn bilinear_payoff(&self) -> Option<&DMatrix<f64>> {
        (self.alpha == 0.0).then_some(&self.a)
    }
}

/// The 2x2 convex-concave example `f(x, y) = x1^2 - y1^2 + 2 x1 y1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct QuadraticExample;

impl GameOracle for QuadraticExample {
    fn dim_x(&self) -> usize {
        2
    }

    fn dim_y(&self) -> usize {
        2
    }

    fn value(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        x[0] * x[0] - y[0] * y[0] + 2.0 * x[0] * y[0]
    }

    fn grad_x(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        DVector::from_column_slice(&[2.0 * x[0] + 2.0 * y[0], 0.0])
    }

    fn grad_y(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        DVector::from_column_slice(&[2.0 * x[0] - 2.0 * y[0], 0.0])
    }

    fn hess(&self, _x: &DVector<f64>, _y: &DVector<f64>) -> HessianBlocks {
        HessianBlocks {
            xx: DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.0]),
            xy: DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.0]),
            yx: DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.0]),
            yy: DMatrix::from_row_slice(2, 2, &[-2.0, 0.0, 0.0, 0.0]),
        }
    }
}

fn check_finite(a: &DMatrix<f64>) -> Result<(), GameError> {
    if a.iter().any(|v| !v.is_finite()) {
        Err(GameError::NonFiniteMatrix)
    } else {
        Ok(())
    }
}

/// Bilinear game `x' A y`.
pub fn make_bilinear(a: DMatrix<f64>) -> Result<RegularizedBilinear, GameError> {
    check_finite(&a)?;
    if a.nrows() == 0 || a.ncols() == 0 {
        return Err(GameError::InvalidDimension {
            n: a.nrows(),
            m: a.ncols(),
        });
    }
    Ok(RegularizedBilinear { a, alpha: 0.0 })
}

/// Bilinear game with i.i.d. standard normal payoff entries.
///
/// Entries are drawn from a ChaCha8 stream keyed by the 64-bit seed, so the
/// same seed produces the identical matrix on every platform.
pub fn make_random_bilinear(
    n: usize,
    m: usize,
    seed: u64,
) -> Result<RegularizedBilinear, GameError> {
    if n == 0 || m == 0 {
        return Err(GameError::InvalidDimension { n, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Row-major fill order is part of the determinism contract.
    let mut a = DMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            a[(i, j)] = rng.sample(StandardNormal);
        }
    }
    Ok(RegularizedBilinear { a, alpha: 0.0 })
}

/// The paper's quadratic 2x2 example game.
pub fn make_quadratic_example() -> QuadraticExample {
    QuadraticExample
}

/// `x' A y + alpha |x|^2 - alpha |y|^2`, strictly convex-concave for
/// `alpha > 0`.
pub fn make_regularized_bilinear(
    a: DMatrix<f64>,
    alpha: f64,
) -> Result<RegularizedBilinear, GameError> {
    check_finite(&a)?;
    if a.nrows() == 0 || a.ncols() == 0 {
        return Err(GameError::InvalidDimension {
            n: a.nrows(),
            m: a.ncols(),
        });
    }
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(GameError::InvalidParameter(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    Ok(RegularizedBilinear { a, alpha })
}

/// Build a regularized-bilinear game for which `(x_star, y_star)` satisfies
/// the equilibrium equalities exactly, with strict off-support slack.
///
/// The base matrix is shifted by rank-one terms so both gradients are
/// constant across the supports at `(x_star, y_star)`, then off-support rows
/// (columns) are raised (lowered) by `slack`. Used to generate test games
/// with known equilibria of prescribed support.
pub fn plant_equilibrium(
    a0: &DMatrix<f64>,
    alpha: f64,
    x_star: &SimplexPoint,
    y_star: &SimplexPoint,
    slack: f64,
) -> Result<RegularizedBilinear, GameError> {
    let (n, m) = (a0.nrows(), a0.ncols());
    if x_star.len() != n || y_star.len() != m {
        return Err(GameError::InvalidDimension { n, m });
    }
    if slack < 0.0 {
        return Err(GameError::InvalidParameter(format!(
            "slack must be nonnegative, got {slack}"
        )));
    }
    let xs = x_star.probs();
    let ys = y_star.probs();
    let s = -(a0 * ys) - 2.0 * alpha * xs;
    let t = -(a0.transpose() * xs) + 2.0 * alpha * ys;
    let ones_m = DVector::from_element(m, 1.0);
    let ones_n = DVector::from_element(n, 1.0);
    let mut a = a0 + s * ones_m.transpose() + ones_n * t.transpose();
    for i in 0..n {
        if xs[i] == 0.0 {
            for j in 0..m {
                a[(i, j)] += slack;
            }
        }
    }
    for j in 0..m {
        if ys[j] == 0.0 {
            for i in 0..n {
                a[(i, j)] -= slack;
            }
        }
    }
    make_regularized_bilinear(a, alpha)
}

/// Outcome of the numerical convex-concavity screen.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    /// Smallest eigenvalue of `H_xx` seen over the samples.
    pub min_eig_xx: f64,
    /// Largest eigenvalue of `H_yy` seen over the samples.
    pub max_eig_yy: f64,
    pub pass: bool,
    /// First sampled point violating the curvature bounds.
    pub witness: Option<(DVector<f64>, DVector<f64>)>,
}

/// Sample interior points and check `H_xx >= -tol` and `H_yy <= tol` in the
/// eigenvalue sense.
pub fn check_convex_concave(
    game: &dyn GameOracle,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CurvatureReport, GameError> {
    if n_samples == 0 {
        return Err(GameError::InvalidParameter(
            "n_samples must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_eig_xx = f64::INFINITY;
    let mut max_eig_yy = f64::NEG_INFINITY;
    let mut witness = None;
    for _ in 0..n_samples {
        let x = SimplexPoint::sample_dirichlet(game.dim_x(), &mut rng);
        let y = SimplexPoint::sample_dirichlet(game.dim_y(), &mut rng);
        let h = game.hess(x.probs(), y.probs());
        let exx = h.xx.symmetric_eigenvalues();
        let eyy = h.yy.symmetric_eigenvalues();
        let lo = exx.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = eyy.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if (lo < -tol || hi > tol) && witness.is_none() {
            witness = Some((x.probs().clone(), y.probs().clone()));
        }
        min_eig_xx = min_eig_xx.min(lo);
        max_eig_yy = max_eig_yy.max(hi);
    }
    Ok(CurvatureReport {
        min_eig_xx,
        max_eig_yy,
        pass: min_eig_xx >= -tol && max_eig_yy <= tol,
        witness,
    })
}

/// Declarative game description used in config files.
///
/// Flat JSON with a `kind` discriminator:
/// `{"kind": "bilinear"|"random_bilinear"|"quadratic"|"regularized_bilinear",
///   "A": [[...]], "a_csv": "path", "n": int, "m": int, "seed": int,
///   "alpha": real}`. Unknown keys are rejected. A payoff matrix may be given
/// inline under `"A"` or as a header-free row-major CSV file under `"a_csv"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpec {
    pub kind: String,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_csv: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl GameSpec {
    pub fn quadratic() -> Self {
        Self {
            kind: "quadratic".into(),
            a: None,
            a_csv: None,
            n: None,
            m: None,
            seed: None,
            alpha: None,
        }
    }

    pub fn random_bilinear(n: usize, m: usize, seed: u64) -> Self {
        Self {
            n: Some(n),
            m: Some(m),
            seed: Some(seed),
            ..Self::quadratic_kind("random_bilinear")
        }
    }

    pub fn bilinear(a: Vec<Vec<f64>>) -> Self {
        Self {
            a: Some(a),
            ..Self::quadratic_kind("bilinear")
        }
    }

    fn quadratic_kind(kind: &str) -> Self {
        Self {
            kind: kind.into(),
            ..Self::quadratic()
        }
    }

    fn matrix(&self) -> Result<DMatrix<f64>, GameError> {
        match (&self.a, &self.a_csv) {
            (Some(rows), None) => {
                let n = rows.len();
                let m = rows.first().map_or(0, Vec::len);
                if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
                    return Err(GameError::InvalidSpec(
                        "matrix rows must be nonempty and of equal length".into(),
                    ));
                }
                Ok(DMatrix::from_fn(n, m, |i, j| rows[i][j]))
            }
            (None, Some(path)) => read_matrix_csv(path),
            (Some(_), Some(_)) => Err(GameError::InvalidSpec(
                "give the matrix either inline or as a CSV file, not both".into(),
            )),
            (None, None) => Err(GameError::InvalidSpec(format!(
                "game kind {:?} needs a payoff matrix",
                self.kind
            ))),
        }
    }

    pub fn build(&self) -> Result<Arc<dyn GameOracle>, GameError> {
        match self.kind.as_str() {
            "bilinear" => Ok(Arc::new(make_bilinear(self.matrix()?)?)),
            "random_bilinear" => {
                let n = self
                    .n
                    .ok_or_else(|| GameError::InvalidSpec("random_bilinear needs n".into()))?;
                let m = self.m.unwrap_or(n);
                let seed = self
                    .seed
                    .ok_or_else(|| GameError::InvalidSpec("random_bilinear needs seed".into()))?;
                Ok(Arc::new(make_random_bilinear(n, m, seed)?))
            }
            "quadratic" => Ok(Arc::new(make_quadratic_example())),
            "regularized_bilinear" => {
                let alpha = self.alpha.ok_or_else(|| {
                    GameError::InvalidSpec("regularized_bilinear needs alpha".into())
                })?;
                Ok(Arc::new(make_regularized_bilinear(self.matrix()?, alpha)?))
            }
            other => Err(GameError::InvalidSpec(format!("unknown game kind {other:?}"))),
        }
    }
}

/// Read a header-free, row-major CSV matrix.
pub fn read_matrix_csv(path: &str) -> Result<DMatrix<f64>, GameError> {
    let text = std::fs::read_to_string(path).map_err(|e| GameError::MatrixRead {
        path: path.into(),
        reason: e.to_string(),
    })?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Result<Vec<f64>, _> = line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        let row = row.map_err(|e| GameError::MatrixRead {
            path: path.into(),
            reason: format!("line {}: {e}", lineno + 1),
        })?;
        rows.push(row);
    }
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(GameError::MatrixRead {
            path: path.into(),
            reason: "empty or ragged matrix".into(),
        });
    }
    Ok(DMatrix::from_fn(n, m, |i, j| rows[i][j]))
}

/// The 2x2 matching pennies payoff `[[1,-1],[-1,1]]`.
pub fn matching_pennies() -> RegularizedBilinear {
    make_bilinear(DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0])).expect("finite")
}

/// The 3x3 rock-paper-scissors payoff.
pub fn rock_paper_scissors() -> RegularizedBilinear {
    make_bilinear(DMatrix::from_row_slice(
        3,
        3,
        &[0.0, -1.0, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0],
    ))
    .expect("finite")
}
