//! Eigenphase extraction for small unitary matrices, shortest covering arcs
//! on the unit circle, and the single-shot Helstrom success probability
//! p* = ½(1 + sin(min(Δ, π)/2)) with Δ the spectral spread of U₀†U₁.
//!
//! 2×2 eigenvalues come from the trace/determinant closed form; larger
//! matrices go through a complex Hessenberg reduction followed by a
//! Wilkinson-shifted QR iteration. The solver is cross-checked by unit-modulus
//! and characteristic-polynomial residuals on every call.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::{unitarity_error, CMatrix};

/// Inputs must satisfy unitarity_error ≤ this to count as unitary.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Every computed eigenvalue must have |λ| within this of 1.
pub const UNIT_MODULUS_TOL: f64 = 1e-10;
/// |det(U − λI)| bound accepted for each computed eigenvalue.
pub const CHARPOLY_RESIDUAL_TOL: f64 = 1e-8;

const MAX_QR_ITERS_PER_EIGENVALUE: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not unitary: unitarity error {error:.3e} exceeds {UNITARITY_TOL:.0e}")]
    NotUnitary { error: f64 },
    #[error("eigenvalue iteration failed to converge (numerics bug, not a user error)")]
    NoConvergence,
    #[error("phase list is empty")]
    EmptySpectrum,
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Sorted eigenphases in [0, 2π) together with their shortest covering arc.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseList {
    phases: Vec<f64>,
    arc: f64,
}

impl PhaseList {
    /// Normalizes into [0, 2π), sorts, and computes the covering arc as
    /// 2π minus the largest circular gap between consecutive phases.
    pub fn from_phases(phases: Vec<f64>) -> Result<Self, SpectralError> {
        if phases.is_empty() {
            return Err(SpectralError::EmptySpectrum);
        }
        let mut phases: Vec<f64> = phases.into_iter().map(normalize_phase).collect();
        phases.sort_by(|a, b| a.partial_cmp(b).expect("phases are finite"));
        let mut max_gap = phases[0] + TAU - phases[phases.len() - 1];
        for w in phases.windows(2) {
            max_gap = max_gap.max(w[1] - w[0]);
        }
        let arc = (TAU - max_gap).max(0.0);
        Ok(Self { phases, arc })
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn arc(&self) -> f64 {
        self.arc
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }
}

fn normalize_phase(theta: f64) -> f64 {
    let p = theta.rem_euclid(TAU);
    if p >= TAU {
        0.0
    } else {
        p
    }
}

/// Shortest closed arc containing all the given phases.
pub fn shortest_arc(phases: &[f64]) -> Result<f64, SpectralError> {
    PhaseList::from_phases(phases.to_vec()).map(|pl| pl.arc())
}

/// Eigenphases of a unitary matrix, in [0, 2π).
pub fn eigenphases(m: &CMatrix) -> Result<PhaseList, SpectralError> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigenphases needs a square matrix");
    let err = unitarity_error(m);
    if err > UNITARITY_TOL {
        return Err(SpectralError::NotUnitary { error: err });
    }
    let eigenvalues = match n {
        0 => return Err(SpectralError::EmptySpectrum),
        1 => vec![m[(0, 0)]],
        2 => eig2(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]).to_vec(),
        _ => qr_eigenvalues(m)?,
    };
    for &lambda in &eigenvalues {
        if (lambda.norm() - 1.0).abs() > UNIT_MODULUS_TOL {
            return Err(SpectralError::NoConvergence);
        }
        let shifted = m - CMatrix::identity(n, n).map(|z| z * lambda);
        if shifted.determinant().norm() > CHARPOLY_RESIDUAL_TOL {
            return Err(SpectralError::NoConvergence);
        }
    }
    PhaseList::from_phases(eigenvalues.iter().map(|z| z.arg()).collect())
}

/// Optimal single-shot equal-prior success probability for distinguishing
/// two unitaries of the same dimension. Always in [½, 1]; the arc is clamped
/// at π inside the formula while the raw arc stays available through
/// [`eigenphases`] + [`PhaseList::arc`].
pub fn helstrom(u0: &CMatrix, u1: &CMatrix) -> Result<f64, SpectralError> {
    if u0.nrows() != u1.nrows() || u0.ncols() != u1.ncols() {
        return Err(SpectralError::DimensionMismatch {
            left: u0.nrows(),
            right: u1.nrows(),
        });
    }
    for u in [u0, u1] {
        let err = unitarity_error(u);
        if err > UNITARITY_TOL {
            return Err(SpectralError::NotUnitary { error: err });
        }
    }
    let v = u0.adjoint() * u1;
    let delta = eigenphases(&v)?.arc();
    Ok(0.5 * (1.0 + (delta.min(PI) / 2.0).sin()))
}

/// Eigenvalues of a 2×2 from trace and determinant, with the larger root
/// taken first and the second recovered from the determinant when possible.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> [Complex64; 2] {
    let mean = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (mean * mean - det).sqrt();
    let l1 = if (mean + disc).norm() >= (mean - disc).norm() {
        mean + disc
    } else {
        mean - disc
    };
    let l2 = if l1.norm() > 0.0 { det / l1 } else { mean - disc };
    [l1, l2]
}

/// Complex Givens rotation [[c, s], [−s̄, c]] (c real) sending (f, g) to (r, 0).
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let fn_ = f.norm();
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let r = fn_.hypot(gn);
    (fn_ / r, f * g.conj() / (fn_ * r))
}

fn rotate_rows(h: &mut CMatrix, p: usize, q: usize, c: f64, s: Complex64, col_from: usize) {
    let n = h.ncols();
    for j in col_from..n {
        let a = h[(p, j)];
        let b = h[(q, j)];
        h[(p, j)] = a * c + s * b;
        h[(q, j)] = -s.conj() * a + b * c;
    }
}

fn rotate_cols(h: &mut CMatrix, p: usize, q: usize, c: f64, s: Complex64, row_to: usize) {
    for i in 0..=row_to {
        let a = h[(i, p)];
        let b = h[(i, q)];
        h[(i, p)] = a * c + s.conj() * b;
        h[(i, q)] = -s * a + b * c;
    }
}

/// In-place reduction to upper Hessenberg form by Givens similarities.
fn hessenberg(h: &mut CMatrix) {
    let n = h.nrows();
    for j in 0..n.saturating_sub(2) {
        for i in j + 2..n {
            let (c, s) = givens(h[(j + 1, j)], h[(i, j)]);
            if s.norm() == 0.0 && c == 1.0 {
                continue;
            }
            rotate_rows(h, j + 1, i, c, s, j);
            rotate_cols(h, j + 1, i, c, s, n - 1);
        }
    }
}

/// Wilkinson shift: the eigenvalue of the trailing 2×2 closest to the corner.
fn wilkinson_shift(h: &CMatrix, hi: usize) -> Complex64 {
    let [l1, l2] = eig2(
        h[(hi - 1, hi - 1)],
        h[(hi - 1, hi)],
        h[(hi, hi - 1)],
        h[(hi, hi)],
    );
    let corner = h[(hi, hi)];
    if (l1 - corner).norm() <= (l2 - corner).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit single-shift QR sweep on the active window [lo, hi].
fn qr_sweep(h: &mut CMatrix, lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        h[(k, k)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        rotate_rows(h, k, k + 1, c, s, k);
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        rotate_cols(h, k, k + 1, c, s, (k + 1).min(hi));
    }
    for k in lo..=hi {
        h[(k, k)] += shift;
    }
}

fn subdiagonal_negligible(h: &CMatrix, k: usize) -> bool {
    let scale = (h[(k - 1, k - 1)].norm() + h[(k, k)].norm()).max(1e-30);
    h[(k, k - 1)].norm() <= f64::EPSILON * scale
}

/// All eigenvalues of a dense complex matrix via shifted QR with deflation.
fn qr_eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>, SpectralError> {
    let n = m.nrows();
    let mut h = m.clone();
    hessenberg(&mut h);
    let mut eigenvalues = vec![Complex64::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut stalled = 0usize;
    loop {
        // deflate converged trailing eigenvalues
        while hi > 0 && subdiagonal_negligible(&h, hi) {
            h[(hi, hi - 1)] = Complex64::new(0.0, 0.0);
            eigenvalues[hi] = h[(hi, hi)];
            hi -= 1;
            stalled = 0;
        }
        if hi == 0 {
            eigenvalues[0] = h[(0, 0)];
            return Ok(eigenvalues);
        }
        // locate the start of the active irreducible block
        let mut lo = hi;
        while lo > 0 && !subdiagonal_negligible(&h, lo) {
            lo -= 1;
        }
        if lo > 0 {
            h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
        }
        if lo + 1 == hi {
            let [l1, l2] = eig2(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            eigenvalues[hi] = l1;
            eigenvalues[lo] = l2;
            if lo == 0 {
                return Ok(eigenvalues);
            }
            hi = lo - 1;
            stalled = 0;
            continue;
        }
        if stalled >= MAX_QR_ITERS_PER_EIGENVALUE {
            return Err(SpectralError::NoConvergence);
        }
        // occasional exceptional shift to break symmetric stalls
        let shift = if stalled > 0 && stalled % 12 == 0 {
            h[(hi, hi)] + h[(hi, hi - 1)] * 0.75
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_sweep(&mut h, lo, hi, shift);
        stalled += 1;
    }
}
