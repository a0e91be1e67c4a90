//! Complex specialization s = e^{iω/2}, the Hermitian form J(ω) with its
//! positivity window, and the canonical Cholesky unitarization that turns
//! J-unitary word images into Euclidean unitaries.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::laurent::{evaluate_word, LaurentMatrix, LaurentPoly, Variant};

/// Dense complex matrix used throughout the numeric layer (2×2 and 4×4).
pub type CMatrix = DMatrix<Complex64>;

/// Eigenvalues of J(ω) within this margin of zero are treated as the window
/// boundary, i.e. not positive-definite. Keeps the float boundary ω = 2π/3
/// (where the exact eigenvalue is 0 but cos rounds to 0.5 + ε) out of the
/// window.
pub const POSITIVITY_MARGIN: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("J(omega) is not positive-definite at omega = {omega}; unitarization requires |omega| < 2*pi/3")]
    NotPositiveDefinite { omega: f64 },
}

/// Substitutes s = e^{iω/2} exponent-wise.
pub fn specialize(poly: &LaurentPoly, omega: f64) -> Complex64 {
    poly.terms()
        .map(|(exp, coeff)| Complex64::cis(exp as f64 * omega / 2.0) * coeff as f64)
        .sum()
}

/// Entry-wise specialization of a symbolic 2×2 matrix.
pub fn specialize_matrix(m: &LaurentMatrix, omega: f64) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| specialize(m.entry(i, j), omega))
}

/// J(ω) together with its eigenvalues λ± = 2cos(ω/2) ∓ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecializedForm {
    pub omega: f64,
    /// Row-major entries of the real symmetric matrix J(ω).
    pub entries: [[f64; 2]; 2],
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl SpecializedForm {
    /// Positive-definite iff both eigenvalues clear the boundary margin.
    /// Equivalent to |ω| < 2π/3 on the principal branch.
    pub fn is_positive_definite(&self) -> bool {
        self.lambda_plus > POSITIVITY_MARGIN && self.lambda_minus > POSITIVITY_MARGIN
    }

    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| Complex64::new(self.entries[i][j], 0.0))
    }
}

/// J(ω) = (2cos(ω/2) −1; −1 2cos(ω/2)) with its eigenvalue pair.
pub fn squier_form_at(omega: f64) -> SpecializedForm {
    let a = 2.0 * (omega / 2.0).cos();
    SpecializedForm {
        omega,
        entries: [[a, -1.0], [-1.0, a]],
        lambda_plus: a - 1.0,
        lambda_minus: a + 1.0,
    }
}

/// Canonical Cholesky factor of a positive-definite J(ω): the unique
/// upper-triangular R with strictly positive diagonal and J = R†R. The
/// positive-diagonal choice is the continuous (indeed analytic) branch on
/// each positivity interval.
pub fn cholesky_2x2(form: &SpecializedForm) -> Result<CMatrix, NumericsError> {
    if !form.is_positive_definite() {
        return Err(NumericsError::NotPositiveDefinite { omega: form.omega });
    }
    let [[a, b], [_, d]] = form.entries;
    let r11 = a.sqrt();
    let r12 = b / r11;
    let r22 = (d - r12 * r12).sqrt();
    Ok(CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(r11, 0.0),
            Complex64::new(r12, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(r22, 0.0),
        ],
    ))
}

fn upper_triangular_inverse_2x2(r: &CMatrix) -> CMatrix {
    let r11 = r[(0, 0)];
    let r12 = r[(0, 1)];
    let r22 = r[(1, 1)];
    CMatrix::from_row_slice(
        2,
        2,
        &[
            1.0 / r11,
            -r12 / (r11 * r22),
            Complex64::new(0.0, 0.0),
            1.0 / r22,
        ],
    )
}

/// U(ω) = R(ω) · β(w)|_{s=e^{iω/2}} · R(ω)⁻¹ ∈ U(2). The word image is
/// evaluated symbolically first, so the only floating-point steps are the
/// specialization and the conjugation.
pub fn unitarize(word: &BraidWord, omega: f64) -> Result<CMatrix, NumericsError> {
    let r = cholesky_2x2(&squier_form_at(omega))?;
    let beta = specialize_matrix(&evaluate_word(word, Variant::Squier), omega);
    Ok(&(&r * &beta) * &upper_triangular_inverse_2x2(&r))
}

/// Max-norm of M†M − I; zero for an exactly unitary matrix.
pub fn unitarity_error(m: &CMatrix) -> f64 {
    let n = m.ncols();
    let gram = m.adjoint() * m;
    let identity = CMatrix::identity(n, n);
    (gram - identity)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Max-norm residual of βᵢ(ω)† J(ω) βᵢ(ω) − J(ω) for generator i ∈ {1, 2}.
pub fn j_unitarity_residual(index: u8, omega: f64) -> f64 {
    let beta = specialize_matrix(&crate::laurent::positive_generator(index, Variant::Squier), omega);
    let j = squier_form_at(omega).matrix();
    (beta.adjoint() * &j * &beta - &j)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}
