//! Frequency-tunable non-Abelian control of operation order from the braid
//! group B₃.
//!
//! The crate builds the whole pipeline end to end:
//!
//! - [`braid`]: words in B₃ with parsing and free reduction;
//! - [`laurent`]: exact ℤ[s, s⁻¹] arithmetic, the reduced and Squier pictures
//!   of the Burau representation, and the representation identities checked
//!   as exact polynomial matrix equalities;
//! - [`numerics`]: specialization s = e^{iω/2}, the Hermitian form J(ω) with
//!   its positivity window |ω| < 2π/3, and Cholesky unitarization
//!   U(ω) = R(ω) β(w) R(ω)⁻¹;
//! - [`spectral`]: eigenphases, shortest covering arcs, and the Helstrom
//!   single-shot success probability ½(1 + sin(min(Δ, π)/2));
//! - [`device`]: the control mixer M(ω), the order switch S(θ), the composed
//!   test device T(ω), and the witness gaps against the fixed-order ceiling;
//! - [`sweep`]: ω-grid sweeps with CSV output, extremum reports, and a small
//!   SVG chart;
//! - [`config`]: the flat key = value run-configuration format;
//! - [`verify`]: the exact + numeric identity check suite behind the CLI.

pub mod braid;
pub mod config;
pub mod device;
pub mod laurent;
pub mod numerics;
pub mod spectral;
pub mod sweep;
pub mod verify;

pub use braid::{BraidGenerator, BraidParseError, BraidWord};
pub use device::{
    gap_switch, gap_test, mixer, p_fixed, p_switch, p_test, rotation, switch_matrix, test_device,
    Axis, DeviceConfig, DeviceError, GridSpec, PhaseMap, Placement, TargetPair,
};
pub use laurent::{
    check_braid_relation, check_j_unitarity, check_similarity, evaluate_word, squier_form,
    LaurentMatrix, LaurentPoly, Variant,
};
pub use numerics::{
    cholesky_2x2, specialize, specialize_matrix, squier_form_at, unitarity_error, unitarize,
    CMatrix, NumericsError, SpecializedForm,
};
pub use spectral::{eigenphases, helstrom, shortest_arc, PhaseList, SpectralError};
