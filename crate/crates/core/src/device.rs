//! The control mixer, the order switch, the composed test device, and the
//! three discrimination figures of merit with their witness gaps.
//!
//! Tensor ordering is control ⊗ target throughout: the switch is
//! S(θ) = |0⟩⟨0| ⊗ BA + e^{iθ}|1⟩⟨1| ⊗ AB, and mixers act on the control
//! factor, T(ω) = (M_post(ω) ⊗ I) S(θ(ω)) (M_pre(ω) ⊗ I).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::numerics::{unitarity_error, unitarize, CMatrix, NumericsError};
use crate::spectral::helstrom;

/// Unitarity budget for configured target matrices.
pub const TARGET_UNITARITY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeviceError {
    #[error("target {which} is not unitary: error {error:.3e} exceeds {TARGET_UNITARITY_TOL:.0e}")]
    TargetNotUnitary { which: char, error: f64 },
    #[error("target {which} must be 2x2, got {rows}x{cols}")]
    TargetWrongShape { which: char, rows: usize, cols: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(format!("unknown rotation axis `{other}` (expected x, y, or z)")),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
            Axis::Z => write!(f, "z"),
        }
    }
}

/// Standard SU(2) rotation exp(−iθσ_axis/2); determinant 1.
pub fn rotation(axis: Axis, angle: f64) -> CMatrix {
    let half = angle / 2.0;
    let (cos, sin) = (half.cos(), half.sin());
    let z = |re, im| Complex64::new(re, im);
    let entries = match axis {
        Axis::X => [z(cos, 0.0), z(0.0, -sin), z(0.0, -sin), z(cos, 0.0)],
        Axis::Y => [z(cos, 0.0), z(-sin, 0.0), z(sin, 0.0), z(cos, 0.0)],
        Axis::Z => [
            Complex64::cis(-half),
            z(0.0, 0.0),
            z(0.0, 0.0),
            Complex64::cis(half),
        ],
    };
    CMatrix::from_row_slice(2, 2, &entries)
}

/// The two non-commuting target unitaries A and B.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetPair {
    a: CMatrix,
    b: CMatrix,
}

impl TargetPair {
    pub fn new(a: CMatrix, b: CMatrix) -> Result<Self, DeviceError> {
        for (which, m) in [('a', &a), ('b', &b)] {
            if m.nrows() != 2 || m.ncols() != 2 {
                return Err(DeviceError::TargetWrongShape {
                    which,
                    rows: m.nrows(),
                    cols: m.ncols(),
                });
            }
            let error = unitarity_error(m);
            if error > TARGET_UNITARITY_TOL {
                return Err(DeviceError::TargetNotUnitary { which, error });
            }
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn ab(&self) -> CMatrix {
        &self.a * &self.b
    }

    pub fn ba(&self) -> CMatrix {
        &self.b * &self.a
    }

    /// Max-norm of AB − BA; zero iff the pair commutes. Meaningful runs need
    /// a strictly positive value.
    pub fn commutator_norm(&self) -> f64 {
        (self.ab() - self.ba())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// The switch phase as a function of ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseMap {
    /// θ(ω) = ω
    Identity,
    /// θ(ω) = c
    Constant(f64),
    /// θ(ω) = a·ω + b
    Linear { slope: f64, offset: f64 },
}

impl PhaseMap {
    pub fn eval(&self, omega: f64) -> f64 {
        match *self {
            PhaseMap::Identity => omega,
            PhaseMap::Constant(c) => c,
            PhaseMap::Linear { slope, offset } => slope * omega + offset,
        }
    }
}

/// Which mixers are active in the test device.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Both,
    Pre,
    Post,
}

impl Placement {
    pub const ALL: [Placement; 3] = [Placement::Both, Placement::Pre, Placement::Post];
}

impl FromStr for Placement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "both" => Ok(Placement::Both),
            "pre" => Ok(Placement::Pre),
            "post" => Ok(Placement::Post),
            other => Err(format!(
                "unknown placement `{other}` (expected both, pre, or post)"
            )),
        }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Placement::Both => write!(f, "both"),
            Placement::Pre => write!(f, "pre"),
            Placement::Post => write!(f, "post"),
        }
    }
}

/// Uniform ω grid: `points` evenly spaced values from `min` to `max`
/// inclusive, constrained to [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    min: f64,
    max: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self, DeviceError> {
        if !(min.is_finite() && max.is_finite()) {
            return Err(DeviceError::InvalidGrid("grid bounds must be finite".into()));
        }
        if points < 2 {
            return Err(DeviceError::InvalidGrid(format!(
                "point count must be at least 2, got {points}"
            )));
        }
        if min < 0.0 || max < min || max >= std::f64::consts::TAU {
            return Err(DeviceError::InvalidGrid(format!(
                "grid [{min}, {max}] must lie within [0, 2*pi)"
            )));
        }
        Ok(Self { min, max, points })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        let step = self.spacing();
        (0..self.points).map(|k| self.min + k as f64 * step).collect()
    }

    /// The default sweep grid: 2001 points covering [0, 2π) with spacing
    /// 2π/2001 (last point one spacing short of 2π).
    pub fn default_sweep() -> Self {
        let points = 2001usize;
        let max = std::f64::consts::TAU * (points as f64 - 1.0) / points as f64;
        Self {
            min: 0.0,
            max,
            points,
        }
    }
}

/// Everything needed to evaluate the test device across a grid.
#[derive(Debug, Clone)]
pub struct DeviceConfig {
    pub targets: TargetPair,
    pub w_pre: BraidWord,
    pub w_post: BraidWord,
    pub phase_map: PhaseMap,
    pub grid: GridSpec,
}

/// M(ω): the unitarized image of a braid word on the control space.
pub fn mixer(word: &BraidWord, omega: f64) -> Result<CMatrix, NumericsError> {
    unitarize(word, omega)
}

fn block_diag_2x2(upper: &CMatrix, lower: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = upper[(i, j)];
            out[(i + 2, j + 2)] = lower[(i, j)];
        }
    }
    out
}

/// S(θ) = |0⟩⟨0| ⊗ BA + e^{iθ}|1⟩⟨1| ⊗ AB as a 4×4 block-diagonal unitary.
pub fn switch_matrix(targets: &TargetPair, theta: f64) -> CMatrix {
    let phase = Complex64::cis(theta);
    let lower = targets.ab().map(|z| z * phase);
    block_diag_2x2(&targets.ba(), &lower)
}

fn kron_with_identity(control: &CMatrix) -> CMatrix {
    control.kronecker(&CMatrix::identity(2, 2))
}

/// T(ω) = (M_post(ω) ⊗ I) S(θ(ω)) (M_pre(ω) ⊗ I); mixers act on the control
/// factor only. Identity braid words contribute identity mixers exactly.
pub fn test_device(cfg: &DeviceConfig, omega: f64) -> Result<CMatrix, NumericsError> {
    let theta = cfg.phase_map.eval(omega);
    let s = switch_matrix(&cfg.targets, theta);
    let pre = mixer(&cfg.w_pre, omega)?;
    let post = mixer(&cfg.w_post, omega)?;
    Ok(kron_with_identity(&post) * s * kron_with_identity(&pre))
}

fn helstrom_vs_identity(device: &CMatrix) -> f64 {
    let n = device.nrows();
    helstrom(&CMatrix::identity(n, n), device)
        .expect("device matrices are unitary by construction")
}

/// Fixed-order ceiling p*_fixed = max{p*(I, AB), p*(I, BA)}. The two coincide
/// for unitary targets (AB and BA are similar); both are computed and the
/// maximum returned.
pub fn p_fixed(targets: &TargetPair) -> f64 {
    let i2 = CMatrix::identity(2, 2);
    let p_ab = helstrom(&i2, &targets.ab()).expect("targets validated unitary");
    let p_ba = helstrom(&i2, &targets.ba()).expect("targets validated unitary");
    debug_assert!(
        (p_ab - p_ba).abs() <= 1e-10,
        "p*(I,AB) and p*(I,BA) must coincide for unitary targets"
    );
    p_ab.max(p_ba)
}

/// p*(I⊗I, S(θ(ω))) — defined for every ω.
pub fn p_switch(cfg: &DeviceConfig, omega: f64) -> f64 {
    helstrom_vs_identity(&switch_matrix(&cfg.targets, cfg.phase_map.eval(omega)))
}

/// p*(I⊗I, T(ω)) — needs ω inside the positivity window for the mixers.
pub fn p_test(cfg: &DeviceConfig, omega: f64) -> Result<f64, NumericsError> {
    Ok(helstrom_vs_identity(&test_device(cfg, omega)?))
}

pub fn gap_switch(cfg: &DeviceConfig, omega: f64) -> f64 {
    p_switch(cfg, omega) - p_fixed(&cfg.targets)
}

pub fn gap_test(cfg: &DeviceConfig, omega: f64) -> Result<f64, NumericsError> {
    Ok(p_test(cfg, omega)? - p_fixed(&cfg.targets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::POSITIVITY_MARGIN;
    use crate::spectral::eigenphases;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{PI, TAU};

    fn section7_targets() -> TargetPair {
        TargetPair::new(rotation(Axis::X, 1.1), rotation(Axis::Z, 0.9)).unwrap()
    }

    fn section7_config() -> DeviceConfig {
        let w = BraidWord::parse("1 2 1").unwrap();
        DeviceConfig {
            targets: section7_targets(),
            w_pre: w.clone(),
            w_post: w,
            phase_map: PhaseMap::Identity,
            grid: GridSpec::default_sweep(),
        }
    }

    fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let mut gauss = || {
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen_range(0.0..TAU);
            (-2.0 * u1.ln()).sqrt() * u2.cos()
        };
        let z = CMatrix::from_fn(n, n, |_, _| Complex64::new(gauss(), gauss()));
        z.qr().q()
    }

    #[test]
    fn rotation_z_is_the_phase_diagonal() {
        let phi = 0.73;
        let rz = rotation(Axis::Z, phi);
        assert!((rz[(0, 0)] - Complex64::cis(-phi / 2.0)).norm() <= 1e-15);
        assert!((rz[(1, 1)] - Complex64::cis(phi / 2.0)).norm() <= 1e-15);
        assert!(rz[(0, 1)].norm() == 0.0 && rz[(1, 0)].norm() == 0.0);
    }

    #[test]
    fn rotation_x_at_zero_is_identity() {
        let rx = rotation(Axis::X, 0.0);
        assert!(unitarity_error(&rx) <= 1e-15);
        assert!((rx[(0, 0)].re - 1.0).abs() <= 1e-15 && rx[(0, 1)].norm() <= 1e-15);
    }

    #[test]
    fn rotation_y_at_pi() {
        let ry = rotation(Axis::Y, PI);
        assert!((ry[(0, 0)].norm()) <= 1e-15);
        assert!((ry[(0, 1)].re + 1.0).abs() <= 1e-15);
        assert!((ry[(1, 0)].re - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn rotations_have_unit_determinant() {
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            for angle in [0.0, 0.9, 1.1, 2.5, -0.7] {
                let det = rotation(axis, angle).determinant();
                assert!((det - Complex64::new(1.0, 0.0)).norm() <= 1e-14);
            }
        }
    }

    #[test]
    fn mixer_identity_word_is_identity() {
        let m = mixer(&BraidWord::identity(), 1.3).unwrap();
        assert!((&m - CMatrix::identity(2, 2)).iter().map(|z| z.norm()).fold(0.0, f64::max) <= 1e-15);
    }

    #[test]
    fn mixer_is_unitary_inside_window() {
        let w = BraidWord::parse("1 2 1").unwrap();
        let m = mixer(&w, 1.0).unwrap();
        assert!(unitarity_error(&m) <= 1e-12);
    }

    #[test]
    fn mixer_respects_inverses() {
        let w = BraidWord::parse("1 2 1").unwrap();
        let m = mixer(&w, 0.9).unwrap();
        let m_inv = mixer(&w.invert(), 0.9).unwrap();
        let err = (m * m_inv - CMatrix::identity(2, 2))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(err <= 1e-12);
    }

    #[test]
    fn mixer_rejects_outside_window() {
        let w = BraidWord::parse("1 2 1").unwrap();
        assert!(matches!(
            mixer(&w, 2.5),
            Err(NumericsError::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn trivial_switch_is_identity() {
        let i2 = CMatrix::identity(2, 2);
        let targets = TargetPair::new(i2.clone(), i2).unwrap();
        let s = switch_matrix(&targets, 0.0);
        assert!((s - CMatrix::identity(4, 4)).iter().map(|z| z.norm()).fold(0.0, f64::max) <= 1e-15);
    }

    #[test]
    fn switch_block_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let a = random_unitary(2, &mut rng);
            let b = random_unitary(2, &mut rng);
            let theta: f64 = rng.gen_range(0.0..TAU);
            let targets = TargetPair::new(a, b).unwrap();
            let s = switch_matrix(&targets, theta);
            let got = eigenphases(&s).unwrap();
            let mut expected: Vec<f64> =
                eigenphases(&targets.ba()).unwrap().phases().to_vec();
            expected.extend(
                eigenphases(&targets.ab())
                    .unwrap()
                    .phases()
                    .iter()
                    .map(|p| (p + theta).rem_euclid(TAU)),
            );
            expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let n = expected.len();
            let best = (0..n)
                .map(|shift| {
                    (0..n)
                        .map(|k| {
                            let d = (got.phases()[k] - expected[(k + shift) % n]).abs();
                            d.min(TAU - d)
                        })
                        .fold(0.0_f64, f64::max)
                })
                .fold(f64::INFINITY, f64::min);
            assert!(best <= 1e-10);
        }
    }

    #[test]
    fn commuting_targets_give_proportional_blocks() {
        let targets = TargetPair::new(rotation(Axis::Z, 0.4), rotation(Axis::Z, 1.2)).unwrap();
        assert!(targets.commutator_norm() <= 1e-15);
        let theta = 0.77;
        let s = switch_matrix(&targets, theta);
        let phase = Complex64::cis(theta);
        for i in 0..2 {
            for j in 0..2 {
                let upper = s[(i, j)];
                let lower = s[(i + 2, j + 2)];
                assert!((lower - upper * phase).norm() <= 1e-15);
            }
        }
    }

    #[test]
    fn identity_mixers_reduce_test_device_to_switch() {
        let mut cfg = section7_config();
        cfg.w_pre = BraidWord::identity();
        cfg.w_post = BraidWord::identity();
        for k in 0..30 {
            let omega = 0.02 + k as f64 * 0.068;
            let t = test_device(&cfg, omega).unwrap();
            let s = switch_matrix(&cfg.targets, omega);
            let diff = (&t - &s).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(diff <= 1e-15);
            assert!((p_test(&cfg, omega).unwrap() - p_switch(&cfg, omega)).abs() <= 1e-12);
        }
    }

    #[test]
    fn test_device_is_unitary_on_grid() {
        let cfg = section7_config();
        for omega in cfg.grid.values() {
            if crate::numerics::squier_form_at(omega).is_positive_definite() {
                let t = test_device(&cfg, omega).unwrap();
                assert!(unitarity_error(&t) <= 1e-12, "omega {omega}");
            }
        }
    }

    #[test]
    fn helstrom_consistency_under_random_conjugation() {
        // p*(I, Q T Q†) = p*(Q†, T Q†): both reduce to the spectrum of the
        // same similarity class.
        let cfg = section7_config();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..20 {
            let q = random_unitary(4, &mut rng);
            let omega: f64 = rng.gen_range(0.05..1.9);
            let t = test_device(&cfg, omega).unwrap();
            let lhs = helstrom(&CMatrix::identity(4, 4), &(&q * &t * q.adjoint())).unwrap();
            let rhs = helstrom(&q.adjoint(), &(&t * q.adjoint())).unwrap();
            assert!((lhs - rhs).abs() <= 1e-10);
        }
    }

    #[test]
    fn fixed_order_ceiling_value() {
        let p = p_fixed(&section7_targets());
        assert!((p - 0.820434).abs() <= 1e-5, "p_fixed = {p}");
        // closed form ½(1 + sin(arccos(cos 0.55 · cos 0.45)))
        let phi = (0.55_f64.cos() * 0.45_f64.cos()).acos();
        let closed = 0.5 * (1.0 + phi.sin());
        assert!((p - closed).abs() <= 1e-12);
    }

    #[test]
    fn fixed_order_ceiling_trivial_cases() {
        let i2 = CMatrix::identity(2, 2);
        let both_id = TargetPair::new(i2.clone(), i2.clone()).unwrap();
        assert!((p_fixed(&both_id) - 0.5).abs() <= 1e-12);

        let z = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-1.0, 0.0),
            ],
        );
        let zi = TargetPair::new(z, i2).unwrap();
        assert!((p_fixed(&zi) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn switch_gap_vanishes_at_omega_zero() {
        let cfg = section7_config();
        assert!(gap_switch(&cfg, 0.0).abs() <= 1e-12);
    }

    #[test]
    fn switch_gap_saturates_past_the_arc_threshold() {
        let cfg = section7_config();
        // ω ≥ π − 2φ makes the switch arc reach π, so p_switch = 1 exactly.
        let phi = (0.55_f64.cos() * 0.45_f64.cos()).acos();
        let omega_star = PI - 2.0 * phi;
        let gap = gap_switch(&cfg, omega_star + 0.01);
        assert!((gap - 0.179567).abs() <= 1e-5, "gap = {gap}");
    }

    #[test]
    fn fixed_order_devices_respect_the_ceiling() {
        // Convexity sanity: devices with no order superposition cannot beat
        // the fixed-order ceiling.
        let targets = section7_targets();
        let ceiling = p_fixed(&targets);
        let i4 = CMatrix::identity(4, 4);
        for (label, device) in [
            ("I (x) BA", kron_with_identity(&CMatrix::identity(2, 2)) * block_diag_2x2(&targets.ba(), &targets.ba())),
            ("I (x) AB", block_diag_2x2(&targets.ab(), &targets.ab())),
        ] {
            let p = helstrom(&i4, &device).unwrap();
            assert!(p <= ceiling + 1e-10, "{label}: {p} > {ceiling}");
        }
    }

    #[test]
    fn device_entries_vary_smoothly_across_refinements() {
        // Entry-wise finite differences of T shrink linearly with grid
        // spacing: the coarse/fine difference ratio stays near 2.
        let cfg = section7_config();
        let window_hi = 2.0 * PI / 3.0 - 0.05;
        let eval = |h: f64| -> f64 {
            let mut max_diff = 0.0_f64;
            let mut omega = 0.05;
            while omega + h < window_hi {
                let t0 = test_device(&cfg, omega).unwrap();
                let t1 = test_device(&cfg, omega + h).unwrap();
                let d = (&t1 - &t0).iter().map(|z| z.norm()).fold(0.0, f64::max);
                max_diff = max_diff.max(d);
                omega += window_hi / 40.0;
            }
            max_diff
        };
        let coarse = eval(1e-3);
        let fine = eval(5e-4);
        let ratio = coarse / fine;
        assert!((ratio - 2.0).abs() <= 0.2, "ratio {ratio}");
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::new(0.0, 1.0, 2).is_ok());
        assert!(GridSpec::new(-0.1, 1.0, 10).is_err());
        assert!(GridSpec::new(0.0, TAU, 10).is_err());
        assert!(GridSpec::new(0.0, 1.0, 1).is_err());
        assert!(GridSpec::new(1.0, 0.5, 10).is_err());
        let g = GridSpec::default_sweep();
        assert_eq!(g.points(), 2001);
        assert!((g.spacing() - TAU / 2001.0).abs() <= 1e-15);
        let vals = g.values();
        assert_eq!(vals.len(), 2001);
        assert_eq!(vals[0], 0.0);
        assert!(*vals.last().unwrap() < TAU);
    }

    #[test]
    fn target_pair_validation() {
        let bad = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        );
        assert!(matches!(
            TargetPair::new(bad, CMatrix::identity(2, 2)),
            Err(DeviceError::TargetNotUnitary { which: 'a', .. })
        ));
        let wrong = CMatrix::identity(3, 3);
        assert!(matches!(
            TargetPair::new(CMatrix::identity(2, 2), wrong),
            Err(DeviceError::TargetWrongShape { which: 'b', .. })
        ));
    }

    #[test]
    fn positivity_margin_keeps_boundary_out() {
        let form = crate::numerics::squier_form_at(2.0 * PI / 3.0);
        assert!(form.lambda_plus.abs() <= POSITIVITY_MARGIN);
        assert!(!form.is_positive_definite());
    }
}
