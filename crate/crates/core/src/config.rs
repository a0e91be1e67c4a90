//! Flat `key = value` run configuration. Section-free keys, `#` comments,
//! blank lines ignored. Unset keys keep their defaults, which reproduce the
//! reference experiment: A = R_x(1.1), B = R_z(0.9), θ(ω) = ω,
//! w_pre = w_post = σ₁σ₂σ₁, 2001 grid points covering [0, 2π).
//!
//! Recognized keys:
//!
//! ```text
//! a.axis      = x            # rotation axis for target A: x, y, z
//! a.angle     = 1.1          # rotation angle (radians)
//! a.entries   = 1 0  0 0  0 0  1 0   # alternative: explicit 2x2, row-major re im pairs
//! b.axis      = z
//! b.angle     = 0.9
//! b.entries   = ...
//! w_pre       = 1 2 1        # braid word (may be empty for the identity)
//! w_post      = 1 2 1
//! theta.kind  = identity     # identity | constant | linear
//! theta.value = 0.0          # used by constant
//! theta.slope = 1.0          # used by linear
//! theta.offset= 0.0          # used by linear
//! grid.min    = 0.0
//! grid.max    = 6.28004...   # inclusive; must stay below 2*pi
//! grid.points = 2001
//! placement   = both         # both | pre | post
//! output      = sweep.csv
//! ```

use num_complex::Complex64;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::device::{
    rotation, Axis, DeviceConfig, DeviceError, GridSpec, PhaseMap, Placement, TargetPair,
};
use crate::numerics::CMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("config: {0}")]
    Invalid(String),
}

/// How one target unitary is specified.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetSpec {
    Rotation { axis: Axis, angle: f64 },
    Explicit(CMatrix),
}

impl TargetSpec {
    pub fn matrix(&self) -> CMatrix {
        match self {
            TargetSpec::Rotation { axis, angle } => rotation(*axis, *angle),
            TargetSpec::Explicit(m) => m.clone(),
        }
    }
}

/// Parsed run configuration; see the module docs for the file format.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub a: TargetSpec,
    pub b: TargetSpec,
    pub w_pre: BraidWord,
    pub w_post: BraidWord,
    pub phase_map: PhaseMap,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_points: usize,
    pub placement: Placement,
    pub output: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        let w = BraidWord::parse("1 2 1").expect("literal word");
        let grid = GridSpec::default_sweep();
        Self {
            a: TargetSpec::Rotation {
                axis: Axis::X,
                angle: 1.1,
            },
            b: TargetSpec::Rotation {
                axis: Axis::Z,
                angle: 0.9,
            },
            w_pre: w.clone(),
            w_post: w,
            phase_map: PhaseMap::Identity,
            grid_min: grid.min(),
            grid_max: grid.max(),
            grid_points: grid.points(),
            placement: Placement::Both,
            output: "sweep.csv".to_string(),
        }
    }
}

#[derive(Default)]
struct ThetaDraft {
    kind: Option<String>,
    value: Option<f64>,
    slope: Option<f64>,
    offset: Option<f64>,
}

impl RunConfig {
    /// Parses the flat key = value format, overriding defaults key by key.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut theta = ThetaDraft::default();
        let mut theta_touched = false;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ConfigError::Parse {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".to_string()))?;
            let key = key.trim();
            let value = value.trim();
            let parse_f64 = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| err(format!("`{v}` is not a number")))
                    .and_then(|x| {
                        if x.is_finite() {
                            Ok(x)
                        } else {
                            Err(err(format!("`{v}` must be finite")))
                        }
                    })
            };
            match key {
                "a.axis" => set_axis(&mut cfg.a, value).map_err(err)?,
                "b.axis" => set_axis(&mut cfg.b, value).map_err(err)?,
                "a.angle" => set_angle(&mut cfg.a, parse_f64(value)?),
                "b.angle" => set_angle(&mut cfg.b, parse_f64(value)?),
                "a.entries" => cfg.a = TargetSpec::Explicit(parse_entries(value).map_err(err)?),
                "b.entries" => cfg.b = TargetSpec::Explicit(parse_entries(value).map_err(err)?),
                "w_pre" => {
                    cfg.w_pre = BraidWord::parse(value).map_err(|e| err(e.to_string()))?;
                }
                "w_post" => {
                    cfg.w_post = BraidWord::parse(value).map_err(|e| err(e.to_string()))?;
                }
                "theta.kind" => {
                    theta.kind = Some(value.to_string());
                    theta_touched = true;
                }
                "theta.value" => {
                    theta.value = Some(parse_f64(value)?);
                    theta_touched = true;
                }
                "theta.slope" => {
                    theta.slope = Some(parse_f64(value)?);
                    theta_touched = true;
                }
                "theta.offset" => {
                    theta.offset = Some(parse_f64(value)?);
                    theta_touched = true;
                }
                "grid.min" => cfg.grid_min = parse_f64(value)?,
                "grid.max" => cfg.grid_max = parse_f64(value)?,
                "grid.points" => {
                    cfg.grid_points = value
                        .parse::<usize>()
                        .map_err(|_| err(format!("`{value}` is not a point count")))?;
                }
                "placement" => {
                    cfg.placement = value.parse().map_err(|e: String| err(e))?;
                }
                "output" => cfg.output = value.to_string(),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }

        if theta_touched {
            cfg.phase_map = resolve_theta(&theta)?;
        }
        Ok(cfg)
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.grid_points = points;
        self
    }

    pub fn with_placement(mut self, placement: Placement) -> Self {
        self.placement = placement;
        self
    }

    pub fn grid(&self) -> Result<GridSpec, DeviceError> {
        GridSpec::new(self.grid_min, self.grid_max, self.grid_points)
    }

    /// Assembles the device configuration, applying the placement by
    /// blanking the inactive mixer word.
    pub fn device_config(&self) -> Result<DeviceConfig, ConfigError> {
        let targets = TargetPair::new(self.a.matrix(), self.b.matrix())
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let grid = self
            .grid()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let (w_pre, w_post) = match self.placement {
            Placement::Both => (self.w_pre.clone(), self.w_post.clone()),
            Placement::Pre => (self.w_pre.clone(), BraidWord::identity()),
            Placement::Post => (BraidWord::identity(), self.w_post.clone()),
        };
        Ok(DeviceConfig {
            targets,
            w_pre,
            w_post,
            phase_map: self.phase_map,
            grid,
        })
    }
}

fn set_axis(spec: &mut TargetSpec, value: &str) -> Result<(), String> {
    let axis: Axis = value.parse()?;
    match spec {
        TargetSpec::Rotation { axis: a, .. } => *a = axis,
        explicit => {
            *explicit = TargetSpec::Rotation { axis, angle: 0.0 };
        }
    }
    Ok(())
}

fn set_angle(spec: &mut TargetSpec, value: f64) {
    match spec {
        TargetSpec::Rotation { angle, .. } => *angle = value,
        explicit => {
            *explicit = TargetSpec::Rotation {
                axis: Axis::X,
                angle: value,
            };
        }
    }
}

fn parse_entries(value: &str) -> Result<CMatrix, String> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    if parts.len() != 8 {
        return Err(format!(
            "explicit entries need 8 numbers (row-major re im pairs), got {}",
            parts.len()
        ));
    }
    let mut nums = [0.0f64; 8];
    for (k, p) in parts.iter().enumerate() {
        nums[k] = p
            .parse::<f64>()
            .map_err(|_| format!("`{p}` is not a number"))?;
        if !nums[k].is_finite() {
            return Err(format!("`{p}` must be finite"));
        }
    }
    let data: Vec<Complex64> = nums
        .chunks(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    Ok(CMatrix::from_row_slice(2, 2, &data))
}

fn resolve_theta(draft: &ThetaDraft) -> Result<PhaseMap, ConfigError> {
    let kind = draft.kind.as_deref().unwrap_or("identity");
    match kind {
        "identity" => Ok(PhaseMap::Identity),
        "constant" => Ok(PhaseMap::Constant(draft.value.ok_or_else(|| {
            ConfigError::Invalid("theta.kind = constant needs theta.value".into())
        })?)),
        "linear" => Ok(PhaseMap::Linear {
            slope: draft.slope.ok_or_else(|| {
                ConfigError::Invalid("theta.kind = linear needs theta.slope".into())
            })?,
            offset: draft.offset.unwrap_or(0.0),
        }),
        other => Err(ConfigError::Invalid(format!(
            "unknown theta.kind `{other}` (expected identity, constant, or linear)"
        ))),
    }
}

/// The default configuration rendered in the file format, for `--help`
/// style documentation and tests.
pub fn default_config_text() -> String {
    let cfg = RunConfig::default();
    format!(
        "a.axis = x\n\
         a.angle = 1.1\n\
         b.axis = z\n\
         b.angle = 0.9\n\
         w_pre = 1 2 1\n\
         w_post = 1 2 1\n\
         theta.kind = identity\n\
         grid.min = 0\n\
         grid.max = {max:.17}\n\
         grid.points = {points}\n\
         placement = both\n\
         output = sweep.csv\n",
        max = cfg.grid_max,
        points = cfg.grid_points,
    )
}
