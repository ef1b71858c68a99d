//! The black-box response layer: a uniform evaluable-model interface,
//! analytic benchmark functions, and a desk-scale physics stand-in for a
//! cold-forged pressure vessel.
//!
//! Every model maps a point of its physical parameter space to a scalar
//! response, deterministically. Expensive external solvers enter the
//! workflow as ingested CSV tables instead (see the companion crate); the
//! models here exist so the whole pipeline can be exercised and verified
//! without one.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::design::{DesignMatrix, Frame, ParameterDef, ParameterSpace, ResponseVector};
use crate::float;

#[derive(Clone, Debug, PartialEq)]
pub enum ModelError {
    Parameter(String),
    /// Punch tilt consumed the whole wall: no positive thickness left.
    GeometryInfeasible {
        min_wall_mm: f64,
    },
    ShapeMismatch {
        expected: usize,
        found: usize,
    },
    SpaceMismatch(String),
    EvaluationFailed {
        row: usize,
        source: Box<ModelError>,
    },
    NonFiniteResponse {
        row: usize,
    },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Parameter(msg) => write!(f, "invalid model parameter: {msg}"),
            ModelError::GeometryInfeasible { min_wall_mm } => {
                write!(f, "infeasible geometry: minimum wall {min_wall_mm} mm")
            }
            ModelError::ShapeMismatch { expected, found } => {
                write!(f, "point has {found} coordinates, model expects {expected}")
            }
            ModelError::SpaceMismatch(msg) => write!(f, "parameter space mismatch: {msg}"),
            ModelError::EvaluationFailed { row, source } => {
                write!(f, "evaluation failed at row {row}: {source}")
            }
            ModelError::NonFiniteResponse { row } => {
                write!(f, "non-finite response at row {row}")
            }
        }
    }
}

/// A deterministic scalar response over a physical parameter space.
pub trait EvaluableModel: Send + Sync {
    fn name(&self) -> &str;

    fn space(&self) -> &ParameterSpace;

    /// Evaluates the response at a point given in physical units.
    fn evaluate(&self, theta: &[f64]) -> Result<f64, ModelError>;

    fn dim(&self) -> usize {
        self.space().dim()
    }
}

fn check_dim(expected: usize, theta: &[f64]) -> Result<(), ModelError> {
    if theta.len() != expected {
        return Err(ModelError::ShapeMismatch {
            expected,
            found: theta.len(),
        });
    }
    Ok(())
}

fn unit_space(dim: usize, prefix: &str) -> ParameterSpace {
    let params = (0..dim)
        .map(|i| ParameterDef::new(format!("{prefix}{}", i + 1), 0.0, 1.0, "-").unwrap())
        .collect();
    ParameterSpace::new(params).unwrap()
}

/// Ishigami function, a nonlinear benchmark with a strong interaction
/// between its first and third inputs: `sin x1 + a sin^2 x2 + b x3^4 sin x1`.
#[derive(Clone, Debug)]
pub struct Ishigami {
    a: f64,
    b: f64,
    space: ParameterSpace,
}

impl Ishigami {
    pub const DEFAULT_A: f64 = 7.0;
    pub const DEFAULT_B: f64 = 0.1;

    /// Canonical form on the cube [-pi, pi]^3.
    pub fn new(a: f64, b: f64) -> Self {
        let params = (1..=3)
            .map(|i| ParameterDef::new(format!("x{i}"), -PI, PI, "rad").unwrap())
            .collect();
        Self {
            a,
            b,
            space: ParameterSpace::new(params).unwrap(),
        }
    }

    pub fn with_space(a: f64, b: f64, space: ParameterSpace) -> Result<Self, ModelError> {
        if space.dim() != 3 {
            return Err(ModelError::SpaceMismatch(format!(
                "ishigami needs 3 parameters, space has {}",
                space.dim()
            )));
        }
        Ok(Self { a, b, space })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

impl Default for Ishigami {
    fn default() -> Self {
        Self::new(Self::DEFAULT_A, Self::DEFAULT_B)
    }
}

impl EvaluableModel for Ishigami {
    fn name(&self) -> &str {
        "ishigami"
    }

    fn space(&self) -> &ParameterSpace {
        &self.space
    }

    fn evaluate(&self, theta: &[f64]) -> Result<f64, ModelError> {
        check_dim(3, theta)?;
        let s1 = float::sin(theta[0]);
        let s2 = float::sin(theta[1]);
        let t3 = theta[2];
        Ok(s1 + self.a * s2 * s2 + self.b * t3 * t3 * t3 * t3 * s1)
    }
}

/// Sobol' g-function on the unit cube: `prod (|4 x_i - 2| + a_i) / (1 + a_i)`.
///
/// Small `a_i` make a factor influential; `a_i = 0` is maximally so.
#[derive(Clone, Debug)]
pub struct GFunction {
    a: Vec<f64>,
    space: ParameterSpace,
}

impl GFunction {
    pub fn new(a: Vec<f64>) -> Result<Self, ModelError> {
        if a.is_empty() {
            return Err(ModelError::Parameter("coefficient vector is empty".into()));
        }
        if let Some(bad) = a.iter().find(|v| !(**v >= 0.0)) {
            return Err(ModelError::Parameter(format!(
                "g-function coefficients must be nonnegative, got {bad}"
            )));
        }
        let space = unit_space(a.len(), "x");
        Ok(Self { a, space })
    }

    pub fn with_space(a: Vec<f64>, space: ParameterSpace) -> Result<Self, ModelError> {
        let g = Self::new(a)?;
        if space.dim() != g.a.len() {
            return Err(ModelError::SpaceMismatch(format!(
                "g-function has {} coefficients, space has {} parameters",
                g.a.len(),
                space.dim()
            )));
        }
        Ok(Self { a: g.a, space })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.a
    }
}

impl EvaluableModel for GFunction {
    fn name(&self) -> &str {
        "g-function"
    }

    fn space(&self) -> &ParameterSpace {
        &self.space
    }

    fn evaluate(&self, theta: &[f64]) -> Result<f64, ModelError> {
        check_dim(self.a.len(), theta)?;
        let mut prod = 1.0;
        for (x, a) in theta.iter().zip(&self.a) {
            prod *= (float::abs(4.0 * x - 2.0) + a) / (1.0 + a);
        }
        Ok(prod)
    }
}

/// Geometry and load constants of the pressure-bin stand-in.
///
/// The elastic constants are carried for provenance only: the hoop stress of
/// a pressurized cylinder does not depend on stiffness, so they never enter
/// the response.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PressureBinParams {
    /// Cavity radius a (mm); the cavity diameter is 23.2 mm.
    pub inner_radius_mm: f64,
    /// Target minimum wall thickness t0 (mm).
    pub nominal_min_wall_mm: f64,
    /// Cavity depth D (mm); a punch tilt of phi thins the wall by D tan(phi).
    pub cavity_depth_mm: f64,
    /// Internal pressure p (MPa).
    pub pressure_mpa: f64,
    /// Relative stress increase per mm of additional indentation.
    pub indentation_factor: f64,
    pub young_modulus_gpa: f64,
    pub poisson_ratio: f64,
}

impl Default for PressureBinParams {
    fn default() -> Self {
        Self {
            inner_radius_mm: 11.6,
            nominal_min_wall_mm: 1.3,
            cavity_depth_mm: 70.0,
            pressure_mpa: 50.0,
            indentation_factor: 0.02,
            young_modulus_gpa: 207.0,
            poisson_ratio: 0.3,
        }
    }
}

/// Hoop stress at the inner surface of a thick-walled cylinder under
/// internal pressure (Lamé): `p (b^2 + a^2) / (b^2 - a^2)`.
pub fn lame_hoop_stress_inner(pressure: f64, inner_radius: f64, outer_radius: f64) -> f64 {
    let a2 = inner_radius * inner_radius;
    let b2 = outer_radius * outer_radius;
    pressure * (b2 + a2) / (b2 - a2)
}

/// Desk-scale stand-in for the pressure-bin stress analysis.
///
/// The two uncertain inputs are the punch angle of attack (degrees) and the
/// additional indentation (mm). Tilting the punch thins the thinnest wall
/// section to `t_min = t0 - D tan(phi)`; the response is the Lamé hoop
/// stress of the resulting cylinder, inflated by a small indentation factor:
/// `r = sigma(t_min) * (1 + beta h)`. Strictly increasing in both inputs.
#[derive(Clone, Debug)]
pub struct PressureBinStandin {
    params: PressureBinParams,
    space: ParameterSpace,
}

impl PressureBinStandin {
    pub fn new(params: PressureBinParams) -> Result<Self, ModelError> {
        Self::with_space(params, paper_space())
    }

    /// Validates that the wall stays positive over the whole angle range.
    pub fn with_space(
        params: PressureBinParams,
        space: ParameterSpace,
    ) -> Result<Self, ModelError> {
        if space.dim() != 2 {
            return Err(ModelError::SpaceMismatch(format!(
                "pressure-bin stand-in needs 2 parameters, space has {}",
                space.dim()
            )));
        }
        if !(params.inner_radius_mm > 0.0) {
            return Err(ModelError::Parameter("inner radius must be positive".into()));
        }
        let phi_max = space.param(0).upper();
        let worst_wall =
            params.nominal_min_wall_mm - params.cavity_depth_mm * float::tan(phi_max * PI / 180.0);
        if !(worst_wall > 0.0) {
            return Err(ModelError::GeometryInfeasible {
                min_wall_mm: worst_wall,
            });
        }
        Ok(Self { params, space })
    }

    pub fn params(&self) -> &PressureBinParams {
        &self.params
    }
}

impl Default for PressureBinStandin {
    fn default() -> Self {
        Self::new(PressureBinParams::default()).unwrap()
    }
}

/// The uncertain geometry window studied for the pressure bin: angle of
/// attack 0–0.25 degrees, additional indentation 0–1 mm.
pub fn paper_space() -> ParameterSpace {
    ParameterSpace::new(vec![
        ParameterDef::new("angle_of_attack_deg", 0.0, 0.25, "deg").unwrap(),
        ParameterDef::new("additional_indentation_mm", 0.0, 1.0, "mm").unwrap(),
    ])
    .unwrap()
}

impl EvaluableModel for PressureBinStandin {
    fn name(&self) -> &str {
        "pressure-bin"
    }

    fn space(&self) -> &ParameterSpace {
        &self.space
    }

    fn evaluate(&self, theta: &[f64]) -> Result<f64, ModelError> {
        check_dim(2, theta)?;
        let (phi_deg, indentation_mm) = (theta[0], theta[1]);
        let p = &self.params;
        let t_min = p.nominal_min_wall_mm - p.cavity_depth_mm * float::tan(phi_deg * PI / 180.0);
        if !(t_min > 0.0) {
            return Err(ModelError::GeometryInfeasible { min_wall_mm: t_min });
        }
        let sigma = lame_hoop_stress_inner(
            p.pressure_mpa,
            p.inner_radius_mm,
            p.inner_radius_mm + t_min,
        );
        Ok(sigma * (1.0 + p.indentation_factor * indentation_mm))
    }
}

/// Wraps a closure as a model; handy for ad-hoc functions in tests and
/// benchmark suites.
pub struct FnModel<F> {
    name: String,
    space: ParameterSpace,
    f: F,
}

impl<F> FnModel<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    pub fn new(name: impl Into<String>, space: ParameterSpace, f: F) -> Self {
        Self {
            name: name.into(),
            space,
            f,
        }
    }
}

impl<F> EvaluableModel for FnModel<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn space(&self) -> &ParameterSpace {
        &self.space
    }

    fn evaluate(&self, theta: &[f64]) -> Result<f64, ModelError> {
        check_dim(self.space.dim(), theta)?;
        Ok((self.f)(theta))
    }
}

/// Where a sample set came from.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SampleSource {
    /// Externally computed responses read from files.
    Ingested,
    /// Produced by a bundled model; `seed` is the design seed when known.
    Generated { model: String, seed: Option<u64> },
}

/// Paired physical design and raw responses.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SampleSet {
    design: DesignMatrix,
    responses: ResponseVector,
    source: SampleSource,
}

impl SampleSet {
    pub fn new(
        design: DesignMatrix,
        responses: ResponseVector,
        source: SampleSource,
    ) -> Result<Self, ModelError> {
        if design.frame() != Frame::Physical {
            return Err(ModelError::SpaceMismatch(
                "sample sets hold physical-frame designs".to_string(),
            ));
        }
        if design.n_rows() != responses.len() {
            return Err(ModelError::ShapeMismatch {
                expected: design.n_rows(),
                found: responses.len(),
            });
        }
        if let Some(row) = responses.values().iter().position(|v| !v.is_finite()) {
            return Err(ModelError::NonFiniteResponse { row });
        }
        Ok(Self {
            design,
            responses,
            source,
        })
    }

    pub fn design(&self) -> &DesignMatrix {
        &self.design
    }

    pub fn responses(&self) -> &ResponseVector {
        &self.responses
    }

    pub fn source(&self) -> &SampleSource {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.responses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.responses.is_empty()
    }
}

/// Evaluates a model row-wise over a physical design.
pub fn generate_sample_set(
    model: &dyn EvaluableModel,
    design: &DesignMatrix,
) -> Result<SampleSet, ModelError> {
    if design.frame() != Frame::Physical {
        return Err(ModelError::SpaceMismatch(
            "generate_sample_set needs a physical-frame design".to_string(),
        ));
    }
    if design.dim() != model.dim() {
        return Err(ModelError::ShapeMismatch {
            expected: model.dim(),
            found: design.dim(),
        });
    }
    let mut responses = Vec::with_capacity(design.n_rows());
    for row in 0..design.n_rows() {
        let value = model
            .evaluate(design.row(row))
            .map_err(|source| ModelError::EvaluationFailed {
                row,
                source: Box::new(source),
            })?;
        if !value.is_finite() {
            return Err(ModelError::NonFiniteResponse { row });
        }
        responses.push(value);
    }
    SampleSet::new(
        design.clone(),
        ResponseVector::raw(responses),
        SampleSource::Generated {
            model: model.name().to_string(),
            seed: None,
        },
    )
}
