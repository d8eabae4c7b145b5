use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The caller supplied something outside an operation's domain.
    Input,
    /// The input was valid but a numerical certificate could not be obtained.
    Numerical,
    /// A mathematical precondition (relations, convexity) is not met.
    Verification,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty root list")]
    EmptyRoots,

    #[error("degree {degree} not supported here: {reason}")]
    UnsupportedDegree { degree: usize, reason: &'static str },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "coefficient relations fail: max defect {max_defect:e} exceeds tolerance {tolerance:e}"
    )]
    RelationsFailed { max_defect: f64, tolerance: f64 },

    #[error("midline coefficient is not real after phase normalisation (imaginary part {imag:e})")]
    NonRealMidline { imag: f64 },

    #[error("root finder did not converge after {iterations} iterations (max correction {max_correction:e})")]
    NonConvergence {
        iterations: usize,
        max_correction: f64,
        iterate: Vec<Complex64>,
    },

    #[error("root residual {residual:e} exceeds certified bound {bound:e}")]
    ResidualTooLarge { residual: f64, bound: f64 },

    #[error("root too close to unit circle: gap {circle_gap:e} <= guard {guard:e}")]
    RootNearCircle { circle_gap: f64, guard: f64 },

    #[error("function (nearly) vanishes on the contour at sample {index} (|f| = {modulus:e})")]
    ZeroOnContour { index: usize, modulus: f64 },

    #[error("winding could not be certified: {0}")]
    WindingNotCertified(String),

    #[error("winding did not stabilise over the radius schedule: {windings:?}")]
    NonStabilizingWinding { windings: Vec<(f64, i64)> },

    #[error("evaluation failed at xi = {xi}: {reason}")]
    Evaluation { xi: Complex64, reason: String },

    #[error("non-positive radicand {value:e} at xi = {xi}")]
    NonPositiveRadicand { xi: Complex64, value: f64 },

    #[error("ellipsoid is rotationally symmetric about the third axis (a1 = a2)")]
    SymmetricEllipsoid,

    #[error("no real umbilic parameters for this ellipsoid")]
    NoRealUmbilics,

    #[error("Mobius recentering has a pole at xi = {xi}")]
    MobiusPole { xi: Complex64 },

    #[error("umbilic is degenerate: no nonvanishing Fourier layer up to order {max_order}")]
    Degenerate { max_order: usize },

    #[error("G_N not certifiably nonzero: grid min {grid_min:e}, Lipschitz slack {slack:e} at {points} points")]
    NotCertified {
        grid_min: f64,
        slack: f64,
        points: usize,
    },

    #[error("leading coefficient A_N1 vanishes")]
    ZeroLeading,

    #[error("non-finite mesh vertex at parameter {xi}")]
    NonFiniteVertex { xi: Complex64 },

    #[error("convexity probe failed up to C = {constant:e} (worst margin {margin:e})")]
    NotConvex { constant: f64, margin: f64 },

    #[error("malformed OBJ at line {line}: {reason}")]
    Obj { line: usize, reason: String },

    #[error("sampler exhausted {attempts} attempts without clearing the circle guard")]
    SamplerExhausted { attempts: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::EmptyRoots
            | Error::UnsupportedDegree { .. }
            | Error::InvalidInput(_)
            | Error::SymmetricEllipsoid
            | Error::NoRealUmbilics
            | Error::MobiusPole { .. }
            | Error::NonPositiveRadicand { .. }
            | Error::Obj { .. }
            | Error::Json(_) => ErrorClass::Input,
            Error::RelationsFailed { .. }
            | Error::NonRealMidline { .. }
            | Error::NotConvex { .. }
            | Error::ZeroLeading
            | Error::Degenerate { .. } => ErrorClass::Verification,
            _ => ErrorClass::Numerical,
        }
    }
}
