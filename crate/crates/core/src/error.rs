use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("polar angle {0} is outside [0, pi]")]
    PolarAngleOutOfRange(f64),
    #[error("non-finite angle")]
    NonFiniteAngle,
    #[error("sphere grid needs n_theta >= 2 and n_phi >= 4, got ({n_theta}, {n_phi})")]
    GridTooSmall { n_theta: usize, n_phi: usize },
    #[error("wavelength must be finite and positive, got {0}")]
    InvalidWavelength(f64),
    #[error("at least one emitter is required")]
    NoEmitters,
    #[error("emitter dipole moment must be non-zero and finite")]
    ZeroMoment,
    #[error("emitter position and phase must be finite")]
    NonFiniteEmitter,
    #[error("configuration is not a pair of emitters placed symmetrically on the x axis")]
    NotSymmetricPair,
    #[error("{which} polarization vector is not unit-normalized (norm^2 = {norm_sqr})")]
    NonUnitPolarization { which: &'static str, norm_sqr: f64 },
    #[error("mixing parameter must be finite")]
    NonFiniteZeta,
    #[error("sensitivity must be finite and positive, got {0}")]
    NonPositiveSensitivity(f64),
    #[error("polarizability is not passive: Im alpha = {0} < 0")]
    NonPassive(f64),
    #[error("angular frequency {0} is outside the tabulated range")]
    FrequencyOutOfRange(f64),
    #[error("invalid polarizability model: {0}")]
    InvalidPolarizability(&'static str),
    #[error("unknown detection mode `{0}`")]
    UnknownMode(String),
    #[error("unknown detector frame `{0}`")]
    UnknownFrame(String),
    #[error("unknown scan plane `{0}`")]
    UnknownPlane(String),
    #[error(
        "mode space must have 1..={max_modes} modes and cutoff 1..={max_cutoff}, got {n_modes} modes, cutoff {cutoff}"
    )]
    ModeSpaceOutOfRange {
        n_modes: usize,
        cutoff: usize,
        max_modes: usize,
        max_cutoff: usize,
    },
    #[error("mode index {index} out of range for {n_modes} modes")]
    ModeIndexOutOfRange { index: usize, n_modes: usize },
    #[error("expected {expected} detection coefficients, got {got}")]
    CoefficientMismatch { expected: usize, got: usize },
    #[error("state has {got} amplitudes but the Fock space has dimension {expected}")]
    StateDimensionMismatch { expected: usize, got: usize },
    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("operator dimension {got} does not match state dimension {expected}")]
    OperatorDimensionMismatch { expected: usize, got: usize },
    #[error("expectation value has imaginary residue {0}")]
    ImaginaryExpectation(f64),
    #[error("a scan needs at least 8 samples, got {0}")]
    TooFewSamples(usize),
    #[error("scan is empty")]
    EmptyScan,
    #[error("scans have different sampling")]
    SamplingMismatch,
    #[error("zero tolerance must be positive and finite")]
    InvalidTolerance,
}
