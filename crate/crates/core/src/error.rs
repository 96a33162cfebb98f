use std::fmt;

/// Errors surfaced by the engine.  Variants that encode internal invariant
/// violations (`NegativeScaling`, `IntegralityViolation`, `CompositionNonzero`)
/// indicate a convention bug and are expected never to fire on valid input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p^N` does not fit in the fixed-width residue representation.
    PrecisionOverflow { p: u64, precision: u32 },
    /// A requested weight or a Frobenius image exceeds the representable range.
    WeightOverflow { weight: u64 },
    /// A degree-1 basis element was passed where degree 0 is required.
    DegreeError { op: &'static str },
    /// The scaled differential of the Nygaard complex needed a negative
    /// power of p (violates Griffiths transversality bookkeeping).
    NegativeScaling { m: u64, delta: i64 },
    /// A divided Frobenius entry had valuation below `i` before division.
    IntegralityViolation { m: u64, deg: u8, shortfall: u64 },
    /// The weight window is too small for the requested check.
    WindowTooSmall { needed: u64, available: u64 },
    /// `d_out * d_in != 0 mod p^N`; the pair is not a complex.
    CompositionNonzero { row: usize, col: usize },
    /// No tower truncation admitting a valid tail certificate fits in the
    /// weight window, or a recomputed certificate failed.
    CertificateFailure { d: u64, detail: String },
    /// Precision escalation hit the configured ceiling while factors were
    /// still saturated.
    NonTermination { precision: u32, ceiling: u32 },
    /// The requested computation is outside the supported parameter range.
    Unsupported { what: String },
    /// The matrix computation disagrees with the closed form.
    ValidationMismatch { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PrecisionOverflow { p, precision } => {
                write!(fm, "p^N overflows u64: p = {p}, N = {precision}")
            }
            Error::WeightOverflow { weight } => {
                write!(fm, "weight {weight} exceeds representable range")
            }
            Error::DegreeError { op } => {
                write!(fm, "{op} is only defined in degree 0")
            }
            Error::NegativeScaling { m, delta } => {
                write!(fm, "negative scaling p^{delta} at weight {m}")
            }
            Error::IntegralityViolation { m, deg, shortfall } => write!(
                fm,
                "divided Frobenius not integral at m = {m}, deg = {deg} (short by p^{shortfall})"
            ),
            Error::WindowTooSmall { needed, available } => {
                write!(
                    fm,
                    "weight window too small: need {needed}, have {available}"
                )
            }
            Error::CompositionNonzero { row, col } => {
                write!(fm, "d_out * d_in nonzero at ({row}, {col})")
            }
            Error::CertificateFailure { d, detail } => {
                write!(fm, "tail certificate failed for tower d = {d}: {detail}")
            }
            Error::NonTermination { precision, ceiling } => write!(
                fm,
                "still saturated at precision {precision} (ceiling {ceiling})"
            ),
            Error::Unsupported { what } => write!(fm, "unsupported: {what}"),
            Error::ValidationMismatch { detail } => {
                write!(fm, "closed-form validation failed: {detail}")
            }
        }
    }
}

impl std::error::Error for Error {}
