//! Exact-arithmetic engine for the p-adic syntomic cohomology of truncated
//! polynomial rings `k[x]/(x^e)` over a perfect field `k` of characteristic p.
//!
//! The computation runs over truncated Witt vectors `W_N(F_q)` modelled as
//! unramified extensions `Z_q/p^N`, builds the divided-power de Rham complex
//! of the pd-thickening `W(k)[x] -> k[x]/x^e`, applies the Nygaard filtration,
//! and takes the mapping fiber of `phi/p^i - can`.  Cohomology is extracted by
//! Smith normal form over `Z/p^N` with exact valuation bookkeeping, so every
//! reported factor `Z/p^a` with `a < N` is exact and saturation at precision
//! is detected rather than silently clipped.
//!
//! Modules:
//! * [`witt`]: truncated Witt ring arithmetic, Teichmueller lifts, Frobenius,
//!   Verschiebung, factorial valuations.
//! * [`linalg`]: Smith normal form and homology of complexes over `Z/p^N`.
//! * [`dpcomplex`]: the divided-power de Rham complex with its Hodge and
//!   conjugate filtrations.
//! * [`nygaard`]: the Nygaard filtration and the divided Frobenius.
//! * [`syntomic`]: the syntomic fiber complex, weight-tower decomposition,
//!   `Z_p(i)` cohomology, the closed form for dual numbers, relative K-groups.
//! * [`basecase`]: the perfect-field base case (homotopy of TC and the
//!   syntomic cohomology of a point).

pub mod basecase;
pub mod dpcomplex;
mod error;
pub mod linalg;
pub mod nygaard;
pub mod syntomic;
pub mod witt;

pub use dpcomplex::{Degree, DpBasisElem, DpComplex};
pub use error::Error;
pub use linalg::{HomologyGroup, PModMatrix, SnfResult};
pub use nygaard::NygaardComplex;
pub use syntomic::{
    closed_form_h1, relative_k_group, zp_i, zp_i_naive, CohomologyResult, KGroupSummary,
    NaiveResult, TowerFactors, TowerTruncation, Validated, ZpiOptions,
};
pub use witt::{ValScalar, WittElem, WittRing};

pub type Result<T> = std::result::Result<T, Error>;
