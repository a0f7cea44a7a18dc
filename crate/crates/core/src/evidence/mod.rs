//! Belief-function kernel: frames, mass functions, plausibility, the
//! plausibility ordering, the commitment measure and discounting.
//!
//! Masks are `u32` bitsets over at most [`MAX_FRAME_SIZE`] elements. Focal
//! sets are kept sparse; plausibility is kept dense because mining compares
//! whole vectors over and over.

mod frame;
mod mass;
mod plausibility;

pub use frame::{FrameOfDiscernment, SubsetMask, MAX_FRAME_SIZE};
pub use mass::{certain_bba, discount, make_bba, pignistic, vacuous_bba, MassFunction};
pub use plausibility::{commitment, commitment_pl, pl_leq, plausibility, PlausibilityVector};

/// Tolerance on `|Σm − 1|`.
pub const EPS_MASS: f64 = 1e-9;

/// Tolerance on pointwise plausibility comparisons.
pub const EPS_PL: f64 = 1e-9;
