//! Numerical workbench for two-setting Bell experiments on noisy Bell pairs.
//!
//! The crate builds the states and Bell operators involved in comparing the
//! Bell-Mermin inequality (two predetermined settings per site) with the
//! Bell-Żukowski inequality (predetermined results for every angle in the
//! xy plane):
//!
//! * [`operator`]: dense complex matrices, Hermitian splitting, expectation
//!   values and spectra.
//! * [`state`]: the noisy Bell pair, its N-fold copies, the GHZ basis and the
//!   σ_φ observables, plus correlation tables.
//! * [`mermin`]: the recursive Bell-Mermin construction and its closed form.
//! * [`zukowski`]: the Bell-Żukowski operator by closed form and by
//!   quadrature, threshold visibilities and the response-function bounds.
//! * [`lhv`]: an independent local hidden variable oracle (LP feasibility
//!   against the full-correlation polytope and the complete inequality set).
//!
//! The guide under `book/` walks through each of these; its code listings are
//! compiled and run as doctests of this crate.

pub mod error;
pub mod lhv;
pub mod mermin;
pub mod operator;
pub mod rng;
pub mod state;
pub mod tolerance;
pub mod zukowski;

pub use error::{Error, Result};
pub use operator::{ComplexMatrix, DensityMatrix, HermitianOperator, C64};
pub use tolerance::{BoundVerdict, Tolerances};

// Every chapter of the guide is compiled as a doctest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/mermin.md")]
    mod mermin {}
    #[doc = include_str!("../../../book/src/zukowski.md")]
    mod zukowski {}
    #[doc = include_str!("../../../book/src/lhv.md")]
    mod lhv {}
}
