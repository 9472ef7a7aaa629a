//! Fixed-energy inverse scattering for cut-off radial potentials.
//!
//! Given a finite set of scattering phase shifts `delta_l` measured at a single
//! wavenumber `k` for a potential that vanishes beyond a cut-off radius `a`,
//! this crate reconstructs the potential on `(0, a]`.  The pipeline:
//!
//! 1. map the radial problem to a half-line Sturm-Liouville problem by a
//!    log-scale change of variables controlled by a scale `c < 0` ([`liouville`]),
//! 2. turn each phase shift into one moment of the spectral function of that
//!    problem ([`spectral`]),
//! 3. solve a structured (Cauchy-matrix) moment problem for a finite
//!    exponential representation of the translation kernel, optionally with
//!    one or more bound-state terms ([`moments`]),
//! 4. run a Gel'fand-Levitan reconstruction to get the transformed potential
//!    and map it back to `q(r)` ([`gl`]).
//!
//! Supporting modules: a forward phase-shift solver for generating test data
//! ([`forward`]), bound-state counting and placement for the auxiliary
//! problem ([`bound_states`]), smoothness-driven parameter tuning
//! ([`tuning`]), and file/CLI plumbing ([`io`]).

pub mod bound_states;
pub mod dd;
pub mod error;
mod exact;
pub mod forward;
pub mod gl;
pub mod interp;
pub mod io;
pub mod liouville;
pub mod moments;
pub mod scenarios;
pub mod specfun;
pub mod spectral;
pub mod tuning;

pub use error::{Error, Result};
