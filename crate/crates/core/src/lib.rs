//! Exact-arithmetic toolkit for computability on the naturals, rationals and
//! reals, applied to the tent-shaped baker map `b(x) = 2x` on `[0, 1/2]`,
//! `2 - 2x` on `(1/2, 1]`.
//!
//! The map is studied in three readings:
//!
//! * [`baker`]: exact dynamics on rationals, packaged as a computable real
//!   function with modulus `ε / 2^n`, plus witnesses of sensitivity to
//!   initial conditions;
//! * [`discrete`]: the same map on a finite grid, where sensitivity
//!   disappears;
//! * [`measured`]: the map observed through a `d`-digit device, which turns
//!   it into a finite nondeterministic relation.
//!
//! [`limit`] adds a dissipative map whose limit-state function is
//! discontinuous. The supporting machinery lives in [`encoding`] (Cantor
//! pairing and codes for rationals), [`murec`] (partial recursive terms with
//! fuel-bounded evaluation) and [`realfn`] (computable real functions).

pub mod baker;
pub mod discrete;
pub mod encoding;
pub mod error;
pub mod limit;
pub mod measured;
pub mod murec;
pub mod rational;
pub mod realfn;
pub mod selfcheck;

pub use baker::{baker_creal_fn, baker_iter, baker_orbit, baker_step, sensitivity_witness, SensitivityWitness};
pub use discrete::{detect_cycle, grid_iter, grid_step, grid_table, min_separation_eta, Cycle, GridState};
pub use encoding::{decode_rational, encode_rational, pair, translate, unpair, EncodingId};
pub use error::{Error, Result};
pub use limit::{diss_iter_approx, diss_step, discontinuity_witness, limit_state, LimitWitness};
pub use measured::{measure, reach_n, relation_table, successors, Readout, SuccessorSet};
pub use murec::{conjugate_eval, EvalOutcome, RecFn};
pub use rational::{Natural, Rational};
pub use realfn::{apply, check_modulus, compose, CReal, CRealFn, Domain, ModulusReport};
