//! Hull perimeter statistics of random planar quadrangulations and triangulations.
//!
//! The crate is organised as a set of engines:
//!
//! - [`exactalg`]: exact rationals, polynomials and truncated power series;
//! - [`genfun`]: perimeter-weighted slice generating functions;
//! - [`planarmap`]: half-edge maps, hull walks, enumeration and sampling;
//! - [`asympt`]: closed-form limit laws and scaling functions;
//! - [`numlab`]: Talbot inversion, quadrature and statistical comparison;
//! - [`cli`]: the command-line front end used by the `hullmaps` binary.

pub mod asympt;
pub mod cli;
pub mod exactalg;
pub mod genfun;
pub mod numlab;
pub mod planarmap;
