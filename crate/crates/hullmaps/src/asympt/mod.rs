//! Limit laws for hull perimeters and the scaling functions behind them.
//!
//! Laws depending on the family only through `c` take `c` as an argument
//! (`c = 1/3` for quadrangulations, `1/2` for triangulations).

mod finite;
pub mod grid;
mod joint;
mod laws;
mod scaling;
mod special;

pub use finite::{einf_L, einf_l_exact, ek_L, ek_l_exact, winf};
pub use joint::{joint_density, joint_density_contour, joint_density_terms, pi_poly, PiPolynomial, PI_CACHE_MAX};
pub use laws::{
    b_of, cor, f_of_complex, joint_laplace, joint_laplace_complex, ktau_laplace, ktau_laplace_complex, lav, lav_cond,
    pinf_density, pinf_laplace, pinf_laplace_complex, profile, ptilde1_density, ptilde_density, pu_density, sigma_of,
    F_of,
};
pub use scaling::{
    ek_joint_largek, ktau_from_zeta, mu, nu_minus_xi, scale, wk_largek, zeta_complex, zeta_k3, zeta_scaling,
    Lambda_double, Lambda_single, EXTRACTION_TOLERANCE,
};
pub use special::{erfc_defect, erfcx};

use crate::genfun::Family;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AsymptError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("branch selection failed: {0}")]
    Branch(String),
}

/// Parameters shared by the law evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LawParams {
    pub c: f64,
    pub u: Option<f64>,
    pub v: Option<f64>,
    pub l1: Option<f64>,
}

impl LawParams {
    pub fn for_family(family: Family) -> Self {
        LawParams {
            c: family.c_f64(),
            u: None,
            v: None,
            l1: None,
        }
    }

    pub fn with_c(c: f64) -> Self {
        LawParams {
            c,
            u: None,
            v: None,
            l1: None,
        }
    }

    /// `b(u)`, when `u` is set.
    pub fn b(&self) -> Option<f64> {
        self.u.map(b_of)
    }

    /// `σ(τ;u)`, when `u` is set.
    pub fn sigma(&self, tau: f64) -> Option<f64> {
        self.u.map(|u| sigma_of(tau, u, self.c))
    }
}
