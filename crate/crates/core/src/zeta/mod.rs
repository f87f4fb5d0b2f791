//! Zeta distributions: gamma factors, functional-equation matrices and a
//! numeric verifier for low-dimensional algebras.

mod gamma;
mod hermite;
mod matrices;
mod numeric;
pub mod quad;

use thiserror::Error;

pub use gamma::{gamma, gamma_omega, gamma_real, gamma_v, pole_distance};
pub use hermite::{hermite_coefficients, GaussPoly, HermiteFunction, Kernel};
pub use matrices::{
    fe_matrix, fe_matrix_printed, fs_derived_matrix, fs_u_matrix, Basis, CaseId, FECase,
    FEMatrix, POLE_MARGIN,
};
pub use numeric::{
    det_power, even_odd_from_orbits, fe_check, orbit_integrals_line, p_minus_power,
    p_plus_power, zeta_direct, zeta_numeric, FeReport, Geometry, Sign, ZetaSpace, ZetaValue,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZetaError {
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("case {case} does not apply to r={r}, d={d}")]
    Inadmissible { case: CaseId, r: usize, d: usize },
    #[error("too close to a pole: {0}")]
    NearPole(String),
    #[error("unsupported algebra {0}")]
    Unsupported(String),
    #[error("test function has {got} coordinates, algebra has {expect}")]
    Dimension { got: usize, expect: usize },
    #[error(transparent)]
    Quadrature(#[from] quad::QuadError),
}
