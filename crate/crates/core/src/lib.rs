//! Exact source-operator calculus on simple real Jordan algebras.

pub mod bernstein;
pub mod covariance;
pub mod fischer;
pub mod jordan;
pub mod linalg;
pub mod poly;
pub mod source;
pub mod weyl;
pub mod zeta;
