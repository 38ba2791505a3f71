//! Exact and numeric verification of the local and archimedean computations
//! behind the degree-two standard L-function of level-one cusp forms on G2.
//!
//! The crate is organised bottom-up: [`exactalg`] supplies exact arithmetic,
//! [`gammaledger`] manipulates products of Gamma factors, [`cubicforms`] and
//! [`localzeta`] handle the p-adic side, [`rootsys`] and [`intertwiner`] the
//! intertwining operators, and [`archnum`] the numeric archimedean checks.

pub mod archnum;
pub mod cubicforms;
pub mod exactalg;
pub mod gammaledger;
pub mod intertwiner;
pub mod localzeta;
pub mod rootsys;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular matrix")]
    Singular,
    #[error("no matching Gamma factors for duplication at {0}")]
    NoDuplicationPair(String),
    #[error("quadrature did not converge: estimate {estimate}, error {error}")]
    NoConvergence { estimate: f64, error: f64 },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
