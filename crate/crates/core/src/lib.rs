//! Finite noncommutative geometry toolkit.
//!
//! Builds and checks finite spectral triples, full C*-categories with a
//! self-adjoint domain section, and Fell bundles over finite pair groupoids;
//! converts between the three presentations; and runs a lattice experiment
//! where pair-groupoid Dirac operators converge to `−i d/dx`.
//!
//! Module map:
//!
//! - [`matops`]: dense complex matrices, norms, spectra, subspaces
//! - [`groupoid`]: pair groupoids and (local) bisections
//! - [`fellbundle`]: Fell bundles, axiom checks, semidirect and linking constructions
//! - [`cstarcat`]: C*-categories, normalisers, conditional expectation, domain sections
//! - [`sptriple`]: finite even / real / S°-real spectral triples
//! - [`geometry`]: the triple ↔ category ↔ Fell-triple equivalences and fluctuations
//! - [`climit`]: lattice Dirac operators and their continuum limit
//! - [`cli`]: the `ncg` command-line front end

pub mod error;
pub mod matops;
pub mod report;
pub mod groupoid;
pub mod fellbundle;
pub mod cstarcat;
pub mod sptriple;
pub mod geometry;
pub mod climit;
pub mod cli;

pub use error::{Error, Result};
pub use report::{AxiomRecord, AxiomReport, Method};
