//! Invariants of rational line arrangements in the projective plane:
//! intersection lattices, multinets, modular Aomoto-Betti numbers, graded
//! Milnor algebras, spectra and monodromy tables, and the Alexander
//! polynomial pipeline for arrangements covered by two pencils.

pub mod alexpipe;
pub mod arrangement;
pub mod cubical;
pub mod gradedalg;
pub mod linalg;
pub mod multinet;
pub mod rational;
pub mod resonance;
pub mod spectrum;

pub use rational::Q;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arrangement(#[from] arrangement::ArrangementError),
    #[error(transparent)]
    Multinet(#[from] multinet::MultinetError),
    #[error(transparent)]
    Resonance(#[from] resonance::ResonanceError),
    #[error(transparent)]
    Poly(#[from] gradedalg::PolyError),
    #[error(transparent)]
    Spectrum(#[from] spectrum::SpectrumError),
    #[error(transparent)]
    Alexander(#[from] alexpipe::AlexanderError),
    #[error(transparent)]
    Cubical(#[from] cubical::CubicalError),
}

impl Error {
    /// Short machine-readable tag for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Arrangement(_) => "arrangement",
            Error::Multinet(_) => "multinet",
            Error::Resonance(_) => "resonance",
            Error::Poly(_) => "polynomial",
            Error::Spectrum(_) => "spectrum",
            Error::Alexander(_) => "alexander",
            Error::Cubical(_) => "cubical",
        }
    }
}
