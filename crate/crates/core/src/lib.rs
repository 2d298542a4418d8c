//! Spectra, the pointwise ACS integrand and its global minimum on minimal
//! isoparametric hypersurfaces `N^{n+1} ⊂ S^{n+2}`.
//!
//! Pipeline: [`spectra::validate_family`] → [`spectra::minimal_spectrum`] →
//! [`delta`] evaluation → [`bounds`] and [`optimize`] → [`optimize::classify_acs`].

pub mod bounds;
pub mod delta;
pub mod error;
pub mod optimize;
pub mod spectra;
pub mod sweep;
pub mod verify;

pub use bounds::{bound_report, BoundReport};
pub use delta::{AmbientPair, DefinitionBreakdown, DeltaBreakdown, ReducedPoint};
pub use error::{Error, Result};
pub use optimize::{classify_acs, AcsVerdict, MinResult, PaperCase, Status};
pub use spectra::{minimal_spectrum, validate_family, FamilySpec, Rejection, Spectrum};
