use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::bound_report;
use crate::error::Result;
use crate::spectra::{minimal_spectrum, FamilySpec};

use super::{exact_min_delta, sample_min_delta_with, Method, MinResult, SampleOptions};

pub const EXACT_TOL: f64 = 1e-9;
pub const SAMPLED_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    PointwiseHolds,
    PointwiseFails,
    Indeterminate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::PointwiseHolds => "PointwiseHolds",
            Status::PointwiseFails => "PointwiseFails",
            Status::Indeterminate => "Indeterminate",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "PointwiseHolds" => Ok(Status::PointwiseHolds),
            "PointwiseFails" => Ok(Status::PointwiseFails),
            "Indeterminate" => Ok(Status::Indeterminate),
            other => Err(format!("unknown status {other:?}")),
        }
    }
}

/// Whether a family falls under the known positivity results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PaperCase {
    /// `g = 3`, `m ∈ {4, 8}`.
    CoveredG3,
    /// `g = 4`, `min{m1, m2} ≥ 4`.
    CoveredG4,
    RicciNotPositive,
    Open,
}

impl PaperCase {
    pub fn of(family: &FamilySpec) -> Self {
        if !crate::spectra::ricci_positive(family) {
            return PaperCase::RicciNotPositive;
        }
        match family.g() {
            3 if matches!(family.m1(), 4 | 8) => PaperCase::CoveredG3,
            4 if family.q() >= 4 => PaperCase::CoveredG4,
            _ => PaperCase::Open,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PaperCase::CoveredG3 => "covered-g3",
            PaperCase::CoveredG4 => "covered-g4",
            PaperCase::RicciNotPositive => "ricci-not-positive",
            PaperCase::Open => "open",
        }
    }
}

impl fmt::Display for PaperCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for PaperCase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "covered-g3" => Ok(PaperCase::CoveredG3),
            "covered-g4" => Ok(PaperCase::CoveredG4),
            "ricci-not-positive" => Ok(PaperCase::RicciNotPositive),
            "open" => Ok(PaperCase::Open),
            other => Err(format!("unknown case {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassifyOptions {
    /// Overrides the method default (1e-9 exact, 1e-4 sampled).
    pub tol: Option<f64>,
    pub sampling: SampleOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcsVerdict {
    pub family: FamilySpec,
    pub ricci_positive: bool,
    pub status: Status,
    /// The computed minimum of Δ (an upper bound when sampled).
    pub margin: f64,
    pub paper_case: PaperCase,
    /// Closed-form lower bound `(2n−2) − (17/4)a²`.
    pub lower_bound: f64,
    pub tol: f64,
    pub result: MinResult,
}

pub fn classify_acs(family: &FamilySpec, tol: Option<f64>) -> Result<AcsVerdict> {
    classify_acs_with(
        family,
        &ClassifyOptions {
            tol,
            ..ClassifyOptions::default()
        },
    )
}

/// Exact minimisation when every block has multiplicity at least two,
/// otherwise sampling plus the closed-form lower bound.
///
/// A sampled minimum is only an upper bound: a negative one certifies failure,
/// but positivity needs the lower bound to be positive as well.
pub fn classify_acs_with(family: &FamilySpec, opts: &ClassifyOptions) -> Result<AcsVerdict> {
    let spec = minimal_spectrum(family)?;
    let lower_bound = bound_report(&spec).refined;
    let result = match exact_min_delta(&spec) {
        Ok(r) => r,
        Err(crate::Error::SimpleBlock { .. }) => sample_min_delta_with(&spec, &opts.sampling)?,
        Err(e) => return Err(e),
    };
    let tol = opts.tol.unwrap_or(match result.method {
        Method::ExactReduced => EXACT_TOL,
        Method::SampledRefined => SAMPLED_TOL,
    });
    let m = result.min_delta;
    let status = match result.method {
        Method::ExactReduced if m > tol => Status::PointwiseHolds,
        Method::ExactReduced if m < -tol => Status::PointwiseFails,
        Method::SampledRefined if m < -tol => Status::PointwiseFails,
        Method::SampledRefined if lower_bound > tol => Status::PointwiseHolds,
        _ => Status::Indeterminate,
    };
    Ok(AcsVerdict {
        family: *family,
        ricci_positive: spec.ricci_positive,
        status,
        margin: m,
        paper_case: PaperCase::of(family),
        lower_bound,
        tol,
        result,
    })
}
