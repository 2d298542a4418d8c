//! Global minimisation of Δ over orthonormal pairs and the resulting
//! classification of each family.

mod classify;
mod exact;
mod refine;
mod sample;

pub use classify::{
    classify_acs, classify_acs_with, AcsVerdict, ClassifyOptions, PaperCase, Status, EXACT_TOL,
    SAMPLED_TOL,
};
pub use exact::{exact_min_delta, vertex_minimum};
pub use refine::{orthonormalize, refine_local, refine_with_trace, RefineOutcome};
pub use sample::{
    random_pair, sample_min_delta, sample_min_delta_with, sample_reduced, SampleOptions,
};

use serde::{Deserialize, Serialize};

use crate::delta::{AmbientPair, ReducedPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    ExactReduced,
    SampledRefined,
}

/// Which vertex `p = e_j` and chord coordinate `B*` realise the exact minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactCertificate {
    pub vertex: usize,
    pub chord_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinResult {
    pub min_delta: f64,
    pub witness: ReducedPoint,
    pub witness_pair: Option<AmbientPair>,
    pub method: Method,
    pub certificate: Option<ExactCertificate>,
}
