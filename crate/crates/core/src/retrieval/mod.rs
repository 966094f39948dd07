//! Phase retrieval and norm retrieval certification.
//!
//! Failures are always certified: a check that reports
//! [`Verdict::CertifiedFail`] carries a pair of vectors with identical
//! measurements that was re-verified before the report was built. Passes
//! of the randomized checks are labeled probabilistic, since the defining
//! conditions quantify over every nonzero vector.

mod combinatorial;
mod family;
mod norm;
mod phase;
mod report;
mod search;

pub use combinatorial::{
    complement_property, full_spark, FullSpark, COMPLEMENT_PROPERTY_MAX_VECTORS, FULL_SPARK_MAX_SUBSETS,
};
pub use family::{
    companion_overlap, complement_family, distinguishes, lift_vector_family, Distinction, ProjectionFamily,
};
pub use norm::{
    coefficient_analysis, complement_transfer_check, norm_retrieval_check, norm_retrieval_witness, CoefficientKind,
    CoefficientSolution, TransferReport, TransferSample,
};
pub use phase::{
    complex_pr_check, complex_projection_pr_check, edidin_check, indistinguishable_pair, nonvanishing_support_stats,
    unimodular_related,
};
pub use report::{CheckReport, SearchOptions, Verdict};
