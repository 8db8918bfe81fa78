//! Entanglement of multipartite pure states from the geometry of
//! post-measurement vectors.
//!
//! Projecting one block of a bipartition onto its basis leaves a family of
//! vectors in the other block's space. The family is parallel exactly when
//! the cut is separable, and forms a cube (pairwise orthogonal, equal
//! lengths) exactly when the cut is maximally entangled. The squared
//! I-concurrence is four times the summed squared wedge products of the
//! family.
//!
//! ```
//! use wedgent::{states, global_entanglement};
//!
//! let report = global_entanglement(&states::ghz(3).unwrap()).unwrap();
//! assert!((report.global_e - 3.0).abs() < 1e-12);
//! ```

mod complex;
pub mod concurrence;
mod error;
pub mod linalg;
pub mod rdm;
pub mod search;
pub mod state;
pub mod states;
pub mod tolerance;
pub mod wedge;

pub use complex::Pair;
pub use concurrence::{
    certify, certify_absolutely_maximal, ckw_check, concurrence_purity, concurrence_wedge, global_entanglement,
    three_tangle, AbsoluteCertificate, CertificationResult, CkwRecord, CutConcurrence, EntanglementReport, Verdict,
};
pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use rdm::{intrinsic_coherence, rdm_overlap, rdm_trace_oracle, DensityMatrix};
pub use search::{constraint_residual, maximize, Objective, SearchConfig, SearchResult};
pub use state::{
    apply_local_unitary, enumerate_bipartitions, post_measurement_vectors, Bipartition, LocalUnitary,
    PostMeasurementFamily, PureState, Side, SiteDims, StateFile,
};
pub use wedge::{bivector_sum, kvector_magnitude_sq, wedge2, wedge_magnitude_sq, Bivector};

pub use num_complex::Complex64;
