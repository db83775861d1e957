//! Finite 2-dimensional simplicial complexes with F2 (co)homology, cup
//! products, a triangle-removing simplification pipeline, surface
//! recognition and simplicial complexity bounds.

pub mod bounds;
pub mod complex;
pub mod gf2;
pub mod homology;
pub mod io;
pub mod reduce;
pub mod report;
pub mod surfaces;

pub use bounds::{
    chi_trunc, delta_surface, euler_bounds_check, kappa_certificate, lower_bound_free_product, rho,
    BoundReport, BoundsError, EulerBoundsReport, GroupProfile, KappaCertificate,
};
pub use complex::{Complex2, ComplexError, Label, LinkGraph, SimplexId};
pub use gf2::{Gf2Error, Gf2Matrix, Gf2Vector};
pub use homology::{
    betti_numbers, boundary_matrix, cup_pairing_on_h1, cup_product, has_property_a,
    homology_summary, Betti, ChainVector, CochainVector, CupPairing, HomologySummary, PropertyA,
};
pub use reduce::{
    collapse_all, eliminate_maximal_edges, kill_step, simplify_pipeline, PreservationSpec,
    ReduceError, ReductionTrace,
};
pub use report::{run_report, CertificateReport, ReportOptions};
pub use surfaces::{classify, is_closed_surface, ClassificationResult, SurfaceError, SurfaceId};
