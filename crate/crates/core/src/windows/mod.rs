//! Windows Ω_A, Ω_B, Ω_C, Ω_AB of the model set and their boundary.
//!
//! Ω_AB is the attractor of f₁(z) = βz, f₂(z) = β³z + β³, f₃(z) = βz + β² − β;
//! Ω_A = f₁(Ω_AB), Ω_B = f₂(Ω_AB) ∪ f₃(Ω_AB), Ω_C = f₄(Ω_AB) with
//! f₄(z) = β²z + β². The edge [P2, P3] of ∂Ω_AB is the attractor of g₁, g₂, g₃.

pub mod affine;
pub mod cloud;
pub mod geometry;
pub mod measure;
pub mod membership;
pub mod points;
pub mod rhombus;

pub use affine::{chain, verify_map_identities, AffineSimilarity, IdentityOutcome, MapName, MapRegistry, NumMap};
pub use cloud::{
    ab_ring, attractor_cloud, boundary_cloud, edge_polyline, hausdorff, BoundaryScope, CloudMode, PointCloud,
    PointIndex, WindowLabel,
};
pub use geometry::{ConvexPolygon, Quad};
pub use measure::{
    area_estimate, boundary_dimension, boundary_dimension_target, box_dimension, ifs_consistency,
    inner_point_check, omega_area_exact, tiling_check, tiling_lattice, AreaEstimate, ConsistencyReport,
    DimensionEstimate, InnerPointReport, TilingReport,
};
pub use membership::{membership, membership_in, oracle, Membership, Verdict};
pub use points::{boundary_orientation, verify_point_identities, SpecialPoints};
pub use rhombus::{rhombus_verify, RhombusReport};

/// `a ∘ b`.
pub fn map_compose(a: &AffineSimilarity, b: &AffineSimilarity) -> AffineSimilarity {
    a.compose(b)
}
