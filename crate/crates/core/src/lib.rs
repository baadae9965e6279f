//! Anchored-triangle area profiles of origin-symmetric planar convex
//! domains, their critical triangles and lattices, and the inextensibility
//! checks built on them.
//!
//! ```
//! use inextensible::{area_profile, Domain};
//!
//! let square = Domain::regular_polygon(4, 0.5f64.sqrt()).unwrap();
//! let profile = area_profile(&square, 180);
//! assert!((2.0 * profile.a_max - 1.0).abs() < 1e-9);
//! ```

pub mod analysis;
pub mod anchored;
pub mod covering;
pub mod domain;
pub mod error;
pub mod geom;
pub mod search;

pub use analysis::family::{build_family_domain, solve_family, FamilyParams, REFERENCE_PARAMS};
pub use analysis::{
    all_pairs_interspersed, circle_of_triangles_check, extension_witness, inextensibility_verdict,
    interspersion_check, outer_billiard_triangle, sas_check, ExtensionWitness, InextensibilityVerdict, SasReport,
};
pub use anchored::{
    anchor_angles, anchored_area, anchored_triangle, area_profile, brute_max_triangle, critical_determinant,
    critical_triangles, AnchoredTriangle, AreaProfile, CriticalTriangle,
};
pub use covering::{covering_check, covering_density, critical_lattice, lattice_from_triangle, CoveringReport};
pub use domain::{BoundaryPiece, Chord, Contact, Domain, DomainFile, EllipticArc, NamedDomain, SupportResult};
pub use error::{Error, Result};
pub use geom::{hausdorff_distance, lattice_determinant, ConvexPolygon, Lattice, Point, Triangle};
