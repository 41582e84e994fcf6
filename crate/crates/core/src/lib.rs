//! Exact integral lattices and the reflection-group machinery around the
//! monodromy of regular elliptic surfaces.

pub mod enumerate;
pub mod error;
pub mod io;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod surface;
pub mod vanishing;

pub use error::{LatticeError, Result};
pub use isometry::{enumerate_orthogonal_group, Isometry, SpinorSign};
pub use lattice::{DiscriminantData, Lattice, LatticeVector, Signature, StandardKind, Sublattice};
pub use matrix::{Int, IntMatrix};
pub use vanishing::{is_complete_vanishing_lattice, CvlBounds, CvlReport, DiagramPattern, DiagramSearch, OrbitCertificate, OrbitVerdict, VanishingSet};
pub use surface::{build_surface_model, embed_milnor, fibre_complement, milnor_lattice, BPSingularity, SearchBounds, SurfaceModel};
