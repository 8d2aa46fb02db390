//! Exact computations with H-rational polyhedra, their monoids of bounded
//! affine functions, collages of polyhedral charts, Riemann–Zariski point
//! classification and complex base change.

pub mod affine;
pub mod basechange;
pub mod collage;
pub mod cone;
pub mod dd;
pub mod error;
pub mod lattice;
pub mod points;
pub mod polyhedron;
pub mod refinement;
pub mod scalar;

pub use affine::{AffineFunction, AffineMap};
pub use collage::{Collage, DevelopedChart, Gluing, ManifoldReport, Violation};
pub use cone::Cone;
pub use error::{Error, Result};
pub use polyhedron::{convergence_polyhedron, BoundedAffineMonoid, Face, InfiniteFace, Location, Polyhedron};
pub use points::{OrientedFlag, PointSpec, TypeTriple};
pub use refinement::{Decomposition, SemiPolyhedron};
pub use scalar::{ExtendedScalar, GeneratorTable, Scalar};
