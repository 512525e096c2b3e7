//! Exact combinatorics for multiplicity free Hamiltonian manifolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact_linalg`]: integer/rational normal forms and sublattices.
//! * [`root_data`]: root data, Weyl groups, Dynkin recognition, and the
//!   group-scheme descriptors (fibers, global sections, special roots).
//! * [`polytope`]: exact rational polyhedra, face lattices, tangent cones.
//! * [`local_glue`]: gluing local root systems over a momentum polytope.
//! * [`cech`]: Čech complexes of the kernel sheaf and their cohomology.
//! * [`classify`]: Delzant, SU(2) and face-by-face multiplicity free checks.
//! * [`rank_one`]: the explicit rank-one group scheme.
//! * [`schema`]: the JSON file formats shared with the command line tool.

pub mod cech;
pub mod classify;
pub mod exact_linalg;
pub mod local_glue;
pub mod polytope;
pub mod rank_one;
pub mod root_data;
pub mod schema;
