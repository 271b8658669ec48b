//! Stratified triangulations: the combinatorial complex, its directed
//! structure, example generators, barycentric subdivision and moves.

pub mod directed;
pub mod generators;
pub mod moves;
pub mod stratified;
pub mod subdivide;

pub use directed::{default_orders, CanonicalForm, DirectedTriangulation, Mode, StratumOrders};
pub use moves::{applicable_sites, candidate_sites, pachner_move, MoveKind, MoveOutcome, Site};
pub use stratified::{StratifiedComplex, Tet, TriangulationFile, VertexId, BULK};
pub use subdivide::barycentric_subdivide;
