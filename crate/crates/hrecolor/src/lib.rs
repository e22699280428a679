//! Deciding, constructing, and minimizing single-vertex recoloring
//! sequences between homomorphisms of graphs.
//!
//! Given two graphs G and H and two homomorphisms alpha, beta from G to H,
//! a recoloring step changes the color of one G-vertex so that the
//! coloring stays a homomorphism. When every pair of distinct H-vertices
//! has at most one common neighbor, the set of walks traced in H by a
//! fixed base vertex classifies the recoloring sequences completely:
//! reachability, witness construction, and minimum-length sequences all
//! reduce to walk algebra in the fundamental groupoid of H.
//!
//! Modules, bottom up:
//! - [`graph`]: graphs, colorings, homomorphism and neighborhood checks;
//! - [`groupoid`]: reduced walks, their algebra, and conjugacy solvers;
//! - [`topology`]: spanning trees, cycle bases, validity of a candidate
//!   walk, tight walks, and the valid-walk family of an instance;
//! - [`reconfig`]: the decision procedure, witness builder, and
//!   shortest-sequence search;
//! - [`oracle`]: brute-force solution-graph exploration used to cross-check
//!   the engine;
//! - [`instance`]: the JSON instance and witness formats;
//! - [`gen`]: seeded random instance generation.

pub mod gen;
pub mod graph;
pub mod groupoid;
pub mod instance;
pub mod oracle;
pub mod reconfig;
pub mod topology;
