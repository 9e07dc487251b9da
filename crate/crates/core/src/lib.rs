//! Exact tropical geometry for intersection counting: integer lattices,
//! lattice polytopes and mixed volumes, max-plus hypersurfaces, stable
//! intersections and empirical tropical degree.

pub mod degree;
mod hull;
pub mod intersect;
pub mod lattice;
pub mod polytope;
pub mod random;
pub mod tropical;
