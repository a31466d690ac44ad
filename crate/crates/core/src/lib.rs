//! Exact computation with rational maps that commute with finite groups of
//! Möbius transformations: coefficient fields, polynomials, rational maps,
//! Möbius groups, normal forms for symmetric maps, and certified paths in
//! the resulting parameter spaces.

pub mod field;
pub mod poly;
pub mod ratmap;
pub mod mobius;
pub mod linalg;
pub mod symmetry;
pub mod moduli;
