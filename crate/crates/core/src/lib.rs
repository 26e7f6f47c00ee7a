//! Exact symbolic computation for torus-equivariant Schubert calculus on
//! the Lagrangian Grassmannian LG(n, 2n): factorial Q-functions, fixed-point
//! restrictions of Schubert classes, equivariant structure constants, and
//! the quotient presentation of the equivariant cohomology ring.

pub mod checks;
pub mod equivariant;
pub mod index;
pub mod poly;
pub mod presentation;
pub mod qfun;
