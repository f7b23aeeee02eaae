//! Exact rational arithmetic, linear algebra and integer lattices.

mod lattice;
mod linalg;
mod rational;

pub use lattice::{AffineLattice, Congruence};
pub use linalg::{
    affine_hull, determinant, hermite_rows, integer_solve, kernel_basis, kernel_lattice_basis, project_orthogonal,
    rank, rank_int, solve_affine, AffineFrame, QMatrix,
};
pub use rational::{
    dot, dot_int, dot_ints, format_rational, from_int, is_integral, parse_rational, parse_vector, primitive, rat,
    scale_to_integers, sign_normalized, to_rational_vec, IVec, QVector, Rational, Strictness,
};
