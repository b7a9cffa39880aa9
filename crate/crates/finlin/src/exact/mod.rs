pub mod matrix;
pub mod scalar;

pub use matrix::{solve_linear, LinearSolution, Matrix, RowSpan};
pub use scalar::{parse_scalar, scalar_to_json, Field, Scalar};
