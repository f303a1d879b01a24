//! Exact symbolic computation of extactic polynomials of plane projective
//! vector fields, with invariant-curve detection, first-integral degree
//! search and count/degree bound calculators.
//!
//! Everything is computed over the rationals with arbitrary precision; there
//! is no floating point anywhere in the pipeline.

pub mod cli;
pub mod error;
pub mod extactic;
pub mod field;
pub mod invariants;
pub mod linalg;
pub mod parse;
pub mod poly;

pub use error::{Error, Result};
pub use extactic::{
    contact_order, determinant, determinant_bareiss, determinant_cofactor, expected_degree,
    expected_degree_row_sum, extactic, extactic_ideal_generators, extactic_system,
    monomial_basis, wronskian_matrix, ContactOrder, ExtacticReport, LinearSystem,
};
pub use field::{affine_decomposition, radial_field, AffineDecomposition, VectorField};
pub use invariants::{
    curve_count_bound, factor_containment, family_analysis, field_extension_bound,
    first_integral_degree, invariance_cofactor, invariant_lines, invariant_lines_through_point,
    jouanolou_bound, rational_linear_factors, solution_count_bound, Cofactor, FamilyReport,
    LinearFactors, RationalBound,
};
pub use parse::{parse_polynomial, parse_vector_field, render, FieldKind, ParsedField};
pub use poly::{gcd, squarefree_part, MPoly, Monomial, Rational};
