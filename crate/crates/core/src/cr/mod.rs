//! Cauchy-Riemann systems over ℂ, ℍ and 𝕆.
//!
//! Every formulation reduces to a first-order operator with constant
//! coefficients, so residuals are computed from the jacobian at a point and
//! solution spaces by exact elimination on homogeneous pieces.

mod forms;
mod kappa;
pub mod linalg;
mod linear;
mod operator;
mod report;

pub use forms::{
    circle_product, cross7, form_operator, reshuffle, residual_circle_j, residual_complex_j,
    residual_form_j, residual_generalized_j, residual_jadczyk_j, residual_kappa_j,
    residual_quaternionic_j, residual_real_j, residual_vector_form_j, Form,
};
pub use kappa::{
    assemble_pair, family_pairing, generate_analytic_family, generate_family, kappa_operator,
    kappa_residual_symbolic, laplacian, laplacian_residual, operator_kernel,
    solve_kappa_polynomials, t_factors, t_map, DegreeSystem, Family, TFactors,
};
pub use linear::{
    finite_difference_jacobian, is_left_multiplication, jacobian, sign_diagonal_enumeration,
    trace_commutation_check, LinearMap, SignDiagonalCase,
};
pub use operator::{
    contraction_violations, dirac_matrix, dirac_matrix_for, dirac_matrix_rearranged,
    factorization_check, factorization_holds, lemma2_identity_check, SymbolicOperator, Variant,
};
pub use report::{check_function, residual_at, PointResidual, ResidualReport};

use crate::algebra::Element;
use crate::error::Result;
use crate::expr::ComponentPolynomial;
use crate::scalar::{Rational, Scalar};

pub fn residual_real<S: Scalar>(
    u: &ComponentPolynomial,
    x: &Element<S>,
    variant: Variant,
) -> Result<Element<S>> {
    let v = residual_real_j(x.algebra(), variant, &jacobian(u, x)?)?;
    Element::new(x.algebra(), v)
}

pub fn residual_blocks<S: Scalar>(
    u: &ComponentPolynomial,
    x: &Element<S>,
    form: &Form,
) -> Result<Element<S>> {
    let v = residual_form_j(form, x.algebra(), &jacobian(u, x)?)?;
    Element::new(x.algebra(), v)
}

pub fn residual_vector_form<S: Scalar>(
    u: &ComponentPolynomial,
    x: &Element<S>,
) -> Result<(S, Vec<S>)> {
    residual_vector_form_j(&jacobian(u, x)?)
}

pub fn residual_kappa<S: Scalar>(
    u: &ComponentPolynomial,
    x: &Element<S>,
    kappa: &Rational,
) -> Result<Vec<S>> {
    residual_kappa_j(x.algebra(), kappa, &jacobian(u, x)?)
}

/// `Tr{D(U q)} = Tr{(D U) q}` for the antianalytic operator, every basis `q`,
/// as an identity of polynomials.
pub fn dirac_trace_identity(
    u: &ComponentPolynomial,
    alg: &crate::algebra::Algebra,
) -> Result<bool> {
    let d = dirac_matrix_for(alg, Variant::Antianalytic);
    let du = d.apply(u)?;
    for q in 0..alg.dim() {
        let eq = crate::expr::basis_constant(alg.dim(), q);
        let lhs = d.apply(&u.multiply(&eq, alg)?)?;
        let rhs = du.multiply(&eq, alg)?;
        // Tr a = N a^0, so comparing scalar components suffices.
        if lhs.component(0) != rhs.component(0) {
            return Ok(false);
        }
    }
    Ok(true)
}
