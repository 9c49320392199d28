//! Residuals of every Cauchy-Riemann formulation, as functions of the jacobian
//! `J[σ][τ] = ∂_τ U^σ` at a point. All of them are linear in `J`.

use std::fmt;

use crate::algebra::{structure_tensor, Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, rat, Rational, Scalar};

use super::linalg::{Rref, SparseRow};
use super::linear::LinearMap;
use super::operator::{SymbolicOperator, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Form {
    Real(Variant),
    Quaternionic(Variant),
    Complex(Variant),
    /// `(∂₀U₀ − ∇·U, ∂₀U + ∇U₀ + ∇⊗U)`.
    Vector,
    /// Trace condition `{U'(e_μ e_ν)}^ν = {U'(e_μ) e_ν}^ν`.
    Jadczyk,
    Kappa(Rational),
}

impl Form {
    pub fn id(&self) -> String {
        match self {
            Form::Real(_) => "real".into(),
            Form::Quaternionic(_) => "quaternionic-block".into(),
            Form::Complex(_) => "complex-block".into(),
            Form::Vector => "vector".into(),
            Form::Jadczyk => "jadczyk".into(),
            Form::Kappa(k) => format!("kappa({})", format_rational(k)),
        }
    }

    pub fn kappa(&self) -> Option<&Rational> {
        match self {
            Form::Kappa(k) => Some(k),
            _ => None,
        }
    }

    pub fn supports(&self, n: usize) -> bool {
        match self {
            Form::Real(_) | Form::Jadczyk | Form::Kappa(_) => matches!(n, 2 | 4 | 8),
            Form::Quaternionic(_) => n == 8,
            Form::Complex(_) | Form::Vector => matches!(n, 4 | 8),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

fn check_jacobian<S: Scalar>(alg: &Algebra, j: &LinearMap<S>) -> Result<usize> {
    if j.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            got: j.dim(),
        });
    }
    Ok(alg.dim())
}

/// `Σ_ν s_ν c^ρ_{νσ} ∂_ν U^σ`.
pub fn residual_real_j<S: Scalar>(
    alg: &Algebra,
    variant: Variant,
    j: &LinearMap<S>,
) -> Result<Vec<S>> {
    let n = check_jacobian(alg, j)?;
    let mut out = vec![S::zero(); n];
    for (rho, nu, sigma, c) in alg.nonzero() {
        let k = S::from_rational(c) * S::from_i64(variant.sign(nu));
        out[rho] = out[rho].clone() + k * j.get(sigma, nu).clone();
    }
    Ok(out)
}

/// `C^σ_{μν} ∂_σ U^ν − κ ∂_μ U^0`.
pub fn residual_kappa_j<S: Scalar>(
    alg: &Algebra,
    kappa: &Rational,
    j: &LinearMap<S>,
) -> Result<Vec<S>> {
    let n = check_jacobian(alg, j)?;
    let k = S::from_rational(kappa);
    let mut out: Vec<S> = (0..n)
        .map(|mu| -(k.clone() * j.get(0, mu).clone()))
        .collect();
    for (sigma, mu, nu, c) in alg.nonzero() {
        out[mu] = out[mu].clone() + S::from_rational(c) * j.get(nu, sigma).clone();
    }
    Ok(out)
}

/// `C^σ_{μν} ∂_σ U^ν − C^σ_{νσ} ∂_μ U^ν`, meaningful for any unital algebra.
pub fn residual_generalized_j<S: Scalar>(alg: &Algebra, j: &LinearMap<S>) -> Result<Vec<S>> {
    let n = check_jacobian(alg, j)?;
    let mut out = vec![S::zero(); n];
    let mut contraction = vec![Rational::from_integer(0.into()); n];
    for (sigma, mu, nu, c) in alg.nonzero() {
        out[mu] = out[mu].clone() + S::from_rational(c) * j.get(nu, sigma).clone();
        if mu == sigma {
            contraction[nu] += c;
        }
    }
    for (mu, o) in out.iter_mut().enumerate() {
        for (nu, t) in contraction.iter().enumerate() {
            *o = o.clone() - S::from_rational(t) * j.get(nu, mu).clone();
        }
    }
    Ok(out)
}

/// The trace condition evaluated with algebra products: component `μ` is
/// `Σ_ν {J(e_μ e_ν)}^ν − {(J e_μ) e_ν}^ν`.
pub fn residual_jadczyk_j<S: Scalar>(alg: &Algebra, j: &LinearMap<S>) -> Result<Vec<S>> {
    let n = check_jacobian(alg, j)?;
    let mut out = Vec::with_capacity(n);
    for mu in 0..n {
        let e_mu = Element::<S>::basis(alg, mu)?;
        let j_mu = j.apply_element(&e_mu)?;
        let mut acc = S::zero();
        for nu in 0..n {
            let e_nu = Element::basis(alg, nu)?;
            let lhs = j.apply_element(&e_mu.multiply(&e_nu)?)?;
            let rhs = j_mu.multiply(&e_nu)?;
            acc = acc + lhs.coeffs()[nu].clone() - rhs.coeffs()[nu].clone();
        }
        out.push(acc);
    }
    Ok(out)
}

fn column<S: Scalar>(j: &LinearMap<S>, tau: usize, range: std::ops::Range<usize>) -> Vec<S> {
    range.map(|s| j.get(s, tau).clone()).collect()
}

fn conj<S: Scalar>(v: &[S]) -> Vec<S> {
    v.iter()
        .enumerate()
        .map(|(i, x)| if i == 0 { x.clone() } else { -x.clone() })
        .collect()
}

fn add_into<S: Scalar>(acc: &mut [S], v: &[S], k: i64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = a.clone() + S::from_i64(k) * b.clone();
    }
}

/// `U = a + bE` with quaternion `a, b`, and the operator written the same way as
/// `(P, R)`; the residual is `(P a − b̄ R, b P + R ā)` where `b̄ R` and `b P`
/// act to the left.
pub fn residual_quaternionic_j<S: Scalar>(
    alg: &Algebra,
    variant: Variant,
    j: &LinearMap<S>,
) -> Result<Vec<S>> {
    let n = check_jacobian(alg, j)?;
    if n != 8 {
        return Err(Error::UnsupportedForm {
            form: "quaternionic-block".into(),
            n,
        });
    }
    let h = structure_tensor(4)?;
    let unit = |k: usize| -> Vec<S> {
        (0..4)
            .map(|i| if i == k { S::one() } else { S::zero() })
            .collect()
    };
    let mut first = vec![S::zero(); 4];
    let mut second = vec![S::zero(); 4];
    for k in 0..4 {
        let s_p = variant.sign(k);
        let s_r = variant.sign(4 + k);
        let e = unit(k);
        let da = column(j, k, 0..4);
        let db = column(j, k, 4..8);
        let da_r = column(j, 4 + k, 0..4);
        let db_r = column(j, 4 + k, 4..8);
        add_into(&mut first, &h.multiply_coeffs(&e, &da), s_p);
        add_into(&mut first, &h.multiply_coeffs(&conj(&db_r), &e), -s_r);
        add_into(&mut second, &h.multiply_coeffs(&db, &e), s_p);
        add_into(&mut second, &h.multiply_coeffs(&e, &conj(&da_r)), s_r);
    }
    first.extend(second);
    Ok(first)
}

fn complex_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    vec![
        a[0].clone() * b[0].clone() - a[1].clone() * b[1].clone(),
        a[0].clone() * b[1].clone() + a[1].clone() * b[0].clone(),
    ]
}

/// Product of `x = (x₁, y₁)` and `(x₂, y₂)` built from complex arithmetic by
/// repeated halving: `(x₁x₂ − ȳ₂y₁, y₂x₁ + y₁x̄₂)`.
fn nested_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    if a.len() == 2 {
        return complex_mul(a, b);
    }
    let h = a.len() / 2;
    let (x1, y1) = a.split_at(h);
    let (x2, y2) = b.split_at(h);
    let mut first = nested_mul(x1, x2);
    add_into(&mut first, &nested_mul(&conj(y2), y1), -1);
    let mut second = nested_mul(y2, x1);
    add_into(&mut second, &nested_mul(y1, &conj(x2)), 1);
    first.extend(second);
    first
}

/// `U = A₁ + B₁j + (A₂ + B₂j)E` (or `A + Bj` for `N = 4`) with complex pieces;
/// the operator acts through complex products only.
pub fn residual_complex_j<S: Scalar>(
    alg: &Algebra,
    variant: Variant,
    j: &LinearMap<S>,
) -> Result<Vec<S>> {
    let n = check_jacobian(alg, j)?;
    if n != 4 && n != 8 {
        return Err(Error::UnsupportedForm {
            form: "complex-block".into(),
            n,
        });
    }
    let mut out = vec![S::zero(); n];
    for tau in 0..n {
        let mut e = vec![S::zero(); n];
        e[tau] = S::from_i64(variant.sign(tau));
        let du = column(j, tau, 0..n);
        add_into(&mut out, &nested_mul(&e, &du), 1);
    }
    Ok(out)
}

fn imaginary_structure(len: usize) -> Result<Algebra> {
    match len {
        3 | 7 => structure_tensor(len + 1),
        _ => Err(Error::DimensionMismatch {
            expected: 7,
            got: len,
        }),
    }
}

/// `(u⊗v)_j = Σ_{k,i} ε_{jki} u_k v_i`, for length 7 or 3.
pub fn cross7<S: Scalar>(u: &[S], v: &[S]) -> Result<Vec<S>> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    let alg = imaginary_structure(u.len())?;
    let mut out = vec![S::zero(); u.len()];
    for t in alg.epsilon() {
        // ε is totally antisymmetric; visit all six orderings of {i, j, k}.
        let (a, b, c) = (t.i - 1, t.j - 1, t.k - 1);
        let s = S::from_i64(t.sign as i64);
        for (x, y, z, sign) in [
            (a, b, c, 1),
            (b, c, a, 1),
            (c, a, b, 1),
            (a, c, b, -1),
            (c, b, a, -1),
            (b, a, c, -1),
        ] {
            out[x] = out[x].clone() + S::from_i64(sign) * s.clone() * u[y].clone() * v[z].clone();
        }
    }
    Ok(out)
}

/// `(a₀, a)∘(b₀, b) = (a₀b₀ − a·b, a₀b + a b₀ + a⊗b)`.
pub fn circle_product<S: Scalar>(a: (&S, &[S]), b: (&S, &[S])) -> Result<(S, Vec<S>)> {
    let (a0, av) = a;
    let (b0, bv) = b;
    let cross = cross7(av, bv)?;
    let dot = av
        .iter()
        .zip(bv)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
    let vec = cross
        .into_iter()
        .zip(av.iter().zip(bv))
        .map(|(c, (x, y))| a0.clone() * y.clone() + x.clone() * b0.clone() + c)
        .collect();
    Ok((a0.clone() * b0.clone() - dot, vec))
}

/// `(∂₀U₀ − ∇·U, ∂₀U + ∇U₀ + ∇⊗U)`, with `∇⊗U = Σ_k û_k ⊗ ∂_k U`.
pub fn residual_vector_form_j<S: Scalar>(j: &LinearMap<S>) -> Result<(S, Vec<S>)> {
    let n = j.dim();
    if n != 4 && n != 8 {
        return Err(Error::UnsupportedForm {
            form: "vector".into(),
            n,
        });
    }
    let m = n - 1;
    let div = (1..n).fold(S::zero(), |acc, i| acc + j.get(i, i).clone());
    let scalar = j.get(0, 0).clone() - div;
    let mut vector: Vec<S> = (1..n)
        .map(|i| j.get(i, 0).clone() + j.get(0, i).clone())
        .collect();
    for k in 1..n {
        let mut unit = vec![S::zero(); m];
        unit[k - 1] = S::one();
        let du = column(j, k, 1..n);
        add_into(&mut vector, &cross7(&unit, &du)?, 1);
    }
    Ok((scalar, vector))
}

/// `(∂₀, ∇)∘(w U₀, U) = Σ_τ (δ_{τ0}, û_τ)∘(w ∂_τU₀, ∂_τU)`, flattened.
pub fn residual_circle_j<S: Scalar>(j: &LinearMap<S>, weight: &Rational) -> Result<Vec<S>> {
    let n = j.dim();
    if n != 4 && n != 8 {
        return Err(Error::UnsupportedForm {
            form: "circle".into(),
            n,
        });
    }
    let w = S::from_rational(weight);
    let mut out = vec![S::zero(); n];
    for tau in 0..n {
        let a0 = if tau == 0 { S::one() } else { S::zero() };
        let av: Vec<S> = (1..n)
            .map(|i| if i == tau { S::one() } else { S::zero() })
            .collect();
        let b0 = w.clone() * j.get(0, tau).clone();
        let bv = column(j, tau, 1..n);
        let (s, v) = circle_product((&a0, &av), (&b0, &bv))?;
        out[0] = out[0].clone() + s;
        add_into(&mut out[1..], &v, 1);
    }
    Ok(out)
}

pub fn residual_form_j<S: Scalar>(form: &Form, alg: &Algebra, j: &LinearMap<S>) -> Result<Vec<S>> {
    let n = alg.dim();
    if !form.supports(n) {
        return Err(Error::UnsupportedForm { form: form.id(), n });
    }
    match form {
        Form::Real(v) => residual_real_j(alg, *v, j),
        Form::Quaternionic(v) => residual_quaternionic_j(alg, *v, j),
        Form::Complex(v) => residual_complex_j(alg, *v, j),
        Form::Vector => {
            check_jacobian(alg, j)?;
            let (s, mut v) = residual_vector_form_j(j)?;
            v.insert(0, s);
            Ok(v)
        }
        Form::Jadczyk => residual_jadczyk_j(alg, j),
        Form::Kappa(k) => residual_kappa_j(alg, k, j),
    }
}

/// The first-order operator a form applies, recovered by probing with unit
/// jacobians.
pub fn form_operator(form: &Form, alg: &Algebra) -> Result<SymbolicOperator> {
    SymbolicOperator::probe(alg.dim(), |j| residual_form_j(form, alg, j))
}

/// The constant matrix `R` with `form residual = R · real residual` for the
/// given variant, found from the `d₀` coefficients and then checked on every
/// probe. Fails if no invertible `R` exists.
pub fn reshuffle(form: &Form, alg: &Algebra, variant: Variant) -> Result<LinearMap<Rational>> {
    let n = alg.dim();
    let b = form_operator(form, alg)?;
    let d = super::operator::dirac_matrix_for(alg, variant);
    // Column ν of the real operator's d₀ part is e_ν, so column ν of R is the
    // d₀ coefficient of column ν of B.
    let mut r = LinearMap::zero(n);
    for rho in 0..n {
        for nu in 0..n {
            r.set(rho, nu, b.linear_coefficient(rho, nu, 0));
        }
    }
    for s in 0..n {
        for t in 0..n {
            for rho in 0..n {
                let mut rd = rat(0);
                for k in 0..n {
                    rd += r.get(rho, k) * d.linear_coefficient(k, s, t);
                }
                if rd != b.linear_coefficient(rho, s, t) {
                    return Err(Error::BlockMismatch(format!(
                        "{form} differs from the {variant} real form at row {rho}, U^{s}, d{t}"
                    )));
                }
            }
        }
    }
    let rows: Vec<SparseRow> = r
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .cloned()
                .enumerate()
                .filter(|(_, v)| *v != rat(0))
                .collect()
        })
        .collect();
    if Rref::new(n, rows).rank() != n {
        return Err(Error::BlockMismatch(format!(
            "{form} reshuffle is singular"
        )));
    }
    Ok(r)
}
