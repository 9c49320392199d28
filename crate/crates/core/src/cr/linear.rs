use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::expr::{evaluate, ComponentPolynomial, Expr};
use crate::scalar::{Rational, Scalar};

/// `N×N` real matrix; `get(μ, σ)` is row `μ`, column `σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap<S: Scalar> {
    n: usize,
    m: Vec<Vec<S>>,
}

impl<S: Scalar> LinearMap<S> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            m: vec![vec![S::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zero(n);
        for i in 0..n {
            out.m[i][i] = S::one();
        }
        out
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
        Ok(Self { n, m: rows })
    }

    /// `u ↦ a u`.
    pub fn left_multiplication(a: &Element<S>) -> Self {
        let alg = a.algebra();
        let n = alg.dim();
        let mut out = Self::zero(n);
        for (s, m, v, c) in alg.nonzero() {
            out.m[s][v] = out.m[s][v].clone() + S::from_rational(c) * a.coeffs()[m].clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.m[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: S) {
        self.m[row][col] = v;
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.m
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.m
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn apply_element(&self, v: &Element<S>) -> Result<Element<S>> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.dim(),
            });
        }
        Element::new(v.algebra(), self.apply(v.coeffs()))
    }

    /// `J[μ][σ] = ∂_σ U^μ` at `point`, exact for polynomial `U`.
    pub fn jacobian_at(u: &ComponentPolynomial, point: &[S]) -> Result<Self> {
        let n = u.dim();
        if point.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: point.len(),
            });
        }
        let mut out = Self::zero(n);
        for mu in 0..n {
            for sigma in 0..n {
                out.m[mu][sigma] = u.component(mu).derivative(sigma).eval(point);
            }
        }
        Ok(out)
    }
}

impl LinearMap<f64> {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The derivative `U'_x` as a matrix.
pub fn jacobian<S: Scalar>(u: &ComponentPolynomial, x: &Element<S>) -> Result<LinearMap<S>> {
    LinearMap::jacobian_at(u, x.coeffs())
}

/// Central-difference jacobian of `expr` evaluated directly in the algebra.
pub fn finite_difference_jacobian(expr: &Expr, x: &Element<f64>, h: f64) -> Result<LinearMap<f64>> {
    let n = x.dim();
    let mut out = LinearMap::zero(n);
    for sigma in 0..n {
        let mut plus = x.coeffs().to_vec();
        let mut minus = x.coeffs().to_vec();
        plus[sigma] += h;
        minus[sigma] -= h;
        let fp = evaluate(expr, &Element::new(x.algebra(), plus)?)?;
        let fm = evaluate(expr, &Element::new(x.algebra(), minus)?)?;
        for mu in 0..n {
            out.m[mu][sigma] = (fp.coeffs()[mu] - fm.coeffs()[mu]) / (2.0 * h);
        }
    }
    Ok(out)
}

/// `Tr{L(e_μ e_ν)} = Tr{(L e_μ) e_ν}` for every basis pair.
pub fn trace_commutation_check(l: &LinearMap<Rational>, alg: &Algebra) -> Result<bool> {
    let n = alg.dim();
    if l.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: l.dim(),
        });
    }
    for mu in 0..n {
        let e_mu = Element::<Rational>::basis(alg, mu)?;
        let l_mu = l.apply_element(&e_mu)?;
        for nu in 0..n {
            let e_nu = Element::basis(alg, nu)?;
            let lhs = l.apply_element(&e_mu.multiply(&e_nu)?)?.trace();
            let rhs = l_mu.multiply(&e_nu)?.trace();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `L u = L(1) u` for every basis `u`.
pub fn is_left_multiplication(l: &LinearMap<Rational>, alg: &Algebra) -> Result<bool> {
    let a = l.apply_element(&Element::one(alg))?;
    Ok(LinearMap::left_multiplication(&a) == *l)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignDiagonalCase {
    pub signs: Vec<i8>,
    pub trace_commutes: bool,
    pub left_multiplication: bool,
}

/// Every `diag(±1, …, ±1)` on the algebra.
pub fn sign_diagonal_enumeration(alg: &Algebra) -> Result<Vec<SignDiagonalCase>> {
    let n = alg.dim();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let signs: Vec<i8> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        let mut l = LinearMap::zero(n);
        for (i, s) in signs.iter().enumerate() {
            l.set(i, i, Rational::from_integer((*s as i64).into()));
        }
        out.push(SignDiagonalCase {
            trace_commutes: trace_commutation_check(&l, alg)?,
            left_multiplication: is_left_multiplication(&l, alg)?,
            signs,
        });
    }
    Ok(out)
}
