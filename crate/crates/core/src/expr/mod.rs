//! The input language for functions `U: A → A`.
//!
//! Expressions are parsed into an [`Expr`] tree, evaluated directly on
//! elements, or lowered to [`ComponentPolynomial`] form for exact
//! differentiation.

mod ast;
mod component;
mod parser;

pub use ast::Expr;
pub use component::{basis_constant, ComponentPolynomial};
pub use parser::parse;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_basis(expr: &Expr, n: usize) -> Result<()> {
    match expr.max_basis_index() {
        Some(mu) if mu >= n => Err(Error::IndexOutOfRange { index: mu, dim: n }),
        _ => Ok(()),
    }
}

/// Evaluates `expr` at `x` using the algebra product of `x`.
pub fn evaluate<S: Scalar>(expr: &Expr, x: &Element<S>) -> Result<Element<S>> {
    check_basis(expr, x.dim())?;
    eval_rec(expr, x)
}

fn eval_rec<S: Scalar>(expr: &Expr, x: &Element<S>) -> Result<Element<S>> {
    let alg = x.algebra();
    Ok(match expr {
        Expr::Variable => x.clone(),
        Expr::Conjugate(c) => eval_rec(c, x)?.conjugate(),
        Expr::BasisConst(mu) => Element::basis(alg, *mu)?,
        Expr::ScalarConst(r) => Element::one(alg).scale(&S::from_rational(r)),
        Expr::Sum(terms) => {
            let mut acc = Element::zero(alg);
            for (neg, t) in terms {
                let v = eval_rec(t, x)?;
                acc = if *neg {
                    acc.try_sub(&v)?
                } else {
                    acc.try_add(&v)?
                };
            }
            acc
        }
        Expr::Product(a, b) => eval_rec(a, x)?.multiply(&eval_rec(b, x)?)?,
        Expr::Power(c, n) => {
            let base = eval_rec(c, x)?;
            let mut acc = base.clone();
            for _ in 1..*n {
                acc = acc.multiply(&base)?;
            }
            acc
        }
        Expr::CoordProj(c, mu) => {
            let v = eval_rec(c, x)?;
            Element::one(alg).scale(&v.coordinate(*mu)?)
        }
    })
}

/// Expands `expr` into its `N` real component polynomials.
pub fn lower(expr: &Expr, algebra: &Algebra) -> Result<ComponentPolynomial> {
    let n = algebra.dim();
    check_basis(expr, n)?;
    lower_rec(expr, algebra)
}

fn lower_rec(expr: &Expr, alg: &Algebra) -> Result<ComponentPolynomial> {
    let n = alg.dim();
    Ok(match expr {
        Expr::Variable => ComponentPolynomial::identity(n),
        Expr::Conjugate(c) => lower_rec(c, alg)?.conjugate(),
        Expr::BasisConst(mu) => basis_constant(n, *mu),
        Expr::ScalarConst(r) => basis_constant(n, 0).scale(r),
        Expr::Sum(terms) => {
            let mut acc = ComponentPolynomial::zero(n);
            for (neg, t) in terms {
                let v = lower_rec(t, alg)?;
                acc = if *neg { acc.sub(&v)? } else { acc.add(&v)? };
            }
            acc
        }
        Expr::Product(a, b) => lower_rec(a, alg)?.multiply(&lower_rec(b, alg)?, alg)?,
        Expr::Power(c, k) => {
            let base = lower_rec(c, alg)?;
            let mut acc = base.clone();
            for _ in 1..*k {
                acc = acc.multiply(&base, alg)?;
            }
            acc
        }
        Expr::CoordProj(c, mu) => {
            let v = lower_rec(c, alg)?;
            if *mu >= n {
                return Err(Error::IndexOutOfRange { index: *mu, dim: n });
            }
            let mut comps = vec![crate::poly::Polynomial::zero(n); n];
            comps[0] = v.component(*mu).clone();
            ComponentPolynomial::new(comps)?
        }
    })
}

/// Parses a DSL expression or, if the text is a JSON object, a componentwise
/// polynomial.
pub fn load_function(text: &str, algebra: &Algebra) -> Result<ComponentPolynomial> {
    if text.trim_start().starts_with('{') {
        let p = ComponentPolynomial::from_json(text)?;
        if p.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: p.dim(),
            });
        }
        return Ok(p);
    }
    lower(&parse(text)?, algebra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_element, structure_tensor};
    use crate::poly::Polynomial;
    use crate::sample::{rng, unit_points};
    use crate::scalar::{rat, Rational};

    fn lower_str(s: &str, n: usize) -> ComponentPolynomial {
        lower(&parse(s).unwrap(), &structure_tensor(n).unwrap()).unwrap()
    }

    #[test]
    fn square_expansion_n4() {
        let p = lower_str("x^2", 4);
        let x = |i| Polynomial::var(4, i);
        let mut c0 = x(0).mul(&x(0));
        for i in 1..4 {
            c0 = c0.sub(&x(i).mul(&x(i)));
        }
        assert_eq!(p.component(0), &c0);
        for i in 1..4 {
            assert_eq!(p.component(i), &x(0).mul(&x(i)).scale(&rat(2)));
        }
    }

    #[test]
    fn conjugate_and_constants() {
        for n in [1, 2, 4, 8] {
            let p = lower_str("conj(x)", n);
            assert_eq!(p, ComponentPolynomial::identity(n).conjugate());
            assert_eq!(p.component(0), &Polynomial::var(n, 0));
        }
        let e1 = lower_str("e1", 2);
        assert_eq!(e1.component(0), &Polynomial::zero(2));
        assert_eq!(e1.component(1), &Polynomial::constant(2, rat(1)));
    }

    #[test]
    fn evaluate_basics() {
        let alg = structure_tensor(8).unwrap();
        let e2 = Element::<Rational>::basis(&alg, 2).unwrap();
        assert_eq!(evaluate(&parse("x").unwrap(), &e2).unwrap(), e2);
        let e1 = Element::<Rational>::basis(&alg, 1).unwrap();
        assert_eq!(
            evaluate(&parse("x^2").unwrap(), &e1).unwrap(),
            Element::one(&alg).scale(&rat(-1))
        );
        let mut r = rng(3);
        for _ in 0..20 {
            let x = random_element(&alg, &mut r);
            let v = evaluate(&parse("conj(x)*x").unwrap(), &x).unwrap();
            assert_eq!(v, Element::one(&alg).scale(&x.inner(&x).unwrap()));
        }
        let e2_small = Element::<Rational>::basis(&structure_tensor(2).unwrap(), 1).unwrap();
        assert!(matches!(
            evaluate(&parse("e3*x").unwrap(), &e2_small),
            Err(Error::IndexOutOfRange { index: 3, dim: 2 })
        ));
    }

    #[test]
    fn lower_commutes_with_evaluate() {
        let exprs = [
            "x*(x*e3)",
            "(conj(x)*e5)*(x + 1/2)",
            "x^3 - 2*conj(x)^2 + e7",
            "coord(x*e1, 2)*e4",
            "-(x*x) + 3",
        ];
        let alg = structure_tensor(8).unwrap();
        let mut r = rng(11);
        for s in exprs {
            let t = parse(s).unwrap();
            let p = lower(&t, &alg).unwrap();
            for _ in 0..10 {
                let x = random_element(&alg, &mut r);
                assert_eq!(p.eval_at(&x).unwrap(), evaluate(&t, &x).unwrap(), "{s}");
            }
        }
    }

    #[test]
    fn power_groupings_agree() {
        for n in [2, 4, 8] {
            let a = lower_str("x^3", n);
            assert_eq!(a, lower_str("(x*x)*x", n));
            assert_eq!(a, lower_str("x*(x*x)", n));
        }
    }

    #[test]
    fn derivatives() {
        let d = lower_str("x", 8).differentiate(1).unwrap();
        assert_eq!(d, basis_constant(8, 1));
        let sq = lower_str("x^2", 4);
        assert_eq!(
            sq.differentiate(0).unwrap().component(0),
            &Polynomial::var(4, 0).scale(&rat(2))
        );
        assert_eq!(
            sq.differentiate(4),
            Err(Error::IndexOutOfRange { index: 4, dim: 4 })
        );
        let p = lower_str("(x*e2)*(x^2 - conj(x))", 8);
        for m in 0..8 {
            for v in 0..8 {
                let a = p.differentiate(m).unwrap().differentiate(v).unwrap();
                let b = p.differentiate(v).unwrap().differentiate(m).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let alg = structure_tensor(8).unwrap();
        let t = parse("(x*e3)*(x*x) - conj(x)*e6 + x^2").unwrap();
        let p = lower(&t, &alg).unwrap();
        let h = 1e-5;
        for point in unit_points(8, 50, 5) {
            for sigma in 0..8 {
                let exact = p.differentiate(sigma).unwrap().eval(&point).unwrap();
                let mut plus = point.clone();
                let mut minus = point.clone();
                plus[sigma] += h;
                minus[sigma] -= h;
                let fp = evaluate(&t, &Element::new(&alg, plus).unwrap()).unwrap();
                let fm = evaluate(&t, &Element::new(&alg, minus).unwrap()).unwrap();
                for mu in 0..8 {
                    let fd = (fp.coeffs()[mu] - fm.coeffs()[mu]) / (2.0 * h);
                    assert!(
                        (fd - exact[mu]).abs() < 1e-7,
                        "σ={sigma} μ={mu}: {fd} vs {}",
                        exact[mu]
                    );
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let p = lower_str("x*(x*e3) + 1/3", 4);
        let text = p.to_json();
        assert_eq!(ComponentPolynomial::from_json(&text).unwrap(), p);
        let alg = structure_tensor(4).unwrap();
        assert_eq!(load_function(&text, &alg).unwrap(), p);
        assert!(load_function(&text, &structure_tensor(8).unwrap()).is_err());
        assert!(ComponentPolynomial::from_json(
            r#"{"N":2,"components":[[{"exps":[1],"coef":"1"}],[]]}"#
        )
        .is_err());
        assert!(ComponentPolynomial::from_json(r#"{"N":2,"components":[[]]}"#).is_err());
    }
}
