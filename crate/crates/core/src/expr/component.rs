use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{format_rational, parse_rational, rat, Rational, Scalar};

/// `U = U^μ e_μ` with each `U^μ` a polynomial in `x_0, …, x_{N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentPolynomial {
    components: Vec<Polynomial>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermFile {
    exps: Vec<u32>,
    coef: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct ComponentFile {
    #[serde(rename = "N")]
    n: usize,
    components: Vec<Vec<TermFile>>,
}

impl ComponentPolynomial {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|p| p.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.nvars(),
            });
        }
        Ok(Self { components })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            components: vec![Polynomial::zero(n); n],
        }
    }

    /// `U(x) = x`.
    pub fn identity(n: usize) -> Self {
        Self {
            components: (0..n).map(|mu| Polynomial::var(n, mu)).collect(),
        }
    }

    pub fn constant(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        Self {
            components: coeffs
                .iter()
                .map(|c| Polynomial::constant(n, c.clone()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, mu: usize) -> &Polynomial {
        &self.components[mu]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, Polynomial::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, Polynomial::sub)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|p| p.scale(k))
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        Self {
            components: self.components.iter().map(f).collect(),
        }
    }

    /// Pointwise algebra product `U V`.
    pub fn multiply(&self, other: &Self, algebra: &Algebra) -> Result<Self> {
        self.check(other)?;
        if algebra.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: self.dim(),
            });
        }
        let n = self.dim();
        let mut out = vec![Polynomial::zero(n); n];
        for (s, m, v, c) in algebra.nonzero() {
            let (a, b) = (&self.components[m], &other.components[v]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            out[s] = out[s].add(&a.mul(b).scale(c));
        }
        Ok(Self { components: out })
    }

    pub fn conjugate(&self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(mu, p)| if mu == 0 { p.clone() } else { p.neg() })
                .collect(),
        }
    }

    pub fn eval<S: Scalar>(&self, point: &[S]) -> Result<Vec<S>> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: point.len(),
            });
        }
        Ok(self.components.iter().map(|p| p.eval(point)).collect())
    }

    pub fn eval_at<S: Scalar>(&self, x: &Element<S>) -> Result<Element<S>> {
        let v = self.eval(x.coeffs())?;
        Element::new(x.algebra(), v)
    }

    /// `∂U/∂x_μ`, componentwise.
    pub fn differentiate(&self, mu: usize) -> Result<Self> {
        if mu >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: mu,
                dim: self.dim(),
            });
        }
        Ok(self.map(|p| p.derivative(mu)))
    }

    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn to_json(&self) -> String {
        let file = ComponentFile {
            n: self.dim(),
            components: self
                .components
                .iter()
                .map(|p| {
                    p.terms()
                        .map(|(m, c)| TermFile {
                            exps: m.clone(),
                            coef: format_rational(c),
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComponentFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidPolynomial(e.to_string()))?;
        if file.components.len() != file.n {
            return Err(Error::InvalidPolynomial(format!(
                "expected {} components, found {}",
                file.n,
                file.components.len()
            )));
        }
        let mut components = Vec::with_capacity(file.n);
        for terms in file.components {
            let mut p = Polynomial::zero(file.n);
            for t in terms {
                if t.exps.len() != file.n {
                    return Err(Error::InvalidPolynomial(format!(
                        "exponent vector of length {} in a {}-variable polynomial",
                        t.exps.len(),
                        file.n
                    )));
                }
                let exps: Monomial = t.exps;
                p.add_term(exps, parse_rational(&t.coef)?);
            }
            components.push(p);
        }
        Ok(Self { components })
    }

    pub fn render(&self) -> String {
        self.components
            .iter()
            .enumerate()
            .map(|(mu, p)| format!("U{mu} = {}", p.render("x")))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `e_μ` as a constant function.
pub fn basis_constant(n: usize, mu: usize) -> ComponentPolynomial {
    let mut c = vec![rat(0); n];
    c[mu] = rat(1);
    ComponentPolynomial::constant(&c)
}
