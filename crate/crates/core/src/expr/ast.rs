use std::fmt;

use crate::scalar::{format_rational, Rational};

/// Parse tree of a non-associative expression in `x` and `conj(x)`.
///
/// `Product` is strictly binary: in a non-associative algebra the grouping is
/// part of the meaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Variable,
    Conjugate(Box<Expr>),
    BasisConst(usize),
    ScalarConst(Rational),
    /// Signed terms; `true` marks a subtracted term.
    Sum(Vec<(bool, Expr)>),
    Product(Box<Expr>, Box<Expr>),
    /// Left-nested self-product, `n >= 1`.
    Power(Box<Expr>, u32),
    /// The `μ`-th real coordinate, as a multiple of `e_0`.
    CoordProj(Box<Expr>, usize),
}

impl Expr {
    pub fn product(a: Expr, b: Expr) -> Self {
        Expr::Product(Box::new(a), Box::new(b))
    }

    pub fn conj(a: Expr) -> Self {
        Expr::Conjugate(Box::new(a))
    }

    pub fn power(a: Expr, n: u32) -> Self {
        Expr::Power(Box::new(a), n)
    }

    /// Largest basis index referenced, if any.
    pub fn max_basis_index(&self) -> Option<usize> {
        match self {
            Expr::Variable | Expr::ScalarConst(_) => None,
            Expr::BasisConst(mu) => Some(*mu),
            Expr::Conjugate(c) | Expr::Power(c, _) => c.max_basis_index(),
            Expr::CoordProj(c, mu) => c.max_basis_index().max(Some(*mu)),
            Expr::Product(a, b) => a.max_basis_index().max(b.max_basis_index()),
            Expr::Sum(ts) => ts.iter().filter_map(|(_, t)| t.max_basis_index()).max(),
        }
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sum(_) | Expr::Product(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Variable => write!(f, "x"),
            Expr::BasisConst(mu) => write!(f, "e{mu}"),
            Expr::ScalarConst(r) => write!(f, "{}", format_rational(r)),
            Expr::Conjugate(c) => write!(f, "conj({c})"),
            Expr::CoordProj(c, mu) => write!(f, "coord({c}, {mu})"),
            Expr::Power(c, n) => {
                c.fmt_factor(f)?;
                write!(f, "^{n}")
            }
            Expr::Product(a, b) => {
                a.fmt_factor(f)?;
                write!(f, "*")?;
                b.fmt_factor(f)
            }
            Expr::Sum(terms) => {
                for (i, (neg, t)) in terms.iter().enumerate() {
                    match (i, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if matches!(t, Expr::Sum(_)) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
        }
    }
}
