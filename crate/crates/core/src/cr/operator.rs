use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{structure_tensor, Algebra};
use crate::error::{Error, Result};
use crate::expr::ComponentPolynomial;
use crate::poly::Polynomial;
use crate::scalar::{rat, Rational, Scalar};

use super::linear::LinearMap;

/// Which Dirac operator: `Σ e_ν ∂_ν` or `Σ ē_ν ∂_ν`, acting by left
/// multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Analytic,
    Antianalytic,
}

impl Variant {
    /// Sign carried by `d_ν` in the operator.
    pub fn sign(self, nu: usize) -> i64 {
        match self {
            Variant::Analytic => 1,
            Variant::Antianalytic if nu == 0 => 1,
            Variant::Antianalytic => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Analytic => "analytic",
            Variant::Antianalytic => "antianalytic",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `N×N` matrix of polynomials in the commuting symbols `d_0, …, d_{N-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicOperator {
    n: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl fmt::Debug for SymbolicOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.render() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl SymbolicOperator {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![vec![Polynomial::zero(n); n]; n],
        }
    }

    /// `p · I`.
    pub fn diagonal(n: usize, p: &Polynomial) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i][i] = p.clone();
        }
        m
    }

    /// `Σ_μ d_μ²`.
    pub fn laplacian_symbol(n: usize) -> Polynomial {
        let mut p = Polynomial::zero(n);
        for mu in 0..n {
            let mut e = vec![0; n];
            e[mu] = 2;
            p.add_term(e, rat(1));
        }
        p
    }

    /// First-order operator from `coef[ρ][σ][τ]`, the coefficient of `d_τ` in
    /// entry `(ρ, σ)`.
    pub fn first_order(n: usize, coef: impl Fn(usize, usize, usize) -> Rational) -> Self {
        let mut m = Self::zero(n);
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let c = coef(r, s, t);
                    if !c.is_zero() {
                        m.entries[r][s].add_term(unit_exps(n, t), c);
                    }
                }
            }
        }
        m
    }

    /// Recovers a first-order operator from a map that is linear in the
    /// jacobian `J[σ][τ] = ∂_τ U^σ`.
    pub fn probe(
        n: usize,
        residual: impl Fn(&LinearMap<Rational>) -> Result<Vec<Rational>>,
    ) -> Result<Self> {
        let mut cols = vec![vec![vec![Rational::zero(); n]; n]; n];
        for s in 0..n {
            for t in 0..n {
                let mut j = LinearMap::zero(n);
                j.set(s, t, rat(1));
                let r = residual(&j)?;
                if r.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: r.len(),
                    });
                }
                for (row, v) in r.into_iter().enumerate() {
                    cols[row][s][t] = v;
                }
            }
        }
        Ok(Self::first_order(n, |r, s, t| cols[r][s][t].clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row][col]
    }

    /// Coefficient of `d_τ` in entry `(ρ, σ)`.
    pub fn linear_coefficient(&self, row: usize, col: usize, tau: usize) -> Rational {
        self.entries[row][col].coefficient(&unit_exps(self.n, tau))
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Polynomial::zero(self.n);
                for k in 0..self.n {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// `(M U)^ρ = Σ_σ M[ρ][σ](∂) U^σ`.
    pub fn apply(&self, u: &ComponentPolynomial) -> Result<ComponentPolynomial> {
        if u.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: u.dim(),
            });
        }
        let mut out = Vec::with_capacity(self.n);
        for row in &self.entries {
            let mut acc = Polynomial::zero(self.n);
            for (entry, comp) in row.iter().zip(u.components()) {
                for (alpha, c) in entry.terms() {
                    acc = acc.add(&comp.derivative_multi(alpha).scale(c));
                }
            }
            out.push(acc);
        }
        ComponentPolynomial::new(out)
    }

    /// Applies a first-order operator to a jacobian.
    pub fn apply_jacobian<S: Scalar>(&self, j: &LinearMap<S>) -> Result<Vec<S>> {
        if j.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: j.dim(),
            });
        }
        let mut out = vec![S::zero(); self.n];
        for (r, row) in self.entries.iter().enumerate() {
            for (s, entry) in row.iter().enumerate() {
                for (alpha, c) in entry.terms() {
                    let degree: u32 = alpha.iter().sum();
                    if degree != 1 {
                        return Err(Error::UnsupportedForm {
                            form: format!("order-{degree} operator on a jacobian"),
                            n: self.n,
                        });
                    }
                    let t = alpha.iter().position(|&e| e == 1).expect("degree one");
                    out[r] = out[r].clone() + S::from_rational(c) * j.get(s, t).clone();
                }
            }
        }
        Ok(out)
    }

    /// Entries as `+d3`, `-d7`, `0`, or a general polynomial in `d`.
    pub fn render(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(render_entry).collect())
            .collect()
    }
}

fn unit_exps(n: usize, t: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[t] = 1;
    e
}

fn render_entry(p: &Polynomial) -> String {
    let terms: Vec<_> = p.terms().collect();
    if let [(alpha, c)] = terms.as_slice() {
        if alpha.iter().sum::<u32>() == 1 && (c.is_one() || (-(*c).clone()).is_one()) {
            let t = alpha.iter().position(|&e| e == 1).expect("degree one");
            let sign = if c.is_one() { '+' } else { '-' };
            return format!("{sign}d{t}");
        }
    }
    p.render("d")
}

fn check_dirac_dim(n: usize) -> Result<Algebra> {
    if ![2, 4, 8].contains(&n) {
        return Err(Error::UnsupportedDimension {
            got: n,
            allowed: "2, 4, 8",
        });
    }
    structure_tensor(n)
}

/// Entry `(ρ, σ) = Σ_ν c^ρ_{νσ} s_ν d_ν`: column `σ` of left multiplication by
/// the operator-valued element.
pub fn dirac_matrix_for(algebra: &Algebra, variant: Variant) -> SymbolicOperator {
    SymbolicOperator::first_order(algebra.dim(), |r, s, t| {
        algebra.c(r, t, s) * rat(variant.sign(t))
    })
}

pub fn dirac_matrix(n: usize, variant: Variant) -> Result<SymbolicOperator> {
    Ok(dirac_matrix_for(&check_dirac_dim(n)?, variant))
}

/// The analytic operator rebuilt through the rearrangement
/// `c^ρ_{τσ} d_τ = 2 δ_{σ0} d_ρ − c^τ_{ρσ} d_τ`.
pub fn dirac_matrix_rearranged(algebra: &Algebra) -> SymbolicOperator {
    SymbolicOperator::first_order(algebra.dim(), |r, s, t| {
        let two = if s == 0 && t == r { rat(2) } else { rat(0) };
        two - algebra.c(t, r, s)
    })
}

/// Both compositions of the two Dirac operators equal `(Σ d_μ²) I`.
pub fn factorization_check(n: usize) -> Result<bool> {
    Ok(factorization_holds(&check_dirac_dim(n)?))
}

pub fn factorization_holds(alg: &Algebra) -> bool {
    let n = alg.dim();
    let a = dirac_matrix_for(alg, Variant::Analytic);
    let b = dirac_matrix_for(alg, Variant::Antianalytic);
    let lap = SymbolicOperator::diagonal(n, &SymbolicOperator::laplacian_symbol(n));
    a.compose(&b).is_ok_and(|ab| ab == lap) && b.compose(&a).is_ok_and(|ba| ba == lap)
}

/// `c^ν_{σμ} ∂_σ ≡ 2 δ_{μ0} ∂_ν − c^σ_{νμ} ∂_σ` as an identity of coefficient
/// tensors, for every `(μ, ν)` and every symbol.
pub fn lemma2_identity_check(n: usize) -> Result<bool> {
    let alg = check_dirac_dim(n)?;
    Ok(contraction_violations(&alg).is_empty())
}

/// `(μ, ν, σ)` where the identity fails.
pub fn contraction_violations(alg: &Algebra) -> Vec<(usize, usize, usize)> {
    let n = alg.dim();
    let mut bad = Vec::new();
    for mu in 0..n {
        for nu in 0..n {
            for sigma in 0..n {
                let lhs = alg.c(nu, sigma, mu).clone();
                let delta = if mu == 0 && sigma == nu {
                    rat(2)
                } else {
                    rat(0)
                };
                let rhs = delta - alg.c(sigma, nu, mu);
                if lhs != rhs {
                    bad.push((mu, nu, sigma));
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::expr::{lower, parse};

    fn rows(m: &SymbolicOperator) -> Vec<Vec<String>> {
        m.render()
    }

    fn printed(rows: &[&str]) -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.split_whitespace().map(String::from).collect())
            .collect()
    }

    #[test]
    fn complex_matrix() {
        let m = dirac_matrix(2, Variant::Analytic).unwrap();
        assert_eq!(rows(&m), printed(&["+d0 -d1", "+d1 +d0"]));
    }

    #[test]
    fn octonion_real_form_matches_printed_array() {
        let m = dirac_matrix(8, Variant::Antianalytic).unwrap();
        let expected = printed(&[
            "+d0 +d1 +d2 +d3 +d4 +d5 +d6 +d7",
            "-d1 +d0 +d3 -d2 +d5 -d4 -d7 +d6",
            "-d2 -d3 +d0 +d1 +d6 +d7 -d4 -d5",
            "-d3 +d2 -d1 +d0 +d7 -d6 +d5 -d4",
            "-d4 -d5 -d6 -d7 +d0 +d1 +d2 +d3",
            "-d5 +d4 -d7 +d6 -d1 +d0 -d3 +d2",
            "-d6 +d7 +d4 -d5 -d2 +d3 +d0 -d1",
            "-d7 -d6 +d5 +d4 -d3 -d2 +d1 +d0",
        ]);
        assert_eq!(rows(&m), expected);
    }

    #[test]
    fn quaternion_real_form() {
        let m = dirac_matrix(4, Variant::Analytic).unwrap();
        assert_eq!(m.render()[1], printed(&["+d1 +d0 -d3 +d2"])[0]);
        // The printed array has +d2 at (3, 1); the derived entry is -d2.
        let expected = printed(&[
            "+d0 -d1 -d2 -d3",
            "+d1 +d0 -d3 +d2",
            "+d2 +d3 +d0 -d1",
            "+d3 -d2 +d1 +d0",
        ]);
        assert_eq!(rows(&m), expected);
    }

    #[test]
    fn printed_quaternion_array_fails_factorization() {
        let mut m = dirac_matrix(4, Variant::Analytic).unwrap();
        m.entries[3][1] = m.entries[3][1].neg();
        let b = dirac_matrix(4, Variant::Antianalytic).unwrap();
        let lap = SymbolicOperator::diagonal(4, &SymbolicOperator::laplacian_symbol(4));
        assert_ne!(m.compose(&b).unwrap(), lap);
    }

    #[test]
    fn factorization_and_contraction() {
        for n in [2, 4, 8] {
            assert!(factorization_check(n).unwrap(), "N={n}");
            assert!(lemma2_identity_check(n).unwrap(), "N={n}");
            let alg = structure_tensor(n).unwrap();
            assert_eq!(
                dirac_matrix_rearranged(&alg),
                dirac_matrix_for(&alg, Variant::Analytic)
            );
        }
        assert!(factorization_check(3).is_err());
        assert!(lemma2_identity_check(1).is_err());
    }

    #[test]
    fn mutated_tables() {
        // A flipped triple keeps unit, metric and antisymmetry, so the
        // rearrangement survives while the factorization does not.
        let flipped = structure_tensor(8)
            .unwrap()
            .with_flipped_triple(1, 2, 3)
            .unwrap();
        assert!(contraction_violations(&flipped).is_empty());
        let a = dirac_matrix_for(&flipped, Variant::Analytic);
        let b = dirac_matrix_for(&flipped, Variant::Antianalytic);
        let lap = SymbolicOperator::diagonal(8, &SymbolicOperator::laplacian_symbol(8));
        assert_ne!(a.compose(&b).unwrap(), lap);

        // Dropping e1 e2 = e3 alone breaks antisymmetry.
        let mut c = structure_tensor(8).unwrap().constants().to_vec();
        c[(3 * 8 + 1) * 8 + 2] = rat(0);
        let broken = AlgebraSpec::from_constants(8, c, crate::algebra::Convention::Custom).unwrap();
        assert!(contraction_violations(&broken).contains(&(2, 3, 1)));
    }

    #[test]
    fn application_agrees_with_jacobian_route() {
        let alg = structure_tensor(8).unwrap();
        let u = lower(&parse("x*(x*e5) + conj(x)*e2").unwrap(), &alg).unwrap();
        let m = dirac_matrix_for(&alg, Variant::Antianalytic);
        let sym = m.apply(&u).unwrap();
        for p in crate::sample::sample_points(8, 10, 1) {
            let j = LinearMap::jacobian_at(&u, &p).unwrap();
            assert_eq!(sym.eval(&p).unwrap(), m.apply_jacobian(&j).unwrap());
        }
    }

    #[test]
    fn probing_recovers_the_operator() {
        let m = dirac_matrix(4, Variant::Antianalytic).unwrap();
        let p = SymbolicOperator::probe(4, |j| m.apply_jacobian(j)).unwrap();
        assert_eq!(p, m);
    }
}
