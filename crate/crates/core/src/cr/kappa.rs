//! The κ family of systems, exact polynomial solution spaces, harmonicity, and
//! solution families assembled from half-dimension pieces.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::{structure_tensor, Algebra, Element};
use crate::error::{Error, Result};
use crate::expr::ComponentPolynomial;
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::sample::rng;
use crate::scalar::{rat, Rational, Scalar};

use super::linalg::{Rref, SparseRow};
use super::operator::{dirac_matrix_for, SymbolicOperator, Variant};

/// Entry `(μ, ν)` is `Σ_σ C^σ_{μν} d_σ − κ δ_{ν0} d_μ`.
pub fn kappa_operator(alg: &Algebra, kappa: &Rational) -> SymbolicOperator {
    SymbolicOperator::first_order(alg.dim(), |mu, nu, sigma| {
        let shift = if nu == 0 && sigma == mu {
            kappa.clone()
        } else {
            rat(0)
        };
        alg.c(sigma, mu, nu) - shift
    })
}

/// `C^σ_{μν} ∂_σ U^ν − κ ∂_μ U^0` as polynomials.
pub fn kappa_residual_symbolic(
    u: &ComponentPolynomial,
    alg: &Algebra,
    kappa: &Rational,
) -> Result<ComponentPolynomial> {
    kappa_operator(alg, kappa).apply(u)
}

/// The coefficient system of a first-order constant-coefficient operator on
/// one homogeneous degree.
#[derive(Debug, Clone)]
pub struct DegreeSystem {
    pub n: usize,
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub rref: Rref,
}

impl DegreeSystem {
    pub fn build(op: &SymbolicOperator, degree: u32) -> Result<Self> {
        let n = op.dim();
        let monomials = monomials_of_degree(n, degree);
        let mut equations: BTreeMap<(usize, Monomial), SparseRow> = BTreeMap::new();
        for sigma in 0..n {
            for (idx, m) in monomials.iter().enumerate() {
                let col = sigma * monomials.len() + idx;
                for rho in 0..n {
                    for (alpha, c) in op.entry(rho, sigma).terms() {
                        if alpha.iter().sum::<u32>() != 1 {
                            return Err(Error::UnsupportedForm {
                                form: "higher-order operator kernel".into(),
                                n,
                            });
                        }
                        let tau = alpha.iter().position(|&e| e == 1).expect("degree one");
                        if m[tau] == 0 {
                            continue;
                        }
                        let mut dm = m.clone();
                        dm[tau] -= 1;
                        let v = c * rat(m[tau] as i64);
                        let row = equations.entry((rho, dm)).or_default();
                        let e = row.entry(col).or_insert_with(Rational::zero);
                        *e += v;
                        if e.is_zero() {
                            row.remove(&col);
                        }
                    }
                }
            }
        }
        let ncols = n * monomials.len();
        Ok(Self {
            n,
            degree,
            rref: Rref::new(ncols, equations.into_values()),
            monomials,
        })
    }

    pub fn to_polynomial(&self, v: &SparseRow) -> ComponentPolynomial {
        let per = self.monomials.len();
        let mut comps = vec![Polynomial::zero(self.n); self.n];
        for (col, c) in v {
            comps[col / per].add_term(self.monomials[col % per].clone(), c.clone());
        }
        ComponentPolynomial::new(comps).expect("consistent dimensions")
    }

    pub fn kernel(&self) -> Vec<ComponentPolynomial> {
        self.rref
            .nullspace()
            .iter()
            .map(|v| self.to_polynomial(v))
            .collect()
    }

    pub fn kernel_dim(&self) -> usize {
        self.rref.ncols() - self.rref.rank()
    }
}

/// Exact basis of `{U : op U = 0, deg U ≤ degree}`, ordered by degree and then
/// by free coefficient.
pub fn operator_kernel(op: &SymbolicOperator, degree: u32) -> Result<Vec<ComponentPolynomial>> {
    let mut out = Vec::new();
    for d in 0..=degree {
        out.extend(DegreeSystem::build(op, d)?.kernel());
    }
    Ok(out)
}

pub fn solve_kappa_polynomials(
    n: usize,
    kappa: &Rational,
    degree: u32,
) -> Result<Vec<ComponentPolynomial>> {
    if ![2, 4, 8].contains(&n) {
        return Err(Error::UnsupportedDimension {
            got: n,
            allowed: "2, 4, 8",
        });
    }
    if degree > 4 {
        return Err(Error::UnsupportedForm {
            form: format!("degree {degree} kernel"),
            n,
        });
    }
    let alg = structure_tensor(n)?;
    operator_kernel(&kappa_operator(&alg, kappa), degree)
}

/// `Σ_μ ∂_μ∂_μ U` as polynomials.
pub fn laplacian(u: &ComponentPolynomial) -> ComponentPolynomial {
    let n = u.dim();
    u.map(|p| {
        let mut acc = Polynomial::zero(n);
        for mu in 0..n {
            acc = acc.add(&p.derivative(mu).derivative(mu));
        }
        acc
    })
}

pub fn laplacian_residual<S: Scalar>(
    u: &ComponentPolynomial,
    x: &Element<S>,
) -> Result<Element<S>> {
    laplacian(u).eval_at(x)
}

/// Factors attached to the map `(Tf)^i = f^i, (Tf)^0 = m f^0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TFactors {
    /// `(κ − 1)/(κ′ − 1)`, the factor that carries solutions across.
    pub derived: Rational,
    /// `(1 − κ)/(1 − κκ′)`; `None` when `κκ′ = 1`.
    pub printed: Option<Rational>,
    /// `(N − 1)/(2N − 1)`.
    pub remark: Rational,
}

pub fn t_factors(n: usize, kappa: &Rational, kappa_prime: &Rational) -> Result<TFactors> {
    let one = Rational::one();
    if *kappa_prime == one {
        return Err(Error::DegenerateKappa);
    }
    let denom = one.clone() - kappa * kappa_prime;
    let printed = (!denom.is_zero()).then(|| (one.clone() - kappa) / denom);
    let n = rat(n as i64);
    Ok(TFactors {
        derived: (kappa - &one) / (kappa_prime - &one),
        printed,
        remark: (n.clone() - rat(1)) / (rat(2) * n - rat(1)),
    })
}

/// Rescales the scalar component by the derived factor. For `κ = 1` the factor
/// is zero.
pub fn t_map(
    u: &ComponentPolynomial,
    kappa: &Rational,
    kappa_prime: &Rational,
) -> Result<(ComponentPolynomial, TFactors)> {
    let f = t_factors(u.dim(), kappa, kappa_prime)?;
    let mut comps = u.components().to_vec();
    comps[0] = comps[0].scale(&f.derived);
    Ok((ComponentPolynomial::new(comps)?, f))
}

#[derive(Debug, Clone)]
pub struct Family {
    pub functions: Vec<ComponentPolynomial>,
    pub discarded: usize,
    /// Variants of the `a` and `b` halves in `U = a + bE`.
    pub pairing: (Variant, Variant),
}

/// The half-dimension variants that produce solutions of `target`: the first
/// half always matches `target`, the second half is always antianalytic.
pub fn family_pairing(target: Variant) -> (Variant, Variant) {
    (target, Variant::Antianalytic)
}

fn random_combination(basis: &[ComponentPolynomial], rng: &mut impl Rng) -> ComponentPolynomial {
    let n = basis[0].dim();
    let mut acc = ComponentPolynomial::zero(n);
    for _ in 0..3 {
        let f = &basis[rng.gen_range(0..basis.len())];
        let k = rat(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
        acc = acc.add(&f.scale(&k)).expect("same dimension");
    }
    acc
}

/// `U = a(x_0..x_{h-1}) + b(x_h..x_{N-1}) E` from half-dimension kernels.
pub fn assemble_pair(a: &ComponentPolynomial, b: &ComponentPolynomial) -> ComponentPolynomial {
    let h = a.dim();
    let n = 2 * h;
    let comps = a
        .components()
        .iter()
        .map(|p| p.embed(n, 0))
        .chain(b.components().iter().map(|p| p.embed(n, h)))
        .collect();
    ComponentPolynomial::new(comps).expect("consistent dimensions")
}

/// Random solutions of the `target` real form built through the doubling
/// split, each verified exactly before it is kept.
pub fn generate_family(
    n: usize,
    count: usize,
    seed: u64,
    target: Variant,
    pairing: (Variant, Variant),
) -> Result<Family> {
    if n != 4 && n != 8 {
        return Err(Error::UnsupportedDimension {
            got: n,
            allowed: "4, 8",
        });
    }
    let alg = structure_tensor(n)?;
    let half = structure_tensor(n / 2)?;
    let check = dirac_matrix_for(&alg, target);
    let mut out = Family {
        functions: Vec::new(),
        discarded: 0,
        pairing,
    };
    if count == 0 {
        return Ok(out);
    }
    let a_basis = operator_kernel(&dirac_matrix_for(&half, pairing.0), 2)?;
    let b_basis = operator_kernel(&dirac_matrix_for(&half, pairing.1), 2)?;
    let mut r = rng(seed);
    let max_attempts = count * 4 + 16;
    for _ in 0..max_attempts {
        if out.functions.len() == count {
            break;
        }
        let u = assemble_pair(
            &random_combination(&a_basis, &mut r),
            &random_combination(&b_basis, &mut r),
        );
        if check.apply(&u)?.is_zero() {
            out.functions.push(u);
        } else {
            out.discarded += 1;
        }
    }
    Ok(out)
}

pub fn generate_analytic_family(n: usize, count: usize, seed: u64) -> Result<Family> {
    generate_family(
        n,
        count,
        seed,
        Variant::Analytic,
        family_pairing(Variant::Analytic),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{lower, parse};

    fn poly(s: &str, n: usize) -> ComponentPolynomial {
        lower(&parse(s).unwrap(), &structure_tensor(n).unwrap()).unwrap()
    }

    fn in_span(basis: &[ComponentPolynomial], u: &ComponentPolynomial) -> bool {
        // Coordinates of a polynomial in the flattened coefficient space.
        let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        let flatten = |p: &ComponentPolynomial,
                       index: &mut BTreeMap<(usize, Monomial), usize>|
         -> SparseRow {
            let mut row = SparseRow::new();
            for (mu, c) in p.components().iter().enumerate() {
                for (m, v) in c.terms() {
                    let next = index.len();
                    let col = *index.entry((mu, m.clone())).or_insert(next);
                    row.insert(col, v.clone());
                }
            }
            row
        };
        let rows: Vec<SparseRow> = basis.iter().map(|b| flatten(b, &mut index)).collect();
        let target = flatten(u, &mut index);
        Rref::new(index.len(), rows).contains(&target)
    }

    #[test]
    fn complex_linear_solutions() {
        let basis = solve_kappa_polynomials(2, &rat(2), 1).unwrap();
        assert_eq!(basis.len(), 4);
        assert!(in_span(&basis, &poly("x", 2)));
        assert!(in_span(&basis, &poly("1", 2)));
        assert!(in_span(&basis, &poly("e1", 2)));
        assert!(!in_span(&basis, &poly("conj(x)", 2)));
    }

    #[test]
    fn identity_solves_the_trace_system() {
        for n in [2, 4, 8] {
            let alg = structure_tensor(n).unwrap();
            let k = rat(n as i64);
            assert!(kappa_residual_symbolic(&poly("x", n), &alg, &k)
                .unwrap()
                .is_zero());
            assert!(kappa_residual_symbolic(&poly("e1 + 3", n), &alg, &rat(7))
                .unwrap()
                .is_zero());
        }
        let basis = solve_kappa_polynomials(8, &rat(8), 1).unwrap();
        assert!(in_span(&basis, &poly("x", 8)));
    }

    #[test]
    fn kernel_members_are_annihilated() {
        let alg = structure_tensor(4).unwrap();
        for k in [rat(2), rat(4), rat(3)] {
            for u in solve_kappa_polynomials(4, &k, 2).unwrap() {
                assert!(kappa_residual_symbolic(&u, &alg, &k).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn squares_and_the_laplacian() {
        let alg = structure_tensor(8).unwrap();
        let sq = poly("x^2", 8);
        let mut r = rng(1);
        for _ in 0..5 {
            let x = crate::algebra::random_element(&alg, &mut r);
            let l = laplacian_residual(&sq, &x).unwrap();
            assert_eq!(l.coeffs()[0], rat(-12));
            assert!(l.coeffs()[1..].iter().all(|c| c.is_zero()));
        }
        assert!(laplacian(&poly("x*e3 + conj(x)", 8)).is_zero());
    }

    #[test]
    fn square_is_analytic_only_for_complex_numbers() {
        for n in [2, 4, 8] {
            let alg = structure_tensor(n).unwrap();
            let res = kappa_residual_symbolic(&poly("x^2", n), &alg, &rat(2)).unwrap();
            assert_eq!(res.is_zero(), n == 2, "N={n}");
        }
    }

    #[test]
    fn t_factor_values() {
        let f = t_factors(4, &rat(4), &rat(2)).unwrap();
        assert_eq!(f.derived, rat(3));
        assert_eq!(f.remark, crate::scalar::ratio(3, 7));
        assert_eq!(f.printed, Some(crate::scalar::ratio(3, 7)));
        assert_eq!(t_factors(4, &rat(5), &rat(5)).unwrap().derived, rat(1));
        assert_eq!(t_factors(4, &rat(1), &rat(3)).unwrap().derived, rat(0));
        assert_eq!(t_factors(4, &rat(1), &rat(1)), Err(Error::DegenerateKappa));
        assert_eq!(
            t_factors(2, &rat(2), &crate::scalar::ratio(1, 2))
                .unwrap()
                .printed,
            None
        );
    }

    #[test]
    fn t_map_carries_solutions() {
        for n in [2, 4, 8] {
            let alg = structure_tensor(n).unwrap();
            let nn = rat(n as i64);
            for (k, kp) in [(nn.clone(), rat(2)), (rat(2), nn.clone()), (rat(3), rat(5))] {
                for u in solve_kappa_polynomials(n, &k, 2).unwrap() {
                    let (image, _) = t_map(&u, &k, &kp).unwrap();
                    assert!(kappa_residual_symbolic(&image, &alg, &kp)
                        .unwrap()
                        .is_zero());
                }
            }
        }
    }

    #[test]
    fn family_pairings() {
        for n in [4, 8] {
            for target in [Variant::Analytic, Variant::Antianalytic] {
                for a in [Variant::Analytic, Variant::Antianalytic] {
                    for b in [Variant::Analytic, Variant::Antianalytic] {
                        let fam = generate_family(n, 6, 3, target, (a, b)).unwrap();
                        let works = (a, b) == family_pairing(target);
                        assert_eq!(fam.discarded == 0, works, "N={n} {target} ({a}, {b})");
                    }
                }
            }
        }
    }

    #[test]
    fn generated_functions() {
        let fam = generate_analytic_family(8, 10, 42).unwrap();
        assert_eq!(fam.functions.len(), 10);
        assert_eq!(fam.discarded, 0);
        let alg = structure_tensor(8).unwrap();
        let d = dirac_matrix_for(&alg, Variant::Analytic);
        for u in &fam.functions {
            assert!(d.apply(u).unwrap().is_zero());
            assert!(laplacian(u).is_zero());
        }
        assert!(generate_analytic_family(4, 0, 1)
            .unwrap()
            .functions
            .is_empty());
        assert!(generate_analytic_family(2, 1, 1).is_err());
    }
}
