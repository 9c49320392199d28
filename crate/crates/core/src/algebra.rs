//! Unital algebras defined by structure constants, `e_μ e_ν = c^σ_{μν} e_σ`,
//! and the elements living in them.
//!
//! The normative tables for ℝ, ℂ, ℍ and 𝕆 come from [`structure_tensor`]. The
//! imaginary block of each is `c^σ_{ij} = -δ_{ij} δ^σ_0 + ε_{ijk} δ^σ_k`, with ε
//! the totally antisymmetric extension of a list of positive triples.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample;
use crate::scalar::{rat, Field, Rational, Scalar};

pub type Algebra = Arc<AlgebraSpec>;

/// Positive ε triples of the octonion table.
pub const OCTONION_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (3, 4, 7),
    (5, 3, 6),
    (7, 2, 5),
];

pub const QUATERNION_TRIPLES: [(usize, usize, usize); 1] = [(1, 2, 3)];

/// The alternate rule list printed under the Fano-plane figure:
/// e1e3=e2, e2e6=e4, e4e5=e1, e3e6=e5, e1e7=e6, e2e7=e5, e4e7=e3.
pub const FANO_CAPTION_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 3, 2),
    (2, 6, 4),
    (4, 5, 1),
    (3, 6, 5),
    (1, 7, 6),
    (2, 7, 5),
    (4, 7, 3),
];

/// Where a structure tensor came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Convention {
    /// Built from the positive ε triples of the normative table.
    Normative,
    /// Built from an arbitrary list of positive triples.
    Triples { label: String },
    /// (x₁,y₁)(x₂,y₂) = (x₁x₂ + α ȳ₂y₁, y₂x₁ + y₁x̄₂) over a base of dimension `base_dim`.
    Doubled { base_dim: usize, alpha: String },
    /// Read from a structure-tensor file or assembled by hand.
    Custom,
}

#[derive(Debug, Clone)]
struct Term {
    out: usize,
    left: usize,
    right: usize,
    coef: Rational,
    unit: Option<bool>,
}

impl Term {
    fn apply<S: Scalar>(&self, product: S) -> S {
        match self.unit {
            Some(true) => product,
            Some(false) => -product,
            None => S::from_rational(&self.coef) * product,
        }
    }
}

/// Dimension plus the rank-3 structure tensor `c[σ][μ][ν]`.
#[derive(Clone)]
pub struct AlgebraSpec {
    dim: usize,
    constants: Vec<Rational>,
    terms: Vec<Term>,
    convention: Convention,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constants == other.constants
    }
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("dim", &self.dim)
            .field("convention", &self.convention)
            .field("nonzero", &self.terms.len())
            .finish()
    }
}

/// A signed ε triple `(i, j, k, sign)` with `i < j < k` and `sign = ε_{ijk}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedTriple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub sign: i8,
}

/// Diagonal metric `g = diag(+1, -1, …, -1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    g: Vec<i8>,
}

impl Metric {
    pub fn new(dim: usize) -> Self {
        let g = (0..dim).map(|mu| if mu == 0 { 1 } else { -1 }).collect();
        Self { g }
    }

    pub fn g(&self, mu: usize) -> i8 {
        self.g[mu]
    }

    pub fn entry(&self, mu: usize, nu: usize) -> i8 {
        if mu == nu {
            self.g[mu]
        } else {
            0
        }
    }

    pub fn diagonal(&self) -> &[i8] {
        &self.g
    }
}

const ALLOWED: &str = "1, 2, 4, 8";

fn check_dim(n: usize) -> Result<()> {
    match n {
        1 | 2 | 4 | 8 => Ok(()),
        got => Err(Error::UnsupportedDimension {
            got,
            allowed: ALLOWED,
        }),
    }
}

/// Sign of the permutation taking `(a, b, c)` to the reference `(i, j, k)`, or
/// `None` when the two are not permutations of each other.
fn permutation_sign(reference: (usize, usize, usize), idx: (usize, usize, usize)) -> Option<i8> {
    let (i, j, k) = reference;
    let cyclic = [(i, j, k), (j, k, i), (k, i, j)];
    let anti = [(j, i, k), (i, k, j), (k, j, i)];
    if cyclic.contains(&idx) {
        Some(1)
    } else if anti.contains(&idx) {
        Some(-1)
    } else {
        None
    }
}

/// The normative structure tensor for dimension `n ∈ {1, 2, 4, 8}`.
pub fn structure_tensor(n: usize) -> Result<Algebra> {
    check_dim(n)?;
    let triples: &[(usize, usize, usize)] = match n {
        8 => &OCTONION_TRIPLES,
        4 => &QUATERNION_TRIPLES,
        _ => &[],
    };
    AlgebraSpec::build_from_triples(n, triples, Convention::Normative).map(Arc::new)
}

impl AlgebraSpec {
    /// Builds `c` from positive ε triples, antisymmetrized over all index
    /// permutations; unlisted components are zero.
    pub fn from_triples(
        n: usize,
        triples: &[(usize, usize, usize)],
        label: &str,
    ) -> Result<Algebra> {
        check_dim(n)?;
        Self::build_from_triples(
            n,
            triples,
            Convention::Triples {
                label: label.to_string(),
            },
        )
        .map(Arc::new)
    }

    fn build_from_triples(
        n: usize,
        triples: &[(usize, usize, usize)],
        convention: Convention,
    ) -> Result<Self> {
        let mut constants = vec![Rational::zero(); n * n * n];
        let idx = |s: usize, m: usize, v: usize| (s * n + m) * n + v;
        for mu in 0..n {
            constants[idx(mu, 0, mu)] = rat(1);
            constants[idx(mu, mu, 0)] = rat(1);
        }
        for i in 1..n {
            constants[idx(0, i, i)] = rat(-1);
        }
        let mut seen = BTreeSet::new();
        for &(i, j, k) in triples {
            let set = [i, j, k];
            if set.iter().any(|&x| x == 0 || x >= n) || i == j || j == k || i == k {
                return Err(Error::InvalidStructure(format!(
                    "triple ({i},{j},{k}) is not three distinct imaginary indices below {n}"
                )));
            }
            let mut sorted = set;
            sorted.sort_unstable();
            if !seen.insert(sorted) {
                return Err(Error::InvalidStructure(format!(
                    "triple ({i},{j},{k}) listed twice"
                )));
            }
            for a in set {
                for b in set {
                    for c in set {
                        if let Some(s) = permutation_sign((i, j, k), (a, b, c)) {
                            constants[idx(c, a, b)] = rat(s as i64);
                        }
                    }
                }
            }
        }
        Ok(Self::assemble(n, constants, convention))
    }

    /// Wraps an explicit tensor laid out as `c[(σ·n + μ)·n + ν]`.
    pub fn from_constants(
        n: usize,
        constants: Vec<Rational>,
        convention: Convention,
    ) -> Result<Algebra> {
        if n == 0 || constants.len() != n * n * n {
            return Err(Error::InvalidStructure(format!(
                "expected {} constants for dimension {n}, got {}",
                n * n * n,
                constants.len()
            )));
        }
        Ok(Arc::new(Self::assemble(n, constants, convention)))
    }

    fn assemble(dim: usize, constants: Vec<Rational>, convention: Convention) -> Self {
        let mut terms = Vec::new();
        for out in 0..dim {
            for left in 0..dim {
                for right in 0..dim {
                    let coef = &constants[(out * dim + left) * dim + right];
                    if coef.is_zero() {
                        continue;
                    }
                    let unit = if coef.is_one() {
                        Some(true)
                    } else if (-coef).is_one() {
                        Some(false)
                    } else {
                        None
                    };
                    terms.push(Term {
                        out,
                        left,
                        right,
                        coef: coef.clone(),
                        unit,
                    });
                }
            }
        }
        Self {
            dim,
            constants,
            terms,
            convention,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn convention(&self) -> &Convention {
        &self.convention
    }

    /// `c^σ_{μν}`.
    pub fn c(&self, sigma: usize, mu: usize, nu: usize) -> &Rational {
        &self.constants[(sigma * self.dim + mu) * self.dim + nu]
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    pub fn metric(&self) -> Metric {
        Metric::new(self.dim)
    }

    /// Nonzero constants as `(σ, μ, ν, c)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        self.terms.iter().map(|t| (t.out, t.left, t.right, &t.coef))
    }

    /// ε read back from the imaginary block: `ε_{ijk} = c^k_{ij}`, one entry per
    /// unordered triple of imaginary indices.
    pub fn epsilon(&self) -> Vec<SignedTriple> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 1..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = self.c(k, i, j);
                    if v.is_zero() {
                        continue;
                    }
                    let sign = if v.is_one() { 1 } else { -1 };
                    out.push(SignedTriple { i, j, k, sign });
                }
            }
        }
        out
    }

    /// ε triples in their positive orientation `(i, j, k)` with `e_i e_j = e_k`.
    pub fn positive_triples(&self) -> Vec<(usize, usize, usize)> {
        self.epsilon()
            .into_iter()
            .map(|t| {
                if t.sign > 0 {
                    (t.i, t.j, t.k)
                } else {
                    (t.i, t.k, t.j)
                }
            })
            .collect()
    }

    pub fn is_unital(&self) -> bool {
        (0..self.dim).all(|s| {
            (0..self.dim).all(|m| {
                let expect = if s == m { rat(1) } else { rat(0) };
                *self.c(s, 0, m) == expect && *self.c(s, m, 0) == expect
            })
        })
    }

    /// Checks the tensor identities satisfied by every composition-algebra
    /// table: unit row and column, `c^0_{μν} = g_{μν}`, `c^σ_{σ0} = N`,
    /// `c^σ_{σk} = 0`, antisymmetry of the imaginary block, and
    /// `c^σ_{μν} g_{σρ} = c^σ_{ρμ} g_{σν}`. Returns every violation found.
    pub fn structure_violations(&self) -> Vec<String> {
        let n = self.dim;
        let g = self.metric();
        let mut v = Vec::new();
        if !self.is_unital() {
            v.push("e0 is not a two-sided unit".to_string());
        }
        for mu in 0..n {
            for nu in 0..n {
                if *self.c(0, mu, nu) != rat(g.entry(mu, nu) as i64) {
                    v.push(format!("c^0_{{{mu}{nu}}} != g_{{{mu}{nu}}}"));
                }
            }
        }
        let trace0: Rational = (0..n).map(|s| self.c(s, s, 0).clone()).sum();
        if trace0 != rat(n as i64) {
            v.push(format!("c^s_{{s0}} = {trace0}, expected {n}"));
        }
        for k in 1..n {
            let t: Rational = (0..n).map(|s| self.c(s, s, k).clone()).sum();
            if !t.is_zero() {
                v.push(format!("c^s_{{s{k}}} = {t}, expected 0"));
            }
        }
        for k in 1..n {
            for i in 1..n {
                for j in 1..n {
                    if *self.c(k, i, j) != -self.c(k, j, i) {
                        v.push(format!("c^{k}_{{{i}{j}}} is not antisymmetric"));
                    }
                }
            }
        }
        for mu in 0..n {
            for nu in 0..n {
                for rho in 0..n {
                    let lhs = self.c(rho, mu, nu) * rat(g.g(rho) as i64);
                    let rhs = self.c(nu, rho, mu) * rat(g.g(nu) as i64);
                    if lhs != rhs {
                        v.push(format!(
                            "metric symmetry fails at (rho,mu,nu)=({rho},{mu},{nu})"
                        ));
                    }
                }
            }
        }
        v
    }

    /// `(ab)^σ = c^σ_{μν} a^μ b^ν` on raw coefficient slices.
    pub fn multiply_coeffs<S: Scalar>(&self, a: &[S], b: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for t in &self.terms {
            if a[t.left].is_zero() || b[t.right].is_zero() {
                continue;
            }
            let p = a[t.left].clone() * b[t.right].clone();
            out[t.out] = out[t.out].clone() + t.apply(p);
        }
        out
    }

    /// Mutation helper: the same table with the `k` component of `e_i e_j`
    /// (and its antisymmetric partners) negated.
    pub fn with_flipped_triple(&self, i: usize, j: usize, k: usize) -> Result<Algebra> {
        let n = self.dim;
        if [i, j, k].iter().any(|&x| x == 0 || x >= n) {
            return Err(Error::IndexOutOfRange {
                index: i.max(j).max(k),
                dim: n,
            });
        }
        let mut constants = self.constants.clone();
        for a in [i, j, k] {
            for b in [i, j, k] {
                for c in [i, j, k] {
                    if permutation_sign((i, j, k), (a, b, c)).is_some() {
                        let e = &mut constants[(c * n + a) * n + b];
                        *e = -e.clone();
                    }
                }
            }
        }
        Self::from_constants(n, constants, Convention::Custom)
    }

    pub fn to_file(&self) -> Result<StructureFile> {
        let n = self.dim;
        let mut c = vec![vec![vec![0i64; n]; n]; n];
        for s in 0..n {
            for m in 0..n {
                for v in 0..n {
                    let x = self.c(s, m, v);
                    if !x.denom().is_one() {
                        return Err(Error::InvalidStructure(format!(
                            "constant c^{s}_{{{m}{v}}} = {x} is not an integer"
                        )));
                    }
                    c[s][m][v] = x.numer().try_into().map_err(|_| {
                        Error::InvalidStructure(format!("constant c^{s}_{{{m}{v}}} overflows"))
                    })?;
                }
            }
        }
        Ok(StructureFile { n, c })
    }
}

/// On-disk structure tensor: `{"N": int, "c": [[[int]]]}` indexed `c[σ][μ][ν]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub c: Vec<Vec<Vec<i64>>>,
}

impl StructureFile {
    pub fn into_algebra(self) -> Result<Algebra> {
        let n = self.n;
        let shape_ok = self.c.len() == n
            && self
                .c
                .iter()
                .all(|m| m.len() == n && m.iter().all(|r| r.len() == n));
        if !shape_ok {
            return Err(Error::InvalidStructure(format!(
                "tensor shape is not {n}x{n}x{n}"
            )));
        }
        let constants = self.c.into_iter().flatten().flatten().map(rat).collect();
        AlgebraSpec::from_constants(n, constants, Convention::Custom)
    }

    pub fn from_json(text: &str) -> Result<Algebra> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidStructure(e.to_string()))?;
        file.into_algebra()
    }
}

/// `x = x^μ e_μ` over a scalar field.
#[derive(Clone)]
pub struct Element<S: Scalar> {
    algebra: Algebra,
    coeffs: Vec<S>,
}

impl<S: Scalar> fmt::Debug for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Element").field(&self.coeffs).finish()
    }
}

impl<S: Scalar> PartialEq for Element<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> Element<S> {
    pub fn new(algebra: &Algebra, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: coeffs.len(),
            });
        }
        Ok(Self {
            algebra: algebra.clone(),
            coeffs,
        })
    }

    pub fn zero(algebra: &Algebra) -> Self {
        Self {
            algebra: algebra.clone(),
            coeffs: vec![S::zero(); algebra.dim()],
        }
    }

    pub fn one(algebra: &Algebra) -> Self {
        Self::basis(algebra, 0).expect("e0 exists in every algebra")
    }

    pub fn basis(algebra: &Algebra, mu: usize) -> Result<Self> {
        let dim = algebra.dim();
        if mu >= dim {
            return Err(Error::IndexOutOfRange { index: mu, dim });
        }
        let mut coeffs = vec![S::zero(); dim];
        coeffs[mu] = S::one();
        Ok(Self {
            algebra: algebra.clone(),
            coeffs,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn field(&self) -> Field {
        S::FIELD
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            algebra: self.algebra.clone(),
            coeffs: self.algebra.multiply_coeffs(&self.coeffs, &other.coeffs),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        Self {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Self {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|a| a.clone() * k.clone()).collect(),
        }
    }

    /// Flips the sign of every imaginary coefficient.
    pub fn conjugate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mu, a)| if mu == 0 { a.clone() } else { -a.clone() })
            .collect();
        Self {
            algebra: self.algebra.clone(),
            coeffs,
        }
    }

    /// `Tr a = N a^0`.
    pub fn trace(&self) -> S {
        S::from_i64(self.dim() as i64) * self.coeffs[0].clone()
    }

    /// `<a|b> = Tr(ā b) / N`.
    pub fn inner(&self, other: &Self) -> Result<S> {
        let prod = self.conjugate().multiply(other)?;
        Ok(prod.trace() / S::from_i64(self.dim() as i64))
    }

    /// `Σ_μ a^μ b^μ`, the coefficient dot product.
    pub fn dot(&self, other: &Self) -> Result<S> {
        self.check(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    /// Recovers `x^μ` through `½(x ē_μ + e_μ x̄)`, whose only surviving component
    /// is the scalar one.
    pub fn coordinate(&self, mu: usize) -> Result<S> {
        let e = Self::basis(&self.algebra, mu)?;
        let w = self
            .multiply(&e.conjugate())?
            .try_add(&e.multiply(&self.conjugate())?)?;
        Ok(w.coeffs[0].half())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Element<T> {
        Element {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl Element<Rational> {
    pub fn from_ints(algebra: &Algebra, coeffs: &[i64]) -> Result<Self> {
        Self::new(algebra, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn to_f64(&self) -> Element<f64> {
        self.map(Scalar::to_f64)
    }
}

impl<S: Scalar> Add for &Element<S> {
    type Output = Element<S>;

    /// Panics when the operands live in different algebras.
    fn add(self, rhs: Self) -> Element<S> {
        self.try_add(rhs).expect("elements of one algebra")
    }
}

impl<S: Scalar> Sub for &Element<S> {
    type Output = Element<S>;

    fn sub(self, rhs: Self) -> Element<S> {
        self.try_sub(rhs).expect("elements of one algebra")
    }
}

impl<S: Scalar> Mul for &Element<S> {
    type Output = Element<S>;

    fn mul(self, rhs: Self) -> Element<S> {
        self.multiply(rhs).expect("elements of one algebra")
    }
}

impl<S: Scalar> Neg for &Element<S> {
    type Output = Element<S>;

    fn neg(self) -> Element<S> {
        self.scale(&-S::one())
    }
}

pub fn random_element<R: rand::Rng>(algebra: &Algebra, rng: &mut R) -> Element<Rational> {
    Element::new(algebra, sample::random_rationals(rng, algebra.dim())).expect("length matches")
}

/// Outcome of one identity family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub dim: usize,
    pub field: Field,
    pub seed: u64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn show(xs: &[&Element<Rational>]) -> String {
    xs.iter()
        .map(|x| {
            let parts: Vec<String> = x
                .coeffs()
                .iter()
                .map(crate::scalar::format_rational)
                .collect();
            format!("[{}]", parts.join(", "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Exact checks of the composition law, the basis anticommutator
/// `e_μ ē_ν + e_ν ē_μ = 2δ_{μν} e_0`, the Moufang identity `x(yz)x = (xy)(zx)`
/// and `Θ(Θ̄u) = (ΘΘ̄)u` on seeded random rational elements.
pub fn verify_algebra_identities(algebra: &Algebra, samples: usize, seed: u64) -> IdentityReport {
    let mut rng = sample::rng(seed);
    let mut checks = Vec::new();

    let mut comp = IdentityCheck {
        name: "composition".into(),
        cases: samples,
        passed: true,
        counterexample: None,
    };
    for _ in 0..samples {
        let x = random_element(algebra, &mut rng);
        let y = random_element(algebra, &mut rng);
        let xy = &x * &y;
        let lhs = xy.inner(&xy).expect("same algebra");
        let rhs = x.inner(&x).expect("same algebra") * y.inner(&y).expect("same algebra");
        if lhs != rhs && comp.passed {
            comp.passed = false;
            comp.counterexample = Some(show(&[&x, &y]));
        }
    }
    checks.push(comp);

    let n = algebra.dim();
    let mut anti = IdentityCheck {
        name: "anticommutator".into(),
        cases: n * n,
        passed: true,
        counterexample: None,
    };
    'outer: for mu in 0..n {
        for nu in 0..n {
            let a = Element::<Rational>::basis(algebra, mu).expect("in range");
            let b = Element::<Rational>::basis(algebra, nu).expect("in range");
            let lhs = &(&a * &b.conjugate()) + &(&b * &a.conjugate());
            let rhs = if mu == nu {
                Element::one(algebra).scale(&rat(2))
            } else {
                Element::zero(algebra)
            };
            if lhs != rhs {
                anti.passed = false;
                anti.counterexample = Some(format!("e{mu}, e{nu}"));
                break 'outer;
            }
        }
    }
    checks.push(anti);

    let mut moufang = IdentityCheck {
        name: "moufang".into(),
        cases: samples,
        passed: true,
        counterexample: None,
    };
    for _ in 0..samples {
        let x = random_element(algebra, &mut rng);
        let y = random_element(algebra, &mut rng);
        let z = random_element(algebra, &mut rng);
        let yz = &y * &z;
        let left_grouped = &(&x * &yz) * &x;
        let right_grouped = &x * &(&yz * &x);
        let rhs = &(&x * &y) * &(&z * &x);
        if (left_grouped != rhs || right_grouped != rhs) && moufang.passed {
            moufang.passed = false;
            moufang.counterexample = Some(show(&[&x, &y, &z]));
        }
    }
    checks.push(moufang);

    let mut conj_assoc = IdentityCheck {
        name: "conjugate-left-association".into(),
        cases: samples,
        passed: true,
        counterexample: None,
    };
    for _ in 0..samples {
        let t = random_element(algebra, &mut rng);
        let u = random_element(algebra, &mut rng);
        let lhs = &t * &(&t.conjugate() * &u);
        let rhs = &(&t * &t.conjugate()) * &u;
        if lhs != rhs && conj_assoc.passed {
            conj_assoc.passed = false;
            conj_assoc.counterexample = Some(show(&[&t, &u]));
        }
    }
    checks.push(conj_assoc);

    IdentityReport {
        dim: n,
        field: Field::ExactRational,
        seed,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(alg: &Algebra, mu: usize) -> Element<Rational> {
        Element::basis(alg, mu).unwrap()
    }

    #[test]
    fn printed_constants() {
        let o = structure_tensor(8).unwrap();
        assert_eq!(*o.c(3, 1, 2), rat(1));
        assert_eq!(*o.c(0, 1, 1), rat(-1));
        let c = structure_tensor(2).unwrap();
        assert_eq!(*c.c(1, 0, 1), rat(1));
    }

    #[test]
    fn unsupported_dimension_names_allowed_set() {
        let err = structure_tensor(3).unwrap_err();
        assert!(err.to_string().contains("1, 2, 4, 8"));
    }

    #[test]
    fn octonion_products() {
        let o = structure_tensor(8).unwrap();
        assert_eq!(&e(&o, 1) * &e(&o, 2), e(&o, 3));
        assert_eq!(&e(&o, 1) * &e(&o, 4), e(&o, 5));
        assert_eq!(&e(&o, 1) * &e(&o, 1), -&e(&o, 0));
        let mut rng = sample::rng(1);
        let x = random_element(&o, &mut rng);
        assert_eq!(&e(&o, 0) * &x, x);
        assert_eq!(&x * &e(&o, 0), x);
    }

    #[test]
    fn every_listed_triple_multiplies_forward() {
        let o = structure_tensor(8).unwrap();
        for (i, j, k) in OCTONION_TRIPLES {
            assert_eq!(&e(&o, i) * &e(&o, j), e(&o, k));
            assert_eq!(&e(&o, j) * &e(&o, i), -&e(&o, k));
        }
    }

    #[test]
    fn basis_closure() {
        for n in [1, 2, 4, 8] {
            let a = structure_tensor(n).unwrap();
            for mu in 0..n {
                for nu in 0..n {
                    let p = &e(&a, mu) * &e(&a, nu);
                    let nz: Vec<_> = p.coeffs().iter().filter(|c| !c.is_zero()).collect();
                    assert_eq!(nz.len(), 1);
                    assert_eq!(nz[0].abs_value(), rat(1));
                }
            }
        }
    }

    #[test]
    fn conjugate_trace_inner() {
        let o = structure_tensor(8).unwrap();
        assert_eq!(e(&o, 3).conjugate(), -&e(&o, 3));
        assert_eq!(e(&o, 0).conjugate(), e(&o, 0));
        assert_eq!(e(&o, 0).trace(), rat(8));
        assert_eq!(e(&o, 5).trace(), rat(0));
        let x = &e(&o, 0).scale(&rat(2)) + &e(&o, 1).scale(&rat(3));
        assert_eq!(x.trace(), rat(16));
        for mu in 0..8 {
            for nu in 0..8 {
                let want = if mu == nu { rat(1) } else { rat(0) };
                assert_eq!(e(&o, mu).inner(&e(&o, nu)).unwrap(), want);
            }
        }
    }

    #[test]
    fn coordinate_extraction() {
        let o = structure_tensor(8).unwrap();
        let x = Element::from_ints(&o, &[2, 0, 0, 0, 0, 3, 0, 0]).unwrap();
        assert_eq!(x.coordinate(5).unwrap(), rat(3));
        assert_eq!(e(&o, 0).coordinate(0).unwrap(), rat(1));
        assert!(matches!(
            x.coordinate(8),
            Err(Error::IndexOutOfRange { .. })
        ));
        let mut rng = sample::rng(5);
        for n in [2, 4, 8] {
            let a = structure_tensor(n).unwrap();
            for _ in 0..100 {
                let x = random_element(&a, &mut rng);
                for mu in 0..n {
                    assert_eq!(x.coordinate(mu).unwrap(), x.coeffs()[mu]);
                }
            }
        }
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let o = structure_tensor(8).unwrap();
        let q = structure_tensor(4).unwrap();
        assert_eq!(e(&o, 1).multiply(&e(&q, 1)), Err(Error::AlgebraMismatch));
        let fano = AlgebraSpec::from_triples(8, &FANO_CAPTION_TRIPLES, "fano").unwrap();
        assert_eq!(e(&o, 1).inner(&e(&fano, 1)), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn structure_identities_hold() {
        for n in [1, 2, 4, 8] {
            let a = structure_tensor(n).unwrap();
            assert!(
                a.structure_violations().is_empty(),
                "{n}: {:?}",
                a.structure_violations()
            );
        }
    }

    #[test]
    fn epsilon_readback() {
        let o = structure_tensor(8).unwrap();
        let mut pos = o.positive_triples();
        pos.sort();
        let mut want: Vec<_> = vec![
            (1, 2, 3),
            (1, 4, 5),
            (1, 7, 6),
            (2, 4, 6),
            (3, 4, 7),
            (3, 6, 5),
            (2, 5, 7),
        ];
        want.sort();
        assert_eq!(pos, want);
        assert_eq!(
            structure_tensor(4).unwrap().epsilon(),
            vec![SignedTriple {
                i: 1,
                j: 2,
                k: 3,
                sign: 1
            }]
        );
        assert!(structure_tensor(2).unwrap().epsilon().is_empty());
    }

    #[test]
    fn identities_on_normative_tables() {
        for n in [1, 2, 4, 8] {
            let r = verify_algebra_identities(&structure_tensor(n).unwrap(), 100, 42);
            assert!(r.all_passed(), "{n}: {r:?}");
        }
    }

    #[test]
    fn flipped_triple_breaks_composition() {
        let o = structure_tensor(8).unwrap();
        let bad = o.with_flipped_triple(1, 4, 5).unwrap();
        let r = verify_algebra_identities(&bad, 100, 42);
        let comp = r.check("composition").unwrap();
        assert!(!comp.passed);
        assert!(comp.counterexample.is_some());
    }

    #[test]
    fn structure_file_round_trip() {
        let o = structure_tensor(8).unwrap();
        let json = serde_json::to_string(&o.to_file().unwrap()).unwrap();
        assert!(json.starts_with("{\"N\":8"));
        let back = StructureFile::from_json(&json).unwrap();
        assert_eq!(*back, *o);
        assert!(StructureFile::from_json("{\"N\":2,\"c\":[[[1]]]}").is_err());
    }

    #[test]
    fn trace_of_norm() {
        let mut rng = sample::rng(9);
        for n in [1, 2, 4, 8] {
            let a = structure_tensor(n).unwrap();
            let x = random_element(&a, &mut rng);
            let lhs = (&x * &x.conjugate()).trace();
            assert_eq!(lhs, rat(n as i64) * x.inner(&x).unwrap());
            assert_eq!(x.inner(&x).unwrap(), x.dot(&x).unwrap());
        }
    }
}
