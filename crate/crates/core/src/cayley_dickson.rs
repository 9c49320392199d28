//! The doubling construction `(A, α)` and a search for signed-permutation
//! isomorphisms between structure tensors.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraSpec, Convention, Element};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, rat, Rational, Scalar};

/// Base algebra plus the nonzero doubling parameter.
#[derive(Debug, Clone)]
pub struct DoublingSpec {
    pub base: Algebra,
    pub alpha: Rational,
}

impl DoublingSpec {
    pub fn new(base: Algebra, alpha: Rational) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        Ok(Self { base, alpha })
    }

    pub fn doubled_dim(&self) -> usize {
        2 * self.base.dim()
    }

    /// `(x₁,y₁)(x₂,y₂) = (x₁x₂ + α ȳ₂y₁, y₂x₁ + y₁x̄₂)` on coefficient vectors
    /// laid out as `[x | y]`.
    pub fn multiply_pairs<S: Scalar>(&self, a: &[S], b: &[S]) -> Vec<S> {
        let n = self.base.dim();
        let (x1, y1) = a.split_at(n);
        let (x2, y2) = b.split_at(n);
        let alpha = S::from_rational(&self.alpha);
        let conj = |v: &[S]| -> Vec<S> {
            v.iter()
                .enumerate()
                .map(|(i, c)| if i == 0 { c.clone() } else { -c.clone() })
                .collect()
        };
        let m = |p: &[S], q: &[S]| self.base.multiply_coeffs(p, q);
        let first: Vec<S> = m(x1, x2)
            .into_iter()
            .zip(m(&conj(y2), y1))
            .map(|(u, v)| u + alpha.clone() * v)
            .collect();
        let second: Vec<S> = m(y2, x1)
            .into_iter()
            .zip(m(y1, &conj(x2)))
            .map(|(u, v)| u + v)
            .collect();
        first.into_iter().chain(second).collect()
    }

    pub fn build(&self) -> Result<Algebra> {
        let n = self.base.dim();
        let d = 2 * n;
        let mut constants = vec![Rational::zero(); d * d * d];
        for mu in 0..d {
            for nu in 0..d {
                let mut a = vec![Rational::zero(); d];
                let mut b = vec![Rational::zero(); d];
                a[mu] = rat(1);
                b[nu] = rat(1);
                for (sigma, c) in self.multiply_pairs(&a, &b).into_iter().enumerate() {
                    constants[(sigma * d + mu) * d + nu] = c;
                }
            }
        }
        AlgebraSpec::from_constants(
            d,
            constants,
            Convention::Doubled {
                base_dim: n,
                alpha: format_rational(&self.alpha),
            },
        )
    }
}

/// Doubles `base` (dimension 1, 2 or 4) with parameter `alpha ≠ 0`.
///
/// Basis index `μ < n` is `(e_μ, 0)` and `n + μ` is `(0, e_μ)`. Conjugation in
/// the result is `(x̄, -y)`, which is the usual sign flip of every imaginary
/// coefficient in this basis.
pub fn double(base: &Algebra, alpha: &Rational) -> Result<Algebra> {
    match base.dim() {
        1 | 2 | 4 => {}
        got => {
            return Err(Error::UnsupportedDimension {
                got,
                allowed: "1, 2, 4",
            })
        }
    }
    if !base.is_unital() {
        return Err(Error::NotUnital);
    }
    DoublingSpec::new(base.clone(), alpha.clone())?.build()
}

/// A basis relabeling `e_μ ↦ sign_μ e_{perm(μ)}` fixing `e_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        let bijective = perm
            .iter()
            .all(|&p| p < n && !std::mem::replace(&mut seen[p], true));
        if signs.len() != n || !bijective || perm.first() != Some(&0) || signs.first() != Some(&1) {
            return Err(Error::InvalidStructure(
                "signed permutation must be a bijection fixing +e0".into(),
            ));
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidStructure("signs must be +1 or -1".into()));
        }
        Ok(Self { perm, signs })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Maps coefficients of an element of the source algebra into `target`.
    pub fn apply<S: Scalar>(&self, x: &Element<S>, target: &Algebra) -> Result<Element<S>> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        let mut out = vec![S::zero(); self.dim()];
        for (mu, c) in x.coeffs().iter().enumerate() {
            let v = if self.signs[mu] > 0 {
                c.clone()
            } else {
                -c.clone()
            };
            out[self.perm[mu]] = v;
        }
        Element::new(target, out)
    }

    /// `φ(e_μ e_ν) = φ(e_μ) φ(e_ν)` for every basis pair.
    pub fn is_homomorphism(&self, a: &Algebra, b: &Algebra) -> bool {
        let n = a.dim();
        if b.dim() != n || self.dim() != n {
            return false;
        }
        all_pairs_consistent(a, b, &self.perm, &self.signs, n)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (mu, (&p, &s)) in self.perm.iter().zip(&self.signs).enumerate() {
            if mu > 0 {
                writeln!(f)?;
            }
            write!(f, "e{mu} -> {}e{p}", if s > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

fn sign_rat(s: i8) -> Rational {
    rat(s as i64)
}

/// Checks every pair `(μ, ν)` among the first `k` assigned indices.
///
/// Where the product in `a` has all its support inside the assigned indices the
/// image must match exactly; otherwise the number of unassigned support
/// indices on each side must agree.
fn all_pairs_consistent(a: &Algebra, b: &Algebra, perm: &[usize], signs: &[i8], k: usize) -> bool {
    let n = a.dim();
    let mut assigned_image = vec![false; n];
    for &p in &perm[..k] {
        assigned_image[p] = true;
    }
    for mu in 0..k {
        for nu in 0..k {
            let smn = sign_rat(signs[mu] * signs[nu]);
            let (pm, pn) = (perm[mu], perm[nu]);
            for sigma in 0..k {
                let lhs = a.c(sigma, mu, nu) * sign_rat(signs[sigma]);
                let rhs = b.c(perm[sigma], pm, pn) * &smn;
                if lhs != rhs {
                    return false;
                }
            }
            let free_a = (k..n).filter(|&s| !a.c(s, mu, nu).is_zero()).count();
            let free_b = (0..n)
                .filter(|&t| !assigned_image[t] && !b.c(t, pm, pn).is_zero())
                .count();
            if free_a != free_b {
                return false;
            }
        }
    }
    true
}

/// Exhaustive search for a signed permutation `φ` fixing `e_0` with
/// `φ(xy) = φ(x)φ(y)`. Returns the lexicographically first match, ordered by
/// permutation and then by signs with `+` before `-`.
pub fn find_isomorphism(a: &Algebra, b: &Algebra) -> Result<Option<SignedPermutation>> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.dim(),
        });
    }
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n];
    used[0] = true;
    let seeds = vec![vec![1i8]];
    if !seeds
        .iter()
        .any(|s| all_pairs_consistent(a, b, &perm[..1], s, 1))
    {
        return Ok(None);
    }
    Ok(search(a, b, 1, &mut perm, &mut used, seeds))
}

fn search(
    a: &Algebra,
    b: &Algebra,
    k: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    signs: Vec<Vec<i8>>,
) -> Option<SignedPermutation> {
    let n = a.dim();
    if k == n {
        let best = signs.into_iter().min_by_key(|s| {
            s.iter()
                .map(|&x| if x > 0 { 0 } else { 1 })
                .collect::<Vec<u8>>()
        })?;
        return Some(SignedPermutation {
            perm: perm.clone(),
            signs: best,
        });
    }
    for t in 1..n {
        if used[t] {
            continue;
        }
        // e_k² and e_t² must carry the same scalar part up to the sign square
        if a.c(0, k, k) != b.c(0, t, t) {
            continue;
        }
        perm[k] = t;
        let mut next = Vec::new();
        for s in &signs {
            for sk in [1i8, -1] {
                let mut cand = s.clone();
                cand.push(sk);
                if all_pairs_consistent(a, b, &perm[..=k], &cand, k + 1) {
                    next.push(cand);
                }
            }
        }
        if next.is_empty() {
            continue;
        }
        used[t] = true;
        let found = search(a, b, k + 1, perm, used, next);
        used[t] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Result of comparing two labelings of the same algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reconciliation {
    pub label: String,
    pub mapping: Option<SignedPermutation>,
}

/// Compares the rule list printed under the Fano-plane figure with the
/// normative octonion table.
pub fn reconcile_fano_caption() -> Result<Reconciliation> {
    let normative = crate::algebra::structure_tensor(8)?;
    let caption =
        AlgebraSpec::from_triples(8, &crate::algebra::FANO_CAPTION_TRIPLES, "fano-caption")?;
    Ok(Reconciliation {
        label: "fano-caption".into(),
        mapping: find_isomorphism(&caption, &normative)?,
    })
}

/// Is `e_0` an identity and does `double` keep the pair unit `(e_0, 0)`?
pub fn doubled_unit_is_unit(doubled: &Algebra) -> bool {
    doubled.is_unital() && doubled.c(0, 0, 0).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{structure_tensor, verify_algebra_identities};
    use crate::scalar::ratio;

    fn real() -> Algebra {
        structure_tensor(1).unwrap()
    }

    #[test]
    fn doubling_chain_is_isomorphic_to_tables() {
        let mut base = real();
        for n in [2, 4, 8] {
            let d = double(&base, &rat(-1)).unwrap();
            assert_eq!(d.dim(), n);
            assert!(doubled_unit_is_unit(&d));
            let table = structure_tensor(n).unwrap();
            let phi = find_isomorphism(&d, &table).unwrap().expect("isomorphic");
            assert!(phi.is_homomorphism(&d, &table));
            base = table;
        }
    }

    #[test]
    fn doubled_real_is_the_complex_table() {
        let d = double(&real(), &rat(-1)).unwrap();
        assert_eq!(*d, *structure_tensor(2).unwrap());
        assert_eq!(
            find_isomorphism(&d, &structure_tensor(2).unwrap()).unwrap(),
            Some(SignedPermutation::identity(2))
        );
    }

    #[test]
    fn doubled_quaternions_match_octonion_table_exactly() {
        let d = double(&structure_tensor(4).unwrap(), &rat(-1)).unwrap();
        assert_eq!(*d, *structure_tensor(8).unwrap());
    }

    #[test]
    fn doubled_conjugation_on_pairs() {
        let q = structure_tensor(4).unwrap();
        let d = double(&q, &rat(-1)).unwrap();
        // (x, y) with x = 1 + 2e1, y = 3e2 + 4e0
        let v = Element::from_ints(&d, &[1, 2, 0, 0, 4, 0, 3, 0]).unwrap();
        let x = Element::from_ints(&q, &[1, 2, 0, 0]).unwrap().conjugate();
        let mut want: Vec<Rational> = x.into_coeffs();
        want.extend([rat(-4), rat(0), rat(-3), rat(0)]);
        assert_eq!(v.conjugate().into_coeffs(), want);
    }

    #[test]
    fn composition_holds_after_doubling() {
        let mut base = real();
        for _ in 0..3 {
            let d = double(&base, &rat(-1)).unwrap();
            assert!(verify_algebra_identities(&d, 50, 3).all_passed());
            base = d;
        }
    }

    #[test]
    fn split_doubling_is_unital_but_indefinite() {
        let d = double(&structure_tensor(2).unwrap(), &rat(1)).unwrap();
        assert!(d.is_unital());
        let l = Element::<Rational>::basis(&d, 2).unwrap();
        assert!(l.inner(&l).unwrap() < rat(0));
    }

    #[test]
    fn rational_alpha_is_accepted() {
        let d = double(&structure_tensor(2).unwrap(), &ratio(-2, 3)).unwrap();
        assert_eq!(d.dim(), 4);
        assert!(d.to_file().is_err());
    }

    #[test]
    fn doubling_rejections() {
        assert_eq!(double(&real(), &rat(0)).unwrap_err(), Error::ZeroAlpha);
        assert!(matches!(
            double(&structure_tensor(8).unwrap(), &rat(-1)),
            Err(Error::UnsupportedDimension { .. })
        ));
        let mut c = structure_tensor(2).unwrap().constants().to_vec();
        c[(1 * 2 + 0) * 2 + 1] = rat(0);
        let broken = AlgebraSpec::from_constants(2, c, Convention::Custom).unwrap();
        assert_eq!(double(&broken, &rat(-1)).unwrap_err(), Error::NotUnital);
    }

    #[test]
    fn self_isomorphism_is_identity() {
        for n in [1, 2, 4, 8] {
            let a = structure_tensor(n).unwrap();
            assert_eq!(
                find_isomorphism(&a, &a).unwrap(),
                Some(SignedPermutation::identity(n))
            );
        }
    }

    #[test]
    fn complex_conjugation_is_found() {
        let c = structure_tensor(2).unwrap();
        let phi = SignedPermutation::new(vec![0, 1], vec![1, -1]).unwrap();
        assert!(phi.is_homomorphism(&c, &c));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let r = find_isomorphism(&structure_tensor(4).unwrap(), &structure_tensor(8).unwrap());
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn non_isomorphic_tables() {
        let split = double(&real(), &rat(1)).unwrap();
        assert_eq!(
            find_isomorphism(&split, &structure_tensor(2).unwrap()).unwrap(),
            None
        );
        let broken = structure_tensor(8)
            .unwrap()
            .with_flipped_triple(1, 2, 3)
            .unwrap();
        assert_eq!(
            find_isomorphism(&broken, &structure_tensor(8).unwrap()).unwrap(),
            None
        );
    }

    #[test]
    fn fano_caption_reconciles() {
        let r = reconcile_fano_caption().unwrap();
        let phi = r.mapping.expect("caption table is an octonion table");
        let caption =
            AlgebraSpec::from_triples(8, &crate::algebra::FANO_CAPTION_TRIPLES, "c").unwrap();
        assert!(phi.is_homomorphism(&caption, &structure_tensor(8).unwrap()));
    }

    #[test]
    fn display_mapping() {
        let phi = SignedPermutation::new(vec![0, 1], vec![1, -1]).unwrap();
        assert_eq!(phi.to_string(), "e0 -> +e0\ne1 -> -e1");
        assert!(SignedPermutation::new(vec![1, 0], vec![1, 1]).is_err());
    }
}
