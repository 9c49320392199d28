//! Octonions as 2×2 matrices with quaternion operator entries.
//!
//! `θ = q₁ + q₂E` is stored as `[[q₁, -q₂ε], [q₂ε, q₁]]`. The symbol ε is not an
//! octonion; it only ever appears as a trailing flag on an entry, and products
//! of entries are normalized by
//!
//! ```text
//! (q₁ε)(q₂ε) = q̄₂q₁     (q₁ε)q₂ = (q₁q̄₂)ε     q₁(q₂ε) = (q₂q₁)ε     εε = 1
//! ```

use std::fmt;
use std::sync::OnceLock;

use crate::algebra::{structure_tensor, Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};

fn quaternions() -> &'static Algebra {
    static H: OnceLock<Algebra> = OnceLock::new();
    H.get_or_init(|| structure_tensor(4).expect("dimension 4 is supported"))
}

fn octonions() -> &'static Algebra {
    static O: OnceLock<Algebra> = OnceLock::new();
    O.get_or_init(|| structure_tensor(8).expect("dimension 8 is supported"))
}

/// Which placement to use for `q₁∘(q₂ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedRule {
    /// `q₁∘(q₂ε) = (q₂q₁)ε`
    Printed,
    /// `q₁∘(q₂ε) = (q₁q₂)ε`
    Swapped,
}

/// Either `q` or `qε`.
#[derive(Clone)]
pub struct OperatorEntry {
    pub value: Element<Rational>,
    pub eps: bool,
}

/// Zero entries compare equal whatever their flag.
impl PartialEq for OperatorEntry {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && (self.eps == other.eps || self.is_zero())
    }
}

impl fmt::Debug for OperatorEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.value.coeffs().iter().map(format_rational).collect();
        write!(
            f,
            "[{}]{}",
            parts.join(","),
            if self.eps { "ε" } else { "" }
        )
    }
}

impl OperatorEntry {
    pub fn plain(value: Element<Rational>) -> Self {
        Self { value, eps: false }
    }

    pub fn with_eps(value: Element<Rational>) -> Self {
        Self { value, eps: true }
    }

    pub fn zero() -> Self {
        Self::plain(Element::zero(quaternions()))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn neg(&self) -> Self {
        Self {
            value: -&self.value,
            eps: self.eps,
        }
    }

    fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.eps != other.eps {
            return Err(Error::MixedEntry(format!("{self:?} + {other:?}")));
        }
        Ok(Self {
            value: &self.value + &other.value,
            eps: self.eps,
        })
    }

    fn mul(&self, other: &Self, rule: MixedRule) -> Self {
        let (a, b) = (&self.value, &other.value);
        match (self.eps, other.eps) {
            (false, false) => Self::plain(a * b),
            (true, true) => Self::plain(&b.conjugate() * a),
            (true, false) => Self::with_eps(a * &b.conjugate()),
            (false, true) => Self::with_eps(match rule {
                MixedRule::Printed => b * a,
                MixedRule::Swapped => a * b,
            }),
        }
    }

    /// `ε∘X∘ε`. A plain `q` becomes `q̄`; for `qε` the sandwich reverses the
    /// order of the factors, `(εεε)(εqε) = ε∘q̄ = qε`.
    fn sandwich(&self) -> Self {
        if self.eps {
            let inner = Self::plain(self.value.conjugate());
            let eps = Self::with_eps(Element::one(quaternions()));
            eps.mul(&inner, MixedRule::Printed)
        } else {
            Self::plain(self.value.conjugate())
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct OpMatrix {
    pub entries: [[OperatorEntry; 2]; 2],
}

impl fmt::Debug for OpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:?}, {:?}], [{:?}, {:?}]]",
            self.entries[0][0], self.entries[0][1], self.entries[1][0], self.entries[1][1]
        )
    }
}

impl OpMatrix {
    pub fn identity() -> Self {
        let one = OperatorEntry::plain(Element::one(quaternions()));
        Self {
            entries: [
                [one.clone(), OperatorEntry::zero()],
                [OperatorEntry::zero(), one],
            ],
        }
    }

    /// The multiplication unit `E = [[0, -ε], [ε, 0]]`.
    pub fn e_unit() -> Self {
        let eps = OperatorEntry::with_eps(Element::one(quaternions()));
        Self {
            entries: [
                [OperatorEntry::zero(), eps.neg()],
                [eps, OperatorEntry::zero()],
            ],
        }
    }
}

/// Splits `θ` into `q₁ = θ^0..θ^3` and `q₂ = θ^4..θ^7` and builds
/// `[[q₁, -q₂ε], [q₂ε, q₁]]`.
pub fn embed(theta: &Element<Rational>) -> Result<OpMatrix> {
    if theta.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: theta.dim(),
        });
    }
    let h = quaternions();
    let q1 = Element::new(h, theta.coeffs()[..4].to_vec())?;
    let q2 = Element::new(h, theta.coeffs()[4..].to_vec())?;
    let off = OperatorEntry::with_eps(q2);
    Ok(OpMatrix {
        entries: [
            [OperatorEntry::plain(q1.clone()), off.neg()],
            [off, OperatorEntry::plain(q1)],
        ],
    })
}

/// Inverse of [`embed`].
pub fn extract(m: &OpMatrix) -> Result<Element<Rational>> {
    let [[a, b], [c, d]] = &m.entries;
    if a.eps && !a.is_zero() {
        return Err(Error::NotEmbedded(format!("entry (1,1) carries ε: {a:?}")));
    }
    if d.eps && !d.is_zero() {
        return Err(Error::NotEmbedded(format!("entry (2,2) carries ε: {d:?}")));
    }
    if a.value != d.value {
        return Err(Error::NotEmbedded(format!(
            "entry (1,1) {a:?} differs from entry (2,2) {d:?}"
        )));
    }
    if !c.eps && !c.is_zero() {
        return Err(Error::NotEmbedded(format!("entry (2,1) lacks ε: {c:?}")));
    }
    if !b.eps && !b.is_zero() {
        return Err(Error::NotEmbedded(format!("entry (1,2) lacks ε: {b:?}")));
    }
    if b.value != -&c.value {
        return Err(Error::NotEmbedded(format!(
            "entry (1,2) {b:?} is not minus entry (2,1) {c:?}"
        )));
    }
    let coeffs = a
        .value
        .coeffs()
        .iter()
        .chain(c.value.coeffs())
        .cloned()
        .collect();
    Element::new(octonions(), coeffs)
}

pub fn op_multiply(m1: &OpMatrix, m2: &OpMatrix) -> Result<OpMatrix> {
    op_multiply_with(m1, m2, MixedRule::Printed)
}

/// Matrix product with entry products normalized by the ε rules.
pub fn op_multiply_with(m1: &OpMatrix, m2: &OpMatrix, rule: MixedRule) -> Result<OpMatrix> {
    let cell = |i: usize, j: usize| -> Result<OperatorEntry> {
        let p = m1.entries[i][0].mul(&m2.entries[0][j], rule);
        let q = m1.entries[i][1].mul(&m2.entries[1][j], rule);
        p.add(&q)
    };
    Ok(OpMatrix {
        entries: [[cell(0, 0)?, cell(0, 1)?], [cell(1, 0)?, cell(1, 1)?]],
    })
}

/// `ε∘M∘ε` with `ε = diag(ε, -ε)`; equals `embed(conj(extract(M)))`.
pub fn conjugate_by_epsilon(m: &OpMatrix) -> Result<OpMatrix> {
    let theta = extract(m)?;
    let signs = [1, -1];
    let cell = |i: usize, j: usize| {
        let s = m.entries[i][j].sandwich();
        if signs[i] * signs[j] > 0 {
            s
        } else {
            s.neg()
        }
    };
    let out = OpMatrix {
        entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
    };
    debug_assert_eq!(out, embed(&theta.conjugate())?);
    Ok(out)
}

/// Checks `embed(x)·embed(y) = embed(xy)` against the table product, for the
/// given octonion table.
pub fn homomorphism_holds(
    table: &Algebra,
    x: &Element<Rational>,
    y: &Element<Rational>,
    rule: MixedRule,
) -> Result<bool> {
    let xt = Element::new(table, x.coeffs().to_vec())?;
    let yt = Element::new(table, y.coeffs().to_vec())?;
    let want = embed(&xt.multiply(&yt)?)?;
    let got = op_multiply_with(&embed(x)?, &embed(y)?, rule)?;
    Ok(got == want)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random_element;
    use crate::sample;
    use crate::scalar::rat;

    fn o(mu: usize) -> Element<Rational> {
        Element::basis(octonions(), mu).unwrap()
    }

    fn h(mu: usize) -> Element<Rational> {
        Element::basis(quaternions(), mu).unwrap()
    }

    #[test]
    fn generator_shapes() {
        let e4 = embed(&o(4)).unwrap();
        assert_eq!(e4, OpMatrix::e_unit());
        assert_eq!(embed(&o(0)).unwrap(), OpMatrix::identity());
        let e5 = embed(&o(5)).unwrap();
        assert_eq!(e5.entries[0][1], OperatorEntry::with_eps(-&h(1)));
        assert_eq!(e5.entries[1][0], OperatorEntry::with_eps(h(1)));
        let e2 = embed(&o(2)).unwrap();
        assert_eq!(e2.entries[0][0], OperatorEntry::plain(h(2)));
        assert_eq!(e2.entries[1][1], OperatorEntry::plain(h(2)));
    }

    #[test]
    fn eps_eps_rule() {
        let a = OperatorEntry::with_eps(h(1));
        let b = OperatorEntry::with_eps(h(2));
        assert_eq!(a.mul(&b, MixedRule::Printed), OperatorEntry::plain(h(3)));
    }

    #[test]
    fn homomorphism_on_random_pairs() {
        let mut rng = sample::rng(11);
        for _ in 0..200 {
            let x = random_element(octonions(), &mut rng);
            let y = random_element(octonions(), &mut rng);
            assert!(homomorphism_holds(octonions(), &x, &y, MixedRule::Printed).unwrap());
        }
    }

    #[test]
    fn swapped_mixed_rule_is_not_a_homomorphism() {
        let ok = (1..8).all(|i| {
            (1..8)
                .all(|j| homomorphism_holds(octonions(), &o(i), &o(j), MixedRule::Swapped).unwrap())
        });
        assert!(!ok);
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = sample::rng(2);
        let m = embed(&random_element(octonions(), &mut rng)).unwrap();
        assert_eq!(op_multiply(&OpMatrix::identity(), &m).unwrap(), m);
        assert_eq!(op_multiply(&m, &OpMatrix::identity()).unwrap(), m);
    }

    #[test]
    fn e_squared_is_minus_identity() {
        let e = OpMatrix::e_unit();
        assert_eq!(op_multiply(&e, &e).unwrap(), embed(&-&o(0)).unwrap());
    }

    #[test]
    fn epsilon_conjugation() {
        for mu in 0..8 {
            let c = conjugate_by_epsilon(&embed(&o(mu)).unwrap()).unwrap();
            assert_eq!(c, embed(&o(mu).conjugate()).unwrap());
        }
        assert_eq!(
            conjugate_by_epsilon(&embed(&o(3)).unwrap()).unwrap(),
            embed(&-&o(3)).unwrap()
        );
        let mut rng = sample::rng(4);
        for _ in 0..100 {
            let m = embed(&random_element(octonions(), &mut rng)).unwrap();
            assert_eq!(
                conjugate_by_epsilon(&conjugate_by_epsilon(&m).unwrap()).unwrap(),
                m
            );
        }
    }

    #[test]
    fn extract_round_trip_and_errors() {
        let mut rng = sample::rng(8);
        for _ in 0..100 {
            let x = random_element(octonions(), &mut rng);
            assert_eq!(extract(&embed(&x).unwrap()).unwrap(), x);
        }
        assert_eq!(extract(&OpMatrix::identity()).unwrap(), o(0));
        let mut bad = OpMatrix::identity();
        bad.entries[1][1] = OperatorEntry::plain(h(0).scale(&rat(2)));
        assert!(matches!(extract(&bad), Err(Error::NotEmbedded(_))));
        assert!(conjugate_by_epsilon(&bad).is_err());
    }

    #[test]
    fn embed_rejects_wrong_dimension() {
        assert!(matches!(embed(&h(1)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn linearity() {
        let mut rng = sample::rng(21);
        let x = random_element(octonions(), &mut rng);
        let y = random_element(octonions(), &mut rng);
        let ex = embed(&x).unwrap();
        let ey = embed(&y).unwrap();
        let sum = embed(&(&x + &y)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    ex.entries[i][j].add(&ey.entries[i][j]).unwrap().value,
                    sum.entries[i][j].value
                );
            }
        }
    }
}
