use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::expr::ComponentPolynomial;
use crate::sample::sample_points;
use crate::scalar::{format_rational, Field, Rational, Scalar};

use super::forms::{residual_form_j, Form};
use super::linear::LinearMap;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointResidual {
    pub max: String,
    pub l2: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub form: String,
    pub kappa: Option<String>,
    pub points: Vec<Vec<String>>,
    pub max_residual: String,
    pub verdict: String,
    pub tolerance: String,
    pub seed: u64,
    pub per_point: Vec<PointResidual>,
    pub field: Field,
}

impl ResidualReport {
    pub fn is_analytic(&self) -> bool {
        self.verdict == "analytic"
    }
}

/// Exact residual of `form` for `u` at `point`.
pub fn residual_at(
    form: &Form,
    alg: &Algebra,
    u: &ComponentPolynomial,
    point: &[Rational],
) -> Result<Vec<Rational>> {
    if u.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            got: u.dim(),
        });
    }
    let j = LinearMap::jacobian_at(u, point)?;
    residual_form_j(form, alg, &j)
}

/// Evaluates the residual at `samples` integer points drawn from `seed`; the
/// verdict is "analytic" iff the largest entry is within `tolerance`.
pub fn check_function(
    u: &ComponentPolynomial,
    alg: &Algebra,
    form: &Form,
    samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<ResidualReport> {
    let points = sample_points(alg.dim(), samples, seed);
    let mut per_point = Vec::with_capacity(points.len());
    let mut max_all = Rational::zero();
    for p in &points {
        let r = residual_at(form, alg, u, p)?;
        let max = r
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        let l2 = r.iter().map(|v| v.to_f64().powi(2)).sum::<f64>().sqrt();
        if max > max_all {
            max_all = max.clone();
        }
        per_point.push(PointResidual {
            max: format_rational(&max),
            l2: format!("{l2}"),
        });
    }
    let analytic = max_all.to_f64() <= tolerance;
    Ok(ResidualReport {
        form: form.id(),
        kappa: form.kappa().map(format_rational),
        points: points
            .iter()
            .map(|p| p.iter().map(format_rational).collect())
            .collect(),
        max_residual: format!("{}", max_all.to_f64()),
        verdict: if analytic { "analytic" } else { "not-analytic" }.into(),
        tolerance: format!("{tolerance:e}"),
        seed,
        per_point,
        field: Field::ExactRational,
    })
}
