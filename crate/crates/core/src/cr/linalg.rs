//! Exact sparse elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Reduced row echelon form of a sparse system with `ncols` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    ncols: usize,
    /// `(pivot column, row)`, sorted by pivot column; each row has a unit
    /// pivot and zeros in every other pivot column.
    rows: Vec<(usize, SparseRow)>,
}

fn axpy(target: &mut SparseRow, k: &Rational, source: &SparseRow) {
    for (col, v) in source {
        let add = k * v;
        let entry = target.entry(*col).or_insert_with(Rational::zero);
        *entry += add;
        if entry.is_zero() {
            target.remove(col);
        }
    }
}

impl Rref {
    pub fn new(ncols: usize, input: impl IntoIterator<Item = SparseRow>) -> Self {
        // Forward elimination against pivots found so far, keyed by column.
        let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for mut row in input {
            row.retain(|_, v| !v.is_zero());
            while let Some((&col, _)) = row.iter().find(|(c, _)| pivots.contains_key(c)) {
                let k = -row[&col].clone();
                axpy(&mut row, &k, &pivots[&col]);
            }
            let Some((&lead, lv)) = row.iter().next() else {
                continue;
            };
            let inv = Rational::one() / lv.clone();
            for v in row.values_mut() {
                *v *= &inv;
            }
            // Clear the new pivot column from existing pivot rows.
            for prow in pivots.values_mut() {
                if let Some(v) = prow.get(&lead).cloned() {
                    axpy(prow, &-v, &row);
                }
            }
            pivots.insert(lead, row);
        }
        Self {
            ncols,
            rows: pivots.into_iter().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// One basis vector per free column, in increasing column order: the free
    /// column set to 1, other free columns 0.
    pub fn nullspace(&self) -> Vec<SparseRow> {
        let pivot: BTreeMap<usize, &SparseRow> = self.rows.iter().map(|(c, r)| (*c, r)).collect();
        let mut uses: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (pc, row) in &self.rows {
            for (col, v) in row {
                if col != pc {
                    uses.entry(*col).or_default().push((*pc, v.clone()));
                }
            }
        }
        (0..self.ncols)
            .filter(|c| !pivot.contains_key(c))
            .map(|free| {
                let mut v = SparseRow::new();
                v.insert(free, Rational::one());
                for (pc, coef) in uses.get(&free).into_iter().flatten() {
                    v.insert(*pc, -coef.clone());
                }
                v
            })
            .collect()
    }

    /// Whether `v` is in the row space.
    pub fn contains(&self, v: &SparseRow) -> bool {
        let mut r = v.clone();
        r.retain(|_, x| !x.is_zero());
        for (pc, row) in &self.rows {
            if let Some(k) = r.get(pc).cloned() {
                axpy(&mut r, &-k, row);
            }
        }
        r.is_empty()
    }
}

pub fn dot(row: &SparseRow, v: &SparseRow) -> Rational {
    let (small, large) = if row.len() <= v.len() {
        (row, v)
    } else {
        (v, row)
    };
    small
        .iter()
        .filter_map(|(c, a)| large.get(c).map(|b| a * b))
        .fold(Rational::zero(), |acc, x| acc + x)
}
