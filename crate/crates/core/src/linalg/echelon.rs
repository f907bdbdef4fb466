//! Incremental reduced row-echelon builder over sparse rows.
//!
//! Rows are inserted one at a time and the basis is kept fully reduced:
//! every pivot entry is 1 and every pivot column is zero in all other rows.
//! Large constraint systems built from structure constants are very sparse,
//! so nothing here ever materializes the full dense system.

use crate::linalg::mat::Mat;
use crate::scalar::{Scalar, ScalarField};

/// Sparse vector: strictly increasing column indices, nonzero values.
pub type SparseRow = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(field: ScalarField, n: usize, row: &SparseRow) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

/// Collapses an unsorted list of (column, value) terms into a sparse row.
pub fn sparse_collect(mut terms: Vec<(usize, Scalar)>) -> SparseRow {
    terms.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow = Vec::with_capacity(terms.len());
    for (c, v) in terms {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `a - s * b` for sparse rows.
fn axpy(a: &SparseRow, s: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(s * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry(row: &SparseRow, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

#[derive(Clone, Debug)]
pub struct Echelon {
    field: ScalarField,
    cols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: ScalarField, cols: usize) -> Self {
        Echelon {
            field,
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces a row against the current basis.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let hits: Vec<(usize, Scalar)> = row
            .iter()
            .filter_map(|(c, v)| self.pivot_row[*c].map(|p| (p, v.clone())))
            .collect();
        let mut out = row.clone();
        for (p, v) in hits {
            out = axpy(&out, &v, &self.rows[p]);
        }
        out
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Inserts a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let reduced = self.reduce(&row);
        let Some((lead, lead_val)) = reduced.first().cloned() else {
            return false;
        };
        let inv = lead_val.inv().expect("nonzero leading entry");
        let new_row: SparseRow = reduced.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        for r in self.rows.iter_mut() {
            if let Some(v) = entry(r, lead).cloned() {
                *r = axpy(r, &v, &new_row);
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(new_row);
        true
    }

    pub fn insert_dense(&mut self, row: &[Scalar]) -> bool {
        self.insert(sparse_from_dense(row))
    }

    /// Pivot columns in ascending order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|c| self.pivot_row[*c].is_some())
            .collect()
    }

    pub fn pivot_of(&self, col: usize) -> Option<&SparseRow> {
        self.pivot_row[col].map(|p| &self.rows[p])
    }

    /// Rows sorted by pivot column.
    pub fn sorted_rows(&self) -> Vec<&SparseRow> {
        self.pivots()
            .into_iter()
            .map(|c| &self.rows[self.pivot_row[c].unwrap()])
            .collect()
    }

    pub fn to_rref(&self) -> (Mat, Vec<usize>) {
        let pivots = self.pivots();
        let mut m = Mat::zeros(self.field, pivots.len(), self.cols);
        for (i, row) in self.sorted_rows().into_iter().enumerate() {
            for (c, v) in row {
                m.set(i, *c, v.clone());
            }
        }
        (m, pivots)
    }

    /// Kernel basis of the row space viewed as a system `R x = 0`: one vector
    /// per free column, in ascending free-column order.
    pub fn nullspace(&self) -> Vec<SparseRow> {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.cols];
        for p in &pivots {
            is_pivot[*p] = true;
        }
        let sorted = self.sorted_rows();
        // column -> list of (pivot col, entry) for rows touching it
        let mut by_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (p, row) in pivots.iter().zip(&sorted) {
            for (c, v) in row.iter() {
                if *c != *p {
                    by_col[*c].push((*p, v.clone()));
                }
            }
        }
        (0..self.cols)
            .filter(|c| !is_pivot[*c])
            .map(|f| {
                let mut terms: Vec<(usize, Scalar)> =
                    by_col[f].iter().map(|(p, v)| (*p, -v)).collect();
                terms.push((f, self.field.one()));
                sparse_collect(terms)
            })
            .collect()
    }
}

/// Outcome of an inconsistent linear system: rank of the coefficient matrix
/// and of the augmented matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Infeasible {
    pub rank: usize,
    pub augmented_rank: usize,
}

/// Equation-at-a-time builder for `A x = b` with sparse rows.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: usize,
    echelon: Echelon,
    inconsistent: bool,
    equations: usize,
}

impl LinearSystem {
    pub fn new(field: ScalarField, unknowns: usize) -> Self {
        LinearSystem {
            unknowns,
            echelon: Echelon::new(field, unknowns + 1),
            inconsistent: false,
            equations: 0,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.equations
    }

    /// Adds `sum coeffs[i].1 * x[coeffs[i].0] = rhs`; terms need not be sorted.
    pub fn add_equation(&mut self, coeffs: Vec<(usize, Scalar)>, rhs: Scalar) {
        self.equations += 1;
        let mut terms = coeffs;
        if !rhs.is_zero() {
            terms.push((self.unknowns, rhs));
        }
        let row = sparse_collect(terms);
        if row.is_empty() {
            return;
        }
        self.echelon.insert(row);
        if self.echelon.pivot_row[self.unknowns].is_some() {
            self.inconsistent = true;
        }
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank() - usize::from(self.inconsistent)
    }

    /// The solution with all free variables set to zero.
    pub fn solve(&self) -> Result<Vec<Scalar>, Infeasible> {
        if self.inconsistent {
            return Err(Infeasible {
                rank: self.rank(),
                augmented_rank: self.echelon.rank(),
            });
        }
        let field = self.echelon.field;
        let mut x = vec![field.zero(); self.unknowns];
        for p in self.echelon.pivots() {
            let row = self.echelon.pivot_of(p).unwrap();
            if let Some(v) = entry(row, self.unknowns) {
                x[p] = v.clone();
            }
        }
        Ok(x)
    }

    /// Basis of the solution space of the homogeneous system.
    pub fn homogeneous_basis(&self) -> Vec<Vec<Scalar>> {
        let field = self.echelon.field;
        let n = self.unknowns;
        let pivots = self.echelon.pivots();
        let mut is_pivot = vec![false; n];
        for p in &pivots {
            if *p < n {
                is_pivot[*p] = true;
            }
        }
        (0..n)
            .filter(|c| !is_pivot[*c])
            .map(|f| {
                let mut v = vec![field.zero(); n];
                v[f] = field.one();
                for p in &pivots {
                    if *p >= n {
                        continue;
                    }
                    if let Some(e) = entry(self.echelon.pivot_of(*p).unwrap(), f) {
                        v[*p] = -e;
                    }
                }
                v
            })
            .collect()
    }
}
