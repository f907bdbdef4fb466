//! Exact dense linear algebra: row reduction, solving, kernels, images,
//! canonical subspaces and quotient spaces.

pub mod echelon;
pub mod mat;
pub mod quotient;
pub mod subspace;

pub use echelon::{Echelon, Infeasible, LinearSystem, SparseRow};
pub use mat::Mat;
pub use quotient::QuotientSpace;
pub use subspace::Subspace;

use crate::error::LinalgError;
use crate::scalar::Scalar;

/// Unique reduced row-echelon form and its pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut e = Echelon::new(m.field(), m.cols());
    for r in 0..m.rows() {
        e.insert_dense(m.row(r));
    }
    e.to_rref()
}

pub fn rank(m: &Mat) -> usize {
    let mut e = Echelon::new(m.field(), m.cols());
    for r in 0..m.rows() {
        e.insert_dense(m.row(r));
    }
    e.rank()
}

/// One solution of `a X = b` with every free variable zero, or `None` when
/// the system is inconsistent.
pub fn solve(a: &Mat, b: &Mat) -> Result<Option<Mat>, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "a has {} rows, b has {}",
            a.rows(),
            b.rows()
        )));
    }
    if a.field() != b.field() {
        return Err(LinalgError::FieldMismatch(a.field(), b.field()));
    }
    let n = a.cols();
    let mut e = Echelon::new(a.field(), n + b.cols());
    for r in 0..a.rows() {
        let mut row = a.row(r).to_vec();
        row.extend_from_slice(b.row(r));
        e.insert_dense(&row);
    }
    let pivots = e.pivots();
    if pivots.iter().any(|p| *p >= n) {
        return Ok(None);
    }
    let mut x = Mat::zeros(a.field(), n, b.cols());
    for p in pivots {
        let row = e.pivot_of(p).unwrap();
        for (c, v) in row {
            if *c >= n {
                x.set(p, c - n, v.clone());
            }
        }
    }
    Ok(Some(x))
}

/// Null space `{x : a x = 0}` in canonical form.
pub fn kernel(a: &Mat) -> Subspace {
    let mut e = Echelon::new(a.field(), a.cols());
    for r in 0..a.rows() {
        e.insert_dense(a.row(r));
    }
    let vecs: Vec<Vec<Scalar>> = e
        .nullspace()
        .iter()
        .map(|s| echelon::dense_from_sparse(a.field(), a.cols(), s))
        .collect();
    Subspace::span(a.field(), a.cols(), &vecs)
}

/// Column space of `a` in canonical form.
pub fn image(a: &Mat) -> Subspace {
    let cols: Vec<Vec<Scalar>> = (0..a.cols()).map(|c| a.column(c)).collect();
    Subspace::span(a.field(), a.rows(), &cols)
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    if !a.is_square() {
        return None;
    }
    let x = solve(a, &Mat::identity(a.field(), a.rows())).ok()??;
    if rank(a) == a.rows() {
        Some(x)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarField;

    const Q: ScalarField = ScalarField::Rationals;

    #[test]
    fn rref_examples() {
        let (z, p) = rref(&Mat::zeros(Q, 2, 2));
        assert_eq!(z.rows(), 0);
        assert!(p.is_empty());

        let (i, p) = rref(&Mat::identity(Q, 3));
        assert_eq!(i, Mat::identity(Q, 3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = rref(&Mat::from_i64(Q, &[&[2, 4], &[1, 2]]));
        assert_eq!(r, Mat::from_i64(Q, &[&[1, 2]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn solve_examples() {
        let x = solve(&Mat::identity(Q, 2), &Mat::from_i64(Q, &[&[3], &[5]]))
            .unwrap()
            .unwrap();
        assert_eq!(x, Mat::from_i64(Q, &[&[3], &[5]]));

        let x = solve(&Mat::from_i64(Q, &[&[1, 1]]), &Mat::from_i64(Q, &[&[2]]))
            .unwrap()
            .unwrap();
        assert_eq!(x, Mat::from_i64(Q, &[&[2], &[0]]));

        assert_eq!(
            solve(&Mat::from_i64(Q, &[&[0]]), &Mat::from_i64(Q, &[&[1]])).unwrap(),
            None
        );
        assert!(solve(&Mat::identity(Q, 2), &Mat::zeros(Q, 3, 1)).is_err());
    }

    #[test]
    fn kernel_and_image_examples() {
        assert_eq!(kernel(&Mat::identity(Q, 2)).dim(), 0);
        let im = image(&Mat::from_i64(Q, &[&[1], &[1]]));
        assert_eq!(im.basis(), &Mat::from_i64(Q, &[&[1, 1]]));
        let k = kernel(&Mat::from_i64(Q, &[&[1, 1]]));
        assert_eq!(k.basis(), &Mat::from_i64(Q, &[&[1, -1]]));
    }

    #[test]
    fn inverse_of_small_matrix() {
        let a = Mat::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert!((&a * &inv).is_identity());
        assert!(inverse(&Mat::from_i64(Q, &[&[1, 1], &[1, 1]])).is_none());
    }

    #[test]
    fn linear_system_reports_ranks() {
        let mut sys = LinearSystem::new(Q, 1);
        sys.add_equation(vec![(0, Q.from_i64(0))], Q.one());
        let err = sys.solve().unwrap_err();
        assert_eq!(
            err,
            Infeasible {
                rank: 0,
                augmented_rank: 1
            }
        );
    }
}
