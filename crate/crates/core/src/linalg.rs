//! Small dense vector/matrix helpers. Dimensions stay tiny (n <= ~10), so
//! everything is plain `Vec<f64>` with nalgebra only for singular values.

use nalgebra::DMatrix;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn scale(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|x| c * x).collect()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `sum_j coeffs[j] * columns[j]`.
pub(crate) fn mat_vec(columns: &[Vec<f64>], coeffs: &[f64]) -> Vec<f64> {
    debug_assert_eq!(columns.len(), coeffs.len());
    let n = columns[0].len();
    let mut out = vec![0.0; n];
    for (col, &c) in columns.iter().zip(coeffs) {
        for (o, &v) in out.iter_mut().zip(col) {
            *o += c * v;
        }
    }
    out
}

pub(crate) fn from_columns(columns: &[Vec<f64>]) -> DMatrix<f64> {
    let rows = columns[0].len();
    DMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i])
}

/// Ratio of the smallest to the largest singular value; 0 for k > n.
pub(crate) fn min_singular_ratio(columns: &[Vec<f64>]) -> f64 {
    let n = columns[0].len();
    if columns.len() > n {
        return 0.0;
    }
    let sv = from_columns(columns).singular_values();
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == 0.0 {
        0.0
    } else {
        min / max
    }
}

/// Row-major copy of a matrix stored as columns.
pub(crate) fn rows_from_columns(columns: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = columns[0].len();
    (0..n)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect()
}
