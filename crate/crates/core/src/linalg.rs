//! Dense complex linear-algebra helpers: Hermitian spectra, numerical
//! rank, orthonormal column bases and projectors.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

/// Default relative singular-value threshold for numerical rank.
pub const RANK_TOL: f64 = 1e-10;
/// Absolute floor under which a singular value is always treated as zero.
pub const RANK_FLOOR: f64 = 1e-14;
/// Relative eigenvalue cutoff separating "nonzero" frame-operator eigenvalues.
pub const EIG_CUTOFF: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Weighted inner product `Σ a·conj(b)·w`, linear in the first slot.
pub fn inner(a: &[C64], b: &[C64], weight: f64) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum::<C64>() * weight
}

pub fn norm_sqr(a: &[C64], weight: f64) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>() * weight
}

pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    // symmetrize to kill rounding asymmetry before the solver sees it
    let h = faer::Mat::<C64>::from_fn(m.nrows(), m.ncols(), |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut ev = h.self_adjoint_eigenvalues(faer::Side::Lower).expect("eigensolver converges");
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Singular values, descending.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    left_svd(m).1
}

/// Left singular vectors and singular values, descending (thin SVD).
pub fn left_svd(m: &CMat) -> (CMat, Vec<f64>) {
    let (rows, cols) = (m.nrows(), m.ncols());
    if rows == 0 || cols == 0 {
        return (CMat::zeros(rows, 0), Vec::new());
    }
    let f = faer::Mat::<C64>::from_fn(rows, cols, |i, j| m[(i, j)]);
    let svd = f.thin_svd().expect("SVD converges");
    let u = svd.U();
    let sigma: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
    (CMat::from_fn(rows, sigma.len(), |i, j| u[(i, j)]), sigma)
}

/// Spectral norm (largest singular value); 0 for empty matrices.
pub fn op_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Orthonormal basis of the column space of `m`, keeping left singular
/// vectors with `σ > max(rel_tol·σ_max, RANK_FLOOR)`.
///
/// Each basis vector is rescaled by a unit phase so that its first entry
/// of non-negligible modulus is real and positive.
pub fn column_basis(m: &CMat, rel_tol: f64) -> CMat {
    let smax = singular_values(m).first().copied().unwrap_or(0.0);
    column_basis_above(m, rel_tol * smax)
}

/// As [`column_basis`], with an explicit singular-value cutoff (still
/// floored at `RANK_FLOOR`).
pub fn column_basis_above(m: &CMat, cutoff: f64) -> CMat {
    let rows = m.nrows();
    if rows == 0 || m.ncols() == 0 {
        return CMat::zeros(rows, 0);
    }
    let (u, sigma) = left_svd(m);
    let cut = cutoff.max(RANK_FLOOR);
    let keep: Vec<usize> = (0..sigma.len()).filter(|&k| sigma[k] > cut).collect();
    let mut q = CMat::zeros(rows, keep.len());
    for (j, &k) in keep.iter().enumerate() {
        let col = u.column(k);
        let peak = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let phase = col
            .iter()
            .find(|z| z.norm() > 1e-8 * peak)
            .map(|z| z.conj() / z.norm())
            .unwrap_or(C64::new(1.0, 0.0));
        for r in 0..rows {
            q[(r, j)] = col[r] * phase;
        }
    }
    q
}

pub fn rank(m: &CMat, rel_tol: f64) -> usize {
    column_basis(m, rel_tol).ncols()
}

/// Orthogonal projector `Q Q*` onto the span of orthonormal columns `q`.
pub fn projector(q: &CMat) -> CMat {
    q * q.adjoint()
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(rows: usize, cols: &[Vec<C64>]) -> CMat {
    CMat::from_fn(rows, cols.len(), |r, c| cols[c][r])
}

/// Smallest eigenvalue above `EIG_CUTOFF·scale` and the largest eigenvalue.
/// `None` when every eigenvalue is below the cutoff.
pub fn nonzero_extremes(eigs: &[f64], scale: f64) -> Option<(f64, f64)> {
    let cut = EIG_CUTOFF * scale;
    let nz: Vec<f64> = eigs.iter().copied().filter(|&l| l > cut && l > 0.0).collect();
    if nz.is_empty() {
        return None;
    }
    let lo = nz.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = nz.iter().copied().fold(0.0, f64::max);
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(3.0, 0.0), c(1.0, 0.0)]));
        assert_eq!(hermitian_eigenvalues(&m), vec![1.0, 3.0]);
    }

    #[test]
    fn rank_of_dependent_columns() {
        let m = from_columns(3, &[vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)], vec![c(2.0, 0.0), c(0.0, 2.0), c(0.0, 0.0)]]);
        assert_eq!(rank(&m, RANK_TOL), 1);
        let q = column_basis(&m, RANK_TOL);
        assert!(q[(0, 0)].im.abs() < 1e-15 && q[(0, 0)].re > 0.0);
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(rank(&CMat::zeros(4, 0), RANK_TOL), 0);
        assert_eq!(rank(&CMat::zeros(4, 3), RANK_TOL), 0);
        assert!(nonzero_extremes(&[0.0, 1e-30], 1.0).is_none());
        assert_eq!(op_norm(&CMat::zeros(0, 0)), 0.0);
    }
}
