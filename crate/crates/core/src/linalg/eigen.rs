//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` and then applies
//! the classical real Jacobi rotation, so the diagonal stays real throughout.
//! [`hermitian_eig_blocked`] additionally splits the matrix into the
//! connected components of its sparsity graph and diagonalizes each block on
//! its own; the spectrum is the same, the cost is far lower for the highly
//! structured operators built by the oracle.

use super::operator::DenseOperator;
use super::C64;
use crate::error::{Error, Result};

/// Maximum entrywise deviation from Hermiticity accepted on input.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Sweeps are stopped once the off-diagonal Frobenius mass falls below this
/// fraction of the input Frobenius norm.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues sorted descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: DenseOperator,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.values[0]
    }

    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// Number of eigenvalues within `tol` of the largest one.
    pub fn top_multiplicity(&self, tol: f64) -> usize {
        let top = self.values[0];
        self.values.iter().take_while(|&&v| top - v < tol).count()
    }

    /// `V diag(values) V^dagger`.
    pub fn reconstruct(&self) -> DenseOperator {
        let n = self.dim();
        let scaled = DenseOperator::from_fn(n, |i, j| self.vectors[(i, j)] * self.values[j]);
        &scaled * &self.vectors.dagger()
    }

    /// `max |V^dagger V - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let gram = &self.vectors.dagger() * &self.vectors;
        gram.max_abs_diff(&DenseOperator::identity(self.dim()))
    }
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(a: &DenseOperator) -> Result<EigenDecomposition> {
    check_hermitian(a)?;
    let (values, vectors) = jacobi(a)?;
    Ok(sorted(values, vectors))
}

/// Same contract as [`hermitian_eig`], diagonalizing each connected block of
/// the nonzero pattern separately.
pub fn hermitian_eig_blocked(a: &DenseOperator) -> Result<EigenDecomposition> {
    check_hermitian(a)?;
    let n = a.dim();
    let blocks = connected_blocks(a);
    if blocks.len() == 1 {
        let (values, vectors) = jacobi(a)?;
        return Ok(sorted(values, vectors));
    }
    let mut values = Vec::with_capacity(n);
    let mut vectors = DenseOperator::zeros(n);
    let mut column = 0;
    for block in &blocks {
        let sub = DenseOperator::from_fn(block.len(), |i, j| a[(block[i], block[j])]);
        let (sub_values, sub_vectors) = jacobi(&sub)?;
        for (k, value) in sub_values.into_iter().enumerate() {
            for (i, &row) in block.iter().enumerate() {
                vectors[(row, column)] = sub_vectors[(i, k)];
            }
            values.push(value);
            column += 1;
        }
    }
    Ok(sorted(values, vectors))
}

fn check_hermitian(a: &DenseOperator) -> Result<()> {
    let err = a.hermiticity_error();
    if err > HERMITIAN_TOL {
        return Err(Error::ContractViolation(format!(
            "matrix is not Hermitian (max |A - A^dagger| = {err:.3e})"
        )));
    }
    Ok(())
}

/// Groups indices into connected components of the graph with an edge for
/// every nonzero off-diagonal entry. Components are sorted by their first index.
fn connected_blocks(a: &DenseOperator) -> Vec<Vec<usize>> {
    let n = a.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if a[(i, j)] != C64::new(0.0, 0.0) || a[(j, i)] != C64::new(0.0, 0.0) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[root]].push(i);
    }
    blocks
}

fn jacobi(input: &DenseOperator) -> Result<(Vec<f64>, DenseOperator)> {
    let n = input.dim();
    // Symmetrize so rounding noise below the Hermitian tolerance cannot leak in.
    let mut a = DenseOperator::from_fn(n, |i, j| 0.5 * (input[(i, j)] + input[(j, i)].conj()));
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }
    let mut v = DenseOperator::identity(n);
    let scale = a.frobenius_norm();
    if n <= 1 || scale == 0.0 {
        return Ok(((0..n).map(|i| a[(i, i)].re).collect(), v));
    }
    let threshold = OFF_DIAGONAL_TOL * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::NumericalFailure(format!(
            "Jacobi iteration did not converge within {MAX_SWEEPS} sweeps"
        )));
    }
    Ok(((0..n).map(|i| a[(i, i)].re).collect(), v))
}

fn off_diagonal_norm(a: &DenseOperator) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut DenseOperator, v: &mut DenseOperator, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.dim();

    // A <- A J with J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
    let pc = phase.conj();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * (pc * s);
        a[(k, q)] = akp * s + akq * (pc * c);
    }
    // A <- J^dagger A.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * (phase * s);
        a[(q, k)] = apk * s + aqk * (phase * c);
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * r, 0.0);
    a[(q, q)] = C64::new(aqq + t * r, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * (pc * s);
        v[(k, q)] = vkp * s + vkq * (pc * c);
    }
}

fn sorted(values: Vec<f64>, vectors: DenseOperator) -> EigenDecomposition {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = DenseOperator::from_fn(n, |i, j| vectors[(i, order[j])]);
    EigenDecomposition {
        values: sorted_values,
        vectors: sorted_vectors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{RngSeed, random_hermitian};

    #[test]
    fn diagonal_input() {
        let eig = hermitian_eig(&DenseOperator::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(eig.values, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = DenseOperator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let eig = hermitian_eig(&x).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-15);
        assert!((eig.values[1] + 1.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = eig.vector(0);
        let minus = eig.vector(1);
        // Up to a global phase the vectors are (1, 1)/sqrt2 and (1, -1)/sqrt2.
        assert!(((plus[0].conj() * plus[1]).re - 0.5).abs() < 1e-15);
        assert!(((minus[0].conj() * minus[1]).re + 0.5).abs() < 1e-15);
        assert!((plus[0].norm() - s).abs() < 1e-15);
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 2 and 0.
        let a = DenseOperator::from_fn(2, |i, j| match (i, j) {
            (0, 1) => C64::new(0.0, 1.0),
            (1, 0) => C64::new(0.0, -1.0),
            _ => C64::new(1.0, 0.0),
        });
        let eig = hermitian_eig(&a).unwrap();
        assert!((eig.values[0] - 2.0).abs() < 1e-15);
        assert!(eig.values[1].abs() < 1e-15);
        assert!(eig.reconstruct().max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn random_64_reconstruction() {
        let mut rng = RngSeed(42).rng();
        let a = random_hermitian(64, &mut rng);
        let eig = hermitian_eig(&a).unwrap();
        let err = (&eig.reconstruct() - &a).frobenius_norm();
        assert!(err < 1e-9 * 64.0, "reconstruction error {err}");
        assert!(eig.orthonormality_error() < 1e-10);
        let sum: f64 = eig.values.iter().sum();
        assert!((sum - a.trace().re).abs() < 1e-10 * 64.0);
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn blocked_matches_dense() {
        let mut rng = RngSeed(5).rng();
        let b1 = random_hermitian(3, &mut rng);
        let b2 = random_hermitian(4, &mut rng);
        // Interleave the two blocks: indices {0, 2, 4} and {1, 3, 5, 6}.
        let idx1 = [0, 2, 4];
        let idx2 = [1, 3, 5, 6];
        let mut a = DenseOperator::zeros(7);
        for (i, &r) in idx1.iter().enumerate() {
            for (j, &c) in idx1.iter().enumerate() {
                a[(r, c)] = b1[(i, j)];
            }
        }
        for (i, &r) in idx2.iter().enumerate() {
            for (j, &c) in idx2.iter().enumerate() {
                a[(r, c)] = b2[(i, j)];
            }
        }
        assert_eq!(connected_blocks(&a).len(), 2);
        let dense = hermitian_eig(&a).unwrap();
        let blocked = hermitian_eig_blocked(&a).unwrap();
        for (x, y) in dense.values.iter().zip(&blocked.values) {
            assert!((x - y).abs() < 1e-13);
        }
        assert!(blocked.reconstruct().max_abs_diff(&a) < 1e-13);
        assert!(blocked.orthonormality_error() < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = DenseOperator::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&a), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn degenerate_spectrum_keeps_orthonormal_basis() {
        let a = DenseOperator::identity(5).scale_real(2.5);
        let eig = hermitian_eig(&a).unwrap();
        assert_eq!(eig.top_multiplicity(1e-10), 5);
        assert!(eig.orthonormality_error() < 1e-15);
    }
}
