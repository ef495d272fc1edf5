use std::ops::{Add, Index, IndexMut, Mul, Sub};

use super::register::QuditRegister;
use super::C64;
use crate::error::{Error, Result};

/// Square complex matrix stored row-major.
///
/// Algebraic operations between operators of different dimension panic,
/// like the usual dense-matrix types; register-aware operations return
/// `Result`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<C64>,
}

/// Largest operator dimension we are willing to store densely (256 MiB).
pub const MAX_DENSE_DIM: usize = 4096;

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out[(i, i)] = C64::new(1.0, 0.0);
        }
        out
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds an operator from row-major data of length `dim * dim`.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |i, j| {
            assert_eq!(rows[i].len(), dim, "rows must form a square matrix");
            C64::new(rows[i][j], 0.0)
        })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut out = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            out[(i, i)] = C64::new(v, 0.0);
        }
        out
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len());
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: C64, other: &Self) {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A - A^dagger|` over all entries.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// Frobenius inner product `Tr(A^dagger B)`.
    pub fn hs_inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `<u|A|v>`.
    pub fn sandwich(&self, u: &[C64], v: &[C64]) -> C64 {
        let av = self.matvec(v);
        u.iter().zip(&av).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(&other.data[k * n..(k + 1) * n]) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`; `self` occupies the more
    /// significant digits.
    pub fn kron(&self, other: &Self) -> Self {
        let (m, n) = (self.dim, other.dim);
        Self::from_fn(m * n, |i, j| self[(i / n, j / n)] * other[(i % n, j % n)])
    }

    /// Operator acting as `op` on `sites` (in the given order) and as the
    /// identity on the rest of `register`.
    pub fn embed(op: &Self, sites: &[usize], register: &QuditRegister) -> Result<Self> {
        register.check_sites(sites)?;
        let local = register.local_dim().pow(sites.len() as u32);
        if op.dim != local {
            return Err(Error::DimensionMismatch {
                expected: local,
                got: op.dim,
            });
        }
        check_dense(register.dim())?;
        let keep = register.offsets(sites);
        let env = register.offsets(&register.complement(sites));
        let mut out = Self::zeros(register.dim());
        for (a, &ka) in keep.iter().enumerate() {
            for (b, &kb) in keep.iter().enumerate() {
                let v = op[(a, b)];
                if v == C64::new(0.0, 0.0) {
                    continue;
                }
                for &e in &env {
                    out[(ka + e, kb + e)] = v;
                }
            }
        }
        Ok(out)
    }

    /// Embeds a two-qudit operator on the ordered pair `(a, b)`.
    pub fn embed_pair(op: &Self, sites: (usize, usize), register: &QuditRegister) -> Result<Self> {
        if sites.0 == sites.1 {
            return Err(Error::InvalidSites(format!(
                "pair operator needs two distinct sites, got ({0}, {0})",
                sites.0
            )));
        }
        Self::embed(op, &[sites.0, sites.1], register)
    }

    /// Reduced operator on `keep` (in the given order), tracing out the
    /// remaining sites of `register`.
    pub fn partial_trace(&self, register: &QuditRegister, keep: &[usize]) -> Result<Self> {
        if self.dim != register.dim() {
            return Err(Error::DimensionMismatch {
                expected: register.dim(),
                got: self.dim,
            });
        }
        register.check_sites(keep)?;
        let ok = register.offsets(keep);
        let oe = register.offsets(&register.complement(keep));
        Ok(Self::from_fn(ok.len(), |a, b| {
            oe.iter().map(|&e| self[(ok[a] + e, ok[b] + e)]).sum()
        }))
    }

    /// `A <- (u on site) A` for a single-qudit operator `u`.
    pub fn left_apply_local(&mut self, register: &QuditRegister, site: usize, u: &Self) {
        let n = self.dim;
        let d = register.local_dim();
        assert_eq!(n, register.dim());
        assert_eq!(u.dim, d);
        let pv = register.place_value(site);
        let mut scratch = vec![C64::new(0.0, 0.0); d * n];
        for hi in (0..n).step_by(d * pv) {
            for lo in 0..pv {
                for x in 0..d {
                    let dst = &mut scratch[x * n..(x + 1) * n];
                    dst.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
                    for y in 0..d {
                        let c = u[(x, y)];
                        if c == C64::new(0.0, 0.0) {
                            continue;
                        }
                        let src = hi + y * pv + lo;
                        for (o, &v) in dst.iter_mut().zip(&self.data[src * n..(src + 1) * n]) {
                            *o += c * v;
                        }
                    }
                }
                for x in 0..d {
                    let dst = hi + x * pv + lo;
                    self.data[dst * n..(dst + 1) * n].copy_from_slice(&scratch[x * n..(x + 1) * n]);
                }
            }
        }
    }

    /// `A <- A (u on site)` for a single-qudit operator `u`.
    pub fn right_apply_local(&mut self, register: &QuditRegister, site: usize, u: &Self) {
        let n = self.dim;
        let d = register.local_dim();
        assert_eq!(n, register.dim());
        assert_eq!(u.dim, d);
        let pv = register.place_value(site);
        let mut buf = vec![C64::new(0.0, 0.0); d];
        for row in self.data.chunks_exact_mut(n) {
            for hi in (0..n).step_by(d * pv) {
                for lo in 0..pv {
                    for (x, slot) in buf.iter_mut().enumerate() {
                        *slot = (0..d).map(|y| row[hi + y * pv + lo] * u[(y, x)]).sum();
                    }
                    for (x, &v) in buf.iter().enumerate() {
                        row[hi + x * pv + lo] = v;
                    }
                }
            }
        }
    }
}

pub(crate) fn check_dense(dim: usize) -> Result<()> {
    if dim > MAX_DENSE_DIM {
        return Err(Error::TooLarge(format!(
            "dense operator of dimension {dim} exceeds {MAX_DENSE_DIM}"
        )));
    }
    Ok(())
}

impl Index<(usize, usize)> for DenseOperator {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for DenseOperator {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &DenseOperator {
    type Output = DenseOperator;

    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        self.matmul(rhs)
    }
}

impl Add for &DenseOperator {
    type Output = DenseOperator;

    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        let mut out = self.clone();
        out.add_scaled(C64::new(1.0, 0.0), rhs);
        out
    }
}

impl Sub for &DenseOperator {
    type Output = DenseOperator;

    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        let mut out = self.clone();
        out.add_scaled(C64::new(-1.0, 0.0), rhs);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_x() -> DenseOperator {
        DenseOperator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    fn pauli_z() -> DenseOperator {
        DenseOperator::diagonal(&[1.0, -1.0])
    }

    #[test]
    fn embed_reversed_non_adjacent_pair() {
        let reg = QuditRegister::new(3, 2).unwrap();
        let xz = pauli_x().kron(&pauli_z());
        let embedded = DenseOperator::embed_pair(&xz, (2, 0), &reg).unwrap();
        let expected = pauli_z().kron(&DenseOperator::identity(2)).kron(&pauli_x());
        assert_eq!(embedded.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn embed_identity_and_full_register() {
        let reg = QuditRegister::new(3, 2).unwrap();
        let id = DenseOperator::embed_pair(&DenseOperator::identity(4), (0, 2), &reg).unwrap();
        assert_eq!(id, DenseOperator::identity(8));

        let reg2 = QuditRegister::new(2, 3).unwrap();
        let op = DenseOperator::from_fn(9, |i, j| C64::new((i * 9 + j) as f64, 0.0));
        assert_eq!(DenseOperator::embed_pair(&op, (0, 1), &reg2).unwrap(), op);
        assert!(matches!(
            DenseOperator::embed_pair(&op, (1, 1), &reg2),
            Err(Error::InvalidSites(_))
        ));
    }

    #[test]
    fn local_application_matches_kron() {
        let reg = QuditRegister::new(3, 2).unwrap();
        let base = DenseOperator::from_fn(8, |i, j| C64::new(i as f64 - 0.5 * j as f64, (i * j) as f64));
        let u = DenseOperator::from_fn(2, |i, j| C64::new(1.0 + i as f64, j as f64 - 0.3));
        let full = DenseOperator::embed(&u, &[1], &reg).unwrap();

        let mut left = base.clone();
        left.left_apply_local(&reg, 1, &u);
        assert!(left.max_abs_diff(&(&full * &base)) < 1e-12);

        let mut right = base.clone();
        right.right_apply_local(&reg, 1, &u);
        assert!(right.max_abs_diff(&(&base * &full)) < 1e-12);
    }

    #[test]
    fn partial_trace_composes() {
        let reg = QuditRegister::new(3, 2).unwrap();
        let a = DenseOperator::from_fn(8, |i, j| C64::new((i + 2 * j) as f64, i as f64 - j as f64));
        let joint = a.partial_trace(&reg, &[1]).unwrap();
        let step = a.partial_trace(&reg, &[0, 1]).unwrap();
        let reg2 = QuditRegister::new(2, 2).unwrap();
        let step = step.partial_trace(&reg2, &[1]).unwrap();
        assert!(joint.max_abs_diff(&step) < 1e-12);
        assert!((joint.trace() - a.trace()).norm() < 1e-12);
    }

    #[test]
    fn oversized_embedding_is_rejected() {
        let reg = QuditRegister::new(13, 2).unwrap();
        assert!(matches!(
            DenseOperator::embed(&DenseOperator::identity(2), &[0], &reg),
            Err(Error::TooLarge(_))
        ));
    }
}
