use super::matrix::{rref, Matrix};
use super::scalar::GaussianRational;
use crate::{Error, Result};

/// A subspace of `F^m` stored by its column-reduced echelon basis.
///
/// The basis is unique per subspace, so `==` is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// Canonical span of the columns of `spanning` (which must have `ambient_dim` rows).
    pub fn span(spanning: &Matrix) -> Self {
        let ambient_dim = spanning.rows();
        let e = rref(&spanning.transpose());
        let basis = e.reduced.select_rows(0..e.rank).transpose();
        Self { ambient_dim, basis }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<GaussianRational>]) -> Result<Self> {
        Ok(Self::span(&Matrix::from_columns(ambient_dim, vectors)?))
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.dim()).map(|j| self.basis.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::span(&self.basis.hstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        // (a, b) with U a = V b
        let k = null_space(&self.basis.hstack(&other.basis.neg())?);
        let coeffs = k.basis.select_rows(0..self.dim());
        Ok(Self::span(&self.basis.mul(&coeffs)))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn contains_vector(&self, v: &[GaussianRational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        self.contains(&Self::span(&Matrix::column(v)))
    }

    /// Rows spanning the annihilator: `W` with `ker W = self`.
    pub fn annihilator(&self) -> Matrix {
        null_space(&self.basis.transpose()).basis.transpose()
    }
}

/// `dim(big / small)`; requires `small ⊆ big`.
pub fn quotient_dim(small: &Subspace, big: &Subspace) -> Result<usize> {
    if !big.contains(small)? {
        return Err(Error::NotContained);
    }
    Ok(big.dim() - small.dim())
}

/// `{x : m x = 0}`.
pub fn null_space(m: &Matrix) -> Subspace {
    let e = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !e.pivot_cols.contains(c)).collect();
    let mut basis = Matrix::zeros(n, free.len());
    for (j, &f) in free.iter().enumerate() {
        basis[(f, j)] = GaussianRational::one();
        for (r, &p) in e.pivot_cols.iter().enumerate() {
            let v = &e.reduced[(r, f)];
            if !v.is_zero() {
                basis[(p, j)] = -v;
            }
        }
    }
    Subspace::span(&basis)
}

pub fn column_space(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

/// `{m x : x ∈ s}`.
pub fn map_image(m: &Matrix, s: &Subspace) -> Result<Subspace> {
    if m.cols() != s.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "image of a subspace of F^{} under a {}x{} map",
            s.ambient_dim(),
            m.rows(),
            m.cols()
        )));
    }
    Ok(Subspace::span(&m.mul(s.basis())))
}

/// `{x : m x ∈ s}`.
pub fn map_preimage(m: &Matrix, s: &Subspace) -> Result<Subspace> {
    if m.rows() != s.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "preimage of a subspace of F^{} under a {}x{} map",
            s.ambient_dim(),
            m.rows(),
            m.cols()
        )));
    }
    if s.is_full() {
        return Ok(Subspace::full(m.cols()));
    }
    Ok(null_space(&s.annihilator().mul(m)))
}
