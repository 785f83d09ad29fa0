//! Square matrix pencils `x E - A`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::{
    gaussian_rational_roots, map_image, map_preimage, null_space, pencil_det_poly,
    GaussianRational, Matrix, Polynomial, Subspace,
};
use crate::relation::{ExtendedScalar, LinearRelation, WeyrTable};
use crate::{Error, Result};

/// The pair `(E, A)` with its determinant polynomial `det(x E - A)`,
/// computed once at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPencil {
    e: Matrix,
    a: Matrix,
    det: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub finite_eigenvalues: Vec<(GaussianRational, usize)>,
    pub residual: Polynomial,
    pub has_infinity: bool,
    pub infinity_multiplicity: usize,
}

impl SpectrumReport {
    pub fn eigenvalues(&self) -> impl Iterator<Item = &GaussianRational> {
        self.finite_eigenvalues.iter().map(|(z, _)| z)
    }

    /// Planted eigenvalues plus `∞` when present.
    pub fn points(&self) -> Vec<ExtendedScalar> {
        let mut pts: Vec<ExtendedScalar> =
            self.eigenvalues().cloned().map(ExtendedScalar::Finite).collect();
        if self.has_infinity {
            pts.push(ExtendedScalar::Infinity);
        }
        pts
    }
}

impl OperatorPencil {
    pub fn new(e: Matrix, a: Matrix) -> Result<Self> {
        if !e.is_square() {
            return Err(Error::NotSquare {
                rows: e.rows(),
                cols: e.cols(),
            });
        }
        if e.rows() != a.rows() || e.cols() != a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "E is {}x{}, A is {}x{}",
                e.rows(),
                e.cols(),
                a.rows(),
                a.cols()
            )));
        }
        let det = pencil_det_poly(&e, &a)?;
        Ok(Self { e, a, det })
    }

    pub fn n(&self) -> usize {
        self.e.rows()
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn det_poly(&self) -> &Polynomial {
        &self.det
    }

    pub fn is_regular(&self) -> bool {
        !self.det.is_zero()
    }

    fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::NotRegular)
        }
    }

    /// `lam E - A`.
    pub fn evaluate(&self, lam: &GaussianRational) -> Matrix {
        self.e.scale(lam).sub(&self.a)
    }

    pub fn resolvent_point(&self, at: &ExtendedScalar) -> bool {
        match at {
            ExtendedScalar::Finite(mu) => !self.det.eval(mu).is_zero(),
            // the x^n coefficient of det(x E - A) is det E
            ExtendedScalar::Infinity => self.det.degree() == Some(self.n()),
        }
    }

    /// `E^-1 A = ker [A, -E] = {(x, z) : A x = E z}`.
    pub fn kernel_representation(&self) -> LinearRelation {
        LinearRelation::from_kernel(&self.a, &self.e.neg()).expect("square blocks")
    }

    /// `A E^-1 = ran [E; A] = {(E y, A y)}`.
    pub fn range_representation(&self) -> LinearRelation {
        LinearRelation::from_range(&self.e, &self.a).expect("square blocks")
    }

    /// `(A - mu E)^-1`, requiring a finite resolvent point.
    fn shifted_inverse(&self, mu: &GaussianRational) -> Result<Matrix> {
        if !self.resolvent_point(&ExtendedScalar::Finite(mu.clone())) {
            return Err(Error::NotResolventPoint(mu.to_string()));
        }
        self.a.sub(&self.e.scale(mu)).inverse()
    }

    /// `A E^-1 - lam` as `ran [E (A - mu E)^-1 ; I + (mu - lam) E (A - mu E)^-1]`.
    pub fn resolvent_form_range(
        &self,
        mu: &GaussianRational,
        lam: &GaussianRational,
    ) -> Result<LinearRelation> {
        let m = self.e.mul(&self.shifted_inverse(mu)?);
        let bottom = Matrix::identity(self.n()).add(&m.scale(&(mu - lam)));
        LinearRelation::from_range(&m, &bottom)
    }

    /// `E^-1 A - lam` as `ker [I + (mu - lam) (A - mu E)^-1 E , -(A - mu E)^-1 E]`.
    pub fn resolvent_form_kernel(
        &self,
        mu: &GaussianRational,
        lam: &GaussianRational,
    ) -> Result<LinearRelation> {
        let m = self.shifted_inverse(mu)?.mul(&self.e);
        let left = Matrix::identity(self.n()).add(&m.scale(&(mu - lam)));
        LinearRelation::from_kernel(&left, &m.neg())
    }

    /// The step map and feed map of the Jordan-chain recursion at `at`:
    /// `(A - lam E) x_{j+1} = E x_j`, or `E x_{j+1} = A x_j` at infinity.
    fn chain_maps(&self, at: &ExtendedScalar) -> (Matrix, &Matrix) {
        match at {
            ExtendedScalar::Finite(lam) => (self.a.sub(&self.e.scale(lam)), &self.e),
            ExtendedScalar::Infinity => (self.e.clone(), &self.a),
        }
    }

    /// Endpoints of Jordan chains of length `1, 2, ...` until the space stops growing
    /// (the stable space is repeated once at the end).
    pub fn root_subspaces(&self, at: &ExtendedScalar) -> Vec<Subspace> {
        let (step, feed) = self.chain_maps(at);
        let n = self.n();
        let mut out = Vec::new();
        let mut current = Subspace::zero(n);
        for _ in 0..=n {
            let target = map_image(feed, &current).expect("square");
            let next = map_preimage(&step, &target).expect("square");
            let stable = next == current;
            out.push(next.clone());
            if stable {
                break;
            }
            current = next;
        }
        out
    }

    /// `R^k` at `at` from the Jordan-chain recursion.
    pub fn root_subspace(&self, at: &ExtendedScalar, k: usize) -> Subspace {
        if k == 0 {
            return Subspace::zero(self.n());
        }
        let spaces = self.root_subspaces(at);
        spaces[(k - 1).min(spaces.len() - 1)].clone()
    }

    pub fn weyr_table(&self, at: &ExtendedScalar) -> Result<WeyrTable> {
        self.require_regular()?;
        let dims: Vec<usize> = self.root_subspaces(at).iter().map(Subspace::dim).collect();
        Ok(WeyrTable::from_root_dims(at.clone(), &dims))
    }

    pub fn spectrum(&self) -> Result<SpectrumReport> {
        self.require_regular()?;
        let factored = gaussian_rational_roots(&self.det)?;
        let deg = self.det.degree().expect("regular");
        Ok(SpectrumReport {
            finite_eigenvalues: factored.roots,
            residual: factored.residual,
            has_infinity: deg < self.n(),
            infinity_multiplicity: self.n() - deg,
        })
    }

    /// `(dim ker, codim ran)` of `lam E - A`, or of `E` at infinity.
    pub fn fredholm_data(&self, at: &ExtendedScalar) -> Result<(usize, usize)> {
        self.require_regular()?;
        let m = match at {
            ExtendedScalar::Finite(lam) => self.evaluate(lam),
            ExtendedScalar::Infinity => self.e.clone(),
        };
        let rank = m.rank();
        Ok((self.n() - rank, self.n() - rank))
    }

    /// Block-diagonal Weierstrass form: `(I, J(lam, s))` per finite block and
    /// `(N_s, I)` per infinite block.
    pub fn from_canonical(spec: &CanonicalSpec) -> Self {
        let mut es = Vec::new();
        let mut as_ = Vec::new();
        for (lam, size) in &spec.finite_blocks {
            es.push(Matrix::identity(*size));
            as_.push(jordan_block(lam, *size));
        }
        for &size in &spec.infinite_blocks {
            es.push(jordan_block(&GaussianRational::zero(), size));
            as_.push(Matrix::identity(size));
        }
        Self::new(Matrix::block_diag(&es), Matrix::block_diag(&as_)).expect("square blocks")
    }

    /// `(S E T, S A T)` for invertible `S`, `T`.
    pub fn apply_equivalence(&self, s: &Matrix, t: &Matrix) -> Result<Self> {
        for m in [s, t] {
            if m.rows() != self.n() || m.cols() != self.n() {
                return Err(Error::DimensionMismatch("equivalence size".into()));
            }
            if m.det()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        Self::new(s.mul(&self.e).mul(t), s.mul(&self.a).mul(t))
    }
}

impl fmt::Display for OperatorPencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E = {}, A = {}", self.e, self.a)
    }
}

/// `lam I + N` with ones on the superdiagonal.
pub fn jordan_block(lam: &GaussianRational, size: usize) -> Matrix {
    let mut m = Matrix::diagonal(&vec![lam.clone(); size]);
    for i in 0..size.saturating_sub(1) {
        m[(i, i + 1)] = GaussianRational::one();
    }
    m
}

/// Block structure of a regular pencil in Weierstrass form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CanonicalSpec {
    pub finite_blocks: Vec<(GaussianRational, usize)>,
    pub infinite_blocks: Vec<usize>,
}

impl CanonicalSpec {
    pub fn dim(&self) -> usize {
        self.finite_blocks.iter().map(|(_, s)| s).sum::<usize>()
            + self.infinite_blocks.iter().sum::<usize>()
    }

    /// Distinct eigenvalues in first-appearance order, then `∞` if present.
    pub fn points(&self) -> Vec<ExtendedScalar> {
        let mut pts: Vec<ExtendedScalar> = Vec::new();
        for (lam, _) in &self.finite_blocks {
            let p = ExtendedScalar::Finite(lam.clone());
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        if !self.infinite_blocks.is_empty() {
            pts.push(ExtendedScalar::Infinity);
        }
        pts
    }

    fn block_sizes(&self, at: &ExtendedScalar) -> Vec<usize> {
        match at {
            ExtendedScalar::Finite(lam) => self
                .finite_blocks
                .iter()
                .filter(|(l, _)| l == lam)
                .map(|(_, s)| *s)
                .collect(),
            ExtendedScalar::Infinity => self.infinite_blocks.clone(),
        }
    }

    /// `w_k` = number of blocks at `at` of size at least `k`.
    pub fn planted_weyr(&self, at: &ExtendedScalar) -> Vec<usize> {
        let sizes = self.block_sizes(at);
        let longest = sizes.iter().copied().max().unwrap_or(0);
        (1..=longest)
            .map(|k| sizes.iter().filter(|&&s| s >= k).count())
            .collect()
    }
}

impl fmt::Display for CanonicalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .finite_blocks
            .iter()
            .map(|(lam, s)| format!("{s}@{lam}"))
            .chain(self.infinite_blocks.iter().map(|s| format!("{s}@inf")))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for CanonicalSpec {
    type Err = Error;

    /// `size@eigenvalue` or `size@inf`, comma separated, e.g. `2@1/1,3@0/1,2@inf`.
    fn from_str(s: &str) -> Result<Self> {
        let mut spec = CanonicalSpec::default();
        if s.is_empty() {
            return Ok(spec);
        }
        for block in s.split(',') {
            let (size, at) = block
                .split_once('@')
                .ok_or_else(|| Error::Parse(format!("block `{block}` lacks `@`")))?;
            let size: usize = size
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::Parse(format!("bad block size in `{block}`")))?;
            match at.parse::<ExtendedScalar>()? {
                ExtendedScalar::Infinity => spec.infinite_blocks.push(size),
                ExtendedScalar::Finite(lam) => spec.finite_blocks.push((lam, size)),
            }
        }
        Ok(spec)
    }
}

/// `ker(x E - A)` evaluated at `lam`.
pub fn pencil_kernel(p: &OperatorPencil, lam: &GaussianRational) -> Subspace {
    null_space(&p.evaluate(lam))
}
