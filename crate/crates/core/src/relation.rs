//! Linear relations: subspaces of `F^m x F^n` read as multivalued maps.
//!
//! A relation is stored as the canonical span of stacked pairs `(x; y)`.
//! Every operation reduces to subspace arithmetic on block matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{
    gaussian_rational_roots, map_preimage, minor_gcd_poly, null_space, GaussianRational,
    Matrix, Polynomial, Subspace,
};
use crate::{Error, Result};

/// A point of the extended spectral parameter space `C ∪ {∞}`, restricted to `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedScalar {
    Finite(GaussianRational),
    Infinity,
}

impl ExtendedScalar {
    pub fn finite(&self) -> Option<&GaussianRational> {
        match self {
            ExtendedScalar::Finite(z) => Some(z),
            ExtendedScalar::Infinity => None,
        }
    }
}

impl From<GaussianRational> for ExtendedScalar {
    fn from(z: GaussianRational) -> Self {
        ExtendedScalar::Finite(z)
    }
}

impl fmt::Display for ExtendedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedScalar::Finite(z) => write!(f, "{z}"),
            ExtendedScalar::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtendedScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "∞" => Ok(ExtendedScalar::Infinity),
            _ => Ok(ExtendedScalar::Finite(s.parse()?)),
        }
    }
}

impl Serialize for ExtendedScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtendedScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Weyr characteristic at one point: `indices[k-1] = dim R^k / R^(k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeyrTable {
    pub at: ExtendedScalar,
    pub indices: Vec<usize>,
    pub root_dims: Vec<usize>,
}

impl WeyrTable {
    /// Builds the table from root-subspace dimensions `dim R^1, dim R^2, ...`,
    /// truncated where they stop growing.
    pub fn from_root_dims(at: ExtendedScalar, dims: &[usize]) -> Self {
        let mut indices = Vec::new();
        let mut root_dims = Vec::new();
        let mut prev = 0;
        for &d in dims {
            if d <= prev {
                break;
            }
            indices.push(d - prev);
            root_dims.push(d);
            prev = d;
        }
        Self {
            at,
            indices,
            root_dims,
        }
    }

    /// `w_k` for `k >= 1` (zero past stabilization).
    pub fn w(&self, k: usize) -> usize {
        self.indices.get(k - 1).copied().unwrap_or(0)
    }

    /// `dim R^k` for `k >= 1`.
    pub fn root_dim(&self, k: usize) -> usize {
        match self.root_dims.len() {
            0 => 0,
            len => self.root_dims[(k - 1).min(len - 1)],
        }
    }

    pub fn is_monotone(&self) -> bool {
        self.indices.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Finite eigenvalues in `Q(i)`, the residual carrying the rest, and whether
/// `∞` is an eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpectrum {
    pub finite: Vec<GaussianRational>,
    pub infinity: bool,
    pub residual: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearRelation {
    dim_x: usize,
    dim_y: usize,
    span: Subspace,
}

impl LinearRelation {
    pub fn from_subspace(dim_x: usize, dim_y: usize, span: Subspace) -> Result<Self> {
        if span.ambient_dim() != dim_x + dim_y {
            return Err(Error::DimensionMismatch(format!(
                "subspace of F^{} for a relation F^{dim_x} -> F^{dim_y}",
                span.ambient_dim()
            )));
        }
        Ok(Self { dim_x, dim_y, span })
    }

    /// Span of the given pairs `(x, y)`.
    pub fn from_span(
        dim_x: usize,
        dim_y: usize,
        pairs: &[(Vec<GaussianRational>, Vec<GaussianRational>)],
    ) -> Result<Self> {
        let mut cols = Vec::with_capacity(pairs.len());
        for (x, y) in pairs {
            if x.len() != dim_x || y.len() != dim_y {
                return Err(Error::DimensionMismatch(format!(
                    "pair of lengths ({}, {}) in a relation F^{dim_x} -> F^{dim_y}",
                    x.len(),
                    y.len()
                )));
            }
            cols.push(x.iter().chain(y).cloned().collect::<Vec<_>>());
        }
        Self::from_subspace(dim_x, dim_y, Subspace::from_vectors(dim_x + dim_y, &cols)?)
    }

    /// `{(x, m x)}`.
    pub fn from_graph(m: &Matrix) -> Self {
        let stacked = Matrix::identity(m.cols()).vstack(m).expect("same width");
        Self {
            dim_x: m.cols(),
            dim_y: m.rows(),
            span: Subspace::span(&stacked),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_graph(&Matrix::identity(n))
    }

    /// `F^m x F^n`.
    pub fn full(dim_x: usize, dim_y: usize) -> Self {
        Self {
            dim_x,
            dim_y,
            span: Subspace::full(dim_x + dim_y),
        }
    }

    /// `{(0, 0)}`.
    pub fn zero(dim_x: usize, dim_y: usize) -> Self {
        Self {
            dim_x,
            dim_y,
            span: Subspace::zero(dim_x + dim_y),
        }
    }

    /// `ran [top; bottom] = {(top z, bottom z)}`.
    pub fn from_range(top: &Matrix, bottom: &Matrix) -> Result<Self> {
        let stacked = top.vstack(bottom)?;
        Self::from_subspace(top.rows(), bottom.rows(), Subspace::span(&stacked))
    }

    /// `ker [left, right] = {(x, y) : left x + right y = 0}`.
    pub fn from_kernel(left: &Matrix, right: &Matrix) -> Result<Self> {
        let joined = left.hstack(right)?;
        Self::from_subspace(left.cols(), right.cols(), null_space(&joined))
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn dim_y(&self) -> usize {
        self.dim_y
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Dimension of the relation as a subspace.
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Spanning pairs `(x, y)` of the canonical basis.
    pub fn pairs(&self) -> Vec<(Vec<GaussianRational>, Vec<GaussianRational>)> {
        self.span
            .vectors()
            .into_iter()
            .map(|mut v| {
                let y = v.split_off(self.dim_x);
                (v, y)
            })
            .collect()
    }

    /// `x`-rows of the canonical basis.
    pub fn x_block(&self) -> Matrix {
        self.span.basis().select_rows(0..self.dim_x)
    }

    /// `y`-rows of the canonical basis.
    pub fn y_block(&self) -> Matrix {
        self.span
            .basis()
            .select_rows(self.dim_x..self.dim_x + self.dim_y)
    }

    fn require_square(&self) -> Result<usize> {
        if self.dim_x != self.dim_y {
            return Err(Error::NonSquareRelation {
                dim_x: self.dim_x,
                dim_y: self.dim_y,
            });
        }
        Ok(self.dim_x)
    }

    fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.dim_x != other.dim_x || self.dim_y != other.dim_y {
            return Err(Error::DimensionMismatch(format!(
                "relations F^{} -> F^{} and F^{} -> F^{}",
                self.dim_x, self.dim_y, other.dim_x, other.dim_y
            )));
        }
        Ok(())
    }

    /// `{(x, y1 + y2) : (x, y1) ∈ self, (x, y2) ∈ other}`.
    pub fn op_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        let (lx, ly) = (self.x_block(), self.y_block());
        let (mx, my) = (other.x_block(), other.y_block());
        // coefficient pairs (a, b) with lx a = mx b
        let fiber = null_space(&lx.hstack(&mx.neg())?);
        let a = fiber.basis().select_rows(0..self.dim());
        let b = fiber.basis().select_rows(self.dim()..self.dim() + other.dim());
        let top = lx.mul(&a);
        let bottom = ly.mul(&a).add(&my.mul(&b));
        Self::from_range(&top, &bottom)
    }

    /// `self ∘ inner = {(x, z) : (x, y) ∈ inner, (y, z) ∈ self}`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.dim_y != self.dim_x {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose F^{} -> F^{} after F^{} -> F^{}",
                self.dim_x, self.dim_y, inner.dim_x, inner.dim_y
            )));
        }
        let (ix, iy) = (inner.x_block(), inner.y_block());
        let (ox, oz) = (self.x_block(), self.y_block());
        let fiber = null_space(&iy.hstack(&ox.neg())?);
        let a = fiber.basis().select_rows(0..inner.dim());
        let b = fiber.basis().select_rows(inner.dim()..inner.dim() + self.dim());
        Self::from_range(&ix.mul(&a), &oz.mul(&b))
    }

    pub fn inverse(&self) -> Self {
        let swapped = self.y_block().vstack(&self.x_block()).expect("same width");
        Self {
            dim_x: self.dim_y,
            dim_y: self.dim_x,
            span: Subspace::span(&swapped),
        }
    }

    /// `{y : ∃x ∈ s, (x, y) ∈ self}`.
    pub fn image(&self, s: &Subspace) -> Result<Subspace> {
        let coeffs = map_preimage(&self.x_block(), s)?;
        Ok(Subspace::span(&self.y_block().mul(coeffs.basis())))
    }

    /// `{x : ∃y ∈ s, (x, y) ∈ self}`.
    pub fn preimage(&self, s: &Subspace) -> Result<Subspace> {
        self.inverse().image(s)
    }

    pub fn kernel(&self) -> Subspace {
        self.preimage(&Subspace::zero(self.dim_y)).expect("matching dims")
    }

    pub fn domain(&self) -> Subspace {
        Subspace::span(&self.x_block())
    }

    pub fn range(&self) -> Subspace {
        Subspace::span(&self.y_block())
    }

    pub fn mul_part(&self) -> Subspace {
        self.image(&Subspace::zero(self.dim_x)).expect("matching dims")
    }

    /// `{(x, y - lam x)}`.
    pub fn shift(&self, lam: &GaussianRational) -> Result<Self> {
        self.require_square()?;
        if lam.is_zero() {
            return Ok(self.clone());
        }
        let x = self.x_block();
        let y = self.y_block().sub(&x.scale(lam));
        Self::from_range(&x, &y)
    }

    /// `k`-fold composition; `power(0)` is the identity.
    pub fn power(&self, k: usize) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Self::identity(n);
        for _ in 0..k {
            let next = self.compose(&acc)?;
            if next == acc {
                break;
            }
            acc = next;
        }
        Ok(acc)
    }

    /// The relation whose kernel chain gives the root subspaces at `at`
    /// (`self - at`, or `self^-1` at infinity).
    fn chain_relation(&self, at: &ExtendedScalar) -> Result<Self> {
        match at {
            ExtendedScalar::Finite(lam) => self.shift(lam),
            ExtendedScalar::Infinity => {
                self.require_square()?;
                Ok(self.inverse())
            }
        }
    }

    /// Root subspaces `R^1, R^2, ...` up to the first repetition (inclusive
    /// of the stable one), hard-stopped at the ambient dimension.
    pub fn root_subspaces(&self, at: &ExtendedScalar) -> Result<Vec<Subspace>> {
        let chain = self.chain_relation(at)?;
        let n = self.dim_x;
        let mut out: Vec<Subspace> = Vec::new();
        let mut current = Subspace::zero(n);
        for _ in 0..=n {
            // ker S^(k+1) = S^-1 (ker S^k)
            let next = chain.preimage(&current)?;
            let stable = next == current;
            out.push(next.clone());
            if stable {
                break;
            }
            current = next;
        }
        Ok(out)
    }

    /// `ker (self - lam)^k`, or `ker self^-k = mul self^k` at infinity.
    pub fn root_subspace(&self, at: &ExtendedScalar, k: usize) -> Result<Subspace> {
        let spaces = self.root_subspaces(at)?;
        if k == 0 {
            return Ok(Subspace::zero(self.dim_x));
        }
        Ok(spaces[(k - 1).min(spaces.len() - 1)].clone())
    }

    /// Union of all root subspaces at `at`.
    pub fn stable_root_subspace(&self, at: &ExtendedScalar) -> Result<Subspace> {
        Ok(self.root_subspaces(at)?.pop().expect("at least one"))
    }

    pub fn weyr_table(&self, at: &ExtendedScalar) -> Result<WeyrTable> {
        let dims: Vec<usize> = self.root_subspaces(at)?.iter().map(Subspace::dim).collect();
        Ok(WeyrTable::from_root_dims(at.clone(), &dims))
    }

    /// Vectors belonging to chains at both `0` and `∞`.
    pub fn singular_chain_space(&self) -> Result<Subspace> {
        let zero = self.stable_root_subspace(&ExtendedScalar::Finite(GaussianRational::zero()))?;
        let inf = self.stable_root_subspace(&ExtendedScalar::Infinity)?;
        zero.intersect(&inf)
    }

    pub fn is_resolvent_point(&self, at: &ExtendedScalar) -> Result<bool> {
        let n = self.require_square()?;
        Ok(match at {
            ExtendedScalar::Finite(lam) => {
                let s = self.shift(lam)?;
                s.kernel().is_zero() && s.range().dim() == n
            }
            ExtendedScalar::Infinity => self.mul_part().is_zero() && self.domain().dim() == n,
        })
    }

    pub fn point_spectrum(&self) -> Result<PointSpectrum> {
        let n = self.require_square()?;
        let d = self.dim();
        if d > n {
            return Err(Error::NoResolventPoint);
        }
        // ker(self - lam) ≅ ker(lam P - Q) since [P; Q] has full column rank
        let locus = minor_gcd_poly(&self.x_block(), &self.y_block(), d)?;
        if locus.is_zero() {
            return Err(Error::NoResolventPoint);
        }
        let factored = gaussian_rational_roots(&locus)?;
        Ok(PointSpectrum {
            finite: factored.roots.into_iter().map(|(r, _)| r).collect(),
            infinity: !self.mul_part().is_zero(),
            residual: factored.residual,
        })
    }

    /// The matrix of an everywhere-defined single-valued relation.
    pub fn as_operator(&self) -> Option<Matrix> {
        if !self.mul_part().is_zero() || self.domain().dim() != self.dim_x {
            return None;
        }
        // the basis is [X; Y] with X invertible
        let x = self.x_block();
        let inv = x.inverse().ok()?;
        Some(self.y_block().mul(&inv))
    }

    /// Range and kernel forms of `self - lam` built from the resolvent at `mu`.
    pub fn resolvent_representations(
        &self,
        mu: &GaussianRational,
        lam: &GaussianRational,
    ) -> Result<(Self, Self)> {
        let n = self.require_square()?;
        if !self.is_resolvent_point(&ExtendedScalar::Finite(mu.clone()))? {
            return Err(Error::NotResolventPoint(mu.to_string()));
        }
        let resolvent = self
            .shift(mu)?
            .inverse()
            .as_operator()
            .ok_or_else(|| Error::NotResolventPoint(mu.to_string()))?;
        let shifted = Matrix::identity(n).add(&resolvent.scale(&(mu - lam)));
        let via_range = Self::from_range(&resolvent, &shifted)?;
        let via_kernel = Self::from_kernel(&shifted, &resolvent.neg())?;
        Ok((via_range, via_kernel))
    }
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, (x, y)) in self.pairs().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let join = |v: &[GaussianRational]| {
                v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            };
            write!(f, "(({}),({}))", join(x), join(y))?;
        }
        write!(f, "}} in F^{} x F^{}", self.dim_x, self.dim_y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<GaussianRational> {
        xs.iter().map(|&x| GaussianRational::from_int(x)).collect()
    }

    fn fin(s: &str) -> ExtendedScalar {
        ExtendedScalar::Finite(q(s))
    }

    fn j(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n - 1 {
            m[(i, i + 1)] = GaussianRational::one();
        }
        m
    }

    #[test]
    fn constructors() {
        assert_eq!(LinearRelation::from_graph(&Matrix::identity(2)), LinearRelation::identity(2));
        let shuffled = LinearRelation::from_span(
            2,
            2,
            &[
                (ints(&[1, 1]), ints(&[1, 1])),
                (ints(&[0, 1]), ints(&[0, 1])),
                (ints(&[2, 0]), ints(&[2, 0])),
            ],
        )
        .unwrap();
        assert_eq!(shuffled, LinearRelation::identity(2));
        assert_eq!(LinearRelation::from_graph(&j(2)).dim(), 2);
        assert!(LinearRelation::from_span(2, 2, &[(ints(&[1]), ints(&[1, 0]))]).is_err());
    }

    #[test]
    fn sums() {
        let l = LinearRelation::from_graph(&Matrix::from_ints(&[[1, 2], [3, 4]]));
        let zero_map = LinearRelation::from_graph(&Matrix::zeros(2, 2));
        assert_eq!(l.op_sum(&zero_map).unwrap(), l);
        let m1 = Matrix::from_ints(&[[1, 2], [3, 4]]);
        let m2 = Matrix::from_ints(&[[0, -1], [5, 1]]);
        assert_eq!(
            LinearRelation::from_graph(&m1)
                .op_sum(&LinearRelation::from_graph(&m2))
                .unwrap(),
            LinearRelation::from_graph(&m1.add(&m2))
        );
        let s = LinearRelation::identity(1)
            .op_sum(&LinearRelation::from_graph(&Matrix::zeros(1, 1)).inverse())
            .unwrap();
        assert_eq!(s, LinearRelation::from_span(1, 1, &[(ints(&[0]), ints(&[1]))]).unwrap());
        assert!(l.op_sum(&LinearRelation::identity(3)).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let l = LinearRelation::from_graph(&Matrix::from_ints(&[[1, 2], [3, 4]]));
        assert_eq!(LinearRelation::identity(2).compose(&l).unwrap(), l);
        assert_eq!(l.inverse().inverse(), l);
        let c = LinearRelation::from_graph(&Matrix::zeros(2, 2))
            .inverse()
            .compose(&LinearRelation::from_graph(&Matrix::identity(2)))
            .unwrap();
        assert_eq!(c.domain(), Subspace::zero(2));
        assert!(c.mul_part().is_full());
        assert_eq!(c.dim(), 2);
        assert!(l.compose(&LinearRelation::identity(3)).is_err());
    }

    #[test]
    fn kernel_domain_range_mul() {
        let id = LinearRelation::identity(3);
        assert!(id.kernel().is_zero() && id.mul_part().is_zero());
        assert!(id.domain().is_full() && id.range().is_full());
        let inv = LinearRelation::from_graph(&j(2)).inverse();
        assert_eq!(inv.mul_part(), Subspace::from_vectors(2, &[ints(&[1, 0])]).unwrap());
        let pure = LinearRelation::from_span(2, 2, &[(ints(&[0, 0]), ints(&[1, 0]))]).unwrap();
        assert!(pure.domain().is_zero());
        assert_eq!(pure.mul_part(), Subspace::from_vectors(2, &[ints(&[1, 0])]).unwrap());
    }

    #[test]
    fn shifts() {
        let l = LinearRelation::from_graph(&Matrix::from_ints(&[[1, 2], [3, 4]]));
        assert_eq!(l.shift(&q("0")).unwrap(), l);
        assert_eq!(
            LinearRelation::identity(2).shift(&q("1")).unwrap(),
            LinearRelation::from_graph(&Matrix::zeros(2, 2))
        );
        let d = LinearRelation::from_graph(&Matrix::from_ints(&[[2, 0], [0, 3]]));
        assert_eq!(
            d.shift(&q("2")).unwrap().kernel(),
            Subspace::from_vectors(2, &[ints(&[1, 0])]).unwrap()
        );
        assert!(LinearRelation::full(1, 2).shift(&q("1")).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(LinearRelation::identity(3).power(5).unwrap(), LinearRelation::identity(3));
        assert_eq!(
            LinearRelation::from_graph(&j(3)).power(3).unwrap(),
            LinearRelation::from_graph(&Matrix::zeros(3, 3))
        );
        let l = LinearRelation::from_graph(&Matrix::from_ints(&[[1, 2], [0, 0]]));
        assert_eq!(l.power(2).unwrap(), l.compose(&l).unwrap());
    }

    #[test]
    fn root_subspaces_of_jordan_block() {
        let l = LinearRelation::from_graph(&j(3));
        let dims: Vec<usize> = (1..=3)
            .map(|k| l.root_subspace(&fin("0"), k).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![1, 2, 3]);
        for k in 1..=3 {
            assert_eq!(
                l.root_subspace(&fin("0"), k).unwrap(),
                l.power(k).unwrap().kernel()
            );
        }
        assert!(LinearRelation::from_graph(&j(2))
            .root_subspace(&ExtendedScalar::Infinity, 1)
            .unwrap()
            .is_zero());
        assert!(LinearRelation::full(2, 2)
            .root_subspace(&fin("0"), 1)
            .unwrap()
            .is_full());
    }

    #[test]
    fn weyr_tables() {
        let l = LinearRelation::from_graph(&j(3));
        assert_eq!(l.weyr_table(&fin("0")).unwrap().indices, vec![1, 1, 1]);
        assert_eq!(l.weyr_table(&fin("0")).unwrap().root_dims, vec![1, 2, 3]);
        assert!(l.weyr_table(&fin("1")).unwrap().is_empty());
        let z = LinearRelation::from_graph(&Matrix::zeros(2, 2));
        assert_eq!(z.weyr_table(&fin("0")).unwrap().indices, vec![2]);
        assert!(LinearRelation::full(2, 3).weyr_table(&fin("0")).is_err());
    }

    #[test]
    fn singular_chains() {
        let l = LinearRelation::from_graph(&j(3));
        assert!(l.singular_chain_space().unwrap().is_zero());
        assert!(LinearRelation::full(2, 2).singular_chain_space().unwrap().is_full());
        let pure = LinearRelation::from_span(1, 1, &[(ints(&[0]), ints(&[1]))]).unwrap();
        assert!(pure.singular_chain_space().unwrap().is_zero());
    }

    #[test]
    fn resolvent_points() {
        let l = LinearRelation::from_graph(&j(2));
        assert!(l.is_resolvent_point(&fin("1")).unwrap());
        assert!(!l.is_resolvent_point(&fin("0")).unwrap());
        assert!(l.is_resolvent_point(&ExtendedScalar::Infinity).unwrap());
    }

    #[test]
    fn point_spectra() {
        let d = LinearRelation::from_graph(&Matrix::from_ints(&[[1, 0], [0, 2]]));
        let s = d.point_spectrum().unwrap();
        assert_eq!(s.finite, vec![q("1"), q("2")]);
        assert!(!s.infinity);
        let pure = LinearRelation::from_span(1, 1, &[(ints(&[0]), ints(&[1]))]).unwrap();
        let s = pure.point_spectrum().unwrap();
        assert!(s.finite.is_empty() && s.infinity);
        let rot = LinearRelation::from_graph(&Matrix::from_ints(&[[0, -1], [1, 0]]));
        assert_eq!(rot.point_spectrum().unwrap().finite, vec![q("0-1*i"), q("0+1*i")]);
        assert_eq!(
            LinearRelation::full(2, 2).point_spectrum(),
            Err(Error::NoResolventPoint)
        );
    }

    #[test]
    fn resolvent_representations() {
        let l = LinearRelation::from_graph(&Matrix::from_ints(&[[2, 0], [0, 3]]));
        let (r, k) = l.resolvent_representations(&q("0"), &q("1")).unwrap();
        let target = l.shift(&q("1")).unwrap();
        assert_eq!(r, target);
        assert_eq!(k, target);
        let (r, k) = l.resolvent_representations(&q("5"), &q("5")).unwrap();
        assert_eq!(r, l.shift(&q("5")).unwrap());
        assert_eq!(k, l.shift(&q("5")).unwrap());
        let id = LinearRelation::identity(1);
        let (r, k) = id.resolvent_representations(&q("2"), &q("0")).unwrap();
        assert_eq!(r, id);
        assert_eq!(k, id);
        assert!(matches!(
            l.resolvent_representations(&q("2"), &q("0")),
            Err(Error::NotResolventPoint(_))
        ));
    }

    #[test]
    fn weyr_table_invariants() {
        let t = WeyrTable::from_root_dims(fin("0"), &[2, 3, 3, 3]);
        assert_eq!(t.indices, vec![2, 1]);
        assert_eq!(t.root_dim(5), 3);
        assert_eq!(t.w(3), 0);
        assert!(t.is_monotone());
    }
}
