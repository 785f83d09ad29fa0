//! Rank-one perturbations of pencils and the bounds they obey.

mod shrink;
mod suite;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::io::PencilFile;
use crate::linalg::{minor_gcd_poly, null_space, quotient_dim, GaussianRational, Matrix, Subspace};
use crate::pencil::OperatorPencil;
use crate::relation::{ExtendedScalar, LinearRelation, WeyrTable};
use crate::{Error, Result};

pub use shrink::{shrink_case, PerturbationCase};
pub use suite::{
    evaluate_case, random_trial, run_suite, Failure, Suite, SuiteConfig, VerificationReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationKind {
    /// `(E + u v*, A + w v*)`: both coefficients change along one functional.
    TypeV,
    /// `(E + u v*, A + u w*)`: both coefficients change along one direction.
    TypeU,
}

impl PerturbationKind {
    /// The representation whose distance the perturbation bounds by one.
    pub fn matching_side(self) -> Side {
        match self {
            PerturbationKind::TypeV => Side::Range,
            PerturbationKind::TypeU => Side::Kernel,
        }
    }
}

impl fmt::Display for PerturbationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PerturbationKind::TypeV => "type_v",
            PerturbationKind::TypeU => "type_u",
        })
    }
}

impl FromStr for PerturbationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v" | "type_v" => Ok(PerturbationKind::TypeV),
            "u" | "type_u" => Ok(PerturbationKind::TypeU),
            _ => Err(Error::Parse(format!("unknown perturbation type `{s}`"))),
        }
    }
}

/// Vectors of a rank-one perturbation. Functionals act as `x -> sum f_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PerturbationSpec {
    TypeV {
        u: Vec<GaussianRational>,
        w: Vec<GaussianRational>,
        v_func: Vec<GaussianRational>,
    },
    TypeU {
        u: Vec<GaussianRational>,
        v_func: Vec<GaussianRational>,
        w_func: Vec<GaussianRational>,
    },
}

impl PerturbationSpec {
    pub fn kind(&self) -> PerturbationKind {
        match self {
            PerturbationSpec::TypeV { .. } => PerturbationKind::TypeV,
            PerturbationSpec::TypeU { .. } => PerturbationKind::TypeU,
        }
    }

    pub fn vectors(&self) -> [&Vec<GaussianRational>; 3] {
        match self {
            PerturbationSpec::TypeV { u, w, v_func } => [u, w, v_func],
            PerturbationSpec::TypeU { u, v_func, w_func } => [u, v_func, w_func],
        }
    }

    pub fn vectors_mut(&mut self) -> [&mut Vec<GaussianRational>; 3] {
        match self {
            PerturbationSpec::TypeV { u, w, v_func } => [u, w, v_func],
            PerturbationSpec::TypeU { u, v_func, w_func } => [u, v_func, w_func],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vectors()
            .iter()
            .all(|v| v.iter().all(GaussianRational::is_zero))
    }

    /// The two rank-at-most-one update matrices `(dE, dA)`.
    pub fn updates(&self, n: usize) -> Result<(Matrix, Matrix)> {
        if self.vectors().iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "perturbation vectors must have length {n}"
            )));
        }
        let outer = |col: &[GaussianRational], row: &[GaussianRational]| {
            Matrix::column(col).mul(&Matrix::column(row).transpose())
        };
        Ok(match self {
            PerturbationSpec::TypeV { u, w, v_func } => (outer(u, v_func), outer(w, v_func)),
            PerturbationSpec::TypeU { u, v_func, w_func } => (outer(u, v_func), outer(u, w_func)),
        })
    }
}

pub fn apply_perturbation(p: &OperatorPencil, spec: &PerturbationSpec) -> Result<OperatorPencil> {
    let (de, da) = spec.updates(p.n())?;
    OperatorPencil::new(p.e().add(&de), p.a().add(&da))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Kernel,
    Range,
}

impl Side {
    pub fn representation(self, p: &OperatorPencil) -> LinearRelation {
        match self {
            Side::Kernel => p.kernel_representation(),
            Side::Range => p.range_representation(),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Kernel => "kernel",
            Side::Range => "range",
        })
    }
}

/// `max(dim L/(L ∩ M), dim M/(L ∩ M))`.
pub fn relation_distance(l: &LinearRelation, m: &LinearRelation) -> Result<usize> {
    let common = l.span().intersect(m.span())?;
    Ok(quotient_dim(&common, l.span())?.max(quotient_dim(&common, m.span())?))
}

pub fn side_distance(p: &OperatorPencil, q: &OperatorPencil, side: Side) -> Result<usize> {
    relation_distance(&side.representation(p), &side.representation(q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceCheck {
    pub side: Side,
    pub distance: usize,
    pub pass: bool,
}

/// Distance between the original and perturbed representation on the side
/// matching the perturbation type; at most one for every pencil.
pub fn check_rank_one_distance(
    p: &OperatorPencil,
    spec: &PerturbationSpec,
) -> Result<DistanceCheck> {
    let q = apply_perturbation(p, spec)?;
    let side = spec.kind().matching_side();
    let distance = side_distance(p, &q, side)?;
    Ok(DistanceCheck {
        side,
        distance,
        pass: distance <= 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// `|w_k(base) - w_k(perturbed)| <= 1`
    WeyrIndex,
    /// `|dim R^k(base) - dim R^k(perturbed)| <= k`
    RootDimension,
    /// Eigenvalues outside `Q(i)` present in only one pencil must have
    /// geometric multiplicity one there.
    IrrationalKernel,
    /// `w_1 >= w_2 >= ...`
    Monotonicity,
    /// Matching-side representation distance at most one.
    Distance,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::WeyrIndex => "weyr_index",
            Bound::RootDimension => "root_dimension",
            Bound::IrrationalKernel => "irrational_kernel",
            Bound::Monotonicity => "monotonicity",
            Bound::Distance => "distance",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub bound: Bound,
    pub point: String,
    pub k: usize,
    pub base: usize,
    pub perturbed: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {} (k = {}): base {}, perturbed {}",
            self.bound, self.point, self.k, self.base, self.perturbed
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeyrComparison {
    pub point: ExtendedScalar,
    pub base: WeyrTable,
    pub perturbed: WeyrTable,
}

impl WeyrComparison {
    pub fn delta_is_zero(&self) -> bool {
        self.base.indices == self.perturbed.indices
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial_id: u64,
    pub base: PencilFile,
    pub perturbed: PencilFile,
    pub comparisons: Vec<WeyrComparison>,
    /// Matching-side representation distance, when a perturbation spec is known.
    pub distance: Option<usize>,
    pub violations: Vec<Violation>,
    /// Degree of the squarefree part of eigenvalues outside `Q(i)` shared by
    /// both pencils; their Weyr indices are not compared.
    pub unchecked_irrational_degree: usize,
}

impl TrialResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_nonzero_delta(&self) -> bool {
        self.comparisons.iter().any(|c| !c.delta_is_zero())
    }
}

/// Union of the `Q(i)` eigenvalues of both pencils, plus `∞`.
pub fn default_points(base: &OperatorPencil, pert: &OperatorPencil) -> Result<Vec<ExtendedScalar>> {
    let mut pts: Vec<ExtendedScalar> = Vec::new();
    for p in [base, pert] {
        for lam in p.spectrum()?.eigenvalues() {
            pts.push(ExtendedScalar::Finite(lam.clone()));
        }
    }
    pts.push(ExtendedScalar::Infinity);
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// Compares Weyr characteristics of two regular pencils at the given points
/// (default: every eigenvalue of either pencil and `∞`).
pub fn weyr_delta_check(
    base: &OperatorPencil,
    pert: &OperatorPencil,
    points: Option<&[ExtendedScalar]>,
) -> Result<TrialResult> {
    if !base.is_regular() || !pert.is_regular() {
        return Err(Error::NotRegular);
    }
    let points = match points {
        Some(p) => p.to_vec(),
        None => default_points(base, pert)?,
    };
    let mut comparisons = Vec::new();
    let mut violations = Vec::new();
    for at in points {
        let cmp = WeyrComparison {
            base: base.weyr_table(&at)?,
            perturbed: pert.weyr_table(&at)?,
            point: at,
        };
        violations.extend(table_violations(&cmp));
        comparisons.push(cmp);
    }
    let (irrational, unchecked) = irrational_violations(base, pert)?;
    violations.extend(irrational);
    Ok(TrialResult {
        trial_id: 0,
        base: base.into(),
        perturbed: pert.into(),
        comparisons,
        distance: None,
        violations,
        unchecked_irrational_degree: unchecked,
    })
}

pub fn table_violations(cmp: &WeyrComparison) -> Vec<Violation> {
    let (b, p) = (&cmp.base, &cmp.perturbed);
    let point = cmp.point.to_string();
    let mut out = Vec::new();
    let longest = b.indices.len().max(p.indices.len());
    for k in 1..=longest {
        if b.w(k).abs_diff(p.w(k)) > 1 {
            out.push(Violation {
                bound: Bound::WeyrIndex,
                point: point.clone(),
                k,
                base: b.w(k),
                perturbed: p.w(k),
            });
        }
        if b.root_dim(k).abs_diff(p.root_dim(k)) > k {
            out.push(Violation {
                bound: Bound::RootDimension,
                point: point.clone(),
                k,
                base: b.root_dim(k),
                perturbed: p.root_dim(k),
            });
        }
    }
    for (t, is_base) in [(b, true), (p, false)] {
        if let Some(k) = t.indices.windows(2).position(|w| w[0] < w[1]) {
            out.push(Violation {
                bound: Bound::Monotonicity,
                point: point.clone(),
                k: k + 2,
                base: if is_base { t.w(k + 2) } else { b.w(k + 2) },
                perturbed: if is_base { p.w(k + 2) } else { t.w(k + 2) },
            });
        }
    }
    out
}

/// An eigenvalue outside `Q(i)` of one pencil that is not an eigenvalue of
/// the other needs `w_1 <= 1`; that holds iff it is no root of the gcd of the
/// `(n-1)`-minors. Returns the violations and the degree of shared roots left
/// unchecked.
fn irrational_violations(
    base: &OperatorPencil,
    pert: &OperatorPencil,
) -> Result<(Vec<Violation>, usize)> {
    let mut out = Vec::new();
    let mut unchecked = 0;
    for (this, other, this_is_base) in [(base, pert, true), (pert, base, false)] {
        let residual = this.spectrum()?.residual;
        if residual.degree().unwrap_or(0) == 0 {
            continue;
        }
        let roots = residual.squarefree();
        let shared = roots.gcd(other.det_poly());
        if this_is_base {
            unchecked += shared.degree().unwrap_or(0);
        }
        let own = roots.div_exact(&shared);
        if own.degree().unwrap_or(0) == 0 {
            continue;
        }
        let n = this.n();
        let minors = minor_gcd_poly(this.e(), this.a(), n - 1)?;
        let hit = own.gcd(&minors);
        if hit.degree().unwrap_or(0) > 0 {
            out.push(Violation {
                bound: Bound::IrrationalKernel,
                point: format!("root of {hit}"),
                k: 1,
                base: if this_is_base { 2 } else { 0 },
                perturbed: if this_is_base { 0 } else { 2 },
            });
        }
    }
    Ok((out, unchecked))
}

/// `ℒ ∩ ker f + span{v}` for a functional `f` on `F^m x F^n`.
pub fn one_dimensional_perturbation(
    l: &LinearRelation,
    functional: &[GaussianRational],
    v: &[GaussianRational],
) -> Result<LinearRelation> {
    let ambient = l.dim_x() + l.dim_y();
    if functional.len() != ambient || v.len() != ambient {
        return Err(Error::DimensionMismatch(format!(
            "functional and vector must have length {ambient}"
        )));
    }
    let hyperplane = null_space(&Matrix::column(functional).transpose());
    let cut = l.span().intersect(&hyperplane)?;
    let line = Subspace::from_vectors(ambient, &[v.to_vec()])?;
    LinearRelation::from_subspace(l.dim_x(), l.dim_y(), cut.sum(&line)?)
}

/// Weyr comparison between two relations without singular chains.
pub fn relation_weyr_check(
    l: &LinearRelation,
    m: &LinearRelation,
    points: &[ExtendedScalar],
) -> Result<Vec<(WeyrComparison, Vec<Violation>)>> {
    points
        .iter()
        .map(|at| {
            let cmp = WeyrComparison {
                point: at.clone(),
                base: l.weyr_table(at)?,
                perturbed: m.weyr_table(at)?,
            };
            let v = table_violations(&cmp);
            Ok((cmp, v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn v(xs: &[i64]) -> Vec<GaussianRational> {
        xs.iter().map(|&x| GaussianRational::from_int(x)).collect()
    }

    fn pencil(e: &[[i64; 2]], a: &[[i64; 2]]) -> OperatorPencil {
        OperatorPencil::new(Matrix::from_ints(e), Matrix::from_ints(a)).unwrap()
    }

    #[test]
    fn identity_with_type_v_perturbation() {
        // E = A = I, u = w = e1, v = e1: E' = A' = diag(2, 1)
        let p = pencil(&[[1, 0], [0, 1]], &[[1, 0], [0, 1]]);
        let spec = PerturbationSpec::TypeV {
            u: v(&[1, 0]),
            w: v(&[1, 0]),
            v_func: v(&[1, 0]),
        };
        let q = apply_perturbation(&p, &spec).unwrap();
        assert_eq!(q.e(), &Matrix::from_ints(&[[2, 0], [0, 1]]));
        assert_eq!(q.a(), &Matrix::from_ints(&[[2, 0], [0, 1]]));
        let one = ExtendedScalar::Finite(g("1"));
        assert_eq!(p.weyr_table(&one).unwrap().indices, vec![2]);
        assert_eq!(q.weyr_table(&one).unwrap().indices, vec![2]);
        let check = check_rank_one_distance(&p, &spec).unwrap();
        assert_eq!(check.side, Side::Range);
        assert!(check.pass);
        let res = weyr_delta_check(&p, &q, None).unwrap();
        assert!(res.passed());
        assert!(!res.has_nonzero_delta());
    }

    #[test]
    fn off_side_distance_can_be_two() {
        let zero = pencil(&[[0, 0], [0, 0]], &[[0, 0], [0, 0]]);
        assert!(!zero.is_regular());
        let type_u = PerturbationSpec::TypeU {
            u: v(&[1, 0]),
            v_func: v(&[1, 0]),
            w_func: v(&[0, 1]),
        };
        let q = apply_perturbation(&zero, &type_u).unwrap();
        assert_eq!(q.e(), &Matrix::from_ints(&[[1, 0], [0, 0]]));
        assert_eq!(q.a(), &Matrix::from_ints(&[[0, 1], [0, 0]]));
        assert_eq!(zero.range_representation().dim(), 0);
        assert_eq!(q.range_representation().dim(), 2);
        assert_eq!(side_distance(&zero, &q, Side::Range).unwrap(), 2);
        assert_eq!(check_rank_one_distance(&zero, &type_u).unwrap().distance, 1);

        let type_v = PerturbationSpec::TypeV {
            u: v(&[1, 0]),
            w: v(&[0, 1]),
            v_func: v(&[1, 0]),
        };
        let q = apply_perturbation(&zero, &type_v).unwrap();
        assert_eq!(zero.kernel_representation().dim(), 4);
        assert_eq!(q.kernel_representation().dim(), 2);
        assert_eq!(side_distance(&zero, &q, Side::Kernel).unwrap(), 2);
        assert!(check_rank_one_distance(&zero, &type_v).unwrap().pass);
    }

    #[test]
    fn type_u_matches_kernel_side() {
        let p = pencil(&[[1, 2], [0, 1]], &[[3, 0], [1, 1]]);
        let spec = PerturbationSpec::TypeU {
            u: v(&[1, -1]),
            v_func: v(&[2, 0]),
            w_func: v(&[0, 5]),
        };
        let check = check_rank_one_distance(&p, &spec).unwrap();
        assert_eq!(check.side, Side::Kernel);
        assert!(check.distance <= 1);
    }

    #[test]
    fn distance_is_symmetric_and_zero_on_equal() {
        let p = pencil(&[[1, 0], [0, 0]], &[[0, 1], [1, 1]]);
        let k = p.kernel_representation();
        let r = p.range_representation();
        assert_eq!(relation_distance(&k, &k).unwrap(), 0);
        assert_eq!(
            relation_distance(&k, &r).unwrap(),
            relation_distance(&r, &k).unwrap()
        );
    }

    #[test]
    fn delta_check_flags_a_jump_of_two() {
        let zero = ExtendedScalar::Finite(g("0"));
        let a = OperatorPencil::from_canonical(&"1@0,1@0".parse().unwrap());
        let b = OperatorPencil::from_canonical(&"1@1,1@1".parse().unwrap());
        let res = weyr_delta_check(&a, &b, Some(&[zero])).unwrap();
        assert_eq!(res.violations.len(), 2);
        assert_eq!(res.violations[0].bound, Bound::WeyrIndex);
    }

    #[test]
    fn irrational_multiplicity_is_detected() {
        // x^2 - 2 on both diagonal blocks: sqrt(2) has w_1 = 2
        let companion = Matrix::from_ints(&[[0, 2], [1, 0]]);
        let a = Matrix::block_diag(&[companion.clone(), companion]);
        let doubled = OperatorPencil::new(Matrix::identity(4), a).unwrap();
        let plain = OperatorPencil::from_canonical(&"4@0".parse().unwrap());
        let res = weyr_delta_check(&plain, &doubled, Some(&[])).unwrap();
        assert_eq!(res.violations.len(), 1);
        assert_eq!(res.violations[0].bound, Bound::IrrationalKernel);
        let single = OperatorPencil::new(
            Matrix::identity(2),
            Matrix::from_ints(&[[0, 2], [1, 0]]),
        )
        .unwrap();
        let other = OperatorPencil::from_canonical(&"2@0".parse().unwrap());
        assert!(weyr_delta_check(&other, &single, Some(&[])).unwrap().passed());
    }

    #[test]
    fn singular_perturbed_pencil_is_rejected() {
        let p = pencil(&[[1, 0], [0, 0]], &[[0, 0], [0, 1]]);
        let spec = PerturbationSpec::TypeU {
            u: v(&[0, 1]),
            v_func: v(&[0, 0]),
            w_func: v(&[0, -1]),
        };
        let q = apply_perturbation(&p, &spec).unwrap();
        assert!(!q.is_regular());
        assert_eq!(weyr_delta_check(&p, &q, None), Err(Error::NotRegular));
    }

    #[test]
    fn one_dimensional_relation_perturbation_has_distance_one() {
        let l = LinearRelation::identity(2);
        let m = one_dimensional_perturbation(&l, &v(&[1, 0, 0, 0]), &v(&[1, 0, 0, 0])).unwrap();
        assert_eq!(relation_distance(&l, &m).unwrap(), 1);
        assert_eq!(m.dim(), 2);
    }

    #[test]
    fn jordan_block_perturbed_into_two_eigenvalues() {
        let p = OperatorPencil::from_canonical(&"2@0".parse().unwrap());
        let spec = PerturbationSpec::TypeU {
            u: v(&[1, 0]),
            v_func: v(&[0, 0]),
            w_func: v(&[1, 0]),
        };
        let q = apply_perturbation(&p, &spec).unwrap();
        assert_eq!(q.e(), &Matrix::identity(2));
        assert_eq!(q.a(), &Matrix::from_ints(&[[1, 1], [0, 0]]));
        let zero = ExtendedScalar::Finite(g("0"));
        let res = weyr_delta_check(&p, &q, Some(&[zero])).unwrap();
        let cmp = &res.comparisons[0];
        assert_eq!(cmp.base.indices, vec![1, 1]);
        assert_eq!(cmp.perturbed.indices, vec![1]);
        assert_eq!(cmp.base.root_dim(2) - cmp.perturbed.root_dim(2), 1);
        assert!(res.passed());
    }

    #[test]
    fn three_block_with_type_u_perturbation() {
        let p = OperatorPencil::from_canonical(&"3@0".parse().unwrap());
        let q = apply_perturbation(
            &p,
            &PerturbationSpec::TypeU {
                u: v(&[1, 0, 0]),
                v_func: v(&[0, 0, 0]),
                w_func: v(&[0, 0, 1]),
            },
        )
        .unwrap();
        let res = weyr_delta_check(&p, &q, None).unwrap();
        assert!(res.passed());
        assert!(res.comparisons.iter().any(|c| c.point == ExtendedScalar::Finite(g("0"))));
    }

    #[test]
    fn graph_distance() {
        let zero = LinearRelation::from_graph(&Matrix::zeros(2, 2));
        let e11 = LinearRelation::from_graph(&Matrix::from_ints(&[[1, 0], [0, 0]]));
        assert_eq!(relation_distance(&zero, &e11).unwrap(), 1);
        assert_eq!(relation_distance(&zero, &zero).unwrap(), 0);
    }

    #[test]
    fn zero_perturbation_is_identity() {
        let p = pencil(&[[1, 2], [3, 4]], &[[0, 1], [1, 0]]);
        let spec = PerturbationSpec::TypeV {
            u: v(&[0, 0]),
            w: v(&[0, 0]),
            v_func: v(&[0, 0]),
        };
        assert!(spec.is_zero());
        assert_eq!(apply_perturbation(&p, &spec).unwrap(), p);
        assert_eq!(check_rank_one_distance(&p, &spec).unwrap().distance, 0);
        assert!(apply_perturbation(&p, &PerturbationSpec::TypeV {
            u: v(&[0]),
            w: v(&[0, 0]),
            v_func: v(&[0, 0]),
        })
        .is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("u".parse::<PerturbationKind>().unwrap(), PerturbationKind::TypeU);
        assert_eq!("type_v".parse::<PerturbationKind>().unwrap(), PerturbationKind::TypeV);
        assert!("w".parse::<PerturbationKind>().is_err());
    }
}
